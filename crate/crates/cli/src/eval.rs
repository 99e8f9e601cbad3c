//! Expression and command evaluation.

use std::cmp::Ordering;

use num_traits::ToPrimitive;
use surreal::explog::{self, ExpBase};
use surreal::game::{self, GameForm};
use surreal::nf::{self, birthday_nf, commensurate, omega_pow, NormalForm};
use surreal::poly::{odd_poly_root, OddRoot, Polynomial};
use surreal::rational::floor_i64;
use surreal::sequences::{
    dedekind_section, is_cauchy, limit, seq_combine, seq_reciprocal, SeqOp, SequenceGen, Verdict, Zeta,
};
use surreal::trig::{self, winding_degree};
use surreal::{Ordinal, Rational};

use crate::error::{CliError, EvalError, Span};
use crate::parse::{BinOp, Command, Expr, ExprKind, SeqExpr};
use crate::value::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Human,
    Structured,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub trunc: u32,
    pub zeta: Ordinal,
    pub format: Format,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            trunc: 8,
            zeta: Ordinal::omega_pow(Ordinal::omega()),
            format: Format::Human,
        }
    }
}

/// Parses and validates a ζ expression: an ordinal that is main.
pub fn parse_zeta(text: &str) -> Result<Ordinal, CliError> {
    let e = crate::parse::parse(text)?;
    zeta_of(&e, &Config::default())
}

fn zeta_of(e: &Expr, cfg: &Config) -> Result<Ordinal, CliError> {
    if let ExprKind::OmegaClass = e.kind {
        return Err(CliError::Config("OMEGA cannot be the session zeta".into()));
    }
    let v = eval(e, cfg, None)?;
    let o = v
        .as_exact_nf()
        .and_then(NormalForm::as_ordinal)
        .ok_or_else(|| CliError::Config(format!("zeta {v} is not an ordinal")))?;
    if !o.is_main_ordinal() {
        return Err(CliError::Config(
            surreal::Error::NotMainOrdinal(o.to_string()).to_string(),
        ));
    }
    Ok(o)
}

/// What one line produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub value: String,
    pub residual: Option<String>,
    pub tier: &'static str,
    /// The value to store in `ans`, for expression lines.
    pub ans: Option<Value>,
}

impl Output {
    fn text(value: impl ToString, tier: &'static str) -> Self {
        Output {
            value: value.to_string(),
            residual: None,
            tier,
            ans: None,
        }
    }

    pub fn from_value(v: Value) -> Self {
        let (value, residual) = match &v {
            Value::Num(x, e) => (x.to_string(), e.as_ref().map(|e| format!("O(w^({e}))"))),
            Value::Complex(c, e) => (c.to_string(), e.as_ref().map(|e| format!("O(w^({e}))"))),
            Value::Trig(t, e) => (t.to_string(), e.as_ref().map(|e| format!("O(w^({e}))"))),
            other => (other.to_string(), None),
        };
        Output {
            value,
            residual,
            tier: v.tier(),
            ans: Some(v),
        }
    }

    /// The human-readable form: value followed by its residual term.
    pub fn human(&self) -> String {
        match &self.residual {
            None => self.value.clone(),
            Some(r) if self.value == "0" => r.clone(),
            Some(r) => format!("{} + {r}", self.value),
        }
    }
}

fn err(span: Span, e: impl Into<EvalError>) -> CliError {
    CliError::eval(span, e)
}

fn arity(e: &Expr, name: &str, args: &[Expr], expected: &'static [usize], text: &'static str) -> Result<(), CliError> {
    if expected.contains(&args.len()) {
        Ok(())
    } else {
        Err(err(
            e.span,
            EvalError::Arity {
                name: name.into(),
                expected: text,
            },
        ))
    }
}

/// An exact normal form operand.
fn exact_nf(v: &Value, span: Span, what: &str) -> Result<NormalForm, CliError> {
    match v {
        Value::Num(x, None) => Ok(x.clone()),
        Value::Num(..) => Err(err(span, EvalError::Argument(format!("{what} must be exact")))),
        other => Err(err(
            span,
            EvalError::Argument(format!("{what} must be a number, got {}", other.tier())),
        )),
    }
}

fn rational_arg(v: &Value, span: Span, what: &str) -> Result<Rational, CliError> {
    exact_nf(v, span, what)?
        .as_rational()
        .ok_or_else(|| err(span, EvalError::Argument(format!("{what} must be rational"))))
}

fn integer_arg(v: &Value, span: Span, what: &str) -> Result<i64, CliError> {
    let q = rational_arg(v, span, what)?;
    match floor_i64(&q) {
        Some(n) if q.is_integer() => Ok(n),
        _ => Err(err(span, EvalError::Argument(format!("{what} must be an integer")))),
    }
}

fn natural_arg(v: &Value, span: Span, what: &str) -> Result<u32, CliError> {
    let n = integer_arg(v, span, what)?;
    u32::try_from(n).map_err(|_| err(span, EvalError::Argument(format!("{what} must be a natural number"))))
}

fn game_option(v: Value, span: Span) -> Result<GameForm, CliError> {
    match v {
        Value::Game(g) => Ok(g),
        Value::Num(x, None) => match x.as_dyadic() {
            Some(d) => Ok(game::from_dyadic(d)),
            None => Err(err(span, EvalError::Argument(format!("game option {x} is not dyadic")))),
        },
        other => Err(err(span, EvalError::TierMismatch("game", other.tier()))),
    }
}

pub fn eval(e: &Expr, cfg: &Config, ans: Option<&Value>) -> Result<Value, CliError> {
    let k = cfg.trunc;
    let sub = |x: &Expr| eval(x, cfg, ans);
    match &e.kind {
        ExprKind::Num(q) => Ok(Value::from(NormalForm::from_rational(q.clone()))),
        ExprKind::Omega => Ok(Value::from(NormalForm::omega())),
        ExprKind::Imag => Ok(Value::Complex(trig::ComplexNF::i(), None)),
        ExprKind::Ans => ans.cloned().ok_or_else(|| err(e.span, EvalError::NoAns)),
        ExprKind::OmegaClass => Err(err(e.span, EvalError::OmegaNotArithmetic)),
        ExprKind::List(_) => Err(err(
            e.span,
            EvalError::Argument("a list is only valid as a polynomial argument".into()),
        )),
        ExprKind::Neg(x) => sub(x)?.neg().map_err(|x| err(e.span, x)),
        ExprKind::Game(l, r) => {
            let side = |xs: &[Expr]| -> Result<Vec<GameForm>, CliError> {
                xs.iter().map(|x| game_option(sub(x)?, x.span)).collect()
            };
            GameForm::new(side(l)?, side(r)?)
                .map(Value::Game)
                .map_err(|x| err(e.span, x))
        }
        ExprKind::Bin(op, a, b) => {
            let (x, y) = (sub(a)?, sub(b)?);
            let out = match op {
                BinOp::Add => x.add(&y),
                BinOp::Sub => x.sub(&y),
                BinOp::Mul => x.mul(&y),
                BinOp::Div => x.div(&y, k),
                BinOp::Pow => return power(&x, &y, e.span, b.span, k),
            };
            out.map_err(|x| err(e.span, x))
        }
        ExprKind::Call(name, args) => call(e, name, args, cfg, ans),
    }
}

fn power(x: &Value, y: &Value, span: Span, exp_span: Span, k: u32) -> Result<Value, CliError> {
    let exponent = exact_nf(y, exp_span, "exponent")?;
    if let Some(q) = exponent.as_rational() {
        if q.is_integer() {
            let n = floor_i64(&q).ok_or_else(|| err(exp_span, EvalError::Argument("exponent too large".into())))?;
            return x.pow_int(n, k).map_err(|x| err(span, x));
        }
    }
    let Value::Num(base, None) = x else {
        return Err(err(
            span,
            EvalError::Unsupported {
                op: "non-integer power",
                tier: x.tier(),
            },
        ));
    };
    if base.is_one() {
        return Ok(Value::from(NormalForm::one()));
    }
    if *base == NormalForm::omega() {
        return Ok(Value::from(omega_pow(&exponent)));
    }
    if let Some(q) = exponent.as_rational() {
        let (p, n) = (q.numer().to_i64(), q.denom().to_u32());
        let (Some(p), Some(n)) = (p, n) else {
            return Err(err(exp_span, EvalError::Argument("exponent too large".into())));
        };
        let Value::Num(b, None) = x.pow_int(p, k).map_err(|x| err(span, x))? else {
            return Err(err(span, EvalError::Argument("inexact power base".into())));
        };
        return Ok(nf::nf_nth_root(&b, n, k).map_err(|x| err(span, x))?.into());
    }
    match base.as_rational() {
        Some(a) => {
            let a = ExpBase::new(a).map_err(|x| err(span, x))?;
            Ok(explog::pow(&a, &exponent, k).map_err(|x| err(span, x))?.into())
        }
        None => Err(err(
            span,
            EvalError::Unsupported {
                op: "this power",
                tier: "normal-form",
            },
        )),
    }
}

fn call(e: &Expr, name: &str, args: &[Expr], cfg: &Config, ans: Option<&Value>) -> Result<Value, CliError> {
    let k = cfg.trunc;
    let vals = || -> Result<Vec<Value>, CliError> { args.iter().map(|a| eval(a, cfg, ans)).collect() };
    let arg = |i: usize| eval(&args[i], cfg, ans);
    let span = e.span;
    match name {
        "root" => {
            arity(e, name, args, &[2], "2")?;
            let v = vals()?;
            let x = exact_nf(&v[0], args[0].span, "radicand")?;
            let n = natural_arg(&v[1], args[1].span, "root index")?;
            Ok(nf::nf_nth_root(&x, n, k).map_err(|x| err(span, x))?.into())
        }
        "exp" => {
            arity(e, name, args, &[1, 2], "1 or 2")?;
            let v = vals()?;
            if v.len() == 1 {
                let x = exact_nf(&v[0], args[0].span, "exponent")?;
                return Ok(explog::exp_inf(&x, k).map_err(|x| err(span, x))?.into());
            }
            let a = ExpBase::new(rational_arg(&v[0], args[0].span, "base")?).map_err(|x| err(args[0].span, x))?;
            let x = exact_nf(&v[1], args[1].span, "exponent")?;
            Ok(explog::pow(&a, &x, k).map_err(|x| err(span, x))?.into())
        }
        "log" => {
            arity(e, name, args, &[2], "2")?;
            let v = vals()?;
            let a = ExpBase::new(rational_arg(&v[0], args[0].span, "base")?).map_err(|x| err(args[0].span, x))?;
            let x = exact_nf(&v[1], args[1].span, "argument")?;
            Ok(explog::log(&a, &x, k).map_err(|x| err(span, x))?.into())
        }
        "sin" | "cos" | "e" => {
            arity(e, name, args, &[1], "1")?;
            let v = vals()?;
            let x = exact_nf(&v[0], args[0].span, "angle")?;
            let out = match name {
                "sin" => trig::sin_ext(&x, k),
                "cos" => trig::cos_ext(&x, k),
                _ => trig::ex(&x, k),
            };
            Ok(out.map_err(|x| err(span, x))?.into())
        }
        "nf" => {
            arity(e, name, args, &[1], "1")?;
            match vals()?.remove(0) {
                Value::Game(g) => Ok(Value::from(NormalForm::from_game(&g))),
                v => Ok(v),
            }
        }
        "polyroot" => {
            arity(e, name, args, &[1], "1")?;
            let coeffs = list_arg(&args[0], cfg, ans)?
                .iter()
                .map(|(v, s)| exact_nf(v, *s, "coefficient"))
                .collect::<Result<Vec<_>, _>>()?;
            let p = Polynomial::new(coeffs).map_err(|x| err(args[0].span, x))?;
            match odd_poly_root(&p, k).map_err(|x| err(span, x))? {
                OddRoot::Exact(x) => Ok(Value::from(x)),
                OddRoot::Bracket { lo, hi } => Ok(Value::Interval(lo, hi)),
                OddRoot::Series(t) => Ok(t.into()),
            }
        }
        "winding" => {
            arity(e, name, args, &[3], "3")?;
            let coeffs = list_arg(&args[0], cfg, ans)?
                .iter()
                .map(|(v, s)| complex_rational(v, *s))
                .collect::<Result<Vec<_>, _>>()?;
            let r = rational_arg(&arg(1)?, args[1].span, "radius")?;
            let n = natural_arg(&arg(2)?, args[2].span, "sample count")?;
            let d = winding_degree(&coeffs, &r, n as usize).map_err(|x| err(span, x))?;
            Ok(Value::from(NormalForm::from_int(d)))
        }
        _ => Err(err(span, EvalError::UnknownFunction(name.into()))),
    }
}

fn list_arg(e: &Expr, cfg: &Config, ans: Option<&Value>) -> Result<Vec<(Value, Span)>, CliError> {
    let ExprKind::List(items) = &e.kind else {
        return Err(err(
            e.span,
            EvalError::Argument("expected a coefficient list [a, b, ...]".into()),
        ));
    };
    items.iter().map(|x| Ok((eval(x, cfg, ans)?, x.span))).collect()
}

fn complex_rational(v: &Value, span: Span) -> Result<(Rational, Rational), CliError> {
    let (re, im) = match v {
        Value::Num(x, None) => (x.clone(), NormalForm::zero()),
        Value::Complex(c, None) => (c.re.clone(), c.im.clone()),
        _ => {
            return Err(err(
                span,
                EvalError::Argument("coefficients must be exact complex rationals".into()),
            ))
        }
    };
    match (re.as_rational(), im.as_rational()) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err(err(
            span,
            EvalError::Argument("coefficients must be exact complex rationals".into()),
        )),
    }
}

/// Default ε probes for `:cauchy`.
fn default_eps() -> Vec<NormalForm> {
    [(1, 1), (1, 2), (1, 10), (1, 1000)]
        .iter()
        .map(|&(n, d)| NormalForm::from_rational(surreal::rational::rat(n, d)))
        .collect()
}

/// Default probes for `:section`.
fn default_probes() -> Vec<NormalForm> {
    [(-1, 1), (0, 1), (1, 2), (1, 1), (3, 2), (2, 1), (3, 1)]
        .iter()
        .map(|&(n, d)| NormalForm::from_rational(surreal::rational::rat(n, d)))
        .collect()
}

fn seq_zeta(e: &Expr, cfg: &Config, ans: Option<&Value>) -> Result<Zeta, CliError> {
    if let ExprKind::OmegaClass = e.kind {
        return Ok(Zeta::Omega);
    }
    let v = eval(e, cfg, ans)?;
    let o = v
        .as_exact_nf()
        .and_then(NormalForm::as_ordinal)
        .ok_or_else(|| err(e.span, EvalError::Argument("zeta must be an ordinal or OMEGA".into())))?;
    Zeta::new(o).map_err(|x| err(e.span, x))
}

pub fn build_seq(s: &SeqExpr, cfg: &Config, ans: Option<&Value>) -> Result<SequenceGen, CliError> {
    match s {
        SeqExpr::Combine(op, a, b, span) => {
            let op = match op {
                BinOp::Add => SeqOp::Add,
                BinOp::Mul => SeqOp::Mul,
                _ => SeqOp::Div,
            };
            seq_combine(op, &build_seq(a, cfg, ans)?, &build_seq(b, cfg, ans)?).map_err(|x| err(*span, x))
        }
        SeqExpr::Recip(a, span) => seq_reciprocal(&build_seq(a, cfg, ans)?).map_err(|x| err(*span, x)),
        SeqExpr::Gen {
            kind,
            positional,
            params,
            span,
        } => {
            let allowed: &[&str] = match kind.as_str() {
                "const" => &["value", "zeta"],
                "recip" => &["a", "c", "zeta"],
                "geosum" => &["base", "coeff", "step", "zeta"],
                "id" => &["zeta"],
                "evconst" => &["switch", "value", "zeta"],
                _ => {
                    return Err(err(
                        *span,
                        EvalError::Argument(format!(
                            "unknown sequence kind {kind}; expected const, recip, geosum, id or evconst"
                        )),
                    ))
                }
            };
            for (key, e) in params {
                if !allowed.contains(&key.as_str()) {
                    return Err(err(
                        e.span,
                        EvalError::Argument(format!("{kind} takes {}", allowed.join(", "))),
                    ));
                }
            }
            let find = |key: &str| params.iter().find(|(k, _)| k == key).map(|(_, e)| e);
            let num = |key: &str, default: NormalForm| -> Result<NormalForm, CliError> {
                match find(key).or(if key == allowed[0] { positional.as_ref() } else { None }) {
                    Some(e) => exact_nf(&eval(e, cfg, ans)?, e.span, key),
                    None => Ok(default),
                }
            };
            let zeta = match find("zeta") {
                Some(e) => seq_zeta(e, cfg, ans)?,
                None => Zeta::omega(),
            };
            let at = |x: surreal::Result<SequenceGen>| x.map_err(|x| err(*span, x));
            match kind.as_str() {
                "const" => {
                    let value = match find("value").or(positional.as_ref()) {
                        Some(e) => exact_nf(&eval(e, cfg, ans)?, e.span, "value")?,
                        None => return Err(err(*span, EvalError::Argument("const needs a value".into()))),
                    };
                    at(SequenceGen::constant(value, zeta))
                }
                "recip" => at(SequenceGen::reciprocal(
                    num("a", NormalForm::zero())?,
                    num("c", NormalForm::one())?,
                    zeta,
                )),
                "geosum" => {
                    let rat = |key: &str, default: i64| -> Result<Rational, CliError> {
                        let v = num(key, NormalForm::from_int(default))?;
                        v.as_rational()
                            .ok_or_else(|| err(*span, EvalError::Argument(format!("{key} must be rational"))))
                    };
                    let base = match find("base").or(positional.as_ref()) {
                        Some(e) => rational_arg(&eval(e, cfg, ans)?, e.span, "base")?,
                        None => return Err(err(*span, EvalError::Argument("geosum needs base=".into()))),
                    };
                    Ok(SequenceGen::geo_sum(
                        rat("coeff", 1)?,
                        base,
                        num("step", NormalForm::zero())?,
                        zeta,
                    ))
                }
                "id" => Ok(SequenceGen::identity(zeta)),
                _ => {
                    let switch = match find("switch").or(positional.as_ref()) {
                        Some(e) => {
                            let v = eval(e, cfg, ans)?;
                            v.as_exact_nf()
                                .and_then(NormalForm::as_ordinal)
                                .ok_or_else(|| err(e.span, EvalError::Argument("switch must be an ordinal".into())))?
                        }
                        None => return Err(err(*span, EvalError::Argument("evconst needs switch=".into()))),
                    };
                    let value = num("value", NormalForm::zero())?;
                    let before = SequenceGen::identity(zeta);
                    at(SequenceGen::eventually_constant(switch, before, value))
                }
            }
        }
    }
}

fn exprs(xs: &[Expr], cfg: &Config, ans: Option<&Value>, what: &str) -> Result<Vec<NormalForm>, CliError> {
    xs.iter().map(|x| exact_nf(&eval(x, cfg, ans)?, x.span, what)).collect()
}

fn ordering_word(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "less",
        Ordering::Equal => "equal",
        Ordering::Greater => "greater",
    }
}

fn compare(a: &Value, b: &Value, span: Span) -> Result<Ordering, CliError> {
    if matches!(a, Value::Game(_)) || matches!(b, Value::Game(_)) {
        let (x, y) = (game_option(a.clone(), span)?, game_option(b.clone(), span)?);
        return Ok(game::cmp(&x, &y));
    }
    let (Value::Num(x, ex), Value::Num(y, ey)) = (a, b) else {
        return Err(err(
            span,
            EvalError::Unsupported {
                op: "comparison",
                tier: if a.tier() == "normal-form" { b.tier() } else { a.tier() },
            },
        ));
    };
    let d = x - y;
    let bound = match (ex, ey) {
        (None, None) => None,
        (Some(e), None) | (None, Some(e)) => Some(e.clone()),
        (Some(e), Some(f)) => Some(e.clone().max(f.clone())),
    };
    match (d.leading_exponent(), bound) {
        (_, None) => Ok(d.signum()),
        (Some(l), Some(b)) if *l > b => Ok(d.signum()),
        _ => Err(err(
            span,
            EvalError::Undecided("the difference is within the truncation error".into()),
        )),
    }
}

/// Runs one command. `SetTrunc`, `SetZeta` and `Quit` are handled by the
/// session, which owns the configuration.
pub fn run_command(c: &Command, cfg: &Config, ans: Option<&Value>) -> Result<Output, CliError> {
    let ev = |e: &Expr| eval(e, cfg, ans);
    match c {
        Command::Nf(e) => {
            let v = match ev(e)? {
                Value::Game(g) => Value::from(NormalForm::from_game(&g)),
                v => v,
            };
            Ok(Output::from_value(v))
        }
        Command::Birthday(e) => match ev(e)? {
            Value::Game(g) => Ok(Output::text(game::birthday(&g), "ordinal")),
            v => {
                let x = exact_nf(&v, e.span, "argument")?;
                let b = birthday_nf(&x);
                Ok(Output::text(
                    if b.exact {
                        b.ordinal.to_string()
                    } else {
                        format!("<= {}", b.ordinal)
                    },
                    "ordinal",
                ))
            }
        },
        Command::Cmp(a, b) => {
            let span = (a.span.0, b.span.1);
            Ok(Output::text(
                ordering_word(compare(&ev(a)?, &ev(b)?, span)?),
                "ordering",
            ))
        }
        Command::Commensurate(a, b) => {
            let x = exact_nf(&ev(a)?, a.span, "argument")?;
            let y = exact_nf(&ev(b)?, b.span, "argument")?;
            let span = (a.span.0, b.span.1);
            Ok(match commensurate(&x, &y).map_err(|x| err(span, x))? {
                Some(n) => Output::text(format!("yes (n = {n})"), "boolean"),
                None => Output::text("no", "boolean"),
            })
        }
        Command::InField(e) => {
            let x = exact_nf(&ev(e)?, e.span, "argument")?;
            let inside = nf::in_field(&x, &cfg.zeta).map_err(|x| err(e.span, x))?;
            Ok(Output::text(inside, "boolean"))
        }
        Command::Limit(s) => Ok(Output::text(limit(&build_seq(s, cfg, ans)?), "limit")),
        Command::Cauchy(s, eps) => {
            let g = build_seq(s, cfg, ans)?;
            let eps = if eps.is_empty() {
                default_eps()
            } else {
                exprs(eps, cfg, ans, "epsilon")?
            };
            let text = match is_cauchy(&g, &eps) {
                Verdict::Verified => "verified".to_string(),
                Verdict::Refuted { eps, witness } => match witness {
                    Some((a, b)) => format!("refuted (eps = {eps}, indices {a} and {b})"),
                    None => format!("refuted (eps = {eps})"),
                },
                Verdict::Undecided => "undecided".to_string(),
            };
            Ok(Output::text(text, "verdict"))
        }
        Command::Section(s, probes) => {
            let g = build_seq(s, cfg, ans)?;
            let probes = if probes.is_empty() {
                default_probes()
            } else {
                exprs(probes, cfg, ans, "probe")?
            };
            let r = dedekind_section(&g, &probes).map_err(|x| err(s.span(), x))?;
            let list = |xs: &[NormalForm]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
            let mut text = format!("{}; lower [{}]; upper [{}]", r.verdict, list(&r.lower), list(&r.upper));
            if !r.at_limit.is_empty() {
                text.push_str(&format!("; at-limit [{}]", list(&r.at_limit)));
            }
            if !r.undetermined.is_empty() {
                text.push_str(&format!("; undetermined [{}]", list(&r.undetermined)));
            }
            Ok(Output::text(text, "section"))
        }
        Command::SetTrunc(_) | Command::SetZeta(_) | Command::Quit => unreachable!("handled by the session"),
    }
}

/// Applies `:set zeta` to a copy of the configuration.
pub fn set_zeta(e: &Expr, cfg: &Config) -> Result<Ordinal, CliError> {
    zeta_of(e, cfg)
}
