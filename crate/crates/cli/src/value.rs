//! Runtime values and their canonical text.

use std::fmt;

use surreal::game::{self, GameForm};
use surreal::nf::{NormalForm, Truncated};
use surreal::trig::{ComplexNF, ComplexTruncated, TrigExpr, TrigValue};
use surreal::Rational;

use crate::error::EvalError;

/// Leading-exponent bound on the error of a value; `None` means exact.
pub type ErrBound = Option<NormalForm>;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(NormalForm, ErrBound),
    Game(GameForm),
    Complex(ComplexNF, ErrBound),
    Trig(TrigExpr, ErrBound),
    Interval(Rational, Rational),
}

impl From<NormalForm> for Value {
    fn from(x: NormalForm) -> Self {
        Value::Num(x, None)
    }
}

impl From<Truncated> for Value {
    fn from(t: Truncated) -> Self {
        Value::Num(t.value, t.error_bound)
    }
}

impl From<ComplexTruncated> for Value {
    fn from(t: ComplexTruncated) -> Self {
        Value::Complex(t.value, t.error_bound).normalize()
    }
}

impl From<TrigValue> for Value {
    fn from(t: TrigValue) -> Self {
        Value::Trig(t.value, t.error_bound).normalize()
    }
}

fn max_err(a: ErrBound, b: ErrBound) -> ErrBound {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn shifted(e: &ErrBound, lead: Option<NormalForm>) -> ErrBound {
    match (e, lead) {
        (Some(e), Some(l)) => Some(e + &l),
        _ => None,
    }
}

/// Error bound of a product `(x + O(ea)) (y + O(eb))`.
fn mul_err(ea: &ErrBound, la: Option<NormalForm>, eb: &ErrBound, lb: Option<NormalForm>) -> ErrBound {
    let cross = match (ea, eb) {
        (Some(a), Some(b)) => Some(a + b),
        _ => None,
    };
    max_err(max_err(shifted(ea, lb), shifted(eb, la)), cross)
}

fn trig_lead(t: &TrigExpr) -> Option<NormalForm> {
    t.terms().filter_map(|(_, c)| c.leading_exponent()).max()
}

impl Value {
    pub fn tier(&self) -> &'static str {
        match self {
            Value::Num(..) => "normal-form",
            Value::Game(_) => "game",
            Value::Complex(..) => "complex",
            Value::Trig(..) => "trig",
            Value::Interval(..) => "interval",
        }
    }

    pub fn err(&self) -> Option<&NormalForm> {
        match self {
            Value::Num(_, e) | Value::Complex(_, e) | Value::Trig(_, e) => e.as_ref(),
            _ => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.err().is_none()
    }

    /// Demotes trig expressions without tokens to complex numbers and
    /// complex numbers without imaginary part to normal forms.
    pub fn normalize(self) -> Value {
        match self {
            Value::Trig(t, e) => match t.as_complex() {
                Some(c) => Value::Complex(c, e).normalize(),
                None => Value::Trig(t, e),
            },
            Value::Complex(c, e) if c.im.is_zero() => Value::Num(c.re, e),
            v => v,
        }
    }

    /// The exact normal form this value denotes, if it is one.
    pub fn as_exact_nf(&self) -> Option<&NormalForm> {
        match self {
            Value::Num(x, None) => Some(x),
            _ => None,
        }
    }

    fn to_complex(&self) -> Option<(ComplexNF, ErrBound)> {
        match self {
            Value::Num(x, e) => Some((ComplexNF::real(x.clone()), e.clone())),
            Value::Complex(c, e) => Some((c.clone(), e.clone())),
            _ => None,
        }
    }

    fn to_trig(&self) -> Option<(TrigExpr, ErrBound)> {
        match self {
            Value::Trig(t, e) => Some((t.clone(), e.clone())),
            v => v.to_complex().map(|(c, e)| (TrigExpr::constant(c), e)),
        }
    }

    /// A game operand: games as they are, exact dyadic numbers as their
    /// canonical forms.
    fn to_game(&self) -> Option<GameForm> {
        match self {
            Value::Game(g) => Some(g.clone()),
            Value::Num(x, None) => x.as_dyadic().map(game::from_dyadic),
            _ => None,
        }
    }

    fn rank(&self) -> u8 {
        match self {
            Value::Num(..) => 0,
            Value::Complex(..) => 1,
            Value::Trig(..) => 2,
            Value::Game(_) | Value::Interval(..) => 3,
        }
    }

    fn game_pair(&self, other: &Value) -> Result<Option<(GameForm, GameForm)>, EvalError> {
        if !matches!(self, Value::Game(_)) && !matches!(other, Value::Game(_)) {
            return Ok(None);
        }
        match (self.to_game(), other.to_game()) {
            (Some(a), Some(b)) => Ok(Some((a, b))),
            _ => Err(EvalError::TierMismatch(self.tier(), other.tier())),
        }
    }

    fn check_interval(&self, other: &Value, op: &'static str) -> Result<(), EvalError> {
        for v in [self, other] {
            if let Value::Interval(..) = v {
                return Err(EvalError::Unsupported { op, tier: "interval" });
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &Value) -> Result<Value, EvalError> {
        self.check_interval(other, "addition")?;
        if let Some((a, b)) = self.game_pair(other)? {
            return Ok(Value::Game(game::add(&a, &b)));
        }
        Ok(match self.rank().max(other.rank()) {
            0 => {
                let (Value::Num(a, ea), Value::Num(b, eb)) = (self, other) else {
                    unreachable!()
                };
                Value::Num(a + b, max_err(ea.clone(), eb.clone()))
            }
            1 => {
                let ((a, ea), (b, eb)) = (self.to_complex().unwrap(), other.to_complex().unwrap());
                Value::Complex(surreal::trig::c_add(&a, &b), max_err(ea, eb))
            }
            _ => {
                let ((a, ea), (b, eb)) = (self.to_trig().unwrap(), other.to_trig().unwrap());
                Value::Trig(a.add(&b), max_err(ea, eb))
            }
        }
        .normalize())
    }

    pub fn neg(&self) -> Result<Value, EvalError> {
        Ok(match self {
            Value::Num(x, e) => Value::Num(-x, e.clone()),
            Value::Game(g) => Value::Game(game::neg(g)),
            Value::Complex(c, e) => Value::Complex(c.neg(), e.clone()),
            Value::Trig(t, e) => Value::Trig(t.scale(&ComplexNF::real(NormalForm::from_int(-1))), e.clone()),
            Value::Interval(..) => {
                return Err(EvalError::Unsupported {
                    op: "negation",
                    tier: "interval",
                })
            }
        })
    }

    pub fn sub(&self, other: &Value) -> Result<Value, EvalError> {
        self.check_interval(other, "subtraction")?;
        if let Some((a, b)) = self.game_pair(other)? {
            return Ok(Value::Game(game::sub(&a, &b)));
        }
        self.add(&other.neg()?)
    }

    pub fn mul(&self, other: &Value) -> Result<Value, EvalError> {
        self.check_interval(other, "multiplication")?;
        if let Some((a, b)) = self.game_pair(other)? {
            return Ok(Value::Game(game::mul(&a, &b)));
        }
        Ok(match self.rank().max(other.rank()) {
            0 => {
                let (Value::Num(a, ea), Value::Num(b, eb)) = (self, other) else {
                    unreachable!()
                };
                let err = mul_err(ea, a.leading_exponent().cloned(), eb, b.leading_exponent().cloned());
                Value::Num(a * b, err)
            }
            1 => {
                let ((a, ea), (b, eb)) = (self.to_complex().unwrap(), other.to_complex().unwrap());
                let err = mul_err(&ea, a.leading_exponent(), &eb, b.leading_exponent());
                Value::Complex(surreal::trig::c_mul(&a, &b), err)
            }
            _ => {
                let ((a, ea), (b, eb)) = (self.to_trig().unwrap(), other.to_trig().unwrap());
                let err = mul_err(&ea, trig_lead(&a), &eb, trig_lead(&b));
                Value::Trig(a.mul(&b), err)
            }
        }
        .normalize())
    }

    /// `self / other`, inverting `other` to `k` series terms when needed.
    pub fn div(&self, other: &Value, k: u32) -> Result<Value, EvalError> {
        self.check_interval(other, "division")?;
        if matches!(self, Value::Game(_)) || matches!(other, Value::Game(_)) {
            return Err(EvalError::Unsupported {
                op: "division",
                tier: "game",
            });
        }
        if let Value::Trig(..) = other {
            return Err(EvalError::Unsupported {
                op: "division by",
                tier: "trig",
            });
        }
        let (b, eb) = other.to_complex().unwrap();
        if eb.is_some() {
            return Err(EvalError::Argument("divisor must be exact".into()));
        }
        let inv: Value = if b.im.is_zero() {
            surreal::nf::nf_inverse(&b.re, k)?.into()
        } else {
            surreal::trig::c_div(&ComplexNF::one(), &b, k)?.into()
        };
        self.mul(&inv)
    }

    pub fn pow_int(&self, n: i64, k: u32) -> Result<Value, EvalError> {
        if n.unsigned_abs() > 4096 {
            return Err(EvalError::Argument(format!("exponent {n} is too large")));
        }
        if let Value::Num(x, None) = self {
            let p = Value::from(x.pow(n.unsigned_abs() as u32));
            return if n < 0 {
                Value::from(NormalForm::one()).div(&p, k)
            } else {
                Ok(p)
            };
        }
        let mut acc = match self {
            Value::Game(_) => Value::Game(game::from_integer(1)),
            _ => Value::from(NormalForm::one()),
        };
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(self)?;
        }
        if n < 0 {
            acc = Value::from(NormalForm::one()).div(&acc, k)?;
        }
        Ok(acc)
    }
}

fn write_err(f: &mut fmt::Formatter<'_>, body: &str, e: &ErrBound) -> fmt::Result {
    match e {
        None => write!(f, "{body}"),
        Some(e) if body == "0" => write!(f, "O(w^({e}))"),
        Some(e) => write!(f, "{body} + O(w^({e}))"),
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Num(x, e) => write_err(f, &x.to_string(), e),
            Value::Game(g) => write!(f, "{}", game::simplify(g)),
            Value::Complex(c, e) => write_err(f, &c.to_string(), e),
            Value::Trig(t, e) => write_err(f, &t.to_string(), e),
            Value::Interval(lo, hi) => write!(f, "[{lo}, {hi}]"),
        }
    }
}

/// Renders a game form in brace notation, options recursively.
pub fn render_form(g: &GameForm) -> String {
    g.to_string()
}
