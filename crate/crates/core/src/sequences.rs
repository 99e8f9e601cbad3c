//! Symbolic ζ-indexed sequences.
//!
//! A sequence is a closed-form generator over the ordinals `0 < α < ζ`.
//! Deciders work on an asymptotic summary of the generator (limit,
//! direction of approach, or divergence) and on explicit tail indices
//! derived from the usual ε-bounds for sums, products and quotients.
//! Sampling is used only to exhibit refutation witnesses.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::nf::{in_field, nf_inverse, omega_pow, ordinal_above, NormalForm};
use crate::ordinal::Ordinal;
use crate::rational::{self, Rational};

/// The index bound: a main ordinal, or the symbolic class of all ordinals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Zeta {
    Ordinal(Ordinal),
    Omega,
}

impl Zeta {
    pub fn new(o: Ordinal) -> Result<Self> {
        if o.is_main_ordinal() {
            Ok(Zeta::Ordinal(o))
        } else {
            Err(Error::NotMainOrdinal(o.to_string()))
        }
    }

    pub fn omega() -> Self {
        Zeta::Ordinal(Ordinal::omega())
    }

    pub fn is_class(&self) -> bool {
        matches!(self, Zeta::Omega)
    }

    fn is_omega(&self) -> bool {
        matches!(self, Zeta::Ordinal(o) if *o == Ordinal::omega())
    }

    /// `0 < α < ζ`.
    pub fn contains(&self, alpha: &Ordinal) -> bool {
        !alpha.is_zero()
            && match self {
                Zeta::Ordinal(z) => alpha < z,
                Zeta::Omega => true,
            }
    }

    pub fn in_field(&self, x: &NormalForm) -> bool {
        match self {
            Zeta::Ordinal(z) => in_field(x, z).unwrap_or(false),
            Zeta::Omega => true,
        }
    }
}

impl fmt::Display for Zeta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Zeta::Ordinal(o) => write!(f, "{o}"),
            Zeta::Omega => write!(f, "OMEGA"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeqOp {
    Add,
    Mul,
    Div,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeqKind {
    Constant(NormalForm),
    /// `a + c/α`.
    Reciprocal {
        a: NormalForm,
        c: NormalForm,
    },
    /// `Σ_{n<α} coeff·ratio^n·ω^(step·n)` for finite `α`.
    GeoSum {
        coeff: Rational,
        ratio: Rational,
        step: NormalForm,
    },
    /// `α` itself.
    Identity,
    /// `before` below the switch index, `value` from it on.
    EventuallyConstant {
        switch: Ordinal,
        before: Box<SequenceGen>,
        value: NormalForm,
    },
    /// `below` while the inner value is `< at`, `above` otherwise.
    Step {
        inner: Box<SequenceGen>,
        at: NormalForm,
        below: NormalForm,
        above: NormalForm,
    },
    Combine(SeqOp, Box<SequenceGen>, Box<SequenceGen>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceGen {
    kind: SeqKind,
    zeta: Zeta,
}

fn check_in_field(zeta: &Zeta, xs: &[&NormalForm]) -> Result<()> {
    match xs.iter().find(|x| !zeta.in_field(x)) {
        Some(x) => Err(Error::PreconditionViolated(format!(
            "{x} is outside the field of {zeta}"
        ))),
        None => Ok(()),
    }
}

impl SequenceGen {
    pub fn constant(c: NormalForm, zeta: Zeta) -> Result<Self> {
        check_in_field(&zeta, &[&c])?;
        Ok(SequenceGen {
            kind: SeqKind::Constant(c),
            zeta,
        })
    }

    pub fn reciprocal(a: NormalForm, c: NormalForm, zeta: Zeta) -> Result<Self> {
        check_in_field(&zeta, &[&a, &c])?;
        Ok(SequenceGen {
            kind: SeqKind::Reciprocal { a, c },
            zeta,
        })
    }

    /// A partial-sum sequence; its terms need not lie in the field.
    pub fn geo_sum(coeff: Rational, ratio: Rational, step: NormalForm, zeta: Zeta) -> Self {
        SequenceGen {
            kind: SeqKind::GeoSum { coeff, ratio, step },
            zeta,
        }
    }

    pub fn identity(zeta: Zeta) -> Self {
        SequenceGen {
            kind: SeqKind::Identity,
            zeta,
        }
    }

    /// Also realizes a λ-sequence (`λ < ζ`) as a ζ-sequence by padding it
    /// with `value` from `λ` on.
    pub fn eventually_constant(switch: Ordinal, before: SequenceGen, value: NormalForm) -> Result<Self> {
        let zeta = before.zeta.clone();
        if !zeta.contains(&switch) {
            return Err(Error::IndexOutOfRange(switch.to_string()));
        }
        check_in_field(&zeta, &[&value])?;
        Ok(SequenceGen {
            kind: SeqKind::EventuallyConstant {
                switch,
                before: Box::new(before),
                value,
            },
            zeta,
        })
    }

    pub fn step(inner: SequenceGen, at: NormalForm, below: NormalForm, above: NormalForm) -> Self {
        let zeta = inner.zeta.clone();
        SequenceGen {
            kind: SeqKind::Step {
                inner: Box::new(inner),
                at,
                below,
                above,
            },
            zeta,
        }
    }

    pub fn kind(&self) -> &SeqKind {
        &self.kind
    }

    pub fn zeta(&self) -> &Zeta {
        &self.zeta
    }

    pub fn analyze(&self) -> Analysis {
        analyze(self)
    }
}

impl fmt::Display for SequenceGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            SeqKind::Constant(c) => write!(f, "const({c})"),
            SeqKind::Reciprocal { a, c } => write!(f, "recip(a={a}, c={c})"),
            SeqKind::GeoSum { coeff, ratio, step } => write!(f, "geosum(coeff={coeff}, base={ratio}, step={step})"),
            SeqKind::Identity => write!(f, "id"),
            SeqKind::EventuallyConstant { switch, before, value } => {
                write!(f, "evconst(switch={switch}, before={before}, value={value})")
            }
            SeqKind::Step {
                inner,
                at,
                below,
                above,
            } => write!(f, "step({inner}, at={at}, {below}|{above})"),
            SeqKind::Combine(op, a, b) => {
                let sym = match op {
                    SeqOp::Add => "+",
                    SeqOp::Mul => "*",
                    SeqOp::Div => "/",
                };
                write!(f, "({a} {sym} {b})")
            }
        }
    }
}

/// `1/α` for finite or monomial `α`.
fn ordinal_reciprocal(alpha: &Ordinal) -> Result<NormalForm> {
    match alpha.terms() {
        [(e, c)] => Ok(NormalForm::monomial(
            -NormalForm::from_ordinal(e),
            Rational::new(1.into(), (*c).into()),
        )),
        _ => Err(Error::UnsupportedIndex(alpha.to_string())),
    }
}

fn geo_term(coeff: &Rational, ratio: &Rational, step: &NormalForm, n: u64) -> NormalForm {
    let r = num_traits::pow(ratio.clone(), n as usize);
    NormalForm::monomial(step.scale(&rational::int(n as i64)), coeff * r)
}

/// The value at index `α`.
pub fn eval_seq(s: &SequenceGen, alpha: &Ordinal) -> Result<NormalForm> {
    if !s.zeta.contains(alpha) {
        return Err(Error::IndexOutOfRange(alpha.to_string()));
    }
    eval_unchecked(s, alpha)
}

fn eval_unchecked(s: &SequenceGen, alpha: &Ordinal) -> Result<NormalForm> {
    Ok(match &s.kind {
        SeqKind::Constant(c) => c.clone(),
        SeqKind::Reciprocal { a, c } => a + &(c * &ordinal_reciprocal(alpha)?),
        SeqKind::GeoSum { coeff, ratio, step } => {
            let n = alpha
                .as_finite()
                .ok_or_else(|| Error::UnsupportedIndex(alpha.to_string()))?;
            NormalForm::from_terms((0..n).filter_map(|j| {
                let t = geo_term(coeff, ratio, step, j).leading().cloned()?;
                Some((t.exponent, t.coeff))
            }))
        }
        SeqKind::Identity => NormalForm::from_ordinal(alpha),
        SeqKind::EventuallyConstant { switch, before, value } => {
            if alpha < switch {
                eval_unchecked(before, alpha)?
            } else {
                value.clone()
            }
        }
        SeqKind::Step {
            inner,
            at,
            below,
            above,
        } => {
            if eval_unchecked(inner, alpha)? < *at {
                below.clone()
            } else {
                above.clone()
            }
        }
        SeqKind::Combine(op, a, b) => {
            let (x, y) = (eval_unchecked(a, alpha)?, eval_unchecked(b, alpha)?);
            match op {
                SeqOp::Add => &x + &y,
                SeqOp::Mul => &x * &y,
                SeqOp::Div => {
                    if y.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    let inv = nf_inverse(&y, 0)?;
                    if !inv.is_exact() {
                        return Err(Error::UnsupportedIndex(format!(
                            "{alpha}: quotient has infinite support"
                        )));
                    }
                    &x * &inv.value
                }
            }
        }
    })
}

/// A limit that may involve infinite partial sums `Σ_{n≥0} r^n·ω^(s·n)`
/// (atoms, keyed by `(r, s)` with `s < 0`) on top of a finite-support part.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LimitExpr {
    pub field: NormalForm,
    pub atoms: BTreeMap<(Rational, NormalForm), NormalForm>,
}

impl LimitExpr {
    pub fn value(x: NormalForm) -> Self {
        LimitExpr {
            field: x,
            atoms: BTreeMap::new(),
        }
    }

    fn atom(coeff: NormalForm, ratio: Rational, step: NormalForm) -> Self {
        let mut atoms = BTreeMap::new();
        atoms.insert((ratio, step), coeff);
        LimitExpr {
            field: NormalForm::zero(),
            atoms,
        }
    }

    pub fn is_finite_support(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty() && self.field.is_zero()
    }

    pub fn add(&self, other: &LimitExpr) -> LimitExpr {
        let mut atoms = self.atoms.clone();
        for (k, c) in &other.atoms {
            let sum = &atoms.get(k).cloned().unwrap_or_default() + c;
            if sum.is_zero() {
                atoms.remove(k);
            } else {
                atoms.insert(k.clone(), sum);
            }
        }
        LimitExpr {
            field: &self.field + &other.field,
            atoms,
        }
    }

    pub fn scale(&self, x: &NormalForm) -> LimitExpr {
        if x.is_zero() {
            return LimitExpr::default();
        }
        LimitExpr {
            field: &self.field * x,
            atoms: self.atoms.iter().map(|(k, c)| (k.clone(), c * x)).collect(),
        }
    }

    pub fn mul(&self, other: &LimitExpr) -> Option<LimitExpr> {
        match (self.is_finite_support(), other.is_finite_support()) {
            (true, _) => Some(other.scale(&self.field)),
            (_, true) => Some(self.scale(&other.field)),
            _ => None,
        }
    }

    /// `self/other` when `other` is a nonzero monomial.
    pub fn div(&self, other: &LimitExpr) -> Option<LimitExpr> {
        if !other.is_finite_support() || !other.field.is_monomial() {
            return None;
        }
        Some(self.scale(&nf_inverse(&other.field, 0).ok()?.value))
    }

    /// The first `k` terms of every atom added to the finite part, with a
    /// bound on the leading exponent of what was left out.
    pub fn approx(&self, k: u64) -> (NormalForm, Option<NormalForm>) {
        let mut acc = self.field.clone();
        let mut bound: Option<NormalForm> = None;
        for ((ratio, step), coeff) in &self.atoms {
            let partial = NormalForm::from_terms((0..k).flat_map(|n| {
                let t = geo_term(&Rational::one(), ratio, step, n);
                (&t * coeff)
                    .terms()
                    .iter()
                    .map(|t| (t.exponent.clone(), t.coeff.clone()))
                    .collect::<Vec<_>>()
            }));
            acc = &acc + &partial;
            if !ratio.is_zero() {
                let e = &coeff.leading_exponent().cloned().unwrap_or_default() + &step.scale(&rational::int(k as i64));
                bound = Some(bound.map_or(e.clone(), |b| b.max(e)));
            }
        }
        (acc, bound)
    }

    /// Compares the limit with a finite-support value; `None` when the
    /// expansion does not settle the question.
    pub fn cmp_with(&self, p: &NormalForm) -> Option<Ordering> {
        let mut k = 4;
        while k <= 512 {
            let (approx, bound) = self.approx(k);
            let d = &approx - p;
            match (&bound, d.leading_exponent()) {
                (None, _) => return Some(d.signum()),
                (Some(b), Some(e)) if e > b => return Some(d.signum()),
                _ => k *= 2,
            }
        }
        None
    }

    /// A positive monomial above the absolute value.
    fn magnitude_bound(&self) -> Option<NormalForm> {
        let mut k = 4;
        while k <= 512 {
            let (approx, bound) = self.approx(k);
            if bound.as_ref().is_none_or(|b| b.is_negative()) {
                return Some(monomial_above(&(&approx.abs() + &NormalForm::one())));
            }
            k *= 2;
        }
        None
    }
}

impl fmt::Display for LimitExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field)?;
        for ((ratio, step), coeff) in &self.atoms {
            write!(f, " + ({coeff})*sum(n, ({ratio})^n*w^(({step})*n))")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Approach {
    Above,
    Below,
    Eventually,
    Unknown,
}

impl Approach {
    fn flip(self) -> Approach {
        match self {
            Approach::Above => Approach::Below,
            Approach::Below => Approach::Above,
            a => a,
        }
    }

    fn times_sign(self, sign: Ordering) -> Approach {
        match sign {
            Ordering::Greater => self,
            Ordering::Less => self.flip(),
            Ordering::Equal => Approach::Eventually,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Pos,
    Neg,
    Mixed,
}

impl Sign {
    fn of(o: Ordering) -> Sign {
        if o == Ordering::Less {
            Sign::Neg
        } else {
            Sign::Pos
        }
    }

    fn times(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Mixed, _) | (_, Sign::Mixed) => Sign::Mixed,
            (a, b) if a == b => Sign::Pos,
            _ => Sign::Neg,
        }
    }
}

/// Asymptotic summary of a generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Analysis {
    Convergent {
        limit: LimitExpr,
        approach: Approach,
    },
    Unbounded(Sign),
    /// Bounded, with consecutive values eventually differing by `amplitude`.
    Oscillating(NormalForm),
    Undecided,
}

fn convergent(limit: LimitExpr, approach: Approach) -> Analysis {
    Analysis::Convergent { limit, approach }
}

fn analyze(s: &SequenceGen) -> Analysis {
    match &s.kind {
        SeqKind::Constant(c) => convergent(LimitExpr::value(c.clone()), Approach::Eventually),
        SeqKind::Reciprocal { a, c } => {
            let approach = match c.signum() {
                Ordering::Greater => Approach::Above,
                Ordering::Less => Approach::Below,
                Ordering::Equal => Approach::Eventually,
            };
            convergent(LimitExpr::value(a.clone()), approach)
        }
        SeqKind::GeoSum { coeff, ratio, step } => analyze_geo(s, coeff, ratio, step),
        SeqKind::Identity => Analysis::Unbounded(Sign::Pos),
        SeqKind::EventuallyConstant { value, .. } => convergent(LimitExpr::value(value.clone()), Approach::Eventually),
        SeqKind::Step {
            inner,
            at,
            below,
            above,
        } => {
            let side = match analyze(inner) {
                Analysis::Convergent { limit, approach } => match (limit.cmp_with(at), approach) {
                    (Some(Ordering::Greater), _) => Some(above),
                    (Some(Ordering::Less), _) => Some(below),
                    (Some(Ordering::Equal), Approach::Below) => Some(below),
                    (Some(Ordering::Equal), Approach::Above | Approach::Eventually) => Some(above),
                    _ => None,
                },
                Analysis::Unbounded(Sign::Pos) => Some(above),
                Analysis::Unbounded(Sign::Neg) => Some(below),
                _ => None,
            };
            match side {
                Some(v) => convergent(LimitExpr::value(v.clone()), Approach::Eventually),
                None => Analysis::Undecided,
            }
        }
        SeqKind::Combine(op, a, b) => combine_analysis(*op, analyze(a), analyze(b)),
    }
}

fn analyze_geo(s: &SequenceGen, coeff: &Rational, ratio: &Rational, step: &NormalForm) -> Analysis {
    if !s.zeta.is_omega() {
        return Analysis::Undecided;
    }
    if ratio.is_zero() || coeff.is_zero() {
        return convergent(
            LimitExpr::value(NormalForm::from_rational(coeff.clone())),
            Approach::Eventually,
        );
    }
    let c_sign = Sign::of(coeff.cmp(&Rational::zero()));
    let r_sign = Sign::of(ratio.cmp(&Rational::zero()));
    let approach = if ratio.is_positive() {
        if coeff.is_positive() {
            Approach::Below
        } else {
            Approach::Above
        }
    } else {
        Approach::Unknown
    };
    match step.signum() {
        Ordering::Greater => Analysis::Unbounded(if ratio.is_positive() { c_sign } else { Sign::Mixed }),
        Ordering::Less => convergent(
            LimitExpr::atom(NormalForm::from_rational(coeff.clone()), ratio.clone(), step.clone()),
            approach,
        ),
        Ordering::Equal => {
            let mag = ratio.abs();
            if mag < Rational::one() {
                let limit = coeff / (Rational::one() - ratio);
                convergent(LimitExpr::value(NormalForm::from_rational(limit)), approach)
            } else if ratio.is_one() {
                Analysis::Unbounded(c_sign)
            } else if mag.is_one() {
                Analysis::Oscillating(NormalForm::from_rational(coeff.abs()))
            } else {
                Analysis::Unbounded(if r_sign == Sign::Pos { c_sign } else { Sign::Mixed })
            }
        }
    }
}

fn add_approach(a: Approach, b: Approach) -> Approach {
    match (a, b) {
        (Approach::Eventually, x) | (x, Approach::Eventually) => x,
        (x, y) if x == y => x,
        _ => Approach::Unknown,
    }
}

fn limit_sign(l: &LimitExpr) -> Option<Ordering> {
    l.cmp_with(&NormalForm::zero())
}

fn combine_analysis(op: SeqOp, a: Analysis, b: Analysis) -> Analysis {
    use Analysis::*;
    match (op, a, b) {
        (_, Undecided, _) | (_, _, Undecided) => Undecided,
        (_, Oscillating(_), _) | (_, _, Oscillating(_)) => Undecided,
        (
            SeqOp::Add,
            Convergent {
                limit: l1,
                approach: p1,
            },
            Convergent {
                limit: l2,
                approach: p2,
            },
        ) => convergent(l1.add(&l2), add_approach(p1, p2)),
        (SeqOp::Add, Unbounded(s), Convergent { .. }) | (SeqOp::Add, Convergent { .. }, Unbounded(s)) => Unbounded(s),
        (SeqOp::Add, Unbounded(s1), Unbounded(s2)) => {
            if s1 == s2 && s1 != Sign::Mixed {
                Unbounded(s1)
            } else {
                Undecided
            }
        }
        (
            SeqOp::Mul,
            Convergent {
                limit: l1,
                approach: p1,
            },
            Convergent {
                limit: l2,
                approach: p2,
            },
        ) => {
            let Some(limit) = l1.mul(&l2) else {
                return Undecided;
            };
            let approach = match (p1, p2) {
                (Approach::Eventually, p) => limit_sign(&l1).map_or(Approach::Unknown, |s| p.times_sign(s)),
                (p, Approach::Eventually) => limit_sign(&l2).map_or(Approach::Unknown, |s| p.times_sign(s)),
                _ => Approach::Unknown,
            };
            convergent(limit, approach)
        }
        (SeqOp::Mul, Unbounded(s), Convergent { limit, .. }) | (SeqOp::Mul, Convergent { limit, .. }, Unbounded(s)) => {
            match limit_sign(&limit) {
                Some(Ordering::Equal) | None => Undecided,
                Some(o) => Unbounded(s.times(Sign::of(o))),
            }
        }
        (SeqOp::Mul, Unbounded(s1), Unbounded(s2)) => Unbounded(s1.times(s2)),
        (
            SeqOp::Div,
            Convergent {
                limit: l1,
                approach: p1,
            },
            Convergent {
                limit: l2,
                approach: p2,
            },
        ) => {
            let Some(limit) = l1.div(&l2) else {
                return Undecided;
            };
            let approach = match (p1, p2, limit_sign(&l1), limit_sign(&l2)) {
                (_, _, _, None) => Approach::Unknown,
                (p, Approach::Eventually, _, Some(s2)) => p.times_sign(s2),
                (Approach::Eventually, p, Some(s1), Some(_)) => p.flip().times_sign(s1),
                _ => Approach::Unknown,
            };
            convergent(limit, approach)
        }
        (SeqOp::Div, Convergent { .. }, Unbounded(_)) => convergent(LimitExpr::default(), Approach::Unknown),
        (SeqOp::Div, Unbounded(s), Convergent { limit, .. }) => match limit_sign(&limit) {
            Some(Ordering::Equal) | None => Undecided,
            Some(o) => Unbounded(s.times(Sign::of(o))),
        },
        (SeqOp::Div, Unbounded(_), Unbounded(_)) => Undecided,
    }
}

pub fn is_infinitesimal_seq(s: &SequenceGen) -> Result<bool> {
    match analyze(s) {
        Analysis::Convergent { limit, .. } => Ok(limit.is_zero()),
        Analysis::Unbounded(_) | Analysis::Oscillating(_) => Ok(false),
        Analysis::Undecided => Err(Error::UndecidableKind),
    }
}

pub fn is_infinitely_great_seq(s: &SequenceGen) -> Result<bool> {
    match analyze(s) {
        Analysis::Unbounded(_) => Ok(true),
        Analysis::Convergent { .. } | Analysis::Oscillating(_) => Ok(false),
        Analysis::Undecided => Err(Error::UndecidableKind),
    }
}

/// A positive monomial strictly above `|v|`.
fn monomial_above(v: &NormalForm) -> NormalForm {
    match v.leading() {
        None => NormalForm::one(),
        Some(t) => NormalForm::monomial(t.exponent.clone(), t.coeff.abs() + Rational::one()),
    }
}

/// A positive monomial strictly below `|v|`, for `v ≠ 0`.
fn monomial_below(v: &NormalForm) -> Option<NormalForm> {
    v.leading()
        .map(|t| NormalForm::monomial(t.exponent.clone(), t.coeff.abs() / rational::int(3)))
}

fn monomial_inverse(m: &NormalForm) -> NormalForm {
    nf_inverse(m, 0).expect("nonzero monomial").value
}

fn max_index(xs: impl IntoIterator<Item = Option<Ordinal>>) -> Option<Ordinal> {
    xs.into_iter().try_fold(Ordinal::one(), |acc, x| Some(acc.max(x?)))
}

/// An index `α₀ < ζ` with `|x_α − x_β| < ε` for all `α, β ≥ α₀`.
pub fn tail_index(s: &SequenceGen, eps: &NormalForm) -> Option<Ordinal> {
    if !eps.is_positive() {
        return None;
    }
    let idx = raw_tail_index(s, eps)?;
    s.zeta.contains(&idx).then_some(idx)
}

fn raw_tail_index(s: &SequenceGen, eps: &NormalForm) -> Option<Ordinal> {
    match &s.kind {
        SeqKind::Constant(_) => Some(Ordinal::one()),
        SeqKind::Reciprocal { c, .. } => {
            if c.is_zero() {
                return Some(Ordinal::one());
            }
            let ratio = &monomial_above(c) * &monomial_inverse(&monomial_below(eps)?);
            Some(ordinal_above(&ratio).max(Ordinal::one()))
        }
        SeqKind::GeoSum { coeff, ratio, step } => {
            if !s.zeta.is_omega() {
                return None;
            }
            if ratio.is_zero() || coeff.is_zero() {
                return Some(Ordinal::one());
            }
            let eps = eps.as_rational()?;
            match step.signum() {
                Ordering::Less => Some(Ordinal::from(2u64)),
                Ordering::Greater => None,
                Ordering::Equal => {
                    let mag = ratio.abs();
                    if mag >= Rational::one() {
                        return None;
                    }
                    let scale = coeff.abs() / (Rational::one() - &mag);
                    let mut tail = scale;
                    for n in 1..=100_000u64 {
                        tail *= &mag;
                        if tail < eps {
                            return Some(Ordinal::from(n));
                        }
                    }
                    None
                }
            }
        }
        SeqKind::Identity => None,
        SeqKind::EventuallyConstant { switch, .. } => Some(switch.clone()),
        SeqKind::Step { inner, at, .. } => match analyze(inner) {
            Analysis::Convergent { limit, .. } if limit.cmp_with(at)? != Ordering::Equal => {
                let gap = limit.approx(64).0;
                raw_tail_index(inner, &monomial_below(&(&gap - at))?)
            }
            _ => None,
        },
        SeqKind::Combine(op, a, b) => {
            let half = eps.scale(&rational::rat(1, 2));
            match op {
                SeqOp::Add => max_index([raw_tail_index(a, &half), raw_tail_index(b, &half)]),
                SeqOp::Mul => {
                    let (ma, mb) = (bound_of(a)?, bound_of(b)?);
                    max_index([
                        raw_tail_index(a, &(&half * &monomial_inverse(&mb))),
                        raw_tail_index(b, &(&half * &monomial_inverse(&ma))),
                        raw_tail_index(a, &NormalForm::one()),
                        raw_tail_index(b, &NormalForm::one()),
                    ])
                }
                SeqOp::Div => {
                    let Analysis::Convergent { limit, .. } = analyze(b) else {
                        return None;
                    };
                    if !limit.is_finite_support() {
                        return None;
                    }
                    let r = monomial_below(&limit.field)?;
                    let r2 = &r * &r;
                    let (ma, mb) = (bound_of(a)?, bound_of(b)?);
                    max_index([
                        raw_tail_index(a, &(&(&half * &r2) * &monomial_inverse(&mb))),
                        raw_tail_index(b, &(&(&half * &r2) * &monomial_inverse(&ma))),
                        raw_tail_index(b, &r),
                        raw_tail_index(a, &NormalForm::one()),
                    ])
                }
            }
        }
    }
}

/// A monomial bounding `|x_α|` from the index `tail_index(s, 1)` on.
fn bound_of(s: &SequenceGen) -> Option<NormalForm> {
    match analyze(s) {
        Analysis::Convergent { limit, .. } => limit.magnitude_bound(),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    Refuted {
        eps: NormalForm,
        witness: Option<(Ordinal, Ordinal)>,
    },
    Undecided,
}

/// Indices tried when looking for refutation witnesses.
fn sample_indices(zeta: &Zeta) -> Vec<Ordinal> {
    let w = Ordinal::omega();
    let mut out: Vec<Ordinal> = (1..=64u64).map(Ordinal::from).collect();
    out.extend([
        w.clone(),
        w.add(&Ordinal::one()),
        w.mul(&Ordinal::from(2u64)),
        w.mul(&w),
        w.pow(&w),
    ]);
    out.retain(|a| zeta.contains(a));
    out
}

fn find_witness(s: &SequenceGen, eps: &NormalForm) -> Option<(Ordinal, Ordinal)> {
    let idx = sample_indices(&s.zeta);
    let vals: Vec<Option<NormalForm>> = idx.iter().map(|a| eval_seq(s, a).ok()).collect();
    for i in 0..idx.len() {
        for j in i + 1..idx.len() {
            if let (Some(x), Some(y)) = (&vals[i], &vals[j]) {
                if (x - y).abs() >= *eps {
                    return Some((idx[i].clone(), idx[j].clone()));
                }
            }
        }
    }
    None
}

/// Fundamentality against the given positive in-field probes `ε`.
pub fn is_cauchy(s: &SequenceGen, probes: &[NormalForm]) -> Verdict {
    match analyze(s) {
        Analysis::Undecided => Verdict::Undecided,
        Analysis::Unbounded(_) => {
            let eps = NormalForm::one();
            Verdict::Refuted {
                witness: find_witness(s, &eps),
                eps,
            }
        }
        Analysis::Oscillating(amp) => Verdict::Refuted {
            witness: find_witness(s, &amp),
            eps: amp,
        },
        Analysis::Convergent { .. } => {
            let all = probes
                .iter()
                .filter(|p| p.is_positive() && s.zeta.in_field(p))
                .all(|p| tail_index(s, p).is_some());
            if all {
                Verdict::Verified
            } else {
                Verdict::Undecided
            }
        }
    }
}

fn same_zeta(a: &SequenceGen, b: &SequenceGen) -> Result<()> {
    if a.zeta == b.zeta {
        Ok(())
    } else {
        Err(Error::PreconditionViolated(format!(
            "sequences over {} and {}",
            a.zeta, b.zeta
        )))
    }
}

/// ζ-equivalence: the difference must be infinitesimal.
pub fn seq_equivalent(a: &SequenceGen, b: &SequenceGen, probes: &[NormalForm]) -> Result<Verdict> {
    same_zeta(a, b)?;
    let minus_b = seq_combine(
        SeqOp::Mul,
        &SequenceGen::constant(NormalForm::from_int(-1), b.zeta.clone())?,
        b,
    )?;
    let diff = seq_combine(SeqOp::Add, a, &minus_b)?;
    Ok(match analyze(&diff) {
        Analysis::Convergent { limit, .. } if limit.is_zero() => match is_cauchy(&diff, probes) {
            Verdict::Verified => Verdict::Verified,
            other => other,
        },
        Analysis::Convergent { limit, .. } => {
            let (approx, _) = limit.approx(64);
            match monomial_below(&approx) {
                Some(m) => Verdict::Refuted {
                    eps: m.scale(&rational::rat(3, 2)),
                    witness: None,
                },
                None => Verdict::Undecided,
            }
        }
        Analysis::Unbounded(_) => Verdict::Refuted {
            eps: NormalForm::one(),
            witness: None,
        },
        Analysis::Oscillating(_) | Analysis::Undecided => Verdict::Undecided,
    })
}

fn has_lower_bound(s: &SequenceGen) -> bool {
    match analyze(s) {
        Analysis::Convergent { limit, .. } => limit.is_finite_support() && !limit.field.is_zero(),
        Analysis::Unbounded(_) => true,
        _ => false,
    }
}

/// Pointwise sum, product or quotient.
pub fn seq_combine(op: SeqOp, a: &SequenceGen, b: &SequenceGen) -> Result<SequenceGen> {
    same_zeta(a, b)?;
    let zeta = a.zeta.clone();
    use SeqKind::*;
    let simple = match (op, &a.kind, &b.kind) {
        (SeqOp::Add, Constant(x), Constant(y)) => Some(Constant(x + y)),
        (SeqOp::Mul, Constant(x), Constant(y)) => Some(Constant(x * y)),
        (SeqOp::Add, Reciprocal { a: a1, c: c1 }, Reciprocal { a: a2, c: c2 }) => {
            Some(Reciprocal { a: a1 + a2, c: c1 + c2 })
        }
        (SeqOp::Add, Constant(k), Reciprocal { a, c }) | (SeqOp::Add, Reciprocal { a, c }, Constant(k)) => {
            Some(Reciprocal { a: a + k, c: c.clone() })
        }
        (SeqOp::Mul, Constant(k), Reciprocal { a, c }) | (SeqOp::Mul, Reciprocal { a, c }, Constant(k)) => {
            Some(Reciprocal { a: a * k, c: c * k })
        }
        _ => None,
    };
    if let Some(kind) = simple {
        return Ok(SequenceGen { kind, zeta });
    }
    if op == SeqOp::Div && !has_lower_bound(b) {
        return Err(Error::NoLowerBound);
    }
    Ok(SequenceGen {
        kind: Combine(op, Box::new(a.clone()), Box::new(b.clone())),
        zeta,
    })
}

/// `(1/x_α)`; reciprocal sequences and the identity swap into each other.
pub fn seq_reciprocal(s: &SequenceGen) -> Result<SequenceGen> {
    let zeta = s.zeta.clone();
    match &s.kind {
        SeqKind::Reciprocal { a, c } if a.is_zero() && !c.is_zero() => {
            let k = nf_inverse(c, 0)?;
            if !k.is_exact() {
                return Err(Error::NoLowerBound);
            }
            seq_combine(
                SeqOp::Mul,
                &SequenceGen::constant(k.value, zeta.clone())?,
                &SequenceGen::identity(zeta),
            )
        }
        SeqKind::Identity => SequenceGen::reciprocal(NormalForm::zero(), NormalForm::one(), zeta),
        _ => seq_combine(SeqOp::Div, &SequenceGen::constant(NormalForm::one(), zeta)?, s),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LimitResult {
    Value(NormalForm),
    NoLimitInField(LimitExpr),
    Divergent,
    Gap,
    Undecided,
}

impl fmt::Display for LimitResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LimitResult::Value(v) => write!(f, "{v}"),
            LimitResult::NoLimitInField(l) => write!(f, "no-limit-in-field ({l})"),
            LimitResult::Divergent => write!(f, "divergent"),
            LimitResult::Gap => write!(f, "gap"),
            LimitResult::Undecided => write!(f, "undecided"),
        }
    }
}

pub fn limit(s: &SequenceGen) -> LimitResult {
    match analyze(s) {
        Analysis::Convergent { limit, .. } => {
            if limit.is_finite_support() && s.zeta.in_field(&limit.field) {
                LimitResult::Value(limit.field)
            } else {
                LimitResult::NoLimitInField(limit)
            }
        }
        Analysis::Unbounded(_) if s.zeta.is_class() => LimitResult::Gap,
        Analysis::Unbounded(_) | Analysis::Oscillating(_) => LimitResult::Divergent,
        Analysis::Undecided => LimitResult::Undecided,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SectionVerdict {
    NumberWithExtremum(NormalForm),
    IrrationalSection,
    GapFirstKind,
    Undecided,
}

impl fmt::Display for SectionVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SectionVerdict::NumberWithExtremum(v) => write!(f, "number {v}"),
            SectionVerdict::IrrationalSection => write!(f, "irrational-section"),
            SectionVerdict::GapFirstKind => write!(f, "gap-first-kind"),
            SectionVerdict::Undecided => write!(f, "undecided"),
        }
    }
}

/// Probe-relative picture of the cut a sequence defines: a probe is lower
/// when the tail eventually stays above it and upper when the tail stays
/// below it. Probes equal to an eventual value are listed separately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionResult {
    pub lower: Vec<NormalForm>,
    pub upper: Vec<NormalForm>,
    pub at_limit: Vec<NormalForm>,
    pub undetermined: Vec<NormalForm>,
    pub verdict: SectionVerdict,
}

pub fn dedekind_section(s: &SequenceGen, probes: &[NormalForm]) -> Result<SectionResult> {
    let mut out = SectionResult {
        lower: Vec::new(),
        upper: Vec::new(),
        at_limit: Vec::new(),
        undetermined: Vec::new(),
        verdict: SectionVerdict::Undecided,
    };
    let analysis = analyze(s);
    if s.zeta.is_class() {
        if let Analysis::Unbounded(sign) = analysis {
            match sign {
                Sign::Pos => out.lower = probes.to_vec(),
                Sign::Neg => out.upper = probes.to_vec(),
                Sign::Mixed => return Err(Error::NotCauchy),
            }
            out.verdict = SectionVerdict::GapFirstKind;
            return Ok(out);
        }
    }
    let mut eps: Vec<NormalForm> = vec![NormalForm::one()];
    for p in probes {
        for q in probes {
            let d = p - q;
            if d.is_positive() {
                eps.push(d);
            }
        }
    }
    match is_cauchy(s, &eps) {
        Verdict::Refuted { .. } => return Err(Error::NotCauchy),
        Verdict::Undecided => {
            out.undetermined = probes.to_vec();
            return Ok(out);
        }
        Verdict::Verified => {}
    }
    let Analysis::Convergent { limit, approach } = analysis else {
        return Err(Error::NotCauchy);
    };
    for p in probes {
        let bucket = match (limit.cmp_with(p), approach) {
            (Some(Ordering::Greater), _) => &mut out.lower,
            (Some(Ordering::Less), _) => &mut out.upper,
            (Some(Ordering::Equal), Approach::Above) => &mut out.lower,
            (Some(Ordering::Equal), Approach::Below) => &mut out.upper,
            (Some(Ordering::Equal), Approach::Eventually) => &mut out.at_limit,
            _ => &mut out.undetermined,
        };
        bucket.push(p.clone());
    }
    out.verdict = if limit.is_finite_support() && s.zeta.in_field(&limit.field) {
        SectionVerdict::NumberWithExtremum(limit.field)
    } else {
        SectionVerdict::IrrationalSection
    };
    Ok(out)
}

/// One-variable expressions for continuity probes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FnExpr {
    Var,
    Const(NormalForm),
    Add(Box<FnExpr>, Box<FnExpr>),
    Mul(Box<FnExpr>, Box<FnExpr>),
    Neg(Box<FnExpr>),
    Recip(Box<FnExpr>),
    /// `below` for arguments `< at`, `above` otherwise.
    Step {
        arg: Box<FnExpr>,
        at: NormalForm,
        below: NormalForm,
        above: NormalForm,
    },
}

impl FnExpr {
    pub fn eval(&self, x: &NormalForm) -> Result<NormalForm> {
        Ok(match self {
            FnExpr::Var => x.clone(),
            FnExpr::Const(c) => c.clone(),
            FnExpr::Add(a, b) => &a.eval(x)? + &b.eval(x)?,
            FnExpr::Mul(a, b) => &a.eval(x)? * &b.eval(x)?,
            FnExpr::Neg(a) => -a.eval(x)?,
            FnExpr::Recip(a) => {
                let v = a.eval(x)?;
                if v.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                let inv = nf_inverse(&v, 0)?;
                if !inv.is_exact() {
                    return Err(Error::UnsupportedExpression(format!("1/({v}) has infinite support")));
                }
                inv.value
            }
            FnExpr::Step { arg, at, below, above } => {
                if arg.eval(x)? < *at {
                    below.clone()
                } else {
                    above.clone()
                }
            }
        })
    }

    /// `f ∘ s` as a generator.
    pub fn compose(&self, s: &SequenceGen) -> Result<SequenceGen> {
        let zeta = s.zeta.clone();
        Ok(match self {
            FnExpr::Var => s.clone(),
            FnExpr::Const(c) => SequenceGen {
                kind: SeqKind::Constant(c.clone()),
                zeta,
            },
            FnExpr::Add(a, b) => seq_combine(SeqOp::Add, &a.compose(s)?, &b.compose(s)?)?,
            FnExpr::Mul(a, b) => seq_combine(SeqOp::Mul, &a.compose(s)?, &b.compose(s)?)?,
            FnExpr::Neg(a) => seq_combine(
                SeqOp::Mul,
                &SequenceGen {
                    kind: SeqKind::Constant(NormalForm::from_int(-1)),
                    zeta,
                },
                &a.compose(s)?,
            )?,
            FnExpr::Recip(a) => seq_reciprocal(&a.compose(s)?)
                .map_err(|_| Error::UnsupportedExpression("reciprocal of a sequence without lower bound".into()))?,
            FnExpr::Step { arg, at, below, above } => {
                SequenceGen::step(arg.compose(s)?, at.clone(), below.clone(), above.clone())
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Continuity {
    Consistent,
    Violated { limit: LimitResult, expected: NormalForm },
    Undecided,
}

/// Compares `lim f(s_α)` with `f(x₀)` for every sequence `s → x₀`.
pub fn check_continuity(f: &FnExpr, x0: &NormalForm, seqs: &[SequenceGen]) -> Result<Continuity> {
    let expected = f.eval(x0)?;
    let mut undecided = false;
    for s in seqs {
        if limit(s) != LimitResult::Value(x0.clone()) {
            return Err(Error::PreconditionViolated(format!("{s} does not converge to {x0}")));
        }
        match limit(&f.compose(s)?) {
            LimitResult::Value(v) if v == expected => {}
            LimitResult::Undecided => undecided = true,
            other => return Ok(Continuity::Violated { limit: other, expected }),
        }
    }
    Ok(if undecided {
        Continuity::Undecided
    } else {
        Continuity::Consistent
    })
}

/// `ω^(−n)`, handy for building probe universes.
pub fn omega_power_probe(n: i64) -> NormalForm {
    omega_pow(&NormalForm::from_int(-n))
}
