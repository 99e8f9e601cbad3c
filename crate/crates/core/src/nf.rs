//! Conway normal forms `Σ ω^(y_β)·r_β` with finite support.
//!
//! Exponents are themselves normal forms and coefficients are nonzero
//! rationals. Terms are kept in strictly decreasing exponent order, which
//! makes the representation unique: structural equality is numeric
//! equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::game::{Dyadic, GameForm};
use crate::ordinal::Ordinal;
use crate::rational::{self, Rational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub exponent: NormalForm,
    pub coeff: Rational,
}

/// A surreal number in Conway normal form with finite support.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct NormalForm {
    terms: Vec<Term>,
}

impl NormalForm {
    pub fn zero() -> Self {
        NormalForm { terms: Vec::new() }
    }

    pub fn one() -> Self {
        NormalForm::from_rational(Rational::one())
    }

    pub fn omega() -> Self {
        omega_pow(&NormalForm::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        NormalForm::monomial(NormalForm::zero(), q)
    }

    pub fn from_int(n: i64) -> Self {
        NormalForm::from_rational(rational::int(n))
    }

    /// `ω^exponent · coeff`; zero when `coeff = 0`.
    pub fn monomial(exponent: NormalForm, coeff: Rational) -> Self {
        if coeff.is_zero() {
            return NormalForm::zero();
        }
        NormalForm {
            terms: vec![Term { exponent, coeff }],
        }
    }

    /// Builds a normal form from arbitrary `(exponent, coefficient)` pairs,
    /// merging equal exponents and dropping zeros.
    pub fn from_terms(pairs: impl IntoIterator<Item = (NormalForm, Rational)>) -> Self {
        let mut map: BTreeMap<NormalForm, Rational> = BTreeMap::new();
        for (e, c) in pairs {
            *map.entry(e).or_insert_with(Rational::zero) += c;
        }
        NormalForm {
            terms: map
                .into_iter()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(|(exponent, coeff)| Term { exponent, coeff })
                .collect(),
        }
    }

    pub fn from_ordinal(o: &Ordinal) -> Self {
        NormalForm {
            terms: o
                .terms()
                .iter()
                .map(|(e, c)| Term {
                    exponent: NormalForm::from_ordinal(e),
                    coeff: Rational::from_integer(BigInt::from(*c)),
                })
                .collect(),
        }
    }

    pub fn from_dyadic(d: Dyadic) -> Self {
        NormalForm::from_rational(d.to_rational())
    }

    pub fn from_game(g: &GameForm) -> Self {
        NormalForm::from_dyadic(g.value())
    }

    /// The ordinal this value equals, if it is one.
    pub fn as_ordinal(&self) -> Option<Ordinal> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            if !t.coeff.is_integer() || !t.coeff.is_positive() {
                return None;
            }
            let c = t.coeff.to_integer().to_u64()?;
            terms.push((t.exponent.as_ordinal()?, c));
        }
        Ordinal::from_terms(terms)
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_exponent(&self) -> Option<&NormalForm> {
        self.terms.first().map(|t| &t.exponent)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.first().map(|t| &t.coeff)
    }

    pub fn signum(&self) -> Ordering {
        match self.terms.first() {
            None => Ordering::Equal,
            Some(t) if t.coeff.is_positive() => Ordering::Greater,
            Some(_) => Ordering::Less,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn abs(&self) -> NormalForm {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// The rational value, when the number is a plain rational.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [t] if t.exponent.is_zero() => Some(t.coeff.clone()),
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    pub fn as_dyadic(&self) -> Option<Dyadic> {
        Dyadic::from_rational(&self.as_rational()?)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn scale(&self, q: &Rational) -> NormalForm {
        if q.is_zero() {
            return NormalForm::zero();
        }
        NormalForm {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    exponent: t.exponent.clone(),
                    coeff: &t.coeff * q,
                })
                .collect(),
        }
    }

    /// Multiplies by `ω^shift` (adds `shift` to every exponent).
    pub fn shift(&self, shift: &NormalForm) -> NormalForm {
        NormalForm {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    exponent: &t.exponent + shift,
                    coeff: t.coeff.clone(),
                })
                .collect(),
        }
    }

    pub fn pow(&self, mut n: u32) -> NormalForm {
        let mut base = self.clone();
        let mut acc = NormalForm::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Drops every term with exponent `<= bound`.
    pub fn truncate_above(&self, bound: &NormalForm) -> NormalForm {
        NormalForm {
            terms: self.terms.iter().filter(|t| t.exponent > *bound).cloned().collect(),
        }
    }

    /// Exponent depth of the recursion (0 for rationals).
    pub fn depth(&self) -> usize {
        self.terms
            .iter()
            .map(|t| {
                if t.exponent.is_zero() {
                    0
                } else {
                    1 + t.exponent.depth()
                }
            })
            .max()
            .unwrap_or(0)
    }

    /// Splits `x = ω^(y₀)·r₀·(1 + δ)`, returning `(y₀, r₀, δ)`.
    pub fn factor_leader(&self) -> Option<(NormalForm, Rational, NormalForm)> {
        let lead = self.terms.first()?;
        let neg_exp = -&lead.exponent;
        let delta = NormalForm {
            terms: self.terms[1..]
                .iter()
                .map(|t| Term {
                    exponent: &t.exponent + &neg_exp,
                    coeff: &t.coeff / &lead.coeff,
                })
                .collect(),
        };
        Some((lead.exponent.clone(), lead.coeff.clone(), delta))
    }
}

/// Total order: compare leading exponents, then coefficients, then tails.
pub fn nf_cmp(x: &NormalForm, y: &NormalForm) -> Ordering {
    let sign_of = |c: &Rational| {
        if c.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    };
    let mut i = 0;
    loop {
        match (x.terms.get(i), y.terms.get(i)) {
            (None, None) => return Ordering::Equal,
            (Some(a), None) => return sign_of(&a.coeff),
            (None, Some(b)) => return sign_of(&b.coeff).reverse(),
            (Some(a), Some(b)) => match nf_cmp(&a.exponent, &b.exponent) {
                Ordering::Greater => return sign_of(&a.coeff),
                Ordering::Less => return sign_of(&b.coeff).reverse(),
                Ordering::Equal => match a.coeff.cmp(&b.coeff) {
                    Ordering::Equal => i += 1,
                    ord => return ord,
                },
            },
        }
    }
}

impl Ord for NormalForm {
    fn cmp(&self, other: &Self) -> Ordering {
        nf_cmp(self, other)
    }
}

impl PartialOrd for NormalForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn nf_add(x: &NormalForm, y: &NormalForm) -> NormalForm {
    let mut terms = Vec::with_capacity(x.terms.len() + y.terms.len());
    let (mut i, mut j) = (0, 0);
    while i < x.terms.len() || j < y.terms.len() {
        let ord = match (x.terms.get(i), y.terms.get(j)) {
            (Some(a), Some(b)) => nf_cmp(&a.exponent, &b.exponent),
            (Some(_), None) => Ordering::Greater,
            _ => Ordering::Less,
        };
        match ord {
            Ordering::Greater => {
                terms.push(x.terms[i].clone());
                i += 1;
            }
            Ordering::Less => {
                terms.push(y.terms[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                let c = &x.terms[i].coeff + &y.terms[j].coeff;
                if !c.is_zero() {
                    terms.push(Term {
                        exponent: x.terms[i].exponent.clone(),
                        coeff: c,
                    });
                }
                i += 1;
                j += 1;
            }
        }
    }
    NormalForm { terms }
}

pub fn nf_neg(x: &NormalForm) -> NormalForm {
    NormalForm {
        terms: x
            .terms
            .iter()
            .map(|t| Term {
                exponent: t.exponent.clone(),
                coeff: -t.coeff.clone(),
            })
            .collect(),
    }
}

/// Term-pair convolution; exponents add through [`nf_add`].
pub fn nf_mul(x: &NormalForm, y: &NormalForm) -> NormalForm {
    if x.is_zero() || y.is_zero() {
        return NormalForm::zero();
    }
    if let Some(q) = x.as_rational() {
        return y.scale(&q);
    }
    if let Some(q) = y.as_rational() {
        return x.scale(&q);
    }
    NormalForm::from_terms(x.terms.iter().flat_map(|a| {
        y.terms
            .iter()
            .map(move |b| (nf_add(&a.exponent, &b.exponent), &a.coeff * &b.coeff))
    }))
}

impl Add for &NormalForm {
    type Output = NormalForm;
    fn add(self, rhs: &NormalForm) -> NormalForm {
        nf_add(self, rhs)
    }
}

impl Sub for &NormalForm {
    type Output = NormalForm;
    fn sub(self, rhs: &NormalForm) -> NormalForm {
        nf_add(self, &nf_neg(rhs))
    }
}

impl Mul for &NormalForm {
    type Output = NormalForm;
    fn mul(self, rhs: &NormalForm) -> NormalForm {
        nf_mul(self, rhs)
    }
}

impl Neg for &NormalForm {
    type Output = NormalForm;
    fn neg(self) -> NormalForm {
        nf_neg(self)
    }
}

impl Neg for NormalForm {
    type Output = NormalForm;
    fn neg(self) -> NormalForm {
        nf_neg(&self)
    }
}

impl From<i64> for NormalForm {
    fn from(n: i64) -> Self {
        NormalForm::from_int(n)
    }
}

impl From<Rational> for NormalForm {
    fn from(q: Rational) -> Self {
        NormalForm::from_rational(q)
    }
}

/// `ω^x`.
pub fn omega_pow(x: &NormalForm) -> NormalForm {
    NormalForm::monomial(x.clone(), Rational::one())
}

/// The leader `ω^(y₀)` of a nonzero number.
pub fn leader(x: &NormalForm) -> Result<NormalForm> {
    x.leading_exponent().map(omega_pow).ok_or(Error::ZeroInput)
}

/// For positive `x, y`, returns `Some(n)` with `x < n·y` and `y < n·x` when
/// they are commensurate, `None` otherwise.
pub fn commensurate(x: &NormalForm, y: &NormalForm) -> Result<Option<BigInt>> {
    if !x.is_positive() || !y.is_positive() {
        return Err(Error::NonPositive);
    }
    let (a, b) = (&x.terms[0], &y.terms[0]);
    if a.exponent != b.exponent {
        return Ok(None);
    }
    let ratio = (&a.coeff / &b.coeff).max(&b.coeff / &a.coeff);
    let n = rational::integer_above(&ratio);
    let nq = Rational::from_integer(n.clone());
    debug_assert!(nf_cmp(x, &y.scale(&nq)) == Ordering::Less);
    debug_assert!(nf_cmp(y, &x.scale(&nq)) == Ordering::Less);
    Ok(Some(n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Magnitude {
    Finite,
    Infinite,
    Infinitesimal,
}

pub fn classify_magnitude(x: &NormalForm) -> Magnitude {
    match x.leading_exponent().map(NormalForm::signum) {
        None | Some(Ordering::Equal) => Magnitude::Finite,
        Some(Ordering::Greater) => Magnitude::Infinite,
        Some(Ordering::Less) => Magnitude::Infinitesimal,
    }
}

/// Splits `x` into its infinite part (terms with positive exponent) and
/// finite part (the rest).
pub fn decompose(x: &NormalForm) -> (NormalForm, NormalForm) {
    let split = x
        .terms
        .iter()
        .position(|t| !t.exponent.is_positive())
        .unwrap_or(x.terms.len());
    (
        NormalForm {
            terms: x.terms[..split].to_vec(),
        },
        NormalForm {
            terms: x.terms[split..].to_vec(),
        },
    )
}

/// A birthday that is either exact or a certified upper bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BirthdayNf {
    pub ordinal: Ordinal,
    pub exact: bool,
}

impl fmt::Display for BirthdayNf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exact {
            write!(f, "{}", self.ordinal)
        } else {
            write!(f, "<= {}", self.ordinal)
        }
    }
}

fn rational_birthday(q: &Rational) -> Ordinal {
    match Dyadic::from_rational(q) {
        Some(d) => Ordinal::from(d.birthday()),
        // every non-dyadic real is born on day ω
        None => Ordinal::omega(),
    }
}

/// Birthday of a normal form.
///
/// Exact for rationals and for `±ω^y` whenever the birthday of `y` is
/// exact (`b(ω^y) = ω^(b(y))`). Other single terms `ω^y·r` are bounded by
/// `ω^(b(y)+1)`, and sums by the natural sum of their term bounds.
pub fn birthday_nf(x: &NormalForm) -> BirthdayNf {
    match x.terms.as_slice() {
        [] => BirthdayNf {
            ordinal: Ordinal::zero(),
            exact: true,
        },
        [t] => term_birthday(t),
        terms => {
            let ordinal = terms
                .iter()
                .map(term_birthday)
                .fold(Ordinal::zero(), |acc, b| acc.natural_add(&b.ordinal));
            BirthdayNf { ordinal, exact: false }
        }
    }
}

fn term_birthday(t: &Term) -> BirthdayNf {
    if t.exponent.is_zero() {
        return BirthdayNf {
            ordinal: rational_birthday(&t.coeff),
            exact: true,
        };
    }
    let inner = birthday_nf(&t.exponent);
    if t.coeff.abs().is_one() {
        BirthdayNf {
            ordinal: Ordinal::omega_pow(inner.ordinal),
            exact: inner.exact,
        }
    } else {
        BirthdayNf {
            ordinal: Ordinal::omega_pow(inner.ordinal.add(&Ordinal::one())),
            exact: false,
        }
    }
}

fn require_main(zeta: &Ordinal) -> Result<()> {
    if zeta.is_main_ordinal() {
        Ok(())
    } else {
        Err(Error::NotMainOrdinal(zeta.to_string()))
    }
}

/// Membership in the ζ-field: every term's monomial `ω^y` must be born
/// before `ζ`. A bound that does not fall below `ζ` counts as a rejection.
pub fn in_field(x: &NormalForm, zeta: &Ordinal) -> Result<bool> {
    require_main(zeta)?;
    Ok(x.terms
        .iter()
        .all(|t| birthday_nf(&omega_pow(&t.exponent)).ordinal < *zeta))
}

/// An ordinal strictly greater than `v`.
pub fn ordinal_above(v: &NormalForm) -> Ordinal {
    let Some(lead) = v.leading() else {
        return Ordinal::one();
    };
    if lead.coeff.is_negative() {
        return Ordinal::zero();
    }
    match lead.exponent.signum() {
        Ordering::Less => Ordinal::one(),
        Ordering::Equal => Ordinal::from(coefficient_above(&lead.coeff)),
        Ordering::Greater => match lead.exponent.as_ordinal() {
            Some(e) => Ordinal::omega_pow(e).mul(&Ordinal::from(coefficient_above(&lead.coeff))),
            None => Ordinal::omega_pow(ordinal_above(&lead.exponent)),
        },
    }
}

fn coefficient_above(c: &Rational) -> u64 {
    rational::integer_above(c).to_u64().expect("coefficient fits in u64")
}

/// For `0 < x < y` in the ζ-field, an ordinal `α < ζ` with `α·x > y`:
/// `β` is an ordinal above both `1/x` and `y`, and `α = β²`.
pub fn archimedean_witness(x: &NormalForm, y: &NormalForm, zeta: &Ordinal) -> Result<Ordinal> {
    require_main(zeta)?;
    if !x.is_positive() || nf_cmp(x, y) != Ordering::Less {
        return Err(Error::PreconditionViolated("requires 0 < x < y".into()));
    }
    if !in_field(x, zeta)? || !in_field(y, zeta)? {
        return Err(Error::PreconditionViolated("x and y must lie in the field".into()));
    }
    let (y0, r0, _) = x.factor_leader().expect("x is nonzero");
    let inv_upper = if x.is_monomial() {
        NormalForm::monomial(-y0, r0.recip())
    } else {
        // x > ω^(y₀)·r₀/2, so 1/x < ω^(−y₀)·2/r₀.
        NormalForm::monomial(-y0, rational::int(2) / r0)
    };
    let beta = ordinal_above(&inv_upper).max(ordinal_above(y));
    let alpha = beta.mul(&beta);
    if alpha >= *zeta {
        return Err(Error::PreconditionViolated(format!(
            "witness {alpha} is not below {zeta}"
        )));
    }
    debug_assert!(nf_cmp(&(&NormalForm::from_ordinal(&alpha) * x), y) == Ordering::Greater);
    Ok(alpha)
}

/// A truncated series value with a certificate.
///
/// `residual_bound` bounds the leading exponent of the operation's defect
/// (`x·z − 1` for inverses, `z^n − x` for roots, ...), and `error_bound`
/// bounds the leading exponent of `exact − value`. Both are `None` when the
/// value is exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Truncated {
    pub value: NormalForm,
    pub residual_bound: Option<NormalForm>,
    pub error_bound: Option<NormalForm>,
}

impl Truncated {
    pub fn exact(value: NormalForm) -> Self {
        Truncated {
            value,
            residual_bound: None,
            error_bound: None,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.error_bound.is_none()
    }

    /// Checks a defect against the residual certificate.
    pub fn certifies(&self, defect: &NormalForm) -> bool {
        match (&self.residual_bound, defect.leading_exponent()) {
            (_, None) => true,
            (None, Some(_)) => false,
            (Some(bound), Some(e)) => e <= bound,
        }
    }
}

/// Multiplies an exponent by a natural number.
pub fn exponent_times(e: &NormalForm, k: u32) -> NormalForm {
    e.scale(&rational::int(k as i64))
}

fn series_sum(delta: &NormalForm, coeffs: impl Iterator<Item = Rational>) -> NormalForm {
    let mut acc = NormalForm::zero();
    let mut power = NormalForm::one();
    for (i, c) in coeffs.enumerate() {
        if i > 0 {
            power = &power * delta;
        }
        acc = &acc + &power.scale(&c);
    }
    acc
}

/// `1/x ≈ ω^(−y₀)·r₀⁻¹·Σ_{i≤k} (−δ)^i` for `x = ω^(y₀)·r₀·(1 + δ)`.
pub fn nf_inverse(x: &NormalForm, k: u32) -> Result<Truncated> {
    let (y0, r0, delta) = x.factor_leader().ok_or(Error::ZeroInput)?;
    let head = NormalForm::monomial(-&y0, r0.recip());
    if delta.is_zero() {
        return Ok(Truncated::exact(head));
    }
    let minus_one = -Rational::one();
    let series = series_sum(&delta, (0..=k).map(|i| num_traits::pow(minus_one.clone(), i as usize)));
    let d = delta.leading_exponent().expect("delta nonzero").clone();
    let residual = exponent_times(&d, k + 1);
    Ok(Truncated {
        value: &head * &series,
        error_bound: Some(&residual - &y0),
        residual_bound: Some(residual),
    })
}

/// Positive `n`-th root via `ω^(y₀/n)·r₀^(1/n)·(1 + δ)^(1/n)`, with the
/// binomial series cut after the `δ^k` term.
pub fn nf_nth_root(x: &NormalForm, n: u32, k: u32) -> Result<Truncated> {
    if n == 0 {
        return Err(Error::PreconditionViolated("root order must be at least 1".into()));
    }
    if !x.is_positive() {
        return Err(Error::NonPositive);
    }
    let (y0, r0, delta) = x.factor_leader().expect("x is positive");
    let root_coeff = rational::nth_root_exact(&r0, n).ok_or_else(|| Error::IrrationalLeadingRoot(r0.to_string(), n))?;
    let inv_n = Rational::new(BigInt::one(), BigInt::from(n));
    let head = NormalForm::monomial(y0.scale(&inv_n), root_coeff);
    if delta.is_zero() || n == 1 {
        return Ok(Truncated::exact(if n == 1 { x.clone() } else { head }));
    }
    let series = series_sum(&delta, (0..=k).map(|i| rational::binomial(&inv_n, i)));
    let d = delta.leading_exponent().expect("delta nonzero").clone();
    let tail = exponent_times(&d, k + 1);
    Ok(Truncated {
        value: &head * &series,
        residual_bound: Some(&y0 + &tail),
        error_bound: Some(&y0.scale(&inv_n) + &tail),
    })
}

fn fmt_exponent(e: &NormalForm, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if e.is_one() {
        write!(f, "w")
    } else {
        write!(f, "w^({e})")
    }
}

impl NormalForm {
    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }
}

impl fmt::Display for NormalForm {
    /// Canonical rendering: terms joined by `" + "`, each as
    /// `w^(<exponent>)*<coeff>`, with exponent 0 printed as the bare
    /// coefficient and `w^(1)` as `w`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if t.exponent.is_zero() {
                write!(f, "{}", t.coeff)?;
            } else if t.exponent.is_one() && t.coeff.is_one() {
                write!(f, "w")?;
            } else {
                fmt_exponent(&t.exponent, f)?;
                write!(f, "*{}", t.coeff)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NF({self})")
    }
}
