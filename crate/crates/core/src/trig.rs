//! Trigonometric series, the complex extension and the circle map.
//!
//! Finite angles are rational numbers of turns and are carried as circle
//! tokens `e(θ) = cos 2πθ + i·sin 2πθ`; infinitesimal angles are radians and
//! go through the truncated series. A [`TrigExpr`] is a combination
//! `Σ c_θ·e(θ)` with complex normal-form coefficients and `θ ∈ [0, 1/4)`;
//! quarter turns fold into powers of `i`. Products multiply tokens by adding
//! angles, so the circle map is a homomorphism on the nose and
//! `cos² + sin² = 1` holds exactly for every token.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::explog::power_series;
use crate::nf::{decompose, nf_inverse, NormalForm};
use crate::par;
use crate::rational::{self, Rational};

/// `δ − δ³/3! + …`, the terms of degree below `2k`.
pub fn sin_inf(delta: &NormalForm, k: u32) -> Result<crate::nf::Truncated> {
    power_series(delta, 2 * k, |j| {
        if j % 2 == 1 && j < 2 * k {
            signed_inv_factorial(j, (j - 1) / 2)
        } else {
            Rational::zero()
        }
    })
}

/// `1 − δ²/2! + …`, the terms of degree at most `2k`.
pub fn cos_inf(delta: &NormalForm, k: u32) -> Result<crate::nf::Truncated> {
    power_series(delta, 2 * k + 1, |j| {
        if j % 2 == 0 {
            signed_inv_factorial(j, j / 2)
        } else {
            Rational::zero()
        }
    })
}

fn signed_inv_factorial(j: u32, half: u32) -> Rational {
    let sign = if half.is_multiple_of(2) { 1 } else { -1 };
    Rational::new(BigInt::from(sign), rational::factorial(j))
}

/// `re + im·i` with normal-form parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ComplexNF {
    pub re: NormalForm,
    pub im: NormalForm,
}

impl ComplexNF {
    pub fn new(re: NormalForm, im: NormalForm) -> Self {
        ComplexNF { re, im }
    }

    pub fn real(re: NormalForm) -> Self {
        ComplexNF::new(re, NormalForm::zero())
    }

    pub fn zero() -> Self {
        ComplexNF::default()
    }

    pub fn one() -> Self {
        ComplexNF::real(NormalForm::one())
    }

    pub fn i() -> Self {
        ComplexNF::new(NormalForm::zero(), NormalForm::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ComplexNF::new(self.re.clone(), -&self.im)
    }

    pub fn neg(&self) -> Self {
        ComplexNF::new(-&self.re, -&self.im)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        ComplexNF::new(self.re.scale(q), self.im.scale(q))
    }

    /// `re² + im²`.
    pub fn norm_sq(&self) -> NormalForm {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    /// Multiplies by `i^m`.
    pub fn rotate(&self, m: i64) -> Self {
        match m.rem_euclid(4) {
            0 => self.clone(),
            1 => ComplexNF::new(-&self.im, self.re.clone()),
            2 => self.neg(),
            _ => ComplexNF::new(self.im.clone(), -&self.re),
        }
    }

    pub fn leading_exponent(&self) -> Option<NormalForm> {
        self.re.leading_exponent().max(self.im.leading_exponent()).cloned()
    }
}

impl fmt::Display for ComplexNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "({})*i", self.im),
            (false, false) => write!(f, "{} + ({})*i", self.re, self.im),
        }
    }
}

pub fn c_add(a: &ComplexNF, b: &ComplexNF) -> ComplexNF {
    ComplexNF::new(&a.re + &b.re, &a.im + &b.im)
}

pub fn c_mul(a: &ComplexNF, b: &ComplexNF) -> ComplexNF {
    ComplexNF::new(&(&a.re * &b.re) - &(&a.im * &b.im), &(&a.re * &b.im) + &(&a.im * &b.re))
}

/// A complex value with the leading-exponent bound of its error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexTruncated {
    pub value: ComplexNF,
    pub error_bound: Option<NormalForm>,
}

/// `a/b = a·conj(b)/|b|²`, inverting `|b|²` to `k` series terms.
pub fn c_div(a: &ComplexNF, b: &ComplexNF, k: u32) -> Result<ComplexTruncated> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let inv = nf_inverse(&b.norm_sq(), k)?;
    let num = c_mul(a, &b.conj());
    let error_bound = match (&inv.error_bound, num.leading_exponent()) {
        (Some(e), Some(lead)) => Some(&lead + e),
        _ => None,
    };
    Ok(ComplexTruncated {
        value: c_mul(&num, &ComplexNF::real(inv.value)),
        error_bound,
    })
}

/// A rational angle in turns, reduced into `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CircleToken {
    angle: Rational,
}

impl CircleToken {
    pub fn new(turns: Rational) -> Self {
        let whole = Rational::from_integer(turns.numer().div_floor(turns.denom()));
        CircleToken { angle: turns - whole }
    }

    pub fn angle(&self) -> &Rational {
        &self.angle
    }

    /// Splits the angle as `m/4 + r` with `r ∈ [0, 1/4)`.
    fn fold(&self) -> (i64, Rational) {
        let quarters = (&self.angle * rational::int(4)).floor();
        let m = quarters.to_integer().to_i64().expect("angle below one turn");
        (m, &self.angle - quarters / rational::int(4))
    }
}

/// `Σ c_θ·e(θ)` over canonical angles `θ ∈ [0, 1/4)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TrigExpr {
    terms: BTreeMap<Rational, ComplexNF>,
}

impl TrigExpr {
    pub fn zero() -> Self {
        TrigExpr::default()
    }

    pub fn constant(c: ComplexNF) -> Self {
        TrigExpr::zero().plus_term(Rational::zero(), c)
    }

    pub fn token(t: &CircleToken) -> Self {
        let (m, r) = t.fold();
        TrigExpr::zero().plus_term(r, ComplexNF::one().rotate(m))
    }

    fn plus_term(mut self, angle: Rational, c: ComplexNF) -> Self {
        let entry = self.terms.entry(angle.clone()).or_default();
        *entry = c_add(entry, &c);
        if entry.is_zero() {
            self.terms.remove(&angle);
        }
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &ComplexNF)> {
        self.terms.iter()
    }

    /// The plain complex value when no proper token remains.
    pub fn as_complex(&self) -> Option<ComplexNF> {
        match self.terms.len() {
            0 => Some(ComplexNF::zero()),
            1 => self.terms.get(&Rational::zero()).cloned(),
            _ => None,
        }
    }

    pub fn add(&self, other: &TrigExpr) -> TrigExpr {
        other
            .terms
            .iter()
            .fold(self.clone(), |acc, (a, c)| acc.plus_term(a.clone(), c.clone()))
    }

    pub fn mul(&self, other: &TrigExpr) -> TrigExpr {
        let mut out = TrigExpr::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let (m, r) = CircleToken::new(a + b).fold();
                out = out.plus_term(r, c_mul(x, y).rotate(m));
            }
        }
        out
    }

    pub fn scale(&self, c: &ComplexNF) -> TrigExpr {
        self.mul(&TrigExpr::constant(c.clone()))
    }

    pub fn conj(&self) -> TrigExpr {
        self.terms.iter().fold(TrigExpr::zero(), |acc, (a, c)| {
            let (m, r) = CircleToken::new(-a).fold();
            acc.plus_term(r, c.conj().rotate(m))
        })
    }

    /// `(T + conj T)/2`.
    pub fn re_part(&self) -> TrigExpr {
        self.add(&self.conj())
            .scale(&ComplexNF::real(NormalForm::from_rational(rational::rat(1, 2))))
    }

    /// `(T − conj T)/(2i)`.
    pub fn im_part(&self) -> TrigExpr {
        let minus_half_i = ComplexNF::new(NormalForm::zero(), NormalForm::from_rational(rational::rat(-1, 2)));
        self.add(&self.conj().scale(&ComplexNF::real(NormalForm::from_int(-1))))
            .scale(&minus_half_i)
    }
}

impl fmt::Display for TrigExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(z) = self.as_complex() {
            return write!(f, "{z}");
        }
        for (n, (a, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            if a.is_zero() {
                write!(f, "({c})")?;
            } else {
                write!(f, "e({a})*({c})")?;
            }
        }
        Ok(())
    }
}

/// A circle-map value with the leading-exponent bound of its error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrigValue {
    pub value: TrigExpr,
    pub error_bound: Option<NormalForm>,
}

/// `ex(x) = cos 2πx + i·sin 2πx`, with the infinite part of `x` dropped,
/// the rational part as a token and the infinitesimal part (in radians)
/// expanded to `k` series terms.
pub fn ex(x: &NormalForm, k: u32) -> Result<TrigValue> {
    let (_, finite) = decompose(x);
    let q = finite
        .terms()
        .iter()
        .find(|t| t.exponent.is_zero())
        .map(|t| t.coeff.clone())
        .unwrap_or_else(Rational::zero);
    let delta = &finite - &NormalForm::from_rational(q.clone());
    let c = cos_inf(&delta, k)?;
    let s = sin_inf(&delta, k)?;
    let error_bound = c.error_bound.clone().max(s.error_bound.clone());
    let value = TrigExpr::token(&CircleToken::new(q)).scale(&ComplexNF::new(c.value, s.value));
    Ok(TrigValue { value, error_bound })
}

pub fn sin_ext(x: &NormalForm, k: u32) -> Result<TrigValue> {
    let v = ex(x, k)?;
    Ok(TrigValue {
        value: v.value.im_part(),
        ..v
    })
}

pub fn cos_ext(x: &NormalForm, k: u32) -> Result<TrigValue> {
    let v = ex(x, k)?;
    Ok(TrigValue {
        value: v.value.re_part(),
        ..v
    })
}

/// Relative modulus below which a sample counts as a suspected root.
pub const ROOT_TOLERANCE: f64 = 1e-9;

/// Net number of turns of `P(z)/|P(z)|` as `z` runs once around the circle
/// of the given radius, from equally spaced samples. Floating point; a
/// diagnostic only. Coefficients are `(re, im)` pairs in descending degree.
pub fn winding_degree(coeffs: &[(Rational, Rational)], radius: &Rational, samples: usize) -> Result<i64> {
    if samples < 3 {
        return Err(Error::PreconditionViolated("at least three samples are needed".into()));
    }
    let cs: Vec<(f64, f64)> = coeffs
        .iter()
        .map(|(a, b)| (a.to_f64().unwrap_or(f64::NAN), b.to_f64().unwrap_or(f64::NAN)))
        .collect();
    let r = radius.to_f64().unwrap_or(f64::NAN);
    let scale: f64 = cs
        .iter()
        .rev()
        .enumerate()
        .map(|(j, (a, b))| a.hypot(*b) * r.powi(j as i32))
        .sum();
    let values = par::map_range(samples, |j| {
        let t = TAU * j as f64 / samples as f64;
        let z = (r * t.cos(), r * t.sin());
        cs.iter().fold((0.0, 0.0), |(pr, pi), (a, b)| {
            (pr * z.0 - pi * z.1 + a, pr * z.1 + pi * z.0 + b)
        })
    });
    if let Some(j) = values.iter().position(|(a, b)| a.hypot(*b) <= ROOT_TOLERANCE * scale) {
        return Err(Error::RootOnCircleSuspected(j));
    }
    let args: Vec<f64> = values.iter().map(|(a, b)| b.atan2(*a)).collect();
    let total: f64 = (0..samples)
        .map(|j| {
            let d = args[(j + 1) % samples] - args[j];
            (d + std::f64::consts::PI).rem_euclid(TAU) - std::f64::consts::PI
        })
        .sum();
    Ok((total / TAU).round() as i64)
}
