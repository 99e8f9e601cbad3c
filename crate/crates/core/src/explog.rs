//! Exponentials and logarithms.
//!
//! `a^x` splits `x` into its infinite part `x'` and finite part
//! `x'' = n + δ` and returns `ω^(x'/ω)·a^n·exp(δ)`. The logarithm inverts
//! this through the leader factorization `x = ω^(y₀)·r₀·(1 + δ)`. Series on
//! infinitesimals use natural units: `a^δ` is `exp(δ)` and `log_a(1 + δ)`
//! is `log(1 + δ)` for every base.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::nf::{decompose, exponent_times, Magnitude, NormalForm, Truncated};
use crate::rational::{self, Rational};

/// A positive rational base other than one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpBase(Rational);

impl ExpBase {
    pub fn new(value: Rational) -> Result<Self> {
        if value.is_positive() && !value.is_one() {
            Ok(ExpBase(value))
        } else {
            Err(Error::InvalidBase)
        }
    }

    pub fn from_nf(value: &NormalForm) -> Result<Self> {
        ExpBase::new(value.as_rational().ok_or(Error::InvalidBase)?)
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    fn is_below_one(&self) -> bool {
        self.0 < Rational::one()
    }
}

fn require_infinitesimal(delta: &NormalForm) -> Result<()> {
    match delta.leading_exponent() {
        Some(e) if !e.is_negative() => Err(Error::NotInfinitesimal),
        _ => Ok(()),
    }
}

/// `Σ_{i≤k} coeffs(i)·δ^i` with error exponent `(k+1)·d`.
pub(crate) fn power_series(delta: &NormalForm, k: u32, coeff: impl Fn(u32) -> Rational) -> Result<Truncated> {
    require_infinitesimal(delta)?;
    let mut acc = NormalForm::zero();
    let mut power = NormalForm::one();
    for i in 0..=k {
        if i > 0 {
            if delta.is_zero() {
                break;
            }
            power = &power * delta;
        }
        acc = &acc + &power.scale(&coeff(i));
    }
    Ok(match delta.leading_exponent() {
        None => Truncated::exact(acc),
        Some(d) => {
            let bound = exponent_times(d, k + 1);
            Truncated {
                value: acc,
                residual_bound: Some(bound.clone()),
                error_bound: Some(bound),
            }
        }
    })
}

fn inv_factorial(i: u32) -> Rational {
    Rational::new(BigInt::one(), rational::factorial(i))
}

/// `Σ_{i≤k} δ^i/i!`.
pub fn exp_inf(delta: &NormalForm, k: u32) -> Result<Truncated> {
    power_series(delta, k, inv_factorial)
}

/// `Σ_{1≤i≤k} (−1)^(i−1)·δ^i/i`.
pub fn log1p_inf(delta: &NormalForm, k: u32) -> Result<Truncated> {
    power_series(delta, k, |i| {
        if i == 0 {
            Rational::zero()
        } else {
            let sign = if i % 2 == 1 { 1 } else { -1 };
            Rational::new(BigInt::from(sign), BigInt::from(i))
        }
    })
}

fn shift_all(x: &NormalForm, by: i64) -> NormalForm {
    x.shift(&NormalForm::from_int(by))
}

/// `a^x`.
pub fn pow(a: &ExpBase, x: &NormalForm, k: u32) -> Result<Truncated> {
    let (infinite, finite) = decompose(x);
    let n = finite
        .terms()
        .iter()
        .find(|t| t.exponent.is_zero())
        .map(|t| t.coeff.clone())
        .unwrap_or_else(Rational::zero);
    let n_part = NormalForm::from_rational(n.clone());
    if !n.is_integer() {
        return Err(Error::UnsupportedFinitePart);
    }
    let n = n.to_integer().to_i64().ok_or(Error::UnsupportedFinitePart)?;
    let delta = &finite - &n_part;
    let sign = if a.is_below_one() { -1 } else { 1 };
    let scale = NormalForm::from_rational(rational::pow_int(&a.0, n).expect("base is nonzero"));
    let lead = crate::nf::omega_pow(&shift_all(&infinite, -1).scale(&rational::int(sign)));
    let series = exp_inf(&delta.scale(&rational::int(sign)), k)?;
    let head = &lead * &scale;
    let error = series.error_bound.as_ref().map(|e| &lead_exponent(&head) + e);
    Ok(Truncated {
        value: &head * &series.value,
        residual_bound: error.clone(),
        error_bound: error,
    })
}

fn lead_exponent(x: &NormalForm) -> NormalForm {
    x.leading_exponent().cloned().unwrap_or_default()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Infinitesimal,
    Finite,
    Infinite,
    Outside,
}

impl std::fmt::Display for Domain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Domain::Infinitesimal => "X-",
            Domain::Finite => "X0",
            Domain::Infinite => "X+",
            Domain::Outside => "outside",
        })
    }
}

fn exponents_above_minus_one(y: &NormalForm) -> bool {
    let minus_one = NormalForm::from_int(-1);
    y.terms().iter().all(|t| t.exponent > minus_one)
}

/// The part of the logarithm domain `x` falls into.
pub fn in_x(x: &NormalForm) -> Result<Domain> {
    if !x.is_positive() {
        return Err(Error::NonPositive);
    }
    let y0 = x.leading_exponent().expect("positive");
    Ok(match crate::nf::classify_magnitude(x) {
        Magnitude::Finite => Domain::Finite,
        Magnitude::Infinite if exponents_above_minus_one(y0) => Domain::Infinite,
        Magnitude::Infinitesimal if exponents_above_minus_one(&-y0) => Domain::Infinitesimal,
        _ => Domain::Outside,
    })
}

/// `log_a x = ω·y₀ + log_a r₀ + log(1 + δ)`.
pub fn log(a: &ExpBase, x: &NormalForm, k: u32) -> Result<Truncated> {
    if in_x(x)? == Domain::Outside {
        return Err(Error::OutsideDomain);
    }
    if a.is_below_one() {
        let t = log(&ExpBase(a.0.recip()), x, k)?;
        return Ok(Truncated { value: -t.value, ..t });
    }
    let (y0, r0, delta) = x.factor_leader().expect("positive");
    let m = rational::exact_log(&a.0, &r0).ok_or_else(|| Error::InexactRealLog(r0.to_string(), a.0.to_string()))?;
    let series = log1p_inf(&delta, k)?;
    let value = &(&shift_all(&y0, 1) + &NormalForm::from_int(m)) + &series.value;
    Ok(Truncated { value, ..series })
}
