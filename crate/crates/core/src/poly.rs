//! Polynomials over normal forms and roots of odd-degree polynomials.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::nf::{NormalForm, Truncated};
use crate::rational::{self, Rational};

/// Coefficients in descending degree order; the leading one is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<NormalForm>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<NormalForm>) -> Result<Self> {
        match coeffs.first() {
            Some(c) if !c.is_zero() => Ok(Polynomial { coeffs }),
            _ => Err(Error::ZeroLeadingCoefficient),
        }
    }

    pub fn from_rationals(coeffs: impl IntoIterator<Item = Rational>) -> Result<Self> {
        Polynomial::new(coeffs.into_iter().map(NormalForm::from_rational).collect())
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self> {
        Polynomial::new(coeffs.iter().map(|&c| NormalForm::from_int(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[NormalForm] {
        &self.coeffs
    }

    /// Coefficient of `x^p`.
    pub fn coeff_of(&self, p: usize) -> &NormalForm {
        &self.coeffs[self.degree() - p]
    }

    pub fn rational_coeffs(&self) -> Option<Vec<Rational>> {
        self.coeffs.iter().map(NormalForm::as_rational).collect()
    }

    /// The derivative; the zero polynomial is represented by `None`.
    pub fn derivative(&self) -> Option<Polynomial> {
        let n = self.degree();
        if n == 0 {
            return None;
        }
        let coeffs = self.coeffs[..n]
            .iter()
            .enumerate()
            .map(|(j, c)| c.scale(&rational::int((n - j) as i64)))
            .collect();
        Some(Polynomial { coeffs })
    }
}

/// Horner evaluation.
pub fn poly_eval(p: &Polynomial, x: &NormalForm) -> NormalForm {
    p.coeffs.iter().fold(NormalForm::zero(), |acc, c| &(&acc * x) + c)
}

fn eval_rational(coeffs: &[Rational], x: &Rational) -> Rational {
    coeffs.iter().fold(Rational::zero(), |acc, c| acc * x + c)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OddRoot {
    /// An exact root.
    Exact(NormalForm),
    /// A dyadic bracket `lo < root < hi` around an irrational real root.
    Bracket { lo: Rational, hi: Rational },
    /// A truncated Newton series; `residual_bound` is the leading exponent
    /// of `P(value)`.
    Series(Truncated),
}

impl OddRoot {
    pub fn is_exact(&self) -> bool {
        match self {
            OddRoot::Exact(_) => true,
            OddRoot::Series(t) => t.is_exact(),
            OddRoot::Bracket { .. } => false,
        }
    }
}

/// A root of an odd-degree polynomial.
///
/// With rational data the result is an exact rational root when one exists
/// and otherwise a bracket of width at most `2^-k`. With normal-form data the
/// leading term comes from the Newton polygon (largest admissible exponent)
/// and `k` Newton corrections refine the tail.
pub fn odd_poly_root(p: &Polynomial, k: u32) -> Result<OddRoot> {
    if p.coeffs[0].is_zero() {
        return Err(Error::ZeroLeadingCoefficient);
    }
    if p.degree().is_multiple_of(2) {
        return Err(Error::EvenDegree);
    }
    if p.coeffs.last().is_some_and(NormalForm::is_zero) {
        return Ok(OddRoot::Exact(NormalForm::zero()));
    }
    match p.rational_coeffs() {
        Some(qs) => Ok(rational_root(&qs, k)),
        None => newton_root(p, k),
    }
}

fn rational_root(coeffs: &[Rational], k: u32) -> OddRoot {
    if coeffs.len() == 2 {
        return OddRoot::Exact(NormalForm::from_rational(-&coeffs[1] / &coeffs[0]));
    }
    if let Some(r) = rational_roots(coeffs).pop() {
        return OddRoot::Exact(NormalForm::from_rational(r));
    }
    let sign = |x: &Rational| eval_rational(coeffs, x).signum();
    let mut bound = Rational::one();
    while sign(&bound) == sign(&-&bound) {
        bound *= rational::int(2);
    }
    let (mut lo, mut hi) = (-bound.clone(), bound);
    let lo_sign = sign(&lo);
    let width = Rational::new(BigInt::one(), BigInt::one() << k);
    while &hi - &lo > width {
        let mid = (&lo + &hi) / rational::int(2);
        let s = sign(&mid);
        if s.is_zero() {
            return OddRoot::Exact(NormalForm::from_rational(mid));
        }
        if s == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    OddRoot::Bracket { lo, hi }
}

const DIVISOR_LIMIT: u64 = 1 << 40;

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64().filter(|&n| n <= DIVISOR_LIMIT)?;
    let mut out = Vec::new();
    for d in 1..=n.sqrt() {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
    }
    Some(out)
}

/// Distinct nonzero rational roots in increasing order, by the rational
/// root theorem. Returns an empty list when the integer coefficients are too
/// large to factor.
pub fn rational_roots(coeffs: &[Rational]) -> Vec<Rational> {
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let Some(last) = ints.iter().rposition(|c| !c.is_zero()) else {
        return Vec::new();
    };
    let ints = &ints[..=last];
    if ints.len() < 2 {
        return Vec::new();
    }
    let (Some(ps), Some(qs)) = (divisors(&ints[last]), divisors(&ints[0])) else {
        return Vec::new();
    };
    let mut roots: Vec<Rational> = Vec::new();
    for p in &ps {
        for q in &qs {
            for cand in [
                Rational::new(p.clone(), q.clone()),
                Rational::new(-p.clone(), q.clone()),
            ] {
                if !roots.contains(&cand) && eval_rational(coeffs, &cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots
}

/// Leading exponent and coefficient of every nonzero coefficient, keyed by
/// the power of `x`.
fn polygon_points(p: &Polynomial) -> Vec<(usize, NormalForm, Rational)> {
    (0..=p.degree())
        .filter_map(|pow| {
            let t = p.coeff_of(pow).leading()?;
            Some((pow, t.exponent.clone(), t.coeff.clone()))
        })
        .collect()
}

/// Candidate leading terms `ω^e·c` in the order they are tried: exponents
/// from the Newton polygon in decreasing order, then rational roots of the
/// characteristic polynomial in decreasing order.
fn leading_candidates(p: &Polynomial) -> Result<Vec<(NormalForm, Rational)>> {
    let points = polygon_points(p);
    let mut exps: Vec<NormalForm> = Vec::new();
    for (i, (pi, vi, _)) in points.iter().enumerate() {
        for (pj, vj, _) in &points[i + 1..] {
            let span = Rational::new(BigInt::one(), BigInt::from(pj - pi));
            let e = (vi - vj).scale(&span);
            if !exps.contains(&e) {
                exps.push(e);
            }
        }
    }
    exps.sort_by(|a, b| b.cmp(a));
    let mut out = Vec::new();
    let mut irrational = None;
    for e in exps {
        let weight = |pow: usize, v: &NormalForm| v + &e.scale(&rational::int(pow as i64));
        let top = points
            .iter()
            .map(|(pow, v, _)| weight(*pow, v))
            .max()
            .expect("nonempty");
        let active: Vec<&(usize, NormalForm, Rational)> =
            points.iter().filter(|(pow, v, _)| weight(*pow, v) == top).collect();
        if active.len() < 2 {
            continue;
        }
        let hi = active.iter().map(|a| a.0).max().expect("nonempty");
        let mut chi = vec![Rational::zero(); hi + 1];
        for (pow, _, c) in &active {
            chi[hi - pow] = c.clone();
        }
        let roots = rational_roots(&chi);
        if roots.is_empty() {
            irrational.get_or_insert_with(|| e.to_string());
        }
        out.extend(roots.into_iter().rev().map(|c| (e.clone(), c)));
    }
    if out.is_empty() {
        return Err(Error::IrrationalLeadingRoot(
            format!(
                "characteristic polynomial at exponent {}",
                irrational.unwrap_or_default()
            ),
            1,
        ));
    }
    Ok(out)
}

fn newton_root(p: &Polynomial, k: u32) -> Result<OddRoot> {
    let dp = p.derivative().expect("odd degree is at least one");
    let mut best: Option<Truncated> = None;
    for (e, c) in leading_candidates(p)? {
        let mut x = NormalForm::monomial(e, c);
        let mut value = poly_eval(p, &x);
        for _ in 0..k {
            if value.is_zero() {
                break;
            }
            let slope = poly_eval(&dp, &x);
            let (Some(vt), Some(st)) = (value.leading(), slope.leading()) else {
                break;
            };
            let h = NormalForm::monomial(&vt.exponent - &st.exponent, -(&vt.coeff / &st.coeff));
            let next = &x + &h;
            let next_value = poly_eval(p, &next);
            if !next_value.is_zero() && next_value.leading_exponent() >= value.leading_exponent() {
                break;
            }
            x = next;
            value = next_value;
        }
        let residual = value.leading_exponent().cloned();
        let candidate = Truncated {
            value: x,
            error_bound: residual.clone(),
            residual_bound: residual,
        };
        if candidate.is_exact() {
            return Ok(OddRoot::Series(candidate));
        }
        let better = match &best {
            None => true,
            Some(b) => candidate.residual_bound.cmp(&b.residual_bound) == Ordering::Less,
        };
        if better {
            best = Some(candidate);
        }
    }
    Ok(OddRoot::Series(best.expect("at least one candidate")))
}
