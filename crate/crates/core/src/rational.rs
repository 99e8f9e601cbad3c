//! Exact rational coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// True when the denominator is a power of two.
pub fn is_dyadic(q: &Rational) -> bool {
    let d = q.denom();
    d.is_one() || (d & (d - BigInt::one())).is_zero()
}

/// Exact `n`-th root of a rational, if it exists.
pub fn nth_root_exact(q: &Rational, n: u32) -> Option<Rational> {
    if n == 0 {
        return None;
    }
    if q.is_zero() {
        return Some(Rational::zero());
    }
    if q.is_negative() && n.is_multiple_of(2) {
        return None;
    }
    let root_int = |x: &BigInt| -> Option<BigInt> {
        let r = x.abs().nth_root(n);
        (r.pow(n) == x.abs()).then(|| if x.is_negative() { -r } else { r })
    };
    let num = root_int(q.numer())?;
    let den = root_int(q.denom())?;
    Some(Rational::new(num, den))
}

/// `q^e` for a signed integer exponent; `None` when `q = 0` and `e < 0`.
pub fn pow_int(q: &Rational, e: i64) -> Option<Rational> {
    if e < 0 && q.is_zero() {
        return None;
    }
    let mag = e.unsigned_abs() as u32;
    let p = num_traits::pow(q.clone(), mag as usize);
    Some(if e < 0 { p.recip() } else { p })
}

/// The integer `m` with `base^m = q`, if one exists. `base` must be
/// positive and different from one.
pub fn exact_log(base: &Rational, q: &Rational) -> Option<i64> {
    if !q.is_positive() || !base.is_positive() || base.is_one() {
        return None;
    }
    if q.is_one() {
        return Some(0);
    }
    let (b, target, sign) = if (q > &Rational::one()) == (base > &Rational::one()) {
        (base.clone(), q.clone(), 1)
    } else {
        (base.recip(), q.clone(), -1)
    };
    // b and target are on the same side of 1, so powers move monotonically.
    let up = b > Rational::one();
    let mut acc = Rational::one();
    for m in 1..=4096i64 {
        acc *= &b;
        if acc == target {
            return Some(sign * m);
        }
        if (up && acc > target) || (!up && acc < target) {
            return None;
        }
    }
    None
}

pub fn floor_i64(q: &Rational) -> Option<i64> {
    q.floor().to_integer().to_i64()
}

/// `⌊q⌋ + 1` as a big integer, the least integer strictly above `q`.
pub fn integer_above(q: &Rational) -> BigInt {
    q.numer().div_floor(q.denom()) + BigInt::one()
}

pub fn binomial(alpha: &Rational, i: u32) -> Rational {
    let mut acc = Rational::one();
    for j in 0..i {
        acc = acc * (alpha - Rational::from_integer(BigInt::from(j))) / Rational::from_integer(BigInt::from(j + 1));
    }
    acc
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Parses `p`, `p/q` or a decimal `a.b`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Rational::new(p, q));
    }
    if let Some((a, b)) = s.split_once('.') {
        if b.is_empty() || !b.bytes().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let neg = a.starts_with('-');
        let whole: BigInt = if a.is_empty() || a == "-" {
            BigInt::zero()
        } else {
            a.parse().ok()?
        };
        let frac: BigInt = b.parse().ok()?;
        let scale = num_traits::pow(BigInt::from(10), b.len());
        let frac = Rational::new(frac, scale);
        let whole = Rational::from_integer(whole.abs());
        let v = whole + frac;
        return Some(if neg { -v } else { v });
    }
    s.parse::<BigInt>().ok().map(Rational::from_integer)
}
