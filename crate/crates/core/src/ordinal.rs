//! Ordinals below ε₀ in Cantor normal form.
//!
//! An [`Ordinal`] is a finite list of terms `ω^e · c` with strictly
//! decreasing exponents `e` (themselves ordinals) and positive integer
//! coefficients `c`. The empty list is `0`; `ω` is the single term with
//! exponent `1 = [(0, 1)]`.

use std::cmp::Ordering;
use std::fmt;

/// An ordinal `< ε₀` in Cantor normal form.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<(Ordinal, u64)>,
}

fn checked(c: Option<u64>) -> u64 {
    c.expect("ordinal coefficient overflow")
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Ordinal::from(1)
    }

    pub fn omega() -> Self {
        Ordinal::omega_pow(Ordinal::one())
    }

    /// `ω^e`.
    pub fn omega_pow(e: Ordinal) -> Self {
        Ordinal { terms: vec![(e, 1)] }
    }

    /// Builds an ordinal from `(exponent, coefficient)` pairs, which must
    /// already be in Cantor normal form. Returns `None` otherwise.
    pub fn from_terms(terms: Vec<(Ordinal, u64)>) -> Option<Self> {
        if terms.iter().any(|(_, c)| *c == 0) {
            return None;
        }
        if terms.windows(2).any(|w| w[0].0 <= w[1].0) {
            return None;
        }
        Some(Ordinal { terms })
    }

    pub fn terms(&self) -> &[(Ordinal, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.as_finite().is_some()
    }

    /// The natural number this ordinal equals, if finite.
    pub fn as_finite(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(e, c)] if e.is_zero() => Some(*c),
            _ => None,
        }
    }

    /// Leading exponent (the degree); `None` for zero.
    pub fn degree(&self) -> Option<&Ordinal> {
        self.terms.first().map(|(e, _)| e)
    }

    /// True for successor ordinals (last term has exponent 0).
    pub fn is_successor(&self) -> bool {
        self.terms.last().is_some_and(|(e, _)| e.is_zero())
    }

    pub fn is_limit(&self) -> bool {
        !self.is_zero() && !self.is_successor()
    }

    pub fn add(&self, other: &Ordinal) -> Ordinal {
        let Some((lead, lead_c)) = other.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<(Ordinal, u64)> = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut merged = false;
        for (e, c) in &self.terms {
            match e.cmp(lead) {
                Ordering::Greater => terms.push((e.clone(), *c)),
                Ordering::Equal => {
                    terms.push((e.clone(), checked(c.checked_add(*lead_c))));
                    merged = true;
                    break;
                }
                Ordering::Less => break,
            }
        }
        if !merged {
            terms.push((lead.clone(), *lead_c));
        }
        terms.extend(other.terms[1..].iter().cloned());
        Ordinal { terms }
    }

    pub fn mul(&self, other: &Ordinal) -> Ordinal {
        if self.is_zero() || other.is_zero() {
            return Ordinal::zero();
        }
        let (lead, lead_c) = &self.terms[0];
        // Left distributivity: a·(Σ ω^f n) = Σ a·ω^f·n.
        let mut acc = Ordinal::zero();
        for (f, n) in &other.terms {
            let piece = if f.is_zero() {
                let mut terms = self.terms.clone();
                terms[0].1 = checked(lead_c.checked_mul(*n));
                Ordinal { terms }
            } else {
                Ordinal {
                    terms: vec![(lead.add(f), *n)],
                }
            };
            acc = acc.add(&piece);
        }
        acc
    }

    fn pow_finite(&self, mut n: u64) -> Ordinal {
        let mut base = self.clone();
        let mut acc = Ordinal::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Splits `b = ω·q + n`, returning `(q, n)`.
    fn split_omega_multiple(&self) -> (Ordinal, u64) {
        let mut q = Vec::new();
        let mut n = 0;
        for (e, c) in &self.terms {
            if e.is_zero() {
                n = *c;
            } else {
                // e = 1 + e'; for infinite e, 1 + e = e.
                let shifted = match e.as_finite() {
                    Some(k) => Ordinal::from(k - 1),
                    None => e.clone(),
                };
                q.push((shifted, *c));
            }
        }
        (Ordinal { terms: q }, n)
    }

    pub fn pow(&self, exp: &Ordinal) -> Ordinal {
        if exp.is_zero() {
            return Ordinal::one();
        }
        if self.is_zero() {
            return Ordinal::zero();
        }
        if let Some(1) = self.as_finite() {
            return Ordinal::one();
        }
        let (q, n) = exp.split_omega_multiple();
        let limit_part = if q.is_zero() {
            Ordinal::one()
        } else if self.is_finite() {
            // k^(ω·q) = ω^q for finite k ≥ 2.
            Ordinal::omega_pow(q)
        } else {
            // a^(ω·q) = ω^(deg(a)·ω·q) for infinite a.
            let deg = self.terms[0].0.clone();
            Ordinal::omega_pow(deg.mul(&Ordinal::omega().mul(&q)))
        };
        limit_part.mul(&self.pow_finite(n))
    }

    /// Hessenberg natural sum.
    pub fn natural_add(&self, other: &Ordinal) -> Ordinal {
        let mut terms: Vec<(Ordinal, u64)> = Vec::new();
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    terms.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    terms.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    terms.push((a[i].0.clone(), checked(a[i].1.checked_add(b[j].1))));
                    i += 1;
                    j += 1;
                }
            }
        }
        Ordinal { terms }
    }

    /// If `self = ω^(ω^μ)`, returns `μ`.
    pub fn main_ordinal_parameter(&self) -> Option<Ordinal> {
        match self.terms.as_slice() {
            [(e, 1)] => match e.terms.as_slice() {
                [(mu, 1)] => Some(mu.clone()),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn is_main_ordinal(&self) -> bool {
        self.main_ordinal_parameter().is_some()
    }

    /// Whether `ω^self = self`. No ordinal below ε₀ qualifies, and this is
    /// computed rather than assumed.
    pub fn is_epsilon_number(&self) -> bool {
        Ordinal::omega().pow(self) == *self
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        if n == 0 {
            Ordinal::zero()
        } else {
            Ordinal {
                terms: vec![(Ordinal::zero(), n)],
            }
        }
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (x, y) in self.terms.iter().zip(&other.terms) {
            match x.0.cmp(&y.0).then(x.1.cmp(&y.1)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn ord_cmp(a: &Ordinal, b: &Ordinal) -> Ordering {
    a.cmp(b)
}

pub fn ord_add(a: &Ordinal, b: &Ordinal) -> Ordinal {
    a.add(b)
}

pub fn ord_mul(a: &Ordinal, b: &Ordinal) -> Ordinal {
    a.mul(b)
}

pub fn ord_pow(a: &Ordinal, b: &Ordinal) -> Ordinal {
    a.pow(b)
}

impl fmt::Display for Ordinal {
    /// Renders in the `w^(e)*c + ...` notation shared with normal forms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match (e.as_finite(), c) {
                (Some(0), c) => write!(f, "{c}")?,
                (Some(1), 1) => write!(f, "w")?,
                (Some(1), c) => write!(f, "w*{c}")?,
                (_, 1) => write!(f, "w^({e})")?,
                (_, c) => write!(f, "w^({e})*{c}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ordinal({self})")
    }
}
