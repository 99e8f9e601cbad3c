#![allow(dead_code)]

use proptest::prelude::*;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use surreal::nf::{omega_pow, NormalForm};
use surreal::rational::{int, rat, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64, d: i64) -> NormalForm {
    NormalForm::from_rational(rat(n, d))
}

pub fn w() -> NormalForm {
    NormalForm::omega()
}

pub fn eps() -> NormalForm {
    omega_pow(&NormalForm::from_int(-1))
}

pub fn nonzero_rational(r: &mut impl Rng) -> Rational {
    let n = loop {
        let n = r.gen_range(-9i64..=9);
        if n != 0 {
            break n;
        }
    };
    rat(n, r.gen_range(1..=6))
}

pub fn small_rational(r: &mut impl Rng) -> Rational {
    rat(r.gen_range(-4i64..=4), r.gen_range(1..=3))
}

/// A normal form with exponent nesting at most `depth` and at most
/// `max_terms` terms.
pub fn random_nf(r: &mut impl Rng, depth: u32, max_terms: usize) -> NormalForm {
    let n = r.gen_range(0..=max_terms);
    NormalForm::from_terms((0..n).map(|_| (random_exponent(r, depth), nonzero_rational(r))))
}

pub fn random_exponent(r: &mut impl Rng, depth: u32) -> NormalForm {
    if depth == 0 || r.gen_bool(0.5) {
        NormalForm::from_rational(small_rational(r))
    } else {
        let n = r.gen_range(1..=3);
        NormalForm::from_terms((0..n).map(|_| (random_exponent(r, depth - 1), nonzero_rational(r))))
    }
}

pub fn random_nonzero_nf(r: &mut impl Rng, depth: u32, max_terms: usize) -> NormalForm {
    loop {
        let x = random_nf(r, depth, max_terms);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn random_positive_nf(r: &mut impl Rng, depth: u32, max_terms: usize) -> NormalForm {
    let x = random_nonzero_nf(r, depth, max_terms);
    if x.is_negative() {
        -x
    } else {
        x
    }
}

/// A nonzero infinitesimal: every exponent negative.
pub fn random_infinitesimal(r: &mut impl Rng) -> NormalForm {
    let n = r.gen_range(1..=3);
    NormalForm::from_terms((0..n).map(|_| {
        let e = rat(-r.gen_range(1i64..=6), r.gen_range(1..=2));
        (NormalForm::from_rational(e), nonzero_rational(r))
    }))
}

/// An infinite part: every exponent positive.
pub fn random_infinite_part(r: &mut impl Rng) -> NormalForm {
    let n = r.gen_range(0..=2);
    NormalForm::from_terms((0..n).map(|_| {
        let e = if r.gen_bool(0.3) {
            NormalForm::from_terms([
                (NormalForm::one(), int(1)),
                (NormalForm::zero(), rat(r.gen_range(-2..=2), 1)),
            ])
        } else {
            q(r.gen_range(1i64..=6), r.gen_range(1..=2))
        };
        (e, nonzero_rational(r))
    }))
}

pub fn rational_strategy() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

pub fn nonzero_rational_strategy() -> impl Strategy<Value = Rational> {
    rational_strategy().prop_filter("nonzero", |c| *c != int(0))
}

pub fn exponent_strategy() -> impl Strategy<Value = NormalForm> {
    let leaf = (-4i64..=4, 1i64..=3).prop_map(|(n, d)| q(n, d));
    leaf.prop_recursive(2, 12, 3, |inner| {
        proptest::collection::vec((inner, nonzero_rational_strategy()), 1..=3).prop_map(NormalForm::from_terms)
    })
}

/// Normal forms with exponent depth at most two and at most four terms.
pub fn nf_strategy() -> impl Strategy<Value = NormalForm> {
    proptest::collection::vec((exponent_strategy(), nonzero_rational_strategy()), 0..=4)
        .prop_map(NormalForm::from_terms)
}

pub fn positive_nf_strategy() -> impl Strategy<Value = NormalForm> {
    nf_strategy()
        .prop_filter("nonzero", |x| !x.is_zero())
        .prop_map(|x| if x.is_negative() { -x } else { x })
}
