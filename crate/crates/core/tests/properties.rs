mod common;

use proptest::prelude::*;

use common::*;
use surreal::explog::{self, ExpBase};
use surreal::game::{self, Dyadic, GameForm};
use surreal::nf::{decompose, nf_inverse, nf_nth_root, omega_pow, NormalForm};
use surreal::rational::{int, Rational};
use surreal::sequences::{dedekind_section, seq_combine, seq_equivalent, SeqOp, SequenceGen, Verdict, Zeta};
use surreal::trig::{c_add, c_div, c_mul, cos_inf, sin_inf, ComplexNF};
use surreal::Ordinal;

fn ordinal_strategy() -> impl Strategy<Value = Ordinal> {
    let leaf = (0u64..=4).prop_map(Ordinal::from);
    leaf.prop_recursive(2, 8, 3, |inner| {
        proptest::collection::vec((inner, 1u64..=3), 1..=3).prop_map(|terms| {
            let mut terms = terms;
            terms.sort_by(|a, b| b.0.cmp(&a.0));
            terms.dedup_by(|a, b| a.0 == b.0);
            Ordinal::from_terms(terms).unwrap()
        })
    })
}

fn form_strategy() -> impl Strategy<Value = GameForm> {
    let forms = game::day_forms(3);
    let n = forms.len();
    let pick = proptest::collection::vec(0..n, 0..=2);
    (pick.clone(), pick).prop_filter_map("not a number", move |(l, r)| {
        let side = |ix: &[usize]| ix.iter().map(|&i| forms[i].clone()).collect::<Vec<_>>();
        GameForm::new(side(&l), side(&r)).ok()
    })
}

fn dyadic_strategy() -> impl Strategy<Value = Dyadic> {
    let values = game::enumerate_day(3);
    (0..values.len()).prop_map(move |i| values[i])
}

fn infinitesimal_strategy() -> impl Strategy<Value = NormalForm> {
    proptest::collection::vec(((1i64..=6, 1i64..=2), nonzero_rational_strategy()), 1..=3)
        .prop_map(|ts| NormalForm::from_terms(ts.into_iter().map(|((n, d), c)| (q(-n, d), c))))
}

fn complex_strategy() -> impl Strategy<Value = ComplexNF> {
    let part = || {
        proptest::collection::vec((exponent_strategy(), nonzero_rational_strategy()), 0..=2)
            .prop_map(NormalForm::from_terms)
    };
    (part(), part()).prop_map(|(re, im)| ComplexNF::new(re, im))
}

fn within(diff: Option<NormalForm>, bound: &Option<NormalForm>) -> bool {
    match (diff, bound) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(e), Some(b)) => e <= *b,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ordinal_addition_is_associative(a in ordinal_strategy(), b in ordinal_strategy(), c in ordinal_strategy()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
    }

    #[test]
    fn ordinal_multiplication_distributes_on_the_left(a in ordinal_strategy(), b in ordinal_strategy(), c in ordinal_strategy()) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn ordinal_order_laws(a in ordinal_strategy(), b in ordinal_strategy()) {
        prop_assert!(a.add(&b) >= a);
        prop_assert_eq!(a.natural_add(&b), b.natural_add(&a));
        prop_assert!(a.natural_add(&b) >= a.add(&b));
        if !b.is_zero() {
            prop_assert!(a.add(&b) > a);
        }
    }

    #[test]
    fn ordinal_exponent_law(a in 2u64..=3, b in ordinal_strategy(), c in ordinal_strategy()) {
        let a = Ordinal::from(a);
        prop_assert_eq!(a.pow(&b.add(&c)), a.pow(&b).mul(&a.pow(&c)));
    }

    #[test]
    fn game_order_is_a_total_preorder(x in form_strategy(), y in form_strategy(), z in form_strategy()) {
        prop_assert!(game::leq(&x, &x));
        prop_assert!(game::leq(&x, &y) || game::leq(&y, &x));
        if game::leq(&x, &y) && game::leq(&y, &z) {
            prop_assert!(game::leq(&x, &z));
        }
        prop_assert_eq!(game::cmp(&x, &y), game::simplify(&x).cmp(&game::simplify(&y)));
    }

    #[test]
    fn memoisation_is_invisible(x in form_strategy(), y in form_strategy()) {
        let memo = (game::leq(&x, &y), game::simplify(&game::add(&x, &y)));
        let plain = game::with_memo_disabled(|| (game::leq(&x, &y), game::simplify(&game::add(&x, &y))));
        prop_assert_eq!(memo, plain);
    }

    #[test]
    fn game_values_respect_arithmetic(x in form_strategy(), y in form_strategy()) {
        let (a, b) = (game::simplify(&x), game::simplify(&y));
        prop_assert_eq!(game::simplify(&game::add(&x, &y)), a + b);
        prop_assert_eq!(game::simplify(&game::neg(&x)), -a);
        prop_assert!(game::eq(&game::add(&x, &game::neg(&x)), &GameForm::zero()));
    }

    #[test]
    fn game_and_normal_form_tiers_agree(a in dyadic_strategy(), b in dyadic_strategy()) {
        let (x, y) = (game::from_dyadic(a), game::from_dyadic(b));
        let (nx, ny) = (NormalForm::from_game(&x), NormalForm::from_game(&y));
        prop_assert_eq!(nx.as_dyadic(), Some(a));
        prop_assert_eq!(NormalForm::from_game(&game::add(&x, &y)), &nx + &ny);
        prop_assert_eq!(NormalForm::from_game(&game::mul(&x, &y)), &nx * &ny);
        prop_assert_eq!(nx.cmp(&ny), game::cmp(&x, &y));
    }

    #[test]
    fn normal_forms_form_a_commutative_ring(x in nf_strategy(), y in nf_strategy(), z in nf_strategy()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert!((&x - &x).is_zero());
        prop_assert_eq!(&x * &NormalForm::one(), x.clone());
    }

    #[test]
    fn normal_form_order_is_compatible(x in nf_strategy(), y in nf_strategy(), z in nf_strategy()) {
        prop_assert_eq!(x.cmp(&y), (&x - &y).signum());
        if x < y {
            prop_assert!(&x + &z < &y + &z);
            if z.is_positive() {
                prop_assert!(&x * &z < &y * &z);
            }
        }
    }

    #[test]
    fn omega_power_is_an_order_embedding(x in exponent_strategy(), y in exponent_strategy()) {
        prop_assert_eq!(omega_pow(&(&x + &y)), &omega_pow(&x) * &omega_pow(&y));
        prop_assert_eq!(omega_pow(&x).cmp(&omega_pow(&y)), x.cmp(&y));
    }

    #[test]
    fn decompose_reconstructs(x in nf_strategy()) {
        let (inf, fin) = decompose(&x);
        prop_assert_eq!(&inf + &fin, x);
        prop_assert!(inf.terms().iter().all(|t| t.exponent.is_positive()));
        prop_assert!(fin.terms().iter().all(|t| !t.exponent.is_positive()));
    }

    #[test]
    fn inverse_certificate(x in positive_nf_strategy(), k in 0u32..=5) {
        let z = nf_inverse(&x, k).unwrap();
        let defect = &(&x * &z.value) - &NormalForm::one();
        prop_assert!(z.certifies(&defect));
    }

    #[test]
    fn root_certificate(e in exponent_strategy(), c in 1i64..=5, n in 1u32..=3, d in infinitesimal_strategy(), k in 0u32..=4) {
        let head = NormalForm::monomial(e, num_traits::pow(int(c), n as usize));
        let x = &head + &(&head * &d);
        let y = nf_nth_root(&x, n, k).unwrap();
        let defect = &y.value.pow(n) - &x;
        prop_assert!(y.certifies(&defect));
    }

    #[test]
    fn pow_is_monotone_on_exact_arguments(a in -6i64..=6, b in -6i64..=6, u in nf_strategy(), v in nf_strategy()) {
        let base = ExpBase::new(int(2)).unwrap();
        let (iu, _) = decompose(&u);
        let (iv, _) = decompose(&v);
        let x = &iu + &q(a, 1);
        let y = &iv + &q(b, 1);
        let px = explog::pow(&base, &x, 3).unwrap();
        let py = explog::pow(&base, &y, 3).unwrap();
        prop_assert!(px.is_exact() && py.is_exact());
        prop_assert_eq!(px.value.cmp(&py.value), x.cmp(&y));
    }

    #[test]
    fn log_inverts_pow_on_purely_infinite_arguments(u in nf_strategy()) {
        let (x, _) = decompose(&u);
        let base = ExpBase::new(int(2)).unwrap();
        let p = explog::pow(&base, &x, 3).unwrap();
        let back = explog::log(&base, &p.value, 3).unwrap();
        prop_assert_eq!(back.value, x);
    }

    #[test]
    fn complex_multiplication_laws(a in complex_strategy(), b in complex_strategy(), c in complex_strategy()) {
        prop_assert_eq!(c_mul(&a, &b), c_mul(&b, &a));
        prop_assert_eq!(c_mul(&c_mul(&a, &b), &c), c_mul(&a, &c_mul(&b, &c)));
        prop_assert_eq!(c_mul(&a, &c_add(&b, &c)), c_add(&c_mul(&a, &b), &c_mul(&a, &c)));
        prop_assert_eq!(c_mul(&a, &a.conj()), ComplexNF::real(a.norm_sq()));
    }

    #[test]
    fn complex_division_round_trip(a in complex_strategy(), b in complex_strategy(), k in 0u32..=4) {
        prop_assume!(!b.is_zero());
        let z = c_div(&a, &b, k).unwrap();
        let back = c_add(&c_mul(&z.value, &b), &a.neg());
        let bound = z.error_bound.as_ref().zip(b.leading_exponent()).map(|(e, l)| e + &l);
        prop_assert!(within(back.leading_exponent(), &bound));
    }

    #[test]
    fn pythagorean_defect_is_bounded(d in infinitesimal_strategy(), k in 1u32..=4) {
        let s = sin_inf(&d, k).unwrap().value;
        let c = cos_inf(&d, k).unwrap().value;
        let defect = &(&(&s * &s) + &(&c * &c)) - &NormalForm::one();
        let lead = d.leading_exponent().unwrap().scale(&Rational::from_integer((k + 1).into()));
        prop_assert!(within(defect.leading_exponent().cloned(), &Some(lead)));
    }

    #[test]
    fn sections_do_not_depend_on_the_representative(a in rational_strategy(), c in nonzero_rational_strategy(), c2 in nonzero_rational_strategy()) {
        let z = Zeta::omega();
        let s = SequenceGen::reciprocal(NormalForm::from_rational(a.clone()), NormalForm::from_rational(c), z.clone()).unwrap();
        let t = seq_combine(
            SeqOp::Add,
            &s,
            &SequenceGen::reciprocal(NormalForm::zero(), NormalForm::from_rational(c2), z).unwrap(),
        ).unwrap();
        let limit = NormalForm::from_rational(a);
        let probes: Vec<NormalForm> = (-8..=8).map(|i| q(i, 4)).filter(|p| *p != limit).collect();
        prop_assert_eq!(seq_equivalent(&s, &t, &probes).unwrap(), Verdict::Verified);
        let (ss, st) = (dedekind_section(&s, &probes).unwrap(), dedekind_section(&t, &probes).unwrap());
        prop_assert_eq!(ss.lower, st.lower);
        prop_assert_eq!(ss.upper, st.upper);
        prop_assert_eq!(ss.verdict, st.verdict);
    }
}
