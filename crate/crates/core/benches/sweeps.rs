use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use surreal::game::{self, GameForm};
use surreal::nf::{nf_inverse, NormalForm};
use surreal::par;
use surreal::rational::rat;

fn day_table(pairs: &[(GameForm, GameForm)], parallel: bool) -> usize {
    let f = |(x, y): &(GameForm, GameForm)| {
        game::clear_memo();
        game::simplify(&game::mul(x, y)).numerator()
    };
    let out: Vec<i64> = if parallel {
        run_par(pairs, f)
    } else {
        par::map_seq(pairs, f)
    };
    out.len()
}

fn inverses(xs: &[NormalForm], parallel: bool) -> usize {
    let f = |x: &NormalForm| nf_inverse(x, 6).map(|t| t.value.terms().len()).unwrap_or(0);
    let out: Vec<usize> = if parallel { run_par(xs, f) } else { par::map_seq(xs, f) };
    out.iter().sum()
}

#[cfg(feature = "parallel")]
fn run_par<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    par::map_par(items, f)
}

#[cfg(not(feature = "parallel"))]
fn run_par<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    par::map_seq(items, f)
}

fn sample_nfs() -> Vec<NormalForm> {
    (1..=64i64)
        .map(|i| {
            NormalForm::from_terms([
                (NormalForm::from_rational(rat(i % 5, 2)), rat(i, 3)),
                (NormalForm::from_int(-1), rat(1 - i, 7)),
                (NormalForm::from_rational(rat(-5, 2)), rat(2, i)),
            ])
        })
        .collect()
}

fn sweeps(c: &mut Criterion) {
    let forms = game::day_forms(3);
    let pairs: Vec<_> = forms
        .iter()
        .flat_map(|x| forms.iter().map(move |y| (x.clone(), y.clone())))
        .collect();
    let nfs = sample_nfs();
    let mut group = c.benchmark_group("sweeps");
    for (name, parallel) in [("sequential", false), ("parallel", true)] {
        group.bench_with_input(BenchmarkId::new("day3_products", name), &pairs, |b, p| {
            b.iter(|| day_table(black_box(p), parallel))
        });
        group.bench_with_input(BenchmarkId::new("nf_inverses", name), &nfs, |b, xs| {
            b.iter(|| inverses(black_box(xs), parallel))
        });
    }
    group.finish();
}

criterion_group!(benches, sweeps);
criterion_main!(benches);
