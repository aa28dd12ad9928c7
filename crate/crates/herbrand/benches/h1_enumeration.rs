//! Parallel vs sequential H1 enumeration on induced modules of graded
//! size. Candidate cocycle tables grow as |A*|^(number of generators), so
//! the three cases below span roughly two orders of magnitude of work.

use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use herbrand::cohomology::{
    enumerate_h1_par, enumerate_h1_seq, induce, FiniteGGroup, FiniteGroup,
};

/// Induced module `Ind_h^g A` for the subgroup of the given order with the
/// trivial h-action on `A`.
fn induced_module(g: FiniteGroup, subgroup_order: usize, a: FiniteGroup) -> FiniteGGroup {
    let h_elems = g
        .all_subgroups()
        .unwrap()
        .into_iter()
        .find(|s| s.len() == subgroup_order)
        .unwrap();
    let (sub, sorted) = g.subgroup(&h_elems).unwrap();
    let m = FiniteGGroup::trivial(sub, a);
    induce(&g, &sorted, &m).unwrap().module().clone()
}

fn cases() -> Vec<(&'static str, FiniteGGroup)> {
    vec![
        // 4^4 = 256 tables over one generator.
        ("C8/C2xC4", induced_module(FiniteGroup::cyclic(8), 2, FiniteGroup::cyclic(4))),
        // 81^2 = 6561 tables over two generators.
        ("D4/C2xC3", induced_module(FiniteGroup::dihedral4(), 2, FiniteGroup::cyclic(3))),
        // 216^2 = 46656 tables over two generators.
        ("S3/C2xS3", induced_module(FiniteGroup::symmetric3(), 2, FiniteGroup::symmetric3())),
    ]
}

fn bench_h1(c: &mut Criterion) {
    let mut group = c.benchmark_group("h1_enumeration");
    group.sample_size(20).warm_up_time(Duration::from_secs(1));
    for (label, module) in cases() {
        group.bench_with_input(BenchmarkId::new("parallel", label), &module, |b, m| {
            b.iter(|| enumerate_h1_par(black_box(m)).unwrap().len())
        });
        group.bench_with_input(BenchmarkId::new("sequential", label), &module, |b, m| {
            b.iter(|| enumerate_h1_seq(black_box(m)).unwrap().len())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_h1);
criterion_main!(benches);
