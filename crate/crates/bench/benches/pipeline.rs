use conepair_bench::pair;
use conepair_core::geometry::{coset_enumerate, GroupModel};
use conepair_core::homology::{chain_complex, homology, Coefficients};
use conepair_core::rips::{build_unicone_rips, essential_triviality_probe, Schedule};
use conepair_core::{SubgroupSpec, Word};
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn balls(c: &mut Criterion) {
    let mut g = c.benchmark_group("ball");
    for (name, r) in [("Z2_rel_Z", 20), ("F2_rel_a", 8)] {
        let spec = pair(name).model.spec().clone();
        g.bench_function(format!("{name}/R{r}"), |b| {
            b.iter(|| GroupModel::new(&spec).unwrap().ball(black_box(r)).unwrap().len())
        });
    }
    g.finish();
}

fn cosets(c: &mut Criterion) {
    let p = pair("Z6_two_subs");
    let h = SubgroupSpec {
        name: "H".into(),
        generator_words: vec![Word::empty()],
        multiplicity_index: 0,
    };
    c.bench_function("coset_enumerate/Z6_trivial", |b| b.iter(|| coset_enumerate(&p.model, black_box(&h), 1000)));
}

fn rips(c: &mut Criterion) {
    let mut g = c.benchmark_group("rips");
    for (name, alpha, r) in [("Z_mod_2Z", 3, 10), ("Z2_rel_Z", 2, 6), ("F2_rel_a", 2, 4)] {
        let p = pair(name);
        g.bench_function(format!("{name}/a{alpha}/R{r}"), |b| {
            b.iter(|| build_unicone_rips(&p, alpha, black_box(r), 3).unwrap().complex.total())
        });
    }
    g.finish();
}

fn homology_groups(c: &mut Criterion) {
    let cx = build_unicone_rips(&pair("Z2_rel_Z"), 2, 6, 3).unwrap();
    let mut g = c.benchmark_group("homology");
    for coeff in [Coefficients::Z, Coefficients::Zp(2)] {
        let cc = chain_complex(&cx.complex, coeff);
        g.bench_function(format!("Z2_rel_Z/H1/{coeff}"), |b| b.iter(|| homology(&cc, 1, true).unwrap().rank()));
    }
    g.finish();
}

fn probe(c: &mut Criterion) {
    let p = pair("Z_mod_4Z");
    let s = Schedule::fixed(&[1, 2], 6, 12);
    c.bench_function("probe_fp/Z_mod_4Z", |b| {
        b.iter(|| essential_triviality_probe(&p, 1, &s, Coefficients::Z).unwrap().lines.len())
    });
}

criterion_group!(benches, balls, cosets, rips, homology_groups, probe);
criterion_main!(benches);
