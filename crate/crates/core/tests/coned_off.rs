use std::collections::BTreeSet;

use conepair_core::coned_off::*;
use conepair_core::fixtures::load_fixture;
use conepair_core::geometry::PairModel;
use conepair_core::Word;

fn pair(name: &str) -> PairModel {
    PairModel::new(load_fixture(name).unwrap().pair().unwrap()).unwrap()
}

fn int_of(g: &ConedOffGraph, v: usize) -> i64 {
    let w = g.pair.model.word_of(g.trunc.ball.element(v));
    w.exponent_vector(1)[0]
}

#[test]
fn graph_counts() {
    let g = build_coned_off(&pair("Z_rel_Z"), 2).unwrap();
    assert_eq!((g.group_count(), g.cone_count()), (5, 1));
    assert_eq!((g.cayley_edges.len(), g.cone_edges.len()), (4, 5));

    let g = build_coned_off(&pair("Z_mod_2Z"), 2).unwrap();
    assert_eq!((g.group_count(), g.cone_count()), (5, 2));
    let mut sides: Vec<BTreeSet<i64>> = g
        .trunc
        .members
        .iter()
        .map(|m| m.iter().map(|&v| int_of(&g, v as usize)).collect())
        .collect();
    sides.sort();
    assert_eq!(sides, vec![BTreeSet::from([-2, 0, 2]), BTreeSet::from([-1, 1])]);

    let g = build_coned_off(&pair("Z6_one_sub"), 6).unwrap();
    assert_eq!((g.group_count(), g.cone_count()), (6, 3));
    assert!(g.trunc.members.iter().all(|m| m.len() == 2));
    // no cone–cone edges
    assert!(g.cone_edges.iter().all(|&(a, b)| !g.is_cone(a as usize) && g.is_cone(b as usize)));
}

/// Independent oracle: vertices of Γ̂(Z, {mZ}) on [-r, r] as integers and residues,
/// closed walks enumerated as sequences with distinct vertices.
fn line_cycles(m: i64, r: i64, l: usize) -> usize {
    #[derive(Clone, Copy, PartialEq)]
    enum V {
        G(i64),
        C(i64),
    }
    let adj = |a: V, b: V| match (a, b) {
        (V::G(x), V::G(y)) => (x - y).abs() == 1,
        (V::G(x), V::C(c)) | (V::C(c), V::G(x)) => x.rem_euclid(m) == c,
        _ => false,
    };
    let mut verts: Vec<V> = (-r..=r).map(V::G).collect();
    verts.extend((0..m.min(2 * r + 1)).map(V::C));
    let mut count = 0usize;
    fn go(
        verts: &[V],
        adj: &dyn Fn(V, V) -> bool,
        path: &mut Vec<usize>,
        l: usize,
        count: &mut usize,
    ) {
        if path.len() == l {
            if adj(verts[path[l - 1]], verts[path[0]]) {
                *count += 1;
            }
            return;
        }
        for i in 0..verts.len() {
            if path.contains(&i) || !adj(verts[*path.last().unwrap()], verts[i]) {
                continue;
            }
            let cones = path.iter().chain([&i]).filter(|&&j| matches!(verts[j], V::C(_))).count();
            if cones > 1 {
                continue;
            }
            path.push(i);
            go(verts, adj, path, l, count);
            path.pop();
        }
    }
    for s in 0..verts.len() {
        go(&verts, &adj, &mut vec![s], l, &mut count);
    }
    // each cycle counted once per start and direction
    count / (2 * l)
}

#[test]
fn loops_match_walk_oracle() {
    let g = build_coned_off(&pair("Z_mod_2Z"), 8).unwrap();
    assert!(enumerate_unicone_loops(&g, 3, LoopMode::OrbitReps).unwrap().is_empty());
    for l in 3..=6 {
        let ours = simple_cycles(&g, l, l, 1, None, None).len();
        assert_eq!(ours, line_cycles(2, 8, l), "length {l}");
    }
    let four = enumerate_unicone_loops(&g, 4, LoopMode::OrbitReps).unwrap();
    assert_eq!(four.len(), 1);
    assert_eq!(four[0].cone_count, 1);

    let g = build_coned_off(&pair("Z_rel_Z"), 8).unwrap();
    let three = enumerate_unicone_loops(&g, 3, LoopMode::OrbitReps).unwrap();
    assert_eq!(three.len(), 1);
    assert_eq!(simple_cycles(&g, 3, 3, 1, None, None).len(), line_cycles(1, 8, 3));
}

#[test]
fn loop_margin_is_enforced() {
    let g = build_coned_off(&pair("Z_mod_2Z"), 2).unwrap();
    assert!(enumerate_unicone_loops(&g, 6, LoopMode::BasedAtIdentity).unwrap_err().is_margin());
}

#[test]
fn faces_and_pi1() {
    let g = build_coned_off(&pair("Z_rel_Z"), 3).unwrap();
    let skel = attach_unicone_cells(&g, 3).unwrap();
    assert!(skel.faces.is_empty());
    let p = pi1_presentation(&skel, 0).unwrap();
    assert_eq!(p.rank(), 6);
    assert_eq!(p.rank(), g.edge_count() - g.vertex_count() + 1);

    let cx = attach_unicone_cells(&g, 4).unwrap();
    assert_eq!(cx.faces.len(), 6);
    let p = pi1_presentation(&cx, 0).unwrap();
    assert!(simplify(p.rank(), &p.spec.relators, TietzeBudget::default()).is_trivial());

    let g = build_coned_off(&pair("Z_mod_2Z"), 4).unwrap();
    assert!(attach_unicone_cells(&g, 4).unwrap().faces.is_empty());
}

#[test]
fn probe_examples() {
    let yes = |name: &str, l, k, ri, ro| {
        let r = probe_unicone_simply_connected(&pair(name), l, k, ri, ro, ProbeBudget::default()).unwrap();
        assert_eq!(r.verdict, ScVerdict::Yes, "{name}: {r:?}");
    };
    yes("Z_rel_Z", 4, 8, 4, 12);
    yes("Z_mod_2Z", 6, 8, 4, 14);
    yes("F2_rel_a", 4, 6, 2, 6);
    let err = probe_unicone_simply_connected(&pair("Z_rel_Z"), 4, 8, 4, 5, ProbeBudget::default());
    assert!(err.unwrap_err().is_margin());
}

#[test]
fn skeleton_probe_is_not_yes() {
    // without cells the truncated graph has free π₁; the witness must be certified
    let r = probe_unicone_simply_connected(&pair("Z_mod_2Z"), 3, 4, 2, 5, ProbeBudget::default()).unwrap();
    assert!(matches!(r.verdict, ScVerdict::No { .. }), "{r:?}");
}

#[test]
fn surgery_examples() {
    let g = build_coned_off(&pair("Z_mod_4Z"), 6).unwrap();
    let v = |x: i64| {
        g.trunc
            .ball
            .index_of(&g.pair.model.element(&Word::power_of(0, x)))
            .unwrap()
    };
    let a = g.group_count() + g.trunc.membership[v(0)][0] as usize;
    let cert = reduce_loop_to_unicone(&g, &[v(0), a, v(4), v(3), v(2), v(1)]).unwrap();
    assert_eq!(cert.surgeries.len(), 1);
    let path: Vec<i64> = cert.surgeries[0].path.iter().map(|&x| int_of(&g, x)).collect();
    assert_eq!(path, vec![4, 3, 2, 1, 0]);
    assert!(cert.result.iter().all(|&x| !g.is_cone(x)));

    let cone_free = reduce_loop_to_unicone(&g, &[v(0), v(1), v(2), v(3), v(4), a]);
    assert_eq!(cone_free.unwrap().surgeries.len(), 1);

    let g = build_coned_off(&pair("Z_mod_2Z"), 6).unwrap();
    let v = |x: i64| {
        g.trunc
            .ball
            .index_of(&g.pair.model.element(&Word::power_of(0, x)))
            .unwrap()
    };
    let even = g.group_count() + g.trunc.membership[v(0)][0] as usize;
    let odd = g.group_count() + g.trunc.membership[v(1)][0] as usize;
    let cert = reduce_loop_to_unicone(&g, &[v(0), even, v(2), v(3), odd, v(1)]).unwrap();
    assert_eq!(cert.surgeries.len(), 2);
    assert!(cert.result.iter().all(|&x| !g.is_cone(x)));
    let plain = reduce_loop_to_unicone(&g, &[v(0), v(1), v(2), v(1)]);
    assert!(plain.unwrap().surgeries.is_empty());
}
