use conepair_core::coned_off::build_coned_off;
use conepair_core::fixtures::load_fixture;
use conepair_core::geometry::PairModel;
use conepair_core::homology::Coefficients;
use conepair_core::pair_maps::*;
use conepair_core::presentation::parse_pair_spec;
use conepair_core::{CosetVertex, Element, SubgroupSpec, Word};
use proptest::prelude::*;

fn pair(name: &str) -> PairModel {
    PairModel::new(load_fixture(name).unwrap().pair().unwrap()).unwrap()
}

fn pair_text(text: &str) -> PairModel {
    PairModel::new(&parse_pair_spec(text).unwrap()).unwrap()
}

fn int(p: &PairModel, n: i64) -> Element {
    p.model.element(&Word::power_of(0, n))
}

fn value(p: &PairModel, g: &Element) -> i64 {
    p.model.word_of(g).exponent_vector(1)[0]
}

fn sub(name: &str, words: Vec<Word>) -> SubgroupSpec {
    SubgroupSpec {
        name: name.into(),
        generator_words: words,
        multiplicity_index: 0,
    }
}

/// Target graphs must hold geodesics of length `L̂` from every image.
fn target_radius(f: &PairMap) -> usize {
    f.image_radius().unwrap() + f.constants.l_hat().ceil().to_integer() as usize
}

fn k(l: i64, c: i64, m: i64) -> Constants {
    Constants::integers(l, c, m).unwrap()
}

/// `n ↦ 2n` from `(Z, {2Z})` to `(Z, {4Z})`.
fn doubling(constants: Constants) -> PairMap {
    let (src, dst) = (pair("Z_mod_2Z"), pair("Z_mod_4Z"));
    let (s, d) = (src.clone(), dst.clone());
    PairMap::tabulate(
        "double",
        &src,
        &dst,
        8,
        move |g| Ok(int(&d, 2 * value(&s, g))),
        {
            let (s, d) = (src.clone(), dst.clone());
            move |a: &CosetVertex| Ok(d.coset(0, &int(&d, 2 * value(&s, &a.representative))))
        },
        constants,
    )
    .unwrap()
}

/// Identity on `(Z, {2Z})` with `f₂` shifted by one.
fn shifted() -> PairMap {
    let p = pair("Z_mod_2Z");
    let q = p.clone();
    PairMap::tabulate(
        "shift",
        &p,
        &p,
        8,
        |g| Ok(g.clone()),
        move |a| Ok(q.coset(0, &q.model.mul(&a.representative, &int(&q, 1)))),
        k(1, 0, 1),
    )
    .unwrap()
}

#[test]
fn identity_is_lipschitz() {
    let f = PairMap::identity(&pair("Z_mod_2Z"), 8).unwrap();
    assert_eq!(check_lipschitz_pair(&f, 8).unwrap(), CheckResult::Pass);
    assert_eq!(measure_constants(&f).unwrap(), k(1, 0, 1));
}

#[test]
fn doubling_is_lipschitz() {
    let f = doubling(k(2, 0, 1));
    assert_eq!(check_lipschitz_pair(&f, 8).unwrap(), CheckResult::Pass);
    assert_eq!(measure_constants(&f).unwrap(), k(2, 0, 1));
    // the homomorphism constructor gives the same table
    let g = PairMap::homomorphism(&pair("Z_mod_2Z"), &pair("Z_mod_4Z"), &[Word::power_of(0, 2)], &[0], 8).unwrap();
    assert_eq!(g.group_table(), f.group_table());
    assert_eq!(g.cone_table(), f.cone_table());
    assert_eq!(g.constants, k(2, 0, 1));
    // L = 1 is too small
    let f = doubling(k(1, 0, 1));
    assert!(matches!(check_lipschitz_pair(&f, 8).unwrap(), CheckResult::Fail(MapWitness::Lipschitz { .. })));
}

#[test]
fn squaring_fails() {
    let p = pair("Z_rel_Z");
    let q = p.clone();
    for (l, c) in [(1, 0), (3, 5), (6, 10)] {
        let f = PairMap::tabulate(
            "square",
            &p,
            &p,
            8,
            |g| {
                let n = value(&q, g);
                Ok(int(&q, n * n))
            },
            |a| Ok(a.clone()),
            k(l, c, 1),
        )
        .unwrap();
        let CheckResult::Fail(MapWitness::Lipschitz {
            src_distance,
            dst_distance,
            ..
        }) = check_lipschitz_pair(&f, 8).unwrap()
        else {
            panic!("n² passed with L={l} C={c}");
        };
        assert!(dst_distance as i64 > l * src_distance as i64 + c);
    }
}

#[test]
fn cone_condition_is_strict() {
    let f = shifted();
    for m in [0, 1] {
        let r = check_lipschitz_pair(&f.clone().with_constants(k(1, 0, m)), 8).unwrap();
        assert!(matches!(r, CheckResult::Fail(MapWitness::Cone { .. })), "M={m}");
    }
    assert!(check_lipschitz_pair(&f.clone().with_constants(k(1, 0, 2)), 8).unwrap().passed());
    assert_eq!(measure_constants(&f).unwrap(), k(1, 0, 2));
}

#[test]
fn radius_beyond_table() {
    let f = PairMap::identity(&pair("Z_mod_2Z"), 4).unwrap();
    assert!(check_lipschitz_pair(&f, 5).is_err());
}

#[test]
fn identity_quasi_retraction() {
    let f = PairMap::identity(&pair("Z_mod_2Z"), 8).unwrap();
    assert_eq!(check_quasi_retraction(&f, &f, 8).unwrap(), CheckResult::Pass);
    assert_eq!(retraction_displacement(&f, &f, 8).unwrap(), 0);
}

#[test]
fn finite_index_line() {
    let g = pair("Z_mod_4Z");
    let fi = finite_index_pair(&g, &sub("H", vec![Word::power_of(0, 2)]), 5, 10, 64).unwrap();
    assert_eq!(fi.index, 2);
    // two double cosets 2Z\Z/4Z, hence two entries
    assert_eq!(fi.sub.len(), 2);
    assert!(check_lipschitz_pair(&fi.f, 5).unwrap().passed());
    assert!(check_lipschitz_pair(&fi.r, 10).unwrap().passed());
    assert_eq!(check_quasi_retraction(&fi.f, &fi.r, 5).unwrap(), CheckResult::Pass);
    // f₁ doubles lengths, r₁ moves odd integers by one
    assert_eq!(fi.f.constants.l, Rational::from_integer(2));
    assert_eq!(retraction_displacement(&fi.f, &fi.r, 5).unwrap(), 0);
    for x in fi.r.trunc.ball.elements() {
        let n = value(&g, x);
        let h = value(&g, fi.r.image(x).unwrap());
        assert_eq!(h % 2, 0);
        assert!((n - h).abs() <= 1);
    }
    // f₂ is onto the four cosets of 4Z
    let hits: std::collections::BTreeSet<_> = fi.f.cone_table().iter().map(|b| value(&g, &b.representative).rem_euclid(4)).collect();
    assert_eq!(hits, [0, 1, 2, 3].into());
}

#[test]
fn finite_index_permuted_cones_fail() {
    let g = pair("Z_mod_4Z");
    let fi = finite_index_pair(&g, &sub("H", vec![Word::power_of(0, 2)]), 5, 10, 64).unwrap();
    let s = fi.sub.clone();
    let (r, r2) = (fi.r.clone(), fi.r.clone());
    let bad = PairMap::tabulate(
        "permuted",
        &g,
        &fi.sub,
        10,
        |x| Ok(r.image(x).unwrap().clone()),
        move |b| {
            let back = r2.cone_image(b).unwrap();
            Ok(s.coset(1 - back.collection_index, &back.representative))
        },
        fi.r.constants,
    )
    .unwrap();
    let CheckResult::Fail(MapWitness::Section { cone, image }) = check_quasi_retraction(&fi.f, &bad, 5).unwrap() else {
        panic!("permuted retraction passed");
    };
    assert_ne!(cone, image);
}

#[test]
fn finite_index_z6() {
    let g = pair("Z6_one_sub");
    let fi = finite_index_pair(&g, &sub("H", vec![Word::power_of(0, 2)]), 3, 3, 64).unwrap();
    assert_eq!(fi.index, 2);
    assert_eq!(fi.sub.len(), 1);
    // ⟨a²⟩ ∩ ⟨a³⟩ is trivial: three cosets on each side
    assert_eq!(fi.f.trunc.cones.len(), 3);
    assert_eq!(fi.f.trunc.ball.len(), 3);
    assert_eq!(fi.r.trunc.ball.len(), 6);
    assert!(check_lipschitz_pair(&fi.f, 3).unwrap().passed());
    assert!(check_lipschitz_pair(&fi.r, 3).unwrap().passed());
    assert!(check_quasi_retraction(&fi.f, &fi.r, 3).unwrap().passed());
    // f₂ is a bijection onto the three cosets of ⟨a³⟩
    let mut keys: Vec<_> = fi.f.cone_table().to_vec();
    keys.sort();
    keys.dedup();
    assert_eq!(keys.len(), 3);
    // exhaustive Lipschitz oracle over the 6 elements
    let l = fi.r.constants.l.to_integer();
    let c = fi.r.constants.c.to_integer();
    for x in fi.r.trunc.ball.elements() {
        for y in fi.r.trunc.ball.elements() {
            let d = g.model.distance(x, y).value() as i64;
            let e = fi.sub.model.distance(fi.r.image(x).unwrap(), fi.r.image(y).unwrap()).value() as i64;
            assert!(e <= l * d + c);
        }
    }
}

#[test]
fn finite_index_whole_group() {
    let g = pair("Z_mod_2Z");
    let fi = finite_index_pair(&g, &sub("G", vec![Word::power_of(0, 1)]), 6, 6, 64).unwrap();
    assert_eq!(fi.index, 1);
    assert_eq!(fi.f.constants, k(1, 0, 1));
    assert_eq!(fi.r.constants, k(1, 0, 1));
    assert_eq!(fi.f.group_table(), fi.f.trunc.ball.elements());
    assert!(check_quasi_retraction(&fi.f, &fi.r, 5).unwrap().passed());
}

#[test]
fn qdot_identity() {
    let f = PairMap::identity(&pair("Z_mod_2Z"), 8).unwrap();
    let q = build_qdot(&f, Rational::from_integer(1), 8).unwrap();
    assert!(q.consistent());
    assert!(q.source_surjective && q.target_surjective && q.bijective);
    assert_eq!(q.pairs.len(), 2);
    for a in &q.src_cones {
        assert_eq!(q.related(a), vec![a]);
    }
}

#[test]
fn qdot_onto_whole_group() {
    let f = PairMap::homomorphism(&pair("Z_mod_2Z"), &pair("Z_rel_Z"), &[Word::power_of(0, 1)], &[0], 8).unwrap();
    // hdist(odd, Z) = hdist(even, Z) = 1, so M = 1 relates nothing
    let q = build_qdot(&f, Rational::from_integer(1), 8).unwrap();
    assert!(q.pairs.is_empty());
    assert!(!q.source_surjective);
    let q = build_qdot(&f, Rational::from_integer(2), 8).unwrap();
    assert!(q.consistent());
    assert_eq!(q.pairs.len(), 2);
    assert_eq!(q.dst_cones.len(), 1);
    assert!(q.source_surjective && q.target_surjective && !q.bijective);
    let q = build_qdot(&f, Rational::from_integer(0), 8).unwrap();
    assert!(q.pairs.is_empty() && q.consistent());
}

#[test]
fn qdot_source_surjective_for_passing_maps() {
    let maps = [
        PairMap::identity(&pair("Z_mod_2Z"), 8).unwrap(),
        doubling(k(2, 0, 1)),
        shifted().measured().unwrap(),
        PairMap::generating_set_change(&pair("Z_mod_4Z"), vec![Word::power_of(0, 2), Word::power_of(0, 3)], 8).unwrap(),
        PairMap::generating_set_change(&pair("Z2_rel_Z"), vec![Word::power_of(0, 1), Word::power_of(1, 1), Word::power_of(0, 1).concat(&Word::power_of(1, 1))], 3).unwrap(),
    ];
    for f in &maps {
        assert!(check_lipschitz_pair(f, f.radius()).unwrap().passed(), "{}", f.name);
        let q = build_qdot(f, f.constants.m, f.radius()).unwrap();
        assert!(q.consistent());
        assert!(q.source_surjective, "{}", f.name);
        for (a, b) in f.trunc.cones.iter().zip(f.cone_table()) {
            assert!(q.related(a).contains(&b), "{}", f.name);
        }
    }
}

#[test]
fn coned_off_identity() {
    let p = pair("Z_mod_2Z");
    let f = PairMap::identity(&p, 8).unwrap();
    let g = build_coned_off(&p, 8).unwrap();
    let img = induced_coned_off_map(&f, &g, &g).unwrap();
    assert_eq!(img.max_length, 1);
    assert!(img.violations.is_empty());
    for e in &img.edges {
        assert_eq!(e.path, vec![e.edge.0, e.edge.1]);
    }
}

#[test]
fn coned_off_generating_set_change() {
    let p = pair("Z_mod_2Z");
    let f = PairMap::generating_set_change(&p, vec![Word::power_of(0, 2), Word::power_of(0, 3)], 8).unwrap();
    assert_eq!((f.constants.l, f.constants.c), (Rational::from_integer(2), Rational::from_integer(0)));
    let src = build_coned_off(&p, 8).unwrap();
    let dst = build_coned_off(&f.dst, target_radius(&f)).unwrap();
    let img = induced_coned_off_map(&f, &src, &dst).unwrap();
    assert!(img.violations.is_empty());
    let lc = (f.constants.l + f.constants.c).to_integer() as usize;
    for e in img.edges.iter().filter(|e| !src.is_cone(e.edge.1 as usize)) {
        assert!(e.len() <= lc);
        assert_eq!(e.cone_vertices, 0);
    }
}

#[test]
fn coned_off_cone_edges() {
    let f = shifted().measured().unwrap();
    assert_eq!(f.constants, k(1, 0, 2));
    let p = &f.src;
    let g = build_coned_off(p, 8).unwrap();
    let h = build_coned_off(p, target_radius(&f)).unwrap();
    let img = induced_coned_off_map(&f, &g, &h).unwrap();
    assert!(img.violations.is_empty());
    assert_eq!(img.bound, Rational::from_integer(3));
    let m = f.constants.m.to_integer() as usize;
    for e in img.edges.iter().filter(|e| g.is_cone(e.edge.1 as usize)) {
        // a step to the shifted coset, then the cone vertex
        assert_eq!(e.len(), 2);
        assert!(e.len() <= m + 1);
        assert_eq!(e.cone_vertices, 1);
        assert!(h.is_cone(*e.path.last().unwrap() as usize));
    }
}

#[test]
fn malnormality_abelian_violations() {
    for (name, pname) in [("Z_mod_2Z", "2Z"), ("Z2_rel_Z", "Z×0")] {
        let p = pair(name);
        let MalnormalVerdict::Violation { g, p1, p2, x } = malnormality_probe(&p, 4).unwrap() else {
            panic!("{pname} reported malnormal");
        };
        let m = &p.model;
        let e = m.identity();
        assert_ne!(x, e);
        assert_eq!(p.key(p1, &x), p.key(p1, &e));
        let y = m.mul(&m.mul(&m.inverse(&g), &x), &g);
        assert_eq!(p.key(p2, &y), p.key(p2, &e));
        assert!(p1 != p2 || p.key(p1, &g) != p.key(p1, &e));
    }
}

#[test]
fn malnormality_repeated_entries() {
    let MalnormalVerdict::Violation { p1, p2, .. } = malnormality_probe(&pair("Z_rep_2Z"), 2).unwrap() else {
        panic!("repeated entries are not malnormal");
    };
    assert_ne!(p1, p2);
}

#[test]
fn malnormality_free_group() {
    assert_eq!(malnormality_probe(&pair("F2_rel_a"), 6).unwrap(), MalnormalVerdict::NoViolationFound);
}

/// `g·aᵐ·g⁻¹` is a power of `a` exactly when `g ∈ ⟨a⟩`, read off from free reduction.
#[test]
fn free_group_normal_form_oracle() {
    fn words(len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        let mut layer = vec![Word::empty()];
        for _ in 0..len {
            let mut next = Vec::new();
            for w in &layer {
                for gen in 0..2 {
                    for inv in [false, true] {
                        let v = w.concat(&Word::letter(gen, inv));
                        if v.is_freely_reduced() {
                            next.push(v);
                        }
                    }
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
    let only_a = |w: &Word| w.letters().iter().all(|l| l.gen() == 0);
    for g in words(4) {
        for m in [-3i64, -1, 1, 2] {
            let c = g.concat(&Word::power_of(0, m)).concat(&g.inverse()).freely_reduced();
            assert_eq!(only_a(&c), only_a(&g), "{g:?}");
        }
    }
}

#[test]
fn malnormality_needs_exact_backend() {
    let p = pair_text("[group]\ngenerators = a, b\nrelators = [a,b]\nbackend = generic_fp\n\n[subgroup]\nname = X\ngenerators = a\n");
    assert!(!p.is_exact());
    assert!(matches!(malnormality_probe(&p, 3), Err(conepair_core::Error::Precondition(_))));
}

#[test]
fn square_identity_agrees() {
    let p = pair("Z_mod_4Z");
    let (f, r) = (PairMap::identity(&p, 6).unwrap(), PairMap::identity(&p, 7).unwrap());
    let scales = SquareScales {
        alpha: 1,
        alpha_prime: 2,
        beta_prime: 2,
        beta: 3,
    };
    let v = homotopy_square_check(&f, &r, scales, 1, Coefficients::Z).unwrap();
    let SquareVerdict::Agree { generators } = v else { panic!("{v:?}") };
    assert!(generators > 0);
}

#[test]
fn square_precondition() {
    let f = PairMap::identity(&pair("Z_mod_4Z"), 6).unwrap();
    let scales = SquareScales {
        alpha: 1,
        alpha_prime: 1,
        beta_prime: 2,
        beta: 3,
    };
    assert!(homotopy_square_check(&f, &f, scales, 1, Coefficients::Z).is_err());
    let scales = SquareScales {
        alpha: 1,
        alpha_prime: 2,
        beta_prime: 2,
        beta: 2,
    };
    assert!(homotopy_square_check(&f, &f, scales, 1, Coefficients::Z).is_err());
}

#[test]
fn square_generating_set_change_agrees() {
    let p = pair("Z2_rel_Z");
    let ab = Word::power_of(0, 1).concat(&Word::power_of(1, 1));
    let f = PairMap::generating_set_change(&p, vec![Word::power_of(0, 1), Word::power_of(1, 1), ab], 2).unwrap();
    let r = PairMap::identity_between(&f.dst, &p, 3).unwrap().measured().unwrap();
    assert!(check_quasi_retraction(&f, &r, 2).unwrap().passed());
    let alpha_prime = f.constants.target_scale(1);
    let beta = r.constants.target_scale(alpha_prime);
    let scales = SquareScales {
        alpha: 1,
        alpha_prime,
        beta_prime: alpha_prime,
        beta,
    };
    let v = homotopy_square_check(&f, &r, scales, 1, Coefficients::Z).unwrap();
    assert!(matches!(v, SquareVerdict::Agree { .. }), "{v:?}");
}

#[test]
fn square_corrupted_retraction_disagrees() {
    let p = pair_text("[group]\ngenerators = a\nrelators = a^36\nbackend = finite_table\n\n[subgroup]\nname = P\ngenerators = a^18\n");
    let f = PairMap::identity(&p, 18).unwrap();
    let q = p.clone();
    let (c0, c1) = (q.coset(0, &int(&q, 0)), q.coset(0, &int(&q, 1)));
    let r = PairMap::tabulate(
        "corrupt",
        &p,
        &p,
        19,
        |g| Ok(g.clone()),
        move |a| {
            Ok(if *a == c0 {
                c1.clone()
            } else if *a == c1 {
                c0.clone()
            } else {
                a.clone()
            })
        },
        k(1, 0, 2),
    )
    .unwrap();
    assert!(check_lipschitz_pair(&r, 19).unwrap().passed());
    assert!(!check_quasi_retraction(&f, &r, 18).unwrap().passed());
    let scales = SquareScales {
        alpha: 1,
        alpha_prime: 2,
        beta_prime: 2,
        beta: 4,
    };
    let v = homotopy_square_check(&f, &r, scales, 1, Coefficients::Z).unwrap();
    assert!(matches!(v, SquareVerdict::Disagree { .. }), "{v:?}");
    // the uncorrupted retraction agrees at the same scales
    let id = PairMap::identity(&p, 19).unwrap();
    let v = homotopy_square_check(&f, &id, scales, 1, Coefficients::Z).unwrap();
    assert!(matches!(v, SquareVerdict::Agree { .. }), "{v:?}");
}

#[test]
fn table_round_trip() {
    let f = doubling(k(2, 0, 1));
    let text = f.export();
    assert!(text.starts_with("# conepair map v1\n"));
    let g = PairMap::from_table("double", &f.src, &f.dst, 8, &text, f.constants).unwrap();
    assert_eq!(g.group_table(), f.group_table());
    assert_eq!(g.cone_table(), f.cone_table());
    assert_eq!(g.export(), text);
}

#[test]
fn composition_constants() {
    let f = doubling(k(2, 0, 1));
    let id = PairMap::identity(&f.dst, f.image_radius().unwrap()).unwrap();
    let h = f.then(&id).unwrap();
    assert_eq!(h.group_table(), f.group_table());
    assert_eq!(h.constants, k(2, 0, 1 + 1));
    assert!(check_lipschitz_pair(&h, 8).unwrap().passed());
}

#[test]
fn l_hat() {
    assert_eq!(k(2, 1, 1).l_hat(), Rational::from_integer(3));
    assert_eq!(k(1, 0, 4).l_hat(), Rational::from_integer(5));
    assert_eq!(k(2, 0, 1).target_scale(3), 7);
    assert!(Constants::integers(0, 0, 1).is_err());
    assert!(Constants::integers(1, -1, 1).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lipschitz_monotone(l in 1i64..4, c in 0i64..3, m in 0i64..3, dl in 0i64..3, dc in 0i64..3, dm in 0i64..3) {
        for f in [doubling(k(l, c, m)), shifted().with_constants(k(l, c, m))] {
            if check_lipschitz_pair(&f, 8).unwrap().passed() {
                let g = f.with_constants(k(l + dl, c + dc, m + dm));
                prop_assert!(check_lipschitz_pair(&g, 8).unwrap().passed());
            }
        }
    }

    #[test]
    fn measured_constants_pass(a in 1i64..4, b in 1i64..5, radius in 2usize..7) {
        prop_assume!(num_integer::gcd(a, b) == 1);
        let f = PairMap::generating_set_change(&pair("Z_mod_2Z"), vec![Word::power_of(0, a), Word::power_of(0, b)], radius).unwrap();
        prop_assert!(check_lipschitz_pair(&f, radius).unwrap().passed());
        let src = build_coned_off(&f.src, radius).unwrap();
        let dst = build_coned_off(&f.dst, target_radius(&f)).unwrap();
        let img = induced_coned_off_map(&f, &src, &dst).unwrap();
        prop_assert!(img.violations.is_empty());
        prop_assert!(Rational::from_integer(img.max_length as i64) <= f.constants.l_hat());
    }
}
