use conepair_core::fixtures::{load_fixture, FixtureData};
use conepair_core::homology::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn fixture(name: &str) -> SimplicialComplex {
    match load_fixture(name).unwrap().data {
        FixtureData::Complex(m) => SimplicialComplex::from_maximal(&m, None),
        FixtureData::Pair(_) => panic!("{name} is a pair"),
    }
}

fn rp2() -> SimplicialComplex {
    let faces = [
        [1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 6, 2],
        [2, 3, 5], [3, 4, 6], [4, 5, 2], [5, 6, 3], [6, 2, 4],
    ];
    let m: Vec<Vec<usize>> = faces.iter().map(|f| f.iter().map(|v| v - 1).collect()).collect();
    SimplicialComplex::from_maximal(&m, None)
}

fn h(cx: &SimplicialComplex, i: usize, reduced: bool, c: Coefficients) -> HomologyResult {
    homology(&chain_complex(cx, c), i, reduced).unwrap()
}

fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

#[test]
fn fixture_homology() {
    let hollow = fixture("hollow_triangle");
    let r = h(&hollow, 1, false, Coefficients::Z);
    assert_eq!((r.betti, r.torsion.len()), (1, 0));
    assert_eq!(r.describe(), "Z");

    let full = fixture("full_triangle");
    assert_eq!(h(&full, 0, true, Coefficients::Z).betti, 0);
    assert_eq!(h(&full, 1, false, Coefficients::Z).betti, 0);
    assert_eq!(h(&full, 0, false, Coefficients::Z).betti, 1);

    let tetra = fixture("tetra_boundary");
    assert_eq!(h(&tetra, 2, false, Coefficients::Z).betti, 1);
    assert_eq!(h(&tetra, 1, false, Coefficients::Z).betti, 0);

    let torus = fixture("torus7");
    assert_eq!(torus.euler(), 0);
    let h1 = h(&torus, 1, false, Coefficients::Z);
    assert_eq!((h1.betti, h1.torsion.clone()), (2, vec![]));
    assert_eq!(h(&torus, 2, false, Coefficients::Z).betti, 1);
}

#[test]
fn projective_plane_torsion() {
    let p = rp2();
    let z1 = h(&p, 1, false, Coefficients::Z);
    assert_eq!((z1.betti, z1.torsion.clone()), (0, ints(&[2])));
    assert_eq!(z1.orders, vec![Some(Int::from(2))]);
    assert_eq!(h(&p, 2, false, Coefficients::Z).betti, 0);
    assert_eq!(h(&p, 1, false, Coefficients::Q).betti, 0);
    assert_eq!(h(&p, 1, false, Coefficients::Zp(2)).betti, 1);
    assert_eq!(h(&p, 2, false, Coefficients::Zp(2)).betti, 1);
    assert_eq!(h(&p, 1, false, Coefficients::Zp(3)).betti, 0);
    let cc = chain_complex(&p, Coefficients::Z);
    assert_eq!(universal_coefficients_violation(&cc, false, &[2, 3, 5]), None);
    let s = homology_summary(&cc, false);
    assert_eq!(s[1].invariant_factors, ints(&[2]));
    // twice the generator bounds
    let g = &z1.generators[0];
    assert!(!z1.is_boundary(g));
    assert!(z1.is_boundary(&g.scale(&Int::from(2))));
}

#[test]
fn generators_are_cycles_with_unit_classes() {
    for (cx, i) in [(fixture("torus7"), 1), (fixture("torus7"), 2), (rp2(), 1), (fixture("hollow_triangle"), 1)] {
        for c in [Coefficients::Z, Coefficients::Q, Coefficients::Zp(2), Coefficients::Zp(3)] {
            let cc = chain_complex(&cx, c);
            let r = homology(&cc, i, false).unwrap();
            for (j, g) in r.generators.iter().enumerate() {
                let d = cc.apply_boundary(i, g);
                let zero = match c {
                    Coefficients::Zp(p) => d.iter().all(|(_, a)| a.mod_u64(p) == 0),
                    _ => d.is_empty(),
                };
                assert!(zero, "generator {j} of H{i} over {c} is not a cycle");
                let mut e = vec![Int::ZERO; r.rank()];
                e[j] = Int::ONE;
                assert_eq!(r.class_of(g).unwrap(), e);
            }
        }
    }
}

#[test]
fn induced_documented_maps() {
    let hollow = fixture("hollow_triangle");
    let full = fixture("full_triangle");
    let hs = h(&hollow, 1, false, Coefficients::Z);
    let id = SimplicialMap::identity(3);
    let m = induced_map_on_homology(&id, &hollow, &hollow, &hs, &hs).unwrap();
    assert_eq!(m.matrix, vec![vec![Int::ONE]]);
    assert!(!m.is_zero);
    let hf = h(&full, 1, false, Coefficients::Z);
    let m = induced_map_on_homology(&id, &hollow, &full, &hs, &hf).unwrap();
    assert!(m.is_zero);
    // collapsing an edge kills the cycle
    let fold = SimplicialMap { vertex_map: vec![0, 1, 1] };
    let m = induced_map_on_homology(&fold, &hollow, &hollow, &hs, &hs).unwrap();
    assert!(m.is_zero);
    // a map off the complex is rejected
    let bad = SimplicialMap { vertex_map: vec![0, 1, 5] };
    assert!(induced_map_on_homology(&bad, &hollow, &full, &hs, &hf).is_err());
}

#[test]
fn torus_functoriality() {
    // the 7-vertex torus has the symmetry v ↦ v + 1 mod 7
    let t = fixture("torus7");
    let shift = SimplicialMap { vertex_map: (0..7).map(|v| (v + 1) % 7).collect() };
    assert_eq!(shift.violation(&t, &t), None);
    let h1 = h(&t, 1, false, Coefficients::Z);
    let a = induced_map_on_homology(&shift, &t, &t, &h1, &h1).unwrap();
    let twice = shift.then(&shift);
    let b = induced_map_on_homology(&twice, &t, &t, &h1, &h1).unwrap();
    // matrices are columns of coordinates
    let mul = |x: &Vec<Vec<Int>>, y: &Vec<Vec<Int>>| -> Vec<Vec<Int>> {
        // (x·y) column j = x applied to column j of y
        y.iter()
            .map(|col| {
                (0..x[0].len())
                    .map(|r| col.iter().zip(x).fold(Int::ZERO, |s, (c, xc)| &s + &(c * &xc[r])))
                    .collect()
            })
            .collect()
    };
    assert_eq!(mul(&a.matrix, &a.matrix), b.matrix);
}

/// Independent rank oracle: dense Gaussian elimination over Q or Z/p.
fn dense_rank(cols: &[SparseVec], nrows: usize, p: Option<u64>) -> usize {
    let mut m: Vec<Vec<BigRational>> = cols
        .iter()
        .map(|c| {
            let mut v = vec![BigRational::zero(); nrows];
            for (i, a) in c.iter() {
                let x = match p {
                    Some(p) => BigInt::from(a.mod_u64(p)),
                    None => a.big(),
                };
                v[i as usize] = BigRational::from_integer(x);
            }
            v
        })
        .collect();
    let modp = |x: &BigRational| -> BigRational {
        match p {
            Some(p) => {
                // x is an integer here
                let pi = BigInt::from(p);
                let v = ((x.to_integer() % &pi) + &pi) % &pi;
                BigRational::from_integer(v)
            }
            None => x.clone(),
        }
    };
    let inv = |x: &BigRational| -> BigRational {
        match p {
            Some(p) => {
                let n: u64 = x.to_integer().try_into().unwrap();
                let mut r = 1u64;
                for _ in 0..p - 2 {
                    r = r * n % p;
                }
                BigRational::from_integer(BigInt::from(r))
            }
            None => BigRational::one() / x,
        }
    };
    let mut rank = 0;
    let ncols = m.len();
    for row in 0..nrows {
        let Some(piv) = (rank..ncols).find(|&j| !m[j][row].is_zero()) else { continue };
        m.swap(rank, piv);
        let f = inv(&m[rank][row]);
        for j in 0..ncols {
            if j != rank && !m[j][row].is_zero() {
                let k = modp(&(&m[j][row] * &f));
                let pivot = m[rank].clone();
                for (x, y) in m[j].iter_mut().zip(&pivot) {
                    *x = modp(&(&*x - &(&k * y)));
                }
            }
        }
        rank += 1;
    }
    rank
}

fn oracle_betti(cx: &SimplicialComplex, p: Option<u64>) -> Vec<usize> {
    let cc = chain_complex(cx, Coefficients::Z);
    let n = cc.len();
    let ranks: Vec<usize> = (0..=n)
        .map(|k| {
            if k == 0 || k >= n {
                0
            } else {
                dense_rank(cc.boundary(k), cc.size(k - 1), p)
            }
        })
        .collect();
    (0..n).map(|k| cc.size(k) - ranks[k] - ranks[k + 1]).collect()
}

fn complex_strategy() -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::collection::btree_set(0usize..7, 1..=4), 1..8).prop_map(|sets| {
        let m: Vec<Vec<usize>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        SimplicialComplex::from_maximal(&m, None)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_complexes_match_oracles(cx in complex_strategy()) {
        let cc = chain_complex(&cx, Coefficients::Z);
        prop_assert!(cc.check_dd().is_ok());
        prop_assert_eq!(universal_coefficients_violation(&cc, false, &[2, 3]), None);
        prop_assert_eq!(universal_coefficients_violation(&cc, true, &[2]), None);
        let q = oracle_betti(&cx, None);
        let f2 = oracle_betti(&cx, Some(2));
        let mut chi = 0i64;
        for k in 0..cc.len() {
            let r = homology(&cc, k, false).unwrap();
            prop_assert_eq!(r.betti, q[k]);
            prop_assert_eq!(r.betti, r.cycle_rank - r.boundary_rank);
            prop_assert_eq!(homology(&cc.with_coefficients(Coefficients::Zp(2)), k, false).unwrap().betti, f2[k]);
            chi += if k % 2 == 0 { r.betti as i64 } else { -(r.betti as i64) };
        }
        prop_assert_eq!(chi, cx.euler());
        // reduced homology differs from the unreduced one in degree zero only
        let r0 = homology(&cc, 0, true).unwrap();
        prop_assert_eq!(r0.betti + 1, q[0]);
    }

    #[test]
    fn snf_is_valid(rows in 1usize..5, cols in 1usize..5, seed in prop::collection::vec(-6i64..7, 25)) {
        let a: Vec<Vec<Int>> = (0..rows).map(|i| (0..cols).map(|j| Int::from(seed[i * 5 + j])).collect()).collect();
        let s = smith_normal_form(&a);
        prop_assert_eq!(snf::matmul(&snf::matmul(&s.u, &a), &s.v), s.s.clone());
        prop_assert_eq!(snf::matmul(&s.u, &s.u_inv), snf::identity(rows));
        // V unimodular: its own SNF is the identity
        let sv = smith_normal_form(&s.v);
        prop_assert!(sv.divisors().iter().all(Int::is_one));
        let d = s.divisors();
        for w in d.windows(2) {
            prop_assert!(w[1].is_zero() || w[1].div_exact(&w[0]).is_some());
        }
        // determinant divisors: d₁⋯d_k = gcd of k×k minors
        let mut prod = Int::ONE;
        for k in 1..=rows.min(cols) {
            prod = &prod * &d[k - 1];
            prop_assert_eq!(prod.clone(), minor_gcd(&seed, rows, cols, k));
        }
    }
}

fn minor_gcd(seed: &[i64], rows: usize, cols: usize, k: usize) -> Int {
    use itertools::Itertools;
    let mut g = 0i128;
    for rs in (0..rows).combinations(k) {
        for cs in (0..cols).combinations(k) {
            let m: Vec<Vec<i128>> = rs.iter().map(|&i| cs.iter().map(|&j| seed[i * 5 + j] as i128).collect()).collect();
            g = gcd(g, det(&m));
        }
    }
    Int::from(g as i64)
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

fn det(m: &[Vec<i128>]) -> i128 {
    if m.len() == 1 {
        return m[0][0];
    }
    (0..m.len())
        .map(|j| {
            let sub: Vec<Vec<i128>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, &x)| x).collect())
                .collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * m[0][j] * det(&sub)
        })
        .sum()
}
