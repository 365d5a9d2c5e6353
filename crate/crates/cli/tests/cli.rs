use std::path::Path;
use std::process::Command;

use conepair_cli::{cache_key, run, Fragment, RunConfig};
use conepair_core::fixtures::load_fixture;
use conepair_core::pair_maps::PairMap;
use conepair_core::rips::{essential_triviality_probe, Schedule};
use conepair_core::homology::Coefficients;
use conepair_core::PairModel;
use clap::Parser;

fn bin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_conepair"))
        .args(args)
        .env_remove("CONEPAIR_CACHE_DIR")
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn report(args: &[&str]) -> String {
    let config = RunConfig::try_parse_from(std::iter::once("conepair").chain(args.iter().copied())).unwrap();
    run(&config).unwrap()
}

fn pair_model(name: &str) -> PairModel {
    PairModel::new(load_fixture(name).unwrap().pair().unwrap()).unwrap()
}

#[test]
fn homology_of_hollow_triangle() {
    let (code, out, _) = bin(&["homology", "--fixture", "hollow_triangle", "--degree", "1"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("# conepair homology v1\n"));
    assert!(out.contains("H1 betti 1 torsion none\n"), "{out}");
}

#[test]
fn homology_of_all_complex_fixtures() {
    let torus = report(&["homology", "--fixture", "torus7"]);
    assert!(torus.contains("H0 betti 1 torsion none\nH1 betti 2 torsion none\nH2 betti 1 torsion none\n"), "{torus}");
    let disc = report(&["homology", "--fixture", "full_triangle", "--reduced"]);
    assert!(disc.contains("H0 betti 0 torsion none\nH1 betti 0"), "{disc}");
    let sphere = report(&["homology", "--fixture", "tetra_boundary", "--degree", "2", "--coeff", "Z2"]);
    assert!(sphere.contains("coefficients Z2"));
    assert!(sphere.contains("H2 betti 1"));
}

#[test]
fn exit_codes() {
    let (code, _, err) = bin(&["rips", "--pair", "Z_mod_2Z", "--alpha", "1", "--radius", "-1"]);
    assert_eq!(code, 2, "{err}");
    assert!(err.contains("negative"));
    let (code, _, _) = bin(&["rips", "--pair", "no_such_fixture", "--alpha", "1", "--radius", "3"]);
    assert_eq!(code, 2);
    let (code, _, _) = bin(&["homology", "--fixture", "Z_mod_2Z"]);
    assert_eq!(code, 2);
    let (code, _, err) = bin(&["probe-sc", "--pair", "Z_rel_Z", "--l", "4", "--loop-len", "8", "--inner", "4", "--outer", "5"]);
    assert_eq!(code, 3, "{err}");
    let (code, _, _) = bin(&["loops", "--pair", "Z_mod_2Z", "--len", "9", "--radius", "4"]);
    assert_eq!(code, 3);
    let (code, _, _) = bin(&["probe-fp", "--pair", "Z_mod_2Z", "--degree", "1", "--alphas", "1", "--schedule", "fixed", "--inner", "6", "--outer", "6"]);
    assert_eq!(code, 3);
    let (code, _, _) = bin(&["--help"]);
    assert_eq!(code, 0);
}

#[test]
fn probe_fp_matches_module() {
    let out = report(&["probe-fp", "--pair", "Z2_rel_Z", "--degree", "1", "--alphas", "1,2,3", "--inner", "4"]);
    let direct = essential_triviality_probe(&pair_model("Z2_rel_Z"), 1, &Schedule::auto(&[1, 2, 3], 4), Coefficients::Z)
        .unwrap()
        .export();
    assert_eq!(out, direct);
    assert!(out.starts_with("# conepair triviality v1\n"));
}

#[test]
fn unknown_budget_is_in_band() {
    // a tiny coset budget for a probe that needs a quotient certificate
    let (code, out, _) = bin(&["probe-sc", "--pair", "Z_mod_2Z", "--l", "3", "--loop-len", "4", "--inner", "2", "--outer", "5", "--budget", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("verdict No") || out.contains("verdict Unknown"), "{out}");
}

#[test]
fn probe_sc_yes() {
    let out = report(&["probe-sc", "--pair", "Z_rel_Z", "--l", "4", "--loop-len", "8", "--inner", "4", "--outer", "12"]);
    assert!(out.contains("verdict Yes\n"), "{out}");
}

#[test]
fn emitted_files() {
    let dir = tempfile::tempdir().unwrap();
    let cx = dir.path().join("cx.txt");
    let graph = dir.path().join("graph.txt");
    let r = report(&["rips", "--pair", "Z_mod_2Z", "--alpha", "1", "--radius", "4", "--emit", cx.to_str().unwrap()]);
    assert!(r.contains("simplices 2 16\n"), "{r}");
    let text = std::fs::read_to_string(&cx).unwrap();
    assert!(text.starts_with("# conepair rips v1\n"));
    let dims: Vec<usize> = text
        .lines()
        .filter_map(|l| l.strip_prefix("simplex "))
        .map(|l| l.split(' ').next().unwrap().parse().unwrap())
        .collect();
    assert!(dims.windows(2).all(|w| w[0] <= w[1]));
    let g = report(&["coned-off", "--pair", "Z_mod_2Z", "--radius", "3", "--emit", graph.to_str().unwrap()]);
    assert!(g.contains("group_vertices 7\ncone_vertices 2\ncayley_edges 6\ncone_edges 7\n"), "{g}");
    let text = std::fs::read_to_string(&graph).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("e ")).count(), 13);
}

#[test]
fn check_map_table() {
    let dir = tempfile::tempdir().unwrap();
    let src = pair_model("Z_mod_2Z");
    let dst = pair_model("Z_mod_4Z");
    let table = dir.path().join("double.map");
    let f = PairMap::homomorphism(&src, &dst, &[conepair_core::Word::power_of(0, 2)], &[0], 4).unwrap();
    std::fs::write(&table, f.export()).unwrap();
    let t = table.to_str().unwrap();
    let claimed = report(&["check-map", "--pair-src", "Z_mod_2Z", "--pair-dst", "Z_mod_4Z", "--map", t, "--radius", "4"]);
    assert!(claimed.contains("lipschitz Fail lipschitz"), "{claimed}");
    let measured = report(&["check-map", "--pair-src", "Z_mod_2Z", "--pair-dst", "Z_mod_4Z", "--map", t, "--radius", "4", "--measure", "--coned-off"]);
    assert!(measured.contains("constants L=2 C=0 M=1\nlipschitz Pass\n"), "{measured}");
    assert!(measured.contains("violations 0"));
    let rational = report(&["check-map", "--pair-src", "Z_mod_2Z", "--pair-dst", "Z_mod_4Z", "--map", t, "--radius", "4", "--constants", "5/2,0,1"]);
    assert!(rational.contains("constants L=5/2 C=0 M=1\nlipschitz Pass"), "{rational}");
    let (code, _, _) = bin(&["check-map", "--pair-src", "Z_mod_2Z", "--pair-dst", "Z_mod_4Z", "--map", t, "--radius", "4", "--constants", "1,0"]);
    assert_eq!(code, 2);
}

#[test]
fn orbit_count_report() {
    let a = report(&["orbit-count", "--pair", "Z_mod_2Z", "--alpha", "1", "--radius", "6", "--loop-len", "4"]);
    let b = report(&["orbit-count", "--pair", "Z_mod_2Z", "--alpha", "1", "--radius", "8", "--loop-len", "4"]);
    assert!(a.contains("orbits 0 2\norbits 1 3\norbits 2 2\nloop_orbits 4 1\n"), "{a}");
    assert_eq!(a.lines().skip(2).collect::<Vec<_>>(), b.lines().skip(2).collect::<Vec<_>>());
}

#[test]
fn fixtures_listing() {
    let out = report(&["fixtures"]);
    assert!(out.contains("fixture Z6_two_subs pair "));
    assert!(out.contains("fixture torus7 complex -\n"));
}

const REFORMATTED: &str = "
# the same pair, laid out differently
[group]
generators =   a
relators = none
backend = free
[subgroup]
name = P
generators = a*a
";

#[test]
fn cache_keys() {
    let base = Fragment::new("rips").with("pair", "x").with("alpha", 1);
    assert_eq!(cache_key(&base), cache_key(&Fragment::new("rips").with("pair", "x").with("alpha", 1)));
    assert_ne!(cache_key(&base), cache_key(&Fragment::new("rips").with("pair", "x").with("alpha", 2)));
    assert_ne!(
        cache_key(&Fragment::new("a").with("x", "1 y")),
        cache_key(&Fragment::new("a").with("x", "1").with("y", ""))
    );
}

fn cache_files(dir: &Path) -> Vec<String> {
    let mut v: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    v.sort();
    v
}

#[test]
fn reformatted_pair_hits_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let pair = dir.path().join("z2.pair");
    std::fs::write(&pair, REFORMATTED).unwrap();
    let c = cache.to_str().unwrap();
    let fresh = report(&["rips", "--pair", "Z_mod_2Z", "--alpha", "1", "--radius", "4"]);
    let a = report(&["--cache-dir", c, "rips", "--pair", "Z_mod_2Z", "--alpha", "1", "--radius", "4"]);
    assert_eq!(cache_files(&cache).len(), 1);
    let b = report(&["--cache-dir", c, "rips", "--pair", pair.to_str().unwrap(), "--alpha", "1", "--radius", "4"]);
    assert_eq!(cache_files(&cache).len(), 1);
    assert_eq!(a, fresh);
    assert_eq!(b, fresh);
    report(&["--cache-dir", c, "rips", "--pair", "Z_mod_2Z", "--alpha", "2", "--radius", "4"]);
    assert_eq!(cache_files(&cache).len(), 2);
}

#[test]
fn corrupted_entry_is_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().to_str().unwrap();
    let args = ["--cache-dir", c, "probe-fp", "--pair", "Z_mod_2Z", "--degree", "1", "--alphas", "1,2", "--inner", "4"];
    let fresh = report(&args);
    let file = dir.path().join(&cache_files(dir.path())[0]);
    let text = std::fs::read_to_string(&file).unwrap();
    std::fs::write(&file, text.replace("ZeroImage", "NonzeroImage")).unwrap();
    assert_eq!(report(&args), fresh);
    assert_eq!(std::fs::read_to_string(&file).unwrap(), text);
}

#[test]
fn environment_cache_dir() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_conepair"))
        .args(["rips", "--pair", "Z6_one_sub", "--alpha", "2", "--radius", "3"])
        .env("CONEPAIR_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(cache_files(dir.path()).len(), 1);
}

#[test]
fn cached_equals_fresh_on_a_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().to_str().unwrap();
    for pair in ["Z_mod_2Z", "Z2_rel_Z", "Z6_two_subs"] {
        for alpha in ["1", "2"] {
            let args = ["rips", "--pair", pair, "--alpha", alpha, "--radius", "3", "--dim-cap", "2"];
            let fresh = report(&args);
            let cached: Vec<&str> = ["--cache-dir", c].into_iter().chain(args).collect();
            assert_eq!(report(&cached), fresh);
            assert_eq!(report(&cached), fresh);
        }
    }
}

#[test]
fn worker_counts_agree() {
    for args in [
        ["probe-fp", "--pair", "Z_mod_2Z", "--degree", "1", "--alphas", "1,2", "--inner", "4"].as_slice(),
        ["rips", "--pair", "Z2_rel_Z", "--alpha", "2", "--radius", "3"].as_slice(),
    ] {
        let one: Vec<&str> = ["--workers", "1"].into_iter().chain(args.iter().copied()).collect();
        let four: Vec<&str> = ["--workers", "4"].into_iter().chain(args.iter().copied()).collect();
        assert_eq!(report(&one), report(&four));
    }
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.txt");
    let (code, out, _) = bin(&["fixtures", "--output", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    assert!(std::fs::read_to_string(path).unwrap().starts_with("# conepair fixtures v1\n"));
}
