use std::fmt::Write as _;
use std::path::Path;

use conepair_core::coned_off::{
    build_coned_off, count_loop_orbits, enumerate_unicone_loops, probe_unicone_simply_connected, LoopMode,
    ProbeBudget, ScVerdict,
};
use conepair_core::fixtures::{load_fixture, names, parse_complex, FixtureData};
use conepair_core::homology::{chain_complex, homology, SimplicialComplex};
use conepair_core::pair_maps::{
    check_lipschitz_pair, induced_coned_off_map, CheckResult, Constants, MapWitness, PairMap, Rational,
};
use conepair_core::presentation::parse_pair_spec;
use conepair_core::rips::{build_unicone_rips, count_simplex_orbits, essential_triviality_probe, Schedule};
use conepair_core::{GroupPairSpec, PairModel};
use sha2::{Digest, Sha256};

use crate::{
    write_file, Cache, CheckMapArgs, CliError, Command, ConedOffArgs, Fragment, HomologyArgs, LoopModeArg,
    LoopsArgs, OrbitCountArgs, ProbeFpArgs, ProbeScArgs, Result, RipsArgs, ScheduleArg,
};

pub(crate) fn dispatch(command: &Command, cache: Option<&Cache>) -> Result<String> {
    match command {
        Command::ConedOff(a) => coned_off(a),
        Command::Loops(a) => loops(a),
        Command::ProbeSc(a) => probe_sc(a),
        Command::Rips(a) => rips(a, cache),
        Command::Homology(a) => homology_cmd(a),
        Command::ProbeFp(a) => probe_fp(a, cache),
        Command::CheckMap(a) => check_map(a),
        Command::OrbitCount(a) => orbit_count(a),
        Command::Fixtures => Ok(fixtures()),
    }
}

/// A spec file when the path exists, otherwise a fixture name.
pub(crate) fn load_pair(arg: &str) -> Result<GroupPairSpec> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path)?;
        return Ok(parse_pair_spec(&text)?);
    }
    load_fixture(arg)?
        .pair()
        .cloned()
        .ok_or_else(|| CliError::Usage(format!("fixture `{arg}` is a complex, not a pair")))
}

fn model(arg: &str) -> Result<(GroupPairSpec, PairModel)> {
    let spec = load_pair(arg)?;
    let model = PairModel::new(&spec)?;
    Ok((spec, model))
}

fn pair_fragment(command: &str, spec: &GroupPairSpec) -> Fragment {
    Fragment::new(command)
        .with("pair", spec.to_text())
        .with("backend", spec.group.backend)
}

fn coned_off(a: &ConedOffArgs) -> Result<String> {
    let (_, pair) = model(&a.pair.pair)?;
    let g = build_coned_off(&pair, a.radius)?;
    if let Some(path) = &a.emit {
        write_file(path, &g.export())?;
    }
    Ok(format!(
        "# conepair coned-off-report v1\nradius {}\ngroup_vertices {}\ncone_vertices {}\ncayley_edges {}\ncone_edges {}\n",
        a.radius,
        g.group_count(),
        g.cone_count(),
        g.cayley_edges.len(),
        g.cone_edges.len()
    ))
}

fn loops(a: &LoopsArgs) -> Result<String> {
    let (_, pair) = model(&a.pair.pair)?;
    let radius = a.radius.unwrap_or(a.len);
    let g = build_coned_off(&pair, radius)?;
    let mode = match a.mode {
        LoopModeArg::Based => LoopMode::BasedAtIdentity,
        LoopModeArg::Orbit => LoopMode::OrbitReps,
    };
    let found = enumerate_unicone_loops(&g, a.len, mode)?;
    let mut out = String::from("# conepair loops v1\n");
    let mode = match a.mode {
        LoopModeArg::Based => "based",
        LoopModeArg::Orbit => "orbit",
    };
    let _ = writeln!(out, "radius {radius} len {} mode {mode}", a.len);
    let _ = writeln!(out, "count {}", found.len());
    for lp in &found {
        let labels: Vec<String> = lp.vertices.iter().map(|&v| g.label(v)).collect();
        let _ = writeln!(out, "loop {} cones {} {}", lp.vertices.len(), lp.cone_count, labels.join(" "));
    }
    Ok(out)
}

fn probe_sc(a: &ProbeScArgs) -> Result<String> {
    let (_, pair) = model(&a.pair.pair)?;
    let budget = ProbeBudget {
        max_cosets: a.budget,
        ..ProbeBudget::default()
    };
    let r = probe_unicone_simply_connected(&pair, a.l, a.loop_len, a.inner, a.outer, budget)?;
    let mut out = String::from("# conepair probe-sc v1\n");
    let _ = writeln!(
        out,
        "l {} loop_len {} r_inner {} r_outer {} budget {}",
        a.l, a.loop_len, a.inner, a.outer, a.budget
    );
    match &r.verdict {
        ScVerdict::Yes => out.push_str("verdict Yes\n"),
        ScVerdict::No { witness, certificate } => {
            let _ = writeln!(out, "verdict No\nwitness {}\ncertificate {certificate}", witness.join(" "));
        }
        ScVerdict::Unknown { reason } => {
            let _ = writeln!(out, "verdict Unknown\nreason {reason}");
        }
    }
    let _ = writeln!(
        out,
        "loops_tested {} faces {} pi1_rank {} remaining_rank {}",
        r.loops_tested, r.faces, r.pi1_rank, r.remaining_rank
    );
    Ok(out)
}

fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

fn rips(a: &RipsArgs, cache: Option<&Cache>) -> Result<String> {
    let (spec, pair) = model(&a.pair.pair)?;
    let compute = || -> Result<String> { Ok(build_unicone_rips(&pair, a.alpha, a.radius, a.dim_cap)?.export()) };
    let export = match cache {
        Some(c) => {
            let fragment = pair_fragment("rips", &spec)
                .with("alpha", a.alpha)
                .with("radius", a.radius)
                .with("dim_cap", a.dim_cap);
            c.get_or_compute(&fragment, compute)?
        }
        None => compute()?,
    };
    if let Some(path) = &a.emit {
        write_file(path, &export)?;
    }
    Ok(rips_report(&export))
}

/// Summary of a complex export: header fields and per-dimension counts.
fn rips_report(export: &str) -> String {
    let mut out = String::from("# conepair rips-report v1\n");
    let mut vertices = 0usize;
    let mut counts: Vec<usize> = Vec::new();
    for line in export.lines().skip(1) {
        if line.starts_with("vertex ") {
            vertices += 1;
        } else if let Some(rest) = line.strip_prefix("simplex ") {
            let k: usize = rest.split(' ').next().and_then(|k| k.parse().ok()).unwrap_or(0);
            if counts.len() <= k {
                counts.resize(k + 1, 0);
            }
            counts[k] += 1;
        } else {
            out.push_str(line);
            out.push('\n');
        }
    }
    let _ = writeln!(out, "vertices {vertices}");
    for (k, n) in counts.iter().enumerate() {
        let _ = writeln!(out, "simplices {k} {n}");
    }
    let _ = writeln!(out, "export_sha256 {}", sha256_hex(export));
    out
}

fn homology_cmd(a: &HomologyArgs) -> Result<String> {
    let mut out = String::from("# conepair homology v1\n");
    let complex = if let Some(name) = &a.fixture {
        let f = load_fixture(name)?;
        let FixtureData::Complex(maximal) = &f.data else {
            return Err(CliError::Usage(format!("fixture `{name}` is a pair, not a complex")));
        };
        let _ = writeln!(out, "source fixture {name}");
        SimplicialComplex::from_maximal(maximal, None)
    } else if let Some(path) = &a.complex {
        let maximal = parse_complex(&std::fs::read_to_string(path)?)?;
        let _ = writeln!(out, "source complex {}", path.display());
        SimplicialComplex::from_maximal(&maximal, None)
    } else if let Some(p) = &a.pair {
        let (_, pair) = model(p)?;
        let (alpha, radius) = (a.alpha.unwrap_or(0), a.radius.unwrap_or(0));
        let cx = build_unicone_rips(&pair, alpha, radius, a.dim_cap)?;
        let _ = writeln!(
            out,
            "source rips alpha {alpha} radius {radius} dim_cap {} exact {}",
            a.dim_cap, cx.exact
        );
        cx.complex
    } else {
        return Err(CliError::Usage("homology needs --fixture, --complex or --pair".into()));
    };
    let cc = chain_complex(&complex, a.coeff);
    let _ = writeln!(out, "coefficients {} reduced {}", a.coeff, a.reduced);
    let degrees: Vec<usize> = match a.degree {
        Some(i) => vec![i],
        None => (0..=complex.dim().unwrap_or(0)).collect(),
    };
    for i in degrees {
        let h = homology(&cc, i, a.reduced)?;
        let torsion = if h.invariant_factors.is_empty() {
            "none".to_string()
        } else {
            h.invariant_factors.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
        };
        let _ = writeln!(out, "H{i} betti {} torsion {torsion}", h.betti);
    }
    Ok(out)
}

fn probe_fp(a: &ProbeFpArgs, cache: Option<&Cache>) -> Result<String> {
    let (spec, pair) = model(&a.pair.pair)?;
    let schedule = match a.schedule {
        ScheduleArg::Auto => Schedule::auto(&a.alphas, a.inner),
        ScheduleArg::Fixed => {
            let outer = a
                .outer
                .ok_or_else(|| CliError::Usage("--schedule fixed needs --outer".into()))?;
            Schedule::fixed(&a.alphas, a.inner, outer)
        }
    };
    schedule.validate()?;
    let compute = || -> Result<String> {
        Ok(essential_triviality_probe(&pair, a.degree, &schedule, a.coeff)?.export())
    };
    match cache {
        Some(c) => {
            let cells: Vec<String> = schedule
                .cells
                .iter()
                .map(|c| format!("{}:{}:{}:{}", c.alpha, c.beta, c.inner, c.outer))
                .collect();
            let fragment = pair_fragment("probe-fp", &spec)
                .with("degree", a.degree)
                .with("cells", cells.join(","))
                .with("coefficients", a.coeff);
            c.get_or_compute(&fragment, compute)
        }
        None => compute(),
    }
}

pub(crate) fn parse_constants(s: &str) -> Result<Constants> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [l, c, m] = parts[..] else {
        return Err(CliError::Usage(format!("constants `{s}` are not `L,C,M`")));
    };
    let q = |x: &str| {
        x.parse::<Rational>()
            .map_err(|_| CliError::Usage(format!("`{x}` is not a rational number")))
    };
    Ok(Constants::new(q(l)?, q(c)?, q(m)?)?)
}

fn witness(f: &PairMap, w: &MapWitness) -> String {
    let (sm, dm) = (&f.src.model, &f.dst.model);
    match w {
        MapWitness::Lipschitz {
            x,
            y,
            src_distance,
            dst_distance,
        } => format!(
            "lipschitz x={} y={} d_src={src_distance} d_dst={dst_distance}",
            sm.render(x),
            sm.render(y)
        ),
        MapWitness::Cone { cone, point, distance } => format!(
            "cone entry={} rep={} point={} distance={distance:?}",
            cone.collection_index,
            sm.render(&cone.representative),
            dm.render(point)
        ),
        MapWitness::Displacement { g, distance } => format!("displacement g={} distance={distance}", sm.render(g)),
        MapWitness::Section { cone, image } => format!(
            "section entry={} rep={} image_entry={} image_rep={}",
            cone.collection_index,
            sm.render(&cone.representative),
            image.collection_index,
            sm.render(&image.representative)
        ),
    }
}

fn check_map(a: &CheckMapArgs) -> Result<String> {
    let (_, src) = model(&a.pair_src)?;
    let (_, dst) = model(&a.pair_dst)?;
    let claimed = parse_constants(&a.constants)?;
    let f = match &a.map {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            PairMap::from_table(path.display().to_string(), &src, &dst, a.radius, &text, claimed)?
        }
        None => PairMap::identity_between(&src, &dst, a.radius)?.with_constants(claimed),
    };
    let f = if a.measure { f.measured()? } else { f };
    let mut out = String::from("# conepair check-map v1\n");
    let _ = writeln!(out, "radius {}\nconstants {}", a.radius, f.constants);
    match check_lipschitz_pair(&f, a.radius)? {
        CheckResult::Pass => out.push_str("lipschitz Pass\n"),
        CheckResult::Fail(w) => {
            let _ = writeln!(out, "lipschitz Fail {}", witness(&f, &w));
        }
    }
    if a.coned_off {
        let l_hat = f.constants.l_hat().ceil().to_integer().max(0) as usize;
        let gs = build_coned_off(&f.src, a.radius.max(1))?;
        let gd = build_coned_off(&f.dst, f.image_radius()? + l_hat)?;
        let img = induced_coned_off_map(&f, &gs, &gd)?;
        let _ = writeln!(
            out,
            "coned_off max_length {} bound {} violations {}",
            img.max_length,
            img.bound,
            img.violations.len()
        );
    }
    Ok(out)
}

fn orbit_count(a: &OrbitCountArgs) -> Result<String> {
    let (_, pair) = model(&a.pair.pair)?;
    let cx = build_unicone_rips(&pair, a.alpha, a.radius, a.max_dim)?;
    let mut out = String::from("# conepair orbit-count v1\n");
    let _ = writeln!(out, "alpha {} radius {} max_dim {}", a.alpha, a.radius, a.max_dim);
    for k in 0..=a.max_dim {
        let _ = writeln!(out, "orbits {k} {}", count_simplex_orbits(&cx, k)?);
    }
    if let Some(len) = a.loop_len {
        let g = build_coned_off(&pair, a.radius.max(1))?;
        let _ = writeln!(out, "loop_orbits {len} {}", count_loop_orbits(&g, len)?);
    }
    Ok(out)
}

fn fixtures() -> String {
    let mut out = String::from("# conepair fixtures v1\n");
    for name in names() {
        let f = load_fixture(name).expect("registry entries load");
        let kind = match f.data {
            FixtureData::Pair(_) => "pair",
            FixtureData::Complex(_) => "complex",
        };
        let flags: Vec<&str> = f.flags.iter().map(|fl| fl.as_str()).collect();
        let flags = if flags.is_empty() { "-".to_string() } else { flags.join(",") };
        let _ = writeln!(out, "fixture {name} {kind} {flags}");
    }
    out
}
