//! The `conepair` command line: argument parsing, the report cache and report emission.

pub mod cache;
mod commands;

use std::ffi::OsString;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use cache::{cache_key, Cache, Fragment};
pub use conepair_core::homology::Coefficients;

/// Environment variable naming the cache directory when `--cache-dir` is absent.
pub const CACHE_ENV: &str = "CONEPAIR_CACHE_DIR";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] conepair_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

impl CliError {
    /// 3 for margin violations, 2 for anything the configuration got wrong, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_margin() => 3,
            CliError::Core(_) | CliError::Usage(_) => 2,
            CliError::Io(_) | CliError::Pool(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

fn natural(s: &str) -> std::result::Result<usize, String> {
    let n: i64 = s.parse().map_err(|_| format!("`{s}` is not an integer"))?;
    usize::try_from(n).map_err(|_| format!("{n} is negative"))
}

#[derive(Parser, Debug, Clone)]
#[command(name = "conepair", version, about = "Coned-off Cayley graphs and unicone Rips complexes of group pairs")]
pub struct RunConfig {
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true, value_parser = natural, allow_negative_numbers = true)]
    pub workers: Option<usize>,
    /// Report cache; overrides CONEPAIR_CACHE_DIR.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Report file; stdout when absent.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Truncated coned-off Cayley graph.
    ConedOff(ConedOffArgs),
    /// Unicone loops through the identity or up to translation.
    Loops(LoopsArgs),
    /// Finite-scale test that some Γ̂_l is simply connected.
    ProbeSc(ProbeScArgs),
    /// Truncated unicone Rips complex.
    Rips(RipsArgs),
    /// Homology of a fixture complex, a complex file or a Rips complex.
    Homology(HomologyArgs),
    /// Essential-triviality probe of H_i along the Rips filtration.
    ProbeFp(ProbeFpArgs),
    /// Lipschitz checks of a tabulated map of pairs.
    CheckMap(CheckMapArgs),
    /// Translation orbits of simplices and unicone loops.
    OrbitCount(OrbitCountArgs),
    /// The fixture registry.
    Fixtures,
}

#[derive(Args, Debug, Clone)]
pub struct PairArg {
    /// Pair spec file or fixture name.
    #[arg(long)]
    pub pair: String,
}

#[derive(Args, Debug, Clone)]
pub struct ConedOffArgs {
    #[command(flatten)]
    pub pair: PairArg,
    #[arg(long, value_parser = natural, allow_negative_numbers = true)]
    pub radius: usize,
    /// Write the graph export here.
    #[arg(long)]
    pub emit: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum LoopModeArg {
    Based,
    Orbit,
}

#[derive(Args, Debug, Clone)]
pub struct LoopsArgs {
    #[command(flatten)]
    pub pair: PairArg,
    /// Maximum loop length.
    #[arg(long, value_parser = natural, allow_negative_numbers = true)]
    pub len: usize,
    /// Truncation radius; defaults to the loop length.
    #[arg(long, value_parser = natural, allow_negative_numbers = true)]
    pub radius: Option<usize>,
    #[arg(long, value_enum, default_value = "orbit")]
    pub mode: LoopModeArg,
}

#[derive(Args, Debug, Clone)]
pub struct ProbeScArgs {
    #[command(flatten)]
    pub pair: PairArg,
    /// Attach cells along unicone loops of length below this.
    #[arg(long, value_parser = natural, allow_negative_numbers = true)]
    pub l: usize,
    #[arg(long, value_parser = natural, allow_negative_numbers = true)]
    pub loop_len: usize,
    #[arg(long, value_parser = natural, allow_negative_numbers = true)]
    pub inner: usize,
    #[arg(long, value_parser = natural, allow_negative_numbers = true)]
    pub outer: usize,
    /// Coset-table rows for the finite-quotient test.
    #[arg(long, value_parser = natural, allow_negative_numbers = true, default_value = "100000")]
    pub budget: usize,
}

#[derive(Args, Debug, Clone)]
pub struct RipsArgs {
    #[command(flatten)]
    pub pair: PairArg,
    #[arg(long, value_parser = natural, allow_negative_numbers = true)]
    pub alpha: usize,
    #[arg(long, value_parser = natural, allow_negative_numbers = true)]
    pub radius: usize,
    #[arg(long, value_parser = natural, allow_negative_numbers = true, default_value = "2")]
    pub dim_cap: usize,
    /// Write the complex export here.
    #[arg(long)]
    pub emit: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct HomologyArgs {
    /// A complex fixture such as `hollow_triangle`.
    #[arg(long, conflicts_with_all = ["complex", "pair"])]
    pub fixture: Option<String>,
    /// A file of maximal simplices, one per line.
    #[arg(long, conflicts_with = "pair")]
    pub complex: Option<PathBuf>,
    /// A pair spec file or fixture; needs `--alpha` and `--radius`.
    #[arg(long, requires_all = ["alpha", "radius"])]
    pub pair: Option<String>,
    #[arg(long, value_parser = natural, allow_negative_numbers = true)]
    pub alpha: Option<usize>,
    #[arg(long, value_parser = natural, allow_negative_numbers = true)]
    pub radius: Option<usize>,
    #[arg(long, value_parser = natural, allow_negative_numbers = true, default_value = "2")]
    pub dim_cap: usize,
    /// Single degree; every degree when absent.
    #[arg(long, value_parser = natural, allow_negative_numbers = true)]
    pub degree: Option<usize>,
    #[arg(long, default_value = "Z")]
    pub coeff: Coefficients,
    #[arg(long)]
    pub reduced: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScheduleArg {
    /// Outer radius `inner + β` per cell.
    Auto,
    /// Outer radius `--outer` everywhere.
    Fixed,
}

#[derive(Args, Debug, Clone)]
pub struct ProbeFpArgs {
    #[command(flatten)]
    pub pair: PairArg,
    #[arg(long, value_parser = natural, allow_negative_numbers = true)]
    pub degree: usize,
    #[arg(long, value_delimiter = ',', value_parser = natural, allow_negative_numbers = true, required = true)]
    pub alphas: Vec<usize>,
    #[arg(long, value_enum, default_value = "auto")]
    pub schedule: ScheduleArg,
    #[arg(long, value_parser = natural, allow_negative_numbers = true, default_value = "6")]
    pub inner: usize,
    #[arg(long, value_parser = natural, allow_negative_numbers = true)]
    pub outer: Option<usize>,
    #[arg(long, default_value = "Z")]
    pub coeff: Coefficients,
}

#[derive(Args, Debug, Clone)]
pub struct CheckMapArgs {
    #[arg(long)]
    pub pair_src: String,
    #[arg(long)]
    pub pair_dst: String,
    /// Map table with `g -> h` and `cone i:rep -> cone j:rep` lines.
    #[arg(long, required_unless_present = "identity")]
    pub map: Option<PathBuf>,
    /// Check the identity on elements instead of a table.
    #[arg(long, conflicts_with = "map")]
    pub identity: bool,
    #[arg(long, value_parser = natural, allow_negative_numbers = true)]
    pub radius: usize,
    /// Claimed `L,C,M`; rationals such as `3/2` are accepted.
    #[arg(long, default_value = "1,0,1")]
    pub constants: String,
    /// Replace the claimed constants by measured ones.
    #[arg(long)]
    pub measure: bool,
    /// Also push the map through the coned-off graphs.
    #[arg(long)]
    pub coned_off: bool,
}

#[derive(Args, Debug, Clone)]
pub struct OrbitCountArgs {
    #[command(flatten)]
    pub pair: PairArg,
    #[arg(long, value_parser = natural, allow_negative_numbers = true)]
    pub alpha: usize,
    #[arg(long, value_parser = natural, allow_negative_numbers = true)]
    pub radius: usize,
    #[arg(long, value_parser = natural, allow_negative_numbers = true, default_value = "2")]
    pub max_dim: usize,
    /// Also count unicone-loop orbits up to this length.
    #[arg(long, value_parser = natural, allow_negative_numbers = true)]
    pub loop_len: Option<usize>,
}

impl RunConfig {
    /// `--cache-dir`, else the environment variable.
    pub fn cache(&self) -> Option<Cache> {
        self.cache_dir
            .clone()
            .or_else(|| std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
            .map(Cache::new)
    }
}

/// Executes the subcommand on the configured worker pool and returns the report.
/// Side files (`--emit`) are written here; the report itself is left to the caller.
pub fn run(config: &RunConfig) -> Result<String> {
    if config.workers == Some(0) {
        return Err(CliError::Usage("--workers must be at least 1".into()));
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(w) = config.workers {
        pool = pool.num_threads(w);
    }
    let pool = pool.build()?;
    let cache = config.cache();
    pool.install(|| commands::dispatch(&config.command, cache.as_ref()))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| CliError::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

/// Parses `args`, runs, writes the report and returns the exit status.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let outcome = run(&config).and_then(|report| match &config.output {
        Some(path) => write_file(path, &report),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(report.as_bytes())?;
            Ok(out.flush()?)
        }
    });
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("conepair: {e}");
            e.exit_code()
        }
    }
}
