mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::Failure;

/// Tower sets, generalized tower sets and height-two Cohen-Macaulay
/// squarefree monomial ideals.
///
/// Exit status: 0 success or true, 1 false or negative result, 2 input
/// error, 3 internal invariant violation.
#[derive(Parser, Debug)]
#[command(name = "towerset", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format; `tsv` is accepted by commands with tabular output.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Indented JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Worker threads for parallel searches and suites.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Tower set predicates and invariants.
    #[command(subcommand)]
    Tower(TowerCmd),
    /// Left segment h-vectors and scaling.
    #[command(subcommand)]
    Segment(SegmentCmd),
    /// Star configurations.
    #[command(subcommand)]
    Star(StarCmd),
    /// Squarefree monomial ideals.
    #[command(subcommand)]
    Ideal(IdealCmd),
    /// Generalized tower set decompositions.
    #[command(subcommand)]
    Gts(GtsCmd),
    /// Search for an orientation and relabeling making a support a tower set.
    Towerizable(SearchArgs),
    /// Search for an orientation and relabeling making a support a
    /// generalized tower set.
    GenTowerizable(SearchArgs),
    /// Hilbert-Burch standard forms.
    #[command(subcommand)]
    Hb(HbCmd),
    /// End-to-end checks.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Run the randomized property suites.
    Selftest(SelftestArgs),
}

#[derive(Subcommand, Debug)]
pub enum TowerCmd {
    /// Exit 0 if the point set is a tower set, 1 otherwise.
    Check { input: PathBuf },
    /// The left segment `T#`.
    Hash { input: PathBuf },
    /// h-vector of a tower scheme with the given degree table.
    Hf {
        input: PathBuf,
        /// Degree table `{"degrees": [[...], ...]}`; all ones if absent.
        #[arg(long)]
        degrees: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum SegmentCmd {
    /// Level counts of a left segment.
    Hvec { input: PathBuf },
    /// Scale a left segment by a degree table.
    Scale {
        input: PathBuf,
        #[arg(long)]
        degrees: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum StarCmd {
    /// Strictly decreasing `c`-tuples with entries at most `s`.
    Gen {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        c: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum IdealCmd {
    /// Intersection of the primes of a support.
    Build { input: PathBuf },
    /// Minimal primes, height and equidimensionality.
    Primes { input: PathBuf },
    /// Betti numbers and the Cohen-Macaulay test; exit 1 if not aCM.
    Acm { input: PathBuf },
    /// h-vector and degree.
    Hvec {
        input: PathBuf,
        /// Codimension; the height of the ideal if absent.
        #[arg(long)]
        codim: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum GtsCmd {
    /// Exit 0 if `{"T", "S0"}` is a generalized tower set, 1 otherwise.
    Check { input: PathBuf },
    /// Search for a decomposition of a planar point set.
    Find {
        input: PathBuf,
        /// Largest point set searched.
        #[arg(long, default_value_t = towerset::gentower::DEFAULT_GTS_CAP)]
        cap: usize,
    },
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    pub input: PathBuf,
    #[arg(long, default_value_t = 9)]
    pub max_symbols: usize,
    #[arg(long, default_value_t = 12)]
    pub max_members: usize,
    /// Symbols the relabeling may move; defaults to all symbols for
    /// `towerizable` and to column symbols for `gen-towerizable`.
    #[arg(long, value_enum)]
    pub scope: Option<Scope>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Ambient,
    Columns,
}

#[derive(Subcommand, Debug)]
pub enum HbCmd {
    /// Standard-form Hilbert-Burch matrix of a height-two aCM ideal.
    StandardForm { input: PathBuf },
    /// `U_M`, mu-sequences, the generalized tower set and its families.
    Towerize { input: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    /// Full pipeline from ideal to generalized tower set and back.
    Characterization {
        input: PathBuf,
        #[arg(long, default_value_t = 9)]
        max_symbols: usize,
        #[arg(long, default_value_t = 12)]
        max_members: usize,
    },
}

#[derive(Args, Debug)]
pub struct SelftestArgs {
    /// Suites to run; all if absent.
    #[arg(long = "suite", value_parser = clap::builder::PossibleValuesParser::new(towerset::selftest::SUITE_NAMES))]
    pub suites: Vec<String>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Instance count for every suite instead of the defaults.
    #[arg(long)]
    pub count: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            eprintln!("towerset: cannot start thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::dispatch(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure { code, message }) => {
            eprintln!("towerset: {message}");
            ExitCode::from(code)
        }
    }
}
