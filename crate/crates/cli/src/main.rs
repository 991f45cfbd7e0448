//! `moduli`: batch front end for the invariant engines.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 usage or input error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use moduli_core::config::{OutputFormat, RunConfig};
use moduli_core::Exec;

#[derive(Parser, Debug)]
#[command(
    name = "moduli",
    version,
    about = "Invariants of (A⊗Λ)/W for flat G-bundles on abelian surfaces"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,
    /// Seed for every randomized step; recorded in the report.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Group size cap: the engine cap for stringy and verify commands
    /// (default 100000), the enumeration cap otherwise (default 10000000).
    #[arg(long, global = true)]
    pub cap: Option<u64>,
    /// Run the data-parallel loops sequentially or on the thread pool.
    #[arg(long, global = true, value_enum, default_value_t = ExecArg::Parallel)]
    pub exec: ExecArg,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExecArg {
    Sequential,
    Parallel,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Highest-coroot coefficients for the nine simple types.
    Table1 {
        /// Rank at which SU, Sp and Spin rows are instantiated.
        #[arg(long, default_value_t = 4)]
        rank: usize,
    },
    /// Stringy Hodge polynomial of (A⊗Λ)/W.
    Stringy(StringyArgs),
    /// Engine, closed form and Hilbert scheme of the Kummer K3 for Sp(n).
    VerifySp {
        #[arg(long)]
        n: u32,
    },
    /// Engine on the A_{n-1} coroot lattice against the commuting-pairs Euler number.
    VerifySu {
        #[arg(long)]
        n: u32,
    },
    /// Engine on Z^n with S_n against the Hilbert scheme of the abelian surface.
    VerifyUn {
        #[arg(long)]
        n: u32,
    },
    /// Hodge polynomials of Hilbert schemes of points, q^0 .. q^n.
    Series {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = SurfaceArg::K3)]
        surface: SurfaceArg,
        #[arg(long, value_enum, default_value_t = SpecArg::None)]
        specialization: SpecArg,
    },
    /// Points whose Weyl stabilizer is exactly {±1}.
    TorsionScan {
        #[arg(long = "type")]
        ty: String,
        #[arg(long, default_value_t = 4)]
        denominator_bound: i64,
    },
    /// Push a {±1} point through a diagram embedding.
    Propagate(PropagateArgs),
    /// Commuting-matrix model: cyclicity, duality and symplectic forms.
    Matrix(MatrixArgs),
    /// Characteristic classes of a sum of flat line bundles on T^3.
    Spin8Check {
        /// Comma-separated bitstrings; defaults to all eight classes of F2^3.
        #[arg(long)]
        classes: Option<String>,
    },
    /// Weights, -1 ∈ W and crepant-resolution verdict for a type.
    Classify {
        #[arg(long = "type")]
        ty: String,
    },
}

#[derive(Args, Debug)]
pub struct StringyArgs {
    /// Dynkin type, e.g. `C2` or `A3`.
    #[arg(long = "type", conflicts_with_all = ["action", "input"])]
    pub ty: Option<String>,
    /// Built-in action family, used with --n.
    #[arg(long, value_enum, requires = "n")]
    pub action: Option<ActionArg>,
    #[arg(long)]
    pub n: Option<usize>,
    /// JSON file: a root datum or a list of integer generator matrices.
    #[arg(long, conflicts_with = "action")]
    pub input: Option<PathBuf>,
    /// Compute the commuting-pairs Euler number when |W| is at most this.
    #[arg(long, default_value_t = 10_000)]
    pub pairs_cap: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ActionArg {
    /// Signed permutations of Z^n.
    Hyperoctahedral,
    /// Permutations of Z^n.
    Symmetric,
}

#[derive(Args, Debug)]
pub struct PropagateArgs {
    /// Sub-diagram type carrying the input point.
    #[arg(long)]
    pub sub: String,
    /// Ambient type.
    #[arg(long = "type")]
    pub ty: String,
    /// 0-based ambient nodes for the sub nodes, e.g. `1,2,3,4`.
    #[arg(long)]
    pub nodes: Option<String>,
    /// Rows of 4 rationals separated by `;`; defaults to the basic example point.
    #[arg(long)]
    pub point: Option<String>,
    #[arg(long, default_value_t = 7)]
    pub fine_denominator: i64,
    #[arg(long, default_value_t = 50)]
    pub attempts: usize,
}

#[derive(Args, Debug)]
pub struct MatrixArgs {
    #[arg(long, value_enum, conflicts_with_all = ["ideal", "input"])]
    pub example: Option<ExampleArg>,
    /// Ideal generators separated by `;`, e.g. `(x,y)^3; y^2-xy; x^2-xy`.
    #[arg(long, conflicts_with = "input")]
    pub ideal: Option<String>,
    /// Truncation degree N for --ideal.
    #[arg(long, default_value_t = 6)]
    pub truncation: u32,
    /// JSON file `{dim, mx, my}`.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExampleArg {
    /// The 4x4 pair without a compatible symplectic form.
    Remark,
    /// The 3x3 cyclic pair with non-cyclic transpose.
    Footnote,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SurfaceArg {
    Abelian,
    Kummer,
    K3,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SpecArg {
    None,
    Euler,
    Signature,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Table1 { .. } => "table1",
            Command::Stringy(_) => "stringy",
            Command::VerifySp { .. } => "verify-sp",
            Command::VerifySu { .. } => "verify-su",
            Command::VerifyUn { .. } => "verify-un",
            Command::Series { .. } => "series",
            Command::TorsionScan { .. } => "torsion-scan",
            Command::Propagate(_) => "propagate",
            Command::Matrix(_) => "matrix",
            Command::Spin8Check { .. } => "spin8-check",
            Command::Classify { .. } => "classify",
        }
    }

    fn uses_engine_cap(&self) -> bool {
        matches!(
            self,
            Command::Stringy(_) | Command::VerifySp { .. } | Command::VerifySu { .. } | Command::VerifyUn { .. }
        )
    }

    fn denominator_bound(&self) -> Option<i64> {
        match self {
            Command::TorsionScan { denominator_bound, .. } => Some(*denominator_bound),
            _ => None,
        }
    }
}

pub fn run_config(cli: &Cli) -> RunConfig {
    let mut cfg = RunConfig {
        output_format: match cli.global.format {
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Text => OutputFormat::Text,
        },
        seed: cli.global.seed,
        exec: match cli.global.exec {
            ExecArg::Sequential => Exec::Sequential,
            ExecArg::Parallel => Exec::Parallel,
        },
        ..RunConfig::default()
    };
    if let Some(c) = cli.global.cap {
        if cli.command.uses_engine_cap() {
            cfg.engine_cap = c;
        } else {
            cfg.group_order_cap = c;
        }
    }
    if let Some(b) = cli.command.denominator_bound() {
        cfg.denominator_bound = b;
    }
    cfg
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = run_config(&cli);
    if let Err(e) = cfg.validate() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let outcome = match commands::run(&cli.command, &cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let rendered = outcome.render(cli.command.name(), &cfg);
    let written = match &cli.global.out {
        Some(path) => std::fs::write(path, &rendered).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{rendered}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if outcome.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
