mod commands;
mod markdown;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const EXIT_VALIDATION: u8 = 2;
pub const EXIT_UNKNOWN: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "coverkit", version, about = "Abelian covers: building data, invariants, deformations")]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Markdown)]
    pub format: Format,

    /// Exit with status 3 when a result is unknown.
    #[arg(long, global = true, env = "COVERKIT_STRICT", value_parser = clap::builder::BoolishValueParser::new())]
    pub strict: bool,

    /// Increase log verbosity (repeatable).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Markdown,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Inertia data of a finite abelian group.
    Group {
        /// Invariant factors, e.g. `2,2`.
        #[arg(long, value_delimiter = ',', required = true)]
        factors: Vec<i64>,
    },
    /// Operations on a cover description.
    #[command(subcommand)]
    Cover(CoverCommand),
    /// The cyclic-chain family over a base.
    Construction62 {
        /// Chain `d_1,…,d_s`.
        #[arg(long, value_delimiter = ',', required = true)]
        d: Vec<i64>,
        /// Base preset name.
        #[arg(long, default_value = "abelian_pp")]
        base: String,
        /// Class of every branch divisor, in Néron–Severi coordinates.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        xi: Vec<i64>,
    },
    /// Order of the generic automorphism group versus `K²` for `d = (n, n)`.
    Prop66 {
        #[arg(long)]
        n: i64,
    },
    /// Symbolic resolution trace of the local singularity.
    Resolve {
        #[arg(long, required_unless_present = "verify_up_to")]
        n: Option<u32>,
        #[arg(long, default_value = "h-unit")]
        case: String,
        /// Verify every trace for `2 ≤ n ≤ N` instead.
        #[arg(long, conflicts_with = "n")]
        verify_up_to: Option<u32>,
    },
    /// Dimension count for the family of covers.
    ModuliDim {
        #[command(flatten)]
        input: Input,
        /// Dimension of the automorphism group of the base.
        #[arg(long)]
        aut_dim: Option<i64>,
    },
}

#[derive(Subcommand, Debug)]
pub enum CoverCommand {
    /// Validate and audit a cover description.
    Check {
        #[command(flatten)]
        input: Input,
    },
    /// Canonical class, Euler number and holomorphic Euler characteristic.
    Invariants {
        #[command(flatten)]
        input: Input,
    },
    /// Per-character deformation table and predicted automorphisms.
    Deformations {
        #[command(flatten)]
        input: Input,
    },
    /// Local defining relations as polynomial text.
    Emit {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "plain")]
        flavor: String,
        /// Keep only the Galois parameters.
        #[arg(long)]
        galois: bool,
        /// Count fibre points at the configured parameter values.
        #[arg(long)]
        smoke: bool,
    },
}

#[derive(Args, Debug)]
pub struct Input {
    /// Path to a JSON cover description, `-` for stdin, or inline JSON.
    pub input: String,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_VALIDATION } else { 0 });
        }
    };
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new().filter_level(level).parse_default_env().init();

    match commands::run(&cli.command) {
        Ok(report) => {
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&report.json).expect("json value") + "\n",
                Format::Markdown => report.markdown,
            };
            let mut out = std::io::stdout().lock();
            if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
                log::debug!("stdout closed: {e}");
            }
            if cli.strict && report.unknown {
                log::warn!("result contains unknown quantities");
                return ExitCode::from(EXIT_UNKNOWN);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_VALIDATION)
        }
    }
}
