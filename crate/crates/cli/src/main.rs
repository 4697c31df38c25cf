use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod report;

#[derive(Parser, Debug)]
#[command(
    name = "homlie",
    version,
    about = "Exact computations with Hom-Lie algebras over the rationals"
)]
struct Cli {
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check every algebra, module, map and cochain of a workspace.
    Validate { file: PathBuf },
    /// Dimensions of Hⁿ_α(L, M) for n up to a bound.
    Cohomology {
        file: PathBuf,
        #[arg(long)]
        algebra: String,
        /// A module over the algebra, or `adjoint`.
        #[arg(long)]
        module: String,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
    },
    #[command(subcommand)]
    Extension(ExtensionCommand),
    #[command(subcommand)]
    Crossed(CrossedCommand),
    /// Graded pieces of the free Hom-Lie algebra on a Hom-set.
    Free {
        /// Generators as `a,b` (identity twist) or `a->b,b->a,c->0`.
        #[arg(long)]
        generators: String,
        #[arg(long)]
        max_length: usize,
    },
    /// Look for a Hom-linear section of a surjective map between algebras.
    Section {
        file: PathBuf,
        #[arg(long)]
        map: String,
    },
}

/// An extension is either the name of a 2-cocycle or `E:i:p:s[:t]` naming the middle
/// algebra, inclusion, projection, section and optionally the twisting map.
#[derive(Args, Debug)]
struct ExtensionArgs {
    file: PathBuf,
    #[arg(long)]
    module: String,
}

#[derive(Subcommand, Debug)]
enum ExtensionCommand {
    /// Normal-form extension of a 2-cocycle.
    Build {
        #[command(flatten)]
        common: ExtensionArgs,
        #[arg(long)]
        cocycle: String,
    },
    /// Validate an extension and extract its 2-cocycle.
    Extract {
        #[command(flatten)]
        common: ExtensionArgs,
        #[arg(long)]
        ext: String,
    },
    /// Decide equivalence of two extensions.
    Equiv {
        #[command(flatten)]
        common: ExtensionArgs,
        #[arg(long, num_args = 2, required = true)]
        ext: Vec<String>,
    },
    /// Baer sum of two extensions, or a scalar multiple of one.
    Baer {
        #[command(flatten)]
        common: ExtensionArgs,
        #[arg(long, num_args = 1..=2, required = true)]
        ext: Vec<String>,
        /// Scalar `k` (integer or `p/q`); with it only the first extension is used.
        #[arg(long, allow_hyphen_values = true)]
        scalar: Option<String>,
    },
    /// Five-term exact sequence of an extension with coefficients in a module.
    FiveTerm {
        #[command(flatten)]
        common: ExtensionArgs,
        #[arg(long)]
        ext: String,
        /// Coefficient module over the base algebra (defaults to the kernel module).
        #[arg(long)]
        coefficients: Option<String>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FlavorArg {
    Standard,
    Alpha,
}

#[derive(Subcommand, Debug)]
enum CrossedCommand {
    /// Crossed module axioms for an action and a map `μ`.
    Check {
        file: PathBuf,
        /// Action of the target on the source (a module block, brackets allowed).
        #[arg(long)]
        action: String,
        #[arg(long)]
        mu: String,
        #[arg(long, value_enum, default_value_t = FlavorArg::Standard)]
        flavor: FlavorArg,
    },
    /// cat¹ conditions for `(P, s, t)`; `N` is the image of `s`.
    Cat1 {
        file: PathBuf,
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        s: String,
        #[arg(long)]
        t: String,
    },
    /// The crossed module of a cat¹-Hom-Lie algebra.
    FunctorP {
        file: PathBuf,
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        s: String,
        #[arg(long)]
        t: String,
    },
    /// The cat¹-Hom-Lie algebra of a crossed module.
    FunctorS {
        file: PathBuf,
        #[arg(long)]
        action: String,
        #[arg(long)]
        mu: String,
    },
    /// The 3-cocycle of an α-crossed extension `M → N → P → L`.
    Eta {
        file: PathBuf,
        /// Module `M` over `L`.
        #[arg(long)]
        module: String,
        /// Action of `P` on `N`.
        #[arg(long)]
        action: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        chi: String,
        #[arg(long)]
        pi: String,
        #[arg(long)]
        sigma: String,
        #[arg(long)]
        rho: String,
        #[arg(long, default_value_t = 5)]
        trials: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo: Vec<String> = std::env::args().skip(1).collect();
    match commands::run(&cli.command, &echo) {
        Ok((report, code)) => {
            let text = if cli.pretty {
                serde_json::to_string_pretty(&report)
            } else {
                serde_json::to_string(&report)
            }
            .expect("JSON values serialize");
            println!("{text}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("homlie: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
