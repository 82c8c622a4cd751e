//! Command-line surface for the negative beta transformation.
//!
//! Subcommands delegate to the library; the only logic here is flag
//! plumbing and the mapping from error classes to exit codes: 2 for bad
//! input or domain violations, 3 when a numeric backend cannot commit to
//! an answer, 4 when a promised invariant fails to verify.

mod base;
mod classify;
mod density;
mod expand;
mod gaps;
mod identities;
mod limit_word;
mod output;
mod sweep;
mod yrrap;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "negabeta",
    version,
    about = "Exact dynamics of the negative beta transformation x -> floor(beta*x) + 1 - beta*x on (0, 1]"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Digits of the (-beta)-expansion of a point
    Expand(expand::Opts),
    /// Classification columns across a range of beta, as CSV
    Sweep(sweep::Opts),
    /// Gamma band, gap count, and phi-prefix levels of beta
    Classify(classify::Opts),
    /// Gap and support intervals of the invariant measure
    Gaps(gaps::Opts),
    /// Invariant density estimates on a uniform grid
    Density(density::Opts),
    /// Yrrap/Parry classification with Perron-Frobenius data
    Yrrap(yrrap::Opts),
    /// Exact polynomial identity suite of the phi morphism
    Identities(identities::Opts),
    /// Prefix of the limit word of d(1) as beta decreases to 1
    LimitWord(limit_word::Opts),
}

/// A check the tool itself promises came out false. Distinct from bad
/// input and from numeric ambiguity; maps to exit code 4.
#[derive(Debug)]
pub struct InvariantFailure(pub String);

impl std::fmt::Display for InvariantFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "invariant failure: {}", self.0)
    }
}

impl std::error::Error for InvariantFailure {}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Expand(opts) => opts.run(),
        Command::Sweep(opts) => opts.run(),
        Command::Classify(opts) => opts.run(),
        Command::Gaps(opts) => opts.run(),
        Command::Density(opts) => opts.run(),
        Command::Yrrap(opts) => opts.run(),
        Command::Identities(opts) => opts.run(),
        Command::LimitWord(opts) => opts.run(),
    };
    if let Err(err) = result {
        eprintln!("error: {err:#}");
        std::process::exit(exit_code(&err));
    }
}

fn exit_code(err: &anyhow::Error) -> i32 {
    use negabeta::Error::*;
    if err.downcast_ref::<InvariantFailure>().is_some() {
        return 4;
    }
    match err.downcast_ref::<negabeta::Error>() {
        Some(e) => match e {
            Parse(_) | NotMonic | NotBracketed(..) | MultipleRoots(_) | RootNotGreaterThanOne
            | FieldMismatch | OutOfDomain(_) | BadAlphabet(_) | UnboundedIndex(..)
            | DegenerateInterval(_) => 2,
            NumericAmbiguous(_) | SignBudget(_) | ConvergenceFailure(_) | IsolationFailure(_) => 3,
            ExplosionGuard(..) | PartitionBreak(_) | NoCoverage(_) | AtomImageMisaligned(_)
            | NotExpanding | NoCertificate(_) | NotPrimitive | EigenMismatch(_) => 4,
        },
        // IO and formatting problems are input-side concerns.
        None => 2,
    }
}
