//! `identities`: the exact polynomial identity suite of the phi morphism.

use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use negabeta::words::verify_identities;

use crate::output;
use crate::InvariantFailure;

/// Run the exact identity suite and report each check as JSON.
#[derive(Args)]
pub struct Opts {
    /// Largest exponent in the specialized identity families
    #[arg(long, default_value_t = 12)]
    n: u32,

    /// Seed for the random word splits
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Write here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

impl Opts {
    pub fn run(self) -> Result<()> {
        let report = verify_identities(self.n, self.seed)?;
        let value = serde_json::to_value(&report)?;
        output::emit_json(self.out.as_deref(), &value)?;
        let failures = report.iter().filter(|r| !r.pass).count();
        if failures > 0 {
            return Err(InvariantFailure(format!("{failures} identity checks failed")).into());
        }
        Ok(())
    }
}
