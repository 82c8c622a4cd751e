//! `limit-word`: the common limit of d(1) as beta decreases to 1.

use std::io::Write;
use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use negabeta::words::{limit_word, word_to_string};

use crate::output;

/// Prefix of the limit word of the expansions of 1.
#[derive(Args)]
pub struct Opts {
    /// Prefix length
    #[arg(long, default_value_t = 64)]
    n: usize,

    /// Write here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

impl Opts {
    pub fn run(self) -> Result<()> {
        let mut w = output::sink(self.out.as_deref())?;
        writeln!(w, "{}", word_to_string(&limit_word(self.n)))?;
        Ok(())
    }
}
