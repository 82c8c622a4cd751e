//! `sweep`: per-beta classification columns across a rational range.

use std::io::Write;
use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use negabeta::rational::{parse_rational, rational_to_f64};
use negabeta::spectra::classify;
use negabeta::{Base, Error};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use rayon::ThreadPoolBuilder;

use crate::output;

/// Gap count, gamma band, and limit-word agreement sampled across a range.
#[derive(Args)]
pub struct Opts {
    /// Lower end of the range (sampled)
    #[arg(long, value_name = "Q")]
    from: String,

    /// Upper end of the range (never sampled)
    #[arg(long, value_name = "Q")]
    to: String,

    /// Number of evenly spaced samples in [from, to)
    #[arg(long)]
    steps: usize,

    /// Expansion prefix length for the agreement column
    #[arg(long, default_value_t = 64)]
    n: usize,

    /// Worker threads (0 keeps the rayon default)
    #[arg(long, default_value_t = 0)]
    threads: usize,

    /// Write here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

impl Opts {
    pub fn run(self) -> Result<()> {
        let from = parse_rational(&self.from)?;
        let to = parse_rational(&self.to)?;
        let mut w = output::sink(self.out.as_deref())?;
        writeln!(w, "beta,gap_count,gamma_band,agreement_len")?;
        if self.steps == 0 || to <= from {
            return Ok(());
        }
        if from <= BigRational::one() {
            return Err(Error::OutOfDomain(format!("sweep range starts at {from}, not above 1")).into());
        }
        if self.threads > 0 {
            // Ignore the error from a pool that is already in place.
            let _ = ThreadPoolBuilder::new().num_threads(self.threads).build_global();
        }

        let limit = negabeta::words::limit_word(self.n);
        let step = (&to - &from) / BigRational::from_integer(BigInt::from(self.steps));
        let rows = (0..self.steps)
            .into_par_iter()
            .map(|k| {
                let beta = &from + &step * BigRational::from_integer(BigInt::from(k));
                row(beta, &limit, self.n)
            })
            .collect::<negabeta::Result<Vec<String>>>()?;
        for r in rows {
            writeln!(w, "{r}")?;
        }
        Ok(())
    }
}

fn row(beta: BigRational, limit: &[u32], n: usize) -> negabeta::Result<String> {
    let base = Base::new(beta.clone())?;
    let class = classify(&base)?;
    let (digits, _) = base.expand_point(&BigRational::one(), n)?;
    let agree = digits.iter().zip(limit).take_while(|(a, b)| a == b).count();
    Ok(format!(
        "{},{},{},{}",
        rational_to_f64(&beta),
        class.gap_count,
        class.gamma_band,
        agree
    ))
}
