//! `density`: invariant density profiles on a uniform grid.

use std::io::Write;
use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, ValueEnum};
use negabeta::measure::series_profile;
use negabeta::{birkhoff_histogram, ulam_estimate};

use crate::base::{with_base, BetaSpec};
use crate::output;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Exact alternating series for the invariant density
    Series,
    /// Ulam piecewise-constant power iteration
    Ulam,
    /// Visit frequencies of a long simulated orbit
    Birkhoff,
    /// All three, one column each
    All,
}

/// Invariant density estimates, one CSV row per bin center.
#[derive(Args)]
pub struct Opts {
    #[command(flatten)]
    beta: BetaSpec,

    /// Number of grid bins
    #[arg(long, default_value_t = 1024)]
    bins: usize,

    /// Which estimator to run
    #[arg(long, value_enum, default_value_t = Method::All)]
    method: Method,

    /// Series truncation depth
    #[arg(long, default_value_t = 200)]
    terms: usize,

    /// Orbit length for the Birkhoff histogram
    #[arg(long, default_value_t = 1_000_000)]
    iters: usize,

    /// Starting point of the simulated orbit
    #[arg(long, default_value_t = 0.412_871_903_556_717_3)]
    x0: f64,

    /// Power-iteration sweeps for the Ulam estimate
    #[arg(long, default_value_t = 20_000)]
    power_iters: usize,

    /// Write here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

impl Opts {
    pub fn run(self) -> Result<()> {
        let any = self.beta.build()?;
        let bins = self.bins;
        let columns: Vec<(&str, Vec<f64>)> = with_base!(&any, base => {
            let mut cols = Vec::new();
            if matches!(self.method, Method::Series | Method::All) {
                cols.push(("series", series_profile(base, bins, self.terms)?));
            }
            if matches!(self.method, Method::Ulam | Method::All) {
                cols.push(("ulam", ulam_estimate(base, bins, self.power_iters)?));
            }
            if matches!(self.method, Method::Birkhoff | Method::All) {
                cols.push(("birkhoff", birkhoff_histogram(base, self.x0, self.iters, bins)));
            }
            cols
        });

        let mut w = output::sink(self.out.as_deref())?;
        if columns.len() == 1 {
            writeln!(w, "x,value")?;
        } else {
            let names: Vec<&str> = columns.iter().map(|(name, _)| *name).collect();
            writeln!(w, "x,{}", names.join(","))?;
        }
        for i in 0..bins {
            let x = (i as f64 + 0.5) / bins as f64;
            write!(w, "{x}")?;
            for (_, col) in &columns {
                write!(w, ",{}", col[i])?;
            }
            writeln!(w)?;
        }
        Ok(())
    }
}
