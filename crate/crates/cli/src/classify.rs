//! `classify`: where beta sits in the gamma/eta chains.

use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use negabeta::rational::format_rational;
use negabeta::spectra::{classify, gamma, SpectralIndex};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::json;

use crate::base::{with_base, BetaSpec};
use crate::output;

/// Gamma band, gap count, and phi-prefix levels of the expansion of 1.
#[derive(Args)]
pub struct Opts {
    #[command(flatten)]
    beta: BetaSpec,

    /// Write here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

impl Opts {
    pub fn run(self) -> Result<()> {
        let any = self.beta.build()?;
        let class = with_base!(&any, base => classify(base))?;

        // Brackets for the spectral values enclosing beta: gamma_(n+1) <= beta
        // < gamma_n at band n, with no upper neighbor in band 0.
        let tol = BigRational::new(BigInt::from(1), BigInt::from(10u64.pow(12)));
        let lower = gamma(class.gamma_band + 1, &tol)?;
        let upper = if class.gamma_band >= 1 { Some(gamma(class.gamma_band, &tol)?) } else { None };

        let value = json!({
            "beta": any.describe(),
            "gamma_n": class.gamma_band,
            "gap_count": class.gap_count,
            "prefix_levels": (1..=class.prefix_level).collect::<Vec<u32>>(),
            "at_eta_boundary": class.at_eta_boundary,
            "brackets": {
                "gamma_lower": spectral_json(class.gamma_band + 1, &lower),
                "gamma_upper": upper.map(|u| spectral_json(class.gamma_band, &u)),
            },
        });
        output::emit_json(self.out.as_deref(), &value)
    }
}

fn spectral_json(n: u32, index: &SpectralIndex) -> serde_json::Value {
    let (lo, hi) = index.bracket();
    json!({
        "n": n,
        "lo": format_rational(&lo),
        "hi": format_rational(&hi),
        "approx": index.value_f64(),
        "exact": index.is_exact(),
    })
}
