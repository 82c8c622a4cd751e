//! `expand`: digits of the (-beta)-expansion of a point.

use std::io::Write;
use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use negabeta::rational::{format_rational, parse_rational};
use negabeta::Scalar;
use serde_json::json;

use crate::base::{with_base, BetaSpec};
use crate::output;

/// Digits of the (-beta)-expansion of a point of (0, 1].
#[derive(Args)]
pub struct Opts {
    #[command(flatten)]
    beta: BetaSpec,

    /// Starting point, an exact rational in (0, 1]
    #[arg(long, default_value = "1")]
    x: String,

    /// Number of digits
    #[arg(long, default_value_t = 16)]
    n: usize,

    /// Emit JSON (digits plus the exact orbit) instead of the digit string
    #[arg(long)]
    json: bool,

    /// Write here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

impl Opts {
    pub fn run(self) -> Result<()> {
        let q = parse_rational(&self.x)?;
        let any = self.beta.build()?;
        let (digits, points, approx) = with_base!(&any, base => {
            let x = Scalar::from_rational(&q);
            let (digits, points) = base.expand_point(&x, self.n)?;
            let strings: Vec<String> = points.iter().map(|p| p.to_string()).collect();
            let approx: Vec<f64> = points.iter().map(Scalar::to_f64).collect();
            (digits, strings, approx)
        });
        if self.json {
            let value = json!({
                "beta": any.describe(),
                "x": format_rational(&q),
                "digits": digits,
                "points": points,
                "points_approx": approx,
            });
            output::emit_json(self.out.as_deref(), &value)
        } else {
            let mut w = output::sink(self.out.as_deref())?;
            writeln!(w, "{}", digit_string(&digits))?;
            Ok(())
        }
    }
}

/// Digits concatenate when they are all single characters; bases past 9
/// need a separator to stay unambiguous.
fn digit_string(digits: &[u32]) -> String {
    if digits.iter().all(|&d| d <= 9) {
        digits.iter().map(|d| d.to_string()).collect()
    } else {
        let parts: Vec<String> = digits.iter().map(|d| d.to_string()).collect();
        parts.join(" ")
    }
}
