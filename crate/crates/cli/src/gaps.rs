//! `gaps`: the gap/support decomposition of (0, 1].

use std::io::Write;
use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use negabeta::gaps::{OrbitInterval, PieceKind};
use negabeta::{build_structure, Scalar};
use serde_json::json;

use crate::base::{with_base, BetaSpec};
use crate::output;

/// Gap and support intervals of the invariant measure.
#[derive(Args)]
pub struct Opts {
    #[command(flatten)]
    beta: BetaSpec,

    /// Emit JSON with exact endpoints and both labelings
    #[arg(long, conflicts_with = "csv")]
    json: bool,

    /// Emit CSV (the default)
    #[arg(long)]
    csv: bool,

    /// Decimal digits for CSV endpoints (clamped to f64 precision)
    #[arg(long, default_value_t = 12)]
    digits: usize,

    /// Write here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

impl Opts {
    pub fn run(self) -> Result<()> {
        let any = self.beta.build()?;
        with_base!(&any, base => {
            let structure = build_structure(base)?;
            if self.json {
                let gaps = structure.gaps.iter().map(entry).collect::<Result<Vec<_>>>()?;
                let supports = structure.supports.iter().map(entry).collect::<Result<Vec<_>>>()?;
                let value = json!({
                    "beta": any.describe(),
                    "band": structure.band,
                    "gaps": gaps,
                    "supports": supports,
                });
                output::emit_json(self.out.as_deref(), &value)
            } else {
                let mut w = output::sink(self.out.as_deref())?;
                writeln!(w, "kind,m,k,lo,hi,lo_orbit_index,hi_orbit_index")?;
                let prec = self.digits.min(17);
                for iv in structure.gaps.iter().chain(structure.supports.iter()) {
                    writeln!(
                        w,
                        "{},{},{},{:.prec$},{:.prec$},{},{}",
                        kind_letter(iv.kind),
                        iv.m,
                        iv.k,
                        iv.lo.to_f64(),
                        iv.hi.to_f64(),
                        index_field(iv.lo_index),
                        index_field(iv.hi_index),
                    )?;
                }
                Ok(())
            }
        })
    }
}

fn kind_letter(kind: PieceKind) -> &'static str {
    match kind {
        PieceKind::Gap => "G",
        PieceKind::Support => "F",
        PieceKind::Probe => "probe",
    }
}

/// The endpoint 0 has no orbit provenance; its index cell stays empty.
fn index_field(index: Option<u64>) -> String {
    index.map(|i| i.to_string()).unwrap_or_default()
}

/// Core serialization of the interval, plus the 0-based formula label and
/// the 1-based label the figures use.
fn entry<S: Scalar>(iv: &OrbitInterval<S>) -> Result<serde_json::Value> {
    let mut value = serde_json::to_value(iv)?;
    let map = value.as_object_mut().expect("interval serializes to an object");
    map.insert("label".into(), json!(iv.label()));
    let letter = kind_letter(iv.kind);
    map.insert("figure_label".into(), json!(format!("{}_{{{},{}}}", letter, iv.m + 1, iv.k + 1)));
    Ok(value)
}
