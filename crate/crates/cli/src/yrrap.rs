//! `yrrap`: orbit classification of an algebraic base, with the transition
//! matrix, Perron data, and an optional aperiodicity certificate.

use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, ValueEnum};
use negabeta::complex::conjugate_embeddings;
use negabeta::rational::rational_to_f64;
use negabeta::yrrap::{ParryOutcome, Side};
use negabeta::{aperiodicity_certificate, build_matrix, parry_check, perron_verify, yrrap_check, Error};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Value};

use crate::base::{describe_field, parse_field};
use crate::output;

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    /// The positive (Parry) orbit of 1
    Pos,
    /// The negative orbit of 1
    Neg,
}

/// Yrrap/Parry classification with the Perron-Frobenius structure.
#[derive(Args)]
pub struct Opts {
    /// Minimal polynomial of the base: comma-separated rational
    /// coefficients, constant first, monic
    #[arg(long, value_name = "C0,C1,..", allow_hyphen_values = true)]
    minpoly: String,

    /// Interval "lo,hi" isolating the root of --minpoly
    /// (default: 1 to the Cauchy root bound)
    #[arg(long, value_name = "LO,HI", allow_hyphen_values = true)]
    bracket: Option<String>,

    /// Orbit budget for the periodicity searches
    #[arg(long, default_value_t = 10_000)]
    n: usize,

    /// Certify aperiodicity of this orbit through an expanding conjugate
    #[arg(long, value_enum, value_name = "SIDE")]
    certify_aperiodic: Option<SideArg>,

    /// Orbit budget for the certificate search
    #[arg(long, default_value_t = 500)]
    certify_steps: usize,

    /// Write here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

impl Opts {
    pub fn run(self) -> Result<()> {
        let field = parse_field(&self.minpoly, self.bracket.as_deref())?;

        let yrrap = yrrap_check(&field, self.n)?;
        let parry = parry_check(&field, self.n)?;

        // The orbit partition is finite exactly in the Yrrap case; the
        // matrix and its Perron data only exist there.
        let (matrix, perron) = match yrrap {
            Some(_) => {
                let m = build_matrix(&field)?;
                let report = perron_verify(&m)?;
                let mut perron = serde_json::to_value(&report)?;
                perron
                    .as_object_mut()
                    .expect("report serializes to an object")
                    .insert("primitive".into(), json!(true));
                (json!(m.entries), perron)
            }
            None => (Value::Null, Value::Null),
        };

        let tol = BigRational::new(BigInt::one(), BigInt::one() << 40);
        let beta = field.beta();
        let embeddings = conjugate_embeddings(&field)?;
        let mut conjugates = Vec::new();
        for (i, emb) in embeddings.iter().enumerate() {
            let modulus = emb.abs_interval(&beta, &tol)?;
            conjugates.push(json!({
                "index": i,
                "real": emb.is_real(),
                "modulus_lo": rational_to_f64(&modulus.0),
                "modulus_hi": rational_to_f64(&modulus.1),
                "expanding": modulus.0 > BigRational::one(),
            }));
        }

        let mut certificate = Value::Null;
        let mut note = None;
        if let Some(side_arg) = self.certify_aperiodic {
            let side = match side_arg {
                SideArg::Pos => Side::Positive,
                SideArg::Neg => Side::Negative,
            };
            for (i, emb) in embeddings.iter().enumerate() {
                match aperiodicity_certificate(&field, side, emb, self.certify_steps) {
                    Ok(cert) => {
                        let mut value = serde_json::to_value(&cert)?;
                        value
                            .as_object_mut()
                            .expect("certificate serializes to an object")
                            .insert("embedding".into(), json!(i));
                        certificate = value;
                        break;
                    }
                    // Non-expanding conjugates cannot certify; an exhausted
                    // budget at one embedding may still succeed at another.
                    Err(Error::NotExpanding) | Err(Error::NoCertificate(_)) => continue,
                    Err(other) => return Err(other.into()),
                }
            }
            if certificate.is_null() {
                let text = format!(
                    "no growth certificate within {} orbit steps; inconclusive",
                    self.certify_steps
                );
                eprintln!("note: {text}");
                note = Some(text);
            }
        }

        let value = json!({
            "beta": describe_field(&field),
            "yrrap": yrrap.map(|(p, q)| json!({"p": p, "q": q})),
            "parry": parry.map(parry_json),
            "matrix": matrix,
            "perron": perron,
            "conjugates": conjugates,
            "certificate": certificate,
            "certificate_note": note,
        });
        output::emit_json(self.out.as_deref(), &value)
    }
}

fn parry_json(outcome: ParryOutcome) -> Value {
    match outcome {
        ParryOutcome::Finite(n) => json!({"finite": n}),
        ParryOutcome::Periodic { preperiod, period } => json!({"p": preperiod, "q": period}),
    }
}
