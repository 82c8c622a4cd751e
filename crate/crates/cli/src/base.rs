//! Turning `--beta` / `--minpoly` / `--bracket` into a concrete base.
//!
//! A rational spec keeps every downstream computation in exact rational
//! arithmetic; a minimal-polynomial spec isolates the root in a bracket
//! (supplied or defaulted to (1, Cauchy bound)) and works in the number
//! field. The two cases carry different scalar types, so commands dispatch
//! through [`with_base`] rather than a trait object.

use std::sync::Arc;

use anyhow::{anyhow, Result};
use clap::Args;
use negabeta::rational::{format_rational, parse_rational, rational_to_f64};
use negabeta::{AlgebraicBase, Base, NumberField, RatPoly, RationalBase};
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde_json::json;

#[derive(Args, Debug)]
pub struct BetaSpec {
    /// Base as an exact rational: "5/4", "1.25", or an integer
    #[arg(long, value_name = "Q", conflicts_with_all = ["minpoly", "bracket"])]
    pub beta: Option<String>,

    /// Minimal polynomial of the base: comma-separated rational
    /// coefficients, constant first, monic (e.g. x^2-x-1 is "-1,-1,1")
    #[arg(long, value_name = "C0,C1,..", required_unless_present = "beta", allow_hyphen_values = true)]
    pub minpoly: Option<String>,

    /// Interval "lo,hi" isolating the root of --minpoly
    /// (default: 1 to the Cauchy root bound)
    #[arg(long, value_name = "LO,HI", requires = "minpoly", allow_hyphen_values = true)]
    pub bracket: Option<String>,
}

pub enum AnyBase {
    Rational(RationalBase),
    Algebraic(AlgebraicBase),
}

/// Run one expression against whichever scalar backend the base carries.
macro_rules! with_base {
    ($any:expr, $base:ident => $body:expr) => {
        match $any {
            $crate::base::AnyBase::Rational($base) => $body,
            $crate::base::AnyBase::Algebraic($base) => $body,
        }
    };
}
pub(crate) use with_base;

impl BetaSpec {
    pub fn build(&self) -> Result<AnyBase> {
        match (&self.beta, &self.minpoly) {
            (Some(text), None) => {
                let q = parse_rational(text)?;
                Ok(AnyBase::Rational(Base::new(q)?))
            }
            (None, Some(_)) => {
                let field = self.field()?;
                Ok(AnyBase::Algebraic(Base::new(field.beta())?))
            }
            _ => unreachable!("clap enforces exactly one of --beta / --minpoly"),
        }
    }

    pub fn field(&self) -> Result<Arc<NumberField>> {
        let minpoly = self
            .minpoly
            .as_deref()
            .ok_or_else(|| anyhow!("this operation needs --minpoly, not --beta"))?;
        parse_field(minpoly, self.bracket.as_deref())
    }
}

pub fn parse_field(minpoly: &str, bracket: Option<&str>) -> Result<Arc<NumberField>> {
    let coeffs = minpoly
        .split(',')
        .map(|t| parse_rational(t.trim()))
        .collect::<negabeta::Result<Vec<_>>>()?;
    let (lo, hi) = match bracket {
        Some(text) => {
            let (a, b) = text
                .split_once(',')
                .ok_or_else(|| anyhow!("--bracket expects \"lo,hi\""))?;
            (parse_rational(a.trim())?, parse_rational(b.trim())?)
        }
        None => (BigRational::one(), cauchy_bound(&coeffs)),
    };
    Ok(NumberField::new(RatPoly::new(coeffs), lo, hi)?)
}

/// 1 + max |c_i| over the non-leading coefficients: every root of a monic
/// polynomial lies strictly inside this radius, so (1, bound) brackets all
/// candidate bases at once. Ambiguity (several roots > 1) surfaces as a
/// MultipleRoots error asking for an explicit --bracket.
fn cauchy_bound(coeffs: &[BigRational]) -> BigRational {
    let mut bound = BigRational::one();
    if let Some((_, rest)) = coeffs.split_last() {
        for c in rest {
            bound = bound.max(c.abs());
        }
    }
    bound + BigRational::one()
}

impl AnyBase {
    /// Context block identifying the base in JSON outputs.
    pub fn describe(&self) -> serde_json::Value {
        match self {
            AnyBase::Rational(base) => json!({
                "kind": "rational",
                "value": format_rational(base.beta()),
                "approx": rational_to_f64(base.beta()),
            }),
            AnyBase::Algebraic(base) => {
                let field = base.beta().field().expect("algebraic base carries its field").clone();
                describe_field(&field)
            }
        }
    }
}

pub fn describe_field(field: &Arc<NumberField>) -> serde_json::Value {
    let coeffs: Vec<String> = field.min_poly().coeffs().iter().map(format_rational).collect();
    let (lo, hi) = field.bracket();
    json!({
        "kind": "algebraic",
        "minpoly": coeffs,
        "bracket": [format_rational(&lo), format_rational(&hi)],
        "approx": field.to_f64(),
    })
}
