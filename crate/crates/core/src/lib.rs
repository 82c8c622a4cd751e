//! Dynamics of the negative beta transformation T(x) = -beta*x + floor(beta*x) + 1
//! on the half-open unit interval.
//!
//! The crate is generic over the scalar backend via [`Scalar`]: exact rational
//! arithmetic for rational beta, exact real algebraic arithmetic for beta given
//! by its minimal polynomial, and a guarded f64 for quick numeric exploration.
//! The type aliases below name the three concrete instantiations of [`Base`].

pub mod complex;
pub mod error;
pub mod field;
pub mod gaps;
pub mod interval;
pub mod map;
pub mod measure;
pub mod yrrap;
pub mod poly;
pub mod rational;
pub mod scalar;
pub mod spectra;
pub mod words;

pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec, NumberField};
pub use gaps::{build_structure, GapStructure, OrbitInterval};
pub use interval::IntervalSet;
pub use measure::{birkhoff_histogram, cross_validate, density_series, ulam_estimate};
pub use yrrap::{aperiodicity_certificate, build_matrix, parry_check, perron_verify, yrrap_check, TransitionMatrix};
pub use map::{Base, OrbitRecord};
pub use poly::RatPoly;
pub use scalar::{GuardedF64, Scalar};

/// The map with an exact rational base.
pub type RationalBase = Base<num_rational::BigRational>;
/// The map with an exact algebraic base (beta a root of its minimal polynomial).
pub type AlgebraicBase = Base<FieldElement>;
/// The map over guarded floating point, for exploration at scale.
pub type NumericBase = Base<GuardedF64>;
