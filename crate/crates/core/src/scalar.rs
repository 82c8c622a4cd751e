//! The scalar abstraction the dynamics is generic over.
//!
//! Three backends implement [`Scalar`]: exact rationals ([`BigRational`]) for
//! rational beta, exact algebraic numbers ([`FieldElement`]) for beta given by
//! a minimal polynomial, and [`GuardedF64`], an f64 carrying a propagated
//! error width. Floor and sign queries are fallible: the guarded backend
//! refuses to answer when the value is within its error width of a decision
//! boundary, instead of silently picking a branch.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::rational::{rational_to_f64, sign_i8};

pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Eq
    + Hash
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    /// Whether equality and ordering are exact (enables period detection and
    /// exact interval bookkeeping).
    const EXACT: bool;

    fn from_rational(q: &BigRational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(n.into()))
    }

    /// Exact floor, or an error when the backend cannot decide.
    fn checked_floor(&self) -> Result<BigInt>;

    /// Sign in {-1, 0, 1}, or an error when the backend cannot decide.
    fn checked_sign(&self) -> Result<i8>;

    fn to_f64(&self) -> f64;

    fn cmp_checked(&self, other: &Self) -> Result<Ordering> {
        let diff = self.clone() - other.clone();
        Ok(match diff.checked_sign()? {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        })
    }

    fn recip(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }

    fn checked_floor(&self) -> Result<BigInt> {
        Ok(self.floor().to_integer())
    }

    fn checked_sign(&self) -> Result<i8> {
        Ok(sign_i8(self))
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }
}

impl Scalar for FieldElement {
    const EXACT: bool = true;

    fn from_rational(q: &BigRational) -> Self {
        FieldElement::rational(q.clone())
    }

    fn checked_floor(&self) -> Result<BigInt> {
        Ok(self.floor())
    }

    fn checked_sign(&self) -> Result<i8> {
        Ok(self.sign())
    }

    fn to_f64(&self) -> f64 {
        FieldElement::to_f64(self)
    }
}

/// An f64 with a propagated error width. Arithmetic widens the interval by the
/// incurred rounding error, so a value near a floor or sign boundary knows it
/// cannot be trusted and escalates instead of guessing.
#[derive(Clone, Copy)]
pub struct GuardedF64 {
    mid: f64,
    wid: f64,
}

fn ulp_slack(x: f64) -> f64 {
    x.abs() * (4.0 * f64::EPSILON) + f64::MIN_POSITIVE
}

/// Knuth's branch-free TwoSum: returns the rounded sum and its exact
/// floating-point error, so width tracking can tell exact operations
/// (error 0) from genuinely rounded ones.
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

/// Inflate a width bound to absorb the rounding of the width arithmetic
/// itself. Zero stays zero: exact results stay exact.
fn bump(w: f64) -> f64 {
    w * (1.0 + 4.0 * f64::EPSILON)
}

impl GuardedF64 {
    /// Seed with a relative guard of about 1e-15, so a fresh value behaves
    /// like one honest f64 rounding.
    pub fn new(x: f64) -> Self {
        GuardedF64 { mid: x, wid: ulp_slack(x) }
    }

    pub fn exact(x: f64) -> Self {
        GuardedF64 { mid: x, wid: 0.0 }
    }

    pub fn value(&self) -> f64 {
        self.mid
    }

    pub fn width(&self) -> f64 {
        self.wid
    }
}

impl fmt::Debug for GuardedF64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (±{:.2e})", self.mid, self.wid)
    }
}

impl fmt::Display for GuardedF64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.mid)
    }
}

impl PartialEq for GuardedF64 {
    fn eq(&self, other: &Self) -> bool {
        self.mid == other.mid
    }
}

impl Eq for GuardedF64 {}

impl Hash for GuardedF64 {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.mid.to_bits().hash(state);
    }
}

impl PartialOrd for GuardedF64 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.mid.partial_cmp(&other.mid)
    }
}

impl Add for GuardedF64 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (mid, err) = two_sum(self.mid, rhs.mid);
        GuardedF64 { mid, wid: bump(self.wid + rhs.wid + err.abs()) }
    }
}

impl Sub for GuardedF64 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let (mid, err) = two_sum(self.mid, -rhs.mid);
        GuardedF64 { mid, wid: bump(self.wid + rhs.wid + err.abs()) }
    }
}

impl Mul for GuardedF64 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mid = self.mid * rhs.mid;
        // Fused multiply-add recovers the exact rounding error of the product.
        let err = self.mid.mul_add(rhs.mid, -mid).abs();
        let wid = self.mid.abs() * rhs.wid + rhs.mid.abs() * self.wid + self.wid * rhs.wid + err;
        GuardedF64 { mid, wid: bump(wid) }
    }
}

impl Div for GuardedF64 {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let mid = self.mid / rhs.mid;
        let den = rhs.mid.abs() - rhs.wid;
        let wid = if den > 0.0 && mid.is_finite() {
            // fma(mid, b, -a) is the exact residual of the rounded quotient.
            let err = mid.mul_add(rhs.mid, -self.mid).abs();
            bump((self.wid + mid.abs() * rhs.wid + err) / den)
        } else {
            f64::INFINITY
        };
        GuardedF64 { mid, wid }
    }
}

impl Neg for GuardedF64 {
    type Output = Self;
    fn neg(self) -> Self {
        GuardedF64 { mid: -self.mid, wid: self.wid }
    }
}

impl Zero for GuardedF64 {
    fn zero() -> Self {
        GuardedF64 { mid: 0.0, wid: 0.0 }
    }
    fn is_zero(&self) -> bool {
        self.mid == 0.0
    }
}

impl One for GuardedF64 {
    fn one() -> Self {
        GuardedF64 { mid: 1.0, wid: 0.0 }
    }
}

impl Scalar for GuardedF64 {
    const EXACT: bool = false;

    fn from_rational(q: &BigRational) -> Self {
        let mid = rational_to_f64(q);
        // When both parts fit exactly in f64, the fma residual certifies the
        // true rounding error of the quotient; dyadic rationals come out
        // width-free.
        if q.numer().bits() <= 53 && q.denom().bits() <= 53 && mid.is_finite() {
            let n = q.numer().to_f64().expect("small BigInt converts");
            let d = q.denom().to_f64().expect("small BigInt converts");
            let err = mid.mul_add(d, -n).abs();
            return GuardedF64 { mid, wid: bump(err / d) };
        }
        GuardedF64::new(mid)
    }

    fn checked_floor(&self) -> Result<BigInt> {
        let lo = (self.mid - self.wid).floor();
        let hi = (self.mid + self.wid).floor();
        if lo == hi && lo.is_finite() {
            BigInt::from_f64(lo).ok_or_else(|| Error::NumericAmbiguous(format!("{self:?}")))
        } else {
            Err(Error::NumericAmbiguous(format!("floor of {self:?}")))
        }
    }

    fn checked_sign(&self) -> Result<i8> {
        if self.mid - self.wid > 0.0 {
            Ok(1)
        } else if self.mid + self.wid < 0.0 {
            Ok(-1)
        } else if self.mid == 0.0 && self.wid == 0.0 {
            Ok(0)
        } else {
            Err(Error::NumericAmbiguous(format!("sign of {self:?}")))
        }
    }

    fn to_f64(&self) -> f64 {
        self.mid
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_scalar_roundtrip() {
        let q = BigRational::new(5.into(), 4.into());
        assert_eq!(q.checked_floor().unwrap(), BigInt::one());
        assert_eq!(q.checked_sign().unwrap(), 1);
        assert_eq!(BigRational::from_int(-3), BigRational::from_integer((-3).into()));
    }

    #[test]
    fn guarded_arithmetic_tracks_width() {
        let a = GuardedF64::new(0.1);
        let b = GuardedF64::new(0.2);
        let c = a + b;
        assert!((c.value() - 0.30000000000000004).abs() < 1e-15);
        assert!(c.width() > 0.0 && c.width() < 1e-14);
    }

    #[test]
    fn guarded_floor_escalates_on_boundary() {
        // 2.0 * 0.5 = 1.0 exactly on the floor boundary, but the seeded widths
        // make the product interval straddle it.
        let prod = GuardedF64::new(2.0) * GuardedF64::new(0.5);
        assert!(matches!(prod.checked_floor(), Err(Error::NumericAmbiguous(_))));
        // Away from a boundary the floor is confident.
        let x = GuardedF64::new(1.37);
        assert_eq!(x.checked_floor().unwrap(), BigInt::one());
    }

    #[test]
    fn guarded_sign_escalates_near_zero() {
        let tiny = GuardedF64::new(1.0) - GuardedF64::new(1.0);
        assert!(matches!(tiny.checked_sign(), Err(Error::NumericAmbiguous(_))));
        assert_eq!(GuardedF64::new(-0.3).checked_sign().unwrap(), -1);
    }

    #[test]
    fn exact_constructor_is_width_free() {
        let x = GuardedF64::exact(1.0);
        assert_eq!(x.checked_sign().unwrap(), 1);
        assert_eq!(x.checked_floor().unwrap(), BigInt::one());
    }

    #[test]
    fn cmp_checked_orders_field_elements() {
        use crate::poly::{big, RatPoly};
        let f = crate::field::NumberField::new(RatPoly::from_integers(&[-1, -1, 1]), big(1), big(2))
            .unwrap();
        let beta = f.beta();
        let one = FieldElement::one();
        assert_eq!(beta.cmp_checked(&one).unwrap(), Ordering::Greater);
        assert_eq!(one.cmp_checked(&one.clone()).unwrap(), Ordering::Equal);
    }
}
