//! Exact arithmetic in a real algebraic number field Q(beta).
//!
//! A [`NumberField`] is a monic minimal polynomial together with a rational
//! isolating bracket certifying exactly one real root > 1. Elements are
//! polynomials in the root, reduced mod the minimal polynomial. Signs and
//! floors are decided by integer interval evaluation against a dyadic
//! isolating window (a unit interval at some power-of-two scale), refined on
//! demand; with a genuinely minimal polynomial every nonzero element's sign
//! resolves in finitely many steps. Dyadic arithmetic keeps the hot path free
//! of rational-number gcd reductions, which dominate once orbit elements grow
//! coefficients hundreds of bits wide.
//!
//! Rational numbers are carried in a dedicated variant so that constants and
//! degree-1 "fields" cost plain bignum arithmetic and mix freely with any
//! algebraic operand.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{certify_single_root, RatPoly};
use crate::rational::{format_rational, rational_to_f64, sign_i8};

/// Total bisection budget per sign query. Exhausting it means the element is
/// nonzero as a polynomial yet numerically indistinguishable from zero, which
/// only happens when the modulus was not actually minimal; that is a caller
/// contract violation, so it panics rather than erroring.
const SIGN_BUDGET: usize = 1_000_000;

/// Cap on dyadic window precision, in bits. Same contract as [`SIGN_BUDGET`]:
/// a genuine minimal polynomial never needs anywhere near this much.
const DYADIC_BITS_BUDGET: u64 = 1 << 26;

/// The root pinned to a unit interval at scale 2^bits: it lies strictly
/// inside (lo, lo + 1) / 2^bits. Strict containment holds because a minimal
/// polynomial of degree >= 2 has an irrational root, never a dyadic one.
struct DyadicWindow {
    lo: BigInt,
    bits: u64,
}

pub struct NumberField {
    min_poly: RatPoly,
    // Minimal polynomial with denominators cleared, constant first. Shares the
    // root's sign behaviour at rational points up to a positive scale.
    int_min: Vec<BigInt>,
    degree: usize,
    // Monotonically shrinking cache of the isolating bracket, plus the sign of
    // min_poly at its left endpoint. Refinement hands out fresh values; the
    // cache only ever tightens, so sharing it across threads is transparent.
    bracket: Mutex<(BigRational, BigRational)>,
    sign_at_lo: i8,
    // Lazily seeded dyadic window; only ever tightens, like the bracket.
    dyadic: Mutex<Option<DyadicWindow>>,
}

impl NumberField {
    /// Build a field from a monic polynomial and a bracket isolating one real
    /// root > 1. The bracket is certified: endpoint signs must differ and a
    /// sign-variation count must resolve to exactly one root.
    pub fn new(min_poly: RatPoly, lo: BigRational, hi: BigRational) -> Result<Arc<Self>> {
        if !min_poly.is_monic() {
            return Err(Error::NotMonic);
        }
        certify_single_root(&min_poly, &lo, &hi)?;
        let one = BigRational::one();
        let mut lo = lo;
        if lo < one {
            if hi <= one {
                return Err(Error::RootNotGreaterThanOne);
            }
            // Split the bracket at 1 so the root's side is unambiguous.
            let s1 = sign_i8(&min_poly.eval(&one));
            if s1 == 0 {
                return Err(Error::RootNotGreaterThanOne);
            }
            if s1 == sign_i8(&min_poly.eval(&lo)) {
                lo = one;
            } else {
                return Err(Error::RootNotGreaterThanOne);
            }
        }
        let sign_at_lo = sign_i8(&min_poly.eval(&lo));
        let degree = min_poly.degree().expect("monic implies nonzero");
        let int_min = clear_denominators(min_poly.coeffs());
        Ok(Arc::new(NumberField {
            min_poly,
            int_min,
            degree,
            bracket: Mutex::new((lo, hi)),
            sign_at_lo,
            dyadic: Mutex::new(None),
        }))
    }

    pub fn min_poly(&self) -> &RatPoly {
        &self.min_poly
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Current isolating bracket (already as tight as any past query needed).
    pub fn bracket(&self) -> (BigRational, BigRational) {
        self.bracket.lock().unwrap().clone()
    }

    /// A fresh bracket of width <= tol around the root.
    pub fn refined_bracket(&self, tol: &BigRational) -> (BigRational, BigRational) {
        let mut guard = self.bracket.lock().unwrap();
        let mut steps = 0usize;
        while &guard.1 - &guard.0 > *tol {
            Self::bisect_once(&self.min_poly, self.sign_at_lo, &mut guard);
            steps += 1;
            assert!(steps <= SIGN_BUDGET, "bracket refinement budget exhausted");
        }
        guard.clone()
    }

    fn bisect_once(p: &RatPoly, sign_at_lo: i8, bracket: &mut (BigRational, BigRational)) {
        if bracket.0 == bracket.1 {
            return;
        }
        let m = (&bracket.0 + &bracket.1) / BigRational::from_integer(2.into());
        let sm = sign_i8(&p.eval(&m));
        if sm == 0 {
            bracket.0 = m.clone();
            bracket.1 = m;
        } else if sm == sign_at_lo {
            bracket.0 = m;
        } else {
            bracket.1 = m;
        }
    }

    /// Sign of the cleared-denominator minimal polynomial at the dyadic
    /// rational s / 2^bits, in pure integer arithmetic.
    fn int_sign_at(&self, s: &BigInt, bits: u64) -> i8 {
        let d = self.degree;
        let mut acc = self.int_min[d].clone();
        for k in (0..d).rev() {
            acc = acc * s + (self.int_min[k].clone() << (bits * (d - k) as u64));
        }
        bigint_sign_i8(&acc)
    }

    /// The dyadic window at the requested precision, seeding and refining the
    /// shared cache as needed. Refinement is one boundary sign test per bit.
    fn dyadic_window(&self, bits: u64) -> (BigInt, u64) {
        let mut guard = self.dyadic.lock().unwrap();
        if guard.is_none() {
            *guard = Some(self.seed_window());
        }
        let win = guard.as_mut().unwrap();
        while win.bits < bits {
            let mid = (win.lo.clone() << 1u32) + 1;
            let s = self.int_sign_at(&mid, win.bits + 1);
            assert!(s != 0, "dyadic root; is the modulus really minimal?");
            win.lo = if s == self.sign_at_lo { mid } else { win.lo.clone() << 1u32 };
            win.bits += 1;
            assert!(win.bits <= DYADIC_BITS_BUDGET, "dyadic refinement budget exhausted");
        }
        // Coarsening a unit window keeps the unit-window invariant.
        (win.lo.clone() >> (win.bits - bits), bits)
    }

    fn seed_window(&self) -> DyadicWindow {
        const SEED_BITS: u64 = 32;
        let tol = BigRational::new(BigInt::one(), BigInt::one() << (SEED_BITS + 2));
        let (lo, _) = self.refined_bracket(&tol);
        let scaled = (lo * BigRational::from_integer(BigInt::one() << SEED_BITS))
            .floor()
            .to_integer();
        // The root lies strictly inside (scaled, scaled + 2) / 2^32; one
        // boundary test picks the unit half.
        let mid = &scaled + 1;
        let s = self.int_sign_at(&mid, SEED_BITS);
        assert!(s != 0, "dyadic root; is the modulus really minimal?");
        let lo = if s == self.sign_at_lo { mid } else { scaled };
        DyadicWindow { lo, bits: SEED_BITS }
    }

    /// Integer bounds [lo, hi] with the element's value in [lo, hi] / 2^bits,
    /// by interval Horner over the dyadic window with outward rounding.
    fn value_window(&self, ints: &[BigInt], bits: u64) -> (BigInt, BigInt) {
        let (w, bits) = self.dyadic_window(bits);
        let wp = &w + 1;
        let m = ints.len() - 1;
        let mut lo = ints[m].clone() << bits;
        let mut hi = lo.clone();
        for c in ints[..m].iter().rev() {
            // The window endpoints are positive (root > 1), so each product
            // bound needs only the matching endpoint for each accumulator sign.
            let plo = if lo.is_negative() { lo * &wp } else { lo * &w };
            let phi = if hi.is_negative() { hi * &w } else { hi * &wp };
            let shifted = c.clone() << bits;
            lo = floor_shift(plo, bits) + &shifted;
            hi = ceil_shift(phi, bits) + shifted;
        }
        (lo, hi)
    }

    /// Exact sign of the element represented by `poly` (already reduced), by
    /// dyadic interval evaluation at doubling precision. Only a strict
    /// enclosure decides; a zero value is impossible for a nonzero reduced
    /// polynomial over a minimal modulus, so refinement terminates.
    fn sign_of_poly(&self, poly: &RatPoly) -> i8 {
        if poly.is_zero() {
            return 0;
        }
        if poly.degree() == Some(0) {
            return sign_i8(&poly.coeff(0));
        }
        let ints = clear_denominators(poly.coeffs());
        let mut bits = 64u64;
        loop {
            let (lo, hi) = self.value_window(&ints, bits);
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            bits *= 2;
            assert!(
                bits <= DYADIC_BITS_BUDGET,
                "sign refinement budget exhausted; is the modulus really minimal?"
            );
        }
    }

    /// The generator beta as an element. For a degree-1 modulus this reduces
    /// to its rational root immediately.
    pub fn beta(self: &Arc<Self>) -> FieldElement {
        self.element(RatPoly::x())
    }

    /// Reduce an arbitrary polynomial in beta into an element.
    pub fn element(self: &Arc<Self>, poly: RatPoly) -> FieldElement {
        let (_, rem) = poly.divmod(&self.min_poly);
        if rem.degree().map_or(true, |d| d == 0) {
            return FieldElement(Repr::Rational(rem.coeff(0)));
        }
        FieldElement(Repr::Algebraic { field: Arc::clone(self), poly: rem })
    }

    /// Do two handles describe the same root? True for pointer-identical
    /// handles, or equal polynomials with brackets certifying a common root.
    pub fn same_root(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        if Arc::ptr_eq(self, other) {
            return true;
        }
        if self.min_poly != other.min_poly {
            return false;
        }
        let (alo, ahi) = self.bracket();
        let (blo, bhi) = other.bracket();
        let lo = alo.max(blo);
        let hi = ahi.min(bhi);
        if lo >= hi {
            return lo == hi && sign_i8(&self.min_poly.eval(&lo)) == 0;
        }
        crate::poly::count_roots_in(&self.min_poly, &lo, &hi, 48).map_or(false, |n| n == 1)
    }

    pub fn to_f64(&self) -> f64 {
        let tol = BigRational::new(BigInt::one(), BigInt::one() << 60);
        let (lo, hi) = self.refined_bracket(&tol);
        rational_to_f64(&((lo + hi) / BigRational::from_integer(2.into())))
    }
}

/// Scale rational coefficients by the lcm of their denominators. The scale is
/// positive, so signs and floor comparisons at any point are preserved.
fn clear_denominators(coeffs: &[BigRational]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for c in coeffs {
        l = l.lcm(c.denom());
    }
    coeffs.iter().map(|c| &l / c.denom() * c.numer()).collect()
}

/// floor(x / 2^bits), valid for either sign.
fn floor_shift(x: BigInt, bits: u64) -> BigInt {
    if x.is_negative() {
        let mask = (BigInt::one() << bits) - BigInt::one();
        let q: BigInt = (-x + mask) >> bits;
        -q
    } else {
        x >> bits
    }
}

/// ceil(x / 2^bits), valid for either sign.
fn ceil_shift(x: BigInt, bits: u64) -> BigInt {
    let mask = (BigInt::one() << bits) - 1;
    floor_shift(x + mask, bits)
}

fn bigint_sign_i8(x: &BigInt) -> i8 {
    match x.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.bracket();
        f.debug_struct("NumberField")
            .field("min_poly", &self.min_poly.to_string())
            .field("bracket", &(format_rational(&lo), format_rational(&hi)))
            .finish()
    }
}

/// Serialization mirror for [`NumberField`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldSpec {
    pub min_poly: RatPoly,
    pub bracket: (String, String),
}

impl FieldSpec {
    pub fn of(field: &NumberField) -> Self {
        let (lo, hi) = field.bracket();
        FieldSpec {
            min_poly: field.min_poly().clone(),
            bracket: (format_rational(&lo), format_rational(&hi)),
        }
    }

    pub fn build(&self) -> Result<Arc<NumberField>> {
        let lo = crate::rational::parse_rational(&self.bracket.0)?;
        let hi = crate::rational::parse_rational(&self.bracket.1)?;
        NumberField::new(self.min_poly.clone(), lo, hi)
    }
}

#[derive(Clone)]
enum Repr {
    Rational(BigRational),
    Algebraic { field: Arc<NumberField>, poly: RatPoly },
}

/// An element of Q(beta), exact and immutable.
#[derive(Clone)]
pub struct FieldElement(Repr);

impl FieldElement {
    pub fn rational(q: BigRational) -> Self {
        FieldElement(Repr::Rational(q))
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rational(q) => Some(q),
            Repr::Algebraic { .. } => None,
        }
    }

    pub fn field(&self) -> Option<&Arc<NumberField>> {
        match &self.0 {
            Repr::Rational(_) => None,
            Repr::Algebraic { field, .. } => Some(field),
        }
    }

    /// Coefficients of the reduced polynomial representation, constant first.
    pub fn poly_coeffs(&self) -> Vec<BigRational> {
        match &self.0 {
            Repr::Rational(q) => vec![q.clone()],
            Repr::Algebraic { poly, .. } => poly.coeffs().to_vec(),
        }
    }

    fn compatible_field(&self, other: &Self) -> Result<Option<Arc<NumberField>>> {
        match (&self.0, &other.0) {
            (Repr::Rational(_), Repr::Rational(_)) => Ok(None),
            (Repr::Algebraic { field, .. }, Repr::Rational(_)) => Ok(Some(Arc::clone(field))),
            (Repr::Rational(_), Repr::Algebraic { field, .. }) => Ok(Some(Arc::clone(field))),
            (Repr::Algebraic { field: a, .. }, Repr::Algebraic { field: b, .. }) => {
                if a.same_root(b) {
                    Ok(Some(Arc::clone(a)))
                } else {
                    Err(Error::FieldMismatch)
                }
            }
        }
    }

    fn as_poly(&self) -> RatPoly {
        match &self.0 {
            Repr::Rational(q) => RatPoly::constant(q.clone()),
            Repr::Algebraic { poly, .. } => poly.clone(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        match self.compatible_field(other)? {
            None => {
                let (a, b) = (self.as_rational().unwrap(), other.as_rational().unwrap());
                Ok(Self::rational(a + b))
            }
            Some(field) => Ok(field.element(self.as_poly().add(&other.as_poly()))),
        }
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        match self.compatible_field(other)? {
            None => {
                let (a, b) = (self.as_rational().unwrap(), other.as_rational().unwrap());
                Ok(Self::rational(a - b))
            }
            Some(field) => Ok(field.element(self.as_poly().sub(&other.as_poly()))),
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        match self.compatible_field(other)? {
            None => {
                let (a, b) = (self.as_rational().unwrap(), other.as_rational().unwrap());
                Ok(Self::rational(a * b))
            }
            Some(field) => Ok(field.element(self.as_poly().mul(&other.as_poly()))),
        }
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.inverse())
    }

    /// Multiplicative inverse via the extended Euclidean algorithm on the
    /// polynomial representation. Panics on zero, and on a non-invertible
    /// element, which can only arise from a non-minimal modulus.
    pub fn inverse(&self) -> Self {
        match &self.0 {
            Repr::Rational(q) => {
                assert!(!q.is_zero(), "inverse of zero");
                Self::rational(q.recip())
            }
            Repr::Algebraic { field, poly } => {
                let (mut r0, mut r1) = (field.min_poly.clone(), poly.clone());
                let (mut t0, mut t1) = (RatPoly::zero(), RatPoly::one());
                while !r1.is_zero() {
                    let (q, r) = r0.divmod(&r1);
                    let t = t0.sub(&q.mul(&t1));
                    r0 = std::mem::replace(&mut r1, r);
                    t0 = std::mem::replace(&mut t1, t);
                }
                assert_eq!(
                    r0.degree(),
                    Some(0),
                    "element not invertible; is the modulus really minimal?"
                );
                let scale = r0.coeff(0).recip();
                field.element(t0.scale(&scale))
            }
        }
    }

    /// Exact sign: -1, 0, or 1.
    pub fn sign(&self) -> i8 {
        match &self.0 {
            Repr::Rational(q) => sign_i8(q),
            Repr::Algebraic { field, poly } => field.sign_of_poly(poly),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    /// Exact floor. Refines a dyadic value enclosure until at most two
    /// integers are candidates, then settles the boundary with one sign test.
    pub fn floor(&self) -> BigInt {
        match &self.0 {
            Repr::Rational(q) => q.floor().to_integer(),
            Repr::Algebraic { field, poly } => {
                let ints = clear_denominators(poly.coeffs());
                let mut bits = 64u64;
                loop {
                    let (lo, hi) = field.value_window(&ints, bits);
                    let flo = floor_shift(lo, bits);
                    let fhi = floor_shift(hi, bits);
                    if flo == fhi {
                        return flo;
                    }
                    if &fhi - &flo == BigInt::one() {
                        // Straddling one integer boundary: compare exactly.
                        // The value can never equal the boundary, since an
                        // algebraic repr over a minimal modulus is irrational.
                        let c = RatPoly::constant(BigRational::from_integer(fhi.clone()));
                        return if field.sign_of_poly(&poly.sub(&c)) >= 0 { fhi } else { flo };
                    }
                    bits *= 2;
                    assert!(bits <= DYADIC_BITS_BUDGET, "floor refinement budget exhausted");
                }
            }
        }
    }

    /// Nearest-enough f64: the enclosure is refined until it pins 60
    /// significant bits, or is below 2^-80 outright for values near zero.
    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Rational(q) => rational_to_f64(q),
            Repr::Algebraic { field, poly } => {
                let ints = clear_denominators(poly.coeffs());
                let mut bits = 128u64;
                loop {
                    let (lo, hi) = field.value_window(&ints, bits);
                    let width = &hi - &lo;
                    let mag = lo.magnitude().max(hi.magnitude()).clone();
                    if (&width << 60u32) <= BigInt::from(mag)
                        || (&width << 80u32) <= (BigInt::one() << bits)
                    {
                        let mid = BigRational::new(lo + hi, BigInt::one() << (bits + 1));
                        return rational_to_f64(&mid);
                    }
                    bits *= 2;
                    assert!(bits <= DYADIC_BITS_BUDGET, "f64 refinement budget exhausted");
                }
            }
        }
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => a == b,
            (Repr::Algebraic { field: fa, poly: pa }, Repr::Algebraic { field: fb, poly: pb }) => {
                fa.same_root(fb) && pa == pb
            }
            // An Algebraic repr always has degree >= 1, so with a minimal
            // modulus it can never equal a rational.
            _ => false,
        }
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Rational(q) => {
                0u8.hash(state);
                q.hash(state);
            }
            Repr::Algebraic { poly, .. } => {
                1u8.hash(state);
                poly.hash(state);
            }
        }
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        let diff = self.checked_sub(other).ok()?;
        Some(match diff.sign() {
            -1 => std::cmp::Ordering::Less,
            0 => std::cmp::Ordering::Equal,
            _ => std::cmp::Ordering::Greater,
        })
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rational(q) => write!(f, "{}", format_rational(q)),
            Repr::Algebraic { poly, .. } => {
                // Same shape as RatPoly display, with b for the field generator.
                write!(f, "{}", poly.to_string().replace('x', "b"))
            }
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$checked(&rhs).expect("field mismatch in operator")
            }
        }
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("field mismatch in operator")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match self.0 {
            Repr::Rational(q) => FieldElement(Repr::Rational(-q)),
            Repr::Algebraic { field, poly } => {
                FieldElement(Repr::Algebraic { poly: poly.neg(), field })
            }
        }
    }
}

impl Zero for FieldElement {
    fn zero() -> Self {
        Self::rational(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        matches!(&self.0, Repr::Rational(q) if q.is_zero())
    }
}

impl One for FieldElement {
    fn one() -> Self {
        Self::rational(BigRational::one())
    }
}
