//! Dense univariate polynomials over the exact rationals.
//!
//! Coefficients are stored lowest degree first with no trailing zeros, so the
//! zero polynomial is the empty vector. Root work never leaves the rationals:
//! brackets are certified by sign-variation counts of a Mobius-transformed
//! polynomial (Descartes' rule on (0, oo)), and refined by plain bisection.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, sign_i8};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// c * x^k
    pub fn monomial(c: BigRational, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        RatPoly { coeffs }
    }

    pub fn x() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn neg(&self) -> Self {
        RatPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + other.coeff(k));
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by x^k.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        RatPoly { coeffs }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(k.into()))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Interval Horner evaluation: returns an interval certified to contain
    /// p(x) for every x in [lo, hi].
    pub fn eval_interval(&self, lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
        debug_assert!(lo <= hi);
        let mut alo = BigRational::zero();
        let mut ahi = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            let (mlo, mhi) = interval_mul(&alo, &ahi, lo, hi);
            alo = mlo + c;
            ahi = mhi + c;
        }
        (alo, ahi)
    }

    /// Quotient and remainder with deg(r) < deg(divisor). Divisor must be nonzero.
    pub fn divmod(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.degree().unwrap();
        let lead_inv = divisor.leading().unwrap().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let q = &rem[k] * &lead_inv;
            if q.is_zero() {
                continue;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                let idx = k - dd + j;
                let t = q.clone() * c;
                rem[idx] -= t;
            }
            quot[k - dd] = q;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic gcd via the Euclidean algorithm. Intended for the small degrees
    /// where root enumeration runs; coefficient growth is kept down by making
    /// each remainder monic.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b);
            a = b;
            b = r;
        }
        if let Some(lead) = a.leading() {
            let inv = lead.recip();
            a = a.scale(&inv);
        }
        a
    }

    /// p / gcd(p, p'): same roots, all simple.
    pub fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) || g.is_zero() {
            return self.clone();
        }
        let (q, r) = self.divmod(&g);
        debug_assert!(r.is_zero());
        q
    }

    /// 1 + max |c_i| / |lead|: every real root lies in (-B, B).
    pub fn root_bound(&self) -> BigRational {
        let lead = self.leading().expect("root bound of zero polynomial").abs();
        let mut m = BigRational::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let a = c.abs();
            if a > m {
                m = a;
            }
        }
        BigRational::one() + m / lead
    }
}

fn interval_mul(
    alo: &BigRational,
    ahi: &BigRational,
    blo: &BigRational,
    bhi: &BigRational,
) -> (BigRational, BigRational) {
    let p1 = alo * blo;
    let p2 = alo * bhi;
    let p3 = ahi * blo;
    let p4 = ahi * bhi;
    let lo = p1.clone().min(p2.clone()).min(p3.clone()).min(p4.clone());
    let hi = p1.max(p2).max(p3).max(p4);
    (lo, hi)
}

/// Number of sign changes in a coefficient sequence, zeros skipped.
pub fn sign_variations(coeffs: &[BigRational]) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for c in coeffs {
        let s = sign_i8(c);
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Descartes bound on the number of roots of `p` in the open interval (a, b),
/// computed from the sign variations of (1+x)^d p((a+bx)/(1+x)).
///
/// The bound exceeds the true count by an even number, so 0 and 1 are exact.
pub fn mobius_variations(p: &RatPoly, a: &BigRational, b: &BigRational) -> usize {
    let d = match p.degree() {
        Some(d) => d,
        None => return 0,
    };
    // Horner from the top: q <- q*(a+bx) + c_k*(1+x)^(d-k).
    let lin = RatPoly::new(vec![a.clone(), b.clone()]);
    let one_x = RatPoly::new(vec![BigRational::one(), BigRational::one()]);
    let mut q = RatPoly::constant(p.coeff(d));
    let mut e = RatPoly::one();
    for k in (0..d).rev() {
        e = e.mul(&one_x);
        q = q.mul(&lin).add(&e.scale(&p.coeff(k)));
    }
    sign_variations(q.coeffs())
}

/// Exact number of roots of `p` in the open interval (a, b), counted without
/// multiplicity, by Descartes subdivision. `p` must have only simple roots in
/// the interval for termination; depth is capped.
pub fn count_roots_in(p: &RatPoly, a: &BigRational, b: &BigRational, depth: usize) -> Result<usize> {
    let v = mobius_variations(p, a, b);
    if v <= 1 {
        return Ok(v);
    }
    if depth == 0 {
        return Err(Error::MultipleRoots(v));
    }
    let m = (a + b) / BigRational::from_integer(2.into());
    let at_m = if p.eval(&m).is_zero() { 1 } else { 0 };
    Ok(count_roots_in(p, a, &m, depth - 1)? + at_m + count_roots_in(p, &m, b, depth - 1)?)
}

/// Certify that (lo, hi) brackets exactly one root: endpoint signs must differ
/// and the Descartes count must resolve to one.
pub fn certify_single_root(p: &RatPoly, lo: &BigRational, hi: &BigRational) -> Result<()> {
    if lo >= hi {
        return Err(Error::NotBracketed(format_rational(lo), format_rational(hi)));
    }
    match count_roots_in(p, lo, hi, 48)? {
        1 => {}
        0 => return Err(Error::NotBracketed(format_rational(lo), format_rational(hi))),
        n => return Err(Error::MultipleRoots(n)),
    }
    let slo = sign_i8(&p.eval(lo));
    let shi = sign_i8(&p.eval(hi));
    if slo == 0 || shi == 0 || slo == shi {
        return Err(Error::NotBracketed(format_rational(lo), format_rational(hi)));
    }
    Ok(())
}

/// Shrink a certified bracket around its root until `hi - lo <= tol`.
/// Returns a bracket whose endpoint signs still differ, unless the root is hit
/// exactly, in which case the degenerate bracket [root, root] comes back.
pub fn refine_root(
    p: &RatPoly,
    lo: &BigRational,
    hi: &BigRational,
    tol: &BigRational,
) -> (BigRational, BigRational) {
    let mut lo = lo.clone();
    let mut hi = hi.clone();
    let slo = sign_i8(&p.eval(&lo));
    let two = BigRational::from_integer(2.into());
    while &hi - &lo > *tol {
        let m = (&lo + &hi) / &two;
        let sm = sign_i8(&p.eval(&m));
        if sm == 0 {
            return (m.clone(), m);
        }
        if sm == slo {
            lo = m;
        } else {
            hi = m;
        }
    }
    (lo, hi)
}

/// Isolating intervals for every real root of `p`, sorted increasing.
/// Exact rational roots come back as degenerate intervals.
pub fn isolate_real_roots(p: &RatPoly) -> Result<Vec<(BigRational, BigRational)>> {
    if p.degree().is_none() {
        return Err(Error::IsolationFailure("zero polynomial".into()));
    }
    let sf = p.squarefree_part();
    let bound = sf.root_bound();
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound.clone())];
    let mut work = 0usize;
    while let Some((a, b)) = stack.pop() {
        work += 1;
        if work > 1 << 16 {
            return Err(Error::IsolationFailure("subdivision budget exhausted".into()));
        }
        match mobius_variations(&sf, &a, &b) {
            0 => {}
            1 => out.push((a, b)),
            _ => {
                let m = (&a + &b) / BigRational::from_integer(2.into());
                if sf.eval(&m).is_zero() {
                    out.push((m.clone(), m.clone()));
                }
                stack.push((a, m.clone()));
                stack.push((m, b));
            }
        }
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(out)
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag.is_one();
            match (k, unit) {
                (0, _) => write!(f, "{}", format_rational(&mag))?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{}*x", format_rational(&mag))?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{}*x^{k}", format_rational(&mag))?,
            }
        }
        Ok(())
    }
}

impl Serialize for RatPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.iter().map(|c| format_rational(c)).collect::<Vec<_>>().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RatPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(deserializer)?;
        let coeffs = strings
            .iter()
            .map(|s| parse_rational(s).map_err(|e| D::Error::custom(e.to_string())))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(RatPoly::new(coeffs))
    }
}

/// Convenience: integer coefficients of a monic x^n - x - 1 style polynomial.
pub fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
