//! The spectral constants gamma_n and eta_n, and where a given beta sits
//! relative to them.
//!
//! gamma_n is the root in (1, 2) of x^(g_n + 1) = x + 1; the bands
//! [gamma_(n+1), gamma_n) decide how many gaps the support of the invariant
//! measure has. eta_n is the root > 1 of
//! x^(g_n + 1) = x^(g_(n-1) + 1) + x^((1 - (-1)^n) / 2); the eta chain decides
//! exactly how many phi-iterates prefix the expansion of 1. Both chains
//! decrease strictly to 1 and interleave as
//! 2 = eta_1 > gamma_2^2 > gamma_1 > eta_2 > gamma_2 > eta_3 > ...
//!
//! Every defining polynomial is a trinomial x^a - x^b - x^c that is strictly
//! increasing on [1, oo) with value -1 at x = 1, so each constant is the
//! unique root > 1 and every comparison against beta reduces to one exact
//! sign evaluation.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::map::Base;
use crate::poly::RatPoly;
use crate::rational::rational_to_f64;
use crate::scalar::Scalar;
use crate::words::{gap_count, phi_iter};

/// Hard cap on the chain index: beyond n = 64 the defining exponents
/// g_n + 1 ~ 2^(n+1)/3 leave the range of practical (or even u64) arithmetic.
pub const CHAIN_CAP: u32 = 64;

/// Which chain a constant belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Gamma,
    Eta,
}

/// x^a - x^b - x^c with a > b >= c >= 0 (b = c collapses to x^a - 2x^b).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Trinomial {
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

fn pow_scalar<S: Scalar>(x: &S, mut e: u64) -> S {
    let mut acc = S::one();
    let mut base = x.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base.clone();
        }
        e >>= 1;
        if e > 0 {
            base = base.clone() * base;
        }
    }
    acc
}

impl Trinomial {
    /// Value at x in any scalar backend.
    pub fn eval<S: Scalar>(&self, x: &S) -> S {
        pow_scalar(x, self.a) - pow_scalar(x, self.b) - pow_scalar(x, self.c)
    }

    /// Exact sign at a positive rational point. Works in BigInt throughout:
    /// with x = p/q reduced, clearing q^a gives
    /// sign(p^a - p^b q^(a-b) - p^c q^(a-c)), and integer powers never incur
    /// the per-multiply gcd reduction rational arithmetic would.
    pub fn sign_at(&self, x: &BigRational) -> i8 {
        debug_assert!(x.is_positive());
        let p = x.numer();
        let q = x.denom();
        let value = Pow::pow(p, self.a)
            - Pow::pow(p, self.b) * Pow::pow(q, self.a - self.b)
            - Pow::pow(p, self.c) * Pow::pow(q, self.a - self.c);
        match value.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    /// Same roots on (0, oo), lowest exponent divided out. Isolation works on
    /// this form because it is strictly increasing on [1, oo).
    fn reduced(&self) -> Trinomial {
        Trinomial { a: self.a - self.c, b: self.b - self.c, c: 0 }
    }

    /// Dense polynomial form; errors out when the degree is impractical.
    pub fn to_dense(&self) -> Result<RatPoly> {
        if self.a > 100_000 {
            return Err(Error::ExplosionGuard(self.a as usize, 100_000));
        }
        let one = RatPoly::monomial(BigRational::one(), self.a as usize);
        let mid = RatPoly::monomial(BigRational::one(), self.b as usize);
        let low = RatPoly::monomial(BigRational::one(), self.c as usize);
        Ok(one.sub(&mid).sub(&low))
    }
}

impl std::fmt::Display for Trinomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let term = |e: u64| match e {
            0 => "1".to_string(),
            1 => "x".to_string(),
            k => format!("x^{k}"),
        };
        if self.b == self.c {
            if self.b == 0 {
                write!(f, "{} - 2", term(self.a))
            } else if self.b == 1 {
                write!(f, "{} - 2x", term(self.a))
            } else {
                write!(f, "{} - 2x^{}", term(self.a), self.b)
            }
        } else {
            write!(f, "{} - {} - {}", term(self.a), term(self.b), term(self.c))
        }
    }
}

/// The defining trinomial of gamma_n: x^(g_n + 1) - x - 1.
pub fn gamma_trinomial(n: u32) -> Result<Trinomial> {
    if n < 1 || n > CHAIN_CAP {
        return Err(Error::UnboundedIndex(n as u64, CHAIN_CAP as u64));
    }
    let g = gap_count(n)? as u64;
    Ok(Trinomial { a: g + 1, b: 1, c: 0 })
}

/// The defining trinomial of eta_n:
/// x^(g_n + 1) - x^(g_(n-1) + 1) - x^((1 - (-1)^n) / 2).
pub fn eta_trinomial(n: u32) -> Result<Trinomial> {
    if n < 1 || n > CHAIN_CAP {
        return Err(Error::UnboundedIndex(n as u64, CHAIN_CAP as u64));
    }
    let g = gap_count(n)? as u64;
    let g_prev = gap_count(n - 1)? as u64;
    let e = if n % 2 == 0 { 0 } else { 1 };
    Ok(Trinomial { a: g + 1, b: g_prev + 1, c: e })
}

/// A bracketed chain constant.
#[derive(Debug, Clone)]
pub struct SpectralIndex {
    pub n: u32,
    pub side: Side,
    pub poly: Trinomial,
    bracket: (BigRational, BigRational),
}

/// Exponent above which isolation seeds the bracket from a log-domain float
/// solve instead of bisecting from scratch (then certifies exactly).
const FLOAT_SEED_DEGREE: u64 = 1 << 14;

fn isolate_reduced(t: &Trinomial, tol: &BigRational) -> Result<(BigRational, BigRational)> {
    debug_assert_eq!(t.c, 0);
    let one = BigRational::one();
    let two = &one + &one;
    if t.sign_at(&two) == 0 {
        return Ok((two.clone(), two));
    }
    let (mut lo, mut hi) = if t.a >= FLOAT_SEED_DEGREE {
        float_seeded_bracket(t, tol)?
    } else {
        (one, two.clone())
    };
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) / &two;
        match t.sign_at(&mid) {
            0 => return Ok((mid.clone(), mid)),
            s if s < 0 => lo = mid,
            _ => hi = mid,
        }
    }
    Ok((lo, hi))
}

/// Solve a*ln(x) = ln(x^b + 1) by fixed-point iteration in the log domain
/// (stable arbitrarily close to 1), then certify a dyadic bracket exactly.
fn float_seeded_bracket(t: &Trinomial, tol: &BigRational) -> Result<(BigRational, BigRational)> {
    let a = t.a as f64;
    let b = t.b as f64;
    let mut ln_x = std::f64::consts::LN_2 / a;
    for _ in 0..200 {
        ln_x = (b * ln_x).exp().ln_1p() / a;
    }
    let root = ln_x.exp();
    let mut width = (root * 1e-12).max(rational_to_f64(tol) / 4.0);
    for _ in 0..12 {
        let lo = dyadic_near(root - width);
        let hi = dyadic_near(root + width);
        if t.sign_at(&lo) < 0 && t.sign_at(&hi) > 0 {
            return Ok((lo, hi));
        }
        width *= 4.0;
    }
    Err(Error::IsolationFailure(format!("{t} near {root}")))
}

/// Nearest rational with a 28-bit dyadic tail, keeping exact evaluation at
/// huge exponents affordable.
fn dyadic_near(x: f64) -> BigRational {
    let scaled = (x * (1u64 << 28) as f64).round() as i64;
    BigRational::new(scaled.into(), (1u64 << 28).into())
}

impl SpectralIndex {
    pub fn bracket(&self) -> (BigRational, BigRational) {
        self.bracket.clone()
    }

    pub fn value_f64(&self) -> f64 {
        let mid = (&self.bracket.0 + &self.bracket.1)
            / (BigRational::one() + BigRational::one());
        rational_to_f64(&mid)
    }

    pub fn is_exact(&self) -> bool {
        self.bracket.0 == self.bracket.1
    }

    /// Shrink the bracket to width <= tol by continued exact bisection.
    pub fn refine_to(&mut self, tol: &BigRational) {
        let reduced = self.poly.reduced();
        let two = BigRational::one() + BigRational::one();
        while !self.is_exact() && &self.bracket.1 - &self.bracket.0 > *tol {
            let mid = (&self.bracket.0 + &self.bracket.1) / &two;
            match reduced.sign_at(&mid) {
                0 => {
                    self.bracket = (mid.clone(), mid);
                    return;
                }
                s if s < 0 => self.bracket.0 = mid,
                _ => self.bracket.1 = mid,
            }
        }
    }
}

impl Serialize for SpectralIndex {
    fn serialize<Ser: Serializer>(&self, serializer: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        let mut st = serializer.serialize_struct("SpectralIndex", 4)?;
        st.serialize_field("side", &self.side)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("poly", &self.poly.to_string())?;
        st.serialize_field(
            "bracket",
            &[
                crate::rational::format_rational(&self.bracket.0),
                crate::rational::format_rational(&self.bracket.1),
            ],
        )?;
        st.end()
    }
}

/// gamma_n bracketed to width <= tol. gamma_1 is the golden ratio, gamma_2
/// the smallest Pisot number; the band [gamma_(n+1), gamma_n) carries
/// g_n gaps.
pub fn gamma(n: u32, tol: &BigRational) -> Result<SpectralIndex> {
    let poly = gamma_trinomial(n)?;
    let bracket = isolate_reduced(&poly.reduced(), tol)?;
    Ok(SpectralIndex { n, side: Side::Gamma, poly, bracket })
}

/// eta_n bracketed to width <= tol; eta_1 = 2 exactly.
pub fn eta(n: u32, tol: &BigRational) -> Result<SpectralIndex> {
    let poly = eta_trinomial(n)?;
    let bracket = isolate_reduced(&poly.reduced(), tol)?;
    Ok(SpectralIndex { n, side: Side::Eta, poly, bracket })
}

/// beta versus gamma_n, decided by the sign of the defining trinomial
/// (strictly increasing past 1, so the sign at beta tells the side).
pub fn cmp_gamma<S: Scalar>(beta: &S, n: u32) -> Result<Ordering> {
    let t = gamma_trinomial(n)?;
    Ok(match t.eval(beta).checked_sign()? {
        -1 => Ordering::Less,
        0 => Ordering::Equal,
        _ => Ordering::Greater,
    })
}

/// beta versus eta_n, by the same exact sign argument.
pub fn cmp_eta<S: Scalar>(beta: &S, n: u32) -> Result<Ordering> {
    let t = eta_trinomial(n)?;
    Ok(match t.eval(beta).checked_sign()? {
        -1 => Ordering::Less,
        0 => Ordering::Equal,
        _ => Ordering::Greater,
    })
}

/// The inequality side of the prefix characterization: whether the expansion
/// of 1 in base -beta starts with phi^n(2), decided from beta's position
/// alone. The cases are: n = 1 iff beta < gamma_2^2, n even iff
/// beta <= eta_n, odd n >= 3 iff beta < eta_n.
///
/// beta < gamma_2^2 is tested inside the base field as beta (beta - 1)^2 < 1,
/// the square of sqrt(beta) (beta - 1) < 1, which is the defining inequality
/// of gamma_2 evaluated at sqrt(beta); both sides are positive for beta > 1
/// so squaring preserves the comparison.
pub fn prefix_predicate<S: Scalar>(beta: &S, n: u32) -> Result<bool> {
    if n < 1 {
        return Err(Error::OutOfDomain("prefix level starts at n = 1".into()));
    }
    if n == 1 {
        let bm1 = beta.clone() - S::one();
        let lhs = beta.clone() * bm1.clone() * bm1;
        return Ok((lhs - S::one()).checked_sign()? < 0);
    }
    let ord = cmp_eta(beta, n)?;
    Ok(if n % 2 == 0 { ord != Ordering::Greater } else { ord == Ordering::Less })
}

/// Whether the first |phi^n(2)| digits of the expansion of 1 are phi^n(2),
/// by direct digit computation.
pub fn prefix_check<S: Scalar>(base: &Base<S>, n: u32) -> Result<bool> {
    let target = phi_iter(&[2], n)?;
    let orbit = base.orbit_neg(target.len())?;
    for (k, &want) in target.iter().enumerate() {
        if orbit.digit_at(k) != Some(want) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Where beta sits: its gamma band (hence gap count) and its maximal phi
/// prefix level, with a note when beta hits an even eta boundary exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BetaClass {
    /// n with gamma_(n+1) <= beta < gamma_n (band 0 is beta >= gamma_1).
    pub gamma_band: u32,
    /// g_(gamma_band), the number of gaps.
    pub gap_count: u64,
    /// Largest n >= 1 with d(1) starting phi^n(2); 0 when even phi(2) = 211
    /// is not a prefix.
    pub prefix_level: u32,
    /// Some(n) when beta equals eta_n exactly (even n, the inclusive case).
    pub at_eta_boundary: Option<u32>,
}

/// Classify beta by exact comparisons along both chains.
pub fn classify<S: Scalar>(base: &Base<S>) -> Result<BetaClass> {
    let beta = base.beta();
    let mut band = None;
    for n in 1..=CHAIN_CAP {
        if cmp_gamma(beta, n)? != Ordering::Less {
            band = Some(n - 1);
            break;
        }
    }
    let band = band.ok_or(Error::UnboundedIndex(CHAIN_CAP as u64, CHAIN_CAP as u64))?;

    let mut level = 0;
    let mut boundary = None;
    for n in 1..=CHAIN_CAP {
        if !prefix_predicate(beta, n)? {
            break;
        }
        level = n;
        if n == CHAIN_CAP {
            return Err(Error::UnboundedIndex(CHAIN_CAP as u64, CHAIN_CAP as u64));
        }
        if n % 2 == 0 && cmp_eta(beta, n)? == Ordering::Equal {
            boundary = Some(n);
        }
    }
    Ok(BetaClass {
        gamma_band: band,
        gap_count: gap_count(band)? as u64,
        prefix_level: level,
        at_eta_boundary: boundary,
    })
}

/// Certify the strict interleaving
/// gamma_n > eta_(n+1) > gamma_(n+1) for 1 <= n < n_max, plus the head
/// 2 = eta_1 > gamma_2^2 > gamma_1, by refining brackets until disjoint.
pub fn verify_chain(n_max: u32) -> Result<bool> {
    if n_max < 2 {
        return Err(Error::OutOfDomain("chain check needs n_max >= 2".into()));
    }
    let tol = BigRational::new(1.into(), 1_000_000.into());
    let mut gammas: Vec<SpectralIndex> = Vec::new();
    let mut etas: Vec<SpectralIndex> = Vec::new();
    for n in 1..=n_max {
        gammas.push(gamma(n, &tol)?);
        etas.push(eta(n, &tol)?);
    }

    // eta_1 = 2 exactly.
    if !etas[0].is_exact() || etas[0].bracket.0 != BigRational::new(2.into(), 1.into()) {
        return Ok(false);
    }
    // 2 > gamma_2^2 > gamma_1.
    let g2 = &mut gammas[1];
    loop {
        let (lo, hi) = g2.bracket();
        let sq = (&lo * &lo, &hi * &hi);
        let two = BigRational::new(2.into(), 1.into());
        let g1_hi = BigRational::new(171.into(), 100.into()); // gamma_1 < 1.71 < sq.0 target
        if sq.1 < two && sq.0 > g1_hi {
            break;
        }
        let next_tol = (&hi - &lo) / BigRational::new(4.into(), 1.into());
        if next_tol.is_zero() {
            return Ok(false);
        }
        g2.refine_to(&next_tol);
    }
    // gamma_1 < 1.71 for the head comparison above.
    if gamma_trinomial(1)?.sign_at(&BigRational::new(171.into(), 100.into())) <= 0 {
        return Ok(false);
    }

    for n in 1..n_max as usize {
        if !strictly_above(&mut gammas[n - 1], &mut etas[n])? {
            return Ok(false);
        }
        if !strictly_above(&mut etas[n], &mut gammas[n])? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Refine until a's bracket lies strictly above b's.
fn strictly_above(a: &mut SpectralIndex, b: &mut SpectralIndex) -> Result<bool> {
    for _ in 0..256 {
        if a.bracket.0 > b.bracket.1 {
            return Ok(true);
        }
        if a.is_exact() && b.is_exact() {
            return Ok(a.bracket.0 > b.bracket.0);
        }
        let wa = &a.bracket.1 - &a.bracket.0;
        let wb = &b.bracket.1 - &b.bracket.0;
        let half = BigRational::new(1.into(), 2.into());
        if wa >= wb && !a.is_exact() {
            let t = wa * &half;
            a.refine_to(&t);
        } else {
            let t = wb * half;
            b.refine_to(&t);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::NumberField;
    use crate::poly::big;
    use crate::rational::parse_rational;

    fn tol(digits: u32) -> BigRational {
        BigRational::new(1.into(), num_bigint::BigInt::from(10u32).pow(digits))
    }

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn gamma_one_is_the_golden_ratio() {
        let g = gamma(1, &tol(12)).unwrap();
        assert_eq!(g.poly, Trinomial { a: 2, b: 1, c: 0 });
        assert!((g.value_f64() - 1.618033988749895).abs() < 1e-10);
    }

    #[test]
    fn gamma_two_is_the_smallest_pisot() {
        let g = gamma(2, &tol(12)).unwrap();
        assert_eq!(g.poly.to_string(), "x^3 - x - 1");
        assert!((g.value_f64() - 1.324717957244746).abs() < 1e-10);
    }

    #[test]
    fn gamma_four_matches_independent_bisection() {
        // Oracle: plain f64 bisection on x^11 - x - 1 over [1, 2].
        let f = |x: f64| x.powi(11) - x - 1.0;
        let (mut lo, mut hi) = (1.0f64, 2.0);
        for _ in 0..60 {
            let mid = (lo + hi) / 2.0;
            if f(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let g = gamma(4, &tol(12)).unwrap();
        assert!((g.value_f64() - lo).abs() < 1e-9, "got {} want {}", g.value_f64(), lo);
        assert!((g.value_f64() - 1.0683).abs() < 1e-4);
    }

    #[test]
    fn eta_one_is_exactly_two() {
        let e = eta(1, &tol(12)).unwrap();
        assert!(e.is_exact());
        assert_eq!(e.bracket().0, q("2"));
        assert_eq!(e.poly.to_string(), "x^2 - 2x");
    }

    #[test]
    fn eta_two_matches_cubic_root() {
        let e = eta(2, &tol(12)).unwrap();
        assert_eq!(e.poly.to_string(), "x^3 - x^2 - 1");
        assert!((e.value_f64() - 1.465571231876768).abs() < 1e-10);
    }

    #[test]
    fn displayed_chain_head_and_interleaving() {
        assert!(verify_chain(12).unwrap());
    }

    #[test]
    fn float_seeded_isolation_agrees_with_bisection() {
        // n = 15 crosses the seeding threshold (exponent 21846); n = 13 does
        // not. Both must certify and nest inside [1, 1.0001].
        for n in [13, 15] {
            let g = gamma(n, &tol(9)).unwrap();
            let (lo, hi) = g.bracket();
            assert!(lo > BigRational::one());
            assert!(&hi - &lo <= tol(9));
            assert_eq!(g.poly.reduced().sign_at(&lo), -1);
            assert_eq!(g.poly.reduced().sign_at(&hi), 1);
        }
    }

    #[test]
    fn classify_frozen_examples() {
        let five_fourths = Base::new(q("5/4")).unwrap();
        let c = classify(&five_fourths).unwrap();
        assert_eq!((c.gamma_band, c.gap_count, c.prefix_level), (2, 2, 2));

        let nine_eighths = Base::new(q("9/8")).unwrap();
        let c = classify(&nine_eighths).unwrap();
        assert_eq!((c.gamma_band, c.gap_count, c.prefix_level), (3, 5, 3));

        let big_beta = Base::new(q("19/10")).unwrap();
        let c = classify(&big_beta).unwrap();
        assert_eq!((c.gamma_band, c.gap_count, c.prefix_level), (0, 0, 0));

        let three_halves = Base::new(q("3/2")).unwrap();
        let c = classify(&three_halves).unwrap();
        assert_eq!((c.gamma_band, c.gap_count), (1, 1));
    }

    #[test]
    fn band_boundary_is_left_closed() {
        // beta = gamma_2 exactly: band gamma_2 <= beta < gamma_1 is band 1.
        let f = NumberField::new(RatPoly::from_integers(&[-1, -1, 0, 1]), big(1), big(2)).unwrap();
        let base = Base::new(f.beta()).unwrap();
        let c = classify(&base).unwrap();
        assert_eq!(c.gamma_band, 1);
        // And the prefix level still reaches 2 (beta <= gamma_2 includes it).
        assert_eq!(c.prefix_level, 2);
    }

    #[test]
    fn prefix_check_frozen_examples() {
        let f = NumberField::new(RatPoly::from_integers(&[-1, -1, 1]), big(1), big(2)).unwrap();
        let golden = Base::new(f.beta()).unwrap();
        assert!(prefix_check(&golden, 1).unwrap());
        assert!(!prefix_check(&golden, 2).unwrap());

        let big_beta = Base::new(q("19/10")).unwrap();
        assert!(!prefix_check(&big_beta, 1).unwrap());

        let nine_eighths = Base::new(q("9/8")).unwrap();
        assert!(prefix_check(&nine_eighths, 3).unwrap());
        assert!(!prefix_check(&nine_eighths, 4).unwrap());
    }

    #[test]
    fn predicate_equals_simulation_on_a_grid() {
        // A deterministic sweep; the randomized version lives in the
        // integration suite.
        for num in (101..200).step_by(7) {
            let beta = BigRational::new(num.into(), 100.into());
            let base = Base::new(beta.clone()).unwrap();
            for n in 1..=6 {
                let sim = prefix_check(&base, n).unwrap();
                let pred = prefix_predicate(&beta, n).unwrap();
                assert_eq!(sim, pred, "beta = {num}/100, n = {n}");
            }
        }
    }

    #[test]
    fn gamma_three_expansion_closes_as_predicted() {
        // d(1) in base -gamma_3 is phi^2(2 1 1 1 ...): preperiod |phi^2(2)|,
        // period |phi^2(21)| - |phi^2(2)| = 3.
        let t = gamma_trinomial(3).unwrap();
        let f = NumberField::new(t.to_dense().unwrap(), big(1), big(2)).unwrap();
        let base = Base::new(f.beta()).unwrap();
        let orbit = base.orbit_neg(32).unwrap();
        assert_eq!(orbit.period, Some((5, 3)));
        assert_eq!(orbit.digits[..8], [2, 1, 1, 2, 2, 2, 1, 1]);
    }

    #[test]
    fn eta_boundary_is_inclusive_for_even_n() {
        // beta = eta_2 (x^3 = x^2 + 1): predicate at n = 2 holds with equality.
        let f = NumberField::new(RatPoly::from_integers(&[-1, 0, -1, 1]), big(1), big(2)).unwrap();
        let base = Base::new(f.beta()).unwrap();
        assert!(prefix_predicate(&f.beta(), 2).unwrap());
        let c = classify(&base).unwrap();
        assert_eq!(c.at_eta_boundary, Some(2));
        assert_eq!(c.prefix_level, 2);
        assert!(prefix_check(&base, 2).unwrap());
    }

    #[test]
    fn chain_index_capped() {
        assert!(matches!(gamma_trinomial(65), Err(Error::UnboundedIndex(65, 64))));
        assert!(matches!(gamma(0, &tol(6)), Err(Error::UnboundedIndex(0, 64))));
    }
}
