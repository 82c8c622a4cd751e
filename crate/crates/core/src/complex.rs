//! Certified enclosures of the complex conjugates of the field generator.
//!
//! A conjugate is held as either a real isolating bracket or a rational-corner
//! rectangle in the upper half plane. Rectangles are certified by an interval
//! Newton contraction: if N(X) = m - p(m)/p'(X) lands strictly inside X, the
//! rectangle contains exactly one root, and N(X) n X is a tighter enclosure.
//! Certification therefore needs no argument-principle machinery; candidate
//! rectangles come from a float Durand-Kerner sweep and the final count is
//! checked against the degree (real roots + 2 * upper-half rectangles).
//!
//! All certified arithmetic is exact rational interval arithmetic; floats only
//! ever suggest where to look.

use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldElement, NumberField};
use crate::poly::{isolate_real_roots, RatPoly};
use crate::rational::rational_to_f64;

type Iv = (BigRational, BigRational);

fn iv_add(a: &Iv, b: &Iv) -> Iv {
    (&a.0 + &b.0, &a.1 + &b.1)
}

fn iv_sub(a: &Iv, b: &Iv) -> Iv {
    (&a.0 - &b.1, &a.1 - &b.0)
}

fn iv_mul(a: &Iv, b: &Iv) -> Iv {
    let p1 = &a.0 * &b.0;
    let p2 = &a.0 * &b.1;
    let p3 = &a.1 * &b.0;
    let p4 = &a.1 * &b.1;
    (
        p1.clone().min(p2.clone()).min(p3.clone()).min(p4.clone()),
        p1.max(p2).max(p3).max(p4),
    )
}

/// Interval of x^2 over [a, b].
fn iv_sq(a: &Iv) -> Iv {
    let s0 = &a.0 * &a.0;
    let s1 = &a.1 * &a.1;
    if a.0.is_negative() && a.1.is_positive() {
        (BigRational::zero(), s0.max(s1))
    } else {
        (s0.clone().min(s1.clone()), s0.max(s1))
    }
}

fn iv_point(q: BigRational) -> Iv {
    (q.clone(), q)
}

fn iv_width(a: &Iv) -> BigRational {
    &a.1 - &a.0
}

fn iv_contains_zero(a: &Iv) -> bool {
    !a.0.is_positive() && !a.1.is_negative()
}

/// Round outward to denominator 2^bits, bounding coefficient growth across
/// Newton iterations without losing rigor.
fn dyadic_out(a: &Iv, bits: u64) -> Iv {
    let scale = BigInt::one() << bits;
    let lo = (&a.0 * BigRational::from_integer(scale.clone())).floor();
    let hi = (&a.1 * BigRational::from_integer(scale.clone())).ceil();
    let den = BigRational::from_integer(scale);
    (lo / den.clone(), hi / den)
}

/// Axis-aligned rectangle with rational corners.
#[derive(Debug, Clone, PartialEq)]
pub struct CBox {
    pub re: Iv,
    pub im: Iv,
}

impl CBox {
    pub fn new(re_lo: BigRational, re_hi: BigRational, im_lo: BigRational, im_hi: BigRational) -> Self {
        CBox { re: (re_lo, re_hi), im: (im_lo, im_hi) }
    }

    fn real_const(q: BigRational) -> Self {
        CBox { re: iv_point(q), im: iv_point(BigRational::zero()) }
    }

    fn add(&self, other: &Self) -> Self {
        CBox { re: iv_add(&self.re, &other.re), im: iv_add(&self.im, &other.im) }
    }

    fn mul(&self, other: &Self) -> Self {
        let rr = iv_mul(&self.re, &other.re);
        let ii = iv_mul(&self.im, &other.im);
        let ri = iv_mul(&self.re, &other.im);
        let ir = iv_mul(&self.im, &other.re);
        CBox { re: iv_sub(&rr, &ii), im: iv_add(&ri, &ir) }
    }

    /// 1/z over the box; requires |z|^2 bounded away from zero.
    fn recip(&self) -> Option<Self> {
        let den = iv_add(&iv_sq(&self.re), &iv_sq(&self.im));
        if !den.0.is_positive() {
            return None;
        }
        let inv = (den.1.recip(), den.0.recip());
        Some(CBox {
            re: iv_mul(&self.re, &inv),
            im: {
                let m = iv_mul(&self.im, &inv);
                (-m.1, -m.0)
            },
        })
    }

    fn contains_zero(&self) -> bool {
        iv_contains_zero(&self.re) && iv_contains_zero(&self.im)
    }

    fn strictly_inside(&self, outer: &Self) -> bool {
        self.re.0 > outer.re.0 && self.re.1 < outer.re.1 && self.im.0 > outer.im.0 && self.im.1 < outer.im.1
    }

    fn intersect(&self, other: &Self) -> Option<Self> {
        let re = (self.re.0.clone().max(other.re.0.clone()), self.re.1.clone().min(other.re.1.clone()));
        let im = (self.im.0.clone().max(other.im.0.clone()), self.im.1.clone().min(other.im.1.clone()));
        if re.0 > re.1 || im.0 > im.1 {
            None
        } else {
            Some(CBox { re, im })
        }
    }

    pub fn width(&self) -> BigRational {
        iv_width(&self.re).max(iv_width(&self.im))
    }

    fn midpoint(&self) -> (BigRational, BigRational) {
        let two = BigRational::from_integer(2.into());
        ((&self.re.0 + &self.re.1) / &two, (&self.im.0 + &self.im.1) / &two)
    }

    fn round_out(&self, bits: u64) -> Self {
        CBox { re: dyadic_out(&self.re, bits), im: dyadic_out(&self.im, bits) }
    }

    /// Interval containing |z|^2 for all z in the box.
    fn abs_sq(&self) -> Iv {
        iv_add(&iv_sq(&self.re), &iv_sq(&self.im))
    }
}

/// Horner evaluation of a real polynomial over a complex rectangle.
fn eval_box(p: &RatPoly, z: &CBox) -> CBox {
    let mut acc = CBox::real_const(BigRational::zero());
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(z).add(&CBox::real_const(c.clone()));
    }
    acc
}

/// Exact evaluation at a complex rational point.
fn eval_point(p: &RatPoly, x: &BigRational, y: &BigRational) -> (BigRational, BigRational) {
    let mut re = BigRational::zero();
    let mut im = BigRational::zero();
    for c in p.coeffs().iter().rev() {
        let nre = &re * x - &im * y + c;
        let nim = &re * y + &im * x;
        re = nre;
        im = nim;
    }
    (re, im)
}

/// One interval Newton step. `Some(tighter)` certifies exactly one root of `p`
/// in `x` (and in the returned sub-box); `None` is inconclusive.
fn newton_step(p: &RatPoly, dp: &RatPoly, x: &CBox) -> Option<CBox> {
    let dbox = eval_box(dp, x);
    let inv = dbox.recip()?;
    let (mx, my) = x.midpoint();
    let (pre, pim) = eval_point(p, &mx, &my);
    let pm = CBox { re: iv_point(pre), im: iv_point(pim) };
    let step = pm.mul(&inv);
    let n = CBox {
        re: iv_sub(&iv_point(mx), &step.re),
        im: iv_sub(&iv_point(my), &step.im),
    };
    if n.strictly_inside(x) {
        n.intersect(x)
    } else {
        None
    }
}

/// Certify that `x` encloses exactly one root, subdividing first if the box is
/// too coarse for Newton to bite. Fails if the surviving region splits.
fn certify_box(p: &RatPoly, x: &CBox) -> Result<CBox> {
    let dp = p.derivative();
    let mut current = x.clone();
    for _ in 0..28 {
        if let Some(n) = newton_step(p, &dp, &current) {
            // Round to dyadic endpoints before storing; exact Newton output
            // carries huge denominators into every later evaluation.
            let bits = width_precision_bits(&n.width()) + 32;
            let r = n.round_out(bits);
            return Ok(r.intersect(&current).unwrap_or(r));
        }
        // Quarter the box and keep the cells that may contain a root.
        let (mx, my) = current.midpoint();
        let cells = [
            CBox::new(current.re.0.clone(), mx.clone(), current.im.0.clone(), my.clone()),
            CBox::new(mx.clone(), current.re.1.clone(), current.im.0.clone(), my.clone()),
            CBox::new(current.re.0.clone(), mx.clone(), my.clone(), current.im.1.clone()),
            CBox::new(mx.clone(), current.re.1.clone(), my.clone(), current.im.1.clone()),
        ];
        let alive: Vec<&CBox> = cells.iter().filter(|c| eval_box(p, c).contains_zero()).collect();
        match alive.len() {
            0 => return Err(Error::IsolationFailure("no root in rectangle".into())),
            1 => current = alive[0].clone(),
            _ => {
                // Hull of survivors; if it stops shrinking the box holds
                // several roots (or a root sits on a cell wall).
                let hull = alive.iter().fold((*alive[0]).clone(), |acc, c| CBox {
                    re: (acc.re.0.min(c.re.0.clone()), acc.re.1.max(c.re.1.clone())),
                    im: (acc.im.0.min(c.im.0.clone()), acc.im.1.max(c.im.1.clone())),
                });
                if hull.width() >= current.width() {
                    return Err(Error::IsolationFailure(
                        "rectangle does not isolate a single root".into(),
                    ));
                }
                current = hull;
            }
        }
    }
    Err(Error::IsolationFailure("Newton certification did not converge".into()))
}

enum Enclosure {
    Real(Iv),
    Rect(CBox),
}

/// One conjugate sigma of the field generator, with a certified enclosure that
/// refines on demand. Evaluating sigma at an element is exact interval
/// arithmetic over the enclosure.
pub struct Embedding {
    field: Arc<NumberField>,
    enclosure: Mutex<Enclosure>,
}

impl Embedding {
    /// Embedding at a complex root isolated by `rect` (certified here).
    pub fn at_rectangle(field: Arc<NumberField>, rect: CBox) -> Result<Self> {
        let tight = certify_box(field.min_poly(), &rect)?;
        Ok(Embedding {
            field,
            enclosure: Mutex::new(Enclosure::Rect(tight)),
        })
    }

    /// Embedding at a real conjugate isolated by (lo, hi).
    pub fn at_real_bracket(field: Arc<NumberField>, lo: BigRational, hi: BigRational) -> Result<Self> {
        crate::poly::certify_single_root(field.min_poly(), &lo, &hi)?;
        Ok(Embedding {
            field,
            enclosure: Mutex::new(Enclosure::Real((lo, hi))),
        })
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn is_real(&self) -> bool {
        matches!(*self.enclosure.lock().unwrap(), Enclosure::Real(_))
    }

    /// Current enclosure as a rectangle (real brackets get zero imaginary part).
    pub fn enclosure_box(&self) -> CBox {
        match &*self.enclosure.lock().unwrap() {
            Enclosure::Real(iv) => CBox {
                re: iv.clone(),
                im: iv_point(BigRational::zero()),
            },
            Enclosure::Rect(b) => b.clone(),
        }
    }

    fn refine_once(&self) -> Result<()> {
        let mut guard = self.enclosure.lock().unwrap();
        match &mut *guard {
            Enclosure::Real(iv) => {
                // A few bisection steps per round.
                let p = self.field.min_poly();
                for _ in 0..8 {
                    if iv.0 == iv.1 {
                        break;
                    }
                    let m = (&iv.0 + &iv.1) / BigRational::from_integer(2.into());
                    let sm = crate::rational::sign_i8(&p.eval(&m));
                    if sm == 0 {
                        *iv = iv_point(m);
                    } else if sm == crate::rational::sign_i8(&p.eval(&iv.0)) {
                        iv.0 = m;
                    } else {
                        iv.1 = m;
                    }
                }
                Ok(())
            }
            Enclosure::Rect(b) => {
                let dp = self.field.min_poly().derivative();
                match newton_step(self.field.min_poly(), &dp, b) {
                    Some(n) => {
                        // Round to just enough precision to keep the Newton
                        // gain. A fixed or ever-growing precision would pin
                        // every later evaluation at that denominator size.
                        let bits = width_precision_bits(&n.width()) + 32;
                        let r = n.round_out(bits);
                        *b = r.intersect(b).unwrap_or(r);
                        Ok(())
                    }
                    None => Err(Error::IsolationFailure("refinement stalled".into())),
                }
            }
        }
    }

    /// Rectangle certified to contain sigma(a).
    pub fn image_box(&self, a: &FieldElement) -> Result<CBox> {
        if let Some(f) = a.field() {
            if !f.same_root(&self.field) {
                return Err(Error::FieldMismatch);
            }
        }
        let poly = RatPoly::new(a.poly_coeffs());
        Ok(eval_box(&poly, &self.enclosure_box()))
    }

    /// Rational interval certified to contain |sigma(a)|, of width <= tol.
    pub fn abs_interval(&self, a: &FieldElement, tol: &BigRational) -> Result<Iv> {
        for _ in 0..64 {
            let img = self.image_box(a)?;
            let (slo, shi) = img.abs_sq();
            let bounds = sqrt_bounds(&slo, &shi);
            if iv_width(&bounds) <= *tol {
                return Ok(bounds);
            }
            self.refine_once()?;
        }
        Err(Error::ConvergenceFailure("modulus interval did not reach tolerance".into()))
    }

    /// abs_interval with a default tolerance of 2^-40.
    pub fn abs(&self, a: &FieldElement) -> Result<Iv> {
        self.abs_interval(a, &BigRational::new(BigInt::one(), BigInt::one() << 40))
    }
}

impl std::fmt::Debug for Embedding {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let b = self.enclosure_box();
        write!(
            f,
            "Embedding(re=[{:.6}, {:.6}], im=[{:.6}, {:.6}])",
            rational_to_f64(&b.re.0),
            rational_to_f64(&b.re.1),
            rational_to_f64(&b.im.0),
            rational_to_f64(&b.im.1),
        )
    }
}

/// ceil(-log2 w) for a positive width, within one bit; 0 for widths >= 1.
fn width_precision_bits(w: &BigRational) -> u64 {
    if !w.is_positive() {
        return 0;
    }
    let shortfall = w.denom().bits() as i64 - w.numer().bits() as i64 + 1;
    shortfall.max(0) as u64
}

/// Outward dyadic bounds on [sqrt(s_lo), sqrt(s_hi)] for 0 <= s_lo <= s_hi,
/// with slack below 2^-94. Dyadic output keeps later comparisons cheap no
/// matter how bulky the squared input's representation is.
fn sqrt_bounds(slo: &BigRational, shi: &BigRational) -> Iv {
    let lo = if slo.is_positive() {
        sqrt_dyadic(slo, false)
    } else {
        BigRational::zero()
    };
    (lo, sqrt_dyadic(shi, true))
}

/// floor(sqrt(s) * 2^96) / 2^96 from below, or a strict upper bound one ulp
/// wider from above, via integer square root of the scaled value.
fn sqrt_dyadic(s: &BigRational, upper: bool) -> BigRational {
    const K: u64 = 96;
    let scaled = (s * BigRational::from_integer(BigInt::one() << (2 * K)))
        .floor()
        .to_integer();
    let root = scaled.sqrt() + if upper { 1 } else { 0 };
    BigRational::new(root, BigInt::one() << K)
}

/// Durand-Kerner candidates for all roots, as floats.
fn float_roots(p: &RatPoly) -> Vec<Complex64> {
    let d = p.degree().unwrap_or(0);
    if d == 0 {
        return vec![];
    }
    let lead = rational_to_f64(p.leading().unwrap());
    let coeffs: Vec<f64> = p.coeffs().iter().map(|c| rational_to_f64(c) / lead).collect();
    let eval = |z: Complex64| {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    };
    let mut zs: Vec<Complex64> = (0..d)
        .map(|k| Complex64::new(0.4, 0.9).powu(k as u32 + 1))
        .collect();
    for _ in 0..400 {
        let mut shift = 0.0f64;
        for k in 0..d {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..d {
                if j != k {
                    denom *= zs[k] - zs[j];
                }
            }
            if denom.norm() == 0.0 {
                continue;
            }
            let delta = eval(zs[k]) / denom;
            zs[k] -= delta;
            shift = shift.max(delta.norm());
        }
        if shift < 1e-13 {
            break;
        }
    }
    zs
}

/// Certified embeddings at every conjugate of the generator other than the
/// generator itself: all other real roots, plus one representative per complex
/// conjugate pair (the upper-half root; the mirror has the same modulus).
///
/// The count is checked against the degree, so every root is accounted for.
pub fn conjugate_embeddings(field: &Arc<NumberField>) -> Result<Vec<Embedding>> {
    let p = field.min_poly().clone();
    let degree = field.degree();
    let real = isolate_real_roots(&p)?;

    // Identify which real isolating interval holds the generator.
    let (blo, bhi) = field.bracket();
    let mut own = None;
    for (i, (lo, hi)) in real.iter().enumerate() {
        let ilo = lo.clone().max(blo.clone());
        let ihi = hi.clone().min(bhi.clone());
        if ilo > ihi {
            continue;
        }
        let hit = if ilo == ihi {
            crate::rational::sign_i8(&p.eval(&ilo)) == 0
        } else {
            crate::poly::count_roots_in(&p, &ilo, &ihi, 48)? == 1
        };
        if hit {
            own = Some(i);
            break;
        }
    }
    let own = own.ok_or_else(|| {
        Error::IsolationFailure("generator bracket does not match any real root".into())
    })?;

    let n_complex = degree - real.len();
    if n_complex % 2 != 0 {
        return Err(Error::IsolationFailure("odd number of non-real roots".into()));
    }
    let pairs = n_complex / 2;

    let mut out = Vec::new();
    for (i, (lo, hi)) in real.iter().enumerate() {
        if i == own {
            continue;
        }
        if lo == hi {
            // Exact rational conjugate: degenerate bracket, kept as a point.
            let emb = Embedding {
                field: Arc::clone(field),
                enclosure: Mutex::new(Enclosure::Real((lo.clone(), hi.clone()))),
            };
            out.push(emb);
        } else {
            out.push(Embedding::at_real_bracket(Arc::clone(field), lo.clone(), hi.clone())?);
        }
    }

    // Float candidates seed rational rectangles in the upper half plane.
    let mut upper: Vec<Complex64> = float_roots(&p).into_iter().filter(|z| z.im > 1e-9).collect();
    upper.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
    if upper.len() != pairs {
        return Err(Error::IsolationFailure(format!(
            "expected {pairs} upper-half roots, float sweep found {}",
            upper.len()
        )));
    }
    for z in upper {
        let mut radius = 1e-3_f64.max(z.norm() * 1e-6);
        let mut made = None;
        for _ in 0..8 {
            let rect = CBox::new(
                approx_rational(z.re - radius),
                approx_rational(z.re + radius),
                approx_rational((z.im - radius).max(z.im * 0.5)),
                approx_rational(z.im + radius),
            );
            match Embedding::at_rectangle(Arc::clone(field), rect) {
                Ok(e) => {
                    made = Some(e);
                    break;
                }
                Err(_) => radius *= 4.0,
            }
        }
        out.push(made.ok_or_else(|| {
            Error::IsolationFailure("could not certify a rectangle around a float candidate".into())
        })?);
    }

    // Every root accounted for: generator + others real + pairs.
    let accounted = 1 + (real.len() - 1) + 2 * pairs;
    if accounted != degree {
        return Err(Error::IsolationFailure(format!(
            "root count {accounted} does not match degree {degree}"
        )));
    }
    Ok(out)
}

fn approx_rational(x: f64) -> BigRational {
    BigRational::from_float(x).unwrap_or_else(BigRational::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::big;

    fn quartic() -> Arc<NumberField> {
        NumberField::new(RatPoly::from_integers(&[-1, -1, 0, 0, 1]), big(1), big(2)).unwrap()
    }

    #[test]
    fn quartic_conjugates_counted_and_bounded() {
        let f = quartic();
        let embs = conjugate_embeddings(&f).unwrap();
        // One other real root (~ -0.7245) and one complex pair.
        assert_eq!(embs.len(), 2);
        let tol = BigRational::new(1.into(), (BigInt::one()) << 30);
        let mut real_abs = None;
        let mut cplx_abs = None;
        for e in &embs {
            let beta = f.beta();
            let iv = e.abs_interval(&beta, &tol).unwrap();
            if e.is_real() {
                real_abs = Some(iv);
            } else {
                cplx_abs = Some(iv);
            }
        }
        let real_abs = real_abs.unwrap();
        let cplx_abs = cplx_abs.unwrap();
        // |real conjugate| ~ 0.7244919590
        let mid = rational_to_f64(&real_abs.0);
        assert!((mid - 0.7244919590005157).abs() < 1e-6);
        // |complex pair| ~ 1.0633, certified above 1
        assert!(cplx_abs.0 > BigRational::one());
        let cmid = rational_to_f64(&cplx_abs.0);
        assert!((cmid - 1.0633).abs() < 1e-3);
    }

    #[test]
    fn golden_conjugate_inside_unit_disk() {
        let f = NumberField::new(RatPoly::from_integers(&[-1, -1, 1]), big(1), big(2)).unwrap();
        let embs = conjugate_embeddings(&f).unwrap();
        assert_eq!(embs.len(), 1);
        assert!(embs[0].is_real());
        let iv = embs[0].abs(&f.beta()).unwrap();
        assert!(iv.1 < BigRational::one());
        let mid = rational_to_f64(&iv.0);
        assert!((mid - 0.6180339887498949).abs() < 1e-6);
    }

    #[test]
    fn degree_seven_has_one_expanding_pair() {
        // x^7 - x^6 - 1: one real root (the generator), three complex pairs,
        // exactly one pair outside the unit circle.
        let f = NumberField::new(RatPoly::from_integers(&[-1, 0, 0, 0, 0, 0, -1, 1]), big(1), big(2))
            .unwrap();
        let embs = conjugate_embeddings(&f).unwrap();
        assert_eq!(embs.len(), 3);
        assert!(embs.iter().all(|e| !e.is_real()));
        let beta = f.beta();
        let expanding: Vec<f64> = embs
            .iter()
            .map(|e| rational_to_f64(&e.abs(&beta).unwrap().0))
            .filter(|m| *m > 1.0)
            .collect();
        assert_eq!(expanding.len(), 1);
        assert!((expanding[0] - 1.0517).abs() < 1e-3);
    }

    #[test]
    fn image_box_respects_products() {
        let f = quartic();
        let embs = conjugate_embeddings(&f).unwrap();
        let e = embs.iter().find(|e| !e.is_real()).unwrap();
        let beta = f.beta();
        let b2 = beta.checked_mul(&beta).unwrap();
        // sigma(beta^2) and sigma(beta)^2 both contain the true value.
        let img2 = e.image_box(&b2).unwrap();
        let img = e.image_box(&beta).unwrap();
        let sq = img.mul(&img);
        assert!(img2.intersect(&sq).is_some());
    }

    #[test]
    fn mismatched_field_rejected() {
        let f = quartic();
        let g = NumberField::new(RatPoly::from_integers(&[-1, -1, 1]), big(1), big(2)).unwrap();
        let embs = conjugate_embeddings(&f).unwrap();
        assert!(matches!(embs[0].image_box(&g.beta()), Err(Error::FieldMismatch)));
    }

    #[test]
    fn certify_rejects_rootless_rectangle() {
        let f = quartic();
        let rect = CBox::new(big(5), big(6), big(5), big(6));
        assert!(Embedding::at_rectangle(f, rect).is_err());
    }

    #[test]
    fn sqrt_bounds_are_outward() {
        let s = BigRational::new(2.into(), 1.into());
        let (lo, hi) = sqrt_bounds(&s, &s);
        assert!(&lo * &lo <= s && &hi * &hi >= s);
        assert!(rational_to_f64(&(hi - lo)).abs() < 1e-6);
    }
}
