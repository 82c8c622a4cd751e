//! The invariant density and three independent ways to estimate it.
//!
//! The absolutely continuous invariant measure of the negative beta
//! transformation has density proportional to
//!
//! ```text
//! h(x) = sum over n >= 0 with T^n(1) >= x of (-beta)^(-n)
//! ```
//!
//! summed here from n = 0: the n = 0 indicator (always 1) is required for
//! positivity, e.g. for the golden ratio the n >= 1 part alone is negative
//! on (0, 2-beta]. The series is piecewise constant between orbit points of
//! 1 and vanishes identically on the gaps.
//!
//! Besides the series, this module offers an Ulam discretization of the
//! transfer operator (stationary vector of the bin-to-bin transition matrix,
//! assembled by exact interval splitting) and Birkhoff visit frequencies of
//! a long simulated orbit. `cross_validate` compares all three as
//! distributions and measures how much mass each leaves in the gaps.
//!
//! Deep series sums need exact scalars: the guarded f64 backend honestly
//! escalates once the accumulated interval width reaches the floor
//! boundaries, which for 200 orbit steps it will.

use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gaps::build_structure;
use crate::interval::IntervalSet;
use crate::map::Base;
use crate::scalar::Scalar;

/// Truncated density series at x: sum over 0 <= n <= n_terms with
/// T^n(1) >= x of (-beta)^(-n), plus the geometric tail bound
/// beta^(-n_terms) / (1 - 1/beta) on the truncation error.
pub fn density_series<S: Scalar>(base: &Base<S>, x: &S, n_terms: usize) -> Result<(S, S)> {
    if x.checked_sign()? <= 0 || (x.clone() - S::one()).checked_sign()? > 0 {
        return Err(Error::OutOfDomain(format!("{x} outside (0,1]")));
    }
    let orbit = base.orbit_neg(n_terms)?;
    let mut coeff = S::one();
    let mut sum = S::zero();
    for n in 0..=n_terms {
        let t = orbit.point_at(n).ok_or(Error::UnboundedIndex(n as u64, u64::MAX))?;
        if t.cmp_checked(x)? != std::cmp::Ordering::Less {
            sum = sum + coeff.clone();
        }
        coeff = -(coeff / base.beta().clone());
    }
    // |tail| <= sum_{n > n_terms} beta^-n = beta^-n_terms / (beta - 1).
    let mut pow = S::one();
    for _ in 0..n_terms {
        pow = pow / base.beta().clone();
    }
    let bound = pow / (base.beta().clone() - S::one());
    Ok((sum, bound))
}

/// Normalized series density sampled at the centers of `bins` uniform bins.
/// The normalization makes the density integrate to 1 over (0, 1].
pub fn series_profile<S: Scalar>(base: &Base<S>, bins: usize, n_terms: usize) -> Result<Vec<f64>> {
    let (points, coeffs) = orbit_terms(base, n_terms)?;
    let norm: f64 = points.iter().zip(&coeffs).map(|(t, c)| t * c).sum();
    // Sort terms by orbit value, largest first; the series at x is then a
    // prefix sum of the first k coefficients where k = #{n : t_n >= x}.
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_unstable_by(|&a, &b| points[b].partial_cmp(&points[a]).unwrap());
    let mut prefix = Vec::with_capacity(order.len() + 1);
    prefix.push(0.0);
    for &n in &order {
        prefix.push(prefix.last().unwrap() + coeffs[n]);
    }
    let sorted: Vec<f64> = order.iter().map(|&n| points[n]).collect();
    let mut out = Vec::with_capacity(bins);
    for i in 0..bins {
        let center = (i as f64 + 0.5) / bins as f64;
        // partition_point gives the count of t >= center in the descending list.
        let k = sorted.partition_point(|t| *t >= center);
        out.push(prefix[k] / norm);
    }
    Ok(out)
}

/// Stationary density of the Ulam discretization: `bins` uniform bins,
/// transition fractions assembled by exact splitting of every bin at the
/// branch cuts, then power iteration to L1 residual 1e-10.
pub fn ulam_estimate<S: Scalar>(base: &Base<S>, bins: usize, power_iters: usize) -> Result<Vec<f64>> {
    if bins < 16 {
        return Err(Error::OutOfDomain(format!("{bins} bins < 16")));
    }
    let rows = ulam_rows(base, bins)?;
    let mut v = vec![1.0 / bins as f64; bins];
    let mut next = vec![0.0; bins];
    for _ in 0..power_iters {
        next.iter_mut().for_each(|x| *x = 0.0);
        for (i, row) in rows.iter().enumerate() {
            for &(j, w) in row {
                next[j as usize] += v[i] * w;
            }
        }
        let total: f64 = next.iter().sum();
        next.iter_mut().for_each(|x| *x /= total);
        let residual: f64 = v.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut v, &mut next);
        if residual < 1e-10 {
            return Ok(v.iter().map(|m| m * bins as f64).collect());
        }
    }
    Err(Error::ConvergenceFailure(format!(
        "Ulam power iteration residual above 1e-10 after {power_iters} sweeps"
    )))
}

/// Visit-frequency density of a simulated orbit: `iters` steps from x0 in
/// plain f64, returned per bin and normalized to integrate to 1 (all zeros
/// when iters = 0).
///
/// Each step applies a deterministic dither of order 1e-13, far below any
/// bin width in use. Without it, binary arithmetic resonates with integer
/// and dyadic beta (for beta = 2 every f64 orbit collapses onto the fixed
/// point 1 within 53 steps), which would sample the wrong measure.
pub fn birkhoff_histogram<S: Scalar>(base: &Base<S>, x0: f64, iters: usize, bins: usize) -> Vec<f64> {
    let beta = base.beta().to_f64();
    let mut counts = vec![0u64; bins];
    let mut x = x0;
    let mut noise: u64 = 0x9e3779b97f4a7c15;
    for _ in 0..iters {
        let d = (beta * x).floor() + 1.0;
        x = d - beta * x;
        // splitmix64 step, mapped to a perturbation in [-1e-13, 1e-13].
        noise = noise.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = noise;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^= z >> 31;
        x += (z as f64 / u64::MAX as f64 - 0.5) * 2e-13;
        x = x.clamp(f64::MIN_POSITIVE, 1.0);
        let bin = ((x * bins as f64) as usize).min(bins - 1);
        counts[bin] += 1;
    }
    if iters == 0 {
        return vec![0.0; bins];
    }
    counts.iter().map(|&c| c as f64 / iters as f64 * bins as f64).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct DensityProfile {
    pub bins: usize,
    pub series: Vec<f64>,
    pub ulam: Vec<f64>,
    pub birkhoff: Vec<f64>,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ValidationReport {
    pub bins: usize,
    /// Kolmogorov distances (sup over bin boundaries of the CDF difference).
    pub ks_series_ulam: f64,
    pub ks_series_birkhoff: f64,
    pub ks_ulam_birkhoff: f64,
    /// Fraction of total mass each estimator leaves in the gap union.
    pub gap_mass_series: f64,
    pub gap_mass_ulam: f64,
    pub gap_mass_birkhoff: f64,
}

impl ValidationReport {
    pub fn agrees(&self, ks_tol: f64, gap_tol: f64) -> bool {
        self.ks_series_ulam < ks_tol
            && self.ks_series_birkhoff < ks_tol
            && self.ks_ulam_birkhoff < ks_tol
            && self.gap_mass_series < gap_tol
            && self.gap_mass_ulam < gap_tol
            && self.gap_mass_birkhoff < gap_tol
    }
}

pub struct CrossOptions {
    pub bins: usize,
    pub series_terms: usize,
    pub birkhoff_iters: usize,
    pub power_iters: usize,
    pub x0: f64,
}

impl Default for CrossOptions {
    fn default() -> Self {
        CrossOptions {
            bins: 4096,
            series_terms: 200,
            birkhoff_iters: 1_000_000,
            power_iters: 20_000,
            x0: 0.412_871_903_556_717_3,
        }
    }
}

/// Compare the three density estimates as distributions and measure the
/// mass each leaves in the gaps. Differences are reported, not judged; use
/// [`ValidationReport::agrees`] with the tolerances of interest.
pub fn cross_validate<S: Scalar>(base: &Base<S>, opts: &CrossOptions) -> Result<(DensityProfile, ValidationReport)> {
    let bins = opts.bins;
    let series = series_profile(base, bins, opts.series_terms)?;
    let ulam = ulam_estimate(base, bins, opts.power_iters)?;
    let birkhoff = birkhoff_histogram(base, opts.x0, opts.birkhoff_iters, bins);

    // CDFs at bin boundaries. The series CDF comes from the exact integral
    // of the truncated series; the other two are prefix sums.
    let (points, coeffs) = orbit_terms(base, opts.series_terms)?;
    let norm: f64 = points.iter().zip(&coeffs).map(|(t, c)| t * c).sum();
    let mut cdf_series = Vec::with_capacity(bins);
    for j in 1..=bins {
        let b = j as f64 / bins as f64;
        let m: f64 = points.iter().zip(&coeffs).map(|(t, c)| c * t.min(b)).sum();
        cdf_series.push(m / norm);
    }
    let cdf = |dens: &[f64]| -> Vec<f64> {
        let mut acc = 0.0;
        dens.iter()
            .map(|d| {
                acc += d / bins as f64;
                acc
            })
            .collect()
    };
    let cdf_ulam = cdf(&ulam);
    let cdf_birk = cdf(&birkhoff);
    let ks = |a: &[f64], b: &[f64]| {
        a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
    };

    // Gap masses: exact integral for the series; for the discretized
    // estimators, the mass on bins lying fully inside a gap (boundary bins
    // mix support mass in by construction and are not attributable).
    let structure = build_structure(base)?;
    let gap_set = structure.gap_set()?;
    let mut series_gap = S::zero();
    let mut norm_exact = S::zero();
    let orbit = base.orbit_neg(opts.series_terms)?;
    let mut coeff = S::one();
    for n in 0..=opts.series_terms {
        let t = orbit.point_at(n).ok_or(Error::UnboundedIndex(n as u64, u64::MAX))?.clone();
        let below = IntervalSet::interval(S::zero(), t.clone())?;
        series_gap = series_gap + coeff.clone() * gap_set.intersect(&below)?.total_length();
        norm_exact = norm_exact + coeff.clone() * t;
        coeff = -(coeff / base.beta().clone());
    }
    let gap_mass_series = (series_gap.to_f64() / norm_exact.to_f64()).abs();

    let mut gap_mass_ulam = 0.0;
    let mut gap_mass_birkhoff = 0.0;
    for j in 0..bins {
        let lo = S::from_rational(&BigRational::new(j.into(), bins.into()));
        let hi = S::from_rational(&BigRational::new((j + 1).into(), bins.into()));
        let bin = IntervalSet::interval(lo, hi)?;
        if bin.subset_of(&gap_set)? {
            gap_mass_ulam += ulam[j] / bins as f64;
            gap_mass_birkhoff += birkhoff[j] / bins as f64;
        }
    }

    let report = ValidationReport {
        bins,
        ks_series_ulam: ks(&cdf_series, &cdf_ulam),
        ks_series_birkhoff: ks(&cdf_series, &cdf_birk),
        ks_ulam_birkhoff: ks(&cdf_ulam, &cdf_birk),
        gap_mass_series,
        gap_mass_ulam,
        gap_mass_birkhoff,
    };
    Ok((DensityProfile { bins, series, ulam, birkhoff }, report))
}

/// Orbit values and signed coefficients (-beta)^-n for n = 0..=n_terms, as
/// f64 for bulk summation.
fn orbit_terms<S: Scalar>(base: &Base<S>, n_terms: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let orbit = base.orbit_neg(n_terms)?;
    let beta = base.beta().to_f64();
    let mut points = Vec::with_capacity(n_terms + 1);
    let mut coeffs = Vec::with_capacity(n_terms + 1);
    let mut c = 1.0;
    for n in 0..=n_terms {
        let t = orbit.point_at(n).ok_or(Error::UnboundedIndex(n as u64, u64::MAX))?;
        points.push(t.to_f64());
        coeffs.push(c);
        c /= -beta;
    }
    Ok((points, coeffs))
}

/// Sparse row-stochastic Ulam matrix: row i lists (bin j, fraction of bin i
/// mapping into bin j), computed by exact splitting at the branch cuts.
fn ulam_rows<S: Scalar>(base: &Base<S>, bins: usize) -> Result<Vec<Vec<(u32, f64)>>> {
    use num_traits::ToPrimitive;
    let beta = base.beta().clone();
    let nb = S::from_int(bins as i64);
    let mut rows = Vec::with_capacity(bins);
    for i in 0..bins {
        let lo = S::from_rational(&BigRational::new(i.into(), bins.into()));
        let hi = S::from_rational(&BigRational::new((i + 1).into(), bins.into()));
        let blo = beta.clone() * lo.clone();
        let bhi = beta.clone() * hi.clone();
        let flo = blo.checked_floor()?.to_i64().unwrap();
        let mut fhi = bhi.checked_floor()?.to_i64().unwrap();
        if (bhi.clone() - S::from_int(fhi)).checked_sign()? == 0 {
            fhi -= 1;
        }
        let mut boundaries = vec![lo.clone()];
        for cut in (flo + 1)..=fhi {
            boundaries.push(S::from_int(cut) / beta.clone());
        }
        boundaries.push(hi.clone());
        let mut row: Vec<(u32, f64)> = Vec::new();
        for pair in boundaries.windows(2) {
            let (u, v) = (&pair[0], &pair[1]);
            let bu = beta.clone() * u.clone();
            let d = S::from_int(bu.checked_floor()?.to_i64().unwrap() + 1);
            let img_lo = d.clone() - beta.clone() * v.clone();
            let img_hi = d - beta.clone() * u.clone();
            let mut j = (img_lo.clone() * nb.clone()).checked_floor()?.to_i64().unwrap().max(0);
            loop {
                let bin_lo = S::from_rational(&BigRational::new(j.into(), bins.into()));
                if bin_lo.cmp_checked(&img_hi)? != std::cmp::Ordering::Less {
                    break;
                }
                let bin_hi = S::from_rational(&BigRational::new((j + 1).into(), bins.into()));
                let o_lo = if img_lo.cmp_checked(&bin_lo)? == std::cmp::Ordering::Greater {
                    img_lo.clone()
                } else {
                    bin_lo
                };
                let o_hi = if img_hi.cmp_checked(&bin_hi)? == std::cmp::Ordering::Less {
                    img_hi.clone()
                } else {
                    bin_hi
                };
                let overlap = o_hi - o_lo;
                if overlap.checked_sign()? > 0 {
                    // fraction of bin i: overlap / (beta * bin width).
                    let w = (overlap * nb.clone() / beta.clone()).to_f64();
                    row.push((j as u32, w));
                }
                j += 1;
                if j as usize > bins {
                    break;
                }
            }
        }
        // Merge duplicate columns and renormalize the row exactly to 1.
        row.sort_unstable_by_key(|e| e.0);
        row.dedup_by(|b, a| {
            if a.0 == b.0 {
                a.1 += b.1;
                true
            } else {
                false
            }
        });
        let total: f64 = row.iter().map(|e| e.1).sum();
        row.iter_mut().for_each(|e| e.1 /= total);
        rows.push(row);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::NumberField;
    use crate::poly::RatPoly;
    use crate::rational::parse_rational;
    use num_traits::{One, Signed, Zero};

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    fn rational_base(s: &str) -> Base<BigRational> {
        Base::new(q(s)).unwrap()
    }

    #[test]
    fn golden_series_plateaus() {
        let f = NumberField::new(RatPoly::from_integers(&[-1, -1, 1]), q("3/2"), q("17/10")).unwrap();
        let base = Base::new(f.beta()).unwrap();
        // On (2 - beta, 1] only the n = 0 term survives: the raw series is
        // exactly 1. Below, on (0, 2 - beta], every term fires and the sum
        // is within the tail bound of beta / (beta + 1).
        let (v, _) = density_series(&base, &f.element(RatPoly::new(vec![q("1/2")])), 60).unwrap();
        let one = f.element(RatPoly::new(vec![q("1")]));
        assert_eq!((v - one.clone()).sign(), 0);

        let (v, bound) = density_series(&base, &f.element(RatPoly::new(vec![q("1/10")])), 60).unwrap();
        let beta = f.beta();
        let target = beta.clone() / (beta + one);
        let diff = v - target;
        let adiff = if diff.sign() < 0 { -diff } else { diff };
        assert_eq!((bound - adiff).sign(), 1);
    }

    #[test]
    fn five_fourths_gap_midpoint_vanishes() {
        let base = rational_base("5/4");
        let (v, bound) = density_series(&base, &q("13/32"), 200).unwrap();
        assert!(v.abs() < bound);
        assert!(bound < q("1/1000000000000000000"));
    }

    #[test]
    fn series_rejects_out_of_domain() {
        let base = rational_base("5/4");
        assert!(matches!(density_series(&base, &q("0"), 10), Err(Error::OutOfDomain(_))));
        assert!(matches!(density_series(&base, &q("2"), 10), Err(Error::OutOfDomain(_))));
    }

    #[test]
    fn integer_beta_is_lebesgue() {
        let base = rational_base("2");
        let dens = ulam_estimate(&base, 64, 500).unwrap();
        for d in &dens {
            assert!((d - 1.0).abs() < 1e-9, "{d}");
        }
        let series = series_profile(&base, 64, 80).unwrap();
        for d in &series {
            assert!((d - 1.0).abs() < 1e-9, "{d}");
        }
        let birk = birkhoff_histogram(&base, 0.4128719, 1_000_000, 64);
        for d in &birk {
            assert!((d - 1.0).abs() < 0.05, "{d}");
        }
    }

    #[test]
    fn gapless_beta_density_positive_everywhere() {
        let base = rational_base("19/10");
        let dens = ulam_estimate(&base, 1024, 5000).unwrap();
        assert!(dens.iter().all(|d| *d > 0.05), "min = {:?}", dens.iter().cloned().fold(f64::MAX, f64::min));
    }

    #[test]
    fn birkhoff_zero_iters_is_zero() {
        let base = rational_base("5/4");
        assert!(birkhoff_histogram(&base, 0.5, 0, 32).iter().all(|d| *d == 0.0));
    }

    #[test]
    fn transfer_operator_fixes_series_density() {
        // (1/beta) * sum over preimages y of h(y) = h(x) for the exact
        // density; with truncation at N terms both sides differ from it by
        // at most the tail bound, so they differ from each other by < 3B.
        let base = rational_base("5/4");
        let beta = q("5/4");
        let n_terms = 80;
        for i in 1..=100u32 {
            let x = BigRational::new(i.into(), 101.into());
            let (hx, bound) = density_series(&base, &x, n_terms).unwrap();
            let mut lhs = BigRational::zero();
            for d in 1..=2 {
                let y = (BigRational::from_integer(d.into()) - x.clone()) / beta.clone();
                if y > BigRational::zero() && y <= BigRational::one() {
                    let (hy, _) = density_series(&base, &y, n_terms).unwrap();
                    lhs = lhs + hy;
                }
            }
            lhs = lhs / beta.clone();
            assert!((lhs - hx).abs() < bound * q("3"), "x = {x}");
        }
    }

    #[test]
    fn series_is_constant_between_orbit_points() {
        let base = rational_base("5/4");
        let n_terms = 60;
        let orbit = base.orbit_neg(n_terms).unwrap();
        // Probe width: half the smallest spacing among all points entering
        // the sum, so each probe stays inside the adjacent cell.
        let mut pts: Vec<BigRational> =
            (0..=n_terms).map(|k| orbit.point_at(k).unwrap().clone()).collect();
        pts.sort();
        pts.dedup();
        let mut delta = q("1");
        for w in pts.windows(2) {
            let d = (w[1].clone() - w[0].clone()) / q("2");
            if d < delta {
                delta = d;
            }
        }
        for k in 1..=30usize {
            let t = orbit.point_at(k).unwrap();
            let (at, _) = density_series(&base, t, n_terms).unwrap();
            let (below, _) = density_series(&base, &(t.clone() - delta.clone()), n_terms).unwrap();
            let (above, _) = density_series(&base, &(t.clone() + delta.clone()), n_terms).unwrap();
            // Left-continuous at orbit points: the jump happens just above.
            assert_eq!(at, below, "point #{k}");
            assert!(above != at, "point #{k} should lose at least one term");
        }
    }

    #[test]
    fn ulam_gap_mass_shrinks_with_resolution() {
        let base = rational_base("5/4");
        let gaps = build_structure(&base).unwrap().gap_set().unwrap();
        let mut masses = Vec::new();
        for bins in [256usize, 1024, 4096] {
            let dens = ulam_estimate(&base, bins, 20_000).unwrap();
            let mut mass = 0.0;
            for j in 0..bins {
                let lo = q(&format!("{j}/{bins}"));
                let hi = q(&format!("{}/{bins}", j + 1));
                if IntervalSet::interval(lo, hi).unwrap().subset_of(&gaps).unwrap() {
                    mass += dens[j] / bins as f64;
                }
            }
            masses.push(mass);
        }
        assert!(masses[0] >= masses[1] && masses[1] >= masses[2], "{masses:?}");
        assert!(masses[2] < 1e-3, "{masses:?}");
    }

    #[test]
    fn cross_validate_five_fourths() {
        let base = rational_base("5/4");
        let (_, report) = cross_validate(&base, &CrossOptions::default()).unwrap();
        assert!(report.agrees(0.05, 1e-3), "{report:?}");
    }

    #[test]
    fn cross_validate_gapless() {
        let base = rational_base("19/10");
        let opts = CrossOptions { bins: 1024, ..CrossOptions::default() };
        let (profile, report) = cross_validate(&base, &opts).unwrap();
        assert!(report.agrees(0.05, 1e-3), "{report:?}");
        assert_eq!(profile.series.len(), 1024);
        // No gaps: every estimator's gap mass is exactly zero.
        assert_eq!(report.gap_mass_ulam, 0.0);
    }
}
