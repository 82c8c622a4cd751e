//! Gap and support structure of the invariant measure.
//!
//! For beta in the band gamma_{n+1} <= beta < gamma_n the invariant density
//! of the negative beta transformation vanishes on g_n = floor(2^(n+1)/3)
//! disjoint open intervals, the gaps G_{m,k}, whose endpoints all lie on the
//! orbit of 1. The complementary support atoms F_{n,k} are closed intervals
//! with the same kind of orbit endpoints, except for the last one which is
//! half-open at 0. This module builds that structure exactly from the orbit,
//! verifies the partition and invariance statements behind it, and runs the
//! interval-image experiments: decay of the gap preimages and eventual
//! covering of the support by images of any positive-length seed.

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};
use crate::interval::IntervalSet;
use crate::map::{Base, OrbitRecord};
use crate::scalar::Scalar;
use crate::spectra::classify;
use crate::words::word_lengths;

/// Largest orbit index build_structure will resolve. Bands deep enough to
/// exceed this require beta astronomically close to 1.
const ORBIT_CAP: u64 = 1_000_000;

/// Hard cap on interval pieces during preimage enumeration.
const PIECE_CAP: usize = 1_000_000;

/// Floor for the coverage step budget: the band formula 10 g_n (2 g_n + 1)
/// degenerates to 0 in the gapless band 0, where expansion still needs a
/// few hundred steps for thin seeds.
const COVERAGE_FLOOR: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PieceKind {
    Gap,
    Support,
    Probe,
}

/// A subinterval of (0, 1] whose endpoints (apart from 0) are orbit points
/// of 1, tagged with their orbit indices and open/closed flags.
#[derive(Debug, Clone)]
pub struct OrbitInterval<S: Scalar> {
    pub kind: PieceKind,
    /// Gap family index m (0-based); for support atoms, the band n.
    pub m: u32,
    /// Offset within the family.
    pub k: u64,
    pub lo: S,
    pub hi: S,
    /// Orbit index i with lo = T^i(1); None for the endpoint 0.
    pub lo_index: Option<u64>,
    pub hi_index: Option<u64>,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl<S: Scalar> OrbitInterval<S> {
    /// A plain seed interval for coverage_probe, with no orbit provenance.
    pub fn probe(lo: S, hi: S) -> Result<Self> {
        if (hi.clone() - lo.clone()).checked_sign()? <= 0 {
            return Err(Error::DegenerateInterval(format!("({lo}, {hi})")));
        }
        Ok(OrbitInterval {
            kind: PieceKind::Probe,
            m: 0,
            k: 0,
            lo,
            hi,
            lo_index: None,
            hi_index: None,
            lo_closed: false,
            hi_closed: false,
        })
    }

    pub fn length(&self) -> S {
        self.hi.clone() - self.lo.clone()
    }

    pub fn as_set(&self) -> Result<IntervalSet<S>> {
        IntervalSet::interval(self.lo.clone(), self.hi.clone())
    }

    /// "G_{m,k}" or "F_{n,k}" in the 0-based labeling.
    pub fn label(&self) -> String {
        match self.kind {
            PieceKind::Gap => format!("G_{{{},{}}}", self.m, self.k),
            PieceKind::Support => format!("F_{{{},{}}}", self.m, self.k),
            PieceKind::Probe => "probe".to_string(),
        }
    }
}

impl<S: Scalar> Serialize for OrbitInterval<S> {
    fn serialize<Ser: Serializer>(&self, serializer: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        let mut st = serializer.serialize_struct("OrbitInterval", 11)?;
        st.serialize_field(
            "kind",
            match self.kind {
                PieceKind::Gap => "G",
                PieceKind::Support => "F",
                PieceKind::Probe => "probe",
            },
        )?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("lo", &self.lo.to_string())?;
        st.serialize_field("hi", &self.hi.to_string())?;
        st.serialize_field("lo_approx", &self.lo.to_f64())?;
        st.serialize_field("hi_approx", &self.hi.to_f64())?;
        st.serialize_field("lo_orbit_index", &self.lo_index)?;
        st.serialize_field("hi_orbit_index", &self.hi_index)?;
        st.serialize_field("lo_closed", &self.lo_closed)?;
        st.serialize_field("hi_closed", &self.hi_closed)?;
        st.end()
    }
}

/// The full gap/support decomposition of (0, 1] at the classified band.
#[derive(Debug, Clone)]
pub struct GapStructure<S: Scalar> {
    base: Base<S>,
    orbit: OrbitRecord<S>,
    pub band: u32,
    pub gaps: Vec<OrbitInterval<S>>,
    pub supports: Vec<OrbitInterval<S>>,
}

fn lengths_u64(m: u32) -> Result<(u64, u64, u64)> {
    let (l1, l2, g) = word_lengths(m)?;
    let conv = |x: u128| -> Result<u64> {
        u64::try_from(x).map_err(|_| Error::UnboundedIndex(u64::MAX, ORBIT_CAP))
    };
    Ok((conv(l1)?, conv(l2)?, conv(g)?))
}

fn point<S: Scalar>(orbit: &OrbitRecord<S>, i: u64) -> Result<S> {
    orbit
        .point_at(i as usize)
        .cloned()
        .ok_or(Error::UnboundedIndex(i, ORBIT_CAP))
}

/// The support atoms F_{level,k}, 0 <= k <= g_level, built from the orbit.
fn support_atoms<S: Scalar>(orbit: &OrbitRecord<S>, level: u32) -> Result<Vec<OrbitInterval<S>>> {
    let (l1, l2, g) = lengths_u64(level)?;
    let mut atoms = Vec::with_capacity(g as usize + 1);
    for k in 0..g {
        let (lo_i, hi_i) = if k % 2 == 0 { (l1 + k, k) } else { (k, l1 + k) };
        atoms.push(OrbitInterval {
            kind: PieceKind::Support,
            m: level,
            k,
            lo: point(orbit, lo_i)?,
            hi: point(orbit, hi_i)?,
            lo_index: Some(lo_i),
            hi_index: Some(hi_i),
            lo_closed: true,
            hi_closed: true,
        });
    }
    // The last atom reaches down to 0, open there; its upper endpoint is the
    // orbit point just before the relevant word length.
    let hi_i = if level % 2 == 0 { l1 - 1 } else { l2 - 1 };
    atoms.push(OrbitInterval {
        kind: PieceKind::Support,
        m: level,
        k: g,
        lo: S::zero(),
        hi: point(orbit, hi_i)?,
        lo_index: None,
        hi_index: Some(hi_i),
        lo_closed: false,
        hi_closed: true,
    });
    Ok(atoms)
}

pub fn build_structure<S: Scalar>(base: &Base<S>) -> Result<GapStructure<S>> {
    let class = classify(base)?;
    let n = class.gamma_band;
    let (l1n, l2n, gn) = lengths_u64(n)?;

    let mut max_index = if n % 2 == 0 { l1n - 1 } else { l2n - 1 };
    if gn > 0 {
        max_index = max_index.max(l1n + gn - 1);
    }
    if n >= 1 {
        // Deepest gap family: G_{n-1,k} uses indices up to |phi^{n-1}(21)| +
        // |phi^{n-1}(1)| - 1, and |phi^m(21)| = |phi^m(2)| + |phi^m(1)|.
        let (l1p, l2p, _) = lengths_u64(n - 1)?;
        max_index = max_index.max(l1p + l2p + l1p - 1);
    }
    if max_index > ORBIT_CAP {
        return Err(Error::UnboundedIndex(max_index, ORBIT_CAP));
    }

    let orbit = base.orbit_neg(max_index as usize)?;

    let mut gaps = Vec::with_capacity(gn as usize);
    for m in 0..n {
        let (l1m, l2m, _) = lengths_u64(m)?;
        let l21m = l1m + l2m;
        for k in 0..l1m {
            let (lo_i, hi_i) = if k % 2 == 0 { (l21m + k, l2m + k) } else { (l2m + k, l21m + k) };
            gaps.push(OrbitInterval {
                kind: PieceKind::Gap,
                m,
                k,
                lo: point(&orbit, lo_i)?,
                hi: point(&orbit, hi_i)?,
                lo_index: Some(lo_i),
                hi_index: Some(hi_i),
                lo_closed: false,
                hi_closed: false,
            });
        }
    }

    let supports = support_atoms(&orbit, n)?;
    let structure = GapStructure { base: base.clone(), orbit, band: n, gaps, supports };
    structure.validate()?;
    Ok(structure)
}

impl<S: Scalar> GapStructure<S> {
    pub fn base(&self) -> &Base<S> {
        &self.base
    }

    pub fn gap_count(&self) -> usize {
        self.gaps.len()
    }

    /// The gap G_{m,k}; families are stored m-major and family m has
    /// |phi^m(1)| entries, whose running total is g_m.
    pub fn gap_at(&self, m: u32, k: u64) -> Option<&OrbitInterval<S>> {
        let mut offset = 0u64;
        for j in 0..m {
            let (l1j, _, _) = lengths_u64(j).ok()?;
            offset += l1j;
        }
        let idx = usize::try_from(offset + k).ok()?;
        let piece = self.gaps.get(idx)?;
        (piece.m == m && piece.k == k).then_some(piece)
    }

    pub fn gap_set(&self) -> Result<IntervalSet<S>> {
        IntervalSet::new(self.gaps.iter().map(|p| (p.lo.clone(), p.hi.clone())).collect())
    }

    pub fn support_set(&self) -> Result<IntervalSet<S>> {
        IntervalSet::new(self.supports.iter().map(|p| (p.lo.clone(), p.hi.clone())).collect())
    }

    /// Positive lengths always; for exact scalars additionally the full
    /// partition statement: the pieces tile (0, 1] with matching endpoint
    /// values and complementary open/closed flags at every junction.
    fn validate(&self) -> Result<()> {
        for piece in self.gaps.iter().chain(&self.supports) {
            if piece.length().checked_sign()? <= 0 {
                return Err(Error::DegenerateInterval(piece.label()));
            }
        }
        if !S::EXACT {
            return Ok(());
        }
        let mut pieces: Vec<&OrbitInterval<S>> = self.gaps.iter().chain(&self.supports).collect();
        pieces.sort_unstable_by(|a, b| {
            a.lo.partial_cmp(&b.lo).expect("exact endpoints are comparable")
        });
        let first = pieces.first().expect("at least one support atom");
        if first.lo.checked_sign()? != 0 || first.lo_closed {
            return Err(Error::PartitionBreak(format!("{} does not start open at 0", first.label())));
        }
        let last = pieces.last().expect("at least one support atom");
        if (last.hi.clone() - S::one()).checked_sign()? != 0 || !last.hi_closed {
            return Err(Error::PartitionBreak(format!("{} does not end closed at 1", last.label())));
        }
        for pair in pieces.windows(2) {
            let (cur, next) = (pair[0], pair[1]);
            if cur.hi.cmp_checked(&next.lo)? != std::cmp::Ordering::Equal
                || cur.hi_closed == next.lo_closed
            {
                return Err(Error::PartitionBreak(format!(
                    "junction between {} and {}",
                    cur.label(),
                    next.label()
                )));
            }
        }
        Ok(())
    }

    /// Check the refinement F_{n-1,k} = F_{n,|phi^{n-1}(1)|+k} u G_{n-1,k}
    /// u F_{n,k} for every admissible k. Band 0 has nothing to refine and
    /// returns an empty list.
    pub fn split_refinement(&self) -> Result<Vec<(u64, bool)>> {
        if self.band == 0 {
            return Ok(Vec::new());
        }
        let parent_level = self.band - 1;
        let parents = support_atoms(&self.orbit, parent_level)?;
        let (l1p, _, _) = lengths_u64(parent_level)?;
        let mut checks = Vec::with_capacity(l1p as usize);
        for k in 0..l1p {
            let parent = parents[k as usize].as_set()?;
            let left = self.supports[(l1p + k) as usize].as_set()?;
            let gap = self
                .gap_at(parent_level, k)
                .ok_or(Error::UnboundedIndex(k, l1p))?
                .as_set()?;
            let right = self.supports[k as usize].as_set()?;
            let union = left.union(&gap)?.union(&right)?;
            checks.push((k, union.equal(&parent)?));
        }
        Ok(checks)
    }

    /// The invariance statements: T(union F) = union F, every preimage
    /// branch of every gap lands inside the gap union, and T advances each
    /// gap family stepwise, T(G_{m,k-1}) = G_{m,k}.
    pub fn invariance_check(&self) -> Result<InvarianceReport> {
        let support = self.support_set()?;
        let gaps = self.gap_set()?;
        let support_forward = support.forward_image(&self.base)?.equal(&support)?;
        let gap_backward = gaps.preimage(&self.base)?.subset_of(&gaps)?;
        let mut gap_step = true;
        for m in 0..self.band {
            let (l1m, _, _) = lengths_u64(m)?;
            for k in 1..l1m {
                let prev = self.gap_at(m, k - 1).ok_or(Error::UnboundedIndex(k, l1m))?;
                let here = self.gap_at(m, k).ok_or(Error::UnboundedIndex(k, l1m))?;
                if !prev.as_set()?.forward_image(&self.base)?.equal(&here.as_set()?)? {
                    gap_step = false;
                }
            }
        }
        Ok(InvarianceReport { support_forward, gap_backward, gap_step })
    }

    /// lambda(T^-k(gap union)) for k = 0..=k_max by exact branch preimage
    /// enumeration. The sequence tends to 0; jumps can only shrink it since
    /// each preimage loses the branch overhang past 1.
    pub fn preimage_decay(&self, k_max: usize) -> Result<Vec<S>> {
        let mut cur = self.gap_set()?;
        let mut out = Vec::with_capacity(k_max + 1);
        out.push(cur.total_length());
        for _ in 1..=k_max {
            cur = cur.preimage(&self.base)?;
            if cur.piece_count() > PIECE_CAP {
                return Err(Error::ExplosionGuard(cur.piece_count(), PIECE_CAP));
            }
            out.push(cur.total_length());
        }
        Ok(out)
    }

    /// Iterate a positive-length seed forward until its image covers the
    /// support up to finitely many points; returns the number of steps.
    pub fn coverage_probe(&self, seed: &OrbitInterval<S>) -> Result<usize> {
        if seed.length().checked_sign()? <= 0 {
            return Err(Error::DegenerateInterval(seed.label()));
        }
        let support = self.support_set()?;
        let mut cur = seed.as_set()?;
        if !cur.subset_of(&support)? {
            return Err(Error::OutOfDomain(format!("seed ({}, {})", seed.lo, seed.hi)));
        }
        let gn = self.gaps.len();
        let budget = (10 * gn * (2 * gn + 1)).max(COVERAGE_FLOOR);
        for step in 0..=budget {
            if support.difference(&cur)?.is_empty() {
                return Ok(step);
            }
            cur = cur.forward_image(&self.base)?.intersect(&support)?;
        }
        Err(Error::NoCoverage(budget))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct InvarianceReport {
    pub support_forward: bool,
    pub gap_backward: bool,
    pub gap_step: bool,
}

impl InvarianceReport {
    pub fn all(&self) -> bool {
        self.support_forward && self.gap_backward && self.gap_step
    }
}

impl<S: Scalar> Serialize for GapStructure<S> {
    fn serialize<Ser: Serializer>(&self, serializer: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        let mut st = serializer.serialize_struct("GapStructure", 5)?;
        st.serialize_field("beta", &self.base.beta().to_string())?;
        st.serialize_field("band", &self.band)?;
        st.serialize_field("gap_count", &self.gaps.len())?;
        st.serialize_field("gaps", &self.gaps)?;
        st.serialize_field("supports", &self.supports)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::parse_rational;
    use crate::scalar::GuardedF64;
    use num_rational::BigRational;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    fn structure(beta: &str) -> GapStructure<BigRational> {
        build_structure(&Base::new(q(beta)).unwrap()).unwrap()
    }

    #[test]
    fn five_fourths_gaps_match_known_values() {
        let s = structure("5/4");
        assert_eq!(s.band, 2);
        assert_eq!(s.gap_count(), 2);
        let g00 = s.gap_at(0, 0).unwrap();
        assert_eq!((g00.lo.clone(), g00.hi.clone()), (q("1/16"), q("3/4")));
        assert_eq!((g00.lo_index, g00.hi_index), (Some(2), Some(1)));
        let g10 = s.gap_at(1, 0).unwrap();
        assert_eq!((g10.lo.clone(), g10.hi.clone()), (q("217/256"), q("59/64")));
        assert_eq!((g10.lo_index, g10.hi_index), (Some(4), Some(3)));
        // Support atoms: [59/64, 1], [3/4, 217/256], (0, 1/16].
        let f: Vec<_> = s.supports.iter().map(|p| (p.lo.clone(), p.hi.clone())).collect();
        assert_eq!(
            f,
            vec![
                (q("59/64"), q("1")),
                (q("3/4"), q("217/256")),
                (q("0"), q("1/16")),
            ]
        );
        assert!(!s.supports[2].lo_closed && s.supports[2].hi_closed);
        assert_eq!(s.supports[2].lo_index, None);
        assert_eq!(s.gap_set().unwrap().total_length(), q("11/16") + q("19/256"));
    }

    #[test]
    fn three_halves_band_one_single_gap() {
        let s = structure("3/2");
        assert_eq!(s.band, 1);
        assert_eq!(s.gap_count(), 1);
        let g = s.gap_at(0, 0).unwrap();
        assert_eq!((g.lo.clone(), g.hi.clone()), (q("1/4"), q("1/2")));
        let f: Vec<_> = s.supports.iter().map(|p| (p.lo.clone(), p.hi.clone())).collect();
        assert_eq!(f, vec![(q("1/2"), q("1")), (q("0"), q("1/4"))]);
    }

    #[test]
    fn large_beta_has_no_gaps() {
        // Both are above the golden ratio, hence band 0: support is all of
        // (0, 1].
        for beta in ["17/10", "19/10"] {
            let s = structure(beta);
            assert_eq!(s.band, 0, "beta = {beta}");
            assert!(s.gaps.is_empty());
            assert_eq!(s.supports.len(), 1);
            assert!(s.support_set().unwrap().equal(&IntervalSet::unit()).unwrap());
        }
    }

    #[test]
    fn nine_eighths_band_three_structure() {
        let s = structure("9/8");
        assert_eq!(s.band, 3);
        assert_eq!(s.gap_count(), 5);
        let labels: Vec<_> = s.gaps.iter().map(|p| (p.m, p.k)).collect();
        assert_eq!(labels, vec![(0, 0), (1, 0), (2, 0), (2, 1), (2, 2)]);
        // Deepest gap G_{2,2} = (T^10(1), T^7(1)).
        let g22 = s.gap_at(2, 2).unwrap();
        assert_eq!((g22.lo_index, g22.hi_index), (Some(10), Some(7)));
        assert_eq!(g22.lo, q("5702977/1073741824"));
        assert_eq!(g22.hi, q("15191/2097152"));
        // Eleven pieces tile (0,1]; total gap length + support length = 1.
        let total = s.gap_set().unwrap().total_length() + s.support_set().unwrap().total_length();
        assert_eq!(total, q("1"));
    }

    #[test]
    fn split_refinement_five_fourths() {
        let s = structure("5/4");
        assert_eq!(s.split_refinement().unwrap(), vec![(0, true)]);
    }

    #[test]
    fn split_refinement_nine_eighths() {
        let s = structure("9/8");
        assert_eq!(s.split_refinement().unwrap(), vec![(0, true), (1, true), (2, true)]);
    }

    #[test]
    fn invariance_holds_at_sample_betas() {
        for beta in ["5/4", "9/8", "3/2", "19/10"] {
            let report = structure(beta).invariance_check().unwrap();
            assert!(report.all(), "beta = {beta}: {report:?}");
        }
    }

    #[test]
    fn preimage_decay_five_fourths() {
        let s = structure("5/4");
        let seq = s.preimage_decay(12).unwrap();
        assert_eq!(seq[0], q("11/16") + q("19/256"));
        // The tail decreases and ends well below the starting mass.
        for w in seq[2..].windows(2) {
            assert!(w[1] <= w[0]);
        }
        assert!(*seq.last().unwrap() < q("1/4"));
    }

    #[test]
    fn preimage_decay_gapless_is_zero() {
        let s = structure("19/10");
        let seq = s.preimage_decay(5).unwrap();
        assert!(seq.iter().all(|x| *x == q("0")));
    }

    #[test]
    fn coverage_probe_five_fourths_middle_third() {
        let s = structure("5/4");
        // Middle third of F_{2,0} = [59/64, 1].
        let seed = OrbitInterval::probe(q("91/96"), q("187/192")).unwrap();
        let steps = s.coverage_probe(&seed).unwrap();
        assert!(steps > 0 && steps <= 100, "steps = {steps}");
    }

    #[test]
    fn coverage_probe_full_atom_within_band_bound() {
        let s = structure("5/4");
        let seed = s.supports[0].clone();
        let steps = s.coverage_probe(&seed).unwrap();
        // g_n (2 g_n + (-1)^n) + g_n with g_2 = 2 gives 12.
        assert!(steps <= 12, "steps = {steps}");
    }

    #[test]
    fn coverage_probe_band_zero_thin_seed() {
        let s = structure("19/10");
        let seed = OrbitInterval::probe(q("2/5"), q("401/1000")).unwrap();
        let steps = s.coverage_probe(&seed).unwrap();
        assert!(steps <= 60, "steps = {steps}");
    }

    #[test]
    fn coverage_probe_rejects_seed_in_gap() {
        let s = structure("5/4");
        let seed = OrbitInterval::probe(q("1/8"), q("1/4")).unwrap();
        assert!(matches!(s.coverage_probe(&seed), Err(Error::OutOfDomain(_))));
    }

    #[test]
    fn endpoint_ordering_chain() {
        // T^{|phi^{n-1}(1)|}(1) < T^{|phi^{n-1}(21)|}(1) < T^{|phi^{n-1}(2)|}(1)
        // < T^{|phi^n(2)|}(1) < 1 at the classified band.
        for beta in ["5/4", "9/8"] {
            let base = Base::new(q(beta)).unwrap();
            let s = build_structure(&base).unwrap();
            let n = s.band;
            let (l1p, l2p, _) = lengths_u64(n - 1).unwrap();
            let (_, l2n, _) = lengths_u64(n).unwrap();
            let orbit = base.orbit_neg(l2n as usize).unwrap();
            let t = |i: u64| point(&orbit, i).unwrap();
            assert!(t(l1p) < t(l1p + l2p), "beta = {beta}");
            assert!(t(l1p + l2p) < t(l2p), "beta = {beta}");
            assert!(t(l2p) < t(l2n), "beta = {beta}");
            assert!(t(l2n) < q("1"), "beta = {beta}");
        }
    }

    #[test]
    fn image_of_final_atom_is_first_atom() {
        // Even band: T(F_{n,g_n}) = F_{n,0} minus the point 1.
        let s = structure("5/4");
        let last = s.supports.last().unwrap().as_set().unwrap();
        let image = last.forward_image(s.base()).unwrap();
        assert!(image.equal(&s.supports[0].as_set().unwrap()).unwrap());

        // Odd band: T(F_{n,g_n}) = F_{n+1,0} minus the point 1, one band up.
        let s = structure("9/8");
        let base = s.base().clone();
        let last = s.supports.last().unwrap().as_set().unwrap();
        let image = last.forward_image(&base).unwrap();
        let orbit = base.orbit_neg(11).unwrap();
        let f40 = IntervalSet::interval(point(&orbit, 11).unwrap(), q("1")).unwrap();
        assert!(image.equal(&f40).unwrap());
    }

    #[test]
    fn reciprocal_interior_to_penultimate_atom() {
        for beta in ["5/4", "9/8", "3/2"] {
            let s = structure(beta);
            let recip = q("1") / q(beta);
            let atom = &s.supports[s.gap_count() - 1];
            assert_eq!(atom.k as usize, s.gap_count() - 1);
            assert!(atom.lo < recip && recip < atom.hi, "beta = {beta}");
        }
    }

    #[test]
    fn guarded_backend_matches_exact_endpoints() {
        let base = Base::new(GuardedF64::exact(1.25)).unwrap();
        let s = build_structure(&base).unwrap();
        assert_eq!(s.band, 2);
        assert_eq!(s.gap_count(), 2);
        let g00 = s.gap_at(0, 0).unwrap();
        assert!((g00.lo.to_f64() - 0.0625).abs() < 1e-12);
        assert!((g00.hi.to_f64() - 0.75).abs() < 1e-12);
    }

    #[test]
    fn field_element_on_band_boundary() {
        // beta = gamma_3 (root of x^6 - x - 1) sits exactly on the left edge
        // of band 2: the band is closed there and both gaps stay open.
        use crate::field::NumberField;
        use crate::poly::RatPoly;
        let f = NumberField::new(
            RatPoly::from_integers(&[-1, -1, 0, 0, 0, 0, 1]),
            q("9/8"),
            q("6/5"),
        )
        .unwrap();
        let base = Base::new(f.beta()).unwrap();
        let s = build_structure(&base).unwrap();
        assert_eq!(s.band, 2);
        assert_eq!(s.gap_count(), 2);
        assert!(s.invariance_check().unwrap().all());
    }

    #[test]
    fn serialization_shape() {
        let s = structure("3/2");
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(v["band"], 1);
        assert_eq!(v["gap_count"], 1);
        assert_eq!(v["gaps"][0]["kind"], "G");
        assert_eq!(v["gaps"][0]["lo"], "1/4");
        assert_eq!(v["gaps"][0]["lo_orbit_index"], 2);
        assert_eq!(v["supports"][1]["lo_orbit_index"], serde_json::Value::Null);
        assert_eq!(v["supports"][1]["lo_closed"], false);
    }
}
