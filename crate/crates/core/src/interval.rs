//! Finite unions of subintervals of (0, 1], with exact set algebra and
//! forward/backward images under the negative beta map.
//!
//! Everything here is measure-theoretic: intervals are stored as ordered
//! pairs, normalization merges pieces that overlap or touch, and equality or
//! inclusion means equality or inclusion up to finitely many points. That is
//! the right granularity for gap/support bookkeeping, where all the
//! statements hold up to orbit points of 1; endpoint open/closed flags live
//! with the callers that need them.

use crate::error::{Error, Result};
use crate::map::Base;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct IntervalSet<S: Scalar> {
    parts: Vec<(S, S)>,
}

impl<S: Scalar> IntervalSet<S> {
    pub fn empty() -> Self {
        IntervalSet { parts: Vec::new() }
    }

    /// The whole domain (0, 1].
    pub fn unit() -> Self {
        IntervalSet { parts: vec![(S::zero(), S::one())] }
    }

    pub fn interval(lo: S, hi: S) -> Result<Self> {
        Self::new(vec![(lo, hi)])
    }

    /// Normalize: drop empty pieces, sort, merge overlapping or touching ones.
    pub fn new(parts: Vec<(S, S)>) -> Result<Self> {
        let mut kept = Vec::with_capacity(parts.len());
        for (lo, hi) in parts {
            if (hi.clone() - lo.clone()).checked_sign()? > 0 {
                kept.push((lo, hi));
            }
        }
        kept.sort_unstable_by(|a, b| {
            a.0.partial_cmp(&b.0).expect("interval endpoints must be comparable")
        });
        let mut merged: Vec<(S, S)> = Vec::with_capacity(kept.len());
        for (lo, hi) in kept {
            if let Some(last) = merged.last_mut() {
                if lo.cmp_checked(&last.1)? != std::cmp::Ordering::Greater {
                    if hi.cmp_checked(&last.1)? == std::cmp::Ordering::Greater {
                        last.1 = hi;
                    }
                    continue;
                }
            }
            merged.push((lo, hi));
        }
        Ok(IntervalSet { parts: merged })
    }

    pub fn parts(&self) -> &[(S, S)] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn piece_count(&self) -> usize {
        self.parts.len()
    }

    pub fn total_length(&self) -> S {
        let mut acc = S::zero();
        for (lo, hi) in &self.parts {
            acc = acc + (hi.clone() - lo.clone());
        }
        acc
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        let mut parts = self.parts.clone();
        parts.extend(other.parts.iter().cloned());
        Self::new(parts)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.parts.len() && j < other.parts.len() {
            let (alo, ahi) = &self.parts[i];
            let (blo, bhi) = &other.parts[j];
            let lo = if alo.cmp_checked(blo)? == std::cmp::Ordering::Less { blo } else { alo };
            let hi = if ahi.cmp_checked(bhi)? == std::cmp::Ordering::Less { ahi } else { bhi };
            if (hi.clone() - lo.clone()).checked_sign()? > 0 {
                out.push((lo.clone(), hi.clone()));
            }
            if ahi.cmp_checked(bhi)? == std::cmp::Ordering::Less {
                i += 1;
            } else {
                j += 1;
            }
        }
        Self::new(out)
    }

    /// self minus other, up to points.
    pub fn difference(&self, other: &Self) -> Result<Self> {
        let mut out = Vec::new();
        for (lo, hi) in &self.parts {
            let mut cursor = lo.clone();
            for (blo, bhi) in &other.parts {
                if bhi.cmp_checked(&cursor)? != std::cmp::Ordering::Greater {
                    continue;
                }
                if blo.cmp_checked(hi)? != std::cmp::Ordering::Less {
                    break;
                }
                if blo.cmp_checked(&cursor)? == std::cmp::Ordering::Greater {
                    out.push((cursor.clone(), blo.clone()));
                }
                if bhi.cmp_checked(hi)? != std::cmp::Ordering::Less {
                    cursor = hi.clone();
                    break;
                }
                cursor = bhi.clone();
            }
            if cursor.cmp_checked(hi)? == std::cmp::Ordering::Less {
                out.push((cursor, hi.clone()));
            }
        }
        Self::new(out)
    }

    pub fn subset_of(&self, other: &Self) -> Result<bool> {
        Ok(self.difference(other)?.is_empty())
    }

    pub fn equal(&self, other: &Self) -> Result<bool> {
        Ok(self.difference(other)?.is_empty() && other.difference(self)?.is_empty())
    }

    pub fn contains_point(&self, x: &S) -> Result<bool> {
        for (lo, hi) in &self.parts {
            if x.cmp_checked(lo)? != std::cmp::Ordering::Less
                && x.cmp_checked(hi)? != std::cmp::Ordering::Greater
            {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Image under one application of the map: each piece is split at the
    /// branch cuts j/beta and every monotone piece maps to an interval.
    pub fn forward_image(&self, base: &Base<S>) -> Result<Self> {
        let beta = base.beta();
        let mut out = Vec::new();
        for (lo, hi) in &self.parts {
            let blo = beta.clone() * lo.clone();
            let bhi = beta.clone() * hi.clone();
            let flo = to_i64(&blo.checked_floor()?)?;
            let mut fhi = to_i64(&bhi.checked_floor()?)?;
            // When beta*hi is an integer the cut at hi itself is not interior.
            if (bhi.clone() - S::from_int(fhi)).checked_sign()? == 0 {
                fhi -= 1;
            }
            let mut boundaries = vec![lo.clone()];
            for j in (flo + 1)..=fhi {
                boundaries.push(S::from_int(j) / beta.clone());
            }
            boundaries.push(hi.clone());
            for pair in boundaries.windows(2) {
                let (u, v) = (&pair[0], &pair[1]);
                let digit = to_i64(&(beta.clone() * u.clone()).checked_floor()?)? + 1;
                let d = S::from_int(digit);
                out.push((d.clone() - beta.clone() * v.clone(), d - beta.clone() * u.clone()));
            }
        }
        Self::new(out)
    }

    /// Preimage under one application of the map, branch by branch.
    pub fn preimage(&self, base: &Base<S>) -> Result<Self> {
        let beta = base.beta();
        let top = to_i64(&beta.checked_floor()?)?;
        let mut out = Vec::new();
        for (c, d) in &self.parts {
            for j in 0..=top {
                let digit = S::from_int(j + 1);
                let cand_lo = (digit.clone() - d.clone()) / beta.clone();
                let cand_hi = (digit.clone() - c.clone()) / beta.clone();
                let branch_lo = S::from_int(j) / beta.clone();
                let branch_hi = {
                    let cut = digit / beta.clone();
                    if cut.cmp_checked(&S::one())? == std::cmp::Ordering::Greater {
                        S::one()
                    } else {
                        cut
                    }
                };
                let lo = if cand_lo.cmp_checked(&branch_lo)? == std::cmp::Ordering::Less {
                    branch_lo
                } else {
                    cand_lo
                };
                let hi = if cand_hi.cmp_checked(&branch_hi)? == std::cmp::Ordering::Greater {
                    branch_hi
                } else {
                    cand_hi
                };
                if (hi.clone() - lo.clone()).checked_sign()? > 0 {
                    out.push((lo, hi));
                }
            }
        }
        Self::new(out)
    }
}

fn to_i64(x: &num_bigint::BigInt) -> Result<i64> {
    use num_traits::ToPrimitive;
    x.to_i64().ok_or(Error::UnboundedIndex(u64::MAX, i64::MAX as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::parse_rational;
    use num_rational::BigRational;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    fn set(pairs: &[(&str, &str)]) -> IntervalSet<BigRational> {
        IntervalSet::new(pairs.iter().map(|(a, b)| (q(a), q(b))).collect()).unwrap()
    }

    #[test]
    fn normalization_merges_touching_and_overlapping() {
        let s = set(&[("1/2", "3/4"), ("1/4", "1/2"), ("7/8", "1"), ("0", "1/8")]);
        assert_eq!(s.piece_count(), 3);
        assert_eq!(s.total_length(), q("3/4"));
    }

    #[test]
    fn set_algebra_basics() {
        let a = set(&[("0", "1/2")]);
        let b = set(&[("1/4", "3/4")]);
        assert_eq!(a.intersect(&b).unwrap(), set(&[("1/4", "1/2")]));
        assert_eq!(a.union(&b).unwrap(), set(&[("0", "3/4")]));
        assert_eq!(a.difference(&b).unwrap(), set(&[("0", "1/4")]));
        assert_eq!(b.difference(&a).unwrap(), set(&[("1/2", "3/4")]));
        assert!(set(&[("1/8", "1/4")]).subset_of(&a).unwrap());
        assert!(!a.subset_of(&b).unwrap());
    }

    #[test]
    fn difference_carves_holes() {
        let a = set(&[("0", "1")]);
        let b = set(&[("1/4", "1/2"), ("5/8", "3/4")]);
        let d = a.difference(&b).unwrap();
        assert_eq!(d, set(&[("0", "1/4"), ("1/2", "5/8"), ("3/4", "1")]));
        assert!(d.union(&b).unwrap().equal(&a).unwrap());
    }

    #[test]
    fn forward_image_splits_at_branch_cut() {
        // beta = 3/2: cut at 2/3. The piece (1/2, 5/6) straddles it.
        let base = Base::new(q("3/2")).unwrap();
        let s = set(&[("1/2", "5/6")]);
        let img = s.forward_image(&base).unwrap();
        // (1/2, 2/3) maps (digit 1) to (0, 1/4); (2/3, 5/6) maps (digit 2) to (3/4, 1).
        assert_eq!(img, set(&[("0", "1/4"), ("3/4", "1")]));
    }

    #[test]
    fn whole_interval_maps_onto_itself() {
        for beta in ["3/2", "5/4", "9/8", "2", "7/3"] {
            let base = Base::new(q(beta)).unwrap();
            let unit = IntervalSet::unit();
            assert!(unit.forward_image(&base).unwrap().equal(&unit).unwrap(), "beta = {beta}");
            assert!(unit.preimage(&base).unwrap().equal(&unit).unwrap(), "beta = {beta}");
        }
    }

    #[test]
    fn preimage_then_image_recovers_within_set() {
        let base = Base::new(q("5/4")).unwrap();
        let s = set(&[("1/16", "3/4")]);
        let pre = s.preimage(&base).unwrap();
        let back = pre.forward_image(&base).unwrap();
        assert!(back.subset_of(&s).unwrap());
        // Each of the two branches contributes at most lambda(s)/beta.
        let cap = s.total_length() / q("5/4") * q("2");
        assert!(pre.total_length() <= cap);
    }

    #[test]
    fn image_of_top_branch_endpoint() {
        // For beta = 5/4 the top branch is [4/5, 1] with digit 2, so its
        // image is (2 - beta, 2 - beta * 4/5) = (3/4, 1).
        let base = Base::new(q("5/4")).unwrap();
        let s = set(&[("4/5", "1")]);
        let img = s.forward_image(&base).unwrap();
        assert_eq!(img, set(&[("3/4", "1")]));
    }
}
