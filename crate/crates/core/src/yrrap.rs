//! Yrrap/Parry classification and the Perron transition matrix.
//!
//! beta is a Parry number when the orbit of 1 under the positive map is
//! finite or eventually periodic, and an Yrrap number when the orbit under
//! the negative map is eventually periodic. The two classes overlap (every
//! Pisot number is in both) but neither contains the other; the witnesses
//! are the quartic root of x^4 = x + 1 (Yrrap, not Parry) and the root of
//! x^7 = x^6 + 1 (Parry, not Yrrap).
//!
//! Periodicity is decided positively by exact orbit hashing. Aperiodicity
//! cannot be decided by search, so it is certified: pick a conjugate alpha
//! of beta with |alpha| > 1; each map step multiplies the conjugate orbit
//! value by alpha and shifts it by at most the digit span, so
//!
//! ```text
//! |sigma(x_{n+1})| >= |alpha| |sigma(x_n)| - floor(beta)
//! ```
//!
//! and once some |sigma(x_n)| clears floor(beta)/(|alpha| - 1) the sequence
//! grows strictly forever, which an eventually periodic orbit cannot do. On
//! the negative side the shift bound holds for the conjugated points
//! phi(x) = 1/(beta+1) - x. All inequalities are checked on certified
//! rational enclosures, so a returned certificate is a proof.
//!
//! For an Yrrap number the orbit closure V = {T^n(1)} cuts the support into
//! finitely many intervals, and the transition matrix counting how often
//! atom J_y appears in T(J_x) has the exact length vector as a positive
//! eigenvector with eigenvalue beta. Primitivity of that matrix is what
//! makes beta a Perron number.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::complex::Embedding;
use crate::error::{Error, Result};
use crate::field::{FieldElement, NumberField};
use crate::gaps::build_structure;
use crate::map::Base;
use crate::rational::rational_to_f64;
use crate::scalar::Scalar;

/// Orbit budget for [`build_matrix`], which must see the orbit close.
const MATRIX_ORBIT_CAP: usize = 10_000;

/// Minimal (preperiod, period) of the orbit of 1 under the negative map, or
/// None if it does not close within max_steps.
pub fn yrrap_check(field: &Arc<NumberField>, max_steps: usize) -> Result<Option<(usize, usize)>> {
    let base = Base::new(field.beta())?;
    Ok(base.orbit_neg(max_steps)?.period)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ParryOutcome {
    /// T+^n(1) = 0: the expansion of 1 terminates after n digits.
    Finite(usize),
    Periodic { preperiod: usize, period: usize },
}

/// Classification of the positive (Parry) orbit of 1: finite, eventually
/// periodic, or unresolved within max_steps (None).
pub fn parry_check(field: &Arc<NumberField>, max_steps: usize) -> Result<Option<ParryOutcome>> {
    let base = Base::new(field.beta())?;
    let orbit = base.orbit_pos(max_steps)?;
    for (n, point) in orbit.points.iter().enumerate() {
        if point.checked_sign()? == 0 {
            return Ok(Some(ParryOutcome::Finite(n)));
        }
    }
    Ok(orbit
        .period
        .map(|(p, q)| ParryOutcome::Periodic { preperiod: p, period: q }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    #[serde(rename = "pos")]
    Positive,
    #[serde(rename = "neg")]
    Negative,
}

/// A validated witness that an orbit of 1 is aperiodic: at `step`, the
/// certified lower bound on the conjugate modulus strictly clears the
/// growth threshold, after which the moduli increase forever.
#[derive(Debug, Clone)]
pub struct GrowthCertificate {
    pub side: Side,
    pub step: usize,
    /// Certified lower bound on |sigma(orbit point)| at `step` (the point is
    /// phi-conjugated on the negative side).
    pub bound: BigRational,
    /// Certified upper bound on floor(beta)/(|alpha| - 1); `bound` exceeds it.
    pub threshold: BigRational,
}

impl Serialize for GrowthCertificate {
    fn serialize<Ser: Serializer>(&self, serializer: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        let mut st = serializer.serialize_struct("GrowthCertificate", 6)?;
        st.serialize_field("side", &self.side)?;
        st.serialize_field("n", &self.step)?;
        st.serialize_field("bound", &self.bound.to_string())?;
        st.serialize_field("bound_approx", &rational_to_f64(&self.bound))?;
        st.serialize_field("threshold", &self.threshold.to_string())?;
        st.serialize_field("threshold_approx", &rational_to_f64(&self.threshold))?;
        st.end()
    }
}

/// Search the first burn_in orbit points for a certified growth witness at
/// the given conjugate embedding. Requires |alpha| > 1 (certified), else
/// NotExpanding; exhausting the budget is inconclusive (NoCertificate).
pub fn aperiodicity_certificate(
    field: &Arc<NumberField>,
    side: Side,
    embedding: &Embedding,
    burn_in: usize,
) -> Result<GrowthCertificate> {
    let tol = BigRational::new(BigInt::one(), BigInt::one() << 40);
    let alpha = embedding.abs_interval(&field.beta(), &tol)?;
    if alpha.0 <= BigRational::one() {
        return Err(Error::NotExpanding);
    }
    // Largest possible shift of the conjugate value in one step: the digit
    // span floor(beta) (positive map subtracts d <= floor(beta); the
    // phi-conjugated negative map shifts by 1 - d with d <= floor(beta)+1).
    let shift = BigRational::from_integer(field.beta().floor());
    let threshold = &shift / (&alpha.0 - BigRational::one());
    let base = Base::new(field.beta())?;
    let orbit = match side {
        Side::Positive => base.orbit_pos(burn_in)?,
        Side::Negative => base.orbit_neg(burn_in)?,
    };
    for n in 1..=burn_in {
        let Some(point) = orbit.point_at(n) else { break };
        let value = match side {
            Side::Positive => point.clone(),
            Side::Negative => base.conjugate(point),
        };
        let modulus = embedding.abs_interval(&value, &tol)?;
        if modulus.0 > threshold {
            return Ok(GrowthCertificate { side, step: n, bound: modulus.0, threshold });
        }
    }
    Err(Error::NoCertificate(burn_in))
}

/// One interval of the orbit partition: J_x = (lo, x) where lo is the
/// predecessor of x in V union {0}.
#[derive(Debug, Clone)]
pub struct PartitionAtom {
    pub x: FieldElement,
    pub lo: FieldElement,
    pub length: FieldElement,
}

/// The nonnegative integer matrix m_{x,y} = number of copies of J_y inside
/// T(J_x), over the atoms of V' (orbit values that are not right endpoints
/// of gaps), ordered by increasing right endpoint.
#[derive(Debug, Clone)]
pub struct TransitionMatrix {
    pub atoms: Vec<PartitionAtom>,
    pub entries: Vec<Vec<u32>>,
    field: Arc<NumberField>,
}

impl TransitionMatrix {
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.atoms.len()
    }
}

impl Serialize for TransitionMatrix {
    fn serialize<Ser: Serializer>(&self, serializer: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        #[derive(Serialize)]
        struct AtomRepr {
            x: String,
            x_approx: f64,
            lo: String,
            lo_approx: f64,
            length: String,
        }
        let atoms: Vec<AtomRepr> = self
            .atoms
            .iter()
            .map(|a| AtomRepr {
                x: a.x.to_string(),
                x_approx: a.x.to_f64(),
                lo: a.lo.to_string(),
                lo_approx: a.lo.to_f64(),
                length: a.length.to_string(),
            })
            .collect();
        let mut st = serializer.serialize_struct("TransitionMatrix", 2)?;
        st.serialize_field("atoms", &atoms)?;
        st.serialize_field("entries", &self.entries)?;
        st.end()
    }
}

/// Build the transition matrix for an Yrrap field: the exact orbit closure
/// V, gap right endpoints removed, atoms between consecutive boundary
/// values, and branch-image containment counts. Every branch image must
/// begin and end on boundary values and cover only support atoms; anything
/// else is reported as AtomImageMisaligned.
pub fn build_matrix(field: &Arc<NumberField>) -> Result<TransitionMatrix> {
    let base = Base::new(field.beta())?;
    let orbit = base.orbit_neg(MATRIX_ORBIT_CAP)?;
    let Some((p, q)) = orbit.period else {
        return Err(Error::OutOfDomain(format!(
            "orbit of 1 does not close within {MATRIX_ORBIT_CAP} steps; the partition needs an eventually periodic expansion"
        )));
    };
    let values: Vec<FieldElement> = orbit.points[..p + q].to_vec();

    let structure = build_structure(&base)?;
    let gap_right: Vec<FieldElement> = structure.gaps.iter().map(|g| g.hi.clone()).collect();

    // Boundary list: 0 and all of V, ascending. Cell i is (b[i-1], b[i]);
    // it is an atom unless its right endpoint closes a gap.
    let mut boundaries = vec![FieldElement::integer(0)];
    boundaries.extend(values.iter().cloned());
    boundaries.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());

    let mut atoms = Vec::new();
    let mut cell_atom: Vec<Option<usize>> = vec![None];
    for i in 1..boundaries.len() {
        let x = boundaries[i].clone();
        if gap_right.iter().any(|g| g == &x) {
            cell_atom.push(None);
        } else {
            cell_atom.push(Some(atoms.len()));
            let lo = boundaries[i - 1].clone();
            let length = x.clone().checked_sub(&lo)?;
            atoms.push(PartitionAtom { x, lo, length });
        }
    }

    let beta = field.beta();
    let locate = |v: &FieldElement| -> Result<usize> {
        boundaries
            .iter()
            .position(|b| b.clone().checked_sub(v).map(|d| d.sign() == 0).unwrap_or(false))
            .ok_or_else(|| {
                Error::AtomImageMisaligned(format!("branch image endpoint {v} is not a partition boundary"))
            })
    };

    let dim = atoms.len();
    let mut entries = vec![vec![0u32; dim]; dim];
    for (row, atom) in atoms.iter().enumerate() {
        let blo = beta.clone() * atom.lo.clone();
        let bhi = beta.clone() * atom.x.clone();
        let flo = blo.checked_floor()?.to_i64().unwrap();
        let mut fhi = bhi.checked_floor()?.to_i64().unwrap();
        if (bhi.clone() - FieldElement::integer(fhi)).sign() == 0 {
            fhi -= 1;
        }
        let mut cuts = vec![atom.lo.clone()];
        for j in (flo + 1)..=fhi {
            cuts.push(FieldElement::integer(j) / beta.clone());
        }
        cuts.push(atom.x.clone());
        for piece in cuts.windows(2) {
            let (u, v) = (&piece[0], &piece[1]);
            let d = (beta.clone() * u.clone()).checked_floor()?.to_i64().unwrap() + 1;
            let img_lo = FieldElement::integer(d) - beta.clone() * v.clone();
            let img_hi = FieldElement::integer(d) - beta.clone() * u.clone();
            let ia = locate(&img_lo)?;
            let ib = locate(&img_hi)?;
            for cell in (ia + 1)..=ib {
                match cell_atom[cell] {
                    Some(col) => entries[row][col] += 1,
                    None => {
                        return Err(Error::AtomImageMisaligned(format!(
                            "image of atom {row} covers a gap cell ending at {}",
                            boundaries[cell]
                        )))
                    }
                }
            }
        }
    }
    Ok(TransitionMatrix { atoms, entries, field: Arc::clone(field) })
}

#[derive(Debug, Clone, Serialize)]
pub struct PerronReport {
    pub dim: usize,
    /// Smallest k with all entries of M^k positive.
    pub primitivity_exponent: usize,
    /// Numeric dominant eigenvalue; matches beta to 1e-10.
    pub spectral_radius: f64,
}

/// Verify the Perron structure: the exact eigen-identity
/// sum_y m_{x,y} lambda(J_y) = beta lambda(J_x) in Q(beta) for every row,
/// primitivity within the Wielandt bound (dim-1)^2 + 1, and a numeric
/// power-iteration check that the spectral radius is beta.
pub fn perron_verify(matrix: &TransitionMatrix) -> Result<PerronReport> {
    let dim = matrix.dim();
    let beta = matrix.field.beta();
    for (row, atom) in matrix.atoms.iter().enumerate() {
        if atom.length.sign() <= 0 {
            return Err(Error::EigenMismatch(row));
        }
        let mut acc = FieldElement::integer(0);
        for (col, other) in matrix.atoms.iter().enumerate() {
            let e = i64::from(matrix.entries[row][col]);
            acc = acc + FieldElement::integer(e) * other.length.clone();
        }
        let rhs = beta.clone() * atom.length.clone();
        if acc.checked_sub(&rhs)?.sign() != 0 {
            return Err(Error::EigenMismatch(row));
        }
    }

    let reach: Vec<Vec<bool>> = matrix
        .entries
        .iter()
        .map(|r| r.iter().map(|&e| e > 0).collect())
        .collect();
    let bound = (dim - 1) * (dim - 1) + 1;
    let mut power = reach.clone();
    let mut exponent = None;
    for k in 1..=bound {
        if power.iter().all(|r| r.iter().all(|&b| b)) {
            exponent = Some(k);
            break;
        }
        let mut next = vec![vec![false; dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                if power[i][j] {
                    for (c, flag) in next[i].iter_mut().enumerate() {
                        *flag = *flag || reach[j][c];
                    }
                }
            }
        }
        power = next;
    }
    let Some(exponent) = exponent else {
        return Err(Error::NotPrimitive);
    };

    let m: Vec<Vec<f64>> = matrix
        .entries
        .iter()
        .map(|r| r.iter().map(|&e| e as f64).collect())
        .collect();
    let apply = |v: &[f64]| -> Vec<f64> {
        let mut next = vec![0.0; dim];
        for i in 0..dim {
            for j in 0..dim {
                next[i] += m[i][j] * v[j];
            }
        }
        next
    };
    // Fixed sweep count: sup-based early stopping can trip on transient
    // coincidences of the sup norm long before the vector settles.
    let mut v = vec![1.0; dim];
    for _ in 0..10_000 {
        let next = apply(&v);
        let top = next.iter().cloned().fold(0.0, f64::max);
        v = next.iter().map(|x| x / top).collect();
    }
    let mv = apply(&v);
    let radius = v.iter().zip(&mv).map(|(a, b)| a * b).sum::<f64>()
        / v.iter().map(|a| a * a).sum::<f64>();
    let residual = v
        .iter()
        .zip(&mv)
        .map(|(a, b)| (b - radius * a).abs())
        .fold(0.0, f64::max);
    if residual > 1e-11 * radius || (radius - beta.to_f64()).abs() > 1e-10 {
        return Err(Error::EigenMismatch(usize::MAX));
    }
    Ok(PerronReport { dim, primitivity_exponent: exponent, spectral_radius: radius })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::conjugate_embeddings;
    use crate::poly::{big, RatPoly};

    fn field_of(coeffs: &[i64]) -> Arc<NumberField> {
        NumberField::new(RatPoly::from_integers(coeffs), big(1), big(2)).unwrap()
    }

    fn quartic() -> Arc<NumberField> {
        field_of(&[-1, -1, 0, 0, 1]) // x^4 - x - 1
    }

    fn degree_seven() -> Arc<NumberField> {
        field_of(&[-1, 0, 0, 0, 0, 0, -1, 1]) // x^7 - x^6 - 1
    }

    fn expanding_embedding(f: &Arc<NumberField>) -> Embedding {
        conjugate_embeddings(f)
            .unwrap()
            .into_iter()
            .find(|e| e.abs(&f.beta()).unwrap().0 > BigRational::one())
            .unwrap()
    }

    #[test]
    fn quartic_is_yrrap_five_five() {
        assert_eq!(yrrap_check(&quartic(), 100).unwrap(), Some((5, 5)));
    }

    #[test]
    fn golden_is_yrrap_one_one() {
        assert_eq!(yrrap_check(&field_of(&[-1, -1, 1]), 100).unwrap(), Some((1, 1)));
    }

    #[test]
    fn degree_seven_is_not_yrrap_within_budget() {
        assert_eq!(yrrap_check(&degree_seven(), 10_000).unwrap(), None);
    }

    #[test]
    fn degree_seven_is_parry_finite_seven() {
        assert_eq!(parry_check(&degree_seven(), 100).unwrap(), Some(ParryOutcome::Finite(7)));
    }

    #[test]
    fn golden_is_parry_finite_two() {
        assert_eq!(parry_check(&field_of(&[-1, -1, 1]), 100).unwrap(), Some(ParryOutcome::Finite(2)));
    }

    #[test]
    fn quartic_is_not_parry_within_budget() {
        assert_eq!(parry_check(&quartic(), 10_000).unwrap(), None);
    }

    #[test]
    fn quartic_positive_certificate_and_exact_orbit_value() {
        let f = quartic();
        let emb = expanding_embedding(&f);
        let cert = aperiodicity_certificate(&f, Side::Positive, &emb, 100).unwrap();
        assert!(cert.step <= 35, "step = {}", cert.step);
        assert!(cert.bound > cert.threshold);

        // The positive orbit at step 35 in closed form:
        // T+^35(1) = beta^35 - beta^34 - beta^26 - beta^13 - beta^4.
        let base = Base::new(f.beta()).unwrap();
        let orbit = base.orbit_pos(35).unwrap();
        let mono = |k: usize| RatPoly::monomial(BigRational::one(), k);
        let expected = f.element(
            mono(35).sub(&mono(34)).sub(&mono(26)).sub(&mono(13)).sub(&mono(4)),
        );
        assert_eq!(orbit.points[35].clone().checked_sub(&expected).unwrap().sign(), 0);
    }

    #[test]
    fn degree_seven_negative_certificate() {
        let f = degree_seven();
        let emb = expanding_embedding(&f);
        let cert = aperiodicity_certificate(&f, Side::Negative, &emb, 100).unwrap();
        assert!(cert.step <= 53, "step = {}", cert.step);
    }

    #[test]
    fn certified_moduli_increase_past_the_threshold() {
        let f = quartic();
        let emb = expanding_embedding(&f);
        let cert = aperiodicity_certificate(&f, Side::Positive, &emb, 100).unwrap();
        let base = Base::new(f.beta()).unwrap();
        let orbit = base.orbit_pos(cert.step + 5).unwrap();
        let tol = BigRational::new(1.into(), BigInt::one() << 40);
        let mut prev = cert.bound.clone();
        for n in (cert.step + 1)..=(cert.step + 5) {
            let iv = emb.abs_interval(&orbit.points[n], &tol).unwrap();
            assert!(iv.0 > prev, "n = {n}");
            prev = iv.0;
        }
    }

    #[test]
    fn pisot_has_no_expanding_conjugate() {
        let f = field_of(&[-1, -1, 1]);
        let embs = conjugate_embeddings(&f).unwrap();
        let err = aperiodicity_certificate(&f, Side::Positive, &embs[0], 50);
        assert!(matches!(err, Err(Error::NotExpanding)));
    }

    #[test]
    fn tight_budget_is_inconclusive() {
        let f = quartic();
        let emb = expanding_embedding(&f);
        assert!(matches!(
            aperiodicity_certificate(&f, Side::Positive, &emb, 3),
            Err(Error::NoCertificate(3))
        ));
    }

    #[test]
    fn golden_matrix_is_the_fibonacci_matrix() {
        let f = field_of(&[-1, -1, 1]);
        let m = build_matrix(&f).unwrap();
        assert_eq!(m.dim(), 2);
        // Atoms (0, 2-beta) and (2-beta, 1).
        let two_minus_beta = FieldElement::integer(2).checked_sub(&f.beta()).unwrap();
        assert_eq!(m.atoms[0].x.clone().checked_sub(&two_minus_beta).unwrap().sign(), 0);
        assert_eq!(m.atoms[1].x.clone().checked_sub(&FieldElement::one()).unwrap().sign(), 0);
        assert_eq!(m.entries, vec![vec![0, 1], vec![1, 1]]);
        let report = perron_verify(&m).unwrap();
        assert_eq!(report.primitivity_exponent, 2);
        assert!((report.spectral_radius - 1.618033988749895).abs() < 1e-10);
    }

    #[test]
    fn plastic_matrix_drops_one_gap_endpoint() {
        // x^3 - x - 1: four orbit values, one gap, so three atoms; the atom
        // below 1 starts at the removed gap endpoint 2 - beta.
        let f = field_of(&[-1, -1, 0, 1]);
        let m = build_matrix(&f).unwrap();
        assert_eq!(m.dim(), 3);
        let report = perron_verify(&m).unwrap();
        assert!((report.spectral_radius - 1.324717957244746).abs() < 1e-10);
    }

    #[test]
    fn quartic_matrix_has_perron_eigenvalue_beta() {
        let f = quartic();
        let m = build_matrix(&f).unwrap();
        assert!(m.dim() <= 10, "dim = {}", m.dim());
        let report = perron_verify(&m).unwrap();
        assert!((report.spectral_radius - 1.2207440846057596).abs() < 1e-10);
    }

    #[test]
    fn non_yrrap_matrix_rejected() {
        let err = build_matrix(&degree_seven());
        assert!(matches!(err, Err(Error::OutOfDomain(_))));
    }

    #[test]
    fn matrix_serializes_with_atom_values() {
        let f = field_of(&[-1, -1, 1]);
        let m = build_matrix(&f).unwrap();
        let js = serde_json::to_value(&m).unwrap();
        assert_eq!(js["entries"], serde_json::json!([[0, 1], [1, 1]]));
        assert!((js["atoms"][0]["x_approx"].as_f64().unwrap() - 0.3819660112501051).abs() < 1e-12);
    }
}
