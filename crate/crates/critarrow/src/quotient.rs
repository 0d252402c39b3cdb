//! Abelian quotient-singularity descriptions: the extended lattice, the
//! normalized cone over the standard lattice, the three-dimensional cyclic
//! classification, and the terminal-form Hilbert basis formula.

use num_integer::Integer;
use num_traits::{One, Signed};

use crate::cone::SimplicialCone;
use crate::crit::{analyze, volume_criterion, AnalysisReport};
use crate::error::{Error, Result};
use crate::exact::{lattice_basis_from_generators, Int, Matrix, Rat, Vector};
use crate::limits::Limits;

/// One diagonal generator `1/r (a_1, ..., a_d)` of a finite abelian group
/// acting on affine space. Weights are stored reduced mod `r`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CyclicGenerator {
    pub order: u64,
    pub weights: Vec<u64>,
}

impl CyclicGenerator {
    pub fn new(order: u64, weights: &[i64]) -> Result<Self> {
        if order == 0 {
            return Err(Error::BadParameters("group order must be positive".into()));
        }
        let r = order as i64;
        Ok(CyclicGenerator {
            order,
            weights: weights.iter().map(|&a| a.rem_euclid(r) as u64).collect(),
        })
    }

    fn as_vector(&self) -> Vector {
        Vector::new(
            self.weights
                .iter()
                .map(|&a| Rat::new(Int::from(a), Int::from(self.order)))
                .collect(),
        )
    }
}

/// A quotient singularity: the lattice extended by the group generators, its
/// canonical basis, the group order (the lattice index), and the cone of the
/// positive orthant rewritten over the standard lattice.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuotientDatum {
    pub dim: usize,
    pub generators: Vec<CyclicGenerator>,
    pub group_order: u64,
    /// Columns are the lattice basis vectors, in lattice-canonical triangular
    /// form.
    pub basis: Matrix,
    basis_inverse: Matrix,
    pub cone: SimplicialCone,
}

/// Builds the quotient datum. Redundant or non-faithful generator lists are
/// fine: the lattice is the semantic object and the group order is defined
/// as the lattice index.
pub fn build_quotient(generators: &[CyclicGenerator]) -> Result<QuotientDatum> {
    let dim = generators
        .first()
        .map(|g| g.weights.len())
        .ok_or_else(|| Error::BadParameters("at least one generator required".into()))?;
    if dim == 0 {
        return Err(Error::BadParameters("weights must be nonempty".into()));
    }
    for g in generators {
        if g.weights.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: g.weights.len(),
            });
        }
    }
    let vectors: Vec<Vector> = generators.iter().map(CyclicGenerator::as_vector).collect();
    let basis = lattice_basis_from_generators(dim, &vectors)?;
    let det = basis.det();
    let index = Rat::one() / det;
    debug_assert!(index.is_integer() && index.is_positive());
    let group_order = u64::try_from(&index.to_integer())
        .map_err(|_| Error::ResourceLimit("group order exceeds u64".into()))?;
    let basis_inverse = basis.inverse()?;
    let rays: Vec<Vector> = (0..dim).map(|k| basis_inverse.column(k)).collect();
    for r in &rays {
        debug_assert!(r.is_integral(), "standard basis vectors must map into Z^d");
    }
    let cone = SimplicialCone::from_rays(&rays)?;
    Ok(QuotientDatum {
        dim,
        generators: generators.to_vec(),
        group_order,
        basis,
        basis_inverse,
        cone,
    })
}

impl QuotientDatum {
    /// Coordinates of `x` with respect to the lattice basis. Errors unless
    /// `x` is a lattice point.
    pub fn to_lattice(&self, x: &Vector) -> Result<Vector> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            });
        }
        let coords = self.basis_inverse.mul_vec(x);
        if !coords.is_integral() {
            return Err(Error::NotALatticePoint);
        }
        Ok(coords)
    }

    pub fn in_lattice(&self, x: &Vector) -> bool {
        self.to_lattice(x).is_ok()
    }
}

/// Analysis of a quotient element given in the original coordinates:
/// transports `w` to the normalized cone, runs the full pipeline, and, for
/// interior `w`, attaches the exact volume test.
pub struct QuotientAnalysis {
    pub w_lattice: Vector,
    pub report: AnalysisReport,
}

pub fn analyze_quotient(
    datum: &QuotientDatum,
    w_original: &Vector,
    limits: &Limits,
) -> Result<QuotientAnalysis> {
    let w_lattice = datum.to_lattice(w_original)?;
    let mut report = analyze(&datum.cone, &w_lattice, limits)?;
    if w_original.entries().iter().all(|x| x.is_positive()) {
        let mut scale = Int::one();
        for x in w_original.entries() {
            scale = scale.lcm(x.denom());
        }
        let l = u64::try_from(&scale)
            .map_err(|_| Error::ResourceLimit("volume denominator exceeds u64".into()))?;
        let weights = w_original
            .entries()
            .iter()
            .map(|x| {
                let n = (x * Rat::from_integer(scale.clone())).to_integer();
                u64::try_from(&n)
                    .map_err(|_| Error::ResourceLimit("volume weight exceeds u64".into()))
            })
            .collect::<Result<Vec<u64>>>()?;
        report.volume = Some(volume_criterion(l, &weights, datum.group_order)?);
    }
    Ok(QuotientAnalysis { w_lattice, report })
}

/// The three-dimensional cyclic canonical classification, checked case by
/// case, each pattern up to coordinate permutation; the first match wins.
///
/// The patterns cover actions without quasi-reflections. A group containing
/// a quasi-reflection can normalize to a canonical (or smooth) cone without
/// matching any pattern; compare against
/// [`SimplicialCone::classify_singularity`] on the built cone when in doubt.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CanonicalCase {
    /// Weights summing to zero mod r.
    Case1,
    /// `1/r (1, a, r-a)` with `gcd(a, r) = 1`: the terminal case.
    Case2,
    /// `1/r (1, r-1, a)` with `gcd(a, r) > 1`.
    Case3,
    /// `1/4k (1, 2k+1, 4k-2)` with `k >= 2`.
    Case4,
    /// `1/9 (1, 4, 7)` or `1/14 (1, 9, 11)`.
    Case5,
    NotCanonical,
}

impl CanonicalCase {
    pub fn as_str(&self) -> &'static str {
        match self {
            CanonicalCase::Case1 => "case1",
            CanonicalCase::Case2 => "case2",
            CanonicalCase::Case3 => "case3",
            CanonicalCase::Case4 => "case4",
            CanonicalCase::Case5 => "case5",
            CanonicalCase::NotCanonical => "not-canonical",
        }
    }
}

impl std::fmt::Display for CanonicalCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn classify_cyclic_3d(r: u64, a: u64, b: u64, c: u64) -> Result<CanonicalCase> {
    if r == 0 {
        return Err(Error::BadParameters("order must be positive".into()));
    }
    if a >= r || b >= r || c >= r {
        return Err(Error::BadParameters("weights must be reduced mod r".into()));
    }
    let perms = [
        [a, b, c],
        [a, c, b],
        [b, a, c],
        [b, c, a],
        [c, a, b],
        [c, b, a],
    ];
    if (a + b + c).is_multiple_of(r) {
        return Ok(CanonicalCase::Case1);
    }
    if perms
        .iter()
        .any(|p| p[0] == 1 && p[1] >= 1 && p[1] + p[2] == r && p[1].gcd(&r) == 1)
    {
        return Ok(CanonicalCase::Case2);
    }
    if perms
        .iter()
        .any(|p| p[0] == 1 && p[1] + 1 == r && p[2] >= 1 && p[2].gcd(&r) > 1)
    {
        return Ok(CanonicalCase::Case3);
    }
    if r.is_multiple_of(4) && r / 4 >= 2 {
        let k = r / 4;
        if perms.iter().any(|p| p == &[1, 2 * k + 1, 4 * k - 2]) {
            return Ok(CanonicalCase::Case4);
        }
    }
    let case5 = (r == 9 && perms.iter().any(|p| p == &[1, 4, 7]))
        || (r == 14 && perms.iter().any(|p| p == &[1, 9, 11]));
    if case5 {
        return Ok(CanonicalCase::Case5);
    }
    Ok(CanonicalCase::NotCanonical)
}

/// Closed-form Hilbert basis of the normal-form terminal cone
/// `<(1,0,0), (0,1,0), (1,p,q)>`: the generators together with
/// `(1, m_k, k)` for `1 <= k <= q-1`, where `m_k` is the least `l` with
/// `l q > k p`.
pub fn terminal_hilbert_basis(p: u64, q: u64) -> Result<Vec<Vector>> {
    if p < 1 || p >= q {
        return Err(Error::BadParameters("need 1 <= p < q".into()));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::BadParameters("p and q must be coprime".into()));
    }
    let mut out = vec![
        Vector::from_ints(&[1, 0, 0]),
        Vector::from_ints(&[0, 1, 0]),
        Vector::from_ints(&[1, p as i64, q as i64]),
    ];
    for k in 1..q {
        let m_k = k * p / q + 1;
        out.push(Vector::from_ints(&[1, m_k as i64, k as i64]));
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::Singularity;
    use crate::exact::rat;

    fn v(e: &[i64]) -> Vector {
        Vector::from_ints(e)
    }

    fn cyclic(r: u64, weights: &[i64]) -> QuotientDatum {
        build_quotient(&[CyclicGenerator::new(r, weights).unwrap()]).unwrap()
    }

    #[test]
    fn trivial_group() {
        let qd = cyclic(1, &[0, 0, 0]);
        assert_eq!(qd.group_order, 1);
        assert_eq!(
            qd.cone.generators(),
            &[v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])]
        );
    }

    #[test]
    fn half_half_matches_a1() {
        let limits = Limits::default();
        let qd = cyclic(2, &[1, 1]);
        assert_eq!(qd.group_order, 2);
        let hb = qd.cone.hilbert_basis(&limits).unwrap();
        let a1 = SimplicialCone::from_int_rows(&[&[1, 0], &[1, 2]]).unwrap();
        let hb_a1 = a1.hilbert_basis(&limits).unwrap();
        assert_eq!(hb.elements.len(), hb_a1.elements.len());
        let ess = qd.cone.essential_candidates(&limits).unwrap();
        let ess_a1 = a1.essential_candidates(&limits).unwrap();
        assert_eq!(ess.len(), 1);
        assert_eq!(
            qd.cone.discrepancy(&ess[0]).unwrap(),
            a1.discrepancy(&ess_a1[0]).unwrap()
        );
    }

    #[test]
    fn order_fourteen_lattice_membership() {
        let qd = cyclic(14, &[1, 9, 11]);
        assert_eq!(qd.group_order, 14);
        assert_eq!(qd.basis.det().abs(), rat(1, 14));
        let w = Vector::new(vec![rat(1, 2), rat(1, 2), rat(1, 2)]);
        let w_lat = qd.to_lattice(&w).unwrap();
        assert!(w_lat.is_integral());
        assert!(!qd.in_lattice(&Vector::new(vec![rat(1, 2), rat(1, 2), rat(1, 3)])));
    }

    #[test]
    fn build_quotient_order_insensitive() {
        let g1 = CyclicGenerator::new(4, &[1, 3, 2]).unwrap();
        let g2 = CyclicGenerator::new(3, &[1, 1, 1]).unwrap();
        let a = build_quotient(&[g1.clone(), g2.clone()]).unwrap();
        let b = build_quotient(&[g2, g1]).unwrap();
        assert_eq!(a.basis, b.basis);
        assert_eq!(a.group_order, b.group_order);
        assert_eq!(a.cone, b.cone);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify_cyclic_3d(14, 1, 9, 11).unwrap(),
            CanonicalCase::Case5
        );
        assert_eq!(
            classify_cyclic_3d(8, 1, 5, 6).unwrap(),
            CanonicalCase::Case4
        );
        assert_eq!(
            classify_cyclic_3d(7, 1, 2, 3).unwrap(),
            CanonicalCase::NotCanonical
        );
        assert_eq!(
            classify_cyclic_3d(3, 1, 1, 1).unwrap(),
            CanonicalCase::Case1
        );
        assert_eq!(
            classify_cyclic_3d(7, 2, 1, 5).unwrap(),
            CanonicalCase::Case2
        );
        assert_eq!(
            classify_cyclic_3d(8, 2, 7, 1).unwrap(),
            CanonicalCase::Case3
        );
        assert!(classify_cyclic_3d(7, 9, 0, 0).is_err());
        assert!(classify_cyclic_3d(0, 0, 0, 0).is_err());
    }

    #[test]
    fn classification_matches_cone_classification() {
        let limits = Limits::default();
        // gorenstein case is canonical
        let qd = cyclic(3, &[1, 1, 1]);
        assert_eq!(
            qd.cone.classify_singularity(&limits).unwrap(),
            Singularity::Canonical
        );
        // terminal case
        let qd = cyclic(5, &[1, 2, 3]);
        assert_eq!(
            classify_cyclic_3d(5, 1, 2, 3).unwrap(),
            CanonicalCase::Case2
        );
        assert_eq!(
            qd.cone.classify_singularity(&limits).unwrap(),
            Singularity::Terminal
        );
        // unmatched pattern is worse than canonical
        let qd = cyclic(7, &[1, 2, 3]);
        assert_eq!(
            qd.cone.classify_singularity(&limits).unwrap(),
            Singularity::LogTerminalOnly
        );
    }

    #[test]
    fn terminal_hilbert_basis_examples() {
        let mut expected = vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[1, 1, 2]), v(&[1, 1, 1])];
        expected.sort();
        assert_eq!(terminal_hilbert_basis(1, 2).unwrap(), expected);

        let mut expected = vec![
            v(&[1, 0, 0]),
            v(&[0, 1, 0]),
            v(&[1, 2, 3]),
            v(&[1, 1, 1]),
            v(&[1, 2, 2]),
        ];
        expected.sort();
        assert_eq!(terminal_hilbert_basis(2, 3).unwrap(), expected);

        let q = 6u64;
        let hb = terminal_hilbert_basis(1, q).unwrap();
        for k in 1..q {
            assert!(hb.contains(&v(&[1, 1, k as i64])));
        }

        assert!(terminal_hilbert_basis(2, 4).is_err());
        assert!(terminal_hilbert_basis(3, 2).is_err());
    }

    #[test]
    fn terminal_formula_matches_enumeration() {
        let limits = Limits::default();
        for (p, q) in [(1u64, 2u64), (2, 3), (3, 5), (4, 7)] {
            let cone =
                SimplicialCone::from_int_rows(&[&[1, 0, 0], &[0, 1, 0], &[1, p as i64, q as i64]])
                    .unwrap();
            assert_eq!(
                terminal_hilbert_basis(p, q).unwrap(),
                cone.hilbert_basis(&limits).unwrap().elements,
                "(p,q)=({p},{q})"
            );
        }
    }

    #[test]
    fn quotient_analysis_volume() {
        let limits = Limits::default();
        let qd = cyclic(14, &[1, 9, 11]);
        let w = Vector::new(vec![rat(1, 2), rat(1, 2), rat(1, 2)]);
        let qa = analyze_quotient(&qd, &w, &limits).unwrap();
        let vol = qa.report.volume.as_ref().unwrap();
        assert_eq!(vol.vol, rat(2, 7));
        assert!(!vol.guarantee);
        assert_eq!(qa.report.dim_tau, 1);
        assert_eq!(qa.report.discrepancy, rat(1, 2));
        assert_eq!(qa.report.level_one, crate::crit::LevelOneStatus::Empty);
        assert!(qa.report.dim_vw >= 2);
    }
}
