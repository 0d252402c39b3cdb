//! Simplicial cones over a lattice: dual data, faces, membership, Hilbert
//! bases, discrepancies, singularity classification, and level-1 lattice
//! point search.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{rank, Int, Matrix, Rat, Vector};
use crate::kernel::{
    box_point_count, for_each_box_point, parallelepiped_box, vec_to_i128, ConeKernel,
};
use crate::limits::Limits;

/// A nondegenerate simplicial cone: `d` linearly independent primitive
/// integer generators in ambient dimension `d`. Strong convexity follows
/// from linear independence.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimplicialCone {
    dim: usize,
    generators: Vec<Vector>,
    matrix: Matrix,
    inverse: Matrix,
}

/// The minimal face of a cone containing a given point, recorded as the set
/// of generator indices with strictly positive barycentric coordinate,
/// together with the coordinates themselves.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MinimalFace {
    pub indices: Vec<usize>,
    pub coords: Vec<Rat>,
}

impl MinimalFace {
    pub fn dim(&self) -> usize {
        self.indices.len()
    }

    pub fn is_interior(&self, ambient_dim: usize) -> bool {
        self.indices.len() == ambient_dim
    }
}

/// The unique minimal generating set of the monoid of lattice points of a
/// cone, sorted lexicographically.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HilbertBasis {
    pub elements: Vec<Vector>,
}

impl HilbertBasis {
    pub fn contains(&self, v: &Vector) -> bool {
        self.elements.binary_search(v).is_ok()
    }
}

/// Singularity type of the affine toric variety of a cone, by increasing
/// generality.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Singularity {
    Smooth,
    Terminal,
    Canonical,
    LogTerminalOnly,
}

impl std::fmt::Display for Singularity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Singularity::Smooth => "smooth",
            Singularity::Terminal => "terminal",
            Singularity::Canonical => "canonical",
            Singularity::LogTerminalOnly => "log-terminal-only",
        };
        f.write_str(s)
    }
}

/// Result of a level-1 lattice point search. `complete` is false when the
/// region was unbounded and the search was truncated, in which case an empty
/// `points` list means "not found within the bound", not "empty".
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LevelOnePoints {
    pub points: Vec<Vector>,
    pub complete: bool,
}

impl SimplicialCone {
    /// Builds a cone from primitive integral generators. Fails if the
    /// generators are not integral, not primitive, or linearly dependent.
    pub fn new(generators: Vec<Vector>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidCone("no generators".into()));
        }
        let dim = generators[0].dim();
        if generators.len() != dim {
            return Err(Error::InvalidCone(format!(
                "need exactly {dim} generators in dimension {dim}, got {}",
                generators.len()
            )));
        }
        for g in &generators {
            if g.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: g.dim(),
                });
            }
            if !g.is_integral() {
                return Err(Error::InvalidCone("generators must be integral".into()));
            }
            if g.is_zero() {
                return Err(Error::InvalidCone("zero generator".into()));
            }
            if &g.primitive()? != g {
                return Err(Error::InvalidCone(format!(
                    "generator {:?} is not primitive",
                    g.to_ints().unwrap()
                )));
            }
        }
        let matrix = Matrix::from_columns(&generators)?;
        let inverse = matrix
            .inverse()
            .map_err(|_| Error::InvalidCone("generators are linearly dependent".into()))?;
        Ok(SimplicialCone {
            dim,
            generators,
            matrix,
            inverse,
        })
    }

    /// Builds a cone from arbitrary nonzero rational ray representatives,
    /// primitivizing each.
    pub fn from_rays(rays: &[Vector]) -> Result<Self> {
        let gens = rays
            .iter()
            .map(|r| r.primitive())
            .collect::<Result<Vec<_>>>()?;
        SimplicialCone::new(gens)
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        SimplicialCone::new(rows.iter().map(|r| Vector::from_ints(r)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> &Vector {
        &self.generators[i]
    }

    /// The rational dual basis: vectors `v_i*` with `(v_i*, v_j) = delta_ij`.
    pub fn dual_basis(&self) -> Vec<Vector> {
        (0..self.dim).map(|i| self.inverse.row_vec(i)).collect()
    }

    /// Primitive integral generators of the rays of the dual cone, indexed
    /// compatibly with the generators: the i-th pairs to zero with every
    /// `v_j`, `j != i`, and positively with `v_i`.
    pub fn dual_generators(&self) -> Vec<Vector> {
        self.dual_basis()
            .iter()
            .map(|v| v.primitive().expect("dual basis vectors are nonzero"))
            .collect()
    }

    /// Barycentric coordinates of `x` with respect to the generators.
    pub fn barycentric(&self, x: &Vector) -> Result<Vector> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            });
        }
        Ok(self.inverse.mul_vec(x))
    }

    pub fn contains(&self, x: &Vector) -> Result<bool> {
        Ok(self
            .barycentric(x)?
            .entries()
            .iter()
            .all(|l| !l.is_negative()))
    }

    /// The minimal face of the cone containing `w`.
    pub fn minimal_face(&self, w: &Vector) -> Result<MinimalFace> {
        if w.is_zero() {
            return Err(Error::ZeroVector);
        }
        let coords = self.barycentric(w)?;
        if coords.entries().iter().any(|l| l.is_negative()) {
            return Err(Error::NotInCone);
        }
        let indices = coords
            .entries()
            .iter()
            .enumerate()
            .filter(|(_, l)| l.is_positive())
            .map(|(i, _)| i)
            .collect();
        Ok(MinimalFace {
            indices,
            coords: coords.entries().to_vec(),
        })
    }

    fn kernel(&self) -> Result<ConeKernel> {
        ConeKernel::new(&self.matrix, &self.inverse)
    }

    /// Nonzero lattice points of the half-open parallelepiped
    /// `{sum l_i v_i : 0 <= l_i < 1}`, as `i128` coordinate tuples.
    fn parallelepiped_points(&self, limits: &Limits) -> Result<Vec<Vec<i128>>> {
        let kernel = self.kernel()?;
        let gens: Vec<Vec<i128>> = self
            .generators
            .iter()
            .map(vec_to_i128)
            .collect::<Result<_>>()?;
        let (lo, hi) = parallelepiped_box(&gens)?;
        let mut points = Vec::new();
        for_each_box_point(&lo, &hi, limits.max_enum_points, |pt| {
            if pt.iter().any(|&x| x != 0) && kernel.in_half_open_par(pt)? {
                points.push(pt.to_vec());
            }
            Ok(())
        })?;
        Ok(points)
    }

    /// The Hilbert basis of the monoid of lattice points, by the half-open
    /// parallelepiped method: candidates are the generators together with the
    /// nonzero parallelepiped points; a candidate is kept iff no other
    /// candidate divides it in the monoid order.
    pub fn hilbert_basis(&self, limits: &Limits) -> Result<HilbertBasis> {
        let kernel = self.kernel()?;
        let mut candidates: BTreeSet<Vec<i128>> = self
            .generators
            .iter()
            .map(vec_to_i128)
            .collect::<Result<_>>()?;
        candidates.extend(self.parallelepiped_points(limits)?);
        let mut elements = Vec::new();
        'outer: for u in &candidates {
            for v in &candidates {
                if v == u {
                    continue;
                }
                let diff: Vec<i128> = u.iter().zip(v).map(|(a, b)| a - b).collect();
                if diff.iter().all(|&x| x == 0) {
                    continue;
                }
                if kernel.in_cone(&diff)? {
                    continue 'outer;
                }
            }
            elements.push(Vector::from_i128s(u));
        }
        elements.sort();
        Ok(HilbertBasis { elements })
    }

    /// Discrepancy of the divisor associated to `w`: the barycentric
    /// coordinate sum minus one.
    pub fn discrepancy(&self, w: &Vector) -> Result<Rat> {
        if !w.is_integral() {
            return Err(Error::NotALatticePoint);
        }
        let face = self.minimal_face(w)?;
        let sum: Rat = face.coords.iter().sum();
        Ok(sum - Rat::one())
    }

    /// Classifies the singularity from the parallelepiped points: smooth iff
    /// there are none; terminal iff every nonzero point has coordinate sum
    /// greater than one; canonical iff at least one.
    pub fn classify_singularity(&self, limits: &Limits) -> Result<Singularity> {
        let kernel = self.kernel()?;
        let points = self.parallelepiped_points(limits)?;
        if points.is_empty() {
            return Ok(Singularity::Smooth);
        }
        let mut all_gt = true;
        let mut all_ge = true;
        for pt in &points {
            match kernel.lambda_sum_cmp_one(pt)? {
                std::cmp::Ordering::Greater => {}
                std::cmp::Ordering::Equal => all_gt = false,
                std::cmp::Ordering::Less => {
                    all_gt = false;
                    all_ge = false;
                }
            }
        }
        Ok(if all_gt {
            Singularity::Terminal
        } else if all_ge {
            Singularity::Canonical
        } else {
            Singularity::LogTerminalOnly
        })
    }

    /// Hilbert basis members that are not cone generators; these span the
    /// rays of the essential divisors.
    pub fn essential_candidates(&self, limits: &Limits) -> Result<Vec<Vector>> {
        let hb = self.hilbert_basis(limits)?;
        Ok(hb
            .elements
            .into_iter()
            .filter(|e| !self.generators.contains(e))
            .collect())
    }

    /// All integral `u` with `(u, v_j) >= 0` for every generator and
    /// `(u, w) = 1`.
    ///
    /// For interior `w` the region is a bounded simplex and the answer is
    /// complete; otherwise the unconstrained dual coordinates are truncated
    /// at `bound` and the answer is one-sided.
    pub fn level_one_lattice_points(
        &self,
        w: &Vector,
        bound: Option<u64>,
        limits: &Limits,
    ) -> Result<LevelOnePoints> {
        if !w.is_integral() {
            return Err(Error::NotALatticePoint);
        }
        let face = self.minimal_face(w)?;
        let interior = face.is_interior(self.dim);
        let bound = if interior {
            None
        } else {
            match bound {
                Some(b) => Some(b),
                None => return Err(Error::UnboundedRegion),
            }
        };
        let (lo, hi) = self.level_region_box(&face, bound)?;
        box_point_count(&lo, &hi, limits.max_enum_points)?;
        let w_i = vec_to_i128(w)?;
        let gens: Vec<Vec<i128>> = self
            .generators
            .iter()
            .map(vec_to_i128)
            .collect::<Result<_>>()?;
        let cap: Option<i128> = bound.map(|b| b as i128);
        let mut out = Vec::new();
        for_each_box_point(&lo, &hi, limits.max_enum_points, |pt| {
            if crate::kernel::checked_dot(pt, &w_i)? != 1 {
                return Ok(());
            }
            for (j, g) in gens.iter().enumerate() {
                let pairing = crate::kernel::checked_dot(pt, g)?;
                if pairing < 0 {
                    return Ok(());
                }
                // truncation is part of the region for non-interior w
                if let Some(cap) = cap {
                    if !face.indices.contains(&j) && pairing > cap {
                        return Ok(());
                    }
                }
            }
            out.push(Vector::from_i128s(pt));
            Ok(())
        })?;
        out.sort();
        Ok(LevelOnePoints {
            points: out,
            complete: interior,
        })
    }

    /// Integer bounding box of the dual-coordinate region
    /// `{ sum t_i v_i* : 0 <= t_i <= T_i }` where `T_i = 1/lambda_i` on the
    /// face indices and `T_j = bound` off the face.
    fn level_region_box(
        &self,
        face: &MinimalFace,
        bound: Option<u64>,
    ) -> Result<(Vec<i128>, Vec<i128>)> {
        let d = self.dim;
        let dual = self.dual_basis();
        let mut tmax: Vec<Rat> = Vec::with_capacity(d);
        for i in 0..d {
            if face.indices.contains(&i) {
                tmax.push(Rat::one() / &face.coords[i]);
            } else {
                let b = bound.expect("bound checked by caller");
                tmax.push(Rat::from_integer(Int::from(b)));
            }
        }
        let mut lo = vec![Rat::zero(); d];
        let mut hi = vec![Rat::zero(); d];
        for i in 0..d {
            for k in 0..d {
                let c = dual[i].entry(k) * &tmax[i];
                if c.is_negative() {
                    lo[k] += c;
                } else {
                    hi[k] += c;
                }
            }
        }
        let lo = lo
            .iter()
            .map(|r| crate::kernel::int_to_i128(&r.floor().to_integer()))
            .collect::<Result<_>>()?;
        let hi = hi
            .iter()
            .map(|r| crate::kernel::int_to_i128(&r.ceil().to_integer()))
            .collect::<Result<_>>()?;
        Ok((lo, hi))
    }
}

/// Rank of the orthogonal complement span `{v_j* : j not in mu}` intersected
/// with the span of `vectors`; returns `(dim span, dim intersection)`.
pub(crate) fn span_against_face_perp(
    cone: &SimplicialCone,
    face: &MinimalFace,
    vectors: &[Vector],
) -> (usize, usize) {
    let dual = cone.dual_basis();
    let perp: Vec<Vector> = (0..cone.dim())
        .filter(|j| !face.indices.contains(j))
        .map(|j| dual[j].clone())
        .collect();
    let dim_v = rank(vectors);
    if vectors.is_empty() || perp.is_empty() {
        return (dim_v, 0);
    }
    let mut both = vectors.to_vec();
    both.extend(perp.iter().cloned());
    let dim_sum = rank(&both);
    (dim_v, dim_v + perp.len() - dim_sum)
}
