//! Critical-vector enumeration and the dimension of the minimal fan cone.
//!
//! For a lattice element `w` of a simplicial cone, the vectors of the
//! bounded-length critical arrows are enumerated per face index via the
//! replaced-generator cones `delta_i` and their dual Hilbert bases. Their
//! span determines the dimension of the minimal cone of the subdivision fan
//! containing `w`, hence the codimension of the center of the associated
//! divisor.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cone::{span_against_face_perp, LevelOnePoints, MinimalFace, SimplicialCone};
use crate::error::{Error, Result};
use crate::exact::{ceil_sqrt, Int, Rat, Vector};
use crate::kernel::{
    box_point_count, checked_dot, isqrt_i128, overflow, rat_to_i128_pair, vec_to_i128,
};
use crate::limits::Limits;

/// The cone obtained from a base cone by replacing the `index`-th generator
/// with `-w`. Nondegenerate whenever `index` lies in the minimal face of `w`.
#[derive(Clone, Debug)]
pub struct DeltaCone {
    base: SimplicialCone,
    index: usize,
    w: Vector,
    face: MinimalFace,
    generators: Vec<Vector>,
}

/// Per-ray-index record of the critical threshold and the enumerated
/// critical vectors of bounded length.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CritProfile {
    /// Generator index (0-based).
    pub index: usize,
    /// Minimal value of `(u, -v_i)` over dual lattice points off the
    /// orthogonal complement of `w`; strictly positive.
    pub c_min: Rat,
    /// Length bound used for the enumeration.
    pub d_prime: u64,
    /// Sorted critical vectors: nonzero lattice points of the dual cone with
    /// norm at most `d_prime` and `(u, -v_i) < c_min`.
    pub vectors: Vec<Vector>,
}

/// An integral critical arrow: an ordered pair of points of the dual cone on
/// a common `w`-level, with the tail on a dual ray.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ArrowRecord {
    pub head: Vector,
    pub tail: Vector,
    pub vector: Vector,
    pub level: Rat,
    pub tail_ray_index: usize,
}

/// Tri-state outcome of the level-1 lattice point search.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LevelOneStatus {
    /// A lattice point on level one exists (complete or truncated search).
    Found,
    /// The complete search came back empty.
    Empty,
    /// The truncated search found nothing; no conclusion.
    Truncated,
}

impl LevelOneStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            LevelOneStatus::Found => "yes",
            LevelOneStatus::Empty => "no",
            LevelOneStatus::Truncated => "unknown-truncated",
        }
    }
}

/// Outcome of the per-index witness search for the sufficiency polytope.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PolytopeOutcome {
    Witness(Vector),
    Empty,
    Unknown,
}

/// Exact volume of the level-1 subpolyhedron of a quotient singularity,
/// together with the display-only mean bound.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VolumeReport {
    pub vol: Rat,
    /// `d / (|G| (d-1)!)^(1/d)` truncated to six decimals; display only.
    pub h_display: String,
    /// Whether `vol > 1`, compared exactly. Guarantees a nonempty critical
    /// set.
    pub guarantee: bool,
}

/// Full per-`w` verdict.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AnalysisReport {
    pub cone: Vec<Vector>,
    pub w: Vector,
    pub dim: usize,
    /// 0-based indices of the minimal face containing `w`.
    pub mu_indices: Vec<usize>,
    pub dim_mu: usize,
    pub d_prime: u64,
    pub profiles: Vec<CritProfile>,
    pub dim_vw: usize,
    pub dim_mu_perp_cap_vw: usize,
    pub dim_tau: usize,
    pub center_dim: usize,
    pub discrepancy: Rat,
    pub is_essential_candidate: bool,
    pub level_one: LevelOneStatus,
    pub volume: Option<VolumeReport>,
}

impl AnalysisReport {
    pub fn crit_nonempty(&self) -> bool {
        self.profiles.iter().any(|p| !p.vectors.is_empty())
    }

    pub fn profile(&self, index: usize) -> Option<&CritProfile> {
        self.profiles.iter().find(|p| p.index == index)
    }
}

/// Builds the delta cone for a face index `i` of the minimal face of `w`.
pub fn delta_cone(cone: &SimplicialCone, w: &Vector, index: usize) -> Result<DeltaCone> {
    if !w.is_integral() {
        return Err(Error::NotALatticePoint);
    }
    let face = cone.minimal_face(w)?;
    if !face.indices.contains(&index) {
        return Err(Error::IndexNotInMinimalFace(index));
    }
    let mut generators = cone.generators().to_vec();
    generators[index] = w.neg();
    Ok(DeltaCone {
        base: cone.clone(),
        index,
        w: w.clone(),
        face,
        generators,
    })
}

impl DeltaCone {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn w(&self) -> &Vector {
        &self.w
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    /// Primitive integral generators of the dual cone, canonically sorted.
    ///
    /// Computed twice: by the closed form (rescaled dual basis vectors of the
    /// base cone) and by generic matrix inversion. The two must span the same
    /// rays.
    pub fn dual_generators(&self) -> Result<Vec<Vector>> {
        let mut closed = self.dual_closed_form()?;
        closed.sort();
        let mut generic = self.dual_generic()?;
        generic.sort();
        if closed != generic {
            return Err(Error::InternalInconsistency(format!(
                "closed-form dual {closed:?} disagrees with generic dual {generic:?}"
            )));
        }
        Ok(closed)
    }

    fn dual_generic(&self) -> Result<Vec<Vector>> {
        let m = crate::exact::Matrix::from_columns(&self.generators)?;
        let inv = m
            .inverse()
            .map_err(|_| Error::InternalInconsistency("delta cone is degenerate".into()))?;
        (0..self.generators.len())
            .map(|i| inv.row_vec(i).primitive())
            .collect()
    }

    /// Rescale the dual basis so vectors pairing nontrivially with `w` pair
    /// to one, then emit `-u_i`, the untouched `u_l`, and the differences
    /// `u_r - u_i`.
    fn dual_closed_form(&self) -> Result<Vec<Vector>> {
        let d = self.base.dim();
        let dual = self.base.dual_basis();
        let lambda = &self.face.coords;
        let i = self.index;
        let u = |j: usize| -> Vector {
            if lambda[j].is_zero() {
                dual[j].clone()
            } else {
                dual[j].scale(&(Rat::one() / &lambda[j]))
            }
        };
        let u_i = u(i);
        let mut out = vec![u_i.neg().primitive()?];
        for j in 0..d {
            if j == i {
                continue;
            }
            if lambda[j].is_zero() {
                out.push(dual[j].primitive()?);
            } else {
                out.push(u(j).sub(&u_i).primitive()?);
            }
        }
        Ok(out)
    }

    /// The dual cone as a simplicial cone over the primitive generators.
    pub fn dual_cone(&self) -> Result<SimplicialCone> {
        SimplicialCone::new(self.dual_generators()?)
    }

    /// The critical threshold: minimum of `(u, -v_i)` over Hilbert basis
    /// elements of the dual cone that pair nontrivially with `w`.
    pub fn c_min(&self, limits: &Limits) -> Result<Rat> {
        let hb = self.dual_cone()?.hilbert_basis(limits)?;
        let neg_vi = self.base.generator(self.index).neg();
        let mut best: Option<Rat> = None;
        for u in &hb.elements {
            if u.dot(&self.w).is_zero() {
                continue;
            }
            let val = u.dot(&neg_vi);
            best = Some(match best {
                Some(b) if b <= val => b,
                _ => val,
            });
        }
        let c = best.ok_or_else(|| {
            Error::InternalInconsistency("dual Hilbert basis lies entirely in w-perp".into())
        })?;
        if !c.is_positive() {
            return Err(Error::InternalInconsistency(format!(
                "critical threshold {c} is not positive"
            )));
        }
        Ok(c)
    }

    /// Enumerates the critical vectors of length at most `d_prime`: nonzero
    /// lattice points `u` of the dual cone with `|u|^2 <= d_prime^2` and
    /// `(u, -v_i) < c_min`, canonically sorted.
    ///
    /// The enumerated set lies in the orthogonal complement of `w`, so the
    /// sweep walks the integer points of the slice `(u, w) = 0` inside the
    /// norm ball, resolving one coordinate exactly from the others.
    pub fn crit_vectors(&self, d_prime: u64, limits: &Limits) -> Result<CritProfile> {
        let floor = diameter_bound(&self.base)?;
        if d_prime < floor {
            return Err(Error::BadParameters(format!(
                "length bound {d_prime} is below the parallelotope bound {floor}"
            )));
        }
        let c = self.c_min(limits)?;
        let (c_num, c_den) = rat_to_i128_pair(&c)?;
        let d = self.base.dim();
        let gens: Vec<Vec<i128>> = self
            .generators
            .iter()
            .map(vec_to_i128)
            .collect::<Result<_>>()?;
        let v_i = vec_to_i128(self.base.generator(self.index))?;
        let w = vec_to_i128(&self.w)?;
        let radius = i128::from(d_prime);
        let radius_sq = radius.checked_mul(radius).ok_or_else(overflow)?;

        // pivot coordinate resolved from orthogonality to w
        let pivot = (0..d)
            .max_by_key(|&k| w[k].unsigned_abs())
            .expect("positive dimension");
        debug_assert!(w[pivot] != 0);
        let free: Vec<usize> = (0..d).filter(|&k| k != pivot).collect();
        {
            let lo = vec![-radius; free.len()];
            let hi = vec![radius; free.len()];
            box_point_count(&lo, &hi, limits.max_enum_points)?;
        }

        let mut found: Vec<Vec<i128>> = Vec::new();
        let mut point = vec![0i128; d];
        sweep(
            &free,
            0,
            0,
            radius_sq,
            &mut point,
            &mut |point: &mut Vec<i128>, norm_sq: i128| -> Result<()> {
                let mut s: i128 = 0;
                for &j in &free {
                    s = s
                        .checked_add(point[j].checked_mul(w[j]).ok_or_else(overflow)?)
                        .ok_or_else(overflow)?;
                }
                if s % w[pivot] != 0 {
                    return Ok(());
                }
                let up = -s / w[pivot];
                if up.checked_mul(up).ok_or_else(overflow)?
                    > radius_sq.checked_sub(norm_sq).ok_or_else(overflow)?
                {
                    return Ok(());
                }
                point[pivot] = up;
                if point.iter().all(|&x| x == 0) {
                    return Ok(());
                }
                for g in &gens {
                    if checked_dot(point, g)? < 0 {
                        return Ok(());
                    }
                }
                let t = checked_dot(point, &v_i)?
                    .checked_neg()
                    .ok_or_else(overflow)?;
                // (u, -v_i) < c_min, exactly
                if t.checked_mul(c_den).ok_or_else(overflow)? < c_num {
                    found.push(point.clone());
                }
                Ok(())
            },
        )?;
        let mut vectors: Vec<Vector> = found.iter().map(|u| Vector::from_i128s(u)).collect();
        vectors.sort();
        debug_assert!(vectors.iter().all(|u| u.dot(&self.w).is_zero()));
        Ok(CritProfile {
            index: self.index,
            c_min: c,
            d_prime,
            vectors,
        })
    }

    /// Rebuilds the arrow whose vector is `u`: tail `c u_i` on the i-th dual
    /// ray, head `u + c u_i`, level `c = (u, -v_i) / (u_i, v_i)`.
    pub fn reconstruct_arrow(&self, u: &Vector) -> Result<ArrowRecord> {
        let fail = |msg: &str| Err(Error::NotACritVector(msg.into()));
        if !u.is_integral() || u.is_zero() {
            return fail("vector must be a nonzero lattice point");
        }
        if !u.dot(&self.w).is_zero() {
            return fail("vector is not orthogonal to w");
        }
        let i = self.index;
        let lambda_i = &self.face.coords[i];
        let u_i = self.base.dual_basis()[i].scale(&(Rat::one() / lambda_i));
        debug_assert_eq!(u_i.dot(&self.w), Rat::one());
        let v_i = self.base.generator(i);
        let level = u.dot(&v_i.neg()) / u_i.dot(v_i);
        if !level.is_positive() {
            return fail("arrow level is not positive");
        }
        let tail = u_i.scale(&level);
        let head = u.add(&tail);
        for g in self.base.generators() {
            if head.dot(g).is_negative() || tail.dot(g).is_negative() {
                return fail("head or tail leaves the dual cone");
            }
        }
        debug_assert_eq!(head.dot(&self.w), level);
        debug_assert_eq!(tail.dot(&self.w), level);
        Ok(ArrowRecord {
            vector: head.sub(&tail),
            head,
            tail,
            level,
            tail_ray_index: i,
        })
    }
}

fn sweep(
    free: &[usize],
    depth: usize,
    norm_sq: i128,
    radius_sq: i128,
    point: &mut Vec<i128>,
    leaf: &mut dyn FnMut(&mut Vec<i128>, i128) -> Result<()>,
) -> Result<()> {
    if depth == free.len() {
        return leaf(point, norm_sq);
    }
    let j = free[depth];
    let budget = radius_sq - norm_sq;
    let b = isqrt_i128(budget);
    for x in -b..=b {
        point[j] = x;
        sweep(free, depth + 1, norm_sq + x * x, radius_sq, point, leaf)?;
    }
    point[j] = 0;
    Ok(())
}

/// Integer length bound from the parallelotope of the primitive dual
/// generators: the ceiling of the maximal distance among its 2^d vertices.
pub fn diameter_bound(cone: &SimplicialCone) -> Result<u64> {
    let d = cone.dim();
    if d > 12 {
        return Err(Error::ResourceLimit(format!(
            "parallelotope vertex enumeration infeasible in dimension {d}"
        )));
    }
    let duals = cone.dual_generators();
    let zero = Vector::zero(d);
    let mut vertices: Vec<Vector> = Vec::with_capacity(1 << d);
    for mask in 0u32..(1 << d) {
        let mut s = zero.clone();
        for (i, dual) in duals.iter().enumerate() {
            if mask >> i & 1 == 1 {
                s = s.add(dual);
            }
        }
        vertices.push(s);
    }
    let mut max_sq = Rat::zero();
    for (a, va) in vertices.iter().enumerate() {
        for vb in vertices.iter().skip(a + 1) {
            let n = va.sub(vb).norm_sq();
            if n > max_sq {
                max_sq = n;
            }
        }
    }
    debug_assert!(max_sq.is_integer());
    ceil_sqrt(&max_sq.to_integer()).map(|v| v.max(1))
}

/// Runs the whole pipeline for one `(cone, w)` pair.
pub fn analyze(cone: &SimplicialCone, w: &Vector, limits: &Limits) -> Result<AnalysisReport> {
    if !w.is_integral() {
        return Err(Error::NotALatticePoint);
    }
    let face = cone.minimal_face(w)?;
    let d = cone.dim();
    let d_prime = diameter_bound(cone)?;
    let mut profiles = Vec::with_capacity(face.indices.len());
    for &i in &face.indices {
        let dc = delta_cone(cone, w, i)?;
        profiles.push(dc.crit_vectors(d_prime, limits)?);
    }
    let all_vectors: Vec<Vector> = profiles
        .iter()
        .flat_map(|p| p.vectors.iter().cloned())
        .collect();
    let (dim_vw, dim_inter) = span_against_face_perp(cone, &face, &all_vectors);
    let dim_mu = face.indices.len();
    let dim_tau = dim_mu - (dim_vw - dim_inter);
    assert!(
        dim_tau >= 1 && dim_tau <= dim_mu,
        "dimension formula out of range"
    );
    let discrepancy = face.coords.iter().sum::<Rat>() - Rat::one();
    let hb = cone.hilbert_basis(limits)?;
    let is_essential_candidate = hb.contains(w) && !cone.generators().contains(w);
    let level_one = level_one_status(cone, w, &face, limits)?;
    Ok(AnalysisReport {
        cone: cone.generators().to_vec(),
        w: w.clone(),
        dim: d,
        mu_indices: face.indices.clone(),
        dim_mu,
        d_prime,
        profiles,
        dim_vw,
        dim_mu_perp_cap_vw: dim_inter,
        dim_tau,
        center_dim: d - dim_tau,
        discrepancy,
        is_essential_candidate,
        level_one,
        volume: None,
    })
}

fn level_one_status(
    cone: &SimplicialCone,
    w: &Vector,
    face: &MinimalFace,
    limits: &Limits,
) -> Result<LevelOneStatus> {
    let bound = if face.is_interior(cone.dim()) {
        None
    } else {
        Some(limits.level_one_bound)
    };
    let LevelOnePoints { points, complete } = cone.level_one_lattice_points(w, bound, limits)?;
    Ok(if !points.is_empty() {
        LevelOneStatus::Found
    } else if complete {
        LevelOneStatus::Empty
    } else {
        LevelOneStatus::Truncated
    })
}

/// Direct bounded check of the defining conditions of a critical arrow for
/// interior `w`: both endpoints in the dual cone on the common level, and no
/// tail-integral point strictly below the level.
#[allow(clippy::needless_range_loop)]
pub fn validate_arrow(
    cone: &SimplicialCone,
    w: &Vector,
    arrow: &ArrowRecord,
    limits: &Limits,
) -> Result<bool> {
    if !w.is_integral() {
        return Err(Error::NotALatticePoint);
    }
    let face = cone.minimal_face(w)?;
    if !face.is_interior(cone.dim()) {
        return Err(Error::NonInteriorW);
    }
    let level = &arrow.level;
    if !level.is_positive() {
        return Ok(false);
    }
    if arrow.head == arrow.tail {
        return Ok(false);
    }
    if arrow.head.sub(&arrow.tail) != arrow.vector || !arrow.vector.is_integral() {
        return Ok(false);
    }
    if &arrow.head.dot(w) != level || &arrow.tail.dot(w) != level {
        return Ok(false);
    }
    for g in cone.generators() {
        if arrow.head.dot(g).is_negative() || arrow.tail.dot(g).is_negative() {
            return Ok(false);
        }
    }
    // Sweep the level <= c simplex, shifted by -tail, for an integral point
    // strictly below the level.
    let d = cone.dim();
    let dual = cone.dual_basis();
    let mut lo = vec![Rat::zero(); d];
    let mut hi = vec![Rat::zero(); d];
    for i in 0..d {
        let vertex = dual[i].scale(&(level / &face.coords[i]));
        for k in 0..d {
            let c = vertex.entry(k);
            if c.is_negative() {
                lo[k] += c;
            } else {
                hi[k] += c;
            }
        }
    }
    let lo: Vec<i128> = lo
        .iter()
        .zip(arrow.tail.entries())
        .map(|(r, t)| crate::kernel::int_to_i128(&(r - t).floor().to_integer()))
        .collect::<Result<_>>()?;
    let hi: Vec<i128> = hi
        .iter()
        .zip(arrow.tail.entries())
        .map(|(r, t)| crate::kernel::int_to_i128(&(r - t).ceil().to_integer()))
        .collect::<Result<_>>()?;
    let mut ok = true;
    crate::kernel::for_each_box_point(&lo, &hi, limits.max_enum_points, |m| {
        if !ok {
            return Ok(());
        }
        let p = arrow.tail.add(&Vector::from_i128s(m));
        if &p.dot(w) >= level {
            return Ok(());
        }
        if cone.generators().iter().all(|g| !p.dot(g).is_negative()) {
            ok = false;
        }
        Ok(())
    })?;
    Ok(ok)
}

/// Searches for `u` in the lattice with `(u, w) = 1`, `(u, v_i) > 0`,
/// `(u, v_j) >= 0` for `j != i`, and `(u, v_j) > 0` for at least one
/// `j != i`. Such a witness forces a nonempty critical profile at `i`.
///
/// The last condition excludes points on the i-th dual ray itself: an
/// on-ray point decides nothing, and cones exist where the i-th profile is
/// empty although the dual ray carries a lattice point on level one.
pub fn polytope_condition(
    cone: &SimplicialCone,
    w: &Vector,
    index: usize,
    bound: Option<u64>,
    limits: &Limits,
) -> Result<PolytopeOutcome> {
    let face = cone.minimal_face(w)?;
    if !face.indices.contains(&index) {
        return Err(Error::IndexNotInMinimalFace(index));
    }
    let LevelOnePoints { points, complete } = cone.level_one_lattice_points(w, bound, limits)?;
    let witness = points.into_iter().find(|u| {
        u.dot(cone.generator(index)).is_positive()
            && (0..cone.dim()).any(|j| j != index && u.dot(cone.generator(j)).is_positive())
    });
    Ok(match witness {
        Some(u) => PolytopeOutcome::Witness(u),
        None if complete => PolytopeOutcome::Empty,
        None => PolytopeOutcome::Unknown,
    })
}

/// Exact volume test for a quotient description `w = (1/l)(a_1..a_d)`:
/// `vol = l^d / ((d-1)! a_1 ... a_d |G|)`, with the guarantee `vol > 1`.
pub fn volume_criterion(l: u64, a: &[u64], group_order: u64) -> Result<VolumeReport> {
    let d = a.len();
    if d == 0 || l == 0 || group_order == 0 || a.contains(&0) {
        return Err(Error::BadParameters(
            "volume criterion needs positive l, weights and group order".into(),
        ));
    }
    let mut numer = Int::one();
    for _ in 0..d {
        numer *= Int::from(l);
    }
    let mut denom = Int::from(group_order);
    for k in 2..d {
        denom *= Int::from(k as u64);
    }
    for &x in a {
        denom *= Int::from(x);
    }
    let vol = Rat::new(numer, denom);
    let guarantee = vol > Rat::one();
    Ok(VolumeReport {
        vol,
        h_display: mean_bound_display(d as u32, group_order)?,
        guarantee,
    })
}

/// `d / (|G| (d-1)!)^(1/d)` truncated to six decimal places, computed by an
/// integer root search; never used in any decision.
pub fn mean_bound_display(d: u32, group_order: u64) -> Result<String> {
    if d == 0 || group_order == 0 {
        return Err(Error::BadParameters(
            "need positive dimension and order".into(),
        ));
    }
    let mut k = BigInt::from(group_order);
    for j in 2..d {
        k *= BigInt::from(j);
    }
    // largest n with n^d * k <= d^d * 10^(6d)
    let target = BigInt::from(d).pow(d) * BigInt::from(10u32).pow(6 * d);
    let mut lo = BigInt::zero();
    let mut hi = BigInt::from(d as u64) * BigInt::from(1_000_000u64);
    while lo < hi {
        let mid: BigInt = (&lo + &hi + 1) / 2;
        if mid.pow(d) * &k <= target {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    let million = BigInt::from(1_000_000u64);
    let whole = &lo / &million;
    let frac = &lo % &million;
    Ok(format!("{whole}.{frac:06}"))
}
