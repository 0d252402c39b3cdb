//! Fixed-width integer kernels for the enumeration loops.
//!
//! The hot paths (parallelepiped scans, box sweeps) run on `i128` after an
//! exact conversion from the bignum layer. Conversions and arithmetic are
//! checked: inputs too large for the fast path fail with a clean
//! `ResourceLimit` instead of ever producing a wrong answer.

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exact::{Int, Rat, Vector};

pub(crate) fn overflow() -> Error {
    Error::ResourceLimit("exact enumeration exceeds the fixed-width integer range".into())
}

pub(crate) fn int_to_i128(x: &Int) -> Result<i128> {
    x.to_i128().ok_or_else(overflow)
}

/// Converts an integral vector to `i128` entries.
pub(crate) fn vec_to_i128(v: &Vector) -> Result<Vec<i128>> {
    v.to_ints()
        .ok_or(Error::NotALatticePoint)?
        .iter()
        .map(int_to_i128)
        .collect()
}

/// Numerator/denominator of a rational with the denominator positive.
pub(crate) fn rat_to_i128_pair(r: &Rat) -> Result<(i128, i128)> {
    Ok((int_to_i128(r.numer())?, int_to_i128(r.denom())?))
}

pub(crate) fn checked_dot(a: &[i128], b: &[i128]) -> Result<i128> {
    let mut acc: i128 = 0;
    for (x, y) in a.iter().zip(b) {
        acc = acc
            .checked_add(x.checked_mul(*y).ok_or_else(overflow)?)
            .ok_or_else(overflow)?;
    }
    Ok(acc)
}

/// Number of integer points in the box `[lo, hi]`, checked against `cap`.
pub(crate) fn box_point_count(lo: &[i128], hi: &[i128], cap: u64) -> Result<u64> {
    let mut count: u128 = 1;
    for (l, h) in lo.iter().zip(hi) {
        if h < l {
            return Ok(0);
        }
        let width = (h - l + 1) as u128;
        count = count.checked_mul(width).ok_or_else(|| {
            Error::ResourceLimit(format!("enumeration box exceeds the cap of {cap} points"))
        })?;
        if count > cap as u128 {
            return Err(Error::ResourceLimit(format!(
                "enumeration box of {count} points exceeds the cap of {cap}"
            )));
        }
    }
    Ok(count as u64)
}

/// Visits every integer point of the box `[lo, hi]`.
pub(crate) fn for_each_box_point<F: FnMut(&[i128]) -> Result<()>>(
    lo: &[i128],
    hi: &[i128],
    cap: u64,
    mut f: F,
) -> Result<()> {
    if box_point_count(lo, hi, cap)? == 0 {
        return Ok(());
    }
    let d = lo.len();
    let mut pt: Vec<i128> = lo.to_vec();
    loop {
        f(&pt)?;
        let mut k = d;
        loop {
            if k == 0 {
                return Ok(());
            }
            k -= 1;
            if pt[k] < hi[k] {
                pt[k] += 1;
                break;
            }
            pt[k] = lo[k];
        }
    }
}

/// Membership tests for a simplicial cone, run entirely on integers.
///
/// With generator matrix `A` (columns are the generators), the barycentric
/// coordinates of `x` are `adj·x / det`; after sign correction the tests
/// `lambda_i >= 0` and `0 <= lambda_i < 1` become integer comparisons against
/// `det_abs`.
pub(crate) struct ConeKernel {
    pub(crate) dim: usize,
    adj: Vec<Vec<i128>>,
    pub(crate) det_abs: i128,
}

impl ConeKernel {
    /// `matrix` must be square nonsingular with integer entries; `inverse`
    /// its exact inverse.
    pub(crate) fn new(
        matrix: &crate::exact::Matrix,
        inverse: &crate::exact::Matrix,
    ) -> Result<Self> {
        let d = matrix.rows();
        let det = matrix.det();
        debug_assert!(det.is_integer());
        let det_int = det.to_integer();
        let sign = if det_int < Int::from(0) { -1 } else { 1 };
        let mut adj = Vec::with_capacity(d);
        for i in 0..d {
            let mut row = Vec::with_capacity(d);
            for j in 0..d {
                let e = inverse.get(i, j) * Rat::from_integer(&det_int * sign);
                debug_assert!(e.is_integer());
                row.push(int_to_i128(&e.to_integer())?);
            }
            adj.push(row);
        }
        let det_abs = int_to_i128(&det_int)?.checked_abs().ok_or_else(overflow)?;
        Ok(ConeKernel {
            dim: d,
            adj,
            det_abs,
        })
    }

    /// `det_abs * lambda_i(x)`, exactly.
    pub(crate) fn lambda_num(&self, x: &[i128], i: usize) -> Result<i128> {
        checked_dot(&self.adj[i], x)
    }

    pub(crate) fn in_cone(&self, x: &[i128]) -> Result<bool> {
        for i in 0..self.dim {
            if self.lambda_num(x, i)? < 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Membership in the half-open parallelepiped `{sum l_i g_i : 0 <= l_i < 1}`.
    pub(crate) fn in_half_open_par(&self, x: &[i128]) -> Result<bool> {
        for i in 0..self.dim {
            let num = self.lambda_num(x, i)?;
            if num < 0 || num >= self.det_abs {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Compares `sum_i lambda_i(x)` with 1.
    pub(crate) fn lambda_sum_cmp_one(&self, x: &[i128]) -> Result<std::cmp::Ordering> {
        let mut total: i128 = 0;
        for i in 0..self.dim {
            total = total
                .checked_add(self.lambda_num(x, i)?)
                .ok_or_else(overflow)?;
        }
        Ok(total.cmp(&self.det_abs))
    }
}

/// Floor of the square root of a nonnegative `i128`, by integer Newton
/// iteration.
pub(crate) fn isqrt_i128(n: i128) -> i128 {
    debug_assert!(n >= 0);
    if n < 2 {
        return n.max(0);
    }
    let bits = 128 - n.leading_zeros();
    let mut x: i128 = 1i128 << (bits / 2 + 1);
    loop {
        let y = (x + n / x) / 2;
        if y >= x {
            break;
        }
        x = y;
    }
    while x * x > n {
        x -= 1;
    }
    x
}

/// Bounding box of the parallelepiped spanned by integer generators: each
/// coordinate ranges over the sum of negative parts to the sum of positive
/// parts.
pub(crate) fn parallelepiped_box(gens: &[Vec<i128>]) -> Result<(Vec<i128>, Vec<i128>)> {
    let d = gens[0].len();
    let mut lo = vec![0i128; d];
    let mut hi = vec![0i128; d];
    for g in gens {
        for k in 0..d {
            if g[k] < 0 {
                lo[k] = lo[k].checked_add(g[k]).ok_or_else(overflow)?;
            } else {
                hi[k] = hi[k].checked_add(g[k]).ok_or_else(overflow)?;
            }
        }
    }
    Ok((lo, hi))
}
