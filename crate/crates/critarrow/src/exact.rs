//! Arbitrary-precision rational scalars, vectors and matrices.
//!
//! Everything downstream of this module is exact: no floating point enters
//! any decision path. Scalars are [`Rat`] (always in lowest terms, positive
//! denominator), vectors and matrices are dense.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(int(n))
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(int(num), int(den))
}

/// Renders a rational in canonical form: `n` when the denominator is one,
/// `n/d` otherwise.
pub fn rat_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A dense vector of exact rationals.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Vector {
    entries: Vec<Rat>,
}

impl Vector {
    pub fn new(entries: Vec<Rat>) -> Self {
        Vector { entries }
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        Vector::new(entries.iter().map(|&n| rat_int(n)).collect())
    }

    pub fn from_i128s(entries: &[i128]) -> Self {
        Vector::new(
            entries
                .iter()
                .map(|&n| Rat::from_integer(Int::from(n)))
                .collect(),
        )
    }

    pub fn zero(dim: usize) -> Self {
        Vector::new(vec![Rat::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Vector::zero(dim);
        v.entries[i] = Rat::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize) -> &Rat {
        &self.entries[i]
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    pub fn dot(&self, other: &Vector) -> Rat {
        assert_eq!(self.dim(), other.dim(), "dot on mismatched dimensions");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn norm_sq(&self) -> Rat {
        self.dot(self)
    }

    pub fn add(&self, other: &Vector) -> Vector {
        assert_eq!(self.dim(), other.dim());
        Vector::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        assert_eq!(self.dim(), other.dim());
        Vector::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn neg(&self) -> Vector {
        Vector::new(self.entries.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, s: &Rat) -> Vector {
        Vector::new(self.entries.iter().map(|a| a * s).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|a| a.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|a| a.is_integer())
    }

    /// Integer entries, if the vector is integral.
    pub fn to_ints(&self) -> Option<Vec<Int>> {
        if self.is_integral() {
            Some(self.entries.iter().map(|a| a.to_integer()).collect())
        } else {
            None
        }
    }

    /// The primitive lattice element spanning the same ray: denominators are
    /// cleared and the entry gcd divided out. For an integral input this is
    /// `v / gcd(entries)`.
    pub fn primitive(&self) -> Result<Vector> {
        if self.is_zero() {
            return Err(Error::ZeroVector);
        }
        let mut lcm = Int::one();
        for a in &self.entries {
            lcm = lcm.lcm(a.denom());
        }
        let scaled: Vec<Int> = self
            .entries
            .iter()
            .map(|a| (a * Rat::from_integer(lcm.clone())).to_integer())
            .collect();
        let mut g = Int::zero();
        for x in &scaled {
            g = g.gcd(x);
        }
        Ok(Vector::new(
            scaled
                .into_iter()
                .map(|x| Rat::from_integer(x / &g))
                .collect(),
        ))
    }
}

/// A dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rat>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows*cols");
        Matrix { rows, cols, data }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::new(n, n, vec![Rat::zero(); n * n]);
        for i in 0..n {
            *m.get_mut(i, i) = Rat::one();
        }
        m
    }

    /// Builds the matrix whose j-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vector]) -> Result<Matrix> {
        let rows = columns
            .first()
            .map(Vector::dim)
            .ok_or(Error::BadParameters("no columns given".into()))?;
        for c in columns {
            if c.dim() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: c.dim(),
                });
            }
        }
        let cols = columns.len();
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for c in columns {
                data.push(c.entry(i).clone());
            }
        }
        Ok(Matrix::new(rows, cols, data))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    fn get_mut(&mut self, r: usize, c: usize) -> &mut Rat {
        &mut self.data[r * self.cols + c]
    }

    pub fn row_vec(&self, r: usize) -> Vector {
        Vector::new((0..self.cols).map(|c| self.get(r, c).clone()).collect())
    }

    pub fn column(&self, c: usize) -> Vector {
        Vector::new((0..self.rows).map(|r| self.get(r, c).clone()).collect())
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix::new(self.cols, self.rows, data)
    }

    pub fn mul_vec(&self, v: &Vector) -> Vector {
        assert_eq!(self.cols, v.dim(), "mul_vec dimension mismatch");
        Vector::new((0..self.rows).map(|r| self.row_vec(r).dot(v)).collect())
    }

    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        let mut m = self.data.clone();
        let at = |data: &[Rat], r: usize, c: usize| data[r * n + c].clone();
        let mut det = Rat::one();
        for col in 0..n {
            let pivot = match (col..n).find(|&r| !at(&m, r, col).is_zero()) {
                Some(p) => p,
                None => return Rat::zero(),
            };
            if pivot != col {
                for c in 0..n {
                    m.swap(pivot * n + c, col * n + c);
                }
                det = -det;
            }
            let pv = at(&m, col, col);
            det *= &pv;
            for r in col + 1..n {
                let f = at(&m, r, col) / &pv;
                if f.is_zero() {
                    continue;
                }
                for c in col..n {
                    let sub = &f * at(&m, col, c);
                    m[r * n + c] -= sub;
                }
            }
        }
        det
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or(Error::SingularMatrix)?;
            if pivot != col {
                for c in 0..n {
                    a.data.swap(pivot * n + c, col * n + c);
                    inv.data.swap(pivot * n + c, col * n + c);
                }
            }
            let pv = a.get(col, col).clone();
            for c in 0..n {
                *a.get_mut(col, c) /= &pv;
                *inv.get_mut(col, c) /= &pv;
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                for c in 0..n {
                    let s = &f * a.get(col, c);
                    *a.get_mut(r, c) -= s;
                    let s = &f * inv.get(col, c);
                    *inv.get_mut(r, c) -= s;
                }
            }
        }
        Ok(inv)
    }

    /// Solves `A x = b` for square nonsingular `A`.
    pub fn solve(&self, b: &Vector) -> Result<Vector> {
        if self.rows != self.cols {
            return Err(Error::BadParameters(
                "solve requires a square matrix".into(),
            ));
        }
        if b.dim() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: b.dim(),
            });
        }
        let inv = self.inverse()?;
        Ok(inv.mul_vec(b))
    }
}

/// Rank of the span of `vecs` over the rationals.
#[allow(clippy::needless_range_loop)]
pub fn rank(vecs: &[Vector]) -> usize {
    if vecs.is_empty() {
        return 0;
    }
    let d = vecs[0].dim();
    let mut rows: Vec<Vec<Rat>> = vecs.iter().map(|v| v.entries().to_vec()).collect();
    let mut r = 0;
    for c in 0..d {
        let pivot = match (r..rows.len()).find(|&i| !rows[i][c].is_zero()) {
            Some(p) => p,
            None => continue,
        };
        rows.swap(r, pivot);
        let pv = rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x /= &pv;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            for k in 0..d {
                let s = &f * &rows[r][k];
                rows[i][k] -= s;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Exact ranks of two spans and of their intersection:
/// `dim(U ∩ W) = dim U + dim W - dim(U + W)`.
pub fn span_dims(u: &[Vector], w: &[Vector]) -> Result<(usize, usize, usize)> {
    let mut ambient = None;
    for v in u.iter().chain(w.iter()) {
        match ambient {
            None => ambient = Some(v.dim()),
            Some(d) if d != v.dim() => {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: v.dim(),
                })
            }
            _ => {}
        }
    }
    let dim_u = rank(u);
    let dim_w = rank(w);
    let mut both: Vec<Vector> = u.to_vec();
    both.extend_from_slice(w);
    let dim_sum = rank(&both);
    Ok((dim_u, dim_w, dim_u + dim_w - dim_sum))
}

/// Row-style Hermite normal form of an integer matrix of full column rank:
/// pivots on the diagonal, positive, entries above each pivot reduced into
/// `[0, pivot)`. Returns the first `cols` rows.
#[allow(clippy::needless_range_loop)]
fn hnf_rows(mut m: Vec<Vec<Int>>, cols: usize) -> Result<Vec<Vec<Int>>> {
    let nrows = m.len();
    let mut r = 0;
    for c in 0..cols {
        loop {
            // pick the row with the smallest nonzero entry in column c
            let pivot = (r..nrows)
                .filter(|&i| !m[i][c].is_zero())
                .min_by_key(|&i| m[i][c].abs());
            let pivot = match pivot {
                Some(p) => p,
                None => {
                    return Err(Error::InvalidCone(
                        "lattice generators do not have full rank".into(),
                    ))
                }
            };
            m.swap(r, pivot);
            if m[r][c].is_negative() {
                for x in m[r].iter_mut() {
                    *x = -std::mem::take(x);
                }
            }
            let mut done = true;
            for i in r + 1..nrows {
                if m[i][c].is_zero() {
                    continue;
                }
                let q = m[i][c].div_floor(&m[r][c]);
                for k in 0..cols {
                    let s = &q * &m[r][k];
                    m[i][k] -= s;
                }
                if !m[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        // reduce entries above the pivot into [0, pivot)
        for i in 0..r {
            let q = m[i][c].div_floor(&m[r][c]);
            if q.is_zero() {
                continue;
            }
            for k in 0..cols {
                let s = &q * &m[r][k];
                m[i][k] -= s;
            }
        }
        r += 1;
    }
    m.truncate(cols);
    Ok(m)
}

/// Basis of the lattice generated by `generators` together with the standard
/// lattice `Z^dim`.
///
/// The basis vectors are the columns of the returned matrix, which is
/// lower-triangular with positive diagonal and reduced off-diagonal entries,
/// so the output is unique for a given lattice. `|det|` is the reciprocal of
/// the index of `Z^dim` in the generated lattice.
#[allow(clippy::needless_range_loop)]
pub fn lattice_basis_from_generators(dim: usize, generators: &[Vector]) -> Result<Matrix> {
    if dim == 0 {
        return Err(Error::BadParameters(
            "ambient dimension must be positive".into(),
        ));
    }
    for g in generators {
        if g.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: g.dim(),
            });
        }
    }
    // common denominator L; work with the integer lattice L*(Z^d + sum Z g_i)
    let mut scale = Int::one();
    for g in generators {
        for a in g.entries() {
            scale = scale.lcm(a.denom());
        }
    }
    let scale_rat = Rat::from_integer(scale.clone());
    let mut rows: Vec<Vec<Int>> = Vec::with_capacity(dim + generators.len());
    for i in 0..dim {
        let mut row = vec![Int::zero(); dim];
        row[i] = scale.clone();
        rows.push(row);
    }
    for g in generators {
        rows.push(
            g.entries()
                .iter()
                .map(|a| (a * &scale_rat).to_integer())
                .collect(),
        );
    }
    let h = hnf_rows(rows, dim)?;
    // rows of h/scale are the basis; transpose so basis vectors are columns
    let mut data = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            data.push(Rat::new(h[j][i].clone(), scale.clone()));
        }
    }
    Ok(Matrix::new(dim, dim, data))
}

/// Ceiling of the square root of a nonnegative integer.
pub fn ceil_sqrt(n: &Int) -> Result<u64> {
    if n.is_negative() {
        return Err(Error::BadParameters("ceil_sqrt of negative input".into()));
    }
    let s = n.sqrt();
    let s = if &(&s * &s) < n { s + 1 } else { s };
    u64::try_from(&s).map_err(|_| Error::ResourceLimit("square root exceeds u64".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[i64]) -> Vector {
        Vector::from_ints(entries)
    }

    #[test]
    fn solve_identity() {
        let a = Matrix::identity(3);
        let x = a.solve(&v(&[1, 2, 2])).unwrap();
        assert_eq!(x, v(&[1, 2, 2]));
    }

    #[test]
    fn solve_barycentric_3d() {
        let a = Matrix::from_columns(&[v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[1, 1, 2])]).unwrap();
        let x = a.solve(&v(&[1, 1, 1])).unwrap();
        assert_eq!(x, Vector::new(vec![rat(1, 2), rat(1, 2), rat(1, 2)]));
    }

    #[test]
    fn solve_barycentric_4d() {
        let a = Matrix::from_columns(&[
            v(&[1, 0, 0, 0]),
            v(&[0, 1, 0, 0]),
            v(&[1, 3, 3, 0]),
            v(&[4, 3, 1, 4]),
        ])
        .unwrap();
        let x = a.solve(&v(&[4, 4, 2, 3])).unwrap();
        assert_eq!(
            x,
            Vector::new(vec![rat(7, 12), rat(1, 2), rat(5, 12), rat(3, 4)])
        );
        let sum: Rat = x.entries().iter().sum();
        assert_eq!(sum, rat(9, 4));
    }

    #[test]
    fn solve_rejects_singular() {
        let a = Matrix::from_columns(&[v(&[1, 0]), v(&[2, 0])]).unwrap();
        assert!(matches!(a.solve(&v(&[1, 1])), Err(Error::SingularMatrix)));
    }

    #[test]
    fn solve_rejects_dim_mismatch() {
        let a = Matrix::identity(3);
        assert!(matches!(
            a.solve(&v(&[1, 1])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn solve_round_trip() {
        let a = Matrix::from_columns(&[v(&[3, 1, 0]), v(&[-2, 5, 1]), v(&[0, 7, 2])]).unwrap();
        let b = v(&[4, -3, 11]);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
    }

    #[test]
    fn span_dims_cases() {
        let u = [v(&[1, -1, 0]), v(&[1, 0, -1]), v(&[0, 1, -1])];
        assert_eq!(span_dims(&u, &[]).unwrap(), (2, 0, 0));

        let u = [v(&[2, 0, -1]), v(&[4, 0, -2])];
        let w = [v(&[2, 0, -1])];
        assert_eq!(span_dims(&u, &w).unwrap(), (1, 1, 1));

        let u = [v(&[1, 0])];
        let w = [v(&[0, 1])];
        assert_eq!(span_dims(&u, &w).unwrap(), (1, 1, 0));
    }

    #[test]
    fn span_dims_scaling_invariance() {
        let u = [v(&[1, -1, 0]), v(&[1, 0, -1])];
        let scaled = [
            v(&[1, 0, -1]).scale(&rat(-7, 3)),
            v(&[1, -1, 0]).scale(&rat(5, 2)),
        ];
        assert_eq!(
            span_dims(&u, &[]).unwrap().0,
            span_dims(&scaled, &[]).unwrap().0
        );
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(v(&[4, 0, -2]).primitive().unwrap(), v(&[2, 0, -1]));
        assert_eq!(v(&[2, 0, -1]).primitive().unwrap(), v(&[2, 0, -1]));
        assert_eq!(v(&[0, 0, 6]).primitive().unwrap(), v(&[0, 0, 1]));
        assert!(matches!(v(&[0, 0]).primitive(), Err(Error::ZeroVector)));
    }

    #[test]
    fn lattice_basis_trivial() {
        let b = lattice_basis_from_generators(3, &[]).unwrap();
        assert_eq!(b, Matrix::identity(3));
    }

    #[test]
    fn lattice_basis_half() {
        let g = Vector::new(vec![rat(1, 2), rat(1, 2)]);
        let b = lattice_basis_from_generators(2, &[g]).unwrap();
        assert_eq!(b.column(0), Vector::new(vec![rat(1, 2), rat(1, 2)]));
        assert_eq!(b.column(1), Vector::new(vec![rat_int(0), rat_int(1)]));
        assert_eq!(b.det(), rat(1, 2));
    }

    #[test]
    fn lattice_basis_order_fourteen() {
        let g = Vector::new(vec![rat(1, 14), rat(9, 14), rat(11, 14)]);
        let b = lattice_basis_from_generators(3, &[g]).unwrap();
        assert_eq!(b.det().abs(), rat(1, 14));
        // lower-triangular with positive diagonal
        for i in 0..3 {
            assert!(b.get(i, i) > &Rat::zero());
            for j in i + 1..3 {
                assert!(b.get(i, j).is_zero());
            }
        }
    }

    #[test]
    fn lattice_basis_absorbs_members() {
        let g = Vector::new(vec![rat(1, 14), rat(9, 14), rat(11, 14)]);
        let b1 = lattice_basis_from_generators(3, std::slice::from_ref(&g)).unwrap();
        // adding an element already in the lattice changes nothing
        let member = g.scale(&rat_int(5)).add(&v(&[1, -2, 3]));
        let b2 = lattice_basis_from_generators(3, &[g, member]).unwrap();
        assert_eq!(b1, b2);
    }

    #[test]
    fn ceil_sqrt_values() {
        assert_eq!(ceil_sqrt(&int(0)).unwrap(), 0);
        assert_eq!(ceil_sqrt(&int(1)).unwrap(), 1);
        assert_eq!(ceil_sqrt(&int(3)).unwrap(), 2);
        assert_eq!(ceil_sqrt(&int(4)).unwrap(), 2);
        assert_eq!(ceil_sqrt(&int(17)).unwrap(), 5);
    }
}
