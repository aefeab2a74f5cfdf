//! Exact vectors, matrices and subspaces over [`Scalar`].
//!
//! Subspaces are kept in reduced row-echelon form with unit pivots, so two
//! subspaces are equal exactly when their bases compare equal, and the
//! coordinates of a member vector are read off at the pivot columns.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector(Vec<Scalar>);

impl Vector {
    pub fn zeros(n: usize) -> Self {
        Vector(vec![Scalar::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = Scalar::one();
        v
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Vector(values.iter().map(|&x| Scalar::from_int(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Scalar> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Scalar> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn nonzero_count(&self) -> usize {
        self.0.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn scale(&self, s: &Scalar) -> Vector {
        if s.is_zero() {
            return Vector::zeros(self.len());
        }
        Vector(self.0.iter().map(|x| if x.is_zero() { Scalar::zero() } else { x * s }).collect())
    }

    /// `self += s * other`.
    pub fn axpy(&mut self, s: &Scalar, other: &Vector) {
        assert_eq!(self.len(), other.len());
        if s.is_zero() {
            return;
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            if !b.is_zero() {
                *a += s * b;
            }
        }
    }

    pub(crate) fn check_len(&self, expected: usize) -> Result<()> {
        if self.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: self.len(),
            });
        }
        Ok(())
    }
}

impl From<Vec<Scalar>> for Vector {
    fn from(v: Vec<Scalar>) -> Self {
        Vector(v)
    }
}

impl FromIterator<Scalar> for Vector {
    fn from_iter<I: IntoIterator<Item = Scalar>>(iter: I) -> Self {
        Vector(iter.into_iter().collect())
    }
}

impl Index<usize> for Vector {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.0[i]
    }
}

impl IndexMut<usize> for Vector {
    fn index_mut(&mut self, i: usize) -> &mut Scalar {
        &mut self.0[i]
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        assert_eq!(self.len(), rhs.len());
        self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect()
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        assert_eq!(self.len(), rhs.len());
        self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect()
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        self.0.iter().map(|a| -a).collect()
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &Scalar::one())
    }

    /// `s * I`.
    pub fn scalar(n: usize, s: &Scalar) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = s.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
                .collect(),
        )
        .expect("ragged integer matrix")
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            c.check_len(rows)?;
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.rows)
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| if x.is_zero() { Scalar::zero() } else { x * s }).collect(),
        }
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &Vector) -> Result<Vector> {
        v.check_len(self.cols)?;
        let mut out = Vector::zeros(self.rows);
        for i in 0..self.rows {
            let mut acc = Scalar::zero();
            for (a, b) in self.row(i).iter().zip(v.iter()) {
                if !a.is_zero() && !b.is_zero() {
                    acc += a * b;
                }
            }
            out[i] = acc;
        }
        Ok(out)
    }

    fn zip_with(&self, rhs: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Matrix> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: rhs.rows * rhs.cols,
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip_with(rhs, |a, b| a - b)
    }

    /// `self - s * I`.
    pub fn shift(&self, s: &Scalar) -> Matrix {
        assert_eq!(self.rows, self.cols, "shift of a non-square matrix");
        let mut m = self.clone();
        for i in 0..self.rows {
            m[(i, i)] -= s;
        }
        m
    }

    /// Reduced row-echelon form with unit pivots, plus the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].invert().expect("pivot is nonzero");
            for j in c..m.cols {
                if !m[(r, j)].is_zero() {
                    m[(r, j)] = &m[(r, j)] * &inv;
                }
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for j in c..m.cols {
                    let pivot_entry = &m.data[r * m.cols + j];
                    if pivot_entry.is_zero() {
                        continue;
                    }
                    let delta = &factor * pivot_entry;
                    m.data[i * m.cols + j] -= delta;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Solves `self * X = rhs` for `X`. Returns `None` when the system is
    /// inconsistent or `self` has dependent columns (the solution would not
    /// be unique).
    pub fn solve(&self, rhs: &Matrix) -> Result<Option<Matrix>> {
        if rhs.rows != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: rhs.rows,
            });
        }
        let n = self.cols;
        let mut aug = Matrix::zeros(self.rows, n + rhs.cols);
        for i in 0..self.rows {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..rhs.cols {
                aug[(i, n + j)] = rhs[(i, j)].clone();
            }
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots.iter().any(|&p| p >= n) {
            return Ok(None);
        }
        // Rows 0..n hold the solution; pivots are exactly columns 0..n.
        let mut x = Matrix::zeros(n, rhs.cols);
        for i in 0..n {
            for j in 0..rhs.cols {
                x[(i, j)] = red[(i, n + j)].clone();
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<Option<Matrix>> {
        if self.rows != self.cols {
            return Ok(None);
        }
        self.solve(&Matrix::identity(self.rows))
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.row_vectors().serialize(serializer)
    }
}

/// A subspace of `Φ^n` with a reduced row-echelon basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: (0..ambient_dim).map(|i| Vector::unit(ambient_dim, i)).collect(),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn span(ambient_dim: usize, vectors: &[Vector]) -> Result<Self> {
        if vectors.is_empty() {
            return Ok(Self::zero(ambient_dim));
        }
        for v in vectors {
            v.check_len(ambient_dim)?;
        }
        let m = Matrix {
            rows: vectors.len(),
            cols: ambient_dim,
            data: vectors.iter().flat_map(|v| v.iter().cloned()).collect(),
        };
        let (red, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| Vector(red.row(i).to_vec())).collect();
        Ok(Subspace {
            ambient_dim,
            basis,
            pivots,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// `ambient_dim × dim` matrix with the basis vectors as columns.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.ambient_dim, &self.basis).expect("basis lengths are checked")
    }

    /// Coordinates of `v` in this basis, or `None` if `v` is not a member.
    pub fn coordinates(&self, v: &Vector) -> Option<Vector> {
        if v.len() != self.ambient_dim {
            return None;
        }
        let coords: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rebuilt = Vector::zeros(self.ambient_dim);
        for (c, b) in coords.iter().zip(&self.basis) {
            rebuilt.axpy(c, b);
        }
        (rebuilt == *v).then_some(coords)
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis.iter().all(|b| other.contains(b))
    }

    /// `{v ∈ self : op v = 0}`.
    pub fn restricted_kernel(&self, op: &Matrix) -> Result<Subspace> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let b = self.basis_matrix();
        let coords = kernel(&op.mul(&b)?);
        let vectors = coords
            .basis()
            .iter()
            .map(|c| b.mul_vec(c))
            .collect::<Result<Vec<_>>>()?;
        Subspace::span(self.ambient_dim, &vectors)
    }
}

pub fn kernel(m: &Matrix) -> Subspace {
    let (red, pivots) = m.rref();
    let n = m.cols();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let vectors: Vec<Vector> = free
        .iter()
        .map(|&f| {
            let mut v = Vector::zeros(n);
            v[f] = Scalar::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -&red[(row, f)];
            }
            v
        })
        .collect();
    Subspace::span(n, &vectors).expect("kernel vectors have the column dimension")
}

/// Column space of `m`.
pub fn image(m: &Matrix) -> Subspace {
    Subspace::span(m.rows(), &m.columns()).expect("columns have the row dimension")
}

pub fn intersect(s1: &Subspace, s2: &Subspace) -> Result<Subspace> {
    if s1.ambient_dim != s2.ambient_dim {
        return Err(Error::DimensionMismatch {
            expected: s1.ambient_dim,
            found: s2.ambient_dim,
        });
    }
    let n = s1.ambient_dim;
    if s1.is_zero() || s2.is_zero() {
        return Ok(Subspace::zero(n));
    }
    // Solve Σ α_i u_i − Σ β_j w_j = 0; the intersection is spanned by Σ α_i u_i.
    let mut cols: Vec<Vector> = s1.basis.clone();
    cols.extend(s2.basis.iter().map(|w| -w));
    let relations = kernel(&Matrix::from_columns(n, &cols)?);
    let vectors: Vec<Vector> = relations
        .basis()
        .iter()
        .map(|rel| {
            let mut v = Vector::zeros(n);
            for (a, u) in rel.iter().zip(&s1.basis) {
                v.axpy(a, u);
            }
            v
        })
        .collect();
    Subspace::span(n, &vectors)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DirectSumFailure {
    pub rank: usize,
    pub total_dim: usize,
    pub ambient_dim: usize,
}

impl fmt::Display for DirectSumFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "concatenated bases have rank {}, component dimensions sum to {}, ambient dimension is {}",
            self.rank, self.total_dim, self.ambient_dim
        )
    }
}

/// Checks that `parts` form a direct sum equal to the whole space.
pub fn assert_direct_sum(parts: &[&Subspace], ambient_dim: usize) -> Result<(), DirectSumFailure> {
    let vectors: Vec<Vector> = parts.iter().flat_map(|p| p.basis.iter().cloned()).collect();
    let total_dim = vectors.len();
    let rank = if parts.iter().any(|p| p.ambient_dim != ambient_dim) {
        0
    } else {
        Subspace::span(ambient_dim, &vectors).map_or(0, |s| s.dim())
    };
    if rank == total_dim && total_dim == ambient_dim {
        Ok(())
    } else {
        Err(DirectSumFailure {
            rank,
            total_dim,
            ambient_dim,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn span(n: usize, vs: &[&[i64]]) -> Subspace {
        let vectors: Vec<Vector> = vs.iter().map(|v| Vector::from_ints(v)).collect();
        Subspace::span(n, &vectors).unwrap()
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel(&Matrix::identity(3)).is_zero());
        assert_eq!(kernel(&Matrix::zeros(2, 2)), Subspace::full(2));
        let ones = Matrix::from_int_rows(&[&[1, 1], &[1, 1]]);
        assert_eq!(kernel(&ones), span(2, &[&[1, -1]]));
    }

    #[test]
    fn image_examples() {
        assert_eq!(image(&Matrix::identity(4)), Subspace::full(4));
        assert!(image(&Matrix::zeros(3, 2)).is_zero());
        let ones = Matrix::from_int_rows(&[&[1, 1], &[1, 1]]);
        assert_eq!(image(&ones), span(2, &[&[1, 1]]));
    }

    #[test]
    fn intersect_examples() {
        let s = span(3, &[&[1, 2, 0], &[0, 1, 1]]);
        assert_eq!(intersect(&Subspace::full(3), &s).unwrap(), s);
        assert!(intersect(&span(2, &[&[1, 0]]), &span(2, &[&[0, 1]])).unwrap().is_zero());
        assert_eq!(
            intersect(&span(2, &[&[1, 0], &[0, 1]]), &span(2, &[&[1, 1]])).unwrap(),
            span(2, &[&[1, 1]])
        );
        assert!(matches!(
            intersect(&Subspace::full(2), &Subspace::full(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn direct_sum_examples() {
        let axes: Vec<Subspace> = (0..3).map(|i| Subspace::span(3, &[Vector::unit(3, i)]).unwrap()).collect();
        assert!(assert_direct_sum(&axes.iter().collect::<Vec<_>>(), 3).is_ok());
        let line = span(2, &[&[1, 0]]);
        let err = assert_direct_sum(&[&line, &line], 2).unwrap_err();
        assert_eq!(err.rank, 1);
        assert_eq!(err.total_dim, 2);
    }

    #[test]
    fn coordinates_and_membership() {
        let s = span(3, &[&[1, 1, 0], &[0, 1, 1]]);
        let v = Vector::from_ints(&[2, 5, 3]);
        // Reduced basis is (1, 0, -1), (0, 1, 1).
        assert_eq!(s.basis()[0], Vector::from_ints(&[1, 0, -1]));
        let c = s.coordinates(&v).unwrap();
        assert_eq!(c, Vector::from_ints(&[2, 5]));
        assert!(!s.contains(&Vector::from_ints(&[1, 0, 0])));
    }

    #[test]
    fn solve_and_inverse() {
        let m = Matrix::from_int_rows(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        let singular = Matrix::from_int_rows(&[&[1, 1], &[1, 1]]);
        assert!(singular.inverse().unwrap().is_none());
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-2i64..=2, r * c).prop_map(move |xs| {
                let rows: Vec<Vec<Scalar>> =
                    xs.chunks(c).map(|row| row.iter().map(|&x| Scalar::from_int(x)).collect()).collect();
                Matrix::from_rows(rows).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            let k = kernel(&m);
            prop_assert_eq!(m.rank() + k.dim(), m.cols());
            for v in k.basis() {
                prop_assert!(m.mul_vec(v).unwrap().is_zero());
            }
            prop_assert_eq!(image(&m).dim(), m.rank());
        }

        #[test]
        fn intersection_laws(a in small_matrix(), b in small_matrix()) {
            let n = a.rows();
            let b = if b.rows() == n { b } else { Matrix::zeros(n, 1) };
            let (s1, s2) = (image(&a), image(&b));
            let i12 = intersect(&s1, &s2).unwrap();
            prop_assert_eq!(&i12, &intersect(&s2, &s1).unwrap());
            prop_assert_eq!(&intersect(&s1, &s1).unwrap(), &s1);
            prop_assert!(i12.is_subspace_of(&s1) && i12.is_subspace_of(&s2));
        }

        #[test]
        fn direct_sum_decomposes_uniquely(
            m in (2usize..5).prop_flat_map(|n| proptest::collection::vec(-3i64..=3, n * n).prop_map(move |xs| (n, xs))),
            target in proptest::collection::vec(-5i64..=5, 4),
        ) {
            let (n, xs) = m;
            let cols: Vec<Vector> = xs.chunks(n).map(Vector::from_ints).collect();
            let parts: Vec<Subspace> = cols.iter().map(|c| Subspace::span(n, std::slice::from_ref(c)).unwrap()).collect();
            let refs: Vec<&Subspace> = parts.iter().collect();
            if assert_direct_sum(&refs, n).is_ok() {
                let b = Matrix::from_columns(n, &cols).unwrap();
                let t = Vector::from_ints(&target[..n]);
                let rhs = Matrix::from_columns(n, std::slice::from_ref(&t)).unwrap();
                let x = b.solve(&rhs).unwrap().expect("unique solution");
                prop_assert_eq!(b.mul_vec(&x.column(0)).unwrap(), t);
            }
        }
    }
}
