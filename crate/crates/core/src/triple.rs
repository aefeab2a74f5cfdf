//! Triple systems given by structure constants.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::scalar::Scalar;

/// Sparse coordinate list, sorted by index, without zero entries.
pub(crate) type Sparse = Vec<(usize, Scalar)>;

pub(crate) fn to_sparse(v: &Vector) -> Sparse {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub(crate) fn to_dense(n: usize, s: &Sparse) -> Vector {
    let mut v = Vector::zeros(n);
    for (i, x) in s {
        v[*i] = x.clone();
    }
    v
}

/// Accumulates `Σ c_i v_i` for sparse `v_i`.
#[derive(Default)]
pub(crate) struct Accumulator(BTreeMap<usize, Scalar>);

impl Accumulator {
    pub(crate) fn add_scaled(&mut self, c: &Scalar, v: &Sparse) {
        for (i, x) in v {
            *self.0.entry(*i).or_default() += c * x;
        }
    }

    pub(crate) fn add(&mut self, v: &Sparse) {
        for (i, x) in v {
            *self.0.entry(*i).or_default() += x;
        }
    }

    pub(crate) fn sub(&mut self, v: &Sparse) {
        for (i, x) in v {
            *self.0.entry(*i).or_default() -= x;
        }
    }

    pub(crate) fn finish(self) -> Sparse {
        self.0.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }
}

/// A finite-dimensional vector space with a trilinear product
/// `(e_i e_j e_k) = Σ_l c_{ijk}^l e_l`.
#[derive(Clone, Debug)]
pub struct TripleSystem {
    dim: usize,
    label: String,
    /// Indexed by `(i * dim + j) * dim + k`; an empty entry is the zero vector.
    table: Vec<Sparse>,
}

impl TripleSystem {
    /// The system with every product zero.
    pub fn zero(dim: usize, label: impl Into<String>) -> Self {
        TripleSystem {
            dim,
            label: label.into(),
            table: vec![Vec::new(); dim * dim * dim],
        }
    }

    /// Builds the structure constants by evaluating a trilinear map on all basis triples.
    pub fn from_product_oracle<F>(dim: usize, label: impl Into<String>, f: F) -> Self
    where
        F: Fn(&Vector, &Vector, &Vector) -> Vector,
    {
        let mut s = Self::zero(dim, label);
        let basis: Vec<Vector> = (0..dim).map(|i| Vector::unit(dim, i)).collect();
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let v = f(&basis[i], &basis[j], &basis[k]);
                    assert_eq!(v.len(), dim, "oracle returned a vector of the wrong length");
                    let slot = s.slot(i, j, k);
                    s.table[slot] = to_sparse(&v);
                }
            }
        }
        s
    }

    /// Builds the table from a function giving `(e_i e_j e_k)` in sparse form.
    pub(crate) fn from_basis_fn<F>(dim: usize, label: impl Into<String>, f: F) -> Self
    where
        F: Fn(usize, usize, usize) -> Sparse + Sync,
    {
        use rayon::prelude::*;
        let table = (0..dim * dim * dim)
            .into_par_iter()
            .map(|s| f(s / (dim * dim), (s / dim) % dim, s % dim))
            .collect();
        TripleSystem {
            dim,
            label: label.into(),
            table,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    fn slot(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: i,
            });
        }
        Ok(())
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> Vector {
        to_dense(self.dim, &self.table[self.slot(i, j, k)])
    }

    pub fn set_constant(&mut self, i: usize, j: usize, k: usize, value: &Vector) -> Result<()> {
        for idx in [i, j, k] {
            self.check_index(idx)?;
        }
        value.check_len(self.dim)?;
        let slot = self.slot(i, j, k);
        self.table[slot] = to_sparse(value);
        Ok(())
    }

    /// Nonzero structure constants in lexicographic order of `(i, j, k)`.
    pub fn constants(&self) -> impl Iterator<Item = ((usize, usize, usize), Vector)> + '_ {
        let d = self.dim;
        self.table
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_empty())
            .map(move |(s, v)| ((s / (d * d), (s / d) % d, s % d), to_dense(d, v)))
    }

    pub fn nonzero_constants(&self) -> usize {
        self.table.iter().filter(|v| !v.is_empty()).count()
    }

    /// Equality of the structure constants, ignoring labels.
    pub fn same_constants(&self, other: &TripleSystem) -> bool {
        self.dim == other.dim && self.table == other.table
    }

    pub(crate) fn basis_product(&self, i: usize, j: usize, k: usize) -> &Sparse {
        &self.table[self.slot(i, j, k)]
    }

    pub(crate) fn product_sparse(&self, x: &Sparse, y: &Sparse, z: &Sparse) -> Sparse {
        let mut acc = Accumulator::default();
        for (i, a) in x {
            for (j, b) in y {
                let ab = a * b;
                for (k, c) in z {
                    let t = self.basis_product(*i, *j, *k);
                    if t.is_empty() {
                        continue;
                    }
                    acc.add_scaled(&(&ab * c), t);
                }
            }
        }
        acc.finish()
    }

    pub fn product(&self, x: &Vector, y: &Vector, z: &Vector) -> Result<Vector> {
        for v in [x, y, z] {
            v.check_len(self.dim)?;
        }
        Ok(to_dense(
            self.dim,
            &self.product_sparse(&to_sparse(x), &to_sparse(y), &to_sparse(z)),
        ))
    }

    /// The same product written in a new basis, given as the columns of `basis`
    /// (coordinates with respect to the current basis).
    pub fn rebase(&self, basis: &Matrix) -> Result<TripleSystem> {
        let n = self.dim;
        if basis.rows() != n || basis.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: basis.cols(),
            });
        }
        let cols: Vec<Sparse> = basis.columns().iter().map(to_sparse).collect();
        let mut images = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    images.push(to_dense(n, &self.product_sparse(&cols[i], &cols[j], &cols[k])));
                }
            }
        }
        let rhs = Matrix::from_columns(n, &images)?;
        let coords = basis
            .solve(&rhs)?
            .ok_or_else(|| Error::Decomposition("change of basis matrix is singular".into()))?;
        let mut out = TripleSystem::zero(n, self.label.clone());
        for (slot, v) in coords.columns().iter().enumerate() {
            out.table[slot] = to_sparse(v);
        }
        Ok(out)
    }
}
