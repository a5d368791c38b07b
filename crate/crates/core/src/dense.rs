//! Small dense matrices and the partial-pivoting LU used as a ground-truth
//! oracle.

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::operator::LinearOperator;
use crate::scalar::Scalar;
use crate::vector::Vector;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<S> {
    n_rows: usize,
    n_cols: usize,
    values: Vec<S>,
}

impl<S: Scalar> DenseMatrix<S> {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        DenseMatrix {
            n_rows,
            n_cols,
            values: vec![S::zero(); n_rows * n_cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_row_major(n_rows: usize, n_cols: usize, values: Vec<S>) -> Result<Self> {
        if values.len() != n_rows * n_cols {
            return Err(Error::dim(
                "DenseMatrix::from_row_major",
                n_rows * n_cols,
                values.len(),
            ));
        }
        Ok(DenseMatrix {
            n_rows,
            n_cols,
            values,
        })
    }

    pub fn from_rows(rows: &[Vec<S>]) -> Result<Self> {
        let n_cols = rows.first().map_or(0, Vec::len);
        let mut values = Vec::with_capacity(rows.len() * n_cols);
        for row in rows {
            if row.len() != n_cols {
                return Err(Error::dim("DenseMatrix::from_rows", n_cols, row.len()));
            }
            values.extend_from_slice(row);
        }
        Self::from_row_major(rows.len(), n_cols, values)
    }

    /// Matrix whose columns are `cols`; all must share a length.
    pub fn from_columns(n_rows: usize, cols: &[Vector<S>]) -> Result<Self> {
        let mut m = Self::zeros(n_rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != n_rows {
                return Err(Error::dim("DenseMatrix::from_columns", n_rows, c.len()));
            }
            for i in 0..n_rows {
                m[(i, j)] = c[i];
            }
        }
        Ok(m)
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.values[i * self.n_cols..(i + 1) * self.n_cols]
    }

    pub fn column(&self, j: usize) -> Vector<S> {
        (0..self.n_rows).map(|i| self[(i, j)]).collect()
    }

    pub fn columns(&self) -> Vec<Vector<S>> {
        (0..self.n_cols).map(|j| self.column(j)).collect()
    }

    pub fn mul_vec(&self, x: &Vector<S>) -> Result<Vector<S>> {
        if x.len() != self.n_cols {
            return Err(Error::dim("DenseMatrix::mul_vec", self.n_cols, x.len()));
        }
        Ok((0..self.n_rows)
            .map(|i| {
                let mut acc = S::zero();
                for (&a, &xj) in self.row(i).iter().zip(x.iter()) {
                    acc += a * xj;
                }
                acc
            })
            .collect())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.n_cols != other.n_rows {
            return Err(Error::dim("DenseMatrix::matmul", self.n_cols, other.n_rows));
        }
        let mut out = Self::zeros(self.n_rows, other.n_cols);
        for i in 0..self.n_rows {
            for k in 0..self.n_cols {
                let a = self[(i, k)];
                if a == S::zero() {
                    continue;
                }
                for j in 0..other.n_cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.n_cols, self.n_rows);
        for i in 0..self.n_rows {
            for j in 0..self.n_cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.n_cols, self.n_rows);
        for i in 0..self.n_rows {
            for j in 0..self.n_cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if (self.n_rows, self.n_cols) != (other.n_rows, other.n_cols) {
            return Err(Error::dim(
                "DenseMatrix::sub",
                self.values.len(),
                other.values.len(),
            ));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| a - b)
            .collect();
        Ok(DenseMatrix {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            values,
        })
    }

    pub fn norm_frobenius(&self) -> f64 {
        self.values
            .iter()
            .map(|v| v.modulus_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn norm_max(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.modulus()))
    }
}

impl<S> Index<(usize, usize)> for DenseMatrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.values[i * self.n_cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for DenseMatrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.values[i * self.n_cols + j]
    }
}

impl<S: Scalar> LinearOperator<S> for DenseMatrix<S> {
    fn nrows(&self) -> usize {
        self.n_rows
    }
    fn ncols(&self) -> usize {
        self.n_cols
    }
    fn apply_into(&self, x: &Vector<S>, y: &mut Vector<S>) {
        assert_eq!(x.len(), self.n_cols);
        assert_eq!(y.len(), self.n_rows);
        for i in 0..self.n_rows {
            let mut acc = S::zero();
            for (&a, &xj) in self.row(i).iter().zip(x.iter()) {
                acc += a * xj;
            }
            y[i] = acc;
        }
    }
    fn apply_adjoint_into(&self, x: &Vector<S>, y: &mut Vector<S>) {
        assert_eq!(x.len(), self.n_rows);
        assert_eq!(y.len(), self.n_cols);
        y.fill(S::zero());
        for i in 0..self.n_rows {
            let xi = x[i];
            for (j, &a) in self.row(i).iter().enumerate() {
                y[j] += a.conj() * xi;
            }
        }
    }
}

/// Solve `A x = b` by Gaussian elimination with partial pivoting.
pub fn dense_lu_solve<S: Scalar>(a: &DenseMatrix<S>, b: &Vector<S>) -> Result<Vector<S>> {
    let n = a.n_rows();
    if a.n_cols() != n {
        return Err(Error::dim("dense_lu_solve (square)", n, a.n_cols()));
    }
    if b.len() != n {
        return Err(Error::dim("dense_lu_solve", n, b.len()));
    }
    let tiny = f64::EPSILON * a.norm_max();
    let mut lu = a.clone();
    let mut x = b.clone();

    for k in 0..n {
        let (p, pmag) = (k..n)
            .map(|i| (i, lu[(i, k)].modulus()))
            .fold(
                (k, -1.0),
                |best, cur| if cur.1 > best.1 { cur } else { best },
            );
        if pmag <= tiny || pmag == 0.0 {
            return Err(Error::SingularPivot {
                index: k,
                magnitude: pmag,
            });
        }
        if p != k {
            for j in 0..n {
                let tmp = lu[(k, j)];
                lu[(k, j)] = lu[(p, j)];
                lu[(p, j)] = tmp;
            }
            let tmp = x[k];
            x[k] = x[p];
            x[p] = tmp;
        }
        let pivot = lu[(k, k)];
        for i in k + 1..n {
            let factor = lu[(i, k)] / pivot;
            if factor == S::zero() {
                continue;
            }
            lu[(i, k)] = factor;
            for j in k + 1..n {
                let u = lu[(k, j)];
                lu[(i, j)] -= factor * u;
            }
            let xk = x[k];
            x[i] -= factor * xk;
        }
    }
    for k in (0..n).rev() {
        let mut acc = x[k];
        for j in k + 1..n {
            acc -= lu[(k, j)] * x[j];
        }
        x[k] = acc / lu[(k, k)];
    }
    Ok(x)
}
