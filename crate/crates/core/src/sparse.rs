//! Compressed sparse row matrices.

use num_complex::Complex64;

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::operator::LinearOperator;
use crate::scalar::Scalar;
use crate::vector::Vector;

/// Canonical CSR matrix: row offsets start at 0, column indices strictly
/// increasing within each row, no duplicates.
#[derive(Clone, Debug, PartialEq)]
pub struct CsrMatrix<S> {
    n_rows: usize,
    n_cols: usize,
    row_offsets: Vec<usize>,
    col_indices: Vec<usize>,
    values: Vec<S>,
}

impl<S: Scalar> CsrMatrix<S> {
    /// Build from raw CSR arrays, validating canonical form.
    pub fn try_new(
        n_rows: usize,
        n_cols: usize,
        row_offsets: Vec<usize>,
        col_indices: Vec<usize>,
        values: Vec<S>,
    ) -> Result<Self> {
        if row_offsets.len() != n_rows + 1 {
            return Err(Error::InvalidStructure(format!(
                "row_offsets has length {}, expected {}",
                row_offsets.len(),
                n_rows + 1
            )));
        }
        if row_offsets[0] != 0 {
            return Err(Error::InvalidStructure("row_offsets[0] must be 0".into()));
        }
        if col_indices.len() != values.len() || row_offsets[n_rows] != values.len() {
            return Err(Error::InvalidStructure(format!(
                "nnz inconsistent: row_offsets[n] = {}, {} column indices, {} values",
                row_offsets[n_rows],
                col_indices.len(),
                values.len()
            )));
        }
        for i in 0..n_rows {
            let (start, end) = (row_offsets[i], row_offsets[i + 1]);
            if start > end {
                return Err(Error::InvalidStructure(format!(
                    "row_offsets decreases at row {i}"
                )));
            }
            let cols = &col_indices[start..end];
            if let Some(&c) = cols.iter().find(|&&c| c >= n_cols) {
                return Err(Error::InvalidStructure(format!(
                    "column index {c} out of bounds in row {i} (n_cols = {n_cols})"
                )));
            }
            if cols.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidStructure(format!(
                    "column indices in row {i} are not strictly increasing"
                )));
            }
        }
        Ok(CsrMatrix {
            n_rows,
            n_cols,
            row_offsets,
            col_indices,
            values,
        })
    }

    /// Build from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets(
        n_rows: usize,
        n_cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, S)>,
    ) -> Result<Self> {
        let mut entries: Vec<(usize, usize, S)> = triplets.into_iter().collect();
        if let Some(&(r, c, _)) = entries
            .iter()
            .find(|&&(r, c, _)| r >= n_rows || c >= n_cols)
        {
            return Err(Error::InvalidStructure(format!(
                "entry ({r}, {c}) outside a {n_rows}x{n_cols} matrix"
            )));
        }
        // stable sort keeps the summation order of duplicates deterministic
        entries.sort_by_key(|&(r, c, _)| (r, c));

        let mut row_offsets = vec![0usize; n_rows + 1];
        let mut col_indices = Vec::with_capacity(entries.len());
        let mut values: Vec<S> = Vec::with_capacity(entries.len());
        let mut last: Option<(usize, usize)> = None;
        for (r, c, v) in entries {
            if last == Some((r, c)) {
                *values.last_mut().expect("duplicate follows an entry") += v;
            } else {
                col_indices.push(c);
                values.push(v);
                row_offsets[r + 1] += 1;
                last = Some((r, c));
            }
        }
        for i in 0..n_rows {
            row_offsets[i + 1] += row_offsets[i];
        }
        Self::try_new(n_rows, n_cols, row_offsets, col_indices, values)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diagonal(&vec![S::one(); n])
    }

    pub fn from_diagonal(diag: &[S]) -> Self {
        let n = diag.len();
        CsrMatrix {
            n_rows: n,
            n_cols: n,
            row_offsets: (0..=n).collect(),
            col_indices: (0..n).collect(),
            values: diag.to_vec(),
        }
    }

    /// Build from dense rows, dropping exact zeros.
    pub fn from_dense_rows(rows: &[Vec<S>]) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        let triplets = rows.iter().enumerate().flat_map(|(i, row)| {
            assert_eq!(row.len(), n_cols, "ragged dense rows");
            row.iter()
                .enumerate()
                .filter(|(_, &v)| v != S::zero())
                .map(move |(j, &v)| (i, j, v))
        });
        Self::from_triplets(n_rows, n_cols, triplets).expect("dense rows are in bounds")
    }

    pub fn from_dense(a: &DenseMatrix<S>) -> Self {
        let rows: Vec<Vec<S>> = (0..a.n_rows()).map(|i| a.row(i).to_vec()).collect();
        if rows.is_empty() {
            return Self::from_triplets(0, a.n_cols(), std::iter::empty()).unwrap();
        }
        Self::from_dense_rows(&rows)
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn is_square(&self) -> bool {
        self.n_rows == self.n_cols
    }

    pub fn row_offsets(&self) -> &[usize] {
        &self.row_offsets
    }

    pub fn col_indices(&self) -> &[usize] {
        &self.col_indices
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    /// Column indices and values of row `i`.
    pub fn row(&self, i: usize) -> (&[usize], &[S]) {
        let range = self.row_offsets[i]..self.row_offsets[i + 1];
        (&self.col_indices[range.clone()], &self.values[range])
    }

    /// Iterate `(row, col, value)` in row-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, S)> + '_ {
        (0..self.n_rows).flat_map(move |i| {
            let (cols, vals) = self.row(i);
            cols.iter().zip(vals).map(move |(&j, &v)| (i, j, v))
        })
    }

    pub fn get(&self, i: usize, j: usize) -> S {
        let (cols, vals) = self.row(i);
        match cols.binary_search(&j) {
            Ok(k) => vals[k],
            Err(_) => S::zero(),
        }
    }

    /// Diagonal entries; `None` where the entry is structurally absent.
    pub fn diagonal(&self) -> Vec<Option<S>> {
        (0..self.n_rows.min(self.n_cols))
            .map(|i| {
                let (cols, vals) = self.row(i);
                cols.binary_search(&i).ok().map(|k| vals[k])
            })
            .collect()
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

    /// Plain transpose (no conjugation).
    pub fn transpose(&self) -> Self {
        Self::from_triplets(
            self.n_cols,
            self.n_rows,
            self.triplets().map(|(i, j, v)| (j, i, v)),
        )
        .expect("transpose of a valid matrix is valid")
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_triplets(
            self.n_cols,
            self.n_rows,
            self.triplets().map(|(i, j, v)| (j, i, v.conj())),
        )
        .expect("adjoint of a valid matrix is valid")
    }

    pub fn to_dense(&self) -> DenseMatrix<S> {
        let mut d = DenseMatrix::zeros(self.n_rows, self.n_cols);
        for (i, j, v) in self.triplets() {
            d[(i, j)] = v;
        }
        d
    }

    /// `A + shift * I` (square matrices only).
    pub fn shift_diagonal(&self, shift: S) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::dim("shift_diagonal", self.n_rows, self.n_cols));
        }
        let diag = (0..self.n_rows).map(|i| (i, i, shift));
        Self::from_triplets(self.n_rows, self.n_cols, self.triplets().chain(diag))
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(S) -> T) -> CsrMatrix<T> {
        CsrMatrix {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            row_offsets: self.row_offsets.clone(),
            col_indices: self.col_indices.clone(),
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    /// Row-wise sequential product; fixed summation order.
    pub fn mul_vec_into(&self, x: &Vector<S>, y: &mut Vector<S>) {
        assert_eq!(x.len(), self.n_cols, "matvec: x has wrong length");
        assert_eq!(y.len(), self.n_rows, "matvec: y has wrong length");
        let xs = x.as_slice();
        for (i, yi) in y.as_mut_slice().iter_mut().enumerate() {
            let (cols, vals) = self.row(i);
            let mut acc = S::zero();
            for (&j, &a) in cols.iter().zip(vals) {
                acc += a * xs[j];
            }
            *yi = acc;
        }
    }

    /// `y <- A^H x` by scattering rows; no transposed copy is built.
    pub fn mul_adjoint_vec_into(&self, x: &Vector<S>, y: &mut Vector<S>) {
        assert_eq!(x.len(), self.n_rows, "matvec_adjoint: x has wrong length");
        assert_eq!(y.len(), self.n_cols, "matvec_adjoint: y has wrong length");
        y.fill(S::zero());
        let ys = y.as_mut_slice();
        for (i, &xi) in x.iter().enumerate() {
            let (cols, vals) = self.row(i);
            for (&j, &a) in cols.iter().zip(vals) {
                ys[j] += a.conj() * xi;
            }
        }
    }
}

impl CsrMatrix<f64> {
    pub fn to_complex(&self) -> CsrMatrix<Complex64> {
        self.map(Complex64::from_real)
    }
}

impl<S: Scalar> LinearOperator<S> for CsrMatrix<S> {
    fn nrows(&self) -> usize {
        self.n_rows
    }
    fn ncols(&self) -> usize {
        self.n_cols
    }
    fn apply_into(&self, x: &Vector<S>, y: &mut Vector<S>) {
        self.mul_vec_into(x, y)
    }
    fn apply_adjoint_into(&self, x: &Vector<S>, y: &mut Vector<S>) {
        self.mul_adjoint_vec_into(x, y)
    }
}

/// A CSR matrix in either scalar field, as loaded from a file or generator.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyCsr {
    Real(CsrMatrix<f64>),
    Complex(CsrMatrix<Complex64>),
}

impl AnyCsr {
    pub fn n_rows(&self) -> usize {
        match self {
            AnyCsr::Real(a) => a.n_rows(),
            AnyCsr::Complex(a) => a.n_rows(),
        }
    }

    pub fn n_cols(&self) -> usize {
        match self {
            AnyCsr::Real(a) => a.n_cols(),
            AnyCsr::Complex(a) => a.n_cols(),
        }
    }

    pub fn nnz(&self) -> usize {
        match self {
            AnyCsr::Real(a) => a.nnz(),
            AnyCsr::Complex(a) => a.nnz(),
        }
    }

    pub fn is_complex(&self) -> bool {
        matches!(self, AnyCsr::Complex(_))
    }
}

/// Checked `A x`.
pub fn matvec<S: Scalar>(a: &CsrMatrix<S>, x: &Vector<S>) -> Result<Vector<S>> {
    if a.n_cols() != x.len() {
        return Err(Error::dim("matvec", a.n_cols(), x.len()));
    }
    let mut y = Vector::zeros(a.n_rows());
    a.mul_vec_into(x, &mut y);
    Ok(y)
}

/// Checked `A^H x` (`A^T x` for real scalars).
pub fn matvec_adjoint<S: Scalar>(a: &CsrMatrix<S>, x: &Vector<S>) -> Result<Vector<S>> {
    if a.n_rows() != x.len() {
        return Err(Error::dim("matvec_adjoint", a.n_rows(), x.len()));
    }
    let mut y = Vector::zeros(a.n_cols());
    a.mul_adjoint_vec_into(x, &mut y);
    Ok(y)
}
