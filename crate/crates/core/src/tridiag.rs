//! Tridiagonal projection matrices and their pivot-free bidiagonal LU.

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::vector::Vector;

/// Square tridiagonal matrix with diagonal `a_1..a_m`, subdiagonal
/// `d_2..d_m` (entry `(k, k-1)`) and superdiagonal `b_2..b_m` (entry
/// `(k-1, k)`).
#[derive(Clone, Debug, PartialEq)]
pub struct TridiagonalMatrix<S> {
    diag: Vec<S>,
    sub: Vec<S>,
    sup: Vec<S>,
}

impl<S: Scalar> TridiagonalMatrix<S> {
    pub fn new(diag: Vec<S>, sub: Vec<S>, sup: Vec<S>) -> Result<Self> {
        let off = diag.len().saturating_sub(1);
        if sub.len() != off {
            return Err(Error::dim("TridiagonalMatrix sub", off, sub.len()));
        }
        if sup.len() != off {
            return Err(Error::dim("TridiagonalMatrix super", off, sup.len()));
        }
        Ok(TridiagonalMatrix { diag, sub, sup })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[S] {
        &self.diag
    }

    pub fn sub(&self) -> &[S] {
        &self.sub
    }

    pub fn sup(&self) -> &[S] {
        &self.sup
    }

    pub fn get(&self, i: usize, j: usize) -> S {
        if i == j {
            self.diag[i]
        } else if i == j + 1 {
            self.sub[j]
        } else if j == i + 1 {
            self.sup[i]
        } else {
            S::zero()
        }
    }

    pub fn to_dense(&self) -> DenseMatrix<S> {
        let m = self.dim();
        let mut d = DenseMatrix::zeros(m, m);
        for i in 0..m {
            for j in i.saturating_sub(1)..(i + 2).min(m) {
                d[(i, j)] = self.get(i, j);
            }
        }
        d
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        TridiagonalMatrix {
            diag: self.diag.iter().map(|v| v.conj()).collect(),
            sub: self.sup.iter().map(|v| v.conj()).collect(),
            sup: self.sub.iter().map(|v| v.conj()).collect(),
        }
    }

    pub fn mul_vec(&self, x: &Vector<S>) -> Result<Vector<S>> {
        let m = self.dim();
        if x.len() != m {
            return Err(Error::dim("TridiagonalMatrix::mul_vec", m, x.len()));
        }
        Ok((0..m)
            .map(|i| {
                let mut acc = self.diag[i] * x[i];
                if i > 0 {
                    acc += self.sub[i - 1] * x[i - 1];
                }
                if i + 1 < m {
                    acc += self.sup[i] * x[i + 1];
                }
                acc
            })
            .collect())
    }

    fn entries(&self) -> impl Iterator<Item = &S> {
        self.diag.iter().chain(&self.sub).chain(&self.sup)
    }

    pub fn norm_frobenius(&self) -> f64 {
        self.entries().map(|v| v.modulus_sqr()).sum::<f64>().sqrt()
    }

    pub fn norm_max(&self) -> f64 {
        self.entries().fold(0.0, |m, v| m.max(v.modulus()))
    }
}

/// `T = L U` with `L` unit lower bidiagonal and `U` upper bidiagonal whose
/// superdiagonal is the superdiagonal of `T`.
#[derive(Clone, Debug, PartialEq)]
pub struct TriLU<S> {
    /// `l_2..l_m`
    lower: Vec<S>,
    /// `u_1..u_m`
    upper_diag: Vec<S>,
    /// `b_2..b_m`, copied from `T`
    upper_sup: Vec<S>,
}

/// Doolittle factorization without pivoting; pivoting would destroy the
/// bidiagonal structure that the progressive update relies on.
pub fn lu_tridiag<S: Scalar>(t: &TridiagonalMatrix<S>) -> Result<TriLU<S>> {
    let m = t.dim();
    let tiny = f64::EPSILON * t.norm_max();
    let mut lower = Vec::with_capacity(m.saturating_sub(1));
    let mut upper_diag = Vec::with_capacity(m);
    for k in 0..m {
        let u = if k == 0 {
            t.diag[0]
        } else {
            let l = t.sub[k - 1] / upper_diag[k - 1];
            lower.push(l);
            t.diag[k] - l * t.sup[k - 1]
        };
        if u.modulus() <= tiny || u == S::zero() {
            return Err(Error::PivotBreakdown {
                index: k,
                magnitude: u.modulus(),
            });
        }
        upper_diag.push(u);
    }
    Ok(TriLU {
        lower,
        upper_diag,
        upper_sup: t.sup.clone(),
    })
}

impl<S: Scalar> TriLU<S> {
    pub fn dim(&self) -> usize {
        self.upper_diag.len()
    }

    pub fn lower(&self) -> &[S] {
        &self.lower
    }

    pub fn upper_diag(&self) -> &[S] {
        &self.upper_diag
    }

    pub fn upper_sup(&self) -> &[S] {
        &self.upper_sup
    }

    /// `L U` as a tridiagonal matrix.
    pub fn recompose(&self) -> TridiagonalMatrix<S> {
        let m = self.dim();
        let diag = (0..m)
            .map(|k| {
                if k == 0 {
                    self.upper_diag[0]
                } else {
                    self.lower[k - 1] * self.upper_sup[k - 1] + self.upper_diag[k]
                }
            })
            .collect();
        let sub = (1..m)
            .map(|k| self.lower[k - 1] * self.upper_diag[k - 1])
            .collect();
        TridiagonalMatrix {
            diag,
            sub,
            sup: self.upper_sup.clone(),
        }
    }

    /// Solve `T y = rhs`.
    pub fn solve(&self, rhs: &Vector<S>) -> Result<Vector<S>> {
        let m = self.dim();
        if rhs.len() != m {
            return Err(Error::dim("TriLU::solve", m, rhs.len()));
        }
        let mut y = rhs.clone();
        for k in 1..m {
            let prev = y[k - 1];
            y[k] -= self.lower[k - 1] * prev;
        }
        for k in (0..m).rev() {
            if k + 1 < m {
                let next = y[k + 1];
                y[k] -= self.upper_sup[k] * next;
            }
            y[k] = y[k] / self.upper_diag[k];
        }
        Ok(y)
    }

    /// Solve `T^H y = rhs` using `T^H = U^H L^H`.
    pub fn solve_adjoint(&self, rhs: &Vector<S>) -> Result<Vector<S>> {
        let m = self.dim();
        if rhs.len() != m {
            return Err(Error::dim("TriLU::solve_adjoint", m, rhs.len()));
        }
        let mut y = rhs.clone();
        for k in 0..m {
            if k > 0 {
                let prev = y[k - 1];
                y[k] -= self.upper_sup[k - 1].conj() * prev;
            }
            y[k] = y[k] / self.upper_diag[k].conj();
        }
        for k in (0..m.saturating_sub(1)).rev() {
            let next = y[k + 1];
            y[k] -= self.lower[k].conj() * next;
        }
        Ok(y)
    }
}
