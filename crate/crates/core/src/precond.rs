//! Left preconditioners `M`: the solvers only ever need `M^{-1}` and
//! `M^{-H}` applied to a vector.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::sparse::CsrMatrix;
use crate::vector::Vector;

pub trait Preconditioner<S: Scalar> {
    /// `z <- M^{-1} r`
    fn apply(&self, r: &Vector<S>, z: &mut Vector<S>);

    /// `u <- M^{-H} q`
    fn apply_adjoint(&self, q: &Vector<S>, u: &mut Vector<S>);

    fn name(&self) -> &str;
}

impl<S: Scalar, P: Preconditioner<S> + ?Sized> Preconditioner<S> for &P {
    fn apply(&self, r: &Vector<S>, z: &mut Vector<S>) {
        (**self).apply(r, z)
    }
    fn apply_adjoint(&self, q: &Vector<S>, u: &mut Vector<S>) {
        (**self).apply_adjoint(q, u)
    }
    fn name(&self) -> &str {
        (**self).name()
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Identity;

impl<S: Scalar> Preconditioner<S> for Identity {
    fn apply(&self, r: &Vector<S>, z: &mut Vector<S>) {
        z.copy_from(r);
    }
    fn apply_adjoint(&self, q: &Vector<S>, u: &mut Vector<S>) {
        u.copy_from(q);
    }
    fn name(&self) -> &str {
        "none"
    }
}

pub fn identity() -> Identity {
    Identity
}

/// Diagonal scaling by `diag(A)^{-1}`.
#[derive(Clone, Debug)]
pub struct Jacobi<S> {
    inv_diag: Vec<S>,
    replaced: Vec<usize>,
}

impl<S: Scalar> Jacobi<S> {
    /// Missing or tiny (`|a_ii| <= eps * ||A||_max`) diagonal entries are
    /// replaced by 1; their rows are listed in [`Jacobi::replaced_rows`].
    pub fn new(a: &CsrMatrix<S>) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::dim("jacobi (square matrix)", a.n_rows(), a.n_cols()));
        }
        let tiny = f64::EPSILON * a.norm_max();
        let mut replaced = Vec::new();
        let inv_diag = a
            .diagonal()
            .into_iter()
            .enumerate()
            .map(|(i, d)| match d {
                Some(v) if v.modulus() > tiny && v.is_finite() => S::one() / v,
                _ => {
                    replaced.push(i);
                    S::one()
                }
            })
            .collect();
        if !replaced.is_empty() {
            log::warn!(
                "jacobi: {} zero or tiny diagonal entries replaced by 1",
                replaced.len()
            );
        }
        Ok(Jacobi { inv_diag, replaced })
    }

    pub fn replaced_rows(&self) -> &[usize] {
        &self.replaced
    }
}

pub fn jacobi<S: Scalar>(a: &CsrMatrix<S>) -> Result<Jacobi<S>> {
    Jacobi::new(a)
}

impl<S: Scalar> Preconditioner<S> for Jacobi<S> {
    fn apply(&self, r: &Vector<S>, z: &mut Vector<S>) {
        assert_eq!(r.len(), self.inv_diag.len());
        for ((zi, &ri), &d) in z
            .as_mut_slice()
            .iter_mut()
            .zip(r.iter())
            .zip(&self.inv_diag)
        {
            *zi = d * ri;
        }
    }
    fn apply_adjoint(&self, q: &Vector<S>, u: &mut Vector<S>) {
        assert_eq!(q.len(), self.inv_diag.len());
        for ((ui, &qi), &d) in u
            .as_mut_slice()
            .iter_mut()
            .zip(q.iter())
            .zip(&self.inv_diag)
        {
            *ui = d.conj() * qi;
        }
    }
    fn name(&self) -> &str {
        "jacobi"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testkit::random_vector;
    use num_complex::Complex64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn applied<S: Scalar>(p: &impl Preconditioner<S>, v: &Vector<S>, adjoint: bool) -> Vector<S> {
        let mut out = Vector::zeros(v.len());
        if adjoint {
            p.apply_adjoint(v, &mut out);
        } else {
            p.apply(v, &mut out);
        }
        out
    }

    #[test]
    fn identity_copies() {
        let v = Vector::<f64>::from_real_slice(&[1.0, 2.0]);
        assert_eq!(applied(&identity(), &v, false), v);
        let w = Vector::<f64>::from_real_slice(&[0.0, 5.0]);
        assert_eq!(applied(&identity(), &w, true), w);
    }

    #[test]
    fn jacobi_examples() {
        let a = CsrMatrix::from_diagonal(&[2.0, 4.0]);
        let p = jacobi(&a).unwrap();
        assert_eq!(
            applied(&p, &Vector::from_real_slice(&[2.0, 4.0]), false).as_slice(),
            &[1.0, 1.0]
        );
        assert_eq!(applied(&p, &Vector::ones(2), true).as_slice(), &[0.5, 0.25]);
    }

    #[test]
    fn jacobi_inverts_diagonal() {
        let c = |re, im| Complex64::new(re, im);
        let a = CsrMatrix::from_dense_rows(&[
            vec![c(2.0, 1.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(-3.0, 0.5)],
        ]);
        let p = jacobi(&a).unwrap();
        let x: Vector<Complex64> = vec![c(1.0, 2.0), c(-1.0, 0.5)].into();
        let dx: Vector<Complex64> = vec![c(2.0, 1.0) * x[0], c(-3.0, 0.5) * x[1]].into();
        assert!(applied(&p, &dx, false).sub(&x).norm_inf() <= 1e-14);
    }

    #[test]
    fn jacobi_fallback_on_missing_diagonal() {
        let a = CsrMatrix::from_dense_rows(&[vec![0.0, 1.0], vec![1.0, 3.0]]);
        let p = jacobi(&a).unwrap();
        assert_eq!(p.replaced_rows(), &[0]);
        let out = applied(&p, &Vector::from_real_slice(&[5.0, 3.0]), false);
        assert_eq!(out.as_slice(), &[5.0, 1.0]);
    }

    #[test]
    fn adjoint_consistency() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let n = 12;
        let diag: Vec<Complex64> = (0..n)
            .map(|i| Complex64::new(1.0 + i as f64, 0.3 * i as f64 - 1.0))
            .collect();
        let a = CsrMatrix::from_diagonal(&diag);
        let p = jacobi(&a).unwrap();
        let u: Vector<Complex64> = random_vector(n, &mut rng);
        let v: Vector<Complex64> = random_vector(n, &mut rng);
        let lhs = applied(&p, &u, true).dot(&v);
        let rhs = u.dot(&applied(&p, &v, false));
        assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm());

        let ident = identity();
        let lhs = applied(&ident, &u, true).dot(&v);
        let rhs = u.dot(&applied(&ident, &v, false));
        assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm());
    }
}
