//! Abstract operators: anything that can multiply by `A` and by its adjoint.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::scalar::Scalar;
use crate::vector::Vector;

/// A linear map `A: S^ncols -> S^nrows` with access to `A^H` (`A^T` for
/// real scalars).
///
/// The `*_into` methods panic on length mismatch; solvers check dimensions
/// once up front.
pub trait LinearOperator<S: Scalar> {
    fn nrows(&self) -> usize;
    fn ncols(&self) -> usize;

    /// `y <- A x`
    fn apply_into(&self, x: &Vector<S>, y: &mut Vector<S>);

    /// `y <- A^H x`
    fn apply_adjoint_into(&self, x: &Vector<S>, y: &mut Vector<S>);

    fn apply(&self, x: &Vector<S>) -> Vector<S> {
        let mut y = Vector::zeros(self.nrows());
        self.apply_into(x, &mut y);
        y
    }

    fn apply_adjoint(&self, x: &Vector<S>) -> Vector<S> {
        let mut y = Vector::zeros(self.ncols());
        self.apply_adjoint_into(x, &mut y);
        y
    }
}

impl<S: Scalar, O: LinearOperator<S> + ?Sized> LinearOperator<S> for &O {
    fn nrows(&self) -> usize {
        (**self).nrows()
    }
    fn ncols(&self) -> usize {
        (**self).ncols()
    }
    fn apply_into(&self, x: &Vector<S>, y: &mut Vector<S>) {
        (**self).apply_into(x, y)
    }
    fn apply_adjoint_into(&self, x: &Vector<S>, y: &mut Vector<S>) {
        (**self).apply_adjoint_into(x, y)
    }
}

/// View of `A^H` as an operator; used to run the primal machinery on the
/// dual system.
#[derive(Clone, Copy, Debug)]
pub struct Adjoint<O>(pub O);

impl<S: Scalar, O: LinearOperator<S>> LinearOperator<S> for Adjoint<O> {
    fn nrows(&self) -> usize {
        self.0.ncols()
    }
    fn ncols(&self) -> usize {
        self.0.nrows()
    }
    fn apply_into(&self, x: &Vector<S>, y: &mut Vector<S>) {
        self.0.apply_adjoint_into(x, y)
    }
    fn apply_adjoint_into(&self, x: &Vector<S>, y: &mut Vector<S>) {
        self.0.apply_into(x, y)
    }
}

/// Operator wrapper that counts products by `A` and by `A^H`.
#[derive(Debug)]
pub struct Instrumented<O> {
    inner: O,
    mv: AtomicUsize,
    mv_adjoint: AtomicUsize,
}

impl<O> Instrumented<O> {
    pub fn new(inner: O) -> Self {
        Instrumented {
            inner,
            mv: AtomicUsize::new(0),
            mv_adjoint: AtomicUsize::new(0),
        }
    }

    /// `(products by A, products by A^H)` since construction or last reset.
    pub fn counts(&self) -> (usize, usize) {
        (
            self.mv.load(Ordering::Relaxed),
            self.mv_adjoint.load(Ordering::Relaxed),
        )
    }

    pub fn reset(&self) {
        self.mv.store(0, Ordering::Relaxed);
        self.mv_adjoint.store(0, Ordering::Relaxed);
    }

    pub fn inner(&self) -> &O {
        &self.inner
    }
}

/// Wrap `inner` so every product is counted.
pub fn instrumented_operator<O>(inner: O) -> Instrumented<O> {
    Instrumented::new(inner)
}

impl<S: Scalar, O: LinearOperator<S>> LinearOperator<S> for Instrumented<O> {
    fn nrows(&self) -> usize {
        self.inner.nrows()
    }
    fn ncols(&self) -> usize {
        self.inner.ncols()
    }
    fn apply_into(&self, x: &Vector<S>, y: &mut Vector<S>) {
        self.mv.fetch_add(1, Ordering::Relaxed);
        self.inner.apply_into(x, y)
    }
    fn apply_adjoint_into(&self, x: &Vector<S>, y: &mut Vector<S>) {
        self.mv_adjoint.fetch_add(1, Ordering::Relaxed);
        self.inner.apply_adjoint_into(x, y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sparse::CsrMatrix;

    #[test]
    fn counts_single_product() {
        let a = CsrMatrix::<f64>::identity(3);
        let op = instrumented_operator(&a);
        let y = op.apply(&Vector::ones(3));
        assert_eq!(y, Vector::ones(3));
        assert_eq!(op.counts(), (1, 0));
        op.apply_adjoint(&y);
        assert_eq!(op.counts(), (1, 1));
        op.reset();
        assert_eq!(op.counts(), (0, 0));
    }

    #[test]
    fn adjoint_view_swaps_products() {
        let a = CsrMatrix::<f64>::from_dense_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]);
        let x = Vector::from_real_slice(&[1.0, 0.0]);
        assert_eq!(Adjoint(&a).apply(&x).as_slice(), &[0.0, 1.0]);
        assert_eq!(Adjoint(&a).apply_adjoint(&x).as_slice(), &[0.0, 0.0]);
    }
}
