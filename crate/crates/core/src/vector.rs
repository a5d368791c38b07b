//! Dense vectors and the level-1 kernels the solvers are written against.

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Fixed-length dense vector.
#[derive(Clone, Debug, PartialEq)]
pub struct Vector<S> {
    data: Vec<S>,
}

impl<S: Scalar> Vector<S> {
    pub fn zeros(n: usize) -> Self {
        Vector {
            data: vec![S::zero(); n],
        }
    }

    pub fn from_elem(n: usize, value: S) -> Self {
        Vector {
            data: vec![value; n],
        }
    }

    pub fn ones(n: usize) -> Self {
        Self::from_elem(n, S::one())
    }

    /// Unit vector `e_k` of length `n`.
    pub fn unit(n: usize, k: usize) -> Self {
        let mut v = Self::zeros(n);
        v.data[k] = S::one();
        v
    }

    pub fn from_real_slice(values: &[f64]) -> Self {
        values.iter().map(|&x| S::from_real(x)).collect()
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn as_slice(&self) -> &[S] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [S] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<S> {
        self.data
    }

    pub fn iter(&self) -> std::slice::Iter<'_, S> {
        self.data.iter()
    }

    /// Euclidean norm `sqrt(sum |v_i|^2)`.
    pub fn norm2(&self) -> f64 {
        self.data
            .iter()
            .map(|v| v.modulus_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn norm_inf(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.modulus()))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == S::zero())
    }

    /// Sesquilinear product `sum conj(self_i) * other_i`. Panics on length
    /// mismatch; use [`dot`] for a checked variant.
    #[inline]
    pub fn dot(&self, other: &Self) -> S {
        assert_eq!(self.len(), other.len(), "dot: length mismatch");
        let mut acc = S::zero();
        for (&u, &v) in self.data.iter().zip(&other.data) {
            acc += u.conj() * v;
        }
        acc
    }

    /// `self <- self + a * x`
    #[inline]
    pub fn axpy(&mut self, a: S, x: &Self) {
        assert_eq!(self.len(), x.len(), "axpy: length mismatch");
        for (y, &xi) in self.data.iter_mut().zip(&x.data) {
            *y += a * xi;
        }
    }

    /// `self <- x + b * self`
    #[inline]
    pub fn xpby(&mut self, x: &Self, b: S) {
        assert_eq!(self.len(), x.len(), "xpby: length mismatch");
        for (y, &xi) in self.data.iter_mut().zip(&x.data) {
            *y = xi + b * *y;
        }
    }

    /// `self <- x + b * y`
    #[inline]
    pub fn assign_xpby(&mut self, x: &Self, b: S, y: &Self) {
        assert_eq!(self.len(), x.len(), "assign_xpby: length mismatch");
        assert_eq!(self.len(), y.len(), "assign_xpby: length mismatch");
        for ((o, &xi), &yi) in self.data.iter_mut().zip(&x.data).zip(&y.data) {
            *o = xi + b * yi;
        }
    }

    pub fn scale(&mut self, a: S) {
        for v in &mut self.data {
            *v *= a;
        }
    }

    pub fn scaled(&self, a: S) -> Self {
        self.data.iter().map(|&v| a * v).collect()
    }

    pub fn copy_from(&mut self, other: &Self) {
        assert_eq!(self.len(), other.len(), "copy_from: length mismatch");
        self.data.copy_from_slice(&other.data);
    }

    pub fn fill(&mut self, value: S) {
        self.data.iter_mut().for_each(|v| *v = value);
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "sub: length mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| a - b)
            .collect()
    }

    pub fn conj(&self) -> Self {
        self.data.iter().map(|v| v.conj()).collect()
    }
}

impl<S> Index<usize> for Vector<S> {
    type Output = S;
    fn index(&self, i: usize) -> &S {
        &self.data[i]
    }
}

impl<S> IndexMut<usize> for Vector<S> {
    fn index_mut(&mut self, i: usize) -> &mut S {
        &mut self.data[i]
    }
}

impl<S> From<Vec<S>> for Vector<S> {
    fn from(data: Vec<S>) -> Self {
        Vector { data }
    }
}

impl<S> FromIterator<S> for Vector<S> {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        Vector {
            data: iter.into_iter().collect(),
        }
    }
}

/// Checked sesquilinear inner product, conjugate on the first argument.
pub fn dot<S: Scalar>(u: &Vector<S>, v: &Vector<S>) -> Result<S> {
    if u.len() != v.len() {
        return Err(Error::dim("dot", u.len(), v.len()));
    }
    Ok(u.dot(v))
}

pub fn norm2<S: Scalar>(v: &Vector<S>) -> f64 {
    v.norm2()
}

/// Returns `a * x + y`.
pub fn axpy<S: Scalar>(a: S, x: &Vector<S>, y: &Vector<S>) -> Result<Vector<S>> {
    if x.len() != y.len() {
        return Err(Error::dim("axpy", x.len(), y.len()));
    }
    let mut out = y.clone();
    out.axpy(a, x);
    Ok(out)
}

pub fn scale<S: Scalar>(a: S, x: &Vector<S>) -> Vector<S> {
    x.scaled(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use proptest::prelude::*;

    #[test]
    fn dot_examples() {
        let e1 = Vector::<f64>::from_real_slice(&[1.0, 0.0]);
        let e2 = Vector::<f64>::from_real_slice(&[0.0, 1.0]);
        assert_eq!(dot(&e1, &e2).unwrap(), 0.0);

        let u = Vector::<f64>::from_real_slice(&[1.0, 2.0, 3.0]);
        assert_eq!(dot(&u, &Vector::ones(3)).unwrap(), 6.0);

        let i = Complex64::new(0.0, 1.0);
        let c: Vector<Complex64> = vec![i, Complex64::new(0.0, 0.0)].into();
        assert_eq!(dot(&c, &c).unwrap(), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn dot_rejects_mismatch() {
        let u = Vector::<f64>::zeros(2);
        let v = Vector::<f64>::zeros(3);
        assert!(matches!(dot(&u, &v), Err(Error::DimensionMismatch { .. })));
        assert!(axpy(1.0, &u, &v).is_err());
    }

    #[test]
    fn norm_and_axpy() {
        assert_eq!(Vector::<f64>::from_real_slice(&[3.0, 4.0]).norm2(), 5.0);
        assert_eq!(Vector::<f64>::zeros(7).norm2(), 0.0);
        let x = Vector::<f64>::from_real_slice(&[1.0, 0.0]);
        let y = Vector::<f64>::from_real_slice(&[0.0, 1.0]);
        assert_eq!(axpy(2.0, &x, &y).unwrap().as_slice(), &[2.0, 1.0]);
    }

    proptest! {
        #[test]
        fn complex_dot_reduces_to_real(v in prop::collection::vec((-10.0f64..10.0, -10.0f64..10.0), 1..20)) {
            let real_u: Vector<f64> = v.iter().map(|p| p.0).collect();
            let real_w: Vector<f64> = v.iter().map(|p| p.1).collect();
            let cu: Vector<Complex64> = real_u.iter().map(|&x| Complex64::from_real(x)).collect();
            let cw: Vector<Complex64> = real_w.iter().map(|&x| Complex64::from_real(x)).collect();
            let c = cu.dot(&cw);
            prop_assert_eq!(c.im, 0.0);
            prop_assert_eq!(c.re, real_u.dot(&real_w));
        }

        #[test]
        fn dot_is_conjugate_symmetric(v in prop::collection::vec((-10.0f64..10.0, -10.0f64..10.0, -10.0f64..10.0, -10.0f64..10.0), 1..20)) {
            let u: Vector<Complex64> = v.iter().map(|p| Complex64::new(p.0, p.1)).collect();
            let w: Vector<Complex64> = v.iter().map(|p| Complex64::new(p.2, p.3)).collect();
            let a = u.dot(&w);
            let b = w.dot(&u).conj();
            prop_assert!((a - b).norm() <= 1e-12 * (1.0 + a.norm()));
            prop_assert!(u.dot(&u).re >= 0.0);
        }
    }
}
