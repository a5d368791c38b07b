//! Fixed problems shared by the criterion benches.

use bicor_core::testkit::gen_convection_diffusion;
use bicor_core::{Complex64, CsrMatrix, LinearOperator, Vector};

/// Real `n x n` grid convection-diffusion system with `b = A e`.
pub fn convdiff_system(grid: usize, peclet: f64) -> (CsrMatrix<f64>, Vector<f64>) {
    let a = gen_convection_diffusion(grid, grid, peclet).expect("valid grid");
    let b = a.apply(&Vector::ones(a.n_cols()));
    (a, b)
}

/// The same grid shifted by `i * shift` on the diagonal.
pub fn shifted_system(
    grid: usize,
    peclet: f64,
    shift: f64,
) -> (CsrMatrix<Complex64>, Vector<Complex64>) {
    let a = gen_convection_diffusion(grid, grid, peclet)
        .expect("valid grid")
        .to_complex()
        .shift_diagonal(Complex64::new(0.0, shift))
        .expect("square");
    let b = a.apply(&Vector::ones(a.n_cols()));
    (a, b)
}
