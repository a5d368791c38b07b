//! Lanczos biconjugate A-orthonormalization and the BiCOR and CORS Krylov
//! solvers for real unsymmetric and complex non-Hermitian sparse systems.
//!
//! Solvers take any [`LinearOperator`] and [`Preconditioner`] and return a
//! [`SolveReport`] with iteration and product counts, the residual history
//! and the true residual recomputed at exit.

pub mod bicgstab;
pub mod bicor;
pub mod cors;
pub mod dense;
pub mod error;
pub mod harness;
pub mod lanczos;
pub mod mm;
pub mod operator;
pub mod precond;
pub mod projection;
pub mod scalar;
pub mod solver;
pub mod sparse;
pub mod testkit;
pub mod tridiag;
pub mod vector;

pub use num_complex::Complex64;

pub use bicgstab::solve_bicgstab_baseline;
pub use bicor::{solve_bicor, solve_bicor_observed, BicorIterate};
pub use cors::solve_cors;
pub use dense::{dense_lu_solve, DenseMatrix};
pub use error::{Error, Result};
pub use lanczos::{
    lanczos_init, lanczos_run, verify_proposition, BreakdownInfo, BreakdownKind, LanczosRun,
    LanczosState, RelationResiduals, StepOutcome,
};
pub use operator::{instrumented_operator, Adjoint, Instrumented, LinearOperator};
pub use precond::{identity, jacobi, Identity, Jacobi, Preconditioner};
pub use projection::{
    progressive_update_check, solve_projection, solve_projection_dual, solve_projection_restarted,
    solve_projection_two_sided, ProjectionSolution, TwoSidedSolution,
};
pub use scalar::Scalar;
pub use solver::{HistoryEntry, Shadow, SolveReport, SolveStatus, SolverBreakdown, SolverConfig};
pub use sparse::{matvec, matvec_adjoint, AnyCsr, CsrMatrix};
pub use tridiag::{lu_tridiag, TriLU, TridiagonalMatrix};
pub use vector::Vector;
