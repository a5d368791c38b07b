//! Types shared by the iterative solvers: configuration, reports and the
//! bookkeeping behind the stopping rule.

use std::fmt;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::lanczos::BreakdownKind;
use crate::operator::LinearOperator;
use crate::scalar::Scalar;
use crate::vector::Vector;

/// Choice of the initial shadow residual `r0* = P(A) r0`, `P(t) in {t, 1}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Shadow {
    /// `r0* = A r0`
    #[default]
    ARzero,
    /// `r0* = r0`
    Rzero,
}

impl Shadow {
    pub fn other(self) -> Self {
        match self {
            Shadow::ARzero => Shadow::Rzero,
            Shadow::Rzero => Shadow::ARzero,
        }
    }
}

impl std::str::FromStr for Shadow {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Ar0" | "ar0" => Ok(Shadow::ARzero),
            "r0" => Ok(Shadow::Rzero),
            other => Err(Error::InvalidArgument(format!(
                "unknown shadow '{other}' (expected Ar0 or r0)"
            ))),
        }
    }
}

impl fmt::Display for Shadow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Shadow::ARzero => "Ar0",
            Shadow::Rzero => "r0",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverConfig {
    /// Stop once `||r||_2 / ||r0||_2 <= tol`.
    pub tol: f64,
    /// Budget on products by `A` and `A^H` inside the iteration loop.
    pub max_mv: usize,
    pub shadow: Shadow,
    pub record_history: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            tol: 1e-8,
            max_mv: 10_000,
            shadow: Shadow::ARzero,
            record_history: true,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "tol must be positive and finite (got {})",
                self.tol
            )));
        }
        if self.max_mv == 0 {
            return Err(Error::InvalidArgument("max_mv must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolverBreakdown {
    /// `rho_{j-1} = 0`
    Rho,
    /// The denominator of `alpha` vanished.
    AlphaDenominator,
    /// BiCGSTAB `omega = 0`.
    Omega,
    Lanczos(BreakdownKind),
    /// Zero pivot in the tridiagonal LU of the projection method.
    Pivot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    Converged,
    MaxMvExceeded,
    Breakdown {
        kind: SolverBreakdown,
        step: usize,
    },
    /// Relative residual exceeded the overflow guard or became non-finite.
    Diverged {
        step: usize,
    },
}

impl SolveStatus {
    pub fn is_converged(&self) -> bool {
        matches!(self, SolveStatus::Converged)
    }

    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            SolveStatus::Converged => 0,
            SolveStatus::MaxMvExceeded => 2,
            SolveStatus::Breakdown { .. } | SolveStatus::Diverged { .. } => 3,
        }
    }
}

impl fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveStatus::Converged => f.write_str("converged"),
            SolveStatus::MaxMvExceeded => f.write_str("max-mv-exceeded"),
            SolveStatus::Breakdown { kind, step } => {
                let k = match kind {
                    SolverBreakdown::Rho => "rho".to_string(),
                    SolverBreakdown::AlphaDenominator => "alpha-denominator".to_string(),
                    SolverBreakdown::Omega => "omega".to_string(),
                    SolverBreakdown::Pivot => "pivot".to_string(),
                    SolverBreakdown::Lanczos(k) => format!("lanczos-{k:?}"),
                };
                write!(f, "breakdown({k}@{step})")
            }
            SolveStatus::Diverged { step } => write!(f, "diverged@{step}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HistoryEntry {
    pub iter: usize,
    /// Products by `A` and `A^H` inside the loop so far.
    pub mv_total: usize,
    /// Recursive residual norm over `||r0||_2`.
    pub relres: f64,
    /// Wall clock since the start of the solve.
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug)]
pub struct SolveReport<S> {
    pub x: Vector<S>,
    pub status: SolveStatus,
    pub iters: usize,
    /// Products by `A` inside the iteration loop.
    pub mv_a: usize,
    /// Products by `A^H` inside the iteration loop.
    pub mv_adjoint: usize,
    /// Products spent outside the loop: initial residual, shadow residual
    /// and the true residual at exit.
    pub mv_setup: usize,
    /// Applications of `M^{-1}` and `M^{-H}`.
    pub precond_solves: usize,
    pub history: Vec<HistoryEntry>,
    /// Relative residual of the last iteration (recursive).
    pub final_relres: f64,
    /// `log10(||b - A x||_2 / ||r0||_2)`, recomputed from scratch.
    pub trr: f64,
    pub initial_residual_norm: f64,
    /// Number of length-n work vectors the solver allocated, including `x`.
    pub work_vectors: usize,
}

impl<S> SolveReport<S> {
    pub fn mv_total(&self) -> usize {
        self.mv_a + self.mv_adjoint
    }
}

/// Hands out the solver's n-vectors and counts them.
pub(crate) struct Workspace {
    n: usize,
    allocated: usize,
}

impl Workspace {
    pub(crate) fn new(n: usize) -> Self {
        Workspace { n, allocated: 0 }
    }

    pub(crate) fn vector<S: Scalar>(&mut self) -> Vector<S> {
        self.allocated += 1;
        Vector::zeros(self.n)
    }

    pub(crate) fn adopt<S: Scalar>(&mut self, v: Vector<S>) -> Vector<S> {
        debug_assert_eq!(v.len(), self.n);
        self.allocated += 1;
        v
    }

    pub(crate) fn allocated(&self) -> usize {
        self.allocated
    }
}

/// Residual history and stopping rule.
pub(crate) struct Monitor {
    start: Instant,
    r0_norm: f64,
    tol: f64,
    record: bool,
    history: Vec<HistoryEntry>,
    last_relres: f64,
}

/// Relative residual beyond which squared-polynomial methods are declared
/// divergent.
pub(crate) const DIVERGENCE_RELRES: f64 = 1e12;

impl Monitor {
    pub(crate) fn new(r0_norm: f64, cfg: &SolverConfig) -> Self {
        let mut m = Monitor {
            start: Instant::now(),
            r0_norm,
            tol: cfg.tol,
            record: cfg.record_history,
            history: Vec::new(),
            last_relres: 1.0,
        };
        m.push(0, 0, 1.0);
        m
    }

    fn push(&mut self, iter: usize, mv_total: usize, relres: f64) {
        if self.record {
            self.history.push(HistoryEntry {
                iter,
                mv_total,
                relres,
                elapsed_ms: self.start.elapsed().as_secs_f64() * 1e3,
            });
        }
    }

    /// Record the residual norm after iteration `iter`; returns the relative
    /// residual.
    pub(crate) fn record(&mut self, iter: usize, mv_total: usize, r_norm: f64) -> f64 {
        let relres = r_norm / self.r0_norm;
        self.last_relres = relres;
        self.push(iter, mv_total, relres);
        relres
    }

    pub(crate) fn converged(&self, relres: f64) -> bool {
        relres <= self.tol
    }

    pub(crate) fn last_relres(&self) -> f64 {
        self.last_relres
    }

    pub(crate) fn into_history(self) -> Vec<HistoryEntry> {
        self.history
    }
}

/// Breakdown test `|value| <= eps * scale`, also catching non-finite values.
pub(crate) fn vanishes<S: Scalar>(value: S, scale: f64) -> bool {
    let m = value.modulus();
    !m.is_finite() || m <= f64::EPSILON * scale || m == 0.0
}

pub(crate) fn check_dims<S: Scalar, O: LinearOperator<S> + ?Sized>(
    op: &O,
    b: &Vector<S>,
    x0: &Vector<S>,
) -> Result<usize> {
    let n = op.nrows();
    if op.ncols() != n {
        return Err(Error::dim("solver (square operator)", n, op.ncols()));
    }
    if b.len() != n {
        return Err(Error::dim("solver right-hand side", n, b.len()));
    }
    if x0.len() != n {
        return Err(Error::dim("solver initial guess", n, x0.len()));
    }
    Ok(n)
}

/// `out <- b - A x`
pub(crate) fn residual_into<S: Scalar, O: LinearOperator<S> + ?Sized>(
    op: &O,
    b: &Vector<S>,
    x: &Vector<S>,
    out: &mut Vector<S>,
) {
    op.apply_into(x, out);
    for (o, &bi) in out.as_mut_slice().iter_mut().zip(b.iter()) {
        *o = bi - *o;
    }
}

/// `log10(||b - A x|| / r0_norm)` using `tmp` as scratch.
pub(crate) fn true_relres_log10<S: Scalar, O: LinearOperator<S> + ?Sized>(
    op: &O,
    b: &Vector<S>,
    x: &Vector<S>,
    r0_norm: f64,
    tmp: &mut Vector<S>,
) -> f64 {
    residual_into(op, b, x, tmp);
    (tmp.norm2() / r0_norm).log10()
}

/// Report for a zero initial residual: nothing to do.
pub(crate) fn trivial_report<S: Scalar>(x: Vector<S>, work_vectors: usize) -> SolveReport<S> {
    SolveReport {
        x,
        status: SolveStatus::Converged,
        iters: 0,
        mv_a: 0,
        mv_adjoint: 0,
        mv_setup: 1,
        precond_solves: 0,
        history: Vec::new(),
        final_relres: 0.0,
        trr: f64::NEG_INFINITY,
        initial_residual_norm: 0.0,
        work_vectors,
    }
}
