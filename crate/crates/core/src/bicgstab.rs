//! Preconditioned BiCGSTAB, kept as a comparison baseline.
//!
//! Two products by `A` and two `M^{-1}` applications per full iteration;
//! nine n-vectors. The shadow residual is always `r0`. When the half-step
//! residual `s` already meets the tolerance the iteration ends early with a
//! single product, and it still counts as one iteration.

use crate::error::Result;
use crate::operator::LinearOperator;
use crate::precond::Preconditioner;
use crate::scalar::Scalar;
use crate::solver::{
    check_dims, residual_into, trivial_report, true_relres_log10, vanishes, Monitor, SolveReport,
    SolveStatus, SolverBreakdown, SolverConfig, Workspace,
};
use crate::vector::Vector;

const PRODUCTS_PER_ITER: usize = 2;

pub fn solve_bicgstab_baseline<S, O, P>(
    op: &O,
    b: &Vector<S>,
    x0: &Vector<S>,
    precond: &P,
    cfg: &SolverConfig,
) -> Result<SolveReport<S>>
where
    S: Scalar,
    O: LinearOperator<S> + ?Sized,
    P: Preconditioner<S> + ?Sized,
{
    let n = check_dims(op, b, x0)?;
    cfg.validate()?;

    let mut ws = Workspace::new(n);
    let mut x = ws.adopt(x0.clone());
    let mut r: Vector<S> = ws.vector();
    let mut r_hat: Vector<S> = ws.vector();
    let mut p: Vector<S> = ws.vector();
    let mut p_hat: Vector<S> = ws.vector();
    let mut v: Vector<S> = ws.vector();
    let mut s: Vector<S> = ws.vector();
    let mut s_hat: Vector<S> = ws.vector();
    let mut t: Vector<S> = ws.vector();

    residual_into(op, b, &x, &mut r);
    let r0_norm = r.norm2();
    if r0_norm == 0.0 {
        return Ok(trivial_report(x, ws.allocated()));
    }
    r_hat.copy_from(&r);

    let mut monitor = Monitor::new(r0_norm, cfg);
    let mut mv_a = 0usize;
    let mut precond_solves = 0usize;
    let mut rho_prev = S::one();
    let mut alpha = S::one();
    let mut omega = S::one();
    let mut iters = 0usize;
    let status = loop {
        let j = iters + 1;
        if mv_a + PRODUCTS_PER_ITER > cfg.max_mv {
            break SolveStatus::MaxMvExceeded;
        }
        let rho = r_hat.dot(&r);
        if vanishes(rho, r0_norm * r.norm2()) {
            break SolveStatus::Breakdown {
                kind: SolverBreakdown::Rho,
                step: j,
            };
        }
        if j == 1 {
            p.copy_from(&r);
        } else {
            let beta = (rho / rho_prev) * (alpha / omega);
            // p = r + beta (p - omega v)
            p.axpy(-omega, &v);
            p.xpby(&r, beta);
        }
        precond.apply(&p, &mut p_hat);
        precond_solves += 1;
        op.apply_into(&p_hat, &mut v);
        mv_a += 1;
        let sigma = r_hat.dot(&v);
        if vanishes(sigma, r0_norm * v.norm2()) {
            break SolveStatus::Breakdown {
                kind: SolverBreakdown::AlphaDenominator,
                step: j,
            };
        }
        alpha = rho / sigma;
        s.assign_xpby(&r, -alpha, &v);
        iters = j;

        let s_norm = s.norm2();
        if monitor.converged(s_norm / r0_norm) {
            x.axpy(alpha, &p_hat);
            r.copy_from(&s);
            monitor.record(j, mv_a, s_norm);
            break SolveStatus::Converged;
        }

        precond.apply(&s, &mut s_hat);
        precond_solves += 1;
        op.apply_into(&s_hat, &mut t);
        mv_a += 1;
        let ts = t.dot(&s);
        let tt = t.norm2();
        if vanishes(ts, tt * s_norm) {
            x.axpy(alpha, &p_hat);
            r.copy_from(&s);
            monitor.record(j, mv_a, s_norm);
            break SolveStatus::Breakdown {
                kind: SolverBreakdown::Omega,
                step: j,
            };
        }
        omega = ts / S::from_real(tt * tt);
        x.axpy(alpha, &p_hat);
        x.axpy(omega, &s_hat);
        r.assign_xpby(&s, -omega, &t);
        rho_prev = rho;

        let relres = monitor.record(j, mv_a, r.norm2());
        if !relres.is_finite() || !x.is_finite() {
            break SolveStatus::Diverged { step: j };
        }
        if monitor.converged(relres) {
            break SolveStatus::Converged;
        }
    };

    let trr = true_relres_log10(op, b, &x, r0_norm, &mut t);
    let final_relres = monitor.last_relres();
    Ok(SolveReport {
        x,
        status,
        iters,
        mv_a,
        mv_adjoint: 0,
        mv_setup: 2,
        precond_solves,
        history: monitor.into_history(),
        final_relres,
        trr,
        initial_residual_norm: r0_norm,
        work_vectors: ws.allocated(),
    })
}
