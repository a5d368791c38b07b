//! Left-preconditioned CORS: the transpose-free relative of BiCOR obtained
//! by squaring the residual polynomial, `r_j = phi_j(A)^2 r0`.
//!
//! Two products by `A` and none by `A^H` per iteration; fourteen n-vectors
//! including `x`. Squaring can amplify rounding on irregular convergence,
//! so a relative residual above 1e12 ends the run as diverged.

use crate::error::Result;
use crate::operator::LinearOperator;
use crate::precond::Preconditioner;
use crate::scalar::Scalar;
use crate::solver::{
    check_dims, residual_into, trivial_report, true_relres_log10, vanishes, Monitor, Shadow,
    SolveReport, SolveStatus, SolverBreakdown, SolverConfig, Workspace, DIVERGENCE_RELRES,
};
use crate::vector::Vector;

const PRODUCTS_PER_ITER: usize = 2;

pub fn solve_cors<S, O, P>(
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
    let mut r0_star: Vector<S> = ws.vector();
    let mut e: Vector<S> = ws.vector();
    let mut ze: Vector<S> = ws.vector();
    let mut d: Vector<S> = ws.vector();
    let mut q: Vector<S> = ws.vector();
    let mut h: Vector<S> = ws.vector();
    let mut zh: Vector<S> = ws.vector();
    let mut f: Vector<S> = ws.vector();
    let mut z: Vector<S> = ws.vector();
    let mut r_hat: Vector<S> = ws.vector();
    // M^{-1} q and A M^{-1} q
    let mut mq: Vector<S> = ws.vector();
    let mut q_hat: Vector<S> = ws.vector();

    residual_into(op, b, &x, &mut r);
    let mut mv_setup = 1;
    let r0_norm = r.norm2();
    if r0_norm == 0.0 {
        return Ok(trivial_report(x, ws.allocated()));
    }
    match cfg.shadow {
        Shadow::ARzero => {
            op.apply_into(&r, &mut r0_star);
            mv_setup += 1;
        }
        Shadow::Rzero => r0_star.copy_from(&r),
    }
    let r0_star_norm = r0_star.norm2();

    let mut monitor = Monitor::new(r0_norm, cfg);
    let mut mv_a = 0usize;
    let mut precond_solves = 0usize;
    let mut rho_prev = S::zero();
    let mut iters = 0usize;
    let status = loop {
        let j = iters + 1;
        if mv_a + PRODUCTS_PER_ITER > cfg.max_mv {
            break SolveStatus::MaxMvExceeded;
        }

        precond.apply(&r, &mut z);
        precond_solves += 1;
        op.apply_into(&z, &mut r_hat);
        mv_a += 1;
        let rho = r0_star.dot(&r_hat);
        if vanishes(rho, r0_star_norm * r_hat.norm2()) {
            if j == 1 {
                log::warn!(
                    "cors: <r0*, A r0> vanishes for shadow {}; try shadow {}",
                    cfg.shadow,
                    cfg.shadow.other()
                );
            }
            break SolveStatus::Breakdown {
                kind: SolverBreakdown::Rho,
                step: j,
            };
        }

        if j == 1 {
            // e0 = r0, so M ze0 = e0 is the solve just done for z0
            e.copy_from(&r);
            ze.copy_from(&z);
            d.copy_from(&r_hat);
            q.copy_from(&r_hat);
        } else {
            let beta = rho / rho_prev;
            e.assign_xpby(&r, beta, &h);
            ze.assign_xpby(&z, beta, &zh);
            d.assign_xpby(&r_hat, beta, &f);
            // q = d + beta (f + beta q)
            for ((qi, &di), &fi) in q.as_mut_slice().iter_mut().zip(d.iter()).zip(f.iter()) {
                *qi = di + beta * (fi + beta * *qi);
            }
        }

        precond.apply(&q, &mut mq);
        precond_solves += 1;
        op.apply_into(&mq, &mut q_hat);
        mv_a += 1;
        let sigma = r0_star.dot(&q_hat);
        if vanishes(sigma, r0_star_norm * q_hat.norm2()) {
            break SolveStatus::Breakdown {
                kind: SolverBreakdown::AlphaDenominator,
                step: j,
            };
        }
        let alpha = rho / sigma;

        h.assign_xpby(&e, -alpha, &q);
        zh.assign_xpby(&ze, -alpha, &mq);
        f.assign_xpby(&d, -alpha, &q_hat);
        let two = S::from_real(2.0);
        for ((xi, &zei), &mqi) in x.as_mut_slice().iter_mut().zip(ze.iter()).zip(mq.iter()) {
            *xi += alpha * (two * zei - alpha * mqi);
        }
        for ((ri, &di), &qhi) in r.as_mut_slice().iter_mut().zip(d.iter()).zip(q_hat.iter()) {
            *ri -= alpha * (two * di - alpha * qhi);
        }
        rho_prev = rho;
        iters = j;

        let relres = monitor.record(j, mv_a, r.norm2());
        if !relres.is_finite() || relres > DIVERGENCE_RELRES || !x.is_finite() {
            break SolveStatus::Diverged { step: j };
        }
        if monitor.converged(relres) {
            break SolveStatus::Converged;
        }
    };

    let trr = true_relres_log10(op, b, &x, r0_norm, &mut r_hat);
    mv_setup += 1;
    let final_relres = monitor.last_relres();
    Ok(SolveReport {
        x,
        status,
        iters,
        mv_a,
        mv_adjoint: 0,
        mv_setup,
        precond_solves,
        history: monitor.into_history(),
        final_relres,
        trr,
        initial_residual_norm: r0_norm,
        work_vectors: ws.allocated(),
    })
}
