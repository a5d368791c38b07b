//! Left-preconditioned BiCOR.
//!
//! Coupled two-term recurrences for `x`, `r`, `p` and the shadow pair
//! `r*`, `p*`, with the residuals kept biconjugate A-orthogonal
//! (`<r*_i, A r_j> = 0`, `i != j`) and the directions A^2-biconjugate.
//! Per iteration: one product by `A`, one by `A^H`, one `M^{-1}` and one
//! `M^{-H}` application, ten n-vectors of storage (including `x`).
//!
//! For complex scalars the shadow recurrences use the conjugated `alpha`
//! and `beta`, which keeps every scalar a sesquilinear `dot`.

use crate::error::Result;
use crate::operator::LinearOperator;
use crate::precond::Preconditioner;
use crate::scalar::Scalar;
use crate::solver::{
    check_dims, residual_into, trivial_report, true_relres_log10, vanishes, Monitor, Shadow,
    SolveReport, SolveStatus, SolverBreakdown, SolverConfig, Workspace,
};
use crate::vector::Vector;

/// Vectors of one BiCOR iteration, handed to an observer after `p`, `p*`,
/// `q = A p` and `q* = A^H p*` have been formed and before `x`, `r`, `z*`
/// are updated.
#[derive(Debug)]
pub struct BicorIterate<'a, S> {
    /// 0-based index `j - 1` of the residual pair.
    pub index: usize,
    pub x: &'a Vector<S>,
    pub r: &'a Vector<S>,
    pub z: &'a Vector<S>,
    /// Preconditioned shadow residual `z*` (equals `r*` for `M = I`).
    pub z_star: &'a Vector<S>,
    pub p: &'a Vector<S>,
    pub p_star: &'a Vector<S>,
    pub q: &'a Vector<S>,
    pub q_star: &'a Vector<S>,
}

const PRODUCTS_PER_ITER: usize = 2;

pub fn solve_bicor<S, O, P>(
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
    solve_bicor_observed(op, b, x0, precond, cfg, &mut |_| {})
}

pub fn solve_bicor_observed<S, O, P>(
    op: &O,
    b: &Vector<S>,
    x0: &Vector<S>,
    precond: &P,
    cfg: &SolverConfig,
    observer: &mut dyn FnMut(&BicorIterate<'_, S>),
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
    let mut z: Vector<S> = ws.vector();
    let mut z_star: Vector<S> = ws.vector();
    let mut z_hat: Vector<S> = ws.vector();
    let mut p: Vector<S> = ws.vector();
    let mut p_star: Vector<S> = ws.vector();
    let mut q: Vector<S> = ws.vector();
    let mut q_star: Vector<S> = ws.vector();
    let mut u_star: Vector<S> = ws.vector();

    residual_into(op, b, &x, &mut r);
    let mut mv_setup = 1;
    let r0_norm = r.norm2();
    if r0_norm == 0.0 {
        return Ok(trivial_report(x, ws.allocated()));
    }

    // r0* = P(A) r0, staged in z_hat; z0* = M^{-H} r0*
    match cfg.shadow {
        Shadow::ARzero => {
            op.apply_into(&r, &mut z_hat);
            mv_setup += 1;
        }
        Shadow::Rzero => z_hat.copy_from(&r),
    }
    precond.apply_adjoint(&z_hat, &mut z_star);
    let mut precond_solves = 1;

    let mut monitor = Monitor::new(r0_norm, cfg);
    let (mut mv_a, mut mv_adjoint) = (0usize, 0usize);
    let mut rho_prev = S::zero();
    let mut iters = 0usize;
    let status = loop {
        let j = iters + 1;
        if mv_a + mv_adjoint + PRODUCTS_PER_ITER > cfg.max_mv {
            break SolveStatus::MaxMvExceeded;
        }

        precond.apply(&r, &mut z);
        precond_solves += 1;
        op.apply_into(&z, &mut z_hat);
        mv_a += 1;
        let rho = z_star.dot(&z_hat);
        if vanishes(rho, z_star.norm2() * z_hat.norm2()) {
            if j == 1 {
                log::warn!(
                    "bicor: <r0*, A r0> vanishes for shadow {}; try shadow {}",
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
            p.copy_from(&z);
            p_star.copy_from(&z_star);
            q.copy_from(&z_hat);
        } else {
            let beta = rho / rho_prev;
            p.xpby(&z, beta);
            p_star.xpby(&z_star, beta.conj());
            q.xpby(&z_hat, beta);
        }
        op.apply_adjoint_into(&p_star, &mut q_star);
        mv_adjoint += 1;
        precond.apply_adjoint(&q_star, &mut u_star);
        precond_solves += 1;

        observer(&BicorIterate {
            index: j - 1,
            x: &x,
            r: &r,
            z: &z,
            z_star: &z_star,
            p: &p,
            p_star: &p_star,
            q: &q,
            q_star: &q_star,
        });

        let sigma = u_star.dot(&q);
        if vanishes(sigma, u_star.norm2() * q.norm2()) {
            break SolveStatus::Breakdown {
                kind: SolverBreakdown::AlphaDenominator,
                step: j,
            };
        }
        let alpha = rho / sigma;
        x.axpy(alpha, &p);
        r.axpy(-alpha, &q);
        z_star.axpy(-alpha.conj(), &u_star);
        rho_prev = rho;
        iters = j;

        let relres = monitor.record(j, mv_a + mv_adjoint, r.norm2());
        if !relres.is_finite() || !x.is_finite() {
            break SolveStatus::Diverged { step: j };
        }
        if monitor.converged(relres) {
            break SolveStatus::Converged;
        }
    };

    let trr = true_relres_log10(op, b, &x, r0_norm, &mut z_hat);
    mv_setup += 1;
    let final_relres = monitor.last_relres();
    Ok(SolveReport {
        x,
        status,
        iters,
        mv_a,
        mv_adjoint,
        mv_setup,
        precond_solves,
        history: monitor.into_history(),
        final_relres,
        trr,
        initial_residual_norm: r0_norm,
        work_vectors: ws.allocated(),
    })
}
