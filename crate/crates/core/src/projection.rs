//! Two-sided oblique projection onto the Lanczos pair of Krylov spaces.
//!
//! The primal iterate `x_m = x0 + V_m y_m` with `T_m y_m = beta e_1` has
//! residual `b - A x_m = -y_m[m] delta_{m+1} v_{m+1}`, orthogonal to
//! `A^H K_m(A^H; w_1)`.

use crate::error::{Error, Result};
use crate::lanczos::{lanczos_run, BreakdownInfo, LanczosRun, LanczosState, StepOutcome};
use crate::operator::{instrumented_operator, Adjoint, LinearOperator};
use crate::scalar::Scalar;
use crate::solver::{
    check_dims, residual_into, trivial_report, true_relres_log10, Monitor, SolveReport,
    SolveStatus, SolverBreakdown, SolverConfig, Workspace,
};
use crate::vector::Vector;

pub use crate::tridiag::{lu_tridiag, TriLU};

/// Relative residual under which an early Lanczos breakdown is accepted as
/// a happy breakdown by [`solve_projection`].
pub const DEFAULT_HAPPY_TOL: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct ProjectionSolution<S> {
    pub x: Vector<S>,
    /// Coefficients in the Lanczos basis.
    pub y: Vector<S>,
    /// `-y[k] v_tail`, the residual predicted by the recurrence.
    pub recursive_residual: Vector<S>,
    pub recursive_residual_norm: f64,
    /// Number of Lanczos steps actually taken (`< m` after a breakdown).
    pub m_used: usize,
    pub breakdown: Option<BreakdownInfo>,
    /// `||r0||_2`
    pub beta0: f64,
}

pub fn solve_projection<S, O>(
    op: &O,
    b: &Vector<S>,
    x0: &Vector<S>,
    m: usize,
) -> Result<ProjectionSolution<S>>
where
    S: Scalar,
    O: LinearOperator<S> + ?Sized,
{
    solve_projection_tol(op, b, x0, m, DEFAULT_HAPPY_TOL)
}

/// As [`solve_projection`], accepting an early breakdown only when the
/// recursive relative residual is at most `happy_tol`.
pub fn solve_projection_tol<S, O>(
    op: &O,
    b: &Vector<S>,
    x0: &Vector<S>,
    m: usize,
    happy_tol: f64,
) -> Result<ProjectionSolution<S>>
where
    S: Scalar,
    O: LinearOperator<S> + ?Sized,
{
    check_dims(op, b, x0)?;
    let r0 = b.sub(&op.apply(x0));
    let run = lanczos_run(op, &r0, m, true)?;
    let sol = primal_from_run(&run, x0)?;
    accept(sol, m, happy_tol)
}

/// Solve the dual system `A^H x* = b*` by running the primal method on the
/// adjoint operator: `w_1` is seeded from `r0* = b* - A^H x0*` and the
/// pairing is taken with respect to `A^H`.
pub fn solve_projection_dual<S, O>(
    op: &O,
    b_star: &Vector<S>,
    x0_star: &Vector<S>,
    m: usize,
) -> Result<ProjectionSolution<S>>
where
    S: Scalar,
    O: LinearOperator<S> + ?Sized,
{
    solve_projection(&Adjoint(op), b_star, x0_star, m)
}

/// Primal solution together with its dual twin from the same Lanczos run.
#[derive(Clone, Debug)]
pub struct TwoSidedSolution<S> {
    pub primal: ProjectionSolution<S>,
    /// Iterate `x* = W_m y*` with `T_m^H y* = beta* e_1` for the system
    /// `A^H x* = b_star` started from zero.
    pub dual: ProjectionSolution<S>,
    /// `A r0`, the only dual right-hand side whose residual lies along `w_1`.
    pub b_star: Vector<S>,
}

/// Run one Lanczos pass from `r0 = b - A x0` and return both the primal
/// iterate and the dual iterate whose residuals satisfy
/// `<r*_i, A r_j> = 0` for `i != j`.
pub fn solve_projection_two_sided<S, O>(
    op: &O,
    b: &Vector<S>,
    x0: &Vector<S>,
    m: usize,
) -> Result<TwoSidedSolution<S>>
where
    S: Scalar,
    O: LinearOperator<S> + ?Sized,
{
    check_dims(op, b, x0)?;
    let r0 = b.sub(&op.apply(x0));
    let run = lanczos_run(op, &r0, m, true)?;
    let primal = accept(primal_from_run(&run, x0)?, m, DEFAULT_HAPPY_TOL)?;

    let ws = run.w.as_ref().expect("bases recorded");
    let n = b.len();
    let w1_norm_sqr = ws[0].norm2().powi(2);
    // A r0 = beta A v_1 = (beta / ||w_1||^2) w_1
    let c = S::from_real(run.beta0 / w1_norm_sqr);
    let b_star = ws[0].scaled(c);
    let lu = lu_tridiag(&run.t)?;
    let k = run.steps();
    let mut rhs = Vector::zeros(k);
    rhs[0] = c;
    let y = lu.solve_adjoint(&rhs)?;
    let mut x = Vector::zeros(n);
    for (yi, wi) in y.iter().zip(ws) {
        x.axpy(*yi, wi);
    }
    let recursive_residual = run.w_tail().scaled(-y[k - 1]);
    let dual = ProjectionSolution {
        x,
        recursive_residual_norm: recursive_residual.norm2(),
        recursive_residual,
        y,
        m_used: k,
        breakdown: run.breakdown,
        beta0: b_star.norm2(),
    };
    Ok(TwoSidedSolution {
        primal,
        dual,
        b_star,
    })
}

fn primal_from_run<S: Scalar>(
    run: &LanczosRun<S>,
    x0: &Vector<S>,
) -> Result<ProjectionSolution<S>> {
    let vs = run.v.as_ref().expect("bases recorded");
    let k = run.steps();
    let lu = lu_tridiag(&run.t)?;
    let mut rhs = Vector::zeros(k);
    rhs[0] = S::from_real(run.beta0);
    let y = lu.solve(&rhs)?;
    let mut x = x0.clone();
    for (yi, vi) in y.iter().zip(vs) {
        x.axpy(*yi, vi);
    }
    let recursive_residual = run.v_tail().scaled(-y[k - 1]);
    Ok(ProjectionSolution {
        x,
        recursive_residual_norm: recursive_residual.norm2(),
        recursive_residual,
        y,
        m_used: k,
        breakdown: run.breakdown,
        beta0: run.beta0,
    })
}

/// A breakdown after all `m` steps only prevents extending the basis; an
/// earlier one must have converged.
fn accept<S>(
    sol: ProjectionSolution<S>,
    m: usize,
    happy_tol: f64,
) -> Result<ProjectionSolution<S>> {
    match sol.breakdown {
        Some(info) if sol.m_used < m => {
            if sol.recursive_residual_norm <= happy_tol * sol.beta0 {
                Ok(sol)
            } else {
                Err(Error::Breakdown(info))
            }
        }
        _ => Ok(sol),
    }
}

/// Compare the direct solution `x0 + V_m y_m` with the progressive update
/// `x0 + sum_k zeta_k p_k`, where `P_m = V_m U_m^{-1}` and
/// `P*_m = W_m L_m^{-H}`, and check `<p*_i, A^2 p_j> = delta_ij`.
///
/// Returns the largest of the two discrepancies.
pub fn progressive_update_check<S, O>(
    op: &O,
    b: &Vector<S>,
    x0: &Vector<S>,
    m: usize,
) -> Result<f64>
where
    S: Scalar,
    O: LinearOperator<S> + ?Sized,
{
    check_dims(op, b, x0)?;
    let r0 = b.sub(&op.apply(x0));
    let run = lanczos_run(op, &r0, m, true)?;
    if let Some(info) = run.breakdown {
        if run.steps() < m {
            return Err(Error::Breakdown(info));
        }
    }
    let direct = primal_from_run(&run, x0)?.x;
    let vs = run.v.as_ref().expect("bases recorded");
    let ws = run.w.as_ref().expect("bases recorded");
    let lu = lu_tridiag(&run.t)?;
    let (l, u, sup) = (lu.lower(), lu.upper_diag(), lu.upper_sup());
    let k = run.steps();

    let mut p: Vec<Vector<S>> = Vec::with_capacity(k);
    let mut p_star: Vec<Vector<S>> = Vec::with_capacity(k);
    let mut x = x0.clone();
    let mut zeta = S::from_real(run.beta0);
    for j in 0..k {
        let mut pj = vs[j].clone();
        let mut psj = ws[j].clone();
        if j > 0 {
            pj.axpy(-sup[j - 1], &p[j - 1]);
            psj.axpy(-l[j - 1].conj(), &p_star[j - 1]);
            zeta = -l[j - 1] * zeta;
        }
        pj.scale(S::one() / u[j]);
        x.axpy(zeta, &pj);
        p.push(pj);
        p_star.push(psj);
    }
    let update_gap = x.sub(&direct).norm_inf();

    let a2p: Vec<Vector<S>> = p.iter().map(|pj| op.apply(&op.apply(pj))).collect();
    let mut biorth: f64 = 0.0;
    for (i, psi) in p_star.iter().enumerate() {
        for (j, a2pj) in a2p.iter().enumerate() {
            let target = if i == j { S::one() } else { S::zero() };
            biorth = biorth.max((psi.dot(a2pj) - target).modulus());
        }
    }
    Ok(update_gap.max(biorth))
}

/// The projection method as an iterative solver: cycles of at most `m` Lanczos steps,
/// each restarted from the current iterate. Within a cycle the iterate is
/// updated progressively through the LU factors of `T`, so no basis is kept
/// and the recursive residual is available after every step.
///
/// One iteration is one Lanczos step (two products by `A`, one by `A^H`);
/// each cycle additionally spends one product on `A v_1` and, after the
/// first, one on the restart residual.
pub fn solve_projection_restarted<S, O>(
    op: &O,
    b: &Vector<S>,
    x0: &Vector<S>,
    m: usize,
    cfg: &SolverConfig,
) -> Result<SolveReport<S>>
where
    S: Scalar,
    O: LinearOperator<S> + ?Sized,
{
    let n = check_dims(op, b, x0)?;
    cfg.validate()?;
    if m == 0 {
        return Err(Error::InvalidArgument(
            "projection cycle length must be >= 1".into(),
        ));
    }
    let op = instrumented_operator(op);

    let mut ws = Workspace::new(n);
    let mut x = ws.adopt(x0.clone());
    let mut r: Vector<S> = ws.vector();
    let mut v_k: Vector<S> = ws.vector();
    let mut p: Vector<S> = ws.vector();
    // rolling window inside LanczosState: v, w pairs, A v, v_hat, w_hat
    let lanczos_vectors = 7;

    residual_into(&op, b, &x, &mut r);
    let r0_norm = r.norm2();
    if r0_norm == 0.0 {
        return Ok(trivial_report(x, ws.allocated() + lanczos_vectors));
    }
    op.reset();

    let mut monitor = Monitor::new(r0_norm, cfg);
    let mut iters = 0usize;
    let mut cycle = 0usize;
    let mv_used = |op: &crate::operator::Instrumented<&O>| {
        let (a, h) = op.counts();
        a + h
    };
    let status = 'outer: loop {
        let restart_cost = if cycle == 0 { 0 } else { 1 };
        if mv_used(&op) + restart_cost + 1 + 3 > cfg.max_mv {
            break SolveStatus::MaxMvExceeded;
        }
        if cycle > 0 {
            residual_into(&op, b, &x, &mut r);
        }
        cycle += 1;
        let beta = r.norm2();
        let mut state = match LanczosState::init(&op, &r, false) {
            Ok(s) => s,
            Err(Error::Breakdown(info)) => {
                break SolveStatus::Breakdown {
                    kind: SolverBreakdown::Lanczos(info.kind),
                    step: iters + 1,
                }
            }
            Err(e) => return Err(e),
        };

        let mut t_max: f64 = 0.0;
        let mut u_prev = S::zero();
        let mut zeta = S::from_real(beta);
        for k in 1..=m {
            if mv_used(&op) + 3 > cfg.max_mv {
                break 'outer SolveStatus::MaxMvExceeded;
            }
            v_k.copy_from(state.current().0);
            let outcome = state.step(&op);
            iters += 1;

            let alpha = state.alphas()[k - 1];
            t_max = t_max.max(alpha.modulus());
            let u = if k == 1 {
                p.copy_from(&v_k);
                alpha
            } else {
                let delta = state.deltas()[k - 2];
                let beta_k = state.betas()[k - 2];
                t_max = t_max.max(delta).max(beta_k.modulus());
                let l = S::from_real(delta) / u_prev;
                zeta = -l * zeta;
                p.xpby(&v_k, -beta_k);
                alpha - l * beta_k
            };
            if u.modulus() <= f64::EPSILON * t_max || !u.is_finite() {
                break 'outer SolveStatus::Breakdown {
                    kind: SolverBreakdown::Pivot,
                    step: iters,
                };
            }
            p.scale(S::one() / u);
            x.axpy(zeta, &p);
            u_prev = u;

            let y_last = zeta / u;
            let rnorm = y_last.modulus() * state.last_hat().0.norm2();
            let relres = monitor.record(iters, mv_used(&op), rnorm);
            if monitor.converged(relres) {
                break 'outer SolveStatus::Converged;
            }
            if !x.is_finite() {
                break 'outer SolveStatus::Diverged { step: iters };
            }
            if let StepOutcome::Breakdown(info) = outcome {
                break 'outer SolveStatus::Breakdown {
                    kind: SolverBreakdown::Lanczos(info.kind),
                    step: iters,
                };
            }
        }
    };

    let (mv_a, mv_adjoint) = op.counts();
    let final_relres = monitor.last_relres();
    let trr = true_relres_log10(&op, b, &x, r0_norm, &mut r);
    Ok(SolveReport {
        x,
        status,
        iters,
        mv_a,
        mv_adjoint,
        mv_setup: 2,
        precond_solves: 0,
        history: monitor.into_history(),
        final_relres,
        trr,
        initial_residual_norm: r0_norm,
        work_vectors: ws.allocated() + lanczos_vectors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::dense_lu_solve;
    use crate::sparse::CsrMatrix;
    use crate::testkit::{gen_convection_diffusion, random_well_conditioned};
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn tri3() -> CsrMatrix<f64> {
        CsrMatrix::from_dense_rows(&[
            vec![4.0, 1.0, 0.0],
            vec![2.0, 5.0, 1.0],
            vec![0.0, 3.0, 6.0],
        ])
    }

    #[test]
    fn identity_one_step() {
        let a = CsrMatrix::<f64>::identity(2);
        let b = Vector::from_real_slice(&[3.0, 4.0]);
        let sol = solve_projection(&a, &b, &Vector::zeros(2), 1).unwrap();
        assert_eq!(sol.m_used, 1);
        assert_eq!(sol.x, b);
        let wide = solve_projection(&a, &b, &Vector::zeros(2), 4).unwrap();
        assert_eq!(wide.m_used, 1);
        assert_eq!(wide.x, b);
    }

    #[test]
    fn diag_123_exact_at_three() {
        let a = CsrMatrix::from_diagonal(&[1.0, 2.0, 3.0]);
        let b = Vector::from_real_slice(&[1.0, 2.0, 3.0]);
        let sol = solve_projection(&a, &b, &Vector::zeros(3), 3).unwrap();
        let oracle = dense_lu_solve(&a.to_dense(), &b).unwrap();
        assert!(sol.x.sub(&oracle).norm_inf() <= 1e-10);
        let relres = b.sub(&a.apply(&sol.x)).norm2() / b.norm2();
        assert!(relres <= 1e-10);
        let beyond = solve_projection(&a, &b, &Vector::zeros(3), 6).unwrap();
        assert_eq!(beyond.m_used, 3);
        assert!(beyond.x.sub(&oracle).norm_inf() <= 1e-9);
    }

    #[test]
    fn tridiagonal_example() {
        let a = tri3();
        let b = Vector::from_real_slice(&[5.0, 8.0, 9.0]);
        let sol = solve_projection(&a, &b, &Vector::zeros(3), 3).unwrap();
        assert!(sol.x.sub(&Vector::ones(3)).norm_inf() <= 1e-10);
    }

    #[test]
    fn dual_examples() {
        let ident = CsrMatrix::<f64>::identity(2);
        let b = Vector::from_real_slice(&[3.0, 4.0]);
        let p = solve_projection(&ident, &b, &Vector::zeros(2), 1).unwrap();
        let d = solve_projection_dual(&ident, &b, &Vector::zeros(2), 1).unwrap();
        assert_eq!(p.x, d.x);
        assert_eq!(d.m_used, 1);

        let a = tri3();
        let b_star = a.transpose().apply(&Vector::ones(3));
        let d = solve_projection_dual(&a, &b_star, &Vector::zeros(3), 3).unwrap();
        assert!(d.x.sub(&Vector::ones(3)).norm_inf() <= 1e-10);

        let a = random_well_conditioned(30, 5);
        let at = a.transpose();
        let b_star = at.apply(&Vector::from_real_slice(
            &(0..30).map(|i| (i as f64).sin()).collect::<Vec<_>>(),
        ));
        let d = solve_projection_dual(&a, &b_star, &Vector::zeros(30), 30).unwrap();
        let rel = b_star.sub(&at.apply(&d.x)).norm2() / b_star.norm2();
        assert!(rel <= 1e-8, "{rel}");
        let oracle = dense_lu_solve(&at.to_dense(), &b_star).unwrap();
        assert!(d.x.sub(&oracle).norm_inf() <= 1e-7);
    }

    #[test]
    fn recursive_residual_matches_true_residual() {
        let a = random_well_conditioned(60, 3);
        let b = a.apply(&Vector::ones(60));
        for m in 1..=10 {
            let sol = solve_projection(&a, &b, &Vector::zeros(60), m).unwrap();
            let r = b.sub(&a.apply(&sol.x));
            let gap = r.sub(&sol.recursive_residual).norm2();
            assert!(
                gap <= 1e-8 * r.norm2().max(1e-300) + 1e-12 * b.norm2(),
                "m={m}"
            );
            assert!(
                (sol.recursive_residual_norm - r.norm2()).abs()
                    <= 1e-8 * r.norm2() + 1e-12 * b.norm2()
            );
        }
    }

    #[test]
    fn petrov_galerkin_condition() {
        let a = gen_convection_diffusion(8, 8, 20.0).unwrap();
        let b = a.apply(&Vector::ones(64));
        let x0 = Vector::zeros(64);
        let r0 = b.clone();
        for m in [1, 3, 6, 9] {
            let run = lanczos_run(&a, &r0, m, true).unwrap();
            let sol = solve_projection(&a, &b, &x0, m).unwrap();
            let r = b.sub(&a.apply(&sol.x));
            let bound = 1e-8 * a.norm_frobenius() * r0.norm2();
            for w in run.w.as_ref().unwrap() {
                let c = a.apply_adjoint(w).dot(&r);
                assert!(c.abs() <= bound, "m={m}: {c}");
            }
        }
    }

    #[test]
    fn cross_residuals_are_a_orthogonal() {
        let a = random_well_conditioned(40, 8);
        let b = a.apply(&Vector::ones(40));
        let x0 = Vector::zeros(40);
        let m = 6;
        let mut primal = Vec::new();
        let mut dual = Vec::new();
        for k in 1..=m {
            let two = solve_projection_two_sided(&a, &b, &x0, k).unwrap();
            let true_dual = two.b_star.sub(&a.apply_adjoint(&two.dual.x));
            assert!(
                true_dual.sub(&two.dual.recursive_residual).norm2() <= 1e-8 * two.b_star.norm2()
            );
            primal.push(b.sub(&a.apply(&two.primal.x)));
            dual.push(true_dual);
        }
        for (i, rs) in dual.iter().enumerate() {
            for (j, r) in primal.iter().enumerate() {
                if i != j {
                    let ar = a.apply(r);
                    let c = rs.dot(&ar).abs() / (rs.norm2() * ar.norm2());
                    assert!(c <= 1e-7, "i={i} j={j}: {c}");
                }
            }
        }
    }

    #[test]
    fn exact_at_minimal_polynomial_degree() {
        for d in 1..=5usize {
            let eig: Vec<f64> = (1..=d).map(|k| k as f64 * 1.5).collect();
            // each eigenvalue repeated so that n > d
            let diag: Vec<f64> = eig.iter().flat_map(|&e| [e, e]).collect();
            let a = CsrMatrix::from_diagonal(&diag);
            let b: Vector<f64> = (0..diag.len()).map(|i| 1.0 + 0.1 * i as f64).collect();
            let sol = solve_projection(&a, &b, &Vector::zeros(diag.len()), d).unwrap();
            let oracle = dense_lu_solve(&a.to_dense(), &b).unwrap();
            assert!(sol.x.sub(&oracle).norm_inf() <= 1e-9, "d={d}");
        }
    }

    #[test]
    fn serious_breakdown_surfaces() {
        let a = CsrMatrix::from_dense_rows(&[vec![0.0, 1.0], vec![-1.0, 0.0]]);
        let b = Vector::from_real_slice(&[1.0, 0.0]);
        match solve_projection(&a, &b, &Vector::zeros(2), 2) {
            Err(Error::PivotBreakdown { .. }) | Err(Error::Breakdown(_)) => {}
            other => panic!("expected a breakdown, got {other:?}"),
        }
    }

    #[test]
    fn zero_residual_rejected() {
        let a = CsrMatrix::<f64>::identity(2);
        let b = Vector::from_real_slice(&[1.0, 1.0]);
        assert!(matches!(
            solve_projection(&a, &b, &b, 1),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn progressive_update_examples() {
        let a = tri3();
        let b = Vector::from_real_slice(&[5.0, 8.0, 9.0]);
        let x0 = Vector::zeros(3);
        assert!(progressive_update_check(&a, &b, &x0, 1).unwrap() <= 1e-14);
        assert!(progressive_update_check(&a, &b, &x0, 3).unwrap() <= 1e-9);
        let a = random_well_conditioned(50, 44);
        let b = a.apply(&Vector::ones(50));
        assert!(progressive_update_check(&a, &b, &Vector::zeros(50), 8).unwrap() <= 1e-7);
    }

    #[test]
    fn progressive_update_complex() {
        let a = gen_convection_diffusion(6, 6, 5.0)
            .unwrap()
            .to_complex()
            .shift_diagonal(Complex64::new(0.0, 3.0))
            .unwrap();
        let b = a.apply(&Vector::ones(36));
        assert!(progressive_update_check(&a, &b, &Vector::zeros(36), 6).unwrap() <= 1e-7);
    }

    #[test]
    fn restarted_converges_and_counts() {
        let a = gen_convection_diffusion(12, 12, 10.0).unwrap();
        let e = Vector::ones(144);
        let b = a.apply(&e);
        let op = crate::operator::instrumented_operator(&a);
        let cfg = SolverConfig::default();
        let rep = solve_projection_restarted(&op, &b, &Vector::zeros(144), 20, &cfg).unwrap();
        assert!(rep.status.is_converged(), "{}", rep.status);
        assert!(rep.x.sub(&e).norm_inf() <= 1e-5);
        assert!(rep.trr <= -7.5);
        let (a_calls, h_calls) = op.counts();
        assert_eq!(a_calls + h_calls, rep.mv_total() + rep.mv_setup);
        assert_eq!(h_calls, rep.iters);
        for w in rep.history.windows(2) {
            assert!(w[1].iter > w[0].iter && w[1].mv_total > w[0].mv_total);
        }
    }

    #[test]
    fn restarted_matches_single_cycle() {
        let a = random_well_conditioned(30, 2);
        let b = a.apply(&Vector::ones(30));
        let cfg = SolverConfig {
            tol: 1e-14,
            max_mv: 3 * 5 + 1,
            ..SolverConfig::default()
        };
        let rep = solve_projection_restarted(&a, &b, &Vector::zeros(30), 5, &cfg).unwrap();
        assert_eq!(rep.status, SolveStatus::MaxMvExceeded);
        assert_eq!(rep.iters, 5);
        let sol = solve_projection(&a, &b, &Vector::zeros(30), 5).unwrap();
        assert!(rep.x.sub(&sol.x).norm_inf() <= 1e-12);
        assert!((rep.final_relres - sol.recursive_residual_norm / sol.beta0).abs() <= 1e-10);
    }

    #[test]
    fn restarted_identity_and_budget() {
        let a = CsrMatrix::<f64>::identity(3);
        let b = Vector::from_real_slice(&[1.0, 2.0, 3.0]);
        let cfg = SolverConfig::default();
        let rep = solve_projection_restarted(&a, &b, &Vector::zeros(3), 4, &cfg).unwrap();
        assert_eq!(rep.status, SolveStatus::Converged);
        assert_eq!(rep.iters, 1);

        let a = random_well_conditioned(20, 1);
        let b = a.apply(&Vector::ones(20));
        let tight = SolverConfig { max_mv: 1, ..cfg };
        let rep = solve_projection_restarted(&a, &b, &Vector::zeros(20), 4, &tight).unwrap();
        assert_eq!(rep.status, SolveStatus::MaxMvExceeded);
        assert_eq!(rep.iters, 0);
        assert!(rep.x.is_finite());
    }

    #[test]
    fn restarted_reports_lanczos_breakdown() {
        let a = CsrMatrix::from_dense_rows(&[vec![0.0, 1.0], vec![-1.0, 0.0]]);
        let b = Vector::from_real_slice(&[1.0, 0.0]);
        let rep =
            solve_projection_restarted(&a, &b, &Vector::zeros(2), 2, &SolverConfig::default())
                .unwrap();
        assert!(
            matches!(rep.status, SolveStatus::Breakdown { .. }),
            "{}",
            rep.status
        );
        assert!(rep.x.is_finite());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn lu_recomposes(diag in prop::collection::vec(5.0f64..10.0, 2..12), seed in 0u64..1000) {
            let m = diag.len();
            let sub: Vec<f64> = (0..m - 1).map(|i| ((i as u64 + seed) % 7) as f64 * 0.3 - 1.0).collect();
            let sup: Vec<f64> = (0..m - 1).map(|i| ((i as u64 * 3 + seed) % 5) as f64 * 0.4 - 0.8).collect();
            let t = crate::tridiag::TridiagonalMatrix::new(diag, sub, sup).unwrap();
            let lu = lu_tridiag(&t).unwrap();
            let back = lu.recompose();
            let diff = back.to_dense().sub(&t.to_dense()).unwrap().norm_frobenius();
            prop_assert!(diff <= 1e-13 * t.norm_frobenius());
        }
    }
}
