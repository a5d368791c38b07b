//! Lanczos biconjugate A-orthonormalization.
//!
//! Builds sequences `v_j`, `w_j` with `<w_i, A v_j> = delta_ij` from two
//! three-term recurrences, together with the tridiagonal matrix `T_m` that
//! represents `A` on the pair of Krylov spaces `K_m(A; v_1)` and
//! `A^H K_m(A^H; w_1)`.
//!
//! For complex scalars the left recurrence uses `A^H` and conjugated
//! coefficients so that `A^H W_m = W_m T_m^H + conj(beta_{m+1}) w_{m+1} e_m^T`;
//! `delta_j` stays real and nonnegative in both fields.

use std::fmt;

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::operator::LinearOperator;
use crate::scalar::Scalar;
use crate::tridiag::TridiagonalMatrix;
use crate::vector::Vector;

/// Relative size below which `v_hat`/`w_hat` count as annihilated by the
/// recurrence, in units of machine epsilon times the norms that entered it.
const INVARIANT_SUBSPACE_FACTOR: f64 = 64.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BreakdownKind {
    /// `delta_{j+1}` vanished: either `v_hat` is negligible (invariant
    /// subspace, usually a happy breakdown) or the pairing
    /// `<w_hat, A v_hat>` vanished (serious breakdown).
    DeltaVanished,
    /// `w_hat` vanished while `v_hat` did not.
    BetaVanished,
    /// `A v_1 = 0`, so no `w_1` with `<w_1, A v_1> = 1` exists.
    InitialPairingFailed,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BreakdownInfo {
    /// Step (1-based) whose `delta_{step+1}` could not be formed; 0 for the
    /// initial pairing.
    pub step: usize,
    pub kind: BreakdownKind,
    /// Magnitude of the vanished quantity.
    pub magnitude: f64,
}

impl fmt::Display for BreakdownInfo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?} at step {} (magnitude {:e})",
            self.kind, self.step, self.magnitude
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StepOutcome {
    Continued,
    Breakdown(BreakdownInfo),
}

/// Rolling two-term window of the recurrence plus the generated scalars.
#[derive(Clone, Debug)]
pub struct LanczosState<S> {
    steps: usize,
    v_prev: Vector<S>,
    v_cur: Vector<S>,
    w_prev: Vector<S>,
    w_cur: Vector<S>,
    /// `A v_cur`, carried over from the previous step's `A v_hat`.
    av_cur: Vector<S>,
    alpha: Vec<S>,
    /// `beta_2, beta_3, ...`
    beta: Vec<S>,
    /// `delta_2, delta_3, ...`
    delta: Vec<f64>,
    v_hat: Vector<S>,
    w_hat: Vector<S>,
    basis: Option<Bases<S>>,
    breakdown: Option<BreakdownInfo>,
}

/// Recorded `(v_1..v_k, w_1..w_k)`.
type Bases<S> = (Vec<Vector<S>>, Vec<Vector<S>>);

impl<S: Scalar> LanczosState<S> {
    /// `v_1 = r0 / ||r0||`, `w_1 = A v_1 / ||A v_1||^2`.
    pub fn init<O: LinearOperator<S> + ?Sized>(
        op: &O,
        r0: &Vector<S>,
        record_bases: bool,
    ) -> Result<Self> {
        let n = op.nrows();
        if op.ncols() != n {
            return Err(Error::dim("lanczos_init (square operator)", n, op.ncols()));
        }
        if r0.len() != n {
            return Err(Error::dim("lanczos_init", n, r0.len()));
        }
        let beta0 = r0.norm2();
        if beta0 == 0.0 || !beta0.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "initial vector must be nonzero and finite (norm {beta0})"
            )));
        }
        // divide rather than scale by the reciprocal: keeps v_1 exact when r0
        // is a multiple of a representable unit vector
        let v1: Vector<S> = r0.iter().map(|&x| x / S::from_real(beta0)).collect();
        let av1 = op.apply(&v1);
        let nav = av1.norm2();
        if nav == 0.0 || !(nav * nav).is_normal() {
            return Err(Error::Breakdown(BreakdownInfo {
                step: 0,
                kind: BreakdownKind::InitialPairingFailed,
                magnitude: nav,
            }));
        }
        let w1: Vector<S> = av1.iter().map(|&x| x / S::from_real(nav * nav)).collect();
        let basis = record_bases.then(|| (vec![v1.clone()], vec![w1.clone()]));
        Ok(LanczosState {
            steps: 0,
            v_prev: Vector::zeros(n),
            v_cur: v1,
            w_prev: Vector::zeros(n),
            w_cur: w1,
            av_cur: av1,
            alpha: Vec::new(),
            beta: Vec::new(),
            delta: Vec::new(),
            v_hat: Vector::zeros(n),
            w_hat: Vector::zeros(n),
            basis,
            breakdown: None,
        })
    }

    /// One pass of the recurrence: two products by `A`, one by `A^H`.
    pub fn step<O: LinearOperator<S> + ?Sized>(&mut self, op: &O) -> StepOutcome {
        if let Some(info) = self.breakdown {
            return StepOutcome::Breakdown(info);
        }
        let j = self.steps + 1;
        let beta_j = self.beta.last().copied().unwrap_or_else(S::zero);
        let delta_j = S::from_real(self.delta.last().copied().unwrap_or(0.0));

        let a2v = op.apply(&self.av_cur);
        let alpha = self.w_cur.dot(&a2v);

        // v_hat = A v_j - alpha v_j - beta_j v_{j-1}
        let mut v_hat = self.av_cur.clone();
        v_hat.axpy(-alpha, &self.v_cur);
        v_hat.axpy(-beta_j, &self.v_prev);
        let v_scale = self.av_cur.norm2()
            + alpha.modulus() * self.v_cur.norm2()
            + beta_j.modulus() * self.v_prev.norm2();

        // w_hat = A^H w_j - conj(alpha) w_j - delta_j w_{j-1}
        let mut w_hat = op.apply_adjoint(&self.w_cur);
        let w_scale = w_hat.norm2()
            + alpha.modulus() * self.w_cur.norm2()
            + delta_j.modulus() * self.w_prev.norm2();
        w_hat.axpy(-alpha.conj(), &self.w_cur);
        w_hat.axpy(-delta_j.conj(), &self.w_prev);

        let av_hat = op.apply(&v_hat);
        let pairing = w_hat.dot(&av_hat);
        let delta_next = pairing.modulus().sqrt();

        self.alpha.push(alpha);
        self.steps = j;

        let eps = f64::EPSILON;
        let v_norm = v_hat.norm2();
        let w_norm = w_hat.norm2();
        let breakdown = if v_norm <= INVARIANT_SUBSPACE_FACTOR * eps * v_scale {
            Some((BreakdownKind::DeltaVanished, v_norm))
        } else if w_norm <= INVARIANT_SUBSPACE_FACTOR * eps * w_scale {
            Some((BreakdownKind::BetaVanished, w_norm))
        } else if delta_next <= eps.sqrt() * (av_hat.norm2() * w_norm).sqrt()
            || !delta_next.is_finite()
        {
            Some((BreakdownKind::DeltaVanished, delta_next))
        } else {
            None
        };

        if let Some((kind, magnitude)) = breakdown {
            self.v_hat = v_hat;
            self.w_hat = w_hat;
            let info = BreakdownInfo {
                step: j,
                kind,
                magnitude,
            };
            self.breakdown = Some(info);
            return StepOutcome::Breakdown(info);
        }

        let beta_next = pairing / S::from_real(delta_next);
        let inv_delta = S::from_real(1.0 / delta_next);
        let v_next = v_hat.scaled(inv_delta);
        let w_next = w_hat.scaled(S::one() / beta_next.conj());
        let av_next = av_hat.scaled(inv_delta);

        self.delta.push(delta_next);
        self.beta.push(beta_next);
        if let Some((vs, ws)) = self.basis.as_mut() {
            vs.push(v_next.clone());
            ws.push(w_next.clone());
        }
        self.v_prev = std::mem::replace(&mut self.v_cur, v_next);
        self.w_prev = std::mem::replace(&mut self.w_cur, w_next);
        self.av_cur = av_next;
        self.v_hat = v_hat;
        self.w_hat = w_hat;
        StepOutcome::Continued
    }

    /// Number of accepted steps (= number of `alpha`s).
    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn alphas(&self) -> &[S] {
        &self.alpha
    }

    /// `beta_2, ..., beta_{k+1}`; the `beta_1 = 0` sentinel is not stored.
    pub fn betas(&self) -> &[S] {
        &self.beta
    }

    /// `delta_2, ..., delta_{k+1}`; the `delta_1 = 0` sentinel is not stored.
    pub fn deltas(&self) -> &[f64] {
        &self.delta
    }

    pub fn breakdown(&self) -> Option<BreakdownInfo> {
        self.breakdown
    }

    /// Current `(v_j, w_j)`.
    pub fn current(&self) -> (&Vector<S>, &Vector<S>) {
        (&self.v_cur, &self.w_cur)
    }

    /// Unnormalized `(v_hat, w_hat)` from the last step.
    pub fn last_hat(&self) -> (&Vector<S>, &Vector<S>) {
        (&self.v_hat, &self.w_hat)
    }

    /// `T_k` from the accepted steps.
    pub fn tridiagonal(&self) -> TridiagonalMatrix<S> {
        let k = self.steps;
        let sub = self.delta[..k.saturating_sub(1)]
            .iter()
            .map(|&d| S::from_real(d))
            .collect();
        let sup = self.beta[..k.saturating_sub(1)].to_vec();
        TridiagonalMatrix::new(self.alpha.clone(), sub, sup).expect("consistent lengths")
    }
}

/// Convenience wrapper matching the rest of the API.
pub fn lanczos_init<S: Scalar, O: LinearOperator<S> + ?Sized>(
    op: &O,
    r0: &Vector<S>,
) -> Result<LanczosState<S>> {
    LanczosState::init(op, r0, false)
}

/// Output of [`lanczos_run`].
#[derive(Clone, Debug)]
pub struct LanczosRun<S> {
    /// `||r0||_2`
    pub beta0: f64,
    /// `v_1..v_k`, when recorded.
    pub v: Option<Vec<Vector<S>>>,
    /// `w_1..w_k`, when recorded.
    pub w: Option<Vec<Vector<S>>>,
    pub t: TridiagonalMatrix<S>,
    /// `delta_{k+1}`; `None` after a breakdown.
    pub delta_next: Option<f64>,
    pub beta_next: Option<S>,
    pub v_next: Option<Vector<S>>,
    pub w_next: Option<Vector<S>>,
    /// `v_hat_{k+1} = delta_{k+1} v_{k+1}` (available even after a breakdown).
    pub v_hat_next: Vector<S>,
    /// `w_hat_{k+1} = conj(beta_{k+1}) w_{k+1}`.
    pub w_hat_next: Vector<S>,
    pub breakdown: Option<BreakdownInfo>,
}

impl<S: Scalar> LanczosRun<S> {
    pub fn steps(&self) -> usize {
        self.t.dim()
    }

    pub fn v_matrix(&self) -> Option<DenseMatrix<S>> {
        let v = self.v.as_ref()?;
        DenseMatrix::from_columns(v[0].len(), v).ok()
    }

    pub fn w_matrix(&self) -> Option<DenseMatrix<S>> {
        let w = self.w.as_ref()?;
        DenseMatrix::from_columns(w[0].len(), w).ok()
    }

    /// `delta_{k+1} v_{k+1}`, or `v_hat` after a breakdown.
    pub fn v_tail(&self) -> Vector<S> {
        match (self.delta_next, &self.v_next) {
            (Some(d), Some(v)) => v.scaled(S::from_real(d)),
            _ => self.v_hat_next.clone(),
        }
    }

    /// `conj(beta_{k+1}) w_{k+1}`, or `w_hat` after a breakdown.
    pub fn w_tail(&self) -> Vector<S> {
        match (self.beta_next, &self.w_next) {
            (Some(b), Some(w)) => w.scaled(b.conj()),
            _ => self.w_hat_next.clone(),
        }
    }
}

/// Run up to `m` steps from `r0`, stopping early at a breakdown.
pub fn lanczos_run<S: Scalar, O: LinearOperator<S> + ?Sized>(
    op: &O,
    r0: &Vector<S>,
    m: usize,
    record_bases: bool,
) -> Result<LanczosRun<S>> {
    if m == 0 {
        return Err(Error::InvalidArgument("lanczos_run needs m >= 1".into()));
    }
    let mut state = LanczosState::init(op, r0, record_bases)?;
    let beta0 = r0.norm2();
    for _ in 0..m {
        if let StepOutcome::Breakdown(_) = state.step(op) {
            break;
        }
    }
    let k = state.steps();
    let t = state.tridiagonal();
    let (delta_next, beta_next, v_next, w_next) = if state.breakdown.is_none() {
        (
            Some(state.delta[k - 1]),
            Some(state.beta[k - 1]),
            Some(state.v_cur.clone()),
            Some(state.w_cur.clone()),
        )
    } else {
        (None, None, None, None)
    };
    let (v, w) = match state.basis.take() {
        Some((mut vs, mut ws)) => {
            vs.truncate(k);
            ws.truncate(k);
            (Some(vs), Some(ws))
        }
        None => (None, None),
    };
    Ok(LanczosRun {
        beta0,
        v,
        w,
        t,
        delta_next,
        beta_next,
        v_next,
        w_next,
        v_hat_next: state.v_hat,
        w_hat_next: state.w_hat,
        breakdown: state.breakdown,
    })
}

/// Frobenius norms of the residuals of the four structural relations:
///
/// * `right`: `A V - V T - delta_{k+1} v_{k+1} e_k^T`
/// * `left`: `A^H W - W T^H - conj(beta_{k+1}) w_{k+1} e_k^T`
/// * `pairing`: `W^H A V - I`
/// * `projected`: `W^H A^2 V - T`
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RelationResiduals {
    pub right: f64,
    pub left: f64,
    pub pairing: f64,
    pub projected: f64,
    /// `max_ij |<w_i, A v_j> - delta_ij|`
    pub max_biorth: f64,
}

impl RelationResiduals {
    pub fn max_relation(&self) -> f64 {
        self.right
            .max(self.left)
            .max(self.pairing)
            .max(self.projected)
    }
}

/// Evaluate the structural relations for a run recorded with bases.
pub fn verify_proposition<S: Scalar, O: LinearOperator<S> + ?Sized>(
    op: &O,
    run: &LanczosRun<S>,
) -> Result<RelationResiduals> {
    let (vs, ws) = match (&run.v, &run.w) {
        (Some(v), Some(w)) => (v, w),
        _ => {
            return Err(Error::InvalidArgument(
                "verify_proposition needs a run with recorded bases".into(),
            ))
        }
    };
    let k = run.steps();
    if vs.len() != k || ws.len() != k {
        return Err(Error::dim("verify_proposition", k, vs.len().min(ws.len())));
    }
    let t = &run.t;
    let av: Vec<Vector<S>> = vs.iter().map(|v| op.apply(v)).collect();
    let ahw: Vec<Vector<S>> = ws.iter().map(|w| op.apply_adjoint(w)).collect();
    let a2v: Vec<Vector<S>> = av.iter().map(|v| op.apply(v)).collect();
    let v_tail = run.v_tail();
    let w_tail = run.w_tail();

    let mut right = 0.0;
    let mut left = 0.0;
    for j in 0..k {
        let mut col = av[j].clone();
        let mut wcol = ahw[j].clone();
        for i in j.saturating_sub(1)..(j + 2).min(k) {
            col.axpy(-t.get(i, j), &vs[i]);
            wcol.axpy(-t.get(j, i).conj(), &ws[i]);
        }
        if j + 1 == k {
            col.axpy(-S::one(), &v_tail);
            wcol.axpy(-S::one(), &w_tail);
        }
        right += col.norm2().powi(2);
        left += wcol.norm2().powi(2);
    }

    let mut pairing = 0.0;
    let mut projected = 0.0;
    let mut max_biorth: f64 = 0.0;
    #[allow(clippy::needless_range_loop)]
    for i in 0..k {
        for j in 0..k {
            let id = if i == j { S::one() } else { S::zero() };
            let ep = (ws[i].dot(&av[j]) - id).modulus();
            let et = (ws[i].dot(&a2v[j]) - t.get(i, j)).modulus();
            max_biorth = max_biorth.max(ep);
            pairing += ep * ep;
            projected += et * et;
        }
    }
    Ok(RelationResiduals {
        right: right.sqrt(),
        left: left.sqrt(),
        pairing: pairing.sqrt(),
        projected: projected.sqrt(),
        max_biorth,
    })
}
