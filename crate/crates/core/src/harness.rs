//! Experimental protocol: load a matrix, build `b = A e`, start from
//! `x0 = 0`, run a solver under the `tol` / `max_mv` stopping rule and
//! report iterations, wall-clock time of the solve and the true relative
//! residual.

use std::fmt;
use std::fs::File;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;

use crate::bicgstab::solve_bicgstab_baseline;
use crate::bicor::solve_bicor;
use crate::cors::solve_cors;
use crate::error::{Error, Result};
use crate::lanczos::{lanczos_run, verify_proposition, RelationResiduals};
use crate::mm::{read_matrix_market, read_vector, write_vector};
use crate::operator::LinearOperator;
use crate::precond::{identity, jacobi};
use crate::projection::solve_projection_restarted;
use crate::scalar::Scalar;
use crate::solver::{HistoryEntry, Shadow, SolveReport, SolveStatus, SolverConfig};
use crate::sparse::{AnyCsr, CsrMatrix};
use crate::testkit::{ProblemFamily, ProblemSpec};
use crate::vector::Vector;

/// Column names of the convergence history CSV, in order.
pub const HISTORY_HEADER: [&str; 4] = ["iter", "mv_total", "relres", "elapsed_ms"];

/// Column names of the comparison CSV, in order.
pub const COMPARISON_HEADER: [&str; 8] = [
    "solver",
    "shadow",
    "precond",
    "iters",
    "mv_total",
    "cpu_seconds",
    "trr",
    "status",
];

#[derive(Clone, Debug, PartialEq)]
pub enum MatrixSource {
    MatrixMarketFile(PathBuf),
    Generated(ProblemSpec),
}

impl MatrixSource {
    /// Parse a generator string; `random:N` takes its seed from `seed`.
    pub fn generated(spec: &str, seed: u64) -> Result<Self> {
        let spec = match spec.strip_prefix("random:") {
            Some(rest) if !rest.contains(',') => format!("random:{rest},{seed}"),
            _ => spec.to_string(),
        };
        let family: ProblemFamily = spec.parse()?;
        Ok(MatrixSource::Generated(ProblemSpec::real(family)))
    }

    pub fn load(&self) -> Result<AnyCsr> {
        let a = match self {
            MatrixSource::MatrixMarketFile(p) => read_matrix_market(p)?,
            MatrixSource::Generated(spec) => spec.build()?,
        };
        if a.n_rows() != a.n_cols() {
            return Err(Error::InvalidArgument(format!(
                "matrix must be square, got {}x{}",
                a.n_rows(),
                a.n_cols()
            )));
        }
        Ok(a)
    }
}

impl fmt::Display for MatrixSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixSource::MatrixMarketFile(p) => write!(f, "{}", p.display()),
            MatrixSource::Generated(spec) => write!(f, "{}", spec.family),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum RhsSpec {
    /// `b = A e` with `e` the all-ones vector.
    #[default]
    AllOnesSolution,
    FromFile(PathBuf),
}

impl FromStr for RhsSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "ones" => RhsSpec::AllOnesSolution,
            path => RhsSpec::FromFile(PathBuf::from(path)),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolverKind {
    Bicor,
    Cors,
    /// Restarted two-sided projection with cycles of `m` Lanczos steps.
    Projection(usize),
    Bicgstab,
}

impl FromStr for SolverKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bicor" => Ok(SolverKind::Bicor),
            "cors" => Ok(SolverKind::Cors),
            "bicgstab" => Ok(SolverKind::Bicgstab),
            _ => {
                let m = s
                    .strip_prefix("projection:")
                    .and_then(|m| m.parse::<usize>().ok())
                    .filter(|&m| m >= 1);
                m.map(SolverKind::Projection).ok_or_else(|| {
                    Error::InvalidArgument(format!(
                        "unknown solver '{s}' (expected bicor, cors, projection:<m> or bicgstab)"
                    ))
                })
            }
        }
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolverKind::Bicor => f.write_str("bicor"),
            SolverKind::Cors => f.write_str("cors"),
            SolverKind::Projection(m) => write!(f, "projection:{m}"),
            SolverKind::Bicgstab => f.write_str("bicgstab"),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PrecondKind {
    #[default]
    None,
    Jacobi,
}

impl FromStr for PrecondKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(PrecondKind::None),
            "jacobi" => Ok(PrecondKind::Jacobi),
            other => Err(Error::InvalidArgument(format!(
                "unknown preconditioner '{other}' (expected none or jacobi)"
            ))),
        }
    }
}

impl fmt::Display for PrecondKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PrecondKind::None => "none",
            PrecondKind::Jacobi => "jacobi",
        })
    }
}

/// One solver run. The initial guess is always the zero vector.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub matrix_source: MatrixSource,
    pub rhs: RhsSpec,
    pub solver: SolverKind,
    pub precond: PrecondKind,
    pub shadow: Shadow,
    pub tol: f64,
    pub max_mv: usize,
    pub history_path: Option<PathBuf>,
    /// Seed for generators that take one and were given none.
    pub seed: u64,
}

impl RunConfig {
    pub fn new(matrix_source: MatrixSource, solver: SolverKind) -> Self {
        let d = SolverConfig::default();
        RunConfig {
            matrix_source,
            rhs: RhsSpec::AllOnesSolution,
            solver,
            precond: PrecondKind::None,
            shadow: d.shadow,
            tol: d.tol,
            max_mv: d.max_mv,
            history_path: None,
            seed: 0,
        }
    }

    pub fn solver_config(&self) -> SolverConfig {
        SolverConfig {
            tol: self.tol,
            max_mv: self.max_mv,
            shadow: self.shadow,
            record_history: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonRow {
    pub solver_name: String,
    pub shadow: Shadow,
    pub precond: PrecondKind,
    pub iters: usize,
    pub mv_total: usize,
    /// Wall clock of the solve alone (no I/O, no matrix load).
    pub cpu_seconds: f64,
    pub trr: f64,
    pub status: SolveStatus,
}

impl ComparisonRow {
    /// Iteration count as printed in tables: `-` unless converged.
    pub fn iters_display(&self) -> String {
        if self.status.is_converged() {
            self.iters.to_string()
        } else {
            "-".to_string()
        }
    }
}

impl fmt::Display for ComparisonRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (shadow {}, precond {}): iters {}, mv {}, cpu {:.4} s, trr {:.2}, {}",
            self.solver_name,
            self.shadow,
            self.precond,
            self.iters_display(),
            self.mv_total,
            self.cpu_seconds,
            self.trr,
            self.status
        )
    }
}

/// Solution vector in whichever field the matrix was loaded.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyVector {
    Real(Vector<f64>),
    Complex(Vector<Complex64>),
}

impl AnyVector {
    pub fn len(&self) -> usize {
        match self {
            AnyVector::Real(v) => v.len(),
            AnyVector::Complex(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// One entry per line, see [`crate::mm::write_vector`].
    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        match self {
            AnyVector::Real(v) => write_vector(path, v),
            AnyVector::Complex(v) => write_vector(path, v),
        }
    }
}

/// Everything a run produced.
#[derive(Clone, Debug)]
pub struct RunResult {
    pub row: ComparisonRow,
    pub x: AnyVector,
    pub history: Vec<HistoryEntry>,
    pub final_relres: f64,
    /// `||x - e||_inf` when the right-hand side was built as `A e`.
    pub error_vs_ones: Option<f64>,
    pub n: usize,
    pub nnz: usize,
    pub is_complex: bool,
}

pub fn build_rhs<S: Scalar>(a: &CsrMatrix<S>, spec: &RhsSpec) -> Result<Vector<S>> {
    match spec {
        RhsSpec::AllOnesSolution => Ok(apply_ones(a)),
        RhsSpec::FromFile(path) => {
            let b: Vector<S> = read_vector(path)?;
            if b.len() != a.n_rows() {
                return Err(Error::dim("right-hand side file", a.n_rows(), b.len()));
            }
            Ok(b)
        }
    }
}

fn apply_ones<S: Scalar>(a: &CsrMatrix<S>) -> Vector<S> {
    a.apply(&Vector::ones(a.n_cols()))
}

/// Dispatch to the selected solver with `x0 = 0`.
pub fn solve_with<S: Scalar>(
    a: &CsrMatrix<S>,
    b: &Vector<S>,
    solver: SolverKind,
    precond: PrecondKind,
    cfg: &SolverConfig,
) -> Result<SolveReport<S>> {
    let x0 = Vector::zeros(a.n_cols());
    match (solver, precond) {
        (SolverKind::Projection(_), PrecondKind::Jacobi) => Err(Error::InvalidArgument(
            "the projection method does not take a preconditioner".into(),
        )),
        (SolverKind::Projection(m), PrecondKind::None) => {
            solve_projection_restarted(a, b, &x0, m, cfg)
        }
        (_, PrecondKind::None) => dispatch(a, b, &x0, solver, &identity(), cfg),
        (_, PrecondKind::Jacobi) => dispatch(a, b, &x0, solver, &jacobi(a)?, cfg),
    }
}

fn dispatch<S: Scalar, P: crate::precond::Preconditioner<S>>(
    a: &CsrMatrix<S>,
    b: &Vector<S>,
    x0: &Vector<S>,
    solver: SolverKind,
    p: &P,
    cfg: &SolverConfig,
) -> Result<SolveReport<S>> {
    match solver {
        SolverKind::Bicor => solve_bicor(a, b, x0, p, cfg),
        SolverKind::Cors => solve_cors(a, b, x0, p, cfg),
        SolverKind::Bicgstab => solve_bicgstab_baseline(a, b, x0, p, cfg),
        SolverKind::Projection(_) => unreachable!("handled by solve_with"),
    }
}

fn run_typed<S: Scalar>(
    a: &CsrMatrix<S>,
    b: &Vector<S>,
    config: &RunConfig,
    wrap: fn(Vector<S>) -> AnyVector,
) -> Result<RunResult> {
    let cfg = config.solver_config();
    let start = Instant::now();
    let rep = solve_with(a, b, config.solver, config.precond, &cfg)?;
    let cpu_seconds = start.elapsed().as_secs_f64();
    if let Some(path) = &config.history_path {
        write_history_csv(path, &rep.history)?;
    }
    let error_vs_ones = (config.rhs == RhsSpec::AllOnesSolution)
        .then(|| rep.x.sub(&Vector::ones(a.n_cols())).norm_inf());
    Ok(RunResult {
        row: ComparisonRow {
            solver_name: config.solver.to_string(),
            shadow: config.shadow,
            precond: config.precond,
            iters: rep.iters,
            mv_total: rep.mv_total(),
            cpu_seconds,
            trr: rep.trr,
            status: rep.status,
        },
        history: rep.history,
        x: wrap(rep.x),
        final_relres: rep.final_relres,
        error_vs_ones,
        n: a.n_rows(),
        nnz: a.nnz(),
        is_complex: S::IS_COMPLEX,
    })
}

fn run_loaded(a: &AnyCsr, config: &RunConfig) -> Result<RunResult> {
    match a {
        AnyCsr::Real(m) => run_typed(m, &build_rhs(m, &config.rhs)?, config, AnyVector::Real),
        AnyCsr::Complex(m) => run_typed(m, &build_rhs(m, &config.rhs)?, config, AnyVector::Complex),
    }
}

/// Load the matrix, build the right-hand side and run one solver.
pub fn run(config: &RunConfig) -> Result<RunResult> {
    let a = config.matrix_source.load()?;
    run_loaded(&a, config)
}

pub fn write_history_csv(path: impl AsRef<Path>, history: &[HistoryEntry]) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_history_to(file, history)
}

pub fn write_history_to<W: std::io::Write>(w: W, history: &[HistoryEntry]) -> Result<()> {
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(HISTORY_HEADER)?;
    for h in history {
        csv.write_record([
            h.iter.to_string(),
            h.mv_total.to_string(),
            h.relres.to_string(),
            h.elapsed_ms.to_string(),
        ])?;
    }
    csv.flush().map_err(|e| Error::io("<history csv>", e))
}

#[derive(Clone, Debug)]
pub struct ComparisonTable {
    pub matrix: String,
    pub rows: Vec<ComparisonRow>,
}

impl ComparisonTable {
    /// Index of the fastest converged row.
    pub fn fastest(&self) -> Option<usize> {
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, r)| r.status.is_converged())
            .min_by(|a, b| a.1.cpu_seconds.total_cmp(&b.1.cpu_seconds))
            .map(|(i, _)| i)
    }

    /// Aligned text table; the fastest converged row is marked with `*`.
    pub fn to_text(&self) -> String {
        let header = [
            "", "Method", "Shadow", "Precond", "Iters", "MV", "CPU(s)", "TRR", "Status",
        ];
        let fastest = self.fastest();
        let mut cells: Vec<Vec<String>> = vec![header.iter().map(|s| s.to_string()).collect()];
        for (i, r) in self.rows.iter().enumerate() {
            cells.push(vec![
                if Some(i) == fastest {
                    "*".into()
                } else {
                    String::new()
                },
                r.solver_name.clone(),
                r.shadow.to_string(),
                r.precond.to_string(),
                r.iters_display(),
                r.mv_total.to_string(),
                format!("{:.4}", r.cpu_seconds),
                format!("{:.2}", r.trr),
                r.status.to_string(),
            ]);
        }
        let widths: Vec<usize> = (0..header.len())
            .map(|c| cells.iter().map(|row| row[c].len()).max().unwrap_or(0))
            .collect();
        let mut out = format!("matrix: {}\n", self.matrix);
        for row in &cells {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .enumerate()
                .map(|(c, (s, &w))| {
                    if c <= 3 {
                        format!("{s:<w$}")
                    } else {
                        format!("{s:>w$}")
                    }
                })
                .collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
        out
    }

    pub fn write_csv<W: std::io::Write>(&self, w: W) -> Result<()> {
        let mut csv = csv::Writer::from_writer(w);
        csv.write_record(COMPARISON_HEADER)?;
        for r in &self.rows {
            csv.write_record([
                r.solver_name.clone(),
                r.shadow.to_string(),
                r.precond.to_string(),
                r.iters_display(),
                r.mv_total.to_string(),
                r.cpu_seconds.to_string(),
                r.trr.to_string(),
                r.status.to_string(),
            ])?;
        }
        csv.flush().map_err(|e| Error::io("<comparison csv>", e))
    }
}

/// Run several solvers on one system; the matrix is loaded once.
pub fn compare(configs: &[RunConfig]) -> Result<ComparisonTable> {
    let first = configs
        .first()
        .ok_or_else(|| Error::InvalidArgument("compare needs at least one configuration".into()))?;
    if let Some(bad) = configs
        .iter()
        .find(|c| c.matrix_source != first.matrix_source || c.rhs != first.rhs)
    {
        return Err(Error::InvalidArgument(format!(
            "all compared runs must share matrix and right-hand side ({} vs {})",
            first.matrix_source, bad.matrix_source
        )));
    }
    let a = first.matrix_source.load()?;
    let rows = configs
        .iter()
        .map(|c| run_loaded(&a, c).map(|r| r.row))
        .collect::<Result<Vec<_>>>()?;
    Ok(ComparisonTable {
        matrix: first.matrix_source.to_string(),
        rows,
    })
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub steps: usize,
    pub residuals: RelationResiduals,
    pub norm_frobenius: f64,
    /// Relation residuals within `1e-8 ||A||_F` and biorthogonality within `1e-6`.
    pub passed: bool,
}

pub const VERIFY_RELATION_TOL: f64 = 1e-8;
pub const VERIFY_BIORTH_TOL: f64 = 1e-6;

/// Run `k` Lanczos steps from `r0 = A e` and evaluate the structural
/// relations of the generated pair.
pub fn verify_matrix(a: &AnyCsr, k: usize) -> Result<VerifyReport> {
    fn typed<S: Scalar>(a: &CsrMatrix<S>, k: usize) -> Result<VerifyReport> {
        let r0 = apply_ones(a);
        let run = lanczos_run(a, &r0, k.min(a.n_rows()).max(1), true)?;
        let residuals = verify_proposition(a, &run)?;
        let nf = a.norm_frobenius();
        Ok(VerifyReport {
            steps: run.steps(),
            passed: residuals.max_relation() <= VERIFY_RELATION_TOL * nf
                && residuals.max_biorth <= VERIFY_BIORTH_TOL,
            residuals,
            norm_frobenius: nf,
        })
    }
    match a {
        AnyCsr::Real(m) => typed(m, k),
        AnyCsr::Complex(m) => typed(m, k),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testkit::ScalarField;

    fn diag123() -> MatrixSource {
        MatrixSource::Generated(ProblemSpec::real(ProblemFamily::DiagonalSpectrum(vec![
            1.0, 2.0, 3.0,
        ])))
    }

    #[test]
    fn rhs_examples() {
        let i3 = CsrMatrix::<f64>::identity(3);
        assert_eq!(
            build_rhs(&i3, &RhsSpec::AllOnesSolution).unwrap(),
            Vector::ones(3)
        );
        let a = CsrMatrix::from_dense_rows(&[
            vec![4.0, 1.0, 0.0],
            vec![2.0, 5.0, 1.0],
            vec![0.0, 3.0, 6.0],
        ]);
        assert_eq!(
            build_rhs(&a, &RhsSpec::AllOnesSolution).unwrap().as_slice(),
            &[5.0, 8.0, 9.0]
        );

        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("b.txt");
        std::fs::write(&p, "1\n2\n").unwrap();
        assert!(matches!(
            build_rhs(&a, &RhsSpec::FromFile(p)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn run_cors_on_diag() {
        let cfg = RunConfig::new(diag123(), SolverKind::Cors);
        let res = run(&cfg).unwrap();
        assert_eq!(res.row.status, SolveStatus::Converged);
        assert!(res.row.iters <= 3);
        assert!(res.row.trr <= -8.0);
    }

    #[test]
    fn run_budget_exhaustion() {
        let mut cfg = RunConfig::new(
            MatrixSource::generated("convdiff:8,8,10", 0).unwrap(),
            SolverKind::Bicor,
        );
        cfg.max_mv = 1;
        let res = run(&cfg).unwrap();
        assert_eq!(res.row.status, SolveStatus::MaxMvExceeded);
        assert_eq!(res.row.iters_display(), "-");
        assert_eq!(res.row.status.exit_code(), 2);
    }

    #[test]
    fn history_csv_matches_report() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("h.csv");
        let mut cfg = RunConfig::new(
            MatrixSource::generated("convdiff:10,10,5", 0).unwrap(),
            SolverKind::Bicor,
        );
        cfg.history_path = Some(path.clone());
        let res = run(&cfg).unwrap();
        let mut rdr = csv::Reader::from_path(&path).unwrap();
        assert_eq!(
            rdr.headers().unwrap().iter().collect::<Vec<_>>(),
            HISTORY_HEADER
        );
        let mut rows = 0;
        let mut last: Option<(usize, usize)> = None;
        for (rec, h) in rdr.records().zip(&res.history) {
            let rec = rec.unwrap();
            let iter: usize = rec[0].parse().unwrap();
            let mv: usize = rec[1].parse().unwrap();
            let relres: f64 = rec[2].parse().unwrap();
            assert_eq!((iter, mv, relres), (h.iter, h.mv_total, h.relres));
            if let Some((i0, m0)) = last {
                assert!(iter > i0 && mv > m0);
            }
            last = Some((iter, mv));
            rows += 1;
        }
        assert_eq!(rows, res.history.len());
        assert_eq!(res.history.last().unwrap().relres, res.final_relres);
    }

    #[test]
    fn compare_tables() {
        let src = MatrixSource::generated("convdiff:32,32,10", 0).unwrap();
        let configs: Vec<RunConfig> = [SolverKind::Bicor, SolverKind::Cors, SolverKind::Bicgstab]
            .into_iter()
            .map(|s| RunConfig::new(src.clone(), s))
            .collect();
        let table = compare(&configs).unwrap();
        assert_eq!(table.rows.len(), 3);
        assert!(table.rows.iter().all(|r| r.status.is_converged()));
        let text = table.to_text();
        assert_eq!(text.lines().filter(|l| l.starts_with('*')).count(), 1);
        let mut buf = Vec::new();
        table.write_csv(&mut buf).unwrap();
        let csv_text = String::from_utf8(buf).unwrap();
        assert!(
            csv_text.starts_with("solver,shadow,precond,iters,mv_total,cpu_seconds,trr,status\n")
        );
        assert_eq!(csv_text.lines().count(), 4);
    }

    #[test]
    fn shadow_sweep() {
        let src = diag123();
        let mut configs = Vec::new();
        for shadow in [Shadow::ARzero, Shadow::Rzero] {
            for solver in [SolverKind::Bicor, SolverKind::Cors] {
                let mut c = RunConfig::new(src.clone(), solver);
                c.shadow = shadow;
                configs.push(c);
            }
        }
        let table = compare(&configs).unwrap();
        assert_eq!(table.rows.len(), 4);
        assert!(table.rows.iter().all(|r| r.status.is_converged()));
    }

    #[test]
    fn compare_rejects_mismatch() {
        let a = RunConfig::new(diag123(), SolverKind::Bicor);
        let b = RunConfig::new(
            MatrixSource::generated("diag:1,2", 0).unwrap(),
            SolverKind::Cors,
        );
        assert!(matches!(compare(&[a, b]), Err(Error::InvalidArgument(_))));
        assert!(compare(&[]).is_err());
    }

    #[test]
    fn parsing() {
        assert_eq!(
            "projection:5".parse::<SolverKind>().unwrap(),
            SolverKind::Projection(5)
        );
        assert!("projection:0".parse::<SolverKind>().is_err());
        assert!("gmres".parse::<SolverKind>().is_err());
        for s in ["bicor", "cors", "bicgstab", "projection:12"] {
            assert_eq!(s.parse::<SolverKind>().unwrap().to_string(), s);
        }
        assert_eq!(
            "jacobi".parse::<PrecondKind>().unwrap(),
            PrecondKind::Jacobi
        );
        assert_eq!("r0".parse::<Shadow>().unwrap(), Shadow::Rzero);
        assert_eq!("ones".parse::<RhsSpec>().unwrap(), RhsSpec::AllOnesSolution);
        match MatrixSource::generated("random:20", 7).unwrap() {
            MatrixSource::Generated(spec) => {
                assert_eq!(
                    spec.family,
                    ProblemFamily::RandomWellConditioned { n: 20, seed: 7 }
                )
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn every_solver_recovers_ones() {
        for solver in ["bicor", "cors", "bicgstab", "projection:30"] {
            for precond in [PrecondKind::None, PrecondKind::Jacobi] {
                if solver.starts_with("projection") && precond == PrecondKind::Jacobi {
                    continue;
                }
                let mut cfg = RunConfig::new(
                    MatrixSource::generated("convdiff:12,12,20", 0).unwrap(),
                    solver.parse().unwrap(),
                );
                cfg.precond = precond;
                let res = run(&cfg).unwrap();
                assert!(
                    res.row.status.is_converged(),
                    "{solver} {precond}: {}",
                    res.row.status
                );
                assert!(res.error_vs_ones.unwrap() <= 1e-5, "{solver} {precond}");
            }
        }
    }

    #[test]
    fn verify_complex_and_real() {
        let real = verify_matrix(
            &ProblemSpec::real(ProblemFamily::RandomWellConditioned { n: 60, seed: 4 })
                .build()
                .unwrap(),
            10,
        )
        .unwrap();
        assert!(real.passed, "{:?}", real.residuals);
        let spec = ProblemSpec {
            family: ProblemFamily::ConvectionDiffusion2D {
                nx: 8,
                ny: 8,
                peclet: 5.0,
            },
            field: ScalarField::Complex,
        };
        let c = verify_matrix(&spec.build().unwrap(), 10).unwrap();
        assert!(c.passed);
        assert_eq!(c.steps, 10);
    }
}
