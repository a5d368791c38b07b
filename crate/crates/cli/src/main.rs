use std::fs::File;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use bicor_core::harness::{
    compare, run, verify_matrix, ComparisonTable, MatrixSource, PrecondKind, RhsSpec, RunConfig,
    SolverKind,
};
use bicor_core::mm::write_matrix_market;
use bicor_core::{Error, Shadow, SolverConfig};
use clap::{Args, Parser, Subcommand};

/// Exit code for bad arguments, unreadable files and malformed input.
const EXIT_INPUT: u8 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "bicor",
    version,
    about = "BiCOR / CORS Krylov solvers and benchmark harness"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve A x = b with one solver.
    Solve {
        #[command(flatten)]
        system: SystemArgs,
        /// bicor | cors | projection:M | bicgstab
        #[arg(long, default_value = "bicor")]
        solver: SolverKind,
        #[command(flatten)]
        opts: SolveArgs,
        /// Write the convergence history as CSV.
        #[arg(long)]
        history: Option<PathBuf>,
        /// Write the solution vector, one entry per line.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run several solvers on the same system and tabulate the results.
    Compare {
        #[command(flatten)]
        system: SystemArgs,
        /// bicor | cors | projection:M | bicgstab; repeat to compare several.
        #[arg(long = "solver", required = true)]
        solvers: Vec<SolverKind>,
        #[command(flatten)]
        opts: SolveArgs,
        /// Also run every solver with the other shadow residual.
        #[arg(long)]
        both_shadows: bool,
        /// Write the table as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Check the Lanczos biorthogonality relations on a matrix.
    Verify {
        #[command(flatten)]
        system: MatrixArgs,
        /// Number of Lanczos steps.
        #[arg(long, default_value_t = 10)]
        steps: usize,
    },
    /// Write a generated matrix in Matrix Market format.
    Export {
        /// Generator, e.g. convdiff:16,16,10.
        #[arg(long)]
        generate: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: PathBuf,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct MatrixSelect {
    /// Matrix Market coordinate file.
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Generated family: convdiff:NX,NY,PECLET | diag:E1,E2,... |
    /// random:N[,SEED] | shifted:RE,IM:<family>.
    #[arg(long)]
    generate: Option<String>,
}

#[derive(Args, Debug)]
struct MatrixArgs {
    #[command(flatten)]
    select: MatrixSelect,
    /// Seed for `random:N` without an explicit seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl MatrixArgs {
    fn source(&self) -> Result<MatrixSource, Error> {
        match (&self.select.matrix, &self.select.generate) {
            (Some(p), _) => Ok(MatrixSource::MatrixMarketFile(p.clone())),
            (None, Some(g)) => MatrixSource::generated(g, self.seed),
            (None, None) => Err(Error::InvalidArgument("need --matrix or --generate".into())),
        }
    }
}

#[derive(Args, Debug)]
struct SystemArgs {
    #[command(flatten)]
    matrix: MatrixArgs,
    /// `ones` for b = A e, or a file with one entry per line.
    #[arg(long, default_value = "ones")]
    rhs: RhsSpec,
}

#[derive(Args, Debug)]
struct SolveArgs {
    /// none | jacobi
    #[arg(long, default_value = "none")]
    precond: PrecondKind,
    /// Initial shadow residual: Ar0 or r0.
    #[arg(long, default_value = "Ar0")]
    shadow: Shadow,
    #[arg(long, default_value_t = SolverConfig::default().tol)]
    tol: f64,
    /// Budget on products by A and A^H.
    #[arg(long = "max-mv", default_value_t = SolverConfig::default().max_mv)]
    max_mv: usize,
}

fn config(system: &SystemArgs, solver: SolverKind, opts: &SolveArgs) -> Result<RunConfig, Error> {
    let mut c = RunConfig::new(system.matrix.source()?, solver);
    c.rhs = system.rhs.clone();
    c.precond = opts.precond;
    c.shadow = opts.shadow;
    c.tol = opts.tol;
    c.max_mv = opts.max_mv;
    c.seed = system.matrix.seed;
    c.solver_config().validate()?;
    Ok(c)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn execute(command: Command) -> Result<u8, Error> {
    let mut out = std::io::stdout().lock();
    let io = |e| Error::io("<stdout>", e);
    match command {
        Command::Solve {
            system,
            solver,
            opts,
            history,
            output,
        } => {
            let mut cfg = config(&system, solver, &opts)?;
            cfg.history_path = history;
            let res = run(&cfg)?;
            if let Some(path) = output {
                res.x.write(&path)?;
            }
            let kind = if res.is_complex { "complex" } else { "real" };
            writeln!(out, "n = {}, nnz = {}, {kind}", res.n, res.nnz).map_err(io)?;
            let table = ComparisonTable {
                matrix: cfg.matrix_source.to_string(),
                rows: vec![res.row.clone()],
            };
            write!(out, "{}", table.to_text()).map_err(io)?;
            writeln!(out, "final relres (recursive) = {:e}", res.final_relres).map_err(io)?;
            if let Some(err) = res.error_vs_ones {
                writeln!(out, "max |x - 1| = {err:e}").map_err(io)?;
            }
            Ok(res.row.status.exit_code() as u8)
        }
        Command::Compare {
            system,
            solvers,
            opts,
            both_shadows,
            csv,
        } => {
            let mut configs = Vec::new();
            let shadows = if both_shadows {
                vec![opts.shadow, opts.shadow.other()]
            } else {
                vec![opts.shadow]
            };
            for shadow in shadows {
                for &solver in &solvers {
                    let mut c = config(&system, solver, &opts)?;
                    c.shadow = shadow;
                    configs.push(c);
                }
            }
            let table = compare(&configs)?;
            write!(out, "{}", table.to_text()).map_err(io)?;
            if let Some(path) = csv {
                let file = File::create(&path).map_err(|e| Error::io(&path, e))?;
                table.write_csv(file)?;
            }
            let worst = table
                .rows
                .iter()
                .map(|r| r.status.exit_code())
                .max()
                .unwrap_or(0);
            Ok(worst as u8)
        }
        Command::Verify { system, steps } => {
            if steps == 0 {
                return Err(Error::InvalidArgument("--steps must be >= 1".into()));
            }
            let source = system.source()?;
            let a = source.load()?;
            let rep = verify_matrix(&a, steps)?;
            let r = &rep.residuals;
            writeln!(
                out,
                "matrix: {source} (n = {}, nnz = {})",
                a.n_rows(),
                a.nnz()
            )
            .map_err(io)?;
            writeln!(out, "steps: {}", rep.steps).map_err(io)?;
            writeln!(out, "||A||_F: {:e}", rep.norm_frobenius).map_err(io)?;
            for (name, v) in [
                ("AV - VT - tail", r.right),
                ("A^H W - W T^H - tail", r.left),
                ("W^H A V - I", r.pairing),
                ("W^H A^2 V - T", r.projected),
            ] {
                writeln!(out, "{name:>22}: {v:.3e}").map_err(io)?;
            }
            writeln!(
                out,
                "{:>22}: {:.3e}",
                "max |<w_i,Av_j> - d_ij|", r.max_biorth
            )
            .map_err(io)?;
            writeln!(out, "{}", if rep.passed { "PASS" } else { "FAIL" }).map_err(io)?;
            Ok(if rep.passed { 0 } else { 3 })
        }
        Command::Export {
            generate,
            seed,
            output,
        } => {
            let a = MatrixSource::generated(&generate, seed)?.load()?;
            write_matrix_market(&output, &a)?;
            writeln!(
                out,
                "wrote {} ({}x{}, nnz = {})",
                output.display(),
                a.n_rows(),
                a.n_cols(),
                a.nnz()
            )
            .map_err(io)?;
            Ok(0)
        }
    }
}
