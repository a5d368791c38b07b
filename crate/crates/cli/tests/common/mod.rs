#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use bicor_core::mm::read_matrix_market;
use bicor_core::testkit::gen_convection_diffusion;
use bicor_core::AnyCsr;

pub fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_bicor"));
    c.env("RUST_LOG", "error");
    c
}

pub fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn bicor")
}

pub fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

/// Golden cells marked `*` are ignored; numeric cells agree to `rel` relative
/// (or absolutely when the golden value is below `floor`).
pub fn csv_matches(actual: &str, golden: &str, rel: f64, floor: f64) -> Result<(), String> {
    let a: Vec<&str> = actual.lines().collect();
    let g: Vec<&str> = golden.lines().collect();
    if a.len() != g.len() {
        return Err(format!("{} rows, golden has {}", a.len(), g.len()));
    }
    for (i, (ra, rg)) in a.iter().zip(&g).enumerate() {
        let ca: Vec<&str> = ra.split(',').collect();
        let cg: Vec<&str> = rg.split(',').collect();
        if ca.len() != cg.len() {
            return Err(format!(
                "row {i}: {} columns, golden has {}",
                ca.len(),
                cg.len()
            ));
        }
        for (x, y) in ca.iter().zip(&cg) {
            if *y == "*" || x == y {
                continue;
            }
            let ok = match (x.parse::<f64>(), y.parse::<f64>()) {
                (Ok(xv), Ok(yv)) if yv.abs() < floor => xv.abs() < floor,
                (Ok(xv), Ok(yv)) => (xv - yv).abs() <= rel * yv.abs(),
                _ => false,
            };
            if !ok {
                return Err(format!("row {i}: `{x}` vs golden `{y}`"));
            }
        }
    }
    Ok(())
}

fn expect_code(args: &[&str], want: i32) -> Result<(), String> {
    let out = run(args);
    let got = code(&out);
    if got == want {
        Ok(())
    } else {
        Err(format!(
            "`bicor {}` exited {got}, want {want}: {}",
            args.join(" "),
            String::from_utf8_lossy(&out.stderr)
        ))
    }
}

/// Exit codes, history and comparison CSV against golden files, and a
/// Matrix Market export round trip.
pub fn cli_contract() -> Result<String, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = |n: &str| dir.path().join(n).to_string_lossy().into_owned();
    let skew = data("skew2.mtx").to_string_lossy().into_owned();
    let small = data("small3.mtx").to_string_lossy().into_owned();

    let hist = path("history.csv");
    expect_code(
        &[
            "solve",
            "--generate",
            "diag:1,2,3",
            "--solver",
            "cors",
            "--tol",
            "1e-10",
            "--history",
            &hist,
        ],
        0,
    )?;
    expect_code(
        &["solve", "--generate", "convdiff:8,8,10", "--max-mv", "1"],
        2,
    )?;
    expect_code(
        &[
            "solve", "--matrix", &skew, "--shadow", "r0", "--solver", "bicor",
        ],
        3,
    )?;
    expect_code(&["solve", "--generate", "nonsense:3"], 4)?;
    expect_code(&["solve", "--matrix", &path("missing.mtx")], 4)?;
    expect_code(&["solve", "--generate", "diag:1,2", "--tol", "-1"], 4)?;
    expect_code(&["solve"], 4)?;

    let golden =
        std::fs::read_to_string(data("history_diag123_cors.csv")).map_err(|e| e.to_string())?;
    let actual = std::fs::read_to_string(&hist).map_err(|e| e.to_string())?;
    csv_matches(&actual, &golden, 1e-8, 1e-12).map_err(|e| format!("history: {e}"))?;

    let cmp = path("compare.csv");
    expect_code(
        &[
            "compare",
            "--matrix",
            &small,
            "--solver",
            "bicor",
            "--solver",
            "cors",
            "--both-shadows",
            "--csv",
            &cmp,
        ],
        0,
    )?;
    let golden = std::fs::read_to_string(data("compare_small3.csv")).map_err(|e| e.to_string())?;
    let actual = std::fs::read_to_string(&cmp).map_err(|e| e.to_string())?;
    csv_matches(&actual, &golden, 0.0, 0.0).map_err(|e| format!("compare: {e}"))?;
    for line in actual.lines().skip(1) {
        let trr: f64 = line
            .split(',')
            .nth(6)
            .and_then(|s| s.parse().ok())
            .ok_or("trr cell")?;
        if trr > -12.0 {
            return Err(format!("compare: trr {trr} in `{line}`"));
        }
    }

    let mtx = path("cd.mtx");
    expect_code(
        &["export", "--generate", "convdiff:4,4,10", "--output", &mtx],
        0,
    )?;
    let exported = std::fs::read_to_string(&mtx).map_err(|e| e.to_string())?;
    let golden = std::fs::read_to_string(data("convdiff_4_4_10.mtx")).map_err(|e| e.to_string())?;
    if exported != golden {
        return Err("export differs from golden convdiff_4_4_10.mtx".into());
    }
    let back = match read_matrix_market(&mtx).map_err(|e| e.to_string())? {
        AnyCsr::Real(m) => m,
        AnyCsr::Complex(_) => return Err("export read back as complex".into()),
    };
    if back != gen_convection_diffusion(4, 4, 10.0).map_err(|e| e.to_string())? {
        return Err("export round trip is not exact".into());
    }
    Ok("exit codes 0/2/3/4, golden history and compare CSV, exact .mtx round trip".into())
}
