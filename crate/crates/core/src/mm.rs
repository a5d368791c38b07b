//! Matrix Market coordinate files and plain-text vectors.
//!
//! Symmetric, skew-symmetric and Hermitian storage is expanded to general
//! form on read; duplicates are summed. Writing always produces `general`
//! storage with shortest round-trip float formatting, so a write/read cycle
//! is exact.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::sparse::{AnyCsr, CsrMatrix};
use crate::vector::Vector;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Field {
    Real,
    Complex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Symmetry {
    General,
    Symmetric,
    SkewSymmetric,
    Hermitian,
}

pub fn read_matrix_market(path: impl AsRef<Path>) -> Result<AnyCsr> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_matrix_market_from(BufReader::new(file), path)
}

/// Parse from any reader; `path` is only used in error messages.
pub fn read_matrix_market_from<R: BufRead>(reader: R, path: impl Into<PathBuf>) -> Result<AnyCsr> {
    let path = path.into();
    let err = |line: usize, msg: String| Error::Parse {
        path: path.clone(),
        line,
        msg,
    };
    let mut lines = reader.lines().enumerate().map(|(i, l)| (i + 1, l));

    let (lineno, header) = match lines.next() {
        Some((n, l)) => (n, l.map_err(|e| Error::io(&path, e))?),
        None => return Err(err(1, "empty file".into())),
    };
    let tokens: Vec<String> = header
        .split_whitespace()
        .map(str::to_ascii_lowercase)
        .collect();
    if tokens.len() != 5 || tokens[0] != "%%matrixmarket" || tokens[1] != "matrix" {
        return Err(err(lineno, format!("malformed header `{header}`")));
    }
    if tokens[2] != "coordinate" {
        return Err(err(
            lineno,
            format!(
                "unsupported format `{}`; only coordinate is supported",
                tokens[2]
            ),
        ));
    }
    let field = match tokens[3].as_str() {
        "real" | "double" | "integer" => Field::Real,
        "complex" => Field::Complex,
        "pattern" => {
            return Err(err(
                lineno,
                "pattern matrices carry no values and are not supported".into(),
            ))
        }
        other => return Err(err(lineno, format!("unknown field `{other}`"))),
    };
    let symmetry = match tokens[4].as_str() {
        "general" => Symmetry::General,
        "symmetric" => Symmetry::Symmetric,
        "skew-symmetric" => Symmetry::SkewSymmetric,
        "hermitian" => Symmetry::Hermitian,
        other => return Err(err(lineno, format!("unknown symmetry `{other}`"))),
    };

    let mut size: Option<(usize, usize, usize)> = None;
    let mut entries: Vec<(usize, usize, Complex64)> = Vec::new();
    let mut stored = 0usize;
    for (lineno, line) in lines {
        let line = line.map_err(|e| Error::io(&path, e))?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        let parts: Vec<&str> = trimmed.split_whitespace().collect();
        let Some((n_rows, n_cols, nnz)) = size else {
            if parts.len() != 3 {
                return Err(err(
                    lineno,
                    format!("expected `rows cols nnz`, found `{trimmed}`"),
                ));
            }
            let parse = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| err(lineno, format!("invalid size value `{s}`")))
            };
            let dims = (parse(parts[0])?, parse(parts[1])?, parse(parts[2])?);
            if symmetry != Symmetry::General && dims.0 != dims.1 {
                return Err(err(
                    lineno,
                    "symmetric storage requires a square matrix".into(),
                ));
            }
            size = Some(dims);
            entries.reserve(dims.2);
            continue;
        };
        let expected = match field {
            Field::Real => 3,
            Field::Complex => 4,
        };
        if parts.len() != expected {
            return Err(err(
                lineno,
                format!(
                    "expected {expected} fields per entry, found {}",
                    parts.len()
                ),
            ));
        }
        if stored == nnz {
            return Err(err(lineno, format!("more than the declared {nnz} entries")));
        }
        let index = |s: &str, bound: usize| -> Result<usize> {
            let i = s
                .parse::<usize>()
                .map_err(|_| err(lineno, format!("invalid index `{s}`")))?;
            if i == 0 || i > bound {
                return Err(err(lineno, format!("index {i} out of bounds 1..={bound}")));
            }
            Ok(i - 1)
        };
        let number = |s: &str| -> Result<f64> {
            s.parse::<f64>()
                .map_err(|_| err(lineno, format!("invalid number `{s}`")))
        };
        let i = index(parts[0], n_rows)?;
        let j = index(parts[1], n_cols)?;
        let v = match field {
            Field::Real => Complex64::new(number(parts[2])?, 0.0),
            Field::Complex => Complex64::new(number(parts[2])?, number(parts[3])?),
        };
        if symmetry == Symmetry::SkewSymmetric && i == j {
            return Err(err(
                lineno,
                "skew-symmetric storage cannot hold diagonal entries".into(),
            ));
        }
        stored += 1;
        entries.push((i, j, v));
        if i != j {
            match symmetry {
                Symmetry::General => {}
                Symmetry::Symmetric => entries.push((j, i, v)),
                Symmetry::SkewSymmetric => entries.push((j, i, -v)),
                Symmetry::Hermitian => entries.push((j, i, v.conj())),
            }
        } else if symmetry == Symmetry::Hermitian && v.im != 0.0 {
            return Err(err(
                lineno,
                "Hermitian diagonal entries must be real".into(),
            ));
        }
    }

    let Some((n_rows, n_cols, nnz)) = size else {
        return Err(err(1, "missing size line".into()));
    };
    if stored != nnz {
        return Err(err(0, format!("declared {nnz} entries but found {stored}")));
    }

    Ok(match field {
        Field::Real => AnyCsr::Real(CsrMatrix::from_triplets(
            n_rows,
            n_cols,
            entries.into_iter().map(|(i, j, v)| (i, j, v.re)),
        )?),
        Field::Complex => AnyCsr::Complex(CsrMatrix::from_triplets(n_rows, n_cols, entries)?),
    })
}

/// Write `a` in coordinate `general` form.
pub fn write_matrix_market(path: impl AsRef<Path>, a: &AnyCsr) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    write_matrix_market_to(&mut w, a).map_err(|e| Error::io(path, e))?;
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn write_matrix_market_to<W: Write>(w: &mut W, a: &AnyCsr) -> std::io::Result<()> {
    match a {
        AnyCsr::Real(m) => {
            writeln!(w, "%%MatrixMarket matrix coordinate real general")?;
            writeln!(w, "{} {} {}", m.n_rows(), m.n_cols(), m.nnz())?;
            for (i, j, v) in m.triplets() {
                writeln!(w, "{} {} {}", i + 1, j + 1, fmt_f64(v))?;
            }
        }
        AnyCsr::Complex(m) => {
            writeln!(w, "%%MatrixMarket matrix coordinate complex general")?;
            writeln!(w, "{} {} {}", m.n_rows(), m.n_cols(), m.nnz())?;
            for (i, j, v) in m.triplets() {
                writeln!(w, "{} {} {} {}", i + 1, j + 1, fmt_f64(v.re), fmt_f64(v.im))?;
            }
        }
    }
    Ok(())
}

/// Shortest representation that parses back to the same `f64`, with an
/// exponent for very large or small magnitudes.
fn fmt_f64(v: f64) -> String {
    let a = v.abs();
    if a != 0.0 && !(1e-4..1e16).contains(&a) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

/// Read a vector stored one entry per line (`re` or `re im`); blank lines
/// and lines starting with `%` or `#` are skipped.
pub fn read_vector<S: Scalar>(path: impl AsRef<Path>) -> Result<Vector<S>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_vector_from(BufReader::new(file), path)
}

pub fn read_vector_from<S: Scalar, R: BufRead>(
    reader: R,
    path: impl Into<PathBuf>,
) -> Result<Vector<S>> {
    let path = path.into();
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io(&path, e))?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('%') || t.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::Parse {
            path: path.clone(),
            line: i + 1,
            msg,
        };
        let nums = t
            .split_whitespace()
            .map(|s| {
                s.parse::<f64>()
                    .map_err(|_| err(format!("invalid number `{s}`")))
            })
            .collect::<Result<Vec<f64>>>()?;
        let v = match nums.as_slice() {
            [re] => S::from_real(*re),
            [re, im] if S::IS_COMPLEX || *im == 0.0 => S::from_parts(*re, *im),
            [_, _] => return Err(err("complex entry in a real vector".into())),
            _ => {
                return Err(err(format!(
                    "expected 1 or 2 numbers, found {}",
                    nums.len()
                )))
            }
        };
        out.push(v);
    }
    Ok(out.into())
}

/// Write one entry per line, `re` for real and `re im` for complex scalars.
pub fn write_vector<S: Scalar>(path: impl AsRef<Path>, v: &Vector<S>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    let io = |e| Error::io(path, e);
    for x in v.iter() {
        if S::IS_COMPLEX {
            writeln!(w, "{} {}", fmt_f64(x.re()), fmt_f64(x.im())).map_err(io)?;
        } else {
            writeln!(w, "{}", fmt_f64(x.re())).map_err(io)?;
        }
    }
    w.flush().map_err(io)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testkit::gen_convection_diffusion;
    use proptest::prelude::*;

    fn parse(text: &str) -> Result<AnyCsr> {
        read_matrix_market_from(text.as_bytes(), "test.mtx")
    }

    fn real(a: AnyCsr) -> CsrMatrix<f64> {
        match a {
            AnyCsr::Real(m) => m,
            AnyCsr::Complex(_) => panic!("expected a real matrix"),
        }
    }

    #[test]
    fn general_real() {
        let a = real(
            parse(
                "%%MatrixMarket matrix coordinate real general\n% comment\n2 2 4\n1 1 4\n2 1 2\n1 2 1\n2 2 5\n",
            )
            .unwrap(),
        );
        assert_eq!(
            a,
            CsrMatrix::from_dense_rows(&[vec![4.0, 1.0], vec![2.0, 5.0]])
        );
    }

    #[test]
    fn symmetric_expansion() {
        // lower triangle of diag(2,3) + ones
        let a = real(
            parse("%%MatrixMarket matrix coordinate real symmetric\n2 2 3\n1 1 3\n2 1 1\n2 2 4\n")
                .unwrap(),
        );
        assert_eq!(a, a.transpose());
        assert_eq!(
            a.to_dense(),
            CsrMatrix::from_dense_rows(&[vec![3.0, 1.0], vec![1.0, 4.0]]).to_dense()
        );
    }

    #[test]
    fn skew_and_hermitian() {
        let a = real(
            parse("%%MatrixMarket matrix coordinate real skew-symmetric\n2 2 1\n2 1 3\n").unwrap(),
        );
        assert_eq!(a.get(0, 1), -3.0);
        assert_eq!(a.get(1, 0), 3.0);
        let h = match parse(
            "%%MatrixMarket matrix coordinate complex hermitian\n2 2 2\n1 1 2 0\n2 1 1 1\n",
        )
        .unwrap()
        {
            AnyCsr::Complex(m) => m,
            AnyCsr::Real(_) => panic!(),
        };
        assert_eq!(h.get(0, 1), Complex64::new(1.0, -1.0));
        assert_eq!(h, h.adjoint());
    }

    #[test]
    fn duplicates_summed() {
        let a = real(
            parse("%%MatrixMarket matrix coordinate integer general\n1 1 2\n1 1 2\n1 1 3\n")
                .unwrap(),
        );
        assert_eq!(a.get(0, 0), 5.0);
    }

    #[test]
    fn rejects_bad_input() {
        let bad = [
            "%%MatrixMarket matrix coordinate pattern general\n2 2 1\n1 1\n",
            "%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n4\n",
            "%%MatrixMarket vector coordinate real general\n",
            "not a header\n",
            "%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1.0\n",
            "%%MatrixMarket matrix coordinate real general\n2 2 1\n0 1 1.0\n",
            "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1.0\n",
            "%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 abc\n",
            "%%MatrixMarket matrix coordinate real symmetric\n2 3 1\n1 1 1\n",
            "",
        ];
        for text in bad {
            assert!(parse(text).is_err(), "accepted: {text:?}");
        }
        let msg = parse(bad[0]).unwrap_err().to_string();
        assert!(msg.contains("pattern"), "{msg}");
    }

    #[test]
    fn round_trip_convection_diffusion() {
        let a = AnyCsr::Real(gen_convection_diffusion(16, 16, 10.0).unwrap());
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cd.mtx");
        write_matrix_market(&path, &a).unwrap();
        let back = read_matrix_market(&path).unwrap();
        assert_eq!(real(back), real(a));
    }

    #[test]
    fn vector_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("v.txt");
        let v: Vector<Complex64> =
            vec![Complex64::new(1.5, -2.0), Complex64::new(1e-300, 3.0)].into();
        write_vector(&path, &v).unwrap();
        assert_eq!(read_vector::<Complex64>(&path).unwrap(), v);
        assert!(read_vector::<f64>(&path).is_err());
        let r = read_vector_from::<f64, _>("# rhs\n1\n\n2.5\n".as_bytes(), "r.txt").unwrap();
        assert_eq!(r.as_slice(), &[1.0, 2.5]);
    }

    proptest! {
        #[test]
        fn write_read_is_exact(vals in prop::collection::vec(-1e6f64..1e6, 1..30), tiny in 1e-310f64..1e-200) {
            let n = vals.len();
            let mut trip: Vec<(usize, usize, f64)> = vals.iter().enumerate().map(|(k, &v)| (k, (k * 7) % n, v)).collect();
            trip.push((0, n - 1, tiny));
            let a = AnyCsr::Real(CsrMatrix::from_triplets(n, n, trip).unwrap());
            let mut buf = Vec::new();
            write_matrix_market_to(&mut buf, &a).unwrap();
            let back = read_matrix_market_from(buf.as_slice(), "mem").unwrap();
            prop_assert_eq!(real(back), real(a));
        }
    }
}
