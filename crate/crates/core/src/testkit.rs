//! Problem generators and brute-force oracles.
//!
//! Everything here is deterministic in its arguments (seeded ChaCha streams),
//! so the same [`ProblemSpec`] always yields a bitwise-identical matrix.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::operator::LinearOperator;
use crate::scalar::Scalar;
use crate::sparse::{AnyCsr, CsrMatrix};
use crate::vector::Vector;

/// Five-point Laplacian plus first-order upwind convection with velocity
/// `(peclet, peclet)` on the unit square, homogeneous Dirichlet boundary,
/// `nx * ny` interior unknowns ordered x-fastest.
///
/// Row-diagonally dominant; symmetric iff `peclet == 0`.
pub fn gen_convection_diffusion(nx: usize, ny: usize, peclet: f64) -> Result<CsrMatrix<f64>> {
    if nx < 2 || ny < 2 {
        return Err(Error::InvalidArgument(format!(
            "convection-diffusion grid must be at least 2x2 (got {nx}x{ny})"
        )));
    }
    if !(peclet >= 0.0 && peclet.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "peclet must be finite and >= 0 (got {peclet})"
        )));
    }
    let hx = 1.0 / (nx as f64 + 1.0);
    let hy = 1.0 / (ny as f64 + 1.0);
    let (dx, dy) = (1.0 / (hx * hx), 1.0 / (hy * hy));
    let (cx, cy) = (peclet / hx, peclet / hy);
    let idx = |i: usize, j: usize| j * nx + i;

    let mut trip = Vec::with_capacity(5 * nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            let row = idx(i, j);
            if j > 0 {
                trip.push((row, idx(i, j - 1), -dy - cy));
            }
            if i > 0 {
                trip.push((row, idx(i - 1, j), -dx - cx));
            }
            trip.push((row, row, 2.0 * dx + 2.0 * dy + cx + cy));
            if i + 1 < nx {
                trip.push((row, idx(i + 1, j), -dx));
            }
            if j + 1 < ny {
                trip.push((row, idx(i, j + 1), -dy));
            }
        }
    }
    CsrMatrix::from_triplets(nx * ny, nx * ny, trip)
}

/// Dense unsymmetric `2 I + R / sqrt(n)` with `R` uniform on `[-1, 1]`;
/// eigenvalues cluster in a disc of radius ~0.6 around 2.
pub fn random_well_conditioned(n: usize, seed: u64) -> CsrMatrix<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = 1.0 / (n as f64).sqrt();
    let mut trip = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut v = rng.gen_range(-1.0..1.0) * scale;
            if i == j {
                v += 2.0;
            }
            trip.push((i, j, v));
        }
    }
    CsrMatrix::from_triplets(n, n, trip).expect("in bounds")
}

pub fn random_vector<S: Scalar, R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vector<S> {
    (0..n)
        .map(|_| S::from_parts(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

pub fn random_complex_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vector<Complex64> {
    random_vector(n, rng)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarField {
    Real,
    Complex,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ProblemFamily {
    ConvectionDiffusion2D {
        nx: usize,
        ny: usize,
        peclet: f64,
    },
    DiagonalSpectrum(Vec<f64>),
    RandomWellConditioned {
        n: usize,
        seed: u64,
    },
    /// `base + shift * I`, always complex.
    ComplexShifted {
        base: Box<ProblemFamily>,
        shift: Complex64,
    },
}

/// A generated test system.
#[derive(Clone, Debug, PartialEq)]
pub struct ProblemSpec {
    pub family: ProblemFamily,
    pub field: ScalarField,
}

impl ProblemSpec {
    pub fn real(family: ProblemFamily) -> Self {
        let field = match family {
            ProblemFamily::ComplexShifted { .. } => ScalarField::Complex,
            _ => ScalarField::Real,
        };
        ProblemSpec { family, field }
    }

    pub fn build(&self) -> Result<AnyCsr> {
        let m = build_family(&self.family)?;
        Ok(match (self.field, m) {
            (ScalarField::Real, AnyCsr::Complex(_)) => {
                return Err(Error::InvalidArgument(
                    "complex-shifted family cannot be generated in the real field".into(),
                ))
            }
            (ScalarField::Complex, AnyCsr::Real(a)) => AnyCsr::Complex(a.to_complex()),
            (_, m) => m,
        })
    }
}

fn build_family(family: &ProblemFamily) -> Result<AnyCsr> {
    Ok(match family {
        ProblemFamily::ConvectionDiffusion2D { nx, ny, peclet } => {
            AnyCsr::Real(gen_convection_diffusion(*nx, *ny, *peclet)?)
        }
        ProblemFamily::DiagonalSpectrum(eigs) => {
            if eigs.is_empty() {
                return Err(Error::InvalidArgument("empty diagonal spectrum".into()));
            }
            if eigs.contains(&0.0) {
                return Err(Error::InvalidArgument(
                    "diagonal spectrum contains 0".into(),
                ));
            }
            AnyCsr::Real(CsrMatrix::from_diagonal(eigs))
        }
        ProblemFamily::RandomWellConditioned { n, seed } => {
            if *n == 0 {
                return Err(Error::InvalidArgument("random matrix needs n >= 1".into()));
            }
            AnyCsr::Real(random_well_conditioned(*n, *seed))
        }
        ProblemFamily::ComplexShifted { base, shift } => {
            let c = match build_family(base)? {
                AnyCsr::Real(a) => a.to_complex(),
                AnyCsr::Complex(a) => a,
            };
            AnyCsr::Complex(c.shift_diagonal(*shift)?)
        }
    })
}

fn parse_list<T: FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad {what} parameter '{t}'")))
        })
        .collect()
}

impl FromStr for ProblemFamily {
    type Err = Error;

    /// `convdiff:NX,NY,PECLET`, `diag:E1,E2,...`, `random:N,SEED`,
    /// `shifted:RE,IM:<base>`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, rest) = s.split_once(':').ok_or_else(|| {
            Error::InvalidArgument(format!("expected <family>:<params>, got '{s}'"))
        })?;
        match name {
            "convdiff" => {
                let p: Vec<f64> = parse_list(rest, "convdiff")?;
                if p.len() != 3
                    || p[0].fract() != 0.0
                    || p[1].fract() != 0.0
                    || p[0] < 0.0
                    || p[1] < 0.0
                {
                    return Err(Error::InvalidArgument("convdiff takes NX,NY,PECLET".into()));
                }
                Ok(ProblemFamily::ConvectionDiffusion2D {
                    nx: p[0] as usize,
                    ny: p[1] as usize,
                    peclet: p[2],
                })
            }
            "diag" => Ok(ProblemFamily::DiagonalSpectrum(parse_list(rest, "diag")?)),
            "random" => {
                let p: Vec<u64> = parse_list(rest, "random")?;
                if p.len() != 2 {
                    return Err(Error::InvalidArgument("random takes N,SEED".into()));
                }
                Ok(ProblemFamily::RandomWellConditioned {
                    n: p[0] as usize,
                    seed: p[1],
                })
            }
            "shifted" => {
                let (shift, base) = rest.split_once(':').ok_or_else(|| {
                    Error::InvalidArgument("shifted takes RE,IM:<base family>".into())
                })?;
                let p: Vec<f64> = parse_list(shift, "shift")?;
                if p.len() != 2 {
                    return Err(Error::InvalidArgument("shift takes RE,IM".into()));
                }
                Ok(ProblemFamily::ComplexShifted {
                    base: Box::new(base.parse()?),
                    shift: Complex64::new(p[0], p[1]),
                })
            }
            other => Err(Error::InvalidArgument(format!(
                "unknown matrix family '{other}' (expected convdiff, diag, random or shifted)"
            ))),
        }
    }
}

impl fmt::Display for ProblemFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProblemFamily::ConvectionDiffusion2D { nx, ny, peclet } => {
                write!(f, "convdiff:{nx},{ny},{peclet}")
            }
            ProblemFamily::DiagonalSpectrum(e) => {
                let parts: Vec<String> = e.iter().map(f64::to_string).collect();
                write!(f, "diag:{}", parts.join(","))
            }
            ProblemFamily::RandomWellConditioned { n, seed } => write!(f, "random:{n},{seed}"),
            ProblemFamily::ComplexShifted { base, shift } => {
                write!(f, "shifted:{},{}:{base}", shift.re, shift.im)
            }
        }
    }
}

/// Orthonormalized monomial Krylov basis.
#[derive(Clone, Debug)]
pub struct KrylovBasis<S> {
    /// `n x rank`, orthonormal columns.
    pub basis: DenseMatrix<S>,
    pub rank: usize,
}

/// Orthonormal basis of `span{v, A v, ..., A^{k-1} v}` by modified
/// Gram-Schmidt on successive powers; dependent directions are dropped and
/// reflected in `rank`.
pub fn brute_force_krylov<S: Scalar, O: LinearOperator<S> + ?Sized>(
    op: &O,
    v: &Vector<S>,
    k: usize,
) -> KrylovBasis<S> {
    let n = v.len();
    let mut q: Vec<Vector<S>> = Vec::new();
    let mut power = v.clone();
    for i in 0..k.min(n) {
        if i > 0 {
            power = op.apply(&power);
        }
        let pn = power.norm2();
        if pn == 0.0 {
            break;
        }
        power.scale(S::from_real(1.0 / pn));
        let mut u = power.clone();
        for _ in 0..2 {
            for qi in &q {
                let c = qi.dot(&u);
                u.axpy(-c, qi);
            }
        }
        let un = u.norm2();
        if un > 1e-10 {
            u.scale(S::from_real(1.0 / un));
            q.push(u);
        }
    }
    let rank = q.len();
    KrylovBasis {
        basis: DenseMatrix::from_columns(n, &q).expect("consistent lengths"),
        rank,
    }
}

fn orthonormalize<S: Scalar>(cols: &[Vector<S>]) -> Vec<Vector<S>> {
    let mut q: Vec<Vector<S>> = Vec::new();
    for c in cols {
        let mut u = c.clone();
        for _ in 0..2 {
            for qi in &q {
                let d = qi.dot(&u);
                u.axpy(-d, qi);
            }
        }
        let un = u.norm2();
        if un > 1e-12 * c.norm2() && un > 0.0 {
            u.scale(S::from_real(1.0 / un));
            q.push(u);
        }
    }
    q
}

/// Upper bound on the sine of the largest principal angle between
/// `span(a)` and `span(b)`: the Frobenius norm of `(I - Q_b Q_b^H) Q_a`.
pub fn subspace_gap<S: Scalar>(a: &[Vector<S>], b: &[Vector<S>]) -> f64 {
    let qa = orthonormalize(a);
    let qb = orthonormalize(b);
    if qa.len() != qb.len() {
        return 1.0;
    }
    qa.iter()
        .map(|u| {
            let mut r = u.clone();
            for _ in 0..2 {
                for q in &qb {
                    let c = q.dot(&r);
                    r.axpy(-c, q);
                }
            }
            r.norm2().powi(2)
        })
        .sum::<f64>()
        .sqrt()
}
