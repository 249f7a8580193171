//! Dense complex matrix kernel: Hermitian eigendecomposition (cyclic Jacobi),
//! matrix exponential (scaling and squaring with a truncated Taylor kernel),
//! Kronecker products, and column-stacking vectorization.

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::numeric::POLICY;

/// Dense complex matrix in row-major order.
pub type CMatrix = Array2<C64>;

/// Taylor order of the expm kernel; at the scaled norm bound 0.5 the
/// truncation remainder is ~0.5^19/19! ≈ 1.6e-23.
const EXPM_TAYLOR_ORDER: usize = 18;
const EXPM_NORM_BOUND: f64 = 0.5;

pub fn identity(d: usize) -> CMatrix {
    Array2::eye(d).mapv(|x: f64| C64::new(x, 0.0))
}

pub fn zeros(rows: usize, cols: usize) -> CMatrix {
    Array2::zeros((rows, cols))
}

/// Conjugate transpose.
pub fn dagger(m: &CMatrix) -> CMatrix {
    m.t().mapv(|z| z.conj())
}

pub fn trace(m: &CMatrix) -> C64 {
    m.diag().sum()
}

pub fn frobenius_norm(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Maximum absolute column sum.
pub fn one_norm(m: &CMatrix) -> f64 {
    let mut best = 0.0f64;
    for col in m.columns() {
        let s: f64 = col.iter().map(|z| z.norm()).sum();
        best = best.max(s);
    }
    best
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0f64, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.dim(), b.dim());
    a.iter()
        .zip(b.iter())
        .fold(0.0f64, |acc, (x, y)| acc.max((x - y).norm()))
}

pub fn all_finite(m: &CMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Max entrywise |M - M^dag|.
pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            worst = worst.max((m[[i, j]] - m[[j, i]].conj()).norm());
        }
    }
    worst
}

pub fn require_square(m: &CMatrix) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    Ok(m.nrows())
}

/// Eigendecomposition of a Hermitian matrix with eigenvalues sorted
/// non-increasing and eigenvector columns in matching order.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: CMatrix,
}

impl EigenSystem {
    /// U diag(lambda) U^dag.
    pub fn reconstruct(&self) -> CMatrix {
        let d = self.eigenvalues.len();
        let mut scaled = self.eigenvectors.clone();
        for (j, lam) in self.eigenvalues.iter().enumerate() {
            for i in 0..d {
                scaled[[i, j]] *= *lam;
            }
        }
        scaled.dot(&dagger(&self.eigenvectors))
    }
}

fn off_diagonal_frobenius(m: &CMatrix) -> f64 {
    let d = m.nrows();
    let mut s = 0.0f64;
    for i in 0..d {
        for j in 0..d {
            if i != j {
                s += m[[i, j]].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
///
/// Convergence: off-diagonal Frobenius norm below `jacobi_rel * ||M||_F`.
/// Ties in the final sort are broken by the stable ordering of the sweep.
pub fn hermitian_eigh(m: &CMatrix) -> Result<EigenSystem> {
    let d = require_square(m)?;
    if !all_finite(m) {
        return Err(Error::NonFinite);
    }
    let defect = hermiticity_defect(m);
    if defect > POLICY.hermiticity {
        return Err(Error::NotHermitian { asymmetry: defect });
    }
    // Work on the exact Hermitian average so tolerance-level asymmetry
    // cannot leak into complex eigenvalues.
    let md = dagger(m);
    let mut a: CMatrix = m.mapv(|z| z * 0.5) + md.mapv(|z| z * 0.5);
    let mut v = identity(d);
    let norm = frobenius_norm(&a).max(f64::MIN_POSITIVE);
    let target = POLICY.jacobi_rel * norm;

    for _sweep in 0..60 {
        if off_diagonal_frobenius(&a) <= target {
            break;
        }
        for p in 0..d {
            for q in (p + 1)..d {
                let apq = a[[p, q]];
                let abs = apq.norm();
                if abs == 0.0 {
                    continue;
                }
                let phase = apq / abs;
                let alpha = a[[p, p]].re;
                let gamma = a[[q, q]].re;
                let tau = (gamma - alpha) / (2.0 * abs);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // Column update: A <- A U with U = [[c, s e^{i phi}],
                //                                   [-s e^{-i phi}, c]]
                for k in 0..d {
                    let akp = a[[k, p]];
                    let akq = a[[k, q]];
                    a[[k, p]] = akp * c - akq * s * phase.conj();
                    a[[k, q]] = akp * s * phase + akq * c;
                }
                // Row update: A <- U^dag A
                for k in 0..d {
                    let apk = a[[p, k]];
                    let aqk = a[[q, k]];
                    a[[p, k]] = apk * c - aqk * s * phase;
                    a[[q, k]] = apk * s * phase.conj() + aqk * c;
                }
                a[[p, q]] = C64::new(0.0, 0.0);
                a[[q, p]] = C64::new(0.0, 0.0);
                a[[p, p]] = C64::new(a[[p, p]].re, 0.0);
                a[[q, q]] = C64::new(a[[q, q]].re, 0.0);
                for k in 0..d {
                    let vkp = v[[k, p]];
                    let vkq = v[[k, q]];
                    v[[k, p]] = vkp * c - vkq * s * phase.conj();
                    v[[k, q]] = vkp * s * phase + vkq * c;
                }
            }
        }
    }

    let raw: Vec<f64> = (0..d).map(|i| a[[i, i]].re).collect();
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| raw[j].partial_cmp(&raw[i]).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| raw[i]).collect();
    let mut eigenvectors = zeros(d, d);
    for (newcol, &oldcol) in order.iter().enumerate() {
        for i in 0..d {
            eigenvectors[[i, newcol]] = v[[i, oldcol]];
        }
    }
    Ok(EigenSystem {
        eigenvalues,
        eigenvectors,
    })
}

/// Matrix exponential by scaling and squaring with a truncated Taylor kernel.
pub fn expm(m: &CMatrix) -> Result<CMatrix> {
    let d = require_square(m)?;
    if !all_finite(m) {
        return Err(Error::NonFinite);
    }
    let norm = one_norm(m);
    let squarings = if norm <= EXPM_NORM_BOUND {
        0
    } else {
        (norm / EXPM_NORM_BOUND).log2().ceil() as u32
    };
    let scale = 0.5f64.powi(squarings as i32);
    let a = m.mapv(|z| z * scale);
    let mut term = identity(d);
    let mut sum = identity(d);
    for k in 1..=EXPM_TAYLOR_ORDER {
        term = term.dot(&a).mapv(|z| z / k as f64);
        sum += &term;
    }
    let mut r = sum;
    for _ in 0..squarings {
        r = r.dot(&r);
    }
    Ok(r)
}

/// Kronecker product; dimensions multiply.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    ndarray::linalg::kron(a, b)
}

/// Column-stacking vectorization: vec(M)[j*d + i] = M[i, j].
pub fn vectorize(m: &CMatrix) -> Array1<C64> {
    Array1::from_iter(m.t().iter().cloned())
}

/// Inverse of [`vectorize`] for a d x d matrix.
pub fn unvectorize(v: &Array1<C64>, d: usize) -> CMatrix {
    Array2::from_shape_fn((d, d), |(i, j)| v[j * d + i])
}

/// Superoperator of rho -> A rho B under column-stacking: B^T (x) A.
pub fn sandwich_superop(a: &CMatrix, b: &CMatrix) -> CMatrix {
    kron(&b.t().to_owned(), a)
}
