//! Density matrices, Hamiltonians, spectra, passive rearrangement, Ky Fan
//! partial sums, and energy / entropy functionals.

use ndarray::Array2;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::numeric::POLICY;

/// Diagonal Hamiltonian given by its energy levels in the fixed eigenbasis.
///
/// Strict (default) construction requires strictly increasing energies;
/// the degenerate-allowed constructor relaxes this to non-decreasing.
#[derive(Debug, Clone, PartialEq)]
pub struct Hamiltonian {
    energies: Vec<f64>,
    degenerate_allowed: bool,
}

impl Hamiltonian {
    pub fn new(energies: Vec<f64>) -> Result<Self> {
        for (i, w) in energies.windows(2).enumerate() {
            if w[1] <= w[0] {
                return Err(Error::DegenerateHamiltonian { index: i });
            }
        }
        Ok(Hamiltonian {
            energies,
            degenerate_allowed: false,
        })
    }

    pub fn new_degenerate(energies: Vec<f64>) -> Result<Self> {
        for (i, w) in energies.windows(2).enumerate() {
            if w[1] < w[0] {
                return Err(Error::InvalidState(format!(
                    "energies must be non-decreasing, violated at index {i}"
                )));
            }
        }
        Ok(Hamiltonian {
            energies,
            degenerate_allowed: true,
        })
    }

    /// Equally spaced ladder 0, 1, ..., d-1.
    pub fn ladder(d: usize) -> Self {
        Hamiltonian {
            energies: (0..d).map(|i| i as f64).collect(),
            degenerate_allowed: false,
        }
    }

    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn is_degenerate(&self) -> bool {
        self.energies.windows(2).any(|w| w[0] == w[1])
    }

    pub fn matrix(&self) -> CMatrix {
        Array2::from_shape_fn((self.dim(), self.dim()), |(i, j)| {
            if i == j {
                C64::new(self.energies[i], 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }
}

/// Positive semidefinite unit-trace complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
}

impl DensityMatrix {
    /// Validates hermiticity, unit trace, and positivity (within tolerances).
    pub fn try_new(matrix: CMatrix) -> Result<Self> {
        let _d = linalg::require_square(&matrix)?;
        let defect = linalg::hermiticity_defect(&matrix);
        if defect > POLICY.hermiticity {
            return Err(Error::InvalidState(format!(
                "not Hermitian: defect {defect:.3e}"
            )));
        }
        let tr = linalg::trace(&matrix);
        if (tr.re - 1.0).abs() > POLICY.trace || tr.im.abs() > POLICY.trace {
            return Err(Error::InvalidState(format!("trace = {tr} != 1")));
        }
        let eig = linalg::hermitian_eigh(&matrix)?;
        let min = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
        if min < -POLICY.eigenvalue_clip {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {min:.3e}"
            )));
        }
        Ok(DensityMatrix { matrix })
    }

    /// Diagonal state from populations given in the energy-basis index order.
    pub fn from_diagonal(populations: &[f64]) -> Result<Self> {
        let d = populations.len();
        let m = Array2::from_shape_fn((d, d), |(i, j)| {
            if i == j {
                C64::new(populations[i], 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        Self::try_new(m)
    }

    /// |psi><psi| from a (not necessarily normalized) state vector.
    pub fn pure(amplitudes: &[C64]) -> Result<Self> {
        let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if norm_sqr <= 0.0 {
            return Err(Error::InvalidState("zero state vector".into()));
        }
        let d = amplitudes.len();
        let m = Array2::from_shape_fn((d, d), |(i, j)| {
            amplitudes[i] * amplitudes[j].conj() / norm_sqr
        });
        Self::try_new(m)
    }

    pub fn maximally_mixed(d: usize) -> Self {
        let m = linalg::identity(d).mapv(|z| z / d as f64);
        DensityMatrix { matrix: m }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn diagonal(&self) -> Vec<f64> {
        self.matrix.diag().iter().map(|z| z.re).collect()
    }

    /// Largest off-diagonal magnitude; zero for states diagonal in the
    /// energy basis.
    pub fn off_diagonal_max(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                if i != j {
                    worst = worst.max(self.matrix[[i, j]].norm());
                }
            }
        }
        worst
    }
}

/// Probability vector sorted non-increasing.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Spectrum {
    probs: Vec<f64>,
}

impl Spectrum {
    pub fn try_new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidState("empty spectrum".into()));
        }
        for w in probs.windows(2) {
            if w[1] > w[0] {
                return Err(Error::InvalidState("spectrum not sorted".into()));
            }
        }
        for &p in &probs {
            if !(-POLICY.tie..=1.0 + POLICY.tie).contains(&p) {
                return Err(Error::InvalidState(format!("entry {p} outside [0,1]")));
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > POLICY.trace {
            return Err(Error::InvalidState(format!("sum = {sum} != 1")));
        }
        Ok(Spectrum { probs })
    }

    /// Sorts and validates.
    pub fn from_unsorted(mut probs: Vec<f64>) -> Result<Self> {
        probs.sort_by(|a, b| b.partial_cmp(a).unwrap());
        Self::try_new(probs)
    }

    pub fn uniform(d: usize) -> Self {
        Spectrum {
            probs: vec![1.0 / d as f64; d],
        }
    }

    pub fn dim(&self) -> usize {
        self.probs.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.probs
    }

    /// Partial sum of the n largest entries; n = 0 gives 0.
    pub fn partial_sum(&self, n: usize) -> f64 {
        self.probs.iter().take(n).sum()
    }
}

/// Sorted eigenvalues of a density matrix, clipped to [0, 1].
pub fn spectrum_of(rho: &DensityMatrix) -> Result<Spectrum> {
    let eig = linalg::hermitian_eigh(rho.matrix())?;
    let mut probs = eig.eigenvalues;
    for p in probs.iter_mut() {
        if *p < -POLICY.eigenvalue_clip || *p > 1.0 + POLICY.eigenvalue_clip {
            return Err(Error::InvalidState(format!(
                "eigenvalue {p} outside [0,1] beyond tolerance"
            )));
        }
        *p = p.clamp(0.0, 1.0);
    }
    let sum: f64 = probs.iter().sum();
    if (sum - 1.0).abs() > POLICY.trace {
        return Err(Error::InvalidState(format!("eigenvalue sum {sum} != 1")));
    }
    for p in probs.iter_mut() {
        *p /= sum;
    }
    Spectrum::try_new(probs)
}

/// The passive state with the same spectrum as `rho`: populations sorted
/// non-increasing along the energy eigenbasis.
///
/// For a degenerate-allowed Hamiltonian, the rearrangement is accepted only
/// when every block of equal-energy levels receives equal populations
/// (within the tie tolerance); otherwise the assignment would depend on an
/// arbitrary ordering inside the block and `AmbiguousRearrangement` is
/// returned. Callers that do want a specific in-block ordering can use
/// [`passive_rearrangement_indexed`], which treats the index order of the
/// Hamiltonian levels as authoritative.
pub fn passive_rearrangement(rho: &DensityMatrix, h: &Hamiltonian) -> Result<DensityMatrix> {
    if rho.dim() != h.dim() {
        return Err(Error::DimMismatch {
            left: rho.dim(),
            right: h.dim(),
        });
    }
    if h.is_degenerate() && !h.degenerate_allowed {
        let idx = h
            .energies
            .windows(2)
            .position(|w| w[0] == w[1])
            .unwrap_or(0);
        return Err(Error::DegenerateHamiltonian { index: idx });
    }
    let spectrum = spectrum_of(rho)?;
    if h.is_degenerate() {
        let p = spectrum.as_slice();
        let mut i = 0;
        while i < h.dim() {
            let mut j = i + 1;
            while j < h.dim() && h.energies[j] == h.energies[i] {
                j += 1;
            }
            for k in i..j {
                if (p[k] - p[i]).abs() > POLICY.tie {
                    return Err(Error::AmbiguousRearrangement);
                }
            }
            i = j;
        }
    }
    DensityMatrix::from_diagonal(spectrum.as_slice())
}

/// Passive rearrangement that takes the Hamiltonian's level index order as
/// the caller's explicit ordering inside degenerate blocks.
pub fn passive_rearrangement_indexed(
    rho: &DensityMatrix,
    h: &Hamiltonian,
) -> Result<DensityMatrix> {
    if rho.dim() != h.dim() {
        return Err(Error::DimMismatch {
            left: rho.dim(),
            right: h.dim(),
        });
    }
    let spectrum = spectrum_of(rho)?;
    DensityMatrix::from_diagonal(spectrum.as_slice())
}

/// Sum of the n largest eigenvalues of a Hermitian matrix.
pub fn ky_fan_sum(x: &CMatrix, n: usize) -> Result<f64> {
    let d = linalg::require_square(x)?;
    if n < 1 || n > d {
        return Err(Error::RangeError(format!("n = {n} not in 1..={d}")));
    }
    let eig = linalg::hermitian_eigh(x)?;
    Ok(eig.eigenvalues.iter().take(n).sum())
}

/// Tr[H rho].
pub fn average_energy(rho: &DensityMatrix, h: &Hamiltonian) -> Result<f64> {
    if rho.dim() != h.dim() {
        return Err(Error::DimMismatch {
            left: rho.dim(),
            right: h.dim(),
        });
    }
    Ok(rho
        .diagonal()
        .iter()
        .zip(h.energies())
        .map(|(p, e)| p * e)
        .sum())
}

/// Entropy-like functional evaluated on the spectrum of a state.
pub enum EntropyFunctional<'a> {
    VonNeumann,
    /// Renyi entropy of order p > 0, p != 1.
    Renyi(f64),
    /// Tr f(rho) = sum_i f(p_i) for a caller-supplied f convex on [0, 1].
    TrF(&'a dyn Fn(f64) -> f64),
}

pub fn entropy(rho: &DensityMatrix, functional: &EntropyFunctional) -> Result<f64> {
    entropy_of_spectrum(&spectrum_of(rho)?, functional)
}

pub fn entropy_of_spectrum(spec: &Spectrum, functional: &EntropyFunctional) -> Result<f64> {
    let p = spec.as_slice();
    match functional {
        EntropyFunctional::VonNeumann => {
            // 0 ln 0 = 0
            Ok(-p
                .iter()
                .filter(|&&x| x > 0.0)
                .map(|&x| x * x.ln())
                .sum::<f64>())
        }
        EntropyFunctional::Renyi(order) => {
            if *order <= 0.0 || *order == 1.0 {
                return Err(Error::InvalidOrder(*order));
            }
            let s: f64 = p.iter().map(|&x| x.powf(*order)).sum();
            Ok(s.ln() / (1.0 - order))
        }
        EntropyFunctional::TrF(f) => Ok(p.iter().map(|&x| f(x)).sum()),
    }
}
