//! Executable counterexamples: the two-mode bosonic attenuator with its
//! degenerate Hamiltonian, the two-qubit lossy channel under two Hamiltonian
//! choices, and the finite-temperature qubit whose optimal input is a
//! coherent superposition. Each comes with closed-form oracles that the
//! numeric engine is checked against.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::lindblad::RawLindbladGenerator;
use crate::majorization::{compare, MajorizationVerdict};
use crate::states::{spectrum_of, DensityMatrix, Spectrum};

fn cr(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn check_time(t: f64) -> Result<()> {
    if t < 0.0 || !t.is_finite() {
        return Err(Error::NegativeTime(t));
    }
    Ok(())
}

/// Populations are passive when they are non-increasing along the
/// energy-sorted basis (within `tol`).
pub fn is_passive_populations(p: &[f64], tol: f64) -> bool {
    p.windows(2).all(|w| w[0] >= w[1] - tol)
}

/// Powers `base^k` for each requested exponent, by binary exponentiation
/// with shared repeated squares. Used to assemble channel matrices at many
/// times from a single short-time step.
pub fn matrix_powers(base: &CMatrix, exponents: &[u64]) -> Vec<CMatrix> {
    let d = base.nrows();
    let max = exponents.iter().copied().max().unwrap_or(0);
    let mut squares = vec![base.clone()];
    while (1u64 << squares.len()) <= max {
        let last = squares.last().unwrap();
        squares.push(last.dot(last));
    }
    exponents
        .iter()
        .map(|&e| {
            let mut acc = linalg::identity(d);
            for (bit, sq) in squares.iter().enumerate() {
                if e >> bit & 1 == 1 {
                    acc = acc.dot(sq);
                }
            }
            acc
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Two-mode attenuator
// ---------------------------------------------------------------------------

/// Closed-form attenuator quantities: the 3-sums and the largest eigenvalues
/// of the two evolved states.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AttenuatorClosedForms {
    pub s3: f64,
    pub s3_tilde: f64,
    pub p1: f64,
    pub p1_tilde: f64,
}

pub fn attenuator_closed_forms(t: f64) -> Result<AttenuatorClosedForms> {
    check_time(t)?;
    let eta = (-t).exp();
    Ok(AttenuatorClosedForms {
        s3: 1.0 - eta * eta / 2.0,
        s3_tilde: 1.0 - eta.powi(3) * (5.0 - 6.0 * eta + 2.0 * eta * eta) / 2.0,
        p1: (6.0 - 8.0 * eta + 3.0 * eta * eta) / 6.0,
        p1_tilde: (2.0 - eta) * (3.0 - 3.0 * eta + eta * eta) * (1.0 - eta + eta * eta) / 6.0,
    })
}

/// Bisection root of s3(t) - s3_tilde(t); the crossing past which the
/// passive input stops dominating the 3-sum.
pub fn attenuator_crossing(mut lo: f64, mut hi: f64, tol: f64) -> Result<f64> {
    let gap = |t: f64| -> Result<f64> {
        let f = attenuator_closed_forms(t)?;
        Ok(f.s3 - f.s3_tilde)
    };
    let (glo, ghi) = (gap(lo)?, gap(hi)?);
    if glo * ghi > 0.0 {
        return Err(Error::RangeError(format!(
            "no sign change on [{lo}, {hi}]"
        )));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if gap(mid)? * glo > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Two-mode attenuator on a Fock space truncated at `cutoff` per mode, with
/// loss operators acting independently on each mode.
pub struct AttenuatorSetup {
    cutoff: usize,
    raw: RawLindbladGenerator,
}

/// Single-mode annihilation operator on the first `cutoff + 1` Fock levels.
pub fn annihilation(cutoff: usize) -> CMatrix {
    let d = cutoff + 1;
    let mut a = linalg::zeros(d, d);
    for i in 1..d {
        a[[i - 1, i]] = cr((i as f64).sqrt());
    }
    a
}

impl AttenuatorSetup {
    /// The initial state sigma occupies levels up to 5, so the cutoff must
    /// be at least 5.
    pub fn new(cutoff: usize) -> Result<Self> {
        if cutoff < 5 {
            return Err(Error::CutoffTooSmall(cutoff));
        }
        let d = cutoff + 1;
        let a = annihilation(cutoff);
        let eye = linalg::identity(d);
        let mut h2 = linalg::zeros(d * d, d * d);
        for i in 0..d {
            for j in 0..d {
                h2[[i * d + j, i * d + j]] = cr((i + j) as f64);
            }
        }
        let raw = RawLindbladGenerator::new(
            h2,
            vec![linalg::kron(&a, &eye), linalg::kron(&eye, &a)],
        )?;
        Ok(AttenuatorSetup { cutoff, raw })
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn dim(&self) -> usize {
        (self.cutoff + 1) * (self.cutoff + 1)
    }

    pub fn raw(&self) -> &RawLindbladGenerator {
        &self.raw
    }

    fn basis_index(&self, i: usize, j: usize) -> usize {
        i * (self.cutoff + 1) + j
    }

    /// Passive initial state: uniform over the six levels with i + j <= 2.
    pub fn rho_hat(&self) -> DensityMatrix {
        let mut diag = vec![0.0; self.dim()];
        for i in 0..=2usize {
            for j in 0..=(2 - i) {
                diag[self.basis_index(i, j)] = 1.0 / 6.0;
            }
        }
        DensityMatrix::from_diagonal(&diag).unwrap()
    }

    /// Non-passive comparison state with the same spectrum: uniform over
    /// the levels |0, i> for i <= 5.
    pub fn sigma_hat(&self) -> DensityMatrix {
        let mut diag = vec![0.0; self.dim()];
        for j in 0..=5usize {
            diag[self.basis_index(0, j)] = 1.0 / 6.0;
        }
        DensityMatrix::from_diagonal(&diag).unwrap()
    }

    /// Average energy under the two-mode number Hamiltonian.
    pub fn average_energy(&self, rho: &DensityMatrix) -> f64 {
        let d = self.cutoff + 1;
        let mut e = 0.0;
        for i in 0..d {
            for j in 0..d {
                let k = self.basis_index(i, j);
                e += (i + j) as f64 * rho.matrix()[[k, k]].re;
            }
        }
        e
    }

    /// Channel matrices at times `dt * steps[k]`, built from a single
    /// short-time exponential and shared repeated squaring. This keeps the
    /// 1296-dimensional superoperator affordable across a whole time grid.
    pub fn channels_at(&self, dt: f64, steps: &[u64]) -> Result<Vec<CMatrix>> {
        check_time(dt)?;
        let base = self.raw.channel_superoperator(dt)?;
        Ok(matrix_powers(&base, steps))
    }

    /// Direct single-time channel; prefer [`Self::channels_at`] for grids.
    pub fn numeric(&self, t: f64) -> Result<AttenuatorNumeric> {
        let channel = self.raw.channel_superoperator(t)?;
        self.numeric_from_channel(&channel)
    }

    /// Evolves both initial states through a precomputed channel and
    /// extracts the named quantities plus the majorization verdict.
    pub fn numeric_from_channel(&self, channel: &CMatrix) -> Result<AttenuatorNumeric> {
        let rho_t = crate::lindblad::apply_channel(channel, &self.rho_hat())?;
        let sigma_t = crate::lindblad::apply_channel(channel, &self.sigma_hat())?;
        let spectrum = spectrum_of(&rho_t)?;
        let spectrum_tilde = spectrum_of(&sigma_t)?;
        let verdict = compare(&spectrum, &spectrum_tilde, 1e-10)?;
        Ok(AttenuatorNumeric {
            s3: spectrum.partial_sum(3),
            s3_tilde: spectrum_tilde.partial_sum(3),
            p1: spectrum.as_slice()[0],
            p1_tilde: spectrum_tilde.as_slice()[0],
            spectrum,
            spectrum_tilde,
            verdict,
        })
    }
}

/// Numeric attenuator record: spectra of the two evolved states, the named
/// partial sums, and their majorization verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttenuatorNumeric {
    pub s3: f64,
    pub s3_tilde: f64,
    pub p1: f64,
    pub p1_tilde: f64,
    pub spectrum: Spectrum,
    pub spectrum_tilde: Spectrum,
    pub verdict: MajorizationVerdict,
}

// ---------------------------------------------------------------------------
// Two-qubit lossy channel
// ---------------------------------------------------------------------------

/// The two Hamiltonian choices for the two-qubit channel. The generator,
/// and therefore the populations, are identical in both cases; only the
/// energy labeling differs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TwoQubitVariant {
    /// E2 < E1: non-degenerate levels, but one jump spans two energy steps.
    MultiJump,
    /// E1 = E2: single-step jumps only, but the middle levels are degenerate.
    Degenerate,
}

/// Populations of the three benchmark outputs in the basis order
/// (|0,0>, |0,1>, |1,0>, |1,1>): the evolved maximally mixed state and the
/// evolved rank-3 pair with equal spectra.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoQubitPopulations {
    pub p0: [f64; 4],
    pub p1: [f64; 4],
    pub p2: [f64; 4],
}

pub fn two_qubit_closed_forms(t: f64) -> Result<TwoQubitPopulations> {
    check_time(t)?;
    let e1 = (-t).exp();
    let e2 = (-2.0 * t).exp();
    Ok(TwoQubitPopulations {
        p0: [
            1.0 - e1 + e2 / 4.0,
            e1 * (3.0 - 2.0 * e1) / 4.0,
            e1 / 4.0,
            e2 / 4.0,
        ],
        p1: [1.0 - 2.0 * e1 / 3.0, e1 / 3.0, e1 / 3.0, 0.0],
        p2: [
            1.0 - e1 + e2 / 3.0,
            e1 * (1.0 - 2.0 * e1 / 3.0),
            0.0,
            e2 / 3.0,
        ],
    })
}

/// Energies (E1, E2) for each variant, matching the convention
/// 0 < E2 <= E1.
pub fn two_qubit_energies(variant: TwoQubitVariant) -> (f64, f64) {
    match variant {
        TwoQubitVariant::MultiJump => (2.0, 1.0),
        TwoQubitVariant::Degenerate => (1.0, 1.0),
    }
}

/// The raw generator with jump operators |0,0><1,0| and
/// |0,0><0,1| + sqrt(2) |0,1><1,1|. Under MultiJump energies this lies
/// outside the validated single-jump class by design.
pub fn two_qubit_generator(variant: TwoQubitVariant) -> RawLindbladGenerator {
    let (energy_1, energy_2) = two_qubit_energies(variant);
    let mut h = linalg::zeros(4, 4);
    h[[1, 1]] = cr(energy_2);
    h[[2, 2]] = cr(energy_1);
    h[[3, 3]] = cr(energy_1 + energy_2);
    let mut l1 = linalg::zeros(4, 4);
    l1[[0, 2]] = cr(1.0);
    let mut l2 = linalg::zeros(4, 4);
    l2[[0, 1]] = cr(1.0);
    l2[[1, 3]] = cr(2.0f64.sqrt());
    RawLindbladGenerator::new(h, vec![l1, l2]).unwrap()
}

/// The three benchmark initial states in basis order (00, 01, 10, 11).
pub fn two_qubit_initial_states() -> (DensityMatrix, DensityMatrix, DensityMatrix) {
    let third = 1.0 / 3.0;
    (
        DensityMatrix::maximally_mixed(4),
        DensityMatrix::from_diagonal(&[third, third, third, 0.0]).unwrap(),
        DensityMatrix::from_diagonal(&[third, third, 0.0, third]).unwrap(),
    )
}

/// Numeric populations via the raw evolution path.
pub fn two_qubit_numeric(t: f64, variant: TwoQubitVariant) -> Result<TwoQubitPopulations> {
    check_time(t)?;
    let raw = two_qubit_generator(variant);
    let (r0, r1, r2) = two_qubit_initial_states();
    let pop = |rho: &DensityMatrix| -> Result<[f64; 4]> {
        let d = raw.evolve(rho, t)?.diagonal();
        Ok([d[0], d[1], d[2], d[3]])
    };
    Ok(TwoQubitPopulations {
        p0: pop(&r0)?,
        p1: pop(&r1)?,
        p2: pop(&r2)?,
    })
}

/// Majorization verdict between the evolved rank-3 pair, from the closed
/// forms. Incomparable for every t > 0: the 1-sums and 2-sums disagree in
/// sign.
pub fn two_qubit_verdict(t: f64) -> Result<MajorizationVerdict> {
    let pops = two_qubit_closed_forms(t)?;
    let spec1 = Spectrum::from_unsorted(pops.p1.to_vec())?;
    let spec2 = Spectrum::from_unsorted(pops.p2.to_vec())?;
    compare(&spec1, &spec2, 1e-10)
}

// ---------------------------------------------------------------------------
// Finite-temperature qubit
// ---------------------------------------------------------------------------

/// Bloch vector inside the unit ball.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochState {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochState {
    pub fn try_new(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm2 = x * x + y * y + z * z;
        if !norm2.is_finite() || norm2 > 1.0 + 1e-12 {
            return Err(Error::RangeError(format!(
                "Bloch vector norm^2 = {norm2} exceeds 1"
            )));
        }
        Ok(BlochState { x, y, z })
    }

    pub fn purity(&self) -> f64 {
        (1.0 + self.x * self.x + self.y * self.y + self.z * self.z) / 2.0
    }
}

/// Quantum optical master equation parameters: coupling gamma_0, mean bath
/// occupation N, level splitting E_0. Derived decay rate and fixed point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FiniteTempParams {
    pub gamma0: f64,
    pub n_bath: f64,
    pub e0: f64,
}

impl FiniteTempParams {
    pub fn try_new(gamma0: f64, n_bath: f64, e0: f64) -> Result<Self> {
        if !(gamma0 > 0.0 && n_bath > 0.0 && e0 > 0.0) {
            return Err(Error::RangeError(format!(
                "need gamma0, N, E0 > 0, got ({gamma0}, {n_bath}, {e0})"
            )));
        }
        Ok(FiniteTempParams { gamma0, n_bath, e0 })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma0 * (2.0 * self.n_bath + 1.0)
    }

    /// Asymptotic z component; always in (-1, 0) for N > 0.
    pub fn z_inf(&self) -> f64 {
        -1.0 / (2.0 * self.n_bath + 1.0)
    }

    /// Inverse bath temperature from z_inf = -tanh(beta E0 / 2).
    pub fn beta(&self) -> f64 {
        2.0 * (-self.z_inf()).atanh() / self.e0
    }
}

/// Closed-form Bloch evolution: transverse decay at rate gamma/2,
/// longitudinal relaxation toward z_inf at rate gamma.
pub fn bloch_evolve(params: &FiniteTempParams, b0: &BlochState, t: f64) -> Result<BlochState> {
    check_time(t)?;
    let g = params.gamma();
    let half = (-0.5 * g * t).exp();
    let full = (-g * t).exp();
    let z_inf = params.z_inf();
    Ok(BlochState {
        x: half * b0.x,
        y: half * b0.y,
        z: z_inf + full * (b0.z - z_inf),
    })
}

/// Purity of the evolved state directly from the initial Bloch vector.
pub fn evolved_purity(params: &FiniteTempParams, b0: &BlochState, t: f64) -> Result<f64> {
    check_time(t)?;
    let g = params.gamma();
    let full = (-g * t).exp();
    let z_inf = params.z_inf();
    let r2 = b0.x * b0.x + b0.y * b0.y + b0.z * b0.z;
    let dz = b0.z - z_inf;
    Ok((1.0 + full * r2) / 2.0 + (1.0 - full) / 2.0 * (z_inf * z_inf - full * dz * dz))
}

/// The purity-optimal input: a pure coherent superposition with the same
/// average energy as the fixed point (phase convention x > 0, y = 0).
pub fn optimal_coherent_state(params: &FiniteTempParams) -> BlochState {
    let z_inf = params.z_inf();
    BlochState {
        x: (1.0 - z_inf * z_inf).sqrt(),
        y: 0.0,
        z: z_inf,
    }
}

/// Closed-form purity trajectory of the optimal input.
pub fn optimal_purity(params: &FiniteTempParams, t: f64) -> Result<f64> {
    check_time(t)?;
    let full = (-params.gamma() * t).exp();
    let z2 = params.z_inf() * params.z_inf();
    Ok((1.0 + full + (1.0 - full) * z2) / 2.0)
}

/// Density matrix in the basis (|1>, |0>) where the Pauli matrices take
/// their standard form and the Hamiltonian is (E0/2) sigma_z.
pub fn bloch_to_density(b: &BlochState) -> Result<DensityMatrix> {
    let m = ndarray::array![
        [cr((1.0 + b.z) / 2.0), C64::new(b.x, -b.y) * 0.5],
        [C64::new(b.x, b.y) * 0.5, cr((1.0 - b.z) / 2.0)],
    ];
    DensityMatrix::try_new(m)
}

pub fn density_to_bloch(rho: &DensityMatrix) -> BlochState {
    let m = rho.matrix();
    BlochState {
        x: 2.0 * m[[1, 0]].re,
        y: 2.0 * m[[1, 0]].im,
        z: m[[0, 0]].re - m[[1, 1]].re,
    }
}

/// The raw generator of the quantum optical master equation, in the same
/// (|1>, |0>) basis: lowering at rate gamma_0 (N + 1), raising at rate
/// gamma_0 N. The dissipator alone drives the Bloch dynamics; the
/// Hamiltonian term is absent (rotating frame), matching the closed form.
pub fn finite_temp_generator(params: &FiniteTempParams) -> RawLindbladGenerator {
    let h = linalg::zeros(2, 2);
    let mut lower = linalg::zeros(2, 2);
    lower[[1, 0]] = cr((params.gamma0 * (params.n_bath + 1.0)).sqrt());
    let mut raise = linalg::zeros(2, 2);
    raise[[0, 1]] = cr((params.gamma0 * params.n_bath).sqrt());
    RawLindbladGenerator::new(h, vec![lower, raise]).unwrap()
}

/// Uniform sample from the Bloch ball (seeded).
pub fn random_bloch(seed: u64) -> BlochState {
    use rand::Rng;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
    loop {
        let x = rng.random::<f64>() * 2.0 - 1.0;
        let y = rng.random::<f64>() * 2.0 - 1.0;
        let z = rng.random::<f64>() * 2.0 - 1.0;
        if x * x + y * y + z * z <= 1.0 {
            return BlochState { x, y, z };
        }
    }
}
