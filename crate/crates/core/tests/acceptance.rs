//! Acceptance gate: one test per criterion, each printing a PASS/FAIL line.
//! Criterion 8 (byte-identical CLI reports) lives in the CLI crate's
//! integration tests.

use std::time::Instant;

use once_cell::sync::Lazy;

use passivity_core::counterexamples::{
    attenuator_closed_forms, attenuator_crossing, bloch_evolve, bloch_to_density,
    density_to_bloch, evolved_purity, finite_temp_generator, is_passive_populations,
    optimal_coherent_state, optimal_purity, random_bloch, two_qubit_closed_forms,
    two_qubit_numeric, two_qubit_verdict, AttenuatorNumeric, AttenuatorSetup, FiniteTempParams,
    TwoQubitVariant,
};
use passivity_core::majorization::{
    apply_t_transforms, compare, compare_default, t_transform_witness, Relation, TTransform,
    TTransformChain,
};
use passivity_core::states::{
    entropy_of_spectrum, ky_fan_sum, spectrum_of, DensityMatrix, EntropyFunctional, Spectrum,
};
use passivity_core::verify::{
    derive_seed, haar_unitary, random_density, sample_generator, verify_sdot_inequality,
};
use passivity_core::Error;

fn report(criterion: &str, failures: &[String]) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion {criterion}: {status}");
    assert!(failures.is_empty(), "{criterion}:\n{}", failures.join("\n"));
}

/// Shared attenuator fixture: one dense two-mode evolution over the whole
/// time grid, assembled from powers of a short base step (dt = 0.05).
struct AttenuatorFixture {
    times: Vec<f64>,
    records: Vec<AttenuatorNumeric>,
    seconds: f64,
}

static ATTENUATOR: Lazy<AttenuatorFixture> = Lazy::new(|| {
    let start = Instant::now();
    let setup = AttenuatorSetup::new(5).unwrap();
    const DT: f64 = 0.05;
    let steps: Vec<u64> = vec![5, 10, 20, 26, 30, 40];
    let times: Vec<f64> = steps.iter().map(|&k| DT * k as f64).collect();
    let channels = setup.channels_at(DT, &steps).unwrap();
    let records = channels
        .iter()
        .map(|c| setup.numeric_from_channel(c).unwrap())
        .collect();
    AttenuatorFixture {
        times,
        records,
        seconds: start.elapsed().as_secs_f64(),
    }
});

#[test]
fn criterion_1_attenuator_crossing() {
    let mut failures = Vec::new();
    let t0 = (2.0 + 2.0f64.sqrt()).ln();
    let root = attenuator_crossing(1.0, 1.5, 1e-8).unwrap();
    if (root - t0).abs() > 1e-6 {
        failures.push(format!("bisection root {root} vs ln(2+sqrt 2) = {t0}"));
    }

    let fixture = &ATTENUATOR;
    for (&t, record) in fixture.times.iter().zip(&fixture.records) {
        if ![0.25, 0.5, 1.0, 1.5, 2.0].contains(&t) {
            continue;
        }
        let cf = attenuator_closed_forms(t).unwrap();
        for (name, numeric, closed) in [
            ("s3", record.s3, cf.s3),
            ("s3_tilde", record.s3_tilde, cf.s3_tilde),
            ("p1", record.p1, cf.p1),
            ("p1_tilde", record.p1_tilde, cf.p1_tilde),
        ] {
            if (numeric - closed).abs() > 1e-8 {
                failures.push(format!(
                    "t = {t}: {name} numeric {numeric} vs closed {closed}"
                ));
            }
        }
    }
    if fixture.seconds > 120.0 {
        failures.push(format!("attenuator runtime {:.1} s > 120 s", fixture.seconds));
    }
    report("1 (attenuator crossing and closed forms)", &failures);
}

#[test]
fn criterion_2_attenuator_verdict() {
    let mut failures = Vec::new();
    let fixture = &ATTENUATOR;
    for (&t, record) in fixture.times.iter().zip(&fixture.records) {
        if [1.3, 1.5, 2.0].contains(&t) && record.verdict.relation != Relation::Incomparable {
            failures.push(format!(
                "t = {t}: expected Incomparable, got {}",
                record.verdict.relation
            ));
        }
        if record.p1 <= record.p1_tilde {
            failures.push(format!(
                "t = {t}: p1 {} <= p1_tilde {}",
                record.p1, record.p1_tilde
            ));
        }
    }
    // Dense closed-form sweep of the strict p1 dominance.
    for k in 1..=300 {
        let t = 0.01 * k as f64;
        let cf = attenuator_closed_forms(t).unwrap();
        if cf.p1 <= cf.p1_tilde {
            failures.push(format!("closed forms at t = {t}: p1 <= p1_tilde"));
        }
    }
    report("2 (attenuator incomparability and p1 dominance)", &failures);
}

#[test]
fn criterion_3_two_qubit() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let grid = [0.2, 0.5, 2.0f64.ln(), 1.0, 2.0];
    for variant in [TwoQubitVariant::MultiJump, TwoQubitVariant::Degenerate] {
        for &t in &grid {
            let cf = two_qubit_closed_forms(t).unwrap();
            let num = two_qubit_numeric(t, variant).unwrap();
            let dev = cf
                .p0
                .iter()
                .zip(&num.p0)
                .chain(cf.p1.iter().zip(&num.p1))
                .chain(cf.p2.iter().zip(&num.p2))
                .map(|(a, b)| (a - b).abs())
                .fold(0.0f64, f64::max);
            if dev > 1e-9 {
                failures.push(format!("{variant:?} t = {t}: population deviation {dev}"));
            }
            if two_qubit_verdict(t).unwrap().relation != Relation::Incomparable {
                failures.push(format!("t = {t}: verdict not Incomparable"));
            }
            if !is_passive_populations(&num.p0, 1e-10) {
                failures.push(format!("{variant:?} t = {t}: evolved identity not passive"));
            }
            if !is_passive_populations(&num.p1, 1e-10) {
                failures.push(format!("{variant:?} t = {t}: evolved rho(1) not passive"));
            }
        }
    }
    let seconds = start.elapsed().as_secs_f64();
    if seconds > 5.0 {
        failures.push(format!("two-qubit runtime {seconds:.2} s > 5 s"));
    }
    report("3 (two-qubit populations and incomparability)", &failures);
}

#[test]
fn criterion_4_finite_temperature_qubit() {
    let mut failures = Vec::new();
    let params = FiniteTempParams::try_new(1.0, 0.5, 1.0).unwrap();
    let raw = finite_temp_generator(&params);
    let grid = [0.1, 0.3, 0.7, 1.5, 3.0];

    // Closed-form Bloch dynamics against the raw numeric path.
    for seed in 0..40u64 {
        let b0 = random_bloch(seed);
        let rho0 = bloch_to_density(&b0).unwrap();
        for &t in &grid {
            let closed = bloch_evolve(&params, &b0, t).unwrap();
            let numeric = density_to_bloch(&raw.evolve(&rho0, t).unwrap());
            let dev = (closed.x - numeric.x)
                .abs()
                .max((closed.y - numeric.y).abs())
                .max((closed.z - numeric.z).abs());
            if dev > 1e-9 {
                failures.push(format!("seed {seed} t = {t}: Bloch deviation {dev}"));
            }
        }
    }

    // Purity dominance of the optimal coherent state over 500 random inputs.
    let b_opt = optimal_coherent_state(&params);
    for &t in &grid {
        let top = evolved_purity(&params, &b_opt, t).unwrap();
        for k in 0..500u64 {
            let b0 = random_bloch(derive_seed(4242, k));
            let purity = evolved_purity(&params, &b0, t).unwrap();
            if purity > top + 1e-10 {
                failures.push(format!("t = {t} state {k}: purity {purity} > {top}"));
            }
        }
    }

    // N = 0.5 asymptote.
    let asymptote = optimal_purity(&params, 1e8).unwrap();
    if (asymptote - 0.625).abs() > 1e-10 {
        failures.push(format!("asymptotic purity {asymptote} vs 0.625"));
    }
    report("4 (finite-temperature qubit)", &failures);
}

#[test]
fn criterion_5_main_theorem_sweep() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let t_grid = [0.1, 0.3, 1.0, 3.0];
    let master = 20_260_824u64;
    for trial in 0..500u64 {
        let d = 2 + (trial as usize % 5);
        let generator = sample_generator(d, derive_seed(master, trial));
        let raw = generator.to_raw();
        let input = random_density(d, d, derive_seed(master, 100_000 + trial)).unwrap();
        let spectrum = spectrum_of(&input).unwrap();
        let passive = DensityMatrix::from_diagonal(spectrum.as_slice()).unwrap();
        for &t in &t_grid {
            let out = raw.evolve(&input, t).unwrap();
            let out_passive = raw.evolve(&passive, t).unwrap();
            let verdict = compare(
                &spectrum_of(&out_passive).unwrap(),
                &spectrum_of(&out).unwrap(),
                1e-9,
            )
            .unwrap();
            if !matches!(verdict.relation, Relation::Majorizes | Relation::Equal) {
                failures.push(format!(
                    "trial {trial} t = {t}: relation {} min_gap {}",
                    verdict.relation,
                    verdict.min_gap()
                ));
            }
            // Passivity preservation along the passive branch.
            if out_passive.off_diagonal_max() > 1e-9 {
                failures.push(format!("trial {trial} t = {t}: passive output not diagonal"));
            }
            if !is_passive_populations(&out_passive.diagonal(), 1e-9) {
                failures.push(format!("trial {trial} t = {t}: passive output not sorted"));
            }
        }
        if failures.len() > 20 {
            break;
        }
    }
    let seconds = start.elapsed().as_secs_f64();
    if seconds > 300.0 {
        failures.push(format!("sweep runtime {seconds:.1} s > 300 s"));
    }
    report("5 (main theorem Monte-Carlo sweep)", &failures);
}

#[test]
fn criterion_6_lemma_checks() {
    let mut failures = Vec::new();

    // Lambda positivity and the telescoping identity lambda_n = r_{n+1}.
    for seed in 0..100u64 {
        let d = 2 + (seed as usize % 5);
        let g = sample_generator(d, 900 + seed);
        let lambdas = g.lambdas();
        let r = g.r_profile();
        for (n, lam) in lambdas.iter().enumerate() {
            if *lam < -1e-12 {
                failures.push(format!("seed {seed}: lambda_{} = {lam} < 0", n + 1));
            }
            if (lam - r[n + 1]).abs() > 1e-12 {
                failures.push(format!(
                    "seed {seed}: lambda_{} = {lam} vs r = {}",
                    n + 1,
                    r[n + 1]
                ));
            }
        }
    }

    // Finite-difference partial-sum inequality on random triples.
    let mut checked = 0u64;
    let mut attempt = 0u64;
    while checked < 100 && attempt < 400 {
        attempt += 1;
        let d = 3 + (attempt as usize % 4);
        let g = sample_generator(d, 2000 + attempt);
        let rho = random_density(d, d, 3000 + attempt).unwrap();
        let t = 0.2 + 0.8 * ((attempt % 7) as f64 / 7.0);
        match verify_sdot_inequality(&g, &rho, t, 1e-5) {
            Ok(record) => {
                checked += 1;
                for (n, (lhs, rhs)) in record.lhs.iter().zip(&record.rhs).enumerate() {
                    if *lhs > rhs + 1e-6 {
                        failures.push(format!(
                            "triple {attempt} n = {}: lhs {lhs} > rhs {rhs}",
                            n + 1
                        ));
                    }
                }
            }
            Err(Error::DegenerateSpectrumAtT { .. }) => continue,
            Err(e) => failures.push(format!("triple {attempt}: {e}")),
        }
    }
    if checked < 100 {
        failures.push(format!("only {checked} non-degenerate sdot triples found"));
    }

    // Equality branch for passive inputs.
    let mut eq_checked = 0u64;
    let mut attempt = 0u64;
    while eq_checked < 30 && attempt < 200 {
        attempt += 1;
        let d = 3 + (attempt as usize % 3);
        let g = sample_generator(d, 5000 + attempt);
        let spectrum = spectrum_of(&random_density(d, d, 6000 + attempt).unwrap()).unwrap();
        let passive = DensityMatrix::from_diagonal(spectrum.as_slice()).unwrap();
        let t = 0.3 + 0.5 * ((attempt % 5) as f64 / 5.0);
        match verify_sdot_inequality(&g, &passive, t, 1e-5) {
            Ok(record) => {
                eq_checked += 1;
                for (n, (lhs, rhs)) in record.lhs.iter().zip(&record.rhs).enumerate() {
                    if (lhs - rhs).abs() > 1e-6 {
                        failures.push(format!(
                            "passive triple {attempt} n = {}: |{lhs} - {rhs}| > 1e-6",
                            n + 1
                        ));
                    }
                }
            }
            Err(Error::DegenerateSpectrumAtT { .. }) => continue,
            Err(e) => failures.push(format!("passive triple {attempt}: {e}")),
        }
    }
    if eq_checked < 30 {
        failures.push(format!("only {eq_checked} passive equality triples found"));
    }

    // Identity-image lemma: evolved identity passive at all grid times and
    // the generator's identity image passive, for 100 generators.
    for seed in 0..100u64 {
        let d = 2 + (seed as usize % 5);
        let g = sample_generator(d, 7000 + seed);
        let raw = g.to_raw();
        let uniform = DensityMatrix::maximally_mixed(d);
        let mut evolved_passive = true;
        for &t in &[0.1, 0.5, 2.0] {
            let out = raw.evolve(&uniform, t).unwrap();
            if out.off_diagonal_max() > 1e-10
                || !is_passive_populations(&out.diagonal(), 1e-10)
            {
                evolved_passive = false;
            }
        }
        let (_, generator_passive) = g.identity_image();
        if evolved_passive && !generator_passive {
            failures.push(format!("seed {seed}: lemma implication violated"));
        }
        if !evolved_passive {
            failures.push(format!("seed {seed}: evolved identity not passive"));
        }
    }
    report("6 (lambda, sdot, and identity-image lemmas)", &failures);
}

#[test]
fn criterion_7_majorization_kit() {
    let mut failures = Vec::new();

    // 200 majorizing pairs: witness round trip and entropy monotonicity.
    for seed in 0..200u64 {
        let d = 3 + (seed as usize % 4);
        let p = spectrum_of(&random_density(d, d, 8000 + seed).unwrap()).unwrap();
        let chain = TTransformChain {
            steps: vec![
                TTransform {
                    i: (seed as usize) % d,
                    j: (seed as usize + 1) % d,
                    weight: 0.15 + 0.7 * ((seed % 11) as f64 / 11.0),
                },
                TTransform {
                    i: (seed as usize + 2) % d,
                    j: (seed as usize + 3) % d,
                    weight: 0.25 + 0.5 * ((seed % 7) as f64 / 7.0),
                },
            ],
        };
        let q = apply_t_transforms(&p, &chain).unwrap();
        let witness = match t_transform_witness(&p, &q) {
            Ok(w) => w,
            Err(e) => {
                failures.push(format!("seed {seed}: witness failed: {e}"));
                continue;
            }
        };
        let back = apply_t_transforms(&p, &witness).unwrap();
        for (a, b) in back.as_slice().iter().zip(q.as_slice()) {
            if (a - b).abs() > 1e-9 {
                failures.push(format!("seed {seed}: round trip off by {}", (a - b).abs()));
                break;
            }
        }
        for f in [EntropyFunctional::VonNeumann, EntropyFunctional::Renyi(2.0)] {
            let hp = entropy_of_spectrum(&p, &f).unwrap();
            let hq = entropy_of_spectrum(&q, &f).unwrap();
            if hp > hq + 1e-9 {
                failures.push(format!("seed {seed}: entropy decreased under mixing"));
            }
        }
        let verdict = compare_default(&p, &q).unwrap();
        if !matches!(verdict.relation, Relation::Majorizes | Relation::Equal) {
            failures.push(format!("seed {seed}: image not majorized"));
        }
    }

    // Ky Fan bound over 100 random projectors per matrix.
    for mat_seed in 0..3u64 {
        let d = 5;
        let x_state = random_density(d, d, 9100 + mat_seed).unwrap();
        let x = x_state.matrix();
        for proj_seed in 0..100u64 {
            let n = 1 + (proj_seed as usize % (d - 1));
            let v = haar_unitary(d, 9500 + mat_seed * 100 + proj_seed);
            let mut overlap = 0.0;
            for col in 0..n {
                for i in 0..d {
                    for j in 0..d {
                        overlap += (v[[i, col]].conj() * x[[i, j]] * v[[j, col]]).re;
                    }
                }
            }
            let bound = ky_fan_sum(x, n).unwrap();
            if overlap > bound + 1e-9 {
                failures.push(format!(
                    "matrix {mat_seed} projector {proj_seed}: {overlap} > {bound}"
                ));
            }
        }
    }

    // Uniform spectrum sanity anchor.
    let u = Spectrum::uniform(4);
    let peak = Spectrum::try_new(vec![1.0, 0.0, 0.0, 0.0]).unwrap();
    if compare_default(&peak, &u).unwrap().relation != Relation::Majorizes {
        failures.push("pure state must majorize uniform".into());
    }
    report("7 (majorization kit)", &failures);
}
