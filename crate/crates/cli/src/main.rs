//! Command-line driver for the passivity laboratory: theorem sweeps, single
//! evolutions, majorization queries, and the counterexample suite, with
//! deterministic seeded reports.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use passivity_core::counterexamples::{
    attenuator_closed_forms, attenuator_crossing, bloch_evolve, bloch_to_density,
    density_to_bloch, evolved_purity, finite_temp_generator, is_passive_populations,
    optimal_coherent_state, optimal_purity, random_bloch, two_qubit_closed_forms,
    two_qubit_numeric, two_qubit_verdict, AttenuatorSetup, FiniteTempParams, TwoQubitVariant,
};
use passivity_core::lindblad::{build_generator, GeneratorSpec, LindbladGenerator};
use passivity_core::majorization::{compare, Relation};
use passivity_core::states::Spectrum;
use passivity_core::verify::{
    random_density, sn_trajectory, verify_main_theorem, verify_passive_preservation, SweepConfig,
};

use output::{config_hash, fmt_f64, parse_f64_list, read_f64_list, CsvTable, OutputDir};

const EXIT_VIOLATIONS: u8 = 2;

#[derive(Parser)]
#[command(
    name = "passivity-lab",
    about = "Verification laboratory for passive inputs of single-jump lossy channels",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Monte-Carlo sweep of the majorization theorem over random generators
    /// and inputs.
    VerifyTheorem(VerifyArgs),
    /// Evolve a seeded random state under a generator and emit the
    /// partial-sum trajectory.
    Evolve(EvolveArgs),
    /// Majorization verdict between two spectra.
    Compare(CompareArgs),
    /// Run one of the counterexample reproductions.
    Counterexample(CounterexampleArgs),
    /// Print the lambda_n coefficients of a generator.
    Lambdas(LambdasArgs),
}

/// Optional values shared through `--config <json>`; flags override file
/// entries, file entries override defaults.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    dim: Option<usize>,
    trials: Option<usize>,
    seed: Option<u64>,
    tol: Option<f64>,
    t_grid: Option<Vec<f64>>,
    rank: Option<usize>,
    t_max: Option<f64>,
    n_bath: Option<f64>,
    gamma0: Option<f64>,
    cutoff: Option<usize>,
}

fn load_config(path: &Option<PathBuf>) -> Result<FileConfig> {
    let Some(path) = path else {
        return Ok(FileConfig::default());
    };
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
}

fn threads_from_env() -> Result<usize> {
    match std::env::var("PASSIVITY_LAB_THREADS") {
        Ok(v) => v
            .parse::<usize>()
            .ok()
            .filter(|&n| n >= 1)
            .with_context(|| format!("PASSIVITY_LAB_THREADS must be a positive integer, got {v:?}")),
        Err(_) => Ok(1),
    }
}

fn parse_grid(flag: &Option<String>, file: Option<Vec<f64>>, default: &[f64]) -> Result<Vec<f64>> {
    let grid = match flag {
        Some(s) => parse_f64_list(s)?,
        None => file.unwrap_or_else(|| default.to_vec()),
    };
    if grid.is_empty() {
        bail!("t grid is empty");
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        bail!("t grid must be strictly ascending: {grid:?}");
    }
    if grid.iter().any(|&t| t < 0.0 || !t.is_finite()) {
        bail!("t grid entries must be finite and non-negative: {grid:?}");
    }
    Ok(grid)
}

fn check_tol(tol: f64) -> Result<f64> {
    if !(tol > 0.0 && tol.is_finite()) {
        bail!("tolerance must be positive, got {tol}");
    }
    Ok(tol)
}

fn load_generator(path: &PathBuf) -> Result<LindbladGenerator> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading generator {}", path.display()))?;
    let spec: GeneratorSpec = serde_json::from_str(&text)
        .with_context(|| format!("parsing generator {}", path.display()))?;
    build_generator(spec).with_context(|| format!("validating generator {}", path.display()))
}

// ---------------------------------------------------------------------------
// verify-theorem
// ---------------------------------------------------------------------------

#[derive(Args)]
struct VerifyArgs {
    /// System dimension for sampled generators.
    #[arg(long)]
    dim: Option<usize>,
    /// Generator file; overrides --dim sampling.
    #[arg(long)]
    generator: Option<PathBuf>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    tol: Option<f64>,
    /// Comma-separated evolution times.
    #[arg(long = "t-grid")]
    t_grid: Option<String>,
    /// Input rank (defaults to full rank).
    #[arg(long)]
    rank: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Serialize)]
struct VerifyResolved {
    dim: usize,
    trials: usize,
    seed: u64,
    tol: f64,
    t_grid: Vec<f64>,
    rank: Option<usize>,
    generator: GeneratorSpec,
}

fn run_verify(args: &VerifyArgs) -> Result<u8> {
    let file = load_config(&args.config)?;
    let dim = args.dim.or(file.dim).unwrap_or(4);
    let seed = args.seed.or(file.seed).unwrap_or(42);
    let trials = args.trials.or(file.trials).unwrap_or(100);
    let tol = check_tol(args.tol.or(file.tol).unwrap_or(1e-9))?;
    let t_grid = parse_grid(&args.t_grid, file.t_grid, &[0.1, 0.3, 1.0, 3.0])?;
    if dim < 2 {
        bail!("dimension must be at least 2");
    }
    let generator = match &args.generator {
        Some(path) => load_generator(path)?,
        None => passivity_core::verify::sample_generator(dim, seed),
    };

    let mut sweep = SweepConfig::new(trials, t_grid.clone(), tol, seed);
    sweep.rank = args.rank.or(file.rank);
    sweep.threads = threads_from_env()?;
    let report = verify_main_theorem(&generator, &sweep)?;

    let resolved = VerifyResolved {
        dim: generator.dim(),
        trials,
        seed,
        tol,
        t_grid,
        rank: sweep.rank,
        generator: generator.spec().clone(),
    };
    let hash = config_hash(&resolved)?;

    let out = OutputDir::new(args.out.clone())?;
    #[derive(Serialize)]
    struct Summary<'a> {
        config_hash: &'a str,
        config: &'a VerifyResolved,
        report: &'a passivity_core::verify::VerificationReport,
    }
    out.write_json(
        "verify_theorem.json",
        &Summary {
            config_hash: &hash,
            config: &resolved,
            report: &report,
        },
    )?;
    let mut csv = CsvTable::new(&hash, seed, &["seed", "t", "n", "gap"]);
    for v in &report.violations {
        csv.row(&[
            v.seed.to_string(),
            fmt_f64(v.t),
            v.n.to_string(),
            fmt_f64(v.gap),
        ]);
    }
    out.write("violations.csv", csv.contents())?;

    println!(
        "verify-theorem: dim={} trials={} violations={} min_gap={}",
        resolved.dim,
        report.trials,
        report.violations.len(),
        fmt_f64(report.min_gap)
    );
    Ok(if report.passed() { 0 } else { EXIT_VIOLATIONS })
}

// ---------------------------------------------------------------------------
// evolve
// ---------------------------------------------------------------------------

#[derive(Args)]
struct EvolveArgs {
    /// Generator file; defaults to the ladder generator of the given
    /// dimension.
    #[arg(long)]
    generator: Option<PathBuf>,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long = "t-grid")]
    t_grid: Option<String>,
    /// Write the resolved generator spec as JSON to this path.
    #[arg(long = "dump-generator")]
    dump_generator: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

fn run_evolve(args: &EvolveArgs) -> Result<u8> {
    let file = load_config(&args.config)?;
    let seed = args.seed.or(file.seed).unwrap_or(42);
    let t_grid = parse_grid(&args.t_grid, file.t_grid, &[0.1, 0.25, 0.5, 1.0, 2.0])?;
    let generator = match &args.generator {
        Some(path) => load_generator(path)?,
        None => {
            let dim = args.dim.or(file.dim).unwrap_or(4);
            if dim < 2 {
                bail!("dimension must be at least 2");
            }
            build_generator(GeneratorSpec::ladder(dim))?
        }
    };
    let d = generator.dim();

    if let Some(path) = &args.dump_generator {
        let mut json = serde_json::to_string_pretty(generator.spec())?;
        json.push('\n');
        std::fs::write(path, json)
            .with_context(|| format!("writing {}", path.display()))?;
    }

    let rho = random_density(d, d, seed)?;
    let traj = sn_trajectory(&generator, &rho, &t_grid)?;

    #[derive(Serialize)]
    struct Resolved<'a> {
        seed: u64,
        t_grid: &'a [f64],
        generator: &'a GeneratorSpec,
    }
    let resolved = Resolved {
        seed,
        t_grid: &t_grid,
        generator: generator.spec(),
    };
    let hash = config_hash(&resolved)?;

    let mut columns: Vec<String> = vec!["t".into()];
    for n in 1..=d {
        columns.push(format!("s{n}"));
    }
    for n in 1..=d {
        columns.push(format!("s{n}_passive"));
    }
    let column_refs: Vec<&str> = columns.iter().map(String::as_str).collect();
    let mut csv = CsvTable::new(&hash, seed, &column_refs);
    for (k, &t) in traj.times.iter().enumerate() {
        let mut cells = vec![fmt_f64(t)];
        cells.extend(traj.s[k].iter().map(|&x| fmt_f64(x)));
        cells.extend(traj.s_passive[k].iter().map(|&x| fmt_f64(x)));
        csv.row(&cells);
    }
    let out = OutputDir::new(args.out.clone())?;
    out.write("trajectory.csv", csv.contents())?;

    println!(
        "evolve: dim={d} seed={seed} times={} final_s1={}",
        t_grid.len(),
        fmt_f64(traj.s.last().unwrap()[0])
    );
    Ok(0)
}

// ---------------------------------------------------------------------------
// compare
// ---------------------------------------------------------------------------

#[derive(Args)]
struct CompareArgs {
    /// First spectrum, comma separated.
    #[arg(long)]
    p: Option<String>,
    /// Second spectrum, comma separated.
    #[arg(long)]
    q: Option<String>,
    /// File with the first spectrum.
    #[arg(long = "p-file")]
    p_file: Option<PathBuf>,
    /// File with the second spectrum.
    #[arg(long = "q-file")]
    q_file: Option<PathBuf>,
    #[arg(long)]
    tol: Option<f64>,
}

fn read_spectrum(inline: &Option<String>, path: &Option<PathBuf>, name: &str) -> Result<Spectrum> {
    let values = match (inline, path) {
        (Some(s), None) => parse_f64_list(s)?,
        (None, Some(p)) => read_f64_list(p)?,
        _ => bail!("provide exactly one of --{name} or --{name}-file"),
    };
    Spectrum::from_unsorted(values).map_err(|e| anyhow::anyhow!("invalid {name}: {e}"))
}

fn run_compare(args: &CompareArgs) -> Result<u8> {
    let tol = check_tol(args.tol.unwrap_or(1e-10))?;
    let p = read_spectrum(&args.p, &args.p_file, "p")?;
    let q = read_spectrum(&args.q, &args.q_file, "q")?;
    let verdict = compare(&p, &q, tol)?;
    println!("{}", verdict.relation);
    for (n, gap) in verdict.gaps.iter().enumerate() {
        println!("s{}: {}", n + 1, fmt_f64(*gap));
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// counterexample
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CounterexampleKind {
    Attenuator,
    TwoQubitMultijump,
    TwoQubitDegenerate,
    FiniteTempQubit,
}

#[derive(Args)]
struct CounterexampleArgs {
    #[arg(value_enum)]
    kind: CounterexampleKind,
    /// Largest evolution time on the grid.
    #[arg(long = "t-max")]
    t_max: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    tol: Option<f64>,
    /// Fock cutoff per attenuator mode.
    #[arg(long)]
    cutoff: Option<usize>,
    /// Mean bath occupation for the finite-temperature qubit.
    #[arg(long = "n-bath")]
    n_bath: Option<f64>,
    /// Coupling strength for the finite-temperature qubit.
    #[arg(long)]
    gamma0: Option<f64>,
    /// Random initial states for the purity-dominance check.
    #[arg(long)]
    trials: Option<usize>,
    /// Skip the dense superoperator cross-check (attenuator only).
    #[arg(long, default_value_t = false)]
    closed_only: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

fn run_counterexample(args: &CounterexampleArgs) -> Result<u8> {
    match args.kind {
        CounterexampleKind::Attenuator => run_attenuator(args),
        CounterexampleKind::TwoQubitMultijump => run_two_qubit(args, TwoQubitVariant::MultiJump),
        CounterexampleKind::TwoQubitDegenerate => run_two_qubit(args, TwoQubitVariant::Degenerate),
        CounterexampleKind::FiniteTempQubit => run_finite_temp(args),
    }
}

fn run_attenuator(args: &CounterexampleArgs) -> Result<u8> {
    let file = load_config(&args.config)?;
    let t_max = args.t_max.or(file.t_max).unwrap_or(2.0);
    let cutoff = args.cutoff.or(file.cutoff).unwrap_or(5);
    let tol = check_tol(args.tol.or(file.tol).unwrap_or(1e-8))?;
    let seed = args.seed.or(file.seed).unwrap_or(42);
    if !(t_max > 0.0 && t_max.is_finite()) {
        bail!("--t-max must be positive");
    }
    // Grid in steps of 0.25 so every channel is a power of one base step.
    const DT: f64 = 0.25;
    let steps: Vec<u64> = (1..=(t_max / DT).floor() as u64).collect();
    let times: Vec<f64> = steps.iter().map(|&k| DT * k as f64).collect();

    #[derive(Serialize)]
    struct Resolved {
        t_max: f64,
        cutoff: usize,
        tol: f64,
        seed: u64,
        closed_only: bool,
    }
    let resolved = Resolved {
        t_max,
        cutoff,
        tol,
        seed,
        closed_only: args.closed_only,
    };
    let hash = config_hash(&resolved)?;

    let crossing = attenuator_crossing(1.0, 1.5, 1e-9)?;
    let mut csv = CsvTable::new(
        &hash,
        seed,
        &[
            "t",
            "s3",
            "s3_tilde",
            "p1",
            "p1_tilde",
            "max_numeric_dev",
            "verdict",
        ],
    );

    let mut failures = 0usize;
    let mut max_dev: f64 = 0.0;
    let numeric = if args.closed_only {
        None
    } else {
        let setup = AttenuatorSetup::new(cutoff)?;
        let channels = setup.channels_at(DT, &steps)?;
        let mut records = Vec::with_capacity(channels.len());
        for channel in &channels {
            records.push(setup.numeric_from_channel(channel)?);
        }
        Some(records)
    };

    for (k, &t) in times.iter().enumerate() {
        let cf = attenuator_closed_forms(t)?;
        let (dev, verdict) = match &numeric {
            Some(records) => {
                let r = &records[k];
                let dev = [
                    (r.s3 - cf.s3).abs(),
                    (r.s3_tilde - cf.s3_tilde).abs(),
                    (r.p1 - cf.p1).abs(),
                    (r.p1_tilde - cf.p1_tilde).abs(),
                ]
                .into_iter()
                .fold(0.0f64, f64::max);
                (dev, format!("{}", r.verdict.relation))
            }
            None => (0.0, String::from("closed-form")),
        };
        max_dev = max_dev.max(dev);
        if dev > tol {
            failures += 1;
        }
        if cf.p1 <= cf.p1_tilde {
            failures += 1;
        }
        csv.row(&[
            fmt_f64(t),
            fmt_f64(cf.s3),
            fmt_f64(cf.s3_tilde),
            fmt_f64(cf.p1),
            fmt_f64(cf.p1_tilde),
            fmt_f64(dev),
            verdict,
        ]);
    }

    let out = OutputDir::new(args.out.clone())?;
    out.write("attenuator.csv", csv.contents())?;
    #[derive(Serialize)]
    struct Summary<'a> {
        config_hash: &'a str,
        config: &'a Resolved,
        crossing_time: f64,
        max_numeric_deviation: f64,
        failures: usize,
    }
    out.write_json(
        "attenuator.json",
        &Summary {
            config_hash: &hash,
            config: &resolved,
            crossing_time: crossing,
            max_numeric_deviation: max_dev,
            failures,
        },
    )?;

    println!(
        "attenuator: crossing_time={} max_numeric_dev={} failures={failures}",
        fmt_f64(crossing),
        fmt_f64(max_dev)
    );
    Ok(if failures == 0 { 0 } else { EXIT_VIOLATIONS })
}

fn run_two_qubit(args: &CounterexampleArgs, variant: TwoQubitVariant) -> Result<u8> {
    let file = load_config(&args.config)?;
    let t_max = args.t_max.or(file.t_max).unwrap_or(3.0);
    let tol = check_tol(args.tol.or(file.tol).unwrap_or(1e-9))?;
    let seed = args.seed.or(file.seed).unwrap_or(42);
    if !(t_max > 0.0 && t_max.is_finite()) {
        bail!("--t-max must be positive");
    }
    let times: Vec<f64> = (1..=12).map(|k| t_max * k as f64 / 12.0).collect();

    #[derive(Serialize)]
    struct Resolved {
        variant: String,
        t_max: f64,
        tol: f64,
        seed: u64,
    }
    let resolved = Resolved {
        variant: format!("{variant:?}"),
        t_max,
        tol,
        seed,
    };
    let hash = config_hash(&resolved)?;
    let mut csv = CsvTable::new(
        &hash,
        seed,
        &[
            "t",
            "p0_00",
            "p0_01",
            "p0_10",
            "p0_11",
            "p1_00",
            "p1_01",
            "p1_10",
            "p1_11",
            "p2_00",
            "p2_01",
            "p2_10",
            "p2_11",
            "numeric_dev",
            "verdict",
        ],
    );

    let mut failures = 0usize;
    let mut max_dev: f64 = 0.0;
    for &t in &times {
        let cf = two_qubit_closed_forms(t)?;
        let num = two_qubit_numeric(t, variant)?;
        let dev = cf
            .p0
            .iter()
            .zip(&num.p0)
            .chain(cf.p1.iter().zip(&num.p1))
            .chain(cf.p2.iter().zip(&num.p2))
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        max_dev = max_dev.max(dev);
        if dev > tol {
            failures += 1;
        }
        let verdict = two_qubit_verdict(t)?;
        if verdict.relation != Relation::Incomparable {
            failures += 1;
        }
        if !is_passive_populations(&cf.p0, 1e-12) || !is_passive_populations(&cf.p1, 1e-12) {
            failures += 1;
        }
        let mut cells = vec![fmt_f64(t)];
        cells.extend(cf.p0.iter().map(|&x| fmt_f64(x)));
        cells.extend(cf.p1.iter().map(|&x| fmt_f64(x)));
        cells.extend(cf.p2.iter().map(|&x| fmt_f64(x)));
        cells.push(fmt_f64(dev));
        cells.push(format!("{}", verdict.relation));
        csv.row(&cells);
    }

    let out = OutputDir::new(args.out.clone())?;
    out.write("two_qubit.csv", csv.contents())?;
    #[derive(Serialize)]
    struct Summary<'a> {
        config_hash: &'a str,
        config: &'a Resolved,
        max_numeric_deviation: f64,
        failures: usize,
    }
    out.write_json(
        "two_qubit.json",
        &Summary {
            config_hash: &hash,
            config: &resolved,
            max_numeric_deviation: max_dev,
            failures,
        },
    )?;

    println!(
        "two-qubit ({:?}): max_numeric_dev={} failures={failures}",
        variant,
        fmt_f64(max_dev)
    );
    Ok(if failures == 0 { 0 } else { EXIT_VIOLATIONS })
}

fn run_finite_temp(args: &CounterexampleArgs) -> Result<u8> {
    let file = load_config(&args.config)?;
    let t_max = args.t_max.or(file.t_max).unwrap_or(3.0);
    let tol = check_tol(args.tol.or(file.tol).unwrap_or(1e-9))?;
    let seed = args.seed.or(file.seed).unwrap_or(42);
    let n_bath = args.n_bath.or(file.n_bath).unwrap_or(0.5);
    let gamma0 = args.gamma0.or(file.gamma0).unwrap_or(1.0);
    let trials = args.trials.or(file.trials).unwrap_or(500);
    if !(t_max > 0.0 && t_max.is_finite()) {
        bail!("--t-max must be positive");
    }
    let params = FiniteTempParams::try_new(gamma0, n_bath, 1.0)
        .map_err(|e| anyhow::anyhow!("invalid parameters: {e}"))?;
    let times: Vec<f64> = (1..=12).map(|k| t_max * k as f64 / 12.0).collect();

    #[derive(Serialize)]
    struct Resolved {
        t_max: f64,
        tol: f64,
        seed: u64,
        n_bath: f64,
        gamma0: f64,
        trials: usize,
    }
    let resolved = Resolved {
        t_max,
        tol,
        seed,
        n_bath,
        gamma0,
        trials,
    };
    let hash = config_hash(&resolved)?;
    let mut csv = CsvTable::new(
        &hash,
        seed,
        &[
            "t",
            "optimal_purity",
            "numeric_purity",
            "best_random_purity",
            "dominance_gap",
        ],
    );

    let raw = finite_temp_generator(&params);
    let b_opt = optimal_coherent_state(&params);
    let rho_opt = bloch_to_density(&b_opt).map_err(|e| anyhow::anyhow!("{e}"))?;
    let mut failures = 0usize;
    for &t in &times {
        let closed = optimal_purity(&params, t)?;
        let numeric = density_to_bloch(&raw.evolve(&rho_opt, t)?).purity();
        if (closed - numeric).abs() > tol {
            failures += 1;
        }
        // Closed-form Bloch cross-check on the same trajectory.
        let bt = bloch_evolve(&params, &b_opt, t)?;
        if (bt.purity() - closed).abs() > tol {
            failures += 1;
        }
        let mut best_random = 0.0f64;
        let mut min_gap = f64::INFINITY;
        for k in 0..trials {
            let b0 = random_bloch(seed.wrapping_add(k as u64));
            let purity = evolved_purity(&params, &b0, t)?;
            best_random = best_random.max(purity);
            min_gap = min_gap.min(closed - purity);
        }
        if min_gap < -1e-10 {
            failures += 1;
        }
        csv.row(&[
            fmt_f64(t),
            fmt_f64(closed),
            fmt_f64(numeric),
            fmt_f64(best_random),
            fmt_f64(min_gap),
        ]);
    }

    let out = OutputDir::new(args.out.clone())?;
    out.write("finite_temp.csv", csv.contents())?;
    #[derive(Serialize)]
    struct Summary<'a> {
        config_hash: &'a str,
        config: &'a Resolved,
        z_inf: f64,
        asymptotic_purity: f64,
        failures: usize,
    }
    out.write_json(
        "finite_temp.json",
        &Summary {
            config_hash: &hash,
            config: &resolved,
            z_inf: params.z_inf(),
            asymptotic_purity: (1.0 + params.z_inf() * params.z_inf()) / 2.0,
            failures,
        },
    )?;

    println!(
        "finite-temp-qubit: z_inf={} asymptotic_purity={} failures={failures}",
        fmt_f64(params.z_inf()),
        fmt_f64((1.0 + params.z_inf() * params.z_inf()) / 2.0)
    );
    Ok(if failures == 0 { 0 } else { EXIT_VIOLATIONS })
}

// ---------------------------------------------------------------------------
// lambdas
// ---------------------------------------------------------------------------

#[derive(Args)]
struct LambdasArgs {
    /// Generator JSON file.
    #[arg(long)]
    generator: PathBuf,
    /// Also check passivity preservation of the uniform spectrum.
    #[arg(long, default_value_t = false)]
    check_preservation: bool,
}

fn run_lambdas(args: &LambdasArgs) -> Result<u8> {
    let generator = load_generator(&args.generator)?;
    let lambdas = generator.lambdas();
    let r = generator.r_profile();
    println!("n,lambda_n,r_n");
    for (n, lam) in lambdas.iter().enumerate() {
        println!("{},{},{}", n + 1, fmt_f64(*lam), fmt_f64(r[n + 1]));
    }
    if args.check_preservation {
        let d = generator.dim();
        let spectrum = Spectrum::uniform(d);
        let report =
            verify_passive_preservation(&generator, &spectrum, &[0.1, 0.5, 1.0, 3.0], 1e-10)?;
        println!("preservation_violations={}", report.violations.len());
        if !report.passed() {
            return Ok(EXIT_VIOLATIONS);
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::VerifyTheorem(args) => run_verify(args),
        Command::Evolve(args) => run_evolve(args),
        Command::Compare(args) => run_compare(args),
        Command::Counterexample(args) => run_counterexample(args),
        Command::Lambdas(args) => run_lambdas(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
