//! `zetaq`: zeta functions of finite-field equations from the command line.
//!
//! Subcommands: `count` (brute-force N_s), `zeta` (closed-form roots and
//! rational shape for diagonal hypersurfaces), `simulate` (circuit phase vs
//! classical phase per tuple), `qpe` (phase estimation for one tuple),
//! `estimate` (trace-based approximate counting), `orbits` (Moebius
//! inversion and the Euler-product cross-check).
//!
//! Exit codes: 0 success, 2 validation failure, 3 numerical-consistency
//! failure, 4 resource cap exceeded.

mod report;

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;

use zetaq_core::qsim::{
    phase_estimation, qpe_distribution, run_root_circuit, QpeOptions, TupleSelection,
};
use zetaq_core::zeta::{
    count_points_capped, counts_from_roots, euler_product_series, fermat_roots,
    normalized_root_phase, orbit_counts, reconstruct_rational, verify_weil, zeta_series,
    FermatSurface, PolySystem, DEFAULT_ENUM_CAP,
};
use zetaq_core::Error as CoreError;

use report::*;

const PHASE_TOLERANCE: f64 = 1e-6;

#[derive(Parser)]
#[command(
    name = "zetaq",
    version,
    about = "Zeta functions of finite-field equations: exact counting, Gauss-sum roots, and simulated phase estimation"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Brute-force point counts N_s over field extensions
    Count(CountArgs),
    /// Roots, rational form and Weil checks of a diagonal hypersurface
    Zeta(ZetaArgs),
    /// Per-tuple comparison of simulated and classical circuit phases
    Simulate(SimulateArgs),
    /// Phase estimation for a single exponent tuple
    Qpe(QpeArgs),
    /// Approximate point counts via simulated trace estimation
    Estimate(EstimateArgs),
    /// Orbit counts via Moebius inversion plus the Euler-product check
    Orbits(OrbitsArgs),
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Emit a JSON report (the default)
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV rows with a header line
    #[arg(long)]
    csv: bool,
    /// Write the report to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

impl OutputArgs {
    fn format(&self) -> &'static str {
        if self.csv {
            "csv"
        } else {
            "json"
        }
    }
}

#[derive(Args, Clone)]
struct SurfaceArgs {
    /// Characteristic of the base field
    #[arg(long)]
    p: u64,
    /// Extension degree (q = p^r)
    #[arg(long, default_value_t = 1)]
    r: u32,
    /// Degree m of the diagonal equation
    #[arg(long)]
    m: u64,
    /// Comma-separated coefficients: integers, or base-p digit lists like 1:2
    #[arg(long, allow_hyphen_values = true)]
    coeffs: String,
    /// Cross-check: expected index n (the surface has n+1 coefficients)
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args, Clone)]
struct SystemArgs {
    /// Polynomial system file (header `p r projective|affine [nvars]`)
    #[arg(long, conflicts_with_all = ["p", "m", "coeffs"])]
    file: Option<PathBuf>,
    /// Build the system from diagonal-surface flags instead of a file
    #[arg(long, requires_all = ["p", "m", "coeffs"])]
    diag: bool,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long, default_value_t = 1)]
    r: u32,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    coeffs: Option<String>,
    /// Variable-count override for files whose header omits it
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    input: SystemArgs,
    /// Extension indices, e.g. 1,2,3
    #[arg(long, default_value = "1")]
    s: String,
    /// Enumeration cap on canonical representatives
    #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
    cap: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ZetaArgs {
    #[command(flatten)]
    surface: SurfaceArgs,
    /// Series truncation order for the reconstructed zeta expansion
    #[arg(long, default_value_t = 4)]
    order: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    surface: SurfaceArgs,
    /// Simulate only this many sampled tuples instead of all of them
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct QpeArgs {
    #[command(flatten)]
    surface: SurfaceArgs,
    /// Exponent tuple, e.g. 1,1,2
    #[arg(long)]
    b: String,
    /// Ancilla precision bits
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..=16))]
    t_bits: u32,
    /// Measurement shots
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Gate-by-gate repetitions before the scalar fast path takes over
    #[arg(long, default_value_t = 8)]
    exact_reps_limit: u64,
    /// Include the full outcome distribution in the report
    #[arg(long)]
    dump_dist: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct EstimateArgs {
    #[command(flatten)]
    surface: SurfaceArgs,
    /// Extension indices to estimate, e.g. 1,2
    #[arg(long, default_value = "1")]
    s: String,
    /// Tuple samples; omit to average over every valid tuple
    #[arg(long)]
    samples: Option<usize>,
    /// Measurement shots per phase estimation
    #[arg(long, default_value_t = 64)]
    shots: usize,
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..=16))]
    t_bits: u32,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 8)]
    exact_reps_limit: u64,
    /// Cap for the optional exact cross-check enumeration
    #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
    cap: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OrbitsArgs {
    #[command(flatten)]
    input: SystemArgs,
    /// Invert counts N_1..N_order into orbit counts b_1..b_order
    #[arg(long, default_value_t = 4)]
    order: usize,
    #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
    cap: u64,
    #[command(flatten)]
    output: OutputArgs,
}

enum CliError {
    Core(CoreError),
    Usage(String),
    Io(String),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => match e {
                CoreError::EnumerationCapExceeded { .. }
                | CoreError::StateTooLarge { .. }
                | CoreError::AncillaTooLarge { .. }
                | CoreError::FieldTooLarge { .. } => 4,
                CoreError::ResidualTooLarge { .. }
                | CoreError::NegativeCount
                | CoreError::NonIntegralOrbitCount { .. }
                | CoreError::NegativeOrbitCount { .. } => 3,
                _ => 2,
            },
            CliError::Usage(_) => 2,
            CliError::Io(_) => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Core(e) => e.to_string(),
            CliError::Usage(m) | CliError::Io(m) => m.clone(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.cmd {
        Cmd::Count(args) => cmd_count(args),
        Cmd::Zeta(args) => cmd_zeta(args),
        Cmd::Simulate(args) => cmd_simulate(args),
        Cmd::Qpe(args) => cmd_qpe(args),
        Cmd::Estimate(args) => cmd_estimate(args),
        Cmd::Orbits(args) => cmd_orbits(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn parse_u32_list(text: &str, what: &str) -> Result<Vec<u32>, CliError> {
    text.split(',')
        .map(|tok| {
            let v = tok
                .trim()
                .parse::<u32>()
                .map_err(|_| CliError::Usage(format!("invalid {what} entry `{tok}`")))?;
            if v == 0 {
                return Err(CliError::Usage(format!("{what} entries must be >= 1")));
            }
            Ok(v)
        })
        .collect()
}

fn build_surface(args: &SurfaceArgs) -> Result<(FermatSurface, ResolvedConfig), CliError> {
    let ctx = zetaq_core::field::field_create(args.p, args.r)?;
    let mut coeffs = Vec::new();
    for tok in args.coeffs.split(',') {
        let tok = tok.trim();
        let elem = if tok.contains(':') {
            let digits: Result<Vec<i64>, _> = tok.split(':').map(|d| d.trim().parse::<i64>()).collect();
            let digits =
                digits.map_err(|_| CliError::Usage(format!("invalid coefficient `{tok}`")))?;
            ctx.from_coeffs(&digits)?
        } else {
            let v: i64 = tok
                .parse()
                .map_err(|_| CliError::Usage(format!("invalid coefficient `{tok}`")))?;
            ctx.from_int(v)
        };
        coeffs.push(elem);
    }
    if let Some(n) = args.n {
        if n + 1 != coeffs.len() {
            return Err(CliError::Usage(format!(
                "--n {n} expects {} coefficients, got {}",
                n + 1,
                coeffs.len()
            )));
        }
    }
    let surface = FermatSurface::new(ctx, args.m, coeffs)?;
    let config = ResolvedConfig {
        p: Some(args.p),
        r: Some(args.r),
        m: Some(args.m),
        coeffs: Some(surface.coeffs().iter().map(|c| c.index()).collect()),
        n: Some(surface.n()),
        ..ResolvedConfig::default()
    };
    Ok((surface, config))
}

fn build_system(args: &SystemArgs) -> Result<(PolySystem, ResolvedConfig), CliError> {
    if let Some(path) = &args.file {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
        let sys = PolySystem::parse_with_nvars(&text, args.n)?;
        let config = ResolvedConfig {
            file: Some(path.display().to_string()),
            p: Some(sys.ctx().p()),
            r: Some(sys.ctx().r()),
            n: Some(sys.ambient_dim()),
            ..ResolvedConfig::default()
        };
        Ok((sys, config))
    } else if args.diag || (args.p.is_some() && args.m.is_some() && args.coeffs.is_some()) {
        let surface_args = SurfaceArgs {
            p: args.p.ok_or_else(|| CliError::Usage("--p is required with --diag".into()))?,
            r: args.r,
            m: args.m.ok_or_else(|| CliError::Usage("--m is required with --diag".into()))?,
            coeffs: args
                .coeffs
                .clone()
                .ok_or_else(|| CliError::Usage("--coeffs is required with --diag".into()))?,
            n: args.n,
        };
        let (surface, mut config) = build_surface(&surface_args)?;
        config.m = Some(surface.degree());
        Ok((surface.to_poly_system(), config))
    } else {
        Err(CliError::Usage(
            "provide --file PATH or --diag with --p/--m/--coeffs".into(),
        ))
    }
}

fn emit<R: serde::Serialize>(
    output: &OutputArgs,
    report: &Report<R>,
    csv: String,
) -> Result<(), CliError> {
    let text = if output.csv {
        csv
    } else {
        let mut t = serde_json::to_string_pretty(report)
            .map_err(|e| CliError::Io(format!("serialization failed: {e}")))?;
        t.push('\n');
        t
    };
    match &output.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_count(args: CountArgs) -> Result<ExitCode, CliError> {
    let (sys, mut config) = build_system(&args.input)?;
    let s_list = parse_u32_list(&args.s, "--s")?;
    config.s = Some(s_list.clone());
    config.cap = Some(args.cap);
    config.format = args.output.format().into();

    let mut rows = Vec::new();
    for &s in &s_list {
        let n = count_points_capped(&sys, s, args.cap)?;
        rows.push(CountRow {
            s,
            n: n.to_string(),
        });
    }

    let mut csv = String::from("s,N_s\n");
    for row in &rows {
        let _ = writeln!(csv, "{}", csv_line(&[row.s.to_string(), row.n.clone()]));
    }
    let report = Report {
        command: "count".into(),
        status: "ok".into(),
        config,
        results: CountResults { counts: rows },
    };
    emit(&args.output, &report, csv)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_zeta(args: ZetaArgs) -> Result<ExitCode, CliError> {
    let (surface, mut config) = build_surface(&args.surface)?;
    config.order = Some(args.order);
    config.format = args.output.format().into();

    let profile = fermat_roots(&surface)?;
    let form = reconstruct_rational(&profile)?;
    let weil = verify_weil(&profile);

    let roots: Vec<RootRow> = profile
        .roots
        .iter()
        .map(|a| RootRow {
            re: a.re,
            im: a.im,
            modulus: a.norm(),
            phase: a.arg(),
        })
        .collect();

    let mut counts = Vec::new();
    let mut count_ints = Vec::new();
    for s in 1..=args.order.max(1) as u32 {
        let n = counts_from_roots(&profile, s)?;
        counts.push(CountRow {
            s,
            n: n.to_string(),
        });
        count_ints.push(n);
    }
    let series = zeta_series(&count_ints);

    let results = ZetaResults {
        p_coeffs: form.p_coeffs.iter().map(BigInt::to_string).collect(),
        p_in_numerator: form.p_in_numerator,
        trivial_factors: form.trivial_factors.iter().map(BigInt::to_string).collect(),
        roots,
        weil: WeilSummary {
            max_relative_magnitude_deviation: weil.max_relative_magnitude_deviation,
            unmatched_conjugates: weil.unmatched_conjugates,
            pass: weil.pass,
        },
        counts,
        series: series.coeffs().iter().map(|c| c.to_string()).collect(),
    };

    let mut csv = String::from("re,im,modulus,phase\n");
    for row in &results.roots {
        let _ = writeln!(
            csv,
            "{}",
            csv_line(&[
                row.re.to_string(),
                row.im.to_string(),
                row.modulus.to_string(),
                row.phase.to_string(),
            ])
        );
    }
    let pass = results.weil.pass;
    let report = Report {
        command: "zeta".into(),
        status: if pass { "ok" } else { "consistency_failed" }.into(),
        config,
        results,
    };
    emit(&args.output, &report, csv)?;
    Ok(if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    })
}

fn cmd_simulate(args: SimulateArgs) -> Result<ExitCode, CliError> {
    let (surface, mut config) = build_surface(&args.surface)?;
    config.samples = args.samples;
    config.seed = Some(args.seed);
    config.format = args.output.format().into();

    let all = surface.valid_tuples();
    let chosen: Vec<Vec<u32>> = match args.samples {
        None => all,
        Some(k) => {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(args.seed);
            (0..k.max(1))
                .map(|_| all[rng.gen_range(0..all.len())].clone())
                .collect()
        }
    };

    let mut rows = Vec::new();
    let mut max_delta = 0.0f64;
    for b in chosen {
        let run = run_root_circuit(&surface, &b)?;
        let oracle = normalized_root_phase(&surface, &b)?;
        let tau = std::f64::consts::TAU;
        let ts = run.theta();
        let tc = oracle.arg().rem_euclid(tau);
        let raw = (ts - tc).rem_euclid(tau);
        let delta = raw.min(tau - raw);
        max_delta = max_delta.max(delta);
        rows.push(SimulateRow {
            b,
            theta_sim: ts,
            theta_classical: tc,
            delta,
            overlap: run.overlap,
        });
    }

    let mut csv = String::from("b,theta_sim,theta_classical,delta\n");
    for row in &rows {
        let b_str = row
            .b
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(
            csv,
            "{}",
            csv_line(&[
                b_str,
                row.theta_sim.to_string(),
                row.theta_classical.to_string(),
                row.delta.to_string(),
            ])
        );
    }
    let ok = max_delta < PHASE_TOLERANCE;
    let report = Report {
        command: "simulate".into(),
        status: if ok { "ok" } else { "consistency_failed" }.into(),
        config,
        results: SimulateResults {
            tuples: rows,
            max_delta,
            tolerance: PHASE_TOLERANCE,
        },
    };
    emit(&args.output, &report, csv)?;
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    })
}

fn cmd_qpe(args: QpeArgs) -> Result<ExitCode, CliError> {
    let (surface, mut config) = build_surface(&args.surface)?;
    let b = parse_u32_list(&args.b, "--b")?;
    config.b = Some(b.clone());
    config.t_bits = Some(args.t_bits);
    config.samples = Some(args.samples);
    config.seed = Some(args.seed);
    config.exact_reps_limit = Some(args.exact_reps_limit);
    config.format = args.output.format().into();

    let opts = QpeOptions {
        t_bits: args.t_bits,
        shots: args.samples,
        seed: args.seed,
        power: 1,
        exact_reps_limit: args.exact_reps_limit,
    };
    let est = phase_estimation(&surface, &b, &opts)?;
    let theta_classical = normalized_root_phase(&surface, &b)?
        .arg()
        .rem_euclid(std::f64::consts::TAU);
    let tau = std::f64::consts::TAU;
    let raw = (est.theta_hat - theta_classical).rem_euclid(tau);
    let delta = raw.min(tau - raw);

    let grid = 2f64.powi(args.t_bits as i32);
    let histogram: Vec<HistogramRow> = est
        .histogram
        .iter()
        .map(|&(k, c)| HistogramRow {
            outcome: k,
            count: c,
            theta: tau * k as f64 / grid,
        })
        .collect();
    let distribution = if args.dump_dist {
        Some(qpe_distribution(&surface, &b, &opts)?)
    } else {
        None
    };

    let mut csv = String::from("outcome,count,theta\n");
    for row in &histogram {
        let _ = writeln!(
            csv,
            "{}",
            csv_line(&[
                row.outcome.to_string(),
                row.count.to_string(),
                row.theta.to_string(),
            ])
        );
    }
    let report = Report {
        command: "qpe".into(),
        status: "ok".into(),
        config,
        results: QpeResults {
            theta_hat: est.theta_hat,
            theta_classical,
            delta,
            histogram,
            distribution,
        },
    };
    emit(&args.output, &report, csv)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_estimate(args: EstimateArgs) -> Result<ExitCode, CliError> {
    let (surface, mut config) = build_surface(&args.surface)?;
    let s_list = parse_u32_list(&args.s, "--s")?;
    config.s = Some(s_list.clone());
    config.samples = args.samples;
    config.shots = Some(args.shots);
    config.t_bits = Some(args.t_bits);
    config.seed = Some(args.seed);
    config.exact_reps_limit = Some(args.exact_reps_limit);
    config.cap = Some(args.cap);
    config.format = args.output.format().into();

    let selection = match args.samples {
        None => TupleSelection::Exhaustive,
        Some(k) => TupleSelection::Sample(k),
    };
    let sys = surface.to_poly_system();

    let mut rows = Vec::new();
    for &s in &s_list {
        let opts = QpeOptions {
            t_bits: args.t_bits,
            shots: args.shots,
            seed: args.seed,
            power: s,
            exact_reps_limit: args.exact_reps_limit,
        };
        let est = zetaq_core::qsim::approx_count(&surface, s, selection, &opts)?;
        // Exact count included when the enumeration fits under the cap.
        let exact = match count_points_capped(&sys, s, args.cap) {
            Ok(n) => Some(n.to_string()),
            Err(CoreError::EnumerationCapExceeded { .. })
            | Err(CoreError::FieldTooLarge { .. }) => None,
            Err(e) => return Err(e.into()),
        };
        rows.push(EstimateRow {
            s,
            estimate: est.estimate.to_string(),
            error_bar: est.error_bar,
            trace_re: est.trace_mean.re,
            trace_im: est.trace_mean.im,
            dim: est.dim,
            exact,
        });
    }

    let mut csv = String::from("s,estimate,error_bar,trace_re,trace_im,exact\n");
    for row in &rows {
        let _ = writeln!(
            csv,
            "{}",
            csv_line(&[
                row.s.to_string(),
                row.estimate.clone(),
                row.error_bar.to_string(),
                row.trace_re.to_string(),
                row.trace_im.to_string(),
                row.exact.clone().unwrap_or_default(),
            ])
        );
    }
    let report = Report {
        command: "estimate".into(),
        status: "ok".into(),
        config,
        results: EstimateResults { estimates: rows },
    };
    emit(&args.output, &report, csv)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_orbits(args: OrbitsArgs) -> Result<ExitCode, CliError> {
    let (sys, mut config) = build_system(&args.input)?;
    config.order = Some(args.order);
    config.cap = Some(args.cap);
    config.format = args.output.format().into();

    let mut counts = Vec::new();
    for s in 1..=args.order.max(1) as u32 {
        counts.push(count_points_capped(&sys, s, args.cap)?);
    }
    let count_rows: Vec<CountRow> = counts
        .iter()
        .enumerate()
        .map(|(i, n)| CountRow {
            s: i as u32 + 1,
            n: n.to_string(),
        })
        .collect();

    // A failed inversion is a verdict, not a crash: it means the counts do
    // not come from a variety.
    let (orbits, euler_ok, verdict) = match orbit_counts(&counts) {
        Ok(b) => {
            let euler = euler_product_series(&b, counts.len());
            let exp_form = zeta_series(&counts);
            let ok = euler == exp_form;
            let rows = b
                .iter()
                .enumerate()
                .map(|(i, v)| OrbitRow {
                    d: i + 1,
                    b: v.to_string(),
                })
                .collect();
            (
                rows,
                ok,
                if ok { "pass".to_string() } else { "euler_mismatch".to_string() },
            )
        }
        Err(e) => (Vec::new(), false, e.to_string()),
    };

    let mut csv = String::from("d,b_d\n");
    for row in &orbits {
        let _ = writeln!(csv, "{}", csv_line(&[row.d.to_string(), row.b.clone()]));
    }
    let pass = euler_ok;
    let report = Report {
        command: "orbits".into(),
        status: if pass { "ok" } else { "consistency_failed" }.into(),
        config,
        results: OrbitResults {
            counts: count_rows,
            orbits,
            euler_matches_exp_form: euler_ok,
            verdict,
        },
    };
    emit(&args.output, &report, csv)?;
    Ok(if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    })
}
