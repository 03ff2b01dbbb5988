//! Textbook phase estimation over the root-phase circuit, trace estimation
//! by tuple averaging, and the resulting approximate point counts.
//!
//! The ancilla bank holds t qubits, qubit j controlling the circuit raised
//! to the power 2^j. Small powers are simulated gate by gate; once the
//! repetition count passes `exact_reps_limit` the controlled application
//! switches to the scalar eigenphase measured from a single full
//! simulation (never from the classical Gauss-sum oracle), which the tests
//! pin against the gate-by-gate path at small powers.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::zeta::fermat::FermatSurface;

use super::circuit::{apply_root_unitary, run_root_circuit};
use super::state::{make_chi_state, StateVector};

/// Hard bound on ancilla precision (state size doubles per bit).
pub const MAX_ANCILLA_BITS: u32 = 16;

/// Knobs for one phase-estimation run.
#[derive(Clone, Debug)]
pub struct QpeOptions {
    /// Ancilla precision t: outcomes land on the grid 2 pi k / 2^t.
    pub t_bits: u32,
    /// Measurement shots drawn from the exact outcome distribution.
    pub shots: usize,
    /// RNG seed for the shot sampling.
    pub seed: u64,
    /// Estimate phases of the circuit raised to this power (extension index s).
    pub power: u32,
    /// Controlled powers up to this many repetitions run gate by gate;
    /// beyond it the measured scalar eigenphase is composed instead.
    pub exact_reps_limit: u64,
}

impl Default for QpeOptions {
    fn default() -> Self {
        QpeOptions {
            t_bits: 12,
            shots: 96,
            seed: 1,
            power: 1,
            exact_reps_limit: 8,
        }
    }
}

/// Outcome of one phase-estimation run.
#[derive(Clone, Debug)]
pub struct PhaseEstimate {
    /// Modal outcome phase, 2 pi k / 2^t for an integer k.
    pub theta_hat: f64,
    pub t_bits: u32,
    pub shots: usize,
    pub seed: u64,
    /// Sampled outcomes and their multiplicities, sorted by outcome.
    pub histogram: Vec<(u64, usize)>,
}

fn build_qpe_state(surface: &FermatSurface, b: &[u32], opts: &QpeOptions) -> Result<StateVector> {
    surface.check_tuple(b)?;
    let t = opts.t_bits as usize;
    if opts.t_bits == 0 || opts.t_bits > MAX_ANCILLA_BITS {
        return Err(Error::AncillaTooLarge { t: opts.t_bits });
    }
    let ctx = surface.ctx();
    let ancilla = StateVector::basis(&vec![2; t], &vec![0; t])?;
    let chi0 = make_chi_state(ctx, 0);
    let chit = make_chi_state(ctx, surface.chi_tilde_exponent() as i64);
    let mut state = StateVector::product(&[&ancilla, &chi0, &chit])?;

    for j in 0..t {
        state.hadamard(j)?;
    }

    // One full simulated run supplies the eigenphase for the scalar fast
    // path at large powers.
    let simulated = run_root_circuit(surface, b)?;
    let theta_sim = simulated.phase.arg();

    let chi0_reg = t;
    let chit_reg = t + 1;
    for j in 0..t {
        // Ancilla j controls U^{power * 2^j}; qubit j is bit j of the
        // outcome, so outcome k accumulates the phase e^{i theta k}.
        let reps = (opts.power as u128) << j;
        if reps <= opts.exact_reps_limit as u128 {
            for _ in 0..reps {
                apply_root_unitary(&mut state, surface, b, chi0_reg, chit_reg, Some(j))?;
            }
        } else {
            // Compose the measured eigenphase, reduced mod 2 pi before the
            // trig call to keep large powers accurate.
            let turns = theta_sim / std::f64::consts::TAU * reps as f64;
            let phi = turns.fract() * std::f64::consts::TAU;
            state.phase_on_one(j, Complex64::from_polar(1.0, phi))?;
        }
    }

    let anc_regs: Vec<usize> = (0..t).collect();
    qft_binary(&mut state, &anc_regs, true)?;
    Ok(state)
}

/// Exact outcome distribution of the ancilla readout (2^t probabilities).
pub fn qpe_distribution(
    surface: &FermatSurface,
    b: &[u32],
    opts: &QpeOptions,
) -> Result<Vec<f64>> {
    let state = build_qpe_state(surface, b, opts)?;
    let anc_regs: Vec<usize> = (0..opts.t_bits as usize).collect();
    state.qubit_distribution(&anc_regs)
}

/// Run QPE and sample `shots` outcomes; the modal outcome gives theta_hat.
pub fn phase_estimation(
    surface: &FermatSurface,
    b: &[u32],
    opts: &QpeOptions,
) -> Result<PhaseEstimate> {
    let probs = qpe_distribution(surface, b, opts)?;
    let mut counts = vec![0usize; probs.len()];
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.shots.max(1) {
        let mut u: f64 = rng.gen();
        let mut outcome = probs.len() - 1;
        for (k, &p) in probs.iter().enumerate() {
            if u < p {
                outcome = k;
                break;
            }
            u -= p;
        }
        counts[outcome] += 1;
    }
    let modal = counts
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        .map(|(k, _)| k)
        .unwrap_or(0);
    let theta_hat = std::f64::consts::TAU * modal as f64 / probs.len() as f64;
    let histogram: Vec<(u64, usize)> = counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(k, &c)| (k as u64, c))
        .collect();
    Ok(PhaseEstimate {
        theta_hat,
        t_bits: opts.t_bits,
        shots: opts.shots.max(1),
        seed: opts.seed,
        histogram,
    })
}

/// How exponent tuples are chosen for trace estimation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TupleSelection {
    /// Average over every valid tuple: the exact normalized trace of the
    /// estimated phases.
    Exhaustive,
    /// Uniform sample (with replacement) of this many tuples.
    Sample(usize),
}

/// Empirical estimate of Tr(U^s) / dim(U).
#[derive(Clone, Debug)]
pub struct TraceEstimate {
    /// Mean of e^{i theta_hat} over the selected tuples.
    pub mean: Complex64,
    /// Eigenvalue count of the unitary (number of valid tuples).
    pub dim: u64,
    /// Combined phase-grid plus sampling error on the mean.
    pub eps: f64,
    /// Per-selected-tuple estimates, in evaluation order.
    pub evaluations: Vec<(Vec<u32>, f64)>,
}

/// Estimate Tr(U^s)/dim by running QPE per selected tuple and averaging the
/// unit phases. Per-tuple runs are independent and are distributed across
/// threads with deterministic per-index seeds (seed + 1 + i).
pub fn estimate_trace(
    surface: &FermatSurface,
    selection: TupleSelection,
    opts: &QpeOptions,
) -> Result<TraceEstimate> {
    let all = surface.valid_tuples();
    let dim = all.len() as u64;
    let chosen: Vec<Vec<u32>> = match selection {
        TupleSelection::Exhaustive => all,
        TupleSelection::Sample(k) => {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            (0..k.max(1))
                .map(|_| all[rng.gen_range(0..all.len())].clone())
                .collect()
        }
    };

    let runs: Vec<Result<(Vec<u32>, f64)>> = chosen
        .into_par_iter()
        .enumerate()
        .map(|(i, b)| {
            let mut per = opts.clone();
            per.seed = opts.seed.wrapping_add(1 + i as u64);
            let est = phase_estimation(surface, &b, &per)?;
            Ok((b, est.theta_hat))
        })
        .collect();
    let mut evaluations = Vec::with_capacity(runs.len());
    for r in runs {
        evaluations.push(r?);
    }

    let phases: Vec<Complex64> = evaluations
        .iter()
        .map(|(_, th)| Complex64::from_polar(1.0, *th))
        .collect();
    let mean = phases.iter().sum::<Complex64>() / phases.len() as f64;

    // Grid error: a modal estimate lands within one bin of the true phase.
    let grid_eps = std::f64::consts::TAU / 2f64.powi(opts.t_bits as i32);
    let sampling_eps = match selection {
        TupleSelection::Exhaustive => 0.0,
        TupleSelection::Sample(_) => {
            let var = phases
                .iter()
                .map(|z| (z - mean).norm_sqr())
                .sum::<f64>()
                / phases.len() as f64;
            (var / phases.len() as f64).sqrt()
        }
    };

    Ok(TraceEstimate {
        mean,
        dim,
        eps: grid_eps + sampling_eps,
        evaluations,
    })
}

/// An approximate point count with its error bar.
#[derive(Clone, Debug)]
pub struct CountEstimate {
    /// Rounded estimate of N_s.
    pub estimate: BigInt,
    /// sqrt(q^{s(n-1)}) * dim * eps: the propagated trace error.
    pub error_bar: f64,
    /// The plane count (q^{sn} - 1)/(q^s - 1).
    pub plane: BigInt,
    /// The estimated normalized trace that produced the deviation.
    pub trace_mean: Complex64,
    pub dim: u64,
}

/// N_s estimated from the spectrum: plane term minus
/// (-1)^n sqrt(q^{s(n-1)}) * dim * Re(mean phase).
pub fn approx_count(
    surface: &FermatSurface,
    s: u32,
    selection: TupleSelection,
    opts: &QpeOptions,
) -> Result<CountEstimate> {
    let mut per = opts.clone();
    per.power = s;
    let trace = estimate_trace(surface, selection, &per)?;

    let n = surface.n();
    let q = surface.ctx().q();
    let qs = BigInt::from(q).pow(s);
    let mut plane = BigInt::zero();
    let mut pow = BigInt::one();
    for _ in 0..n {
        plane += &pow;
        pow *= &qs;
    }

    let scale = (q as f64).powf(s as f64 * (n as f64 - 1.0) / 2.0);
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 }; // (-1)^n
    let deviation = -sign * scale * trace.dim as f64 * trace.mean.re;
    let estimate = &plane + BigInt::from(deviation.round() as i64);
    let error_bar = scale * trace.dim as f64 * trace.eps;

    Ok(CountEstimate {
        estimate,
        error_bar,
        plane,
        trace_mean: trace.mean,
        dim: trace.dim,
    })
}

/// In-place binary (inverse) Fourier transform over qubit registers;
/// `regs[j]` holds bit j (LSB first) of the transform index.
pub fn qft_binary(state: &mut StateVector, regs: &[usize], inverse: bool) -> Result<()> {
    let t = regs.len();
    #[derive(Clone, Copy)]
    enum Op {
        H(usize),
        /// Controlled phase e^{2 pi i / 2^k} between two qubits.
        Cp(usize, usize, u32),
        Swap(usize, usize),
    }
    let mut ops = Vec::new();
    // Significance-descending Hadamard/rotation ladder, then bit reversal.
    for i in (0..t).rev() {
        ops.push(Op::H(regs[i]));
        for j in (0..i).rev() {
            ops.push(Op::Cp(regs[j], regs[i], (i - j + 1) as u32));
        }
    }
    for j in 0..t / 2 {
        ops.push(Op::Swap(regs[j], regs[t - 1 - j]));
    }
    if inverse {
        ops.reverse();
    }
    for op in ops {
        match op {
            Op::H(r) => state.hadamard(r)?,
            Op::Cp(a, b, k) => {
                let angle = std::f64::consts::TAU / 2f64.powi(k as i32);
                let angle = if inverse { -angle } else { angle };
                state.phase_on_pair(a, b, Complex64::from_polar(1.0, angle))?;
            }
            Op::Swap(a, b) => state.swap_qubits(a, b)?,
        }
    }
    Ok(())
}
