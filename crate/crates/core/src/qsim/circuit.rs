//! The root-phase circuit for diagonal hypersurfaces.
//!
//! On the two chi registers |chi^0, chi~> the gate sequence below realizes,
//! for one exponent tuple (b_0, ..., b_n), the scalar evolution
//!
//!   |chi^0, chi~>  ->  (-1)^{n-1} prod_i g(chi_i) / (q^{(n+1)/2} prod_i chi_i(c_i)) |chi^0, chi~>,
//!
//! i.e. the chi registers are an eigenvector and the eigenvalue is the
//! normalized zeta root e^{i theta_j}. The tuple itself never enters a
//! superposition, so it is carried as classical metadata rather than as
//! simulated amplitudes.

use num_complex::Complex64;

use crate::error::Result;
use crate::field::FieldCtx;
use crate::zeta::fermat::FermatSurface;

use super::state::{make_chi_state, StateVector};

/// Result of one full run: the measured global phase and the overlap
/// magnitude between the final and initial chi-register state.
#[derive(Clone, Debug)]
pub struct CircuitRun {
    /// <initial|final>; equals e^{i theta} up to simulation error.
    pub phase: Complex64,
    /// |<initial|final>|; 1 exactly when the state is an eigenvector.
    pub overlap: f64,
}

impl CircuitRun {
    pub fn theta(&self) -> f64 {
        self.phase.arg().rem_euclid(std::f64::consts::TAU)
    }
}

/// Apply the full gate sequence for tuple `b` to the chi registers
/// (`chi0_reg`, `chit_reg`) of `state`, optionally conditioned on a control
/// qubit. One application multiplies the eigenstate by e^{i theta_j}.
pub fn apply_root_unitary(
    state: &mut StateVector,
    surface: &FermatSurface,
    b: &[u32],
    chi0_reg: usize,
    chit_reg: usize,
    ctrl: Option<usize>,
) -> Result<()> {
    let ctx: &FieldCtx = surface.ctx();
    let n = surface.n();

    // Per coordinate: load chi~^{b_i} into the work register, Fourier
    // transform it (picking up g(chi_i)/sqrt(q) and flipping the exponent),
    // then unload so the register returns to chi^0.
    for &bi in b {
        state.mul_gate_ctrl(chi0_reg, chit_reg, ctx, bi as i64, ctrl)?;
        state.qft_field_ctrl(chi0_reg, ctx, false, ctrl)?;
        state.mul_gate_ctrl(chi0_reg, chit_reg, ctx, bi as i64, ctrl)?;
    }

    // Coefficient phases: |y> -> |y c_i^{b_i}> on the chi~ register divides
    // by chi_i(c_i).
    for (&bi, &ci) in b.iter().zip(surface.coeffs()) {
        let c_pow = ctx.pow(ci, bi as i64)?;
        state.scalar_mul_gate_ctrl(chit_reg, ctx, c_pow, ctrl)?;
    }

    // Global sign (-1)^{n-1}.
    if n % 2 == 0 {
        let minus_one = Complex64::new(-1.0, 0.0);
        match ctrl {
            Some(c) => state.phase_on_one(c, minus_one)?,
            None => state.global_phase(minus_one),
        }
    }
    Ok(())
}

/// Build |chi^0, chi~>, run the gate sequence once, and read off the global
/// phase as the overlap with the initial state.
pub fn run_root_circuit(surface: &FermatSurface, b: &[u32]) -> Result<CircuitRun> {
    surface.check_tuple(b)?;
    let ctx = surface.ctx();
    let chi0 = make_chi_state(ctx, 0);
    let chit = make_chi_state(ctx, surface.chi_tilde_exponent() as i64);
    let initial = StateVector::product(&[&chi0, &chit])?;
    let mut state = initial.clone();
    apply_root_unitary(&mut state, surface, b, 0, 1, None)?;
    let phase = initial.inner(&state)?;
    Ok(CircuitRun {
        phase,
        overlap: phase.norm(),
    })
}
