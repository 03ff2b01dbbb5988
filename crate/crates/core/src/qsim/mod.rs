//! Statevector simulation of the root-phase circuit and its uses:
//! eigenphase extraction, phase estimation, and approximate point counting.

pub mod circuit;
pub mod qpe;
pub mod state;

pub use circuit::{apply_root_unitary, run_root_circuit, CircuitRun};
pub use qpe::{
    approx_count, estimate_trace, phase_estimation, qft_binary, qpe_distribution, CountEstimate,
    PhaseEstimate, QpeOptions, TraceEstimate, TupleSelection, MAX_ANCILLA_BITS,
};
pub use state::{make_chi_state, qft_field_matrix, StateVector, MAX_STATE_AMPS};
