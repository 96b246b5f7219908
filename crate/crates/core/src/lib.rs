//! Simulation of a qubit register whose two-qubit interactions are fixed,
//! diagonal and permanently on, controlled only by timed one-qubit pulses.
//!
//! The crate provides:
//!
//! - an exact state-vector engine with analytic evolution under diagonal
//!   Hamiltonians ([`statevector`], [`phase_poly`]);
//! - the pairwise interaction model with Yukawa-type decay ([`interaction`]);
//! - pulse timelines, Poisson decoupling runs and synchronization windows
//!   ([`schedule`]);
//! - Fourier-transform protocols built from Hadamard ladders over the
//!   always-on background, with exact and stochastic compensation ([`qft`]);
//! - a split-operator Schrodinger solver for linear and quadratic potentials
//!   whose kinetic hop can run on the pulse-built transform ([`schrodinger`]).

pub mod error;
pub mod interaction;
pub mod phase_poly;
pub mod qft;
pub mod schedule;
pub mod schrodinger;
pub mod statevector;

pub use error::{Error, Result};
pub use interaction::{CouplingModel, DecayKind, DecayLaw, PairForm};
pub use phase_poly::PhasePolynomial;
pub use qft::{
    approximate_qft_plan, build_qft_plan, cross_phase_gate, diagonal_summands, ideal_qft,
    phase_oracle, quadratic_phase_gate, Direction, QftMode, QftPlan,
};
pub use schedule::{
    build_decoupling_schedule, build_sync_intervals, compensation_for_decoupling,
    sample_poisson_pulses, signed_pair_phase_schedule, DiagonalAction, PulseEvent, PulseSchedule,
    SyncInterval, MIN_RATE_WINDOW,
};
pub use schrodinger::{
    analytic_free_gaussian, analytic_linear_gaussian, evolve, free_gaussian_amplitude, kinetic_phase, l2_distance,
    make_gaussian, mean_energy, observables, trotter_step, KineticConvention, Observables,
    Potential, QftBackend, SpectralTransform, TrotterConfig, WaveGrid,
};
pub use statevector::{reverse_bits, OneQubitGate, StateVector, MAX_QUBITS};
