//! Exact state-vector representation of a small qubit register.
//!
//! Basis states are indexed by `a = sum_j a_j 2^j`, so qubit `j` is bit `j`
//! of the basis integer. One-qubit gates are instantaneous; evolution under
//! a diagonal Hamiltonian multiplies each amplitude by an exact phase, so no
//! time stepping is ever needed.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::phase_poly::PhasePolynomial;

/// Memory guard: a 24-qubit register already holds 16M amplitudes.
pub const MAX_QUBITS: usize = 24;

const UNITARITY_TOL: f64 = 1e-12;

/// An instantaneous one-qubit gate.
#[derive(Debug, Clone, PartialEq)]
pub enum OneQubitGate {
    Hadamard,
    Not,
    /// diag(1, e^{i theta}).
    PhaseShift(f64),
    /// Arbitrary 2x2 unitary, row-major.
    ArbitraryU([[Complex64; 2]; 2]),
}

impl OneQubitGate {
    /// The gate matrix, row-major.
    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        match self {
            OneQubitGate::Hadamard => {
                let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
                [[h, h], [h, -h]]
            }
            OneQubitGate::Not => [[zero, one], [one, zero]],
            OneQubitGate::PhaseShift(theta) => [[one, zero], [zero, Complex64::cis(*theta)]],
            OneQubitGate::ArbitraryU(u) => *u,
        }
    }

    /// Checks `U U^dag = I` entrywise within 1e-12 (only ArbitraryU can fail).
    pub fn check_unitary(&self) -> Result<()> {
        let u = match self {
            OneQubitGate::ArbitraryU(u) => u,
            _ => return Ok(()),
        };
        let mut worst = 0.0f64;
        for r in 0..2 {
            for c in 0..2 {
                let entry = u[r][0] * u[c][0].conj() + u[r][1] * u[c][1].conj();
                let target = if r == c { 1.0 } else { 0.0 };
                worst = worst.max((entry - target).norm());
            }
        }
        if worst > UNITARITY_TOL {
            return Err(Error::NonUnitaryGate(worst));
        }
        Ok(())
    }
}

/// Complex amplitudes of an `l`-qubit register.
#[derive(Debug, Clone)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// The register prepared in |0...0>.
    pub fn new_register(num_qubits: usize) -> Result<Self> {
        Self::basis_state(num_qubits, 0)
    }

    /// The register prepared in the computational basis state `index`.
    pub fn basis_state(num_qubits: usize, index: usize) -> Result<Self> {
        if num_qubits == 0 || num_qubits > MAX_QUBITS {
            return Err(Error::RegisterSize(num_qubits));
        }
        let n = 1usize << num_qubits;
        if index >= n {
            return Err(Error::BasisOutOfRange { index, num_qubits });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); n];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { num_qubits, amps })
    }

    /// Wraps a normalized amplitude vector of power-of-two length.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let n = amps.len();
        if n == 0 || !n.is_power_of_two() {
            return Err(Error::BadAmplitudeCount(n));
        }
        let num_qubits = n.trailing_zeros() as usize;
        if num_qubits == 0 || num_qubits > MAX_QUBITS {
            return Err(Error::RegisterSize(num_qubits));
        }
        let state = Self { num_qubits, amps };
        let norm = state.norm();
        if (norm - 1.0).abs() > 1e-6 {
            return Err(Error::NotNormalized(norm));
        }
        Ok(state)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    /// Number of amplitudes, 2^num_qubits.
    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut Vec<Complex64> {
        &mut self.amps
    }

    pub fn amplitude(&self, basis: usize) -> Complex64 {
        self.amps[basis]
    }

    pub fn probability(&self, basis: usize) -> f64 {
        self.amps[basis].norm_sqr()
    }

    /// sqrt(sum |amp|^2); 1 for every valid state.
    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit >= self.num_qubits {
            return Err(Error::QubitOutOfRange {
                qubit,
                num_qubits: self.num_qubits,
            });
        }
        Ok(())
    }

    /// Applies `I x ... x U x ... x I` with `U` acting on the given qubit.
    pub fn apply_gate(&mut self, qubit: usize, gate: &OneQubitGate) -> Result<()> {
        self.check_qubit(qubit)?;
        gate.check_unitary()?;
        let step = 1usize << qubit;
        match gate {
            OneQubitGate::Not => {
                for base in (0..self.amps.len()).step_by(2 * step) {
                    for offset in 0..step {
                        self.amps.swap(base + offset, base + offset + step);
                    }
                }
            }
            OneQubitGate::Hadamard => {
                let h = std::f64::consts::FRAC_1_SQRT_2;
                for base in (0..self.amps.len()).step_by(2 * step) {
                    for offset in 0..step {
                        let i = base + offset;
                        let j = i + step;
                        let a = self.amps[i];
                        let b = self.amps[j];
                        self.amps[i] = h * (a + b);
                        self.amps[j] = h * (a - b);
                    }
                }
            }
            OneQubitGate::PhaseShift(theta) => {
                let phase = Complex64::cis(*theta);
                for base in (0..self.amps.len()).step_by(2 * step) {
                    for offset in 0..step {
                        self.amps[base + offset + step] *= phase;
                    }
                }
            }
            OneQubitGate::ArbitraryU(u) => {
                for base in (0..self.amps.len()).step_by(2 * step) {
                    for offset in 0..step {
                        let i = base + offset;
                        let j = i + step;
                        let a = self.amps[i];
                        let b = self.amps[j];
                        self.amps[i] = u[0][0] * a + u[0][1] * b;
                        self.amps[j] = u[1][0] * a + u[1][1] * b;
                    }
                }
            }
        }
        Ok(())
    }

    /// Multiplies each amplitude by `exp(-i duration Phi(a))`. Exact for any
    /// diagonal Hamiltonian, with no step-size considerations.
    pub fn evolve_diagonal(&mut self, phase_fn: &PhasePolynomial, duration: f64) -> Result<()> {
        if duration < 0.0 {
            return Err(Error::NegativeDuration(duration));
        }
        if phase_fn.num_bits() != self.num_qubits {
            return Err(Error::PolynomialWidthMismatch {
                poly: phase_fn.num_bits(),
                register: self.num_qubits,
            });
        }
        if duration == 0.0 {
            return Ok(());
        }
        for (a, amp) in self.amps.iter_mut().enumerate() {
            *amp *= Complex64::cis(-duration * phase_fn.evaluate(a));
        }
        Ok(())
    }

    /// Multiplies the whole state by `exp(-i kappa)`.
    pub(crate) fn apply_global_phase(&mut self, kappa: f64) {
        if kappa == 0.0 {
            return;
        }
        let phase = Complex64::cis(-kappa);
        for amp in &mut self.amps {
            *amp *= phase;
        }
    }

    pub fn inner_product(&self, other: &StateVector) -> Result<Complex64> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::DimensionMismatch(self.num_qubits, other.num_qubits));
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// |<self|other>|^2.
    pub fn fidelity(&self, other: &StateVector) -> Result<f64> {
        Ok(self.inner_product(other)?.norm_sqr())
    }

    /// min over phi of ||self - e^{i phi} other||_2 = sqrt(2 - 2 |<self|other>|).
    pub fn global_phase_aligned_distance(&self, other: &StateVector) -> Result<f64> {
        let overlap = self.inner_product(other)?.norm();
        Ok((2.0 - 2.0 * overlap).max(0.0).sqrt())
    }

    /// The state re-indexed by bit reversal, |a> -> |reverse(a)>.
    pub fn bit_reversed(&self) -> StateVector {
        let l = self.num_qubits;
        let mut amps = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (a, amp) in self.amps.iter().enumerate() {
            amps[reverse_bits(a, l)] = *amp;
        }
        StateVector {
            num_qubits: l,
            amps,
        }
    }
}

/// Reverses the lowest `l` bits of `value`.
pub fn reverse_bits(value: usize, l: usize) -> usize {
    let mut out = 0usize;
    for j in 0..l {
        out |= ((value >> j) & 1) << (l - 1 - j);
    }
    out
}
