//! Split-operator Schrodinger evolution on a power-of-two grid.
//!
//! Units are chosen so that both grains coincide, dq = dp = sqrt(2 pi / N),
//! and the box half-widths are A = B = sqrt(pi N / 2); then dq dp N = 2 pi
//! and the discrete Fourier transform connecting the two representations is
//! exactly the unitary transform of the `qft` module. One first-order step
//! applies the potential phase in position space, hops to momentum space,
//! applies the kinetic phase and hops back:
//!
//!   psi -> F^{-1} . e^{i phi_kin} . F . e^{-i V(q) dt} . psi
//!
//! Transform index b maps to a physical momentum either literally (b dp,
//! which aliases the upper half of the band) or centered, with b >= N/2
//! read as the negative momentum (b - N) dp.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::qft::{build_qft_plan, ideal_qft, Direction, QftMode, QftPlan};
use crate::interaction::CouplingModel;
use crate::statevector::{StateVector, MAX_QUBITS};

/// How transform indices map to kinetic phases.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KineticConvention {
    /// Signed momenta: index b >= N/2 is momentum (b - N) dp. Physically
    /// correct for wave packets with both momentum signs.
    Centered,
    /// Index b taken literally as momentum b dp, giving the phase
    /// -pi b^2 dt / (m N) for b = 0..N-1. Matches `Centered` on the lower
    /// half-band only and aliases the upper half.
    UnsignedIndex,
}

/// External potential; quadratic is the most general form supported.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Potential {
    Free,
    /// V(q) = -f q.
    Linear { f: f64 },
    /// V(q) = m omega^2 q^2 / 2.
    Quadratic { mass: f64, omega: f64 },
}

impl Potential {
    pub fn value(&self, q: f64) -> f64 {
        match self {
            Potential::Free => 0.0,
            Potential::Linear { f } => -f * q,
            Potential::Quadratic { mass, omega } => 0.5 * mass * omega * omega * q * q,
        }
    }

    fn validate(&self) -> Result<()> {
        if let Potential::Quadratic { mass, .. } = self {
            if !(*mass > 0.0) {
                return Err(Error::NonpositiveParameter {
                    name: "mass",
                    value: *mass,
                });
            }
        }
        Ok(())
    }
}

/// Step-size configuration for a full evolution.
#[derive(Debug, Clone, Copy)]
pub struct TrotterConfig {
    pub delta_t: f64,
    pub total_time: f64,
    pub convention: KineticConvention,
}

impl TrotterConfig {
    /// Number of steps; the total time must be an integer multiple of the
    /// step.
    pub fn steps(&self) -> Result<usize> {
        if !(self.delta_t > 0.0) {
            return Err(Error::NonpositiveParameter {
                name: "delta_t",
                value: self.delta_t,
            });
        }
        if self.total_time < 0.0 {
            return Err(Error::NegativeDuration(self.total_time));
        }
        let ratio = self.total_time / self.delta_t;
        let steps = ratio.round();
        if (ratio - steps).abs() > 1e-9 * ratio.max(1.0) {
            return Err(Error::BadTimeStep {
                delta_t: self.delta_t,
                total_time: self.total_time,
            });
        }
        Ok(steps as usize)
    }
}

/// A discretized wavefunction on (-A, A), continuum-normalized:
/// sum |psi_a|^2 dq = 1.
#[derive(Debug, Clone)]
pub struct WaveGrid {
    l: usize,
    samples: Vec<Complex64>,
}

/// Grid spacing sqrt(2 pi / N) for an l-qubit register.
pub fn grid_spacing(l: usize) -> f64 {
    (2.0 * PI / (1usize << l) as f64).sqrt()
}

/// Box half-width sqrt(pi N / 2).
pub fn half_width(l: usize) -> f64 {
    (PI * (1usize << l) as f64 / 2.0).sqrt()
}

impl WaveGrid {
    pub fn num_points(&self) -> usize {
        self.samples.len()
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn delta_q(&self) -> f64 {
        grid_spacing(self.l)
    }

    pub fn delta_p(&self) -> f64 {
        grid_spacing(self.l)
    }

    pub fn half_width(&self) -> f64 {
        half_width(self.l)
    }

    /// Coordinate of sample `a`: q_a = a dq - A.
    pub fn q(&self, a: usize) -> f64 {
        a as f64 * self.delta_q() - self.half_width()
    }

    /// Signed momentum of transform index `b` (centered convention).
    pub fn momentum(&self, b: usize) -> f64 {
        let n = self.num_points();
        let signed = if b < n / 2 {
            b as f64
        } else {
            b as f64 - n as f64
        };
        signed * self.delta_p()
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    /// sum |psi|^2 dq.
    pub fn norm(&self) -> f64 {
        self.samples.iter().map(|s| s.norm_sqr()).sum::<f64>() * self.delta_q()
    }

    fn normalize(&mut self) {
        let norm = self.norm().sqrt();
        if norm > 0.0 {
            for s in &mut self.samples {
                *s /= norm;
            }
        }
    }

    /// The amplitude view: amp_a = psi_a sqrt(dq), which is unit-norm.
    pub fn to_state_vector(&self) -> Result<StateVector> {
        let scale = self.delta_q().sqrt();
        StateVector::from_amplitudes(self.samples.iter().map(|s| s * scale).collect())
    }

    pub fn from_state_vector(state: &StateVector) -> Self {
        let l = state.num_qubits();
        let scale = 1.0 / grid_spacing(l).sqrt();
        WaveGrid {
            l,
            samples: state.amplitudes().iter().map(|a| a * scale).collect(),
        }
    }
}

fn check_l(l: usize) -> Result<()> {
    if l == 0 || l > MAX_QUBITS {
        return Err(Error::RegisterSize(l));
    }
    Ok(())
}

fn check_containment(center: f64, spread: f64, l: usize) -> Result<()> {
    if center.abs() + 4.0 * spread >= half_width(l) {
        return Err(Error::PacketClipped {
            center,
            spread,
            half_width: half_width(l),
        });
    }
    Ok(())
}

/// A normalized Gaussian packet, psi(q) proportional to
/// exp(-(q - q0)^2 / (4 sigma^2) + i p0 q).
pub fn make_gaussian(l: usize, q0: f64, p0: f64, sigma: f64) -> Result<WaveGrid> {
    check_l(l)?;
    if !(sigma > 0.0) {
        return Err(Error::NonpositiveParameter {
            name: "sigma",
            value: sigma,
        });
    }
    check_containment(q0, sigma, l)?;
    let n = 1usize << l;
    let mut grid = WaveGrid {
        l,
        samples: vec![Complex64::new(0.0, 0.0); n],
    };
    for a in 0..n {
        let q = grid.q(a);
        let envelope = (-(q - q0).powi(2) / (4.0 * sigma * sigma)).exp();
        grid.samples[a] = envelope * Complex64::cis(p0 * q);
    }
    grid.normalize();
    Ok(grid)
}

/// Closed-form free evolution of the packet produced by [`make_gaussian`],
/// up to overall normalization:
/// psi(q, t) = sigma / sqrt(sigma^2 + i t / 2m)
///             exp(-(q - q0 - p0 t / m)^2 / 4 (sigma^2 + i t / 2m))
///             exp(i (p0 q - p0^2 t / 2m)).
pub fn free_gaussian_amplitude(
    q: f64,
    t: f64,
    q0: f64,
    p0: f64,
    sigma: f64,
    mass: f64,
) -> Complex64 {
    let a = Complex64::new(sigma * sigma, t / (2.0 * mass));
    let b = q - q0 - p0 * t / mass;
    let envelope = (-(b * b) / (4.0 * a)).exp() * (sigma / a.sqrt());
    envelope * Complex64::cis(p0 * q - p0 * p0 * t / (2.0 * mass))
}

/// The exact free-particle propagation of [`make_gaussian`] sampled on the
/// grid, used as a validation reference.
pub fn analytic_free_gaussian(
    l: usize,
    t: f64,
    q0: f64,
    p0: f64,
    sigma: f64,
    mass: f64,
) -> Result<WaveGrid> {
    check_l(l)?;
    if !(mass > 0.0) {
        return Err(Error::NonpositiveParameter {
            name: "mass",
            value: mass,
        });
    }
    let spread_t = sigma * (1.0 + (t / (2.0 * mass * sigma * sigma)).powi(2)).sqrt();
    check_containment(q0 + p0 * t / mass, spread_t, l)?;
    let n = 1usize << l;
    let mut grid = WaveGrid {
        l,
        samples: vec![Complex64::new(0.0, 0.0); n],
    };
    for a in 0..n {
        grid.samples[a] = free_gaussian_amplitude(grid.q(a), t, q0, p0, sigma, mass);
    }
    grid.normalize();
    Ok(grid)
}

/// Exact evolution of [`make_gaussian`] under the linear potential
/// V(q) = -f q: the accelerating-frame transform of the free solution,
/// psi(q, t) = e^{i (f t q - f^2 t^3 / 6m)} psi_free(q - f t^2 / 2m, t).
pub fn analytic_linear_gaussian(
    l: usize,
    t: f64,
    q0: f64,
    p0: f64,
    sigma: f64,
    mass: f64,
    f: f64,
) -> Result<WaveGrid> {
    check_l(l)?;
    if !(mass > 0.0) {
        return Err(Error::NonpositiveParameter {
            name: "mass",
            value: mass,
        });
    }
    let shift = f * t * t / (2.0 * mass);
    let global = -f * f * t.powi(3) / (6.0 * mass);
    let spread_t = sigma * (1.0 + (t / (2.0 * mass * sigma * sigma)).powi(2)).sqrt();
    check_containment(q0 + p0 * t / mass + shift, spread_t, l)?;
    let n = 1usize << l;
    let mut grid = WaveGrid {
        l,
        samples: vec![Complex64::new(0.0, 0.0); n],
    };
    for a in 0..n {
        let q = grid.q(a);
        grid.samples[a] = Complex64::cis(f * t * q + global)
            * free_gaussian_amplitude(q - shift, t, q0, p0, sigma, mass);
    }
    grid.normalize();
    Ok(grid)
}

/// Kinetic phase exponents per transform index; the step multiplies
/// amplitude b by exp(i phase[b]).
pub fn kinetic_phase(
    l: usize,
    mass: f64,
    delta_t: f64,
    convention: KineticConvention,
) -> Vec<f64> {
    let n = 1usize << l;
    let dp = grid_spacing(l);
    (0..n)
        .map(|b| match convention {
            KineticConvention::UnsignedIndex => {
                -PI * (b * b) as f64 * delta_t / (mass * n as f64)
            }
            KineticConvention::Centered => {
                let signed = if b < n / 2 { b as f64 } else { b as f64 - n as f64 };
                let p = signed * dp;
                -p * p * delta_t / (2.0 * mass)
            }
        })
        .collect()
}

/// Which transform implementation drives the kinetic hop.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QftBackend {
    /// FFT reference transform.
    Reference,
    /// The deterministic pulse-built transform plan; demonstrates the full
    /// evolution running on the fixed-interaction machine. Limited to 6
    /// qubits for cost.
    PulseOracle,
}

/// A forward/inverse transform pair for the kinetic hop.
pub struct SpectralTransform {
    backend: QftBackend,
    plans: Option<(QftPlan, QftPlan)>,
}

impl SpectralTransform {
    pub fn new(backend: QftBackend, l: usize) -> Result<Self> {
        check_l(l)?;
        let plans = match backend {
            QftBackend::Reference => None,
            QftBackend::PulseOracle => {
                if l > 6 {
                    return Err(Error::BackendSize {
                        requested: l,
                        max: 6,
                    });
                }
                let model = CouplingModel::canonical_qft(l)?;
                let forward = build_qft_plan(
                    l,
                    Direction::Forward,
                    QftMode::OracleCompensated,
                    &model,
                    1.0,
                    0,
                )?;
                let inverse = build_qft_plan(
                    l,
                    Direction::Inverse,
                    QftMode::OracleCompensated,
                    &model,
                    1.0,
                    0,
                )?;
                Some((forward, inverse))
            }
        };
        Ok(SpectralTransform { backend, plans })
    }

    pub fn backend(&self) -> QftBackend {
        self.backend
    }

    fn forward(&self, state: &mut StateVector) -> Result<()> {
        match &self.plans {
            None => {
                ideal_qft(state, Direction::Forward);
                Ok(())
            }
            Some((forward, _)) => {
                forward.apply(state)?;
                *state = state.bit_reversed();
                Ok(())
            }
        }
    }

    fn inverse(&self, state: &mut StateVector) -> Result<()> {
        match &self.plans {
            None => {
                ideal_qft(state, Direction::Inverse);
                Ok(())
            }
            Some((_, inverse)) => {
                inverse.apply(state)?;
                *state = state.bit_reversed();
                Ok(())
            }
        }
    }
}

/// One first-order step: potential phase, forward hop, kinetic phase,
/// inverse hop. Exactly norm-preserving.
pub fn trotter_step(
    grid: &mut WaveGrid,
    potential: &Potential,
    mass: f64,
    delta_t: f64,
    convention: KineticConvention,
    transform: &SpectralTransform,
) -> Result<()> {
    potential.validate()?;
    if !(mass > 0.0) {
        return Err(Error::NonpositiveParameter {
            name: "mass",
            value: mass,
        });
    }
    for a in 0..grid.num_points() {
        let q = grid.q(a);
        grid.samples[a] *= Complex64::cis(-potential.value(q) * delta_t);
    }
    let mut state = grid.to_state_vector()?;
    transform.forward(&mut state)?;
    let phases = kinetic_phase(grid.l, mass, delta_t, convention);
    for (amp, phase) in state.amplitudes_mut().iter_mut().zip(&phases) {
        *amp *= Complex64::cis(*phase);
    }
    transform.inverse(&mut state)?;
    *grid = WaveGrid::from_state_vector(&state);
    Ok(())
}

/// Composes `total_time / delta_t` steps.
pub fn evolve(
    grid: &mut WaveGrid,
    potential: &Potential,
    mass: f64,
    config: &TrotterConfig,
    transform: &SpectralTransform,
) -> Result<()> {
    let steps = config.steps()?;
    for _ in 0..steps {
        trotter_step(grid, potential, mass, config.delta_t, config.convention, transform)?;
    }
    Ok(())
}

/// Norm and first two position/momentum moments of a grid state.
#[derive(Debug, Clone, Copy)]
pub struct Observables {
    pub norm: f64,
    pub mean_q: f64,
    pub mean_q2: f64,
    pub mean_p: f64,
    pub mean_p2: f64,
}

/// Quadrature moments; momentum moments go through one reference transform
/// with centered momenta.
pub fn observables(grid: &WaveGrid) -> Result<Observables> {
    let norm = grid.norm();
    let dq = grid.delta_q();
    let mut mean_q = 0.0;
    let mut mean_q2 = 0.0;
    for (a, s) in grid.samples.iter().enumerate() {
        let w = s.norm_sqr() * dq / norm;
        let q = grid.q(a);
        mean_q += w * q;
        mean_q2 += w * q * q;
    }
    let mut state = grid.to_state_vector()?;
    ideal_qft(&mut state, Direction::Forward);
    let mut mean_p = 0.0;
    let mut mean_p2 = 0.0;
    let weight_total: f64 = state.amplitudes().iter().map(|a| a.norm_sqr()).sum();
    for (b, amp) in state.amplitudes().iter().enumerate() {
        let w = amp.norm_sqr() / weight_total;
        let p = grid.momentum(b);
        mean_p += w * p;
        mean_p2 += w * p * p;
    }
    Ok(Observables {
        norm,
        mean_q,
        mean_q2,
        mean_p,
        mean_p2,
    })
}

/// <p^2>/2m + <V(q)>.
pub fn mean_energy(grid: &WaveGrid, potential: &Potential, mass: f64) -> Result<f64> {
    let obs = observables(grid)?;
    let dq = grid.delta_q();
    let mut mean_v = 0.0;
    for (a, s) in grid.samples.iter().enumerate() {
        mean_v += s.norm_sqr() * dq / obs.norm * potential.value(grid.q(a));
    }
    Ok(obs.mean_p2 / (2.0 * mass) + mean_v)
}

/// L2 distance sqrt(sum |psi - phi|^2 dq) between two grids of equal size.
pub fn l2_distance(a: &WaveGrid, b: &WaveGrid) -> Result<f64> {
    if a.l != b.l {
        return Err(Error::DimensionMismatch(a.l, b.l));
    }
    let sum: f64 = a
        .samples
        .iter()
        .zip(&b.samples)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum();
    Ok((sum * a.delta_q()).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_constants_are_consistent() {
        for l in [3usize, 8, 12] {
            let n = (1usize << l) as f64;
            let dq = grid_spacing(l);
            assert!((dq * dq * n - 2.0 * PI).abs() < 1e-12);
            assert!((half_width(l) - n * dq / 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn gaussian_is_normalized_and_centered() {
        let grid = make_gaussian(8, 1.5, 0.0, 1.0).unwrap();
        assert!((grid.norm() - 1.0).abs() < 1e-10);
        let obs = observables(&grid).unwrap();
        assert!((obs.mean_q - 1.5).abs() < grid.delta_q());
        let var = obs.mean_q2 - obs.mean_q * obs.mean_q;
        assert!((var - 1.0).abs() < 0.02, "variance {var}");
    }

    #[test]
    fn centered_gaussian_is_real_and_even() {
        let grid = make_gaussian(6, 0.0, 0.0, 0.7).unwrap();
        let n = grid.num_points();
        for a in 0..n {
            assert!(grid.samples()[a].im.abs() < 1e-12);
            // Mirror sample around the center (q = 0 lies at index n/2).
            let mirror = n - a;
            if mirror < n {
                assert!(
                    (grid.samples()[a].re - grid.samples()[mirror].re).abs() < 1e-9,
                    "index {a}"
                );
            }
        }
    }

    #[test]
    fn clipped_packet_is_rejected() {
        let a = half_width(4);
        assert!(matches!(
            make_gaussian(4, a - 0.5, 0.0, 1.0),
            Err(Error::PacketClipped { .. })
        ));
    }

    #[test]
    fn kinetic_phase_conventions() {
        // l = 3, m = 1, dt = 1: index 1 gives -pi/8 under both conventions.
        let lit = kinetic_phase(3, 1.0, 1.0, KineticConvention::UnsignedIndex);
        let cen = kinetic_phase(3, 1.0, 1.0, KineticConvention::Centered);
        assert_eq!(lit[0], 0.0);
        assert_eq!(cen[0], 0.0);
        assert!((lit[1] + PI / 8.0).abs() < 1e-12);
        assert!((cen[1] + PI / 8.0).abs() < 1e-12);
        // They agree on the whole lower half-band ...
        for b in 0..4 {
            assert!((lit[b] - cen[b]).abs() < 1e-12);
        }
        // ... and diverge at the top index: -pi 49/8 vs -pi/8.
        assert!((lit[7] + PI * 49.0 / 8.0).abs() < 1e-12);
        assert!((cen[7] + PI / 8.0).abs() < 1e-12);
    }

    #[test]
    fn free_steps_compose_exactly() {
        let transform = SpectralTransform::new(QftBackend::Reference, 6).unwrap();
        let mut twice = make_gaussian(6, 0.0, 1.0, 0.8).unwrap();
        let mut once = twice.clone();
        for _ in 0..2 {
            trotter_step(&mut twice, &Potential::Free, 1.0, 0.1, KineticConvention::Centered, &transform).unwrap();
        }
        trotter_step(&mut once, &Potential::Free, 1.0, 0.2, KineticConvention::Centered, &transform).unwrap();
        assert!(l2_distance(&twice, &once).unwrap() < 1e-12);
    }

    #[test]
    fn free_step_matches_analytic_spreading() {
        let transform = SpectralTransform::new(QftBackend::Reference, 8).unwrap();
        let mut grid = make_gaussian(8, 0.0, 0.0, 1.0).unwrap();
        let config = TrotterConfig {
            delta_t: 1.0 / 64.0,
            total_time: 1.0,
            convention: KineticConvention::Centered,
        };
        evolve(&mut grid, &Potential::Free, 1.0, &config, &transform).unwrap();
        let reference = analytic_free_gaussian(8, 1.0, 0.0, 0.0, 1.0, 1.0).unwrap();
        assert!(l2_distance(&grid, &reference).unwrap() < 1e-3);
    }

    #[test]
    fn harmonic_step_preserves_norm() {
        let transform = SpectralTransform::new(QftBackend::Reference, 7).unwrap();
        let mut grid = make_gaussian(7, 1.0, 0.0, 0.8).unwrap();
        let v = Potential::Quadratic { mass: 1.0, omega: 1.0 };
        trotter_step(&mut grid, &v, 1.0, 0.01, KineticConvention::Centered, &transform).unwrap();
        assert!((grid.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_total_time_is_identity() {
        let transform = SpectralTransform::new(QftBackend::Reference, 6).unwrap();
        let mut grid = make_gaussian(6, 0.5, 1.0, 0.8).unwrap();
        let before = grid.clone();
        let config = TrotterConfig {
            delta_t: 0.25,
            total_time: 0.0,
            convention: KineticConvention::Centered,
        };
        evolve(&mut grid, &Potential::Free, 1.0, &config, &transform).unwrap();
        assert!(l2_distance(&grid, &before).unwrap() == 0.0);
    }

    #[test]
    fn non_integer_step_count_is_rejected() {
        let config = TrotterConfig {
            delta_t: 0.3,
            total_time: 1.0,
            convention: KineticConvention::Centered,
        };
        assert!(matches!(config.steps(), Err(Error::BadTimeStep { .. })));
    }

    #[test]
    fn analytic_reference_basics() {
        let initial = analytic_free_gaussian(8, 0.0, 1.0, 2.0, 0.9, 1.0).unwrap();
        let made = make_gaussian(8, 1.0, 2.0, 0.9).unwrap();
        assert!(l2_distance(&initial, &made).unwrap() < 1e-12);
        for t in [0.5, 1.0, 2.0] {
            let grid = analytic_free_gaussian(8, t, 1.0, 2.0, 0.9, 1.0).unwrap();
            assert!((grid.norm() - 1.0).abs() < 1e-8);
            let obs = observables(&grid).unwrap();
            assert!((obs.mean_q - (1.0 + 2.0 * t)).abs() < grid.delta_q());
        }
    }

    #[test]
    fn symmetric_state_has_zero_mean_momentum() {
        let grid = make_gaussian(8, 0.0, 0.0, 1.0).unwrap();
        let obs = observables(&grid).unwrap();
        assert!(obs.mean_p.abs() < 1e-8);
        assert!((obs.norm - 1.0).abs() < 1e-8);
    }

    #[test]
    fn linear_potential_kicks_momentum() {
        let transform = SpectralTransform::new(QftBackend::Reference, 8).unwrap();
        let mut grid = make_gaussian(8, -2.0, 0.0, 1.0).unwrap();
        let f = 0.5;
        let config = TrotterConfig {
            delta_t: 1.0 / 128.0,
            total_time: 1.0,
            convention: KineticConvention::Centered,
        };
        evolve(&mut grid, &Potential::Linear { f }, 1.0, &config, &transform).unwrap();
        let obs = observables(&grid).unwrap();
        assert!(
            (obs.mean_p - f).abs() < 0.01 * f,
            "momentum kick {} vs {f}",
            obs.mean_p
        );
    }

    #[test]
    fn pulse_backend_matches_reference() {
        let l = 4;
        let reference = SpectralTransform::new(QftBackend::Reference, l).unwrap();
        let pulse = SpectralTransform::new(QftBackend::PulseOracle, l).unwrap();
        let mut a = make_gaussian(l, 0.0, 0.5, 0.6).unwrap();
        let mut b = a.clone();
        let v = Potential::Quadratic { mass: 1.0, omega: 1.0 };
        trotter_step(&mut a, &v, 1.0, 0.05, KineticConvention::Centered, &reference).unwrap();
        trotter_step(&mut b, &v, 1.0, 0.05, KineticConvention::Centered, &pulse).unwrap();
        assert!(l2_distance(&a, &b).unwrap() < 1e-10);
    }

    #[test]
    fn pulse_backend_size_guard() {
        assert!(matches!(
            SpectralTransform::new(QftBackend::PulseOracle, 7),
            Err(Error::BackendSize { requested: 7, max: 6 })
        ));
    }
}
