//! Pulse timelines over the always-on interaction.
//!
//! A schedule is a time-ordered list of instantaneous one-qubit gates on top
//! of the permanent background Hamiltonian. Between events the register
//! evolves exactly under the diagonal background; gates fire in list order,
//! so simultaneous events have a well-defined sequence (builders emit NOTs
//! before Hadamards and ascending qubit indices at equal timestamps).
//!
//! The module also builds the decoupling runs: rapid Poisson-timed NOT
//! pulses on every qubit except a `separated` pair average the unwanted
//! couplings down to bit-independent constants plus linear terms, leaving
//! the separated pair's quadratic phase intact. A spectator spends about
//! half the window in each bit value, so a spectator-separated coupling
//! contributes half its weight times the separated bit, and a
//! spectator-spectator coupling a quarter of its weight; both are
//! compensable by one-qubit phase gates.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp};

use crate::error::{Error, Result};
use crate::interaction::CouplingModel;
use crate::phase_poly::PhasePolynomial;
use crate::statevector::{OneQubitGate, StateVector};

/// Quantifies the "rate times window much greater than one" contract:
/// decoupling builders reject windows with `rate * window < 50`.
pub const MIN_RATE_WINDOW: f64 = 50.0;

/// One instantaneous gate at a point in time.
#[derive(Debug, Clone, PartialEq)]
pub struct PulseEvent {
    pub time: f64,
    pub qubit: usize,
    pub gate: OneQubitGate,
}

impl PulseEvent {
    pub fn new(time: f64, qubit: usize, gate: OneQubitGate) -> Self {
        Self { time, qubit, gate }
    }
}

/// A pulse timeline over a fixed background model.
#[derive(Debug, Clone)]
pub struct PulseSchedule {
    model: CouplingModel,
    total_time: f64,
    events: Vec<PulseEvent>,
    /// Extra constant exponent kappa; the final state is multiplied by
    /// `exp(-i kappa)`. Used by compensation bookkeeping.
    global_phase: f64,
}

impl PulseSchedule {
    pub fn new(model: CouplingModel, total_time: f64) -> Result<Self> {
        if !(total_time >= 0.0) || !total_time.is_finite() {
            return Err(Error::NegativeDuration(total_time));
        }
        Ok(Self {
            model,
            total_time,
            events: Vec::new(),
            global_phase: 0.0,
        })
    }

    /// Builds a schedule from pre-ordered events, validating span and order.
    pub fn from_parts(
        model: CouplingModel,
        total_time: f64,
        events: Vec<PulseEvent>,
        global_phase: f64,
    ) -> Result<Self> {
        let mut schedule = Self::new(model, total_time)?;
        for event in events {
            schedule.push(event)?;
        }
        schedule.global_phase = global_phase;
        Ok(schedule)
    }

    pub fn model(&self) -> &CouplingModel {
        &self.model
    }

    pub fn total_time(&self) -> f64 {
        self.total_time
    }

    pub fn events(&self) -> &[PulseEvent] {
        &self.events
    }

    pub fn global_phase(&self) -> f64 {
        self.global_phase
    }

    pub fn add_global_phase(&mut self, kappa: f64) {
        self.global_phase += kappa;
    }

    /// Appends an event; times must be non-decreasing and within the span.
    pub fn push(&mut self, event: PulseEvent) -> Result<()> {
        if !event.time.is_finite() || event.time < 0.0 || event.time > self.total_time {
            return Err(Error::EventOutOfSpan {
                time: event.time,
                total_time: self.total_time,
            });
        }
        if let Some(last) = self.events.last() {
            if event.time < last.time {
                return Err(Error::EventOutOfOrder {
                    time: event.time,
                    last: last.time,
                });
            }
        }
        if event.qubit >= self.model.num_qubits() {
            return Err(Error::QubitOutOfRange {
                qubit: event.qubit,
                num_qubits: self.model.num_qubits(),
            });
        }
        self.events.push(event);
        Ok(())
    }

    /// Concatenates `other` after this schedule's span.
    pub fn append(&mut self, other: &PulseSchedule) -> Result<()> {
        let offset = self.total_time;
        self.total_time += other.total_time;
        for event in &other.events {
            self.push(PulseEvent::new(event.time + offset, event.qubit, event.gate.clone()))?;
        }
        self.global_phase += other.global_phase;
        Ok(())
    }

    /// Exact simulation: alternates analytic diagonal evolution over the
    /// inter-event gaps with instantaneous gates, in list order.
    ///
    /// Runs of NOT and phase events are folded into a single diagonal block
    /// (a bit-flip mask plus an accumulated per-basis phase), which is
    /// applied once when a non-diagonal gate or the end of the span is
    /// reached. This is exact, not an approximation.
    pub fn simulate(&self, input: &StateVector) -> Result<StateVector> {
        if input.num_qubits() != self.model.num_qubits() {
            return Err(Error::DimensionMismatch(
                input.num_qubits(),
                self.model.num_qubits(),
            ));
        }
        let n = input.len();
        let table = self.model.hamiltonian_polynomial()?.phase_table();
        let mut state = input.clone();
        let mut scratch = vec![Complex64::new(0.0, 0.0); n];
        let mut theta = vec![0.0f64; n];
        let mut mask = 0usize;
        let mut dirty = false;
        let mut cursor = 0.0f64;

        for event in &self.events {
            let gap = event.time - cursor;
            if gap > 0.0 {
                for (a, th) in theta.iter_mut().enumerate() {
                    *th += gap * table[a ^ mask];
                }
                cursor = event.time;
                dirty = true;
            }
            match &event.gate {
                OneQubitGate::Not => {
                    mask ^= 1 << event.qubit;
                    dirty = true;
                }
                OneQubitGate::PhaseShift(angle) => {
                    let bit = 1usize << event.qubit;
                    for (a, th) in theta.iter_mut().enumerate() {
                        if (a ^ mask) & bit != 0 {
                            *th -= angle;
                        }
                    }
                    dirty = true;
                }
                gate => {
                    if dirty {
                        flush_block(state.amplitudes_mut(), &mut scratch, &mut theta, &mut mask);
                        dirty = false;
                    }
                    state.apply_gate(event.qubit, gate)?;
                }
            }
        }
        let gap = self.total_time - cursor;
        if gap > 0.0 {
            for (a, th) in theta.iter_mut().enumerate() {
                *th += gap * table[a ^ mask];
            }
            dirty = true;
        }
        if dirty {
            flush_block(state.amplitudes_mut(), &mut scratch, &mut theta, &mut mask);
        }
        state.apply_global_phase(self.global_phase);
        Ok(state)
    }

    /// For schedules without Hadamard or general gates the whole timeline is
    /// one diagonal block: basis state `a` ends at `a ^ mask` (the mask is 0
    /// for any bit-restoring run) having acquired exponent `theta[a]`.
    pub fn diagonal_action(&self) -> Result<DiagonalAction> {
        let n = 1usize << self.model.num_qubits();
        let table = self.model.hamiltonian_polynomial()?.phase_table();
        let mut theta = vec![self.global_phase; n];
        let mut mask = 0usize;
        let mut cursor = 0.0f64;
        for event in &self.events {
            let gap = event.time - cursor;
            if gap > 0.0 {
                for (a, th) in theta.iter_mut().enumerate() {
                    *th += gap * table[a ^ mask];
                }
                cursor = event.time;
            }
            match &event.gate {
                OneQubitGate::Not => mask ^= 1 << event.qubit,
                OneQubitGate::PhaseShift(angle) => {
                    let bit = 1usize << event.qubit;
                    for (a, th) in theta.iter_mut().enumerate() {
                        if (a ^ mask) & bit != 0 {
                            *th -= angle;
                        }
                    }
                }
                _ => return Err(Error::NonDiagonalSchedule),
            }
        }
        let gap = self.total_time - cursor;
        if gap > 0.0 {
            for (a, th) in theta.iter_mut().enumerate() {
                *th += gap * table[a ^ mask];
            }
        }
        Ok(DiagonalAction { theta, mask })
    }

    /// Line-oriented export, one event per line in application order:
    /// `time qubit gate [param...]`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for event in &self.events {
            out.push_str(&fmt_f64(event.time));
            out.push(' ');
            out.push_str(&event.qubit.to_string());
            match &event.gate {
                OneQubitGate::Hadamard => out.push_str(" h"),
                OneQubitGate::Not => out.push_str(" not"),
                OneQubitGate::PhaseShift(angle) => {
                    out.push_str(" phase ");
                    out.push_str(&fmt_f64(*angle));
                }
                OneQubitGate::ArbitraryU(u) => {
                    out.push_str(" u");
                    for row in u {
                        for entry in row {
                            out.push(' ');
                            out.push_str(&fmt_f64(entry.re));
                            out.push(' ');
                            out.push_str(&fmt_f64(entry.im));
                        }
                    }
                }
            }
            out.push('\n');
        }
        out
    }
}

/// The effect of a gate-diagonal schedule: `|a> -> exp(-i theta[a]) |a ^ mask>`.
#[derive(Debug, Clone)]
pub struct DiagonalAction {
    pub theta: Vec<f64>,
    pub mask: usize,
}

fn flush_block(
    amps: &mut Vec<Complex64>,
    scratch: &mut Vec<Complex64>,
    theta: &mut [f64],
    mask: &mut usize,
) {
    for (a, amp) in amps.iter().enumerate() {
        scratch[a ^ *mask] = amp * Complex64::cis(-theta[a]);
    }
    std::mem::swap(amps, scratch);
    theta.fill(0.0);
    *mask = 0;
}

fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Strictly increasing times in the open window with exponential(rate)
/// inter-arrivals; deterministic for a fixed seed.
pub fn sample_poisson_pulses(rate: f64, window: (f64, f64), seed: u64) -> Result<Vec<f64>> {
    if !(rate > 0.0) {
        return Err(Error::NonpositiveRate(rate));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(sample_poisson_with(rate, window, &mut rng))
}

fn sample_poisson_with(rate: f64, window: (f64, f64), rng: &mut ChaCha8Rng) -> Vec<f64> {
    let (start, end) = window;
    let mut times = Vec::new();
    if end <= start {
        return times;
    }
    let exp = Exp::new(rate).expect("positive rate");
    let mut t = start;
    loop {
        t += exp.sample(rng).max(f64::MIN_POSITIVE);
        if t >= end {
            return times;
        }
        times.push(t);
    }
}

/// Resamples the window until the pulse count is even, so the bit is
/// restored at the window's end without a deterministic extra pulse.
pub(crate) fn sample_poisson_even(rate: f64, window: (f64, f64), rng: &mut ChaCha8Rng) -> Vec<f64> {
    loop {
        let times = sample_poisson_with(rate, window, rng);
        if times.len() % 2 == 0 {
            return times;
        }
    }
}

/// Poisson NOT pulses on every qubit except the separated pair; a final NOT
/// at the window end restores any qubit with an odd pulse count.
pub fn build_decoupling_schedule(
    model: &CouplingModel,
    separated: (usize, usize),
    rate: f64,
    duration: f64,
    seed: u64,
) -> Result<PulseSchedule> {
    let (j, k) = separated;
    model.quadratic_rate(j, k)?; // validates the pair indices
    if !(rate > 0.0) {
        return Err(Error::NonpositiveRate(rate));
    }
    if rate * duration < MIN_RATE_WINDOW {
        return Err(Error::RateTooLow {
            rate,
            window: duration,
            min: MIN_RATE_WINDOW,
        });
    }
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let mut pulses: Vec<(f64, usize)> = Vec::new();
    for p in 0..model.num_qubits() {
        if p == j || p == k {
            continue;
        }
        let sub_seed = master.random::<u64>();
        let times = sample_poisson_pulses(rate, (0.0, duration), sub_seed)?;
        let odd = times.len() % 2 == 1;
        pulses.extend(times.into_iter().map(|t| (t, p)));
        if odd {
            pulses.push((duration, p));
        }
    }
    pulses.sort_by(|a, b| a.partial_cmp(b).expect("finite times"));
    let mut schedule = PulseSchedule::new(model.clone(), duration)?;
    for (time, qubit) in pulses {
        schedule.push(PulseEvent::new(time, qubit, OneQubitGate::Not))?;
    }
    Ok(schedule)
}

/// The negative of the expected extraneous phase of a decoupling run:
/// everything involving at least one spectator, with spectator bits averaged
/// to one half. Linear and constant terms only; the separated pair's own
/// interaction is left untouched.
pub fn compensation_for_decoupling(
    model: &CouplingModel,
    separated: (usize, usize),
    duration: f64,
) -> Result<PhasePolynomial> {
    let (j, k) = separated;
    model.quadratic_rate(j, k)?;
    let mut poly = PhasePolynomial::zero(model.num_qubits());
    for (u, v) in model.pairs() {
        if (u == j && v == k) || (u == k && v == j) {
            continue;
        }
        let pp = model.pair_polynomial(u, v)?;
        let c = pp.constant();
        let q = pp.quadratic(u, v);
        let u_sep = u == j || u == k;
        let v_sep = v == j || v == k;
        if !u_sep && !v_sep {
            poly.add_constant(c + pp.linear(u) / 2.0 + pp.linear(v) / 2.0 + q / 4.0);
        } else {
            let (sep, spect) = if u_sep { (u, v) } else { (v, u) };
            poly.add_constant(c + pp.linear(spect) / 2.0);
            poly.add_linear(sep, pp.linear(sep) + q / 2.0);
        }
    }
    poly.scale(-duration);
    Ok(poly)
}

/// Expected accumulated exponent of a full decoupling run, including the
/// separated pair's own interaction. `conj_first` accounts for a NOT
/// conjugation of `separated.0` over the whole window.
pub(crate) fn expected_run_exponent(
    model: &CouplingModel,
    separated: (usize, usize),
    conj_first: bool,
    duration: f64,
) -> Result<PhasePolynomial> {
    let (j, k) = separated;
    let mut poly = PhasePolynomial::zero(model.num_qubits());
    for (u, v) in model.pairs() {
        let pp = model.pair_polynomial(u, v)?;
        let c = pp.constant();
        let q = pp.quadratic(u, v);
        let u_sep = u == j || u == k;
        let v_sep = v == j || v == k;
        if u_sep && v_sep {
            // The separated pair itself: exact, with x_j possibly inverted.
            let (lj, lk) = (pp.linear(j), pp.linear(k));
            if conj_first {
                poly.add_constant(c + lj);
                poly.add_linear(j, -lj);
                poly.add_linear(k, lk + q);
                poly.add_quadratic(j, k, -q);
            } else {
                poly.add_constant(c);
                poly.add_linear(j, lj);
                poly.add_linear(k, lk);
                poly.add_quadratic(j, k, q);
            }
        } else if u_sep || v_sep {
            let (sep, spect) = if u_sep { (u, v) } else { (v, u) };
            let weight = pp.linear(sep) + q / 2.0;
            poly.add_constant(c + pp.linear(spect) / 2.0);
            if conj_first && sep == j {
                poly.add_constant(weight);
                poly.add_linear(j, -weight);
            } else {
                poly.add_linear(sep, weight);
            }
        } else {
            poly.add_constant(c + pp.linear(u) / 2.0 + pp.linear(v) / 2.0 + q / 4.0);
        }
    }
    poly.scale(duration);
    Ok(poly)
}

/// A decoupling run tuned to add exactly `c * x_j x_k` to the phase
/// exponent, for either sign of `c`.
///
/// When the sign of `c` matches the pair's quadratic rate, the run lasts
/// `|c| / |rate|`. Otherwise the first qubit is conjugated by NOTs around
/// the window, which flips the quadratic sign at the cost of a linear term.
/// Phase gates at the window end and a recorded constant cancel both the
/// conjugation remainder and the expected spectator averages.
pub fn signed_pair_phase_schedule(
    model: &CouplingModel,
    pair: (usize, usize),
    c: f64,
    rate: f64,
    seed: u64,
) -> Result<PulseSchedule> {
    let (j, k) = pair;
    let q_rate = model.quadratic_rate(j, k)?;
    if q_rate.abs() < 1e-15 {
        return Err(Error::ZeroCoupling(j, k));
    }
    if c == 0.0 {
        return PulseSchedule::new(model.clone(), 0.0);
    }
    let duration = (c / q_rate).abs();
    let conjugate = (c < 0.0) != (q_rate < 0.0);
    let base = build_decoupling_schedule(model, pair, rate, duration, seed)?;

    let mut events = Vec::with_capacity(base.events().len() + 2 + model.num_qubits());
    if conjugate {
        events.push(PulseEvent::new(0.0, j, OneQubitGate::Not));
    }
    events.extend(base.events().iter().cloned());
    if conjugate {
        events.push(PulseEvent::new(duration, j, OneQubitGate::Not));
    }

    let mut desired = PhasePolynomial::zero(model.num_qubits());
    desired.add_quadratic(j, k, c);
    let expected = expected_run_exponent(model, pair, conjugate, duration)?;
    let mut correction = desired;
    correction.add_assign(&expected.negated());
    debug_assert!(
        correction.quadratic_part().is_zero(1e-9 * (1.0 + c.abs())),
        "quadratic parts must cancel"
    );
    for qubit in 0..model.num_qubits() {
        let alpha = correction.linear(qubit);
        if alpha != 0.0 {
            events.push(PulseEvent::new(duration, qubit, OneQubitGate::PhaseShift(-alpha)));
        }
    }
    PulseSchedule::from_parts(model.clone(), duration, events, correction.constant())
}

/// A synchronization window for one pair: both qubits receive identical
/// pulse times inside it, so their mutual quadratic phase survives the
/// averaging.
#[derive(Debug, Clone, PartialEq)]
pub struct SyncInterval {
    pub j: usize,
    pub k: usize,
    pub start: f64,
    pub length: f64,
}

impl SyncInterval {
    pub fn end(&self) -> f64 {
        self.start + self.length
    }
}

/// Places one disjoint window per requested pair.
///
/// The window for pair (j, k) goes into the half of an inter-gate interval
/// that contains (t_j + t_k) / 2, which always lies strictly between the two
/// gate instants. Pairs sharing a half split it into equal gaps around their
/// windows; packing fails if the requested lengths do not fit.
pub fn build_sync_intervals(
    gate_times: &[f64],
    required_lengths: &std::collections::BTreeMap<(usize, usize), f64>,
) -> Result<Vec<SyncInterval>> {
    let l = gate_times.len();
    if gate_times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::UnorderedGateTimes);
    }
    let mut halves: std::collections::BTreeMap<usize, Vec<((usize, usize), f64)>> =
        std::collections::BTreeMap::new();
    for (&(j, k), &length) in required_lengths {
        if j >= l || k >= j {
            return Err(Error::InvalidPositions(format!(
                "pair ({j}, {k}) incompatible with {l} gate instants"
            )));
        }
        if !(length > 0.0) || !length.is_finite() {
            return Err(Error::NonpositiveParameter {
                name: "sync interval length",
                value: length,
            });
        }
        let midpoint = (gate_times[j] + gate_times[k]) / 2.0;
        let interval = match gate_times[..l - 1]
            .iter()
            .rposition(|&t| t <= midpoint)
        {
            Some(i) => i,
            None => unreachable!("midpoint below the first gate instant"),
        };
        let mid_of_interval = (gate_times[interval] + gate_times[interval + 1]) / 2.0;
        // Division points belong to the left of possible windows, so an exact
        // midpoint hit selects the right half.
        let half_index = 2 * interval + usize::from(midpoint >= mid_of_interval);
        halves.entry(half_index).or_default().push(((j, k), length));
    }

    let mut intervals = Vec::new();
    for (half_index, entries) in halves {
        let interval = half_index / 2;
        let width = (gate_times[interval + 1] - gate_times[interval]) / 2.0;
        let lo = gate_times[interval] + width * (half_index % 2) as f64;
        let required: f64 = entries.iter().map(|(_, len)| len).sum();
        let gap = (width - required) / (entries.len() + 1) as f64;
        if !(gap > 0.0) {
            return Err(Error::InfeasiblePacking {
                half: half_index,
                required,
                available: width,
            });
        }
        let mut cursor = lo + gap;
        for ((j, k), length) in entries {
            let window = SyncInterval {
                j,
                k,
                start: cursor,
                length,
            };
            debug_assert!(window.start > gate_times[k] && window.end() < gate_times[j]);
            intervals.push(window);
            cursor += length + gap;
        }
    }
    intervals.sort_by(|a, b| a.start.partial_cmp(&b.start).expect("finite"));
    Ok(intervals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interaction::{DecayKind, DecayLaw, PairForm};
    use proptest::prelude::*;
    use std::collections::BTreeMap;
    use std::f64::consts::PI;

    fn uniform_model(l: usize, d: f64) -> CouplingModel {
        CouplingModel::new(
            l,
            PairForm::FormA { rho: d },
            DecayLaw {
                kind: DecayKind::PowerLaw { alpha: 0.0 },
                rho0: 1.0,
            },
        )
        .unwrap()
    }

    #[test]
    fn poisson_sampling_basics() {
        assert!(sample_poisson_pulses(0.0, (0.0, 1.0), 1).is_err());
        assert!(sample_poisson_pulses(100.0, (0.0, 0.0), 1).unwrap().is_empty());
        let a = sample_poisson_pulses(100.0, (0.0, 1.0), 42).unwrap();
        let b = sample_poisson_pulses(100.0, (0.0, 1.0), 42).unwrap();
        assert_eq!(a, b);
        assert!(a.windows(2).all(|w| w[1] > w[0]));
        assert!(a.iter().all(|&t| t > 0.0 && t < 1.0));
    }

    #[test]
    fn poisson_mean_count_concentrates() {
        let mut total = 0usize;
        for seed in 0..200u64 {
            total += sample_poisson_pulses(100.0, (0.0, 1.0), seed).unwrap().len();
        }
        let mean = total as f64 / 200.0;
        assert!((85.0..=115.0).contains(&mean), "mean count {mean}");
    }

    #[test]
    fn decoupling_two_qubits_has_no_pulses() {
        let model = CouplingModel::canonical_qft(2).unwrap();
        let s = build_decoupling_schedule(&model, (1, 0), 500.0, 1.0, 7).unwrap();
        assert!(s.events().is_empty());
    }

    #[test]
    fn decoupling_restores_every_bit() {
        let model = CouplingModel::canonical_qft(4).unwrap();
        let s = build_decoupling_schedule(&model, (3, 1), 500.0, 1.0, 11).unwrap();
        let mut counts = [0usize; 4];
        for e in s.events() {
            assert_eq!(e.gate, OneQubitGate::Not);
            counts[e.qubit] += 1;
        }
        assert_eq!(counts[3], 0);
        assert_eq!(counts[1], 0);
        assert_eq!(counts[0] % 2, 0);
        assert_eq!(counts[2] % 2, 0);
        // Basis states come back to themselves up to a phase.
        let action = s.diagonal_action().unwrap();
        assert_eq!(action.mask, 0);
    }

    #[test]
    fn decoupling_rejects_thin_windows() {
        let model = CouplingModel::canonical_qft(3).unwrap();
        assert!(matches!(
            build_decoupling_schedule(&model, (1, 0), 10.0, 1.0, 0),
            Err(Error::RateTooLow { .. })
        ));
    }

    #[test]
    fn compensation_no_spectators_is_zero() {
        let model = CouplingModel::canonical_qft(2).unwrap();
        let comp = compensation_for_decoupling(&model, (1, 0), 1.0).unwrap();
        assert!(comp.is_zero(0.0));
    }

    #[test]
    fn compensation_three_qubits_uniform() {
        // Separated (2, 0) with unit couplings: one spectator, no spectator
        // pairs, so only the two half-weight linear terms remain.
        let model = uniform_model(3, 1.0);
        let comp = compensation_for_decoupling(&model, (2, 0), 1.0).unwrap();
        assert!((comp.linear(2) + 0.5).abs() < 1e-15);
        assert!((comp.linear(0) + 0.5).abs() < 1e-15);
        assert!(comp.linear(1).abs() < 1e-15);
        assert!(comp.constant().abs() < 1e-15);
        assert!(comp.quadratic_part().is_zero(0.0));
    }

    #[test]
    fn compensation_matches_symbolic_sum() {
        // Independent expansion of the averaging formula for the canonical
        // couplings at l = 4, separated (3, 2):
        //   -dt * [ sum_p d_{p,3}/2 x_3 + sum_p d_{p,2}/2 x_2 + sum_{p>q} d_{p,q}/4 ]
        let model = CouplingModel::canonical_qft(4).unwrap();
        let dt = 0.8;
        let comp = compensation_for_decoupling(&model, (3, 2), dt).unwrap();
        let d = |p: usize, q: usize| model.pair_coefficient(p, q).unwrap();
        let lin3 = -(dt / 2.0) * (d(0, 3) + d(1, 3));
        let lin2 = -(dt / 2.0) * (d(0, 2) + d(1, 2));
        let constant = -(dt / 4.0) * d(1, 0);
        assert!((comp.linear(3) - lin3).abs() < 1e-14);
        assert!((comp.linear(2) - lin2).abs() < 1e-14);
        assert!((comp.constant() - constant).abs() < 1e-14);
        assert!(comp.linear(0).abs() < 1e-15);
        assert!(comp.linear(1).abs() < 1e-15);
    }

    #[test]
    fn signed_pair_zero_target_is_empty() {
        let model = CouplingModel::canonical_qft(3).unwrap();
        let s = signed_pair_phase_schedule(&model, (1, 0), 0.0, 500.0, 3).unwrap();
        assert_eq!(s.total_time(), 0.0);
        assert!(s.events().is_empty());
    }

    #[test]
    fn signed_pair_zero_coupling_errors() {
        let model = uniform_model(3, 0.0);
        assert!(matches!(
            signed_pair_phase_schedule(&model, (1, 0), 0.5, 500.0, 3),
            Err(Error::ZeroCoupling(1, 0))
        ));
    }

    #[test]
    fn signed_pair_positive_matches_ideal_on_two_qubits() {
        // No spectators: the run is a pure wait and must equal the ideal
        // diagonal phase exactly.
        let model = CouplingModel::canonical_qft(2).unwrap();
        let c = PI / 4.0;
        let schedule = signed_pair_phase_schedule(&model, (1, 0), c, 500.0, 5).unwrap();
        let mut target = PhasePolynomial::zero(2);
        target.add_quadratic(1, 0, c);
        for basis in 0..4 {
            let input = StateVector::basis_state(2, basis).unwrap();
            let out = schedule.simulate(&input).unwrap();
            let mut ideal = input.clone();
            ideal.evolve_diagonal(&target, 1.0).unwrap();
            assert!(out.fidelity(&ideal).unwrap() > 1.0 - 1e-10);
            // Phases agree exactly, not just up to alignment.
            assert!((out.amplitude(basis) - ideal.amplitude(basis)).norm() < 1e-10);
        }
    }

    #[test]
    fn signed_pair_negative_matches_ideal_on_two_qubits() {
        let model = CouplingModel::canonical_qft(2).unwrap();
        let c = -PI / 4.0;
        let schedule = signed_pair_phase_schedule(&model, (1, 0), c, 500.0, 5).unwrap();
        let mut target = PhasePolynomial::zero(2);
        target.add_quadratic(1, 0, c);
        let mut plus = StateVector::new_register(2).unwrap();
        plus.apply_gate(0, &OneQubitGate::Hadamard).unwrap();
        plus.apply_gate(1, &OneQubitGate::Hadamard).unwrap();
        let out = schedule.simulate(&plus).unwrap();
        let mut ideal = plus.clone();
        ideal.evolve_diagonal(&target, 1.0).unwrap();
        assert!(out.fidelity(&ideal).unwrap() > 1.0 - 1e-10);
    }

    #[test]
    fn simulate_empty_schedule_is_background_evolution() {
        let model = CouplingModel::canonical_qft(3).unwrap();
        let schedule = PulseSchedule::new(model.clone(), 0.7).unwrap();
        let mut input = StateVector::new_register(3).unwrap();
        for q in 0..3 {
            input.apply_gate(q, &OneQubitGate::Hadamard).unwrap();
        }
        let out = schedule.simulate(&input).unwrap();
        let mut ideal = input;
        ideal
            .evolve_diagonal(&model.hamiltonian_polynomial().unwrap(), 0.7)
            .unwrap();
        for (x, y) in out.amplitudes().iter().zip(ideal.amplitudes()) {
            assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn simulate_single_not_halves_pair_phase() {
        // |11> with a NOT at T/2 on one qubit: the coupling acts only while
        // both bits are 1, i.e. for the first half of the span.
        let model = CouplingModel::canonical_qft(2).unwrap();
        let total = 1.3;
        let mut schedule = PulseSchedule::new(model.clone(), total).unwrap();
        schedule
            .push(PulseEvent::new(total / 2.0, 0, OneQubitGate::Not))
            .unwrap();
        let input = StateVector::basis_state(2, 3).unwrap();
        let out = schedule.simulate(&input).unwrap();
        let d = model.pair_coefficient(1, 0).unwrap();
        let expected = Complex64::cis(-d * total / 2.0);
        assert!((out.amplitude(2) - expected).norm() < 1e-12);
    }

    #[test]
    fn schedule_text_export_is_stable() {
        let model = CouplingModel::canonical_qft(2).unwrap();
        let mut schedule = PulseSchedule::new(model, 1.0).unwrap();
        schedule.push(PulseEvent::new(0.25, 1, OneQubitGate::Not)).unwrap();
        schedule
            .push(PulseEvent::new(0.5, 0, OneQubitGate::PhaseShift(PI)))
            .unwrap();
        schedule.push(PulseEvent::new(0.5, 0, OneQubitGate::Hadamard)).unwrap();
        let expected = "2.5000000000000000e-1 1 not\n\
                        5.0000000000000000e-1 0 phase 3.1415926535897931e0\n\
                        5.0000000000000000e-1 0 h\n";
        assert_eq!(schedule.to_text(), expected);
    }

    #[test]
    fn out_of_order_and_out_of_span_events_are_rejected() {
        let model = CouplingModel::canonical_qft(2).unwrap();
        let mut schedule = PulseSchedule::new(model, 1.0).unwrap();
        schedule.push(PulseEvent::new(0.5, 0, OneQubitGate::Not)).unwrap();
        assert!(matches!(
            schedule.push(PulseEvent::new(0.4, 0, OneQubitGate::Not)),
            Err(Error::EventOutOfOrder { .. })
        ));
        assert!(matches!(
            schedule.push(PulseEvent::new(1.5, 0, OneQubitGate::Not)),
            Err(Error::EventOutOfSpan { .. })
        ));
    }

    #[test]
    fn sync_intervals_two_qubits() {
        let mut required = BTreeMap::new();
        required.insert((1, 0), 0.2);
        let intervals = build_sync_intervals(&[0.0, 1.0], &required).unwrap();
        assert_eq!(intervals.len(), 1);
        let w = &intervals[0];
        assert!(w.start > 0.0 && w.end() < 1.0);
    }

    #[test]
    fn sync_intervals_five_qubits_disjoint_and_contained() {
        let times: Vec<f64> = (0..5).map(|j| 3.0 * j as f64).collect();
        let mut required = BTreeMap::new();
        for j in 1..5usize {
            for k in 0..j {
                required.insert((j, k), 0.3 + 0.05 * (j + k) as f64);
            }
        }
        let intervals = build_sync_intervals(&times, &required).unwrap();
        assert_eq!(intervals.len(), 10);
        for w in &intervals {
            assert!(w.start > times[w.k] && w.end() < times[w.j], "{w:?}");
        }
        for a in 0..intervals.len() {
            for b in 0..a {
                let (x, y) = (&intervals[a], &intervals[b]);
                let disjoint = x.end() <= y.start || y.end() <= x.start;
                assert!(disjoint, "{x:?} overlaps {y:?}");
            }
        }
    }

    #[test]
    fn sync_intervals_infeasible_packing() {
        let mut required = BTreeMap::new();
        required.insert((1, 0), 10.0);
        assert!(matches!(
            build_sync_intervals(&[0.0, 1.0], &required),
            Err(Error::InfeasiblePacking { .. })
        ));
    }

    #[test]
    fn decoupling_phases_track_averaging_formula() {
        // Small-sample smoke check of the averaging predictions; the
        // acceptance suite runs the full-size version.
        let model = CouplingModel::canonical_qft(4).unwrap();
        let (j, k) = (3usize, 1usize);
        let duration = 1.0;
        let rate = 1000.0;
        let seeds = 40u64;
        let n = 16usize;
        let mut mean = vec![0.0f64; n];
        for seed in 0..seeds {
            let s = build_decoupling_schedule(&model, (j, k), rate, duration, seed).unwrap();
            let action = s.diagonal_action().unwrap();
            for (a, th) in action.theta.iter().enumerate() {
                mean[a] += th / seeds as f64;
            }
        }
        let d = |p: usize, q: usize| model.pair_coefficient(p, q).unwrap();
        for a in 0..n {
            let bit = |q: usize| ((a >> q) & 1) as f64;
            let mut predicted = d(j, k) * duration * bit(j) * bit(k);
            for p in 0..4 {
                if p != j && p != k {
                    predicted += 0.5 * duration * (d(p, j) * bit(j) + d(p, k) * bit(k));
                }
            }
            predicted += 0.25 * duration * d(2, 0); // the only spectator pair
            assert!(
                (mean[a] - predicted).abs() < 0.08 * predicted.abs().max(0.1),
                "basis {a}: measured {} predicted {}",
                mean[a],
                predicted
            );
        }
    }

    proptest! {
        // The block-folded simulator must agree with naive sequential
        // application of gaps and gates.
        #[test]
        fn simulate_matches_naive_application(
            times in proptest::collection::vec(0.0f64..1.0, 0..12),
            qubits in proptest::collection::vec(0usize..3, 12),
            kinds in proptest::collection::vec(0usize..3, 12),
            basis in 0usize..8,
        ) {
            let model = CouplingModel::canonical_qft(3).unwrap();
            let mut sorted = times.clone();
            sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let mut schedule = PulseSchedule::new(model.clone(), 1.0).unwrap();
            let mut plan: Vec<(f64, usize, OneQubitGate)> = Vec::new();
            for (i, t) in sorted.iter().enumerate() {
                let gate = match kinds[i] {
                    0 => OneQubitGate::Not,
                    1 => OneQubitGate::Hadamard,
                    _ => OneQubitGate::PhaseShift(0.3 + i as f64 * 0.1),
                };
                schedule.push(PulseEvent::new(*t, qubits[i], gate.clone())).unwrap();
                plan.push((*t, qubits[i], gate));
            }
            let input = StateVector::basis_state(3, basis).unwrap();
            let fast = schedule.simulate(&input).unwrap();

            let h = model.hamiltonian_polynomial().unwrap();
            let mut slow = input;
            let mut cursor = 0.0;
            for (t, q, gate) in plan {
                slow.evolve_diagonal(&h, t - cursor).unwrap();
                cursor = t;
                slow.apply_gate(q, &gate).unwrap();
            }
            slow.evolve_diagonal(&h, 1.0 - cursor).unwrap();

            for (x, y) in fast.amplitudes().iter().zip(slow.amplitudes()) {
                prop_assert!((x - y).norm() < 1e-10);
            }
        }

        // Splitting a schedule at an arbitrary instant and simulating the two
        // halves sequentially is the same as simulating the whole.
        #[test]
        fn simulate_segmentation_invariance(
            split in 0.1f64..0.9,
            seed in 0u64..50,
            basis in 0usize..8,
        ) {
            let model = CouplingModel::canonical_qft(3).unwrap();
            let schedule = build_decoupling_schedule(&model, (2, 0), 200.0, 1.0, seed).unwrap();
            let input = StateVector::basis_state(3, basis).unwrap();
            let whole = schedule.simulate(&input).unwrap();

            let mut first = PulseSchedule::new(model.clone(), split).unwrap();
            let mut second = PulseSchedule::new(model.clone(), 1.0 - split).unwrap();
            for e in schedule.events() {
                if e.time <= split {
                    first.push(e.clone()).unwrap();
                } else {
                    second.push(PulseEvent::new(e.time - split, e.qubit, e.gate.clone())).unwrap();
                }
            }
            let halves = second.simulate(&first.simulate(&input).unwrap()).unwrap();
            for (x, y) in whole.amplitudes().iter().zip(halves.amplitudes()) {
                prop_assert!((x - y).norm() < 1e-12);
            }
        }

        // diagonal_action and simulate are two routes to the same unitary for
        // gate-diagonal schedules.
        #[test]
        fn diagonal_action_matches_simulate(seed in 0u64..30, basis in 0usize..16) {
            let model = CouplingModel::canonical_qft(4).unwrap();
            let schedule = signed_pair_phase_schedule(&model, (2, 1), 0.9, 200.0, seed).unwrap();
            let action = schedule.diagonal_action().unwrap();
            let input = StateVector::basis_state(4, basis).unwrap();
            let out = schedule.simulate(&input).unwrap();
            let expected = Complex64::cis(-action.theta[basis]);
            prop_assert_eq!(action.mask, 0);
            prop_assert!((out.amplitude(basis) - expected).norm() < 1e-10);
        }

        #[test]
        fn identical_seeds_reproduce_schedules(seed in 0u64..100) {
            let model = CouplingModel::canonical_qft(4).unwrap();
            let a = build_decoupling_schedule(&model, (2, 1), 300.0, 1.0, seed).unwrap();
            let b = build_decoupling_schedule(&model, (2, 1), 300.0, 1.0, seed).unwrap();
            prop_assert_eq!(a.to_text(), b.to_text());
        }
    }
}
