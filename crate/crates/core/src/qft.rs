//! Fourier-transform protocols over the fixed interaction.
//!
//! The target unitaries are
//!
//!   Forward:  |a> -> N^{-1/2} sum_b e^{-2 pi i a b / N} |b>
//!   Inverse:  |a> -> N^{-1/2} sum_b e^{+2 pi i a b / N} |b>
//!
//! built from a ladder of Hadamards over the always-on background. Input bit
//! j rides the wire whose Hadamard fires at instant t_{l-1-j}, and the output
//! is read in reversed bit order, so every plan here equals the ideal
//! transform composed with an explicit output bit reversal.
//!
//! Tracing one basis path through the unit-spacing array with couplings
//! d_{j,k} = pi / (2^{j-k} (j-k)) accumulates the exponent
//!
//!   sum_{j>k} d_{j,k} [ k a'_j a'_k + (j-k) a'_j b_k + (l-1-j) b_j b_k ]
//!   + pi sum_j a'_j b_j,       a'_j = a_{l-1-j},
//!
//! whose middle terms telescope to 2 pi a b / N modulo 2 pi. The outer
//! input-only and output-only sums (`diagonal_summands`) are removed by
//! compensation gates placed before and after the ladder.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::interaction::CouplingModel;
use crate::phase_poly::PhasePolynomial;
use crate::schedule::{
    build_sync_intervals, sample_poisson_even, signed_pair_phase_schedule, PulseEvent,
    PulseSchedule, SyncInterval, MIN_RATE_WINDOW,
};
use crate::statevector::{OneQubitGate, StateVector, MAX_QUBITS};

/// Transform direction, fixing the sign of e^{-+ 2 pi i a b / N}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// How the plan realizes the transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QftMode {
    /// Unit Hadamard spacing over the canonical coupling; the outer diagonal
    /// summands are burned off by stochastic decoupling runs before and
    /// after the ladder.
    UnitYukawa,
    /// Arbitrary diagonal couplings: everything is decoupled by Poisson NOT
    /// streams except inside per-pair synchronization windows sized to
    /// accrue exactly the required cross phases.
    GeneralDiagonal,
    /// The physical ladder with exact analytic compensation applied as ideal
    /// diagonal operators; deterministic, used for verification.
    OracleCompensated,
}

/// Reference transform via an FFT backend, normalized to be unitary.
pub fn ideal_qft(state: &mut StateVector, direction: Direction) {
    let n = state.len();
    let mut planner = FftPlanner::new();
    let fft = match direction {
        Direction::Forward => planner.plan_fft_forward(n),
        Direction::Inverse => planner.plan_fft_inverse(n),
    };
    fft.process(state.amplitudes_mut());
    let scale = 1.0 / (n as f64).sqrt();
    for amp in state.amplitudes_mut() {
        *amp *= scale;
    }
}

/// The canonical coupling at integer distance r: pi / (2^r r).
fn canonical_rate(r: usize) -> f64 {
    PI / ((1u64 << r) as f64 * r as f64)
}

/// Exact exponent accumulated by the unit-spacing array on the path from
/// input `a` to output `b`, before any compensation.
pub fn phase_oracle(l: usize, a: usize, b: usize) -> f64 {
    let ap = |j: usize| ((a >> (l - 1 - j)) & 1) as f64;
    let bit = |j: usize| ((b >> j) & 1) as f64;
    let mut phase = 0.0;
    for j in 0..l {
        phase += PI * ap(j) * bit(j);
        for k in 0..j {
            let d = canonical_rate(j - k);
            phase += d * (k as f64) * ap(j) * ap(k);
            phase += d * ((j - k) as f64) * ap(j) * bit(k);
            phase += d * ((l - 1 - j) as f64) * bit(j) * bit(k);
        }
    }
    phase
}

/// The input-only and output-only summands of the array exponent, indexed by
/// wire number: `A` is a polynomial over the reversed input bits a'_j, `B`
/// over the output bits b_j.
pub fn diagonal_summands(l: usize) -> (PhasePolynomial, PhasePolynomial) {
    let mut a = PhasePolynomial::zero(l);
    let mut b = PhasePolynomial::zero(l);
    for j in 1..l {
        for k in 0..j {
            let d = canonical_rate(j - k);
            if k > 0 {
                a.add_quadratic(j, k, d * k as f64);
            }
            if l - 1 - j > 0 {
                b.add_quadratic(j, k, d * (l - 1 - j) as f64);
            }
        }
    }
    (a, b)
}

/// Chains one signed decoupling run per nonzero quadratic target, each with
/// its own compensation, so the net ideal action is the diagonal phase
/// `sum c_{j,k} x_j x_k` over register bits.
pub fn quadratic_phase_gate(
    targets: &PhasePolynomial,
    model: &CouplingModel,
    rate: f64,
    seed: u64,
) -> Result<PulseSchedule> {
    let mut out = PulseSchedule::new(model.clone(), 0.0)?;
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    for ((j, k), c) in targets.quadratic_terms() {
        let sub_seed = master.random::<u64>();
        if c.abs() < 1e-15 {
            continue;
        }
        let run = signed_pair_phase_schedule(model, (j, k), c, rate, sub_seed)?;
        out.append(&run)?;
    }
    Ok(out)
}

/// Internal product of the cross-phase builder: the pulse schedule plus the
/// synchronization windows it placed.
struct CrossSchedule {
    schedule: PulseSchedule,
    windows: Vec<SyncInterval>,
    /// Input-side and output-side linear compensation, wire-indexed.
    comp_in: Vec<f64>,
    comp_out: Vec<f64>,
}

/// Decoupling streams on every qubit over the whole span, with one shared
/// even-parity stream per synchronization window. `targets` maps wire pairs
/// (j, k), j > k, to the signed cross coefficient on a'_j b_k; `gate_times`
/// are the Hadamard instants per wire.
fn build_cross_schedule(
    l: usize,
    gate_times: &[f64],
    targets: &BTreeMap<(usize, usize), f64>,
    model: &CouplingModel,
    rate: f64,
    seed: u64,
) -> Result<CrossSchedule> {
    let engine = |wire: usize| l - 1 - wire;
    if !(rate > 0.0) {
        return Err(Error::NonpositiveRate(rate));
    }

    let mut lengths = BTreeMap::new();
    let mut conjugated = BTreeMap::new();
    for (&(j, k), &c) in targets {
        if c == 0.0 {
            continue;
        }
        let q = model.quadratic_rate(engine(j), engine(k))?;
        if q.abs() < 1e-15 {
            return Err(Error::ZeroCoupling(engine(j), engine(k)));
        }
        let dt = (c / q).abs();
        if rate * dt < MIN_RATE_WINDOW {
            return Err(Error::RateTooLow {
                rate,
                window: dt,
                min: MIN_RATE_WINDOW,
            });
        }
        lengths.insert((j, k), dt);
        conjugated.insert((j, k), (c < 0.0) != (q < 0.0));
    }
    let windows = build_sync_intervals(gate_times, &lengths)?;
    let total = *gate_times.last().expect("at least one gate instant");

    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let mut pulses: Vec<(f64, usize)> = Vec::new();

    // Free streams: even-parity Poisson pulses per qubit between its anchor
    // points (span edges, its own Hadamard, its window boundaries).
    for wire in 0..l {
        let mut anchors = vec![0.0, gate_times[wire], total];
        for w in &windows {
            if w.j == wire || w.k == wire {
                anchors.push(w.start);
                anchors.push(w.end());
            }
        }
        anchors.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        anchors.dedup();
        let member_of = |t0: f64, t1: f64| {
            windows
                .iter()
                .any(|w| (w.j == wire || w.k == wire) && w.start <= t0 && t1 <= w.end())
        };
        for pair in anchors.windows(2) {
            let (t0, t1) = (pair[0], pair[1]);
            if t1 <= t0 || member_of(t0, t1) {
                continue;
            }
            for t in sample_poisson_even(rate, (t0, t1), &mut master) {
                pulses.push((t, engine(wire)));
            }
        }
    }
    // Shared streams inside the windows, duplicated on both members.
    for w in &windows {
        for t in sample_poisson_even(rate, (w.start, w.end()), &mut master) {
            pulses.push((t, engine(w.j)));
            pulses.push((t, engine(w.k)));
        }
        if conjugated[&(w.j, w.k)] {
            pulses.push((w.start, engine(w.j)));
            pulses.push((w.end(), engine(w.j)));
        }
    }
    pulses.sort_by(|a, b| a.partial_cmp(b).expect("finite times"));

    // Compensation: each window leaves c/2 on both of its wires plus a
    // constant, and every pair accrues its averaged background over the rest
    // of the span.
    let mut comp_in = vec![0.0f64; l];
    let mut comp_out = vec![0.0f64; l];
    let mut kappa = 0.0f64;
    for w in &windows {
        let c = targets[&(w.j, w.k)];
        comp_in[w.j] += c / 2.0;
        comp_out[w.k] += c / 2.0;
        if !conjugated[&(w.j, w.k)] {
            kappa -= c / 2.0;
        }
    }
    for (u, v) in model.pairs() {
        let pp = model.pair_polynomial(u, v)?;
        let own_window = windows
            .iter()
            .find(|w| {
                (engine(w.j) == u && engine(w.k) == v) || (engine(w.j) == v && engine(w.k) == u)
            })
            .map_or(0.0, |w| w.length);
        let background = total * (pp.constant() + (pp.linear(u) + pp.linear(v)) / 2.0)
            + pp.quadratic(u, v) * (total - own_window) / 4.0;
        kappa -= background;
    }

    let mut events = Vec::with_capacity(pulses.len() + 2 * l);
    for (wire, alpha) in comp_in.iter().enumerate() {
        if *alpha != 0.0 {
            events.push(PulseEvent::new(0.0, engine(wire), OneQubitGate::PhaseShift(-alpha)));
        }
    }
    events.extend(
        pulses
            .into_iter()
            .map(|(t, q)| PulseEvent::new(t, q, OneQubitGate::Not)),
    );
    for (wire, alpha) in comp_out.iter().enumerate() {
        if *alpha != 0.0 {
            events.push(PulseEvent::new(total, engine(wire), OneQubitGate::PhaseShift(-alpha)));
        }
    }
    let schedule = PulseSchedule::from_parts(model.clone(), total, events, kappa)?;
    Ok(CrossSchedule {
        schedule,
        windows,
        comp_in,
        comp_out,
    })
}

/// Cross-phase gate: accrues `sum c_{j,k} a'_j b_k` for bits living on
/// opposite sides of their Hadamard instants, by synchronizing the two
/// qubits' pulse streams inside a window between the two gate times.
pub fn cross_phase_gate(
    gate_times: &[f64],
    targets: &BTreeMap<(usize, usize), f64>,
    model: &CouplingModel,
    rate: f64,
    seed: u64,
) -> Result<PulseSchedule> {
    let l = gate_times.len();
    if targets.is_empty() {
        return PulseSchedule::new(model.clone(), 0.0);
    }
    Ok(build_cross_schedule(l, gate_times, targets, model, rate, seed)?.schedule)
}

enum PlanBody {
    /// Physical ladder; ideal diagonal compensation applied around it.
    Compensated { schedule: PulseSchedule },
    /// Fully stochastic realization, compensation embedded in the schedule.
    Stochastic { schedule: PulseSchedule },
    /// Deterministic synthesized ladder of retained per-pair cross phases.
    Ladder { targets: BTreeMap<(usize, usize), f64> },
}

/// A concrete recipe for running the transform on the fixed-interaction
/// machine.
pub struct QftPlan {
    l: usize,
    direction: Direction,
    mode: QftMode,
    hadamard_times: Vec<f64>,
    pre_compensation: PhasePolynomial,
    post_compensation: PhasePolynomial,
    sync_intervals: Vec<SyncInterval>,
    body: PlanBody,
}

impl QftPlan {
    pub fn num_qubits(&self) -> usize {
        self.l
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn mode(&self) -> QftMode {
        self.mode
    }

    /// Hadamard instants, indexed by wire (wire j acts on qubit l-1-j).
    pub fn hadamard_times(&self) -> &[f64] {
        &self.hadamard_times
    }

    /// Ideal diagonal correction before the ladder, over register bits.
    pub fn pre_compensation(&self) -> &PhasePolynomial {
        &self.pre_compensation
    }

    /// Ideal diagonal correction after the ladder, over register bits.
    pub fn post_compensation(&self) -> &PhasePolynomial {
        &self.post_compensation
    }

    pub fn sync_intervals(&self) -> &[SyncInterval] {
        &self.sync_intervals
    }

    pub fn schedule(&self) -> Option<&PulseSchedule> {
        match &self.body {
            PlanBody::Compensated { schedule } | PlanBody::Stochastic { schedule } => {
                Some(schedule)
            }
            PlanBody::Ladder { .. } => None,
        }
    }

    /// Retained cross-phase targets of a truncated plan, keyed by wire pair.
    pub fn retained_targets(&self) -> Option<&BTreeMap<(usize, usize), f64>> {
        match &self.body {
            PlanBody::Ladder { targets } => Some(targets),
            _ => None,
        }
    }

    /// Number of retained targets whose later wire is `j`, for each wire.
    pub fn retained_per_wire(&self) -> Option<Vec<usize>> {
        self.retained_targets().map(|targets| {
            let mut counts = vec![0usize; self.l];
            for &(j, _) in targets.keys() {
                counts[j] += 1;
            }
            counts
        })
    }

    /// Runs the plan on a state.
    pub fn apply(&self, state: &mut StateVector) -> Result<()> {
        if state.num_qubits() != self.l {
            return Err(Error::DimensionMismatch(state.num_qubits(), self.l));
        }
        match &self.body {
            PlanBody::Compensated { schedule } => {
                state.evolve_diagonal(&self.pre_compensation, 1.0)?;
                *state = schedule.simulate(state)?;
                state.evolve_diagonal(&self.post_compensation, 1.0)?;
            }
            PlanBody::Stochastic { schedule } => {
                *state = schedule.simulate(state)?;
            }
            PlanBody::Ladder { targets } => {
                let engine = |wire: usize| self.l - 1 - wire;
                let sign = match self.direction {
                    Direction::Forward => 1.0,
                    Direction::Inverse => -1.0,
                };
                for wire in 0..self.l {
                    for (&(j, k), &coeff) in targets.iter().filter(|(&(j, _), _)| j == wire) {
                        let mut poly = PhasePolynomial::zero(self.l);
                        poly.add_quadratic(engine(j), engine(k), sign * coeff);
                        state.evolve_diagonal(&poly, 1.0)?;
                    }
                    state.apply_gate(engine(wire), &OneQubitGate::Hadamard)?;
                }
            }
        }
        Ok(())
    }

    /// The ideal transform with the array's reversed output bit order.
    pub fn reference_output(&self, input: &StateVector) -> Result<StateVector> {
        if input.num_qubits() != self.l {
            return Err(Error::DimensionMismatch(input.num_qubits(), self.l));
        }
        let mut state = input.clone();
        ideal_qft(&mut state, self.direction);
        Ok(state.bit_reversed())
    }

    /// Fidelity of the plan output against the ideal transform for one
    /// computational basis input.
    pub fn basis_fidelity(&self, basis: usize) -> Result<f64> {
        let input = StateVector::basis_state(self.l, basis)?;
        let mut out = input.clone();
        self.apply(&mut out)?;
        out.fidelity(&self.reference_output(&input)?)
    }

    /// Human-readable plan description.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "mode: {:?}, direction: {:?}, qubits: {}\n",
            self.mode, self.direction, self.l
        ));
        let times: Vec<String> = self.hadamard_times.iter().map(|t| format!("{t:.6}")).collect();
        out.push_str(&format!("hadamard instants: [{}]\n", times.join(", ")));
        if !self.sync_intervals.is_empty() {
            out.push_str("sync intervals:\n");
            for w in &self.sync_intervals {
                out.push_str(&format!(
                    "  pair ({}, {}): [{:.6}, {:.6}]\n",
                    w.j,
                    w.k,
                    w.start,
                    w.end()
                ));
            }
        }
        for (label, poly) in [
            ("pre-compensation", &self.pre_compensation),
            ("post-compensation", &self.post_compensation),
        ] {
            out.push_str(&format!("{label}: constant {:.6}", poly.constant()));
            for j in 0..self.l {
                if poly.linear(j) != 0.0 {
                    out.push_str(&format!(", x{}: {:.6}", j, poly.linear(j)));
                }
            }
            for ((j, k), c) in poly.quadratic_terms() {
                if c != 0.0 {
                    out.push_str(&format!(", x{j}x{k}: {c:.6}"));
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Exact compensation polynomials for the unit-spacing ladder, over register
/// bits. The Inverse array is the Forward one conjugated by NOTs, which
/// turns the input-side summand into `A + L_a + C` and adds a linear term on
/// the output side.
fn ladder_compensations(l: usize, direction: Direction) -> (PhasePolynomial, PhasePolynomial) {
    let (mut a, mut b) = diagonal_summands(l);
    if direction == Direction::Inverse {
        for j in 1..l {
            for k in 0..j {
                let d = canonical_rate(j - k);
                let weight = d * k as f64;
                a.add_linear(j, -weight);
                a.add_linear(k, -weight);
                a.add_constant(weight);
                b.add_linear(k, d * (j - k) as f64);
            }
        }
    }
    let engine = |wire: usize| l - 1 - wire;
    (
        a.negated().map_bits(engine),
        b.negated().map_bits(engine),
    )
}

/// The Hadamard ladder events. For the Inverse direction every qubit is
/// inverted at t = 0 and restored just before its own Hadamard, flipping the
/// sign of the cross phases.
fn ladder_events(l: usize, direction: Direction, offset: f64) -> Vec<PulseEvent> {
    let engine = |wire: usize| l - 1 - wire;
    let mut events = Vec::new();
    if direction == Direction::Inverse {
        for q in 0..l {
            if q != engine(0) {
                events.push(PulseEvent::new(offset, q, OneQubitGate::Not));
            }
        }
    }
    events.push(PulseEvent::new(offset, engine(0), OneQubitGate::Hadamard));
    for wire in 1..l {
        let t = offset + wire as f64;
        if direction == Direction::Inverse {
            events.push(PulseEvent::new(t, engine(wire), OneQubitGate::Not));
        }
        events.push(PulseEvent::new(t, engine(wire), OneQubitGate::Hadamard));
    }
    events
}

/// Builds a transform plan in the requested mode.
pub fn build_qft_plan(
    l: usize,
    direction: Direction,
    mode: QftMode,
    model: &CouplingModel,
    rate: f64,
    seed: u64,
) -> Result<QftPlan> {
    if l == 0 || l > MAX_QUBITS {
        return Err(Error::RegisterSize(l));
    }
    if model.num_qubits() != l {
        return Err(Error::DimensionMismatch(model.num_qubits(), l));
    }
    match mode {
        QftMode::OracleCompensated | QftMode::UnitYukawa => {
            if !model.is_canonical_qft() {
                return Err(Error::ModeModelMismatch {
                    mode: match mode {
                        QftMode::OracleCompensated => "oracle-compensated",
                        _ => "unit-spacing",
                    },
                });
            }
        }
        QftMode::GeneralDiagonal => {}
    }

    match mode {
        QftMode::OracleCompensated => build_oracle_plan(l, direction, model),
        QftMode::UnitYukawa => build_unit_plan(l, direction, model, rate, seed),
        QftMode::GeneralDiagonal => build_general_plan(l, direction, model, rate, seed),
    }
}

fn build_oracle_plan(l: usize, direction: Direction, model: &CouplingModel) -> Result<QftPlan> {
    let span = (l - 1) as f64;
    let schedule = PulseSchedule::from_parts(
        model.clone(),
        span,
        ladder_events(l, direction, 0.0),
        0.0,
    )?;
    let (pre, post) = ladder_compensations(l, direction);
    Ok(QftPlan {
        l,
        direction,
        mode: QftMode::OracleCompensated,
        hadamard_times: (0..l).map(|j| j as f64).collect(),
        pre_compensation: pre,
        post_compensation: post,
        sync_intervals: Vec::new(),
        body: PlanBody::Compensated { schedule },
    })
}

fn build_unit_plan(
    l: usize,
    direction: Direction,
    model: &CouplingModel,
    rate: f64,
    seed: u64,
) -> Result<QftPlan> {
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let (pre_total, post_total) = ladder_compensations(l, direction);
    let pre_seed = master.random::<u64>();
    let post_seed = master.random::<u64>();
    let pre_sched = quadratic_phase_gate(&pre_total.quadratic_part(), model, rate, pre_seed)?;
    let post_sched = quadratic_phase_gate(&post_total.quadratic_part(), model, rate, post_seed)?;

    let t_pre = pre_sched.total_time();
    let core_span = (l - 1) as f64;
    let t_core_end = t_pre + core_span;
    let total = t_core_end + post_sched.total_time();

    let mut events: Vec<PulseEvent> = pre_sched.events().to_vec();
    let mut kappa = pre_sched.global_phase() + post_sched.global_phase();

    // Affine remainders realize as phase gates at the ladder boundaries,
    // where every qubit holds its true bit value.
    let pre_affine = pre_total.affine_part();
    for q in 0..l {
        let alpha = pre_affine.linear(q);
        if alpha != 0.0 {
            events.push(PulseEvent::new(t_pre, q, OneQubitGate::PhaseShift(-alpha)));
        }
    }
    kappa += pre_affine.constant();

    events.extend(ladder_events(l, direction, t_pre));

    let post_affine = post_total.affine_part();
    for q in 0..l {
        let alpha = post_affine.linear(q);
        if alpha != 0.0 {
            events.push(PulseEvent::new(t_core_end, q, OneQubitGate::PhaseShift(-alpha)));
        }
    }
    kappa += post_affine.constant();

    for event in post_sched.events() {
        events.push(PulseEvent::new(
            event.time + t_core_end,
            event.qubit,
            event.gate.clone(),
        ));
    }

    let schedule = PulseSchedule::from_parts(model.clone(), total, events, kappa)?;
    Ok(QftPlan {
        l,
        direction,
        mode: QftMode::UnitYukawa,
        hadamard_times: (0..l).map(|j| t_pre + j as f64).collect(),
        pre_compensation: pre_total,
        post_compensation: post_total,
        sync_intervals: Vec::new(),
        body: PlanBody::Stochastic { schedule },
    })
}

fn build_general_plan(
    l: usize,
    direction: Direction,
    model: &CouplingModel,
    rate: f64,
    seed: u64,
) -> Result<QftPlan> {
    let sign = match direction {
        Direction::Forward => 1.0,
        Direction::Inverse => -1.0,
    };
    let engine = |wire: usize| l - 1 - wire;

    if l == 1 {
        let mut schedule = PulseSchedule::new(model.clone(), 0.0)?;
        schedule.push(PulseEvent::new(0.0, 0, OneQubitGate::Hadamard))?;
        return Ok(QftPlan {
            l,
            direction,
            mode: QftMode::GeneralDiagonal,
            hadamard_times: vec![0.0],
            pre_compensation: PhasePolynomial::zero(l),
            post_compensation: PhasePolynomial::zero(l),
            sync_intervals: Vec::new(),
            body: PlanBody::Stochastic { schedule },
        });
    }

    let mut targets = BTreeMap::new();
    let mut half_loads = vec![0.0f64; 2 * l];
    for j in 1..l {
        for k in 0..j {
            let magnitude = PI / (1u64 << (j - k)) as f64;
            targets.insert((j, k), sign * magnitude);
            let q = model.quadratic_rate(engine(j), engine(k))?;
            if q.abs() < 1e-15 {
                return Err(Error::ZeroCoupling(engine(j), engine(k)));
            }
            half_loads[j + k] += magnitude / q.abs();
        }
    }
    // Smallest Hadamard spacing whose halves fit their windows with 10% slack.
    let max_load = half_loads.iter().cloned().fold(0.0f64, f64::max);
    let delta_t = 2.2 * max_load;
    let gate_times: Vec<f64> = (0..l).map(|j| j as f64 * delta_t).collect();

    let cross = build_cross_schedule(l, &gate_times, &targets, model, rate, seed)?;
    let mut events = cross.schedule.events().to_vec();
    events.extend((0..l).map(|wire| {
        PulseEvent::new(gate_times[wire], engine(wire), OneQubitGate::Hadamard)
    }));
    events.sort_by(|a, b| a.time.partial_cmp(&b.time).expect("finite times"));

    let total = cross.schedule.total_time();
    let kappa = cross.schedule.global_phase();
    let schedule = PulseSchedule::from_parts(model.clone(), total, events, kappa)?;

    let mut pre = PhasePolynomial::zero(l);
    let mut post = PhasePolynomial::zero(l);
    for wire in 0..l {
        if cross.comp_in[wire] != 0.0 {
            pre.add_linear(engine(wire), cross.comp_in[wire]);
        }
        if cross.comp_out[wire] != 0.0 {
            post.add_linear(engine(wire), cross.comp_out[wire]);
        }
    }
    Ok(QftPlan {
        l,
        direction,
        mode: QftMode::GeneralDiagonal,
        hadamard_times: gate_times,
        pre_compensation: pre,
        post_compensation: post,
        sync_intervals: cross.windows,
        body: PlanBody::Stochastic { schedule },
    })
}

/// A deterministic plan that keeps only cross phases at least as large as
/// `threshold`, so the pair count per wire is bounded by the distance cap
/// log2(pi / threshold) independently of the register size.
pub fn approximate_qft_plan(l: usize, direction: Direction, threshold: f64) -> Result<QftPlan> {
    if l == 0 || l > MAX_QUBITS {
        return Err(Error::RegisterSize(l));
    }
    if !(threshold >= 0.0) {
        return Err(Error::BadThreshold(threshold));
    }
    let mut targets = BTreeMap::new();
    for j in 1..l {
        for k in 0..j {
            let coeff = PI / (1u64 << (j - k)) as f64;
            if coeff >= threshold {
                targets.insert((j, k), coeff);
            }
        }
    }
    Ok(QftPlan {
        l,
        direction,
        mode: QftMode::OracleCompensated,
        hadamard_times: (0..l).map(|j| j as f64).collect(),
        pre_compensation: PhasePolynomial::zero(l),
        post_compensation: PhasePolynomial::zero(l),
        sync_intervals: Vec::new(),
        body: PlanBody::Ladder { targets },
    })
}
