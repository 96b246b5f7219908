//! The fixed pairwise interaction model.
//!
//! Every pair of qubits carries a permanent diagonal Hamiltonian of one of
//! two forms,
//!
//!   A)  diag(0, 0, 0, rho)          B)  diag(rho1, rho2, rho3, rho4),
//!
//! scaled by a distance-decay law d(r). Form B must satisfy
//! `rho1 + rho4 != rho2 + rho3`, otherwise its two-qubit part vanishes.
//! The whole register Hamiltonian is the sum over pairs, which is diagonal,
//! so it is fully described by a [`PhasePolynomial`].

use std::collections::BTreeMap;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::phase_poly::PhasePolynomial;
use crate::statevector::MAX_QUBITS;

const DEGENERACY_TOL: f64 = 1e-12;

/// Distance dependence of the coupling, without the overall amplitude.
#[derive(Debug, Clone, PartialEq)]
pub enum DecayKind {
    /// d(r) = 2^{-r} / r. The canonical law for the transform protocols.
    YukawaBase2,
    /// d(r) = e^{-b r} / r.
    YukawaNatural { b: f64 },
    /// d(r) = r^{-alpha}; alpha = 0 gives a constant coupling.
    PowerLaw { alpha: f64 },
    /// Explicit per-pair couplings, keyed by (larger, smaller) qubit index.
    Table(BTreeMap<(usize, usize), f64>),
}

/// A decay law together with the coupling amplitude `rho0`
/// (radians per unit time at unit decay).
#[derive(Debug, Clone, PartialEq)]
pub struct DecayLaw {
    pub kind: DecayKind,
    pub rho0: f64,
}

impl DecayLaw {
    /// Base-2 Yukawa with rho0 = pi: the coupling that makes the unit-time
    /// transform layout close exactly.
    pub fn canonical() -> Self {
        DecayLaw {
            kind: DecayKind::YukawaBase2,
            rho0: PI,
        }
    }

    /// Decay factor for a pair, without `rho0`.
    fn raw(&self, p: usize, q: usize, distance: f64) -> Result<f64> {
        match &self.kind {
            DecayKind::YukawaBase2 => Ok(2f64.powf(-distance) / distance),
            DecayKind::YukawaNatural { b } => Ok((-b * distance).exp() / distance),
            DecayKind::PowerLaw { alpha } => Ok(distance.powf(-alpha)),
            DecayKind::Table(map) => {
                let key = if p > q { (p, q) } else { (q, p) };
                map.get(&key).copied().ok_or(Error::MissingTableEntry(key.0, key.1))
            }
        }
    }
}

/// Which of the two diagonal pair forms is in effect.
#[derive(Debug, Clone, PartialEq)]
pub enum PairForm {
    FormA { rho: f64 },
    /// Entries of diag(rho1..rho4) in the (00, 01, 10, 11) basis of the
    /// (higher, lower) qubit pair.
    FormB { rho: [f64; 4] },
}

impl PairForm {
    pub fn validate(&self) -> Result<()> {
        if let PairForm::FormB { rho } = self {
            if ((rho[0] + rho[3]) - (rho[1] + rho[2])).abs() <= DEGENERACY_TOL {
                return Err(Error::DegenerateCouplings);
            }
        }
        Ok(())
    }

    /// Coefficient of `x_p x_q` before decay scaling.
    fn quadratic_weight(&self) -> f64 {
        match self {
            PairForm::FormA { rho } => *rho,
            PairForm::FormB { rho } => rho[0] - rho[1] - rho[2] + rho[3],
        }
    }
}

/// The full register model: pair form, decay law and qubit coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingModel {
    num_qubits: usize,
    form: PairForm,
    decay: DecayLaw,
    positions: Vec<f64>,
}

impl CouplingModel {
    /// Qubits on a line at integer positions 0, 1, ..., l-1.
    pub fn new(num_qubits: usize, form: PairForm, decay: DecayLaw) -> Result<Self> {
        let positions = (0..num_qubits).map(|j| j as f64).collect();
        Self::with_positions(num_qubits, form, decay, positions)
    }

    /// Arbitrary strictly increasing positions with spacing at least one unit.
    pub fn with_positions(
        num_qubits: usize,
        form: PairForm,
        decay: DecayLaw,
        positions: Vec<f64>,
    ) -> Result<Self> {
        if num_qubits == 0 || num_qubits > MAX_QUBITS {
            return Err(Error::RegisterSize(num_qubits));
        }
        if positions.len() != num_qubits {
            return Err(Error::InvalidPositions(format!(
                "{} positions for {} qubits",
                positions.len(),
                num_qubits
            )));
        }
        for w in positions.windows(2) {
            if !(w[1] - w[0] >= 1.0) {
                return Err(Error::InvalidPositions(
                    "positions must be strictly increasing with spacing >= 1".into(),
                ));
            }
        }
        form.validate()?;
        Ok(Self {
            num_qubits,
            form,
            decay,
            positions,
        })
    }

    /// Form A with rho = pi under the canonical base-2 Yukawa law, at unit
    /// spacing: pair (j, k) couples at pi / (2^{j-k} (j-k)).
    pub fn canonical_qft(num_qubits: usize) -> Result<Self> {
        Self::new(num_qubits, PairForm::FormA { rho: PI }, DecayLaw::canonical())
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn positions(&self) -> &[f64] {
        &self.positions
    }

    pub fn form(&self) -> &PairForm {
        &self.form
    }

    pub fn decay(&self) -> &DecayLaw {
        &self.decay
    }

    fn check_pair(&self, p: usize, q: usize) -> Result<()> {
        if p == q {
            return Err(Error::IdenticalPair(p));
        }
        for &i in &[p, q] {
            if i >= self.num_qubits {
                return Err(Error::QubitOutOfRange {
                    qubit: i,
                    num_qubits: self.num_qubits,
                });
            }
        }
        Ok(())
    }

    pub fn distance(&self, p: usize, q: usize) -> f64 {
        (self.positions[p] - self.positions[q]).abs()
    }

    /// Reference pair coupling d_{p,q} = rho0 * d(r).
    pub fn pair_coefficient(&self, p: usize, q: usize) -> Result<f64> {
        self.check_pair(p, q)?;
        Ok(self.decay.rho0 * self.decay.raw(p, q, self.distance(p, q))?)
    }

    /// Rate at which the pair accrues quadratic phase: the coefficient of
    /// `x_p x_q` in the pair Hamiltonian.
    pub fn quadratic_rate(&self, p: usize, q: usize) -> Result<f64> {
        self.check_pair(p, q)?;
        Ok(self.form.quadratic_weight() * self.decay.raw(p, q, self.distance(p, q))?)
    }

    /// Diagonal of the pair Hamiltonian as a polynomial over the register
    /// bits. Form B expands as
    /// rho1 (1-x_p)(1-x_q) + rho2 (1-x_p) x_q + rho3 x_p (1-x_q) + rho4 x_p x_q
    /// with p the higher index.
    pub fn pair_polynomial(&self, p: usize, q: usize) -> Result<PhasePolynomial> {
        self.check_pair(p, q)?;
        let (hi, lo) = if p > q { (p, q) } else { (q, p) };
        let d = self.decay.raw(hi, lo, self.distance(hi, lo))?;
        let mut poly = PhasePolynomial::zero(self.num_qubits);
        match &self.form {
            PairForm::FormA { rho } => {
                poly.add_quadratic(hi, lo, rho * d);
            }
            PairForm::FormB { rho } => {
                poly.add_constant(rho[0] * d);
                poly.add_linear(hi, (rho[2] - rho[0]) * d);
                poly.add_linear(lo, (rho[1] - rho[0]) * d);
                poly.add_quadratic(hi, lo, (rho[0] - rho[1] - rho[2] + rho[3]) * d);
            }
        }
        Ok(poly)
    }

    /// Sum of all pair Hamiltonians.
    pub fn hamiltonian_polynomial(&self) -> Result<PhasePolynomial> {
        let mut total = PhasePolynomial::zero(self.num_qubits);
        for p in 1..self.num_qubits {
            for q in 0..p {
                total.add_assign(&self.pair_polynomial(p, q)?);
            }
        }
        Ok(total)
    }

    /// Unordered pairs (higher, lower).
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..self.num_qubits).flat_map(|p| (0..p).map(move |q| (p, q)))
    }

    /// True for the model produced by [`CouplingModel::canonical_qft`].
    pub fn is_canonical_qft(&self) -> bool {
        let unit_line = self
            .positions
            .iter()
            .enumerate()
            .all(|(j, &x)| (x - j as f64).abs() < 1e-12);
        let canonical_form = matches!(&self.form, PairForm::FormA { rho } if (rho - PI).abs() < 1e-12);
        let canonical_decay = matches!(self.decay.kind, DecayKind::YukawaBase2)
            && (self.decay.rho0 - PI).abs() < 1e-12;
        unit_line && canonical_form && canonical_decay
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use proptest::prelude::*;

    #[test]
    fn yukawa_natural_adjacent_pair() {
        let model = CouplingModel::new(
            2,
            PairForm::FormA { rho: 1.0 },
            DecayLaw {
                kind: DecayKind::YukawaNatural { b: 1.0 },
                rho0: 1.0,
            },
        )
        .unwrap();
        let d = model.pair_coefficient(1, 0).unwrap();
        assert!((d - (-1.0f64).exp()).abs() < 1e-15); // e^{-1}/1
    }

    #[test]
    fn canonical_coupling_at_distance_two() {
        let model = CouplingModel::canonical_qft(3).unwrap();
        // pi * 2^{-2} / 2 = pi / 8
        assert!((model.pair_coefficient(2, 0).unwrap() - PI / 8.0).abs() < 1e-15);
    }

    #[test]
    fn constant_power_law() {
        let model = CouplingModel::new(
            4,
            PairForm::FormA { rho: 1.0 },
            DecayLaw {
                kind: DecayKind::PowerLaw { alpha: 0.0 },
                rho0: 1.0,
            },
        )
        .unwrap();
        for (p, q) in [(1, 0), (3, 0), (2, 1)] {
            assert_eq!(model.pair_coefficient(p, q).unwrap(), 1.0);
        }
    }

    #[test]
    fn form_a_two_qubit_polynomial() {
        let model = CouplingModel::canonical_qft(2).unwrap();
        let h = model.hamiltonian_polynomial().unwrap();
        assert!((h.quadratic(1, 0) - PI / 2.0).abs() < 1e-15);
        assert_eq!(h.constant(), 0.0);
        assert_eq!(h.linear(0), 0.0);
        assert_eq!(h.linear(1), 0.0);
    }

    #[test]
    fn form_b_expansion() {
        let rho = 0.7;
        let model = CouplingModel::new(
            2,
            PairForm::FormB {
                rho: [rho, 0.0, 0.0, rho],
            },
            DecayLaw {
                kind: DecayKind::YukawaBase2,
                rho0: 1.0,
            },
        )
        .unwrap();
        let d = 0.5; // 2^{-1}/1
        let h = model.hamiltonian_polynomial().unwrap();
        assert!((h.constant() - rho * d).abs() < 1e-15);
        assert!((h.linear(0) + rho * d).abs() < 1e-15);
        assert!((h.linear(1) + rho * d).abs() < 1e-15);
        assert!((h.quadratic(1, 0) - 2.0 * rho * d).abs() < 1e-15);
    }

    #[test]
    fn degenerate_form_b_is_rejected() {
        let result = CouplingModel::new(
            2,
            PairForm::FormB {
                rho: [1.0, 1.5, 0.5, 1.0],
            },
            DecayLaw::canonical(),
        );
        assert!(matches!(result, Err(Error::DegenerateCouplings)));
    }

    #[test]
    fn identical_pair_is_rejected() {
        let model = CouplingModel::canonical_qft(3).unwrap();
        assert!(matches!(model.pair_coefficient(1, 1), Err(Error::IdenticalPair(1))));
    }

    #[test]
    fn positions_must_be_spaced() {
        let result = CouplingModel::with_positions(
            2,
            PairForm::FormA { rho: 1.0 },
            DecayLaw::canonical(),
            vec![0.0, 0.5],
        );
        assert!(matches!(result, Err(Error::InvalidPositions(_))));
    }

    #[test]
    fn table_decay_lookup() {
        let mut map = BTreeMap::new();
        map.insert((1, 0), 0.25);
        let model = CouplingModel::new(
            2,
            PairForm::FormA { rho: 2.0 },
            DecayLaw {
                kind: DecayKind::Table(map),
                rho0: 1.0,
            },
        )
        .unwrap();
        assert_eq!(model.pair_coefficient(0, 1).unwrap(), 0.25);
        assert_eq!(model.quadratic_rate(1, 0).unwrap(), 0.5);
    }

    // The pair polynomial must reproduce the diagonal of the 4x4 pair matrix:
    // evolving each two-qubit basis state for time t multiplies it by
    // exp(-i t H_aa).
    #[test]
    fn polynomial_matches_pair_matrix_diagonal() {
        let rho = [0.3, -0.8, 1.1, 0.9];
        let model = CouplingModel::new(
            2,
            PairForm::FormB { rho },
            DecayLaw {
                kind: DecayKind::YukawaNatural { b: 0.5 },
                rho0: 1.0,
            },
        )
        .unwrap();
        let d = (-0.5f64).exp();
        let poly = model.pair_polynomial(1, 0).unwrap();
        // Basis order (x1, x0): 0 -> 00, 1 -> 01, 2 -> 10, 3 -> 11.
        let diag = [rho[0] * d, rho[1] * d, rho[2] * d, rho[3] * d];
        for a in 0..4 {
            assert!((poly.evaluate(a) - diag[a]).abs() < 1e-14, "entry {a}");
            let t = 0.37;
            let expected = Complex64::cis(-t * diag[a]);
            let mut s = crate::statevector::StateVector::basis_state(2, a).unwrap();
            s.evolve_diagonal(&poly, t).unwrap();
            assert!((s.amplitude(a) - expected).norm() < 1e-14);
        }
    }

    proptest! {
        // Form B minus its linear+constant remainder is form A with
        // rho = rho1 - rho2 - rho3 + rho4.
        #[test]
        fn form_b_reduces_to_form_a(
            r1 in -1.0f64..1.0, r2 in -1.0f64..1.0,
            r3 in -1.0f64..1.0, r4 in -1.0f64..1.0
        ) {
            prop_assume!(((r1 + r4) - (r2 + r3)).abs() > 1e-6);
            let decay = DecayLaw { kind: DecayKind::YukawaBase2, rho0: 1.0 };
            let b = CouplingModel::new(4, PairForm::FormB { rho: [r1, r2, r3, r4] }, decay.clone()).unwrap();
            let a = CouplingModel::new(
                4,
                PairForm::FormA { rho: r1 - r2 - r3 + r4 },
                decay,
            ).unwrap();
            let hb = b.hamiltonian_polynomial().unwrap();
            let ha = a.hamiltonian_polynomial().unwrap();
            let mut remainder = hb.clone();
            remainder.add_assign(&ha.negated());
            // Quadratic parts agree...
            for p in 1..4 {
                for q in 0..p {
                    prop_assert!((hb.quadratic(p, q) - ha.quadratic(p, q)).abs() < 1e-12);
                }
            }
            // ...and the remainder is affine.
            prop_assert!(remainder.quadratic_part().is_zero(1e-12));
        }

        #[test]
        fn yukawa_decay_is_monotone(b in 0.1f64..2.0) {
            let model = CouplingModel::new(
                6,
                PairForm::FormA { rho: 1.0 },
                DecayLaw { kind: DecayKind::YukawaNatural { b }, rho0: 1.0 },
            ).unwrap();
            let mut last = f64::INFINITY;
            for r in 1..6 {
                let d = model.pair_coefficient(r, 0).unwrap();
                prop_assert!(d < last);
                last = d;
            }
        }
    }
}
