//! Phase polynomials over classical bits.
//!
//! A diagonal Hamiltonian on `l` qubits is described by a real function of
//! the basis bits of degree at most two,
//!
//!   Phi(x) = c + sum_j L_j x_j + sum_{j>k} Q_{j,k} x_j x_k,   x_j in {0, 1},
//!
//! and evolution for a time `t` multiplies the amplitude of basis state `x`
//! by `exp(-i t Phi(x))`. Quadratic keys are stored with the larger qubit
//! index first.

use std::collections::BTreeMap;

/// Constant + linear + quadratic phase function of register bits.
#[derive(Debug, Clone, PartialEq)]
pub struct PhasePolynomial {
    num_bits: usize,
    constant: f64,
    linear: Vec<f64>,
    quadratic: BTreeMap<(usize, usize), f64>,
}

impl PhasePolynomial {
    /// The zero polynomial over `num_bits` bits.
    pub fn zero(num_bits: usize) -> Self {
        Self {
            num_bits,
            constant: 0.0,
            linear: vec![0.0; num_bits],
            quadratic: BTreeMap::new(),
        }
    }

    pub fn num_bits(&self) -> usize {
        self.num_bits
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    pub fn linear(&self, j: usize) -> f64 {
        self.linear[j]
    }

    /// Coefficient of `x_j x_k`; the key order does not matter.
    pub fn quadratic(&self, j: usize, k: usize) -> f64 {
        let key = Self::key(j, k);
        self.quadratic.get(&key).copied().unwrap_or(0.0)
    }

    pub fn add_constant(&mut self, c: f64) {
        self.constant += c;
    }

    pub fn add_linear(&mut self, j: usize, c: f64) {
        assert!(j < self.num_bits, "bit index out of range");
        self.linear[j] += c;
    }

    /// Adds `c * x_j x_k`. Panics if `j == k`.
    pub fn add_quadratic(&mut self, j: usize, k: usize, c: f64) {
        assert!(j != k, "quadratic term needs two distinct bits");
        assert!(j < self.num_bits && k < self.num_bits, "bit index out of range");
        *self.quadratic.entry(Self::key(j, k)).or_insert(0.0) += c;
    }

    fn key(j: usize, k: usize) -> (usize, usize) {
        if j > k {
            (j, k)
        } else {
            (k, j)
        }
    }

    /// Exact evaluation on the bits of `basis`.
    pub fn evaluate(&self, basis: usize) -> f64 {
        let mut value = self.constant;
        for (j, c) in self.linear.iter().enumerate() {
            if (basis >> j) & 1 == 1 {
                value += c;
            }
        }
        for (&(j, k), c) in &self.quadratic {
            if (basis >> j) & 1 == 1 && (basis >> k) & 1 == 1 {
                value += c;
            }
        }
        value
    }

    /// All `2^num_bits` evaluations, indexed by basis integer.
    pub fn phase_table(&self) -> Vec<f64> {
        (0..1usize << self.num_bits).map(|a| self.evaluate(a)).collect()
    }

    /// Quadratic terms with the larger bit index first, in key order.
    pub fn quadratic_terms(&self) -> impl Iterator<Item = ((usize, usize), f64)> + '_ {
        self.quadratic.iter().map(|(&key, &c)| (key, c))
    }

    /// True when every coefficient vanishes within `tol`.
    pub fn is_zero(&self, tol: f64) -> bool {
        self.constant.abs() <= tol
            && self.linear.iter().all(|c| c.abs() <= tol)
            && self.quadratic.values().all(|c| c.abs() <= tol)
    }

    pub fn scale(&mut self, factor: f64) {
        self.constant *= factor;
        for c in &mut self.linear {
            *c *= factor;
        }
        for c in self.quadratic.values_mut() {
            *c *= factor;
        }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = self.clone();
        out.scale(factor);
        out
    }

    pub fn negated(&self) -> Self {
        self.scaled(-1.0)
    }

    /// Adds `other` coefficient-wise. Panics on width mismatch.
    pub fn add_assign(&mut self, other: &PhasePolynomial) {
        assert_eq!(self.num_bits, other.num_bits, "bit width mismatch");
        self.constant += other.constant;
        for (j, c) in other.linear.iter().enumerate() {
            self.linear[j] += c;
        }
        for (&(j, k), c) in &other.quadratic {
            self.add_quadratic(j, k, *c);
        }
    }

    /// Only the quadratic terms.
    pub fn quadratic_part(&self) -> Self {
        let mut out = Self::zero(self.num_bits);
        for (&key, &c) in &self.quadratic {
            out.quadratic.insert(key, c);
        }
        out
    }

    /// Only the constant and linear terms.
    pub fn affine_part(&self) -> Self {
        let mut out = Self::zero(self.num_bits);
        out.constant = self.constant;
        out.linear.clone_from(&self.linear);
        out
    }

    /// Re-indexes every bit through `map` (a bijection on `0..num_bits`).
    pub fn map_bits(&self, map: impl Fn(usize) -> usize) -> Self {
        let mut out = Self::zero(self.num_bits);
        out.constant = self.constant;
        for (j, c) in self.linear.iter().enumerate() {
            if *c != 0.0 {
                out.add_linear(map(j), *c);
            }
        }
        for (&(j, k), &c) in &self.quadratic {
            if c != 0.0 {
                out.add_quadratic(map(j), map(k), c);
            }
        }
        out
    }
}
