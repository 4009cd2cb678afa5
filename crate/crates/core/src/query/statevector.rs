use std::cell::Cell;

use num_complex::Complex64;

use crate::correspondence::apply_single_qubit;
use crate::error::{Error, Result};
use crate::matrix::{gate, CMatrix, GateName, ONE, ZERO};
use crate::oracle::{phase_oracle, standard_oracle, BVInstance, BooleanFunction, OracleAction};

const NORM_TOL: f64 = 1e-9;
const MAX_SIM_QUBITS: usize = 20;

/// Pure state on `qubits` qubits, qubit 1 as the most significant bit.
/// Every gate and oracle application re-checks the norm.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    qubits: usize,
    amps: Vec<Complex64>,
}

impl Statevector {
    pub fn basis(qubits: usize, index: usize) -> Result<Self> {
        if qubits > MAX_SIM_QUBITS {
            return Err(Error::SizeLimit {
                what: "simulated qubits",
                limit: MAX_SIM_QUBITS,
                got: qubits,
            });
        }
        if index >= 1 << qubits {
            return Err(Error::Invalid(format!("basis index {index} out of range")));
        }
        let mut amps = vec![ZERO; 1 << qubits];
        amps[index] = ONE;
        Ok(Statevector { qubits, amps })
    }

    pub fn zero(qubits: usize) -> Result<Self> {
        Self::basis(qubits, 0)
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    fn check_norm(&self) -> Result<()> {
        let norm = self.norm();
        if (norm - 1.0).abs() < NORM_TOL {
            Ok(())
        } else {
            Err(Error::Invalid(format!("state norm drifted to {norm}")))
        }
    }

    pub fn apply_gate(&mut self, qubit: usize, m: &CMatrix) -> Result<()> {
        if qubit == 0 || qubit > self.qubits {
            return Err(Error::Invalid(format!("qubit {qubit} out of range")));
        }
        if m.dim() != 2 {
            return Err(Error::DimensionMismatch {
                left: 2,
                right: m.dim(),
            });
        }
        apply_single_qubit(&mut self.amps, self.qubits, qubit, m);
        self.check_norm()
    }

    pub fn apply_to_all(&mut self, m: &CMatrix) -> Result<()> {
        for q in 1..=self.qubits {
            self.apply_gate(q, m)?;
        }
        Ok(())
    }

    pub fn apply_oracle(&mut self, oracle: &CountingOracle) -> Result<()> {
        self.amps = oracle.apply(&self.amps)?;
        self.check_norm()
    }

    pub fn probability_of_one(&self, qubit: usize) -> f64 {
        let mask = 1usize << (self.qubits - qubit);
        self.amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i & mask != 0)
            .map(|(_, z)| z.norm_sqr())
            .sum()
    }

    /// Outcome of measuring `qubit` in the computational basis when it is
    /// certain to within `tol`.
    pub fn certain_bit(&self, qubit: usize, tol: f64) -> Option<bool> {
        let p = self.probability_of_one(qubit);
        if p > 1.0 - tol {
            Some(true)
        } else if p < tol {
            Some(false)
        } else {
            None
        }
    }

    /// The basis index holding all the probability, if one does.
    pub fn certain_outcome(&self, tol: f64) -> Option<usize> {
        self.amps.iter().position(|z| z.norm_sqr() > 1.0 - tol)
    }
}

/// Oracle wrapper that counts applications.
#[derive(Debug)]
pub struct CountingOracle {
    oracle: OracleAction,
    calls: Cell<usize>,
}

impl CountingOracle {
    pub fn new(oracle: OracleAction) -> Self {
        CountingOracle {
            oracle,
            calls: Cell::new(0),
        }
    }

    pub fn apply(&self, state: &[Complex64]) -> Result<Vec<Complex64>> {
        self.calls.set(self.calls.get() + 1);
        self.oracle.apply(state)
    }

    pub fn calls(&self) -> usize {
        self.calls.get()
    }
}

/// `H^⊗n`, one phase-oracle query, `H^⊗n` on `|0…0⟩`; the result is `|k⟩`.
pub fn run_bv_quantum(inst: &BVInstance) -> Result<(Vec<bool>, usize)> {
    let n = inst.n();
    if n > 16 {
        return Err(Error::SizeLimit {
            what: "BV simulation bits",
            limit: 16,
            got: n,
        });
    }
    let oracle = CountingOracle::new(phase_oracle(inst));
    let h = gate(GateName::Hadamard);
    let mut state = Statevector::zero(n)?;
    state.apply_to_all(&h)?;
    state.apply_oracle(&oracle)?;
    state.apply_to_all(&h)?;
    let k = state
        .certain_outcome(NORM_TOL)
        .ok_or_else(|| Error::Invalid("BV circuit did not end in a basis state".into()))?;
    let bits = (0..n).map(|j| (k >> (n - 1 - j)) & 1 == 1).collect();
    Ok((bits, oracle.calls()))
}

/// Runs one Deutsch step per setting of `x₂…xₙ`: qubit 1 in `η₀`, the query
/// qubit in `η₁`, one standard-oracle query, then qubit 1 read in the η
/// basis gives `f(0,x₂..) ⊕ f(1,x₂..)`. The XOR of all steps is the parity.
pub fn run_parity_quantum(f: &BooleanFunction) -> Result<(bool, usize)> {
    let n = f.n();
    if n == 0 || n > 12 {
        return Err(Error::SizeLimit {
            what: "PARITY simulation bits",
            limit: 12,
            got: n,
        });
    }
    let oracle = CountingOracle::new(standard_oracle(f));
    let h = gate(GateName::Hadamard);
    let qubits = n + 1;
    let mut parity = false;
    for rest in 0..1usize << (n - 1) {
        // qubit 1 = 0, qubits 2..n = rest, query qubit = 1
        let mut state = Statevector::basis(qubits, (rest << 1) | 1)?;
        state.apply_gate(1, &h)?;
        state.apply_gate(qubits, &h)?;
        state.apply_oracle(&oracle)?;
        state.apply_gate(1, &h)?;
        let c = state
            .certain_bit(1, NORM_TOL)
            .ok_or_else(|| Error::Invalid("Deutsch step gave a random outcome".into()))?;
        parity ^= c;
    }
    Ok((parity, oracle.calls()))
}
