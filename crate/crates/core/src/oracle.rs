//! Boolean functions, Bernstein-Vazirani promise instances, and the quantum
//! and classical oracles built from them.
//!
//! Register layout for oracles with a query bit: index = `(x << 1) | y`, so
//! `x₁` is the most significant bit and `y` the least significant.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{detect_generalized_permutation, CMatrix, GeneralizedPermutation, ONE, ZERO};

/// Largest input width accepted for truth tables.
pub const MAX_INPUT_BITS: usize = 16;

/// Truth table of `f: {0,1}^n → {0,1}`; index `x` has `x₁` as its MSB.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FunctionJson", into = "FunctionJson")]
pub struct BooleanFunction {
    n: usize,
    truth: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct FunctionJson {
    n: usize,
    truth: Vec<u8>,
}

impl TryFrom<FunctionJson> for BooleanFunction {
    type Error = Error;

    fn try_from(raw: FunctionJson) -> Result<Self> {
        let truth = raw
            .truth
            .iter()
            .map(|&b| match b {
                0 => Ok(false),
                1 => Ok(true),
                other => Err(Error::Invalid(format!("truth entry {other} is not a bit"))),
            })
            .collect::<Result<Vec<_>>>()?;
        BooleanFunction::new(raw.n, truth)
    }
}

impl From<BooleanFunction> for FunctionJson {
    fn from(f: BooleanFunction) -> Self {
        FunctionJson {
            n: f.n,
            truth: f.truth.iter().map(|&b| b as u8).collect(),
        }
    }
}

impl BooleanFunction {
    pub fn new(n: usize, truth: Vec<bool>) -> Result<Self> {
        if n > MAX_INPUT_BITS {
            return Err(Error::SizeLimit {
                what: "function input bits",
                limit: MAX_INPUT_BITS,
                got: n,
            });
        }
        if truth.len() != 1 << n {
            return Err(Error::Invalid(format!(
                "truth table for n={n} needs {} entries, got {}",
                1usize << n,
                truth.len()
            )));
        }
        Ok(BooleanFunction { n, truth })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize) -> bool) -> Result<Self> {
        if n > MAX_INPUT_BITS {
            return Err(Error::SizeLimit {
                what: "function input bits",
                limit: MAX_INPUT_BITS,
                got: n,
            });
        }
        Self::new(n, (0..1usize << n).map(f).collect())
    }

    /// Function whose truth table is the low `2^n` bits of `table`
    /// (bit `x` of `table` is `f(x)`).
    pub fn from_table_bits(n: usize, table: u64) -> Result<Self> {
        if n > 6 {
            return Err(Error::SizeLimit {
                what: "function input bits for a packed table",
                limit: 6,
                got: n,
            });
        }
        Self::from_fn(n, |x| (table >> x) & 1 == 1)
    }

    /// Parses a truth-table string such as `"0110"`.
    pub fn parse_truth(text: &str) -> Result<Self> {
        let truth = parse_bits(text)?;
        if !truth.len().is_power_of_two() {
            return Err(Error::Invalid(format!(
                "truth table length {} is not a power of two",
                truth.len()
            )));
        }
        Self::new(truth.len().trailing_zeros() as usize, truth)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn truth(&self) -> &[bool] {
        &self.truth
    }

    pub fn eval(&self, x: usize) -> bool {
        self.truth[x]
    }

    /// Parity of the number of ones in the truth table.
    pub fn parity(&self) -> bool {
        self.truth.iter().filter(|&&b| b).count() % 2 == 1
    }

    /// `f(0,x₂..xₙ) ⊕ f(1,x₂..xₙ)` for the given `x`.
    pub fn top_bit_difference(&self, x: usize) -> bool {
        let top = 1usize << (self.n - 1);
        self.truth[x & !top] ^ self.truth[x | top]
    }
}

/// Parses a string of `0`/`1` characters.
pub fn parse_bits(text: &str) -> Result<Vec<bool>> {
    text.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::Invalid(format!("'{other}' is not a bit"))),
        })
        .collect()
}

pub fn format_bits(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Promise instance `f(x) = k₀ ⊕ k·x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "BvJson", into = "BvJson")]
pub struct BVInstance {
    n: usize,
    k0: bool,
    k: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct BvJson {
    n: usize,
    k0: u8,
    k: Vec<u8>,
}

impl TryFrom<BvJson> for BVInstance {
    type Error = Error;

    fn try_from(raw: BvJson) -> Result<Self> {
        let bit = |b: u8| match b {
            0 => Ok(false),
            1 => Ok(true),
            other => Err(Error::Invalid(format!("{other} is not a bit"))),
        };
        let k = raw.k.iter().map(|&b| bit(b)).collect::<Result<Vec<_>>>()?;
        BVInstance::new(raw.n, bit(raw.k0)?, k)
    }
}

impl From<BVInstance> for BvJson {
    fn from(inst: BVInstance) -> Self {
        BvJson {
            n: inst.n,
            k0: inst.k0 as u8,
            k: inst.k.iter().map(|&b| b as u8).collect(),
        }
    }
}

impl BVInstance {
    pub fn new(n: usize, k0: bool, k: Vec<bool>) -> Result<Self> {
        if k.len() != n {
            return Err(Error::Invalid(format!(
                "secret string has {} bits, expected {n}",
                k.len()
            )));
        }
        if n > MAX_INPUT_BITS {
            return Err(Error::SizeLimit {
                what: "secret string bits",
                limit: MAX_INPUT_BITS,
                got: n,
            });
        }
        Ok(BVInstance { n, k0, k })
    }

    /// Instance whose secret has `k₁` as the MSB of `mask`.
    pub fn from_mask(n: usize, k0: bool, mask: usize) -> Result<Self> {
        if n > MAX_INPUT_BITS || mask >> n != 0 {
            return Err(Error::Invalid(format!(
                "mask {mask:#b} does not fit {n} bits"
            )));
        }
        let k = (0..n).map(|j| (mask >> (n - 1 - j)) & 1 == 1).collect();
        Self::new(n, k0, k)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k0(&self) -> bool {
        self.k0
    }

    pub fn k(&self) -> &[bool] {
        &self.k
    }

    /// The secret as an index with `k₁` as the MSB.
    pub fn k_mask(&self) -> usize {
        self.k.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
    }

    /// `k·x mod 2`.
    pub fn dot(&self, x: usize) -> bool {
        (self.k_mask() & x).count_ones() % 2 == 1
    }
}

pub fn bv_function(inst: &BVInstance) -> BooleanFunction {
    let mask = inst.k_mask();
    BooleanFunction::from_fn(inst.n, |x| inst.k0 ^ ((mask & x).count_ones() % 2 == 1))
        .expect("instance width already validated")
}

#[derive(Debug, Clone, PartialEq)]
enum ActionKind {
    Structured(GeneralizedPermutation),
    Dense(CMatrix),
}

/// A unitary given by its action on state vectors. Generalized
/// permutations are kept in structured form so columns can be produced
/// without materializing a dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleAction {
    qubits: usize,
    kind: ActionKind,
}

impl OracleAction {
    pub fn from_generalized_permutation(g: GeneralizedPermutation) -> Self {
        OracleAction {
            qubits: g.bits(),
            kind: ActionKind::Structured(g),
        }
    }

    /// Wraps a dense matrix, switching to the structured form when the
    /// matrix is exactly (to 1e-12) a generalized permutation.
    pub fn from_matrix(m: CMatrix) -> Result<Self> {
        let qubits = m.qubits()?;
        let kind = match detect_generalized_permutation(&m, 1e-12)? {
            Some(g) => ActionKind::Structured(g),
            None => ActionKind::Dense(m),
        };
        Ok(OracleAction { qubits, kind })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.qubits
    }

    pub fn as_generalized_permutation(&self) -> Option<&GeneralizedPermutation> {
        match &self.kind {
            ActionKind::Structured(g) => Some(g),
            ActionKind::Dense(_) => None,
        }
    }

    pub fn apply(&self, state: &[Complex64]) -> Result<Vec<Complex64>> {
        match &self.kind {
            ActionKind::Structured(g) => {
                if state.len() != g.size() {
                    return Err(Error::DimensionMismatch {
                        left: g.size(),
                        right: state.len(),
                    });
                }
                let mut out = vec![ZERO; g.size()];
                for (j, &amp) in state.iter().enumerate() {
                    let (row, phase) = g.column_entry(j);
                    out[row] = phase * amp;
                }
                Ok(out)
            }
            ActionKind::Dense(m) => m.apply(state),
        }
    }

    /// Image of basis vector `index`.
    pub fn apply_basis(&self, index: usize) -> Vec<Complex64> {
        let mut e = vec![ZERO; self.dim()];
        e[index] = ONE;
        self.apply(&e).expect("basis vector has the right length")
    }

    pub fn to_matrix(&self) -> CMatrix {
        match &self.kind {
            ActionKind::Structured(g) => g.to_matrix(),
            ActionKind::Dense(m) => m.clone(),
        }
    }
}

/// `|x⟩|y⟩ ↦ |x⟩|y ⊕ f(x)⟩` on `n + 1` qubits, all phases 1.
pub fn standard_oracle(f: &BooleanFunction) -> OracleAction {
    OracleAction::from_generalized_permutation(classical_os(f))
}

/// `|x⟩ ↦ (−1)^{x·k}|x⟩` on `n` qubits. `k₀` only contributes a global
/// phase and is dropped.
pub fn phase_oracle(inst: &BVInstance) -> OracleAction {
    let phases = (0..1usize << inst.n)
        .map(|x| if inst.dot(x) { -ONE } else { ONE })
        .collect();
    let g = GeneralizedPermutation::new(inst.n, (0..1usize << inst.n).collect(), phases)
        .expect("diagonal sign matrix");
    OracleAction::from_generalized_permutation(g)
}

/// `(x, y) ↦ (x, y ⊕ f(x))`.
pub fn classical_os(f: &BooleanFunction) -> GeneralizedPermutation {
    GeneralizedPermutation::from_fn(f.n + 1, |i| i ^ f.eval(i >> 1) as usize)
        .expect("XOR on the query bit is a bijection")
}

/// `(x, y) ↦ (x ⊕ (c,0,…,0), y)` with `c = f(0,x₂..) ⊕ f(1,x₂..)`,
/// flipping `x₁` regardless of `y`.
pub fn classical_oa(f: &BooleanFunction) -> Result<GeneralizedPermutation> {
    if f.n == 0 {
        return Err(Error::Invalid("O_A needs at least one input bit".into()));
    }
    let top = 1usize << f.n;
    Ok(GeneralizedPermutation::from_fn(f.n + 1, |i| {
        if f.top_bit_difference(i >> 1) {
            i ^ top
        } else {
            i
        }
    })
    .expect("c does not depend on x₁, so the map is a bijection"))
}

/// `(x, y) ↦ (x ⊕ k, y)`.
pub fn classical_ob(inst: &BVInstance) -> GeneralizedPermutation {
    let mask = inst.k_mask() << 1;
    GeneralizedPermutation::from_fn(inst.n + 1, |i| i ^ mask).expect("XOR mask is a bijection")
}

/// `x ↦ x ⊕ k` on `n` bits, no query bit.
pub fn classical_ob_tilde(inst: &BVInstance) -> GeneralizedPermutation {
    let mask = inst.k_mask();
    GeneralizedPermutation::from_fn(inst.n, |x| x ^ mask).expect("XOR mask is a bijection")
}
