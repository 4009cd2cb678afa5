//! Oracle problems, classical oracle families, exact deterministic query
//! complexity, quantum simulation with query counting, and speed-up reports.

mod minimax;
mod report;
mod statevector;

pub use minimax::deterministic_query_complexity;
pub use report::{speedup_report, QueryReport, ReportEntry, SpeedupConfig};
pub use statevector::{run_bv_quantum, run_parity_quantum, CountingOracle, Statevector};

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::correspondence::{extract_counterpart, BasisAssignment};
use crate::error::{Error, Result};
use crate::matrix::GeneralizedPermutation;
use crate::oracle::{
    bv_function, classical_oa, classical_ob, classical_ob_tilde, classical_os, phase_oracle,
    standard_oracle, BVInstance, BooleanFunction, OracleAction,
};

/// Largest hypothesis set accepted by the minimax search.
pub const MAX_HYPOTHESES: usize = 65536;
/// Largest oracle register accepted by the minimax search.
pub const MAX_QUERY_BITS: usize = 12;
/// Largest PARITY size solved exactly.
pub const MAX_PARITY_N: usize = 2;
/// Largest Bernstein-Vazirani size solved exactly.
pub const MAX_BV_N: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemKind {
    /// Decide whether `Σ f(x)` is even or odd.
    Parity,
    /// Identify `k` in `f(x) = k₀ ⊕ k·x`.
    #[serde(rename = "bv")]
    BvIdentify,
}

impl FromStr for ProblemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "parity" => Ok(ProblemKind::Parity),
            "bv" => Ok(ProblemKind::BvIdentify),
            other => Err(Error::Invalid(format!("unknown problem '{other}'"))),
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProblemKind::Parity => "parity",
            ProblemKind::BvIdentify => "bv",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Hypothesis {
    pub id: usize,
    pub function: BooleanFunction,
    /// Present for Bernstein-Vazirani problems.
    pub instance: Option<BVInstance>,
    /// Parity bit, or the secret `k` as an MSB-first mask.
    pub label: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    kind: ProblemKind,
    n: usize,
    hypotheses: Vec<Hypothesis>,
}

impl ProblemSpec {
    /// All `2^(2^n)` functions on `n` bits, labelled by parity.
    pub fn parity(n: usize) -> Result<Self> {
        if n == 0 || n > 4 {
            return Err(Error::SizeLimit {
                what: "PARITY input bits",
                limit: 4,
                got: n,
            });
        }
        let count = 1u64 << (1u32 << n);
        let hypotheses = (0..count)
            .map(|table| {
                let function = BooleanFunction::from_table_bits(n, table)?;
                Ok(Hypothesis {
                    id: table as usize,
                    label: function.parity() as u64,
                    function,
                    instance: None,
                })
            })
            .collect::<Result<_>>()?;
        Ok(ProblemSpec {
            kind: ProblemKind::Parity,
            n,
            hypotheses,
        })
    }

    /// All `2^(n+1)` promise functions `k₀ ⊕ k·x`, labelled by `k`.
    pub fn bv(n: usize) -> Result<Self> {
        if n == 0 || n > 15 {
            return Err(Error::SizeLimit {
                what: "BV secret bits",
                limit: 15,
                got: n,
            });
        }
        let mut hypotheses = Vec::with_capacity(1 << (n + 1));
        for k0 in [false, true] {
            for mask in 0..1usize << n {
                let inst = BVInstance::from_mask(n, k0, mask)?;
                hypotheses.push(Hypothesis {
                    id: hypotheses.len(),
                    function: bv_function(&inst),
                    instance: Some(inst),
                    label: mask as u64,
                });
            }
        }
        Ok(ProblemSpec {
            kind: ProblemKind::BvIdentify,
            n,
            hypotheses,
        })
    }

    pub fn new(kind: ProblemKind, n: usize) -> Result<Self> {
        match kind {
            ProblemKind::Parity => Self::parity(n),
            ProblemKind::BvIdentify => Self::bv(n),
        }
    }

    pub fn kind(&self) -> ProblemKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn hypotheses(&self) -> &[Hypothesis] {
        &self.hypotheses
    }

    pub fn labels(&self) -> Vec<u64> {
        self.hypotheses.iter().map(|h| h.label).collect()
    }

    /// The standard quantum oracle of every hypothesis.
    pub fn standard_oracles(&self) -> Vec<OracleAction> {
        self.hypotheses
            .iter()
            .map(|h| standard_oracle(&h.function))
            .collect()
    }

    fn instances(&self, what: &str) -> Result<Vec<&BVInstance>> {
        self.hypotheses
            .iter()
            .map(|h| {
                h.instance.as_ref().ok_or_else(|| {
                    Error::Invalid(format!("{what} is only defined for BV problems"))
                })
            })
            .collect()
    }
}

/// One bit-string map per hypothesis. A classical query submits an input
/// string and observes the full output string; phases are not observable.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalOracleFamily {
    bits: usize,
    maps: Vec<Vec<usize>>,
}

impl ClassicalOracleFamily {
    pub fn new(members: &[GeneralizedPermutation]) -> Result<Self> {
        let bits = members
            .first()
            .map(GeneralizedPermutation::bits)
            .ok_or_else(|| Error::Invalid("empty oracle family".into()))?;
        if let Some(bad) = members.iter().find(|g| g.bits() != bits) {
            return Err(Error::DimensionMismatch {
                left: bits,
                right: bad.bits(),
            });
        }
        Ok(ClassicalOracleFamily {
            bits,
            maps: members.iter().map(|g| g.perm().to_vec()).collect(),
        })
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// Output observed when hypothesis `h` is queried with `input`.
    pub fn answer(&self, h: usize, input: usize) -> usize {
        self.maps[h][input]
    }

    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }
}

/// Classical oracles that can be attached to a problem.
#[derive(Debug, Clone, PartialEq)]
pub enum NamedOracle {
    /// `(x, y) ↦ (x, y ⊕ f(x))`
    Os,
    /// `(x, y) ↦ (x ⊕ (c,0,…,0), y)`
    Oa,
    /// `(x, y) ↦ (x ⊕ k, y)`
    Ob,
    /// `x ↦ x ⊕ k`
    ObTilde,
    /// Counterpart extracted under a `{C, H}` word: length `n + 1` uses the
    /// standard oracle, length `n` the phase oracle (BV only).
    Extracted(BasisAssignment),
}

impl FromStr for NamedOracle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(word) = s.strip_prefix("extracted:") {
            return Ok(NamedOracle::Extracted(word.parse()?));
        }
        match s.to_ascii_uppercase().as_str() {
            "OS" => Ok(NamedOracle::Os),
            "OA" => Ok(NamedOracle::Oa),
            "OB" => Ok(NamedOracle::Ob),
            "OBT" => Ok(NamedOracle::ObTilde),
            _ => Err(Error::Invalid(format!(
                "unknown oracle '{s}' (OS, OA, OB, OBT, extracted:WORD)"
            ))),
        }
    }
}

impl fmt::Display for NamedOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedOracle::Os => f.write_str("OS"),
            NamedOracle::Oa => f.write_str("OA"),
            NamedOracle::Ob => f.write_str("OB"),
            NamedOracle::ObTilde => f.write_str("OBT"),
            NamedOracle::Extracted(word) => write!(f, "extracted:{word}"),
        }
    }
}

/// Builds the classical family of `oracle` over every hypothesis of `p`.
pub fn oracle_family(
    p: &ProblemSpec,
    oracle: &NamedOracle,
    tol: f64,
) -> Result<ClassicalOracleFamily> {
    let members: Vec<GeneralizedPermutation> = match oracle {
        NamedOracle::Os => p
            .hypotheses
            .iter()
            .map(|h| classical_os(&h.function))
            .collect(),
        NamedOracle::Oa => p
            .hypotheses
            .iter()
            .map(|h| classical_oa(&h.function))
            .collect::<Result<_>>()?,
        NamedOracle::Ob => p.instances("OB")?.into_iter().map(classical_ob).collect(),
        NamedOracle::ObTilde => p
            .instances("OBT")?
            .into_iter()
            .map(classical_ob_tilde)
            .collect(),
        NamedOracle::Extracted(bases) => {
            let quantum: Vec<OracleAction> = if bases.len() == p.n + 1 {
                p.standard_oracles()
            } else if bases.len() == p.n && p.kind == ProblemKind::BvIdentify {
                p.instances("phase oracle")?
                    .into_iter()
                    .map(phase_oracle)
                    .collect()
            } else {
                return Err(Error::ArityMismatch {
                    expected: p.n + 1,
                    got: bases.len(),
                });
            };
            quantum
                .iter()
                .zip(&p.hypotheses)
                .map(|(u, h)| {
                    extract_counterpart(u, bases, tol)?.ok_or_else(|| {
                        Error::Invalid(format!(
                            "hypothesis {} has no counterpart under bases {bases}",
                            h.id
                        ))
                    })
                })
                .collect::<Result<_>>()?
        }
    };
    ClassicalOracleFamily::new(&members)
}
