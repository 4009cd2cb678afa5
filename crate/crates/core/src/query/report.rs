use serde::Serialize;

use super::{
    deterministic_query_complexity, oracle_family, run_bv_quantum, run_parity_quantum,
    ClassicalOracleFamily, NamedOracle, ProblemKind, ProblemSpec,
};
use crate::correspondence::{search_family_counterparts, SearchSpace};
use crate::error::{Error, Result};
use crate::DEFAULT_TOL;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpeedupConfig {
    pub space: SearchSpace,
    pub tol: f64,
}

impl Default for SpeedupConfig {
    fn default() -> Self {
        SpeedupConfig {
            space: SearchSpace::PauliGrid,
            tol: DEFAULT_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportEntry {
    pub oracle: String,
    /// `None` (JSON `null`) when the family cannot solve the problem.
    pub queries: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QueryReport {
    pub problem: ProblemKind,
    pub n: usize,
    pub entries: Vec<ReportEntry>,
    pub quantum_queries: u32,
    /// Standard classical oracle count over the quantum count.
    pub naive_speedup: f64,
    /// Best classical counterpart count over the quantum count.
    pub genuine_speedup: f64,
}

impl QueryReport {
    pub fn new(problem: ProblemKind, n: usize, quantum_queries: u32) -> Self {
        QueryReport {
            problem,
            n,
            entries: Vec::new(),
            quantum_queries,
            naive_speedup: f64::INFINITY,
            genuine_speedup: f64::INFINITY,
        }
    }

    pub fn push(&mut self, entry: ReportEntry) {
        self.entries.push(entry);
        self.recompute();
    }

    fn ratio(&self, classical: Option<u32>) -> f64 {
        match classical {
            Some(c) => c as f64 / self.quantum_queries as f64,
            None => f64::INFINITY,
        }
    }

    fn recompute(&mut self) {
        let standard = self
            .entries
            .iter()
            .find(|e| e.oracle == NamedOracle::Os.to_string())
            .and_then(|e| e.queries);
        let best = self.entries.iter().filter_map(|e| e.queries).min();
        self.naive_speedup = self.ratio(standard);
        self.genuine_speedup = self.ratio(best);
    }

    pub fn best_classical(&self) -> Option<u32> {
        self.entries.iter().filter_map(|e| e.queries).min()
    }
}

/// Maximum quantum query count over all hypotheses, verifying each run.
fn quantum_queries(p: &ProblemSpec) -> Result<u32> {
    let mut worst = 0;
    for h in p.hypotheses() {
        let calls = match p.kind() {
            ProblemKind::Parity => {
                let (parity, calls) = run_parity_quantum(&h.function)?;
                if parity as u64 != h.label {
                    return Err(Error::Invalid(format!(
                        "wrong parity for hypothesis {}",
                        h.id
                    )));
                }
                calls
            }
            ProblemKind::BvIdentify => {
                let inst = h.instance.as_ref().expect("BV hypotheses carry instances");
                let (k, calls) = run_bv_quantum(inst)?;
                if k != inst.k() {
                    return Err(Error::Invalid(format!(
                        "wrong secret for hypothesis {}",
                        h.id
                    )));
                }
                calls
            }
        };
        worst = worst.max(calls as u32);
    }
    Ok(worst)
}

/// Compares the quantum algorithm with the standard classical oracle and
/// with every classical counterpart family found in `cfg.space`.
pub fn speedup_report(p: &ProblemSpec, cfg: &SpeedupConfig) -> Result<QueryReport> {
    let mut report = QueryReport::new(p.kind(), p.n(), quantum_queries(p)?);
    let named: &[NamedOracle] = match p.kind() {
        ProblemKind::Parity => &[NamedOracle::Os, NamedOracle::Oa],
        ProblemKind::BvIdentify => &[NamedOracle::Os, NamedOracle::Ob],
    };
    for oracle in named {
        let fam = oracle_family(p, oracle, cfg.tol)?;
        report.push(ReportEntry {
            oracle: oracle.to_string(),
            queries: deterministic_query_complexity(p, &fam)?,
        });
    }
    let found = search_family_counterparts(&p.standard_oracles(), cfg.space, cfg.tol)?;
    for (bases, maps) in found {
        let fam = ClassicalOracleFamily::new(&maps)?;
        report.push(ReportEntry {
            oracle: NamedOracle::Extracted(bases).to_string(),
            queries: deterministic_query_complexity(p, &fam)?,
        });
    }
    Ok(report)
}
