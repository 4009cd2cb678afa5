use std::collections::{HashMap, HashSet};

use super::{
    ClassicalOracleFamily, ProblemKind, ProblemSpec, MAX_BV_N, MAX_HYPOTHESES, MAX_PARITY_N,
    MAX_QUERY_BITS,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
enum Bound {
    Exact(u32),
    AtLeast(u32),
}

/// Adaptive decision-tree search over sets of still-consistent hypotheses.
struct Solver {
    /// `answers[q][h]`: output seen when hypothesis `h` is queried with `q`.
    answers: Vec<Vec<u32>>,
    labels: Vec<u64>,
    memo: HashMap<Vec<u32>, Bound>,
}

impl Solver {
    fn homogeneous(&self, set: &[u32]) -> bool {
        let first = self.labels[set[0] as usize];
        set.iter().all(|&h| self.labels[h as usize] == first)
    }

    /// Distinct splitting partitions of `set`, most balanced first.
    fn partitions(&self, set: &[u32]) -> Vec<Vec<Vec<u32>>> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for row in &self.answers {
            let mut groups: Vec<(u32, Vec<u32>)> = Vec::new();
            for &h in set {
                let a = row[h as usize];
                match groups.iter_mut().find(|(key, _)| *key == a) {
                    Some((_, g)) => g.push(h),
                    None => groups.push((a, vec![h])),
                }
            }
            if groups.len() < 2 {
                continue;
            }
            let mut groups: Vec<Vec<u32>> = groups.into_iter().map(|(_, g)| g).collect();
            groups.sort_unstable();
            if seen.insert(groups.clone()) {
                out.push(groups);
            }
        }
        out.sort_by_key(|groups| groups.iter().map(Vec::len).max().unwrap_or(0));
        out
    }

    /// Exact depth of `set` if it is at most `limit`; otherwise a lower
    /// bound greater than `limit`.
    fn solve(&mut self, set: &[u32], limit: u32) -> u32 {
        if self.homogeneous(set) {
            return 0;
        }
        match self.memo.get(set) {
            Some(&Bound::Exact(d)) => return d,
            Some(&Bound::AtLeast(lb)) if lb > limit => return lb,
            _ => {}
        }
        if limit == 0 {
            self.memo.insert(set.to_vec(), Bound::AtLeast(1));
            return 1;
        }
        let mut best = limit + 1;
        let mut found = false;
        for groups in self.partitions(set) {
            let mut worst = 0;
            for g in &groups {
                worst = worst.max(self.solve(g, best - 2));
                if worst + 1 >= best {
                    break;
                }
            }
            if worst + 1 < best {
                best = worst + 1;
                found = true;
                if best == 1 {
                    break;
                }
            }
        }
        let bound = if found {
            Bound::Exact(best)
        } else {
            Bound::AtLeast(limit + 1)
        };
        self.memo.insert(set.to_vec(), bound);
        best
    }
}

fn check_limits(p: &ProblemSpec, fam: &ClassicalOracleFamily) -> Result<()> {
    let (limit, what) = match p.kind() {
        ProblemKind::Parity => (MAX_PARITY_N, "PARITY size for exact minimax"),
        ProblemKind::BvIdentify => (MAX_BV_N, "BV size for exact minimax"),
    };
    if p.n() > limit {
        return Err(Error::SizeLimit {
            what,
            limit,
            got: p.n(),
        });
    }
    if p.hypotheses().len() > MAX_HYPOTHESES {
        return Err(Error::SizeLimit {
            what: "hypotheses",
            limit: MAX_HYPOTHESES,
            got: p.hypotheses().len(),
        });
    }
    if fam.bits() > MAX_QUERY_BITS {
        return Err(Error::SizeLimit {
            what: "oracle bits",
            limit: MAX_QUERY_BITS,
            got: fam.bits(),
        });
    }
    if fam.len() != p.hypotheses().len() {
        return Err(Error::DimensionMismatch {
            left: p.hypotheses().len(),
            right: fam.len(),
        });
    }
    Ok(())
}

/// Worst-case number of classical queries of the best adaptive
/// deterministic strategy, or `None` when some pair of differently
/// labelled hypotheses answers every query identically.
pub fn deterministic_query_complexity(
    p: &ProblemSpec,
    fam: &ClassicalOracleFamily,
) -> Result<Option<u32>> {
    check_limits(p, fam)?;
    let labels = p.labels();

    // Hypotheses with identical answer tables are indistinguishable; keep
    // one per table, provided the table determines the label.
    let mut by_signature: HashMap<&[usize], u64> = HashMap::new();
    let mut kept = Vec::new();
    for (h, map) in fam.maps().iter().enumerate() {
        match by_signature.get(map.as_slice()) {
            Some(&label) if label != labels[h] => return Ok(None),
            Some(_) => {}
            None => {
                by_signature.insert(map, labels[h]);
                kept.push(h);
            }
        }
    }

    let queries = 1usize << fam.bits();
    let mut solver = Solver {
        answers: (0..queries)
            .map(|q| kept.iter().map(|&h| fam.answer(h, q) as u32).collect())
            .collect(),
        labels: kept.iter().map(|&h| labels[h]).collect(),
        memo: HashMap::new(),
    };
    let all: Vec<u32> = (0..kept.len() as u32).collect();
    for limit in 0..=queries as u32 {
        let d = solver.solve(&all, limit);
        if d <= limit {
            return Ok(Some(d));
        }
    }
    unreachable!("a distinguishing family is solved by querying every input")
}
