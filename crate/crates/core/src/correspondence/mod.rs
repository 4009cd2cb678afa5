//! Classical counterparts of quantum oracles.
//!
//! A counterpart is read off by conjugating the oracle with a product of
//! per-qubit basis changes and checking that every column is a single
//! basis vector up to phase. For two qubits the complete answer is given by
//! the Makhlin invariants and the coset structure of S4.

mod coset;
mod makhlin;

pub use coset::{
    coset_of, coset_of_generalized_permutation, cosets_partition_s4, CosetId, Perm4, XOR_MASKS,
};
pub use makhlin::{
    classify_cc, classify_detailed, makhlin_invariants, makhlin_report, CCClass, Classification,
    MakhlinReport, MakhlinTriple,
};

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::{detect_column, gate, CMatrix, GateName, GeneralizedPermutation, ONE};
use crate::oracle::OracleAction;

/// Largest register for exhaustive counterpart searches.
pub const MAX_SEARCH_QUBITS: usize = 13;
/// Largest number of random assignments per search.
pub const MAX_RANDOM_SAMPLES: usize = 1 << 16;

/// Which pair of orthonormal states encodes the bit values of one qubit.
#[derive(Debug, Clone, PartialEq)]
pub enum QubitBasis {
    /// `|0⟩, |1⟩`
    Chi,
    /// `(|0⟩ ± |1⟩)/√2`
    Eta,
    /// Columns of a 2×2 unitary. Build through [`QubitBasis::general`].
    General(CMatrix),
}

impl QubitBasis {
    pub fn general(columns: CMatrix) -> Result<Self> {
        if columns.dim() != 2 {
            return Err(Error::DimensionMismatch {
                left: 2,
                right: columns.dim(),
            });
        }
        columns.ensure_unitary(1e-12)?;
        Ok(QubitBasis::General(columns))
    }

    /// Matrix whose column `a` is the state encoding bit value `a`.
    pub fn matrix(&self) -> CMatrix {
        match self {
            QubitBasis::Chi => CMatrix::identity(2),
            QubitBasis::Eta => gate(GateName::Hadamard),
            QubitBasis::General(m) => m.clone(),
        }
    }

    pub fn letter(&self) -> char {
        match self {
            QubitBasis::Chi => 'C',
            QubitBasis::Eta => 'H',
            QubitBasis::General(_) => 'U',
        }
    }
}

/// Per-qubit basis choices; position `j` is qubit `j + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisAssignment(Vec<QubitBasis>);

impl BasisAssignment {
    pub fn new(bases: Vec<QubitBasis>) -> Result<Self> {
        for b in &bases {
            if let QubitBasis::General(m) = b {
                QubitBasis::general(m.clone())?;
            }
        }
        Ok(BasisAssignment(bases))
    }

    pub fn uniform(basis: QubitBasis, qubits: usize) -> Self {
        BasisAssignment(vec![basis; qubits])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bases(&self) -> &[QubitBasis] {
        &self.0
    }

    /// `C`/`H` word; general bases render as `U`.
    pub fn word(&self) -> String {
        self.0.iter().map(QubitBasis::letter).collect()
    }

    /// Assignment number `index` of the `{C, H}` grid in lexicographic
    /// order, qubit 1 most significant.
    pub fn grid_point(qubits: usize, index: usize) -> Self {
        BasisAssignment(
            (0..qubits)
                .map(|j| {
                    if (index >> (qubits - 1 - j)) & 1 == 1 {
                        QubitBasis::Eta
                    } else {
                        QubitBasis::Chi
                    }
                })
                .collect(),
        )
    }
}

impl FromStr for BasisAssignment {
    type Err = Error;

    fn from_str(word: &str) -> Result<Self> {
        word.chars()
            .map(|c| match c.to_ascii_uppercase() {
                'C' => Ok(QubitBasis::Chi),
                'H' => Ok(QubitBasis::Eta),
                other => Err(Error::Invalid(format!(
                    "basis letter '{other}' is not C or H"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(BasisAssignment)
    }
}

impl fmt::Display for BasisAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word())
    }
}

fn check_arity(u: &OracleAction, bases: &BasisAssignment) -> Result<()> {
    if u.qubits() != bases.len() {
        return Err(Error::ArityMismatch {
            expected: u.qubits(),
            got: bases.len(),
        });
    }
    Ok(())
}

/// Applies a 2×2 matrix to qubit `qubit` (1-based, MSB first) in place.
pub(crate) fn apply_single_qubit(
    state: &mut [Complex64],
    qubits: usize,
    qubit: usize,
    m: &CMatrix,
) {
    let stride = 1usize << (qubits - qubit);
    let (a, b, c, d) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
    for base in 0..state.len() {
        if base & stride != 0 {
            continue;
        }
        let (lo, hi) = (state[base], state[base | stride]);
        state[base] = a * lo + b * hi;
        state[base | stride] = c * lo + d * hi;
    }
}

/// Product state encoding bit string `index` under `bases`.
pub fn product_state(bases: &BasisAssignment, index: usize) -> Vec<Complex64> {
    let m = bases.len();
    let mut state = vec![ONE];
    for (j, basis) in bases.bases().iter().enumerate() {
        let bit = (index >> (m - 1 - j)) & 1;
        let b = basis.matrix();
        let mut next = Vec::with_capacity(state.len() * 2);
        for &amp in &state {
            next.push(amp * b[(0, bit)]);
            next.push(amp * b[(1, bit)]);
        }
        state = next;
    }
    state
}

/// Column `col` of `(⊗B)† U (⊗B)`, computed from one product state.
pub fn conjugate_column(
    u: &OracleAction,
    bases: &BasisAssignment,
    col: usize,
) -> Result<Vec<Complex64>> {
    check_arity(u, bases)?;
    if col >= u.dim() {
        return Err(Error::Invalid(format!("column {col} out of range")));
    }
    let mut out = u.apply(&product_state(bases, col))?;
    let m = bases.len();
    for (j, basis) in bases.bases().iter().enumerate() {
        if *basis != QubitBasis::Chi {
            apply_single_qubit(&mut out, m, j + 1, &basis.matrix().adjoint());
        }
    }
    Ok(out)
}

/// The bit-string map `U` induces on the computational states chosen by
/// `bases`, or `None` when some column is not a single basis state up to
/// phase.
pub fn extract_counterpart(
    u: &OracleAction,
    bases: &BasisAssignment,
    tol: f64,
) -> Result<Option<GeneralizedPermutation>> {
    check_arity(u, bases)?;
    let size = u.dim();
    let mut perm = Vec::with_capacity(size);
    let mut phases = vec![ONE; size];
    let mut seen = vec![false; size];
    for col in 0..size {
        let column = conjugate_column(u, bases, col)?;
        let Some((row, value)) = detect_column(&column, tol) else {
            return Ok(None);
        };
        if std::mem::replace(&mut seen[row], true) {
            return Ok(None);
        }
        perm.push(row);
        phases[row] = value / value.norm();
    }
    GeneralizedPermutation::new(u.qubits(), perm, phases).map(Some)
}

/// Set of basis assignments to try.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchSpace {
    /// Every word in `{C, H}^m`.
    PauliGrid,
    /// `count` assignments of Haar-random single-qubit bases.
    RandomSample { count: usize, seed: u64 },
}

impl SearchSpace {
    pub fn assignments(&self, qubits: usize) -> Result<Vec<BasisAssignment>> {
        if qubits > MAX_SEARCH_QUBITS {
            return Err(Error::SizeLimit {
                what: "qubits in counterpart search",
                limit: MAX_SEARCH_QUBITS,
                got: qubits,
            });
        }
        match *self {
            SearchSpace::PauliGrid => Ok((0..1usize << qubits)
                .map(|i| BasisAssignment::grid_point(qubits, i))
                .collect()),
            SearchSpace::RandomSample { count, seed } => {
                if count > MAX_RANDOM_SAMPLES {
                    return Err(Error::SizeLimit {
                        what: "random basis samples",
                        limit: MAX_RANDOM_SAMPLES,
                        got: count,
                    });
                }
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                Ok((0..count)
                    .map(|_| {
                        BasisAssignment(
                            (0..qubits)
                                .map(|_| QubitBasis::General(CMatrix::random_unitary(2, &mut rng)))
                                .collect(),
                        )
                    })
                    .collect())
            }
        }
    }
}

impl FromStr for SearchSpace {
    type Err = Error;

    /// `GRID` or `random:COUNT:SEED`.
    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("grid") {
            return Ok(SearchSpace::PauliGrid);
        }
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["random", count, seed] => Ok(SearchSpace::RandomSample {
                count: count
                    .parse()
                    .map_err(|_| Error::Invalid(format!("bad sample count '{count}'")))?,
                seed: seed
                    .parse()
                    .map_err(|_| Error::Invalid(format!("bad seed '{seed}'")))?,
            }),
            _ => Err(Error::Invalid(format!(
                "search space '{s}' is not GRID or random:COUNT:SEED"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Counterpart {
    pub bases: BasisAssignment,
    pub map: GeneralizedPermutation,
}

/// Every assignment in `space` under which `u` has a classical
/// counterpart, in the space's deterministic order.
pub fn search_counterparts(
    u: &OracleAction,
    space: SearchSpace,
    tol: f64,
) -> Result<Vec<Counterpart>> {
    let found: Vec<Option<Counterpart>> = space
        .assignments(u.qubits())?
        .into_par_iter()
        .map(|bases| Ok(extract_counterpart(u, &bases, tol)?.map(|map| Counterpart { bases, map })))
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

/// Counterparts shared by a whole oracle family: an assignment is kept only
/// if extraction succeeds for every member.
pub fn search_family_counterparts(
    family: &[OracleAction],
    space: SearchSpace,
    tol: f64,
) -> Result<Vec<(BasisAssignment, Vec<GeneralizedPermutation>)>> {
    let Some(first) = family.first() else {
        return Ok(Vec::new());
    };
    if let Some(bad) = family.iter().find(|u| u.qubits() != first.qubits()) {
        return Err(Error::ArityMismatch {
            expected: first.qubits(),
            got: bad.qubits(),
        });
    }
    let found: Vec<Option<(BasisAssignment, Vec<GeneralizedPermutation>)>> = space
        .assignments(first.qubits())?
        .into_par_iter()
        .map(|bases| {
            let mut maps = Vec::with_capacity(family.len());
            for u in family {
                match extract_counterpart(u, &bases, tol)? {
                    Some(g) => maps.push(g),
                    None => return Ok(None),
                }
            }
            Ok(Some((bases, maps)))
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{
        bv_function, classical_os, phase_oracle, standard_oracle, BVInstance, BooleanFunction,
    };

    fn e(dim: usize, i: usize) -> Vec<Complex64> {
        let mut v = vec![Complex64::new(0.0, 0.0); dim];
        v[i] = ONE;
        v
    }

    fn close(a: &[Complex64], b: &[Complex64]) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).norm() < 1e-12)
    }

    fn action(name: GateName) -> OracleAction {
        OracleAction::from_matrix(gate(name)).unwrap()
    }

    #[test]
    fn sigma_z_columns() {
        let z = action(GateName::SigmaZ);
        let chi: BasisAssignment = "C".parse().unwrap();
        let eta: BasisAssignment = "H".parse().unwrap();
        assert!(close(&conjugate_column(&z, &chi, 0).unwrap(), &e(2, 0)));
        assert!(close(&conjugate_column(&z, &eta, 0).unwrap(), &e(2, 1)));
    }

    #[test]
    fn phased_sigma_x_column_carries_phase() {
        let (theta, phi) = (0.4, 2.2);
        let u = action(GateName::SigmaXPhased { theta, phi });
        let col = conjugate_column(&u, &"C".parse().unwrap(), 0).unwrap();
        let expected = [Complex64::new(0.0, 0.0), Complex64::from_polar(1.0, phi)];
        assert!(close(&col, &expected));
    }

    #[test]
    fn conjugate_column_matches_dense_conjugation() {
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let u = OracleAction::from_matrix(CMatrix::random_unitary(8, &mut rng)).unwrap();
        let bases = BasisAssignment::new(vec![
            QubitBasis::Eta,
            QubitBasis::general(CMatrix::random_unitary(2, &mut rng)).unwrap(),
            QubitBasis::Chi,
        ])
        .unwrap();
        let b = bases.bases()[0]
            .matrix()
            .tensor(&bases.bases()[1].matrix())
            .tensor(&bases.bases()[2].matrix());
        let dense = b
            .adjoint()
            .multiply(&u.to_matrix())
            .unwrap()
            .multiply(&b)
            .unwrap();
        for col in 0..8 {
            assert!(close(
                &conjugate_column(&u, &bases, col).unwrap(),
                &dense.column(col)
            ));
        }
    }

    #[test]
    fn arity_mismatch_is_reported() {
        let z = action(GateName::SigmaZ);
        let bases: BasisAssignment = "CC".parse().unwrap();
        assert_eq!(
            conjugate_column(&z, &bases, 0),
            Err(Error::ArityMismatch {
                expected: 1,
                got: 2
            })
        );
        assert!(extract_counterpart(&z, &bases, 1e-9).is_err());
    }

    #[test]
    fn all_chi_extraction_is_the_standard_classical_oracle() {
        for n in 1..=3usize {
            for table in 0..1u64 << (1 << n) {
                let f = BooleanFunction::from_table_bits(n, table).unwrap();
                let u = standard_oracle(&f);
                let g = extract_counterpart(
                    &u,
                    &BasisAssignment::uniform(QubitBasis::Chi, n + 1),
                    1e-9,
                )
                .unwrap()
                .unwrap();
                assert_eq!(g.perm(), classical_os(&f).perm());
                assert!(!g.has_nontrivial_phases(1e-12));
            }
        }
    }

    #[test]
    fn phase_oracle_counterparts() {
        let inst = BVInstance::from_mask(3, true, 0b110).unwrap();
        let u = phase_oracle(&inst);
        let chi = extract_counterpart(&u, &"CCC".parse().unwrap(), 1e-9)
            .unwrap()
            .unwrap();
        assert!(chi.is_identity_permutation());
        let eta = extract_counterpart(&u, &"HHH".parse().unwrap(), 1e-9)
            .unwrap()
            .unwrap();
        for x in 0..8 {
            assert_eq!(eta.image(x), x ^ 0b110);
        }
    }

    #[test]
    fn grid_search_on_bv_standard_oracle() {
        let inst = BVInstance::from_mask(2, false, 0b11).unwrap();
        let f = bv_function(&inst);
        let found =
            search_counterparts(&standard_oracle(&f), SearchSpace::PauliGrid, 1e-9).unwrap();
        let words: Vec<String> = found.iter().map(|c| c.bases.word()).collect();
        assert!(words.windows(2).all(|w| w[0] < w[1]));
        let chi = found.iter().find(|c| c.bases.word() == "CCC").unwrap();
        assert_eq!(chi.map.perm(), classical_os(&f).perm());
        let eta = found.iter().find(|c| c.bases.word() == "HHH").unwrap();
        for x in 0..4usize {
            // query bit in the kickback state: x ↦ x ⊕ k
            assert_eq!(eta.map.image((x << 1) | 1), ((x ^ 0b11) << 1) | 1);
            // query bit in η₀: untouched
            assert_eq!(eta.map.image(x << 1), x << 1);
        }
    }

    #[test]
    fn hadamard_has_no_grid_counterpart() {
        let h = action(GateName::Hadamard);
        assert!(search_counterparts(&h, SearchSpace::PauliGrid, 1e-9)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn identity_has_identity_counterpart_everywhere() {
        let id = action(GateName::Identity(3));
        for space in [
            SearchSpace::PauliGrid,
            SearchSpace::RandomSample { count: 10, seed: 7 },
        ] {
            let found = search_counterparts(&id, space, 1e-9).unwrap();
            let expected = match space {
                SearchSpace::PauliGrid => 8,
                SearchSpace::RandomSample { count, .. } => count,
            };
            assert_eq!(found.len(), expected);
            assert!(found.iter().all(|c| c.map.is_identity_permutation()));
        }
    }

    #[test]
    fn random_space_is_seeded() {
        let a = SearchSpace::RandomSample { count: 3, seed: 5 }
            .assignments(2)
            .unwrap();
        let b = SearchSpace::RandomSample { count: 3, seed: 5 }
            .assignments(2)
            .unwrap();
        assert_eq!(a, b);
        assert_eq!(a[0].word(), "UU");
    }

    #[test]
    fn search_size_limit() {
        let err = SearchSpace::PauliGrid.assignments(14).unwrap_err();
        assert!(matches!(err, Error::SizeLimit { limit: 13, .. }));
    }

    #[test]
    fn parse_words_and_spaces() {
        let a: BasisAssignment = "hCcH".parse().unwrap();
        assert_eq!(a.to_string(), "HCCH");
        assert!("CX".parse::<BasisAssignment>().is_err());
        assert_eq!(
            "GRID".parse::<SearchSpace>().unwrap(),
            SearchSpace::PauliGrid
        );
        assert_eq!(
            "random:20:3".parse::<SearchSpace>().unwrap(),
            SearchSpace::RandomSample { count: 20, seed: 3 }
        );
        assert!("random:x:3".parse::<SearchSpace>().is_err());
    }
}
