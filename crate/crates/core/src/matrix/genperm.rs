use num_complex::Complex64;

use super::{CMatrix, ONE};
use crate::error::{Error, Result};
use crate::DEFAULT_TOL;

/// A permutation of m-bit strings dressed with a unit-modulus phase per
/// output string, i.e. the matrix `D·O` with `D` diagonal and `O` a
/// permutation matrix.
///
/// `perm[j]` is the image of input string `j`; `phases[r]` is the diagonal
/// entry of `D` on output string `r`, so column `j` of the matrix holds
/// `phases[perm[j]]` in row `perm[j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralizedPermutation {
    bits: usize,
    perm: Vec<usize>,
    phases: Vec<Complex64>,
}

impl GeneralizedPermutation {
    pub fn new(bits: usize, perm: Vec<usize>, phases: Vec<Complex64>) -> Result<Self> {
        let size = 1usize << bits;
        if perm.len() != size || phases.len() != size {
            return Err(Error::DimensionMismatch {
                left: size,
                right: perm.len().max(phases.len()),
            });
        }
        let mut seen = vec![false; size];
        for &p in &perm {
            if p >= size || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Invalid("permutation is not a bijection".into()));
            }
        }
        if let Some(z) = phases
            .iter()
            .find(|z| (z.norm() - 1.0).abs() >= DEFAULT_TOL)
        {
            return Err(Error::Invalid(format!("phase {z} is not unit modulus")));
        }
        Ok(GeneralizedPermutation { bits, perm, phases })
    }

    /// Phase-free permutation.
    pub fn from_permutation(bits: usize, perm: Vec<usize>) -> Result<Self> {
        let size = perm.len();
        Self::new(bits, perm, vec![ONE; size])
    }

    /// Phase-free permutation given by a map on `0..2^bits`.
    pub fn from_fn(bits: usize, map: impl Fn(usize) -> usize) -> Result<Self> {
        Self::from_permutation(bits, (0..1usize << bits).map(map).collect())
    }

    pub fn identity(bits: usize) -> Self {
        Self::from_fn(bits, |x| x).expect("identity is a bijection")
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn size(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn phases(&self) -> &[Complex64] {
        &self.phases
    }

    pub fn image(&self, input: usize) -> usize {
        self.perm[input]
    }

    /// The nonzero entry in column `input`.
    pub fn column_entry(&self, input: usize) -> (usize, Complex64) {
        let row = self.perm[input];
        (row, self.phases[row])
    }

    pub fn to_matrix(&self) -> CMatrix {
        let mut m = CMatrix::zeros(self.size());
        for (col, &row) in self.perm.iter().enumerate() {
            m[(row, col)] = self.phases[row];
        }
        m
    }

    /// Matrix product `self · first`.
    pub fn compose(&self, first: &GeneralizedPermutation) -> Result<GeneralizedPermutation> {
        if self.bits != first.bits {
            return Err(Error::DimensionMismatch {
                left: self.bits,
                right: first.bits,
            });
        }
        let perm: Vec<usize> = first.perm.iter().map(|&j| self.perm[j]).collect();
        let mut phases = vec![ONE; self.size()];
        for (j, &mid) in first.perm.iter().enumerate() {
            let row = self.perm[mid];
            phases[row] = self.phases[row] * first.phases[mid];
            debug_assert_eq!(perm[j], row);
        }
        Ok(GeneralizedPermutation {
            bits: self.bits,
            perm,
            phases,
        })
    }

    pub fn is_identity_permutation(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn is_involution(&self) -> bool {
        self.perm
            .iter()
            .enumerate()
            .all(|(i, &p)| self.perm[p] == i)
    }

    /// True when any phase differs from 1 by at least `tol`.
    pub fn has_nontrivial_phases(&self, tol: f64) -> bool {
        self.phases.iter().any(|z| (z - ONE).norm() >= tol)
    }

    /// Disjoint-cycle notation with inputs written as m-bit strings, e.g.
    /// `(10 11)`. The identity renders as `()`.
    pub fn cycle_notation(&self) -> String {
        let fmt_bits = |x: usize| {
            if self.bits == 0 {
                String::from("e")
            } else {
                format!("{:0width$b}", x, width = self.bits)
            }
        };
        let mut visited = vec![false; self.size()];
        let mut out = String::new();
        for start in 0..self.size() {
            if visited[start] || self.perm[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !visited[x] {
                visited[x] = true;
                cycle.push(fmt_bits(x));
                x = self.perm[x];
            }
            out.push('(');
            out.push_str(&cycle.join(" "));
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

/// Classifies one column: `Some((row, value))` iff exactly one entry has
/// magnitude above `tol` and that entry is within `tol` of unit modulus.
pub fn detect_column(column: &[Complex64], tol: f64) -> Option<(usize, Complex64)> {
    let mut hit = None;
    for (row, z) in column.iter().enumerate() {
        if z.norm() > tol {
            if hit.is_some() {
                return None;
            }
            hit = Some((row, *z));
        }
    }
    hit.filter(|(_, z)| (z.norm() - 1.0).abs() < tol)
}

/// Generalized-permutation structure of `m`, if present.
///
/// Works column by column; returns `Ok(None)` when some column is not a
/// single unit-modulus entry or two columns land on the same row.
pub fn detect_generalized_permutation(
    m: &CMatrix,
    tol: f64,
) -> Result<Option<GeneralizedPermutation>> {
    let bits = m.qubits()?;
    let size = m.dim();
    let mut perm = Vec::with_capacity(size);
    let mut phases = vec![ONE; size];
    let mut seen = vec![false; size];
    for col in 0..size {
        let Some((row, value)) = detect_column(&m.column(col), tol) else {
            return Ok(None);
        };
        if std::mem::replace(&mut seen[row], true) {
            return Ok(None);
        }
        perm.push(row);
        phases[row] = value;
    }
    Ok(Some(GeneralizedPermutation { bits, perm, phases }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{gate, GateName};
    use proptest::prelude::*;

    #[test]
    fn phased_sigma_x_detects_not_with_phases() {
        let (theta, phi) = (0.7, 1.9);
        let g = detect_generalized_permutation(&gate(GateName::SigmaXPhased { theta, phi }), 1e-9)
            .unwrap()
            .unwrap();
        assert_eq!(g.perm(), &[1, 0]);
        assert!((g.phases()[0] - Complex64::from_polar(1.0, theta)).norm() < 1e-15);
        assert!((g.phases()[1] - Complex64::from_polar(1.0, phi)).norm() < 1e-15);
    }

    #[test]
    fn hadamard_and_magic_have_no_structure() {
        for name in [GateName::Hadamard, GateName::MagicQ] {
            assert!(detect_generalized_permutation(&gate(name), 1e-9)
                .unwrap()
                .is_none());
        }
    }

    #[test]
    fn cz_is_diagonal() {
        let g = detect_generalized_permutation(&gate(GateName::Cz), 1e-9)
            .unwrap()
            .unwrap();
        assert!(g.is_identity_permutation());
        assert_eq!(g.phases(), &[ONE, ONE, ONE, -ONE]);
    }

    #[test]
    fn structured_gates_are_detected() {
        for name in [
            GateName::SigmaX,
            GateName::SigmaZ,
            GateName::SigmaXPhased {
                theta: -2.0,
                phi: 0.3,
            },
            GateName::Identity(2),
            GateName::Cnot12,
            GateName::Cnot21,
            GateName::Swap,
            GateName::Swat12,
            GateName::Swat21,
            GateName::Cz,
        ] {
            assert!(
                detect_generalized_permutation(&gate(name), 1e-9)
                    .unwrap()
                    .is_some(),
                "{name:?}"
            );
        }
    }

    #[test]
    fn non_power_of_two_is_an_error() {
        let m = CMatrix::identity(3);
        assert_eq!(
            detect_generalized_permutation(&m, 1e-9),
            Err(Error::NotPowerOfTwo(3))
        );
    }

    #[test]
    fn column_with_sub_unit_entry_is_rejected() {
        let col = [Complex64::new(0.5, 0.0), Complex64::new(0.0, 0.0)];
        assert!(detect_column(&col, 1e-9).is_none());
    }

    #[test]
    fn cycle_notation_uses_bit_strings() {
        let g = detect_generalized_permutation(&gate(GateName::Cnot12), 1e-9)
            .unwrap()
            .unwrap();
        assert_eq!(g.cycle_notation(), "(10 11)");
        assert_eq!(GeneralizedPermutation::identity(2).cycle_notation(), "()");
    }

    #[test]
    fn compose_matches_matrix_product() {
        let a = detect_generalized_permutation(&gate(GateName::Swap), 1e-9)
            .unwrap()
            .unwrap();
        let b = detect_generalized_permutation(&gate(GateName::Cz), 1e-9)
            .unwrap()
            .unwrap();
        let c = detect_generalized_permutation(&gate(GateName::Cnot21), 1e-9)
            .unwrap()
            .unwrap();
        let ab = a.compose(&b).unwrap().compose(&c).unwrap();
        let dense = gate(GateName::Swap)
            .multiply(&gate(GateName::Cz))
            .unwrap()
            .multiply(&gate(GateName::Cnot21))
            .unwrap();
        assert!(ab.to_matrix().max_abs_diff(&dense).unwrap() < 1e-15);
    }

    fn arb_genperm() -> impl Strategy<Value = GeneralizedPermutation> {
        (1usize..=4).prop_flat_map(|bits| {
            let size = 1usize << bits;
            (
                Just((0..size).collect::<Vec<_>>()).prop_shuffle(),
                prop::collection::vec(-std::f64::consts::PI..std::f64::consts::PI, size),
            )
                .prop_map(move |(perm, angles)| {
                    let phases = angles
                        .iter()
                        .map(|&a| Complex64::from_polar(1.0, a))
                        .collect();
                    GeneralizedPermutation::new(bits, perm, phases).unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn rebuild_and_redetect_round_trips(g in arb_genperm()) {
            let back = detect_generalized_permutation(&g.to_matrix(), 1e-9).unwrap().unwrap();
            prop_assert_eq!(back.perm(), g.perm());
            for (a, b) in back.phases().iter().zip(g.phases()) {
                prop_assert!((a - b).norm() < 1e-12);
            }
            prop_assert!(g.to_matrix().is_unitary(1e-12));
        }
    }
}
