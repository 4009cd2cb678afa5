use std::fmt;
use std::sync::OnceLock;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::{GateName, GeneralizedPermutation};

/// Permutation of the four 2-bit strings, `p[i]` = image of `i`.
pub type Perm4 = [usize; 4];

/// The local bit-flip subgroup, as XOR masks `x ↦ x ⊕ mask`.
pub const XOR_MASKS: [usize; 4] = [0b00, 0b01, 0b10, 0b11];

/// Representatives of the six cosets of the XOR-mask subgroup in S4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CosetId {
    I,
    Swap,
    Cnot12,
    Cnot21,
    Swat12,
    Swat21,
}

impl CosetId {
    pub const ALL: [CosetId; 6] = [
        CosetId::I,
        CosetId::Swap,
        CosetId::Cnot12,
        CosetId::Cnot21,
        CosetId::Swat12,
        CosetId::Swat21,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CosetId::I => "I",
            CosetId::Swap => "SWAP",
            CosetId::Cnot12 => "CNOT12",
            CosetId::Cnot21 => "CNOT21",
            CosetId::Swat12 => "SWAT12",
            CosetId::Swat21 => "SWAT21",
        }
    }

    pub fn gate(self) -> GateName {
        match self {
            CosetId::I => GateName::Identity(2),
            CosetId::Swap => GateName::Swap,
            CosetId::Cnot12 => GateName::Cnot12,
            CosetId::Cnot21 => GateName::Cnot21,
            CosetId::Swat12 => GateName::Swat12,
            CosetId::Swat21 => GateName::Swat21,
        }
    }

    /// The representative's own permutation (each fixes `00`).
    pub fn representative(self) -> Perm4 {
        match self {
            CosetId::I => [0, 1, 2, 3],
            CosetId::Swap => [0, 2, 1, 3],
            CosetId::Cnot12 => [0, 1, 3, 2],
            CosetId::Cnot21 => [0, 3, 2, 1],
            CosetId::Swat12 => [0, 2, 3, 1],
            CosetId::Swat21 => [0, 3, 1, 2],
        }
    }

    /// The four permutations `mask ∘ representative`.
    pub fn members(self) -> [Perm4; 4] {
        let rep = self.representative();
        XOR_MASKS.map(|mask| rep.map(|x| x ^ mask))
    }
}

impl fmt::Display for CosetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for CosetId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

fn is_bijection(p: &Perm4) -> bool {
    let mut seen = [false; 4];
    p.iter()
        .all(|&x| x < 4 && !std::mem::replace(&mut seen[x], true))
}

/// Checks that the six cosets partition S4: four members each, pairwise
/// disjoint, 24 in total.
pub fn cosets_partition_s4() -> bool {
    let mut all: Vec<Perm4> = CosetId::ALL.iter().flat_map(|c| c.members()).collect();
    if !all.iter().all(is_bijection) {
        return false;
    }
    all.sort_unstable();
    all.dedup();
    all.len() == 24
}

fn partition_checked() -> bool {
    static CHECKED: OnceLock<bool> = OnceLock::new();
    *CHECKED.get_or_init(cosets_partition_s4)
}

/// Coset of `p` with respect to the XOR-mask subgroup.
pub fn coset_of(p: &Perm4) -> Result<CosetId> {
    assert!(
        partition_checked(),
        "coset representatives do not partition S4"
    );
    if !is_bijection(p) {
        return Err(Error::Invalid(format!(
            "{p:?} is not a permutation of 0..4"
        )));
    }
    for mask in XOR_MASKS {
        let shifted = p.map(|x| x ^ mask);
        if let Some(&id) = CosetId::ALL.iter().find(|c| c.representative() == shifted) {
            return Ok(id);
        }
    }
    unreachable!("the six cosets cover S4")
}

/// Coset of a 2-bit generalized permutation's underlying permutation.
pub fn coset_of_generalized_permutation(g: &GeneralizedPermutation) -> Result<CosetId> {
    if g.bits() != 2 {
        return Err(Error::DimensionMismatch {
            left: 2,
            right: g.bits(),
        });
    }
    let p = g.perm();
    coset_of(&[p[0], p[1], p[2], p[3]])
}
