use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use super::{CMatrix, ONE, ZERO};

/// Named gates. Two-qubit names use qubit 1 as the control/first factor
/// where a direction is implied (`Cnot12`: control 1, target 2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateName {
    SigmaX,
    SigmaZ,
    /// `[[0, e^{iθ}], [e^{iφ}, 0]]`
    SigmaXPhased {
        theta: f64,
        phi: f64,
    },
    Hadamard,
    /// Identity on the given number of qubits.
    Identity(usize),
    Cnot12,
    Cnot21,
    Swap,
    /// `SWAP · CNOT12`
    Swat12,
    /// `SWAP · CNOT21`
    Swat21,
    /// Magic basis change.
    MagicQ,
    Cz,
}

fn perm_matrix(images: &[usize]) -> CMatrix {
    let mut m = CMatrix::zeros(images.len());
    for (col, &row) in images.iter().enumerate() {
        m[(row, col)] = ONE;
    }
    m
}

pub fn gate(name: GateName) -> CMatrix {
    let i = Complex64::i();
    match name {
        GateName::SigmaX => perm_matrix(&[1, 0]),
        GateName::SigmaZ => CMatrix::diagonal(&[ONE, -ONE]),
        GateName::SigmaXPhased { theta, phi } => {
            let mut m = CMatrix::zeros(2);
            m[(0, 1)] = Complex64::from_polar(1.0, theta);
            m[(1, 0)] = Complex64::from_polar(1.0, phi);
            m
        }
        GateName::Hadamard => {
            let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
            CMatrix::from_vec(2, vec![h, h, h, -h]).expect("2x2")
        }
        GateName::Identity(qubits) => CMatrix::identity(1 << qubits),
        GateName::Cnot12 => perm_matrix(&[0, 1, 3, 2]),
        GateName::Cnot21 => perm_matrix(&[0, 3, 2, 1]),
        GateName::Swap => perm_matrix(&[0, 2, 1, 3]),
        GateName::Swat12 => gate(GateName::Swap)
            .multiply(&gate(GateName::Cnot12))
            .expect("4x4"),
        GateName::Swat21 => gate(GateName::Swap)
            .multiply(&gate(GateName::Cnot21))
            .expect("4x4"),
        GateName::MagicQ => {
            let data = vec![
                ONE, ZERO, ZERO, i, //
                ZERO, i, ONE, ZERO, //
                ZERO, i, -ONE, ZERO, //
                ONE, ZERO, ZERO, -i,
            ];
            CMatrix::from_vec(4, data)
                .expect("4x4")
                .scale(Complex64::new(FRAC_1_SQRT_2, 0.0))
        }
        GateName::Cz => CMatrix::diagonal(&[ONE, ONE, ONE, -ONE]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn all_names() -> Vec<GateName> {
        vec![
            GateName::SigmaX,
            GateName::SigmaZ,
            GateName::SigmaXPhased {
                theta: 0.7,
                phi: 1.9,
            },
            GateName::Hadamard,
            GateName::Identity(1),
            GateName::Identity(3),
            GateName::Cnot12,
            GateName::Cnot21,
            GateName::Swap,
            GateName::Swat12,
            GateName::Swat21,
            GateName::MagicQ,
            GateName::Cz,
        ]
    }

    #[test]
    fn every_gate_is_unitary() {
        for name in all_names() {
            assert!(gate(name).is_unitary(1e-12), "{name:?}");
        }
    }

    #[test]
    fn pauli_and_identity_entries() {
        assert_eq!(
            gate(GateName::SigmaX),
            CMatrix::from_real(2, &[0., 1., 1., 0.]).unwrap()
        );
        assert_eq!(
            gate(GateName::Identity(1)),
            CMatrix::from_real(2, &[1., 0., 0., 1.]).unwrap()
        );
    }

    #[test]
    fn swat12_is_swap_after_cnot() {
        // Column j of SWAT12 holds the image of basis state j.
        let expected = CMatrix::from_real(
            4,
            &[
                1., 0., 0., 0., //
                0., 0., 0., 1., //
                0., 1., 0., 0., //
                0., 0., 1., 0.,
            ],
        )
        .unwrap();
        assert_eq!(gate(GateName::Swat12), expected);
    }

    #[test]
    fn cnot_directions_under_msb_convention() {
        let cnot12 = gate(GateName::Cnot12);
        // |10> -> |11>
        assert_eq!(cnot12[(3, 2)], ONE);
        let cnot21 = gate(GateName::Cnot21);
        // |01> -> |11>
        assert_eq!(cnot21[(3, 1)], ONE);
    }
}
