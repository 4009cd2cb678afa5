use std::fmt;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use super::coset::CosetId;
use crate::error::{Error, Result};
use crate::matrix::{gate, CMatrix, GateName};
use crate::DEFAULT_TOL;

/// Local-equivalence invariants of a two-qubit unitary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MakhlinTriple {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl MakhlinTriple {
    pub fn max_abs_diff(&self, other: &MakhlinTriple) -> f64 {
        (self.alpha - other.alpha)
            .abs()
            .max((self.beta - other.beta).abs())
            .max((self.gamma - other.gamma).abs())
    }
}

/// Invariants together with the imaginary part discarded from `gamma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MakhlinReport {
    pub triple: MakhlinTriple,
    pub gamma_imag: f64,
}

/// Computes `(α, β, γ)` after checking unitarity at `tol`.
///
/// With `W = Q†UQ` and `V = WᵀW`:
/// `α + iβ = (Tr V)² / (16 det U)` and
/// `γ = ((Tr V)² − Tr(V²)) / (4 det U)`.
pub fn makhlin_report(u: &CMatrix, tol: f64) -> Result<MakhlinReport> {
    if u.dim() != 4 {
        return Err(Error::DimensionMismatch {
            left: 4,
            right: u.dim(),
        });
    }
    u.ensure_unitary(tol)?;
    let q = gate(GateName::MagicQ);
    let w = q.adjoint().multiply(u)?.multiply(&q)?;
    let v = w.transpose().multiply(&w)?;
    let tr = v.trace();
    let tr_sq = tr * tr;
    let tr_v2 = v.multiply(&v)?.trace();
    let det = u.determinant();
    let g1 = tr_sq / (det * 16.0);
    let g2: Complex64 = (tr_sq - tr_v2) / (det * 4.0);
    Ok(MakhlinReport {
        triple: MakhlinTriple {
            // `+ 0.0` turns -0.0 into 0.0 for cleaner output
            alpha: g1.re + 0.0,
            beta: g1.im + 0.0,
            gamma: g2.re + 0.0,
        },
        gamma_imag: g2.im + 0.0,
    })
}

pub fn makhlin_invariants(u: &CMatrix) -> Result<MakhlinTriple> {
    makhlin_report(u, DEFAULT_TOL).map(|r| r.triple)
}

/// The five possible sets of classical counterparts of a two-qubit unitary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CCClass {
    Empty,
    /// `{I, CNOT12, CNOT21}`
    IdentityOrCnot,
    /// `{SWAP, SWAT12, SWAT21}`
    SwapOrSwat,
    /// `{I}`
    IdentityOnly,
    /// `{SWAP}`
    SwapOnly,
}

impl CCClass {
    pub fn members(self) -> &'static [CosetId] {
        match self {
            CCClass::Empty => &[],
            CCClass::IdentityOrCnot => &[CosetId::I, CosetId::Cnot12, CosetId::Cnot21],
            CCClass::SwapOrSwat => &[CosetId::Swap, CosetId::Swat12, CosetId::Swat21],
            CCClass::IdentityOnly => &[CosetId::I],
            CCClass::SwapOnly => &[CosetId::Swap],
        }
    }

    pub fn contains(self, id: CosetId) -> bool {
        self.members().contains(&id)
    }

    pub fn names(self) -> Vec<&'static str> {
        self.members().iter().map(|c| c.name()).collect()
    }

    /// Matches invariants against the table rows. `|α| < tol` counts as
    /// `α = 0` before any sign test.
    pub fn from_invariants(t: &MakhlinTriple, tol: f64) -> CCClass {
        if t.beta.abs() >= tol {
            return CCClass::Empty;
        }
        if t.alpha.abs() < tol {
            if (t.gamma - 1.0).abs() < tol {
                CCClass::IdentityOrCnot
            } else if (t.gamma + 1.0).abs() < tol {
                CCClass::SwapOrSwat
            } else {
                CCClass::Empty
            }
        } else if t.alpha > 0.0 && (t.gamma - (1.0 + 2.0 * t.alpha)).abs() < tol {
            CCClass::IdentityOnly
        } else if t.alpha < 0.0 && (t.gamma - (-1.0 + 2.0 * t.alpha)).abs() < tol {
            CCClass::SwapOnly
        } else {
            CCClass::Empty
        }
    }
}

impl fmt::Display for CCClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.names().join(", "))
    }
}

impl Serialize for CCClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.members().serialize(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    #[serde(flatten)]
    pub invariants: MakhlinTriple,
    pub cc_class: CCClass,
    pub warnings: Vec<String>,
}

pub fn classify_detailed(u: &CMatrix, tol: f64) -> Result<Classification> {
    let report = makhlin_report(u, tol)?;
    let mut warnings = Vec::new();
    if report.gamma_imag.abs() >= tol {
        warnings.push(format!(
            "gamma has imaginary part {:.3e}; only the real part is reported",
            report.gamma_imag
        ));
    }
    Ok(Classification {
        invariants: report.triple,
        cc_class: CCClass::from_invariants(&report.triple, tol),
        warnings,
    })
}

pub fn classify_cc(u: &CMatrix, tol: f64) -> Result<CCClass> {
    classify_detailed(u, tol).map(|c| c.cc_class)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn triple(alpha: f64, beta: f64, gamma: f64) -> MakhlinTriple {
        MakhlinTriple { alpha, beta, gamma }
    }

    fn diag_phase(theta: f64) -> CMatrix {
        let one = Complex64::new(1.0, 0.0);
        CMatrix::diagonal(&[one, one, one, Complex64::from_polar(1.0, theta)])
    }

    fn iswap() -> CMatrix {
        let mut m = CMatrix::zeros(4);
        m[(0, 0)] = Complex64::new(1.0, 0.0);
        m[(3, 3)] = Complex64::new(1.0, 0.0);
        m[(1, 2)] = Complex64::i();
        m[(2, 1)] = Complex64::i();
        m
    }

    fn sqrt_swap() -> CMatrix {
        let a = Complex64::new(0.5, 0.5);
        let b = Complex64::new(0.5, -0.5);
        let one = Complex64::new(1.0, 0.0);
        let mut m = CMatrix::diagonal(&[one, a, a, one]);
        m[(1, 2)] = b;
        m[(2, 1)] = b;
        m
    }

    #[test]
    fn named_invariants() {
        let cases = [
            (gate(GateName::Cnot12), triple(0., 0., 1.)),
            (gate(GateName::Identity(2)), triple(1., 0., 3.)),
            (gate(GateName::Swap), triple(-1., 0., -3.)),
            (iswap(), triple(0., 0., -1.)),
            // numpy reference evaluation
            (sqrt_swap(), triple(0., -0.25, 0.)),
        ];
        for (u, expected) in cases {
            let got = makhlin_invariants(&u).unwrap();
            assert!(
                got.max_abs_diff(&expected) < 1e-12,
                "{got:?} vs {expected:?}"
            );
        }
    }

    #[test]
    fn controlled_phase_closed_form() {
        for theta in [
            0.0,
            std::f64::consts::FRAC_PI_2,
            std::f64::consts::PI,
            1.234,
        ] {
            let got = makhlin_invariants(&diag_phase(theta)).unwrap();
            let expected = triple((theta / 2.0).cos().powi(2), 0.0, 2.0 + theta.cos());
            assert!(got.max_abs_diff(&expected) < 1e-12, "theta={theta}");
        }
    }

    #[test]
    fn classification_examples() {
        assert_eq!(
            classify_cc(&gate(GateName::Cnot12), 1e-9).unwrap(),
            CCClass::IdentityOrCnot
        );
        assert_eq!(classify_cc(&iswap(), 1e-9).unwrap(), CCClass::SwapOrSwat);
        assert_eq!(classify_cc(&sqrt_swap(), 1e-9).unwrap(), CCClass::Empty);
        assert_eq!(
            classify_cc(&gate(GateName::Identity(2)), 1e-9).unwrap(),
            CCClass::IdentityOnly
        );
        assert_eq!(
            classify_cc(&gate(GateName::Swap), 1e-9).unwrap(),
            CCClass::SwapOnly
        );
    }

    #[test]
    fn tie_break_prefers_zero_alpha() {
        let t = triple(1e-12, 0.0, 1.0 + 2e-12);
        assert_eq!(CCClass::from_invariants(&t, 1e-9), CCClass::IdentityOrCnot);
        let t = triple(0.3, 0.0, 1.0);
        assert_eq!(CCClass::from_invariants(&t, 1e-9), CCClass::Empty);
    }

    #[test]
    fn rejects_bad_input() {
        let shear = CMatrix::from_real(
            4,
            &[
                1., 1., 0., 0., 0., 1., 0., 0., 0., 0., 1., 0., 0., 0., 0., 1.,
            ],
        )
        .unwrap();
        assert!(matches!(
            makhlin_invariants(&shear),
            Err(Error::NotUnitary { .. })
        ));
        assert!(matches!(
            makhlin_invariants(&CMatrix::identity(2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn local_and_global_phase_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..100 {
            let u = CMatrix::random_unitary(4, &mut rng);
            let base = makhlin_invariants(&u).unwrap();
            let left =
                CMatrix::random_unitary(2, &mut rng).tensor(&CMatrix::random_unitary(2, &mut rng));
            let right =
                CMatrix::random_unitary(2, &mut rng).tensor(&CMatrix::random_unitary(2, &mut rng));
            let dressed = left.multiply(&u).unwrap().multiply(&right).unwrap();
            assert!(makhlin_invariants(&dressed).unwrap().max_abs_diff(&base) < 1e-8);
            let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            let phased = u.scale(Complex64::from_polar(1.0, phi));
            assert!(makhlin_invariants(&phased).unwrap().max_abs_diff(&base) < 1e-9);
        }
    }

    #[test]
    fn gamma_is_real_for_random_unitaries() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let u = CMatrix::random_unitary(4, &mut rng);
            let r = makhlin_report(&u, 1e-9).unwrap();
            assert!(r.gamma_imag.abs() < 1e-9);
            assert!(classify_detailed(&u, 1e-9).unwrap().warnings.is_empty());
        }
    }

    #[test]
    fn class_serializes_as_names() {
        assert_eq!(
            serde_json::to_string(&CCClass::IdentityOrCnot).unwrap(),
            r#"["I","CNOT12","CNOT21"]"#
        );
        assert_eq!(serde_json::to_string(&CCClass::Empty).unwrap(), "[]");
    }
}
