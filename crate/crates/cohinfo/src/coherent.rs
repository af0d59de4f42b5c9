//! Entropies and coherent informations.
//!
//! For a bipartite state ϱ with reductions ϱ_A, ϱ_B the coherent information
//! is I^X(ϱ) = S(ϱ_X) − S(ϱ), X ∈ {A, B}, with S the von Neumann entropy in
//! bits. Both the raw difference and the value clipped at zero are carried:
//! the clipped quantity is the operational one, but additivity holds only
//! for the raw difference.
//!
//! For a channel Λ and an input σ, I(σ, Λ) = I^B((I⊗Λ)(|ψ⟩⟨ψ|)) where ψ is
//! any purification whose B side reduces to σ; the value does not depend on
//! the purification chosen.

use serde::{Deserialize, Serialize};

use crate::channels::KrausChannel;
use crate::qla::{self, ComplexMatrix, Side};
use crate::states::{bell_basis, purify, DensityMatrix, IsotropicParams, PureState};
use crate::{Error, Result};

/// Eigenvalues below this are an error rather than rounding noise.
const EIG_ERROR_TOL: f64 = 1e-9;

/// Tolerance on Bell-basis off-diagonals for [`hashing_rate`].
const BELL_DIAGONAL_TOL: f64 = 1e-9;

/// A coherent-information value in bits: the raw difference S(ϱ_X) − S(ϱ)
/// and its clipped-at-zero counterpart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CIValue {
    pub raw: f64,
    pub clipped: f64,
    pub side: Side,
}

impl CIValue {
    fn from_raw(raw: f64, side: Side) -> Self {
        Self { raw, clipped: raw.max(0.0), side }
    }
}

/// Binary entropy h(p) = −p log₂ p − (1−p) log₂(1−p), zero at the endpoints.
pub fn binary_entropy(p: f64) -> f64 {
    let term = |x: f64| if x > 0.0 { -x * x.log2() } else { 0.0 };
    term(p) + term(1.0 - p)
}

/// Shannon entropy in bits of a spectrum, clipping eigenvalues in
/// [−1e-9, 0) to zero and rejecting anything lower.
fn entropy_of_spectrum(eigs: &[f64]) -> Result<f64> {
    let mut s = 0.0;
    for &lam in eigs {
        if lam < -EIG_ERROR_TOL {
            return Err(Error::NegativeEigenvalue { value: lam });
        }
        if lam > 0.0 {
            s -= lam * lam.log2();
        }
    }
    Ok(s)
}

/// Von Neumann entropy S(m) = −Tr m log₂ m of a Hermitian PSD matrix.
pub fn entropy_of_matrix(m: &ComplexMatrix) -> Result<f64> {
    entropy_of_spectrum(&qla::herm_eigenvalues(m)?)
}

/// Von Neumann entropy S(ϱ) = −Tr ϱ log₂ ϱ in bits.
pub fn entropy(rho: &DensityMatrix) -> Result<f64> {
    entropy_of_matrix(rho.matrix())
}

/// Coherent information I^X(ϱ) = S(ϱ_X) − S(ϱ) for a bipartite state.
pub fn coherent_info(rho: &DensityMatrix, side: Side) -> Result<CIValue> {
    let s_joint = entropy(rho)?;
    let s_red = entropy_of_matrix(&rho.reduction(side))?;
    Ok(CIValue::from_raw(s_red - s_joint, side))
}

/// Channel coherent information from an explicit purification: applies I⊗Λ
/// to |ψ⟩⟨ψ| and returns I^B of the output. The B side of ψ is the channel
/// input.
pub fn channel_ci_from_purification(psi: &PureState, channel: &KrausChannel) -> Result<CIValue> {
    let out = channel.extend_apply(&psi.to_density())?;
    coherent_info(&out, Side::B)
}

/// Channel coherent information I(σ, Λ) = I^B((I⊗Λ)(|ψ⟩⟨ψ|)) with ψ a
/// purification of σ. Independent of the purification; this uses the
/// eigendecomposition purification from [`purify`].
pub fn channel_ci(sigma: &DensityMatrix, channel: &KrausChannel) -> Result<CIValue> {
    if sigma.dim() != channel.d_in() {
        return Err(Error::DimensionMismatch {
            expected: channel.d_in(),
            got: sigma.dim(),
            context: "channel CI input",
        });
    }
    let psi = purify(sigma)?;
    channel_ci_from_purification(&psi, channel)
}

/// Closed-form coherent information of the isotropic state ϱ(F, d):
///
/// raw = log₂ d + F log₂ F + (1−F) log₂((1−F)/(d²−1)),
///
/// from the spectrum {F, (1−F)/(d²−1) ×(d²−1)} and the maximally mixed
/// reductions; both sides agree by symmetry. Pure arithmetic: no matrix of
/// dimension d² is ever built, so d may be large.
pub fn isotropic_ci(params: IsotropicParams, side: Side) -> CIValue {
    let f = params.fidelity();
    let d = params.dim() as f64;
    let mut raw = d.log2();
    if f > 0.0 {
        raw += f * f.log2();
    }
    if f < 1.0 {
        raw += (1.0 - f) * ((1.0 - f).log2() - (d * d - 1.0).log2());
    }
    CIValue::from_raw(raw, side)
}

/// Decompose a two-qubit state in the Bell basis, verifying that the
/// off-diagonal elements vanish within 1e-9; returns the four diagonal
/// probabilities in the order Φ⁺, Φ⁻, Ψ⁺, Ψ⁻.
pub fn bell_probabilities(rho: &DensityMatrix) -> Result<[f64; 4]> {
    if rho.dims() != (2, 2) {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: rho.dim(),
            context: "Bell decomposition needs a two-qubit state",
        });
    }
    let basis = bell_basis();
    let m = rho.matrix();
    let mut probs = [0.0; 4];
    for j in 0..4 {
        for k in 0..4 {
            // ⟨B_j|ϱ|B_k⟩
            let mut acc = num_complex::Complex64::new(0.0, 0.0);
            for r in 0..4 {
                for c in 0..4 {
                    acc += basis[j][r].conj() * m[(r, c)] * basis[k][c];
                }
            }
            if j == k {
                probs[j] = acc.re;
            } else if acc.norm() > BELL_DIAGONAL_TOL {
                return Err(Error::NotBellDiagonal {
                    residual: acc.norm(),
                    tol: BELL_DIAGONAL_TOL,
                });
            }
        }
    }
    Ok(probs)
}

/// Hashing rate max(0, 1 − S(ϱ)) of a Bell-diagonal two-qubit state: an
/// achievable one-way distillation rate, equal to the clipped I^B on this
/// family since both reductions are maximally mixed.
pub fn hashing_rate(rho: &DensityMatrix) -> Result<f64> {
    let probs = bell_probabilities(rho)?;
    let s = entropy_of_spectrum(&probs)?;
    Ok((1.0 - s).max(0.0))
}
