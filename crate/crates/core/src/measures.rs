//! Entanglement quantifiers: logarithmic negativity, pure-state entanglement
//! of formation, and two-qubit negativity.

use crate::error::{Error, Result};
use crate::fock::spectral::{eigs_hermitian, entropy_bits, EIGEN_ZERO};
use crate::fock::{partial_transpose, DensityMatrix, FockVector, ProductSum};

/// Allowed deviation of the input trace (or squared norm) from 1.
pub const NORM_TOL: f64 = 1e-6;

fn check_bipartition(modes: usize, party_b: &[usize]) -> Result<()> {
    if party_b.is_empty() || party_b.len() >= modes || party_b.iter().any(|&m| m >= modes) {
        return Err(Error::InvalidParameter(format!(
            "{party_b:?} is not a proper subset of {modes} modes"
        )));
    }
    Ok(())
}

/// `log₂ ‖ρ^{T_B}‖₁`, with `B` the modes in `party_b`. Evaluated as
/// `log₂(1 + 2𝒩/Tr ρ)` from the negative eigenvalues alone, so a positive
/// partial transpose gives exactly 0 rather than round-off.
pub fn log_negativity(state: &DensityMatrix, party_b: &[usize]) -> Result<f64> {
    check_bipartition(state.layout().modes(), party_b)?;
    let t = state.trace();
    if (t.re - 1.0).abs() > NORM_TOL || t.im.abs() > NORM_TOL {
        return Err(Error::NonPhysical(format!("trace {t} is not 1")));
    }
    let pt = partial_transpose(state, party_b)?;
    let negativity: f64 = eigs_hermitian(pt.matrix())?
        .iter()
        .filter(|&&l| l <= -EIGEN_ZERO)
        .map(|l| -l)
        .sum();
    Ok((1.0 + 2.0 * negativity / t.re).log2())
}

/// Normalized Schmidt weights `λ_k` of a pure bipartite state, descending.
pub fn schmidt_weights(psi: &FockVector, party_b: &[usize]) -> Result<Vec<f64>> {
    check_bipartition(psi.layout().modes(), party_b)?;
    let n2 = psi.norm_sqr();
    if (n2 - 1.0).abs() > NORM_TOL {
        return Err(Error::NonPhysical(format!("squared norm {n2} is not 1")));
    }
    let sv = psi.bipartite_matrix(party_b)?.singular_values();
    let mut w: Vec<f64> = sv.iter().map(|x| x * x / n2).collect();
    w.sort_by(|a, b| b.total_cmp(a));
    Ok(w)
}

/// Entanglement of formation of a pure state from its Schmidt weights.
pub fn eof_of_weights(weights: &[f64]) -> f64 {
    entropy_bits(weights).max(0.0)
}

/// Log-negativity of a pure state from its Schmidt weights, `2 log₂ Σ √λ`.
pub fn log_negativity_of_weights(weights: &[f64]) -> f64 {
    let s: f64 = weights
        .iter()
        .filter(|&&l| l >= EIGEN_ZERO)
        .map(|l| l.sqrt())
        .sum();
    (2.0 * s.log2()).max(0.0)
}

/// `−Tr[ρ_A log₂ ρ_A]` of a pure state.
pub fn eof_pure(psi: &FockVector, party_b: &[usize]) -> Result<f64> {
    Ok(eof_of_weights(&schmidt_weights(psi, party_b)?))
}

/// Log-negativity of a pure state without forming `|ψ⟩⟨ψ|`.
pub fn log_negativity_pure(psi: &FockVector, party_b: &[usize]) -> Result<f64> {
    Ok(log_negativity_of_weights(&schmidt_weights(psi, party_b)?))
}

/// Entanglement of formation of a product-sum state (split between the two
/// factors of each term).
pub fn eof_product_sum(state: &ProductSum) -> Result<f64> {
    Ok(eof_of_weights(&state.schmidt_weights()?))
}

pub fn log_negativity_product_sum(state: &ProductSum) -> Result<f64> {
    Ok(log_negativity_of_weights(&state.schmidt_weights()?))
}

/// Log-negativity of a two-qubit state (layout `[2, 2]`).
pub fn two_qubit_negativity(rho: &DensityMatrix) -> Result<f64> {
    if rho.layout().dims() != [2, 2] {
        return Err(Error::LayoutMismatch {
            expected: vec![2, 2],
            found: rho.layout().dims().to_vec(),
        });
    }
    log_negativity(rho, &[1])
}
