//! Entangling-power probe: two ground-state qubits, each coupled to one
//! mode by a resonant Jaynes-Cummings interaction, then the modes are traced
//! out and the two-qubit entanglement is measured.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fock::{
    partial_trace, DensityMatrix, FockVector, LocalOp, ModeLayout, QuantumState, Tensor,
};
use crate::measures::two_qubit_negativity;

/// Interaction time `τ = g t` (the coupling never appears on its own) and
/// the cutoff of the mode the qubit talks to.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JcSpec {
    pub tau: f64,
    pub cutoff: usize,
}

impl JcSpec {
    pub fn new(tau: f64, cutoff: usize) -> Self {
        Self { tau, cutoff }
    }

    /// `exp(−iτ(σ₊a + σ₋a†))` on `qubit ⊗ mode` (qubit levels: 0 = g,
    /// 1 = e), block by block in the excitation number:
    ///
    /// `|g,n⟩ → cos(τ√n)|g,n⟩ − i sin(τ√n)|e,n−1⟩`,
    /// `|e,n⟩ → cos(τ√(n+1))|e,n⟩ − i sin(τ√(n+1))|g,n+1⟩`.
    ///
    /// `|e, cutoff−1⟩` has no partner inside the cutoff and is left alone,
    /// which keeps the truncated operator exactly unitary.
    pub fn unitary(&self) -> Result<LocalOp> {
        if !self.tau.is_finite() || self.tau < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "interaction time {}",
                self.tau
            )));
        }
        if self.cutoff < 1 {
            return Err(Error::InvalidParameter(
                "mode cutoff must be positive".into(),
            ));
        }
        let n_max = self.cutoff;
        let g = |n: usize| n;
        let e = |n: usize| n_max + n;
        let mut entries = vec![(g(0), g(0), C64::new(1.0, 0.0))];
        for n in 1..n_max {
            let (c, s) = (
                (self.tau * (n as f64).sqrt()).cos(),
                (self.tau * (n as f64).sqrt()).sin(),
            );
            // block {|g,n⟩, |e,n−1⟩}
            entries.push((g(n), g(n), C64::new(c, 0.0)));
            entries.push((e(n - 1), g(n), C64::new(0.0, -s)));
            entries.push((e(n - 1), e(n - 1), C64::new(c, 0.0)));
            entries.push((g(n), e(n - 1), C64::new(0.0, -s)));
        }
        entries.push((e(n_max - 1), e(n_max - 1), C64::new(1.0, 0.0)));
        Ok(LocalOp::from_entries(vec![2, n_max], entries))
    }
}

/// Evolves a `qubit ⊗ mode` state (layout `[2, N]`).
pub fn jc_evolve_pair<S: QuantumState>(state: &S, tau: f64) -> Result<S> {
    let dims = state.layout().dims();
    if dims.len() != 2 || dims[0] != 2 {
        return Err(Error::LayoutMismatch {
            expected: vec![2, dims.get(1).copied().unwrap_or(0)],
            found: dims.to_vec(),
        });
    }
    let op = JcSpec::new(tau, dims[1]).unitary()?;
    state.apply_local(&[0, 1], &op)
}

/// States the probe accepts: pure or mixed two-mode states.
pub trait ProbeInput: QuantumState + Tensor {
    /// Two qubits in `|g,g⟩`, as the same kind of state.
    fn ground_qubits() -> Self;
    /// Reduced state of modes 0 and 1.
    fn qubit_marginal(&self) -> Result<DensityMatrix>;
}

impl ProbeInput for FockVector {
    fn ground_qubits() -> Self {
        FockVector::vacuum(&ModeLayout::uniform(2, 2).expect("valid"))
    }
    fn qubit_marginal(&self) -> Result<DensityMatrix> {
        self.reduced(&[0, 1])
    }
}

impl ProbeInput for DensityMatrix {
    fn ground_qubits() -> Self {
        FockVector::ground_qubits().to_density()
    }
    fn qubit_marginal(&self) -> Result<DensityMatrix> {
        partial_trace(self, &[0, 1])
    }
}

/// Two-qubit log-negativity after the local Jaynes-Cummings interactions
/// (qubit 1 with mode a, qubit 2 with mode b) and tracing out the modes.
pub fn entangling_power<S: ProbeInput>(state: &S, tau: f64) -> Result<f64> {
    let dims = state.layout().dims();
    if dims.len() != 2 {
        return Err(Error::InvalidParameter(format!(
            "entangling power needs a two-mode state, got {} modes",
            dims.len()
        )));
    }
    // layout [q1, q2, a, b]
    let joint = S::ground_qubits().tensor(state);
    let ua = JcSpec::new(tau, dims[0]).unitary()?;
    let ub = JcSpec::new(tau, dims[1]).unitary()?;
    let evolved = joint.apply_local(&[0, 2], &ua)?.apply_local(&[1, 3], &ub)?;
    two_qubit_negativity(&evolved.qubit_marginal()?)
}
