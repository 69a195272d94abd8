use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use super::ops::Tensor;
use super::spectral::eigs_hermitian;
use super::state::{same_layout, FockVector};
use crate::error::{Error, Result};

/// Bipartite pure state kept as a short sum of product kets
/// `Σ_k c_k |a_k⟩⊗|b_k⟩`.
///
/// Each factor may live at its own (possibly very large) cutoff; only the
/// factors' Gram matrices are ever formed, so the Schmidt spectrum of states
/// like the ESV at strong squeezing is available without the full tensor.
#[derive(Clone, Debug)]
pub struct ProductSum {
    terms: Vec<(C64, FockVector, FockVector)>,
}

impl ProductSum {
    pub fn new() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn with_term(mut self, coef: C64, a: FockVector, b: FockVector) -> Result<Self> {
        if let Some((_, a0, b0)) = self.terms.first() {
            same_layout(a0.layout(), a.layout())?;
            same_layout(b0.layout(), b.layout())?;
        }
        self.terms.push((coef, a, b));
        Ok(self)
    }

    pub fn terms(&self) -> &[(C64, FockVector, FockVector)] {
        &self.terms
    }

    /// `K_kl = c_k c_l* ⟨b_l|b_k⟩`, so that `ρ_A = Σ_kl K_kl |a_k⟩⟨a_l|`.
    fn coupling(&self) -> Result<DMatrix<C64>> {
        let m = self.terms.len();
        let mut k = DMatrix::zeros(m, m);
        for (i, (ci, _, bi)) in self.terms.iter().enumerate() {
            for (j, (cj, _, bj)) in self.terms.iter().enumerate() {
                k[(i, j)] = ci * cj.conj() * bj.inner(bi)?;
            }
        }
        Ok(k)
    }

    fn gram_a(&self) -> Result<DMatrix<C64>> {
        let m = self.terms.len();
        let mut g = DMatrix::zeros(m, m);
        for (i, (_, ai, _)) in self.terms.iter().enumerate() {
            for (j, (_, aj, _)) in self.terms.iter().enumerate() {
                g[(i, j)] = ai.inner(aj)?;
            }
        }
        Ok(g)
    }

    pub fn norm_sqr(&self) -> Result<f64> {
        if self.terms.is_empty() {
            return Ok(0.0);
        }
        // ⟨ψ|ψ⟩ = Σ_kl K_kl ⟨a_l|a_k⟩ = Tr[K G]
        Ok((self.coupling()? * self.gram_a()?).trace().re)
    }

    /// Normalized Schmidt coefficients `λ_i` (squared), descending.
    ///
    /// The nonzero spectrum of `A K A†` equals that of `G^{1/2} K G^{1/2}`
    /// with `G = A†A` the Gram matrix of the `a_k`.
    pub fn schmidt_weights(&self) -> Result<Vec<f64>> {
        if self.terms.is_empty() {
            return Err(Error::NullState("empty product sum".into()));
        }
        let g = self.gram_a()?;
        let eig = g.clone().symmetric_eigen();
        let sqrt_d = eig.eigenvalues.map(|l| C64::new(l.max(0.0).sqrt(), 0.0));
        let u = &eig.eigenvectors;
        let root = u * DMatrix::from_diagonal(&sqrt_d) * u.adjoint();
        let m = &root * self.coupling()? * &root;
        let m = (&m + m.adjoint()) * C64::new(0.5, 0.0);
        let mut w = eigs_hermitian(&m)?;
        let total: f64 = w.iter().sum();
        if !(total > 1e-24) {
            return Err(Error::NullState(format!("product sum norm² {total:.3e}")));
        }
        for x in &mut w {
            *x /= total;
        }
        Ok(w)
    }

    /// Expands into a full tensor-product vector (for small cutoffs and checks).
    pub fn to_fock_vector(&self) -> Result<FockVector> {
        let mut iter = self.terms.iter();
        let (c0, a0, b0) = iter
            .next()
            .ok_or_else(|| Error::NullState("empty product sum".into()))?;
        let mut acc = a0.tensor(b0).scaled(*c0);
        for (c, a, b) in iter {
            acc = acc.add_scaled(*c, &a.tensor(b))?;
        }
        Ok(acc)
    }
}

impl Default for ProductSum {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::layout::ModeLayout;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn ket(dim: usize, v: &[C64]) -> FockVector {
        let mut amps = vec![c(0.0); dim];
        amps[..v.len()].copy_from_slice(v);
        FockVector::from_vec(ModeLayout::single(dim).unwrap(), amps).unwrap()
    }

    #[test]
    fn bell_pair_has_equal_weights() {
        let zero = ket(3, &[c(1.0)]);
        let one = ket(3, &[c(0.0), c(1.0)]);
        let p = ProductSum::new()
            .with_term(c(1.0), zero.clone(), zero.clone())
            .unwrap()
            .with_term(c(1.0), one.clone(), one)
            .unwrap();
        assert!((p.norm_sqr().unwrap() - 2.0).abs() < 1e-14);
        let w = p.schmidt_weights().unwrap();
        assert!((w[0] - 0.5).abs() < 1e-14 && (w[1] - 0.5).abs() < 1e-14);
    }

    #[test]
    fn matches_svd_of_expanded_vector() {
        // non-orthogonal factors with complex coefficients
        let x1 = ket(4, &[c(0.8), C64::new(0.1, 0.3), c(0.2)]);
        let x2 = ket(4, &[c(0.5), c(-0.4), C64::new(0.0, 0.6), c(0.1)]);
        let y1 = ket(5, &[c(0.3), c(0.9), c(0.0), c(0.2)]);
        let y2 = ket(5, &[C64::new(0.7, -0.2), c(0.1), c(0.5)]);
        let p = ProductSum::new()
            .with_term(C64::new(0.6, 0.2), x1, y1)
            .unwrap()
            .with_term(c(-0.9), x2, y2)
            .unwrap();
        let full = p.to_fock_vector().unwrap();
        assert!((full.norm_sqr() - p.norm_sqr().unwrap()).abs() < 1e-13);
        let sv = full.bipartite_matrix(&[1]).unwrap().singular_values();
        let mut want: Vec<f64> = sv.iter().map(|s| s * s / full.norm_sqr()).collect();
        want.sort_by(|a, b| b.total_cmp(a));
        let got = p.schmidt_weights().unwrap();
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).abs() < 1e-12, "{got:?} vs {want:?}");
        }
    }

    #[test]
    fn rejects_mixed_factor_layouts() {
        let p = ProductSum::new()
            .with_term(c(1.0), ket(3, &[c(1.0)]), ket(3, &[c(1.0)]))
            .unwrap();
        assert!(p
            .with_term(c(1.0), ket(4, &[c(1.0)]), ket(3, &[c(1.0)]))
            .is_err());
    }
}
