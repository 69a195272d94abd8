use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use super::layout::ModeLayout;
use super::state::{same_layout, DensityMatrix, FockVector};
use crate::error::{Error, Result};

/// Kronecker composition; the layout of `x ⊗ y` is `x`'s modes followed by `y`'s.
pub trait Tensor: Sized {
    fn tensor(&self, other: &Self) -> Self;
}

impl Tensor for FockVector {
    fn tensor(&self, other: &Self) -> Self {
        let layout = self.layout().concat(other.layout());
        let (a, b) = (self.amps(), other.amps());
        let mut amps = DVector::zeros(layout.total());
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                amps[i * b.len() + j] = x * y;
            }
        }
        FockVector::new(layout, amps).expect("tensor of valid vectors")
    }
}

impl Tensor for DensityMatrix {
    fn tensor(&self, other: &Self) -> Self {
        let layout = self.layout().concat(other.layout());
        let mat = self.matrix().kronecker(other.matrix());
        DensityMatrix::new(layout, mat).expect("tensor of valid matrices")
    }
}

fn normalize_mode_set(layout: &ModeLayout, modes: &[usize]) -> Result<Vec<usize>> {
    let mut v = modes.to_vec();
    v.sort_unstable();
    v.dedup();
    for &m in &v {
        layout.check_mode(m)?;
    }
    Ok(v)
}

/// One group per traced-out configuration: (kept index, full index) pairs.
type TraceGroups = Vec<Vec<(usize, usize)>>;

/// Groups flat indices by the levels of the traced-out modes.
fn trace_groups(layout: &ModeLayout, keep: &[usize]) -> Result<(ModeLayout, TraceGroups)> {
    let keep_layout = layout.select(keep)?;
    let traced: Vec<usize> = (0..layout.modes()).filter(|m| !keep.contains(m)).collect();
    let traced_dim: usize = traced.iter().map(|&m| layout.dim(m)).product();
    let mut groups = vec![Vec::with_capacity(keep_layout.total()); traced_dim];
    for i in 0..layout.total() {
        let k: usize = keep
            .iter()
            .enumerate()
            .map(|(pos, &m)| layout.level(i, m) * keep_layout.strides()[pos])
            .sum();
        let mut t = 0;
        for &m in &traced {
            t = t * layout.dim(m) + layout.level(i, m);
        }
        groups[t].push((k, i));
    }
    Ok((keep_layout, groups))
}

/// Traces out every mode not in `keep`. The result's modes are the kept
/// modes in increasing order.
pub fn partial_trace(state: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    if keep.is_empty() {
        return Err(Error::InvalidParameter(
            "partial trace must keep at least one mode".into(),
        ));
    }
    let keep = normalize_mode_set(state.layout(), keep)?;
    let (keep_layout, groups) = trace_groups(state.layout(), &keep)?;
    let rho = state.matrix();
    let mut out = DMatrix::zeros(keep_layout.total(), keep_layout.total());
    for g in &groups {
        for &(k2, i2) in g {
            for &(k1, i1) in g {
                out[(k1, k2)] += rho[(i1, i2)];
            }
        }
    }
    DensityMatrix::new(keep_layout, out)
}

impl FockVector {
    /// Reduced density matrix of the kept modes, without forming `|ψ⟩⟨ψ|`.
    pub fn reduced(&self, keep: &[usize]) -> Result<DensityMatrix> {
        if keep.is_empty() {
            return Err(Error::InvalidParameter(
                "partial trace must keep at least one mode".into(),
            ));
        }
        let keep = normalize_mode_set(self.layout(), keep)?;
        let (keep_layout, groups) = trace_groups(self.layout(), &keep)?;
        let psi = self.amps();
        let mut out = DMatrix::zeros(keep_layout.total(), keep_layout.total());
        for g in &groups {
            for &(k2, i2) in g {
                let b = psi[i2].conj();
                if b == C64::new(0.0, 0.0) {
                    continue;
                }
                for &(k1, i1) in g {
                    out[(k1, k2)] += psi[i1] * b;
                }
            }
        }
        DensityMatrix::new(keep_layout, out)
    }

    /// Amplitudes as a matrix with rows over the modes not in `party_b` and
    /// columns over `party_b` (both in increasing mode order).
    pub fn bipartite_matrix(&self, party_b: &[usize]) -> Result<DMatrix<C64>> {
        let layout = self.layout();
        let b = normalize_mode_set(layout, party_b)?;
        let a: Vec<usize> = (0..layout.modes()).filter(|m| !b.contains(m)).collect();
        if a.is_empty() || b.is_empty() {
            return Err(Error::InvalidParameter(
                "bipartition needs two non-empty parties".into(),
            ));
        }
        let la = layout.select(&a)?;
        let lb = layout.select(&b)?;
        let mut m = DMatrix::zeros(la.total(), lb.total());
        for (i, z) in self.amps().iter().enumerate() {
            let r: usize = a
                .iter()
                .enumerate()
                .map(|(p, &k)| layout.level(i, k) * la.strides()[p])
                .sum();
            let c: usize = b
                .iter()
                .enumerate()
                .map(|(p, &k)| layout.level(i, k) * lb.strides()[p])
                .sum();
            m[(r, c)] = *z;
        }
        Ok(m)
    }
}

/// Transposes the indices of `modes`: `⟨x,y|ρ^T|x',y'⟩ = ⟨x,y'|ρ|x',y⟩`.
pub fn partial_transpose(state: &DensityMatrix, modes: &[usize]) -> Result<DensityMatrix> {
    let layout = state.layout();
    let modes = normalize_mode_set(layout, modes)?;
    let n = layout.total();
    let part: Vec<usize> = (0..n).map(|i| layout.offset_of(i, &modes)).collect();
    let rho = state.matrix();
    let mut out = DMatrix::zeros(n, n);
    for j in 0..n {
        let rest_j = j - part[j];
        for i in 0..n {
            let rest_i = i - part[i];
            out[(i, j)] = rho[(rest_i + part[j], rest_j + part[i])];
        }
    }
    DensityMatrix::new(layout.clone(), out)
}

/// `|⟨x|y⟩|² / (⟨x|x⟩⟨y|y⟩)`; equals the usual fidelity for normalized inputs.
pub fn fidelity(x: &FockVector, y: &FockVector) -> Result<f64> {
    same_layout(x.layout(), y.layout())?;
    let overlap = x.inner(y)?;
    Ok((overlap.norm_sqr() / (x.norm_sqr() * y.norm_sqr())).min(1.0))
}
