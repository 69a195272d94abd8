use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use super::layout::ModeLayout;
use crate::error::{Error, Result};

/// Sparse operator on the tensor product of a few modes.
///
/// `dims` gives the factor dimensions in order; row/column indices are flat
/// row-major indices over those factors.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalOp {
    dims: Vec<usize>,
    entries: Vec<(usize, usize, C64)>,
}

impl LocalOp {
    pub fn from_entries(dims: Vec<usize>, entries: Vec<(usize, usize, C64)>) -> Self {
        let n: usize = dims.iter().product();
        debug_assert!(entries.iter().all(|&(r, c, _)| r < n && c < n));
        Self { dims, entries }
    }

    pub fn from_dense(dims: Vec<usize>, m: &DMatrix<C64>) -> Self {
        let n: usize = dims.iter().product();
        assert_eq!((m.nrows(), m.ncols()), (n, n), "operator shape mismatch");
        let mut entries = Vec::new();
        for c in 0..n {
            for r in 0..n {
                let v = m[(r, c)];
                if v != C64::new(0.0, 0.0) {
                    entries.push((r, c, v));
                }
            }
        }
        Self { dims, entries }
    }

    pub fn diagonal(dims: Vec<usize>, diag: &[C64]) -> Self {
        let entries = diag
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != C64::new(0.0, 0.0))
            .map(|(i, &v)| (i, i, v))
            .collect();
        Self { dims, entries }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn entries(&self) -> &[(usize, usize, C64)] {
        &self.entries
    }

    pub fn to_dense(&self) -> DMatrix<C64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for &(r, c, v) in &self.entries {
            m[(r, c)] += v;
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        Self {
            dims: self.dims.clone(),
            entries: self
                .entries
                .iter()
                .map(|&(r, c, v)| (c, r, v.conj()))
                .collect(),
        }
    }

    pub(crate) fn plan(&self, layout: &ModeLayout, modes: &[usize]) -> Result<ApplyPlan> {
        layout.check_distinct(modes)?;
        let found: Vec<usize> = modes.iter().map(|&m| layout.dim(m)).collect();
        if found != self.dims {
            return Err(Error::LayoutMismatch {
                expected: self.dims.clone(),
                found,
            });
        }
        // flat local index -> offset in the full layout
        let mut offsets = vec![0usize; self.dim()];
        for (l, off) in offsets.iter_mut().enumerate() {
            let mut rem = l;
            for k in (0..modes.len()).rev() {
                let lvl = rem % self.dims[k];
                rem /= self.dims[k];
                *off += lvl * layout.strides()[modes[k]];
            }
        }
        let bases = (0..layout.total())
            .filter(|&i| layout.offset_of(i, modes) == 0)
            .collect();
        Ok(ApplyPlan { offsets, bases })
    }
}

pub(crate) struct ApplyPlan {
    offsets: Vec<usize>,
    bases: Vec<usize>,
}

impl ApplyPlan {
    /// `out = (op ⊗ 1) input`; `out` must be zeroed by the caller.
    pub(crate) fn apply(&self, input: &[C64], out: &mut [C64], op: &LocalOp) {
        for &b in &self.bases {
            for &(r, c, v) in &op.entries {
                out[b + self.offsets[r]] += v * input[b + self.offsets[c]];
            }
        }
    }
}
