use crate::error::{Error, Result};

/// Ordered per-mode Fock cutoffs. Mode `k` spans levels `0..dims[k]`.
///
/// Flat indices are row-major with mode 0 most significant, so the layout
/// of `x ⊗ y` is the concatenation of the two layouts and amplitude arrays
/// compose by the Kronecker product.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModeLayout {
    dims: Vec<usize>,
    strides: Vec<usize>,
    total: usize,
}

impl ModeLayout {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidLayout("no modes".into()));
        }
        if let Some(k) = dims.iter().position(|&d| d == 0) {
            return Err(Error::InvalidLayout(format!("mode {k} has dimension 0")));
        }
        let mut strides = vec![1; dims.len()];
        for k in (0..dims.len() - 1).rev() {
            strides[k] = strides[k + 1] * dims[k + 1];
        }
        let total = dims
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .ok_or_else(|| Error::InvalidLayout("total dimension overflows".into()))?;
        Ok(Self {
            dims,
            strides,
            total,
        })
    }

    /// `modes` copies of the same cutoff.
    pub fn uniform(modes: usize, cutoff: usize) -> Result<Self> {
        Self::new(vec![cutoff; modes])
    }

    pub fn single(cutoff: usize) -> Result<Self> {
        Self::new(vec![cutoff])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, mode: usize) -> usize {
        self.dims[mode]
    }

    pub fn modes(&self) -> usize {
        self.dims.len()
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn strides(&self) -> &[usize] {
        &self.strides
    }

    pub fn check_mode(&self, mode: usize) -> Result<()> {
        if mode < self.modes() {
            Ok(())
        } else {
            Err(Error::ModeOutOfRange {
                mode,
                modes: self.modes(),
            })
        }
    }

    /// Flat index of a Fock basis ket. Panics if a level exceeds its cutoff.
    pub fn index(&self, levels: &[usize]) -> usize {
        assert_eq!(
            levels.len(),
            self.modes(),
            "level count must match mode count"
        );
        levels
            .iter()
            .zip(&self.dims)
            .zip(&self.strides)
            .map(|((&n, &d), &s)| {
                assert!(n < d, "level {n} outside cutoff {d}");
                n * s
            })
            .sum()
    }

    /// Fock level of `mode` in the basis ket with flat index `idx`.
    #[inline]
    pub fn level(&self, idx: usize, mode: usize) -> usize {
        (idx / self.strides[mode]) % self.dims[mode]
    }

    pub fn levels(&self, idx: usize) -> Vec<usize> {
        (0..self.modes()).map(|k| self.level(idx, k)).collect()
    }

    /// Layout of `self ⊗ other`.
    pub fn concat(&self, other: &ModeLayout) -> ModeLayout {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        ModeLayout::new(dims).expect("concatenation of valid layouts")
    }

    /// Sub-layout of the listed modes, in the listed order.
    pub fn select(&self, modes: &[usize]) -> Result<ModeLayout> {
        for &m in modes {
            self.check_mode(m)?;
        }
        ModeLayout::new(modes.iter().map(|&m| self.dims[m]).collect())
    }

    /// Splits a flat index into the part carried by `modes` (as an offset into
    /// the full layout) and the remainder.
    #[inline]
    pub(crate) fn offset_of(&self, idx: usize, modes: &[usize]) -> usize {
        modes
            .iter()
            .map(|&m| self.level(idx, m) * self.strides[m])
            .sum()
    }

    /// Validates that `modes` is a list of distinct in-range modes.
    pub(crate) fn check_distinct(&self, modes: &[usize]) -> Result<()> {
        for (i, &m) in modes.iter().enumerate() {
            self.check_mode(m)?;
            if modes[..i].contains(&m) {
                return Err(Error::InvalidParameter(format!("mode {m} listed twice")));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip() {
        let l = ModeLayout::new(vec![3, 4, 2]).unwrap();
        assert_eq!(l.total(), 24);
        for idx in 0..l.total() {
            assert_eq!(l.index(&l.levels(idx)), idx);
        }
        assert_eq!(l.index(&[1, 0, 0]), 8);
        assert_eq!(l.index(&[0, 0, 1]), 1);
    }

    #[test]
    fn rejects_empty_and_zero() {
        assert!(ModeLayout::new(vec![]).is_err());
        assert!(ModeLayout::new(vec![2, 0]).is_err());
    }

    #[test]
    fn mode_range() {
        let l = ModeLayout::uniform(2, 5).unwrap();
        assert!(l.check_mode(1).is_ok());
        assert_eq!(
            l.check_mode(2),
            Err(Error::ModeOutOfRange { mode: 2, modes: 2 })
        );
        assert!(l.check_distinct(&[0, 0]).is_err());
    }
}
