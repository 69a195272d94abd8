use num_complex::Complex64 as C64;

use super::layout::ModeLayout;
use super::state::{DensityMatrix, FockVector};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ladder {
    Create,
    Annihilate,
}

/// A product of ladder operators, written left to right as in `a†ⁱ aʲ b†ᵏ …`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct OpWord {
    ops: Vec<(usize, Ladder)>,
}

impl OpWord {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends `a†ᵏ` on `mode`.
    pub fn create(mut self, mode: usize, power: usize) -> Self {
        self.ops
            .extend(std::iter::repeat_n((mode, Ladder::Create), power));
        self
    }

    /// Appends `aᵏ` on `mode`.
    pub fn annihilate(mut self, mode: usize, power: usize) -> Self {
        self.ops
            .extend(std::iter::repeat_n((mode, Ladder::Annihilate), power));
        self
    }

    pub fn then(mut self, other: &OpWord) -> Self {
        self.ops.extend_from_slice(&other.ops);
        self
    }

    pub fn ops(&self) -> &[(usize, Ladder)] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// The Hermitian conjugate word.
    pub fn adjoint(&self) -> Self {
        Self {
            ops: self
                .ops
                .iter()
                .rev()
                .map(|&(m, l)| {
                    let flipped = match l {
                        Ladder::Create => Ladder::Annihilate,
                        Ladder::Annihilate => Ladder::Create,
                    };
                    (m, flipped)
                })
                .collect(),
        }
    }

    fn validate(&self, layout: &ModeLayout) -> Result<()> {
        let mut per_mode = vec![(0usize, 0usize); layout.modes()];
        for &(m, l) in &self.ops {
            layout.check_mode(m)?;
            match l {
                Ladder::Create => per_mode[m].0 += 1,
                Ladder::Annihilate => per_mode[m].1 += 1,
            }
        }
        for (m, &(c, a)) in per_mode.iter().enumerate() {
            let power = c.max(a);
            if power > 0 && power >= layout.dim(m) {
                return Err(Error::TruncationMargin {
                    mode: m,
                    power,
                    cutoff: layout.dim(m),
                });
            }
        }
        Ok(())
    }

    /// Acts on basis ket `idx`: returns the image index and coefficient, or
    /// `None` if the image is zero or leaves the layout. Intermediate levels
    /// are unbounded, so the coefficient is the exact infinite-space one.
    fn act(&self, layout: &ModeLayout, levels: &mut [usize]) -> Option<(usize, f64)> {
        let mut coef = 1.0;
        for &(m, l) in self.ops.iter().rev() {
            match l {
                Ladder::Annihilate => {
                    if levels[m] == 0 {
                        return None;
                    }
                    coef *= (levels[m] as f64).sqrt();
                    levels[m] -= 1;
                }
                Ladder::Create => {
                    levels[m] += 1;
                    coef *= (levels[m] as f64).sqrt();
                }
            }
        }
        if levels.iter().zip(layout.dims()).any(|(&n, &d)| n >= d) {
            return None;
        }
        let idx = levels
            .iter()
            .zip(layout.strides())
            .map(|(&n, &s)| n * s)
            .sum();
        Some((idx, coef))
    }

    /// `(i, j, c)` with `W|j⟩ = c|i⟩` for every basis ket `j` whose image
    /// stays inside the layout.
    pub(crate) fn matrix_entries(&self, layout: &ModeLayout) -> Vec<(usize, usize, f64)> {
        let mut levels = vec![0; layout.modes()];
        (0..layout.total())
            .filter_map(|j| {
                for (k, l) in levels.iter_mut().enumerate() {
                    *l = layout.level(j, k);
                }
                self.act(layout, &mut levels).map(|(i, c)| (i, j, c))
            })
            .collect()
    }
}

/// States whose ladder-operator moments can be evaluated.
pub trait Moments {
    /// `Tr[ρ W]` (or `⟨ψ|W|ψ⟩`), with `W` restricted to the kept levels but
    /// evaluated without intermediate truncation.
    fn moment(&self, word: &OpWord) -> Result<C64>;
}

impl Moments for FockVector {
    fn moment(&self, word: &OpWord) -> Result<C64> {
        word.validate(self.layout())?;
        let psi = self.amps();
        Ok(word
            .matrix_entries(self.layout())
            .into_iter()
            .map(|(i, j, c)| psi[i].conj() * psi[j] * c)
            .sum())
    }
}

impl Moments for DensityMatrix {
    fn moment(&self, word: &OpWord) -> Result<C64> {
        word.validate(self.layout())?;
        let rho = self.matrix();
        // Tr[ρW] = Σ_j ⟨j|ρ W|j⟩ = Σ_j c_j ρ[j, i(j)]
        Ok(word
            .matrix_entries(self.layout())
            .into_iter()
            .map(|(i, j, c)| rho[(j, i)] * c)
            .sum())
    }
}
