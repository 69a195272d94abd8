use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use super::layout::ModeLayout;
use super::local::LocalOp;
use crate::error::{Error, Result};

/// Population threshold for the top decile of each mode's Fock levels.
pub const TAIL_THRESHOLD: f64 = 1e-8;

/// What to do when a state carries more than [`TAIL_THRESHOLD`] of its
/// population in the top 10% of a mode's Fock levels.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TailPolicy {
    /// Fail with [`Error::Truncation`].
    Strict,
    /// Log a warning and carry on.
    #[default]
    Warn,
}

impl TailPolicy {
    pub fn check(self, mode: usize, cutoff: usize, tail: f64) -> Result<()> {
        if tail <= TAIL_THRESHOLD {
            return Ok(());
        }
        match self {
            TailPolicy::Strict => Err(Error::Truncation {
                mode,
                cutoff,
                tail,
                threshold: TAIL_THRESHOLD,
            }),
            TailPolicy::Warn => {
                log::warn!("truncation: tail mass {tail:.3e} in mode {mode} at cutoff {cutoff}");
                Ok(())
            }
        }
    }

    pub fn is_strict(self) -> bool {
        self == TailPolicy::Strict
    }
}

/// Number of top Fock levels that make up the tail diagnostic for a mode:
/// the top 10%, but never fewer than two (so states with single-parity
/// support cannot hide their tail in an empty top level) and never the
/// whole mode.
pub fn tail_levels(dim: usize) -> usize {
    dim.div_ceil(10).max(2).min(dim.saturating_sub(1)).max(1)
}

fn tail_of(populations: &[f64]) -> f64 {
    let k = tail_levels(populations.len());
    populations[populations.len() - k..].iter().sum()
}

fn check_finite(values: impl IntoIterator<Item = C64>) -> Result<()> {
    if values
        .into_iter()
        .all(|z| z.re.is_finite() && z.im.is_finite())
    {
        Ok(())
    } else {
        Err(Error::NonPhysical("non-finite amplitude".into()))
    }
}

/// Pure state: complex amplitudes over a truncated multi-mode Fock basis.
#[derive(Clone, Debug, PartialEq)]
pub struct FockVector {
    layout: ModeLayout,
    amps: DVector<C64>,
}

impl FockVector {
    pub fn new(layout: ModeLayout, amps: DVector<C64>) -> Result<Self> {
        if amps.len() != layout.total() {
            return Err(Error::DimensionMismatch {
                expected: layout.total(),
                found: amps.len(),
            });
        }
        check_finite(amps.iter().copied())?;
        Ok(Self { layout, amps })
    }

    pub fn from_vec(layout: ModeLayout, amps: Vec<C64>) -> Result<Self> {
        Self::new(layout, DVector::from_vec(amps))
    }

    /// Amplitude 1 on `|0…0⟩`.
    pub fn vacuum(layout: &ModeLayout) -> Self {
        Self::basis(layout, &vec![0; layout.modes()])
    }

    pub fn basis(layout: &ModeLayout, levels: &[usize]) -> Self {
        let mut amps = DVector::zeros(layout.total());
        amps[layout.index(levels)] = C64::new(1.0, 0.0);
        Self {
            layout: layout.clone(),
            amps,
        }
    }

    pub fn layout(&self) -> &ModeLayout {
        &self.layout
    }

    pub fn amps(&self) -> &DVector<C64> {
        &self.amps
    }

    pub fn into_amps(self) -> DVector<C64> {
        self.amps
    }

    pub fn amp(&self, levels: &[usize]) -> C64 {
        self.amps[self.layout.index(levels)]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Unit-norm copy; fails on (numerically) null vectors.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if !(n > 1e-12) {
            return Err(Error::NullState(format!("vector norm {n:.3e}")));
        }
        Ok(self.scaled(C64::new(1.0 / n, 0.0)))
    }

    pub fn scaled(&self, factor: C64) -> Self {
        Self {
            layout: self.layout.clone(),
            amps: self.amps.map(|z| z * factor),
        }
    }

    /// `self + factor·other`.
    pub fn add_scaled(&self, factor: C64, other: &FockVector) -> Result<Self> {
        same_layout(&self.layout, &other.layout)?;
        Ok(Self {
            layout: self.layout.clone(),
            amps: &self.amps + other.amps.map(|z| z * factor),
        })
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &FockVector) -> Result<C64> {
        same_layout(&self.layout, &other.layout)?;
        Ok(self.amps.dotc(&other.amps))
    }

    /// Marginal photon-number distribution of one mode.
    pub fn populations(&self, mode: usize) -> Result<Vec<f64>> {
        self.layout.check_mode(mode)?;
        let mut p = vec![0.0; self.layout.dim(mode)];
        for (i, z) in self.amps.iter().enumerate() {
            p[self.layout.level(i, mode)] += z.norm_sqr();
        }
        Ok(p)
    }

    /// Population in the top 10% of the mode's Fock levels.
    pub fn tail_mass(&self, mode: usize) -> Result<f64> {
        Ok(tail_of(&self.populations(mode)?))
    }

    /// Applies the tail-mass guard to every mode.
    pub fn check_tail(&self, policy: TailPolicy) -> Result<()> {
        for m in 0..self.layout.modes() {
            policy.check(m, self.layout.dim(m), self.tail_mass(m)?)?;
        }
        Ok(())
    }

    /// Rotates the global phase so the largest-magnitude amplitude is real
    /// and positive (first one wins on ties).
    pub fn with_fixed_phase(mut self) -> Self {
        let mut best = C64::new(0.0, 0.0);
        for z in self.amps.iter() {
            if z.norm() > best.norm() * (1.0 + 1e-12) {
                best = *z;
            }
        }
        if best.norm() > 0.0 {
            let phase = best.conj() / best.norm();
            self.amps.apply(|z| *z *= phase);
        }
        self
    }

    /// Reorders modes: mode `k` of the result is mode `order[k]` of `self`.
    pub fn permute_modes(&self, order: &[usize]) -> Result<Self> {
        let layout = permuted_layout(&self.layout, order)?;
        let mut amps = DVector::zeros(self.amps.len());
        for (i, z) in self.amps.iter().enumerate() {
            let j: usize = order
                .iter()
                .enumerate()
                .map(|(k, &src)| self.layout.level(i, src) * layout.strides()[k])
                .sum();
            amps[j] = *z;
        }
        Ok(Self { layout, amps })
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix {
            layout: self.layout.clone(),
            mat: &self.amps * self.amps.adjoint(),
        }
    }

    /// Applies a local operator; `modes` lists the modes it acts on, in the
    /// order of `op`'s tensor factors.
    pub fn apply_local(&self, modes: &[usize], op: &LocalOp) -> Result<Self> {
        let plan = op.plan(&self.layout, modes)?;
        let mut out = DVector::zeros(self.amps.len());
        plan.apply(self.amps.as_slice(), out.as_mut_slice(), op);
        Ok(Self {
            layout: self.layout.clone(),
            amps: out,
        })
    }

    /// Sets to zero every amplitude whose basis ket fails `keep`.
    pub fn filter(&self, keep: impl Fn(&[usize]) -> bool) -> Self {
        let mut out = self.clone();
        let mut levels = vec![0; self.layout.modes()];
        for (i, z) in out.amps.iter_mut().enumerate() {
            for (k, l) in levels.iter_mut().enumerate() {
                *l = self.layout.level(i, k);
            }
            if !keep(&levels) {
                *z = C64::new(0.0, 0.0);
            }
        }
        out
    }
}

/// Mixed state: Hermitian matrix over the same basis as [`FockVector`].
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    layout: ModeLayout,
    mat: DMatrix<C64>,
}

impl DensityMatrix {
    pub fn new(layout: ModeLayout, mat: DMatrix<C64>) -> Result<Self> {
        if mat.nrows() != layout.total() || mat.ncols() != layout.total() {
            return Err(Error::DimensionMismatch {
                expected: layout.total(),
                found: mat.nrows().max(mat.ncols()),
            });
        }
        check_finite(mat.iter().copied())?;
        Ok(Self { layout, mat })
    }

    pub fn from_pure(psi: &FockVector) -> Self {
        psi.to_density()
    }

    pub fn layout(&self) -> &ModeLayout {
        &self.layout
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.mat
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.mat
    }

    pub fn trace(&self) -> C64 {
        self.mat.trace()
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        // Tr(ρ²) = Σ_ij ρ_ij ρ_ji = Σ_ij |ρ_ij|² for Hermitian ρ
        self.mat.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Largest elementwise `|ρ − ρ†|`.
    pub fn hermiticity_deviation(&self) -> f64 {
        hermiticity_deviation(&self.mat)
    }

    /// Divides by the trace; fails if the trace vanishes.
    pub fn normalized(&self) -> Result<Self> {
        let t = self.trace();
        if !(t.norm() > 1e-14) {
            return Err(Error::NullState(format!("trace {:.3e}", t.norm())));
        }
        Ok(Self {
            layout: self.layout.clone(),
            mat: self.mat.map(|z| z / t),
        })
    }

    pub fn populations(&self, mode: usize) -> Result<Vec<f64>> {
        self.layout.check_mode(mode)?;
        let mut p = vec![0.0; self.layout.dim(mode)];
        for i in 0..self.layout.total() {
            p[self.layout.level(i, mode)] += self.mat[(i, i)].re;
        }
        Ok(p)
    }

    pub fn tail_mass(&self, mode: usize) -> Result<f64> {
        Ok(tail_of(&self.populations(mode)?))
    }

    pub fn check_tail(&self, policy: TailPolicy) -> Result<()> {
        for m in 0..self.layout.modes() {
            policy.check(m, self.layout.dim(m), self.tail_mass(m)?)?;
        }
        Ok(())
    }

    /// `⟨ψ|ρ|ψ⟩ / ⟨ψ|ψ⟩`.
    pub fn expectation_of(&self, psi: &FockVector) -> Result<f64> {
        same_layout(&self.layout, psi.layout())?;
        let v = psi.amps();
        Ok((v.adjoint() * &self.mat * v)[(0, 0)].re / psi.norm_sqr())
    }

    /// `U ρ U†` for a local operator `U` on `modes`.
    pub fn apply_local(&self, modes: &[usize], op: &LocalOp) -> Result<Self> {
        let plan = op.plan(&self.layout, modes)?;
        let n = self.layout.total();
        // X = U ρ, column by column
        let mut x = DMatrix::zeros(n, n);
        for j in 0..n {
            plan.apply(
                self.mat.column(j).as_slice(),
                x.column_mut(j).as_mut_slice(),
                op,
            );
        }
        // U ρ U† = (U X†)†
        let xa = x.adjoint();
        let mut y = DMatrix::zeros(n, n);
        for j in 0..n {
            plan.apply(xa.column(j).as_slice(), y.column_mut(j).as_mut_slice(), op);
        }
        Ok(Self {
            layout: self.layout.clone(),
            mat: y.adjoint(),
        })
    }

    pub fn permute_modes(&self, order: &[usize]) -> Result<Self> {
        let layout = permuted_layout(&self.layout, order)?;
        let n = self.layout.total();
        let map: Vec<usize> = (0..n)
            .map(|i| {
                order
                    .iter()
                    .enumerate()
                    .map(|(k, &src)| self.layout.level(i, src) * layout.strides()[k])
                    .sum()
            })
            .collect();
        let mut mat = DMatrix::zeros(n, n);
        for j in 0..n {
            for i in 0..n {
                mat[(map[i], map[j])] = self.mat[(i, j)];
            }
        }
        Ok(Self { layout, mat })
    }
}

pub(crate) fn hermiticity_deviation(m: &DMatrix<C64>) -> f64 {
    let n = m.nrows();
    let mut dev: f64 = 0.0;
    for j in 0..n {
        for i in 0..=j {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

pub(crate) fn same_layout(a: &ModeLayout, b: &ModeLayout) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::LayoutMismatch {
            expected: a.dims().to_vec(),
            found: b.dims().to_vec(),
        })
    }
}

fn permuted_layout(layout: &ModeLayout, order: &[usize]) -> Result<ModeLayout> {
    if order.len() != layout.modes() {
        return Err(Error::InvalidParameter(format!(
            "permutation of length {} for {} modes",
            order.len(),
            layout.modes()
        )));
    }
    layout.check_distinct(order)?;
    layout.select(order)
}

/// Common surface of pure and mixed states, so gates and channels can be
/// written once.
pub trait QuantumState: Sized {
    fn layout(&self) -> &ModeLayout;
    fn apply_local(&self, modes: &[usize], op: &LocalOp) -> Result<Self>;
    fn check_tail(&self, policy: TailPolicy) -> Result<()>;
}

impl QuantumState for FockVector {
    fn layout(&self) -> &ModeLayout {
        FockVector::layout(self)
    }
    fn apply_local(&self, modes: &[usize], op: &LocalOp) -> Result<Self> {
        FockVector::apply_local(self, modes, op)
    }
    fn check_tail(&self, policy: TailPolicy) -> Result<()> {
        FockVector::check_tail(self, policy)
    }
}

impl QuantumState for DensityMatrix {
    fn layout(&self) -> &ModeLayout {
        DensityMatrix::layout(self)
    }
    fn apply_local(&self, modes: &[usize], op: &LocalOp) -> Result<Self> {
        DensityMatrix::apply_local(self, modes, op)
    }
    fn check_tail(&self, policy: TailPolicy) -> Result<()> {
        DensityMatrix::check_tail(self, policy)
    }
}
