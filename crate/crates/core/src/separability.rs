//! Moment-matrix entanglement tests on two-mode states.
//!
//! Entries of the partially transposed moment matrix,
//! `M_ij(ρ^PT) = ⟨a†^{i1} a^{i2} b†^{i3} b^{i4} a†^{j2} a^{j1} b†^{j4} b^{j3}⟩_PT`,
//! are evaluated on the untransposed state through the identity
//! `Tr[ρ^{T_b} (A⊗B)] = Tr[ρ (A⊗Bᵀ)]`, i.e.
//! `⟨a†^{i1} a^{i2} a†^{j2} a^{j1} ⊗ b†^{j3} b^{j4} b†^{i4} b^{i3}⟩`.

use std::cmp::Ordering;

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fock::{partial_transpose, DensityMatrix, Moments, OpWord, QuantumState};

/// Largest multi-index weight `|i|` supported.
pub const MAX_WEIGHT: usize = 4;

/// Determinants above this count as non-negative.
pub const ZERO_BAND: f64 = -1e-9;

/// Multi-index `(i1, i2, i3, i4)` labelling a row of the moment matrix.
///
/// Ordered by weight first; equal weights compare at the highest position
/// where they differ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MomentIndex(pub [usize; 4]);

impl MomentIndex {
    pub const ZERO: MomentIndex = MomentIndex([0; 4]);

    pub fn new(i1: usize, i2: usize, i3: usize, i4: usize) -> Self {
        Self([i1, i2, i3, i4])
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }
}

impl Ord for MomentIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight().cmp(&other.weight()).then_with(|| {
            (0..4)
                .rev()
                .map(|k| self.0[k].cmp(&other.0[k]))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }
}

impl PartialOrd for MomentIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All multi-indices of weight ≤ `max_weight`, ascending. Position `r − 1`
/// holds the index selected by row number `r`.
pub fn multi_indices(max_weight: usize) -> Vec<MomentIndex> {
    let mut v = Vec::new();
    for i1 in 0..=max_weight {
        for i2 in 0..=max_weight - i1 {
            for i3 in 0..=max_weight - i1 - i2 {
                for i4 in 0..=max_weight - i1 - i2 - i3 {
                    v.push(MomentIndex::new(i1, i2, i3, i4));
                }
            }
        }
    }
    v.sort();
    v
}

/// Strictly increasing, 1-based row numbers `r₁ < … < r_N` of a principal minor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorSelector(Vec<usize>);

impl MinorSelector {
    pub fn new(rows: Vec<usize>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidSelector("empty selector".into()));
        }
        if rows[0] == 0 {
            return Err(Error::InvalidSelector("row numbers start at 1".into()));
        }
        if rows.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSelector(format!(
                "{rows:?} is not strictly increasing"
            )));
        }
        Ok(Self(rows))
    }

    /// `r = (1, 2, 3, 4, 5)`: all first-order moments and below.
    pub fn simon() -> Self {
        Self(vec![1, 2, 3, 4, 5])
    }

    /// `r = (1, 2, 4)`.
    pub fn duan() -> Self {
        Self(vec![1, 2, 4])
    }

    pub fn rows(&self) -> &[usize] {
        &self.0
    }

    /// The multi-indices the rows refer to.
    pub fn indices(&self) -> Result<Vec<MomentIndex>> {
        let all = multi_indices(MAX_WEIGHT);
        self.0
            .iter()
            .map(|&r| {
                all.get(r - 1).copied().ok_or_else(|| {
                    Error::InvalidSelector(format!(
                        "row {r} exceeds the {} indices of weight ≤ {MAX_WEIGHT}",
                        all.len()
                    ))
                })
            })
            .collect()
    }
}

/// Rows of the dedicated fourth-order criterion, in the order its matrix is
/// displayed: `1, a†b, a†b†, ab, ab†` in the first row.
pub fn esv_criterion_indices() -> [MomentIndex; 5] {
    [
        MomentIndex::ZERO,
        MomentIndex::new(0, 1, 0, 1),
        MomentIndex::new(0, 1, 1, 0),
        MomentIndex::new(1, 0, 0, 1),
        MomentIndex::new(1, 0, 1, 0),
    ]
}

fn check_two_mode<S: QuantumState>(state: &S) -> Result<()> {
    let modes = state.layout().modes();
    if modes != 2 {
        return Err(Error::InvalidParameter(format!(
            "moment criteria need a two-mode state, got {modes} modes"
        )));
    }
    Ok(())
}

fn check_weight(i: &MomentIndex) -> Result<()> {
    if i.weight() > MAX_WEIGHT {
        return Err(Error::InvalidSelector(format!(
            "multi-index {:?} has weight {} > {MAX_WEIGHT}",
            i.0,
            i.weight()
        )));
    }
    Ok(())
}

/// `M_ij(ρ^PT)` via the transposition identity (no PT matrix formed).
pub fn moment_matrix_entry<S>(state: &S, i: &MomentIndex, j: &MomentIndex) -> Result<C64>
where
    S: QuantumState + Moments,
{
    check_two_mode(state)?;
    check_weight(i)?;
    check_weight(j)?;
    let [i1, i2, i3, i4] = i.0;
    let [j1, j2, j3, j4] = j.0;
    let word = OpWord::new()
        .create(0, i1)
        .annihilate(0, i2)
        .create(0, j2)
        .annihilate(0, j1)
        .create(1, j3)
        .annihilate(1, j4)
        .create(1, i4)
        .annihilate(1, i3);
    state.moment(&word)
}

/// Same entry, computed by forming `ρ^PT` explicitly and taking the plain
/// moment. Used to cross-check [`moment_matrix_entry`].
pub fn moment_matrix_entry_via_pt(
    state: &DensityMatrix,
    i: &MomentIndex,
    j: &MomentIndex,
) -> Result<C64> {
    check_two_mode(state)?;
    check_weight(i)?;
    check_weight(j)?;
    let pt = partial_transpose(state, &[1])?;
    let [i1, i2, i3, i4] = i.0;
    let [j1, j2, j3, j4] = j.0;
    let word = OpWord::new()
        .create(0, i1)
        .annihilate(0, i2)
        .create(1, i3)
        .annihilate(1, i4)
        .create(0, j2)
        .annihilate(0, j1)
        .create(1, j4)
        .annihilate(1, j3);
    pt.moment(&word)
}

/// The moment matrix restricted to `indices` (rows and columns in that order).
pub fn moment_matrix<S>(state: &S, indices: &[MomentIndex]) -> Result<DMatrix<C64>>
where
    S: QuantumState + Moments,
{
    let n = indices.len();
    let mut m = DMatrix::zeros(n, n);
    for (r, i) in indices.iter().enumerate() {
        for (c, j) in indices.iter().enumerate().skip(r) {
            let v = moment_matrix_entry(state, i, j)?;
            m[(r, c)] = v;
            // the moment matrix is Hermitian: M_ji = conj(M_ij)
            m[(c, r)] = v.conj();
        }
    }
    Ok(m)
}

/// Real determinant of a Hermitian matrix; the imaginary residue of the LU
/// product must be below `1e−10·(1 + |det|)`.
pub fn hermitian_determinant(m: DMatrix<C64>) -> Result<f64> {
    let det = m.lu().determinant();
    if det.im.abs() > 1e-10 * (1.0 + det.norm()) {
        return Err(Error::ComplexDeterminant {
            real: det.re,
            imag: det.im,
        });
    }
    Ok(det.re)
}

fn determinant_of<S>(state: &S, indices: &[MomentIndex]) -> Result<f64>
where
    S: QuantumState + Moments,
{
    hermitian_determinant(moment_matrix(state, indices)?)
}

/// `det M^r(ρ^PT)` for the principal minor picked by `selector`.
pub fn minor_determinant<S>(state: &S, selector: &MinorSelector) -> Result<f64>
where
    S: QuantumState + Moments,
{
    determinant_of(state, &selector.indices()?)
}

/// Simon's second-moment determinant; negative only for entangled states.
pub fn simon_det<S>(state: &S) -> Result<f64>
where
    S: QuantumState + Moments,
{
    minor_determinant(state, &MinorSelector::simon())
}

/// Duan's determinant.
pub fn duan_det<S>(state: &S) -> Result<f64>
where
    S: QuantumState + Moments,
{
    minor_determinant(state, &MinorSelector::duan())
}

/// The 5×5 fourth-order determinant that detects every ESV.
pub fn esv_criterion_det<S>(state: &S) -> Result<f64>
where
    S: QuantumState + Moments,
{
    determinant_of(state, &esv_criterion_indices())
}
