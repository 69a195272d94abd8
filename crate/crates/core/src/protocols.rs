//! Heralded circuits on entangled squeezed vacua: entanglement swapping,
//! teleportation of squeezed-vacuum qubits, and the two ancilla-based
//! generation schemes.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fock::gates::{
    apply_single_mode, balanced_beamsplitter, phase_diagonal, SingleModeGate,
};
use crate::fock::{FockVector, LocalOp, ModeLayout, TailPolicy, Tensor};
use crate::states::{
    esv_pure, esv_pure_correlated, squeezed_vacuum, two_mode_squeezed_vacuum, EsvSpec, SqueezeSpec,
};

/// Coefficients of a qubit (or of a squeezed-vacuum "qubit" `a0|s+⟩ + a1|s−⟩`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QubitAmplitudes {
    pub a0: C64,
    pub a1: C64,
}

impl QubitAmplitudes {
    /// Requires `|a0|² + |a1|² = 1` within `1e−12`.
    pub fn new(a0: C64, a1: C64) -> Result<Self> {
        let n = a0.norm_sqr() + a1.norm_sqr();
        if !((n - 1.0).abs() <= 1e-12) {
            return Err(Error::InvalidParameter(format!("|a0|² + |a1|² = {n}")));
        }
        Ok(Self { a0, a1 })
    }

    pub fn real(a0: f64, a1: f64) -> Result<Self> {
        Self::new(C64::new(a0, 0.0), C64::new(a1, 0.0))
    }
}

/// Cross-Kerr phase `γ` of `Θ_γ = e^{iγ a†a b†b}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KerrSpec {
    pub gamma: f64,
}

impl Default for KerrSpec {
    fn default() -> Self {
        Self { gamma: PI }
    }
}

/// Ancilla measurement result in the `|±⟩ = (|0⟩ ± |1⟩)/√2` basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Plus,
    Minus,
}

impl Outcome {
    fn sign(self) -> f64 {
        match self {
            Outcome::Plus => 1.0,
            Outcome::Minus => -1.0,
        }
    }
}

/// Success probability of a heralded run and the fidelity of its output
/// with the target state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProtocolOutcome {
    pub probability: f64,
    pub fidelity: f64,
}

/// Conditional state of a generation scheme and the probability of the
/// heralding outcome.
#[derive(Clone, Debug)]
pub struct Heralded {
    pub state: FockVector,
    pub probability: f64,
}

fn projected(
    state: &FockVector,
    modes: (usize, usize),
    odd_odd: bool,
) -> Result<(FockVector, f64)> {
    let layout = state.layout();
    layout.check_mode(modes.0)?;
    layout.check_mode(modes.1)?;
    let total = state.norm_sqr();
    if !(total > 0.0) {
        return Err(Error::NullState("projection of the zero vector".into()));
    }
    let out = state.filter(|l| (l[modes.0] % 2 == 1 && l[modes.1] % 2 == 1) == odd_odd);
    let p = out.norm_sqr() / total;
    Ok((out, p))
}

/// `Π = Σ_{j,k} |2j+1, 2k+1⟩⟨2j+1, 2k+1|` on `modes`. Returns the unnormalized
/// projected vector and the outcome probability `‖Πψ‖² / ‖ψ‖²`.
pub fn odd_odd_projector(state: &FockVector, modes: (usize, usize)) -> Result<(FockVector, f64)> {
    projected(state, modes, true)
}

/// `1 − Π`, the failure branch of [`odd_odd_projector`].
pub fn odd_odd_complement(state: &FockVector, modes: (usize, usize)) -> Result<(FockVector, f64)> {
    projected(state, modes, false)
}

fn require_squeezing(s: f64) -> Result<()> {
    if !(s.is_finite() && s != 0.0) {
        return Err(Error::NullState(format!(
            "the resource state is degenerate at s = {s}"
        )));
    }
    Ok(())
}

/// Swapping: `|Ψ(π)⟩₁₂ ⊗ |Φ(π)⟩₃₄`, balanced beam splitter on modes 2 and 3,
/// odd-odd detection there; the output of modes 1 and 4 is compared with
/// `|Φ(π)⟩`. (Modes are 0-based in the layout: 0..4.)
pub fn entanglement_swap(s: f64, cutoff: usize, policy: TailPolicy) -> Result<ProtocolOutcome> {
    require_squeezing(s)?;
    let spec = EsvSpec::new(s, PI, cutoff).with_policy(policy);
    let psi = esv_pure(&spec)?;
    let phi = esv_pure_correlated(&spec)?;
    let joint = psi.tensor(&phi);
    joint.check_tail(policy)?;
    let mixed = lossless_beamsplitter(&joint, 1, 2)?;
    let (kept, probability) = odd_odd_projector(&mixed, (1, 2))?;
    let out = kept.normalized()?.reduced(&[0, 3])?;
    let fidelity = out.expectation_of(&phi)?;
    Ok(ProtocolOutcome {
        probability,
        fidelity,
    })
}

/// Copies `state` into a layout where `modes` have `work` levels.
fn widen(state: &FockVector, modes: &[usize], work: usize) -> Result<FockVector> {
    let layout = state.layout();
    let mut dims = layout.dims().to_vec();
    for &m in modes {
        layout.check_mode(m)?;
        if work < dims[m] {
            return Err(Error::InvalidParameter(format!(
                "cannot narrow mode {m} to {work} levels"
            )));
        }
        dims[m] = work;
    }
    let wide = ModeLayout::new(dims)?;
    let mut amps = vec![C64::new(0.0, 0.0); wide.total()];
    for (i, a) in state.amps().iter().enumerate() {
        amps[wide.index(&layout.levels(i))] = *a;
    }
    FockVector::from_vec(wide, amps)
}

/// Balanced beam splitter on a working cutoff wide enough (`d_a + d_b − 1`)
/// that no photon of the input leaves the space; the extra levels are
/// populated by design, so the tail guard is not applied to them.
fn lossless_beamsplitter(state: &FockVector, a: usize, b: usize) -> Result<FockVector> {
    let layout = state.layout();
    let work = layout.dim(a) + layout.dim(b) - 1;
    // the widened modes are populated up to the top by design; no tail check
    let wide = widen(state, &[a, b], work)?;
    wide.apply_local(&[a, b], &balanced_beamsplitter(work, work))
}

/// Normalized `a0|s+⟩ + a1|s−⟩`.
pub fn squeezed_qubit(
    input: &QubitAmplitudes,
    s: f64,
    cutoff: usize,
    policy: TailPolicy,
) -> Result<FockVector> {
    let plus = squeezed_vacuum(&SqueezeSpec::new(s, cutoff).with_policy(policy))?;
    let minus = squeezed_vacuum(&SqueezeSpec::new(-s, cutoff).with_policy(policy))?;
    plus.scaled(input.a0)
        .add_scaled(input.a1, &minus)?
        .normalized()
}

/// Teleportation of `a0|s+⟩ + a1|s−⟩` (mode 0) through `|Φ(π)⟩` (modes 1,
/// 2): beam splitter on modes 0 and 1, odd-odd detection there, then a π/2
/// phase shift of mode 2.
pub fn teleport(
    input: &QubitAmplitudes,
    s: f64,
    cutoff: usize,
    policy: TailPolicy,
) -> Result<ProtocolOutcome> {
    require_squeezing(s)?;
    let target = squeezed_qubit(input, s, cutoff, policy)?;
    let resource = esv_pure_correlated(&EsvSpec::new(s, PI, cutoff).with_policy(policy))?;
    let joint = target.tensor(&resource);
    joint.check_tail(policy)?;
    let mixed = lossless_beamsplitter(&joint, 0, 1)?;
    let (kept, probability) = odd_odd_projector(&mixed, (0, 1))?;
    let rotated = apply_single_mode(
        &kept.normalized()?,
        2,
        SingleModeGate::Phase(FRAC_PI_2),
        policy,
    )?;
    let out = rotated.reduced(&[2])?;
    let fidelity = out.expectation_of(&target)?;
    Ok(ProtocolOutcome {
        probability,
        fidelity,
    })
}

/// Phase `e^{iγn}` on the mode when the ancilla (first factor) is in
/// `|control⟩`; identity otherwise.
fn controlled_phase(gamma: f64, control: usize, dim: usize) -> LocalOp {
    let phases = phase_diagonal(gamma, dim);
    let one = C64::new(1.0, 0.0);
    let diag: Vec<C64> = (0..2)
        .flat_map(|q| (0..dim).map(move |n| (q, n)))
        .map(|(q, n)| if q == control { phases[n] } else { one })
        .collect();
    LocalOp::diagonal(vec![2, dim], &diag)
}

/// Ancilla state `a0|0⟩ + a1|1⟩` as a one-mode vector of dimension 2.
fn ancilla(amps: &QubitAmplitudes) -> FockVector {
    FockVector::from_vec(
        ModeLayout::single(2).expect("valid"),
        vec![amps.a0, amps.a1],
    )
    .expect("finite")
}

/// Measures the ancilla (mode 0) in the `|±⟩` basis and returns the
/// normalized conditional state of the remaining modes.
fn herald(state: &FockVector, outcome: Outcome) -> Result<Heralded> {
    let layout = state.layout();
    let rest = layout.select(&(1..layout.modes()).collect::<Vec<_>>())?;
    let half = rest.total();
    let amps = state.amps();
    let sign = outcome.sign();
    let cond: Vec<C64> = (0..half)
        .map(|i| (amps[i] + amps[half + i] * sign) * FRAC_1_SQRT_2)
        .collect();
    let cond = FockVector::from_vec(rest, cond)?;
    let probability = cond.norm_sqr() / state.norm_sqr();
    let state = cond
        .normalized()
        .map_err(|_| Error::NullState(format!("outcome {outcome:?} never occurs")))?
        .with_fixed_phase();
    Ok(Heralded { state, probability })
}

/// Scheme (a): ancilla ⊗ `|s+⟩|s+⟩`; controlled π/2 phase shifts flip the
/// second mode when the ancilla is `|0⟩` and the first mode when it is
/// `|1⟩`, giving `a0|0⟩|s+,s−⟩ + a1|1⟩|s−,s+⟩`; the ancilla is then measured
/// in the `|±⟩` basis.
pub fn generate_scheme_a(
    s: f64,
    anc: &QubitAmplitudes,
    outcome: Outcome,
    cutoff: usize,
    policy: TailPolicy,
) -> Result<Heralded> {
    let sq = squeezed_vacuum(&SqueezeSpec::new(s, cutoff).with_policy(policy))?;
    let joint = ancilla(anc).tensor(&sq).tensor(&sq);
    let flipped = joint
        .apply_local(&[0, 2], &controlled_phase(FRAC_PI_2, 0, cutoff))?
        .apply_local(&[0, 1], &controlled_phase(FRAC_PI_2, 1, cutoff))?;
    herald(&flipped, outcome)
}

/// Scheme (b): ancilla ⊗ two-mode squeezed vacuum; a cross-Kerr phase `γ`
/// between the ancilla's `|1⟩` and the first mode, then a balanced beam
/// splitter on the modes and the `|±⟩` ancilla measurement. With `γ = π` the
/// beam splitter turns `TMSV(±s)` into `|s±⟩|s∓⟩`.
///
/// The beam splitter runs at a working cutoff of `2·cutoff − 1`, wide enough
/// that no photon of the truncated input is lost, and the output is then
/// restricted to `cutoff`.
pub fn generate_scheme_b(
    s: f64,
    anc: &QubitAmplitudes,
    outcome: Outcome,
    cutoff: usize,
    kerr: KerrSpec,
    policy: TailPolicy,
) -> Result<Heralded> {
    if !kerr.gamma.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "Kerr phase {}",
            kerr.gamma
        )));
    }
    let tmsv = two_mode_squeezed_vacuum(s, cutoff, cutoff, policy)?;
    let joint = ancilla(anc).tensor(&tmsv);
    let kerred = joint.apply_local(&[0, 1], &controlled_phase(kerr.gamma, 1, cutoff))?;
    let mixed = lossless_beamsplitter(&kerred, 1, 2)?;
    // the heralding probability is taken before restricting to `cutoff`
    let probability = herald(&mixed, outcome)?.probability;
    let small_layout = ModeLayout::new(vec![2, cutoff, cutoff])?;
    let amps: Vec<C64> = (0..small_layout.total())
        .map(|i| mixed.amp(&small_layout.levels(i)))
        .collect();
    let state = herald(&FockVector::from_vec(small_layout, amps)?, outcome)?.state;
    state.check_tail(policy)?;
    Ok(Heralded { state, probability })
}
