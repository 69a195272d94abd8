//! Constructors for squeezed vacua, entangled squeezed vacua (pure and via
//! the conditional operation 𝒯), the `|φ±⟩` basis, displaced squeezed
//! states and the two-mode squeezed vacuum.
//!
//! Convention: `|s+⟩ = squeezed_vacuum(s)`, `|s−⟩ = squeezed_vacuum(−s)`,
//! with Fock amplitudes `(cosh s)^{-1/2} √(2n)!/n! (−tanh s / 2)ⁿ` on `|2n⟩`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fock::gates::displacement_matrix;
use crate::fock::spectral::eigs_hermitian;
use crate::fock::{DensityMatrix, FockVector, ModeLayout, ProductSum, TailPolicy, Tensor};

/// In strict mode squeezing beyond this is refused outright: the cutoffs
/// needed for a clean tail grow like `e^{2|s|}`.
pub const STRICT_MAX_SQUEEZING: f64 = 3.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SqueezeSpec {
    pub s: f64,
    pub cutoff: usize,
    pub policy: TailPolicy,
}

impl SqueezeSpec {
    pub fn new(s: f64, cutoff: usize) -> Self {
        Self {
            s,
            cutoff,
            policy: TailPolicy::default(),
        }
    }

    pub fn with_policy(mut self, policy: TailPolicy) -> Self {
        self.policy = policy;
        self
    }

    fn validate(&self) -> Result<()> {
        if !self.s.is_finite() {
            return Err(Error::InvalidParameter(format!("squeezing {}", self.s)));
        }
        if self.cutoff < 2 {
            return Err(Error::InvalidParameter(format!(
                "cutoff {} < 2",
                self.cutoff
            )));
        }
        if self.policy.is_strict() && self.s.abs() > STRICT_MAX_SQUEEZING {
            return Err(Error::InvalidParameter(format!(
                "|s| = {} exceeds {STRICT_MAX_SQUEEZING} in strict mode",
                self.s.abs()
            )));
        }
        Ok(())
    }
}

/// Parameters of `|Ψ(φ)⟩ = 𝒩(|s+⟩|s−⟩ + e^{iφ}|s−⟩|s+⟩)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EsvSpec {
    pub s: f64,
    pub phi: f64,
    /// Per-mode cutoff.
    pub cutoff: usize,
    pub policy: TailPolicy,
}

impl EsvSpec {
    pub fn new(s: f64, phi: f64, cutoff: usize) -> Self {
        Self {
            s,
            phi,
            cutoff,
            policy: TailPolicy::default(),
        }
    }

    pub fn with_policy(mut self, policy: TailPolicy) -> Self {
        self.policy = policy;
        self
    }

    fn squeeze(&self, s: f64) -> SqueezeSpec {
        SqueezeSpec::new(s, self.cutoff).with_policy(self.policy)
    }

    /// `𝒩 = 1/√(2[1 + cos φ / cosh 2s])`; errors at the null point
    /// (`s = 0`, `φ = π`).
    pub fn normalization(&self) -> Result<f64> {
        if !self.phi.is_finite() {
            return Err(Error::InvalidParameter(format!("phase {}", self.phi)));
        }
        let d = 2.0 * (1.0 + self.phi.cos() / (2.0 * self.s).cosh());
        if !(d > 1e-14) {
            return Err(Error::NullState(format!(
                "ESV superposition vanishes at s = {}, φ = {}",
                self.s, self.phi
            )));
        }
        Ok(1.0 / d.sqrt())
    }
}

/// `|α+⟩ = D(α)|s+⟩` and `|β−⟩ = D(β)|s−⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DisplacedSqueezedSpec {
    pub alpha: C64,
    pub beta: C64,
    pub s: f64,
    pub cutoff: usize,
    pub policy: TailPolicy,
}

impl DisplacedSqueezedSpec {
    pub fn new(alpha: C64, beta: C64, s: f64, cutoff: usize) -> Self {
        Self {
            alpha,
            beta,
            s,
            cutoff,
            policy: TailPolicy::default(),
        }
    }
}

/// Coefficients `c_n` of `|2n⟩` for `2n < cutoff`.
fn squeezed_coefficients(s: f64, cutoff: usize) -> Vec<f64> {
    let x = -0.5 * s.tanh();
    let mut c = Vec::with_capacity(cutoff.div_ceil(2));
    let mut cur = 1.0 / s.cosh().sqrt();
    for n in 0..cutoff.div_ceil(2) {
        c.push(cur);
        let k = n as f64;
        cur *= x * ((2.0 * k + 1.0) * (2.0 * k + 2.0)).sqrt() / (k + 1.0);
    }
    c
}

fn single_mode(amps: Vec<C64>) -> FockVector {
    let layout = ModeLayout::single(amps.len()).expect("non-empty");
    FockVector::from_vec(layout, amps).expect("finite amplitudes")
}

/// Squeezed vacuum from its closed-form Fock coefficients. Not renormalized:
/// the missing norm is the truncation tail.
pub fn squeezed_vacuum(spec: &SqueezeSpec) -> Result<FockVector> {
    spec.validate()?;
    let mut amps = vec![C64::new(0.0, 0.0); spec.cutoff];
    for (n, c) in squeezed_coefficients(spec.s, spec.cutoff)
        .into_iter()
        .enumerate()
    {
        amps[2 * n] = C64::new(c, 0.0);
    }
    let v = single_mode(amps);
    v.check_tail(spec.policy)?;
    Ok(v)
}

/// Smallest cutoff at which the squeezed vacuum's population in the top 10%
/// of levels is at most `tol`.
pub fn squeezing_cutoff(s: f64, tol: f64) -> usize {
    // population left at levels ≥ 2n, accumulated from the exact total 1
    let x2 = (0.5 * s.tanh()).powi(2);
    let mut p = 1.0 / s.cosh();
    let mut remaining = 1.0;
    let mut n = 0usize;
    while remaining > tol && n < 50_000_000 {
        remaining -= p;
        let k = n as f64;
        p *= x2 * (2.0 * k + 1.0) * (2.0 * k + 2.0) / ((k + 1.0) * (k + 1.0));
        n += 1;
    }
    // levels below 2n carry all but `tol`; make them the lower 90%
    let kept = 2 * n;
    (kept + kept / 9 + 2).max(4)
}

fn esv_superposition(spec: &EsvSpec, correlated: bool) -> Result<FockVector> {
    spec.normalization()?;
    let plus = squeezed_vacuum(&spec.squeeze(spec.s))?;
    let minus = squeezed_vacuum(&spec.squeeze(-spec.s))?;
    let phase = C64::from_polar(1.0, spec.phi);
    let (first, second) = if correlated {
        (plus.tensor(&plus), minus.tensor(&minus))
    } else {
        (plus.tensor(&minus), minus.tensor(&plus))
    };
    Ok(first
        .add_scaled(phase, &second)?
        .normalized()?
        .with_fixed_phase())
}

/// `|Ψ(φ)⟩ ∝ |s+⟩|s−⟩ + e^{iφ}|s−⟩|s+⟩`, normalized on the truncated space.
pub fn esv_pure(spec: &EsvSpec) -> Result<FockVector> {
    esv_superposition(spec, false)
}

/// `|Φ(φ)⟩ ∝ |s+⟩|s+⟩ + e^{iφ}|s−⟩|s−⟩`, the partner state of the swapping
/// and teleportation circuits (a local π/2 phase shift of `|Ψ(φ)⟩`).
pub fn esv_pure_correlated(spec: &EsvSpec) -> Result<FockVector> {
    esv_superposition(spec, true)
}

/// `|Ψ(φ)⟩` as an unnormalized two-term product sum with each factor at
/// `spec.cutoff`; meant for Schmidt spectra at cutoffs far beyond what a
/// two-mode array allows.
pub fn esv_product_form(spec: &EsvSpec) -> Result<ProductSum> {
    spec.normalization()?;
    let plus = squeezed_vacuum(&spec.squeeze(spec.s))?;
    let minus = squeezed_vacuum(&spec.squeeze(-spec.s))?;
    ProductSum::new()
        .with_term(C64::new(1.0, 0.0), plus.clone(), minus.clone())?
        .with_term(C64::from_polar(1.0, spec.phi), minus, plus)
}

/// Diagonal of 𝒯 = 1⊗e^{iπ/2 b†b} + e^{iφ} e^{iπ/2 a†a}⊗1 on `|n, m⟩`.
fn conditional_diagonal(dim_a: usize, dim_b: usize, phi: f64) -> Vec<C64> {
    let i_pow = |k: usize| match k % 4 {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, 1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, -1.0),
    };
    let e = C64::from_polar(1.0, phi);
    let mut t = Vec::with_capacity(dim_a * dim_b);
    for n in 0..dim_a {
        for m in 0..dim_b {
            t.push(i_pow(m) + e * i_pow(n));
        }
    }
    t
}

fn check_single_mode_physical(rho: &DensityMatrix, name: &str) -> Result<()> {
    if rho.layout().modes() != 1 {
        return Err(Error::InvalidParameter(format!(
            "{name} must be single-mode, has {} modes",
            rho.layout().modes()
        )));
    }
    let t = rho.trace();
    if t.im.abs() > 1e-10 || !(t.re > 1e-12) {
        return Err(Error::NonPhysical(format!("{name} has trace {t}")));
    }
    let min = *eigs_hermitian(rho.matrix())?.last().expect("non-empty");
    if min < -1e-9 * t.re {
        return Err(Error::NonPhysical(format!(
            "{name} has eigenvalue {min:.3e}"
        )));
    }
    Ok(())
}

/// `𝒯(ρ_a⊗ρ_b)𝒯† / Tr[…]`. 𝒯 is not unitary, so this is a conditional
/// (heralded) map and the output is renormalized.
pub fn esv_mixed(rho_a: &DensityMatrix, rho_b: &DensityMatrix, phi: f64) -> Result<DensityMatrix> {
    check_single_mode_physical(rho_a, "first input")?;
    check_single_mode_physical(rho_b, "second input")?;
    if rho_a.layout() != rho_b.layout() {
        return Err(Error::LayoutMismatch {
            expected: rho_a.layout().dims().to_vec(),
            found: rho_b.layout().dims().to_vec(),
        });
    }
    if !phi.is_finite() {
        return Err(Error::InvalidParameter(format!("phase {phi}")));
    }
    let joint = rho_a.tensor(rho_b);
    let (da, db) = (rho_a.layout().total(), rho_b.layout().total());
    let t = conditional_diagonal(da, db, phi);
    let m = joint.matrix();
    let out = DMatrix::from_fn(da * db, da * db, |i, j| t[i] * m[(i, j)] * t[j].conj());
    DensityMatrix::new(joint.layout().clone(), out)?.normalized()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// `|φ±⟩ ∝ |s+⟩ ± |s−⟩`: supported on levels `4k` (plus) or `4k + 2`
/// (minus). Built from the surviving coefficients so the zeros are exact.
pub fn phi_basis(s: f64, sign: Sign, cutoff: usize, policy: TailPolicy) -> Result<FockVector> {
    let base = squeezed_vacuum(&SqueezeSpec::new(s, cutoff).with_policy(policy))?;
    let want = match sign {
        Sign::Plus => 0,
        Sign::Minus => 2,
    };
    base.filter(|l| l[0] % 4 == want)
        .normalized()
        .map_err(|_| {
            Error::NullState(format!(
                "|φ{}⟩ at s = {s}",
                if want == 0 { '+' } else { '-' }
            ))
        })
        .map(FockVector::with_fixed_phase)
}

/// `D(α)|s⟩`. The squeezed vacuum is built at a larger working cutoff and
/// displaced with exact Fock matrix elements, so the result differs from
/// the untruncated state only through its own tail.
pub fn displaced_squeezed(
    alpha: C64,
    s: f64,
    cutoff: usize,
    policy: TailPolicy,
) -> Result<FockVector> {
    if !(alpha.re.is_finite() && alpha.im.is_finite()) {
        return Err(Error::InvalidParameter(format!("displacement {alpha}")));
    }
    if alpha.norm_sqr() > cutoff as f64 {
        return Err(Error::InvalidParameter(format!(
            "|α|² = {:.3} exceeds the cutoff {cutoff}",
            alpha.norm_sqr()
        )));
    }
    let work = 2 * cutoff + 16;
    let base = squeezed_vacuum(&SqueezeSpec::new(s, work).with_policy(policy))?;
    let d = displacement_matrix(alpha, work);
    let full: DVector<C64> = d * base.amps();
    let v = single_mode(full.as_slice()[..cutoff].to_vec());
    v.check_tail(policy)?;
    Ok(v)
}

/// `|⟨α+|β−⟩|² = exp(−|β − α|² / cosh 2r) / cosh 2r`.
pub fn displaced_overlap(alpha: C64, beta: C64, r: f64) -> f64 {
    let c = (2.0 * r).cosh();
    (-(beta - alpha).norm_sqr() / c).exp() / c
}

/// `|Ψ′⟩ ∝ |α+, β−⟩ + e^{iφ}|β−, α+⟩`.
pub fn esv_generalized(spec: &DisplacedSqueezedSpec, phi: f64) -> Result<FockVector> {
    let ap = displaced_squeezed(spec.alpha, spec.s, spec.cutoff, spec.policy)?;
    let bm = displaced_squeezed(spec.beta, -spec.s, spec.cutoff, spec.policy)?;
    ap.tensor(&bm)
        .add_scaled(C64::from_polar(1.0, phi), &bm.tensor(&ap))?
        .normalized()
        .map(FockVector::with_fixed_phase)
}

/// `(cosh s)^{-1} Σ tanhⁿ s |n, n⟩`, truncated to the smaller cutoff.
pub fn two_mode_squeezed_vacuum(
    s: f64,
    cutoff_a: usize,
    cutoff_b: usize,
    policy: TailPolicy,
) -> Result<FockVector> {
    if !s.is_finite() || cutoff_a < 2 || cutoff_b < 2 {
        return Err(Error::InvalidParameter(format!(
            "two-mode squeezing s = {s} with cutoffs ({cutoff_a}, {cutoff_b})"
        )));
    }
    let layout = ModeLayout::new(vec![cutoff_a, cutoff_b])?;
    let mut amps = DVector::zeros(layout.total());
    let t = s.tanh();
    let mut c = 1.0 / s.cosh();
    for n in 0..cutoff_a.min(cutoff_b) {
        amps[layout.index(&[n, n])] = C64::new(c, 0.0);
        c *= t;
    }
    let v = FockVector::new(layout, amps)?;
    v.check_tail(policy)?;
    Ok(v)
}
