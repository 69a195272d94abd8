//! Single-mode impurity models: random displacements (thermal), random
//! phase shifts (phase diffusion) and loss at a beam splitter.

use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::hermite::GaussHermite;
use log::debug;
use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fock::gates::{beamsplitter, displacement_matrix};
use crate::fock::{partial_trace, DensityMatrix, FockVector, ModeLayout, TailPolicy, Tensor};
use crate::states::{esv_mixed, squeezed_vacuum, EsvSpec, SqueezeSpec};

pub const DEFAULT_THERMAL_NODES: usize = 24;
pub const DEFAULT_PHASE_NODES: usize = 32;
pub const MIN_NODES: usize = 8;
pub const MAX_NODES: usize = 64;
const NODE_STEP: usize = 8;

/// Agreement required between successive quadrature refinements, and
/// between the phase quadrature and its closed form.
pub const QUADRATURE_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NoiseSpec {
    /// `∫ e^{−|α|²/σ}/(πσ) D(α)ρD†(α) d²α`; `sigma` in photon-number units.
    Thermal { sigma: f64, nodes: usize },
    /// `∫ e^{−φ²/2σ}/√(2πσ) R(φ)ρR†(φ) dφ`; `sigma` is the phase variance.
    Phase { sigma: f64, nodes: usize },
    /// Mixing with vacuum at a beam splitter of the given transmissivity.
    BsLoss { transmissivity: f64 },
}

impl NoiseSpec {
    pub fn thermal(sigma: f64) -> Self {
        NoiseSpec::Thermal {
            sigma,
            nodes: DEFAULT_THERMAL_NODES,
        }
    }

    pub fn phase(sigma: f64) -> Self {
        NoiseSpec::Phase {
            sigma,
            nodes: DEFAULT_PHASE_NODES,
        }
    }

    pub fn bs_loss(transmissivity: f64) -> Self {
        NoiseSpec::BsLoss { transmissivity }
    }
}

/// Applies the channel described by `spec`, then the tail-mass guard.
pub fn apply_noise(
    rho: &DensityMatrix,
    spec: &NoiseSpec,
    policy: TailPolicy,
) -> Result<DensityMatrix> {
    let out = match *spec {
        NoiseSpec::Thermal { sigma, nodes } => thermal_channel(rho, sigma, nodes)?,
        NoiseSpec::Phase { sigma, nodes } => phase_channel(rho, sigma, nodes)?,
        NoiseSpec::BsLoss { transmissivity } => bs_loss(rho, transmissivity)?,
    };
    out.check_tail(policy)?;
    Ok(out)
}

fn check_single_mode(rho: &DensityMatrix) -> Result<usize> {
    if rho.layout().modes() != 1 {
        return Err(Error::InvalidParameter(format!(
            "channel input must be single-mode, has {} modes",
            rho.layout().modes()
        )));
    }
    Ok(rho.layout().total())
}

fn check_sigma(sigma: f64) -> Result<()> {
    if !(sigma >= 0.0 && sigma.is_finite()) {
        return Err(Error::InvalidParameter(format!("noise width {sigma}")));
    }
    Ok(())
}

fn check_nodes(nodes: usize) -> Result<()> {
    if !(MIN_NODES..=MAX_NODES).contains(&nodes) {
        return Err(Error::InvalidParameter(format!(
            "{nodes} quadrature nodes outside {MIN_NODES}..={MAX_NODES}"
        )));
    }
    Ok(())
}

fn hermite_rule(nodes: usize) -> Vec<(f64, f64)> {
    let n = NonZeroUsize::new(nodes).expect("node count checked");
    GaussHermite::new(n).as_node_weight_pairs().to_vec()
}

fn max_abs_diff(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// One Gauss–Hermite evaluation of the thermal channel.
///
/// The Fock elements of `D(α)` are `e^{−|α|²/2}` times polynomials of
/// degree < cutoff in `Re α` and `Im α`, so after folding that envelope
/// into the Gaussian weight, `(1 + 1/σ)|α|²`, the integrand is a polynomial
/// of degree ≤ 2(cutoff − 1) per axis and a rule with `cutoff` nodes is exact.
fn thermal_quadrature(rho: &DensityMatrix, sigma: f64, nodes: usize) -> DMatrix<C64> {
    let dim = rho.layout().total();
    let c = 1.0 + 1.0 / sigma;
    let scale = 1.0 / c.sqrt();
    let rule = hermite_rule(nodes);
    // ∫ e^{−|α|²/σ}/(πσ) F d²α = 1/(πσc) ∫ e^{−|u|²} e^{|α|²} [e^{−|α|²} F] d²u, α = u/√c
    let norm = 1.0 / (PI * sigma * c);
    let mut out = DMatrix::<C64>::zeros(dim, dim);
    for &(x, wx) in &rule {
        for &(y, wy) in &rule {
            let alpha = C64::new(x * scale, y * scale);
            let d = displacement_matrix(alpha, dim);
            let w = wx * wy * norm * alpha.norm_sqr().exp();
            out += (&d * rho.matrix() * d.adjoint()) * C64::new(w, 0.0);
        }
    }
    out
}

/// Thermal (random-displacement) noise with Gaussian width `sigma`.
///
/// Starts at `nodes` per axis, raised to at least the cutoff (where the rule
/// is exact) and capped at [`MAX_NODES`]; above the cap, successive rules
/// must agree within [`QUADRATURE_TOL`]. Population displaced beyond the
/// cutoff is lost, not renormalized; it shows up in the tail diagnostic.
pub fn thermal_channel(rho: &DensityMatrix, sigma: f64, nodes: usize) -> Result<DensityMatrix> {
    let dim = check_single_mode(rho)?;
    check_sigma(sigma)?;
    check_nodes(nodes)?;
    if sigma == 0.0 {
        return Ok(rho.clone());
    }
    let n = nodes.max(dim).min(MAX_NODES);
    let out = thermal_quadrature(rho, sigma, n);
    if dim > n {
        let coarse = thermal_quadrature(rho, sigma, n - NODE_STEP);
        let residual = max_abs_diff(&out, &coarse);
        if residual > QUADRATURE_TOL {
            return Err(Error::Quadrature { nodes: n, residual });
        }
    }
    debug!("thermal channel σ={sigma}: {n} nodes per axis");
    DensityMatrix::new(rho.layout().clone(), out)
}

/// `E[e^{ikφ}]` for `k = 0..dim`, φ Gaussian with variance `sigma`.
fn phase_damping(sigma: f64, nodes: usize, dim: usize) -> Vec<f64> {
    let exact: Vec<f64> = (0..dim)
        .map(|k| (-sigma * (k * k) as f64 / 2.0).exp())
        .collect();
    let mut n = nodes;
    loop {
        let rule = hermite_rule(n);
        let scale = (2.0 * sigma).sqrt();
        // the odd (sine) part vanishes by the symmetry of the rule
        let gh: Vec<f64> = (0..dim)
            .map(|k| {
                rule.iter()
                    .map(|&(x, w)| w * (k as f64 * scale * x).cos())
                    .sum::<f64>()
                    / PI.sqrt()
            })
            .collect();
        let residual = gh
            .iter()
            .zip(&exact)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if residual <= QUADRATURE_TOL {
            debug!("phase channel σ={sigma}: Gauss–Hermite with {n} nodes");
            return gh;
        }
        if n >= MAX_NODES {
            debug!("phase channel σ={sigma}: Gauss–Hermite residual {residual:.2e} at {n} nodes, using periodic rule");
            return periodic_damping(sigma, dim);
        }
        n = (n + NODE_STEP).min(MAX_NODES);
    }
}

/// Trapezoid rule on the wrapped Gaussian over one period. For a periodic
/// integrand it aliases only `k ± M`, whose weight `e^{−σ(M−k)²/2}` is
/// negligible for the chosen `M`.
fn periodic_damping(sigma: f64, dim: usize) -> Vec<f64> {
    let m = 2 * dim + 64;
    let h = 2.0 * PI / m as f64;
    let wraps = 1 + (8.0 * sigma.sqrt() / (2.0 * PI)).ceil() as i64;
    let weights: Vec<(f64, f64)> = (0..m)
        .map(|j| {
            let phi = -PI + j as f64 * h;
            let density: f64 = (-wraps..=wraps)
                .map(|l| {
                    let x = phi + 2.0 * PI * l as f64;
                    (-x * x / (2.0 * sigma)).exp()
                })
                .sum::<f64>()
                / (2.0 * PI * sigma).sqrt();
            (phi, density * h)
        })
        .collect();
    (0..dim)
        .map(|k| {
            weights
                .iter()
                .map(|&(phi, w)| w * (k as f64 * phi).cos())
                .sum()
        })
        .collect()
}

/// Phase-diffusion noise with phase variance `sigma`. Populations are kept
/// exactly; coherence `(n, m)` is multiplied by `E[e^{i(n−m)φ}]`.
pub fn phase_channel(rho: &DensityMatrix, sigma: f64, nodes: usize) -> Result<DensityMatrix> {
    let dim = check_single_mode(rho)?;
    check_sigma(sigma)?;
    check_nodes(nodes)?;
    if sigma == 0.0 {
        return Ok(rho.clone());
    }
    let f = phase_damping(sigma, nodes, dim);
    let m = rho.matrix();
    let out = DMatrix::from_fn(dim, dim, |i, j| m[(i, j)] * f[i.abs_diff(j)]);
    DensityMatrix::new(rho.layout().clone(), out)
}

/// Loss: the mode meets vacuum at a beam splitter with `cos²θ = t` and the
/// second port is traced out. Exact at any cutoff (photon number cannot grow).
pub fn bs_loss(rho: &DensityMatrix, transmissivity: f64) -> Result<DensityMatrix> {
    let dim = check_single_mode(rho)?;
    if !(0.0..=1.0).contains(&transmissivity) {
        return Err(Error::InvalidParameter(format!(
            "transmissivity {transmissivity}"
        )));
    }
    let theta = transmissivity.sqrt().acos();
    let vac = FockVector::vacuum(&ModeLayout::single(dim)?).to_density();
    let joint = rho.tensor(&vac);
    let mixed = joint.apply_local(&[0, 1], &beamsplitter(theta, dim, dim))?;
    partial_trace(&mixed, &[0])
}

/// ESV built from noisy squeezed inputs: `noise` acts on two copies of
/// `|s+⟩⟨s+|` before the conditional map composes them.
pub fn noisy_esv(spec: &EsvSpec, noise: &NoiseSpec) -> Result<DensityMatrix> {
    spec.normalization()?;
    let v = squeezed_vacuum(&SqueezeSpec::new(spec.s, spec.cutoff).with_policy(spec.policy))?;
    let input = apply_noise(&v.normalized()?.to_density(), noise, spec.policy)?;
    esv_mixed(&input, &input, spec.phi)
}
