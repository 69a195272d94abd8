//! One grid point of each command: a thin call into the library.

use std::f64::consts::PI;

use clap::ValueEnum;
use fockent::channels::{noisy_esv, NoiseSpec};
use fockent::dynamics::entangling_power;
use fockent::fock::{fidelity, TAIL_THRESHOLD};
use fockent::measures::{eof_product_sum, log_negativity, log_negativity_pure};
use fockent::protocols::{
    entanglement_swap, generate_scheme_a, generate_scheme_b, teleport, KerrSpec, Outcome,
    QubitAmplitudes,
};
use fockent::separability::{duan_det, esv_criterion_det, simon_det};
use fockent::states::{displaced_overlap, esv_product_form, esv_pure, squeezing_cutoff, EsvSpec};
use fockent::{TailPolicy, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum)]
pub enum Command {
    /// EoF of |Ψ(φ)⟩ over (s, φ)
    EofSurface,
    /// LN of the ESV built from thermally noisy inputs
    LnThermal,
    /// LN of the ESV built from phase-diffused inputs
    LnPhase,
    /// Two-qubit entanglement after the JC probe; t < 1 uses lossy inputs
    EntPower,
    /// Best probe time on [0, tau-max] and the entanglement reached there
    EntPowerOpt,
    /// Simon, Duan and ESV moment determinants
    Criteria,
    /// Entanglement swapping
    Swap,
    /// Teleportation of cos θ|s+⟩ + sin θ|s−⟩
    Teleport,
    /// Heralded ESV generation
    Generate,
    /// Overlap of displaced squeezed states
    Overlap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Scheme {
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Herald {
    Plus,
    Minus,
}

/// Command options that are not sweep axes.
#[derive(Clone, Debug, PartialEq)]
pub struct Options {
    pub cutoff: Option<usize>,
    pub policy: TailPolicy,
    pub scheme: Scheme,
    pub outcome: Herald,
    pub gamma: f64,
    pub tau_max: f64,
    pub tau_steps: usize,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            cutoff: None,
            policy: TailPolicy::Warn,
            scheme: Scheme::A,
            outcome: Herald::Plus,
            gamma: PI,
            tau_max: 10.0,
            tau_steps: 101,
        }
    }
}

impl Command {
    /// Sweep axes in row-major order (first varies slowest) with defaults.
    pub fn params(self) -> &'static [(&'static str, f64)] {
        match self {
            Command::EofSurface | Command::Criteria => &[("s", 1.0), ("phi", 0.0)],
            Command::LnThermal | Command::LnPhase => &[("s", 1.0), ("phi", 0.0), ("sigma", 1.0)],
            Command::EntPower => &[("s", 1.1), ("phi", 0.0), ("t", 1.0), ("tau", 8.0)],
            Command::EntPowerOpt => &[("s", 1.1), ("phi", 0.0), ("t", 1.0)],
            Command::Swap => &[("s", 1.0)],
            Command::Teleport | Command::Generate => &[("s", 1.0), ("theta", PI / 4.0)],
            Command::Overlap => &[("alpha", 0.0), ("beta", 2.0), ("r", 0.5)],
        }
    }

    pub fn columns(self) -> &'static [&'static str] {
        match self {
            Command::EofSurface => &["eof"],
            Command::LnThermal | Command::LnPhase => &["ln"],
            Command::EntPower => &["power"],
            Command::EntPowerOpt => &["tau_opt", "power_max"],
            Command::Criteria => &["simon", "duan", "esv_criterion"],
            Command::Swap | Command::Teleport => &["probability", "fidelity"],
            Command::Generate => &["probability", "ln", "fidelity_esv"],
            Command::Overlap => &["overlap"],
        }
    }

    fn default_cutoff(self, s: f64) -> usize {
        match self {
            // product form: cheap at any cutoff, so follow the squeezing
            Command::EofSurface => squeezing_cutoff(s, TAIL_THRESHOLD).max(8),
            Command::LnThermal | Command::LnPhase => 30,
            Command::EntPower | Command::EntPowerOpt => 40,
            Command::Criteria | Command::Generate => 30,
            Command::Swap | Command::Teleport => 20,
            // closed form, no Fock space
            Command::Overlap => 0,
        }
    }

    /// Diagnostics at one grid point; `p` follows [`Command::params`].
    pub fn evaluate(self, p: &[f64], opts: &Options) -> fockent::Result<Vec<f64>> {
        let policy = opts.policy;
        let cutoff = opts.cutoff.unwrap_or_else(|| self.default_cutoff(p[0]));
        let esv = |s: f64, phi: f64| EsvSpec::new(s, phi, cutoff).with_policy(policy);
        let qubit = |theta: f64| QubitAmplitudes::real(theta.cos(), theta.sin());
        let out = match self {
            Command::EofSurface => vec![eof_product_sum(&esv_product_form(&esv(p[0], p[1]))?)?],
            Command::LnThermal => {
                let rho = noisy_esv(&esv(p[0], p[1]), &NoiseSpec::thermal(p[2]))?;
                vec![log_negativity(&rho, &[1])?]
            }
            Command::LnPhase => {
                let rho = noisy_esv(&esv(p[0], p[1]), &NoiseSpec::phase(p[2]))?;
                vec![log_negativity(&rho, &[1])?]
            }
            Command::EntPower => vec![self.power(esv(p[0], p[1]), p[2], &[p[3]])?[0]],
            Command::EntPowerOpt => {
                let n = opts.tau_steps.max(1);
                let taus: Vec<f64> = (0..n)
                    .map(|k| {
                        if n == 1 {
                            0.0
                        } else {
                            opts.tau_max * k as f64 / (n - 1) as f64
                        }
                    })
                    .collect();
                let values = self.power(esv(p[0], p[1]), p[2], &taus)?;
                // first maximum wins, so ties resolve deterministically
                let best = values
                    .iter()
                    .enumerate()
                    .fold(0, |b, (k, &v)| if v > values[b] { k } else { b });
                vec![taus[best], values[best]]
            }
            Command::Criteria => {
                let psi = esv_pure(&esv(p[0], p[1]))?;
                vec![simon_det(&psi)?, duan_det(&psi)?, esv_criterion_det(&psi)?]
            }
            Command::Swap => {
                let r = entanglement_swap(p[0], cutoff, policy)?;
                vec![r.probability, r.fidelity]
            }
            Command::Teleport => {
                let r = teleport(&qubit(p[1])?, p[0], cutoff, policy)?;
                vec![r.probability, r.fidelity]
            }
            Command::Generate => {
                let (outcome, phi) = match opts.outcome {
                    Herald::Plus => (Outcome::Plus, 0.0),
                    Herald::Minus => (Outcome::Minus, PI),
                };
                let anc = qubit(p[1])?;
                let h = match opts.scheme {
                    Scheme::A => generate_scheme_a(p[0], &anc, outcome, cutoff, policy)?,
                    Scheme::B => generate_scheme_b(
                        p[0],
                        &anc,
                        outcome,
                        cutoff,
                        KerrSpec { gamma: opts.gamma },
                        policy,
                    )?,
                };
                let target = esv_pure(&esv(p[0], phi))?;
                vec![
                    h.probability,
                    log_negativity_pure(&h.state, &[1])?,
                    fidelity(&h.state, &target)?,
                ]
            }
            Command::Overlap => vec![displaced_overlap(
                C64::new(p[0], 0.0),
                C64::new(p[1], 0.0),
                p[2],
            )],
        };
        Ok(out)
    }

    /// Probe entanglement at each `tau`; transmissivity `t = 1` keeps the
    /// input pure.
    fn power(self, spec: EsvSpec, t: f64, taus: &[f64]) -> fockent::Result<Vec<f64>> {
        if t == 1.0 {
            let psi = esv_pure(&spec)?;
            taus.iter()
                .map(|&tau| entangling_power(&psi, tau))
                .collect()
        } else {
            let rho = noisy_esv(&spec, &NoiseSpec::bs_loss(t))?;
            taus.iter()
                .map(|&tau| entangling_power(&rho, tau))
                .collect()
        }
    }
}
