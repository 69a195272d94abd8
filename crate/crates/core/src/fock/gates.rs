use nalgebra::{ComplexField, DMatrix};
use num_complex::Complex64 as C64;

use super::local::LocalOp;
use super::state::{QuantumState, TailPolicy};
use crate::error::{Error, Result};

/// Truncated annihilation operator `a` on `dim` Fock levels.
pub fn annihilation(dim: usize) -> DMatrix<C64> {
    let mut a = DMatrix::zeros(dim, dim);
    for n in 1..dim {
        a[(n - 1, n)] = C64::new((n as f64).sqrt(), 0.0);
    }
    a
}

pub fn creation(dim: usize) -> DMatrix<C64> {
    annihilation(dim).adjoint()
}

fn norm1<T: ComplexField<RealField = f64>>(m: &DMatrix<T>) -> f64 {
    m.column_iter()
        .map(|c| c.iter().map(|z| z.clone().modulus()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Matrix exponential by scaling and squaring with a Taylor kernel. Generic
/// so that real generators (squeezing, beam splitters) stay in real
/// arithmetic.
pub fn expm<T: ComplexField<RealField = f64>>(m: &DMatrix<T>) -> DMatrix<T> {
    assert!(m.is_square(), "expm needs a square matrix");
    let n = m.nrows();
    let norm = norm1(m);
    let squarings = if norm > 0.25 {
        (norm / 0.25).log2().ceil() as i32
    } else {
        0
    };
    let scaled = m * T::from_real(2f64.powi(-squarings));
    let mut result = DMatrix::<T>::identity(n, n);
    let mut term = DMatrix::<T>::identity(n, n);
    for k in 1..=40 {
        term = &term * &scaled * T::from_real(1.0 / k as f64);
        result += &term;
        if norm1(&term) < 1e-18 * norm1(&result) {
            break;
        }
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

/// `⟨m|D(α)|n⟩` for `m, n < dim`, exact (not the exponential of a truncated
/// generator). Columns follow `D|n+1⟩ = (a† − α*) D|n⟩ / √(n+1)`, starting
/// from the coherent state.
pub fn displacement_matrix(alpha: C64, dim: usize) -> DMatrix<C64> {
    let mut d = DMatrix::zeros(dim, dim);
    let mut amp = C64::new((-alpha.norm_sqr() / 2.0).exp(), 0.0);
    for m in 0..dim {
        d[(m, 0)] = amp;
        amp = amp * alpha / ((m + 1) as f64).sqrt();
    }
    for n in 0..dim.saturating_sub(1) {
        let scale = 1.0 / ((n + 1) as f64).sqrt();
        for m in 0..dim {
            let raised = if m > 0 {
                d[(m - 1, n)] * (m as f64).sqrt()
            } else {
                C64::new(0.0, 0.0)
            };
            d[(m, n + 1)] = (raised - alpha.conj() * d[(m, n)]) * scale;
        }
    }
    d
}

/// `R(θ) = exp(iθ a†a)`.
pub fn phase_diagonal(theta: f64, dim: usize) -> Vec<C64> {
    (0..dim)
        .map(|n| C64::from_polar(1.0, theta * n as f64))
        .collect()
}

/// Squeeze operator restricted to `dim` levels. The generator
/// `(s/2)(a² − a†²)` is exponentiated at twice the cutoff and the corner
/// kept, so mass pushed past the cutoff shows up as norm loss.
pub fn squeeze_matrix(s: f64, dim: usize) -> DMatrix<C64> {
    let work = (2 * dim).max(dim + 16);
    let a = annihilation(work).map(|z| z.re);
    let ad = a.transpose();
    let generator = (&a * &a - &ad * &ad) * (s / 2.0);
    expm(&generator)
        .view((0, 0), (dim, dim))
        .map(|x| C64::new(x, 0.0))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SingleModeGate {
    /// `exp[(s/2)(a² − a†²)]`; maps vacuum to the squeezed vacuum with
    /// Fock coefficients ∝ (−tanh s / 2)ⁿ.
    Squeeze(f64),
    Displace(C64),
    /// `exp(iθ a†a)`.
    Phase(f64),
}

impl SingleModeGate {
    pub fn matrix(&self, dim: usize) -> Result<DMatrix<C64>> {
        match *self {
            SingleModeGate::Squeeze(s) if s.is_finite() => Ok(squeeze_matrix(s, dim)),
            SingleModeGate::Displace(a) if a.re.is_finite() && a.im.is_finite() => {
                Ok(displacement_matrix(a, dim))
            }
            SingleModeGate::Phase(t) if t.is_finite() => {
                Ok(DMatrix::from_diagonal(&phase_diagonal(t, dim).into()))
            }
            g => Err(Error::InvalidParameter(format!("non-finite gate {g:?}"))),
        }
    }

    pub fn local_op(&self, dim: usize) -> Result<LocalOp> {
        Ok(match *self {
            SingleModeGate::Phase(t) if t.is_finite() => {
                LocalOp::diagonal(vec![dim], &phase_diagonal(t, dim))
            }
            _ => LocalOp::from_dense(vec![dim], &self.matrix(dim)?),
        })
    }
}

/// Applies a single-mode gate, then runs the tail-mass guard.
pub fn apply_single_mode<S: QuantumState>(
    state: &S,
    mode: usize,
    gate: SingleModeGate,
    policy: TailPolicy,
) -> Result<S> {
    state.layout().check_mode(mode)?;
    let op = gate.local_op(state.layout().dim(mode))?;
    let out = state.apply_local(&[mode], &op)?;
    out.check_tail(policy)?;
    Ok(out)
}

/// Beam splitter acting as `a† → cos θ a† + sin θ b†`,
/// `b† → cos θ b† − sin θ a†` on creation operators, i.e.
/// `U = exp[θ(a b† − a† b)]`. Built block by block in total photon number,
/// so every retained matrix element is exact.
pub fn beamsplitter(theta: f64, dim_a: usize, dim_b: usize) -> LocalOp {
    let mut entries = Vec::new();
    let max_total = dim_a + dim_b - 2;
    for total in 0..=max_total {
        // block basis |k, total − k⟩, k = 0..=total
        let size = total + 1;
        let mut g = DMatrix::<f64>::zeros(size, size);
        for k in 0..size {
            let nb = (total - k) as f64;
            if k > 0 {
                // a b† |k, N−k⟩ = √k √(N−k+1) |k−1, N−k+1⟩
                g[(k - 1, k)] += (k as f64).sqrt() * (nb + 1.0).sqrt();
            }
            if k < total {
                // a† b |k, N−k⟩ = √(k+1) √(N−k) |k+1, N−k−1⟩
                g[(k + 1, k)] -= ((k + 1) as f64).sqrt() * nb.sqrt();
            }
        }
        let u = expm(&(g * theta));
        let inside = |k: usize| k < dim_a && total - k < dim_b;
        for col in (0..size).filter(|&k| inside(k)) {
            for row in (0..size).filter(|&k| inside(k)) {
                let v = C64::new(u[(row, col)], 0.0);
                if v.norm() > 1e-300 {
                    let r = row * dim_b + (total - row);
                    let c = col * dim_b + (total - col);
                    entries.push((r, c, v));
                }
            }
        }
    }
    LocalOp::from_entries(vec![dim_a, dim_b], entries)
}

/// Balanced beam splitter `a → (a + b)/√2`, `b → (b − a)/√2`.
pub fn balanced_beamsplitter(dim_a: usize, dim_b: usize) -> LocalOp {
    beamsplitter(std::f64::consts::FRAC_PI_4, dim_a, dim_b)
}

/// Applies the balanced beam splitter to `(mode_a, mode_b)`.
pub fn apply_beamsplitter<S: QuantumState>(
    state: &S,
    mode_a: usize,
    mode_b: usize,
    policy: TailPolicy,
) -> Result<S> {
    let layout = state.layout();
    layout.check_distinct(&[mode_a, mode_b])?;
    let op = balanced_beamsplitter(layout.dim(mode_a), layout.dim(mode_b));
    let out = state.apply_local(&[mode_a, mode_b], &op)?;
    out.check_tail(policy)?;
    Ok(out)
}
