//! Structural checks shared by the property suite and the acceptance run.
//! Each returns `Err` with a description of the first violation.

#![allow(dead_code)]

use fockent::channels::{bs_loss, phase_channel, thermal_channel};
use fockent::fock::gates::beamsplitter;
use fockent::fock::{partial_trace, partial_transpose};
use fockent::separability::{minor_determinant, multi_indices, MinorSelector, ZERO_BAND};
use fockent::{DensityMatrix, FockVector, ModeLayout, C64};

pub type Check = Result<(), String>;

pub fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn max_diff(a: &DensityMatrix, b: &DensityMatrix) -> f64 {
    (a.matrix() - b.matrix())
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// Normalized state from raw (re, im) pairs.
pub fn state_from(layout: &ModeLayout, raw: &[(f64, f64)]) -> Option<FockVector> {
    let amps: Vec<C64> = raw
        .iter()
        .take(layout.total())
        .map(|&(r, i)| C64::new(r, i))
        .collect();
    let v = FockVector::from_vec(layout.clone(), amps).ok()?;
    (v.norm() > 1e-3).then(|| v.normalized().unwrap())
}

/// `w ρ₁ + (1 − w) ρ₂`.
pub fn mixture(a: &FockVector, b: &FockVector, w: f64) -> DensityMatrix {
    let m = a.to_density().matrix() * C64::new(w, 0.0)
        + b.to_density().matrix() * C64::new(1.0 - w, 0.0);
    DensityMatrix::new(a.layout().clone(), m).unwrap()
}

pub fn pt_involution(rho: &DensityMatrix, modes: &[usize]) -> Check {
    let pt = partial_transpose(rho, modes).map_err(|e| e.to_string())?;
    let back = partial_transpose(&pt, modes).map_err(|e| e.to_string())?;
    let d = max_diff(&back, rho);
    ensure(d == 0.0, || format!("PT∘PT differs by {d:e}"))?;
    ensure((pt.trace() - rho.trace()).norm() < 1e-12, || {
        "PT changed the trace".into()
    })?;
    ensure(pt.hermiticity_deviation() < 1e-12, || {
        format!("PT not Hermitian: {:e}", pt.hermiticity_deviation())
    })
}

/// Hermiticity and trace of the channels and of the partial trace; the
/// channel inputs are single-mode.
pub fn channels_preserve(rho: &DensityMatrix, sigma: f64, t: f64) -> Check {
    let outs = [
        ("thermal", thermal_channel(rho, sigma, 24)),
        ("phase", phase_channel(rho, sigma, 32)),
        ("loss", bs_loss(rho, t)),
    ];
    let t0 = rho.trace().re;
    for (name, out) in outs {
        let out = out.map_err(|e| format!("{name}: {e}"))?;
        let dt = (out.trace() - t0).norm();
        ensure(dt < 1e-6, || format!("{name} changed the trace by {dt:e}"))?;
        let h = out.hermiticity_deviation();
        ensure(h < 1e-10, || format!("{name} output not Hermitian: {h:e}"))?;
    }
    Ok(())
}

pub fn partial_trace_preserves(rho: &DensityMatrix) -> Check {
    for keep in [[0usize], [1]] {
        let r = partial_trace(rho, &keep).map_err(|e| e.to_string())?;
        let dt = (r.trace() - rho.trace()).norm();
        ensure(dt < 1e-12, || {
            format!("partial trace keeping {keep:?} changed the trace by {dt:e}")
        })?;
        ensure(r.hermiticity_deviation() < 1e-12, || {
            "reduced state not Hermitian".into()
        })?;
    }
    Ok(())
}

fn total_photon_distribution(v: &FockVector) -> Vec<f64> {
    let l = v.layout();
    let max: usize = l.dims().iter().map(|d| d - 1).sum();
    let mut p = vec![0.0; max + 1];
    for (i, a) in v.amps().iter().enumerate() {
        p[l.levels(i).iter().sum::<usize>()] += a.norm_sqr();
    }
    p
}

/// Input must only populate `n_a + n_b < cutoff`, where the truncated
/// beam splitter is exact.
pub fn bs_conserves_photons(input: &FockVector, theta: f64) -> Check {
    let dims = input.layout().dims();
    let op = beamsplitter(theta, dims[0], dims[1]);
    let out = input.apply_local(&[0, 1], &op).map_err(|e| e.to_string())?;
    let (p, q) = (
        total_photon_distribution(input),
        total_photon_distribution(&out),
    );
    let d = p
        .iter()
        .zip(&q)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    ensure(d < 1e-12, || {
        format!("total photon distribution moved by {d:e}")
    })?;
    ensure((out.norm() - input.norm()).abs() < 1e-12, || {
        "beam splitter changed the norm".into()
    })
}

/// Ordering axioms on all multi-indices with `|i| ≤ max_weight`.
pub fn index_order_axioms(max_weight: usize) -> Check {
    let idx = multi_indices(max_weight);
    for a in &idx {
        for b in &idx {
            let ab = a.cmp(b);
            ensure(ab == b.cmp(a).reverse(), || {
                format!("antisymmetry fails at {a:?} {b:?}")
            })?;
            ensure((ab == std::cmp::Ordering::Equal) == (a == b), || {
                format!("{a:?} ~ {b:?}")
            })?;
            if a.weight() < b.weight() {
                ensure(a < b, || {
                    format!("{a:?} has lower weight but sorts after {b:?}")
                })?;
            }
            for c in &idx {
                if a <= b && b <= c {
                    ensure(a <= c, || {
                        format!("transitivity fails at {a:?} {b:?} {c:?}")
                    })?;
                }
            }
        }
    }
    ensure(idx.windows(2).all(|w| w[0] < w[1]), || {
        "enumeration not strictly increasing".into()
    })
}

pub fn sample_selectors() -> Vec<MinorSelector> {
    let mut s = vec![MinorSelector::simon(), MinorSelector::duan()];
    for rows in [
        vec![1, 2],
        vec![1, 2, 3],
        vec![1, 4, 5],
        vec![2, 3, 4, 5],
        vec![1, 6, 7, 8],
    ] {
        s.push(MinorSelector::new(rows).unwrap());
    }
    s
}

/// Every sampled principal minor of the PT moment matrix is non-negative.
pub fn separable_minors_nonnegative<S>(state: &S) -> Check
where
    S: fockent::fock::QuantumState + fockent::fock::Moments,
{
    for sel in sample_selectors() {
        let d = minor_determinant(state, &sel).map_err(|e| e.to_string())?;
        ensure(d >= ZERO_BAND, || {
            format!("minor {:?} = {d:e} on a separable state", sel.rows())
        })?;
    }
    let d = fockent::separability::esv_criterion_det(state).map_err(|e| e.to_string())?;
    ensure(d >= ZERO_BAND, || {
        format!("ESV minor = {d:e} on a separable state")
    })
}
