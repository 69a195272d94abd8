//! Structural properties on random small states.

mod common;

use common::*;
use fockent::fock::Tensor;
use fockent::states::{squeezed_vacuum, SqueezeSpec};
use fockent::{FockVector, ModeLayout};
use proptest::prelude::*;

fn amps(n: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), n)
}

fn two_mode(cutoff: usize) -> ModeLayout {
    ModeLayout::uniform(2, cutoff).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn partial_transpose_is_an_involution(a in amps(25), b in amps(25), w in 0.0..1.0f64) {
        let l = two_mode(5);
        if let (Some(x), Some(y)) = (state_from(&l, &a), state_from(&l, &b)) {
            let rho = mixture(&x, &y, w);
            prop_assert!(pt_involution(&rho, &[1]).is_ok(), "{:?}", pt_involution(&rho, &[1]));
            prop_assert!(pt_involution(&rho, &[0]).is_ok());
            prop_assert!(partial_trace_preserves(&rho).is_ok(), "{:?}", partial_trace_preserves(&rho));
        }
    }

    #[test]
    fn channels_keep_trace_and_hermiticity(a in amps(3), sigma in 0.0..0.5f64, t in 0.0..=1.0f64) {
        // low-photon input in a roomy space, so the thermal tail stays inside
        let mut raw = a;
        raw.resize(24, (0.0, 0.0));
        if let Some(v) = state_from(&ModeLayout::single(24).unwrap(), &raw) {
            let r = channels_preserve(&v.to_density(), sigma, t);
            prop_assert!(r.is_ok(), "{:?}", r);
        }
    }

    #[test]
    fn beam_splitter_conserves_total_photons(a in amps(36), theta in -3.2..3.2f64) {
        let l = two_mode(6);
        if let Some(v) = state_from(&l, &a) {
            let v = v.filter(|lv| lv[0] + lv[1] < 6);
            if v.norm() > 1e-3 {
                let r = bs_conserves_photons(&v.normalized().unwrap(), theta);
                prop_assert!(r.is_ok(), "{:?}", r);
            }
        }
    }

    #[test]
    fn product_states_pass_every_sampled_minor(a in amps(6), b in amps(6), s in -0.8..0.8f64) {
        let single = ModeLayout::single(6).unwrap();
        if let (Some(x), Some(y)) = (state_from(&single, &a), state_from(&single, &b)) {
            let p = x.tensor(&y);
            let r = separable_minors_nonnegative(&p);
            prop_assert!(r.is_ok(), "{:?}", r);
            let sq = squeezed_vacuum(&SqueezeSpec::new(s, 20)).unwrap().normalized().unwrap();
            let q = sq.tensor(&y);
            let r = separable_minors_nonnegative(&q);
            prop_assert!(r.is_ok(), "{:?}", r);
        }
    }

    #[test]
    fn classical_mixtures_pass_every_sampled_minor(a in amps(5), b in amps(5), c in amps(5), d in amps(5), w in 0.0..1.0f64) {
        let single = ModeLayout::single(5).unwrap();
        let parts: Vec<Option<FockVector>> = [a, b, c, d].iter().map(|r| state_from(&single, r)).collect();
        if let [Some(x1), Some(y1), Some(x2), Some(y2)] = &parts[..] {
            let rho = mixture(&x1.tensor(y1), &x2.tensor(y2), w);
            let r = separable_minors_nonnegative(&rho);
            prop_assert!(r.is_ok(), "{:?}", r);
        }
    }
}

#[test]
fn multi_index_order_is_total() {
    index_order_axioms(3).unwrap();
}
