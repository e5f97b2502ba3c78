mod common;

use common::*;
use gbf_core::analysis::{norming_operator, sampled_sigma_min};
use gbf_core::experiment::random_order;
use gbf_core::spacefreq::frame_operator;
use gbf_core::{
    condition_report, error_bound, frame_bounds, interpolate, norming_check, quadrature_apply, quadrature_error_bound,
    quadrature_weights, windowed_fourier, DVector, FrequencySet, GraphKind, SamplingSet, Signal, Spectrum,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn norming_constants_are_ordered(seed in any::<u64>(), n in 3usize..14) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = Spectrum::of_graph(&random_graph(&mut rng, n)).unwrap();
        let n = s.len();
        let m = rng.random_range(1..=n);
        let count = rng.random_range(1..=n);
        let w = random_sampling(&mut rng, n, count);
        let r = norming_check(&s, &w, m).unwrap();
        prop_assert_eq!(r.is_norming, r.constant_exact.is_finite());
        if r.is_norming {
            prop_assert!(r.constant_exact <= r.constant_bound + 1e-8);
            // rho = 1 - sigma_min^2 for the sampled block.
            let sigma = sampled_sigma_min(&s, &w, m).unwrap();
            prop_assert!((r.rho - (1.0 - sigma * sigma)).abs() < 1e-9);
        }
    }

    #[test]
    fn enlarging_w_never_increases_rho(seed in any::<u64>(), n in 4usize..14) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = Spectrum::of_graph(&random_graph(&mut rng, n)).unwrap();
        let n = s.len();
        let m = rng.random_range(1..=n);
        let order = random_order(n, rng.random());
        let mut prev = f64::INFINITY;
        for count in 1..=n {
            let w = SamplingSet::new(order[..count].to_vec(), n).unwrap();
            let rho = norming_check(&s, &w, m).unwrap().rho;
            prop_assert!(rho <= prev + 1e-10);
            prev = rho;
        }
    }

    #[test]
    fn interpolation_error_within_bound(seed in any::<u64>(), n in 4usize..16) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = Spectrum::of_graph(&random_graph(&mut rng, n)).unwrap();
        let n = s.len();
        let gbf = random_pd_gbf(&mut rng, &s);
        let m = rng.random_range(1..=n.min(4));
        let order = random_order(n, rng.random());
        let w = (m..=n)
            .map(|c| SamplingSet::new(order[..c].to_vec(), n).unwrap())
            .find(|w| norming_check(&s, w, m).unwrap().is_norming)
            .unwrap();
        let report = norming_check(&s, &w, m).unwrap();
        let x = random_signal(&mut rng, n);
        let it = interpolate(&s, &gbf, &w, &w.restrict(&x).unwrap()).unwrap();
        let err = (&x.0 - &it.signal.0).amax();
        let b = error_bound(&s, &gbf, &report, &x).unwrap();
        prop_assert!(err <= b.value + 1e-8);
        prop_assert!(b.value <= b.with_constant_bound + 1e-12);

        let rule = quadrature_weights(&s, &gbf, &w).unwrap();
        let q = quadrature_apply(&rule, &x).unwrap();
        prop_assert!((q - it.signal.0.mean()).abs() < 1e-9 * (1.0 + x.0.amax()));
        prop_assert!((q - x.0.mean()).abs() <= quadrature_error_bound(&s, &gbf, &report, &x).unwrap() + 1e-8);
    }

    #[test]
    fn condition_chain(seed in any::<u64>(), n in 3usize..14) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = Spectrum::of_graph(&random_graph(&mut rng, n)).unwrap();
        let gbf = random_pd_gbf(&mut rng, &s);
        let count = rng.random_range(1..=s.len());
        let w = random_sampling(&mut rng, s.len(), count);
        let r = condition_report(&s, &gbf, &w, rng.random()).unwrap();
        prop_assert!(r.empirical <= r.operator_bound + 1e-8);
        prop_assert!(r.operator_bound <= r.spectral_ratio * (1.0 + 1e-10) + 1e-8);
    }

    #[test]
    fn quadrature_exact_on_translate_span(seed in any::<u64>(), n in 3usize..14) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = Spectrum::of_graph(&random_graph(&mut rng, n)).unwrap();
        let gbf = random_pd_gbf(&mut rng, &s);
        let count = rng.random_range(1..=s.len());
        let w = random_sampling(&mut rng, s.len(), count);
        let rule = quadrature_weights(&s, &gbf, &w).unwrap();
        let k = gbf_core::kernel_matrix(&s, &gbf).unwrap().matrix;
        let c = random_vector(&mut rng, w.len());
        let mut x = DVector::zeros(s.len());
        for (ci, &j) in c.iter().zip(w.indices()) {
            x += k.column(j) * *ci;
        }
        let q = quadrature_apply(&rule, &Signal(x.clone())).unwrap();
        prop_assert!((q - x.mean()).abs() <= 1e-9 * x.amax().max(1e-300));
    }

    #[test]
    fn frame_energy_matches_operator(seed in any::<u64>(), n in 3usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = Spectrum::of_graph(&gbf_core::generate_graph(&GraphKind::Cycle { n }).unwrap().graph).unwrap();
        let gbf = random_pd_gbf(&mut rng, &s);
        let mut freqs = vec![0];
        for k in 1..n {
            if rng.random_bool(0.5) {
                freqs.push(k);
            }
        }
        let fs = FrequencySet::new(freqs, n).unwrap();
        let x = random_signal(&mut rng, n);
        let energy = windowed_fourier(&s, &gbf, &fs, &x).unwrap().norm_squared();
        let op = frame_operator(&s, &gbf, &fs).unwrap();
        let quad = x.0.dot(&(&op * &x.0));
        prop_assert!((energy - quad).abs() < 1e-9 * (1.0 + energy));
        let b = frame_bounds(&s, &gbf, &fs).unwrap();
        let xx = x.0.norm_squared();
        prop_assert!(b.a_theory * xx <= energy + 1e-8);
        prop_assert!(energy <= b.b_valid * xx + 1e-8);
    }
}

#[test]
fn rho_criterion_matches_operator_norm_route() {
    let s = spectrum_of(GraphKind::Grid { rows: 2, cols: 4 });
    let w = SamplingSet::new(vec![0, 5, 3], 8).unwrap();
    for m in 1..=3 {
        let op = norming_operator(&s, &w, m).unwrap();
        let rho = op.singular_values().max();
        assert!((norming_check(&s, &w, m).unwrap().rho - rho).abs() < 1e-12);
    }
}
