use std::f64::consts::TAU;

use polarcert::bounds::theorem1_rhs;
use polarcert::search::{random_instance, tightness_search};
use polarcert::verify::{
    verify_bound, verify_lemma2, verify_polar_conjugation, verify_proof_chain, verify_rotation_identities,
    verify_theorem1, BoundRequest,
};
use polarcert::{
    max_modulus, max_modulus_of_sum, Complex64, FactoredPolynomial, Orientation, Polynomial, RadiusProfile,
    SearchConfig, SearchTarget, Verdict,
};
use proptest::prelude::*;
use rustfft::FftPlanner;

fn complex() -> impl Strategy<Value = Complex64> {
    (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(re, im)| Complex64::new(re, im))
}

fn poly(max_degree: usize) -> impl Strategy<Value = Polynomial> {
    (1..=max_degree).prop_flat_map(|n| (prop::collection::vec(complex(), n), complex(), 0.5f64..2.0)).prop_map(
        |(mut coeffs, dir, lead)| {
            let arg = if dir.norm() > 0.0 { dir.arg() } else { 0.0 };
            coeffs.push(Complex64::from_polar(lead, arg));
            Polynomial::new(coeffs).unwrap()
        },
    )
}

// Brute-force max |p| on a uniform grid of `m` points via one FFT.
fn grid_max(p: &Polynomial, m: usize) -> f64 {
    let mut buf = vec![Complex64::new(0.0, 0.0); m];
    buf[..p.coeffs().len()].copy_from_slice(p.coeffs());
    FftPlanner::new().plan_fft_forward(m).process(&mut buf);
    buf.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn lemma2_holds(p in poly(10)) {
        let r = verify_lemma2(&p, 64 * p.degree().max(16), 1e-9).unwrap();
        prop_assert_eq!(r.verdict, Verdict::CertifiedHolds);
        let n = p.degree() as f64;
        let sum = r.certified.unwrap();
        let max_p = max_modulus(&p, 1e-9).unwrap();
        prop_assert!(sum.lo <= n * max_p.hi);
    }

    #[test]
    fn rotation_identities_are_tight(p in poly(8)) {
        let r = verify_rotation_identities(&p, 4096).unwrap();
        prop_assert!(r.worst_margin >= -1e-12, "{}", r.worst_margin);
    }

    #[test]
    fn polar_conjugation_residual(p in poly(8), r in 0.2f64..5.0, theta in 0.0..TAU) {
        prop_assume!(p.constant_term().norm() > 1e-3);
        let rep = verify_polar_conjugation(&p, Complex64::from_polar(r, theta), 1024).unwrap();
        prop_assert!(rep.worst_margin >= -1e-11, "{}", rep.worst_margin);
    }

    #[test]
    fn enclosure_contains_grid_maximum(p in poly(10)) {
        let m = max_modulus(&p, 1e-9).unwrap();
        let v = grid_max(&p, 1 << 16);
        prop_assert!(v <= m.hi * (1.0 + 1e-12));
        prop_assert!(m.lo <= m.hi);
        prop_assert!(m.relative_width() <= 1e-9);
    }

    #[test]
    fn sum_enclosure_contains_grid_maximum(p in poly(6), q in poly(6)) {
        let m = max_modulus_of_sum(&p, &q, 1e-9).unwrap();
        let grid = (0..8192).map(|j| {
            let z = Complex64::from_polar(1.0, TAU * j as f64 / 8192.0);
            p.evaluate(z).norm() + q.evaluate(z).norm()
        }).fold(0.0, f64::max);
        prop_assert!(grid <= m.hi * (1.0 + 1e-12));
    }

    #[test]
    fn tightening_never_flips(seed in 0u64..1000, degree in 1usize..7) {
        let cfg = SearchConfig::new(degree, Orientation::ZerosOutside, seed);
        let (f, profile, alpha) = random_instance(&cfg, 0).unwrap();
        let coarse = verify_theorem1(&f, &profile, alpha, 1e-3).unwrap();
        let fine = verify_theorem1(&f, &profile, alpha, 1e-10).unwrap();
        prop_assert_ne!(fine.verdict, Verdict::CertifiedViolated);
        if coarse.verdict != Verdict::Inconclusive {
            prop_assert_eq!(coarse.verdict, fine.verdict);
        }
    }

    #[test]
    fn tightest_profile_never_loosens(seed in 0u64..1000, shrink in 0.0f64..1.0) {
        let cfg = SearchConfig::new(4, Orientation::ZerosOutside, seed);
        let (f, tight, alpha) = random_instance(&cfg, 0).unwrap();
        let loose: Vec<f64> = tight.radii().iter().map(|k| 1.0 + (k - 1.0) * shrink).collect();
        let loose = RadiusProfile::new(loose, Orientation::ZerosOutside).unwrap();
        loose.validate_against(&f).unwrap();
        let p = f.expand();
        let a = theorem1_rhs(&p, &tight, alpha, 1e-9).unwrap();
        let b = theorem1_rhs(&p, &loose, alpha, 1e-9).unwrap();
        prop_assert!(a.factor <= b.factor);
    }

    #[test]
    fn proof_chain_holds(seed in 0u64..10_000, degree in 1usize..9) {
        let cfg = SearchConfig::new(degree, Orientation::ZerosOutside, seed);
        let (f, profile, alpha) = random_instance(&cfg, 1).unwrap();
        let r = verify_proof_chain(&f, &profile, alpha, 64 * degree).unwrap();
        prop_assert!(r.worst_margin >= -1e-9, "{}", r.worst_margin);
    }
}

#[test]
fn equality_families_never_violate() {
    let one = Complex64::new(1.0, 0.0);
    for n in 1..=6 {
        for k in [1.0, 1.25, 3.0] {
            let f = FactoredPolynomial::new(one, vec![Complex64::new(-k, 0.0); n]).unwrap();
            let p = f.expand();
            for req in [
                BoundRequest::Malik { k },
                BoundRequest::AzizPolar { k, alpha: Complex64::new(3.0, 0.0) },
                BoundRequest::Bernstein,
            ] {
                let r = verify_bound(&p, &req, 1e-9).unwrap();
                assert_ne!(r.verdict, Verdict::CertifiedViolated, "{req:?} {}", r.instance_digest);
            }
            // (z + k)^n attains the polar bound only when k = 1.
            let r = verify_bound(&p, &BoundRequest::AzizPolar { k, alpha: Complex64::new(3.0, 0.0) }, 1e-9).unwrap();
            if k == 1.0 {
                assert!((r.ratio_hi - 1.0).abs() <= 1e-6);
            }
        }
        let b = Complex64::from_polar(1.0, 0.7 * n as f64);
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[0] = b;
        coeffs[n] = Complex64::from_polar(1.0, 2.1);
        let p = Polynomial::new(coeffs).unwrap();
        let r = verify_bound(&p, &BoundRequest::ErdosLax, 1e-9).unwrap();
        assert_eq!(r.verdict, Verdict::CertifiedHolds);
        assert!((r.ratio_hi - 1.0).abs() <= 1e-6);
    }
}

#[test]
fn search_is_bit_reproducible() {
    let mut cfg = SearchConfig::new(3, Orientation::ZerosOutside, 21);
    cfg.iterations = 80;
    let a = tightness_search(&cfg, SearchTarget::Theorem1).unwrap();
    let b = tightness_search(&cfg, SearchTarget::Theorem1).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.trace_csv(), b.trace_csv());
    assert!(a.trace.windows(2).all(|w| w[1].best_ratio >= w[0].best_ratio));
}

#[test]
fn theorem1_search_respects_dominance() {
    let mut cfg = SearchConfig::new(5, Orientation::ZerosOutside, 8);
    cfg.iterations = 150;
    let result = tightness_search(&cfg, SearchTarget::Theorem1).unwrap();
    assert!(result.best_ratio <= 1.0 + 1e-6);
    for e in &result.trace {
        if let (Some(t1), Some(aziz)) = (e.refined_ratio, e.classical_ratio) {
            assert!(t1 >= aziz);
        }
    }
}

#[test]
fn theorem2_search_with_fixed_radii() {
    let mut cfg = SearchConfig::new(4, Orientation::ZerosInside, 2);
    cfg.radius_range = [0.4, 0.4];
    cfg.iterations = 150;
    let result = tightness_search(&cfg, SearchTarget::Theorem2).unwrap();
    assert!(result.best_ratio <= 1.0);
    for e in &result.trace {
        if let (Some(t2), Some(cor)) = (e.refined_ratio, e.classical_ratio) {
            assert!(t2 >= cor);
        }
    }
}
