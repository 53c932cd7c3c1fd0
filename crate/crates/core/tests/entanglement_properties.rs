use frw_entanglement::entanglement::{
    default_n_max, entropy_boson_closed, entropy_closed, entropy_direct, entropy_fermion_closed,
    schmidt_spectrum,
};
use frw_entanglement::{entropy_for_mode, ExpansionParams, ModeParams, Spin, Statistics};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn binary_entropy(p: f64) -> f64 {
    if p == 0.0 || p == 1.0 {
        return 0.0;
    }
    -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
}

/// Geometric-distribution entropy summed term by term in long form.
fn boson_entropy_series(x: f64) -> f64 {
    let mut s = 0.0;
    let mut pn = 1.0 - x;
    let mut n = 0u32;
    while pn > 1e-300 && n < 200_000 {
        s -= pn * pn.log2();
        pn *= x;
        n += 1;
    }
    s
}

#[test]
fn fermion_entropy_is_binary_entropy() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..100 {
        let x: f64 = rng.gen_range(0.0..5.0);
        let s = entropy_fermion_closed(x).unwrap().entropy_bits;
        assert!((s - binary_entropy(x / (1.0 + x))).abs() < 1e-13, "x = {x}");
    }
    assert!((entropy_fermion_closed(1.0).unwrap().entropy_bits - 1.0).abs() < 1e-15);
}

#[test]
fn boson_entropy_matches_series() {
    for x in [1e-6, 0.01, 0.3, 0.5, 0.9, 0.99] {
        let s = entropy_boson_closed(x).unwrap().entropy_bits;
        assert!((s - boson_entropy_series(x)).abs() < 1e-11, "x = {x}");
    }
    assert_eq!(entropy_boson_closed(0.0).unwrap().entropy_bits, 0.0);
}

#[test]
fn direct_sum_tail_bound() {
    for x in [0.01, 0.1, 0.5, 0.9, 0.99] {
        let spectrum = schmidt_spectrum(x, Statistics::Boson, default_n_max(x)).unwrap();
        assert!(spectrum.truncation_tail < 1e-14, "x = {x}: {}", spectrum.truncation_tail);
    }
}

#[test]
fn invalid_ratios_rejected() {
    assert!(entropy_boson_closed(1.0).is_err());
    assert!(entropy_boson_closed(-0.1).is_err());
    assert!(entropy_fermion_closed(f64::NAN).is_err());
}

proptest! {
    #[test]
    fn closed_equals_direct_boson(x in 0.0f64..0.995) {
        let closed = entropy_closed(x, Statistics::Boson).unwrap().entropy_bits;
        let direct = entropy_direct(&schmidt_spectrum(x, Statistics::Boson, default_n_max(x)).unwrap()).entropy_bits;
        prop_assert!((closed - direct).abs() < 1e-11, "{} vs {}", closed, direct);
    }

    #[test]
    fn closed_equals_direct_fermion(x in 0.0f64..50.0) {
        let closed = entropy_closed(x, Statistics::Fermion).unwrap().entropy_bits;
        let direct = entropy_direct(&schmidt_spectrum(x, Statistics::Fermion, 2).unwrap()).entropy_bits;
        prop_assert!((closed - direct).abs() < 1e-12);
    }

    #[test]
    fn boson_entropy_increasing_in_x(a in 1e-8f64..0.99, b in 1e-8f64..0.99) {
        prop_assume!((a - b).abs() > 1e-9);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assert!(entropy_boson_closed(lo).unwrap().entropy_bits < entropy_boson_closed(hi).unwrap().entropy_bits);
    }

    #[test]
    fn fermion_entropy_symmetric_under_inversion(x in 1e-6f64..1e6) {
        let a = entropy_fermion_closed(x).unwrap().entropy_bits;
        let b = entropy_fermion_closed(1.0 / x).unwrap().entropy_bits;
        prop_assert!((a - b).abs() < 1e-12);
        prop_assert!((0.0..=1.0 + 1e-15).contains(&a));
    }

    #[test]
    fn boson_spin_invariance(m in 0.0f64..5.0, k in 0.0f64..5.0, e in 0.0f64..8.0, r in 0.0f64..10.0) {
        let p = ExpansionParams::new(e, r).unwrap();
        let s0 = entropy_for_mode(&p, &ModeParams::new(m, k, Spin::Zero).unwrap(), None).unwrap();
        let s1 = entropy_for_mode(&p, &ModeParams::new(m, k, Spin::One).unwrap(), None).unwrap();
        prop_assert_eq!(s0.entropy_bits.to_bits(), s1.entropy_bits.to_bits());
        prop_assert!(s0.entropy_bits >= 0.0 && s0.x >= 0.0);
    }

    #[test]
    fn boson_entropy_decreasing_in_k(m in 0.05f64..5.0, k in 0.0f64..5.0, dk in 0.01f64..2.0, e in 0.1f64..8.0, r in 0.2f64..10.0) {
        let p = ExpansionParams::new(e, r).unwrap();
        let s = |k: f64| entropy_for_mode(&p, &ModeParams::new(m, k, Spin::One).unwrap(), None).unwrap().entropy_bits;
        let (near, far) = (s(k), s(k + dk));
        prop_assert!(far < near || (near == 0.0 && far == 0.0), "{} then {}", near, far);
    }

    #[test]
    fn boson_entropy_increasing_in_epsilon_and_rho(m in 0.2f64..3.0, k in 0.0f64..1.0, e in 0.1f64..6.0, r in 0.2f64..6.0, step in 1.1f64..2.0) {
        let s = |e: f64, r: f64| {
            let p = ExpansionParams::new(e, r).unwrap();
            entropy_for_mode(&p, &ModeParams::new(m, k, Spin::One).unwrap(), None).unwrap().entropy_bits
        };
        // Deep in the adiabatic regime the ε dependence is an e^{-2πω/ρ}-sized
        // correction to an already tiny x, below f64 resolution.
        prop_assert!(s(e * step, r) >= s(e, r) * (1.0 - 1e-11));
        prop_assert!(s(e, r * step) > s(e, r));
    }
}

#[test]
fn fermion_spin_invariance() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..5 {
        let p = ExpansionParams::new(rng.gen_range(0.1..8.0), rng.gen_range(0.2..10.0)).unwrap();
        let (m, k) = (rng.gen_range(0.05..5.0), rng.gen_range(0.0..5.0));
        let a = entropy_for_mode(&p, &ModeParams::new(m, k, Spin::Half).unwrap(), None).unwrap();
        let b = entropy_for_mode(&p, &ModeParams::new(m, k, Spin::ThreeHalves).unwrap(), None).unwrap();
        assert_eq!(a.entropy_bits.to_bits(), b.entropy_bits.to_bits());
    }
}
