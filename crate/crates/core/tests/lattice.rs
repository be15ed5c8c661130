use infoflow::lattice::*;
use num_complex::Complex64;
use proptest::prelude::*;

fn random_state(n: usize, re: &[f64], im: &[f64]) -> FieldState {
    let c = |i: usize| Complex64::new(re[i], im[i]);
    let plus = (0..n).map(c).collect();
    let minus = (0..n).map(|i| c(n + i)).collect();
    FieldState::from_components(plus, minus).unwrap()
}

fn state_strategy() -> impl Strategy<Value = FieldState> {
    (2usize..=32).prop_flat_map(|half| {
        let n = 2 * half;
        (
            prop::collection::vec(-1.0f64..1.0, 2 * n),
            prop::collection::vec(-1.0f64..1.0, 2 * n),
        )
            .prop_map(move |(re, im)| random_state(n, &re, &im))
    })
}

proptest! {
    #[test]
    fn unitary_step_conserves_norm(state in state_strategy(), mu in 0.0f64..=1.0) {
        let params = LatticeParams::unit(state.n_sites()).unwrap();
        let mass = MassCoupling::new(mu).unwrap();
        let before = state.total_norm();
        let after = step_unitary(&state, &params, &mass).unwrap().total_norm();
        prop_assert!((after - before).abs() <= 1e-12 * before.max(1.0));
    }

    #[test]
    fn massless_step_inverts(state in state_strategy()) {
        let params = LatticeParams::unit(state.n_sites()).unwrap();
        let there = step_massless(&state, &params).unwrap();
        prop_assert_eq!(step_massless_inverse(&there, &params).unwrap(), state);
    }

    #[test]
    fn steps_commute_with_translation(state in state_strategy(), mu in 0.0f64..=1.0, shift in -70i64..70) {
        let params = LatticeParams::unit(state.n_sites()).unwrap();
        let mass = MassCoupling::new(mu).unwrap();
        let a = step_unitary(&translate(&state, shift), &params, &mass).unwrap();
        let b = translate(&step_unitary(&state, &params, &mass).unwrap(), shift);
        prop_assert_eq!(a, b);
    }
}

#[test]
fn zero_mass_reduces_bitwise_on_basis_states() {
    let n = 16;
    let params = LatticeParams::unit(n).unwrap();
    let zero = MassCoupling::new(0.0).unwrap();
    for site in 0..n {
        for right in [true, false] {
            let s = FieldState::delta(n, site, right);
            assert_eq!(
                step_unitary(&s, &params, &zero).unwrap(),
                step_massless(&s, &params).unwrap()
            );
        }
    }
}

#[test]
fn long_unitary_run_keeps_norm() {
    let params = LatticeParams::unit(256).unwrap();
    let mass = MassCoupling::new(0.37).unwrap();
    let spec = WavepacketSpec::new(64.0, 6.0, 0.4, [Complex64::new(0.8, 0.0), Complex64::new(0.0, 0.6)]);
    let mut s = make_wavepacket(&spec, &params).unwrap();
    for _ in 0..10_000 {
        s = step_unitary(&s, &params, &mass).unwrap();
    }
    assert!((s.total_norm() - 1.0).abs() <= 1e-8);
}

#[test]
fn unitary_cone_is_exact() {
    let n = 64;
    let params = LatticeParams::unit(n).unwrap();
    let mass = MassCoupling::new(0.5).unwrap();
    let mut s = FieldState::delta(n, 32, true);
    for t in 1..=20usize {
        s = step_unitary(&s, &params, &mass).unwrap();
        for (x, p) in s.density().iter().enumerate() {
            if (x as i64 - 32).unsigned_abs() as usize > t {
                assert_eq!(*p, 0.0, "step {t} site {x}");
            }
        }
        assert!(s.density()[32 + t] > 0.0);
    }
}

#[test]
fn finite_difference_drift_and_reach() {
    let params = LatticeParams::unit(256).unwrap();
    let mass = MassCoupling::new(0.1).unwrap();
    let spec = WavepacketSpec::right_mover(128.0, 8.0, 0.0);
    let mut s = make_wavepacket(&spec, &params).unwrap();
    for _ in 0..64 {
        s = step_finite_difference(&s, &params, &mass, 16).unwrap();
    }
    assert!((s.total_norm() - 1.0).abs() <= 1e-6);

    let mut d = FieldState::delta(256, 128, true);
    let substeps = 2;
    for t in 1..=4usize {
        d = step_finite_difference(&d, &params, &mass, substeps).unwrap();
        for (x, p) in d.density().iter().enumerate() {
            if (x as i64 - 128).unsigned_abs() as usize > t * fd_reach(substeps) {
                assert_eq!(*p, 0.0);
            }
        }
    }
}

/// FD and automaton agree to second order: refining the lattice at fixed
/// physical time shrinks their gap fourfold.
#[test]
fn finite_difference_gap_shrinks_quadratically() {
    let gaps: Vec<f64> = (0..4)
        .map(|l| {
            let scale = 1usize << l;
            let params = LatticeParams::unit(256 * scale).unwrap();
            let mass = MassCoupling::new(0.1 / scale as f64).unwrap();
            let spec = WavepacketSpec::right_mover(128.0 * scale as f64, 8.0 * scale as f64, 0.0);
            let mut fd = make_wavepacket(&spec, &params).unwrap();
            let mut u = fd.clone();
            for _ in 0..scale {
                fd = step_finite_difference(&fd, &params, &mass, 16).unwrap();
                u = step_unitary(&u, &params, &mass).unwrap();
            }
            fd.distance(&u)
        })
        .collect();
    for w in gaps.windows(2) {
        let r = w[0] / w[1];
        assert!((3.5..=4.5).contains(&r), "{gaps:?}");
    }
}

#[test]
fn zitterbewegung_frequency() {
    let params = LatticeParams::unit(2048).unwrap();
    let mu: f64 = 0.3;
    let mass = MassCoupling::new(mu).unwrap();
    let w = std::f64::consts::FRAC_1_SQRT_2;
    let spec = WavepacketSpec::new(1024.0, 16.0, 0.0, [Complex64::new(w, 0.0), Complex64::new(0.0, w)]);
    let trace = zitterbewegung_trace(&spec, &params, &mass, 2000).unwrap();
    let expected = 2.0 * (1.0 - mu * mu).sqrt().acos();
    let got = trace.measured_frequency(0.05).unwrap();
    assert!((got - expected).abs() <= 0.02 * expected, "{got} vs {expected}");

    let still = zitterbewegung_trace(&spec, &params, &MassCoupling::massless(), 200).unwrap();
    let worst = still.residual().unwrap().into_iter().fold(0.0f64, |m, r| m.max(r.abs()));
    assert!(worst <= 1e-12);
}
