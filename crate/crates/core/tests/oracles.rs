use std::f64::consts::LN_2;

use embedlab::embeddings::{
    canonical, environment_monotones, free_phase_coordinates, ideal_functionality_state, leakage_regular,
    TripartiteState,
};
use embedlab::optimize::{evaluate_objective, minimize_leakage, OptimizerConfig};
use embedlab::primitives::{
    make_equal, make_indep, make_ot, make_otp, make_rot, make_sand, ot_entropy_closed, otp_lower_bound,
    rot_leakage_closed, PrimitiveSpec,
};
use embedlab::probdist::{binary_entropy, mutual_information};
use embedlab::quantum::{RegisterLayout, StateVector, C64};

fn close(a: f64, b: f64, tol: f64) {
    assert!((a - b).abs() < tol, "{a} vs {b}");
}

#[test]
fn rot_leakage_small_r() {
    close(rot_leakage_closed(1).delta, binary_entropy(0.25) - 0.5, 1e-15);
    // r = 2: eigenvalues 5/8 once and 1/8 three times.
    let s = -(0.625f64 * 0.625f64.log2()) + 3.0 * 0.125 * 3.0;
    close(rot_leakage_closed(2).delta, s - 1.0, 1e-15);
    for r in 1..=6 {
        let numeric = leakage_regular(&canonical(&make_rot(r).unwrap().dist)).unwrap().delta;
        close(numeric, rot_leakage_closed(r).delta, 1e-9);
    }
}

#[test]
fn free_coordinate_counts() {
    let count = |p: &PrimitiveSpec| free_phase_coordinates(&p.dist).count();
    for r in 1..=3 {
        assert_eq!(count(&make_rot(r).unwrap()), 0);
    }
    assert_eq!(count(&make_ot(1).unwrap()), 1);
    assert_eq!(count(&make_ot(2).unwrap()), 9);
    assert_eq!(count(&make_sand()), 1);
    assert_eq!(count(&make_indep()), 1);
    assert_eq!(count(&make_equal()), 0);
}

#[test]
fn ot_closed_form_matches_numeric() {
    let p = make_ot(1).unwrap().dist;
    let i = mutual_information(&p);
    close(i, 1.0, 1e-12);
    for omega in [0.0, 0.7, 1.9, 3.0, 5.5] {
        let numeric = evaluate_objective(&p, &[omega]).unwrap() + i;
        close(numeric, ot_entropy_closed(omega).s_aprime, 1e-9);
    }
}

#[test]
fn ot2_minimum() {
    let r = minimize_leakage(&make_ot(2).unwrap().dist, &OptimizerConfig::default()).unwrap();
    close(r.best_delta, 0.75, 1e-4);
}

#[test]
fn optimizer_is_deterministic() {
    let p = make_sand().dist;
    let cfg = OptimizerConfig { seed: 11, ..Default::default() };
    let a = minimize_leakage(&p, &cfg).unwrap();
    let b = minimize_leakage(&p, &cfg).unwrap();
    assert_eq!(a.best_coords, b.best_coords);
    assert_eq!(a.best_restart, b.best_restart);
    assert_eq!(a.per_restart.len(), 16);
}

#[test]
fn noisy_ot_bound_values() {
    for p in [0.01f64, 0.05, 0.10] {
        let direct = (0.5 - p - (p * (1.0 - p)).sqrt()).powi(2) / (32.0 * LN_2);
        close(otp_lower_bound(p).unwrap().value, direct, 1e-15);
    }
    close(otp_lower_bound(0.01).unwrap().value, 0.006875, 1e-6);
    assert!(!otp_lower_bound(0.25).unwrap().valid);
    assert!(otp_lower_bound(0.5).is_err());
    // p = 1/4 is not trivial: canonical leakage stays positive.
    let d = leakage_regular(&canonical(&make_otp(0.25).unwrap().dist)).unwrap().delta;
    close(d, 0.232844, 1e-6);
}

#[test]
fn rot1_ideal_state_monotones() {
    let m = environment_monotones(&ideal_functionality_state(&make_rot(1).unwrap().dist)).unwrap();
    close(m.h_y_given_x, 1.0, 1e-12);
    close(m.h_x_given_y, 0.5, 1e-12);
    close(m.s_w_given_x_aprime, 1.0, 1e-9);
    close(m.s_w_given_y_bprime, 0.5, 1e-9);
    assert!(m.degenerate_schmidt);
    assert!(m.inequalities_hold(1e-9));
}

#[test]
fn three_branch_state_monotones() {
    let layout = RegisterLayout::new([("E", 2), ("A", 2), ("B", 2)]).unwrap();
    let mut amps = vec![C64::new(0.0, 0.0); 8];
    for i in [0b001, 0b110, 0b111] {
        amps[i] = C64::new((1.0f64 / 3.0).sqrt(), 0.0);
    }
    let t = TripartiteState::from_state(StateVector::new(layout, amps).unwrap()).unwrap();
    let m = environment_monotones(&t).unwrap();
    close(m.h_y_given_x, 2.0 / 3.0, 1e-12);
    close(m.h_x_given_y, 2.0 / 3.0, 1e-12);
    close(m.s_w_given_x_aprime, 0.0, 1e-9);
    close(m.s_w_given_y_bprime, 2.0 / 3.0, 1e-9);
    assert!(!m.degenerate_schmidt);
}
