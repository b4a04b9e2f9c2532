// Copyright 2026 The qfps Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! End-to-end solver runs against the classical solution and the
//! per-branch oracle values.

use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use qfps::classical::{eigenpair, error_bound};
use qfps::fixedpoint::{eigenvalue_estimate, plouffe_arccot_raw};
use qfps::hhl::*;
use qfps::sim::SparseState;

fn eigen_rhs(n: usize, j: usize) -> Vec<f64> {
    let (_, u) = eigenpair(1 << n, j).unwrap();
    let mut v = vec![0.0];
    v.extend(u);
    v
}

/// `sin(pi omega)` for the angle digits the oracle produces on `E = raw`.
fn branch_sine(p: &PoissonProblem, raw: u128) -> f64 {
    let out = plouffe_arccot_raw(raw as i128, p.f as i32 - p.shift as i32, p.angle_format()).unwrap();
    (PI * out.omega.to_f64()).sin()
}

fn lambda_raw(p: &PoissonProblem, j: usize) -> u128 {
    eigenvalue_estimate(j as u64, p.n as u32, p.f as u32, None).unwrap().bits() as u128
}

#[test]
fn demo_solution_direction() {
    let p = PoissonProblem::demo(6, 0).unwrap();
    let s = solve(&p).unwrap();
    let exact = classical_solution(&p).unwrap();
    assert!(max_error(&s.amplitudes, &exact) < 0.01);
    for (a, want) in s.amplitudes.iter().zip([0.551, 0.675, 0.491]) {
        assert!((a.re - want).abs() < 0.01 && a.im.abs() < 1e-9);
    }
    assert!((0.010..=0.013).contains(&s.success_probability));
    assert!((s.repetition_estimate * s.success_probability - 1.0).abs() < 1e-12);
}

#[test]
fn demo_eigen_register_weights() {
    let p = PoissonProblem::demo(4, 0).unwrap();
    let s = solve(&p).unwrap();
    let betas = p.eigen_coefficients().unwrap();
    assert_eq!(s.eigen_register.len(), 3);
    for (j, &(value, prob)) in (1..4).zip(&s.eigen_register) {
        assert_eq!(value, lambda_raw(&p, j));
        assert!((prob - betas[j - 1].norm_sqr()).abs() < 1e-10);
    }
}

#[test]
fn eigenvector_inputs_isolate_one_branch() {
    for (n, j) in [(2usize, 1usize), (2, 2), (3, 5)] {
        let p = PoissonProblem::from_real(n, 4, 0, &eigen_rhs(n, j)).unwrap();
        let state = phase_estimation(&p).unwrap();
        let e = state.layout().register("E").unwrap();
        assert!(state.register_is(e, lambda_raw(&p, j), 1e-10));

        let s = solve(&p).unwrap();
        let u: Vec<Complex64> = eigen_rhs(n, j)[1..].iter().map(|&x| Complex64::new(x, 0.0)).collect();
        assert!(max_error(&s.amplitudes, &u) < 1e-9);
        let sine = branch_sine(&p, lambda_raw(&p, j));
        assert!((s.success_probability - sine * sine).abs() < 1e-10);
    }
}

#[test]
fn second_eigenvector_probability() {
    let p = PoissonProblem::from_real(2, 6, 0, &eigen_rhs(2, 2)).unwrap();
    let s = solve(&p).unwrap();
    let ideal = 1.0 / (1.0 + 32.0f64 * 32.0);
    // Angle digits are truncated to M bits: sin moves by at most pi 2^-M.
    let slack = PI * (-(p.angle_bits() as f64)).exp2();
    assert!(s.success_probability.sqrt() <= ideal.sqrt() + 1e-12);
    assert!(ideal.sqrt() - s.success_probability.sqrt() <= slack);
}

#[test]
fn rotation_writes_branch_amplitudes() {
    let p = PoissonProblem::from_real(2, 3, 1, &eigen_rhs(2, 1)).unwrap();
    let state = controlled_rotation(&p, phase_estimation(&p).unwrap()).unwrap();
    let r = state.layout().register("R").unwrap();
    let (_, prob) = state.postselect(r.offset, true).unwrap();
    let sine = branch_sine(&p, lambda_raw(&p, 1));
    assert!((prob - sine * sine).abs() < 1e-12);
    let wrong = SparseState::zero(qfps::sim::QubitLayout::new(&[("B", 2)]).unwrap());
    assert!(controlled_rotation(&p, wrong).is_err());
}

#[test]
fn single_interior_point() {
    let p = PoissonProblem::from_real(1, 4, 0, &[0.0, 1.0]).unwrap();
    let s = solve(&p).unwrap();
    assert_eq!(s.amplitudes.len(), 1);
    assert!((s.amplitudes[0] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    assert_eq!(s.eigen_register.len(), 1);
}

#[test]
fn lookup_and_arithmetic_agree() {
    for (f, i) in [(3usize, 0usize), (6, 0), (5, 2)] {
        let p = PoissonProblem::demo(f, i).unwrap();
        let a = solve(&p).unwrap();
        let l = run_demo_simplified(&p).unwrap();
        for (x, y) in a.amplitudes.iter().zip(&l.amplitudes) {
            assert!((x - y).norm() < 1e-9);
        }
        assert!((a.success_probability - l.success_probability).abs() < 1e-12);
    }
    let l = run_demo_simplified(&PoissonProblem::demo(6, 0).unwrap()).unwrap();
    for (a, want) in l.amplitudes.iter().zip([0.551, 0.675, 0.491]) {
        assert!((a.re - want).abs() < 0.01);
    }
}

#[test]
fn complex_right_hand_side() {
    let rhs = vec![
        Complex64::new(0.0, 0.0),
        Complex64::new(0.3, 0.4),
        Complex64::new(0.0, -0.5),
        Complex64::new(0.6, 0.1),
    ];
    let p = PoissonProblem::new(2, 6, 0, rhs).unwrap();
    let s = solve(&p).unwrap();
    let exact = classical_solution(&p).unwrap();
    let norm = exact.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    let bound = error_bound(6, 0).with_angle_bits(p.angle_bits() as u32).amplitude_bound(norm);
    assert!(max_error(&s.amplitudes, &exact) <= bound);
}

#[test]
fn work_registers_are_cleared() {
    let p = PoissonProblem::demo(3, 1).unwrap();
    let sc = build_solver(&p, Loading::Arithmetic).unwrap();
    let g = sc.circuit.gates();
    let mut s = SparseState::with_register(sc.circuit.layout().clone(), "B", &p.rhs, &[]).unwrap();
    s.apply_gates(&g[sc.eigen.clone()]).unwrap();
    s.apply_gates(&g[sc.angle.clone()]).unwrap();
    s.apply_gates(&g[sc.rotation.clone()]).unwrap();
    s.apply_inverse_gates(&g[sc.angle.clone()]).unwrap();
    s.apply_inverse_gates(&g[sc.eigen.clone()]).unwrap();
    for name in ["E", "A"] {
        assert!(s.register_is(sc.register(name).unwrap(), 0, 1e-10));
    }
    let keep = [sc.register("B").unwrap(), sc.register("R").unwrap()];
    assert!(s.weight_outside(&keep) < 1e-10);
}

#[test]
fn invalid_problems_are_rejected() {
    assert!(PoissonProblem::from_real(2, 3, 0, &[0.5, 0.5, 0.5, 0.5]).is_err());
    assert!(PoissonProblem::from_real(2, 3, 0, &[0.0; 4]).is_err());
    assert!(PoissonProblem::from_real(2, 3, 0, &[0.0, 1.0]).is_err());
    assert!(PoissonProblem::from_real(0, 3, 0, &[0.0]).is_err());
}

fn random_problem(n: usize, f: usize, seed: u64) -> PoissonProblem {
    PoissonProblem::from_real(n, f, 0, &qfps::cli::random_rhs(n, seed)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn random_right_hand_sides_within_budget(seed: u64) {
        for n in 1..=3usize {
            let p = random_problem(n, 4, seed);
            let s = solve(&p).unwrap();
            let exact = classical_solution(&p).unwrap();
            let norm = exact.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            let bound = error_bound(4, 0).with_angle_bits(p.angle_bits() as u32).amplitude_bound(norm);
            let err = max_error(&s.amplitudes, &exact);
            prop_assert!(err <= bound, "n={} err {} bound {}", n, err, bound);
            prop_assert!((s.success_probability - s.predicted_probability).abs() < 1e-6);
            let amp_norm: f64 = s.amplitudes.iter().map(|a| a.norm_sqr()).sum();
            prop_assert!((amp_norm - 1.0).abs() < 1e-9);
            prop_assert!(s.success_probability > 0.0 && s.success_probability <= 1.0);
        }
    }
}

/// The worst error over a fixed sample of right-hand sides shrinks as the
/// eigenvalue register gains fraction bits.
#[test]
fn worst_case_error_falls_with_precision() {
    for n in [2usize, 3] {
        let worst: Vec<f64> = [3usize, 5, 7]
            .iter()
            .map(|&f| {
                (0..20u64)
                    .map(|seed| {
                        let p = random_problem(n, f, seed);
                        max_error(&solve(&p).unwrap().amplitudes, &classical_solution(&p).unwrap())
                    })
                    .fold(0.0, f64::max)
            })
            .collect();
        assert!(worst.windows(2).all(|w| w[1] < w[0]), "n={n}: {worst:?}");
    }
}
