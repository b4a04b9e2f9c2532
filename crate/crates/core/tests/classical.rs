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

//! Classical reference computations: spectrum, direct solvers, condition
//! number, Kronecker structure and the error budget.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use proptest::prelude::*;
use qfps::classical::*;

#[test]
fn eigenpairs_solve_the_stencil() {
    for big_n in [2usize, 4, 8, 16] {
        let a = laplacian(big_n).unwrap();
        let vecs: Vec<DVector<f64>> = (1..big_n)
            .map(|j| {
                let (l, u) = eigenpair(big_n, j).unwrap();
                let u = DVector::from_vec(u);
                assert!((&a * &u - &u * l).amax() < 1e-10);
                u
            })
            .collect();
        for (j, u) in vecs.iter().enumerate() {
            for (k, v) in vecs.iter().enumerate() {
                let want = if j == k { 1.0 } else { 0.0 };
                assert!((u.dot(v) - want).abs() < 1e-12);
            }
        }
    }
    assert!((eigenpair(2, 1).unwrap().0 - 8.0).abs() < 1e-12);
    assert!((eigenpair(4, 2).unwrap().0 - 32.0).abs() < 1e-12);
    assert!(eigenpair(4, 0).is_err());
    assert!(eigenpair(4, 4).is_err());
}

#[test]
fn stencil_entries() {
    let a = laplacian(4).unwrap();
    assert_eq!(a[(0, 0)], 32.0);
    assert_eq!(a[(0, 1)], -16.0);
    assert_eq!(a[(0, 2)], 0.0);
    assert_eq!(a, a.transpose());
}

#[test]
fn sine_matrix_diagonalises_the_operator() {
    for big_n in [2usize, 4, 8] {
        let s = sine_matrix(big_n).unwrap();
        let d = &s * laplacian(big_n).unwrap() * &s;
        for r in 0..big_n - 1 {
            for c in 0..big_n - 1 {
                let want = if r == c { eigenvalue(big_n, r + 1) } else { 0.0 };
                assert!((d[(r, c)] - want).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn demo_direction() {
    let b = [0.5f64.sqrt(), 0.5, 0.5];
    let v = normalized(&tridiag_solve(4, &b).unwrap());
    for (x, want) in v.iter().zip([0.553, 0.674, 0.490]) {
        assert!((x - want).abs() < 5e-4);
    }
    let a = laplacian(4).unwrap();
    let r = a * DVector::from_vec(tridiag_solve(4, &b).unwrap()) - DVector::from_row_slice(&b);
    assert!(r.amax() < 1e-10);
}

#[test]
fn eigenvector_rhs_scales() {
    let (l, u) = eigenpair(8, 3).unwrap();
    let v = tridiag_solve(8, &u).unwrap();
    for (x, y) in v.iter().zip(&u) {
        assert!((x - y / l).abs() < 1e-12);
    }
}

#[test]
fn condition_numbers() {
    assert!((condition_number(2).unwrap() - 1.0).abs() < 1e-12);
    assert!((condition_number(4).unwrap() - (3.0 + 2.0 * 2f64.sqrt())).abs() < 1e-12);
    for big_n in 2..=64usize {
        let k = condition_number(big_n).unwrap();
        let ratio = eigenpair(big_n, big_n - 1).unwrap().0 / eigenpair(big_n, 1).unwrap().0;
        assert!((k - ratio).abs() <= 1e-10 * ratio, "N = {big_n}");
        assert!(k <= (big_n * big_n) as f64 / 2.0);
    }
    let big_n = 1024.0;
    let limit = condition_number(1024).unwrap() / (big_n * big_n);
    assert!((limit - 4.0 / (PI * PI)).abs() < 1e-5);
    assert!(condition_number(1).is_err());
}

/// `exp(iAt)` by scaled Taylor series and repeated squaring.
fn expm_series(a: &DMatrix<f64>, t: f64) -> DMatrix<Complex64> {
    let squarings = 10;
    let x = a.map(|v| Complex64::new(0.0, v * t / 1024.0));
    let mut term = DMatrix::<Complex64>::identity(a.nrows(), a.ncols());
    let mut sum = term.clone();
    for k in 1..20 {
        term = &term * &x / Complex64::new(k as f64, 0.0);
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

#[test]
fn exponential_against_series() {
    let a = laplacian(4).unwrap();
    let diff = (expm_i(&a, 0.3) - expm_series(&a, 0.3)).map(|z| z.norm()).max();
    assert!(diff < 1e-9);
}

#[test]
fn kronecker_structure() {
    assert_eq!(kron_operator(4, 1).unwrap().matrix, laplacian(4).unwrap());
    let a2 = kron_operator(2, 2).unwrap().matrix;
    assert_eq!(a2.nrows(), 1);
    assert!((a2[(0, 0)] - 16.0).abs() < 1e-12);
    let a2 = kron_operator(4, 2).unwrap().matrix;
    let mut got: Vec<f64> = a2.symmetric_eigenvalues().iter().copied().collect();
    got.sort_by(f64::total_cmp);
    let mut want: Vec<f64> = (1..4).flat_map(|j| (1..4).map(move |k| eigenvalue(4, j) + eigenvalue(4, k))).collect();
    want.sort_by(f64::total_cmp);
    for (g, w) in got.iter().zip(&want) {
        assert!((g - w).abs() < 1e-9);
    }
    assert!(kron_operator(64, 3).is_err());
}

#[test]
fn exponential_factorises_over_dimensions() {
    for d in 1..=3 {
        for big_n in [2usize, 4] {
            for t in [0.3, 1.1] {
                let full = expm_i(&kron_operator(big_n, d).unwrap().matrix, t);
                let prod = kron_power(&expm_i(&laplacian(big_n).unwrap(), t), d);
                assert!((full - prod).map(|z| z.norm()).max() < 1e-8, "d={d} N={big_n} t={t}");
            }
        }
    }
}

#[test]
fn error_budget_terms() {
    let e = error_bound(0, 0);
    assert_eq!(e.eigen_term, 2f64.powi(-6));
    assert_eq!(e.omission_term, 2f64.powi(-10));
    assert_eq!(error_bound(5, 3).omission_term, 2f64.powi(-16));
    assert_eq!(error_bound(6, 2).omission_term, 2f64.powi(-14));
    assert!(error_bound(40, 20).total < 1e-12);
    let with = error_bound(3, 1).with_angle_bits(10);
    assert!((with.angle_term - PI * 2f64.powi(-9)).abs() < 1e-15);
    assert!((with.total - (with.eigen_term + with.omission_term + with.angle_term)).abs() < 1e-15);
}

/// Exact per-branch quantities behind the budget: the omitted subtrahend
/// shrinks `1/sqrt(1 + x^2)` below `1/x` by less than `2^-10` for `x >= 8`.
#[test]
fn omission_gap_at_the_smallest_eigenvalue() {
    for lambda in [8.0f64, 9.375, 32.0, 54.625] {
        let gap = 1.0 / lambda - 1.0 / (1.0 + lambda * lambda).sqrt();
        assert!(gap > 0.0 && gap < 2f64.powi(-10));
    }
    let x = 32.0f64;
    assert!((1.0 / (1.0 + x * x).sqrt() - 0.031234752377).abs() < 1e-11);
}

proptest! {
    #[test]
    fn elimination_agrees_with_eigen_expansion(n in 1u32..6, seed: u64) {
        use rand::{Rng, SeedableRng};
        let big_n = 1usize << n;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let rhs: Vec<f64> = (1..big_n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let a = tridiag_solve(big_n, &rhs).unwrap();
        let b = eigen_solve(big_n, &rhs).unwrap();
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() < 1e-9);
        }
    }
}
