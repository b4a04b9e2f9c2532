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

//! Classical reference: the discretised 1-D Laplacian, its eigenpairs,
//! direct solvers, condition number, Kronecker sums for `d` dimensions and
//! the error model of the quantum pipeline.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

fn check_grid(intervals: usize) -> Result<()> {
    if intervals < 2 {
        return Err(Error::Domain(format!("need at least 2 grid intervals, got {intervals}")));
    }
    Ok(())
}

/// `lambda_j = 4 N^2 sin^2(j pi / 2N)`.
pub fn eigenvalue(intervals: usize, j: usize) -> f64 {
    let n = intervals as f64;
    let s = (j as f64 * PI / (2.0 * n)).sin();
    4.0 * n * n * s * s
}

/// Eigenpair `j` (1-based) of the `(N-1) x (N-1)` operator; the vector
/// `u_j(k) = sqrt(2/N) sin(j k pi / N)` is indexed by `k = 1..N-1`.
pub fn eigenpair(intervals: usize, j: usize) -> Result<(f64, Vec<f64>)> {
    check_grid(intervals)?;
    if j == 0 || j >= intervals {
        return Err(Error::Domain(format!("eigen index {j} not in 1..{intervals}")));
    }
    let n = intervals as f64;
    let u = (1..intervals)
        .map(|k| (2.0 / n).sqrt() * (j as f64 * k as f64 * PI / n).sin())
        .collect();
    Ok((eigenvalue(intervals, j), u))
}

/// `h^-2 tridiag(-1, 2, -1)` with `h = 1/N`.
pub fn laplacian(intervals: usize) -> Result<DMatrix<f64>> {
    check_grid(intervals)?;
    let dim = intervals - 1;
    let s = (intervals * intervals) as f64;
    Ok(DMatrix::from_fn(dim, dim, |i, j| match i.abs_diff(j) {
        0 => 2.0 * s,
        1 => -s,
        _ => 0.0,
    }))
}

/// Sine transform `S_{jk} = sqrt(2/N) sin(pi j k / N)`, `j, k = 1..N-1`.
pub fn sine_matrix(intervals: usize) -> Result<DMatrix<f64>> {
    check_grid(intervals)?;
    let n = intervals as f64;
    Ok(DMatrix::from_fn(intervals - 1, intervals - 1, |j, k| {
        (2.0 / n).sqrt() * (PI * ((j + 1) * (k + 1)) as f64 / n).sin()
    }))
}

/// Thomas elimination for `A v = rhs` (`rhs` has `N - 1` entries).
pub fn tridiag_solve(intervals: usize, rhs: &[f64]) -> Result<Vec<f64>> {
    check_grid(intervals)?;
    let dim = intervals - 1;
    if rhs.len() != dim {
        return Err(Error::Domain(format!("rhs has {} entries, expected {dim}", rhs.len())));
    }
    let s = (intervals * intervals) as f64;
    let (a, b, c) = (-s, 2.0 * s, -s);
    let mut cp = vec![0.0; dim];
    let mut dp = vec![0.0; dim];
    cp[0] = c / b;
    dp[0] = rhs[0] / b;
    for i in 1..dim {
        let den = b - a * cp[i - 1];
        cp[i] = c / den;
        dp[i] = (rhs[i] - a * dp[i - 1]) / den;
    }
    let mut v = vec![0.0; dim];
    v[dim - 1] = dp[dim - 1];
    for i in (0..dim - 1).rev() {
        v[i] = dp[i] - cp[i] * v[i + 1];
    }
    Ok(v)
}

/// `v = sum_j (beta_j / lambda_j) u_j` with `beta_j = <u_j, rhs>`.
pub fn eigen_solve(intervals: usize, rhs: &[f64]) -> Result<Vec<f64>> {
    check_grid(intervals)?;
    if rhs.len() != intervals - 1 {
        return Err(Error::Domain(format!("rhs has {} entries, expected {}", rhs.len(), intervals - 1)));
    }
    let mut v = vec![0.0; intervals - 1];
    for j in 1..intervals {
        let (lam, u) = eigenpair(intervals, j)?;
        let beta: f64 = u.iter().zip(rhs).map(|(a, b)| a * b).sum();
        for (vk, uk) in v.iter_mut().zip(&u) {
            *vk += beta / lam * uk;
        }
    }
    Ok(v)
}

/// `kappa = cot^2(pi / 2N)`.
pub fn condition_number(intervals: usize) -> Result<f64> {
    check_grid(intervals)?;
    let t = (PI / (2.0 * intervals as f64)).tan();
    Ok(1.0 / (t * t))
}

/// The `d`-dimensional operator as a Kronecker sum of 1-D operators.
#[derive(Clone, Debug)]
pub struct DiscretizedOperator {
    pub intervals: usize,
    pub d: usize,
    pub matrix: DMatrix<f64>,
}

pub const MAX_KRON_DIM: usize = 4096;

/// `A_d = sum_k I x .. x A x .. x I` (A in slot `k`).
pub fn kron_operator(intervals: usize, d: usize) -> Result<DiscretizedOperator> {
    let a = laplacian(intervals)?;
    let dim1 = intervals - 1;
    let total = (0..d).try_fold(1usize, |acc, _| acc.checked_mul(dim1));
    match total {
        Some(t) if d >= 1 && t <= MAX_KRON_DIM => {}
        _ => {
            return Err(Error::Resource(format!(
                "({dim1})^{d} exceeds the dense limit of {MAX_KRON_DIM}"
            )))
        }
    }
    let eye = DMatrix::<f64>::identity(dim1, dim1);
    let mut sum: Option<DMatrix<f64>> = None;
    for slot in 0..d {
        let mut term = if slot == 0 { a.clone() } else { eye.clone() };
        for k in 1..d {
            term = term.kronecker(if k == slot { &a } else { &eye });
        }
        sum = Some(match sum {
            None => term,
            Some(s) => s + term,
        });
    }
    Ok(DiscretizedOperator { intervals, d, matrix: sum.expect("d >= 1") })
}

/// `exp(i A t)` for symmetric `A`, through its eigendecomposition.
pub fn expm_i(a: &DMatrix<f64>, t: f64) -> DMatrix<Complex64> {
    let eig = SymmetricEigen::new(a.clone());
    let q = eig.eigenvectors.map(|x| Complex64::new(x, 0.0));
    let d = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| Complex64::from_polar(1.0, l * t)));
    &q * d * q.transpose()
}

/// `m x m x .. x m` (`d` factors).
pub fn kron_power(m: &DMatrix<Complex64>, d: usize) -> DMatrix<Complex64> {
    let mut out = m.clone();
    for _ in 1..d {
        out = out.kronecker(m);
    }
    out
}

/// Error budget for one eigencomponent's coefficient `1/lambda~_j`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ErrorModel {
    pub f: u32,
    pub shift: u32,
    /// `|1/lambda^ - 1/lambda| <= 2^(-f-6)` from the eigenvalue format.
    pub eigen_term: f64,
    /// `|1/lambda~ - 1/lambda^| <= 2^(-2i-10)` from dropping the `-1`.
    pub omission_term: f64,
    /// `pi 2^(i-M)` from truncating the angle to `M` bits (zero when the
    /// angle width is not given).
    pub angle_term: f64,
    pub total: f64,
}

impl ErrorModel {
    /// Adds the angle truncation term for an `angle_bits`-bit angle register.
    pub fn with_angle_bits(mut self, angle_bits: u32) -> Self {
        self.angle_term = PI * (self.shift as f64 - angle_bits as f64).exp2();
        self.total = self.eigen_term + self.omission_term + self.angle_term;
        self
    }

    /// Bound on any amplitude of the normalised solution, given the norm of
    /// the exact unnormalised solution `sum beta_j u_j / lambda_j` for a unit
    /// right-hand side.
    pub fn amplitude_bound(&self, solution_norm: f64) -> f64 {
        2.0 * self.total / solution_norm
    }
}

pub fn error_bound(f: u32, shift: u32) -> ErrorModel {
    let eigen_term = (-(f as f64) - 6.0).exp2();
    let omission_term = (-2.0 * shift as f64 - 10.0).exp2();
    ErrorModel {
        f,
        shift,
        eigen_term,
        omission_term,
        angle_term: 0.0,
        total: eigen_term + omission_term,
    }
}

/// Scales `v` to unit Euclidean norm.
pub fn normalized(v: &[f64]) -> Vec<f64> {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter().map(|x| x / n).collect()
}
