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

//! End-to-end solver for the one-dimensional Poisson equation.
//!
//! The pipeline acts on four named registers: `B` (the `n`-qubit grid
//! index), `E` (the `m = 2n + 2 + f` bit eigenvalue register), `A` (the
//! `M = m + shift` digit rotation angle) and `R` (the rotation ancilla).
//! Work qubits come from the builder pool.
//!
//! Phase estimation is applied in fused form: the sine transform and the
//! eigenvalue calculator surround the whole block of controlled phases, so
//! the unitary `S exp(i 2 pi Lambda / 2^m) S` is never synthesised power by
//! power. Since `E` reads `lambda^ 2^f` exactly, `U^(2^l)` is diagonal in the
//! sine basis with integer phases.

use std::f64::consts::PI;
use std::ops::Range;

use num_complex::Complex64;
use serde::Serialize;

use crate::classical::{eigenpair, tridiag_solve};
use crate::error::{Error, Result};
use crate::fixedpoint::{eigenvalue_estimate, plouffe_arccot_raw, ArccotFormat};
use crate::func::{angle_into, evc_into};
use crate::sim::{Circuit, CircuitBuilder, Control, Register, SparseState};
use crate::spectral::{kickback_into, qft_into, sine_into, KickbackMode};

/// Probability below which the rotation ancilla is considered never set.
pub const MIN_SUCCESS: f64 = 1e-14;

/// Largest tolerated weight on dirty work registers after uncomputation.
pub const HYGIENE_TOLERANCE: f64 = 1e-10;

/// A right-hand side on `N - 1` interior grid points, with solver formats.
#[derive(Clone, Debug, PartialEq)]
pub struct PoissonProblem {
    pub n: usize,
    /// Fraction bits of the eigenvalue register.
    pub f: usize,
    /// Eigenvalue left shift applied before the angle computation.
    pub shift: usize,
    /// Normalised amplitudes indexed by grid point; entry 0 is zero.
    pub rhs: Vec<Complex64>,
}

impl PoissonProblem {
    /// Validates and normalises `rhs` (length `2^n`, boundary entry zero).
    pub fn new(n: usize, f: usize, shift: usize, rhs: Vec<Complex64>) -> Result<Self> {
        if n == 0 || n > 8 {
            return Err(Error::Domain(format!("grid width {n} not in 1..=8")));
        }
        if f > 24 || shift > 8 {
            return Err(Error::Domain(format!("format f = {f}, shift = {shift} out of range")));
        }
        if rhs.len() != 1 << n {
            return Err(Error::Width(format!("rhs has {} entries, expected {}", rhs.len(), 1 << n)));
        }
        if rhs[0].norm() > 1e-12 {
            return Err(Error::Domain("rhs must vanish at the boundary index 0".into()));
        }
        if rhs.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::Domain("rhs has non-finite entries".into()));
        }
        let norm = rhs.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-12 {
            return Err(Error::Domain("rhs is zero".into()));
        }
        let mut rhs: Vec<Complex64> = rhs.into_iter().map(|a| a / norm).collect();
        rhs[0] = Complex64::new(0.0, 0.0);
        Ok(Self { n, f, shift, rhs })
    }

    pub fn from_real(n: usize, f: usize, shift: usize, rhs: &[f64]) -> Result<Self> {
        Self::new(n, f, shift, rhs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Four-point example: `(|01> + (|10> + |11>)/sqrt 2) / sqrt 2`.
    pub fn demo(f: usize, shift: usize) -> Result<Self> {
        Self::from_real(2, f, shift, &[0.0, 0.5f64.sqrt(), 0.5, 0.5])
    }

    pub fn intervals(&self) -> usize {
        1 << self.n
    }

    /// Width of register `E`.
    pub fn eigen_bits(&self) -> usize {
        2 * self.n + 2 + self.f
    }

    /// Width of register `A`.
    pub fn angle_bits(&self) -> usize {
        self.eigen_bits() + self.shift
    }

    /// Working format of the angle chain for the shifted eigenvalue.
    pub fn angle_format(&self) -> ArccotFormat {
        ArccotFormat::new((2 * self.n + 2 + self.shift) as u32, self.angle_bits() as u32)
    }

    /// Fraction bits of `E` when read as the shifted eigenvalue.
    fn shifted_frac(&self) -> i32 {
        self.f as i32 - self.shift as i32
    }

    /// `E`-register value for eigencomponent `j`.
    pub fn eigen_raw(&self, j: usize) -> Result<u128> {
        Ok(eigenvalue_estimate(j as u64, self.n as u32, self.f as u32, None)?.bits() as u128)
    }

    /// `A`-register value for an `E` value.
    pub fn angle_raw(&self, eigen_raw: u128) -> Result<u128> {
        let out = plouffe_arccot_raw(eigen_raw as i128, self.shifted_frac(), self.angle_format())?;
        Ok(out.omega.bits() as u128)
    }

    /// `beta_j = <u_j|b>` for `j = 1..N-1`.
    pub fn eigen_coefficients(&self) -> Result<Vec<Complex64>> {
        let big_n = self.intervals();
        (1..big_n)
            .map(|j| {
                let (_, u) = eigenpair(big_n, j)?;
                Ok(u.iter().zip(&self.rhs[1..]).map(|(&uk, &b)| b * uk).sum())
            })
            .collect()
    }
}

/// Per-eigencomponent account of the pipeline's arithmetic.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Diagnostic {
    pub j: usize,
    /// Exact eigenvalue `4 N^2 sin^2(j pi / 2N)`.
    pub lambda: f64,
    /// Eigenvalue estimate held in `E`.
    pub lambda_hat: f64,
    /// `arccot(lambda^ 2^shift) / pi` as held in `A`.
    pub omega: f64,
    /// `2^shift sin(pi omega)`, the coefficient applied to the branch.
    pub inverse: f64,
    /// `|inverse - 1/lambda|`.
    pub error: f64,
    /// `|beta_j|^2`.
    pub weight: f64,
}

/// Output of a solver run.
#[derive(Clone, Debug, PartialEq)]
pub struct PoissonSolution {
    /// Normalised solution over grid points `1..N-1`, with a global phase
    /// chosen so the largest entry is real and positive.
    pub amplitudes: Vec<Complex64>,
    pub success_probability: f64,
    /// Expected repetitions to observe the ancilla in |1>.
    pub repetition_estimate: f64,
    /// `sum_j |beta_j|^2 sin^2(pi omega_j)`, from the oracles alone.
    pub predicted_probability: f64,
    pub diagnostics: Vec<Diagnostic>,
    /// Distribution of `E` after phase estimation.
    pub eigen_register: Vec<(u128, f64)>,
    pub peak_support: usize,
    pub qubits: usize,
    pub gates: usize,
}

/// How `E` and `A` are filled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Loading {
    /// Eigenvalue calculator and angle chain.
    Arithmetic,
    /// Multi-controlled lookups of precomputed values.
    Lookup,
}

/// The forward half of the solver. The full run is `eigen`, `angle`,
/// `rotation`, then `angle` and `eigen` inverted.
#[derive(Clone, Debug)]
pub struct SolverCircuit {
    pub circuit: Circuit,
    pub eigen: Range<usize>,
    pub angle: Range<usize>,
    pub rotation: Range<usize>,
}

impl SolverCircuit {
    pub fn register(&self, name: &str) -> Result<Register> {
        self.circuit.register(name)
    }

    /// Gate count of the complete run.
    pub fn total_gates(&self) -> usize {
        2 * (self.eigen.len() + self.angle.len()) + self.rotation.len()
    }
}

fn equals(qubits: &[usize], value: u128) -> Vec<Control> {
    qubits.iter().enumerate().map(|(i, &q)| Control::when(q, (value >> i) & 1 == 1)).collect()
}

fn load_eigenvalues(b: &mut CircuitBuilder, p: &PoissonProblem, reg: &[usize], lam: &[usize], loading: Loading) -> Result<()> {
    match loading {
        Loading::Arithmetic => evc_into(b, reg, lam, None),
        Loading::Lookup => {
            for j in 1..p.intervals() {
                let v = p.eigen_raw(j)?;
                let c = equals(reg, j as u128);
                for (i, &q) in lam.iter().enumerate() {
                    if (v >> i) & 1 == 1 {
                        b.mcx(&c, q);
                    }
                }
            }
        }
    }
    Ok(())
}

/// Builds the forward half of the solver for `problem`.
pub fn build_solver(problem: &PoissonProblem, loading: Loading) -> Result<SolverCircuit> {
    let m = problem.eigen_bits();
    let big_m = problem.angle_bits();
    let mut b = CircuitBuilder::new();
    let reg = b.add_register("B", problem.n)?.qubits();
    let e = b.add_register("E", m)?.qubits();
    let a = b.add_register("A", big_m)?.qubits();
    let r = b.add_register("R", 1)?.offset;

    b.begin("phase-estimation");
    let anc = b.alloc(1)[0];
    let lam = b.alloc(m);
    b.begin("sine");
    sine_into(&mut b, &reg, anc);
    b.end();
    b.begin("evc");
    let s = b.mark();
    load_eigenvalues(&mut b, problem, &reg, &lam, loading)?;
    let t = b.mark();
    b.end();
    b.begin("kickback");
    for &q in &e {
        b.h(q);
    }
    for (l, &q) in e.iter().enumerate() {
        kickback_into(&mut b, &lam, 1u64 << l, &[Control::on(q)], KickbackMode::PhaseGates);
    }
    qft_into(&mut b, &e, true);
    b.end();
    b.begin("evc");
    b.append_inverse_range(s, t);
    b.end();
    b.begin("sine");
    sine_into(&mut b, &reg, anc);
    b.end();
    b.free(&lam);
    b.free(&[anc]);
    b.end();
    let eigen = 0..b.mark();

    b.begin("angle");
    match loading {
        Loading::Arithmetic => {
            let held = angle_into(&mut b, &e, problem.shifted_frac(), problem.angle_format(), &a)?;
            b.free(&held);
        }
        Loading::Lookup => {
            for j in 1..problem.intervals() {
                let v = problem.eigen_raw(j)?;
                let w = problem.angle_raw(v)?;
                let c = equals(&e, v);
                for (i, &q) in a.iter().enumerate() {
                    if (w >> i) & 1 == 1 {
                        b.mcx(&c, q);
                    }
                }
            }
        }
    }
    b.end();
    let angle = eigen.end..b.mark();

    b.begin("rotation");
    for k in 0..big_m {
        let angle = 2.0 * PI * (-(k as f64) - 1.0).exp2();
        b.ry(r, angle, &[Control::on(a[big_m - 1 - k])]);
    }
    b.end();
    let rotation = angle.end..b.mark();

    Ok(SolverCircuit { circuit: b.finish()?, eigen, angle, rotation })
}

fn initial_state(problem: &PoissonProblem, sc: &SolverCircuit) -> Result<SparseState> {
    SparseState::with_register(sc.circuit.layout().clone(), "B", &problem.rhs, &[])
}

/// The state after phase estimation, `sum_j beta_j |u_j>|lambda^_j>`.
pub fn phase_estimation(problem: &PoissonProblem) -> Result<SparseState> {
    let sc = build_solver(problem, Loading::Arithmetic)?;
    let mut state = initial_state(problem, &sc)?;
    state.apply_gates(&sc.circuit.gates()[sc.eigen.clone()])?;
    Ok(state)
}

/// Computes the angle into `A` and rotates `R` on a state produced by
/// [`phase_estimation`] for the same problem.
pub fn controlled_rotation(problem: &PoissonProblem, mut state: SparseState) -> Result<SparseState> {
    let sc = build_solver(problem, Loading::Arithmetic)?;
    if state.layout() != sc.circuit.layout() {
        return Err(Error::LayoutMismatch("state does not come from this problem".into()));
    }
    let g = sc.circuit.gates();
    state.apply_gates(&g[sc.angle.clone()])?;
    state.apply_gates(&g[sc.rotation.clone()])?;
    Ok(state)
}

/// Runs the complete solver with arithmetic eigenvalue and angle circuits.
pub fn solve(problem: &PoissonProblem) -> Result<PoissonSolution> {
    run(problem, Loading::Arithmetic)
}

/// Runs the solver with eigenvalues and angles loaded by lookup, which
/// separates arithmetic error from the rest of the pipeline.
pub fn run_demo_simplified(problem: &PoissonProblem) -> Result<PoissonSolution> {
    run(problem, Loading::Lookup)
}

pub fn run(problem: &PoissonProblem, loading: Loading) -> Result<PoissonSolution> {
    let sc = build_solver(problem, loading)?;
    run_circuit(problem, &sc)
}

/// Simulates a prebuilt solver circuit.
pub fn run_circuit(problem: &PoissonProblem, sc: &SolverCircuit) -> Result<PoissonSolution> {
    let g = sc.circuit.gates();
    let b_reg = sc.register("B")?;
    let r_reg = sc.register("R")?;
    let mut state = initial_state(problem, sc)?;
    state.apply_gates(&g[sc.eigen.clone()])?;
    let eigen_register = state.read(sc.register("E")?).probabilities;
    state.apply_gates(&g[sc.angle.clone()])?;
    state.apply_gates(&g[sc.rotation.clone()])?;
    state.apply_inverse_gates(&g[sc.angle.clone()])?;
    state.apply_inverse_gates(&g[sc.eigen.clone()])?;

    let dirty = state.weight_outside(&[b_reg, r_reg]);
    if dirty > HYGIENE_TOLERANCE {
        return Err(Error::DirtyAncilla(format!("work registers carry weight {dirty:e} after uncomputation")));
    }
    let (post, p) = state.postselect(r_reg.offset, true)?;
    let amps = post
        .read(b_reg)
        .amplitudes
        .ok_or_else(|| Error::DirtyAncilla("solution register is entangled".into()))?;
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); problem.intervals()];
    for (v, a) in amps {
        amplitudes[v as usize] = a;
    }
    if amplitudes[0].norm() > 1e-9 {
        return Err(Error::DirtyAncilla("solution has weight on the boundary index".into()));
    }
    let mut amplitudes = amplitudes.split_off(1);
    let lead = amplitudes.iter().copied().fold(Complex64::new(0.0, 0.0), |best, a| {
        if a.norm() > best.norm() + 1e-12 {
            a
        } else {
            best
        }
    });
    let phase = lead.conj() / lead.norm();
    for a in &mut amplitudes {
        *a *= phase;
    }

    let diagnostics = diagnose(problem)?;
    let predicted_probability = diagnostics
        .iter()
        .map(|d| d.weight * (d.inverse * (-(problem.shift as f64)).exp2()).powi(2))
        .sum();
    Ok(PoissonSolution {
        amplitudes,
        success_probability: p,
        repetition_estimate: 1.0 / p,
        predicted_probability,
        diagnostics,
        eigen_register,
        peak_support: state.peak_support().max(post.peak_support()),
        qubits: sc.circuit.layout().total(),
        gates: sc.total_gates(),
    })
}

/// Exact solution `A^-1 b` of the discretised system over grid points
/// `1..N-1` (not normalised).
pub fn classical_solution(problem: &PoissonProblem) -> Result<Vec<Complex64>> {
    let big_n = problem.intervals();
    let re: Vec<f64> = problem.rhs[1..].iter().map(|c| c.re).collect();
    let im: Vec<f64> = problem.rhs[1..].iter().map(|c| c.im).collect();
    let (x, y) = (tridiag_solve(big_n, &re)?, tridiag_solve(big_n, &im)?);
    Ok(x.into_iter().zip(y).map(|(a, b)| Complex64::new(a, b)).collect())
}

/// Largest entry of `|amplitudes - e^(i phi) reference / |reference||`,
/// with the global phase `phi` taken from the overlap.
pub fn max_error(amplitudes: &[Complex64], reference: &[Complex64]) -> f64 {
    let norm = reference.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    let overlap: Complex64 = reference.iter().zip(amplitudes).map(|(r, a)| r.conj() * a).sum();
    let phase = if overlap.norm() > 0.0 { overlap / overlap.norm() } else { Complex64::new(1.0, 0.0) };
    amplitudes
        .iter()
        .zip(reference)
        .map(|(a, r)| (a - r * phase / norm).norm())
        .fold(0.0, f64::max)
}

/// Oracle values for every eigencomponent of `problem`.
pub fn diagnose(problem: &PoissonProblem) -> Result<Vec<Diagnostic>> {
    let big_n = problem.intervals();
    let betas = problem.eigen_coefficients()?;
    let big_m = problem.angle_bits() as i32;
    (1..big_n)
        .map(|j| {
            let (lambda, _) = eigenpair(big_n, j)?;
            let raw = problem.eigen_raw(j)?;
            let omega_raw = problem.angle_raw(raw)?;
            let omega = omega_raw as f64 * (-big_m as f64).exp2();
            let inverse = (PI * omega).sin() * (problem.shift as f64).exp2();
            Ok(Diagnostic {
                j,
                lambda,
                lambda_hat: raw as f64 * (-(problem.f as f64)).exp2(),
                omega,
                inverse,
                error: (inverse - 1.0 / lambda).abs(),
                weight: betas[j - 1].norm_sqr(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_boundary_weight() {
        assert!(PoissonProblem::from_real(2, 3, 0, &[1.0, 0.0, 0.0, 0.0]).is_err());
        assert!(PoissonProblem::from_real(2, 3, 0, &[0.0, 1.0, 0.0]).is_err());
        assert!(PoissonProblem::from_real(2, 3, 0, &[0.0, 0.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn single_interior_point() {
        let p = PoissonProblem::from_real(1, 3, 0, &[0.0, 1.0]).unwrap();
        let s = solve(&p).unwrap();
        assert_eq!(s.amplitudes.len(), 1);
        assert!((s.amplitudes[0].re - 1.0).abs() < 1e-9);
        assert!((s.success_probability - s.predicted_probability).abs() < 1e-9);
    }

    #[test]
    fn lookup_matches_arithmetic_on_demo() {
        let p = PoissonProblem::demo(3, 0).unwrap();
        let a = solve(&p).unwrap();
        let l = run_demo_simplified(&p).unwrap();
        for (x, y) in a.amplitudes.iter().zip(&l.amplitudes) {
            assert!((x - y).norm() < 1e-9);
        }
        assert_eq!(a.eigen_register.len(), 3);
    }
}
