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

//! Fourier and sine transforms, phase kickback and the controlled powers
//! of `exp(i 2 pi A 2^f / 2^m)` used by phase estimation.
//!
//! Conventions: registers are little-endian; [`qft_into`] maps `|x>` to
//! `sum_k e^{+2 pi i x k / M} |k> / sqrt(M)`. The T_N ancilla is the most
//! significant qubit of the `2N`-point transform.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::arith::add;
use crate::error::{Error, Result};
use crate::func::evc_into;
use crate::sim::{Circuit, CircuitBuilder, Control, Gate, GateKind};

fn qft_gates(qubits: &[usize]) -> Vec<Gate> {
    let n = qubits.len();
    let mut g = Vec::new();
    for j in (0..n).rev() {
        g.push(Gate::raw(GateKind::H, &[qubits[j]], &[]));
        for k in (0..j).rev() {
            let angle = PI / (1u64 << (j - k)) as f64;
            g.push(Gate::raw(GateKind::Phase(angle), &[qubits[j]], &[Control::on(qubits[k])]));
        }
    }
    for i in 0..n / 2 {
        g.push(Gate::raw(GateKind::Swap, &[qubits[i], qubits[n - 1 - i]], &[]));
    }
    g
}

/// Quantum Fourier transform on `qubits` (or its inverse).
pub fn qft_into(b: &mut CircuitBuilder, qubits: &[usize], inverse: bool) {
    let g = qft_gates(qubits);
    if inverse {
        b.extend(g.iter().rev().map(Gate::inverse));
    } else {
        b.extend(g);
    }
}

fn single_register(name: &str, width: usize) -> Result<(CircuitBuilder, Vec<usize>)> {
    if width == 0 {
        return Err(Error::Width(format!("register `{name}` needs at least one qubit")));
    }
    let mut b = CircuitBuilder::new();
    let q = b.add_register(name, width)?.qubits();
    Ok((b, q))
}

pub fn build_qft(width: usize) -> Result<Circuit> {
    let (mut b, q) = single_register("x", width)?;
    b.begin("qft");
    qft_into(&mut b, &q, false);
    b.end();
    b.finish()
}

pub fn build_inverse_qft(width: usize) -> Result<Circuit> {
    let (mut b, q) = single_register("x", width)?;
    b.begin("qft^-1");
    qft_into(&mut b, &q, true);
    b.end();
    b.finish()
}

/// `x -> -x mod 2^n` under `controls`: bitwise NOT, then an increment
/// cascade from the top bit down.
pub fn negate_mod_into(b: &mut CircuitBuilder, reg: &[usize], controls: &[Control]) {
    for &q in reg {
        b.mcx(controls, q);
    }
    for i in (0..reg.len()).rev() {
        let mut c = controls.to_vec();
        c.extend(reg[..i].iter().map(|&q| Control::on(q)));
        b.mcx(&c, reg[i]);
    }
}

/// `T_N`: Hadamard on the ancilla, then `b -> N - b` when the ancilla is 1.
/// The controls that would handle `b = 0` are left out, so the transform
/// is only meaningful on `b != 0`.
pub fn tn_into(b: &mut CircuitBuilder, reg: &[usize], anc: usize) {
    b.h(anc);
    negate_mod_into(b, reg, &[Control::on(anc)]);
}

/// Sine transform `S` on `reg` (valid on `reg != 0`), using the clean
/// qubit `anc`, which is prepared in |1> and returned to |0>.
///
/// `T_N^dagger F^dagger_{2N} T_N` acts as `-i S` on the ancilla-1 block;
/// the phase gate on the ancilla removes the `-i`.
pub fn sine_into(b: &mut CircuitBuilder, reg: &[usize], anc: usize) {
    b.x(anc);
    let s = b.mark();
    tn_into(b, reg, anc);
    let e = b.mark();
    let mut all = reg.to_vec();
    all.push(anc);
    qft_into(b, &all, true);
    b.append_inverse_range(s, e);
    b.phase(anc, FRAC_PI_2, &[]);
    b.x(anc);
}

/// A spectral circuit on register `B` plus its ancilla register `anc`.
#[derive(Clone, Debug)]
pub struct SpectralOp {
    pub circuit: Circuit,
    pub n: usize,
    /// `N = 2^n`.
    pub dim: usize,
    pub ancilla: usize,
}

fn spectral_layout(n: usize) -> Result<(CircuitBuilder, Vec<usize>, usize)> {
    if n == 0 || n > 20 {
        return Err(Error::Width(format!("transform width {n} not in 1..=20")));
    }
    let mut b = CircuitBuilder::new();
    let reg = b.add_register("B", n)?.qubits();
    let anc = b.add_register("anc", 1)?.offset;
    Ok((b, reg, anc))
}

pub fn build_tn(n: usize) -> Result<SpectralOp> {
    let (mut b, reg, anc) = spectral_layout(n)?;
    b.begin("tn");
    tn_into(&mut b, &reg, anc);
    b.end();
    Ok(SpectralOp { circuit: b.finish()?, n, dim: 1 << n, ancilla: anc })
}

pub fn build_sine_transform(n: usize) -> Result<SpectralOp> {
    let (mut b, reg, anc) = spectral_layout(n)?;
    b.begin("sine");
    sine_into(&mut b, &reg, anc);
    b.end();
    Ok(SpectralOp { circuit: b.finish()?, n, dim: 1 << n, ancilla: anc })
}

/// How the phase `exp(i 2 pi L t / 2^m)` of an eigenvalue register `L` is
/// produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KickbackMode {
    /// One controlled phase gate per bit of `L`. Keeps the state sparse.
    PhaseGates,
    /// Modular addition of `L * t` into a register prepared in the Fourier
    /// state `QFT|2^m - 1>`, an eigenstate of `+1` with eigenvalue
    /// `e^{2 pi i / 2^m}`.
    Adder,
}

/// Multiplies each basis state by `exp(i 2 pi L t / 2^m)`, `m = lam.len()`,
/// when all `controls` hold.
pub fn kickback_into(b: &mut CircuitBuilder, lam: &[usize], t: u64, controls: &[Control], mode: KickbackMode) {
    let m = lam.len();
    let modulus = 1u128 << m;
    match mode {
        KickbackMode::PhaseGates => {
            for (i, &q) in lam.iter().enumerate() {
                let k = ((t as u128) << i) % modulus;
                if k != 0 {
                    b.phase(q, 2.0 * PI * k as f64 / modulus as f64, controls);
                }
            }
        }
        KickbackMode::Adder => {
            let k = b.alloc(m);
            for &q in &k {
                b.x(q);
            }
            qft_into(b, &k, false);
            for s in 0..m.min(64) {
                if (t >> s) & 1 == 1 {
                    let mut addend = vec![None; s];
                    addend.extend(lam[..m - s].iter().map(|&q| Some(q)));
                    add(b, &addend, &k, None, controls);
                }
            }
            qft_into(b, &k, true);
            for &q in &k {
                b.x(q);
            }
            b.free(&k);
        }
    }
}

fn eigen_width(n: usize, f: usize) -> Result<usize> {
    if n == 0 || n > 16 {
        return Err(Error::Width(format!("grid width {n} not in 1..=16")));
    }
    Ok(2 * n + 2 + f)
}

/// `b_j -> b_j exp(i 2 pi L_j t / 2^m)` on register `B` (`n` qubits, basis
/// index `j`), where `L_j` is the eigenvalue register value computed by the
/// EVC circuit (`m = 2n + 2 + f` bits). The EVC work qubits are restored.
pub fn build_phase_kickback(n: usize, f: usize, t: u64, mode: KickbackMode) -> Result<Circuit> {
    let m = eigen_width(n, f)?;
    let mut b = CircuitBuilder::new();
    let reg = b.add_register("B", n)?.qubits();
    let lam = b.alloc(m);
    b.begin("kickback");
    let s = b.mark();
    evc_into(&mut b, &reg, &lam, None);
    let e = b.mark();
    kickback_into(&mut b, &lam, t, &[], mode);
    b.append_inverse_range(s, e);
    b.end();
    b.free(&lam);
    b.finish()
}

/// Controlled `U^(2^l)` with `U = S exp(i 2 pi Lambda / 2^m) S` on register
/// `B`, controlled by qubit `l` of register `E` (`m` qubits). `Lambda` is the
/// diagonal of EVC register values, i.e. the eigenvalue estimates scaled
/// by `2^f`.
pub fn build_controlled_u_power(l: usize, n: usize, f: usize, mode: KickbackMode) -> Result<Circuit> {
    let m = eigen_width(n, f)?;
    if l >= m {
        return Err(Error::Domain(format!("power index {l} must be below m = {m}")));
    }
    let mut b = CircuitBuilder::new();
    let reg = b.add_register("B", n)?.qubits();
    let e = b.add_register("E", m)?;
    b.begin("controlled-u");
    let anc = b.alloc(1)[0];
    let lam = b.alloc(m);
    sine_into(&mut b, &reg, anc);
    let s = b.mark();
    evc_into(&mut b, &reg, &lam, None);
    let t = b.mark();
    kickback_into(&mut b, &lam, 1u64 << l, &[Control::on(e.qubit(l))], mode);
    b.append_inverse_range(s, t);
    sine_into(&mut b, &reg, anc);
    b.free(&lam);
    b.free(&[anc]);
    b.end();
    b.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::{max_distance, to_matrix, unitarity_defect};
    use nalgebra::DMatrix;
    use num_complex::Complex64;

    fn dft(w: usize, sign: f64) -> DMatrix<Complex64> {
        let m = 1usize << w;
        DMatrix::from_fn(m, m, |j, k| {
            Complex64::from_polar(1.0 / (m as f64).sqrt(), sign * 2.0 * PI * (j * k) as f64 / m as f64)
        })
    }

    #[test]
    fn qft_matches_dft() {
        for w in 1..=4 {
            let u = to_matrix(&build_qft(w).unwrap()).unwrap();
            assert!(max_distance(&u, &dft(w, 1.0)) < 1e-12, "width {w}");
            let v = to_matrix(&build_inverse_qft(w).unwrap()).unwrap();
            assert!(max_distance(&v, &dft(w, -1.0)) < 1e-12);
        }
    }

    #[test]
    fn negate_mod_cascade() {
        let mut b = CircuitBuilder::new();
        let r = b.add_register("x", 3).unwrap().qubits();
        negate_mod_into(&mut b, &r, &[]);
        let u = to_matrix(&b.finish().unwrap()).unwrap();
        for x in 0..8 {
            assert_eq!(u[((8 - x) % 8, x)], Complex64::new(1.0, 0.0));
        }
    }

    #[test]
    fn sine_transform_block() {
        for n in 1..=3 {
            let op = build_sine_transform(n).unwrap();
            let u = to_matrix(&op.circuit).unwrap();
            assert!(unitarity_defect(&u) < 1e-10);
            let big_n = op.dim as f64;
            for j in 1..op.dim {
                for k in 1..op.dim {
                    let want = (2.0 / big_n).sqrt() * (PI * (j * k) as f64 / big_n).sin();
                    assert!((u[(k, j)] - Complex64::new(want, 0.0)).norm() < 1e-12);
                }
            }
        }
    }
}
