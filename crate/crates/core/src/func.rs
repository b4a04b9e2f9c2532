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

//! Reversible circuits for the square root, the reciprocal, the cosine
//! chain with its eigenvalue calculator, and the arc-cotangent angle chain.
//!
//! Each builder comes in two forms: a `*_into` function that emits gates
//! into an existing [`CircuitBuilder`] (used by the solver pipeline), and a
//! stand-alone `build_*` returning a [`FuncCircuit`] with named input and
//! output registers.

use crate::arith::{add, add_const, copy, negate, sub};
use crate::error::{Error, Result};
use crate::fixedpoint::{guard_frac, ArccotFormat, FixedPoint};
use crate::sim::{Circuit, CircuitBuilder, Control, SparseState};

/// Fixed-point reading of a register.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RegisterFormat {
    pub width: u32,
    pub frac: u32,
    pub signed: bool,
}

impl RegisterFormat {
    pub fn unsigned(width: u32, frac: u32) -> Self {
        Self { width, frac, signed: false }
    }

    pub fn signed(width: u32, frac: u32) -> Self {
        Self { width, frac, signed: true }
    }
}

/// A circuit computing `output ^= f(input)` with every other qubit
/// returned to |0>.
#[derive(Clone, Debug)]
pub struct FuncCircuit {
    pub circuit: Circuit,
    pub input: String,
    pub output: String,
    pub input_format: RegisterFormat,
    pub output_format: RegisterFormat,
}

impl FuncCircuit {
    /// Runs the circuit on the basis input `x` and returns the output bits.
    /// Fails if the input is disturbed or any work qubit is left set.
    pub fn evaluate(&self, x: u128) -> Result<u128> {
        let layout = self.circuit.layout().clone();
        let mut s = SparseState::basis(layout, &[(self.input.as_str(), x)])?;
        s.apply(&self.circuit)?;
        if s.len() != 1 {
            return Err(Error::DirtyAncilla(format!("basis input spread over {} states", s.len())));
        }
        let mut out = 0;
        for r in s.layout().registers() {
            let v = s.read(r.register).probabilities[0].0;
            if r.name == self.output {
                out = v;
            } else if r.name == self.input {
                if v != x {
                    return Err(Error::DirtyAncilla(format!("input changed from {x} to {v}")));
                }
            } else if v != 0 {
                return Err(Error::DirtyAncilla(format!("register `{}` left at {v}", r.name)));
            }
        }
        Ok(out)
    }

    pub fn evaluate_fixed(&self, x: FixedPoint) -> Result<FixedPoint> {
        let f = self.output_format;
        let bits = self.evaluate(x.bits() as u128)?;
        FixedPoint::from_bits(bits as u64, f.width, f.frac, f.signed)
    }
}

fn pad(bits: impl IntoIterator<Item = usize>, len: usize) -> Vec<Option<usize>> {
    let mut v: Vec<Option<usize>> = bits.into_iter().map(Some).collect();
    v.resize(len, None);
    v
}

// ---------------------------------------------------------------------------
// Square root
// ---------------------------------------------------------------------------

/// `root ^= floor(sqrt(radicand))` for a `2k`-bit radicand and a clean
/// `k`-bit root register.
///
/// A `2k + 1` bit remainder register (top bit = sign) is loaded with the
/// radicand. Step `i` subtracts the trial value `(q << 2 | 1) << p` from the
/// window starting at `p = 2(k-1-i)`, reads the new root bit off the sign
/// and adds the trial value back when the bit is 0. The second half adds
/// back the trial values of the 1-bits, restoring the radicand, which is
/// then unloaded.
pub fn sqrt_into(b: &mut CircuitBuilder, radicand: &[Option<usize>], root: &[usize]) {
    let k = root.len();
    assert_eq!(radicand.len(), 2 * k, "radicand must have twice the root width");
    let r = b.alloc(2 * k + 1);
    let one = b.alloc(1)[0];
    let sign = r[2 * k];
    b.x(one);
    for (i, q) in radicand.iter().enumerate() {
        if let Some(q) = q {
            b.cx(*q, r[i]);
        }
    }
    let trial = |i: usize| -> (usize, Vec<Option<usize>>) {
        let p = 2 * (k - 1 - i);
        let mut t = vec![Some(one), None];
        t.extend((0..i).map(|s| Some(root[k - i + s])));
        t.resize(2 * k - p, None);
        (p, t)
    };
    for i in 0..k {
        let (p, t) = trial(i);
        let bit = root[k - 1 - i];
        sub(b, &t, &r[p..2 * k], Some(sign), &[]);
        b.cx(sign, bit);
        b.x(bit);
        add(b, &t, &r[p..2 * k], Some(sign), &[Control::off(bit)]);
    }
    for i in (0..k).rev() {
        let (p, t) = trial(i);
        add(b, &t, &r[p..2 * k], None, &[Control::on(root[k - 1 - i])]);
    }
    for (i, q) in radicand.iter().enumerate() {
        if let Some(q) = q {
            b.cx(*q, r[i]);
        }
    }
    b.x(one);
    b.free(&[one]);
    b.free(&r);
}

/// `x -> (x, floor(sqrt(x * 2^m)))`; the root reads with `m/2` fraction bits.
pub fn build_sqrt(m: usize) -> Result<FuncCircuit> {
    if m == 0 || m % 2 != 0 || m > 62 {
        return Err(Error::Domain(format!("square-root width {m} must be even and in 2..=62")));
    }
    let mut b = CircuitBuilder::new();
    let x = b.add_register("x", m)?.qubits();
    let root = b.add_register("root", m)?.qubits();
    let mut radicand = vec![None; m];
    radicand.extend(x.iter().map(|&q| Some(q)));
    b.begin("sqrt");
    sqrt_into(&mut b, &radicand, &root);
    b.end();
    Ok(FuncCircuit {
        circuit: b.finish()?,
        input: "x".into(),
        output: "root".into(),
        input_format: RegisterFormat::unsigned(m as u32, 0),
        output_format: RegisterFormat::unsigned(m as u32, m as u32 / 2),
    })
}

// ---------------------------------------------------------------------------
// Reciprocal
// ---------------------------------------------------------------------------

/// Digits of `floor(2^k / d)` by non-restoring division, little-endian in
/// the returned `k + 1` qubits. Returns `(digits, held)`; `held` (which
/// includes the digits) must be freed after the caller has appended the
/// inverse of the emitted gates.
///
/// The remainder register keeps `r_s * 2^(k-s)`, so step `s` adds or
/// subtracts the divisor at offset `k - s` and no shifting is needed.
/// Subtraction under a control uses `b - d = ~(~b + d)`.
pub fn divide_pow2_into(b: &mut CircuitBuilder, d: &[usize], k: usize) -> (Vec<usize>, Vec<usize>) {
    let w = d.len();
    let width = w + k + 1;
    let rem = b.alloc(width);
    let t = b.alloc(k + 1);
    let sign = rem[width - 1];
    b.x(rem[k]);
    for i in (0..=k).rev() {
        let addend = pad(d.iter().copied(), width - i);
        if i == k {
            sub(b, &addend, &rem[i..], None, &[]);
        } else {
            for &q in &rem[i..] {
                b.cx(t[i + 1], q);
            }
            add(b, &addend, &rem[i..], None, &[]);
            for &q in &rem[i..] {
                b.cx(t[i + 1], q);
            }
        }
        b.cx(sign, t[i]);
        b.x(t[i]);
    }
    let mut held = rem;
    held.extend_from_slice(&t);
    (t, held)
}

/// `out ^= floor(2^m / x)` on `m` fraction bits, saturating at all ones for
/// `x = 1`.
pub fn recip_into(b: &mut CircuitBuilder, x: &[usize], out: &[usize]) {
    let m = x.len();
    assert_eq!(out.len(), m);
    let start = b.mark();
    let (t, held) = divide_pow2_into(b, x, m);
    let end = b.mark();
    copy(b, &t[..m], out);
    for &q in out {
        b.cx(t[m], q);
    }
    b.append_inverse_range(start, end);
    b.free(&held);
}

pub fn build_recip(m: usize) -> Result<FuncCircuit> {
    if !(3..=62).contains(&m) {
        return Err(Error::Domain(format!("reciprocal width {m} not in 3..=62")));
    }
    let mut b = CircuitBuilder::new();
    let x = b.add_register("x", m)?.qubits();
    let out = b.add_register("recip", m)?.qubits();
    b.begin("recip");
    recip_into(&mut b, &x, &out);
    b.end();
    Ok(FuncCircuit {
        circuit: b.finish()?,
        input: "x".into(),
        output: "recip".into(),
        input_format: RegisterFormat::unsigned(m as u32, 0),
        output_format: RegisterFormat::unsigned(m as u32, m as u32),
    })
}

// ---------------------------------------------------------------------------
// Cosine and eigenvalues
// ---------------------------------------------------------------------------

/// Emits the half-angle chain for `cos(j pi / 2^n)` at `g` working fraction
/// bits and returns the unsigned root of the last step (`g + 1` bits); its
/// sign is the top bit of `j`. All gates emitted here must be reversed by
/// the caller to clean the intermediate registers, which are returned.
///
/// Each state register has two integer bits (sign and units). Step `k`
/// forms `y = 1 ± a_k` in a scratch register (negate under `v_k`, add one),
/// takes `sqrt(y / 2)` into the next state register and negates it under
/// `v_k` except on the last step.
fn cos_chain(b: &mut CircuitBuilder, j: &[usize], g: usize) -> (Vec<usize>, Vec<usize>) {
    let n = j.len();
    let mut held = Vec::new();
    let mut a = b.alloc(g + 2);
    held.extend_from_slice(&a);
    b.x(a[g]);
    for (k, &v) in j.iter().enumerate() {
        let y = b.alloc(g + 2);
        let next = b.alloc(g + 2);
        held.extend_from_slice(&next);
        let ys = b.mark();
        copy(b, &a, &y);
        negate(b, &y, &[Control::on(v)]);
        add_const(b, 1u128 << g, &y, &[]);
        let ye = b.mark();
        let mut radicand = vec![None; g - 1];
        radicand.extend(y.iter().map(|&q| Some(q)));
        radicand.resize(2 * g + 2, None);
        sqrt_into(b, &radicand, &next[..g + 1]);
        b.append_inverse_range(ys, ye);
        b.free(&y);
        if k + 1 < n {
            negate(b, &next, &[Control::on(v)]);
        }
        a = next;
    }
    (a[..g + 1].to_vec(), held)
}

/// `out ^= cos(j pi / 2^n)` with two integer bits and `out.len() - 2`
/// fraction bits, two's complement, working at `guard` fraction bits.
pub fn cos_into(b: &mut CircuitBuilder, j: &[usize], out: &[usize], guard: usize) {
    let frac = out.len() - 2;
    assert!(guard >= frac && guard >= 1);
    let start = b.mark();
    let (root, held) = cos_chain(b, j, guard);
    let end = b.mark();
    copy(b, &root[guard - frac..], &out[..frac + 1]);
    negate(b, out, &[Control::on(*j.last().expect("non-empty j"))]);
    b.append_inverse_range(start, end);
    b.free(&held);
}

/// `lam ^= 2 N^2 (1 - cos(j pi / N))` in the eigenvalue format (top
/// `2n + 2` bits integer), with `lam` clean on entry. `guard` defaults to
/// the working width used by the classical oracle.
///
/// The cosine is needed to `m - 1` fraction bits; `2^(m-1) -/+ |cos|` is
/// then exactly the scaled eigenvalue, so the factor `2 N^2` costs nothing.
pub fn evc_into(b: &mut CircuitBuilder, j: &[usize], lam: &[usize], guard: Option<usize>) {
    let n = j.len();
    let m = lam.len();
    let fc = m - 1;
    let g = guard.unwrap_or_else(|| guard_frac(fc as u32, n as u32) as usize);
    assert!(g >= fc);
    let v = *j.last().expect("non-empty j");
    let start = b.mark();
    let (root, held) = cos_chain(b, j, g);
    let end = b.mark();
    let rc: Vec<Option<usize>> = root[g - fc..].iter().map(|&q| Some(q)).collect();
    b.x(lam[fc]);
    sub(b, &rc, lam, None, &[Control::off(v)]);
    add(b, &rc, lam, None, &[Control::on(v)]);
    b.append_inverse_range(start, end);
    b.free(&held);
}

/// `j -> (j, cos(j pi / 2^n))` with `frac` fraction bits.
pub fn build_cos(n: usize, frac: usize, guard: Option<usize>) -> Result<FuncCircuit> {
    if n == 0 || n > 32 {
        return Err(Error::Domain(format!("bit count {n} not in 1..=32")));
    }
    let g = guard.unwrap_or_else(|| guard_frac(frac as u32, n as u32) as usize);
    if g < frac || g == 0 {
        return Err(Error::Width(format!("guard {g} below output fraction {frac}")));
    }
    let mut b = CircuitBuilder::new();
    let j = b.add_register("j", n)?.qubits();
    let out = b.add_register("cos", frac + 2)?.qubits();
    b.begin("cos");
    cos_into(&mut b, &j, &out, g);
    b.end();
    Ok(FuncCircuit {
        circuit: b.finish()?,
        input: "j".into(),
        output: "cos".into(),
        input_format: RegisterFormat::unsigned(n as u32, 0),
        output_format: RegisterFormat::signed(frac as u32 + 2, frac as u32),
    })
}

/// Eigenvalue calculator `j -> (j, lambda_j)` on an `m`-bit register with
/// `m - 2n - 2` fraction bits.
pub fn build_evc(n: usize, m: usize) -> Result<FuncCircuit> {
    if n == 0 || n > 16 {
        return Err(Error::Domain(format!("input width {n} not in 1..=16")));
    }
    if m < 2 * n + 2 {
        return Err(Error::Width(format!("eigenvalue register of {m} bits cannot hold 4N^2 for n = {n}")));
    }
    let mut b = CircuitBuilder::new();
    let j = b.add_register("j", n)?.qubits();
    let lam = b.add_register("lambda", m)?.qubits();
    b.begin("evc");
    evc_into(&mut b, &j, &lam, None);
    b.end();
    Ok(FuncCircuit {
        circuit: b.finish()?,
        input: "j".into(),
        output: "lambda".into(),
        input_format: RegisterFormat::unsigned(n as u32, 0),
        output_format: RegisterFormat::unsigned(m as u32, (m - 2 * n - 2) as u32),
    })
}

// ---------------------------------------------------------------------------
// Arc cotangent
// ---------------------------------------------------------------------------

/// Emits the cotangent-doubling chain: `w[M-1-i] ^= w_i` for the digits of
/// `arccot(x)/pi`, where `x` is the value of `input` read with
/// `input_frac` fraction bits. The emitted gates leave the state registers
/// behind; the caller reverses them and then frees the returned qubits.
///
/// Module `i` flags `a_i = 0`, emits `w_i = !s_i & (a_i < 0 | a_i = 0)`,
/// updates the sentinel `s_{i+1} = s_i | (a_i = 0)`, and computes
/// `a_{i+1} = (a_i - 1/a_i) >> 1` through `|a_i|`, a reciprocal
/// `floor(2^(2G) / |a_i|)` that is uncomputed at once, and a subtraction
/// (addition for negative `a_i`) into a copy of `a_i`. The arithmetic shift
/// is a relabelling plus one sign-extension qubit.
pub fn angle_into(
    b: &mut CircuitBuilder,
    input: &[usize],
    input_frac: i32,
    format: ArccotFormat,
    w: &[usize],
) -> Result<Vec<usize>> {
    let g = format.frac_bits as usize;
    let width = format.state_width() as usize;
    let steps = format.out_bits as usize;
    if w.len() != steps {
        return Err(Error::Width(format!("angle register has {} bits, format emits {steps}", w.len())));
    }
    let shift = g as i64 - input_frac as i64;
    if shift < 0 || input.len() + shift as usize >= width {
        return Err(Error::Width("input does not fit the arccot working format".into()));
    }
    let shift = shift as usize;
    let mut held = Vec::new();
    let mut a = b.alloc(width);
    held.extend_from_slice(&a);
    for (t, &q) in input.iter().enumerate() {
        b.cx(q, a[t + shift]);
    }
    let mut s: Option<usize> = None;
    for i in 0..steps {
        let sign = a[width - 1];
        let z = b.alloc(1)[0];
        held.push(z);
        let zero: Vec<Control> = a.iter().map(|&q| Control::off(q)).collect();
        b.mcx(&zero, z);
        let alive: Vec<Control> = s.map(Control::off).into_iter().collect();
        let wq = w[steps - 1 - i];
        b.mcx(&[alive.as_slice(), &[Control::on(sign)]].concat(), wq);
        b.mcx(&[alive.as_slice(), &[Control::on(z)]].concat(), wq);
        if i + 1 == steps {
            break;
        }
        let s_next = b.alloc(1)[0];
        held.push(s_next);
        if let Some(s) = s {
            b.cx(s, s_next);
        }
        b.mcx(&[alive.as_slice(), &[Control::on(z)]].concat(), s_next);
        s = Some(s_next);

        let d = b.alloc(width);
        held.extend_from_slice(&d);
        let start = b.mark();
        let abs = b.alloc(width);
        copy(b, &a, &abs);
        negate(b, &abs, &[Control::on(sign)]);
        let (q, div_held) = divide_pow2_into(b, &abs, 2 * g);
        let end = b.mark();
        copy(b, &a, &d);
        let qa = pad(q.iter().copied(), width);
        sub(b, &qa, &d, None, &[Control::off(sign)]);
        add(b, &qa, &d, None, &[Control::on(sign)]);
        b.append_inverse_range(start, end);
        b.free(&div_held);
        b.free(&abs);
        let ext = b.alloc(1)[0];
        held.push(ext);
        b.cx(d[width - 1], ext);
        a = d[1..].to_vec();
        a.push(ext);
    }
    Ok(held)
}

/// `lambda -> (lambda, arccot(lambda)/pi)` with `m` output fraction bits,
/// for inputs with `int_bits` integer and `frac` fraction bits.
pub fn build_angle(int_bits: usize, frac: usize, m: usize) -> Result<FuncCircuit> {
    build_angle_with(int_bits, frac, ArccotFormat::new(int_bits as u32, m as u32))
}

/// As [`build_angle`] with an explicit working format.
pub fn build_angle_with(int_bits: usize, frac: usize, format: ArccotFormat) -> Result<FuncCircuit> {
    let m = format.out_bits as usize;
    if m < 1 || int_bits + frac == 0 {
        return Err(Error::Domain("angle circuit needs a non-empty input and output".into()));
    }
    let mut b = CircuitBuilder::new();
    let x = b.add_register("lambda", int_bits + frac)?.qubits();
    let out = b.add_register("omega", m)?.qubits();
    let w = b.alloc(m);
    b.begin("angle");
    let start = b.mark();
    let held = angle_into(&mut b, &x, frac as i32, format, &w)?;
    let end = b.mark();
    copy(&mut b, &w, &out);
    b.append_inverse_range(start, end);
    b.free(&held);
    b.free(&w);
    b.end();
    Ok(FuncCircuit {
        circuit: b.finish()?,
        input: "lambda".into(),
        output: "omega".into(),
        input_format: RegisterFormat::unsigned((int_bits + frac) as u32, frac as u32),
        output_format: RegisterFormat::unsigned(m as u32, m as u32),
    })
}
