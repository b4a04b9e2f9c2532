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

//! Ripple-carry adders built from CARRY and SUM blocks.
//!
//! Operands are little-endian qubit lists. An addend bit given as `None`
//! is a known zero and the gates it would control are dropped, which is
//! how constant additions and shifted operands stay cheap.
//!
//! ```text
//! CARRY(c, a, b, c'):  c' ^= a&b;  b ^= a;  c' ^= c&b
//! SUM(c, a, b):        b ^= a;  b ^= c
//! ```
//!
//! Forward pass: CARRY on every position below the top (and on the top when
//! a carry-out qubit is present). Then the top SUM, then CARRY-inverse and
//! SUM walking back down to bit 0, which clears every internal carry.

use crate::error::{Error, Result};
use crate::sim::{Circuit, CircuitBuilder, Control, Gate, GateKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdderVariant {
    /// `(a, b, 0) -> (a, a + b)` with the top carry in an extra qubit.
    Full,
    /// `(a, b) -> (a, a + b mod 2^m)`.
    Modular,
    /// `(a, b) -> (a, b - a mod 2^m)`: the modular adder run backwards.
    Reversed,
    /// Modular adder acting only when the control qubit is 1.
    Controlled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AdderSpec {
    pub width: usize,
    pub variant: AdderVariant,
}

impl AdderSpec {
    pub fn new(width: usize, variant: AdderVariant) -> Self {
        Self { width, variant }
    }
}

fn toffoli(out: &mut Vec<Gate>, x: Option<usize>, y: Option<usize>, t: usize, extra: &[Control]) {
    if let (Some(x), Some(y)) = (x, y) {
        let mut c = vec![Control::on(x), Control::on(y)];
        c.extend_from_slice(extra);
        out.push(Gate::raw(GateKind::X, &[t], &c));
    }
}

fn cnot(out: &mut Vec<Gate>, x: Option<usize>, t: usize, extra: &[Control]) {
    if let Some(x) = x {
        let mut c = vec![Control::on(x)];
        c.extend_from_slice(extra);
        out.push(Gate::raw(GateKind::X, &[t], &c));
    }
}

/// Gate list of `target += addend` (mod `2^len`, or into `carry_out`).
/// `carries` holds the internal carries `c_1 .. c_{len-1}`.
fn adder_gates(
    addend: &[Option<usize>],
    target: &[usize],
    carries: &[usize],
    carry_out: Option<usize>,
    sum_controls: &[Control],
) -> Vec<Gate> {
    let l = target.len();
    let mut g = Vec::with_capacity(8 * l);
    let c = |i: usize| -> Option<usize> {
        if i == 0 {
            None
        } else if i < l {
            Some(carries[i - 1])
        } else {
            carry_out
        }
    };
    let carry = |g: &mut Vec<Gate>, i: usize, extra: &[Control]| {
        let next = c(i + 1).expect("carry target");
        toffoli(g, addend[i], Some(target[i]), next, extra);
        cnot(g, addend[i], target[i], &[]);
        toffoli(g, c(i), Some(target[i]), next, extra);
    };
    let carry_inv = |g: &mut Vec<Gate>, i: usize| {
        let next = c(i + 1).expect("carry target");
        toffoli(g, c(i), Some(target[i]), next, &[]);
        cnot(g, addend[i], target[i], &[]);
        toffoli(g, addend[i], Some(target[i]), next, &[]);
    };
    let sum = |g: &mut Vec<Gate>, i: usize| {
        cnot(g, addend[i], target[i], sum_controls);
        cnot(g, c(i), target[i], sum_controls);
    };
    for i in 0..l - 1 {
        carry(&mut g, i, &[]);
    }
    if carry_out.is_some() {
        carry(&mut g, l - 1, sum_controls);
        cnot(&mut g, addend[l - 1], target[l - 1], &[]);
    }
    sum(&mut g, l - 1);
    for i in (0..l - 1).rev() {
        carry_inv(&mut g, i);
        sum(&mut g, i);
    }
    g
}

fn emit(
    b: &mut CircuitBuilder,
    addend: &[Option<usize>],
    target: &[usize],
    carry_out: Option<usize>,
    sum_controls: &[Control],
    backwards: bool,
) {
    assert_eq!(addend.len(), target.len(), "operand widths differ");
    if target.is_empty() || addend.iter().all(Option::is_none) {
        return;
    }
    let carries = b.alloc(target.len() - 1);
    let gates = adder_gates(addend, target, &carries, carry_out, sum_controls);
    if backwards {
        b.extend(gates.into_iter().rev());
    } else {
        b.extend(gates);
    }
    b.free(&carries);
}

/// `target += addend`, wrapping modulo `2^len` or carrying into `carry_out`.
/// `sum_controls` make the addition conditional without controlling the
/// self-cancelling carry network.
pub fn add(
    b: &mut CircuitBuilder,
    addend: &[Option<usize>],
    target: &[usize],
    carry_out: Option<usize>,
    sum_controls: &[Control],
) {
    emit(b, addend, target, carry_out, sum_controls, false);
}

/// Exact inverse of [`add`]: `target -= addend`, borrowing from `carry_out`.
pub fn sub(
    b: &mut CircuitBuilder,
    addend: &[Option<usize>],
    target: &[usize],
    carry_out: Option<usize>,
    sum_controls: &[Control],
) {
    emit(b, addend, target, carry_out, sum_controls, true);
}

fn load_constant(b: &mut CircuitBuilder, c: u128, len: usize, controls: &[Control]) -> (Vec<Option<usize>>, Vec<usize>) {
    let ones: Vec<usize> = (0..len).filter(|&i| (c >> i) & 1 == 1).collect();
    let scratch = b.alloc(ones.len());
    let mut addend = vec![None; len];
    for (&i, &q) in ones.iter().zip(&scratch) {
        addend[i] = Some(q);
        b.mcx(controls, q);
    }
    (addend, scratch)
}

fn constant_op(b: &mut CircuitBuilder, c: u128, target: &[usize], controls: &[Control], backwards: bool) {
    let (addend, scratch) = load_constant(b, c, target.len(), controls);
    emit(b, &addend, target, None, &[], backwards);
    for &q in scratch.iter().rev() {
        b.mcx(controls, q);
    }
    b.free(&scratch);
}

/// `target += c mod 2^len` when all `controls` hold. The constant is loaded
/// into scratch qubits under the controls, added and unloaded.
pub fn add_const(b: &mut CircuitBuilder, c: u128, target: &[usize], controls: &[Control]) {
    constant_op(b, c, target, controls, false);
}

pub fn sub_const(b: &mut CircuitBuilder, c: u128, target: &[usize], controls: &[Control]) {
    constant_op(b, c, target, controls, true);
}

/// Two's-complement negation of `target` when all `controls` hold.
pub fn negate(b: &mut CircuitBuilder, target: &[usize], controls: &[Control]) {
    for &q in target {
        b.mcx(controls, q);
    }
    add_const(b, 1, target, controls);
}

/// `dst ^= src`, bit by bit.
pub fn copy(b: &mut CircuitBuilder, src: &[usize], dst: &[usize]) {
    for (&s, &d) in src.iter().zip(dst) {
        b.cx(s, d);
    }
}

/// Stand-alone adder on registers `a`, `b` (width `m`), plus `out` for the
/// full variant and `ctrl` for the controlled one.
pub fn build_adder(spec: AdderSpec) -> Result<Circuit> {
    let m = spec.width;
    if m == 0 {
        return Err(Error::Width("adder width must be at least 1".into()));
    }
    let mut b = CircuitBuilder::new();
    let a = b.add_register("a", m)?.qubits();
    let t = b.add_register("b", m)?.qubits();
    let addend: Vec<Option<usize>> = a.into_iter().map(Some).collect();
    b.begin("adder");
    match spec.variant {
        AdderVariant::Full => {
            let out = b.add_register("out", 1)?.offset;
            add(&mut b, &addend, &t, Some(out), &[]);
        }
        AdderVariant::Modular => add(&mut b, &addend, &t, None, &[]),
        AdderVariant::Reversed => sub(&mut b, &addend, &t, None, &[]),
        AdderVariant::Controlled => {
            let ctrl = b.add_register("ctrl", 1)?.offset;
            add(&mut b, &addend, &t, None, &[Control::on(ctrl)]);
        }
    }
    b.end();
    b.finish()
}

/// `b -> b + c mod 2^m` on register `b`; the optional `ctrl` register holds
/// one qubit per entry of `polarity` (control on 1 when `true`).
pub fn build_constant_adder(c: u128, m: usize, polarity: &[bool]) -> Result<Circuit> {
    if m == 0 || m > 127 {
        return Err(Error::Width(format!("constant adder width {m} not in 1..=127")));
    }
    if c >> m != 0 {
        return Err(Error::Domain(format!("constant {c} does not fit {m} bits")));
    }
    let mut b = CircuitBuilder::new();
    let t = b.add_register("b", m)?.qubits();
    let controls: Vec<Control> = if polarity.is_empty() {
        Vec::new()
    } else {
        let r = b.add_register("ctrl", polarity.len())?;
        polarity.iter().enumerate().map(|(i, &p)| Control::when(r.qubit(i), p)).collect()
    };
    b.begin("constant-adder");
    add_const(&mut b, c, &t, &controls);
    b.end();
    b.finish()
}
