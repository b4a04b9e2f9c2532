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

//! Circuits over a named qubit layout and the builder used by every
//! circuit constructor in the crate.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::Range;

use num_complex::Complex64;

use super::gate::{Control, Gate, GateKind};
use super::layout::{QubitLayout, Register};
use crate::error::{Error, Result};

/// Named span of gates, used to attribute counts to sub-circuits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Label {
    pub name: String,
    pub gates: Range<usize>,
}

#[derive(Clone, Debug)]
pub struct Circuit {
    layout: QubitLayout,
    gates: Vec<Gate>,
    labels: Vec<Label>,
}

/// Gate tally keyed by kind name and number of controls.
pub type GateCounts = BTreeMap<(String, usize), usize>;

impl Circuit {
    pub fn new(layout: QubitLayout, gates: Vec<Gate>) -> Result<Self> {
        let c = Self { layout, gates, labels: Vec::new() };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<()> {
        let total = self.layout.total();
        for g in &self.gates {
            let q = g.max_qubit();
            if q >= total {
                return Err(Error::QubitOutOfRange { qubit: q, total });
            }
            g.check_disjoint()?;
        }
        Ok(())
    }

    pub fn layout(&self) -> &QubitLayout {
        &self.layout
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Gate span of the first label called `name`.
    pub fn label_range(&self, name: &str) -> Option<Range<usize>> {
        self.labels.iter().find(|l| l.name == name).map(|l| l.gates.clone())
    }

    pub fn register(&self, name: &str) -> Result<Register> {
        self.layout.register(name)
    }

    /// Gates in reverse order with inverted parameters.
    pub fn inverse(&self) -> Self {
        let n = self.gates.len();
        let gates = self.gates.iter().rev().map(Gate::inverse).collect();
        let labels = self
            .labels
            .iter()
            .map(|l| Label { name: format!("{}^-1", l.name), gates: n - l.gates.end..n - l.gates.start })
            .collect();
        Self { layout: self.layout.clone(), gates, labels }
    }

    /// `self` followed by `other`; `other`'s layout must be a prefix of ours.
    pub fn then(&self, other: &Circuit) -> Result<Self> {
        check_prefix(other.layout(), &self.layout)?;
        let mut out = self.clone();
        let off = out.gates.len();
        out.gates.extend(other.gates.iter().cloned());
        out.labels.extend(
            other.labels.iter().map(|l| Label { name: l.name.clone(), gates: l.gates.start + off..l.gates.end + off }),
        );
        Ok(out)
    }

    pub fn counts(&self) -> GateCounts {
        count_gates(&self.gates)
    }

    pub fn label_counts(&self, name: &str) -> GateCounts {
        let mut out = GateCounts::new();
        for l in self.labels.iter().filter(|l| l.name == name) {
            for (k, v) in count_gates(&self.gates[l.gates.clone()]) {
                *out.entry(k).or_default() += v;
            }
        }
        out
    }

    /// Text netlist: register header lines followed by one gate per line.
    pub fn netlist(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# qubits {}", self.layout.total());
        for r in self.layout.registers() {
            let _ = writeln!(s, "# register {} {} {}", r.name, r.register.offset, r.register.width);
        }
        for g in &self.gates {
            let _ = writeln!(s, "{g}");
        }
        s
    }
}

fn count_gates(gates: &[Gate]) -> GateCounts {
    let mut out = GateCounts::new();
    for g in gates {
        let name = match g.kind {
            GateKind::X => "X",
            GateKind::H => "H",
            GateKind::Phase(_) => "P",
            GateKind::Ry(_) => "RY",
            GateKind::Swap => "SWAP",
            GateKind::Unitary(_) => "U",
        };
        *out.entry((name.to_string(), g.controls.len())).or_default() += 1;
    }
    out
}

pub(crate) fn check_prefix(inner: &QubitLayout, outer: &QubitLayout) -> Result<()> {
    let ok = inner.registers().len() <= outer.registers().len()
        && inner.registers().iter().zip(outer.registers()).all(|(a, b)| a == b);
    if ok {
        Ok(())
    } else {
        Err(Error::LayoutMismatch("circuit layout is not a prefix of the target layout".into()))
    }
}

/// Incremental circuit construction with an ancilla pool, a stack of
/// ambient controls and labelled spans.
#[derive(Clone, Debug, Default)]
pub struct CircuitBuilder {
    layout: QubitLayout,
    gates: Vec<Gate>,
    labels: Vec<Label>,
    open: Vec<(String, usize)>,
    free: Vec<usize>,
    pools: usize,
    ambient: Vec<Control>,
    ambient_marks: Vec<usize>,
}

impl CircuitBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_layout(layout: QubitLayout) -> Self {
        Self { layout, ..Self::default() }
    }

    pub fn layout(&self) -> &QubitLayout {
        &self.layout
    }

    pub fn add_register(&mut self, name: &str, width: usize) -> Result<Register> {
        self.layout.push(name, width)
    }

    pub fn register(&self, name: &str) -> Result<Register> {
        self.layout.register(name)
    }

    /// Borrows `width` clean qubits, growing the layout when the pool is short.
    pub fn alloc(&mut self, width: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(width);
        while out.len() < width {
            match self.free.pop() {
                Some(q) => out.push(q),
                None => break,
            }
        }
        let missing = width - out.len();
        if missing > 0 {
            let name = format!("anc{}", self.pools);
            self.pools += 1;
            let reg = self.layout.push(&name, missing).expect("fresh pool name");
            out.extend(reg.qubits());
        }
        out
    }

    /// Returns qubits to the pool. They must already be back in |0>.
    pub fn free(&mut self, qubits: &[usize]) {
        self.free.extend(qubits.iter().rev().copied());
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Position to pass to [`append_inverse`](Self::append_inverse).
    pub fn mark(&self) -> usize {
        self.gates.len()
    }

    /// Appends the inverse of every gate emitted since `from`.
    pub fn append_inverse(&mut self, from: usize) {
        let inv: Vec<Gate> = self.gates[from..].iter().rev().map(Gate::inverse).collect();
        self.gates.extend(inv);
    }

    /// Appends the inverse of the gates in `from..to`.
    ///
    /// Qubits freed inside the range are used again by the inverse, so
    /// anything still live at this point must have been allocated before
    /// `from`.
    pub fn append_inverse_range(&mut self, from: usize, to: usize) {
        let inv: Vec<Gate> = self.gates[from..to].iter().rev().map(Gate::inverse).collect();
        self.gates.extend(inv);
    }

    /// Every gate added until the matching pop also gets these controls.
    pub fn push_controls(&mut self, controls: &[Control]) {
        self.ambient_marks.push(self.ambient.len());
        self.ambient.extend_from_slice(controls);
    }

    pub fn pop_controls(&mut self) {
        let m = self.ambient_marks.pop().expect("unbalanced pop_controls");
        self.ambient.truncate(m);
    }

    pub fn begin(&mut self, name: &str) {
        self.open.push((name.to_string(), self.gates.len()));
    }

    pub fn end(&mut self) {
        let (name, start) = self.open.pop().expect("unbalanced label end");
        self.labels.push(Label { name, gates: start..self.gates.len() });
    }

    pub fn gate(&mut self, kind: GateKind, targets: &[usize], controls: &[Control]) {
        let g = if self.ambient.is_empty() {
            Gate::raw(kind, targets, controls)
        } else {
            let mut all = self.ambient.clone();
            all.extend_from_slice(controls);
            Gate::raw(kind, targets, &all)
        };
        self.gates.push(g);
    }

    /// Appends ready-made gates, adding the ambient controls.
    pub fn extend<I: IntoIterator<Item = Gate>>(&mut self, gates: I) {
        for g in gates {
            if self.ambient.is_empty() {
                self.gates.push(g);
            } else {
                let targets: Vec<usize> = g.targets().iter().map(|&t| t as usize).collect();
                self.gate(g.kind, &targets, &g.controls);
            }
        }
    }

    pub fn x(&mut self, t: usize) {
        self.gate(GateKind::X, &[t], &[]);
    }

    pub fn cx(&mut self, c: usize, t: usize) {
        self.gate(GateKind::X, &[t], &[Control::on(c)]);
    }

    pub fn ccx(&mut self, a: usize, b: usize, t: usize) {
        self.gate(GateKind::X, &[t], &[Control::on(a), Control::on(b)]);
    }

    pub fn mcx(&mut self, controls: &[Control], t: usize) {
        self.gate(GateKind::X, &[t], controls);
    }

    pub fn h(&mut self, t: usize) {
        self.gate(GateKind::H, &[t], &[]);
    }

    pub fn phase(&mut self, t: usize, angle: f64, controls: &[Control]) {
        self.gate(GateKind::Phase(angle), &[t], controls);
    }

    pub fn ry(&mut self, t: usize, angle: f64, controls: &[Control]) {
        self.gate(GateKind::Ry(angle), &[t], controls);
    }

    pub fn swap(&mut self, a: usize, b: usize) {
        self.gate(GateKind::Swap, &[a, b], &[]);
    }

    pub fn unitary(&mut self, t: usize, u: [Complex64; 4], controls: &[Control]) -> Result<()> {
        let g = Gate::new(GateKind::Unitary(Box::new(u)), &[t], controls)?;
        self.gate(g.kind, &[t], controls);
        Ok(())
    }

    /// Copies the gates of `c` (whose layout must be a prefix of ours).
    pub fn append(&mut self, c: &Circuit) -> Result<()> {
        check_prefix(c.layout(), &self.layout)?;
        let off = self.gates.len();
        for g in c.gates() {
            let targets: Vec<usize> = g.targets().iter().map(|&t| t as usize).collect();
            self.gate(g.kind.clone(), &targets, &g.controls);
        }
        self.labels.extend(
            c.labels().iter().map(|l| Label { name: l.name.clone(), gates: l.gates.start + off..l.gates.end + off }),
        );
        Ok(())
    }

    pub fn finish(self) -> Result<Circuit> {
        if !self.open.is_empty() || !self.ambient_marks.is_empty() {
            return Err(Error::InvalidGate("unbalanced label or control scope".into()));
        }
        let c = Circuit { layout: self.layout, gates: self.gates, labels: self.labels };
        c.validate()?;
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pool_reuses_freed_qubits() {
        let mut b = CircuitBuilder::new();
        b.add_register("x", 2).unwrap();
        let a = b.alloc(3);
        assert_eq!(a, vec![2, 3, 4]);
        b.free(&a[1..]);
        let c = b.alloc(3);
        assert_eq!(&c[..2], &[3, 4]);
        assert_eq!(c[2], 5);
        assert_eq!(b.layout().total(), 6);
    }

    #[test]
    fn ambient_controls_and_inverse() {
        let mut b = CircuitBuilder::new();
        b.add_register("q", 3).unwrap();
        b.push_controls(&[Control::off(2)]);
        let m = b.mark();
        b.ry(0, 0.5, &[Control::on(1)]);
        b.append_inverse(m);
        b.pop_controls();
        let c = b.finish().unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.gates()[1].kind, GateKind::Ry(-0.5));
        assert_eq!(c.gates()[1].controls.len(), 2);
    }

    #[test]
    fn finish_rejects_out_of_range() {
        let mut b = CircuitBuilder::new();
        b.add_register("q", 1).unwrap();
        b.cx(0, 3);
        assert!(matches!(b.finish(), Err(Error::QubitOutOfRange { .. })));
    }

    #[test]
    fn netlist_has_header() {
        let mut b = CircuitBuilder::new();
        b.add_register("B", 2).unwrap();
        b.h(1);
        let text = b.finish().unwrap().netlist();
        assert!(text.starts_with("# qubits 2\n# register B 0 2\nH t=1\n"));
    }
}
