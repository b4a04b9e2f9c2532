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

//! Gate alphabet: X, H, phase shift, Y rotation, swap and arbitrary 2x2
//! unitaries, each with any number of positive or negative controls.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Control qubit; `on = false` is a negative (open) control.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Control {
    pub qubit: u32,
    pub on: bool,
}

impl Control {
    pub fn on(qubit: usize) -> Self {
        Self { qubit: qubit as u32, on: true }
    }

    pub fn off(qubit: usize) -> Self {
        Self { qubit: qubit as u32, on: false }
    }

    pub fn when(qubit: usize, on: bool) -> Self {
        Self { qubit: qubit as u32, on }
    }
}

pub type Controls = SmallVec<[Control; 2]>;

#[derive(Clone, Debug, PartialEq)]
pub enum GateKind {
    X,
    H,
    /// `diag(1, e^{i angle})`.
    Phase(f64),
    /// `exp(-i angle Y / 2)`.
    Ry(f64),
    Swap,
    /// Row-major 2x2 unitary.
    Unitary(Box<[Complex64; 4]>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    targets: [u32; 2],
    pub controls: Controls,
}

const UNITARY_TOL: f64 = 1e-10;

impl Gate {
    pub fn new(kind: GateKind, targets: &[usize], controls: &[Control]) -> Result<Self> {
        let arity = if kind == GateKind::Swap { 2 } else { 1 };
        if targets.len() != arity {
            return Err(Error::InvalidGate(format!(
                "{kind:?} expects {arity} target(s), got {}",
                targets.len()
            )));
        }
        if arity == 2 && targets[0] == targets[1] {
            return Err(Error::InvalidGate("swap targets coincide".into()));
        }
        if let GateKind::Unitary(u) = &kind {
            let dev = unitary_deviation(u);
            if dev > UNITARY_TOL {
                return Err(Error::NonUnitary(dev));
            }
        }
        let gate = Self::raw(kind, targets, controls);
        gate.check_disjoint()?;
        Ok(gate)
    }

    /// Unchecked constructor used by the circuit builders.
    pub(crate) fn raw(kind: GateKind, targets: &[usize], controls: &[Control]) -> Self {
        let t0 = targets[0] as u32;
        let t1 = targets.get(1).map_or(u32::MAX, |&t| t as u32);
        Self { kind, targets: [t0, t1], controls: controls.iter().copied().collect() }
    }

    pub fn targets(&self) -> &[u32] {
        if self.targets[1] == u32::MAX {
            &self.targets[..1]
        } else {
            &self.targets[..]
        }
    }

    pub fn target(&self) -> usize {
        self.targets[0] as usize
    }

    pub(crate) fn check_disjoint(&self) -> Result<()> {
        for (i, c) in self.controls.iter().enumerate() {
            if self.targets().contains(&c.qubit) {
                return Err(Error::InvalidGate(format!("qubit {} is both control and target", c.qubit)));
            }
            if self.controls[..i].iter().any(|d| d.qubit == c.qubit) {
                return Err(Error::InvalidGate(format!("qubit {} controls twice", c.qubit)));
            }
        }
        Ok(())
    }

    pub fn max_qubit(&self) -> usize {
        let t = self.targets().iter().copied().max().unwrap_or(0);
        self.controls.iter().map(|c| c.qubit).fold(t, u32::max) as usize
    }

    pub fn inverse(&self) -> Self {
        let kind = match &self.kind {
            GateKind::Phase(a) => GateKind::Phase(-a),
            GateKind::Ry(a) => GateKind::Ry(-a),
            GateKind::Unitary(u) => GateKind::Unitary(Box::new([
                u[0].conj(),
                u[2].conj(),
                u[1].conj(),
                u[3].conj(),
            ])),
            k => k.clone(),
        };
        Self { kind, targets: self.targets, controls: self.controls.clone() }
    }

    /// Whether the gate maps basis states to basis states.
    pub fn is_permutation(&self) -> bool {
        matches!(self.kind, GateKind::X | GateKind::Swap)
    }

    /// 2x2 matrix of single-target gates (row-major).
    pub fn matrix(&self) -> Option<[Complex64; 4]> {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        match &self.kind {
            GateKind::X => Some([c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]),
            GateKind::H => Some([
                c(FRAC_1_SQRT_2, 0.),
                c(FRAC_1_SQRT_2, 0.),
                c(FRAC_1_SQRT_2, 0.),
                c(-FRAC_1_SQRT_2, 0.),
            ]),
            GateKind::Phase(a) => Some([c(1., 0.), c(0., 0.), c(0., 0.), Complex64::from_polar(1.0, *a)]),
            GateKind::Ry(a) => {
                let (s, co) = (a / 2.0).sin_cos();
                Some([c(co, 0.), c(-s, 0.), c(s, 0.), c(co, 0.)])
            }
            GateKind::Unitary(u) => Some(**u),
            GateKind::Swap => None,
        }
    }
}

fn unitary_deviation(u: &[Complex64; 4]) -> f64 {
    // U^dagger U - I
    let a = u[0].norm_sqr() + u[2].norm_sqr() - 1.0;
    let d = u[1].norm_sqr() + u[3].norm_sqr() - 1.0;
    let b = u[0].conj() * u[1] + u[2].conj() * u[3];
    a.abs().max(d.abs()).max(b.norm())
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            GateKind::X => write!(f, "X")?,
            GateKind::H => write!(f, "H")?,
            GateKind::Phase(a) => write!(f, "P({a:.12})")?,
            GateKind::Ry(a) => write!(f, "RY({a:.12})")?,
            GateKind::Swap => write!(f, "SWAP")?,
            GateKind::Unitary(u) => {
                write!(f, "U(")?;
                for (i, z) in u.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{:.12}{:+.12}i", z.re, z.im)?;
                }
                write!(f, ")")?;
            }
        }
        let t: Vec<String> = self.targets().iter().map(|t| t.to_string()).collect();
        write!(f, " t={}", t.join(","))?;
        if !self.controls.is_empty() {
            let c: Vec<String> = self
                .controls
                .iter()
                .map(|c| format!("{}{}", if c.on { "" } else { "!" }, c.qubit))
                .collect();
            write!(f, " c={}", c.join(","))?;
        }
        Ok(())
    }
}
