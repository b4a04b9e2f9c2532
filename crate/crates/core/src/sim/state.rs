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

//! Computational-basis sparse state vector.
//!
//! Entries are kept in two parallel arrays: packed basis keys (`words`
//! 64-bit limbs per entry) and complex amplitudes. Permutation and
//! diagonal gates edit entries in place; mixing gates pair each entry
//! with its partner across the target bit through a hash index.

use num_complex::Complex64;
use rustc_hash::FxHashMap;

use super::circuit::{check_prefix, Circuit};
use super::gate::{Control, Gate, GateKind};
use super::layout::{flip_bit, get_bit, read_bits, set_bit, QubitLayout, Register};
use crate::error::{Error, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct SparseState {
    layout: QubitLayout,
    words: usize,
    keys: Vec<u64>,
    amps: Vec<Complex64>,
    tolerance: f64,
    leaked: f64,
    peak: usize,
}

/// Marginal distribution of one register.
#[derive(Clone, Debug, PartialEq)]
pub struct RegisterReadout {
    /// `(value, probability)` sorted by value.
    pub probabilities: Vec<(u128, f64)>,
    /// Amplitudes per value, present when the rest of the state factors out
    /// as a single basis state.
    pub amplitudes: Option<Vec<(u128, Complex64)>>,
}

impl RegisterReadout {
    pub fn probability(&self, value: u128) -> f64 {
        self.probabilities.iter().find(|p| p.0 == value).map_or(0.0, |p| p.1)
    }

    pub fn amplitude(&self, value: u128) -> Option<Complex64> {
        let amps = self.amplitudes.as_ref()?;
        Some(amps.iter().find(|a| a.0 == value).map_or(Complex64::new(0.0, 0.0), |a| a.1))
    }
}

impl SparseState {
    /// The all-zero basis state.
    pub fn zero(layout: QubitLayout) -> Self {
        let words = layout.words();
        Self {
            layout,
            words,
            keys: vec![0; words],
            amps: vec![Complex64::new(1.0, 0.0)],
            tolerance: DEFAULT_TOLERANCE,
            leaked: 0.0,
            peak: 1,
        }
    }

    /// Basis state with the named registers set, all others zero.
    pub fn basis(layout: QubitLayout, values: &[(&str, u128)]) -> Result<Self> {
        let key = layout.key(values)?;
        let mut s = Self::zero(layout);
        s.keys = key;
        Ok(s)
    }

    /// Superposition from explicit `(key, amplitude)` entries (not normalised).
    pub fn from_entries(layout: QubitLayout, entries: Vec<(Vec<u64>, Complex64)>) -> Result<Self> {
        let words = layout.words();
        let mut s = Self::zero(layout);
        s.keys.clear();
        s.amps.clear();
        let mut seen = FxHashMap::default();
        for (key, amp) in entries {
            if key.len() != words {
                return Err(Error::LayoutMismatch(format!("key has {} words, layout needs {words}", key.len())));
            }
            if let Some(i) = seen.get(&key) {
                s.amps[*i] += amp;
                continue;
            }
            seen.insert(key.clone(), s.amps.len());
            s.keys.extend_from_slice(&key);
            s.amps.push(amp);
        }
        s.drop_small();
        s.peak = s.len();
        Ok(s)
    }

    /// Loads `amplitudes` (indexed by register value) into `register`,
    /// with every other qubit at the values given in `fixed`.
    pub fn with_register(
        layout: QubitLayout,
        register: &str,
        amplitudes: &[Complex64],
        fixed: &[(&str, u128)],
    ) -> Result<Self> {
        let reg = layout.register(register)?;
        if reg.width < 64 && amplitudes.len() > 1usize << reg.width {
            return Err(Error::Width(format!("{} amplitudes for a {}-qubit register", amplitudes.len(), reg.width)));
        }
        let base = layout.key(fixed)?;
        let entries = amplitudes
            .iter()
            .enumerate()
            .map(|(v, &a)| {
                let mut k = base.clone();
                super::layout::write_bits(&mut k, reg, v as u128);
                (k, a)
            })
            .collect();
        Self::from_entries(layout, entries)
    }

    pub fn layout(&self) -> &QubitLayout {
        &self.layout
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn set_tolerance(&mut self, tol: f64) {
        self.tolerance = tol;
    }

    /// Number of stored basis entries.
    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    /// Largest support seen since construction.
    pub fn peak_support(&self) -> usize {
        self.peak
    }

    /// Squared norm discarded by pruning since the last normalisation.
    pub fn leaked_norm(&self) -> f64 {
        self.leaked
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Rescales to unit norm and clears the leak counter.
    pub fn normalize(&mut self) {
        let n = self.norm_sqr().sqrt();
        if n > 0.0 {
            for a in &mut self.amps {
                *a /= n;
            }
        }
        self.leaked = 0.0;
    }

    pub fn entries(&self) -> impl Iterator<Item = (&[u64], Complex64)> + '_ {
        self.keys.chunks_exact(self.words).zip(self.amps.iter().copied())
    }

    pub fn amplitude(&self, key: &[u64]) -> Complex64 {
        self.entries().find(|(k, _)| *k == key).map_or(Complex64::new(0.0, 0.0), |(_, a)| a)
    }

    /// Moves the state onto a larger layout that starts with the current one.
    pub fn extend_layout(&mut self, layout: QubitLayout) -> Result<()> {
        check_prefix(&self.layout, &layout)?;
        let words = layout.words();
        if words != self.words {
            let mut keys = Vec::with_capacity(self.amps.len() * words);
            for k in self.keys.chunks_exact(self.words) {
                keys.extend_from_slice(k);
                keys.extend(std::iter::repeat(0).take(words - self.words));
            }
            self.keys = keys;
            self.words = words;
        }
        self.layout = layout;
        Ok(())
    }

    pub fn apply(&mut self, circuit: &Circuit) -> Result<()> {
        check_prefix(circuit.layout(), &self.layout)?;
        for g in circuit.gates() {
            self.apply_gate(g)?;
        }
        Ok(())
    }

    /// Applies a slice of gates in order.
    pub fn apply_gates(&mut self, gates: &[Gate]) -> Result<()> {
        gates.iter().try_for_each(|g| self.apply_gate(g))
    }

    /// Applies the inverse of a slice of gates (reverse order, inverted).
    pub fn apply_inverse_gates(&mut self, gates: &[Gate]) -> Result<()> {
        gates.iter().rev().try_for_each(|g| self.apply_gate(&g.inverse()))
    }

    pub fn apply_gate(&mut self, g: &Gate) -> Result<()> {
        let total = self.layout.total();
        if g.max_qubit() >= total {
            return Err(Error::QubitOutOfRange { qubit: g.max_qubit(), total });
        }
        let w = self.words;
        let t = g.target();
        match &g.kind {
            GateKind::X => {
                for k in self.keys.chunks_exact_mut(w) {
                    if controls_hold(k, &g.controls) {
                        flip_bit(k, t);
                    }
                }
            }
            GateKind::Swap => {
                let u = g.targets()[1] as usize;
                for k in self.keys.chunks_exact_mut(w) {
                    if controls_hold(k, &g.controls) && get_bit(k, t) != get_bit(k, u) {
                        flip_bit(k, t);
                        flip_bit(k, u);
                    }
                }
            }
            GateKind::Phase(a) => {
                let z = Complex64::from_polar(1.0, *a);
                for (k, amp) in self.keys.chunks_exact(w).zip(self.amps.iter_mut()) {
                    if get_bit(k, t) && controls_hold(k, &g.controls) {
                        *amp *= z;
                    }
                }
            }
            _ => {
                let m = g.matrix().expect("single-target gate");
                self.mix(t, &g.controls, m);
            }
        }
        Ok(())
    }

    fn mix(&mut self, t: usize, controls: &[Control], m: [Complex64; 4]) {
        let w = self.words;
        let n = self.amps.len();
        let mut keys = Vec::with_capacity(self.keys.len() * 2);
        let mut amps = Vec::with_capacity(n * 2);
        {
            let index: FxHashMap<&[u64], usize> =
                self.keys.chunks_exact(w).enumerate().map(|(i, k)| (k, i)).collect();
            let mut done = vec![false; n];
            let mut scratch = vec![0u64; w];
            for i in 0..n {
                if done[i] {
                    continue;
                }
                let k = &self.keys[i * w..(i + 1) * w];
                if !controls_hold(k, controls) {
                    keys.extend_from_slice(k);
                    amps.push(self.amps[i]);
                    continue;
                }
                scratch.copy_from_slice(k);
                flip_bit(&mut scratch, t);
                let partner = index.get(scratch.as_slice()).copied();
                let zero = Complex64::new(0.0, 0.0);
                let pa = partner.map_or(zero, |j| {
                    done[j] = true;
                    self.amps[j]
                });
                let (a0, a1) = if get_bit(k, t) { (pa, self.amps[i]) } else { (self.amps[i], pa) };
                let n0 = m[0] * a0 + m[1] * a1;
                let n1 = m[2] * a0 + m[3] * a1;
                for (bit, val) in [(false, n0), (true, n1)] {
                    if val.norm() < self.tolerance {
                        self.leaked += val.norm_sqr();
                        continue;
                    }
                    scratch.copy_from_slice(k);
                    set_bit(&mut scratch, t, bit);
                    keys.extend_from_slice(&scratch);
                    amps.push(val);
                }
            }
        }
        self.keys = keys;
        self.amps = amps;
        self.peak = self.peak.max(self.amps.len());
    }

    fn drop_small(&mut self) {
        let w = self.words;
        let mut j = 0;
        for i in 0..self.amps.len() {
            let a = self.amps[i];
            if a.norm() < self.tolerance {
                self.leaked += a.norm_sqr();
                continue;
            }
            self.amps[j] = a;
            self.keys.copy_within(i * w..(i + 1) * w, j * w);
            j += 1;
        }
        self.amps.truncate(j);
        self.keys.truncate(j * w);
    }

    /// Keeps the branch where `qubit == value`, renormalised, and returns
    /// its probability.
    pub fn postselect(&self, qubit: usize, value: bool) -> Result<(SparseState, f64)> {
        let total = self.layout.total();
        if qubit >= total {
            return Err(Error::QubitOutOfRange { qubit, total });
        }
        let all = self.norm_sqr();
        let mut out = self.clone();
        out.keys.clear();
        out.amps.clear();
        for (k, a) in self.entries() {
            if get_bit(k, qubit) == value {
                out.keys.extend_from_slice(k);
                out.amps.push(a);
            }
        }
        let p = if all > 0.0 { out.norm_sqr() / all } else { 0.0 };
        if out.is_empty() || p < 1e-14 {
            return Err(Error::ImpossibleOutcome { qubit, value, probability: p });
        }
        out.normalize();
        Ok((out, p))
    }

    pub fn read_register(&self, name: &str) -> Result<RegisterReadout> {
        let reg = self.layout.register(name)?;
        Ok(self.read(reg))
    }

    pub fn read(&self, reg: Register) -> RegisterReadout {
        let all = self.norm_sqr();
        let mut probs: FxHashMap<u128, f64> = FxHashMap::default();
        let mut amps: Vec<(u128, Complex64)> = Vec::new();
        let mut rest: Option<Vec<u64>> = None;
        let mut pure = true;
        for (k, a) in self.entries() {
            let v = read_bits(k, reg);
            *probs.entry(v).or_default() += a.norm_sqr() / all;
            if pure {
                let mut r = k.to_vec();
                for q in reg.qubits() {
                    set_bit(&mut r, q, false);
                }
                match &rest {
                    None => rest = Some(r),
                    Some(r0) if *r0 == r => {}
                    _ => pure = false,
                }
                amps.push((v, a / all.sqrt()));
            }
        }
        let mut probabilities: Vec<(u128, f64)> = probs.into_iter().collect();
        probabilities.sort_by_key(|p| p.0);
        amps.sort_by_key(|a| a.0);
        RegisterReadout { probabilities, amplitudes: pure.then_some(amps) }
    }

    /// Probability that some qubit outside `keep` is set.
    pub fn weight_outside(&self, keep: &[Register]) -> f64 {
        let mut mask = vec![0u64; self.layout.words()];
        for r in keep {
            for q in r.qubits() {
                set_bit(&mut mask, q, true);
            }
        }
        let dirty: f64 = self
            .entries()
            .filter(|(k, _)| k.iter().zip(&mask).any(|(w, m)| w & !m != 0))
            .map(|(_, a)| a.norm_sqr())
            .sum();
        dirty / self.norm_sqr()
    }

    /// Whether `reg` holds `value` with probability 1 (within `tol`).
    pub fn register_is(&self, reg: Register, value: u128, tol: f64) -> bool {
        let r = self.read(reg);
        (r.probability(value) - 1.0).abs() <= tol
    }

    /// Dense amplitude vector, for layouts of at most 24 qubits.
    pub fn to_dense(&self) -> Result<Vec<Complex64>> {
        let total = self.layout.total();
        if total > 24 {
            return Err(Error::Resource(format!("dense vector of {total} qubits")));
        }
        let mut v = vec![Complex64::new(0.0, 0.0); 1 << total];
        for (k, a) in self.entries() {
            v[k[0] as usize] += a;
        }
        Ok(v)
    }
}

#[inline]
fn controls_hold(key: &[u64], controls: &[Control]) -> bool {
    controls.iter().all(|c| get_bit(key, c.qubit as usize) == c.on)
}
