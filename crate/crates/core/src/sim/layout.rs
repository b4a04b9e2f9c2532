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

//! Named registers over a flat qubit index space.

use crate::error::{Error, Result};

/// Contiguous block of qubits; qubit 0 is the least significant bit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Register {
    pub offset: usize,
    pub width: usize,
}

impl Register {
    pub fn qubit(&self, i: usize) -> usize {
        assert!(i < self.width, "bit {i} outside register of width {}", self.width);
        self.offset + i
    }

    pub fn qubits(&self) -> Vec<usize> {
        (self.offset..self.offset + self.width).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegisterDef {
    pub name: String,
    pub register: Register,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QubitLayout {
    registers: Vec<RegisterDef>,
    total: usize,
}

impl QubitLayout {
    pub fn new<S: AsRef<str>>(registers: &[(S, usize)]) -> Result<Self> {
        let mut layout = Self::default();
        for (name, width) in registers {
            layout.push(name.as_ref(), *width)?;
        }
        Ok(layout)
    }

    /// Appends a register after all existing ones.
    pub fn push(&mut self, name: &str, width: usize) -> Result<Register> {
        if width == 0 {
            return Err(Error::Width(format!("register `{name}` has zero width")));
        }
        if self.registers.iter().any(|r| r.name == name) {
            return Err(Error::LayoutMismatch(format!("duplicate register `{name}`")));
        }
        let register = Register { offset: self.total, width };
        self.registers.push(RegisterDef { name: name.to_string(), register });
        self.total += width;
        Ok(register)
    }

    pub fn total(&self) -> usize {
        self.total
    }

    /// Number of 64-bit words in a basis key.
    pub fn words(&self) -> usize {
        self.total.div_ceil(64).max(1)
    }

    pub fn registers(&self) -> &[RegisterDef] {
        &self.registers
    }

    pub fn register(&self, name: &str) -> Result<Register> {
        self.registers
            .iter()
            .find(|r| r.name == name)
            .map(|r| r.register)
            .ok_or_else(|| Error::UnknownRegister(name.to_string()))
    }

    /// Name of the register holding `qubit`.
    pub fn owner(&self, qubit: usize) -> Option<&str> {
        self.registers
            .iter()
            .find(|r| qubit >= r.register.offset && qubit < r.register.offset + r.register.width)
            .map(|r| r.name.as_str())
    }

    /// Basis key with the given register values, every other qubit zero.
    pub fn key(&self, values: &[(&str, u128)]) -> Result<Vec<u64>> {
        let mut key = vec![0u64; self.words()];
        for &(name, value) in values {
            let reg = self.register(name)?;
            if reg.width < 128 && value >> reg.width != 0 {
                return Err(Error::Width(format!(
                    "value {value} does not fit register `{name}` of width {}",
                    reg.width
                )));
            }
            for i in 0..reg.width.min(128) {
                if (value >> i) & 1 == 1 {
                    set_bit(&mut key, reg.offset + i, true);
                }
            }
        }
        Ok(key)
    }
}

#[inline]
pub(crate) fn get_bit(key: &[u64], q: usize) -> bool {
    (key[q >> 6] >> (q & 63)) & 1 == 1
}

#[inline]
pub(crate) fn set_bit(key: &mut [u64], q: usize, v: bool) {
    if v {
        key[q >> 6] |= 1u64 << (q & 63);
    } else {
        key[q >> 6] &= !(1u64 << (q & 63));
    }
}

#[inline]
pub(crate) fn flip_bit(key: &mut [u64], q: usize) {
    key[q >> 6] ^= 1u64 << (q & 63);
}

/// Reads up to 128 bits of `reg` out of a basis key.
pub(crate) fn read_bits(key: &[u64], reg: Register) -> u128 {
    (0..reg.width.min(128)).fold(0u128, |acc, i| acc | ((get_bit(key, reg.offset + i) as u128) << i))
}

/// Writes the low bits of `value` into `reg`.
pub(crate) fn write_bits(key: &mut [u64], reg: Register, value: u128) {
    for i in 0..reg.width.min(128) {
        set_bit(key, reg.offset + i, (value >> i) & 1 == 1);
    }
}
