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

//! Dense operators extracted from small circuits.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::circuit::Circuit;
use super::layout::{get_bit, set_bit};
use super::state::SparseState;
use crate::error::{Error, Result};

pub const MAX_DENSE_QUBITS: usize = 12;

/// Full unitary of `circuit`; column `k` is the image of basis state `k`.
pub fn to_matrix(circuit: &Circuit) -> Result<DMatrix<Complex64>> {
    let total = circuit.layout().total();
    if total > MAX_DENSE_QUBITS {
        return Err(Error::Resource(format!("{total} qubits exceeds the dense limit of {MAX_DENSE_QUBITS}")));
    }
    let qubits: Vec<usize> = (0..total).collect();
    operator_on(circuit, &qubits)
}

/// Restriction of `circuit` to the listed qubits, every other qubit
/// starting in |0>. Fails if some other qubit does not return to |0>.
/// Row/column index bit `i` corresponds to `qubits[i]`.
pub fn operator_on(circuit: &Circuit, qubits: &[usize]) -> Result<DMatrix<Complex64>> {
    let n = qubits.len();
    if n > MAX_DENSE_QUBITS {
        return Err(Error::Resource(format!("{n} qubits exceeds the dense limit of {MAX_DENSE_QUBITS}")));
    }
    let layout = circuit.layout().clone();
    let words = layout.words();
    let dim = 1usize << n;
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    for col in 0..dim {
        let mut key = vec![0u64; words];
        for (i, &q) in qubits.iter().enumerate() {
            set_bit(&mut key, q, (col >> i) & 1 == 1);
        }
        let mut s = SparseState::from_entries(layout.clone(), vec![(key, Complex64::new(1.0, 0.0))])?;
        s.set_tolerance(0.0);
        s.apply(circuit)?;
        for (k, a) in s.entries() {
            let mut rest = k.to_vec();
            let mut row = 0usize;
            for (i, &q) in qubits.iter().enumerate() {
                if get_bit(k, q) {
                    row |= 1 << i;
                }
                set_bit(&mut rest, q, false);
            }
            if rest.iter().any(|&w| w != 0) {
                if a.norm() > 1e-9 {
                    return Err(Error::DirtyAncilla(format!("column {col} leaves work qubits set")));
                }
                continue;
            }
            m[(row, col)] += a;
        }
    }
    Ok(m)
}

/// Largest entry of `U^dagger U - I`.
pub fn unitarity_defect(u: &DMatrix<Complex64>) -> f64 {
    let p = u.adjoint() * u;
    let mut worst: f64 = 0.0;
    for i in 0..p.nrows() {
        for j in 0..p.ncols() {
            let e = if i == j { p[(i, j)] - Complex64::new(1.0, 0.0) } else { p[(i, j)] };
            worst = worst.max(e.norm());
        }
    }
    worst
}

/// Largest entry-wise distance between two matrices of equal shape.
pub fn max_distance(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}
