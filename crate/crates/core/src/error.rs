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

//! Error type shared by every module of the crate.

use thiserror::Error;

/// Everything that can go wrong while building, simulating or analysing
/// a solver circuit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("division by zero")]
    DivisionByZero,
    /// A register width or bit pattern does not fit the declared format.
    #[error("width error: {0}")]
    Width(String),
    #[error("layout mismatch: {0}")]
    LayoutMismatch(String),
    #[error("unknown register `{0}`")]
    UnknownRegister(String),
    #[error("qubit {qubit} is outside a layout of {total} qubits")]
    QubitOutOfRange { qubit: usize, total: usize },
    #[error("gate is not unitary (deviation {0:e})")]
    NonUnitary(f64),
    #[error("invalid gate: {0}")]
    InvalidGate(String),
    /// The requested computation exceeds what can be materialised.
    #[error("resource limit: {0}")]
    Resource(String),
    /// Post-selection on an outcome whose probability is (numerically) zero.
    #[error("impossible outcome: qubit {qubit} = {value} has probability {probability:e}")]
    ImpossibleOutcome {
        qubit: usize,
        value: bool,
        probability: f64,
    },
    /// Work registers were not returned to their initial state.
    #[error("ancilla hygiene violated: {0}")]
    DirtyAncilla(String),
}

pub type Result<T> = std::result::Result<T, Error>;
