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

//! Sparse computational-basis simulator, gate alphabet and circuit builder.

pub mod circuit;
pub mod dense;
pub mod gate;
pub mod layout;
pub mod state;

pub use circuit::{Circuit, CircuitBuilder, GateCounts, Label};
pub use dense::{max_distance, operator_on, to_matrix, unitarity_defect};
pub use gate::{Control, Gate, GateKind};
pub use layout::{QubitLayout, Register, RegisterDef};
pub use state::{RegisterReadout, SparseState, DEFAULT_TOLERANCE};
