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

//! Simulation of a modular quantum Fast Poisson Solver.

pub mod arith;
pub mod classical;
pub mod cli;
pub mod error;
pub mod fixedpoint;
pub mod func;
pub mod hhl;
pub mod resources;
pub mod sim;
pub mod spectral;

pub use error::{Error, Result};
