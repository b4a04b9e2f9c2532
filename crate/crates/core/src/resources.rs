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

//! Qubit and gate accounting for the solver and its modules, the leading
//! term cost formulas, and complexity curves for the `d`-dimensional
//! problem.
//!
//! Measured counts are tallied from constructed circuits. Gates with at
//! most two controls count as one elementary gate; wider gates are charged
//! by a linear-depth decomposition with borrowed work qubits:
//!
//! * `k`-controlled NOT, `k >= 3`: `2k - 3` Toffoli gates.
//! * `k`-controlled single-qubit rotation, `k >= 2`: `2(k - 1)` Toffolis to
//!   compute and uncompute the conjunction plus one controlled rotation.
//! * swap: three CNOTs, each picking up the swap's controls.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::classical::{error_bound, ErrorModel};
use crate::error::{Error, Result};
use crate::func::{build_angle_with, build_evc, build_recip, build_sqrt};
use crate::arith::{build_adder, AdderSpec, AdderVariant};
use crate::fixedpoint::ArccotFormat;
use crate::hhl::{build_solver, Loading, PoissonProblem};
use crate::sim::{Circuit, Gate, GateKind};

fn mcx_cost(k: usize) -> usize {
    if k <= 2 {
        1
    } else {
        2 * k - 3
    }
}

/// Elementary gate cost of one gate.
pub fn elementary_cost(g: &Gate) -> usize {
    let k = g.controls.len();
    match g.kind {
        GateKind::X => mcx_cost(k),
        GateKind::Swap => {
            if k == 0 {
                3
            } else {
                2 + mcx_cost(k + 1)
            }
        }
        GateKind::H | GateKind::Phase(_) | GateKind::Ry(_) | GateKind::Unitary(_) => {
            if k <= 1 {
                1
            } else {
                2 * k - 1
            }
        }
    }
}

pub fn elementary_count(gates: &[Gate]) -> usize {
    gates.iter().map(elementary_cost).sum()
}

/// Number of distinct qubits acted on (targets or controls).
pub fn touched_qubits(gates: &[Gate]) -> usize {
    let mut seen = BTreeSet::new();
    for g in gates {
        seen.extend(g.targets().iter().copied());
        seen.extend(g.controls.iter().map(|c| c.qubit));
    }
    seen.len()
}

/// Measured cost of one pipeline stage or module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageCount {
    pub stage: String,
    pub qubits: usize,
    pub gates: usize,
    pub elementary: usize,
}

impl StageCount {
    pub fn of(stage: &str, gates: &[Gate]) -> Self {
        Self {
            stage: stage.into(),
            qubits: touched_qubits(gates),
            gates: gates.len(),
            elementary: elementary_count(gates),
        }
    }

    pub fn of_circuit(stage: &str, c: &Circuit) -> Self {
        let mut s = Self::of(stage, c.gates());
        s.qubits = c.layout().total();
        s
    }
}

fn labelled(c: &Circuit, name: &str) -> Vec<Gate> {
    c.labels()
        .iter()
        .filter(|l| l.name == name)
        .flat_map(|l| c.gates()[l.gates.clone()].iter().cloned())
        .collect()
}

/// Per-stage counts of the full solver for `problem`, including the
/// uncomputation half that the simulator applies in reverse.
pub fn measure_solver(problem: &PoissonProblem) -> Result<Vec<StageCount>> {
    let sc = build_solver(problem, Loading::Arithmetic)?;
    let c = &sc.circuit;
    let g = c.gates();
    let mut rows = vec![
        StageCount::of("sine", &labelled(c, "sine")),
        StageCount::of("evc", &labelled(c, "evc")),
        StageCount::of("kickback", &labelled(c, "kickback")),
        StageCount::of("angle", &g[sc.angle.clone()]),
        StageCount::of("rotation", &g[sc.rotation.clone()]),
    ];
    let undo: Vec<Gate> = g[sc.eigen.start..sc.angle.end].to_vec();
    rows.push(StageCount::of("uncomputation", &undo));
    let forward = StageCount::of("total", g);
    rows.push(StageCount {
        stage: "total".into(),
        qubits: c.layout().total(),
        gates: forward.gates + undo.len(),
        elementary: forward.elementary + elementary_count(&undo),
    });
    Ok(rows)
}

/// A cost formula, printed as written and evaluated at given widths.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClosedForm {
    pub module: String,
    pub qubits_formula: String,
    pub gates_formula: String,
    pub qubits: f64,
    pub gates: f64,
}

fn form(module: &str, qf: &str, q: f64, gf: &str, g: f64) -> ClosedForm {
    ClosedForm {
        module: module.into(),
        qubits_formula: qf.into(),
        gates_formula: gf.into(),
        qubits: q,
        gates: g,
    }
}

/// Leading terms of the module costs for grid width `n` and eigenvalue
/// width `m`. Values can be negative at small widths.
pub fn closed_forms(n: usize, m: usize) -> Vec<ClosedForm> {
    let (n, m) = (n as f64, m as f64);
    vec![
        form("S", "n+2", n + 2.0, "97n^2-745n", 97.0 * n * n - 745.0 * n),
        form("EVC", "m(n+4)", m * (n + 4.0), "33nm^2+64nm", 33.0 * n * m * m + 64.0 * n * m),
        form("Phase Kickback", "3m", 3.0 * m, "m^3/3+11m^2/2", m.powi(3) / 3.0 + 5.5 * m * m),
        form("Angle Computing", "m^2+3m", m * m + 3.0 * m, "34m^3-50m^2", 34.0 * m.powi(3) - 50.0 * m * m),
        form("Controlled R_y", "m+1", m + 1.0, "4m", 4.0 * m),
        form("Uncomputation", "m^2+nm", m * m + n * m, "34m^3+33nm^2", 34.0 * m.powi(3) + 33.0 * n * m * m),
        form("Total", "m^2+nm", m * m + n * m, "68m^3+66nm^2", 68.0 * m.powi(3) + 66.0 * n * m * m),
    ]
}

/// Leading-term gate counts of the single-function modules at width `m`.
pub fn module_forms(m: usize) -> Vec<ClosedForm> {
    let m = m as f64;
    vec![
        form("sqrt", "", f64::NAN, "33m^2/2+22m", 16.5 * m * m + 22.0 * m),
        form("cos", "", f64::NAN, "33m^2/2+32m", 16.5 * m * m + 32.0 * m),
        form("arccot", "", f64::NAN, "34m^2-50m", 34.0 * m * m - 50.0 * m),
        form("recip", "", f64::NAN, "34m", 34.0 * m),
    ]
}

/// Measured counts of the stand-alone modules at width `m`.
pub fn measure_module(name: &str, m: usize) -> Result<StageCount> {
    let c = match name {
        "adder" => build_adder(AdderSpec::new(m, AdderVariant::Full))?,
        "sqrt" => build_sqrt(m)?.circuit,
        "recip" => build_recip(m)?.circuit,
        // Narrowest grid for the width: `m = 2n + 2 + f` with `f` in {0, 1}.
        "evc" if m >= 4 => build_evc((m - 2) / 2, m)?.circuit,
        "angle" if m >= 2 => {
            let frac = m / 2;
            build_angle_with(m - frac - 1, frac, ArccotFormat::compact(m as u32, frac as u32))?.circuit
        }
        _ => return Err(Error::Domain(format!("unknown module `{name}`"))),
    };
    Ok(StageCount::of_circuit(name, &c))
}

/// Least-squares slope and intercept of `y` on `x`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    let k = x.len() as f64;
    let mx = x.iter().sum::<f64>() / k;
    let my = y.iter().sum::<f64>() / k;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// Slope of `log y` against `log x`.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    linear_fit(&lx, &ly).0
}

/// One sample of the complexity comparison at dimension `d`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CurveRow {
    pub d: usize,
    pub classical: f64,
    pub cao: f64,
    pub present: f64,
    pub hhl: f64,
}

/// Target accuracy of the curves, single precision.
pub const CURVE_EPSILON_BITS: f64 = 23.0;

/// Costs at `epsilon = 2^-23` with `N = epsilon^-alpha` and
/// `kappa = epsilon^(-2 alpha)`, for `d = 1..=dmax`.
pub fn complexity_curves(alpha: f64, dmax: usize) -> Result<Vec<CurveRow>> {
    if !(alpha > 0.0 && alpha.is_finite()) || dmax == 0 {
        return Err(Error::Domain("alpha must be positive and dmax at least 1".into()));
    }
    let l = CURVE_EPSILON_BITS * alpha;
    let kappa = (2.0 * l).exp2();
    let inv_eps = CURVE_EPSILON_BITS.exp2();
    Ok((1..=dmax)
        .map(|d| {
            let df = d as f64;
            CurveRow {
                d,
                classical: (l * df).exp2(),
                cao: df.max(l) * l.powi(3),
                present: kappa * df * l.powi(3),
                hhl: kappa * kappa * df * l * inv_eps,
            }
        })
        .collect())
}

pub fn curves_csv(rows: &[CurveRow]) -> String {
    let mut out = String::from("d,classical,cao,present,hhl\n");
    for r in rows {
        out.push_str(&format!("{},{:.12e},{:.12e},{:.12e},{:.12e}\n", r.d, r.classical, r.cao, r.present, r.hhl));
    }
    out
}

/// Widest eigenvalue register for which the solver is built and counted.
pub const MAX_MEASURED_BITS: usize = 24;

/// Measured and closed-form costs with the error budget of one
/// configuration.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResourceReport {
    pub n: usize,
    pub f: usize,
    pub shift: usize,
    pub d: usize,
    /// Width of the eigenvalue register.
    pub m: usize,
    pub angle_bits: usize,
    /// `None` when the circuit is too large to construct.
    pub measured: Option<Vec<StageCount>>,
    pub measured_skipped: bool,
    pub closed_form_note: String,
    pub closed_form: Vec<ClosedForm>,
    pub module_forms: Vec<ClosedForm>,
    pub qubit_class: String,
    pub gate_class: String,
    pub error: ErrorModel,
}

pub fn resource_report(n: usize, f: usize, shift: usize, d: usize) -> Result<ResourceReport> {
    if n == 0 || d == 0 {
        return Err(Error::Domain("n and d must be positive".into()));
    }
    let m = 2 * n + 2 + f;
    let measured = if m <= MAX_MEASURED_BITS && n <= 8 {
        let rhs = {
            let mut v = vec![0.0; 1 << n];
            v[1] = 1.0;
            v
        };
        let p = PoissonProblem::from_real(n, f, shift, &rhs)?;
        let rows = measure_solver(&p)?;
        Some(rows.into_iter().map(|r| scale(r, d)).collect())
    } else {
        None
    };
    Ok(ResourceReport {
        n,
        f,
        shift,
        d,
        m,
        angle_bits: m + shift,
        measured_skipped: measured.is_none(),
        measured,
        closed_form_note: "leading terms only".into(),
        closed_form: closed_forms(n, m),
        module_forms: module_forms(m),
        qubit_class: "O(d log^2(1/epsilon^alpha))".into(),
        gate_class: "O(kappa d log^3(1/epsilon^alpha))".into(),
        error: error_bound(f as u32, shift as u32).with_angle_bits((m + shift) as u32),
    })
}

/// `d` parallel copies of the one-dimensional circuit.
fn scale(mut r: StageCount, d: usize) -> StageCount {
    r.qubits *= d;
    r.gates *= d;
    r.elementary *= d;
    r
}
