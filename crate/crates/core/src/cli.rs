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

//! Command-line front end: argument types, command execution and output
//! formatting. The binary only parses arguments and maps errors to exit
//! codes.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::classical::error_bound;
use crate::error::{Error, Result};
use crate::fixedpoint::{nr_reciprocal, nr_sqrt, plouffe_arccot, plouffe_cos, CosFormat, FixedPoint};
use crate::func::{build_angle, build_cos, build_recip, build_sqrt, FuncCircuit};
use crate::hhl::{build_solver, classical_solution, max_error, run_circuit, Diagnostic, Loading, PoissonProblem};
use crate::resources::{complexity_curves, curves_csv, resource_report};

/// Environment variable naming the directory for relative output paths.
pub const OUTPUT_DIR_VAR: &str = "QFPS_OUTPUT_DIR";

/// Exit status for usage and domain errors.
pub const EXIT_USAGE: i32 = 2;
/// Exit status for runs that cannot complete (postselection, hygiene,
/// resource limits).
pub const EXIT_INFEASIBLE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "qfps", version, about = "Simulated quantum Fast Poisson Solver")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve the 1-D Poisson problem for a right-hand side.
    Solve(SolveArgs),
    /// Evaluate one function circuit against its classical oracle.
    Func(FuncArgs),
    /// Print resource counts, cost formulas and error bounds.
    Report(ReportArgs),
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    /// Grid register width, `N = 2^n` intervals.
    #[arg(long)]
    pub n: usize,
    /// Fraction bits of the eigenvalue register.
    #[arg(long, default_value_t = 6)]
    pub f: usize,
    /// Eigenvalue left shift before the angle computation.
    #[arg(long, default_value_t = 0)]
    pub shift: usize,
    /// Comma-separated right-hand side, one entry per grid point.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["rhs_file", "random"])]
    pub rhs: Option<String>,
    /// File holding the right-hand side (numbers separated by commas or
    /// whitespace, or a JSON array).
    #[arg(long)]
    pub rhs_file: Option<PathBuf>,
    /// Draw a random right-hand side from `--seed`.
    #[arg(long, conflicts_with = "rhs_file")]
    pub random: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Load eigenvalues and angles by lookup instead of arithmetic.
    #[arg(long)]
    pub simplified: bool,
    /// Write the JSON document here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Write the forward circuit as a text netlist.
    #[arg(long)]
    pub emit_netlist: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Function {
    Sqrt,
    Recip,
    Cos,
    Arccot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct FuncArgs {
    pub which: Function,
    /// Register width (sqrt, recip) or output digits (arccot).
    #[arg(long)]
    pub m: Option<usize>,
    /// Input in binary notation, radix point allowed for arccot.
    #[arg(long)]
    pub x: Option<String>,
    /// Angle register width for cos.
    #[arg(long)]
    pub n: Option<usize>,
    /// Grid index for cos.
    #[arg(long)]
    pub j: Option<u64>,
    /// Fraction bits of the cos output.
    #[arg(long, default_value_t = 3)]
    pub frac: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value_t = 6)]
    pub f: usize,
    #[arg(long, default_value_t = 0)]
    pub shift: usize,
    /// Problem dimension.
    #[arg(long, default_value_t = 1)]
    pub d: usize,
    /// Print complexity curves as CSV instead of the report.
    #[arg(long)]
    pub curves: bool,
    /// Smoothness exponent for the curves.
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    #[arg(long, default_value_t = 8)]
    pub dmax: usize,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Exit status for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ImpossibleOutcome { .. } | Error::DirtyAncilla(_) | Error::Resource(_) => EXIT_INFEASIBLE,
        _ => EXIT_USAGE,
    }
}

/// Rounds every float in `v` to 12 significant digits.
pub fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64 number");
            let r: f64 = format!("{x:.11e}").parse().expect("formatted float");
            *v = serde_json::Number::from_f64(r).map_or(Value::Null, Value::Number);
        }
        Value::Array(a) => a.iter_mut().for_each(round_floats),
        Value::Object(o) => o.values_mut().for_each(round_floats),
        _ => {}
    }
}

/// Pretty JSON with floats at 12 significant digits.
pub fn to_json<T: Serialize>(doc: &T) -> Result<String> {
    let mut v = serde_json::to_value(doc).map_err(|e| Error::Domain(e.to_string()))?;
    round_floats(&mut v);
    let mut s = serde_json::to_string_pretty(&v).map_err(|e| Error::Domain(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Resolves relative paths against `QFPS_OUTPUT_DIR` when it is set.
pub fn output_path(p: &Path) -> PathBuf {
    match std::env::var_os(OUTPUT_DIR_VAR) {
        Some(dir) if p.is_relative() => Path::new(&dir).join(p),
        _ => p.to_path_buf(),
    }
}

fn write_file(p: &Path, text: &str) -> Result<()> {
    let p = output_path(p);
    if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| Error::Resource(format!("{}: {e}", parent.display())))?;
    }
    fs::write(&p, text).map_err(|e| Error::Resource(format!("{}: {e}", p.display())))
}

/// Parses numbers separated by commas and/or whitespace, or a JSON array.
pub fn parse_rhs(text: &str) -> Result<Vec<f64>> {
    let t = text.trim();
    if t.starts_with('[') {
        return serde_json::from_str(t).map_err(|e| Error::Domain(format!("rhs: {e}")));
    }
    t.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<f64>().map_err(|_| Error::Domain(format!("rhs entry `{s}` is not a number"))))
        .collect()
}

/// Random right-hand side with a zero boundary entry.
pub fn random_rhs(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v: Vec<f64> = (0..1usize << n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    v[0] = 0.0;
    v
}

/// Output of one command: standard output text and exit status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, code: 0 }
    }
}

pub fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Solve(a) => cmd_solve(&a),
        Command::Func(a) => cmd_func(&a),
        Command::Report(a) => cmd_report(&a),
    }
}

#[derive(Serialize)]
struct SolveDoc {
    command: &'static str,
    n: usize,
    f: usize,
    shift: usize,
    loading: &'static str,
    rhs: Vec<f64>,
    amplitudes: Vec<[f64; 2]>,
    success_probability: f64,
    predicted_probability: f64,
    repetition_estimate: f64,
    classical_reference: Vec<f64>,
    max_abs_error: f64,
    error_bound: f64,
    diagnostics: Vec<Diagnostic>,
    eigen_register: Vec<EigenReading>,
    qubits: usize,
    gates: usize,
    peak_support: usize,
}

#[derive(Serialize)]
struct EigenReading {
    value: u64,
    lambda_hat: f64,
    probability: f64,
}

pub fn cmd_solve(a: &SolveArgs) -> Result<Outcome> {
    let rhs = match (&a.rhs, &a.rhs_file, a.random) {
        (Some(s), None, false) => parse_rhs(s)?,
        (None, Some(p), false) => {
            let text = fs::read_to_string(p).map_err(|e| Error::Domain(format!("{}: {e}", p.display())))?;
            parse_rhs(&text)?
        }
        (None, None, true) => random_rhs(a.n, a.seed),
        _ => return Err(Error::Domain("give exactly one of --rhs, --rhs-file, --random".into())),
    };
    let problem = PoissonProblem::from_real(a.n, a.f, a.shift, &rhs)?;
    let loading = if a.simplified { Loading::Lookup } else { Loading::Arithmetic };
    let sc = build_solver(&problem, loading)?;
    if let Some(p) = &a.emit_netlist {
        write_file(p, &sc.circuit.netlist())?;
    }
    let sol = run_circuit(&problem, &sc)?;

    let exact = classical_solution(&problem)?;
    let norm = exact.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    let max_abs_error = max_error(&sol.amplitudes, &exact);
    let bound = error_bound(a.f as u32, a.shift as u32)
        .with_angle_bits(problem.angle_bits() as u32)
        .amplitude_bound(norm);
    let scale = (-(a.f as f64)).exp2();
    let doc = SolveDoc {
        command: "solve",
        n: a.n,
        f: a.f,
        shift: a.shift,
        loading: if a.simplified { "lookup" } else { "arithmetic" },
        rhs: problem.rhs.iter().map(|c| c.re).collect(),
        amplitudes: sol.amplitudes.iter().map(|c| [c.re, c.im]).collect(),
        success_probability: sol.success_probability,
        predicted_probability: sol.predicted_probability,
        repetition_estimate: sol.repetition_estimate,
        classical_reference: exact.iter().map(|x| x.re / norm).collect(),
        max_abs_error,
        error_bound: bound,
        diagnostics: sol.diagnostics,
        eigen_register: sol
            .eigen_register
            .iter()
            .map(|&(v, p)| EigenReading { value: v as u64, lambda_hat: v as f64 * scale, probability: p })
            .collect(),
        qubits: sol.qubits,
        gates: sol.gates,
        peak_support: sol.peak_support,
    };
    let text = to_json(&doc)?;
    match &a.output {
        Some(p) => {
            write_file(p, &text)?;
            Ok(Outcome::ok(String::new()))
        }
        None => Ok(Outcome::ok(text)),
    }
}

/// Result of evaluating one function input.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FuncDoc {
    pub command: &'static str,
    pub function: String,
    pub input: String,
    /// Circuit output in binary notation.
    pub binary: String,
    pub decimal: f64,
    pub oracle: String,
    pub matches: bool,
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| Error::Domain(format!("missing --{flag}")))
}

fn integer_input(text: &str, m: usize) -> Result<u64> {
    let x = FixedPoint::parse_binary(text, false)?;
    if x.frac() != 0 || x.width() as usize != m {
        return Err(Error::Domain(format!("input `{text}` must be {m} binary digits")));
    }
    Ok(x.bits())
}

fn circuit_output(c: &FuncCircuit, x: FixedPoint) -> Result<FixedPoint> {
    c.evaluate_fixed(x)
}

/// Evaluates `which` on the circuit and the oracle.
pub fn evaluate_function(a: &FuncArgs) -> Result<FuncDoc> {
    let (input, got, oracle): (String, FixedPoint, FixedPoint) = match a.which {
        Function::Sqrt => {
            let m = need(a.m, "m")?;
            let text = a.x.as_deref().ok_or_else(|| Error::Domain("missing --x".into()))?;
            let x = integer_input(text, m)?;
            let c = build_sqrt(m)?;
            let got = circuit_output(&c, FixedPoint::from_bits(x, m as u32, 0, false)?)?;
            let (root, _) = nr_sqrt(x, m as u32)?;
            (text.into(), got, FixedPoint::from_bits(root, m as u32, m as u32 / 2, false)?)
        }
        Function::Recip => {
            let m = need(a.m, "m")?;
            let text = a.x.as_deref().ok_or_else(|| Error::Domain("missing --x".into()))?;
            let x = integer_input(text, m)?;
            if x == 0 {
                return Err(Error::DivisionByZero);
            }
            let c = build_recip(m)?;
            let got = circuit_output(&c, FixedPoint::from_bits(x, m as u32, 0, false)?)?;
            (text.into(), got, FixedPoint::from_bits(nr_reciprocal(x, m as u32)?, m as u32, m as u32, false)?)
        }
        Function::Cos => {
            let n = need(a.n, "n")?;
            let j = need(a.j, "j")?;
            if n == 0 || n > 16 || j >> n != 0 {
                return Err(Error::Domain(format!("index {j} does not fit {n} bits")));
            }
            let c = build_cos(n, a.frac, None)?;
            let got = circuit_output(&c, FixedPoint::from_bits(j, n as u32, 0, false)?)?;
            let oracle = plouffe_cos(j, n as u32, CosFormat::new(n as u32, a.frac as u32))?.value;
            (j.to_string(), got, oracle)
        }
        Function::Arccot => {
            let text = a.x.as_deref().ok_or_else(|| Error::Domain("missing --x".into()))?;
            let x = FixedPoint::parse_binary(text, false)?;
            if x.bits() == 0 {
                return Err(Error::Domain("arccot input must be positive".into()));
            }
            let m = a.m.unwrap_or(2);
            let frac = x.frac() as usize;
            let c = build_angle(x.width() as usize - frac, frac, m)?;
            let got = circuit_output(&c, x)?;
            (text.into(), got, plouffe_arccot(x, m as u32)?)
        }
    };
    let name = format!("{:?}", a.which).to_lowercase();
    let render = |v: &FixedPoint| {
        let s = v.to_binary_string();
        // Reciprocals are written with their (zero) integer digit.
        if a.which == Function::Recip {
            format!("0{s}")
        } else {
            s
        }
    };
    Ok(FuncDoc {
        command: "func",
        function: name,
        input,
        binary: render(&got),
        decimal: got.to_f64(),
        oracle: render(&oracle),
        matches: got == oracle,
    })
}

pub fn cmd_func(a: &FuncArgs) -> Result<Outcome> {
    let doc = evaluate_function(a)?;
    let stdout = match a.format {
        Format::Json => to_json(&doc)?,
        Format::Text => format!(
            "{}\t{}\toracle {}\t{}\n",
            doc.binary,
            doc.decimal,
            doc.oracle,
            if doc.matches { "match" } else { "MISMATCH" }
        ),
    };
    Ok(Outcome { stdout, code: if doc.matches { 0 } else { EXIT_INFEASIBLE } })
}

pub fn cmd_report(a: &ReportArgs) -> Result<Outcome> {
    let text = if a.curves {
        curves_csv(&complexity_curves(a.alpha, a.dmax)?)
    } else {
        let r = resource_report(a.n, a.f, a.shift, a.d)?;
        let mut v = serde_json::to_value(&r).map_err(|e| Error::Domain(e.to_string()))?;
        v["command"] = json!("report");
        to_json(&v)?
    };
    match &a.output {
        Some(p) => {
            write_file(p, &text)?;
            Ok(Outcome::ok(String::new()))
        }
        None => Ok(Outcome::ok(text)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_keeps_twelve_digits() {
        let mut v = json!({"a": [0.1234567890123456, 1.0], "b": 3});
        round_floats(&mut v);
        assert_eq!(v["a"][0].as_f64().unwrap(), 0.123456789012);
        assert_eq!(v["b"], json!(3));
    }

    #[test]
    fn rhs_parsing() {
        assert_eq!(parse_rhs("0, 1 2\n3").unwrap(), vec![0.0, 1.0, 2.0, 3.0]);
        assert_eq!(parse_rhs("[0, 0.5]").unwrap(), vec![0.0, 0.5]);
        assert!(parse_rhs("0,x").is_err());
    }

    #[test]
    fn random_rhs_is_reproducible() {
        assert_eq!(random_rhs(3, 7), random_rhs(3, 7));
        assert_eq!(random_rhs(3, 7)[0], 0.0);
    }
}
