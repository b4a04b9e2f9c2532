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

//! Exhaustive and sampled checks of the reversible arithmetic and function
//! circuits against the classical oracles.

use std::collections::BTreeMap;

use num_complex::Complex64;
use proptest::prelude::*;
use qfps::arith::*;
use qfps::fixedpoint::*;
use qfps::func::*;
use qfps::sim::*;

/// Runs `c` on a basis input; returns every register value, checking that
/// the output is a single basis state.
fn run(c: &Circuit, inputs: &[(&str, u128)]) -> BTreeMap<String, u128> {
    let mut s = SparseState::basis(c.layout().clone(), inputs).unwrap();
    s.apply(c).unwrap();
    assert_eq!(s.len(), 1, "basis input spread");
    s.layout()
        .registers()
        .iter()
        .map(|r| (r.name.clone(), s.read(r.register).probabilities[0].0))
        .collect()
}

fn assert_clean(out: &BTreeMap<String, u128>, named: &[&str]) {
    for (k, v) in out {
        if !named.contains(&k.as_str()) {
            assert_eq!(*v, 0, "register {k} left dirty");
        }
    }
}

#[test]
fn adders_exhaustive() {
    for m in 1..=6usize {
        let modulus = 1u128 << m;
        for variant in [AdderVariant::Full, AdderVariant::Modular, AdderVariant::Reversed, AdderVariant::Controlled] {
            let c = build_adder(AdderSpec::new(m, variant)).unwrap();
            for a in 0..modulus {
                for b in 0..modulus {
                    for ctrl in 0..=(variant == AdderVariant::Controlled) as u128 {
                        let mut inputs = vec![("a", a), ("b", b)];
                        if variant == AdderVariant::Controlled {
                            inputs.push(("ctrl", ctrl));
                        }
                        let out = run(&c, &inputs);
                        assert_eq!(out["a"], a);
                        let (want, carry) = match variant {
                            AdderVariant::Full => ((a + b) % modulus, (a + b) / modulus),
                            AdderVariant::Modular => ((a + b) % modulus, 0),
                            AdderVariant::Reversed => ((b + modulus - a) % modulus, 0),
                            AdderVariant::Controlled => ((b + ctrl * a) % modulus, 0),
                        };
                        assert_eq!(out["b"], want, "{variant:?} m={m} a={a} b={b}");
                        if variant == AdderVariant::Full {
                            assert_eq!(out["out"], carry);
                        }
                        assert_clean(&out, &["a", "b", "out", "ctrl"]);
                    }
                }
            }
        }
    }
}

#[test]
fn reversed_modular_adder_is_identity() {
    for m in 1..=6usize {
        let add = build_adder(AdderSpec::new(m, AdderVariant::Modular)).unwrap();
        let both = add.then(&add.inverse()).unwrap();
        for a in 0..1u128 << m {
            for b in 0..1u128 << m {
                let out = run(&both, &[("a", a), ("b", b)]);
                assert_eq!((out["a"], out["b"]), (a, b));
                assert_clean(&out, &["a", "b"]);
            }
        }
    }
}

#[test]
fn constant_adders_exhaustive() {
    for m in 1..=5usize {
        let modulus = 1u128 << m;
        for c in 0..modulus {
            let circ = build_constant_adder(c, m, &[true, false]).unwrap();
            for b in 0..modulus {
                for ctrl in 0..4u128 {
                    let out = run(&circ, &[("b", b), ("ctrl", ctrl)]);
                    let active = ctrl == 0b01;
                    assert_eq!(out["b"], if active { (b + c) % modulus } else { b });
                    assert_clean(&out, &["b", "ctrl"]);
                }
            }
        }
    }
}

#[test]
fn sqrt_circuit_exhaustive() {
    for m in [4usize, 6] {
        let c = build_sqrt(m).unwrap();
        for x in 0..1u64 << m {
            assert_eq!(c.evaluate(x as u128).unwrap(), nr_sqrt(x, m as u32).unwrap().0 as u128, "m={m} x={x}");
        }
    }
}

#[test]
fn reciprocal_circuit_exhaustive() {
    for m in [4usize, 5, 6] {
        let c = build_recip(m).unwrap();
        for x in 1..1u64 << m {
            assert_eq!(c.evaluate(x as u128).unwrap(), nr_reciprocal(x, m as u32).unwrap() as u128, "m={m} x={x}");
        }
    }
}

#[test]
fn evc_circuit_all_indices() {
    for n in 1..=3usize {
        for f in [0usize, 3] {
            let m = 2 * n + 2 + f;
            let c = build_evc(n, m).unwrap();
            for j in 0..1u64 << n {
                let want = eigenvalue_estimate(j, n as u32, f as u32, None).unwrap().bits() as u128;
                assert_eq!(c.evaluate(j as u128).unwrap(), want, "n={n} f={f} j={j}");
            }
        }
    }
}

#[test]
fn cosine_circuit_all_indices() {
    for n in 1..=3usize {
        let c = build_cos(n, 4, None).unwrap();
        for j in 0..1u64 << n {
            let want = plouffe_cos(j, n as u32, CosFormat::new(n as u32, 4)).unwrap().value;
            assert_eq!(c.evaluate_fixed(FixedPoint::from_bits(j, n as u32, 0, false).unwrap()).unwrap(), want);
        }
    }
}

#[test]
fn function_circuits_are_undone_by_their_inverse() {
    let circuits = [build_sqrt(4).unwrap(), build_recip(4).unwrap(), build_cos(2, 3, None).unwrap(), build_angle(2, 2, 3).unwrap()];
    for fc in &circuits {
        let width = fc.input_format.width;
        for x in 0..1u128 << width {
            let mut s = SparseState::basis(fc.circuit.layout().clone(), &[(fc.input.as_str(), x)]).unwrap();
            let start = s.clone();
            s.apply(&fc.circuit).unwrap();
            assert_eq!(s.len(), 1);
            s.apply(&fc.circuit.inverse()).unwrap();
            assert_eq!(s.entries().next().unwrap().0, start.entries().next().unwrap().0);
        }
    }
}

#[test]
fn evc_on_uniform_superposition() {
    let (n, m) = (2usize, 9usize);
    let c = build_evc(n, m).unwrap();
    let amps = vec![Complex64::new(0.5, 0.0); 4];
    let mut s = SparseState::with_register(c.circuit.layout().clone(), "j", &amps, &[]).unwrap();
    s.apply(&c.circuit).unwrap();
    assert_eq!(s.len(), 4);
    let j = c.circuit.register("j").unwrap();
    let lam = c.circuit.register("lambda").unwrap();
    for (k, a) in s.entries() {
        assert!((a - Complex64::new(0.5, 0.0)).norm() < 1e-12);
        let mut key = SparseState::basis(c.circuit.layout().clone(), &[]).unwrap();
        let _ = &mut key;
        let jv = (0..n).fold(0u64, |acc, i| acc | (((k[j.qubit(i) / 64] >> (j.qubit(i) % 64)) & 1) << i));
        let lv = (0..m).fold(0u64, |acc, i| acc | (((k[lam.qubit(i) / 64] >> (lam.qubit(i) % 64)) & 1) << i));
        assert_eq!(lv, eigenvalue_estimate(jv, n as u32, 3, None).unwrap().bits());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn wide_adders_add(m in 7usize..=16, a in any::<u64>(), b in any::<u64>()) {
        let mask = (1u128 << m) - 1;
        let (a, b) = (a as u128 & mask, b as u128 & mask);
        let c = build_adder(AdderSpec::new(m, AdderVariant::Modular)).unwrap();
        let out = run(&c, &[("a", a), ("b", b)]);
        prop_assert_eq!(out["b"], (a + b) & mask);
        prop_assert_eq!(out["a"], a);
    }

    #[test]
    fn wide_sqrt_matches_oracle(x in 0u64..1 << 10) {
        let c = build_sqrt(10).unwrap();
        prop_assert_eq!(c.evaluate(x as u128).unwrap(), nr_sqrt(x, 10).unwrap().0 as u128);
    }

    #[test]
    fn wide_reciprocal_matches_oracle(x in 1u64..1 << 9) {
        let c = build_recip(9).unwrap();
        prop_assert_eq!(c.evaluate(x as u128).unwrap(), nr_reciprocal(x, 9).unwrap() as u128);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn angle_circuit_matches_oracle(raw in 1u64..64) {
        // lambda on 4 integer and 2 fraction bits, 6 output digits.
        let c = build_angle(4, 2, 6).unwrap();
        let x = FixedPoint::from_bits(raw, 6, 2, false).unwrap();
        prop_assert_eq!(c.evaluate_fixed(x).unwrap(), plouffe_arccot(x, 6).unwrap());
    }
}
