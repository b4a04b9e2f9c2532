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

//! Bit-exact classical reference arithmetic.
//!
//! Every function computed by a reversible circuit in this crate has a
//! counterpart here that follows the same digit recurrence with the same
//! truncation rules, so that circuit outputs can be compared bit for bit.
//!
//! * [`nr_sqrt`]: digit-by-digit square root (subtract `01`-extended trial,
//!   undo when negative).
//! * [`nr_reciprocal`]: non-restoring division of `1` by an integer.
//! * [`plouffe_cos`]: half-angle recursion `a <- ±sqrt((1 ± a)/2)` driven by
//!   the bits of `j/N`, least significant bit first.
//! * [`plouffe_arccot`]: cotangent doubling `a <- (a - 1/a)/2` whose signs are
//!   the binary digits of `arccot(x)/pi`.

use std::fmt;

use crate::error::{Error, Result};

/// Two's-complement (or unsigned) fixed-point number with an explicit
/// width and fraction-bit count.
///
/// The payload occupies the low `width` bits of `bits`; the represented value
/// is the sign-extended payload divided by `2^frac`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FixedPoint {
    bits: u64,
    width: u32,
    frac: u32,
    signed: bool,
}

fn mask(width: u32) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

impl FixedPoint {
    pub fn from_bits(bits: u64, width: u32, frac: u32, signed: bool) -> Result<Self> {
        if width == 0 || width > 64 {
            return Err(Error::Width(format!("width {width} not in 1..=64")));
        }
        if frac > width {
            return Err(Error::Width(format!("{frac} fraction bits exceed width {width}")));
        }
        if bits & !mask(width) != 0 {
            return Err(Error::Width(format!("payload {bits:#b} wider than {width} bits")));
        }
        Ok(Self { bits, width, frac, signed })
    }

    /// Builds a value from its scaled integer `raw = value * 2^frac`.
    pub fn from_raw(raw: i128, width: u32, frac: u32, signed: bool) -> Result<Self> {
        if width == 0 || width > 64 {
            return Err(Error::Width(format!("width {width} not in 1..=64")));
        }
        let (lo, hi) = if signed {
            (-(1i128 << (width - 1)), (1i128 << (width - 1)) - 1)
        } else {
            (0, (1i128 << width) - 1)
        };
        if raw < lo || raw > hi {
            return Err(Error::Width(format!(
                "raw value {raw} not representable in {width} bits"
            )));
        }
        Self::from_bits((raw as u64) & mask(width), width, frac, signed)
    }

    /// Truncates `x` toward zero onto the format.
    pub fn from_f64(x: f64, width: u32, frac: u32, signed: bool) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::Domain(format!("{x} is not finite")));
        }
        let raw = (x * (frac as f64).exp2()).trunc() as i128;
        Self::from_raw(raw, width, frac, signed)
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn frac(&self) -> u32 {
        self.frac
    }

    pub fn is_signed(&self) -> bool {
        self.signed
    }

    /// Scaled integer value (sign-extended when signed).
    pub fn raw(&self) -> i128 {
        if self.signed && self.width > 0 && (self.bits >> (self.width - 1)) & 1 == 1 {
            self.bits as i128 - (1i128 << self.width)
        } else {
            self.bits as i128
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.raw() as f64 / (self.frac as f64).exp2()
    }

    /// Binary digits with the radix point inserted, e.g. `11.011` or `.01`.
    pub fn to_binary_string(&self) -> String {
        let mut s = String::with_capacity(self.width as usize + 1);
        for i in (0..self.width).rev() {
            if i + 1 == self.frac {
                s.push('.');
            }
            s.push(if (self.bits >> i) & 1 == 1 { '1' } else { '0' });
        }
        s
    }

    /// Parses binary notation such as `01.00`, `.01` or `0111`; the width is
    /// the digit count and the fraction length the digits after the point.
    pub fn parse_binary(text: &str, signed: bool) -> Result<Self> {
        let text = text.trim();
        let (int_part, frac_part) = match text.split_once('.') {
            Some((a, b)) => (a, b),
            None => (text, ""),
        };
        let digits: String = format!("{int_part}{frac_part}");
        if digits.is_empty() || !digits.chars().all(|c| c == '0' || c == '1') {
            return Err(Error::Domain(format!("`{text}` is not a binary string")));
        }
        let width = digits.len() as u32;
        if width > 64 {
            return Err(Error::Width(format!("`{text}` has more than 64 digits")));
        }
        let bits = u64::from_str_radix(&digits, 2).expect("validated digits");
        Self::from_bits(bits, width, frac_part.len() as u32, signed)
    }
}

impl fmt::Display for FixedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_binary_string())
    }
}

/// `ceil(log2(x))` with `ceil_log2(0) = ceil_log2(1) = 0`.
pub fn ceil_log2(x: u32) -> u32 {
    if x <= 1 {
        0
    } else {
        32 - (x - 1).leading_zeros()
    }
}

/// Default working fraction width for a recursion emitting `out_frac` bits
/// over `steps` iterations.
pub fn guard_frac(out_frac: u32, steps: u32) -> u32 {
    out_frac + 2 * ceil_log2(steps) + 4
}

// ---------------------------------------------------------------------------
// Square root
// ---------------------------------------------------------------------------

/// One iteration of the digit-by-digit square root.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SqrtStep {
    /// Partial remainder after bringing down the next pair of bits.
    pub remainder: u128,
    /// Trial subtrahend `(root << 2) | 01`.
    pub trial: u128,
    /// Whether the trial subtraction stayed non-negative (emitted bit).
    pub bit: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqrtOutcome {
    pub root: u128,
    pub remainder: u128,
    pub steps: Vec<SqrtStep>,
}

/// Integer square root of a `2 * pairs`-bit radicand, one output bit per
/// pair, most significant first.
pub fn sqrt_recurrence(radicand: u128, pairs: u32) -> Result<SqrtOutcome> {
    if pairs == 0 || pairs > 63 {
        return Err(Error::Width(format!("{pairs} digit pairs not in 1..=63")));
    }
    if radicand >> (2 * pairs) != 0 {
        return Err(Error::Width(format!(
            "radicand {radicand} exceeds {} bits",
            2 * pairs
        )));
    }
    let mut remainder = 0u128;
    let mut root = 0u128;
    let mut steps = Vec::with_capacity(pairs as usize);
    for i in (0..pairs).rev() {
        remainder = (remainder << 2) | ((radicand >> (2 * i)) & 0b11);
        let trial = (root << 2) | 1;
        let bit = remainder >= trial;
        steps.push(SqrtStep { remainder, trial, bit });
        if bit {
            remainder -= trial;
        }
        root = (root << 1) | bit as u128;
    }
    Ok(SqrtOutcome { root, remainder, steps })
}

/// Square root of an `m`-bit integer `x` extended by `m` zero bits: returns
/// `(floor(sqrt(x * 2^m)), x * 2^m - root^2)`.
///
/// Read with `m/2` fraction bits the root is `sqrt(x)` truncated.
pub fn nr_sqrt(x: u64, m: u32) -> Result<(u64, u128)> {
    if m == 0 || m % 2 != 0 || m > 62 {
        return Err(Error::Domain(format!("register width {m} must be even and in 2..=62")));
    }
    if x >> m != 0 {
        return Err(Error::Domain(format!("{x} does not fit in {m} bits")));
    }
    let out = sqrt_recurrence((x as u128) << m, m)?;
    Ok((out.root as u64, out.remainder))
}

/// Square root in the same fixed-point format as the input.
///
/// The radicand is extended by `width` zero bits, the integer root taken
/// and shifted right by `(width - frac) / 2` to restore the radix point.
pub fn sqrt_fixed(x: FixedPoint) -> Result<FixedPoint> {
    if x.is_signed() && x.raw() < 0 {
        return Err(Error::Domain("negative radicand".into()));
    }
    let (w, f) = (x.width(), x.frac());
    if w % 2 != 0 || (w - f) % 2 != 0 {
        return Err(Error::Domain(format!(
            "width {w} and integer bits {} must both be even",
            w - f
        )));
    }
    let (root, _) = nr_sqrt(x.raw() as u64, w)?;
    FixedPoint::from_bits(root >> ((w - f) / 2), w, f, x.is_signed())
}

// ---------------------------------------------------------------------------
// Reciprocal
// ---------------------------------------------------------------------------

/// Quotient bits and partial remainders of a non-restoring division of `1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReciprocalTrace {
    /// Quotient digits, integer digit first.
    pub quotient_bits: Vec<bool>,
    /// Partial remainders as `(m+1)`-bit two's-complement patterns, one per
    /// add/subtract.
    pub remainders: Vec<u64>,
    /// Final `m`-bit fraction (saturated when the integer digit is set).
    pub quotient: u64,
    pub saturated: bool,
}

/// Non-restoring division of `1` by `x`, producing `m + 1` quotient digits.
///
/// The remainder is doubled and the divisor subtracted while the remainder
/// is non-negative, added while it is negative; each digit is the inverted
/// sign of the remainder.
pub fn reciprocal_trace(x: u64, m: u32) -> Result<ReciprocalTrace> {
    if m == 0 || m > 62 {
        return Err(Error::Domain(format!("register width {m} not in 1..=62")));
    }
    if x == 0 {
        return Err(Error::DivisionByZero);
    }
    if x >> m != 0 {
        return Err(Error::Domain(format!("{x} does not fit in {m} bits")));
    }
    let d = x as i128;
    let modulus = 1i128 << (m + 1);
    let mut r = 1i128 - d;
    let mut quotient_bits = Vec::with_capacity(m as usize + 1);
    let mut remainders = Vec::with_capacity(m as usize + 1);
    for step in 0..=m {
        if step > 0 {
            r = if r >= 0 { 2 * r - d } else { 2 * r + d };
        }
        remainders.push(r.rem_euclid(modulus) as u64);
        quotient_bits.push(r >= 0);
    }
    let saturated = quotient_bits[0];
    let quotient = if saturated {
        mask(m)
    } else {
        quotient_bits[1..]
            .iter()
            .fold(0u64, |acc, &b| (acc << 1) | b as u64)
    };
    Ok(ReciprocalTrace {
        quotient_bits,
        remainders,
        quotient,
        saturated,
    })
}

/// `floor(2^m / x)` on `m` fraction bits; `x = 1` saturates to all ones.
pub fn nr_reciprocal(x: u64, m: u32) -> Result<u64> {
    Ok(reciprocal_trace(x, m)?.quotient)
}

/// `floor(2^k / d)` by the same non-restoring recurrence, `k + 1` digits.
///
/// A zero divisor yields all-ones digits, which is what the reversible
/// divider produces as well.
pub fn divide_power_of_two(k: u32, d: u128) -> u128 {
    let d = d as i128;
    let mut r = 1i128 - d;
    let mut q = 0u128;
    for step in 0..=k {
        if step > 0 {
            r = if r >= 0 { 2 * r - d } else { 2 * r + d };
        }
        q = (q << 1) | (r >= 0) as u128;
    }
    q
}

// ---------------------------------------------------------------------------
// Cosine
// ---------------------------------------------------------------------------

/// Fraction widths of the cosine recursion: `frac` output bits, `guard`
/// working bits (`guard >= frac`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CosFormat {
    pub frac: u32,
    pub guard: u32,
}

impl CosFormat {
    /// Working width from [`guard_frac`] for an `n`-step recursion.
    pub fn new(n: u32, frac: u32) -> Self {
        Self { frac, guard: guard_frac(frac, n) }
    }

    /// Signed output width: two integer bits (sign and units) plus `frac`.
    pub fn width(&self) -> u32 {
        self.frac + 2
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CosOutcome {
    /// `cos(j pi / 2^n)` on two integer bits and `frac` fraction bits; a
    /// negative result is the negation of the truncated magnitude.
    pub value: FixedPoint,
    /// Intermediate `a_0 .. a_n` as scaled integers at the guard width.
    pub trace: Vec<i128>,
}

/// Half-angle recursion for `cos(j pi / 2^n)`.
///
/// Bits of `j` are consumed least significant first; after `k` steps the
/// state approximates `cos(pi * (0.v_{k-1}..v_0)_2)`. Every square root is
/// the truncating digit recurrence at `format.guard` fraction bits.
pub fn plouffe_cos(j: u64, n: u32, format: CosFormat) -> Result<CosOutcome> {
    if n == 0 || n > 32 {
        return Err(Error::Domain(format!("bit count {n} not in 1..=32")));
    }
    if j >> n != 0 {
        return Err(Error::Domain(format!("j = {j} does not fit in {n} bits")));
    }
    let g = format.guard;
    if format.frac > g || g == 0 || g > 60 {
        return Err(Error::Width(format!(
            "guard width {g} must lie in frac..=60 (frac = {})",
            format.frac
        )));
    }
    let one = 1i128 << g;
    let mut a = one;
    let mut trace = vec![a];
    let mut last_root = 0u128;
    let mut last_negative = false;
    for k in 0..n {
        let v = (j >> k) & 1 == 1;
        let y = if v { one - a } else { one + a };
        debug_assert!(y >= 0);
        // sqrt((1 ± a)/2) at g fraction bits: the radicand y carries g
        // fraction bits of 2*sqrt-argument, so scale by 2^(g-1).
        let root = sqrt_recurrence((y as u128) << (g - 1), g + 1)?.root;
        a = if v { -(root as i128) } else { root as i128 };
        trace.push(a);
        last_root = root;
        last_negative = v;
    }
    let magnitude = (last_root >> (g - format.frac)) as i128;
    let raw = if last_negative { -magnitude } else { magnitude };
    let value = FixedPoint::from_raw(raw, format.width(), format.frac, true)?;
    Ok(CosOutcome { value, trace })
}

/// Eigenvalue estimate `2 N^2 (1 - cos(j pi / N))` in the eigenvalue-register
/// format: `m = 2n + 2 + f` bits, `f` of them fractional.
///
/// The cosine is evaluated to `f + 2n + 1` fraction bits so that the scaling
/// by `2N^2 = 2^(2n+1)` is a pure radix shift.
pub fn eigenvalue_estimate(j: u64, n: u32, f: u32, guard: Option<u32>) -> Result<FixedPoint> {
    let cos_frac = f + 2 * n + 1;
    let format = CosFormat {
        frac: cos_frac,
        guard: guard.unwrap_or_else(|| guard_frac(cos_frac, n)),
    };
    let c = plouffe_cos(j, n, format)?.value.raw();
    let raw = (1i128 << cos_frac) - c;
    FixedPoint::from_raw(raw, 2 * n + 2 + f, f, false)
}

// ---------------------------------------------------------------------------
// Arc cotangent
// ---------------------------------------------------------------------------

/// Working format of the cotangent-doubling recursion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ArccotFormat {
    /// Integer bits of the state registers, sign included.
    pub int_bits: u32,
    /// Fraction bits of the state registers.
    pub frac_bits: u32,
    /// Emitted digits of `arccot(x)/pi`.
    pub out_bits: u32,
}

impl ArccotFormat {
    /// Default format for inputs below `2^input_int_bits`: guard fraction
    /// bits from [`guard_frac`] and enough integer bits to hold `1/a` for the
    /// smallest non-zero state.
    pub fn new(input_int_bits: u32, out_bits: u32) -> Self {
        let frac_bits = guard_frac(out_bits, out_bits);
        Self {
            int_bits: (input_int_bits + 1).max(frac_bits + 2),
            frac_bits,
            out_bits,
        }
    }

    /// Format whose state registers are `width` bits with `frac` fraction
    /// bits, emitting `width` digits. Digits are exact only while the state
    /// stays in range; used for cost scaling.
    pub fn compact(width: u32, frac: u32) -> Self {
        Self {
            int_bits: width - frac,
            frac_bits: frac,
            out_bits: width,
        }
    }

    pub fn state_width(&self) -> u32 {
        self.int_bits + self.frac_bits
    }

    /// Digits of the internal reciprocal `floor(2^(2G) / |a|)`.
    pub fn quotient_bits(&self) -> u32 {
        2 * self.frac_bits + 1
    }
}

/// Recursion state: a finite fixed-point value or the `-inf` sentinel
/// reached after an exact zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CotState {
    Finite(i128),
    Sentinel,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ArccotOutcome {
    /// `arccot(x)/pi` as an unsigned pure fraction of `out_bits` digits.
    pub omega: FixedPoint,
    pub digits: Vec<bool>,
    pub states: Vec<CotState>,
}

fn wrap_signed(v: i128, width: u32) -> i128 {
    let m = 1i128 << width;
    let r = v.rem_euclid(m);
    if r >= m / 2 {
        r - m
    } else {
        r
    }
}

/// Digit recursion for `arccot(x)/pi` on a raw positive input
/// `x = raw / 2^input_frac` (a negative `input_frac` scales up).
///
/// Digit `w_i` is 1 exactly when the state is finite and not positive. The
/// reciprocal is truncated toward zero, the halving is an arithmetic shift.
pub fn plouffe_arccot_raw(raw: i128, input_frac: i32, format: ArccotFormat) -> Result<ArccotOutcome> {
    if raw <= 0 {
        return Err(Error::Domain("arccot input must be positive".into()));
    }
    let g = format.frac_bits as i32;
    let shift = g - input_frac;
    if shift < 0 {
        return Err(Error::Width(format!(
            "input has {input_frac} fraction bits, format only {g}"
        )));
    }
    let width = format.state_width();
    if width > 120 || format.quotient_bits() > 120 || format.out_bits == 0 || format.out_bits > 64 {
        return Err(Error::Width("arccot format too wide".into()));
    }
    let a0 = raw << shift;
    if a0 >> (width - 1) != 0 {
        return Err(Error::Width(format!("input does not fit {} integer bits", format.int_bits)));
    }
    let k = 2 * format.frac_bits;
    let mut state = CotState::Finite(a0);
    let mut digits = Vec::with_capacity(format.out_bits as usize);
    let mut states = Vec::with_capacity(format.out_bits as usize);
    for _ in 0..format.out_bits {
        states.push(state);
        match state {
            CotState::Sentinel => digits.push(false),
            CotState::Finite(a) => {
                digits.push(a <= 0);
                state = if a == 0 {
                    CotState::Sentinel
                } else {
                    let q = divide_power_of_two(k, a.unsigned_abs()) as i128;
                    let d = if a < 0 { a + q } else { a - q };
                    CotState::Finite(wrap_signed(d, width) >> 1)
                };
            }
        }
    }
    let bits = digits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64);
    let omega = FixedPoint::from_bits(bits, format.out_bits, format.out_bits, false)?;
    Ok(ArccotOutcome { omega, digits, states })
}

/// `arccot(x)/pi` truncated to `out_bits` digits in the default format.
pub fn plouffe_arccot(lambda_hat: FixedPoint, out_bits: u32) -> Result<FixedPoint> {
    let raw = lambda_hat.raw();
    if raw <= 0 {
        return Err(Error::Domain("arccot input must be positive".into()));
    }
    let int_bits = lambda_hat.width() - lambda_hat.frac();
    let format = ArccotFormat::new(int_bits, out_bits);
    Ok(plouffe_arccot_raw(raw, lambda_hat.frac() as i32, format)?.omega)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fx(s: &str) -> FixedPoint {
        FixedPoint::parse_binary(s, false).unwrap()
    }

    #[test]
    fn binary_notation_round_trips() {
        for s in ["11.011", ".01", "0111", "0.0101", "01.00"] {
            assert_eq!(FixedPoint::parse_binary(s, true).unwrap().to_binary_string(), s);
        }
        let c = FixedPoint::parse_binary("11.011", true).unwrap();
        assert_eq!(c.to_f64(), -0.625);
    }

    #[test]
    fn from_raw_rejects_out_of_range() {
        assert!(FixedPoint::from_raw(16, 4, 0, false).is_err());
        assert!(FixedPoint::from_raw(-9, 4, 0, true).is_err());
        assert_eq!(FixedPoint::from_raw(-8, 4, 0, true).unwrap().bits(), 0b1000);
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(nr_sqrt(0b0010, 4).unwrap().0, 0b0101);
        assert_eq!(nr_sqrt(0b1001, 4).unwrap().0, 0b1100);
        assert_eq!(nr_sqrt(0, 4).unwrap(), (0, 0));
        assert!(nr_sqrt(3, 3).is_err());
        assert!(nr_sqrt(16, 4).is_err());
    }

    #[test]
    fn sqrt_trace_of_one() {
        let r = sqrt_fixed(fx("01.00")).unwrap();
        assert_eq!(r.to_binary_string(), "01.00");
        let steps = sqrt_recurrence(0b0100 << 4, 4).unwrap().steps;
        let bits: Vec<bool> = steps.iter().map(|s| s.bit).collect();
        assert_eq!(bits, [true, false, false, false]);
    }

    #[test]
    fn reciprocal_examples() {
        assert_eq!(nr_reciprocal(0b0011, 4).unwrap(), 0b0101);
        assert_eq!(nr_reciprocal(0b1111, 4).unwrap(), 0b0001);
        assert_eq!(nr_reciprocal(1, 4).unwrap(), 0b1111);
        assert_eq!(nr_reciprocal(0, 4), Err(Error::DivisionByZero));
    }

    #[test]
    fn reciprocal_trace_of_eight() {
        let t = reciprocal_trace(0b1000, 4).unwrap();
        assert_eq!(&t.quotient_bits[..4], &[false, false, false, true]);
        assert_eq!(&t.remainders[..4], &[0b11001, 0b11010, 0b11100, 0b00000]);
        assert_eq!(t.quotient, 0b0010);
    }

    #[test]
    fn divide_power_of_two_matches_integer_division() {
        for k in 0..12 {
            for d in 1..300u128 {
                assert_eq!(divide_power_of_two(k, d), (1u128 << k) / d, "k={k} d={d}");
            }
        }
        assert_eq!(divide_power_of_two(4, 0), 0b11111);
    }

    #[test]
    fn cosine_examples() {
        let fmt = CosFormat::new(2, 3);
        let s: Vec<String> = (0..4)
            .map(|j| plouffe_cos(j, 2, fmt).unwrap().value.to_binary_string())
            .collect();
        assert_eq!(s, ["01.000", "00.101", "00.000", "11.011"]);
        for n in 1..6 {
            let v = plouffe_cos(0, n, CosFormat::new(n, 5)).unwrap().value;
            assert_eq!(v.to_f64(), 1.0);
        }
    }

    #[test]
    fn eigenvalue_examples() {
        assert_eq!(eigenvalue_estimate(0, 2, 3, None).unwrap().to_f64(), 0.0);
        assert_eq!(eigenvalue_estimate(2, 2, 3, None).unwrap().to_f64(), 32.0);
        assert_eq!(eigenvalue_estimate(1, 2, 3, None).unwrap().to_f64(), 9.375);
        assert_eq!(eigenvalue_estimate(3, 2, 3, None).unwrap().to_f64(), 54.625);
        assert_eq!(eigenvalue_estimate(1, 1, 0, None).unwrap().to_f64(), 8.0);
    }

    #[test]
    fn arccot_examples() {
        let w = plouffe_arccot(fx("01.00"), 2).unwrap();
        assert_eq!(w.to_binary_string(), ".01");
        let huge = FixedPoint::from_raw(1 << 20, 22, 0, false).unwrap();
        assert_eq!(plouffe_arccot(huge, 16).unwrap().bits(), 0);
        let eight = FixedPoint::from_raw(8, 5, 0, false).unwrap();
        assert_eq!(plouffe_arccot(eight, 10).unwrap().bits(), 40);
        assert!(plouffe_arccot(FixedPoint::from_raw(0, 4, 0, false).unwrap(), 4).is_err());
    }

    #[test]
    fn arccot_sentinel_persists() {
        let out = plouffe_arccot_raw(1, 0, ArccotFormat::new(2, 8)).unwrap();
        assert_eq!(out.states[2], CotState::Sentinel);
        assert!(out.states[2..].iter().all(|s| *s == CotState::Sentinel));
        assert_eq!(out.omega.bits(), 0b0100_0000);
    }

    #[test]
    fn ceil_log2_values() {
        assert_eq!(
            (0..10).map(ceil_log2).collect::<Vec<_>>(),
            [0, 0, 1, 2, 2, 3, 3, 3, 3, 4]
        );
    }
}
