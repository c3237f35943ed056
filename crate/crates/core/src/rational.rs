// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Exact rational arithmetic and rational enclosures of roots.
//!
//! Every inequality in the toolkit is decided over the rationals. Where a
//! quantity is irrational (`τ^{1/4}`, `√n`) it is either squared away into an
//! integer comparison or replaced by a rational enclosure `[lo, hi]` whose
//! endpoints have denominator at most [`ENCLOSURE_DENOMINATOR`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serializer;

pub type Rational = BigRational;

/// Denominator used for root enclosures.
pub const ENCLOSURE_DENOMINATOR: u64 = 1_000_000;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int<T: Into<BigInt>>(value: T) -> Rational {
    Rational::from_integer(value.into())
}

/// Parses `p/q`, an integer, or a finite decimal such as `0.05`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((p, q)) = text.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Rational::new(p, q));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = whole.starts_with('-');
        let whole_abs = whole.trim_start_matches(['-', '+']);
        let digits = format!("{}{}", if whole_abs.is_empty() { "0" } else { whole_abs }, frac);
        let numer: BigInt = digits.parse().ok()?;
        let denom = num_traits::pow(BigInt::from(10), frac.len());
        let value = Rational::new(numer, denom);
        return Some(if negative { -value } else { value });
    }
    text.parse::<BigInt>().ok().map(Rational::from_integer)
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

pub fn display(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn serialize<S: Serializer>(value: &Rational, serializer: S) -> Result<S::Ok, S::Error> {
    serializer.serialize_str(&display(value))
}

pub fn serialize_opt<S: Serializer>(
    value: &Option<Rational>,
    serializer: S,
) -> Result<S::Ok, S::Error> {
    match value {
        Some(v) => serializer.serialize_str(&display(v)),
        None => serializer.serialize_none(),
    }
}

/// Floor of the `k`-th root of a non-negative integer.
pub fn integer_root_floor(value: &BigInt, k: u32) -> BigInt {
    assert!(!value.is_negative(), "root of a negative integer");
    if value.is_zero() || k == 1 {
        return value.clone();
    }
    // Binary search on [0, 2^(bits/k + 1)].
    let bits = value.bits();
    let mut lo = BigInt::zero();
    let mut hi = BigInt::one() << (bits / u64::from(k) + 1) as usize;
    while lo < hi {
        let mid: BigInt = (&lo + &hi + 1) >> 1;
        if num_traits::pow(mid.clone(), k as usize) <= *value {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

/// Rational enclosure `[lo, hi]` of `x^{1/k}` for `x ≥ 0`, with both endpoints
/// carrying denominator `denom`. When the root is exactly representable the
/// two endpoints coincide.
pub fn root_enclosure(x: &Rational, k: u32, denom: u64) -> (Rational, Rational) {
    assert!(!x.is_negative(), "root of a negative rational");
    let d = BigInt::from(denom);
    // floor((x * d^k)^{1/k}) over the rationals: compare m^k * q <= p * d^k.
    let scaled = x * Rational::from_integer(num_traits::pow(d.clone(), k as usize));
    let floor_scaled = scaled.floor().to_integer();
    let mut m = integer_root_floor(&floor_scaled, k);
    // m^k <= floor(scaled) <= scaled, and (m+1)^k > floor(scaled). Since (m+1)^k
    // is an integer, (m+1)^k > scaled unless scaled is an integer equal to it.
    while Rational::from_integer(num_traits::pow(&m + 1, k as usize)) <= scaled {
        m += 1;
    }
    let lo = Rational::new(m.clone(), d.clone());
    if Rational::from_integer(num_traits::pow(m.clone(), k as usize)) == scaled {
        (lo.clone(), lo)
    } else {
        (lo, Rational::new(m + 1, d))
    }
}

pub fn fourth_root_enclosure(x: &Rational) -> (Rational, Rational) {
    root_enclosure(x, 4, ENCLOSURE_DENOMINATOR)
}

pub fn sqrt_enclosure(x: &Rational) -> (Rational, Rational) {
    root_enclosure(x, 2, ENCLOSURE_DENOMINATOR)
}

/// Decides `size ≥ factor·√n` exactly by squaring.
pub fn at_least_scaled_sqrt(size: usize, factor: &Rational, n: usize) -> bool {
    if !factor.is_positive() {
        return true;
    }
    int(size) * int(size) >= factor * factor * int(n)
}

/// Decides `size ≤ factor·√n` exactly by squaring.
pub fn at_most_scaled_sqrt(size: usize, factor: &Rational, n: usize) -> bool {
    if factor.is_negative() {
        return false;
    }
    int(size) * int(size) <= factor * factor * int(n)
}

/// Smallest integer `≥ value`.
pub fn ceil_to_usize(value: &Rational) -> usize {
    let c = value.ceil().to_integer();
    if c.is_negative() {
        0
    } else {
        c.to_usize().unwrap_or(usize::MAX)
    }
}

/// `C(k, 2)` as an exact rational, valid for non-integral `k` as `k(k−1)/2`.
pub fn choose2(k: &Rational) -> Rational {
    k * (k - Rational::one()) / int(2)
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_decimal_and_integer() {
        assert_eq!(parse_rational("3/10"), Some(rat(3, 10)));
        assert_eq!(parse_rational("0.05"), Some(rat(1, 20)));
        assert_eq!(parse_rational("7"), Some(int(7)));
        assert_eq!(parse_rational("-1.5"), Some(rat(-3, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn exact_roots_collapse() {
        let (lo, hi) = fourth_root_enclosure(&rat(1, 16));
        assert_eq!(lo, rat(1, 2));
        assert_eq!(hi, rat(1, 2));
        let (lo, hi) = sqrt_enclosure(&int(49));
        assert_eq!((lo, hi), (int(7), int(7)));
    }

    #[test]
    fn enclosure_brackets_root() {
        for (p, q) in [(1, 2), (2, 100), (3, 4), (1, 2000), (1999, 2000)] {
            let x = rat(p, q);
            let (lo, hi) = fourth_root_enclosure(&x);
            assert!(lo < hi);
            let lo4 = &lo * &lo * &lo * &lo;
            let hi4 = &hi * &hi * &hi * &hi;
            assert!(lo4 <= x && x <= hi4, "{p}/{q}");
            assert_eq!(&hi - &lo, rat(1, ENCLOSURE_DENOMINATOR as i64));
        }
    }

    #[test]
    fn scaled_sqrt_comparisons() {
        // 3 >= (9/10)·√7 ≈ 2.38
        assert!(at_least_scaled_sqrt(3, &rat(9, 10), 7));
        assert!(!at_least_scaled_sqrt(2, &rat(9, 10), 7));
        assert!(at_most_scaled_sqrt(2, &int(1), 7));
        assert!(!at_most_scaled_sqrt(3, &int(1), 7));
    }

    #[test]
    fn integer_root_floor_small_values() {
        for v in 0u32..200 {
            let r = integer_root_floor(&BigInt::from(v), 2).to_u32().unwrap();
            assert!(r * r <= v && (r + 1) * (r + 1) > v);
        }
    }
}
