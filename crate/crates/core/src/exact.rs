//! Exact rational helpers: construction, `p/q` serialization, parsing of
//! user-supplied tolerances and labeled decimal rendering.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use serde::Serialize;

pub fn ratio(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> BigRational {
    BigRational::new(numer.into(), denom.into())
}

pub fn int(value: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(value.into())
}

pub fn pow_rational(base: u64, exp: u32) -> BigRational {
    int(BigUint::from(base).pow(exp))
}

/// Always `numerator/denominator`, including integers (`1/1`).
pub fn ratio_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q`, plain decimals (`0.001`) and scientific notation (`5e-5`)
/// into an exact rational. Decimal input is read digit by digit, never via
/// binary floating point.
pub fn parse_ratio(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).ok()?;
        let d = BigInt::from_str(d.trim()).ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole
        .chars()
        .chain(frac.chars())
        .all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let digits = BigInt::from_str(&format!("0{whole}{frac}")).ok()?;
    let scale = exponent - frac.len() as i32;
    let ten = BigInt::from(10u32);
    let mut value = if scale >= 0 {
        BigRational::from_integer(digits * ten.pow(scale as u32))
    } else {
        BigRational::new(digits, ten.pow(scale.unsigned_abs()))
    };
    if negative {
        value = -value;
    }
    Some(value)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Rounding {
    /// Toward negative infinity.
    Down,
    /// Toward positive infinity.
    Up,
    /// Half away from zero.
    Nearest,
}

impl fmt::Display for Rounding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rounding::Down => "down",
            Rounding::Up => "up",
            Rounding::Nearest => "nearest",
        })
    }
}

/// A decimal rendering that carries its precision and rounding direction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decimal {
    pub value: String,
    pub digits: u32,
    pub rounding: Rounding,
}

impl Decimal {
    pub fn new(r: &BigRational, digits: u32, rounding: Rounding) -> Self {
        Decimal {
            value: to_decimal(r, digits, rounding),
            digits,
            rounding,
        }
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.value)
    }
}

pub fn to_decimal(r: &BigRational, digits: u32, rounding: Rounding) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = r * BigRational::from_integer(scale.clone());
    let units = match rounding {
        Rounding::Down => scaled.floor(),
        Rounding::Up => scaled.ceil(),
        Rounding::Nearest => scaled.round(),
    }
    .to_integer();
    let sign = if units.is_negative() { "-" } else { "" };
    let units = units.abs();
    let whole = &units / &scale;
    if digits == 0 {
        return format!("{sign}{whole}");
    }
    let frac = (&units % &scale).to_string();
    format!("{sign}{whole}.{frac:0>width$}", width = digits as usize)
}

/// Largest `k` with `base^k <= n`; `n >= 1`, `base >= 2`.
pub fn floor_log(n: u64, base: u64) -> u32 {
    assert!(n >= 1 && base >= 2, "floor_log needs n >= 1 and base >= 2");
    let mut k = 0;
    let mut power = base;
    while power <= n {
        k += 1;
        match power.checked_mul(base) {
            Some(next) => power = next,
            None => break,
        }
    }
    k
}

pub fn is_unit_interval_open(r: &BigRational) -> bool {
    r.is_positive() && r < &BigRational::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_scientific_and_fractions() {
        assert_eq!(parse_ratio("5e-5"), Some(ratio(1, 20000)));
        assert_eq!(parse_ratio("1E-3"), Some(ratio(1, 1000)));
        assert_eq!(parse_ratio("0.25"), Some(ratio(1, 4)));
        assert_eq!(parse_ratio("2.5e1"), Some(int(25)));
        assert_eq!(parse_ratio(".5"), Some(ratio(1, 2)));
        assert_eq!(parse_ratio("3/6"), Some(ratio(1, 2)));
        assert_eq!(parse_ratio("-0.1"), Some(ratio(-1, 10)));
        assert_eq!(parse_ratio("1/0"), None);
        assert_eq!(parse_ratio("abc"), None);
        assert_eq!(parse_ratio("."), None);
        assert_eq!(parse_ratio("1e"), None);
    }

    #[test]
    fn decimal_directions() {
        let x = ratio(2, 3);
        assert_eq!(to_decimal(&x, 4, Rounding::Down), "0.6666");
        assert_eq!(to_decimal(&x, 4, Rounding::Up), "0.6667");
        assert_eq!(to_decimal(&x, 4, Rounding::Nearest), "0.6667");
        assert_eq!(to_decimal(&ratio(1, 20000), 4, Rounding::Nearest), "0.0001");
        assert_eq!(to_decimal(&ratio(-1, 3), 2, Rounding::Down), "-0.34");
        assert_eq!(to_decimal(&int(7), 0, Rounding::Down), "7");
        assert_eq!(to_decimal(&ratio(1, 100), 3, Rounding::Down), "0.010");
    }

    #[test]
    fn floor_log_values() {
        assert_eq!(floor_log(1, 2), 0);
        assert_eq!(floor_log(81, 3), 4);
        assert_eq!(floor_log(80, 3), 3);
        assert_eq!(floor_log(u64::MAX, 2), 63);
        assert_eq!(floor_log(1_000_000, 10), 6);
    }

    proptest! {
        #[test]
        fn ratio_string_round_trips(n in -10_000i64..10_000, d in 1i64..10_000) {
            let r = ratio(n, d);
            prop_assert_eq!(parse_ratio(&ratio_string(&r)), Some(r));
        }

        #[test]
        fn decimal_brackets_value(n in 0i64..100_000, d in 1i64..100_000, digits in 0u32..8) {
            let r = ratio(n, d);
            let lo = parse_ratio(&to_decimal(&r, digits, Rounding::Down)).unwrap();
            let hi = parse_ratio(&to_decimal(&r, digits, Rounding::Up)).unwrap();
            prop_assert!(lo <= r && r <= hi);
            prop_assert!(&hi - &lo <= ratio(1, 10i64.pow(digits)));
        }
    }
}
