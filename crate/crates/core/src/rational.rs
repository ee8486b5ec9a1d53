//! Exact fraction arithmetic and decimal parsing.
//!
//! Every verdict-bearing computation in this crate runs on [`Rational`], an
//! arbitrary-precision fraction kept in canonical reduced form (positive
//! denominator, gcd of numerator and denominator equal to one). Several
//! measured weights sit exactly on polytope boundaries, so classification
//! must not depend on any epsilon; nothing in this module ever rounds.
//! Floating point appears only in emitted plot coordinates.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

/// The scalar type for all exact computation: an arbitrary-precision
/// fraction in canonical reduced form.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithmeticError {
    #[error("division by zero")]
    DivisionByZero,
}

/// Decimal literal that failed to parse, with the offending text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed decimal literal `{text}`")]
pub struct DecimalParseError {
    pub text: String,
}

/// Builds `numer/denom` from machine integers. Panics if `denom` is zero;
/// intended for literals in code and tests.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Builds the integer `value` as a rational.
pub fn integer(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses a plain decimal literal (optional sign, digits, optional
/// fractional part) into an exact fraction: `k` digits after the point
/// yield `integer/10^k`, reduced. Scientific notation, fractions and
/// anything else are rejected.
pub fn parse_decimal(text: &str) -> Result<Rational, DecimalParseError> {
    let err = || DecimalParseError {
        text: text.to_string(),
    };

    let (negative, unsigned) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };

    let (int_digits, frac_digits) = match unsigned.split_once('.') {
        Some((int_part, frac_part)) => (int_part, frac_part),
        None => (unsigned, ""),
    };

    let all_digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !all_digits(int_digits) || (unsigned.contains('.') && !all_digits(frac_digits)) {
        return Err(err());
    }

    let mut digits = String::with_capacity(int_digits.len() + frac_digits.len());
    digits.push_str(int_digits);
    digits.push_str(frac_digits);
    let mut numer = BigInt::parse_bytes(digits.as_bytes(), 10).ok_or_else(err)?;
    if negative {
        numer = -numer;
    }
    let denom = BigInt::from(10).pow(frac_digits.len() as u32);
    Ok(Rational::new(numer, denom))
}

/// Exact division, reporting zero divisors instead of panicking.
pub fn try_div(a: &Rational, b: &Rational) -> Result<Rational, ArithmeticError> {
    if b.is_zero() {
        return Err(ArithmeticError::DivisionByZero);
    }
    Ok(a / b)
}

/// Renders the fraction as `numer/denom` (bare integer when the
/// denominator is one). This is the exact wire format used in structured
/// output.
pub fn format_fraction(value: &Rational) -> String {
    value.to_string()
}

/// Exact decimal rendering, available only when the reduced denominator is
/// of the form `2^a * 5^b`. Used to serialize datasets without precision
/// loss.
pub fn format_exact_decimal(value: &Rational) -> Option<String> {
    if value.is_zero() {
        return Some("0".to_string());
    }
    let mut denom = value.denom().clone();
    let mut twos = 0u32;
    let mut fives = 0u32;
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    while (&denom % &two).is_zero() {
        denom /= &two;
        twos += 1;
    }
    while (&denom % &five).is_zero() {
        denom /= &five;
        fives += 1;
    }
    if denom != BigInt::from(1) {
        return None;
    }
    // Scale to numer * 10^-k with k = max(twos, fives).
    let k = twos.max(fives);
    let scaled = (value * Rational::from_integer(BigInt::from(10).pow(k)))
        .to_integer()
        .abs();
    let digits = scaled.to_string();
    let sign = if value.is_negative() { "-" } else { "" };
    if k == 0 {
        return Some(format!("{sign}{digits}"));
    }
    let k = k as usize;
    let text = if digits.len() <= k {
        format!("{sign}0.{}{digits}", "0".repeat(k - digits.len()))
    } else {
        let (int_part, frac_part) = digits.split_at(digits.len() - k);
        format!("{sign}{int_part}.{frac_part}")
    };
    Some(text)
}

/// Rounded decimal rendering at `digits` significant digits (round half
/// away from zero), for human-readable tables. The exact fraction is the
/// authoritative representation; this is display only.
pub fn format_significant(value: &Rational, digits: u32) -> String {
    assert!(digits > 0);
    if value.is_zero() {
        return "0".to_string();
    }
    let negative = value.is_negative();
    let magnitude = value.abs();

    // exponent e such that 10^e <= magnitude < 10^(e+1)
    let ten = Rational::from_integer(BigInt::from(10));
    let one = Rational::from_integer(BigInt::from(1));
    let mut exponent: i64 = 0;
    let mut probe = magnitude.clone();
    while probe >= ten {
        probe /= &ten;
        exponent += 1;
    }
    while probe < one {
        probe *= &ten;
        exponent -= 1;
    }

    // Round magnitude * 10^(digits-1-e) to the nearest integer.
    let shift = digits as i64 - 1 - exponent;
    let scale = ten.pow(shift.unsigned_abs().min(i32::MAX as u64) as i32);
    let scaled = if shift >= 0 {
        &magnitude * &scale
    } else {
        &magnitude / &scale
    };
    let half = ratio(1, 2);
    let mut rounded = (scaled + half).floor().to_integer();
    if rounded == BigInt::from(10).pow(digits) {
        rounded = BigInt::from(10).pow(digits - 1);
        exponent += 1;
    }

    let digit_str = rounded.to_string();
    debug_assert_eq!(digit_str.len(), digits as usize);
    let sign = if negative { "-" } else { "" };
    let body = if exponent >= digits as i64 - 1 {
        // Integral value: pad with zeros.
        let zeros = (exponent - digits as i64 + 1) as usize;
        format!("{digit_str}{}", "0".repeat(zeros))
    } else if exponent >= 0 {
        let split = exponent as usize + 1;
        let (int_part, frac_part) = digit_str.split_at(split);
        let frac_part = frac_part.trim_end_matches('0');
        if frac_part.is_empty() {
            int_part.to_string()
        } else {
            format!("{int_part}.{frac_part}")
        }
    } else {
        let leading = (-exponent - 1) as usize;
        let frac = format!("{}{digit_str}", "0".repeat(leading));
        let frac = frac.trim_end_matches('0');
        format!("0.{frac}")
    };
    format!("{sign}{body}")
}

/// Nearest-double approximation, for plot coordinates only.
pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}
