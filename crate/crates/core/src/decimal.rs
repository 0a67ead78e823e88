//! Decimal rendering of exact rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::Rational;

pub const DEFAULT_SIGNIFICANT_DIGITS: usize = 12;

/// Rounds `num / den` (both positive) to the nearest integer, ties to even.
fn round_half_even(num: &BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num.div_rem(den);
    let twice: BigInt = r * 2u32;
    if &twice > den || (&twice == den && q.is_odd()) {
        q + 1u32
    } else {
        q
    }
}

fn pow10(e: usize) -> BigInt {
    num_traits::pow(BigInt::from(10u32), e)
}

/// Plain (non-scientific) decimal with `digits` significant digits, rounded
/// half-to-even from the exact value. Trailing fractional zeros are dropped.
pub fn to_significant(value: &Rational, digits: usize) -> String {
    let digits = digits.max(1);
    if value.is_zero() {
        return "0".to_string();
    }
    let num = value.numer().abs();
    let den = value.denom().clone();

    // Decimal exponent e with 10^e <= |value| < 10^(e+1).
    let mut e = num.to_string().len() as i64 - den.to_string().len() as i64;
    let scaled_ge = |e: i64, num: &BigInt, den: &BigInt| -> bool {
        if e >= 0 {
            num >= &(den * pow10(e as usize))
        } else {
            num * pow10((-e) as usize) >= *den
        }
    };
    if !scaled_ge(e, &num, &den) {
        e -= 1;
    }

    // Integer holding the leading `digits` digits.
    let shift = digits as i64 - 1 - e;
    let mut mantissa = if shift >= 0 {
        round_half_even(&(&num * pow10(shift as usize)), &den)
    } else {
        round_half_even(&num, &(&den * pow10((-shift) as usize)))
    };
    if mantissa == pow10(digits) {
        mantissa /= 10u32;
        e += 1;
    }

    let mut s = mantissa.to_string();
    let body = if e >= 0 {
        let int_len = e as usize + 1;
        if s.len() <= int_len {
            s.push_str(&"0".repeat(int_len - s.len()));
            s
        } else {
            let frac = s.split_off(int_len);
            format!("{s}.{frac}")
        }
    } else {
        format!("0.{}{s}", "0".repeat((-e - 1) as usize))
    };
    let body = if body.contains('.') {
        body.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        body
    };
    if value.is_negative() {
        format!("-{body}")
    } else {
        body
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn renders() {
        assert_eq!(to_significant(&q(34, 11), 12), "3.09090909091");
        assert_eq!(to_significant(&q(4, 1), 12), "4");
        assert_eq!(to_significant(&q(0, 1), 12), "0");
        assert_eq!(to_significant(&q(-1, 3), 4), "-0.3333");
        assert_eq!(to_significant(&q(2, 3), 3), "0.667");
        assert_eq!(to_significant(&q(1, 1000), 3), "0.001");
        assert_eq!(to_significant(&q(123456, 1), 2), "120000");
        assert_eq!(to_significant(&q(999_999, 1000), 3), "1000");
        assert_eq!(to_significant(&q(10, 1), 1), "10");
    }

    #[test]
    fn ties_go_to_even() {
        assert_eq!(to_significant(&q(25, 10), 1), "2");
        assert_eq!(to_significant(&q(35, 10), 1), "4");
        assert_eq!(to_significant(&q(125, 1000), 2), "0.12");
        assert_eq!(to_significant(&q(-135, 1000), 2), "-0.14");
    }
}
