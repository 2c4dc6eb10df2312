//! Certified comparisons against powers of `e`.
//!
//! `e` is bracketed by rationals from its Taylor series: with
//! `lo = sum_{j<=K} 1/j!` the tail is below `2/(K+1)!`, so
//! `lo < e < lo + 2/(K+1)!`. With `K = 60` the bracket is narrower than
//! `10^-80`, which leaves every reported digit exact and makes verdicts
//! on integer left-hand sides decidable in practice.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

const TAYLOR_TERMS: u32 = 60;

/// Digits after the decimal point in reported right-hand sides.
pub const RHS_DIGITS: usize = 50;

/// Rational bracket `(lo, hi)` with `lo < e < hi`.
pub fn e_bracket() -> (BigRational, BigRational) {
    static BRACKET: OnceLock<(BigRational, BigRational)> = OnceLock::new();
    BRACKET.get_or_init(compute_e_bracket).clone()
}

fn compute_e_bracket() -> (BigRational, BigRational) {
    let mut lo = BigRational::zero();
    let mut factorial = BigInt::one();
    for j in 0..=TAYLOR_TERMS {
        if j > 0 {
            factorial *= j;
        }
        lo += BigRational::new(BigInt::one(), factorial.clone());
    }
    factorial *= TAYLOR_TERMS + 1;
    let hi = &lo + BigRational::new(BigInt::from(2), factorial);
    (lo, hi)
}

/// Bracket of `(c * e * k)^m` for a rational factor `c >= 0`.
pub fn scaled_e_power_bracket(c: &BigRational, k: u64, m: u32) -> (BigRational, BigRational) {
    let (lo, hi) = e_bracket();
    let scale = c * BigRational::from_integer(BigInt::from(k));
    // Powers of a reduced fraction stay reduced, so raise the parts directly.
    let pow = |x: BigRational| {
        let x = x * &scale;
        BigRational::new_raw(x.numer().pow(m), x.denom().pow(m))
    };
    (pow(lo), pow(hi))
}

/// Decimal expansion of a nonnegative rational truncated to `digits` places.
pub fn decimal_string(x: &BigRational, digits: usize) -> String {
    let sign = if x.is_negative() { "-" } else { "" };
    let x = x.abs();
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = (x.numer() * &scale) / x.denom();
    let int_part = &scaled / &scale;
    let frac = (&scaled % &scale).to_string();
    format!("{sign}{int_part}.{frac:0>digits$}")
}

/// Outcome of `lhs <= rhs` where `rhs` is only known through a bracket.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundComparison {
    /// Exact left-hand side as a decimal string.
    pub lhs: String,
    /// Right-hand side, truncated to `rhs_digits` decimal places.
    pub rhs: String,
    pub rhs_digits: usize,
    /// `rhs` as a double, for display only.
    pub rhs_approx: f64,
    pub ok: bool,
    /// False only when `lhs` fell inside the bracket and the verdict could
    /// not be certified; `ok` is then false.
    pub certified: bool,
}

/// Compares an exact integer with `(c * e * k)^m`.
pub fn compare_with_scaled_e_power(lhs: &BigInt, c: &BigRational, k: u64, m: u32) -> BoundComparison {
    let (lo, hi) = scaled_e_power_bracket(c, k, m);
    let l = BigRational::from_integer(lhs.clone());
    let (ok, certified) = if l <= lo {
        (true, true)
    } else if l > hi {
        (false, true)
    } else {
        (false, false)
    };
    BoundComparison {
        lhs: lhs.to_string(),
        rhs: decimal_string(&lo, RHS_DIGITS),
        rhs_digits: RHS_DIGITS,
        rhs_approx: lo.to_f64().unwrap_or(f64::INFINITY),
        ok,
        certified,
    }
}

/// Compares an exact integer with `(e * k)^m`.
pub fn compare_with_e_power(lhs: &BigInt, k: u64, m: u32) -> BoundComparison {
    compare_with_scaled_e_power(lhs, &BigRational::one(), k, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e_digits() {
        let (lo, hi) = e_bracket();
        assert_eq!(
            decimal_string(&lo, 50),
            "2.71828182845904523536028747135266249775724709369995"
        );
        assert_eq!(decimal_string(&lo, 50), decimal_string(&hi, 50));
    }

    #[test]
    fn power_comparisons() {
        // (2e)^2 ≈ 29.556
        let c = compare_with_e_power(&BigInt::from(6), 2, 2);
        assert!(c.ok && c.certified);
        assert!(c.rhs.starts_with("29.5562243957"));
        assert!(!compare_with_e_power(&BigInt::from(30), 2, 2).ok);
        assert!(compare_with_e_power(&BigInt::from(29), 2, 2).ok);
        // Empty product: (e * 0)^0 = 1.
        assert!(compare_with_e_power(&BigInt::from(1), 0, 0).ok);
        assert!(!compare_with_e_power(&BigInt::from(2), 0, 0).ok);
        assert!(compare_with_e_power(&BigInt::from(0), 0, 3).ok);
        // 8e * 3 ≈ 65.23
        let eight = BigRational::from_integer(BigInt::from(8));
        let c = compare_with_scaled_e_power(&BigInt::from(65), &eight, 3, 1);
        assert!(c.ok);
        assert!(c.rhs.starts_with("65.2387638830"));
    }
}
