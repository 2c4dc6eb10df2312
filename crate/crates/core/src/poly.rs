//! Dense polynomials with arbitrary-precision integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::partition::stirling_first_signed;

/// Coefficients in the power basis, constant term first, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        Self::new(vec![BigInt::one()])
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        Self { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the highest nonzero coefficient; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coefficient(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading_coefficient(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// Largest coefficient magnitude.
    pub fn max_abs_coefficient(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// Number of leading zero coefficients, i.e. the multiplicity of the root at 0.
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    /// Converts `sum_j counts[j] * x(x-1)...(x-j+1)` into the power basis.
    pub fn from_falling_factorial(counts: &[BigInt]) -> Self {
        let n = counts.len().saturating_sub(1);
        let s1 = stirling_first_signed(n);
        let mut coeffs = vec![BigInt::zero(); n + 1];
        for (j, a) in counts.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, s) in s1[j].iter().enumerate().take(j + 1) {
                coeffs[k] += a * s;
            }
        }
        Self::new(coeffs)
    }

    /// Decimal strings, constant term first. The zero polynomial is `["0"]`.
    pub fn to_decimal_strings(&self) -> Vec<String> {
        if self.coeffs.is_empty() {
            return vec!["0".to_string()];
        }
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    pub fn from_decimal_strings(items: &[String]) -> Result<Self, String> {
        items
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(|e| format!("bad coefficient {s:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()
            .map(Self::new)
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_decimal_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let items = Vec::<String>::deserialize(d)?;
        Self::from_decimal_strings(&items).map_err(serde::de::Error::custom)
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: Self) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new(
            (0..len)
                .map(|i| self.coefficient(i) + rhs.coefficient(i))
                .collect(),
        )
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: Self) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new(
            (0..len)
                .map(|i| self.coefficient(i) - rhs.coefficient(i))
                .collect(),
        )
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: Self) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            let show_mag = k == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Serde adapter writing big integers as decimal strings.
pub mod decimal {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }

    pub mod option {
        use num_bigint::BigInt;
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(x: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
            match x {
                Some(v) => s.serialize_some(&v.to_string()),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
            Option::<String>::deserialize(d)?
                .map(|v| v.parse().map_err(serde::de::Error::custom))
                .transpose()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn trailing_zeros_are_trimmed() {
        let p = IntPolynomial::from_i64(&[0, -1, 0, 1, 0, 0]);
        assert_eq!(p.degree(), Some(3));
        assert_eq!(p.zero_root_multiplicity(), 1);
        assert_eq!(p.to_string(), "x^3 - x");
        assert_eq!(IntPolynomial::default().to_decimal_strings(), vec!["0"]);
    }

    #[test]
    fn falling_factorial_conversion() {
        // x(x-1)(x-2) = x^3 - 3x^2 + 2x
        let counts: Vec<BigInt> = [0, 0, 0, 1].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(
            IntPolynomial::from_falling_factorial(&counts),
            IntPolynomial::from_i64(&[0, 2, -3, 1])
        );
    }

    #[test]
    fn json_uses_decimal_strings() {
        let p = IntPolynomial::from_i64(&[0, -1, 0, 1]);
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, r#"["0","-1","0","1"]"#);
        let back: IntPolynomial = serde_json::from_str(&text).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<IntPolynomial>(r#"["1","x"]"#).is_err());
    }

    proptest! {
        #[test]
        fn product_evaluates_to_product_of_values(
            a in prop::collection::vec(-50i64..50, 0..6),
            b in prop::collection::vec(-50i64..50, 0..6),
            x in -7i64..7,
        ) {
            let (pa, pb) = (IntPolynomial::from_i64(&a), IntPolynomial::from_i64(&b));
            prop_assert_eq!((&pa * &pb).eval_i64(x), pa.eval_i64(x) * pb.eval_i64(x));
            prop_assert_eq!((&pa + &pb).eval_i64(x), pa.eval_i64(x) + pb.eval_i64(x));
            prop_assert_eq!((&pa - &pb).eval_i64(x), pa.eval_i64(x) - pb.eval_i64(x));
        }
    }
}
