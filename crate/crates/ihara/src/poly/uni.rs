use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{ExactDiv, PolyError, Ring};

/// Dense univariate polynomial in `u` over arbitrary-precision integers.
/// Index = degree. Canonical form: no trailing zero coefficients, so the zero
/// polynomial stores an empty vector.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        UniPoly::new(vec![BigInt::from(c)])
    }

    /// `c * u^degree`.
    pub fn monomial(c: i64, degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = BigInt::from(c);
        UniPoly::new(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `u^k` (zero beyond the stored degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Smallest k ≥ 1 with a nonzero coefficient, if any.
    pub fn min_positive_degree(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, c)| !c.is_zero())
            .map(|(k, _)| k)
    }

    /// Drop all terms of degree > `d`.
    pub fn truncate(&self, d: usize) -> Self {
        let take = self.coeffs.len().min(d + 1);
        UniPoly::new(self.coeffs[..take].to_vec())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = UniPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Quotient `self / divisor`, failing unless the remainder is zero and
    /// every intermediate coefficient division is exact over the integers.
    pub fn exact_div(&self, divisor: &UniPoly) -> Result<UniPoly, PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::InexactDivision {
                remainder: self.to_string(),
            });
        }
        if self.is_zero() {
            return Ok(UniPoly::zero());
        }
        let dd = divisor.degree().unwrap();
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let nd = match rem.len().checked_sub(divisor.coeffs.len()) {
            Some(n) => n,
            None => {
                return Err(PolyError::InexactDivision {
                    remainder: self.to_string(),
                })
            }
        };
        let mut quot = vec![BigInt::zero(); nd + 1];
        for k in (0..=nd).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let q = ExactDiv::exact_div(&top, &lead)?;
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &q * dc;
            }
            quot[k] = q;
        }
        let remainder = UniPoly::new(rem);
        if remainder.is_zero() {
            Ok(UniPoly::new(quot))
        } else {
            Err(PolyError::InexactDivision {
                remainder: remainder.to_string(),
            })
        }
    }

    /// Inverse of `self` as a power series, truncated at degree `d`. The
    /// constant term must be 1 or −1.
    pub fn series_inverse(&self, d: usize) -> Result<UniPoly, PolyError> {
        let c0 = self.coeff(0);
        if !c0.is_one() && c0 != BigInt::from(-1) {
            return Err(PolyError::NonUnitConstantTerm {
                found: c0.to_string(),
            });
        }
        // With c0 = ±1 the recurrence r_k = -c0 * sum_{i>=1} p_i r_{k-i}
        // stays integral.
        let mut inv = vec![BigInt::zero(); d + 1];
        inv[0] = c0.clone();
        for k in 1..=d {
            let mut s = BigInt::zero();
            for i in 1..=k.min(self.coeffs.len().saturating_sub(1)) {
                s += &self.coeffs[i] * &inv[k - i];
            }
            inv[k] = -&c0 * s;
        }
        Ok(UniPoly::new(inv))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// JSON form `{"var":"u","coeffs":[c0,c1,...]}`, ascending degree.
    pub fn to_json(&self) -> serde_json::Value {
        let coeffs: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .map(|c| match i64::try_from(c.clone()) {
                Ok(v) => serde_json::Value::from(v),
                Err(_) => serde_json::Value::from(c.to_string()),
            })
            .collect();
        serde_json::json!({ "var": "u", "coeffs": coeffs })
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if k == 1 {
                        write!(f, "u")?;
                    } else {
                        write!(f, "u^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] += c;
        }
        UniPoly::new(out)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] -= c;
        }
        UniPoly::new(out)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Ring for UniPoly {
    fn ring_zero(&self) -> Self {
        UniPoly::zero()
    }
    fn ring_one(&self) -> Self {
        UniPoly::one()
    }
    fn radd(&self, other: &Self) -> Self {
        self + other
    }
    fn rsub(&self, other: &Self) -> Self {
        self - other
    }
    fn rmul(&self, other: &Self) -> Self {
        self * other
    }
    fn is_ring_zero(&self) -> bool {
        self.is_zero()
    }
}

impl ExactDiv for UniPoly {
    fn exact_div(&self, divisor: &Self) -> Result<Self, PolyError> {
        UniPoly::exact_div(self, divisor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_of_conjugates() {
        let a = UniPoly::from_i64(&[1, -1]);
        let b = UniPoly::from_i64(&[1, 1]);
        assert_eq!(&a * &b, UniPoly::from_i64(&[1, 0, -1]));
    }

    #[test]
    fn exact_division_recovers_factor() {
        let p = UniPoly::from_i64(&[1, 0, -1]);
        let q = UniPoly::from_i64(&[1, -1]);
        assert_eq!(p.exact_div(&q).unwrap(), UniPoly::from_i64(&[1, 1]));
    }

    #[test]
    fn inexact_division_reports_remainder() {
        let p = UniPoly::from_i64(&[1, 0, -1]);
        let q = UniPoly::from_i64(&[1, 1, 1]);
        assert!(matches!(
            p.exact_div(&q),
            Err(PolyError::InexactDivision { .. })
        ));
    }

    #[test]
    fn truncate_drops_high_terms() {
        let p = UniPoly::from_i64(&[1, 0, 0, -1]).pow(2); // (1-u^3)^2
        assert_eq!(p.truncate(4), UniPoly::from_i64(&[1, 0, 0, -2]));
    }

    #[test]
    fn series_inverse_is_geometric() {
        let p = UniPoly::from_i64(&[1, -1]);
        assert_eq!(p.series_inverse(3).unwrap(), UniPoly::from_i64(&[1, 1, 1, 1]));
    }

    #[test]
    fn series_inverse_rejects_non_unit() {
        let p = UniPoly::from_i64(&[2, 1]);
        assert!(matches!(
            p.series_inverse(3),
            Err(PolyError::NonUnitConstantTerm { .. })
        ));
    }

    #[test]
    fn series_inverse_property_random() {
        // Deterministic pseudo-random coefficients; p * p^{-1} = 1 mod u^{d+1}.
        let mut state: u64 = 0x9e3779b97f4a7c15;
        for _ in 0..100 {
            let mut coeffs = vec![1i64];
            for _ in 0..6 {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                coeffs.push(((state >> 33) % 11) as i64 - 5);
            }
            let p = UniPoly::from_i64(&coeffs);
            let inv = p.series_inverse(8).unwrap();
            assert_eq!((&p * &inv).truncate(8), UniPoly::one());
        }
    }

    #[test]
    fn display_matches_convention() {
        let p = UniPoly::from_i64(&[1, 0, 0, -2, 0, 0, 1]);
        assert_eq!(p.to_string(), "1 - 2u^3 + u^6");
        assert_eq!(UniPoly::zero().to_string(), "0");
        assert_eq!(UniPoly::from_i64(&[0, -1]).to_string(), "-u");
    }
}
