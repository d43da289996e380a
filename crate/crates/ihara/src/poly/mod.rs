//! Exact polynomial arithmetic: dense univariate polynomials over big
//! integers, sparse multivariate polynomials over big rationals, and matrices
//! of either with exact determinants.

mod matrix;
mod multi;
mod uni;

pub use matrix::{det_bareiss, det_cofactor, det_symbolic, Matrix, SYMBOLIC_DET_LIMIT};
pub use multi::{MultiPoly, VarSet};
pub use uni::UniPoly;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("division is not exact; remainder {remainder}")]
    InexactDivision { remainder: String },
    #[error("matrix is {rows}x{cols}, determinant requires square")]
    NotSquare { rows: usize, cols: usize },
    #[error("symbolic determinant of dimension {dim} exceeds the limit {limit}")]
    SymbolicTooLarge { dim: usize, limit: usize },
    #[error("series inversion requires a unit constant term, found {found}")]
    NonUnitConstantTerm { found: String },
    #[error("truncated product factor must be 1 plus higher-order terms, found {found}")]
    BadFactor { found: String },
    #[error("matrices have mismatched dimensions: {left} vs {right}")]
    DimensionMismatch { left: String, right: String },
}

/// Commutative-ring operations used by the generic matrix code. The
/// zero/one constructors take `&self` so rings with runtime context (a
/// multivariate polynomial's variable universe) can supply matching elements.
pub trait Ring: Clone + PartialEq {
    fn ring_zero(&self) -> Self;
    fn ring_one(&self) -> Self;
    fn radd(&self, other: &Self) -> Self;
    fn rsub(&self, other: &Self) -> Self;
    fn rmul(&self, other: &Self) -> Self;
    fn is_ring_zero(&self) -> bool;
}

/// Exact division, required by fraction-free elimination. Implementations
/// must fail (never round) when the divisor does not divide exactly.
pub trait ExactDiv: Sized {
    fn exact_div(&self, divisor: &Self) -> Result<Self, PolyError>;
}

impl Ring for num_bigint::BigInt {
    fn ring_zero(&self) -> Self {
        num_bigint::BigInt::from(0)
    }
    fn ring_one(&self) -> Self {
        num_bigint::BigInt::from(1)
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
        use num_traits::Zero;
        self.is_zero()
    }
}

impl ExactDiv for num_bigint::BigInt {
    fn exact_div(&self, divisor: &Self) -> Result<Self, PolyError> {
        use num_integer::Integer;
        let (q, r) = self.div_rem(divisor);
        if r.is_ring_zero() {
            Ok(q)
        } else {
            Err(PolyError::InexactDivision {
                remainder: r.to_string(),
            })
        }
    }
}

/// Product of `factors` modulo degree `max_degree + 1`. Every factor must be
/// `1` plus terms of positive degree; factors whose lowest positive-degree
/// term already exceeds the truncation bound are skipped.
pub fn truncated_product<I>(factors: I, max_degree: usize) -> Result<UniPoly, PolyError>
where
    I: IntoIterator<Item = UniPoly>,
{
    let mut acc = UniPoly::one();
    for f in factors {
        if f.coeff(0) != num_bigint::BigInt::from(1) {
            return Err(PolyError::BadFactor {
                found: f.to_string(),
            });
        }
        match f.min_positive_degree() {
            None => continue, // factor is exactly 1
            Some(d) if d > max_degree => continue,
            Some(_) => acc = (&acc * &f).truncate(max_degree),
        }
    }
    Ok(acc)
}

/// Multivariate counterpart of [`truncated_product`], truncating at total
/// degree.
pub fn truncated_product_multi<I>(
    factors: I,
    max_degree: usize,
    one: &MultiPoly,
) -> Result<MultiPoly, PolyError>
where
    I: IntoIterator<Item = MultiPoly>,
{
    let mut acc = one.clone();
    for f in factors {
        if !f.constant_term().eq(&num_rational::BigRational::from_integer(1.into())) {
            return Err(PolyError::BadFactor {
                found: f.to_string(),
            });
        }
        match f.min_positive_degree() {
            None => continue,
            Some(d) if d > max_degree => continue,
            Some(_) => acc = acc.rmul(&f).truncate(max_degree),
        }
    }
    Ok(acc)
}
