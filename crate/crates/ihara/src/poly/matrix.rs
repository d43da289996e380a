use std::collections::HashMap;

use super::{ExactDiv, MultiPoly, PolyError, Ring};

/// Symbolic (multivariate) determinants beyond this dimension are rejected.
pub const SYMBOLIC_DET_LIMIT: usize = 10;

/// Row-major rectangular matrix over any [`Ring`].
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length must be rows*cols");
        Matrix { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
}

impl<T: Ring> Matrix<T> {
    /// Identity of dimension `n`; `sample` supplies the ring context.
    pub fn identity(n: usize, sample: &T) -> Self {
        Matrix::from_fn(n, n, |i, j| {
            if i == j {
                sample.ring_one()
            } else {
                sample.ring_zero()
            }
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(PolyError::DimensionMismatch {
                left: format!("{}x{}", self.rows, self.cols),
                right: format!("{}x{}", other.rows, other.cols),
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.radd(b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(PolyError::DimensionMismatch {
                left: format!("{}x{}", self.rows, self.cols),
                right: format!("{}x{}", other.rows, other.cols),
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.rsub(b))
                .collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        if self.cols != other.rows {
            return Err(PolyError::DimensionMismatch {
                left: format!("{}x{}", self.rows, self.cols),
                right: format!("{}x{}", other.rows, other.cols),
            });
        }
        Ok(Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = self.get(i, 0).ring_zero();
            for k in 0..self.cols {
                acc = acc.radd(&self.get(i, k).rmul(other.get(k, j)));
            }
            acc
        }))
    }

    pub fn scale(&self, c: &T) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.rmul(c)).collect(),
        }
    }
}

/// Fraction-free Bareiss determinant. Requires a ring with exact division
/// (integers, integer polynomials); every interior division is exact by
/// construction of the algorithm.
pub fn det_bareiss<T: Ring + ExactDiv>(m: &Matrix<T>) -> Result<T, PolyError> {
    if !m.is_square() {
        return Err(PolyError::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    if n == 0 {
        // Determinant of the empty matrix is 1, but there is no element to
        // derive a ring context from; callers handle n = 0 themselves.
        panic!("det_bareiss on 0x0 matrix; caller must special-case");
    }
    let mut a: Vec<Vec<T>> = (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j).clone()).collect())
        .collect();
    let one = a[0][0].ring_one();
    let mut prev = one.clone();
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_ring_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_ring_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(one.ring_zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k][k].rmul(&a[i][j]).rsub(&a[i][k].rmul(&a[k][j]));
                a[i][j] = num.exact_div(&prev)?;
            }
            a[i][k] = one.ring_zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate {
        one.ring_zero().rsub(&det)
    } else {
        det
    })
}

/// Determinant by cofactor expansion along the first remaining row, memoized
/// on the set of remaining columns. Exponential in dimension but
/// division-free, so it works over any ring (used for multivariate entries
/// and as an independent oracle in tests).
pub fn det_cofactor<T: Ring>(m: &Matrix<T>) -> Result<T, PolyError> {
    if !m.is_square() {
        return Err(PolyError::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    if n == 0 {
        panic!("det_cofactor on 0x0 matrix; caller must special-case");
    }
    assert!(n <= 32, "cofactor expansion limited to 32 columns");
    let one = m.get(0, 0).ring_one();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut memo: HashMap<u32, T> = HashMap::new();

    fn go<T: Ring>(
        m: &Matrix<T>,
        row: usize,
        mask: u32,
        one: &T,
        memo: &mut HashMap<u32, T>,
    ) -> T {
        if mask == 0 {
            return one.clone();
        }
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let mut acc = one.ring_zero();
        let mut sign_pos = true;
        for j in 0..m.cols() {
            if mask & (1 << j) == 0 {
                continue;
            }
            let entry = m.get(row, j);
            if !entry.is_ring_zero() {
                let sub = go(m, row + 1, mask & !(1 << j), one, memo);
                let term = entry.rmul(&sub);
                acc = if sign_pos {
                    acc.radd(&term)
                } else {
                    acc.rsub(&term)
                };
            }
            sign_pos = !sign_pos;
        }
        memo.insert(mask, acc.clone());
        acc
    }

    Ok(go(m, 0, full, &one, &mut memo))
}

/// Cofactor determinant for multivariate matrices with the hard dimension
/// guard applied.
pub fn det_symbolic(m: &Matrix<MultiPoly>) -> Result<MultiPoly, PolyError> {
    if !m.is_square() {
        return Err(PolyError::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    if m.rows > SYMBOLIC_DET_LIMIT {
        return Err(PolyError::SymbolicTooLarge {
            dim: m.rows,
            limit: SYMBOLIC_DET_LIMIT,
        });
    }
    det_cofactor(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::UniPoly;
    use num_bigint::BigInt;

    fn int_matrix(n: usize, vals: &[i64]) -> Matrix<BigInt> {
        Matrix::new(n, n, vals.iter().map(|&v| BigInt::from(v)).collect())
    }

    #[test]
    fn det_2x2_symmetric_swap() {
        let i2 = Matrix::identity(2, &UniPoly::one());
        let swap = Matrix::new(
            2,
            2,
            vec![
                UniPoly::zero(),
                UniPoly::monomial(1, 1),
                UniPoly::monomial(1, 1),
                UniPoly::zero(),
            ],
        );
        let m = i2.sub(&swap).unwrap();
        let d = det_bareiss(&m).unwrap();
        assert_eq!(d, UniPoly::from_i64(&[1, 0, -1]));
        assert_eq!(det_cofactor(&m).unwrap(), d);
    }

    #[test]
    fn det_identity_is_one() {
        let i3: Matrix<BigInt> = Matrix::identity(3, &BigInt::from(0));
        assert_eq!(det_bareiss(&i3).unwrap(), BigInt::from(1));
    }

    #[test]
    fn bareiss_matches_cofactor_random() {
        let mut state: u64 = 42;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % 15) as i64 - 7
        };
        for _ in 0..200 {
            let n = 2 + (next().unsigned_abs() as usize % 5); // 2..=6
            let vals: Vec<i64> = (0..n * n).map(|_| next()).collect();
            let m = int_matrix(n, &vals);
            assert_eq!(det_bareiss(&m).unwrap(), det_cofactor(&m).unwrap());
        }
    }

    #[test]
    fn det_is_multiplicative() {
        let mut state: u64 = 7;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % 9) as i64 - 4
        };
        for _ in 0..50 {
            let n = 2 + (next().unsigned_abs() as usize % 4); // 2..=5
            let a = int_matrix(n, &(0..n * n).map(|_| next()).collect::<Vec<_>>());
            let b = int_matrix(n, &(0..n * n).map(|_| next()).collect::<Vec<_>>());
            let ab = a.mul(&b).unwrap();
            assert_eq!(
                det_bareiss(&ab).unwrap(),
                det_bareiss(&a).unwrap() * det_bareiss(&b).unwrap()
            );
        }
    }

    #[test]
    fn symbolic_guard_rejects_large() {
        use crate::poly::VarSet;
        let vs = VarSet::new(vec!["x"]);
        let m = Matrix::identity(11, &MultiPoly::one(vs));
        assert!(matches!(
            det_symbolic(&m),
            Err(PolyError::SymbolicTooLarge { dim: 11, .. })
        ));
    }

    #[test]
    fn non_square_rejected() {
        let m: Matrix<BigInt> = Matrix::from_fn(2, 3, |_, _| BigInt::from(1));
        assert!(matches!(det_bareiss(&m), Err(PolyError::NotSquare { .. })));
    }
}
