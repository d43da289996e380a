use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{PolyError, Ring};

/// Ordered universe of named variables for one computation. Exponent vectors
/// of every [`MultiPoly`] built over a given `VarSet` have its arity, so term
/// maps compare structurally.
#[derive(Debug, PartialEq, Eq)]
pub struct VarSet {
    names: Vec<String>,
}

impl VarSet {
    pub fn new<S: Into<String>>(names: Vec<S>) -> Arc<VarSet> {
        Arc::new(VarSet {
            names: names.into_iter().map(Into::into).collect(),
        })
    }

    pub fn arity(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Sparse multivariate polynomial with big-rational coefficients over an
/// explicit variable universe. Terms map exponent vectors to nonzero
/// coefficients; truncation is by total degree.
#[derive(Clone, Debug)]
pub struct MultiPoly {
    vars: Arc<VarSet>,
    terms: BTreeMap<Vec<u16>, BigRational>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.vars.names == other.vars.names && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl MultiPoly {
    pub fn zero(vars: Arc<VarSet>) -> Self {
        MultiPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: Arc<VarSet>) -> Self {
        MultiPoly::constant(vars, BigRational::one())
    }

    pub fn constant(vars: Arc<VarSet>, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0u16; vars.arity()], c);
        }
        MultiPoly { vars, terms }
    }

    pub fn constant_i64(vars: Arc<VarSet>, c: i64) -> Self {
        MultiPoly::constant(vars, BigRational::from_integer(BigInt::from(c)))
    }

    /// The variable with index `idx` as a degree-1 polynomial.
    pub fn var(vars: Arc<VarSet>, idx: usize) -> Self {
        assert!(idx < vars.arity(), "variable index out of range");
        let mut exps = vec![0u16; vars.arity()];
        exps[idx] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exps, BigRational::one());
        MultiPoly { vars, terms }
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> BigRational {
        self.terms
            .get(&vec![0u16; self.vars.arity()])
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn insert_term(terms: &mut BTreeMap<Vec<u16>, BigRational>, exps: Vec<u16>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return MultiPoly::zero(self.vars.clone());
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    /// Drop all terms of total degree > `d`.
    pub fn truncate(&self, d: usize) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().map(|&x| x as usize).sum::<usize>() <= d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as usize).sum())
            .max()
    }

    /// Smallest total degree ≥ 1 among terms, if any.
    pub fn min_positive_degree(&self) -> Option<usize> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as usize).sum::<usize>())
            .filter(|&d| d >= 1)
            .min()
    }

    pub fn pow_trunc(&self, e: u32, d: usize) -> Self {
        let mut acc = MultiPoly::one(self.vars.clone());
        for _ in 0..e {
            acc = acc.rmul(self).truncate(d);
        }
        acc
    }

    /// Inverse as a formal series truncated at total degree `d`. The constant
    /// term must be a nonzero rational.
    pub fn series_inverse(&self, d: usize) -> Result<Self, PolyError> {
        let c = self.constant_term();
        if c.is_zero() {
            return Err(PolyError::NonUnitConstantTerm {
                found: "0".to_string(),
            });
        }
        let cinv = c.recip();
        // q := 1 - p/c has no constant term, so 1/p = (1/c) * sum_k q^k
        // stabilizes after d rounds of acc <- 1 + q*acc (mod degree d+1).
        let q = MultiPoly::one(self.vars.clone()).rsub(&self.scale(&cinv));
        let one = MultiPoly::one(self.vars.clone());
        let mut acc = one.clone();
        for _ in 0..d {
            acc = one.radd(&q.rmul(&acc)).truncate(d);
        }
        Ok(acc.scale(&cinv))
    }

    /// Evaluate at integer points, one per variable in universe order.
    pub fn eval(&self, point: &[BigInt]) -> BigRational {
        assert_eq!(point.len(), self.vars.arity());
        let mut acc = BigRational::zero();
        for (exps, c) in &self.terms {
            let mut m = c.clone();
            for (i, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    m *= BigRational::from_integer(point[i].clone());
                }
            }
            acc += m;
        }
        acc
    }

    /// Sorted term list `[{"exps":{name:k,...},"num":...,"den":...}]`.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(exps, c)| {
                let mut m = serde_json::Map::new();
                for (i, &e) in exps.iter().enumerate() {
                    if e > 0 {
                        m.insert(self.vars.name(i).to_string(), serde_json::Value::from(e));
                    }
                }
                serde_json::json!({
                    "exps": m,
                    "num": c.numer().to_string(),
                    "den": c.denom().to_string(),
                })
            })
            .collect();
        serde_json::Value::from(terms)
    }
}

impl Ring for MultiPoly {
    fn ring_zero(&self) -> Self {
        MultiPoly::zero(self.vars.clone())
    }
    fn ring_one(&self) -> Self {
        MultiPoly::one(self.vars.clone())
    }
    fn radd(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            Self::insert_term(&mut terms, e.clone(), c.clone());
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms,
        }
    }
    fn rsub(&self, other: &Self) -> Self {
        self.radd(&other.neg())
    }
    fn rmul(&self, other: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u16> = ea.iter().zip(eb).map(|(&a, &b)| a + b).collect();
                Self::insert_term(&mut terms, exps, ca * cb);
            }
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms,
        }
    }
    fn is_ring_zero(&self) -> bool {
        self.is_zero()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exps, c) in &self.terms {
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
            let mag = c.abs();
            let is_const = exps.iter().all(|&e| e == 0);
            let mut wrote = false;
            if !mag.is_one() || is_const {
                write!(f, "{mag}")?;
                wrote = true;
            }
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if wrote {
                    write!(f, "*")?;
                }
                write!(f, "{}", self.vars.name(i))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
                wrote = true;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn arithmetic_and_cancellation() {
        let vs = VarSet::new(vec!["x", "y"]);
        let x = MultiPoly::var(vs.clone(), 0);
        let y = MultiPoly::var(vs.clone(), 1);
        let p = x.radd(&y); // x + y
        let q = x.rsub(&y); // x - y
        let prod = p.rmul(&q);
        let expect = x.rmul(&x).rsub(&y.rmul(&y));
        assert_eq!(prod, expect);
    }

    #[test]
    fn series_inverse_geometric() {
        let vs = VarSet::new(vec!["b"]);
        let b = MultiPoly::var(vs.clone(), 0);
        let p = MultiPoly::one(vs.clone()).rsub(&b);
        let inv = p.series_inverse(2).unwrap();
        let expect = MultiPoly::one(vs.clone())
            .radd(&b)
            .radd(&b.rmul(&b));
        assert_eq!(inv, expect);
    }

    #[test]
    fn series_inverse_rational_constant() {
        let vs = VarSet::new(vec!["x"]);
        let x = MultiPoly::var(vs.clone(), 0);
        let p = MultiPoly::constant(vs.clone(), ratio(2, 1)).radd(&x);
        let inv = p.series_inverse(4).unwrap();
        assert_eq!(p.rmul(&inv).truncate(4), MultiPoly::one(vs));
    }

    #[test]
    fn eval_substitutes_in_order() {
        let vs = VarSet::new(vec!["x", "y"]);
        let x = MultiPoly::var(vs.clone(), 0);
        let y = MultiPoly::var(vs.clone(), 1);
        let p = x.rmul(&x).radd(&y.scale(&ratio(3, 1)));
        let v = p.eval(&[BigInt::from(5), BigInt::from(-2)]);
        assert_eq!(v, ratio(19, 1));
    }

    #[test]
    fn truncate_by_total_degree() {
        let vs = VarSet::new(vec!["x", "y"]);
        let x = MultiPoly::var(vs.clone(), 0);
        let y = MultiPoly::var(vs.clone(), 1);
        let p = MultiPoly::one(vs.clone()).radd(&x.rmul(&y)).radd(&x.rmul(&x).rmul(&x));
        let t = p.truncate(2);
        assert_eq!(t, MultiPoly::one(vs.clone()).radd(&x.rmul(&y)));
    }
}
