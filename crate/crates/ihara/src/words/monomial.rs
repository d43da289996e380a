use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::{is_lyndon, lyndon_factorization, Letter, Word, WordError};

/// Commutative monomial in the successiveness variables b(x,x'): an exponent
/// map over ordered letter pairs. Zero exponents are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BMonomial {
    exponents: BTreeMap<(Letter, Letter), u32>,
}

impl BMonomial {
    pub fn unit() -> Self {
        BMonomial::default()
    }

    pub fn is_unit(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponents(&self) -> &BTreeMap<(Letter, Letter), u32> {
        &self.exponents
    }

    pub fn mul_var(&mut self, x: Letter, xp: Letter) {
        *self.exponents.entry((x, xp)).or_insert(0) += 1;
    }

    pub fn mul(&self, other: &BMonomial) -> BMonomial {
        let mut out = self.clone();
        for (&k, &e) in &other.exponents {
            *out.exponents.entry(k).or_insert(0) += e;
        }
        out
    }

    /// Total degree = sum of exponents = number of letters accounted for.
    pub fn total_degree(&self) -> u32 {
        self.exponents.values().sum()
    }
}

impl fmt::Display for BMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (&(x, xp), &e) in &self.exponents {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "b({x},{xp})")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Circular product b(x1,x2)...b(xm,x1); rotation invariant. Empty word
/// gives the unit monomial.
pub fn beta_circ(w: &Word) -> BMonomial {
    let mut bm = BMonomial::unit();
    let m = w.len();
    for i in 0..m {
        bm.mul_var(w.0[i], w.0[(i + 1) % m]);
    }
    bm
}

/// Product of [`beta_circ`] over the Lyndon factorization of `w`.
pub fn beta_dec(w: &Word) -> BMonomial {
    let mut bm = BMonomial::unit();
    for f in lyndon_factorization(w) {
        bm = bm.mul(&beta_circ(&f));
    }
    bm
}

/// Pairs the nondecreasing rearrangement of `w` letterwise with `w`.
pub fn beta_vert(w: &Word) -> BMonomial {
    let mut sorted = w.0.clone();
    sorted.sort_unstable();
    let mut bm = BMonomial::unit();
    for (&a, &b) in sorted.iter().zip(&w.0) {
        bm.mul_var(a, b);
    }
    bm
}

/// Formal product of distinct Lyndon words. Factors are stored sorted so
/// equality is structural; the degree is the number of factors.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LyndonMonomial {
    factors: Vec<Word>,
}

impl LyndonMonomial {
    pub fn new(mut factors: Vec<Word>) -> Result<Self, WordError> {
        for f in &factors {
            if !is_lyndon(f) {
                return Err(WordError::NotLyndon(f.clone()));
            }
        }
        factors.sort();
        for pair in factors.windows(2) {
            if pair[0] == pair[1] {
                return Err(WordError::DuplicateFactor(pair[0].clone()));
            }
        }
        Ok(LyndonMonomial { factors })
    }

    pub fn factors(&self) -> &[Word] {
        &self.factors
    }

    /// Number of factors.
    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    /// Total letter count across all factors.
    pub fn total_len(&self) -> usize {
        self.factors.iter().map(Word::len).sum()
    }

    /// Product of beta_circ over the factors.
    pub fn beta(&self) -> BMonomial {
        let mut bm = BMonomial::unit();
        for f in &self.factors {
            bm = bm.mul(&beta_circ(f));
        }
        bm
    }

    /// True iff no letter occurs twice across all factors; such monomials
    /// act as permutations of their letter set.
    pub fn is_good(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        for f in &self.factors {
            for &l in &f.0 {
                if !seen.insert(l) {
                    return false;
                }
            }
        }
        true
    }

    /// The sign-reversing pairing on monomials with a repeated letter. Let x
    /// be the smallest letter occurring more than once; among all rotations
    /// of factors that start at an occurrence of x, ordered by the alphabet
    /// with x moved to the front (other letters keeping their order), take
    /// the two smallest. If they come from the same factor, split it at the
    /// two occurrences; otherwise merge the two factors by concatenating the
    /// rotations. Applying the step twice returns the original monomial, and
    /// the factor count changes by exactly one.
    pub fn involution_step(&self) -> Result<LyndonMonomial, WordError> {
        let mut counts: HashMap<Letter, usize> = HashMap::new();
        for f in &self.factors {
            for &l in &f.0 {
                *counts.entry(l).or_insert(0) += 1;
            }
        }
        let x = counts
            .iter()
            .filter(|(_, &c)| c >= 2)
            .map(|(&l, _)| l)
            .min()
            .ok_or(WordError::GoodMonomial)?;

        // Key under the reordered alphabet in which x is smallest and the
        // remaining letters keep their original order.
        let key = |word: &Word| -> Vec<(u8, Letter)> {
            word.0
                .iter()
                .map(|&l| if l == x { (0, l) } else { (1, l) })
                .collect()
        };

        let mut list: Vec<(Vec<(u8, Letter)>, usize, usize)> = Vec::new();
        for (fi, f) in self.factors.iter().enumerate() {
            for p in 0..f.len() {
                if f.0[p] == x {
                    list.push((key(&f.rotation(p)), fi, p));
                }
            }
        }
        list.sort();
        let (_, f1, p1) = (&list[0].0, list[0].1, list[0].2);
        let (_, f2, p2) = (&list[1].0, list[1].1, list[1].2);

        let mut factors: Vec<Word> = Vec::new();
        if f1 == f2 {
            // Split [xv xw] -> [xv][xw] at the two occurrences of x.
            let f = &self.factors[f1];
            let m = f.len();
            let r = f.rotation(p1);
            let t = (p2 + m - p1) % m;
            let xv = Word(r.0[..t].to_vec()).min_rotation();
            let xw = Word(r.0[t..].to_vec()).min_rotation();
            for (i, g) in self.factors.iter().enumerate() {
                if i != f1 {
                    factors.push(g.clone());
                }
            }
            factors.push(xv);
            factors.push(xw);
        } else {
            // Merge [xu1][xu2] -> [xu1 xu2].
            let r1 = self.factors[f1].rotation(p1);
            let r2 = self.factors[f2].rotation(p2);
            let merged = r1.concat(&r2).min_rotation();
            for (i, g) in self.factors.iter().enumerate() {
                if i != f1 && i != f2 {
                    factors.push(g.clone());
                }
            }
            factors.push(merged);
        }
        LyndonMonomial::new(factors)
    }
}

impl fmt::Display for LyndonMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "[]");
        }
        for w in &self.factors {
            write!(f, "[{w}]")?;
        }
        Ok(())
    }
}
