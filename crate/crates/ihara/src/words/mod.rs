//! Lyndon-word kernel: factorizations, rotation canonicalization, the beta
//! maps, the sorting bijection on words, and the sign-reversing involution on
//! monomials of distinct Lyndon words.

mod monomial;

pub use monomial::{beta_circ, beta_dec, beta_vert, BMonomial, LyndonMonomial};

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

pub type Letter = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("word {0} is not a Lyndon word")]
    NotLyndon(Word),
    #[error("word {0} is too short (length >= 2 required)")]
    TooShort(Word),
    #[error("monomial has no repeated letter")]
    GoodMonomial,
    #[error("monomial factors must be distinct, duplicate {0}")]
    DuplicateFactor(Word),
    #[error("cannot parse word from `{input}`: {msg}")]
    Parse { input: String, msg: String },
}

/// Sequence of letters over an ordered alphabet (letter ids 0..n−1).
/// Comparison is lexicographic with the proper-prefix-is-smaller rule.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// Rotation starting at position `s`.
    pub fn rotation(&self, s: usize) -> Word {
        let n = self.len();
        Word((0..n).map(|i| self.0[(s + i) % n]).collect())
    }

    pub fn rotations(&self) -> Vec<Word> {
        (0..self.len()).map(|s| self.rotation(s)).collect()
    }

    /// Lexicographically minimal rotation.
    pub fn min_rotation(&self) -> Word {
        self.rotations().into_iter().min().unwrap_or_else(Word::empty)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Parse comma-separated letter indices, e.g. `3,4,5,1,2`.
    pub fn parse(input: &str) -> Result<Word, WordError> {
        let trimmed = input.trim();
        if trimmed.is_empty() {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        for part in trimmed.split(',') {
            let p = part.trim();
            letters.push(p.parse::<Letter>().map_err(|e| WordError::Parse {
                input: input.to_string(),
                msg: format!("bad letter `{p}`: {e}"),
            })?);
        }
        Ok(Word(letters))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl From<&[Letter]> for Word {
    fn from(s: &[Letter]) -> Self {
        Word(s.to_vec())
    }
}

/// True iff `w` is nonempty and strictly smaller than every proper right
/// factor (equivalently: aperiodic and minimal among its rotations).
pub fn is_lyndon(w: &Word) -> bool {
    let n = w.len();
    if n == 0 {
        return false;
    }
    (1..n).all(|i| w.0[..] < w.0[i..])
}

/// Unique factorization into a nonincreasing product of Lyndon words
/// (Duval's algorithm).
pub fn lyndon_factorization(w: &Word) -> Vec<Word> {
    let s = &w.0;
    let n = s.len();
    let mut res = Vec::new();
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        let mut k = i;
        while j < n && s[k] <= s[j] {
            k = if s[k] < s[j] { i } else { k + 1 };
            j += 1;
        }
        while i <= k {
            res.push(Word(s[i..i + j - k].to_vec()));
            i += j - k;
        }
    }
    res
}

/// Cut `w` before every letter that is smaller than or equal to each letter
/// strictly to its left. Refines the Lyndon factorization.
pub fn decreasing_factorization(w: &Word) -> Vec<Word> {
    let s = &w.0;
    if s.is_empty() {
        return Vec::new();
    }
    let mut cuts = vec![0usize];
    let mut min = s[0];
    for (i, &x) in s.iter().enumerate().skip(1) {
        if x <= min {
            cuts.push(i);
        }
        min = min.min(x);
    }
    cuts.push(s.len());
    cuts.windows(2).map(|p| Word(s[p[0]..p[1]].to_vec())).collect()
}

/// Split a Lyndon word `l = l0 m0` where `m0` is the longest proper right
/// factor that is itself Lyndon. Both halves are Lyndon and l0 < l < m0.
pub fn standard_factorization(l: &Word) -> Result<(Word, Word), WordError> {
    if !is_lyndon(l) {
        return Err(WordError::NotLyndon(l.clone()));
    }
    if l.len() < 2 {
        return Err(WordError::TooShort(l.clone()));
    }
    for i in 1..l.len() {
        let m0 = Word(l.0[i..].to_vec());
        if is_lyndon(&m0) {
            return Ok((Word(l.0[..i].to_vec()), m0));
        }
    }
    unreachable!("the final letter is always a Lyndon right factor");
}

/// The second-smallest rotation of a Lyndon word, equal to m0·l0 for the
/// standard factorization (l0, m0).
pub fn donlyn(l: &Word) -> Result<Word, WordError> {
    let (l0, m0) = standard_factorization(l)?;
    Ok(m0.concat(&l0))
}

/// All Lyndon words over `alphabet_size` letters of length ≤ `max_len`, in
/// lexicographic order (successive generation in the style of Duval).
pub fn enumerate_lyndon(alphabet_size: usize, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if alphabet_size == 0 || max_len == 0 {
        return out;
    }
    let top = (alphabet_size - 1) as Letter;
    let mut w: Vec<Letter> = vec![0];
    loop {
        out.push(Word(w.clone()));
        // Extend periodically to max_len, then strip maximal letters and
        // increment the last position.
        let k = w.len();
        while w.len() < max_len {
            let x = w[w.len() - k];
            w.push(x);
        }
        while w.last() == Some(&top) {
            w.pop();
        }
        match w.last_mut() {
            None => return out,
            Some(last) => *last += 1,
        }
    }
}

/// Rearrangement bijection: sends `w` to the word read off its Lyndon-factor
/// necklaces. Each position of each factor is keyed by the backward cyclic
/// reading starting there; keys are sorted ascending and each position emits
/// its cyclic successor letter. Satisfies beta_vert(phi(w)) = beta_dec(w) and
/// is a bijection on every rearrangement class.
pub fn phi(w: &Word) -> Word {
    if w.is_empty() {
        return Word::empty();
    }
    let factors = lyndon_factorization(w);
    let maxm = factors.iter().map(Word::len).max().unwrap();
    // Backward readings are periodic; 2*maxm + 2 letters are enough to
    // compare any two of them.
    let keylen = 2 * maxm + 2;
    let mut entries: Vec<(Vec<Letter>, Letter)> = Vec::with_capacity(w.len());
    for f in &factors {
        let m = f.len();
        for idx in 0..m {
            let key: Vec<Letter> = (0..keylen)
                .map(|i| f.0[(idx + m * keylen - i) % m])
                .collect();
            entries.push((key, f.0[(idx + 1) % m]));
        }
    }
    entries.sort();
    Word(entries.into_iter().map(|(_, s)| s).collect())
}

/// Inverse of [`phi`]: first-in-first-out matching of each letter's
/// occurrences against the sorted word yields a permutation whose cycles are
/// the factor necklaces; take minimal rotations, sort nonincreasing,
/// concatenate.
pub fn phi_inverse(wp: &Word) -> Word {
    let n = wp.len();
    if n == 0 {
        return Word::empty();
    }
    let mut top = wp.0.clone();
    top.sort_unstable();
    let mut slots: std::collections::HashMap<Letter, VecDeque<usize>> =
        std::collections::HashMap::new();
    for (i, &x) in top.iter().enumerate() {
        slots.entry(x).or_default().push_back(i);
    }
    let sigma: Vec<usize> = wp
        .0
        .iter()
        .map(|x| slots.get_mut(x).unwrap().pop_front().unwrap())
        .collect();
    let mut seen = vec![false; n];
    let mut factors: Vec<Word> = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            cyc.push(top[j]);
            j = sigma[j];
        }
        factors.push(Word(cyc).min_rotation());
    }
    factors.sort();
    factors.reverse();
    let mut out = Vec::with_capacity(n);
    for f in &factors {
        out.extend_from_slice(&f.0);
    }
    Word(out)
}
