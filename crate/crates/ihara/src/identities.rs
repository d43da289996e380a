//! Mechanical verification of the algebraic identities surrounding the zeta
//! computation: the β-homomorphism chain, the sign-reversing involution on
//! Lyndon monomials, the MacMahon master theorem instance, the Amitsur
//! determinant identity, and the common-origin determinant factorization
//! with its specialization back to the two zeta formulas.

use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::OrientedGraph;
use crate::poly::{
    det_bareiss, det_symbolic, truncated_product_multi, Matrix, MultiPoly, PolyError, Ring,
    UniPoly, VarSet,
};
use crate::words::{
    beta_circ, beta_dec, beta_vert, enumerate_lyndon, BMonomial, Letter, LyndonMonomial, Word,
    WordError,
};
use crate::zeta::{delta_matrix, edge_matrix_t, zeta_via_edges, zeta_via_vertices};

#[derive(Debug, Error)]
pub enum IdentityError {
    #[error("scale guard: {0}")]
    ScaleGuard(String),
    #[error("involution failure at {monomial}: {msg}")]
    BrokenInvolution { monomial: String, msg: String },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// Variable universe for the n² successiveness variables b(x,x'),
/// index of b(x,x') = x·n + x'.
pub fn b_varset(n: usize) -> Arc<VarSet> {
    let mut names = Vec::with_capacity(n * n);
    for x in 0..n {
        for xp in 0..n {
            names.push(format!("b({x},{xp})"));
        }
    }
    VarSet::new(names)
}

/// A [`BMonomial`] as a coefficient-1 term of the b-variable polynomial ring.
pub fn bmono_to_multi(vars: &Arc<VarSet>, n: usize, bm: &BMonomial) -> MultiPoly {
    let mut p = MultiPoly::one(vars.clone());
    for (&(x, xp), &e) in bm.exponents() {
        let idx = x as usize * n + xp as usize;
        p = p.rmul(&MultiPoly::var(vars.clone(), idx).pow_trunc(e, usize::MAX));
    }
    p
}

/// The n×n matrix with entry (x,x') = b(x,x').
pub fn symbolic_b(vars: &Arc<VarSet>, n: usize) -> Matrix<MultiPoly> {
    Matrix::from_fn(n, n, |x, xp| MultiPoly::var(vars.clone(), x * n + xp))
}

/// det(I − ℬ) over the b variables.
pub fn det_i_minus_b(vars: &Arc<VarSet>, n: usize) -> Result<MultiPoly, PolyError> {
    let b = symbolic_b(vars, n);
    let m = Matrix::identity(n, &MultiPoly::one(vars.clone())).sub(&b)?;
    det_symbolic(&m)
}

fn all_words_up_to(n: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                (0..n as Letter).map(move |l| {
                    let mut v = w.0.clone();
                    v.push(l);
                    Word(v)
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn guard(cond: bool, msg: &str) -> Result<(), IdentityError> {
    if cond {
        Ok(())
    } else {
        Err(IdentityError::ScaleGuard(msg.to_string()))
    }
}

/// Results of the four-way series comparison behind the β-homomorphism
/// chain, all truncated at total degree d over n letters.
#[derive(Clone, Debug)]
pub struct BetaChainReport {
    /// series_inverse(∏_{Lyndon l}(1 − β_circ(l))) = Σ_w β_dec(w)
    pub pass_lambda_inverse: bool,
    /// Σ_w β_dec(w) = Σ_w β_vert(w)
    pub pass_dec_vert: bool,
    /// Σ_w β_vert(w) = series_inverse(det(I − ℬ))
    pub pass_master: bool,
    /// ∏_{Lyndon l}(1 − β_circ(l)) = det(I − ℬ)
    pub pass_lambda_det: bool,
}

impl BetaChainReport {
    pub fn all_pass(&self) -> bool {
        self.pass_lambda_inverse && self.pass_dec_vert && self.pass_master && self.pass_lambda_det
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "pass_lambda_inverse": self.pass_lambda_inverse,
            "pass_dec_vert": self.pass_dec_vert,
            "pass_master": self.pass_master,
            "pass_lambda_det": self.pass_lambda_det,
        })
    }
}

/// Verify the β-homomorphism chain: the truncated Lyndon product, the two
/// word sums, and det(I − ℬ) are computed by independent routes and compared
/// pairwise.
pub fn verify_thm_1_1(n: usize, d: usize) -> Result<BetaChainReport, IdentityError> {
    guard(n >= 1 && n <= 3, "alphabet size must be in 1..=3")?;
    guard(d <= 6, "total degree must be <= 6")?;
    let vars = b_varset(n);
    let one = MultiPoly::one(vars.clone());

    // (a) β(Λ) = ∏ over Lyndon words of length <= d of (1 − β_circ(l)).
    let lambda = truncated_product_multi(
        enumerate_lyndon(n, d)
            .iter()
            .map(|l| one.rsub(&bmono_to_multi(&vars, n, &beta_circ(l)))),
        d,
        &one,
    )?;

    // (b), (c): word sums.
    let mut sum_dec = MultiPoly::zero(vars.clone());
    let mut sum_vert = MultiPoly::zero(vars.clone());
    for w in all_words_up_to(n, d) {
        sum_dec = sum_dec.radd(&bmono_to_multi(&vars, n, &beta_dec(&w)));
        sum_vert = sum_vert.radd(&bmono_to_multi(&vars, n, &beta_vert(&w)));
    }

    // (d) determinant side.
    let det = det_i_minus_b(&vars, n)?;

    Ok(BetaChainReport {
        pass_lambda_inverse: lambda.series_inverse(d)? == sum_dec,
        pass_dec_vert: sum_dec == sum_vert,
        pass_master: sum_vert == det.series_inverse(d)?,
        pass_lambda_det: lambda == det.truncate(d),
    })
}

/// MacMahon master theorem instance: Σ_w β_vert(w) = det(I − ℬ)^{-1}
/// truncated at total degree d.
pub fn verify_macmahon(n: usize, d: usize) -> Result<bool, IdentityError> {
    guard(n >= 1 && n <= 3, "alphabet size must be in 1..=3")?;
    guard(d <= 6, "total degree must be <= 6")?;
    let vars = b_varset(n);
    let mut sum_vert = MultiPoly::zero(vars.clone());
    for w in all_words_up_to(n, d) {
        sum_vert = sum_vert.radd(&bmono_to_multi(&vars, n, &beta_vert(&w)));
    }
    let det = det_i_minus_b(&vars, n)?;
    Ok(sum_vert == det.series_inverse(d)?)
}

/// All monomials of distinct Lyndon words over n letters with total letter
/// count ≤ d (including the empty monomial).
pub fn enumerate_lyndon_monomials(n: usize, d: usize) -> Vec<LyndonMonomial> {
    let words = enumerate_lyndon(n, d);
    let mut out = Vec::new();
    let mut chosen: Vec<Word> = Vec::new();
    fn go(
        words: &[Word],
        from: usize,
        budget: usize,
        chosen: &mut Vec<Word>,
        out: &mut Vec<LyndonMonomial>,
    ) {
        out.push(LyndonMonomial::new(chosen.clone()).expect("distinct Lyndon factors"));
        for i in from..words.len() {
            if words[i].len() <= budget {
                chosen.push(words[i].clone());
                go(words, i + 1, budget - words[i].len(), chosen, out);
                chosen.pop();
            }
        }
    }
    go(&words, 0, d, &mut chosen, &mut out);
    out
}

/// Orbit statistics from the sign-reversing involution check.
#[derive(Clone, Debug)]
pub struct InvolutionReport {
    pub good_count: usize,
    pub orbit_count: usize,
    pub pass_involution: bool,
    pub pass_good_sum: bool,
}

impl InvolutionReport {
    pub fn all_pass(&self) -> bool {
        self.pass_involution && self.pass_good_sum
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "good_count": self.good_count,
            "orbit_count": self.orbit_count,
            "pass_involution": self.pass_involution,
            "pass_good_sum": self.pass_good_sum,
        })
    }
}

/// Verify the involution on monomials with a repeated letter: every such
/// monomial pairs with a distinct partner of the same β and adjacent degree,
/// the pairing is involutive, and the signed sum over the unpaired (good)
/// monomials equals det(I − ℬ).
pub fn verify_thm_4_1(n: usize, d: usize) -> Result<InvolutionReport, IdentityError> {
    guard(n >= 1 && n <= 3, "alphabet size must be in 1..=3")?;
    guard(d <= 5, "total degree must be <= 5")?;
    let vars = b_varset(n);
    let monomials = enumerate_lyndon_monomials(n, d);
    let index: HashSet<LyndonMonomial> = monomials.iter().cloned().collect();

    let mut good_sum = MultiPoly::zero(vars.clone());
    let mut good_count = 0usize;
    let mut orbit_count = 0usize;
    let mut paired: HashSet<LyndonMonomial> = HashSet::new();

    for pi in &monomials {
        if pi.is_good() {
            good_count += 1;
            let term = bmono_to_multi(&vars, n, &pi.beta());
            good_sum = if pi.degree() % 2 == 0 {
                good_sum.radd(&term)
            } else {
                good_sum.rsub(&term)
            };
            continue;
        }
        if paired.contains(pi) {
            continue;
        }
        let pi2 = pi.involution_step()?;
        let fail = |msg: &str| IdentityError::BrokenInvolution {
            monomial: pi.to_string(),
            msg: msg.to_string(),
        };
        if pi2 == *pi {
            return Err(fail("fixed point"));
        }
        if !index.contains(&pi2) {
            return Err(fail("partner escapes the enumeration range"));
        }
        if pi2.involution_step()? != *pi {
            return Err(fail("pairing is not involutive"));
        }
        if pi2.beta() != pi.beta() {
            return Err(fail("partner changes the monomial weight"));
        }
        if pi.degree().abs_diff(pi2.degree()) != 1 {
            return Err(fail("partner degree does not change by exactly 1"));
        }
        paired.insert(pi.clone());
        paired.insert(pi2);
        orbit_count += 1;
    }

    let det = det_i_minus_b(&vars, n)?;
    Ok(InvolutionReport {
        good_count,
        orbit_count,
        pass_involution: true,
        pass_good_sum: good_sum == det.truncate(d),
    })
}

fn amitsur_guard(mats: &[Matrix<BigInt>], d: usize) -> Result<usize, IdentityError> {
    guard(!mats.is_empty(), "at least one matrix required")?;
    guard(d <= 8, "truncation degree must be <= 8")?;
    let dim = mats[0].rows();
    for m in mats {
        if m.rows() != dim || m.cols() != dim {
            return Err(IdentityError::Poly(PolyError::DimensionMismatch {
                left: format!("{}x{}", dim, dim),
                right: format!("{}x{}", m.rows(), m.cols()),
            }));
        }
    }
    guard(dim >= 1 && dim <= 4, "matrix dimension must be in 1..=4")?;
    Ok(dim)
}

/// det(I − t·ΣAᵢ) as a polynomial in the grading variable t.
fn amitsur_lhs(mats: &[Matrix<BigInt>], dim: usize) -> Result<UniPoly, PolyError> {
    let m = Matrix::from_fn(dim, dim, |i, j| {
        let mut p = if i == j { UniPoly::one() } else { UniPoly::zero() };
        let mut s = BigInt::from(0);
        for a in mats {
            s += a.get(i, j);
        }
        if s != BigInt::from(0) {
            p = &p - &UniPoly::new(vec![BigInt::from(0), s]);
        }
        p
    });
    det_bareiss(&m)
}

/// ∏ over Lyndon words l with |l| ≤ max_word_len of det(I − t^{|l|} A_l),
/// truncated mod t^{d+1}.
fn amitsur_rhs(
    mats: &[Matrix<BigInt>],
    dim: usize,
    d: usize,
    max_word_len: usize,
) -> Result<UniPoly, PolyError> {
    let mut product = UniPoly::one();
    for l in enumerate_lyndon(mats.len(), max_word_len) {
        let len = l.len();
        if len > d {
            continue;
        }
        // A_l = A_{l_1} A_{l_2} ... A_{l_p}.
        let mut al = mats[l.0[0] as usize].clone();
        for &idx in &l.0[1..] {
            al = al.mul(&mats[idx as usize])?;
        }
        let factor = Matrix::from_fn(dim, dim, |i, j| {
            let mut p = if i == j { UniPoly::one() } else { UniPoly::zero() };
            let a = al.get(i, j);
            if a != &BigInt::from(0) {
                let mut coeffs = vec![BigInt::from(0); len + 1];
                coeffs[len] = a.clone();
                p = &p - &UniPoly::new(coeffs);
            }
            p
        });
        product = (&product * &det_bareiss(&factor)?).truncate(d);
    }
    Ok(product)
}

/// Amitsur's determinant identity graded by an auxiliary variable t:
/// det(I − t(A₁+⋯+A_k)) ≡ ∏_{Lyndon l} det(I − t^{|l|}A_l) mod t^{d+1}.
pub fn verify_amitsur(mats: &[Matrix<BigInt>], d: usize) -> Result<bool, IdentityError> {
    let dim = amitsur_guard(mats, d)?;
    let lhs = amitsur_lhs(mats, dim)?.truncate(d);
    let rhs = amitsur_rhs(mats, dim, d, d)?;
    Ok(lhs == rhs)
}

/// Negative control: same comparison but with the Lyndon product truncated
/// at word length 1. For generic inputs this must fail, confirming the full
/// product is actually exercised.
pub fn verify_amitsur_length1_control(
    mats: &[Matrix<BigInt>],
    d: usize,
) -> Result<bool, IdentityError> {
    let dim = amitsur_guard(mats, d)?;
    let lhs = amitsur_lhs(mats, dim)?.truncate(d);
    let rhs = amitsur_rhs(mats, dim, d, 1)?;
    Ok(lhs == rhs)
}

/// Variable universe for the common-origin factorization: u(i,j) for all
/// ordered vertex pairs (index i·c₀+j) followed by v(i) (index c₀²+i).
pub fn uv_varset(c0: usize) -> Arc<VarSet> {
    let mut names = Vec::with_capacity(c0 * c0 + c0);
    for i in 0..c0 {
        for j in 0..c0 {
            names.push(format!("u({i},{j})"));
        }
    }
    for i in 0..c0 {
        names.push(format!("v({i})"));
    }
    VarSet::new(names)
}

/// How the common-origin factorization is checked.
#[derive(Clone, Copy, Debug)]
pub enum Prop81Mode {
    /// Expand both sides as multivariate polynomials (2c₁ ≤ 8 required).
    Symbolic,
    /// Substitute `points` independent integer points in [−5,5] per
    /// variable, drawn from a seeded generator, and compare integers.
    RandomEval { points: usize, seed: u64 },
}

#[derive(Clone, Debug)]
pub struct Prop81Report {
    pub symbolic: bool,
    pub points_checked: usize,
    pub pass: bool,
}

impl Prop81Report {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "symbolic": self.symbolic,
            "points_checked": self.points_checked,
            "pass": self.pass,
        })
    }
}

/// Is e' counted by the successor term of the common-origin matrix A?
fn is_succ(g: &OrientedGraph, e: usize, ep: usize) -> bool {
    g.origin(ep) == g.end(e)
}

/// Is e' counted by the common-origin term of A?
fn is_com(g: &OrientedGraph, e: usize, ep: usize) -> bool {
    ep != e && g.origin(ep) == g.origin(e)
}

/// det A = det Δ(u,v) · ∏ᵢ (1 − v(i))^{Q(i)}, where A = I + Succ(u) + Com(v)
/// acts on oriented edges and Δ is the vertex matrix with entries
/// K(i,j)u(i,j) off-diagonal and 1 + K(i,i)u(i,i) + Q(i)v(i) on the diagonal.
pub fn verify_prop_8_1(g: &OrientedGraph, mode: Prop81Mode) -> Result<Prop81Report, IdentityError> {
    let c0 = g.vertex_count();
    let ne = g.oriented_edge_count();
    if ne == 0 {
        return Ok(Prop81Report {
            symbolic: matches!(mode, Prop81Mode::Symbolic),
            points_checked: 0,
            pass: true,
        });
    }
    let k = g.connectedness_matrix();
    let q = g.q_diagonal();
    match mode {
        Prop81Mode::Symbolic => {
            guard(ne <= 8, "symbolic mode requires at most 8 oriented edges")?;
            let vars = uv_varset(c0);
            let u = |i: usize, j: usize| MultiPoly::var(vars.clone(), i * c0 + j);
            let v = |i: usize| MultiPoly::var(vars.clone(), c0 * c0 + i);
            let one = MultiPoly::one(vars.clone());

            let a = Matrix::from_fn(ne, ne, |e, ep| {
                let mut p = if e == ep {
                    one.clone()
                } else {
                    MultiPoly::zero(vars.clone())
                };
                if is_succ(g, e, ep) {
                    p = p.radd(&u(g.origin(e), g.end(e)));
                }
                if is_com(g, e, ep) {
                    p = p.radd(&v(g.origin(e)));
                }
                p
            });
            let delta = Matrix::from_fn(c0, c0, |i, j| {
                let mut p = MultiPoly::zero(vars.clone());
                if k[i][j] > 0 {
                    p = p.radd(&u(i, j).scale(&num_rational::BigRational::from_integer(
                        BigInt::from(k[i][j] as i64),
                    )));
                }
                if i == j {
                    p = p.radd(&one);
                    if q[i] > 0 {
                        p = p.radd(&v(i).scale(&num_rational::BigRational::from_integer(
                            BigInt::from(q[i] as i64),
                        )));
                    }
                }
                p
            });
            let det_a = det_symbolic(&a)?;
            let mut rhs = det_symbolic(&delta)?;
            for i in 0..c0 {
                let f = one.rsub(&v(i));
                for _ in 0..q[i] {
                    rhs = rhs.rmul(&f);
                }
            }
            Ok(Prop81Report {
                symbolic: true,
                points_checked: 0,
                pass: det_a == rhs,
            })
        }
        Prop81Mode::RandomEval { points, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..points {
                let uvals: Vec<Vec<i64>> = (0..c0)
                    .map(|_| (0..c0).map(|_| rng.gen_range(-5..=5)).collect())
                    .collect();
                let vvals: Vec<i64> = (0..c0).map(|_| rng.gen_range(-5..=5)).collect();

                let a = Matrix::from_fn(ne, ne, |e, ep| {
                    let mut x = BigInt::from(i64::from(e == ep));
                    if is_succ(g, e, ep) {
                        x += uvals[g.origin(e)][g.end(e)];
                    }
                    if is_com(g, e, ep) {
                        x += vvals[g.origin(e)];
                    }
                    x
                });
                let delta = Matrix::from_fn(c0, c0, |i, j| {
                    let mut x = BigInt::from(k[i][j] as i64 * uvals[i][j]);
                    if i == j {
                        x += 1 + q[i] as i64 * vvals[i];
                    }
                    x
                });
                let det_a = det_bareiss(&a)?;
                let mut rhs = det_bareiss(&delta)?;
                for i in 0..c0 {
                    for _ in 0..q[i] {
                        rhs *= BigInt::from(1 - vvals[i]);
                    }
                }
                if det_a != rhs {
                    return Ok(Prop81Report {
                        symbolic: false,
                        points_checked: points,
                        pass: false,
                    });
                }
            }
            Ok(Prop81Report {
                symbolic: false,
                points_checked: points,
                pass: true,
            })
        }
    }
}

/// Specialize the common-origin matrix with u(i,j) := −u and v(i) := u² and
/// confirm the route back to the two zeta formulas: (a) the specialized A
/// factors entrywise through the edge and reversal matrices,
/// (b) det(I − uJ) = (1 − u²)^{c₁}, and
/// (c) det A = det Δ(u) · (1 − u²)^{2c₁ − c₀} together with the equality of
/// the two zeta polynomials.
pub fn verify_bass_from_8_1(g: &OrientedGraph) -> Result<bool, IdentityError> {
    let ne = g.oriented_edge_count();
    if ne == 0 {
        return Ok(true);
    }
    let minus_u = UniPoly::from_i64(&[0, -1]);
    let u_sq = UniPoly::from_i64(&[0, 0, 1]);

    // A with the substitution applied.
    let a = Matrix::from_fn(ne, ne, |e, ep| {
        let mut p = if e == ep { UniPoly::one() } else { UniPoly::zero() };
        if is_succ(g, e, ep) {
            p = &p + &minus_u;
        }
        if is_com(g, e, ep) {
            p = &p + &u_sq;
        }
        p
    });

    // (a) A factors through the edge and reversal matrices. Rows index the
    // source edge here, so the operator composition T∘J appears as the
    // matrix product J·T and the factorization reads (I − uJ)(I − uT).
    let t = edge_matrix_t(g);
    let i_minus_ut = Matrix::from_fn(ne, ne, |i, j| {
        let mut p = if i == j { UniPoly::one() } else { UniPoly::zero() };
        if t.get(i, j) != &BigInt::from(0) {
            p = &p + &minus_u;
        }
        p
    });
    let i_minus_uj = Matrix::from_fn(ne, ne, |i, j| {
        let mut p = if i == j { UniPoly::one() } else { UniPoly::zero() };
        if j == g.reverse(i) {
            p = &p + &minus_u;
        }
        p
    });
    if a != i_minus_uj.mul(&i_minus_ut)? {
        return Ok(false);
    }

    // (b) det(I − uJ) = (1 − u²)^{c₁}.
    let c1 = g.c1();
    let one_minus_u2 = UniPoly::from_i64(&[1, 0, -1]);
    if det_bareiss(&i_minus_uj)? != one_minus_u2.pow(c1 as u32) {
        return Ok(false);
    }

    // (c) det A = det Δ(u) · (1 − u²)^{2c₁ − c₀} and the zeta equality that
    // the rearrangement of (a)+(b) produces.
    let c0 = g.vertex_count();
    let det_a = det_bareiss(&a)?;
    let det_delta = det_bareiss(&delta_matrix(g))?;
    let expected = if 2 * c1 >= c0 {
        &det_delta * &one_minus_u2.pow((2 * c1 - c0) as u32)
    } else {
        // 2c₁ < c₀ cannot happen for a connected graph with edges, but keep
        // the arithmetic honest.
        det_delta.exact_div(&one_minus_u2.pow((c0 - 2 * c1) as u32))?
    };
    if det_a != expected {
        return Ok(false);
    }
    Ok(zeta_via_edges(g) == zeta_via_vertices(g)?)
}
