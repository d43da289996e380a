//! The headline computations: the non-backtracking edge matrix, the vertex
//! matrix Δ(u) = I − uK + u²Q, prime reduced cycle enumeration, and the
//! three-way equality between the cycle product and the two determinant
//! formulas.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::graph::OrientedGraph;
use crate::poly::{det_bareiss, truncated_product, Matrix, PolyError, UniPoly};

/// Non-backtracking edge matrix T = Succ − J: T(e,e') = 1 iff e' is a
/// successor of e other than the reverse of e.
pub fn edge_matrix_t(g: &OrientedGraph) -> Matrix<BigInt> {
    let n = g.oriented_edge_count();
    Matrix::from_fn(n, n, |e, ep| {
        let succ = g.origin(ep) == g.end(e) && ep != g.reverse(e);
        BigInt::from(u8::from(succ))
    })
}

/// det(I − uT): the zeta polynomial from the edge-matrix formula. Degree is
/// at most 2c₁ and the constant term is 1.
pub fn zeta_via_edges(g: &OrientedGraph) -> UniPoly {
    let n = g.oriented_edge_count();
    if n == 0 {
        return UniPoly::one();
    }
    let t = edge_matrix_t(g);
    let m = Matrix::from_fn(n, n, |i, j| {
        let mut p = if i == j { UniPoly::one() } else { UniPoly::zero() };
        let tij = t.get(i, j);
        if tij != &BigInt::from(0) {
            p = &p - &UniPoly::monomial(1, 1);
        }
        p
    });
    det_bareiss(&m).expect("entries are exact integer polynomials")
}

/// The c₀-dimensional matrix Δ(u) = I − uK + u²Q over integer polynomials.
pub fn delta_matrix(g: &OrientedGraph) -> Matrix<UniPoly> {
    let n = g.vertex_count();
    let k = g.connectedness_matrix();
    let q = g.q_diagonal();
    Matrix::from_fn(n, n, |i, j| {
        let mut p = if i == j { UniPoly::one() } else { UniPoly::zero() };
        if k[i][j] > 0 {
            p = &p - &UniPoly::monomial(k[i][j] as i64, 1);
        }
        if i == j && q[i] > 0 {
            p = &p + &UniPoly::monomial(q[i] as i64, 2);
        }
        p
    })
}

/// (1−u²)^{c₁−c₀} · det(Δ(u)): the zeta polynomial from the vertex-matrix
/// formula. For trees (c₁ < c₀) the prefactor exponent is negative and the
/// division is performed exactly; a nonzero remainder would signal a bug and
/// surfaces as `InexactDivision`.
pub fn zeta_via_vertices(g: &OrientedGraph) -> Result<UniPoly, PolyError> {
    if g.oriented_edge_count() == 0 {
        return Ok(UniPoly::one());
    }
    let det = det_bareiss(&delta_matrix(g))?;
    let c0 = g.vertex_count();
    let c1 = g.c1();
    let one_minus_u2 = UniPoly::from_i64(&[1, 0, -1]);
    if c1 >= c0 {
        Ok(&det * &one_minus_u2.pow((c1 - c0) as u32))
    } else {
        det.exact_div(&one_minus_u2.pow((c0 - c1) as u32))
    }
}

/// A prime cycle class: the lexicographically minimal rotation of its edge
/// word, which is a Lyndon word over edge ids.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct CycleClass {
    pub edges: Vec<usize>,
}

impl CycleClass {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Depth-first search over prenecklaces of the edge alphabet, calling
/// `visit` once per prime cycle class with its minimal-rotation edge word.
/// `period` tracks the period of the longest Lyndon prefix, so appending a
/// letter smaller than the one a period back can never extend to a minimal
/// rotation and is pruned; a complete word is Lyndon exactly when its period
/// equals its length, which makes primality and rotation-minimality
/// structural rather than post-filtered.
fn visit_prime_cycles(
    g: &OrientedGraph,
    max_len: usize,
    reduced_only: bool,
    visit: &mut impl FnMut(&[usize]),
) {
    fn dfs(
        g: &OrientedGraph,
        word: &mut Vec<usize>,
        period: usize,
        max_len: usize,
        reduced_only: bool,
        visit: &mut impl FnMut(&[usize]),
    ) {
        let last = *word.last().unwrap();
        let first = word[0];
        // Closing transition valid and the word aperiodic-minimal?
        if period == word.len()
            && g.origin(first) == g.end(last)
            && !(reduced_only && first == g.reverse(last))
        {
            visit(word);
        }
        if word.len() == max_len {
            return;
        }
        for &e in g.successors(last) {
            let anchor = word[word.len() - period];
            if e < anchor {
                continue;
            }
            if reduced_only && e == g.reverse(last) {
                continue;
            }
            let next_period = if e == anchor { period } else { word.len() + 1 };
            word.push(e);
            dfs(g, word, next_period, max_len, reduced_only, visit);
            word.pop();
        }
    }

    let mut word: Vec<usize> = Vec::new();
    for start in 0..g.oriented_edge_count() {
        word.push(start);
        dfs(g, &mut word, 1, max_len, reduced_only, visit);
        word.pop();
    }
}

/// One representative per class of prime cycles of length ≤ `max_len`;
/// `reduced_only` restricts to cycles with no step followed by its own
/// reverse (including across the wrap-around). Output sorted by (length,
/// representative).
pub fn enumerate_prime_reduced_cycles(
    g: &OrientedGraph,
    max_len: usize,
    reduced_only: bool,
) -> Vec<CycleClass> {
    let mut out = Vec::new();
    visit_prime_cycles(g, max_len, reduced_only, &mut |word| {
        out.push(CycleClass {
            edges: word.to_vec(),
        });
    });
    out.sort_by(|a, b| (a.len(), &a.edges).cmp(&(b.len(), &b.edges)));
    out
}

/// Number of prime cycle classes per length, without materializing the
/// representatives (dense multigraphs can have a very large census).
pub fn count_prime_reduced_cycles(
    g: &OrientedGraph,
    max_len: usize,
    reduced_only: bool,
) -> BTreeMap<usize, usize> {
    let mut census = BTreeMap::new();
    visit_prime_cycles(g, max_len, reduced_only, &mut |word| {
        *census.entry(word.len()).or_insert(0) += 1;
    });
    census
}

/// (1 − u^m)^r truncated at degree `max_degree`, expanded by binomials so a
/// large multiplicity r costs only max_degree/m terms.
fn one_minus_um_pow(m: usize, r: usize, max_degree: usize) -> UniPoly {
    let mut coeffs = vec![BigInt::from(0); max_degree + 1];
    let r_big = BigInt::from(r);
    let mut binom = BigInt::from(1);
    let mut k = 0usize;
    while k * m <= max_degree && k <= r {
        coeffs[k * m] = if k % 2 == 0 { binom.clone() } else { -binom.clone() };
        // C(r, k+1) = C(r, k) * (r - k) / (k + 1), an exact division.
        binom = binom * (&r_big - BigInt::from(k)) / BigInt::from(k + 1);
        k += 1;
    }
    UniPoly::new(coeffs)
}

/// ∏ over prime reduced cycles of length ≤ L of (1 − u^{|γ|}), truncated at
/// degree L. Equals the truncation of [`zeta_via_edges`]. Cycles are counted
/// per length rather than listed, so dense censuses stay cheap.
pub fn eta_truncated(g: &OrientedGraph, max_degree: usize) -> UniPoly {
    if max_degree == 0 {
        return UniPoly::one();
    }
    let census = count_prime_reduced_cycles(g, max_degree, true);
    let factors = census
        .iter()
        .map(|(&m, &r)| one_minus_um_pow(m, r, max_degree));
    truncated_product(factors, max_degree).expect("factors are 1 - u^k powers")
}

/// Joint report for the two zeta identities: exact equality of the two
/// determinant formulas and equality of the truncated cycle product with the
/// truncated edge formula.
#[derive(Clone, Debug)]
pub struct BassReport {
    pub zeta_edges: UniPoly,
    pub zeta_vertices: UniPoly,
    pub eta_truncated: UniPoly,
    pub max_degree: usize,
    pub census: BTreeMap<usize, usize>,
    pub pass_13: bool,
    pub pass_12: bool,
}

impl BassReport {
    pub fn all_pass(&self) -> bool {
        self.pass_13 && self.pass_12
    }

    pub fn to_json(&self) -> serde_json::Value {
        let census: serde_json::Map<String, serde_json::Value> = self
            .census
            .iter()
            .map(|(&k, &v)| (k.to_string(), serde_json::Value::from(v)))
            .collect();
        serde_json::json!({
            "zeta_edges": self.zeta_edges.to_json(),
            "zeta_vertices": self.zeta_vertices.to_json(),
            "eta_truncated": self.eta_truncated.to_json(),
            "L": self.max_degree,
            "census": census,
            "pass_13": self.pass_13,
            "pass_12": self.pass_12,
        })
    }
}

pub fn verify_bass(g: &OrientedGraph, max_degree: usize) -> Result<BassReport, PolyError> {
    let edges = zeta_via_edges(g);
    let vertices = zeta_via_vertices(g)?;
    let eta = eta_truncated(g, max_degree);
    let census = count_prime_reduced_cycles(g, max_degree, true);
    let pass_13 = edges == vertices;
    let pass_12 = eta == edges.truncate(max_degree);
    Ok(BassReport {
        zeta_edges: edges,
        zeta_vertices: vertices,
        eta_truncated: eta,
        max_degree,
        census,
        pass_13,
        pass_12,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_oriented, UnorientedGraphSpec};

    fn triangle() -> OrientedGraph {
        build_oriented(&UnorientedGraphSpec::new(3, vec![(0, 1), (1, 2), (2, 0)])).unwrap()
    }

    fn single_loop() -> OrientedGraph {
        build_oriented(&UnorientedGraphSpec::new(1, vec![(0, 0)])).unwrap()
    }

    fn path2() -> OrientedGraph {
        build_oriented(&UnorientedGraphSpec::new(2, vec![(0, 1)])).unwrap()
    }

    #[test]
    fn edge_matrix_path_is_zero() {
        let t = edge_matrix_t(&path2());
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(t.get(i, j), &BigInt::from(0));
            }
        }
    }

    #[test]
    fn edge_matrix_triangle_one_per_row() {
        let t = edge_matrix_t(&triangle());
        for i in 0..6 {
            let row: BigInt = (0..6).map(|j| t.get(i, j).clone()).sum();
            assert_eq!(row, BigInt::from(1));
        }
    }

    #[test]
    fn edge_matrix_loop() {
        let t = edge_matrix_t(&single_loop());
        assert_eq!(t.get(0, 0), &BigInt::from(1));
        assert_eq!(t.get(0, 1), &BigInt::from(0));
        assert_eq!(t.get(1, 1), &BigInt::from(1));
        assert_eq!(t.get(1, 0), &BigInt::from(0));
    }

    #[test]
    fn edge_matrix_row_sums_are_q() {
        let g = build_oriented(&UnorientedGraphSpec::new(
            4,
            vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 1)],
        ))
        .unwrap();
        let t = edge_matrix_t(&g);
        let q = g.q_diagonal();
        for e in 0..g.oriented_edge_count() {
            let row: BigInt = (0..g.oriented_edge_count()).map(|j| t.get(e, j).clone()).sum();
            assert_eq!(row, BigInt::from(q[g.end(e)] as i64));
        }
    }

    #[test]
    fn triangle_zeta_both_ways() {
        let g = triangle();
        let expect = UniPoly::from_i64(&[1, 0, 0, -2, 0, 0, 1]);
        assert_eq!(zeta_via_edges(&g), expect);
        assert_eq!(zeta_via_vertices(&g).unwrap(), expect);
    }

    #[test]
    fn path_zeta_is_one() {
        let g = path2();
        assert_eq!(zeta_via_edges(&g), UniPoly::one());
        assert_eq!(zeta_via_vertices(&g).unwrap(), UniPoly::one());
    }

    #[test]
    fn loop_zeta_is_square_of_linear() {
        let g = single_loop();
        let expect = UniPoly::from_i64(&[1, -2, 1]);
        assert_eq!(zeta_via_edges(&g), expect);
        assert_eq!(zeta_via_vertices(&g).unwrap(), expect);
    }

    #[test]
    fn edgeless_graph_zeta_is_one() {
        let g = build_oriented(&UnorientedGraphSpec::new(1, vec![])).unwrap();
        assert_eq!(zeta_via_edges(&g), UniPoly::one());
        assert_eq!(zeta_via_vertices(&g).unwrap(), UniPoly::one());
        assert!(enumerate_prime_reduced_cycles(&g, 5, true).is_empty());
    }

    #[test]
    fn triangle_cycles() {
        let cycles = enumerate_prime_reduced_cycles(&triangle(), 10, true);
        assert_eq!(cycles.len(), 2);
        assert!(cycles.iter().all(|c| c.len() == 3));
    }

    #[test]
    fn loop_cycles() {
        let cycles = enumerate_prime_reduced_cycles(&single_loop(), 5, true);
        assert_eq!(
            cycles,
            vec![CycleClass { edges: vec![0] }, CycleClass { edges: vec![1] }]
        );
    }

    #[test]
    fn tree_has_no_cycles() {
        let g = build_oriented(&UnorientedGraphSpec::new(4, vec![(0, 1), (1, 2), (1, 3)])).unwrap();
        assert!(enumerate_prime_reduced_cycles(&g, 12, true).is_empty());
        assert_eq!(eta_truncated(&g, 12), UniPoly::one());
    }

    #[test]
    fn eta_truncations() {
        assert_eq!(eta_truncated(&triangle(), 5), UniPoly::from_i64(&[1, 0, 0, -2]));
        assert_eq!(eta_truncated(&single_loop(), 3), UniPoly::from_i64(&[1, -2, 1]));
    }

    /// Brute-force oracle: closed non-backtracking walks, quotient by
    /// rotation, keep aperiodic classes.
    fn cycle_oracle(g: &OrientedGraph, max_len: usize, reduced_only: bool) -> Vec<CycleClass> {
        use std::collections::BTreeSet;
        let n = g.oriented_edge_count();
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut stack: Vec<Vec<usize>> = (0..n).map(|e| vec![e]).collect();
        while let Some(wk) = stack.pop() {
            let last = *wk.last().unwrap();
            // Closure test.
            if g.origin(wk[0]) == g.end(last) && !(reduced_only && wk[0] == g.reverse(last)) {
                let word = crate::words::Word(wk.iter().map(|&e| e as u32).collect());
                if crate::words::is_lyndon(&word.min_rotation())
                    && word.min_rotation().rotations().contains(&word)
                {
                    found.insert(word.min_rotation().0.iter().map(|&e| e as usize).collect());
                }
            }
            if wk.len() < max_len {
                for &e in g.successors(last) {
                    if reduced_only && e == g.reverse(last) {
                        continue;
                    }
                    let mut next = wk.clone();
                    next.push(e);
                    stack.push(next);
                }
            }
        }
        let mut out: Vec<CycleClass> = found.into_iter().map(|edges| CycleClass { edges }).collect();
        out.sort_by(|a, b| (a.len(), &a.edges).cmp(&(b.len(), &b.edges)));
        out
    }

    #[test]
    fn enumerator_matches_walk_oracle() {
        let specs = vec![
            UnorientedGraphSpec::new(3, vec![(0, 1), (1, 2), (2, 0)]),
            UnorientedGraphSpec::new(1, vec![(0, 0)]),
            UnorientedGraphSpec::new(2, vec![(0, 1), (0, 1)]),
            UnorientedGraphSpec::new(3, vec![(0, 1), (1, 2), (2, 0), (1, 1)]),
            UnorientedGraphSpec::new(2, vec![(0, 1), (0, 1), (0, 0)]),
        ];
        for spec in specs {
            let g = build_oriented(&spec).unwrap();
            if g.oriented_edge_count() > 10 {
                continue;
            }
            for reduced in [true, false] {
                let fast = enumerate_prime_reduced_cycles(&g, 8, reduced);
                let slow = cycle_oracle(&g, 8, reduced);
                assert_eq!(fast, slow, "spec {spec:?} reduced {reduced}");
            }
        }
    }

    #[test]
    fn dropping_reducedness_breaks_the_identity() {
        // Negative control: the cycle product over all prime cycles (not
        // just reduced ones) does not match det(I - uT) on the triangle.
        let g = triangle();
        let all = enumerate_prime_reduced_cycles(&g, 6, false);
        let factors = all
            .iter()
            .map(|c| &UniPoly::one() - &UniPoly::monomial(1, c.len()));
        let prod = truncated_product(factors, 6).unwrap();
        assert_ne!(prod, zeta_via_edges(&g).truncate(6));
    }

    #[test]
    fn verify_bass_triangle_report() {
        let r = verify_bass(&triangle(), 8).unwrap();
        assert!(r.all_pass());
        assert_eq!(r.census, BTreeMap::from([(3, 2)]));
        let json = r.to_json();
        assert_eq!(json["pass_13"], true);
        assert_eq!(json["census"]["3"], 2);
        assert_eq!(json["zeta_edges"]["coeffs"][3], -2);
    }
}
