//! Exact computation of the Ihara–Selberg zeta function η(u) of a finite
//! connected multigraph by three independent routes — the product over prime
//! reduced cycles, the determinant of the non-backtracking edge matrix, and
//! the vertex-matrix formula (1−u²)^{c₁−c₀}·det(I − uK + u²Q) — together
//! with mechanical verification of the Lyndon-word identities that connect
//! them (the β-homomorphism chain, the sign-reversing involution, the
//! MacMahon master theorem instance, the Amitsur identity, and the
//! common-origin determinant factorization).
//!
//! All arithmetic is exact: arbitrary-precision integers for univariate
//! polynomials, arbitrary-precision rationals for sparse multivariate ones.

pub mod graph;
pub mod identities;
pub mod poly;
pub mod words;
pub mod zeta;
