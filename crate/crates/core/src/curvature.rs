//! Closed-form curvature invariants of a left-invariant metric on `S^3`.
//!
//! Everything here is a polynomial in the Christoffel symbols, and apart from
//! the principal and Ricci curvatures themselves, a polynomial in the
//! elementary symmetric functions `P1, P2, P3`.

use serde::Serialize;

use crate::metric::{sort3, ChristoffelTriple};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CurvatureProfile {
    /// Sectional curvatures of the three coordinate planes of a Milnor frame.
    pub principal: [f64; 3],
    /// Eigenvalues of the Ricci endomorphism.
    pub ricci: [f64; 3],
    /// Scalar curvature.
    pub sc: f64,
    /// `|R|^2`.
    pub r2: f64,
    /// `|Ric|^2`.
    pub ric2: f64,
    /// `(R, R, R)`.
    pub rrr: f64,
    /// `(Ric; R, R)`.
    pub ric_rr: f64,
    /// `(Ric; Ric; R)`.
    pub ricric_r: f64,
    /// `(Ric Ric Ric)`.
    pub ricricric: f64,
    /// `|nabla R|^2`.
    pub grad_r2: f64,
    /// `|nabla Ric|^2`.
    pub grad_ric2: f64,
}

/// Sectional curvatures `K_12, K_13, K_23`, sorted.
///
/// `K = [[-1,1,1],[1,-1,1],[1,1,-1]] (mu_1 mu_2, mu_1 mu_3, mu_2 mu_3)`.
pub fn principal_curvatures(c: &ChristoffelTriple) -> [f64; 3] {
    let [a, b, d] = c.mu();
    let (p12, p13, p23) = (a * b, a * d, b * d);
    sort3([-p12 + p13 + p23, p12 - p13 + p23, p12 + p13 - p23])
}

/// Ricci eigenvalues `2 mu_j mu_k`, sorted.
pub fn ricci_eigenvalues(c: &ChristoffelTriple) -> [f64; 3] {
    let [a, b, d] = c.mu();
    sort3([2.0 * b * d, 2.0 * a * d, 2.0 * a * b])
}

/// The bracket shared by `|nabla R|^2 = 32 X` and `|nabla Ric|^2 = 8 X`.
fn gradient_bracket(p1: f64, p2: f64, p3: f64) -> f64 {
    -9.0 * p3 * p3 - 4.0 * p1 * p1 * p1 * p3 + p1 * p1 * p2 * p2 + 10.0 * p1 * p2 * p3
        - 2.0 * p2 * p2 * p2
}

pub fn curvature_profile(c: &ChristoffelTriple) -> CurvatureProfile {
    let [p1, p2, p3] = c.symmetric();
    let x = gradient_bracket(p1, p2, p3);
    CurvatureProfile {
        principal: principal_curvatures(c),
        ricci: ricci_eigenvalues(c),
        sc: 2.0 * p2,
        r2: 12.0 * p2 * p2 - 32.0 * p1 * p3,
        ric2: 4.0 * p2 * p2 - 8.0 * p1 * p3,
        rrr: 8.0 * (p2 * p2 * p2 - 24.0 * p3 * p3),
        ric_rr: -48.0 * p3 * p3 + 8.0 * p2 * p2 * p2 - 16.0 * p1 * p2 * p3,
        ricric_r: 8.0 * (p1 * p2 * p3 - 6.0 * p3 * p3),
        ricricric: 24.0 * p3 * p3 + 8.0 * p2 * p2 * p2 - 24.0 * p1 * p2 * p3,
        grad_r2: 32.0 * x,
        grad_ric2: 8.0 * x,
    }
}
