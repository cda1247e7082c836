//! Real roots of `x^3 - P1 x^2 + P2 x - P3` when all three are real.
//!
//! Uses the trigonometric form of the depressed cubic, then cleans up
//! multiple roots (which the trigonometric form only resolves to about half
//! the working precision) by snapping clustered roots onto the matching
//! critical point, and polishes the rest with guarded Newton steps.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::metric::sort3;
use crate::tolerance::Tolerances;

/// Discriminant `P1^2 P2^2 - 4 P2^3 - 4 P1^3 P3 + 18 P1 P2 P3 - 27 P3^2`
/// and the sum of the absolute values of its terms.
pub fn discriminant(p: [f64; 3]) -> (f64, f64) {
    let [p1, p2, p3] = p;
    let terms = [
        p1 * p1 * p2 * p2,
        -4.0 * p2 * p2 * p2,
        -4.0 * p1 * p1 * p1 * p3,
        18.0 * p1 * p2 * p3,
        -27.0 * p3 * p3,
    ];
    (
        terms.iter().sum(),
        terms.iter().map(|t| t.abs()).sum(),
    )
}

fn eval(p: [f64; 3], x: f64) -> f64 {
    ((x - p[0]) * x + p[1]) * x - p[2]
}

fn eval_deriv(p: [f64; 3], x: f64) -> f64 {
    (3.0 * x - 2.0 * p[0]) * x + p[1]
}

/// Critical points `(c_minus, c_plus)` of the cubic, or `None` when it is monotone.
fn critical_points(p: [f64; 3]) -> Option<(f64, f64)> {
    let [p1, p2, _] = p;
    let d = p1 * p1 - 3.0 * p2;
    if d <= 0.0 {
        return None;
    }
    let s = d.sqrt();
    // c_minus * c_plus = P2 / 3; pick the branch without cancellation.
    if p1 >= 0.0 {
        let hi = (p1 + s) / 3.0;
        let lo = if hi != 0.0 { p2 / (3.0 * hi) } else { (p1 - s) / 3.0 };
        Some((lo, hi))
    } else {
        let lo = (p1 - s) / 3.0;
        let hi = if lo != 0.0 { p2 / (3.0 * lo) } else { (p1 + s) / 3.0 };
        Some((lo, hi))
    }
}

fn newton_polish(p: [f64; 3], mut x: f64) -> f64 {
    let mut fx = eval(p, x);
    for _ in 0..4 {
        if fx == 0.0 {
            break;
        }
        let d = eval_deriv(p, x);
        if d == 0.0 || !d.is_finite() {
            break;
        }
        let next = x - fx / d;
        let fnext = eval(p, next);
        if fnext.abs() >= fx.abs() {
            break;
        }
        x = next;
        fx = fnext;
    }
    x
}

/// The three real roots, ascending.
///
/// Fails with [`Error::ComplexRoots`] when the discriminant is below
/// `-tol.disc` relative to the size of its terms.
pub fn real_roots(p: [f64; 3], tol: &Tolerances) -> Result<[f64; 3]> {
    if p.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidChristoffel(format!(
            "symmetric polynomials must be finite, got {p:?}"
        )));
    }
    let (disc, disc_scale) = discriminant(p);
    if disc < -tol.disc * disc_scale {
        return Err(Error::ComplexRoots { discriminant: disc });
    }
    let [p1, p2, p3] = p;
    let shift = p1 / 3.0;

    // Nearly coincident critical points: a triple root.
    let spread = p1 * p1 - 3.0 * p2;
    if spread <= tol.cluster * (p1 * p1 + 3.0 * p2.abs()) {
        return Ok([shift; 3]);
    }

    // Depressed cubic t^3 + a t + b with x = t + P1/3.
    let a = p2 - p1 * p1 / 3.0;
    let b = -2.0 * p1 * p1 * p1 / 27.0 + p1 * p2 / 3.0 - p3;
    let m = 2.0 * (-a / 3.0).sqrt();
    let arg = ((3.0 * b) / (2.0 * a) * (-3.0 / a).sqrt()).clamp(-1.0, 1.0);
    let theta = arg.acos() / 3.0;
    let mut roots = sort3([0.0, 1.0, 2.0].map(|k: f64| {
        m * (theta - 2.0 * PI * k / 3.0).cos() + shift
    }));

    let rho = roots[0].abs().max(roots[2].abs());
    let snap = tol.cluster * rho * rho * rho;
    if let Some((lo, hi)) = critical_points(p) {
        if eval(p, lo).abs() <= snap {
            return Ok(sort3([lo, lo, p1 - 2.0 * lo]));
        }
        if eval(p, hi).abs() <= snap {
            return Ok(sort3([p1 - 2.0 * hi, hi, hi]));
        }
    }
    for r in roots.iter_mut() {
        *r = newton_polish(p, *r);
    }
    Ok(sort3(roots))
}
