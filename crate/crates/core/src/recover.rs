//! Recovering the metric from its principal curvatures and volume.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::metric::{covering_volume, ChristoffelTriple, GroupOrder, ROUND_VOLUME};
use crate::tolerance::Tolerances;

/// `(mu_1 mu_2, mu_1 mu_3, mu_2 mu_3)` from `(K_12, K_13, K_23)`, in input order.
pub fn products_from_curvatures(k: [f64; 3]) -> [f64; 3] {
    let [k12, k13, k23] = k;
    [
        0.5 * (k13 + k23),
        0.5 * (k12 + k23),
        0.5 * (k12 + k13),
    ]
}

fn inconsistent(msg: String) -> Error {
    Error::InconsistentCurvature(msg)
}

/// The Christoffel triple with principal curvatures `k` whose quotient by a
/// group of order `n` has volume `vol`.
pub fn recover_from_curvature_and_volume(
    k: [f64; 3],
    vol: f64,
    n: GroupOrder,
    tol: &Tolerances,
) -> Result<ChristoffelTriple> {
    if k.iter().any(|x| !x.is_finite()) {
        return Err(Error::BadParameters(format!("curvatures must be finite, got {k:?}")));
    }
    if !(vol.is_finite() && vol > 0.0) {
        return Err(Error::BadParameters(format!("volume must be positive, got {vol:e}")));
    }
    let cover_vol = vol * n.as_f64();
    let p = products_from_curvatures(k);
    let largest = p.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    let small: Vec<usize> = (0..3).filter(|&i| p[i].abs() <= tol.deg * largest).collect();

    match small.len() {
        0 => {
            let [p12, p13, p23] = p;
            if p12 * p13 * p23 < 0.0 {
                return Err(inconsistent(format!(
                    "products {p:?} have negative product, so some mu_i^2 < 0"
                )));
            }
            let m1 = (p12 * p13 / p23).abs().sqrt();
            let m2 = (p12 * p23 / p13).abs().sqrt();
            let m3 = (p13 * p23 / p12).abs().sqrt();
            let base = [m1, m2 * p12.signum(), m3 * p13.signum()];
            let c = [base, base.map(|x| -x)]
                .into_iter()
                .find_map(|mu| ChristoffelTriple::new(mu, tol).ok())
                .ok_or_else(|| {
                    inconsistent(format!(
                        "no sign choice for {base:?} has positive pairwise sums"
                    ))
                })?;
            let v = covering_volume(&c);
            if (v - cover_vol).abs() > tol.rt * v.max(cover_vol) * 1e3 {
                return Err(inconsistent(format!(
                    "curvatures force covering volume {v:e}, but {cover_vol:e} was given"
                )));
            }
            Ok(c)
        }
        2 => {
            let p2: f64 = p.iter().sum();
            if p2 <= 0.0 {
                return Err(inconsistent(format!(
                    "degenerate Ricci curvature needs a positive product, got {p:?}"
                )));
            }
            let p1 = ROUND_VOLUME / (cover_vol * p2);
            let disc = p1 * p1 - 4.0 * p2;
            if disc < -tol.disc * p1 * p1 {
                return Err(inconsistent(format!(
                    "x^2 - {p1:e} x + {p2:e} has no real roots"
                )));
            }
            let big = 0.5 * (p1 + disc.max(0.0).sqrt());
            ChristoffelTriple::new([0.0, p2 / big, big], tol)
                .map_err(|e| inconsistent(e.to_string()))
        }
        _ => Err(inconsistent(format!(
            "products {p:?} vanish in a pattern no metric produces"
        ))),
    }
}

/// The unique left-invariant metric with degenerate Ricci tensor, scalar
/// curvature `s` and quotient volume `v`.
pub fn unique_degenerate_metric(
    s: f64,
    v: f64,
    n: GroupOrder,
    tol: &Tolerances,
) -> Result<ChristoffelTriple> {
    if !(s.is_finite() && v.is_finite() && v > 0.0) {
        return Err(Error::BadParameters(format!(
            "need finite scalar curvature and positive volume, got S={s:e}, V={v:e}"
        )));
    }
    if s <= 0.0 {
        return Err(Error::ExistenceViolated(format!(
            "degenerate Ricci tensor forces positive scalar curvature, got {s:e}"
        )));
    }
    let beta = 32.0 * PI * PI / (s * v * n.as_f64());
    let disc = beta * beta - 2.0 * s;
    if disc < -tol.disc * (beta * beta).max(2.0 * s) {
        return Err(Error::ExistenceViolated(format!(
            "beta^2 - 2S = {disc:e} < 0 with beta = {beta:e}"
        )));
    }
    let big = 0.5 * (beta + disc.max(0.0).sqrt());
    ChristoffelTriple::new([0.0, 0.5 * s / big, big], tol)
}
