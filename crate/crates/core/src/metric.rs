//! Left-invariant metrics on `S^3` and the exact conversions between their
//! metric eigenvalues, their Milnor-frame Christoffel symbols and their volume.
//!
//! All eigenvalues are measured against the bi-invariant background metric
//! `g0 = -1/2 B` (the round sphere of radius 2, volume `16 pi^2`, sectional
//! curvature `1/4`).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

/// `16 pi^2`, the volume of the background round sphere.
pub const ROUND_VOLUME: f64 = 16.0 * PI * PI;

pub(crate) fn sort3(mut v: [f64; 3]) -> [f64; 3] {
    v.sort_by(f64::total_cmp);
    v
}

/// The multiset `[eta_1^2, eta_2^2, eta_3^2]` of metric eigenvalues, stored ascending.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MetricEigenvalues {
    values: [f64; 3],
}

impl MetricEigenvalues {
    pub fn new(values: [f64; 3]) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite() || *v <= 0.0) {
            return Err(Error::InvalidEigenvalues(format!(
                "metric eigenvalues must be finite and positive, got {values:?}"
            )));
        }
        Ok(Self {
            values: sort3(values),
        })
    }

    pub fn values(&self) -> [f64; 3] {
        self.values
    }

    /// Multiset equality, entry by entry after sorting, within `tol.eq`.
    pub fn approx_eq(&self, other: &Self, tol: &Tolerances) -> bool {
        self.values
            .iter()
            .zip(other.values.iter())
            .all(|(a, b)| tol.rel_eq(*a, *b))
    }

    /// Largest entrywise relative deviation from `other`.
    pub fn max_rel_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(other.values.iter())
            .map(|(a, b)| (a - b).abs() / a.abs().max(b.abs()))
            .fold(0.0, f64::max)
    }
}

/// The multiset `[mu_1, mu_2, mu_3]` of Christoffel symbols in a Milnor frame,
/// together with its elementary symmetric polynomials.
///
/// Invariant: every pairwise sum `mu_i + mu_j` is positive, which is exactly
/// the condition for the associated metric eigenvalues to be positive.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChristoffelTriple {
    mu: [f64; 3],
    p: [f64; 3],
}

impl ChristoffelTriple {
    /// Validates and canonicalizes a triple.
    ///
    /// A pairwise sum at or below `tol.eq * max|mu_i|` is rejected rather than
    /// accepted as a nearly singular metric.
    pub fn new(mu: [f64; 3], tol: &Tolerances) -> Result<Self> {
        if mu.iter().any(|m| !m.is_finite()) {
            return Err(Error::InvalidChristoffel(format!(
                "Christoffel symbols must be finite, got {mu:?}"
            )));
        }
        let mu = sort3(mu);
        let scale = mu.iter().fold(0.0f64, |acc, m| acc.max(m.abs()));
        // mu is sorted, so the two smallest entries give the smallest pair sum.
        let smallest = mu[0] + mu[1];
        if scale == 0.0 || smallest <= tol.eq * scale {
            return Err(Error::InvalidChristoffel(format!(
                "pairwise sums must be positive, got {mu:?} (smallest pair sum {smallest:e})"
            )));
        }
        Ok(Self::from_sorted(mu))
    }

    fn from_sorted(mu: [f64; 3]) -> Self {
        let [a, b, c] = mu;
        Self {
            mu,
            p: [a + b + c, a * b + a * c + b * c, a * b * c],
        }
    }

    pub fn mu(&self) -> [f64; 3] {
        self.mu
    }

    pub fn p1(&self) -> f64 {
        self.p[0]
    }

    pub fn p2(&self) -> f64 {
        self.p[1]
    }

    pub fn p3(&self) -> f64 {
        self.p[2]
    }

    /// `(P1, P2, P3)`.
    pub fn symmetric(&self) -> [f64; 3] {
        self.p
    }

    /// `[mu_1 + mu_2, mu_1 + mu_3, mu_2 + mu_3]` in storage order.
    pub fn pair_sums(&self) -> [f64; 3] {
        let [a, b, c] = self.mu;
        [a + b, a + c, b + c]
    }

    /// `(mu_1 + mu_2)(mu_1 + mu_3)(mu_2 + mu_3) = P1 P2 - P3`, evaluated in
    /// factored form to avoid cancellation.
    pub fn pair_sum_product(&self) -> f64 {
        self.pair_sums().iter().product()
    }

    /// Same triple for the metric scaled by `lambda`: `mu -> mu / sqrt(lambda)`.
    pub fn rescaled(&self, lambda: f64) -> Self {
        let s = lambda.sqrt();
        Self::from_sorted(self.mu.map(|m| m / s))
    }

    pub fn approx_eq(&self, other: &Self, tol: &Tolerances) -> bool {
        let scale = self
            .mu
            .iter()
            .chain(other.mu.iter())
            .fold(0.0f64, |acc, m| acc.max(m.abs()));
        self.mu
            .iter()
            .zip(other.mu.iter())
            .all(|(a, b)| (a - b).abs() <= tol.eq * scale)
    }
}

/// Order `|Gamma|` of the fundamental group of the quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupOrder(u64);

impl GroupOrder {
    pub const TRIVIAL: GroupOrder = GroupOrder(1);
    pub const TWO: GroupOrder = GroupOrder(2);

    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadParameters("group order must be at least 1".into()));
        }
        Ok(Self(n))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64
    }
}

/// Multiplicity pattern of the metric eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MetricClass {
    /// All three eigenvalues equal: a round metric.
    ConstantCurvature,
    /// Exactly two eigenvalues equal: a Berger metric that is not round.
    BergerNonConstant,
    /// Three distinct eigenvalues.
    Generic,
}

/// Christoffel symbols of the metric with the given eigenvalues.
///
/// Inverts `eta^2 = (vol / 16 pi^2) M mu` with `M = J - I` and
/// `vol = 16 pi^2 eta_1 eta_2 eta_3`.
pub fn eigenvalues_to_christoffel(e: &MetricEigenvalues) -> ChristoffelTriple {
    let [x, y, z] = e.values;
    let inv = 1.0 / (2.0 * (x * y * z).sqrt());
    ChristoffelTriple::from_sorted(sort3([
        (-x + y + z) * inv,
        (x - y + z) * inv,
        (x + y - z) * inv,
    ]))
}

/// Metric eigenvalues `1 / ((mu_i + mu_j)(mu_i + mu_k))` of a Christoffel triple.
pub fn christoffel_to_eigenvalues(c: &ChristoffelTriple) -> MetricEigenvalues {
    let [s12, s13, s23] = c.pair_sums();
    MetricEigenvalues {
        values: sort3([1.0 / (s12 * s13), 1.0 / (s12 * s23), 1.0 / (s13 * s23)]),
    }
}

/// Volume of the left-invariant metric on `S^3`: `16 pi^2 / (P1 P2 - P3)`.
///
/// The volume of a quotient by a group of order `n` is this divided by `n`.
pub fn covering_volume(c: &ChristoffelTriple) -> f64 {
    ROUND_VOLUME / c.pair_sum_product()
}

pub fn classify_metric(e: &MetricEigenvalues, tol: &Tolerances) -> MetricClass {
    let [a, b, c] = e.values;
    let ab = tol.rel_eq(a, b);
    let bc = tol.rel_eq(b, c);
    let ac = tol.rel_eq(a, c);
    match (ab, bc, ac) {
        (true, true, _) | (_, _, true) => MetricClass::ConstantCurvature,
        (true, false, false) | (false, true, false) => MetricClass::BergerNonConstant,
        _ => MetricClass::Generic,
    }
}
