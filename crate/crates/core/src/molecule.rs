//! Rigid bodies: principal moments of inertia as left-invariant metrics on
//! `SO(3) = S^3 / {+-1}`.
//!
//! The moments define the metric `-B(I^-1 ., .)` against the negative
//! Killing form `-B`. The rest of the crate measures eigenvalues against
//! `-B/2`, so the eigenvalue attached to `I_j` is `2 / I_j`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::heat::{heat_invariants, invert_spectrum, HeatInvariants, RecoveryReport};
use crate::metric::{
    eigenvalues_to_christoffel, sort3, GroupOrder, MetricClass, MetricEigenvalues,
};
use crate::tolerance::Tolerances;

const SO3: GroupOrder = GroupOrder::TWO;

/// Principal moments `I_1 <= I_2 <= I_3`, in any consistent unit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MomentsOfInertia {
    values: [f64; 3],
}

impl MomentsOfInertia {
    pub fn new(values: [f64; 3]) -> Result<Self> {
        if values.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::BadParameters(format!(
                "moments of inertia must be positive, got {values:?}"
            )));
        }
        Ok(Self { values: sort3(values) })
    }

    pub fn values(&self) -> [f64; 3] {
        self.values
    }

    pub fn max_rel_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(other.values.iter())
            .map(|(a, b)| (a - b).abs() / a.abs().max(b.abs()))
            .fold(0.0, f64::max)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BodyClass {
    /// Three equal moments.
    Spherical,
    /// Exactly two equal moments.
    Symmetric,
    /// Three distinct moments.
    Asymmetric,
}

impl BodyClass {
    pub fn metric_class(self) -> MetricClass {
        match self {
            BodyClass::Spherical => MetricClass::ConstantCurvature,
            BodyClass::Symmetric => MetricClass::BergerNonConstant,
            BodyClass::Asymmetric => MetricClass::Generic,
        }
    }
}

pub fn body_class(m: &MomentsOfInertia, tol: &Tolerances) -> BodyClass {
    let [a, b, c] = m.values;
    match (tol.rel_eq(a, b), tol.rel_eq(b, c)) {
        (true, true) => BodyClass::Spherical,
        (false, false) if !tol.rel_eq(a, c) => BodyClass::Asymmetric,
        (false, false) => BodyClass::Spherical,
        _ => BodyClass::Symmetric,
    }
}

pub fn moments_to_eigenvalues(m: &MomentsOfInertia) -> MetricEigenvalues {
    MetricEigenvalues::new(m.values.map(|i| 2.0 / i))
        .expect("reciprocals of positive moments are positive")
}

/// Heat invariants of `SO(3)` with the metric of the rigid body.
pub fn rotational_invariants(m: &MomentsOfInertia) -> HeatInvariants {
    heat_invariants(&eigenvalues_to_christoffel(&moments_to_eigenvalues(m)), SO3)
}

/// Moments of inertia together with the inversion report they came from.
pub fn recover_moments_with_report(
    h: &HeatInvariants,
    tol: &Tolerances,
) -> Result<(MomentsOfInertia, RecoveryReport)> {
    let report = invert_spectrum(h, SO3, tol)?;
    let moments = report.eigenvalues.values().map(|e| 2.0 / e);
    let moments = MomentsOfInertia::new(moments)
        .map_err(|_| Error::NotRealizable(format!("recovered moments {moments:?} are not positive")))?;
    Ok((moments, report))
}

/// Principal moments of inertia of the body with the given rotational invariants.
pub fn recover_moments(h: &HeatInvariants, tol: &Tolerances) -> Result<MomentsOfInertia> {
    recover_moments_with_report(h, tol).map(|(m, _)| m)
}
