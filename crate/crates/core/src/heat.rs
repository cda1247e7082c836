//! Heat invariants `a_0..a_3` of `Gamma \ S^3` and their inversion.
//!
//! The forward direction is a set of closed forms in `P1, P2, P3`. The
//! inverse goes through the coefficients `A, B, C, D`, which pin down `P2`
//! and a quadratic for `P1`; when that quadratic has two admissible roots a
//! second quadratic built from `a_3` picks the right one.

use serde::{Deserialize, Serialize};

use crate::cubic;
use crate::error::{Error, Result};
use crate::metric::{
    christoffel_to_eigenvalues, ChristoffelTriple, GroupOrder, MetricEigenvalues, ROUND_VOLUME,
};
use crate::tolerance::Tolerances;

const SEVEN_FACTORIAL: f64 = 5040.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeatInvariants {
    /// Volume of the quotient.
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

impl HeatInvariants {
    pub fn as_array(&self) -> [f64; 4] {
        [self.a0, self.a1, self.a2, self.a3]
    }

    fn validate(&self) -> Result<()> {
        if self.as_array().iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidHeatInvariants(format!(
                "heat invariants must be finite, got {:?}",
                self.as_array()
            )));
        }
        if self.a0 <= 0.0 {
            return Err(Error::InvalidHeatInvariants(format!(
                "a0 is a volume and must be positive, got {:e}",
                self.a0
            )));
        }
        Ok(())
    }

    /// `a_m * a0^((2m - 3) / 3)`: the invariants made scale free.
    fn normalized(&self) -> [f64; 3] {
        let cbrt = self.a0.cbrt();
        [
            self.a1 / cbrt,
            self.a2 * cbrt,
            self.a3 * cbrt * cbrt * cbrt,
        ]
    }

    /// Largest discrepancy to `other` among the first `count` invariants.
    ///
    /// `a0` is compared relatively; `a_m` for `m >= 1` are compared after
    /// normalization, relative to `max(1, |x|, |y|)`.
    pub fn max_discrepancy(&self, other: &Self, count: usize) -> f64 {
        let mut worst = (self.a0 - other.a0).abs() / self.a0.abs().max(other.a0.abs());
        let (x, y) = (self.normalized(), other.normalized());
        for m in 0..count.saturating_sub(1).min(3) {
            let scale = 1.0f64.max(x[m].abs()).max(y[m].abs());
            worst = worst.max((x[m] - y[m]).abs() / scale);
        }
        worst
    }
}

/// The coefficients `A = 3 a1 / a0`, `B = 16 pi^2 / (a0 n)`,
/// `C = (27 a1^2 - 30 a0 a2) / (4 a0^2)` and `D = 7! a3 / a0`.
///
/// For invariants of an actual metric, `A = P2`, `B = P1 P2 - P3`,
/// `C = P1 P3` and `D` is the `a_3` bracket.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AbcdCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl AbcdCoefficients {
    /// Coefficients of `q2(x) = (192C - 288A^2) x^2 + 480AB x + (184A^3 - 576AC - 240B^2 - D)`,
    /// highest degree first.
    pub fn q2_coefficients(&self) -> [f64; 3] {
        let AbcdCoefficients { a, b, c, d } = *self;
        [
            192.0 * c - 288.0 * a * a,
            480.0 * a * b,
            184.0 * a * a * a - 576.0 * a * c - 240.0 * b * b - d,
        ]
    }

    /// `|q2(x)|` divided by the sum of the magnitudes of its terms.
    pub fn q2_relative_residual(&self, x: f64) -> f64 {
        let AbcdCoefficients { a, b, c, d } = *self;
        let [c2, c1, c0] = self.q2_coefficients();
        let value = (c2 * x + c1) * x + c0;
        let scale = (192.0 * c.abs() + 288.0 * a * a) * x * x
            + c1.abs() * x.abs()
            + 184.0 * a.abs().powi(3)
            + 576.0 * (a * c).abs()
            + 240.0 * b * b
            + d.abs();
        if scale == 0.0 {
            0.0
        } else {
            value.abs() / scale
        }
    }
}

/// Which case of the `P1` recovery applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    AZero,
    ANegative,
    APositiveCNonneg,
    CZero,
    APositiveCNegDistinctRoots,
    APositiveCNegSharedRoot,
    DiscriminantZero,
}

impl Branch {
    /// Whether the branch consults `a_3`.
    pub fn a3_required(self) -> bool {
        matches!(
            self,
            Branch::APositiveCNegDistinctRoots | Branch::APositiveCNegSharedRoot
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RecoveredP {
    /// `(P1, P2, P3)`.
    pub p: [f64; 3],
    pub branch: Branch,
    /// Relative `q2` residuals at the larger and smaller root of `q1`, when
    /// they were needed.
    pub q2_residuals: Option<[f64; 2]>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RecoveryReport {
    pub christoffel: ChristoffelTriple,
    pub eigenvalues: MetricEigenvalues,
    pub branch: Branch,
    pub a3_required: bool,
    pub degenerate_ricci: bool,
    /// Discrepancy between the input and the invariants of the recovered
    /// metric, over the invariants the branch used.
    pub forward_residual: f64,
    pub warnings: Vec<String>,
}

pub fn heat_invariants(c: &ChristoffelTriple, n: GroupOrder) -> HeatInvariants {
    let [p1, p2, p3] = c.symmetric();
    let a0 = ROUND_VOLUME / (n.as_f64() * c.pair_sum_product());
    let a3_bracket = -240.0 * p3 * p3 - 576.0 * p1 * p2 * p3 + 184.0 * p2 * p2 * p2
        + 192.0 * p1 * p1 * p1 * p3
        - 48.0 * p1 * p1 * p2 * p2;
    HeatInvariants {
        a0,
        a1: a0 * p2 / 3.0,
        a2: a0 * (36.0 * p2 * p2 - 48.0 * p1 * p3) / 360.0,
        a3: a0 * a3_bracket / SEVEN_FACTORIAL,
    }
}

pub fn abcd(h: &HeatInvariants, n: GroupOrder) -> Result<AbcdCoefficients> {
    h.validate()?;
    let r1 = h.a1 / h.a0;
    let r2 = h.a2 / h.a0;
    Ok(AbcdCoefficients {
        a: 3.0 * r1,
        b: ROUND_VOLUME / (h.a0 * n.as_f64()),
        c: 6.75 * r1 * r1 - 7.5 * r2,
        d: SEVEN_FACTORIAL * h.a3 / h.a0,
    })
}

/// Larger root of `A x^2 - B x - C` for `A > 0`, given `s = sqrt(B^2 + 4AC)`.
fn larger_q1_root(a: f64, b: f64, s: f64) -> f64 {
    (b + s) / (2.0 * a)
}

/// `P3` from `P1`, using whichever of `A P1 - B` and `C / P1` loses less to rounding.
fn p3_from_p1(k: &AbcdCoefficients, p1: f64) -> f64 {
    let AbcdCoefficients { a, b, c, .. } = *k;
    let err_linear = (a * p1).abs() + b;
    let err_quotient = (1.5 * a * a + c.abs()) / p1.abs();
    if err_quotient < err_linear {
        c / p1
    } else {
        a * p1 - b
    }
}

/// Recovers `(P1, P2, P3)` from the coefficients.
pub fn recover_p(k: &AbcdCoefficients, tol: &Tolerances) -> Result<RecoveredP> {
    let AbcdCoefficients { a, b, c, d } = *k;
    if [a, b, c, d].iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidHeatInvariants(format!(
            "coefficients must be finite, got {k:?}"
        )));
    }
    if b <= 0.0 {
        return Err(Error::InvalidHeatInvariants(format!(
            "B must be positive, got {b:e}"
        )));
    }
    let disc = b * b + 4.0 * a * c;
    let disc_scale = b * b + 4.0 * (a * c).abs();
    let mut warnings = Vec::new();
    let mut q2_residuals = None;

    let (p1, branch) = if a.abs() <= tol.a_zero * (b + c.abs() + 1.0) {
        (-c / b, Branch::AZero)
    } else if c.abs() <= tol.c_zero * (a * a + b + 1.0) {
        if a < 0.0 {
            return Err(Error::InvalidChristoffel(format!(
                "C = 0 with A = {a:e} < 0 forces P1 <= 0"
            )));
        }
        (larger_q1_root(a, b, disc.max(0.0).sqrt()), Branch::CZero)
    } else if a < 0.0 {
        if disc < -tol.disc * disc_scale {
            return Err(Error::NegativeDiscriminant { discriminant: disc });
        }
        // (B - s) / (2A), rewritten without cancellation.
        let s = disc.max(0.0).sqrt();
        (-2.0 * c / (b + s), Branch::ANegative)
    } else if c > 0.0 {
        (larger_q1_root(a, b, disc.sqrt()), Branch::APositiveCNonneg)
    } else {
        if disc < -tol.disc * disc_scale {
            return Err(Error::NegativeDiscriminant { discriminant: disc });
        }
        if disc.abs() <= tol.cluster * disc_scale {
            (b / (2.0 * a), Branch::DiscriminantZero)
        } else if (c + a * a).abs() <= tol.prop * a * a {
            (
                larger_q1_root(a, b, disc.sqrt()),
                Branch::APositiveCNegSharedRoot,
            )
        } else {
            let hi = larger_q1_root(a, b, disc.sqrt());
            let lo = -c / (a * hi);
            let residuals = [k.q2_relative_residual(hi), k.q2_relative_residual(lo)];
            q2_residuals = Some(residuals);
            let pass = residuals.map(|r| r <= tol.root);
            let pick_hi = residuals[0] <= residuals[1];
            let p1 = if pick_hi { hi } else { lo };
            match pass {
                [false, false] => return Err(Error::NoCommonRoot { residuals }),
                [true, true] => {
                    warnings.push(format!(
                        "both roots of q1 ({hi:e}, {lo:e}) satisfy q2; kept the one with the smaller residual"
                    ));
                    (p1, Branch::APositiveCNegSharedRoot)
                }
                _ => (p1, Branch::APositiveCNegDistinctRoots),
            }
        }
    };

    let p3 = match branch {
        Branch::CZero if c == 0.0 => 0.0,
        _ => p3_from_p1(k, p1),
    };
    Ok(RecoveredP {
        p: [p1, a, p3],
        branch,
        q2_residuals,
        warnings,
    })
}

/// The Christoffel triple with elementary symmetric polynomials `p`.
pub fn symmetric_to_multiset(p: [f64; 3], tol: &Tolerances) -> Result<ChristoffelTriple> {
    let roots = cubic::real_roots(p, tol)?;
    ChristoffelTriple::new(roots, tol)
}

/// Recovers the metric, up to local isometry, from its first four heat
/// invariants and the order of the fundamental group.
pub fn invert_spectrum(
    h: &HeatInvariants,
    n: GroupOrder,
    tol: &Tolerances,
) -> Result<RecoveryReport> {
    let k = abcd(h, n)?;
    let rec = recover_p(&k, tol)?;
    let christoffel = symmetric_to_multiset(rec.p, tol)?;
    let eigenvalues = christoffel_to_eigenvalues(&christoffel);
    let a3_required = rec.branch.a3_required();
    let used = if a3_required { 4 } else { 3 };
    let forward_residual = heat_invariants(&christoffel, n).max_discrepancy(h, used);
    let mut warnings = rec.warnings;
    if forward_residual > tol.rt {
        warnings.push(format!(
            "recovered metric reproduces the invariants only to {forward_residual:e}"
        ));
    }
    Ok(RecoveryReport {
        christoffel,
        eigenvalues,
        branch: rec.branch,
        a3_required,
        degenerate_ricci: rec.branch == Branch::CZero,
        forward_residual,
        warnings,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    LocallyIsometric,
    NotLocallyIsometric,
    InvariantsDiffer,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralComparison {
    pub verdict: Verdict,
    pub invariant_discrepancy: f64,
    pub eigenvalues: [Option<MetricEigenvalues>; 2],
    pub diagnostics: Vec<String>,
}

/// Decides whether two quotients with the given heat invariants carry
/// locally isometric metrics.
pub fn compare_spectra(
    h1: &HeatInvariants,
    n1: GroupOrder,
    h2: &HeatInvariants,
    n2: GroupOrder,
    tol: &Tolerances,
) -> Result<SpectralComparison> {
    h1.validate()?;
    h2.validate()?;
    let discrepancy = h1.max_discrepancy(h2, 4);
    if discrepancy > tol.rt {
        return Ok(SpectralComparison {
            verdict: Verdict::InvariantsDiffer,
            invariant_discrepancy: discrepancy,
            eigenvalues: [None, None],
            diagnostics: Vec::new(),
        });
    }
    let r1 = invert_spectrum(h1, n1, tol);
    let r2 = invert_spectrum(h2, n2, tol);
    let mut diagnostics = Vec::new();
    let (e1, e2) = match (r1, r2) {
        (Err(e), Err(_)) => return Err(e),
        (Ok(r1), Ok(r2)) => (Some(r1.eigenvalues), Some(r2.eigenvalues)),
        (Ok(r1), Err(e)) => {
            diagnostics.push(format!("second record ({}) does not invert: {e}", n2.get()));
            (Some(r1.eigenvalues), None)
        }
        (Err(e), Ok(r2)) => {
            diagnostics.push(format!("first record ({}) does not invert: {e}", n1.get()));
            (None, Some(r2.eigenvalues))
        }
    };
    let verdict = match (&e1, &e2) {
        (Some(x), Some(y)) if x.approx_eq(y, tol) => Verdict::LocallyIsometric,
        _ => Verdict::NotLocallyIsometric,
    };
    Ok(SpectralComparison {
        verdict,
        invariant_discrepancy: discrepancy,
        eigenvalues: [e1, e2],
        diagnostics,
    })
}
