/// Floating-point tolerances shared by every operation in the crate.
///
/// The inverse maps are algebraically exact, so these thresholds only absorb
/// rounding noise. A single instance is passed by reference wherever a
/// decision depends on comparing floats.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Tolerances {
    /// Relative tolerance for multiset equality and for rejecting
    /// vanishing pairwise sums of Christoffel symbols.
    pub eq: f64,
    /// Relative tolerance on polynomial discriminants.
    pub disc: f64,
    /// Relative residual a candidate root of the quartic-derived quadratic
    /// may leave before it is rejected.
    pub root: f64,
    /// Relative tolerance for forward/backward roundtrip checks.
    pub rt: f64,
    /// Scaled threshold below which the `A` coefficient counts as zero.
    pub a_zero: f64,
    /// Scaled threshold below which the `C` coefficient counts as zero.
    pub c_zero: f64,
    /// Relative threshold for declaring the two quadratics proportional.
    pub prop: f64,
    /// Relative threshold for a vanishing product of Christoffel symbols.
    pub deg: f64,
    /// Relative residual at a critical point below which two cubic roots
    /// are merged into a double root.
    pub cluster: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eq: 1e-9,
            disc: 1e-10,
            root: 1e-6,
            rt: 1e-9,
            a_zero: 1e-12,
            c_zero: 1e-10,
            prop: 1e-9,
            deg: 1e-10,
            cluster: 1e-12,
        }
    }
}

impl Tolerances {
    /// `true` when `x` and `y` agree to within `eq` relative to the larger magnitude.
    pub fn rel_eq(&self, x: f64, y: f64) -> bool {
        (x - y).abs() <= self.eq * x.abs().max(y.abs())
    }
}
