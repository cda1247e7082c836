//! Spectral and curvature data of locally homogeneous elliptic three-manifolds.
//!
//! A left-invariant metric on `S^3` is fixed, up to isometry, by the multiset
//! of its metric eigenvalues relative to the round metric of radius 2. This
//! crate converts between that multiset, the Christoffel symbols of a Milnor
//! frame, the closed-form curvature invariants and the first four heat
//! invariants of a quotient `Gamma \ S^3`, and inverts those maps.
//!
//! ```
//! use elliptic_spectra::{
//!     eigenvalues_to_christoffel, heat_invariants, invert_spectrum, GroupOrder,
//!     MetricEigenvalues, Tolerances,
//! };
//!
//! let tol = Tolerances::default();
//! let e = MetricEigenvalues::new([0.5, 1.0 / 3.0, 1.0 / 6.0])?;
//! let n = GroupOrder::new(2)?;
//! let h = heat_invariants(&eigenvalues_to_christoffel(&e), n);
//! let report = invert_spectrum(&h, n, &tol)?;
//! assert!(report.eigenvalues.approx_eq(&e, &tol));
//! # Ok::<(), elliptic_spectra::Error>(())
//! ```

pub mod classify;
pub mod cubic;
pub mod curvature;
mod error;
pub mod exact;
pub mod heat;
pub mod metric;
pub mod molecule;
pub mod recover;
mod tolerance;

pub use classify::{
    group_order, isometry_group_descriptor, lens_diffeomorphic, quotient_structure, Centralizer,
    ComponentLabel, EllipticGroup, IsometryGroupDescriptor, IsometryLabel, QuotientStructure,
};
pub use curvature::{curvature_profile, principal_curvatures, ricci_eigenvalues, CurvatureProfile};
pub use error::{Error, Result};
pub use heat::{
    abcd, compare_spectra, heat_invariants, invert_spectrum, recover_p, symmetric_to_multiset,
    AbcdCoefficients, Branch, HeatInvariants, RecoveredP, RecoveryReport, SpectralComparison,
    Verdict,
};
pub use metric::{
    christoffel_to_eigenvalues, classify_metric, covering_volume, eigenvalues_to_christoffel,
    ChristoffelTriple, GroupOrder, MetricClass, MetricEigenvalues, ROUND_VOLUME,
};
pub use molecule::{
    body_class, moments_to_eigenvalues, recover_moments, rotational_invariants, BodyClass,
    MomentsOfInertia,
};
pub use recover::{
    products_from_curvatures, recover_from_curvature_and_volume, unique_degenerate_metric,
};
pub use tolerance::Tolerances;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/metrics.md")]
    struct Metrics;
    #[doc = include_str!("../../../book/src/curvature.md")]
    struct Curvature;
    #[doc = include_str!("../../../book/src/heat.md")]
    struct Heat;
    #[doc = include_str!("../../../book/src/inversion.md")]
    struct Inversion;
    #[doc = include_str!("../../../book/src/classification.md")]
    struct Classification;
    #[doc = include_str!("../../../book/src/isocurved.md")]
    struct Isocurved;
    #[doc = include_str!("../../../book/src/molecules.md")]
    struct Molecules;
    #[doc = include_str!("../../../book/src/exact.md")]
    struct Exact;
    #[doc = include_str!("../../../book/src/testing.md")]
    struct Testing;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
    #[doc = include_str!("../../../README.md")]
    struct Readme;
}
