//! Finite subgroups of `SO(4)` acting freely on `S^3`, lens space
//! diffeomorphism, and the isometry classes of locally homogeneous metrics
//! on the quotients.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::MetricClass;

/// A fundamental group of an elliptic three-manifold, by normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EllipticGroup {
    /// Cyclic `Gamma_{q;1,p}`, the lens space `L(q; 1, p)`.
    TypeI { q: u64, p: u64 },
    TypeII { n: u64, k: u32, q: u64 },
    TypeIII { n: u64, q: u64 },
    TypeIV { k: u32, q: u64 },
    TypeV { q: u64 },
    TypeVI { q: u64 },
}

fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

fn bad(msg: String) -> Error {
    Error::BadParameters(msg)
}

impl EllipticGroup {
    /// Validates the parameters; `p` of a Type I group is reduced mod `q`.
    pub fn validated(self) -> Result<Self> {
        match self {
            EllipticGroup::TypeI { q, p } => {
                if q == 0 {
                    return Err(bad("Type I needs q >= 1".into()));
                }
                let p = p % q;
                if gcd(p, q) != 1 && q != 1 {
                    return Err(bad(format!("Type I needs gcd(p, q) = 1, got p={p}, q={q}")));
                }
                Ok(EllipticGroup::TypeI { q, p })
            }
            EllipticGroup::TypeII { n, k, q } => {
                if n < 3 || n % 2 == 0 {
                    return Err(bad(format!("Type II needs n >= 3 odd, got {n}")));
                }
                if k < 3 {
                    return Err(bad(format!("Type II needs k >= 3, got {k}")));
                }
                if q == 0 || gcd(q, 2 * n) != 1 {
                    return Err(bad(format!("Type II needs gcd(q, 2n) = 1, got q={q}, n={n}")));
                }
                Ok(self)
            }
            EllipticGroup::TypeIII { n, q } => {
                if n < 2 {
                    return Err(bad(format!("Type III needs n >= 2, got {n}")));
                }
                if q == 0 || gcd(q, 2 * n) != 1 {
                    return Err(bad(format!("Type III needs gcd(q, 2n) = 1, got q={q}, n={n}")));
                }
                Ok(self)
            }
            EllipticGroup::TypeIV { k, q } => {
                if k < 1 {
                    return Err(bad("Type IV needs k >= 1".into()));
                }
                if q == 0 || gcd(q, 6) != 1 {
                    return Err(bad(format!("Type IV needs gcd(q, 6) = 1, got {q}")));
                }
                Ok(self)
            }
            EllipticGroup::TypeV { q } => {
                if q == 0 || gcd(q, 6) != 1 {
                    return Err(bad(format!("Type V needs gcd(q, 6) = 1, got {q}")));
                }
                Ok(self)
            }
            EllipticGroup::TypeVI { q } => {
                if q == 0 || gcd(q, 30) != 1 {
                    return Err(bad(format!("Type VI needs gcd(q, 30) = 1, got {q}")));
                }
                Ok(self)
            }
        }
    }

    /// Binary dihedral or binary polyhedral: the groups acting by left
    /// multiplication on one factor only.
    pub fn is_binary(&self) -> bool {
        matches!(
            self,
            EllipticGroup::TypeIII { q: 1, .. }
                | EllipticGroup::TypeIV { k: 1, q: 1 }
                | EllipticGroup::TypeV { q: 1 }
                | EllipticGroup::TypeVI { q: 1 }
        )
    }

    /// Orientation-insensitive diffeomorphism key of a lens space:
    /// the least of `p, -p, p^-1, -p^-1` mod `q`.
    pub fn lens_key(&self) -> Option<u64> {
        match *self {
            EllipticGroup::TypeI { q, p } => Some(
                lens_orbit(q, p)
                    .into_iter()
                    .min()
                    .unwrap_or(0),
            ),
            _ => None,
        }
    }
}

pub fn group_order(g: &EllipticGroup) -> Result<u64> {
    let g = g.validated()?;
    let overflow = || bad(format!("order of {g:?} overflows u64"));
    let order = match g {
        EllipticGroup::TypeI { q, .. } => Some(q),
        EllipticGroup::TypeII { n, k, q } => 2u64
            .checked_pow(k)
            .and_then(|t| t.checked_mul(n))
            .and_then(|t| t.checked_mul(q)),
        EllipticGroup::TypeIII { n, q } => 4u64.checked_mul(n).and_then(|t| t.checked_mul(q)),
        EllipticGroup::TypeIV { k, q } => 3u64
            .checked_pow(k)
            .and_then(|t| t.checked_mul(8))
            .and_then(|t| t.checked_mul(q)),
        EllipticGroup::TypeV { q } => 48u64.checked_mul(q),
        EllipticGroup::TypeVI { q } => 120u64.checked_mul(q),
    };
    order.ok_or_else(overflow)
}

/// Inverse of `p` modulo `q`, for `gcd(p, q) = 1`.
fn mod_inverse(p: u64, q: u64) -> u64 {
    if q == 1 {
        return 0;
    }
    let e = (p as i128).extended_gcd(&(q as i128));
    e.x.rem_euclid(q as i128) as u64
}

/// `{p, -p, p^-1, -p^-1}` mod `q`.
fn lens_orbit(q: u64, p: u64) -> [u64; 4] {
    let p = p % q;
    let inv = mod_inverse(p, q);
    [p, (q - p) % q, inv, (q - inv) % q]
}

/// Whether `L(q; 1, p1)` and `L(q; 1, p2)` are diffeomorphic.
pub fn lens_diffeomorphic(q: u64, p1: u64, p2: u64) -> Result<bool> {
    if q == 0 {
        return Err(bad("lens spaces need q >= 1".into()));
    }
    for p in [p1, p2] {
        if gcd(p % q, q) != 1 && q != 1 {
            return Err(bad(format!("need gcd(p, q) = 1, got p={p}, q={q}")));
        }
    }
    Ok(lens_orbit(q, p1).contains(&(p2 % q)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IsometryLabel {
    FullO4,
    BergerPair,
    GenericFour,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ComponentLabel {
    SO4,
    S3xS1,
    S3xPm1,
}

/// Symbolic description of the isometry group of a left-invariant metric on `S^3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IsometryGroupDescriptor {
    pub label: IsometryLabel,
    pub component_label: ComponentLabel,
}

pub fn isometry_group_descriptor(m: MetricClass) -> IsometryGroupDescriptor {
    let (label, component_label) = match m {
        MetricClass::ConstantCurvature => (IsometryLabel::FullO4, ComponentLabel::SO4),
        MetricClass::BergerNonConstant => (IsometryLabel::BergerPair, ComponentLabel::S3xS1),
        MetricClass::Generic => (IsometryLabel::GenericFour, ComponentLabel::S3xPm1),
    };
    IsometryGroupDescriptor { label, component_label }
}

/// Identity component of the centralizer of the covering group in the
/// isometry group of the covering metric, written as left and right factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Centralizer {
    S3xS3,
    S3xS1,
    S3x1,
    S1xS1,
    S1x1,
    #[serde(rename = "1xS3")]
    OnexS3,
    #[serde(rename = "1xS1")]
    OnexS1,
    #[serde(rename = "1x1")]
    Onex1,
}

/// The row of the classification table a group falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TableRow {
    TrivialOrZ2,
    LensGeneral,
    LensPlusMinusOne,
    NonCyclic,
    Binary,
}

pub fn table_row(g: &EllipticGroup) -> Result<TableRow> {
    let g = g.validated()?;
    Ok(match g {
        EllipticGroup::TypeI { q, .. } if q <= 2 => TableRow::TrivialOrZ2,
        EllipticGroup::TypeI { q, p } if p == 1 || p == q - 1 => TableRow::LensPlusMinusOne,
        EllipticGroup::TypeI { .. } => TableRow::LensGeneral,
        _ if g.is_binary() => TableRow::Binary,
        _ => TableRow::NonCyclic,
    })
}

/// Isometry classes of locally homogeneous metrics on `Gamma \ S^3` whose
/// covering metric has the given class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientStructure {
    pub class_count: u8,
    pub homogeneous_flags: Vec<bool>,
    pub centralizer_descriptor: Vec<Centralizer>,
    pub notes: String,
}

pub fn quotient_structure(g: &EllipticGroup, m: MetricClass) -> Result<QuotientStructure> {
    use Centralizer as Z;
    use MetricClass as M;
    use TableRow as R;
    let row = table_row(g)?;
    let (flags, centralizers, notes): (&[bool], &[Centralizer], &str) = match (row, m) {
        (R::TrivialOrZ2, M::ConstantCurvature) => (&[true], &[Z::S3xS3], "round quotient"),
        (R::TrivialOrZ2, M::BergerNonConstant) => (&[true], &[Z::S3xS1], "unique class"),
        (R::TrivialOrZ2, M::Generic) => (&[true], &[Z::S3x1], "unique class"),
        (R::LensGeneral, M::ConstantCurvature) => (&[false], &[Z::S1xS1], "unique class"),
        (R::LensGeneral, M::BergerNonConstant) => (
            &[false, false],
            &[Z::S1xS1, Z::S1xS1],
            "two classes, from the two orientations of the Hopf fibration",
        ),
        (R::LensGeneral, M::Generic) => (&[], &[], "no locally homogeneous metric of this type"),
        (R::LensPlusMinusOne, M::ConstantCurvature) => (&[true], &[Z::S3xS1], "unique class"),
        (R::LensPlusMinusOne, M::BergerNonConstant) => (
            &[true, false],
            &[Z::S3xS1, Z::S1xS1],
            "two classes; the first has the Hopf fibres along the group action",
        ),
        (R::LensPlusMinusOne, M::Generic) => (&[false], &[Z::S1x1], "unique class"),
        (R::NonCyclic, M::ConstantCurvature) => (&[false], &[Z::OnexS1], "unique class"),
        (R::NonCyclic, M::BergerNonConstant) => (&[false], &[Z::OnexS1], "unique class"),
        (R::NonCyclic, M::Generic) => (&[], &[], "no locally homogeneous metric of this type"),
        (R::Binary, M::ConstantCurvature) => (&[true], &[Z::OnexS3], "unique class"),
        (R::Binary, M::BergerNonConstant) => (&[false], &[Z::OnexS1], "unique class"),
        (R::Binary, M::Generic) => (&[false], &[Z::Onex1], "unique class"),
    };
    Ok(QuotientStructure {
        class_count: flags.len() as u8,
        homogeneous_flags: flags.to_vec(),
        centralizer_descriptor: centralizers.to_vec(),
        notes: notes.to_string(),
    })
}
