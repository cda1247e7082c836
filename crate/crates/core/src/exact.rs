//! Exact arithmetic for rational Christoffel symbols.
//!
//! Every volume and heat invariant of a metric with rational Christoffel
//! symbols is a rational multiple of `pi^2`, and every curvature invariant is
//! rational. This module keeps those coefficients exact.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::metric::GroupOrder;

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses an integer, a fraction `a/b`, or a decimal such as `-0.125` or `1e-3`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.contains('/') {
        return BigRational::from_str(s).ok();
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let numer = BigInt::from_str(&format!("{whole}{frac}0")).ok()? / BigInt::from(10);
    let scale = exponent - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut value = BigRational::from_integer(numer);
    match scale.cmp(&0) {
        Ordering::Greater => value *= BigRational::from_integer(ten.pow(scale as u32)),
        Ordering::Less => value /= BigRational::from_integer(ten.pow(scale.unsigned_abs())),
        Ordering::Equal => {}
    }
    Some(if negative { -value } else { value })
}

/// Exact square root of a nonnegative rational, when it is rational.
pub fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer(), x.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| BigRational::new(rn, rd))
}

/// The number `coefficient * pi^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiSquaredMultiple(pub BigRational);

impl PiSquaredMultiple {
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN) * std::f64::consts::PI * std::f64::consts::PI
    }
}

impl fmt::Display for PiSquaredMultiple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            write!(f, "0")
        } else if self.0.is_one() {
            write!(f, "pi^2")
        } else {
            write!(f, "{}*pi^2", self.0)
        }
    }
}

impl Serialize for PiSquaredMultiple {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactHeatInvariants {
    pub a0: PiSquaredMultiple,
    pub a1: PiSquaredMultiple,
    pub a2: PiSquaredMultiple,
    pub a3: PiSquaredMultiple,
}

/// Rational curvature invariants; field meanings as in
/// [`CurvatureProfile`](crate::curvature::CurvatureProfile).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactCurvature {
    pub principal: [BigRational; 3],
    pub ricci: [BigRational; 3],
    pub sc: BigRational,
    pub r2: BigRational,
    pub ric2: BigRational,
    pub grad_r2: BigRational,
    pub grad_ric2: BigRational,
}

fn sorted(mut v: [BigRational; 3]) -> [BigRational; 3] {
    v.sort();
    v
}

/// A Christoffel triple with rational entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactChristoffel {
    mu: [BigRational; 3],
}

impl ExactChristoffel {
    pub fn new(mu: [BigRational; 3]) -> Result<Self> {
        let mu = sorted(mu);
        if !(&mu[0] + &mu[1]).is_positive() {
            return Err(Error::InvalidChristoffel(format!(
                "pairwise sums must be positive, got [{}, {}, {}]",
                mu[0], mu[1], mu[2]
            )));
        }
        Ok(Self { mu })
    }

    /// Christoffel symbols of the metric with the given eigenvalues, when
    /// `sqrt(eta_1^2 eta_2^2 eta_3^2)` is rational.
    pub fn from_eigenvalues(e: [BigRational; 3]) -> Result<Option<Self>> {
        if e.iter().any(|x| !x.is_positive()) {
            return Err(Error::InvalidEigenvalues(
                "metric eigenvalues must be positive".into(),
            ));
        }
        let [x, y, z] = e;
        let Some(root) = rational_sqrt(&(&x * &y * &z)) else {
            return Ok(None);
        };
        let inv = (int(2) * root).recip();
        Self::new([
            (-&x + &y + &z) * &inv,
            (&x - &y + &z) * &inv,
            (&x + &y - &z) * &inv,
        ])
        .map(Some)
    }

    pub fn mu(&self) -> &[BigRational; 3] {
        &self.mu
    }

    pub fn symmetric(&self) -> [BigRational; 3] {
        let [a, b, c] = &self.mu;
        [a + b + c, a * b + a * c + b * c, a * b * c]
    }

    pub fn eigenvalues(&self) -> [BigRational; 3] {
        let [a, b, c] = &self.mu;
        let (s12, s13, s23) = (a + b, a + c, b + c);
        sorted([
            (&s12 * &s13).recip(),
            (&s12 * &s23).recip(),
            (&s13 * &s23).recip(),
        ])
    }

    fn pair_sum_product(&self) -> BigRational {
        let [a, b, c] = &self.mu;
        (a + b) * (a + c) * (b + c)
    }

    pub fn covering_volume(&self) -> PiSquaredMultiple {
        PiSquaredMultiple(int(16) / self.pair_sum_product())
    }

    pub fn heat_invariants(&self, n: GroupOrder) -> ExactHeatInvariants {
        let [p1, p2, p3] = self.symmetric();
        let a0 = int(16) / (self.pair_sum_product() * BigRational::from_integer(n.get().into()));
        let a1 = &a0 * &p2 / int(3);
        let a2 = &a0 * (int(36) * &p2 * &p2 - int(48) * &p1 * &p3) / int(360);
        let bracket = int(-240) * &p3 * &p3 - int(576) * &p1 * &p2 * &p3
            + int(184) * &p2 * &p2 * &p2
            + int(192) * &p1 * &p1 * &p1 * &p3
            - int(48) * &p1 * &p1 * &p2 * &p2;
        let a3 = &a0 * bracket / int(5040);
        ExactHeatInvariants {
            a0: PiSquaredMultiple(a0),
            a1: PiSquaredMultiple(a1),
            a2: PiSquaredMultiple(a2),
            a3: PiSquaredMultiple(a3),
        }
    }

    pub fn curvature(&self) -> ExactCurvature {
        let [a, b, c] = &self.mu;
        let (p12, p13, p23) = (a * b, a * c, b * c);
        let [p1, p2, p3] = self.symmetric();
        let x = int(-9) * &p3 * &p3 - int(4) * &p1 * &p1 * &p1 * &p3 + &p1 * &p1 * &p2 * &p2
            + int(10) * &p1 * &p2 * &p3
            - int(2) * &p2 * &p2 * &p2;
        ExactCurvature {
            principal: sorted([
                -&p12 + &p13 + &p23,
                &p12 - &p13 + &p23,
                &p12 + &p13 - &p23,
            ]),
            ricci: sorted([int(2) * &p23, int(2) * &p13, int(2) * &p12]),
            sc: int(2) * &p2,
            r2: int(12) * &p2 * &p2 - int(32) * &p1 * &p3,
            ric2: int(4) * &p2 * &p2 - int(8) * &p1 * &p3,
            grad_r2: int(32) * &x,
            grad_ric2: int(8) * x,
        }
    }
}
