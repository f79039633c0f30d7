//! Finite point sets on the unit sphere S^{n-1}, in exact-rational or
//! floating mode, together with their inner-product profiles P(F) and
//! distance sets D(F).
//!
//! A [`PointSet`] validates its invariants at construction: every point has
//! unit norm (exactly, or within tolerance in float mode) and points are
//! pairwise distinct. [`InnerProductProfile`] records the distinct inner
//! products t_1 < ... < t_s, their multiplicities, and the rank-matched
//! distances d_k = sqrt(2 - 2 t_k).

mod fixtures;
mod format;

pub use fixtures::known_configuration;
pub use format::{parse_config, write_config};

use num_traits::One;
use thiserror::Error;

use crate::scalar::{Rational, Scalar};

/// Tolerance used by float-mode constructors when none is given.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("dimension must be at least 2, got {n}")]
    InvalidDimension { n: usize },
    #[error("a configuration needs at least one point")]
    NoPoints,
    #[error("point {index} has {found} coordinates, expected {expected}")]
    CoordinateCount { index: usize, expected: usize, found: usize },
    #[error("point {index} has a non-finite coordinate")]
    NonFinite { index: usize },
    #[error("tolerance must be finite and non-negative, got {tolerance}")]
    InvalidTolerance { tolerance: f64 },
    #[error("point {index} is not on the unit sphere (norm deviation {deviation:e})")]
    NotOnSphere { index: usize, deviation: f64 },
    #[error("points {first} and {second} coincide")]
    DuplicatePoints { first: usize, second: usize },
    #[error("inner products need at least two points")]
    TooFewPoints,
    #[error(
        "inner-product clusters near {left} and {right} are separated by less than \
         three tolerances; the distance count is ambiguous"
    )]
    AmbiguousClustering { left: f64, right: f64 },
    #[error("an inner product reaches 1; two points are not distinguishable on the sphere")]
    InnerProductAtOne,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown configuration '{name}'")]
    UnknownConfiguration { name: String },
    #[error("configuration '{name}' is defined only for n = {expected}, got {found}")]
    FixtureDimension { name: &'static str, expected: usize, found: usize },
}

/// `m` points on S^{n-1} with coordinates of scalar type `S`.
///
/// Exact sets carry tolerance 0; float sets carry a positive tolerance used
/// for the norm, distinctness, and clustering checks.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet<S: Scalar> {
    dim: usize,
    points: Vec<Vec<S>>,
    tolerance: f64,
}

impl PointSet<Rational> {
    /// Exact point set; every norm must equal 1 and points must be pairwise
    /// distinct as rationals.
    pub fn exact(dim: usize, points: Vec<Vec<Rational>>) -> Result<Self, ConfigError> {
        Self::validated(dim, points, 0.0)
    }
}

impl PointSet<f64> {
    /// Float point set; norms within `tolerance` of 1, no two points within
    /// `tolerance` of each other.
    pub fn float(dim: usize, points: Vec<Vec<f64>>, tolerance: f64) -> Result<Self, ConfigError> {
        Self::validated(dim, points, tolerance)
    }
}

impl<S: Scalar> PointSet<S> {
    fn validated(dim: usize, points: Vec<Vec<S>>, tolerance: f64) -> Result<Self, ConfigError> {
        if dim < 2 {
            return Err(ConfigError::InvalidDimension { n: dim });
        }
        if points.is_empty() {
            return Err(ConfigError::NoPoints);
        }
        if !S::EXACT && !(tolerance.is_finite() && tolerance >= 0.0) {
            return Err(ConfigError::InvalidTolerance { tolerance });
        }
        for (index, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(ConfigError::CoordinateCount {
                    index,
                    expected: dim,
                    found: p.len(),
                });
            }
            if !S::EXACT && p.iter().any(|c| !c.magnitude().is_finite()) {
                return Err(ConfigError::NonFinite { index });
            }
            let norm_sq = dot(p, p);
            let deviation = if S::EXACT {
                (norm_sq - S::one()).magnitude()
            } else {
                (norm_sq.magnitude().sqrt() - 1.0).abs()
            };
            if deviation > tolerance {
                return Err(ConfigError::NotOnSphere { index, deviation });
            }
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                let gap_sq = points[i]
                    .iter()
                    .zip(&points[j])
                    .fold(S::zero(), |acc, (a, b)| {
                        let d = a.clone() - b.clone();
                        acc + d.clone() * d
                    });
                let separated = if S::EXACT {
                    !gap_sq.is_zero()
                } else {
                    gap_sq.magnitude().sqrt() > tolerance
                };
                if !separated {
                    return Err(ConfigError::DuplicatePoints { first: i, second: j });
                }
            }
        }
        Ok(PointSet { dim, points, tolerance })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of points m.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<S>] {
        &self.points
    }

    pub fn point(&self, index: usize) -> &[S] {
        &self.points[index]
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn inner_product(&self, i: usize, j: usize) -> S {
        dot(&self.points[i], &self.points[j])
    }

    /// Distinct inner products of unordered pairs, clustered within
    /// tolerance in float mode (exact equality when tolerance is 0).
    pub fn profile(&self) -> Result<InnerProductProfile<S>, ConfigError> {
        if self.len() < 2 {
            return Err(ConfigError::TooFewPoints);
        }
        // One (inner product, Euclidean distance) entry per unordered pair.
        let mut pairs: Vec<(S, f64)> = Vec::with_capacity(self.len() * (self.len() - 1) / 2);
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                let t = self.inner_product(i, j);
                let gap_sq = self.points[i]
                    .iter()
                    .zip(&self.points[j])
                    .fold(S::zero(), |acc, (a, b)| {
                        let d = a.clone() - b.clone();
                        acc + d.clone() * d
                    });
                pairs.push((t, gap_sq.magnitude().sqrt()));
            }
        }
        pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite inner products"));

        // Single-linkage clustering: an adjacent gap <= tolerance joins, a
        // gap >= 3*tolerance splits, anything between is ambiguous. With
        // tolerance 0 (exact mode) this degenerates to grouping by equality.
        let mut clusters: Vec<Vec<(S, f64)>> = vec![vec![pairs[0].clone()]];
        for pair in pairs.into_iter().skip(1) {
            let last = clusters.last().expect("non-empty").last().expect("non-empty").0.clone();
            let gap = (pair.0.clone() - last.clone()).magnitude();
            if gap <= self.tolerance {
                clusters.last_mut().expect("non-empty").push(pair);
            } else if gap < 3.0 * self.tolerance {
                return Err(ConfigError::AmbiguousClustering {
                    left: signed_f64(&last),
                    right: signed_f64(&pair.0),
                });
            } else {
                clusters.push(vec![pair]);
            }
        }

        let mut values = Vec::with_capacity(clusters.len());
        let mut multiplicities = Vec::with_capacity(clusters.len());
        for cluster in &clusters {
            let count = S::from_int(cluster.len() as i64);
            let total = cluster.iter().fold(S::zero(), |acc, (t, _)| acc + t.clone());
            values.push(total / count);
            multiplicities.push(cluster.len());
        }

        let top = values.last().expect("at least one value");
        if !(S::one() - top.clone()).is_positive() {
            return Err(ConfigError::InnerProductAtOne);
        }

        let mut distances = Vec::with_capacity(clusters.len());
        for (cluster, value) in clusters.iter().zip(&values) {
            let distance = cluster.iter().map(|(_, d)| d).sum::<f64>() / cluster.len() as f64;
            // Rank-matched correspondence d^2 = 2 - 2t; deviation is at most
            // twice the tolerance for any set that passed validation.
            debug_assert!(
                (distance * distance
                    - (S::from_int(2) - S::from_int(2) * value.clone()).magnitude())
                .abs()
                    <= 2.0 * self.tolerance + 1e-12
            );
            distances.push(distance);
        }

        let sum = values.iter().fold(S::zero(), |acc, v| acc + v.clone());
        let sum_zero = sum.magnitude() <= self.tolerance;
        let s = values.len();
        let symmetric_pm = s % 2 == 0
            && (0..s / 2)
                .all(|i| (values[i].clone() + values[s - 1 - i].clone()).magnitude() <= self.tolerance);

        Ok(InnerProductProfile {
            values,
            multiplicities,
            s,
            sum,
            distances,
            sum_zero,
            symmetric_pm,
        })
    }
}

fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter()
        .zip(b)
        .fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

fn signed_f64<S: Scalar>(v: &S) -> f64 {
    if v.is_negative() {
        -v.magnitude()
    } else {
        v.magnitude()
    }
}

/// The inner-product set P(F) with multiplicities, plus the rank-matched
/// distance set D(F).
///
/// `values` is strictly increasing; `distances[k]` corresponds to
/// `values[k]` via d^2 = 2 - 2t and is therefore strictly decreasing.
#[derive(Debug, Clone, PartialEq)]
pub struct InnerProductProfile<S: Scalar> {
    pub values: Vec<S>,
    pub multiplicities: Vec<usize>,
    pub s: usize,
    pub sum: S,
    pub distances: Vec<f64>,
    pub sum_zero: bool,
    /// Whether the values split into pairs {-a, +a}; forces `s` even.
    pub symmetric_pm: bool,
}

/// A point set in either scalar mode, as loaded from a pointset file.
#[derive(Debug, Clone, PartialEq)]
pub enum PointConfiguration {
    Exact(PointSet<Rational>),
    Float(PointSet<f64>),
}

impl PointConfiguration {
    pub fn dim(&self) -> usize {
        match self {
            PointConfiguration::Exact(p) => p.dim(),
            PointConfiguration::Float(p) => p.dim(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            PointConfiguration::Exact(p) => p.len(),
            PointConfiguration::Float(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn tolerance(&self) -> f64 {
        match self {
            PointConfiguration::Exact(p) => p.tolerance(),
            PointConfiguration::Float(p) => p.tolerance(),
        }
    }

    pub fn mode_name(&self) -> &'static str {
        match self {
            PointConfiguration::Exact(_) => "exact",
            PointConfiguration::Float(_) => "float",
        }
    }
}

/// Inverse stereographic projection of a rational tuple: maps
/// (t_1, ..., t_{n-1}) to (2t_1/(1+q), ..., 2t_{n-1}/(1+q), (1-q)/(1+q))
/// with q = sum t_i^2. The image always has exact unit norm.
pub fn rational_sphere_point(t: &[Rational]) -> Vec<Rational> {
    let q: Rational = t.iter().map(|v| v * v).sum();
    let denom = Rational::one() + &q;
    let mut out: Vec<Rational> = t
        .iter()
        .map(|v| Rational::from_integer(2.into()) * v / &denom)
        .collect();
    out.push((Rational::one() - &q) / &denom);
    out
}
