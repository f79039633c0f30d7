//! Proof engine for concrete configurations.
//!
//! For a point set F = {v_1, ..., v_m} with inner products t_1 < ... < t_s,
//! builds the interpolating polynomials
//! f_i(x) = prod_k (<x, v_i> - t_k) / c with c = prod_k (1 - t_k),
//! reduces them modulo the sphere relation, and verifies: the delta property
//! f_i(v_j) = delta_ij, the vanishing of all degree-(s-1) coefficients when
//! the t_k sum to zero, linear independence of the coefficient rows by rank,
//! and the resulting cardinality bound m <= M_{<=s}(n) - M_{s-1}(n).

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::bounds::{compute_bounds, subspace_dimensions, BoundsError};
use crate::config::{ConfigError, InnerProductProfile, PointConfiguration, PointSet};
use crate::poly::{enumerate_basis, BasisMode, BasisOrder, PolyError, Polynomial};
use crate::scalar::{Rational, Scalar};

/// A coefficient of degree s-1 counts as zero (float mode) below this factor
/// times the largest absolute coefficient across all rows.
pub const GAP_COEFF_REL_TOL: f64 = 1e-6;

/// Delta deviations are accepted (float mode) up to this factor times the
/// configuration tolerance.
pub const DELTA_TOL_FACTOR: f64 = 10.0;

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error("inner product {value} is within tolerance of 1; c = prod(1 - t_k) degenerates")]
    InnerProductNearOne { value: f64 },
}

/// Outcome of the degree-(s-1) coefficient check.
#[derive(Debug, Clone, PartialEq)]
pub enum GapCheck {
    /// The t_k do not sum to zero, so nothing is claimed.
    NotApplicable,
    Pass,
    Fail { worst: f64 },
}

/// Comparison of m against the sum-zero bound M_{<=s}(n) - M_{s-1}(n).
#[derive(Debug, Clone, PartialEq)]
pub enum BoundComparison {
    NotApplicable,
    Attained { m: usize, bound: BigInt },
    Strict { m: usize, bound: BigInt },
    Violated { m: usize, bound: BigInt },
}

/// Whether one of the classical bounds applies to this profile and, if so,
/// whether m respects it.
#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisCheck {
    pub name: &'static str,
    pub applicable: bool,
    /// Exact bound value as text (integer or fraction).
    pub bound: String,
    pub respected: Option<bool>,
}

/// Structured result of every certificate check; `Display` renders the
/// human-readable report.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub mode: &'static str,
    pub n: usize,
    pub m: usize,
    pub s: usize,
    pub values: Vec<String>,
    pub sum: String,
    pub sum_zero: bool,
    pub symmetric_pm: bool,
    pub delta: bool,
    pub delta_max_deviation: f64,
    pub degree_gap: GapCheck,
    pub independent: bool,
    pub rank: usize,
    /// dim of polynomials of degree <= s on the sphere, M_{<=s}(n).
    pub space_dim: BigInt,
    /// dim of the degree-(s-1) homogeneous layer, M_{s-1}(n).
    pub layer_dim: BigInt,
    pub dimension_argument: Option<bool>,
    pub sum_zero_bound: BoundComparison,
    pub hypotheses: Vec<HypothesisCheck>,
    pub passed: bool,
}

/// A verified certificate for one configuration.
#[derive(Debug, Clone)]
pub struct Certificate<S: Scalar> {
    pub points: PointSet<S>,
    pub profile: InnerProductProfile<S>,
    /// c = prod_k (1 - t_k), nonzero by construction.
    pub c: S,
    pub reduced_polys: Vec<Polynomial<S>>,
    pub basis: BasisOrder,
    /// Row i = coefficient vector of the reduced f_i over `basis`.
    pub matrix: Vec<Vec<S>>,
    pub rank: usize,
    pub checks: CheckReport,
}

/// Certificate in either scalar mode.
#[derive(Debug, Clone)]
pub enum AnyCertificate {
    Exact(Certificate<Rational>),
    Float(Certificate<f64>),
}

impl AnyCertificate {
    pub fn checks(&self) -> &CheckReport {
        match self {
            AnyCertificate::Exact(c) => &c.checks,
            AnyCertificate::Float(c) => &c.checks,
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            AnyCertificate::Exact(c) => c.rank,
            AnyCertificate::Float(c) => c.rank,
        }
    }
}

/// Builds and checks the certificate for a configuration in either mode.
pub fn build_certificate(config: &PointConfiguration) -> Result<AnyCertificate, CertificateError> {
    match config {
        PointConfiguration::Exact(set) => Ok(AnyCertificate::Exact(build(set)?)),
        PointConfiguration::Float(set) => Ok(AnyCertificate::Float(build(set)?)),
    }
}

/// Builds the certificate for a point set of either scalar type.
pub fn build<S: Scalar>(points: &PointSet<S>) -> Result<Certificate<S>, CertificateError> {
    let profile = points.profile()?;
    let n = points.dim();
    let s = profile.s;

    let mut c = S::one();
    for t in &profile.values {
        let factor = S::one() - t.clone();
        // Exact mode already guarantees t < 1; in float mode a t within
        // tolerance of 1 would make the division by c meaningless.
        if !S::EXACT && factor.magnitude() < points.tolerance() {
            return Err(CertificateError::InnerProductNearOne { value: signed_f64(t) });
        }
        c = c * factor;
    }

    let basis = enumerate_basis(n, s as u32, BasisMode::UpToDegree)?;
    let c_inv = S::one() / c.clone();
    let mut reduced_polys = Vec::with_capacity(points.len());
    let mut matrix = Vec::with_capacity(points.len());
    for i in 0..points.len() {
        // Expand prod_k (<x, v_i> - t_k) by iterated multiplication in
        // index order, then divide by c and reduce.
        let linear = Polynomial::linear_form(points.point(i));
        let mut f = Polynomial::constant(n, S::one());
        for t in &profile.values {
            let factor = &linear - &Polynomial::constant(n, t.clone());
            f = &f * &factor;
        }
        let f = f.scale(&c_inv).canonical_reduce();
        matrix.push(basis.coefficient_vector(&f)?);
        reduced_polys.push(f);
    }
    let rank = S::matrix_rank(&matrix);

    let checks = run_checks(points, &profile, &basis, &reduced_polys, &matrix, rank)?;
    Ok(Certificate {
        points: points.clone(),
        profile,
        c,
        reduced_polys,
        basis,
        matrix,
        rank,
        checks,
    })
}

/// Re-runs every check on an existing certificate. Failed checks are
/// reported in the result, never raised.
pub fn verify_certificate<S: Scalar>(cert: &Certificate<S>) -> CheckReport {
    run_checks(
        &cert.points,
        &cert.profile,
        &cert.basis,
        &cert.reduced_polys,
        &cert.matrix,
        cert.rank,
    )
    .expect("a built certificate satisfies the check preconditions")
}

/// Which of the classical bounds apply to a profile, and whether m respects
/// each applicable one. Gating: the two-distance bound needs s = 2 and
/// t_1 + t_2 >= 0; the pm-symmetric bound needs values {-a_i, a_i}; the
/// even-s bound needs s even and a non-negative sum.
pub fn hypothesis_checks<S: Scalar>(
    profile: &InnerProductProfile<S>,
    tolerance: f64,
    n: usize,
    m: usize,
) -> Result<Vec<HypothesisCheck>, BoundsError> {
    let bounds = compute_bounds(n as i64, profile.s as i64)?;
    let sum_nonnegative = if S::EXACT {
        !profile.sum.is_negative()
    } else {
        signed_f64(&profile.sum) >= -tolerance
    };
    let m_int = BigInt::from(m);
    let m_rat = Rational::from_integer(m_int.clone());

    let gerzon_applies = profile.s == 2 && sum_nonnegative;
    let hegedus_applies = profile.symmetric_pm;
    let barg_musin_applies = profile.s % 2 == 0 && sum_nonnegative;

    Ok(vec![
        HypothesisCheck {
            name: "gerzon",
            applicable: gerzon_applies,
            bound: bounds.gerzon.to_string(),
            respected: gerzon_applies.then(|| m_int <= bounds.gerzon),
        },
        HypothesisCheck {
            name: "hegedus",
            applicable: hegedus_applies,
            bound: bounds.hegedus.to_string(),
            respected: hegedus_applies.then(|| m_int <= bounds.hegedus),
        },
        HypothesisCheck {
            name: "barg_musin",
            applicable: barg_musin_applies,
            bound: bounds.barg_musin.to_string(),
            respected: barg_musin_applies.then(|| m_rat <= bounds.barg_musin),
        },
    ])
}

fn run_checks<S: Scalar>(
    points: &PointSet<S>,
    profile: &InnerProductProfile<S>,
    basis: &BasisOrder,
    reduced: &[Polynomial<S>],
    matrix: &[Vec<S>],
    rank: usize,
) -> Result<CheckReport, CertificateError> {
    let n = points.dim();
    let m = points.len();
    let s = profile.s;
    let tolerance = points.tolerance();

    // (a) Delta property: f_i(v_j) = delta_ij, exact or within 10x tolerance.
    let mut delta = true;
    let mut delta_max_deviation = 0.0f64;
    for (i, f) in reduced.iter().enumerate() {
        for j in 0..m {
            let value = f.evaluate(points.point(j))?;
            let expect = if i == j { S::one() } else { S::zero() };
            let difference = value - expect;
            if S::EXACT {
                if !difference.is_zero() {
                    delta = false;
                }
            }
            delta_max_deviation = delta_max_deviation.max(difference.magnitude());
        }
    }
    if !S::EXACT {
        delta = delta_max_deviation <= DELTA_TOL_FACTOR * tolerance;
    }

    // (b) Degree gap: with sum-zero inner products, every coefficient of
    // total degree s-1 must vanish across all rows.
    let degree_gap = if !profile.sum_zero {
        GapCheck::NotApplicable
    } else {
        let columns = basis.columns_of_degree(s as u32 - 1);
        let max_abs = matrix
            .iter()
            .flatten()
            .map(Scalar::magnitude)
            .fold(0.0f64, f64::max);
        let threshold = if S::EXACT { 0.0 } else { GAP_COEFF_REL_TOL * max_abs };
        let mut ok = true;
        let mut worst = 0.0f64;
        for row in matrix {
            for &col in &columns {
                let size = row[col].magnitude();
                let zero = if S::EXACT { row[col].is_zero() } else { size <= threshold };
                if !zero {
                    ok = false;
                    worst = worst.max(size);
                }
            }
        }
        if ok {
            GapCheck::Pass
        } else {
            GapCheck::Fail { worst }
        }
    };

    // (c) Linear independence.
    let independent = rank == m;

    // (d) Dimension argument: rank + M_{s-1}(n) <= M_{<=s}(n) whenever the
    // gap holds — the load-bearing inequality behind the bound.
    let (space_dim, _) = subspace_dimensions(n as i64, s as i64)?;
    let (_, layer_dim) = subspace_dimensions(n as i64, s as i64 - 1)?;
    let dimension_argument = if degree_gap == GapCheck::Pass {
        Some(BigInt::from(rank) + &layer_dim <= space_dim)
    } else {
        None
    };

    // (e) The sum-zero bound and the classical hypotheses.
    let bounds = compute_bounds(n as i64, s as i64)?;
    let sum_zero_bound = if profile.sum_zero {
        let bound = bounds.dm.clone();
        let m_int = BigInt::from(m);
        if m_int == bound {
            BoundComparison::Attained { m, bound }
        } else if m_int < bound {
            BoundComparison::Strict { m, bound }
        } else {
            BoundComparison::Violated { m, bound }
        }
    } else {
        BoundComparison::NotApplicable
    };
    let hypotheses = hypothesis_checks(profile, tolerance, n, m)?;

    let passed = delta
        && independent
        && !matches!(degree_gap, GapCheck::Fail { .. })
        && dimension_argument != Some(false)
        && !matches!(sum_zero_bound, BoundComparison::Violated { .. })
        && hypotheses.iter().all(|h| h.respected != Some(false));

    Ok(CheckReport {
        mode: if S::EXACT { "exact" } else { "float" },
        n,
        m,
        s,
        values: profile.values.iter().map(|v| v.to_string()).collect(),
        sum: profile.sum.to_string(),
        sum_zero: profile.sum_zero,
        symmetric_pm: profile.symmetric_pm,
        delta,
        delta_max_deviation,
        degree_gap,
        independent,
        rank,
        space_dim,
        layer_dim,
        dimension_argument,
        sum_zero_bound,
        hypotheses,
        passed,
    })
}

fn signed_f64<S: Scalar>(v: &S) -> f64 {
    if v.is_negative() {
        -v.magnitude()
    } else {
        v.magnitude()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "configuration: m = {} points on S^{}, {} mode",
            self.m,
            self.n - 1,
            self.mode
        )?;
        writeln!(
            f,
            "profile: s = {}, values [{}], sum = {}, sum_zero = {}, symmetric_pm = {}",
            self.s,
            self.values.join(", "),
            self.sum,
            self.sum_zero,
            self.symmetric_pm
        )?;
        if self.delta {
            writeln!(f, "delta: pass (max deviation {:.1e})", self.delta_max_deviation)?;
        } else {
            writeln!(f, "delta: FAIL (max deviation {:.1e})", self.delta_max_deviation)?;
        }
        match &self.degree_gap {
            GapCheck::NotApplicable => {
                writeln!(f, "degree gap: not applicable (value sum is nonzero)")?
            }
            GapCheck::Pass => writeln!(f, "degree gap: pass")?,
            GapCheck::Fail { worst } => {
                writeln!(f, "degree gap: FAIL (worst coefficient {worst:.1e})")?
            }
        }
        if self.independent {
            writeln!(f, "independent: pass (rank {} = m)", self.rank)?;
        } else {
            writeln!(f, "independent: FAIL (rank {} < m = {})", self.rank, self.m)?;
        }
        match self.dimension_argument {
            None => writeln!(f, "dimension argument: not applicable")?,
            Some(true) => writeln!(
                f,
                "dimension argument: pass (rank {} + {} <= {})",
                self.rank, self.layer_dim, self.space_dim
            )?,
            Some(false) => writeln!(
                f,
                "dimension argument: FAIL (rank {} + {} > {})",
                self.rank, self.layer_dim, self.space_dim
            )?,
        }
        match &self.sum_zero_bound {
            BoundComparison::NotApplicable => {
                writeln!(f, "bound: not applicable (value sum is nonzero)")?
            }
            BoundComparison::Attained { m, bound } => {
                writeln!(f, "bound: attained ({m} = {bound})")?
            }
            BoundComparison::Strict { m, bound } => writeln!(f, "bound: strict ({m} < {bound})")?,
            BoundComparison::Violated { m, bound } => {
                writeln!(f, "bound: VIOLATED ({m} > {bound})")?
            }
        }
        for h in &self.hypotheses {
            match h.respected {
                None => writeln!(f, "hypothesis {}: not applicable", h.name)?,
                Some(true) => writeln!(
                    f,
                    "hypothesis {}: applicable, respected ({} <= {})",
                    h.name, self.m, h.bound
                )?,
                Some(false) => writeln!(
                    f,
                    "hypothesis {}: applicable, VIOLATED ({} > {})",
                    h.name, self.m, h.bound
                )?,
            }
        }
        write!(f, "overall: {}", if self.passed { "pass" } else { "FAIL" })
    }
}
