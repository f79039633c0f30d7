//! Closed-form cardinality bounds for spherical s-distance sets.
//!
//! All values are exact: integer bounds as `BigInt`, the Barg-Musin value as
//! a `BigRational` (the formula divides by `s` and integrality is not part of
//! its statement). The catalog covers, for ambient dimension `n` and distance
//! count `s`:
//!
//! - `gerzon`: `C(n+1, 2)`, the classical bound for equiangular sets;
//! - `dgs`: `C(n+s-1, s) + C(n+s-2, s-1)`, the unconditional bound;
//! - `hegedus`: `C(n+s-1, s)`, for inner products of the form `{±a_1, ..., ±a_l}`;
//! - `barg_musin`: `C(n+s-3, s-2) + C(n+s-4, s-3) + ((n+2s-2)/s) C(n+s-3, s-1)`,
//!   for even `s` with non-negative inner-product sum;
//! - `dm`: `C(n+s-1, s) + C(n+s-4, s-3)`, for inner products summing to zero.
//!
//! `dm` coincides with `gerzon` at `s = 2` and agrees with `barg_musin` as an
//! exact rational for every `s >= 2`; [`check_identities`] verifies the
//! binomial identities behind those coincidences.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    /// `C(a, b)` with `a < 0 <= b` has no value under this crate's
    /// convention; hitting it signals a misuse upstream.
    #[error("binomial coefficient C({a}, {b}) undefined: negative upper index with non-negative lower index")]
    NegativeUpperIndex { a: i64, b: i64 },
    #[error("invalid domain: {0}")]
    Domain(String),
}

/// Binomial coefficient `C(a, b)` with the out-of-range convention used
/// throughout the bound formulas: `b < 0` gives 0 (checked first, so a
/// negative `a` paired with a negative `b` also gives 0), `b > a >= 0`
/// gives 0, and `a < 0 <= b` is an error.
pub fn binom(a: i64, b: i64) -> Result<BigInt, BoundsError> {
    if b < 0 {
        return Ok(BigInt::zero());
    }
    if a < 0 {
        return Err(BoundsError::NegativeUpperIndex { a, b });
    }
    if b > a {
        return Ok(BigInt::zero());
    }
    let b = b.min(a - b);
    // Left-to-right product keeps every prefix an integer binomial, so the
    // division is exact at each step.
    let mut acc = BigInt::one();
    for i in 0..b {
        acc = acc * BigInt::from(a - i) / BigInt::from(i + 1);
    }
    Ok(acc)
}

/// Dimension formulas for the reduced-monomial subspaces: returns
/// `(M_le, M_eq)` where `M_le = C(n+d-1, d) + C(n+d-2, d-1)` counts the
/// reduced monomials of degree at most `d` and
/// `M_eq = C(n+d-2, d) + C(n+d-3, d-1)` those of degree exactly `d`.
pub fn subspace_dimensions(n: i64, d: i64) -> Result<(BigInt, BigInt), BoundsError> {
    if n < 2 {
        return Err(BoundsError::Domain(format!("dimension n = {n} must be >= 2")));
    }
    if d < 0 {
        return Err(BoundsError::Domain(format!("degree d = {d} must be >= 0")));
    }
    let m_le = binom(n + d - 1, d)? + binom(n + d - 2, d - 1)?;
    let m_eq = binom(n + d - 2, d)? + binom(n + d - 3, d - 1)?;
    Ok((m_le, m_eq))
}

/// One bound's side condition, for report rendering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApplicabilityNote {
    pub bound: &'static str,
    pub condition: &'static str,
}

/// Every bound in the catalog for one `(n, s)` pair.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundsReport {
    pub n: i64,
    pub s: i64,
    pub gerzon: BigInt,
    pub dgs: BigInt,
    pub hegedus: BigInt,
    pub barg_musin: Rational,
    pub dm: BigInt,
    pub applicability_notes: Vec<ApplicabilityNote>,
}

/// Evaluates the full bound catalog at `(n, s)`. Requires `n >= 2`, `s >= 1`.
pub fn compute_bounds(n: i64, s: i64) -> Result<BoundsReport, BoundsError> {
    if n < 2 {
        return Err(BoundsError::Domain(format!("dimension n = {n} must be >= 2")));
    }
    if s < 1 {
        return Err(BoundsError::Domain(format!("distance count s = {s} must be >= 1")));
    }
    let gerzon = binom(n + 1, 2)?;
    let (dgs, _) = subspace_dimensions(n, s)?;
    let hegedus = binom(n + s - 1, s)?;
    let barg_musin = Rational::from(binom(n + s - 3, s - 2)? + binom(n + s - 4, s - 3)?)
        + Rational::new(BigInt::from(n + 2 * s - 2), BigInt::from(s))
            * Rational::from(binom(n + s - 3, s - 1)?);
    let dm = binom(n + s - 1, s)? + binom(n + s - 4, s - 3)?;
    Ok(BoundsReport {
        n,
        s,
        gerzon,
        dgs,
        hegedus,
        barg_musin,
        dm,
        applicability_notes: vec![
            ApplicabilityNote { bound: "gerzon", condition: "s = 2 with t1 + t2 >= 0" },
            ApplicabilityNote { bound: "dgs", condition: "any spherical s-distance set" },
            ApplicabilityNote {
                bound: "hegedus",
                condition: "s even and inner products of the form {+/-a_1, ..., +/-a_l}",
            },
            ApplicabilityNote { bound: "barg_musin", condition: "s even and t1 + ... + ts >= 0" },
            ApplicabilityNote { bound: "dm", condition: "t1 + ... + ts = 0" },
        ],
    })
}

/// Verifies, in exact arithmetic, the binomial identities the bound
/// coincidences rest on: the Pascal rule `C(n-1, r-1) + C(n-1, r) = C(n, r)`
/// for `1 <= r <= n-1`, and for `s >= 2` the rational identity
/// `C(n+s-3, s-2) + ((n+2s-2)/s) C(n+s-3, s-1) = C(n+s-1, s)` together with
/// `dm = barg_musin`. A `false` means an arithmetic bug, not a bad input.
pub fn check_identities(n: i64, s: i64) -> bool {
    assert!(n >= 2 && s >= 1, "check_identities requires n >= 2, s >= 1");
    let c = |a, b| binom(a, b).expect("indices in range for n >= 2, s >= 1");
    for r in 1..n {
        if c(n - 1, r - 1) + c(n - 1, r) != c(n, r) {
            return false;
        }
    }
    if s >= 2 {
        let lhs = Rational::from(c(n + s - 3, s - 2))
            + Rational::new(BigInt::from(n + 2 * s - 2), BigInt::from(s))
                * Rational::from(c(n + s - 3, s - 1));
        if lhs != Rational::from(c(n + s - 1, s)) {
            return false;
        }
        let report = compute_bounds(n, s).expect("domain already checked");
        if Rational::from(report.dm) != report.barg_musin {
            return false;
        }
    }
    true
}
