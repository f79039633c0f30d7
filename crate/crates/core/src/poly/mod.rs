//! Sparse multivariate polynomials over an exact or floating scalar.
//!
//! Monomials are exponent vectors ordered graded-lexicographically: total
//! degree first, then componentwise comparison of the exponent vectors, so
//! that for fixed degree the monomials heavy in `x1` come last. Polynomials
//! are monomial-to-coefficient maps that never store a zero coefficient.

mod basis;
mod parse;
mod reduce;

pub use basis::{enumerate_basis, BasisMode, BasisOrder};
pub use parse::parse_polynomial;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::scalar::{self, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("ambient dimension n = {n} must be >= 2")]
    InvalidDimension { n: usize },
    #[error("point has {found} coordinates, polynomial has {expected} variables")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("monomial {monomial} is not reduced (first exponent exceeds 1)")]
    UnreducedMonomial { monomial: String },
    #[error("monomial {monomial} lies outside the basis (degree cap {cap})")]
    OutsideBasis { monomial: String, cap: u32 },
    #[error("coefficient vectors require an up-to-degree basis")]
    ExactDegreeBasis,
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
}

/// Exponent vector `(i_1, ..., i_n)` of a monomial `x1^{i_1} ... xn^{i_n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial { exponents }
    }

    /// The constant monomial in `n` variables.
    pub fn one(n: usize) -> Self {
        Monomial { exponents: vec![0; n] }
    }

    /// `x_{index+1}` as a monomial in `n` variables.
    pub fn variable(n: usize, index: usize) -> Self {
        assert!(index < n, "variable index out of range");
        let mut exponents = vec![0; n];
        exponents[index] = 1;
        Monomial { exponents }
    }

    pub fn dim(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.exponents[index]
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn is_constant(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// Product of two monomials: exponents add.
    pub fn product(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.dim(), other.dim(), "monomial dimension mismatch");
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Copy with the exponent at `index` replaced.
    pub fn with_exponent(&self, index: usize, value: u32) -> Monomial {
        let mut exponents = self.exponents.clone();
        exponents[index] = value;
        Monomial { exponents }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exponents.cmp(&other.exponents))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_constant() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial in `n` variables with coefficients in `S`.
///
/// Terms iterate in ascending graded-lex order; zero coefficients are never
/// stored, so the zero polynomial has an empty term map and degree `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<S: Scalar> {
    n: usize,
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> Polynomial<S> {
    pub fn zero(n: usize) -> Self {
        Polynomial { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, value: S) -> Self {
        let mut p = Self::zero(n);
        p.add_term(Monomial::one(n), value);
        p
    }

    /// `x_{index+1}` as a polynomial in `n` variables.
    pub fn variable(n: usize, index: usize) -> Self {
        let mut p = Self::zero(n);
        p.add_term(Monomial::variable(n, index), S::one());
        p
    }

    /// The linear form `sum_j coeffs[j] * x_{j+1}`.
    pub fn linear_form(coeffs: &[S]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (j, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::variable(n, j), c.clone());
        }
        p
    }

    /// `x1^2 + ... + xn^2 - 1`, the sphere relation.
    pub fn sphere_relation(n: usize) -> Self {
        let mut p = Self::constant(n, -S::one());
        for j in 0..n {
            p.add_term(Monomial::one(n).with_exponent(j, 2), S::one());
        }
        p
    }

    pub fn from_terms<I>(n: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, S)>,
    {
        let mut p = Self::zero(n);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` for the zero polynomial (its degree is below
    /// every finite degree).
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn coeff(&self, monomial: &Monomial) -> Option<&S> {
        self.terms.get(monomial)
    }

    /// Terms in ascending graded-lex order.
    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    /// Adds `coeff * monomial`, removing the entry if it cancels to zero.
    pub fn add_term(&mut self, monomial: Monomial, coeff: S) {
        assert_eq!(monomial.dim(), self.n, "monomial dimension mismatch");
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(monomial) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, factor: &S) -> Self {
        if factor.is_zero() {
            return Self::zero(self.n);
        }
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.clone() * factor.clone()))
                .collect(),
        }
    }

    /// Multiplies every term by a monomial.
    pub fn mul_monomial(&self, monomial: &Monomial) -> Self {
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.product(monomial), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = Self::constant(self.n, S::one());
        for _ in 0..exp {
            result = &result * self;
        }
        result
    }

    /// True when every monomial has first exponent at most 1.
    pub fn is_reduced(&self) -> bool {
        self.terms.keys().all(|m| m.exponent(0) <= 1)
    }

    /// Evaluates at a point, exactly when `S` is exact.
    pub fn evaluate(&self, point: &[S]) -> Result<S, PolyError> {
        if point.len() != self.n {
            return Err(PolyError::DimensionMismatch { expected: self.n, found: point.len() });
        }
        let mut total = S::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (j, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    term = term * scalar::pow(&point[j], e);
                }
            }
            total = total + term;
        }
        Ok(total)
    }

    /// Largest |coefficient| as an `f64`; 0 for the zero polynomial.
    pub fn max_coeff_magnitude(&self) -> f64 {
        self.terms.values().map(S::magnitude).fold(0.0, f64::max)
    }
}

impl<S: Scalar> Add for &Polynomial<S> {
    type Output = Polynomial<S>;

    fn add(self, rhs: &Polynomial<S>) -> Polynomial<S> {
        assert_eq!(self.n, rhs.n, "polynomial dimension mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<S: Scalar> Sub for &Polynomial<S> {
    type Output = Polynomial<S>;

    fn sub(self, rhs: &Polynomial<S>) -> Polynomial<S> {
        assert_eq!(self.n, rhs.n, "polynomial dimension mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<S: Scalar> Neg for &Polynomial<S> {
    type Output = Polynomial<S>;

    fn neg(self) -> Polynomial<S> {
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl<S: Scalar> Mul for &Polynomial<S> {
    type Output = Polynomial<S>;

    fn mul(self, rhs: &Polynomial<S>) -> Polynomial<S> {
        assert_eq!(self.n, rhs.n, "polynomial dimension mismatch");
        let mut out = Polynomial::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.product(mb), ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<S: Scalar> fmt::Display for Polynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if m.is_constant() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};
    use num_traits::Zero;

    fn mono(exps: &[u32]) -> Monomial {
        Monomial::new(exps.to_vec())
    }

    #[test]
    fn graded_lex_order() {
        // degree dominates, then componentwise comparison: x2 before x1
        assert!(mono(&[0, 0]) < mono(&[0, 1]));
        assert!(mono(&[0, 1]) < mono(&[1, 0]));
        assert!(mono(&[1, 0]) < mono(&[0, 2]));
        assert!(mono(&[0, 2]) < mono(&[1, 1]));
        assert!(mono(&[0, 0, 2]) < mono(&[0, 1, 1]));
        assert!(mono(&[0, 2, 0]) < mono(&[1, 0, 1]));
    }

    #[test]
    fn add_drops_cancelled_terms() {
        let mut p = Polynomial::<Rational>::zero(2);
        p.add_term(mono(&[1, 1]), rat(1, 2));
        p.add_term(mono(&[1, 1]), rat(-1, 2));
        assert!(p.is_zero());
        assert_eq!(p.degree(), None);
    }

    #[test]
    fn product_of_linear_forms() {
        // (x1 + x2)(x1 - x2) = x1^2 - x2^2
        let sum = Polynomial::linear_form(&[rat(1, 1), rat(1, 1)]);
        let diff = Polynomial::linear_form(&[rat(1, 1), rat(-1, 1)]);
        let prod = &sum * &diff;
        let mut expect = Polynomial::zero(2);
        expect.add_term(mono(&[2, 0]), rat(1, 1));
        expect.add_term(mono(&[0, 2]), rat(-1, 1));
        assert_eq!(prod, expect);
    }

    #[test]
    fn evaluate_exactly() {
        // x1^2 + x2^2 at (3/5, 4/5) is 1
        let p = Polynomial::sphere_relation(2);
        let one = p
            .evaluate(&[rat(3, 5), rat(4, 5)])
            .unwrap();
        assert!(one.is_zero());
        let q = &Polynomial::variable(2, 0) * &Polynomial::variable(2, 1);
        assert!(q.evaluate(&[rat(0, 1), rat(1, 1)]).unwrap().is_zero());
        assert!(q.evaluate(&[rat(1, 2)]).is_err());
    }

    #[test]
    fn display_formatting() {
        let mut p = Polynomial::<Rational>::constant(2, rat(1, 1));
        p.add_term(mono(&[0, 2]), rat(-1, 1));
        assert_eq!(p.to_string(), "1 - x2^2");
        let mut q = Polynomial::<Rational>::zero(3);
        q.add_term(mono(&[1, 0, 2]), rat(3, 2));
        q.add_term(mono(&[0, 1, 0]), rat(-1, 1));
        assert_eq!(q.to_string(), "-x2 + 3/2*x1*x3^2");
        assert_eq!(Polynomial::<Rational>::zero(2).to_string(), "0");
    }

    #[test]
    fn degree_of_zero_is_none() {
        assert_eq!(Polynomial::<Rational>::zero(3).degree(), None);
        assert_eq!(Polynomial::constant(3, rat(5, 1)).degree(), Some(0));
    }
}
