//! The reduced monomial basis of the sphere's coordinate ring.
//!
//! The monomials with first exponent at most 1 form a basis of the ring of
//! polynomial functions on the sphere; capping the total degree at `d`
//! ("up-to" mode) or fixing it ("exact" mode) gives bases of the degree
//! filtration whose sizes match [`crate::bounds::subspace_dimensions`].

use std::collections::BTreeMap;

use super::{Monomial, PolyError, Polynomial};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisMode {
    UpToDegree,
    ExactDegree,
}

/// Ordered list of reduced monomials, the column order of every coefficient
/// matrix built from it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisOrder {
    n: usize,
    d: u32,
    mode: BasisMode,
    monomials: Vec<Monomial>,
    positions: BTreeMap<Monomial, usize>,
}

/// All reduced monomials in `n` variables of total degree `<= d` (up-to
/// mode) or `== d` (exact mode), in ascending graded-lex order.
pub fn enumerate_basis(n: usize, d: u32, mode: BasisMode) -> Result<BasisOrder, PolyError> {
    if n < 2 {
        return Err(PolyError::InvalidDimension { n });
    }
    let mut monomials = Vec::new();
    let mut exponents = vec![0u32; n];
    collect(&mut monomials, &mut exponents, 0, d, mode);
    monomials.sort();
    let positions = monomials
        .iter()
        .cloned()
        .enumerate()
        .map(|(k, m)| (m, k))
        .collect();
    Ok(BasisOrder { n, d, mode, monomials, positions })
}

fn collect(out: &mut Vec<Monomial>, exps: &mut Vec<u32>, var: usize, budget: u32, mode: BasisMode) {
    if var == exps.len() {
        if mode == BasisMode::UpToDegree || budget == 0 {
            out.push(Monomial::new(exps.clone()));
        }
        return;
    }
    let cap = if var == 0 { budget.min(1) } else { budget };
    for e in 0..=cap {
        exps[var] = e;
        collect(out, exps, var + 1, budget - e, mode);
    }
    exps[var] = 0;
}

impl BasisOrder {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn degree_cap(&self) -> u32 {
        self.d
    }

    pub fn mode(&self) -> BasisMode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn position(&self, monomial: &Monomial) -> Option<usize> {
        self.positions.get(monomial).copied()
    }

    /// Column indices whose monomial has the given total degree.
    pub fn columns_of_degree(&self, degree: u32) -> Vec<usize> {
        self.monomials
            .iter()
            .enumerate()
            .filter(|(_, m)| m.degree() == degree)
            .map(|(k, _)| k)
            .collect()
    }

    /// Coordinates of a reduced polynomial over this basis. The polynomial
    /// must be reduced, fit the degree cap, and the basis must be in up-to
    /// mode so that every lower degree is present.
    pub fn coefficient_vector<S: Scalar>(&self, f: &Polynomial<S>) -> Result<Vec<S>, PolyError> {
        if self.mode != BasisMode::UpToDegree {
            return Err(PolyError::ExactDegreeBasis);
        }
        if f.dim() != self.n {
            return Err(PolyError::DimensionMismatch { expected: self.n, found: f.dim() });
        }
        let mut v = vec![S::zero(); self.monomials.len()];
        for (m, c) in f.iter() {
            if m.exponent(0) > 1 {
                return Err(PolyError::UnreducedMonomial { monomial: m.to_string() });
            }
            match self.position(m) {
                Some(k) => v[k] = c.clone(),
                None => {
                    return Err(PolyError::OutsideBasis { monomial: m.to_string(), cap: self.d })
                }
            }
        }
        Ok(v)
    }

    /// Rebuilds the polynomial `sum_k v[k] * monomial_k`.
    pub fn reconstruct<S: Scalar>(&self, v: &[S]) -> Polynomial<S> {
        assert_eq!(v.len(), self.monomials.len(), "coefficient vector length mismatch");
        Polynomial::from_terms(
            self.n,
            self.monomials.iter().cloned().zip(v.iter().cloned()),
        )
    }
}
