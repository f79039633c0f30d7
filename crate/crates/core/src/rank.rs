//! Matrix rank over the rationals (exact) and over f64 (tolerance-based).
//!
//! The exact path clears denominators row by row and runs fraction-free
//! Bareiss elimination over the integers, so no intermediate rationals are
//! formed. The float path is Gaussian elimination with full column pivoting;
//! a pivot counts as zero when it falls below `rel_tol` times the largest
//! absolute entry of the original matrix.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::scalar::Rational;

/// Relative pivot threshold used by the f64 `Scalar` implementation.
pub const FLOAT_PIVOT_REL_TOL: f64 = 1e-8;

/// Rank of a matrix with exact rational entries. Rows may be empty or the
/// matrix ragged-free rectangular; an empty matrix has rank 0.
pub fn exact_rank(rows: &[Vec<Rational>]) -> usize {
    let cleared: Vec<Vec<BigInt>> = rows.iter().map(|row| clear_denominators(row)).collect();
    bareiss_rank(cleared)
}

fn clear_denominators(row: &[Rational]) -> Vec<BigInt> {
    let mut lcm = BigInt::from(1);
    for q in row {
        lcm = num_integer::lcm(lcm, q.denom().clone());
    }
    row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
}

fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    let mut col = 0;
    while rank < rows && col < cols {
        // Pivot search in the current column below the eliminated block.
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            col += 1;
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let num = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                // Bareiss: division by the previous pivot is exact.
                m[r][c] = num / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        col += 1;
    }
    rank
}

/// Rank of an f64 matrix. Pivots below `rel_tol * max|entry|` of the
/// original matrix are treated as zero.
pub fn float_rank(rows: &[Vec<f64>], rel_tol: f64) -> usize {
    let mut m: Vec<Vec<f64>> = rows.to_vec();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let max_entry = m
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |acc, &v| acc.max(v.abs()));
    if max_entry == 0.0 {
        return 0;
    }
    let threshold = rel_tol * max_entry;
    let mut rank = 0;
    let mut col = 0;
    while rank < nrows && col < ncols {
        let (p, best) = (rank..nrows)
            .map(|r| (r, m[r][col].abs()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("row range non-empty");
        if best <= threshold {
            col += 1;
            continue;
        }
        m.swap(rank, p);
        for r in rank + 1..nrows {
            let factor = m[r][col] / m[rank][col];
            for c in col..ncols {
                m[r][c] -= factor * m[rank][c];
            }
        }
        rank += 1;
        col += 1;
    }
    rank
}
