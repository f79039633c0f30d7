//! Canonical reduction modulo the sphere ideal.
//!
//! The ideal is generated by `x1^2 + ... + xn^2 - 1`. The canonical
//! representative of a monomial with `i_1 = 2t + r` (`r` in `{0, 1}`)
//! replaces every `x1^2` by `1 - x2^2 - ... - xn^2`:
//!
//! `x1^{i_1} x2^{i_2} ... xn^{i_n}  ->  (1 - x2^2 - ... - xn^2)^t x1^r x2^{i_2} ... xn^{i_n}`
//!
//! extended linearly to polynomials. The result is supported on monomials
//! with first exponent at most 1, agrees with the input on every sphere
//! point, and for a single degree-`d` monomial only contributes degrees
//! `d, d-2, d-4, ...`.


use super::{Monomial, Polynomial};
use crate::scalar::Scalar;

impl<S: Scalar> Polynomial<S> {
    /// The unique representative modulo the sphere ideal supported on
    /// monomials with first exponent at most 1. Linear and idempotent.
    pub fn canonical_reduce(&self) -> Self {
        let n = self.dim();
        // q = 1 - x2^2 - ... - xn^2; powers cached across terms
        let mut q = Polynomial::constant(n, S::one());
        for j in 1..n {
            q.add_term(Monomial::one(n).with_exponent(j, 2), -S::one());
        }
        let mut q_powers: Vec<Polynomial<S>> = vec![Polynomial::constant(n, S::one())];

        let mut out = Polynomial::zero(n);
        for (m, c) in self.iter() {
            let i1 = m.exponent(0);
            if i1 <= 1 {
                out.add_term(m.clone(), c.clone());
                continue;
            }
            let t = (i1 / 2) as usize;
            let r = i1 % 2;
            while q_powers.len() <= t {
                let next = q_powers.last().expect("nonempty") * &q;
                q_powers.push(next);
            }
            let tail = m.with_exponent(0, r);
            for (qm, qc) in q_powers[t].iter() {
                out.add_term(qm.product(&tail), qc.clone() * c.clone());
            }
        }
        out
    }
}
