//! Dense univariate polynomials, just enough for squarefree parts of
//! eliminants.

use std::sync::Arc;

use crate::field::Field;
use crate::poly::{Monomial, PolyRing, Polynomial};

/// Coefficients from the constant term up; no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> UniPoly<F> {
    pub fn new(field: &F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn coefficients(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
            .collect();
        UniPoly::new(f, c)
    }

    fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.field.inv(lc).expect("nonzero");
                let c = self.coeffs.iter().map(|c| self.field.mul(c, &inv)).collect();
                UniPoly::new(&self.field, c)
            }
        }
    }

    /// Quotient and remainder; `divisor` nonzero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let f = &self.field;
        let dd = divisor.degree().expect("nonzero divisor");
        let inv = f.inv(divisor.coeffs.last().unwrap()).unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![f.zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let c = f.mul(&rem[top], &inv);
            let shift = top - dd;
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] = f.sub(&rem[shift + i], &f.mul(&c, d));
            }
            quot[shift] = c;
            rem.pop();
            while rem.last().is_some_and(|c| f.is_zero(c)) {
                rem.pop();
            }
        }
        (UniPoly::new(f, quot), UniPoly::new(f, rem))
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `f / gcd(f, f')`, monic. `None` when `f` is non-constant with a
    /// vanishing derivative (only possible in positive characteristic).
    pub fn squarefree_part(&self) -> Option<Self> {
        match self.degree() {
            None | Some(0) => return Some(self.monic()),
            _ => {}
        }
        let d = self.derivative();
        if d.is_zero() {
            return None;
        }
        let g = self.gcd(&d);
        Some(self.div_rem(&g).0.monic())
    }

    /// As a polynomial in variable `var` of `ring`.
    pub fn to_polynomial(&self, ring: &Arc<PolyRing<F>>, var: usize) -> Polynomial<F> {
        Polynomial::from_terms(
            ring,
            self.coeffs.iter().enumerate().map(|(i, c)| {
                let mut e = vec![0; ring.nvars()];
                e[var] = i as u32;
                (Monomial::from_exponents(e), c.clone())
            }),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn up(c: &[i64]) -> UniPoly<Rationals> {
        UniPoly::new(&Rationals, c.iter().map(|&v| Rationals.from_i64(v)).collect())
    }

    #[test]
    fn squarefree() {
        // (x-1)^2 (x-2) = x^3 - 4x^2 + 5x - 2
        let f = up(&[-2, 5, -4, 1]);
        assert_eq!(f.squarefree_part().unwrap(), up(&[2, -3, 1]));
        assert_eq!(up(&[0, 0, 0, 1]).squarefree_part().unwrap(), up(&[0, 1]));
        assert_eq!(up(&[5]).squarefree_part().unwrap(), up(&[1]));
    }

    #[test]
    fn vanishing_derivative_is_reported() {
        let f = PrimeField::new_unchecked(5);
        // x^5 - 1 has zero derivative mod 5
        let p = UniPoly::new(&f, vec![4, 0, 0, 0, 0, 1]);
        assert!(p.squarefree_part().is_none());
    }

    #[test]
    fn division() {
        let (q, r) = up(&[-1, 0, 1]).div_rem(&up(&[-1, 1]));
        assert_eq!(q, up(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(up(&[-1, 0, 1]).gcd(&up(&[2, 2])), up(&[1, 1]));
    }
}
