//! Affine polar varieties.
//!
//! `P_k(X, ω)` is the closure of the set of smooth points of `X` where the
//! linear forms `ω_1, ..., ω_{k+1}` restricted to the tangent space are
//! dependent. With `c = N - n`, that is the locus where the stacked matrix
//! `[Jac(F); ω_1; ...; ω_{k+1}]` has rank below `c + k + 1`; the closure
//! over the regular part is taken by saturating with the singular locus.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::geom::{dimension_and_degree, GenericForm};
use crate::ideal::Ideal;
use crate::poly::{PolyRing, Polynomial};

#[derive(Debug, Clone)]
pub struct PolyMatrix<F: Field> {
    ring: Arc<PolyRing<F>>,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial<F>>,
}

impl<F: Field> PolyMatrix<F> {
    pub fn new(ring: &Arc<PolyRing<F>>, rows: Vec<Vec<Polynomial<F>>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::invalid("ragged matrix"));
        }
        let nrows = rows.len();
        let entries: Vec<_> = rows.into_iter().flatten().collect();
        if entries.iter().any(|e| !crate::poly::same_ring(ring, e.ring())) {
            return Err(Error::ContextMismatch);
        }
        Ok(PolyMatrix {
            ring: ring.clone(),
            rows: nrows,
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial<F> {
        &self.entries[r * self.cols + c]
    }

    /// Appends the coefficient rows of `forms`.
    pub fn stack_forms(&self, forms: &[GenericForm<F>]) -> Self {
        let mut entries = self.entries.clone();
        for f in forms {
            entries.extend(
                f.coefficients
                    .iter()
                    .map(|c| Polynomial::constant(&self.ring, c.clone())),
            );
        }
        PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows + forms.len(),
            cols: self.cols,
            entries,
        }
    }

    /// All `r x r` minors, row and column subsets in lexicographic order.
    pub fn minors(&self, r: usize) -> Vec<Polynomial<F>> {
        if r == 0 || r > self.rows.min(self.cols) {
            return Vec::new();
        }
        assert!(self.rows <= 64 && self.cols <= 64, "matrix too large for minors");
        let mut memo: HashMap<(u64, u64), Polynomial<F>> = HashMap::new();
        let row_sets = subsets(self.rows, r);
        let col_sets = subsets(self.cols, r);
        let mut out = Vec::with_capacity(row_sets.len() * col_sets.len());
        for rs in &row_sets {
            for cs in &col_sets {
                out.push(self.det(*rs, *cs, &mut memo));
            }
        }
        out
    }

    /// Determinant of the submatrix on bit sets `rows x cols` (equal sizes),
    /// by cofactor expansion along the first row, memoized.
    fn det(&self, rows: u64, cols: u64, memo: &mut HashMap<(u64, u64), Polynomial<F>>) -> Polynomial<F> {
        if rows == 0 {
            return Polynomial::one(&self.ring);
        }
        if let Some(d) = memo.get(&(rows, cols)) {
            return d.clone();
        }
        let r0 = rows.trailing_zeros() as usize;
        let rest = rows & (rows - 1);
        let mut acc = Polynomial::zero(&self.ring);
        let mut sign_neg = false;
        let mut cs = cols;
        while cs != 0 {
            let c = cs.trailing_zeros() as usize;
            cs &= cs - 1;
            let e = self.get(r0, c);
            if !e.is_zero() {
                let sub = self.det(rest, cols & !(1u64 << c), memo);
                let term = e * &sub;
                acc = if sign_neg { &acc - &term } else { &acc + &term };
            }
            sign_neg = !sign_neg;
        }
        memo.insert((rows, cols), acc.clone());
        acc
    }
}

fn subsets(n: usize, r: usize) -> Vec<u64> {
    fn rec(start: usize, n: usize, r: usize, cur: u64, out: &mut Vec<u64>) {
        if r == 0 {
            out.push(cur);
            return;
        }
        for i in start..=n - r {
            rec(i + 1, n, r - 1, cur | (1 << i), out);
        }
    }
    let mut out = Vec::new();
    rec(0, n, r, 0, &mut out);
    out
}

/// `m x N` matrix of partial derivatives.
pub fn jacobian_matrix<F: Field>(polys: &[Polynomial<F>]) -> Result<PolyMatrix<F>> {
    let ring = polys
        .first()
        .ok_or_else(|| Error::invalid("Jacobian of an empty list"))?
        .ring()
        .clone();
    let rows = polys
        .iter()
        .map(|f| (0..ring.nvars()).map(|i| f.partial_derivative(i)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    PolyMatrix::new(&ring, rows)
}

/// Ideal of all `r x r` minors; the zero ideal when `r` exceeds both
/// dimensions (the rank condition is vacuous).
pub fn minors_ideal<F: Field>(m: &PolyMatrix<F>, r: usize) -> Result<Ideal<F>> {
    if r < 1 {
        return Err(Error::IndexOutOfRange { index: r, limit: 1 });
    }
    Ideal::new(&m.ring, m.minors(r))
}

fn codimension<F: Field>(ideal: &Ideal<F>, n: usize) -> Result<usize> {
    let nvars = ideal.ring().nvars();
    if n >= nvars {
        return Err(Error::IndexOutOfRange { index: n, limit: nvars });
    }
    Ok(nvars - n)
}

/// `I + (c x c minors of Jac(I))`: contains the singular locus of a reduced
/// pure `n`-dimensional `V(I)` and nothing else.
pub fn singular_locus_ideal<F: Field>(ideal: &Ideal<F>, n: usize) -> Result<Ideal<F>> {
    let c = codimension(ideal, n)?;
    if ideal.is_zero_ideal() {
        return Err(Error::invalid("singular locus of the zero ideal"));
    }
    let jac = jacobian_matrix(ideal.generators())?;
    ideal.with_generators(&jac.minors(c))
}

/// `I + ((c+k+1)-minors of [Jac(I); ω_1..ω_{k+1}])`, `k = forms.len() - 1`.
pub fn critical_locus_ideal<F: Field>(ideal: &Ideal<F>, forms: &[GenericForm<F>], n: usize) -> Result<Ideal<F>> {
    let c = codimension(ideal, n)?;
    let k = forms
        .len()
        .checked_sub(1)
        .ok_or_else(|| Error::invalid("critical locus needs at least one form"))?;
    if k > n {
        return Err(Error::IndexOutOfRange { index: k, limit: n + 1 });
    }
    if ideal.is_zero_ideal() {
        return Err(Error::invalid("critical locus of the zero ideal"));
    }
    if forms.iter().any(|f| f.coefficients.len() != ideal.ring().nvars()) {
        return Err(Error::invalid("form length differs from the number of variables"));
    }
    let stacked = jacobian_matrix(ideal.generators())?.stack_forms(forms);
    ideal.with_generators(&stacked.minors(c + k + 1))
}

/// Outcome of the purity check on a computed polar ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Purity {
    /// Dimension exactly `k`.
    Pure,
    Empty,
    /// Wrong dimension: the forms were not generic.
    Failed { dimension: i64 },
}

#[derive(Debug, Clone)]
pub struct PolarIdeal<F: Field> {
    pub k: usize,
    pub ideal: Ideal<F>,
    pub forms: Vec<GenericForm<F>>,
    pub purity: Purity,
}

impl<F: Field> PolarIdeal<F> {
    pub fn is_empty(&self) -> bool {
        self.purity == Purity::Empty
    }
}

/// A variety prepared for repeated polar computations: the singular-locus
/// ideal is built once.
#[derive(Debug, Clone)]
pub struct PolarContext<F: Field> {
    ideal: Ideal<F>,
    n: usize,
    singular: Ideal<F>,
}

impl<F: Field> PolarContext<F> {
    pub fn new(ideal: &Ideal<F>, n: usize) -> Result<Self> {
        Ok(PolarContext {
            ideal: ideal.clone(),
            n,
            singular: singular_locus_ideal(ideal, n)?,
        })
    }

    pub fn ideal(&self) -> &Ideal<F> {
        &self.ideal
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn singular_locus(&self) -> &Ideal<F> {
        &self.singular
    }

    pub fn polar_ideal(&self, forms: &[GenericForm<F>]) -> Result<PolarIdeal<F>> {
        let k = forms
            .len()
            .checked_sub(1)
            .ok_or_else(|| Error::invalid("polar variety needs at least one form"))?;
        if k == self.n {
            return Ok(PolarIdeal {
                k,
                ideal: self.ideal.clone(),
                forms: forms.to_vec(),
                purity: Purity::Pure,
            });
        }
        let crit = critical_locus_ideal(&self.ideal, forms, self.n)?;
        let ideal = crit.saturate_ideal(&self.singular)?;
        let dd = dimension_and_degree(&ideal);
        let purity = if dd.is_empty() {
            Purity::Empty
        } else if dd.dimension == k as i64 {
            Purity::Pure
        } else {
            Purity::Failed {
                dimension: dd.dimension,
            }
        };
        Ok(PolarIdeal {
            k,
            ideal,
            forms: forms.to_vec(),
            purity,
        })
    }
}

/// `P_k(X, ω)` for `k = forms.len() - 1`, with its purity check.
pub fn polar_variety_ideal<F: Field>(ideal: &Ideal<F>, forms: &[GenericForm<F>], n: usize) -> Result<PolarIdeal<F>> {
    PolarContext::new(ideal, n)?.polar_ideal(forms)
}
