//! Dimension, degree and point counts of ideals, plus seeded sampling of
//! generic linear forms.

use std::collections::HashMap;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::Ideal;
use crate::poly::{Monomial, MonomialOrder, PolyRing, Polynomial};
use crate::univariate::UniPoly;

/// Dimension and degree of `V(I)`. The empty variety has dimension `-1`
/// and no degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DimDeg {
    pub dimension: i64,
    pub degree: Option<u64>,
}

impl DimDeg {
    pub fn is_empty(&self) -> bool {
        self.dimension < 0
    }
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| (m.degree(), m.clone()));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|o| o.divides(&g)) {
            out.push(g);
        }
    }
    out.sort();
    out
}

fn poly_sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = vec![0; a.len().max(b.len())];
    for (i, v) in a.iter().enumerate() {
        r[i] += v;
    }
    for (i, v) in b.iter().enumerate() {
        r[i] -= v;
    }
    while r.len() > 1 && *r.last().unwrap() == 0 {
        r.pop();
    }
    r
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    r
}

fn shift(a: &[i64], d: usize) -> Vec<i64> {
    let mut r = vec![0; d];
    r.extend_from_slice(a);
    r
}

/// Numerator `Q(t)` of the Hilbert series `Q(t) / (1 - t)^N` of `S / M`
/// for the monomial ideal `M`, by the splitting recursion
/// `Q(G + m) = Q(G) - t^deg(m) Q(G : m)`.
pub fn hilbert_numerator(gens: &[Monomial]) -> Vec<i64> {
    let mut memo = HashMap::new();
    numerator_rec(minimalize(gens.to_vec()), &mut memo)
}

fn numerator_rec(gens: Vec<Monomial>, memo: &mut HashMap<Vec<Monomial>, Vec<i64>>) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(Monomial::is_one) {
        return vec![0];
    }
    let coprime = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if coprime {
        return gens.iter().fold(vec![1], |acc, m| {
            let mut f = vec![0; m.degree() as usize + 1];
            f[0] = 1;
            f[m.degree() as usize] -= 1;
            poly_mul(&acc, &f)
        });
    }
    if let Some(v) = memo.get(&gens) {
        return v.clone();
    }
    // split off the generator of largest degree; its colon ideal tends to be small
    let (idx, _) = gens
        .iter()
        .enumerate()
        .max_by_key(|(i, m)| (m.degree(), std::cmp::Reverse(*i)))
        .unwrap();
    let m = gens[idx].clone();
    let rest: Vec<Monomial> = gens.iter().enumerate().filter(|(i, _)| *i != idx).map(|(_, g)| g.clone()).collect();
    let colon = minimalize(rest.iter().map(|g| g.colon(&m)).collect());
    let a = numerator_rec(rest, memo);
    let b = numerator_rec(colon, memo);
    let r = poly_sub(&a, &shift(&b, m.degree() as usize));
    memo.insert(gens, r.clone());
    r
}

/// Dimension and degree from a numerator and the number of variables.
pub fn dimdeg_from_numerator(numer: &[i64], nvars: usize) -> DimDeg {
    if numer.iter().all(|&c| c == 0) {
        return DimDeg {
            dimension: -1,
            degree: None,
        };
    }
    let mut q = numer.to_vec();
    let mut r = 0usize;
    // divide by (1 - t) while t = 1 is a root
    while q.iter().sum::<i64>() == 0 {
        // q(t) = (1 - t) s(t): s_i = sum_{j <= i} q_j
        let mut s = Vec::with_capacity(q.len() - 1);
        let mut acc = 0;
        for &c in &q[..q.len() - 1] {
            acc += c;
            s.push(acc);
        }
        q = s;
        r += 1;
    }
    DimDeg {
        dimension: nvars as i64 - r as i64,
        degree: Some(q.iter().sum::<i64>() as u64),
    }
}

fn lead_monomials<F: Field>(ideal: &Ideal<F>) -> Vec<Monomial> {
    ideal
        .groebner_basis(MonomialOrder::Grevlex)
        .iter()
        .map(|g| g.leading_term(MonomialOrder::Grevlex).expect("nonzero").0)
        .collect()
}

/// Krull dimension and degree of `V(I)` from the grevlex lead ideal.
pub fn dimension_and_degree<F: Field>(ideal: &Ideal<F>) -> DimDeg {
    let leads = lead_monomials(ideal);
    dimdeg_from_numerator(&hilbert_numerator(&leads), ideal.ring().nvars())
}

/// Monomials outside the grevlex lead ideal of a zero-dimensional ideal,
/// in ascending grevlex order. The unit ideal has none.
pub fn standard_monomials<F: Field>(ideal: &Ideal<F>) -> Result<Vec<Monomial>> {
    let dd = dimension_and_degree(ideal);
    if dd.dimension < 0 {
        return Ok(Vec::new());
    }
    if dd.dimension != 0 {
        return Err(Error::NotZeroDimensional(dd.dimension));
    }
    let leads = lead_monomials(ideal);
    let n = ideal.ring().nvars();
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    collect_standard(&leads, &mut exps, 0, &mut out);
    out.sort_by(|a, b| MonomialOrder::Grevlex.cmp(a, b));
    Ok(out)
}

fn collect_standard(leads: &[Monomial], exps: &mut Vec<u32>, var: usize, out: &mut Vec<Monomial>) {
    if var == exps.len() {
        out.push(Monomial::from_exponents(exps.clone()));
        return;
    }
    loop {
        let m = Monomial::from_exponents(exps.clone());
        if leads.iter().any(|l| l.divides(&m)) {
            break;
        }
        collect_standard(leads, exps, var + 1, out);
        exps[var] += 1;
    }
    exps[var] = 0;
}

/// Vector-space dimension of `k[x] / I` for zero-dimensional `I`.
pub fn quotient_dimension<F: Field>(ideal: &Ideal<F>) -> Result<usize> {
    Ok(standard_monomials(ideal)?.len())
}

/// Monic minimal polynomial of multiplication by `x_var` on `k[x] / I`,
/// which generates `I ∩ k[x_var]`.
pub fn minimal_polynomial<F: Field>(ideal: &Ideal<F>, var: usize) -> Result<UniPoly<F>> {
    let ring = ideal.ring();
    let field = ring.field().clone();
    let basis = standard_monomials(ideal)?;
    let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let order = MonomialOrder::Grevlex;
    let x = Monomial::var(ring.nvars(), var);

    struct Row<E> {
        pivot: usize,
        vec: Vec<E>,
        combo: Vec<E>,
    }
    let mut rows: Vec<Row<F::Elem>> = Vec::new();
    let mut power = ideal.reduce_terms(vec![(Monomial::one(ring.nvars()), field.one())], order);
    for j in 0..=basis.len() {
        let mut v = vec![field.zero(); basis.len()];
        for (m, c) in &power {
            v[index[m]] = c.clone();
        }
        let mut combo = vec![field.zero(); j + 1];
        combo[j] = field.one();
        for row in &rows {
            if field.is_zero(&v[row.pivot]) {
                continue;
            }
            let f = field.div(&v[row.pivot], &row.vec[row.pivot]).expect("pivot");
            for (a, b) in v.iter_mut().zip(&row.vec) {
                *a = field.sub(a, &field.mul(&f, b));
            }
            for (a, b) in combo.iter_mut().zip(&row.combo) {
                *a = field.sub(a, &field.mul(&f, b));
            }
        }
        match v.iter().position(|c| !field.is_zero(c)) {
            None => return Ok(UniPoly::new(&field, combo)),
            Some(pivot) => rows.push(Row { pivot, vec: v, combo }),
        }
        let mut shifted: Vec<_> = power.iter().map(|(m, c)| (m.mul(&x), c.clone())).collect();
        shifted.sort_by(|a, b| order.cmp(&b.0, &a.0));
        power = ideal.reduce_terms(shifted, order);
    }
    unreachable!("dim + 1 vectors in a space of dimension dim are dependent")
}

/// Number of distinct points of `V(I)` over the algebraic closure, for
/// zero-dimensional `I`: adjoin the squarefree part of every univariate
/// eliminant and count standard monomials of the (now radical) ideal.
pub fn distinct_point_count<F: Field>(ideal: &Ideal<F>) -> Result<usize> {
    let ring = ideal.ring();
    let field = ring.field();
    let p = field.characteristic();
    let mut extra = Vec::new();
    for var in 0..ring.nvars() {
        let minpoly = minimal_polynomial(ideal, var)?;
        let deg = minpoly.degree().unwrap_or(0);
        if p != 0 && deg as u64 >= p {
            return Err(Error::BadPrime {
                p,
                reason: format!("eliminant degree {deg} reaches the characteristic"),
            });
        }
        let sqfree = minpoly.squarefree_part().ok_or_else(|| Error::BadPrime {
            p,
            reason: "derivative of a non-constant eliminant vanishes".into(),
        })?;
        if sqfree.degree() != minpoly.degree() {
            extra.push(sqfree.to_polynomial(ring, var));
        }
    }
    if extra.is_empty() {
        quotient_dimension(ideal)
    } else {
        quotient_dimension(&ideal.with_generators(&extra)?)
    }
}

/// Number of distinct points and the multiplicity-weighted count together.
pub fn point_counts<F: Field>(ideal: &Ideal<F>) -> Result<(usize, usize)> {
    Ok((distinct_point_count(ideal)?, quotient_dimension(ideal)?))
}

/// A random linear form `sum c_i x_i`, with a constant `t` for the affine
/// form `sum c_i x_i - t`. Provenance is `(seed, draw)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericForm<F: Field> {
    pub coefficients: Vec<F::Elem>,
    pub constant: F::Elem,
    pub seed: u64,
    pub draw: u64,
}

impl<F: Field> GenericForm<F> {
    pub fn linear(&self, ring: &Arc<PolyRing<F>>) -> Polynomial<F> {
        Polynomial::from_terms(
            ring,
            self.coefficients
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(ring.nvars(), i), c.clone())),
        )
    }

    /// `ω - t`.
    pub fn affine(&self, ring: &Arc<PolyRing<F>>) -> Polynomial<F> {
        &self.linear(ring) - &Polynomial::constant(ring, self.constant.clone())
    }
}

/// `splitmix64` finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic child seed for a path such as `(k, draw index)`.
pub fn derive_seed(base: u64, path: &[u64]) -> u64 {
    path.iter().fold(mix(base), |acc, &p| mix(acc ^ mix(p)))
}

/// Seeded source of generic forms. Successive calls advance the stream.
#[derive(Debug, Clone)]
pub struct FormSampler {
    seed: u64,
    next_draw: u64,
    rng: ChaCha8Rng,
}

impl FormSampler {
    pub fn new(seed: u64) -> Self {
        FormSampler {
            seed,
            next_draw: 0,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn sample<F: Field>(&mut self, field: &F, nvars: usize, count: usize, affine: bool) -> Vec<GenericForm<F>> {
        (0..count)
            .map(|_| {
                let coefficients = (0..nvars).map(|_| field.random_nonzero(&mut self.rng)).collect();
                let constant = if affine {
                    field.random_nonzero(&mut self.rng)
                } else {
                    field.zero()
                };
                let draw = self.next_draw;
                self.next_draw += 1;
                GenericForm {
                    coefficients,
                    constant,
                    seed: self.seed,
                    draw,
                }
            })
            .collect()
    }
}

/// `count` generic forms over the ring's field.
pub fn sample_generic_forms<F: Field>(
    ring: &Arc<PolyRing<F>>,
    count: usize,
    sampler: &mut FormSampler,
    affine: bool,
) -> Vec<GenericForm<F>> {
    sampler.sample(ring.field(), ring.nvars(), count, affine)
}
