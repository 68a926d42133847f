//! Buchberger's algorithm with the Gebauer-Möller pair criteria.
//!
//! Internally polynomials are term vectors sorted in descending order for
//! the chosen [`MonomialOrder`]; the public functions convert at the edges.

use std::cmp::Ordering;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering as AtomicOrdering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{same_ring, Monomial, MonomialOrder, PolyRing, Polynomial};

pub(crate) type Terms<E> = Vec<(Monomial, E)>;

pub(crate) fn to_terms<F: Field>(p: &Polynomial<F>, order: MonomialOrder) -> Terms<F::Elem> {
    p.terms_sorted(order)
        .into_iter()
        .map(|(m, c)| (m.clone(), c.clone()))
        .collect()
}

pub(crate) fn from_terms<F: Field>(ring: &Arc<PolyRing<F>>, t: Terms<F::Elem>) -> Polynomial<F> {
    Polynomial::from_terms(ring, t)
}

/// `p[skip_p..] - c * m * g[1..]`, both inputs sorted descending.
fn sub_multiple<F: Field>(
    field: &F,
    order: MonomialOrder,
    p: &[(Monomial, F::Elem)],
    g: &[(Monomial, F::Elem)],
    m: &Monomial,
    c: &F::Elem,
) -> Terms<F::Elem> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let mut i = 0;
    let mut j = 1;
    while i < p.len() || j < g.len() {
        let shifted;
        let ord = if i == p.len() {
            Ordering::Less
        } else if j == g.len() {
            Ordering::Greater
        } else {
            shifted = g[j].0.mul(m);
            order.cmp(&p[i].0, &shifted)
        };
        match ord {
            Ordering::Greater => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let gm = g[j].0.mul(m);
                out.push((gm, field.neg(&field.mul(c, &g[j].1))));
                j += 1;
            }
            Ordering::Equal => {
                let v = field.sub(&p[i].1, &field.mul(c, &g[j].1));
                if !field.is_zero(&v) {
                    out.push((p[i].0.clone(), v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Full reduction of `f` by `basis`: the remainder has no term divisible by
/// any leading monomial. Basis elements must be nonzero.
pub(crate) fn reduce<F: Field>(
    field: &F,
    order: MonomialOrder,
    f: Terms<F::Elem>,
    basis: &[&Terms<F::Elem>],
) -> Terms<F::Elem> {
    let mut p = f;
    let mut start = 0;
    let mut rem = Vec::new();
    while start < p.len() {
        let (lm, lc) = &p[start];
        let reducer = basis.iter().find(|g| g[0].0.divides(lm));
        match reducer {
            Some(g) => {
                let m = lm.div(&g[0].0);
                let c = field.div(lc, &g[0].1).expect("nonzero lead coefficient");
                p = sub_multiple(field, order, &p[start + 1..], g, &m, &c);
                start = 0;
            }
            None => {
                rem.push(p[start].clone());
                start += 1;
            }
        }
    }
    rem
}

fn make_monic<F: Field>(field: &F, t: &mut Terms<F::Elem>) {
    if let Some((_, lc)) = t.first() {
        if !field.is_one(lc) {
            let inv = field.inv(lc).expect("nonzero");
            for (_, c) in t.iter_mut() {
                *c = field.mul(c, &inv);
            }
        }
    }
}

fn s_poly_terms<F: Field>(
    field: &F,
    order: MonomialOrder,
    f: &Terms<F::Elem>,
    g: &Terms<F::Elem>,
) -> Terms<F::Elem> {
    let lcm = f[0].0.lcm(&g[0].0);
    let mf = lcm.div(&f[0].0);
    let mg = lcm.div(&g[0].0);
    let cf = field.inv(&f[0].1).expect("nonzero");
    let cg = field.inv(&g[0].1).expect("nonzero");
    // (lcm/lm f)/lc f * f - (lcm/lm g)/lc g * g
    let scaled: Terms<F::Elem> = f
        .iter()
        .map(|(m, c)| (m.mul(&mf), field.mul(c, &cf)))
        .collect();
    sub_multiple(field, order, &scaled[1..], g, &mg, &cg)
        .into_iter()
        .collect()
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Reduced Gröbner basis of the nonzero members of `gens`, monic, sorted by
/// ascending leading monomial. Empty input gives an empty basis.
pub(crate) fn buchberger<F: Field>(
    field: &F,
    order: MonomialOrder,
    gens: Vec<Terms<F::Elem>>,
) -> Vec<Terms<F::Elem>> {
    let mut gens: Vec<_> = gens.into_iter().filter(|g| !g.is_empty()).collect();
    gens.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));

    let mut polys: Vec<Terms<F::Elem>> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let unit = |field: &F, nvars: usize| vec![vec![(Monomial::one(nvars), field.one())]];

    let insert = |h: Terms<F::Elem>,
                      polys: &mut Vec<Terms<F::Elem>>,
                      active: &mut Vec<usize>,
                      pairs: &mut Vec<Pair>| {
        let hi = polys.len();
        let hm = h[0].0.clone();
        polys.push(h);
        // Gebauer-Möller update
        let mut c: Vec<(usize, Monomial)> = active
            .iter()
            .map(|&g| (g, hm.lcm(&polys[g][0].0)))
            .collect();
        let mut d: Vec<(usize, Monomial)> = Vec::new();
        while let Some((g1, l1)) = (!c.is_empty()).then(|| c.remove(0)) {
            let coprime = hm.is_coprime(&polys[g1][0].0);
            let dominated = c.iter().chain(d.iter()).any(|(_, l2)| l2.divides(&l1));
            if coprime || !dominated {
                d.push((g1, l1));
            }
        }
        let e: Vec<Pair> = d
            .into_iter()
            .filter(|(g, _)| !hm.is_coprime(&polys[*g][0].0))
            .map(|(g, lcm)| Pair { i: g, j: hi, lcm })
            .collect();
        pairs.retain(|p| {
            !(hm.divides(&p.lcm)
                && hm.lcm(&polys[p.i][0].0) != p.lcm
                && hm.lcm(&polys[p.j][0].0) != p.lcm)
        });
        pairs.extend(e);
        active.retain(|&g| !hm.divides(&polys[g][0].0));
        active.push(hi);
    };

    for g in gens {
        let basis: Vec<&Terms<F::Elem>> = active.iter().map(|&i| &polys[i]).collect();
        let mut h = reduce(field, order, g, &basis);
        if h.is_empty() {
            continue;
        }
        if h[0].0.is_one() {
            return unit(field, h[0].0.nvars());
        }
        make_monic(field, &mut h);
        insert(h, &mut polys, &mut active, &mut pairs);
    }

    while !pairs.is_empty() {
        // normal strategy: smallest lcm first, ties by insertion indices
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                order
                    .cmp(&pairs[a].lcm, &pairs[b].lcm)
                    .then_with(|| (pairs[a].j, pairs[a].i).cmp(&(pairs[b].j, pairs[b].i)))
            })
            .unwrap();
        let pair = pairs.swap_remove(best);
        let s = s_poly_terms(field, order, &polys[pair.i], &polys[pair.j]);
        let basis: Vec<&Terms<F::Elem>> = active.iter().map(|&i| &polys[i]).collect();
        let mut h = reduce(field, order, s, &basis);
        if h.is_empty() {
            continue;
        }
        if h[0].0.is_one() {
            return unit(field, h[0].0.nvars());
        }
        make_monic(field, &mut h);
        insert(h, &mut polys, &mut active, &mut pairs);
    }

    // active leading monomials are pairwise non-dividing; tail-reduce
    let mut out: Vec<Terms<F::Elem>> = Vec::with_capacity(active.len());
    for (idx, &i) in active.iter().enumerate() {
        let others: Vec<&Terms<F::Elem>> = active
            .iter()
            .enumerate()
            .filter(|(o, _)| *o != idx)
            .map(|(_, &g)| &polys[g])
            .collect();
        let lead = polys[i][0].clone();
        let tail = reduce(field, order, polys[i][1..].to_vec(), &others);
        let mut g = Vec::with_capacity(tail.len() + 1);
        g.push(lead);
        g.extend(tail);
        out.push(g);
    }
    out.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    out
}

static CERTIFY: AtomicBool = AtomicBool::new(false);
static CERTIFIED: AtomicUsize = AtomicUsize::new(0);
static CERTIFY_FAILED: AtomicUsize = AtomicUsize::new(0);

/// Process-wide self-checking of every computed basis.
///
/// When enabled, each basis produced by [`groebner_basis`] (and so by every
/// [`crate::Ideal`] operation) is verified with [`verify_groebner_basis`]
/// and the outcome counted.
pub mod certify {
    use super::*;

    pub fn enable() {
        CERTIFY.store(true, AtomicOrdering::SeqCst);
    }

    pub fn is_enabled() -> bool {
        CERTIFY.load(AtomicOrdering::Relaxed)
    }

    /// `(verified, failed)` counts since process start.
    pub fn stats() -> (usize, usize) {
        (
            CERTIFIED.load(AtomicOrdering::SeqCst),
            CERTIFY_FAILED.load(AtomicOrdering::SeqCst),
        )
    }
}

fn check_rings<F: Field>(ring: &Arc<PolyRing<F>>, ps: &[Polynomial<F>]) -> Result<()> {
    if ps.iter().all(|p| same_ring(ring, p.ring())) {
        Ok(())
    } else {
        Err(Error::ContextMismatch)
    }
}

/// Remainder of multivariate division of `f` by `divisors` (which need not
/// form a Gröbner basis). No term of the result is divisible by a leading
/// monomial of a divisor.
pub fn normal_form<F: Field>(
    f: &Polynomial<F>,
    divisors: &[Polynomial<F>],
    order: MonomialOrder,
) -> Result<Polynomial<F>> {
    check_rings(f.ring(), divisors)?;
    let g: Vec<Terms<F::Elem>> = divisors
        .iter()
        .filter(|d| !d.is_zero())
        .map(|d| to_terms(d, order))
        .collect();
    let refs: Vec<&Terms<F::Elem>> = g.iter().collect();
    let r = reduce(f.field(), order, to_terms(f, order), &refs);
    Ok(from_terms(f.ring(), r))
}

/// The reduced Gröbner basis of the ideal generated by `gens`.
pub fn groebner_basis<F: Field>(
    ring: &Arc<PolyRing<F>>,
    gens: &[Polynomial<F>],
    order: MonomialOrder,
) -> Result<Vec<Polynomial<F>>> {
    check_rings(ring, gens)?;
    let terms = gens.iter().map(|g| to_terms(g, order)).collect();
    let basis: Vec<Polynomial<F>> = buchberger(ring.field(), order, terms)
        .into_iter()
        .map(|t| from_terms(ring, t))
        .collect();
    if certify::is_enabled() {
        if verify_groebner_basis(&basis, gens, order)? {
            CERTIFIED.fetch_add(1, AtomicOrdering::SeqCst);
        } else {
            CERTIFY_FAILED.fetch_add(1, AtomicOrdering::SeqCst);
        }
    }
    Ok(basis)
}

pub fn s_polynomial<F: Field>(
    f: &Polynomial<F>,
    g: &Polynomial<F>,
    order: MonomialOrder,
) -> Result<Polynomial<F>> {
    if !same_ring(f.ring(), g.ring()) {
        return Err(Error::ContextMismatch);
    }
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let t = s_poly_terms(f.field(), order, &to_terms(f, order), &to_terms(g, order));
    Ok(from_terms(f.ring(), t))
}

/// Buchberger certificate: every generator and every S-polynomial of the
/// basis reduces to zero, and the basis is reduced (monic, no leading
/// monomial divides a term of another member).
pub fn verify_groebner_basis<F: Field>(
    basis: &[Polynomial<F>],
    gens: &[Polynomial<F>],
    order: MonomialOrder,
) -> Result<bool> {
    let field = match basis.first().or(gens.first()) {
        Some(p) => p.field().clone(),
        None => return Ok(true),
    };
    if basis.iter().any(|b| b.is_zero()) {
        return Ok(false);
    }
    let bt: Vec<Terms<F::Elem>> = basis.iter().map(|b| to_terms(b, order)).collect();
    let refs: Vec<&Terms<F::Elem>> = bt.iter().collect();
    for g in gens {
        if !reduce(&field, order, to_terms(g, order), &refs).is_empty() {
            return Ok(false);
        }
    }
    for i in 0..bt.len() {
        if !field.is_one(&bt[i][0].1) {
            return Ok(false);
        }
        for j in 0..bt.len() {
            if i != j && bt[i].iter().any(|(m, _)| bt[j][0].0.divides(m)) {
                return Ok(false);
            }
        }
        for j in i + 1..bt.len() {
            let s = s_poly_terms(&field, order, &bt[i], &bt[j]);
            if !reduce(&field, order, s, &refs).is_empty() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
