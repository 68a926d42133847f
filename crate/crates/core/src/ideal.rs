//! Ideals with memoized Gröbner bases, elimination, intersection and
//! saturation.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{self, reduce, to_terms, Terms};
use crate::poly::{same_ring, MonomialOrder, PolyRing, Polynomial};

type BasisCache<F> = RwLock<HashMap<MonomialOrder, Arc<Vec<Polynomial<F>>>>>;

/// A finitely generated ideal. Immutable apart from the basis cache, which
/// is write-once per order: racing writers may duplicate the computation but
/// all readers see the same reduced basis.
pub struct Ideal<F: Field> {
    ring: Arc<PolyRing<F>>,
    gens: Vec<Polynomial<F>>,
    cache: BasisCache<F>,
}

impl<F: Field> Clone for Ideal<F> {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            cache: RwLock::new(self.cache.read().expect("cache lock").clone()),
        }
    }
}

impl<F: Field> fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "Ideal({})", gens.join(", "))
    }
}

impl<F: Field> Ideal<F> {
    /// Zero generators are dropped.
    pub fn new(ring: &Arc<PolyRing<F>>, gens: Vec<Polynomial<F>>) -> Result<Self> {
        if gens.iter().any(|g| !same_ring(ring, g.ring())) {
            return Err(Error::ContextMismatch);
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn zero(ring: &Arc<PolyRing<F>>) -> Self {
        Ideal {
            ring: ring.clone(),
            gens: Vec::new(),
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn unit(ring: &Arc<PolyRing<F>>) -> Self {
        Ideal {
            ring: ring.clone(),
            gens: vec![Polynomial::one(ring)],
            cache: RwLock::new(HashMap::new()),
        }
    }

    fn with_basis(ring: &Arc<PolyRing<F>>, basis: Vec<Polynomial<F>>, order: MonomialOrder) -> Self {
        let basis = Arc::new(basis);
        let mut cache = HashMap::new();
        cache.insert(order, basis.clone());
        Ideal {
            ring: ring.clone(),
            gens: basis.as_ref().clone(),
            cache: RwLock::new(cache),
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    /// The reduced Gröbner basis for `order`, computed once and cached.
    pub fn groebner_basis(&self, order: MonomialOrder) -> Arc<Vec<Polynomial<F>>> {
        if let Some(b) = self.cache.read().expect("cache lock").get(&order) {
            return b.clone();
        }
        let basis = Arc::new(
            groebner::groebner_basis(&self.ring, &self.gens, order).expect("generators share the ring"),
        );
        self.cache
            .write()
            .expect("cache lock")
            .entry(order)
            .or_insert(basis)
            .clone()
    }

    pub fn is_unit(&self) -> bool {
        let gb = self.groebner_basis(MonomialOrder::Grevlex);
        gb.len() == 1 && gb[0].is_constant()
    }

    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        if !same_ring(&self.ring, f.ring()) {
            return Err(Error::ContextMismatch);
        }
        let gb = self.groebner_basis(MonomialOrder::Grevlex);
        groebner::normal_form(f, &gb, MonomialOrder::Grevlex)
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Whether `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal<F>) -> Result<bool> {
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as ideals, via mutual containment.
    pub fn same_ideal(&self, other: &Ideal<F>) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    pub fn sum(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn with_generators(&self, extra: &[Polynomial<F>]) -> Result<Ideal<F>> {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    /// `I ∩ k[x_{k+1}, ..., x_N]`, as an ideal of the ring without the
    /// first `k` variables.
    pub fn eliminate(&self, k: usize) -> Result<Ideal<F>> {
        let n = self.ring.nvars();
        if k == 0 || k >= n {
            return Err(Error::IndexOutOfRange { index: k, limit: n });
        }
        let target = self.ring.drop_leading_vars(k);
        Ok(self.eliminate_into(k, &target))
    }

    fn eliminate_into(&self, k: usize, target: &Arc<PolyRing<F>>) -> Ideal<F> {
        let gb = self.groebner_basis(MonomialOrder::Block(k));
        // members free of the block are the reduced grevlex basis of the
        // elimination ideal, already in ascending order
        let kept: Vec<Polynomial<F>> = gb
            .iter()
            .filter(|g| (0..k).all(|i| !g.involves(i)))
            .map(|g| g.drop_into(target, k))
            .collect();
        Ideal::with_basis(target, kept, MonomialOrder::Grevlex)
    }

    /// `I : g^∞`, by eliminating `t` from `I + (1 - t g)`.
    pub fn saturate_element(&self, g: &Polynomial<F>) -> Result<Ideal<F>> {
        if !same_ring(&self.ring, g.ring()) {
            return Err(Error::ContextMismatch);
        }
        if g.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if g.is_constant() || self.is_zero_ideal() {
            return Ok(self.clone());
        }
        if self.contains(g)? {
            return Ok(Ideal::unit(&self.ring));
        }
        let ext = self.ring.with_leading_vars(1);
        let mut gens: Vec<Polynomial<F>> = self.gens.iter().map(|f| f.shift_into(&ext, 1)).collect();
        let t = Polynomial::var(&ext, 0);
        gens.push(&Polynomial::one(&ext) - &(&t * &g.shift_into(&ext, 1)));
        Ok(Ideal::new(&ext, gens)?.eliminate_into(1, &self.ring))
    }

    /// `I ∩ J`, by eliminating `t` from `t I + (1 - t) J`.
    pub fn intersect(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::ContextMismatch);
        }
        if self.is_zero_ideal() || other.is_zero_ideal() {
            return Ok(Ideal::zero(&self.ring));
        }
        if self.is_unit() {
            return Ok(other.clone());
        }
        if other.is_unit() {
            return Ok(self.clone());
        }
        let ext = self.ring.with_leading_vars(1);
        let t = Polynomial::var(&ext, 0);
        let one_minus_t = &Polynomial::one(&ext) - &t;
        let mut gens: Vec<Polynomial<F>> =
            self.gens.iter().map(|f| &t * &f.shift_into(&ext, 1)).collect();
        gens.extend(other.gens.iter().map(|f| &one_minus_t * &f.shift_into(&ext, 1)));
        Ok(Ideal::new(&ext, gens)?.eliminate_into(1, &self.ring))
    }

    /// `I : J^∞` as the intersection of the element saturations `I : g^∞`
    /// over the generators `g` of `J`.
    pub fn saturate_ideal(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::ContextMismatch);
        }
        if other.is_zero_ideal() {
            return Err(Error::ZeroPolynomial);
        }
        if other.is_unit() {
            return Ok(self.clone());
        }
        let mut seen: Vec<Polynomial<F>> = Vec::new();
        let mut acc: Option<Ideal<F>> = None;
        for g in &other.gens {
            let g = g.monic(MonomialOrder::Grevlex);
            if seen.contains(&g) {
                continue;
            }
            seen.push(g.clone());
            // I : g^∞ = (1) for g ∈ I, the neutral element of the fold
            if self.contains(&g)? {
                continue;
            }
            let s = self.saturate_element(&g)?;
            acc = Some(match acc {
                None => s,
                Some(a) => a.intersect(&s)?,
            });
        }
        Ok(acc.unwrap_or_else(|| Ideal::unit(&self.ring)))
    }

    /// The reduced grevlex basis rendered as strings.
    pub fn basis_strings(&self) -> Vec<String> {
        self.groebner_basis(MonomialOrder::Grevlex)
            .iter()
            .map(|g| g.to_string())
            .collect()
    }

    /// Normal-form remainder against a cached basis, on internal terms.
    pub(crate) fn reduce_terms(&self, f: Terms<F::Elem>, order: MonomialOrder) -> Terms<F::Elem> {
        let gb = self.groebner_basis(order);
        let bt: Vec<Terms<F::Elem>> = gb.iter().map(|g| to_terms(g, order)).collect();
        let refs: Vec<&Terms<F::Elem>> = bt.iter().collect();
        reduce(self.ring.field(), order, f, &refs)
    }
}

/// Membership of `f` in `ideal`.
pub fn ideal_membership<F: Field>(f: &Polynomial<F>, ideal: &Ideal<F>) -> Result<bool> {
    ideal.contains(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::parse::parse_polynomial;

    fn ring<F: Field>(vars: &[&str], f: F) -> Arc<PolyRing<F>> {
        PolyRing::new(vars.iter().map(|s| s.to_string()).collect(), f).unwrap()
    }

    fn ideal<F: Field>(r: &Arc<PolyRing<F>>, gens: &[&str]) -> Ideal<F> {
        let g = gens.iter().map(|s| parse_polynomial(s, r).unwrap()).collect();
        Ideal::new(r, g).unwrap()
    }

    fn poly<F: Field>(r: &Arc<PolyRing<F>>, s: &str) -> Polynomial<F> {
        parse_polynomial(s, r).unwrap()
    }

    #[test]
    fn elimination_examples() {
        let r = ring(&["t", "x", "y"], Rationals);
        let e = ideal(&r, &["t*x - 1", "y - t"]).eliminate(1).unwrap();
        assert_eq!(e.basis_strings(), vec!["x*y - 1"]);

        let r2 = ring(&["x", "y"], Rationals);
        let e = ideal(&r2, &["x - 1", "y - 2"]).eliminate(1).unwrap();
        assert_eq!(e.basis_strings(), vec!["y - 2"]);
        let e = ideal(&r2, &["x^2 + y^2"]).eliminate(1).unwrap();
        assert!(e.is_zero_ideal());
        assert!(matches!(
            ideal(&r2, &["x"]).eliminate(2),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn element_saturation_examples() {
        let r = ring(&["x", "y", "z"], PrimeField::default());
        let x = poly(&r, "x");
        let s = ideal(&r, &["x^2*y"]).saturate_element(&x).unwrap();
        assert_eq!(s.basis_strings(), vec!["y"]);
        let s = ideal(&r, &["y^2 - x^3"]).saturate_element(&x).unwrap();
        assert_eq!(s.basis_strings(), vec!["x^3 - y^2"]);
        let s = ideal(&r, &["x*y", "x*z"]).saturate_element(&x).unwrap();
        assert_eq!(s.basis_strings(), vec!["z", "y"]);
        let z = Polynomial::zero(&r);
        assert_eq!(ideal(&r, &["x"]).saturate_element(&z).unwrap_err(), Error::ZeroPolynomial);
    }

    #[test]
    fn ideal_saturation_examples() {
        let r = ring(&["x", "y"], PrimeField::default());
        let i = ideal(&r, &["x*y"]);
        let s = i.saturate_ideal(&ideal(&r, &["x", "y"])).unwrap();
        assert!(s.same_ideal(&i).unwrap());
        // x^2 * 1 ∈ (x^2, xy), so saturating by x leaves nothing
        let s = ideal(&r, &["x^2", "x*y"]).saturate_ideal(&ideal(&r, &["x"])).unwrap();
        assert!(s.is_unit());
        let prime = ideal(&r, &["y - x^2"]);
        let s = prime.saturate_ideal(&ideal(&r, &["x", "y - 1"])).unwrap();
        assert!(s.same_ideal(&prime).unwrap());
        assert!(i.saturate_ideal(&Ideal::zero(&r)).is_err());
    }

    #[test]
    fn intersection() {
        let r = ring(&["x", "y"], Rationals);
        let s = ideal(&r, &["x"]).intersect(&ideal(&r, &["y"])).unwrap();
        assert_eq!(s.basis_strings(), vec!["x*y"]);
        let s = ideal(&r, &["x", "y"]).intersect(&ideal(&r, &["x - 1", "y"])).unwrap();
        assert!(s.same_ideal(&ideal(&r, &["y", "x^2 - x"])).unwrap());
    }

    #[test]
    fn membership() {
        let r = ring(&["x", "y"], Rationals);
        assert!(ideal_membership(&poly(&r, "x^3"), &ideal(&r, &["x^2"])).unwrap());
        assert!(!ideal(&r, &["x^2"]).contains(&poly(&r, "x")).unwrap());
        assert!(ideal(&r, &["x^2"]).contains(&poly(&r, "x^3")).unwrap());
        assert!(ideal(&r, &["y^2 - x^3", "x"]).contains(&poly(&r, "y^2 - x^3")).unwrap());
        let i = ideal(&r, &["y^2 - x^3", "y"]);
        assert_eq!(i.basis_strings(), vec!["y", "x^3"]);
        assert!(!i.contains(&poly(&r, "x")).unwrap());
    }

    #[test]
    fn cache_is_consistent_across_threads() {
        let r = ring(&["x", "y", "z"], PrimeField::default());
        let i = Arc::new(ideal(&r, &["x^2 + y*z - 1", "x*y - z^2", "x + y + z - 2"]));
        let handles: Vec<_> = (0..4)
            .map(|_| {
                let i = i.clone();
                std::thread::spawn(move || i.groebner_basis(MonomialOrder::Grevlex))
            })
            .collect();
        let bases: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        for b in &bases {
            assert_eq!(**b, *bases[0]);
        }
        let cached = i.groebner_basis(MonomialOrder::Grevlex);
        assert!(bases.iter().any(|b| Arc::ptr_eq(b, &cached)) || *cached == *bases[0]);
    }
}
