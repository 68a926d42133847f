//! Stratified varieties, constructible functions and their characteristic
//! cycles, MacPherson cycles `Λ_k(α)` and the index formulas.
//!
//! A constructible function is given either by its values `α(S)` or by its
//! normal Morse indices `η(S, α) = α(S) - Σ_{S' > S} α(S') E[S][S']`, where
//! `E[S][S'] = χ(l_S ∩ S')` is the Euler characteristic of the part of the
//! complex link of `S` lying in `S'`. The links are user input.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rayon::prelude::*;

use crate::degrees::{polar_profile, PolarProfile, ProfileConfig};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::geom::{dimension_and_degree, GenericForm};
use crate::ideal::Ideal;
use crate::polar::PolarIdeal;
use crate::poly::{same_ring, PolyRing};

#[derive(Debug, Clone)]
pub struct Stratum<F: Field> {
    pub name: String,
    /// Ideal of the closure of the stratum.
    pub closure: Ideal<F>,
    pub dim: usize,
}

impl<F: Field> Stratum<F> {
    pub fn new(name: impl Into<String>, closure: Ideal<F>, dim: usize) -> Self {
        Stratum {
            name: name.into(),
            closure,
            dim,
        }
    }
}

fn sign(dim: usize) -> i64 {
    if dim.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[derive(Debug, Clone)]
pub struct StratifiedSpace<F: Field> {
    ring: Arc<PolyRing<F>>,
    strata: Vec<Stratum<F>>,
    /// `below[i][j]` iff `S_i ⊂ closure(S_j)`, `i != j`.
    below: Vec<Vec<bool>>,
    n: usize,
}

impl<F: Field> StratifiedSpace<F> {
    /// Validates names and dimensions and infers the closure order: `S < S'`
    /// iff `dim S < dim S'` and every generator of `I(S̄')` lies in `I(S̄)`.
    /// An explicit order (pairs `(lower, upper)`, transitively closed here)
    /// must agree with the inferred one.
    pub fn new(ring: &Arc<PolyRing<F>>, strata: Vec<Stratum<F>>, order: Option<&[(String, String)]>) -> Result<Self> {
        if strata.is_empty() {
            return Err(Error::invalid("no strata"));
        }
        let mut seen = HashMap::new();
        for (i, s) in strata.iter().enumerate() {
            if seen.insert(s.name.as_str(), i).is_some() {
                return Err(Error::invalid(format!("duplicate stratum name `{}`", s.name)));
            }
            if !same_ring(ring, s.closure.ring()) {
                return Err(Error::ContextMismatch);
            }
            let computed = dimension_and_degree(&s.closure).dimension;
            if computed != s.dim as i64 {
                return Err(Error::DimensionMismatch {
                    what: format!("stratum `{}`", s.name),
                    declared: s.dim as i64,
                    computed,
                });
            }
        }
        let n = strata.iter().map(|s| s.dim).max().expect("nonempty");
        if n >= ring.nvars() {
            return Err(Error::invalid(format!(
                "top dimension {n} must be below the ambient dimension {}",
                ring.nvars()
            )));
        }
        let m = strata.len();
        let mut below = vec![vec![false; m]; m];
        for i in 0..m {
            for j in 0..m {
                if strata[i].dim < strata[j].dim {
                    below[i][j] = strata[i].closure.contains_ideal(&strata[j].closure)?;
                }
            }
        }
        if let Some(pairs) = order {
            let mut given = vec![vec![false; m]; m];
            for (lo, hi) in pairs {
                let idx = |name: &String| {
                    seen.get(name.as_str())
                        .copied()
                        .ok_or_else(|| Error::invalid(format!("order names unknown stratum `{name}`")))
                };
                given[idx(lo)?][idx(hi)?] = true;
            }
            for k in 0..m {
                for i in 0..m {
                    for j in 0..m {
                        if given[i][k] && given[k][j] {
                            given[i][j] = true;
                        }
                    }
                }
            }
            if (0..m).any(|i| given[i][i]) {
                return Err(Error::invalid("the given order has a cycle"));
            }
            if given != below {
                return Err(Error::invalid(
                    "the given order differs from the closure order inferred from the ideals",
                ));
            }
        }
        Ok(StratifiedSpace {
            ring: ring.clone(),
            strata,
            below,
            n,
        })
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn strata(&self) -> &[Stratum<F>] {
        &self.strata
    }

    pub fn len(&self) -> usize {
        self.strata.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strata.is_empty()
    }

    /// Top dimension `n`.
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.strata.iter().position(|s| s.name == name)
    }

    /// `S_i < S_j`.
    pub fn is_below(&self, i: usize, j: usize) -> bool {
        self.below[i][j]
    }

    /// All pairs `(lower, upper)` by name.
    pub fn order_pairs(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for (i, row) in self.below.iter().enumerate() {
            for (j, &b) in row.iter().enumerate() {
                if b {
                    out.push((self.strata[i].name.clone(), self.strata[j].name.clone()));
                }
            }
        }
        out
    }

    /// Strata of maximal dimension.
    pub fn top_strata(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.strata[i].dim == self.n).collect()
    }

    /// Indices sorted by decreasing dimension (stable).
    fn descending(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.len()).collect();
        idx.sort_by_key(|&i| std::cmp::Reverse(self.strata[i].dim));
        idx
    }

    /// Polar profile of every stratum closure, in stratum order.
    pub fn profiles(&self, cfg: &ProfileConfig) -> Result<Vec<PolarProfile<F>>> {
        let one = |s: &Stratum<F>| polar_profile(&s.closure, s.dim, cfg);
        if cfg.parallel {
            self.strata.par_iter().map(one).collect()
        } else {
            self.strata.iter().map(one).collect()
        }
    }

    /// Intersection with the hyperplane `ω = t`: every closure gains the
    /// equation and loses one dimension; points are dropped. Returns the
    /// sliced space and the indices of the strata kept. Fails as
    /// non-generic when some dimension does not drop by exactly one.
    pub fn slice(&self, form: &GenericForm<F>) -> Result<(StratifiedSpace<F>, Vec<usize>)> {
        if self.n == 0 {
            return Err(Error::invalid("cannot slice a zero-dimensional space"));
        }
        let eq = form.affine(&self.ring);
        let mut strata = Vec::new();
        let mut kept = Vec::new();
        for (i, s) in self.strata.iter().enumerate() {
            let closure = s.closure.with_generators(std::slice::from_ref(&eq))?;
            let dd = dimension_and_degree(&closure);
            if s.dim == 0 && dd.is_empty() {
                continue;
            }
            if dd.dimension != s.dim as i64 - 1 {
                return Err(Error::NonGeneric(format!(
                    "slicing stratum `{}` of dimension {} gave dimension {}",
                    s.name, s.dim, dd.dimension
                )));
            }
            strata.push(Stratum::new(s.name.clone(), closure, s.dim - 1));
            kept.push(i);
        }
        let below = kept
            .iter()
            .map(|&i| kept.iter().map(|&j| self.below[i][j]).collect())
            .collect();
        let space = StratifiedSpace {
            ring: self.ring.clone(),
            strata,
            below,
            n: self.n - 1,
        };
        Ok((space, kept))
    }
}

/// Link data `E[S][S'] = χ(l_S ∩ S')` for pairs `S < S'`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LinkMatrix {
    entries: BTreeMap<(usize, usize), i64>,
}

impl LinkMatrix {
    pub fn new() -> Self {
        Self::default()
    }

    /// From `{lower: {upper: value}}` keyed by stratum names. Entries for
    /// pairs that are not `lower < upper` are rejected.
    pub fn from_named<F: Field>(space: &StratifiedSpace<F>, named: &BTreeMap<String, BTreeMap<String, i64>>) -> Result<Self> {
        let mut m = LinkMatrix::new();
        for (lo, row) in named {
            let i = space
                .index_of(lo)
                .ok_or_else(|| Error::invalid(format!("links name unknown stratum `{lo}`")))?;
            for (hi, &v) in row {
                let j = space
                    .index_of(hi)
                    .ok_or_else(|| Error::invalid(format!("links name unknown stratum `{hi}`")))?;
                if !space.is_below(i, j) {
                    return Err(Error::invalid(format!(
                        "link entry E[{lo}][{hi}] given but `{lo}` is not in the closure of `{hi}`"
                    )));
                }
                m.entries.insert((i, j), v);
            }
        }
        Ok(m)
    }

    pub fn set(&mut self, low: usize, high: usize, value: i64) {
        self.entries.insert((low, high), value);
    }

    pub fn get<F: Field>(&self, space: &StratifiedSpace<F>, low: usize, high: usize) -> Result<i64> {
        self.entries.get(&(low, high)).copied().ok_or_else(|| Error::MissingLink {
            low: space.strata[low].name.clone(),
            high: space.strata[high].name.clone(),
        })
    }

    /// Fails with the first missing entry among all pairs `S < S'`.
    pub fn require_complete<F: Field>(&self, space: &StratifiedSpace<F>) -> Result<()> {
        for i in 0..space.len() {
            for j in 0..space.len() {
                if space.is_below(i, j) {
                    self.get(space, i, j)?;
                }
            }
        }
        Ok(())
    }

    /// Entries among the `kept` strata, reindexed.
    pub fn restrict(&self, kept: &[usize]) -> LinkMatrix {
        let pos: HashMap<usize, usize> = kept.iter().enumerate().map(|(a, &b)| (b, a)).collect();
        LinkMatrix {
            entries: self
                .entries
                .iter()
                .filter_map(|(&(i, j), &v)| Some(((*pos.get(&i)?, *pos.get(&j)?), v)))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    /// Values `α(S)`.
    Alpha,
    /// Normal Morse indices `η(S, α)`.
    Eta,
}

/// One integer per stratum, in the stratum order of its space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructibleData {
    pub basis: Basis,
    pub values: Vec<i64>,
}

impl ConstructibleData {
    pub fn new(basis: Basis, values: Vec<i64>) -> Self {
        ConstructibleData { basis, values }
    }

    /// From a name-keyed map that must cover every stratum exactly.
    pub fn from_named<F: Field>(space: &StratifiedSpace<F>, basis: Basis, named: &BTreeMap<String, i64>) -> Result<Self> {
        for name in named.keys() {
            if space.index_of(name).is_none() {
                return Err(Error::invalid(format!("value given for unknown stratum `{name}`")));
            }
        }
        let values = space
            .strata()
            .iter()
            .map(|s| {
                named
                    .get(&s.name)
                    .copied()
                    .ok_or_else(|| Error::invalid(format!("no value for stratum `{}`", s.name)))
            })
            .collect::<Result<_>>()?;
        Ok(ConstructibleData { basis, values })
    }

    pub fn named<F: Field>(&self, space: &StratifiedSpace<F>) -> Vec<(String, i64)> {
        space
            .strata()
            .iter()
            .zip(&self.values)
            .map(|(s, &v)| (s.name.clone(), v))
            .collect()
    }

    pub fn restrict(&self, kept: &[usize]) -> ConstructibleData {
        ConstructibleData {
            basis: self.basis,
            values: kept.iter().map(|&i| self.values[i]).collect(),
        }
    }

    fn check<F: Field>(&self, space: &StratifiedSpace<F>, basis: Basis) -> Result<()> {
        if self.basis != basis {
            return Err(Error::invalid(format!("expected data in the {basis:?} basis")));
        }
        if self.values.len() != space.len() {
            return Err(Error::invalid("one value per stratum is required"));
        }
        Ok(())
    }
}

/// `η(S) = α(S) - Σ_{S' > S} α(S') E[S][S']`.
pub fn eta_from_alpha<F: Field>(space: &StratifiedSpace<F>, alpha: &ConstructibleData, links: &LinkMatrix) -> Result<ConstructibleData> {
    alpha.check(space, Basis::Alpha)?;
    let m = space.len();
    let mut eta = Vec::with_capacity(m);
    for i in 0..m {
        let mut v = alpha.values[i];
        for j in 0..m {
            if space.is_below(i, j) {
                v -= alpha.values[j] * links.get(space, i, j)?;
            }
        }
        eta.push(v);
    }
    Ok(ConstructibleData::new(Basis::Eta, eta))
}

/// Inverse of [`eta_from_alpha`] on the strata with `mask` set, by
/// downward induction on dimension.
fn solve_alpha<F: Field>(space: &StratifiedSpace<F>, eta: &[i64], links: &LinkMatrix, mask: &[bool]) -> Result<Vec<i64>> {
    let mut alpha = vec![0i64; space.len()];
    for i in space.descending() {
        if !mask[i] {
            continue;
        }
        let mut v = eta[i];
        for j in 0..space.len() {
            if mask[j] && space.is_below(i, j) {
                v += alpha[j] * links.get(space, i, j)?;
            }
        }
        alpha[i] = v;
    }
    Ok(alpha)
}

/// `α(S) = η(S) + Σ_{S' > S} α(S') E[S][S']`.
pub fn alpha_from_eta<F: Field>(space: &StratifiedSpace<F>, eta: &ConstructibleData, links: &LinkMatrix) -> Result<ConstructibleData> {
    eta.check(space, Basis::Eta)?;
    let alpha = solve_alpha(space, &eta.values, links, &vec![true; space.len()])?;
    Ok(ConstructibleData::new(Basis::Alpha, alpha))
}

/// Local Euler obstruction of `closure(S_target)` along every stratum
/// (zero off the closure). Its characteristic cycle, after the sign
/// `(-1)^dim`, is the single conormal term of the target.
pub fn euler_obstruction_function<F: Field>(space: &StratifiedSpace<F>, links: &LinkMatrix, target: usize) -> Result<ConstructibleData> {
    if target >= space.len() {
        return Err(Error::IndexOutOfRange {
            index: target,
            limit: space.len(),
        });
    }
    let mask: Vec<bool> = (0..space.len())
        .map(|i| i == target || space.is_below(i, target))
        .collect();
    let mut eta = vec![0i64; space.len()];
    eta[target] = sign(space.strata[target].dim);
    let signed = solve_alpha(space, &eta, links, &mask)?;
    let s = sign(space.strata[target].dim);
    Ok(ConstructibleData::new(
        Basis::Alpha,
        signed.into_iter().map(|v| v * s).collect(),
    ))
}

/// `Eu_X` for `X` the union of the top-dimensional strata: the sum of the
/// obstructions of their closures.
pub fn euler_obstruction_of_space<F: Field>(space: &StratifiedSpace<F>, links: &LinkMatrix) -> Result<ConstructibleData> {
    let mut total = vec![0i64; space.len()];
    for t in space.top_strata() {
        let eu = euler_obstruction_function(space, links, t)?;
        for (a, b) in total.iter_mut().zip(eu.values) {
            *a += b;
        }
    }
    Ok(ConstructibleData::new(Basis::Alpha, total))
}

/// Coefficients `m_S = (-1)^dim S η(S)` of `CC(α)`, by stratum name.
pub fn characteristic_cycle<F: Field>(space: &StratifiedSpace<F>, eta: &ConstructibleData) -> Result<Vec<(String, i64)>> {
    eta.check(space, Basis::Eta)?;
    Ok(space
        .strata()
        .iter()
        .zip(&eta.values)
        .map(|(s, &e)| (s.name.clone(), sign(s.dim) * e))
        .collect())
}

#[derive(Debug, Clone)]
pub struct CycleTerm<F: Field> {
    pub stratum: String,
    pub coefficient: i64,
    /// `None` when `dim S < k`, where the polar variety is empty by
    /// convention.
    pub polar: Option<PolarIdeal<F>>,
    pub gamma: u64,
}

/// `Λ_k(α) = Σ_S (-1)^dim S η(S) P_k(S̄)` with `γ_k(α)`.
#[derive(Debug, Clone)]
pub struct MacPhersonCycle<F: Field> {
    pub k: usize,
    pub terms: Vec<CycleTerm<F>>,
    pub gamma: i64,
}

fn check_profiles<F: Field>(space: &StratifiedSpace<F>, profiles: &[PolarProfile<F>]) -> Result<()> {
    if profiles.len() != space.len() || profiles.iter().zip(space.strata()).any(|(p, s)| p.n != s.dim) {
        return Err(Error::invalid("profiles do not match the strata"));
    }
    Ok(())
}

/// [`macpherson_cycle`] from precomputed stratum profiles.
pub fn macpherson_cycle_with<F: Field>(
    space: &StratifiedSpace<F>,
    profiles: &[PolarProfile<F>],
    eta: &ConstructibleData,
    k: usize,
) -> Result<MacPhersonCycle<F>> {
    check_profiles(space, profiles)?;
    if k > space.dim() {
        return Err(Error::IndexOutOfRange {
            index: k,
            limit: space.dim() + 1,
        });
    }
    let cc = characteristic_cycle(space, eta)?;
    let terms: Vec<CycleTerm<F>> = cc
        .into_iter()
        .zip(profiles)
        .map(|((stratum, coefficient), p)| {
            let level = p.levels.get(k);
            CycleTerm {
                stratum,
                coefficient,
                polar: level.map(|l| l.polar.clone()),
                gamma: p.gamma(k),
            }
        })
        .collect();
    let gamma = terms.iter().map(|t| t.coefficient * t.gamma as i64).sum();
    Ok(MacPhersonCycle { k, terms, gamma })
}

pub fn macpherson_cycle<F: Field>(
    space: &StratifiedSpace<F>,
    eta: &ConstructibleData,
    k: usize,
    cfg: &ProfileConfig,
) -> Result<MacPhersonCycle<F>> {
    macpherson_cycle_with(space, &space.profiles(cfg)?, eta, k)
}

/// [`generalized_degrees`] from precomputed stratum profiles.
pub fn generalized_degrees_with<F: Field>(
    space: &StratifiedSpace<F>,
    profiles: &[PolarProfile<F>],
    eta: &ConstructibleData,
) -> Result<Vec<i64>> {
    check_profiles(space, profiles)?;
    let cc = characteristic_cycle(space, eta)?;
    Ok((0..=space.dim())
        .map(|k| {
            cc.iter()
                .zip(profiles)
                .map(|((_, m), p)| m * p.gamma(k) as i64)
                .sum()
        })
        .collect())
}

/// `[γ_0(α), ..., γ_n(α)]`, `γ_k(α) = Σ_S (-1)^dim S η(S) γ_k(S̄)`.
pub fn generalized_degrees<F: Field>(space: &StratifiedSpace<F>, eta: &ConstructibleData, cfg: &ProfileConfig) -> Result<Vec<i64>> {
    generalized_degrees_with(space, &space.profiles(cfg)?, eta)
}

/// Euler characteristics of generic linear sections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerCharacteristics {
    /// `χ_j = χ(X ∩ {j generic hyperplanes}, α)` for `j = 0..=n+1`.
    pub slices: Vec<i64>,
    /// `χ(X, α) = χ_0`.
    pub chi: i64,
}

/// `χ_j = Σ_{k >= j} (-1)^k γ_k(α)`.
pub fn euler_characteristics_from_degrees(gamma: &[i64]) -> EulerCharacteristics {
    let mut slices = vec![0i64; gamma.len() + 1];
    for j in (0..gamma.len()).rev() {
        let term = if j % 2 == 0 { gamma[j] } else { -gamma[j] };
        slices[j] = slices[j + 1] + term;
    }
    EulerCharacteristics {
        chi: slices[0],
        slices,
    }
}

pub fn euler_characteristics<F: Field>(space: &StratifiedSpace<F>, eta: &ConstructibleData, cfg: &ProfileConfig) -> Result<EulerCharacteristics> {
    Ok(euler_characteristics_from_degrees(&generalized_degrees(space, eta, cfg)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::parse::parse_polynomial;

    type F = PrimeField;

    fn space(vars: &[&str], strata: &[(&str, &[&str], usize)]) -> StratifiedSpace<F> {
        let r = PolyRing::new(vars.iter().map(|s| s.to_string()).collect(), F::default()).unwrap();
        let strata = strata
            .iter()
            .map(|(name, gens, dim)| {
                let g = gens.iter().map(|s| parse_polynomial(s, &r).unwrap()).collect();
                Stratum::new(*name, Ideal::new(&r, g).unwrap(), *dim)
            })
            .collect();
        StratifiedSpace::new(&r, strata, None).unwrap()
    }

    fn cusp() -> (StratifiedSpace<F>, LinkMatrix) {
        let s = space(&["x", "y"], &[("S1", &["y^2 - x^3"], 1), ("S0", &["x", "y"], 0)]);
        let mut e = LinkMatrix::new();
        e.set(1, 0, 2);
        (s, e)
    }

    fn alpha(v: &[i64]) -> ConstructibleData {
        ConstructibleData::new(Basis::Alpha, v.to_vec())
    }

    fn eta(v: &[i64]) -> ConstructibleData {
        ConstructibleData::new(Basis::Eta, v.to_vec())
    }

    #[test]
    fn inferred_order() {
        let (s, _) = cusp();
        assert!(s.is_below(1, 0));
        assert!(!s.is_below(0, 1));
        assert_eq!(s.order_pairs(), vec![("S0".to_string(), "S1".to_string())]);
        assert_eq!(s.dim(), 1);
    }

    #[test]
    fn explicit_order_must_match() {
        let (s, _) = cusp();
        let r = s.ring().clone();
        let good = [("S0".to_string(), "S1".to_string())];
        assert!(StratifiedSpace::new(&r, s.strata().to_vec(), Some(&good)).is_ok());
        let bad = [("S1".to_string(), "S0".to_string())];
        assert!(StratifiedSpace::new(&r, s.strata().to_vec(), Some(&bad)).is_err());
        assert!(StratifiedSpace::new(&r, s.strata().to_vec(), Some(&[])).is_err());
    }

    #[test]
    fn declared_dimension_is_checked() {
        let (s, _) = cusp();
        let mut strata = s.strata().to_vec();
        strata[0].dim = 2;
        assert!(matches!(
            StratifiedSpace::new(s.ring(), strata, None),
            Err(Error::DimensionMismatch { declared: 2, computed: 1, .. })
        ));
    }

    #[test]
    fn cusp_normal_morse_indices() {
        let (s, e) = cusp();
        assert_eq!(eta_from_alpha(&s, &alpha(&[1, 1]), &e).unwrap(), eta(&[1, -1]));
        assert_eq!(alpha_from_eta(&s, &eta(&[-1, 0]), &e).unwrap(), alpha(&[-1, -2]));
        assert_eq!(
            characteristic_cycle(&s, &eta(&[1, -1])).unwrap(),
            vec![("S1".to_string(), -1), ("S0".to_string(), -1)]
        );
    }

    #[test]
    fn missing_links_are_reported() {
        let (s, _) = cusp();
        let e = LinkMatrix::new();
        assert!(matches!(
            eta_from_alpha(&s, &alpha(&[1, 1]), &e),
            Err(Error::MissingLink { .. })
        ));
        assert!(e.require_complete(&s).is_err());
        // a point's own obstruction needs no links
        assert_eq!(euler_obstruction_function(&s, &e, 1).unwrap(), alpha(&[0, 1]));
    }

    #[test]
    fn euler_obstruction_functions() {
        let (s, e) = cusp();
        assert_eq!(euler_obstruction_function(&s, &e, 0).unwrap(), alpha(&[1, 2]));
        let eu = euler_obstruction_of_space(&s, &e).unwrap();
        let eta_eu = eta_from_alpha(&s, &eu, &e).unwrap();
        // Ěu has CC equal to the single conormal of the curve
        let cc = characteristic_cycle(&s, &eta_eu).unwrap();
        assert_eq!(cc.iter().map(|c| -c.1).collect::<Vec<_>>(), vec![1, 0]);
    }

    #[test]
    fn umbrella_obstruction() {
        let s = space(
            &["x", "y", "z"],
            &[("X", &["x^2 - z*y^2"], 2), ("L", &["x", "y"], 1), ("O", &["x", "y", "z"], 0)],
        );
        let mut e = LinkMatrix::new();
        e.set(1, 0, 2);
        e.set(2, 0, -1);
        e.set(2, 1, 1);
        assert_eq!(euler_obstruction_function(&s, &e, 0).unwrap(), alpha(&[1, 2, 1]));
        assert_eq!(euler_obstruction_function(&s, &e, 1).unwrap(), alpha(&[0, 1, 1]));
    }

    #[test]
    fn round_trips() {
        let (s, e) = cusp();
        for a in [[0, 0], [1, 1], [3, -7], [-5, 2]] {
            let a = alpha(&a);
            let back = alpha_from_eta(&s, &eta_from_alpha(&s, &a, &e).unwrap(), &e).unwrap();
            assert_eq!(back, a);
        }
    }

    #[test]
    fn cusp_cycles_and_chi() {
        let (s, e) = cusp();
        let cfg = ProfileConfig::default();
        let profiles = s.profiles(&cfg).unwrap();
        let h = eta_from_alpha(&s, &alpha(&[1, 1]), &e).unwrap();
        let c0 = macpherson_cycle_with(&s, &profiles, &h, 0).unwrap();
        assert_eq!(c0.terms.iter().map(|t| (t.coefficient, t.gamma)).collect::<Vec<_>>(), vec![(-1, 1), (-1, 1)]);
        assert_eq!(c0.gamma, -2);
        let c1 = macpherson_cycle_with(&s, &profiles, &h, 1).unwrap();
        assert_eq!(c1.gamma, -3);
        assert!(c1.terms[1].polar.is_none());
        assert_eq!(c1.terms[1].gamma, 0);
        let g = generalized_degrees_with(&s, &profiles, &h).unwrap();
        assert_eq!(g, vec![-2, -3]);
        let chi = euler_characteristics_from_degrees(&g);
        assert_eq!(chi.chi, 1);
        assert_eq!(chi.slices, vec![1, 3, 0]);
        // STV: χ(X, Eu_X) = Eu(X) = 2
        let eu = euler_obstruction_of_space(&s, &e).unwrap();
        let g = generalized_degrees_with(&s, &profiles, &eta_from_alpha(&s, &eu, &e).unwrap()).unwrap();
        assert_eq!(euler_characteristics_from_degrees(&g).chi, profiles[0].euler_obstruction());
    }

    #[test]
    fn nodal_cubic() {
        let s = space(&["x", "y"], &[("S1", &["y^2 - x^3 - x^2"], 1), ("S0", &["x", "y"], 0)]);
        let mut e = LinkMatrix::new();
        e.set(1, 0, 2);
        let cfg = ProfileConfig::default();
        let h = eta_from_alpha(&s, &alpha(&[1, 1]), &e).unwrap();
        assert_eq!(generalized_degrees(&s, &h, &cfg).unwrap(), vec![-3, -3]);
        assert_eq!(euler_characteristics(&s, &h, &cfg).unwrap().chi, 0);
        assert_eq!(euler_obstruction_function(&s, &e, 0).unwrap(), alpha(&[1, 2]));
    }

    #[test]
    fn quadric_slice_is_gysin_compatible() {
        let s = space(&["x", "y", "z"], &[("X", &["z - x*y"], 2)]);
        let cfg = ProfileConfig::default();
        let h = eta(&[1]);
        let g = generalized_degrees(&s, &h, &cfg).unwrap();
        assert_eq!(g, vec![1, 2, 2]);
        assert_eq!(euler_characteristics_from_degrees(&g).chi, 1);
        let form = crate::geom::FormSampler::new(99).sample(s.ring().field(), 3, 1, true);
        let (sliced, kept) = s.slice(&form[0]).unwrap();
        assert_eq!(kept, vec![0]);
        let gs = generalized_degrees(&sliced, &h.restrict(&kept), &cfg).unwrap();
        for k in 1..=2 {
            assert_eq!(-g[k], gs[k - 1]);
        }
    }

    #[test]
    fn umbrella_gysin() {
        let s = space(
            &["x", "y", "z"],
            &[("X", &["x^2 - z*y^2"], 2), ("L", &["x", "y"], 1), ("O", &["x", "y", "z"], 0)],
        );
        let mut e = LinkMatrix::new();
        e.set(1, 0, 2);
        e.set(2, 0, -1);
        e.set(2, 1, 1);
        let cfg = ProfileConfig::default();
        let profiles = s.profiles(&cfg).unwrap();
        // parametrization (uv, u, v^2): Eu(X) = 1, χ(X) = 1
        assert_eq!(profiles[0].gamma, vec![1, 3, 3]);
        assert_eq!(profiles[1].gamma, vec![0, 1]);
        let eu = euler_obstruction_of_space(&s, &e).unwrap();
        let g = generalized_degrees_with(&s, &profiles, &eta_from_alpha(&s, &eu, &e).unwrap()).unwrap();
        assert_eq!(euler_characteristics_from_degrees(&g).chi, profiles[0].euler_obstruction());
        let one = eta_from_alpha(&s, &alpha(&[1, 1, 1]), &e).unwrap();
        let g = generalized_degrees_with(&s, &profiles, &one).unwrap();
        assert_eq!(g, vec![2, 4, 3]);
        assert_eq!(euler_characteristics_from_degrees(&g).chi, 1);
        let form = crate::geom::FormSampler::new(5).sample(s.ring().field(), 3, 1, true);
        let (sliced, kept) = s.slice(&form[0]).unwrap();
        assert_eq!(kept, vec![0, 1]);
        let sliced_profiles = sliced.profiles(&cfg).unwrap();
        let se = e.restrict(&kept);
        for a in [[1, 1, 1], [2, -1, 3], [0, 4, -2]] {
            let h = eta_from_alpha(&s, &alpha(&a), &e).unwrap();
            let g = generalized_degrees_with(&s, &profiles, &h).unwrap();
            let hs = eta_from_alpha(&sliced, &alpha(&a).restrict(&kept), &se).unwrap();
            assert_eq!(hs, h.restrict(&kept));
            let gs = generalized_degrees_with(&sliced, &sliced_profiles, &hs).unwrap();
            for k in 1..=2 {
                assert_eq!(-g[k], gs[k - 1], "alpha {a:?}, k {k}");
            }
        }
    }
}
