//! Benchmark fixtures for the polar engine.

use std::sync::Arc;

use polarmac_core::{parse_polynomial, Ideal, PolyRing, Polynomial, PrimeField};

/// A ring over the default prime field.
pub fn ring(vars: &[&str]) -> Arc<PolyRing<PrimeField>> {
    PolyRing::new(vars.iter().map(|v| v.to_string()).collect(), PrimeField::default()).expect("valid ring")
}

pub fn polys(ring: &Arc<PolyRing<PrimeField>>, gens: &[&str]) -> Vec<Polynomial<PrimeField>> {
    gens.iter().map(|g| parse_polynomial(g, ring).expect("valid polynomial")).collect()
}

/// The cyclic-`n` system for `n` in 3..=4.
pub fn cyclic(n: usize) -> (Arc<PolyRing<PrimeField>>, Vec<Polynomial<PrimeField>>) {
    match n {
        3 => {
            let r = ring(&["a", "b", "c"]);
            let g = polys(&r, &["a + b + c", "a*b + b*c + c*a", "a*b*c - 1"]);
            (r, g)
        }
        4 => {
            let r = ring(&["a", "b", "c", "d"]);
            let g = polys(
                &r,
                &[
                    "a + b + c + d",
                    "a*b + b*c + c*d + d*a",
                    "a*b*c + b*c*d + c*d*a + d*a*b",
                    "a*b*c*d - 1",
                ],
            );
            (r, g)
        }
        _ => panic!("cyclic({n}) is not a fixture"),
    }
}

/// Whitney umbrella `x^2 - z y^2` in three variables.
pub fn umbrella() -> Ideal<PrimeField> {
    let r = ring(&["x", "y", "z"]);
    Ideal::new(&r, polys(&r, &["x^2 - z*y^2"])).expect("valid ideal")
}

/// Nodal cubic `y^2 - x^2 (x + 1)`.
pub fn nodal() -> Ideal<PrimeField> {
    let r = ring(&["x", "y"]);
    Ideal::new(&r, polys(&r, &["y^2 - x^3 - x^2"])).expect("valid ideal")
}
