//! Exact computation of affine polar varieties, their degrees, MacPherson
//! cycles and weighted Euler characteristics of stratified varieties.

pub mod cycles;
pub mod degrees;
pub mod error;
pub mod field;
pub mod geom;
pub mod groebner;
pub mod ideal;
pub mod parse;
pub mod poly;
pub mod polar;
pub mod univariate;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals, DEFAULT_PRIME, FALLBACK_PRIMES};
pub use geom::{DimDeg, FormSampler, GenericForm};
pub use ideal::Ideal;
pub use parse::parse_polynomial;
pub use poly::{Monomial, MonomialOrder, PolyRing, Polynomial};
pub use polar::{PolarIdeal, PolyMatrix, Purity};
