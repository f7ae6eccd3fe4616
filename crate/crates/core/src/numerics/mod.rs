//! Certified arbitrary-precision numerics: exact rationals, dyadic
//! bigfloats, midpoint-radius enclosures, zeta values, and growth families.

pub mod dyadic;
pub mod growth;
pub mod rational;
pub mod real;
pub mod zeta;

pub use dyadic::{BigFloat, Round};
pub use growth::{pow_rational, GrowthFunction, PsiSpec};
pub use rational::{format_rational, parse_rational, rational_string};
pub use real::{
    certified_floor_with, dyadic_to_rational, BigReal, DEFAULT_PRECISION, MAX_PRECISION,
};
pub use zeta::{bernoulli, zeta};
