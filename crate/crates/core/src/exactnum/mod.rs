//! Exact arithmetic used throughout the crate.
//!
//! Integers are [`num_bigint::BigInt`], rationals are reduced
//! [`num_rational::BigRational`] values, and polynomials in the formal
//! variable `q` are [`Poly`], generic over any `num_traits::Num` coefficient
//! ring. The concrete aliases used by the rest of the crate live at the
//! crate root.

mod binom;
pub mod json;
mod poly;

pub use binom::{binom, int_pow};
pub use poly::Poly;
