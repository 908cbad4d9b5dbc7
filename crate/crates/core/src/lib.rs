//! Exact enumeration engine for Eulerian numbers of Coxeter types A, B and D,
//! their q-analogues, and the Worpitzky identities that tie them to counts of
//! vectors over the alphabet `{0, ±1, …, ±m}`.
//!
//! Every quantity is exact: integers are arbitrary precision, Bernoulli values
//! are reduced rationals and q-weights are integer polynomials. Verification
//! routines enumerate the finite objects involved and compare them with the
//! closed forms.

pub mod alphabet;
pub mod bernoulli;
pub mod error;
pub mod eulerian;
pub mod exactnum;
pub mod map_b;
pub mod map_d;
pub mod oeis;
pub mod report;
pub mod signed_perm;

pub use alphabet::{order_key, AlphabetVector, OrderKey, VectorSpace};
pub use error::{Error, ParseErrorKind, Result};
pub use eulerian::{CoxeterType, EulerianRow};
pub use exactnum::{binom, Poly};
pub use map_d::{MapOutcome, MissingCase};
pub use report::IdentityReport;
pub use signed_perm::{DescentSet, SignedPermutation};

/// Arbitrary-precision integer.
pub type Integer = num_bigint::BigInt;
/// Reduced rational with positive denominator.
pub type Rational = num_rational::BigRational;
/// Polynomial in `q` with big-integer coefficients.
pub type QPolynomial = Poly<Integer>;
/// Polynomial with rational coefficients.
pub type RationalPolynomial = Poly<Rational>;

/// `Σ_k hist[k] q^k`
pub fn histogram_poly(hist: &[u64]) -> QPolynomial {
    QPolynomial::from_coeffs(hist.iter().map(|&c| Integer::from(c)).collect())
}
