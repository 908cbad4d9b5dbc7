//! Bernoulli numbers and polynomials, and the power-sum bridge
//! `B_n(m+1) - B_n = n (1^{n-1} + … + m^{n-1})` used by the type-D identity.
//!
//! Convention: `B_1 = -1/2`.

use std::sync::OnceLock;

use num_traits::{FromPrimitive, Num, One};

use crate::error::{Error, Result};
use crate::exactnum::int_pow;
use crate::{Integer, Poly, Rational};

/// `B_0, …, B_{count-1}` over any field, from
/// `Σ_{k=0}^{n} C(n+1, k) B_k = 0` for `n >= 1`.
pub fn bernoulli_numbers<F: Num + Clone + FromPrimitive>(count: usize) -> Vec<F> {
    let mut numbers: Vec<F> = Vec::with_capacity(count);
    // pascal holds row n+1 of Pascal's triangle, built in F by additions only
    let mut pascal: Vec<F> = vec![F::one(), F::one()];
    for n in 0..count {
        if n == 0 {
            numbers.push(F::one());
            continue;
        }
        let next: Vec<F> = std::iter::once(F::one())
            .chain(pascal.windows(2).map(|w| w[0].clone() + w[1].clone()))
            .chain(std::iter::once(F::one()))
            .collect();
        pascal = next;
        let s = numbers
            .iter()
            .zip(&pascal)
            .fold(F::zero(), |acc, (b, c)| acc + c.clone() * b.clone());
        let denom = F::from_usize(n + 1).expect("small integers embed in every field");
        numbers.push(F::zero() - s / denom);
    }
    numbers
}

/// Numbers `B_0..=B_64`, computed once.
#[derive(Debug)]
pub struct BernoulliCache {
    numbers: Vec<Rational>,
}

pub const CACHE_LIMIT: usize = 64;

impl BernoulliCache {
    pub fn global() -> &'static BernoulliCache {
        static CACHE: OnceLock<BernoulliCache> = OnceLock::new();
        CACHE.get_or_init(|| BernoulliCache {
            numbers: bernoulli_numbers(CACHE_LIMIT + 1),
        })
    }

    pub fn number(&self, n: usize) -> Option<&Rational> {
        self.numbers.get(n)
    }

    pub fn numbers(&self) -> &[Rational] {
        &self.numbers
    }
}

pub fn bernoulli_number(n: usize) -> Rational {
    match BernoulliCache::global().number(n) {
        Some(b) => b.clone(),
        None => bernoulli_numbers::<Rational>(n + 1).pop().unwrap(),
    }
}

/// `B_n(x) = Σ_k C(n, k) B_k x^{n-k}` as an ascending coefficient list.
pub fn bernoulli_polynomial(n: usize) -> Poly<Rational> {
    let coeffs = (0..=n)
        .map(|power| {
            // coefficient of x^power comes from k = n - power
            let k = n - power;
            Rational::from(crate::binom(n as u64, k as u64)) * bernoulli_number(k)
        })
        .collect();
    Poly::from_coeffs(coeffs)
}

pub fn bernoulli_poly_eval(n: usize, x: &Rational) -> Rational {
    bernoulli_polynomial(n).evaluate(x)
}

/// `n · Σ_{j=1}^{m} j^{n-1}`
pub fn power_sum(n: usize, m: u64) -> Integer {
    assert!(n >= 1, "power_sum needs n >= 1");
    let s: Integer = (1..=m).map(|j| int_pow(j as i64, n as u32 - 1)).sum();
    s * n
}

/// The two routes to `(1+2m)^n - 2^{n-1}(B_n(m+1) - B_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeDCorrection {
    pub bernoulli_route: Rational,
    pub power_sum_route: Integer,
}

impl TypeDCorrection {
    pub fn agree(&self) -> bool {
        self.bernoulli_route.is_integer() && self.bernoulli_route.numer() == &self.power_sum_route
    }
}

pub fn type_d_lhs_routes(n: usize, m: u64) -> Result<TypeDCorrection> {
    if n < 2 {
        return Err(Error::InvalidArgument(
            "the type-D identity needs n >= 2".into(),
        ));
    }
    let top = int_pow(1 + 2 * m as i64, n as u32);
    let scale = Integer::one() << (n - 1);
    let bridge =
        bernoulli_poly_eval(n, &Rational::from(Integer::from(m + 1))) - bernoulli_number(n);
    Ok(TypeDCorrection {
        bernoulli_route: Rational::from(top.clone()) - Rational::from(scale.clone()) * bridge,
        power_sum_route: top - scale * power_sum(n, m),
    })
}

/// Left side of the type-D Worpitzky identity at `q = 1`, checked by both routes.
pub fn type_d_lhs(n: usize, m: u64) -> Result<Integer> {
    let routes = type_d_lhs_routes(n, m)?;
    if !routes.agree() {
        return Err(Error::Invariant(format!(
            "Bernoulli route {} and power-sum route {} disagree at n={n} m={m}",
            routes.bernoulli_route, routes.power_sum_route
        )));
    }
    Ok(routes.power_sum_route)
}
