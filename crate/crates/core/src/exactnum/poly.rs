use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{Num, One, Zero};

/// Dense univariate polynomial in `q`; `coeffs[k]` is the coefficient of `q^k`.
///
/// Trailing zero coefficients are always trimmed, so structural equality is
/// polynomial equality and the zero polynomial has an empty coefficient list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Num + Clone> Poly<T> {
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn constant(c: T) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * q^power`
    pub fn monomial(c: T, power: usize) -> Self {
        let mut coeffs = vec![T::zero(); power + 1];
        coeffs[power] = c;
        Self::from_coeffs(coeffs)
    }

    /// The variable `q` itself.
    pub fn q() -> Self {
        Self::monomial(T::one(), 1)
    }

    /// `1 + q`, which shows up in every q-weight in this crate.
    pub fn one_plus_q() -> Self {
        Self::from_coeffs(vec![T::one(), T::one()])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn coeff(&self, power: usize) -> T {
        self.coeffs.get(power).cloned().unwrap_or_else(T::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Horner evaluation inside the coefficient ring.
    pub fn evaluate(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Evaluation in an extension ring, e.g. integer coefficients at a rational point.
    pub fn evaluate_in<U>(&self, x: &U) -> U
    where
        U: Num + Clone + From<T>,
    {
        self.coeffs
            .iter()
            .rev()
            .fold(U::zero(), |acc, c| acc * x.clone() + U::from(c.clone()))
    }

    pub fn coeff_sum(&self) -> T {
        self.coeffs.iter().cloned().fold(T::zero(), |a, b| a + b)
    }

    pub fn map<U: Num + Clone>(&self, f: impl FnMut(&T) -> U) -> Poly<U> {
        Poly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(T, T) -> T) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..len).map(|k| f(self.coeff(k), other.coeff(k))).collect())
    }
}

impl<T: Num + Clone> Zero for Poly<T> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Num + Clone> One for Poly<T> {
    fn one() -> Self {
        Poly {
            coeffs: vec![T::one()],
        }
    }
}

impl<T: Num + Clone> From<T> for Poly<T> {
    fn from(c: T) -> Self {
        Self::constant(c)
    }
}

impl<'a, T: Num + Clone> Add<&'a Poly<T>> for &'a Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &'a Poly<T>) -> Poly<T> {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl<T: Num + Clone> Add for Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: Poly<T>) -> Poly<T> {
        &self + &rhs
    }
}

impl<T: Num + Clone> AddAssign<&Poly<T>> for Poly<T> {
    fn add_assign(&mut self, rhs: &Poly<T>) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), T::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a = a.clone() + b.clone();
        }
        self.trim();
    }
}

impl<'a, T: Num + Clone> Sub<&'a Poly<T>> for &'a Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &'a Poly<T>) -> Poly<T> {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl<T: Num + Clone> Sub for Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: Poly<T>) -> Poly<T> {
        &self - &rhs
    }
}

impl<'a, T: Num + Clone> Mul<&'a Poly<T>> for &'a Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &'a Poly<T>) -> Poly<T> {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::from_coeffs(out)
    }
}

impl<T: Num + Clone> Mul for Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: Poly<T>) -> Poly<T> {
        &self * &rhs
    }
}

impl<T: Num + Clone + Neg<Output = T>> Neg for Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::from_coeffs(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl<T: Num + Clone> Sum for Poly<T> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Poly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl<'a, T: Num + Clone + 'a> Sum<&'a Poly<T>> for Poly<T> {
    fn sum<I: Iterator<Item = &'a Poly<T>>>(iter: I) -> Self {
        iter.fold(Poly::zero(), |mut acc, p| {
            acc += p;
            acc
        })
    }
}

/// Text form `c0 + c1*q + c2*q^2`, zero coefficients omitted.
impl<T: fmt::Display + Zero> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let text = c.to_string();
            let (negative, magnitude) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            match (first, negative) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            match k {
                0 => write!(f, "{magnitude}")?,
                1 => write!(f, "{magnitude}*q")?,
                _ => write!(f, "{magnitude}*q^{k}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
