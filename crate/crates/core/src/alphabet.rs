//! Vectors over the alphabet `{0, ±1, …, ±m}` and the order
//! `0 ≺ -1 ≺ 1 ≺ -2 ≺ 2 ≺ … ≺ -m ≺ m` on its letters.

use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{parse_ints, Error, ParseErrorKind, Result};
use crate::QPolynomial;

/// Rank of a letter under `≺`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderKey(pub u32);

pub fn order_key(letter: i32) -> OrderKey {
    let j = letter.unsigned_abs();
    match letter {
        0 => OrderKey(0),
        x if x < 0 => OrderKey(2 * j - 1),
        _ => OrderKey(2 * j),
    }
}

/// A length-`n` vector with every `|a_i| <= m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlphabetVector {
    entries: Vec<i32>,
    m: u32,
}

impl AlphabetVector {
    pub fn new(entries: Vec<i64>, m: u32) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Parse {
                position: 1,
                kind: ParseErrorKind::Empty,
            });
        }
        if let Some((i, &value)) = entries
            .iter()
            .enumerate()
            .find(|(_, &x)| x.unsigned_abs() > u64::from(m))
        {
            return Err(Error::Parse {
                position: i + 1,
                kind: ParseErrorKind::OutsideAlphabet { value, m },
            });
        }
        Ok(AlphabetVector {
            entries: entries.into_iter().map(|x| x as i32).collect(),
            m,
        })
    }

    pub fn parse(text: &str, m: u32) -> Result<Self> {
        Self::new(parse_ints(text)?, m)
    }

    pub(crate) fn from_entries_unchecked(entries: Vec<i32>, m: u32) -> Self {
        debug_assert!(entries.iter().all(|x| x.unsigned_abs() <= m));
        AlphabetVector { entries, m }
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn entries(&self) -> &[i32] {
        &self.entries
    }

    /// `a_position` for `position` in `1..=n`.
    pub fn at(&self, position: usize) -> i32 {
        self.entries[position - 1]
    }

    pub fn contains_zero(&self) -> bool {
        self.entries.contains(&0)
    }

    pub fn zero_count(&self) -> usize {
        self.entries.iter().filter(|&&x| x == 0).count()
    }

    /// The `≺`-minimal letter occurring in the vector.
    pub fn smallest(&self) -> i32 {
        *self
            .entries
            .iter()
            .min_by_key(|&&x| order_key(x))
            .expect("vectors are nonempty")
    }

    pub fn neg(&self) -> usize {
        self.entries.iter().filter(|&&x| x < 0).count()
    }

    /// Negative entries, not counting one occurrence of the `≺`-smallest letter.
    pub fn neg2(&self) -> usize {
        self.neg() - usize::from(self.smallest() < 0)
    }
}

impl fmt::Display for AlphabetVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl Serialize for AlphabetVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(s)
    }
}

/// The full space `{0, ±1, …, ±m}^n`, indexed lexicographically by integer
/// value with `a_1` most significant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VectorSpace {
    n: usize,
    m: u32,
}

impl VectorSpace {
    pub fn new(n: usize, m: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("vector length must be >= 1".into()));
        }
        let size = u64::from(2 * m + 1).checked_pow(n as u32);
        if size.is_none() {
            return Err(Error::InvalidArgument(format!(
                "vector space of size (2*{m}+1)^{n} is too large to enumerate"
            )));
        }
        Ok(VectorSpace { n, m })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn len(&self) -> u64 {
        u64::from(2 * self.m + 1).pow(self.n as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vector_at(&self, mut index: u64) -> AlphabetVector {
        let base = u64::from(2 * self.m + 1);
        let mut entries = vec![0i32; self.n];
        for slot in entries.iter_mut().rev() {
            *slot = (index % base) as i32 - self.m as i32;
            index /= base;
        }
        AlphabetVector::from_entries_unchecked(entries, self.m)
    }

    pub fn iter(&self) -> impl Iterator<Item = AlphabetVector> + '_ {
        (0..self.len()).map(move |i| self.vector_at(i))
    }

    /// Parallel fold over every vector; `reduce` must be associative and
    /// commutative for the result to be independent of the worker count.
    pub fn par_fold<A, I, F, R>(&self, identity: I, fold: F, reduce: R) -> A
    where
        A: Send,
        I: Fn() -> A + Sync + Send,
        F: Fn(A, AlphabetVector) -> A + Sync + Send,
        R: Fn(A, A) -> A + Sync + Send,
    {
        (0..self.len())
            .into_par_iter()
            .fold(&identity, |acc, i| fold(acc, self.vector_at(i)))
            .reduce(&identity, reduce)
    }

    /// Histogram of a statistic with values in `0..=n`, as a polynomial in `q`.
    fn weight_by(&self, stat: impl Fn(&AlphabetVector) -> usize + Sync + Send) -> QPolynomial {
        let n = self.n;
        let hist = self.par_fold(
            || vec![0u64; n + 1],
            |mut h, v| {
                h[stat(&v)] += 1;
                h
            },
            add_histograms,
        );
        crate::histogram_poly(&hist)
    }
}

pub(crate) fn add_histograms(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

pub fn enumerate_vectors(n: usize, m: u32) -> Result<impl Iterator<Item = AlphabetVector>> {
    let space = VectorSpace::new(n, m)?;
    Ok((0..space.len()).map(move |i| space.vector_at(i)))
}

/// `Σ_v q^{neg(v)}` by brute force.
pub fn total_weight_neg(n: usize, m: u32) -> Result<QPolynomial> {
    Ok(VectorSpace::new(n, m)?.weight_by(AlphabetVector::neg))
}

/// `Σ_v q^{neg2(v)}` by brute force.
pub fn total_weight_neg2(n: usize, m: u32) -> Result<QPolynomial> {
    Ok(VectorSpace::new(n, m)?.weight_by(AlphabetVector::neg2))
}
