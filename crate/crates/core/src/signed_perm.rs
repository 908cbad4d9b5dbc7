//! Signed permutations in window notation, their descent sets of types A, B
//! and D, and the `neg` / `neg2` statistics.
//!
//! A signed permutation `σ` of `{±1, …, ±n}` with `σ(-i) = -σ(i)` is stored
//! only through its window `[σ(1), …, σ(n)]`. Positions are 1-based in every
//! public API, matching the usual one-line notation; the extra type-B/D
//! descent lives at position 0.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{parse_ints, Error, ParseErrorKind, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct SignedPermutation {
    window: Vec<i32>,
}

impl SignedPermutation {
    /// Validates that the absolute values form a permutation of `1..=n`.
    pub fn new(window: Vec<i64>) -> Result<Self> {
        let n = window.len();
        if n == 0 {
            return Err(Error::Parse {
                position: 1,
                kind: ParseErrorKind::Empty,
            });
        }
        let mut seen = vec![false; n + 1];
        for (i, &x) in window.iter().enumerate() {
            let position = i + 1;
            if x == 0 {
                return Err(Error::Parse {
                    position,
                    kind: ParseErrorKind::Zero,
                });
            }
            let a = x.unsigned_abs() as usize;
            if a > n {
                return Err(Error::Parse {
                    position,
                    kind: ParseErrorKind::OutOfRange { value: x.abs(), n },
                });
            }
            if seen[a] {
                return Err(Error::Parse {
                    position,
                    kind: ParseErrorKind::Duplicate(x.abs()),
                });
            }
            seen[a] = true;
        }
        Ok(SignedPermutation {
            window: window.into_iter().map(|x| x as i32).collect(),
        })
    }

    /// Trusted constructor for internally generated windows.
    pub(crate) fn from_window_unchecked(window: Vec<i32>) -> Self {
        debug_assert!(Self::new(window.iter().map(|&x| x as i64).collect()).is_ok());
        SignedPermutation { window }
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation {
            window: (1..=n as i32).collect(),
        }
    }

    /// Combines an underlying permutation (values `1..=n`) with a sign mask
    /// whose bit `i` makes position `i + 1` negative.
    pub fn from_parts(perm: &[u8], sign_mask: u32) -> Self {
        let window = perm
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                if sign_mask >> i & 1 == 1 {
                    -(p as i32)
                } else {
                    p as i32
                }
            })
            .collect();
        SignedPermutation { window }
    }

    pub fn n(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i32] {
        &self.window
    }

    /// `σ(position)` for `position` in `1..=n`.
    pub fn at(&self, position: usize) -> i32 {
        self.window[position - 1]
    }

    pub fn des_a(&self) -> DescentSet {
        DescentSet::from_sorted(
            self.window
                .windows(2)
                .enumerate()
                .filter(|(_, w)| w[0] > w[1])
                .map(|(i, _)| i + 1)
                .collect(),
        )
    }

    pub fn des_b(&self) -> DescentSet {
        let mut d = self.des_a();
        if self.window[0] < 0 {
            d.positions.insert(0, 0);
        }
        d
    }

    pub fn des_d(&self) -> Result<DescentSet> {
        if self.n() < 2 {
            return Err(Error::InvalidArgument(
                "type-D descents need at least two entries".into(),
            ));
        }
        let mut d = self.des_a();
        if self.has_d_descent_at_zero() {
            d.positions.insert(0, 0);
        }
        Ok(d)
    }

    /// `σ(1) + σ(2) < 0`; false when `n < 2`.
    pub fn has_d_descent_at_zero(&self) -> bool {
        self.n() >= 2 && self.window[0] + self.window[1] < 0
    }

    pub fn neg(&self) -> usize {
        self.window.iter().filter(|&&x| x < 0).count()
    }

    /// Negative entries among positions `2..=n`.
    pub fn neg2(&self) -> usize {
        self.window.iter().skip(1).filter(|&&x| x < 0).count()
    }

    pub fn is_in_dn(&self) -> bool {
        self.neg().is_multiple_of(2)
    }

    pub fn with_first_sign_flipped(&self) -> Self {
        let mut window = self.window.clone();
        window[0] = -window[0];
        SignedPermutation { window }
    }
}

impl TryFrom<Vec<i64>> for SignedPermutation {
    type Error = Error;
    fn try_from(window: Vec<i64>) -> Result<Self> {
        Self::new(window)
    }
}

impl From<SignedPermutation> for Vec<i64> {
    fn from(p: SignedPermutation) -> Vec<i64> {
        p.window.into_iter().map(i64::from).collect()
    }
}

impl FromStr for SignedPermutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::new(parse_ints(s)?)
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.window.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// Sorted set of descent positions in `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct DescentSet {
    positions: Vec<usize>,
}

impl DescentSet {
    fn from_sorted(positions: Vec<usize>) -> Self {
        DescentSet { positions }
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn contains(&self, position: usize) -> bool {
        self.positions.binary_search(&position).is_ok()
    }

    /// `#{j in self : j < position}`
    pub fn count_below(&self, position: usize) -> usize {
        self.positions.partition_point(|&j| j < position)
    }
}

/// Lexicographic iterator over `S_n`, values `1..=n`.
#[derive(Clone, Debug)]
pub struct Permutations {
    current: Option<Vec<u8>>,
}

impl Permutations {
    pub fn new(n: usize) -> Self {
        assert!(n <= u8::MAX as usize);
        Permutations {
            current: Some((1..=n as u8).collect()),
        }
    }
}

impl Iterator for Permutations {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        let out = self.current.take()?;
        let mut next = out.clone();
        if next_permutation(&mut next) {
            self.current = Some(next);
        }
        Some(out)
    }
}

fn next_permutation(a: &mut [u8]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let Some(i) = (0..a.len() - 1).rev().find(|&i| a[i] < a[i + 1]) else {
        return false;
    };
    let j = (i + 1..a.len()).rev().find(|&j| a[i] < a[j]).unwrap();
    a.swap(i, j);
    a[i + 1..].reverse();
    true
}

/// All of `B_n`, lexicographic in (underlying permutation, sign mask).
pub fn enumerate_bn(n: usize) -> impl Iterator<Item = SignedPermutation> {
    assert!((1..32).contains(&n), "B_n enumeration needs 1 <= n < 32");
    Permutations::new(n).flat_map(move |perm| {
        (0..1u32 << n).map(move |mask| SignedPermutation::from_parts(&perm, mask))
    })
}

/// All of `D_n` in the order inherited from [`enumerate_bn`].
pub fn enumerate_dn(n: usize) -> Result<impl Iterator<Item = SignedPermutation>> {
    if n < 2 {
        return Err(Error::InvalidArgument("D_n requires n >= 2".into()));
    }
    Ok(Permutations::new(n).flat_map(move |perm| {
        (0..1u32 << n)
            .filter(|mask| mask.count_ones() % 2 == 0)
            .map(move |mask| SignedPermutation::from_parts(&perm, mask))
    }))
}
