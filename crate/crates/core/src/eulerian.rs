//! Eulerian numbers `A_{n,k}`, `B_{n,k}(q)` and `D_{n,k}(q)`, computed by
//! enumerating the whole group. No recurrence is used.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alphabet::add_histograms;
use crate::error::{Error, Result};
use crate::signed_perm::{Permutations, SignedPermutation};
use crate::{histogram_poly, Integer, QPolynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoxeterType {
    A,
    B,
    D,
}

impl FromStr for CoxeterType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(CoxeterType::A),
            "B" | "b" => Ok(CoxeterType::B),
            "D" | "d" => Ok(CoxeterType::D),
            other => Err(Error::InvalidArgument(format!("unknown type {other:?}"))),
        }
    }
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoxeterType::A => "A",
            CoxeterType::B => "B",
            CoxeterType::D => "D",
        })
    }
}

/// One row of Eulerian q-polynomials; `entries[k]` collects elements with `k` descents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerianRow {
    #[serde(rename = "type")]
    pub kind: CoxeterType,
    pub n: usize,
    pub entries: Vec<QPolynomial>,
}

impl EulerianRow {
    /// Entry `k`, zero outside the row.
    pub fn entry(&self, k: usize) -> QPolynomial {
        self.entries
            .get(k)
            .cloned()
            .unwrap_or_else(QPolynomial::zero)
    }

    pub fn at_one(&self) -> Vec<Integer> {
        self.entries.iter().map(QPolynomial::coeff_sum).collect()
    }

    pub fn total(&self) -> Integer {
        self.at_one().into_iter().sum()
    }

    /// `Σ_k C(n + m - k, n) · entry_k(q)`, the right side of every
    /// Worpitzky identity in this crate.
    pub fn binomial_transform(&self, m: u64) -> QPolynomial {
        let n = self.n as u64;
        self.entries
            .iter()
            .enumerate()
            .map(|(k, e)| e.scale(&crate::binom(n + m - k as u64, n)))
            .sum()
    }
}

pub fn group_order(kind: CoxeterType, n: usize) -> Integer {
    let fact: Integer = (1..=n).map(Integer::from).product();
    match kind {
        CoxeterType::A => fact,
        CoxeterType::B => fact << n,
        CoxeterType::D => fact << (n - 1),
    }
}

type Memo = Mutex<HashMap<(CoxeterType, usize), Arc<EulerianRow>>>;

fn memo() -> &'static Memo {
    static ROWS: OnceLock<Memo> = OnceLock::new();
    ROWS.get_or_init(Default::default)
}

pub fn eulerian_row(kind: CoxeterType, n: usize) -> Result<Arc<EulerianRow>> {
    match kind {
        CoxeterType::A | CoxeterType::B if n < 1 => {
            return Err(Error::InvalidArgument(format!("type {kind} needs n >= 1")))
        }
        CoxeterType::D if n < 2 => {
            return Err(Error::InvalidArgument("type D needs n >= 2".into()))
        }
        _ if n > 12 => {
            return Err(Error::InvalidArgument(format!(
                "n = {n} is beyond exhaustive enumeration"
            )))
        }
        _ => {}
    }
    if let Some(row) = memo().lock().unwrap().get(&(kind, n)) {
        return Ok(Arc::clone(row));
    }
    let row = Arc::new(compute_row(kind, n));
    memo().lock().unwrap().insert((kind, n), Arc::clone(&row));
    Ok(row)
}

pub fn eulerian_row_a(n: usize) -> Result<Arc<EulerianRow>> {
    eulerian_row(CoxeterType::A, n)
}

pub fn eulerian_row_b_q(n: usize) -> Result<Arc<EulerianRow>> {
    eulerian_row(CoxeterType::B, n)
}

pub fn eulerian_row_d_q(n: usize) -> Result<Arc<EulerianRow>> {
    eulerian_row(CoxeterType::D, n)
}

/// Enumerates the group without touching the memo table.
pub fn compute_row(kind: CoxeterType, n: usize) -> EulerianRow {
    // hist[k * (n + 1) + w] counts elements with k descents and weight w
    let width = n + 1;
    let perms: Vec<Vec<u8>> = Permutations::new(n).collect();
    let hist = perms
        .par_iter()
        .fold(
            || vec![0u64; width * width],
            |mut h, perm| {
                match kind {
                    CoxeterType::A => {
                        let s = SignedPermutation::from_parts(perm, 0);
                        h[s.des_a().len() * width] += 1;
                    }
                    CoxeterType::B => {
                        for mask in 0..1u32 << n {
                            let s = SignedPermutation::from_parts(perm, mask);
                            h[s.des_b().len() * width + s.neg()] += 1;
                        }
                    }
                    CoxeterType::D => {
                        for mask in (0..1u32 << n).filter(|m| m.count_ones() % 2 == 0) {
                            let s = SignedPermutation::from_parts(perm, mask);
                            let des = s.des_d().expect("n >= 2").len();
                            h[des * width + s.neg2()] += 1;
                        }
                    }
                }
                h
            },
        )
        .reduce(|| vec![0u64; width * width], add_histograms);

    let len = if kind == CoxeterType::A { n } else { n + 1 };
    let entries = hist.chunks(width).take(len).map(histogram_poly).collect();
    EulerianRow { kind, n, entries }
}

/// `(1 + (1+q)m)^n`
pub fn type_b_lhs(n: usize, m: u64) -> QPolynomial {
    (QPolynomial::one_plus_q().scale(&Integer::from(m)) + QPolynomial::one()).pow(n as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&x| Integer::from(x)).collect()
    }

    fn poly(c: &[i64]) -> QPolynomial {
        QPolynomial::from_coeffs(ints(c))
    }

    #[test]
    fn type_a_rows() {
        assert_eq!(eulerian_row_a(1).unwrap().at_one(), ints(&[1]));
        assert_eq!(eulerian_row_a(2).unwrap().at_one(), ints(&[1, 1]));
        assert_eq!(eulerian_row_a(3).unwrap().at_one(), ints(&[1, 4, 1]));
        assert_eq!(eulerian_row_a(4).unwrap().at_one(), ints(&[1, 11, 11, 1]));
    }

    #[test]
    fn type_b_rows() {
        assert_eq!(
            eulerian_row_b_q(1).unwrap().entries,
            vec![poly(&[1]), poly(&[0, 1])]
        );
        assert_eq!(
            eulerian_row_b_q(2).unwrap().entries,
            vec![poly(&[1]), poly(&[1, 4, 1]), poly(&[0, 0, 1])]
        );
        assert_eq!(eulerian_row_b_q(2).unwrap().at_one(), ints(&[1, 6, 1]));
    }

    #[test]
    fn type_d_rows() {
        assert_eq!(
            eulerian_row_d_q(2).unwrap().entries,
            vec![poly(&[1]), poly(&[1, 1]), poly(&[0, 1])]
        );
        assert_eq!(eulerian_row_d_q(3).unwrap().at_one(), ints(&[1, 11, 11, 1]));
        assert!(eulerian_row_d_q(1).is_err());
        assert!(eulerian_row_a(0).is_err());
    }

    #[test]
    fn row_sums_and_nonnegativity() {
        for n in 1..=6 {
            for kind in [CoxeterType::A, CoxeterType::B, CoxeterType::D] {
                if kind == CoxeterType::D && n < 2 {
                    continue;
                }
                let row = eulerian_row(kind, n).unwrap();
                assert_eq!(row.total(), group_order(kind, n), "{kind} {n}");
                assert!(row
                    .entries
                    .iter()
                    .flat_map(|e| e.coeffs())
                    .all(|c| *c >= Integer::zero()));
                let expected_len = if kind == CoxeterType::A { n } else { n + 1 };
                assert_eq!(row.entries.len(), expected_len);
            }
        }
    }

    #[test]
    fn independent_of_worker_count() {
        for threads in [1, 3, 8] {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            let row = pool.install(|| compute_row(CoxeterType::D, 5));
            assert_eq!(row, compute_row(CoxeterType::D, 5));
        }
    }

    #[test]
    fn memoized_rows_are_shared() {
        let a = eulerian_row_b_q(4).unwrap();
        let b = eulerian_row_b_q(4).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
    }

    #[test]
    fn json_shape() {
        let row = eulerian_row_d_q(2).unwrap();
        assert_eq!(
            serde_json::to_string(&*row).unwrap(),
            r#"{"type":"D","n":2,"entries":[[1],[1,1],[0,1]]}"#
        );
    }
}
