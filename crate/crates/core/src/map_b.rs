//! The map from vectors over `{0, ±1, …, ±m}` to signed permutations, its
//! fibers, and the type-A and type-B Worpitzky identities.
//!
//! [`phi`] lists the positions of a vector in `≺` order (equal nonnegative
//! letters left to right, equal negative letters right to left) and then
//! negates the positions that carry a negative letter. Each fiber of `phi`
//! over `σ ∈ B_n` is in bijection with strictly increasing chains
//! `1 <= b_1 < … < b_n <= m + n - des_B(σ)`; [`fiber_enumerate_b`] walks
//! those chains and decodes each one back into a vector.

use std::collections::HashMap;

use itertools::Itertools;

use crate::alphabet::{order_key, AlphabetVector, VectorSpace};
use crate::error::{Error, Result};
use crate::eulerian::{self, CoxeterType};
use crate::report::{binomial_terms, FiberReport, Identity, IdentityReport, NamedValue};
use crate::signed_perm::{DescentSet, SignedPermutation};
use crate::{binom, Integer, QPolynomial};

pub fn phi(v: &AlphabetVector) -> SignedPermutation {
    let mut positions: Vec<usize> = (1..=v.n()).collect();
    positions.sort_by_key(|&i| {
        let a = v.at(i);
        let tie = if a >= 0 { i as i64 } else { -(i as i64) };
        (order_key(a), tie)
    });
    let window = positions
        .into_iter()
        .map(|i| if v.at(i) < 0 { -(i as i32) } else { i as i32 })
        .collect();
    SignedPermutation::from_window_unchecked(window)
}

pub fn fiber_size_b(sigma: &SignedPermutation, m: u32) -> Integer {
    chain_count(sigma.n(), m, &sigma.des_b())
}

pub(crate) fn chain_count(n: usize, m: u32, descents: &DescentSet) -> Integer {
    binom((n + m as usize - descents.len()) as u64, n as u64)
}

/// Decodes every chain `b_1 < … < b_n` in `[1, m + n - des]` through
/// `|a_{|σ_i|}| = b_i - i + #{j in descents : j < i}`; `letter(i, abs)`
/// attaches the sign for window position `i`.
pub(crate) fn decode_chains(
    sigma: &SignedPermutation,
    m: u32,
    descents: &DescentSet,
    letter: impl Fn(usize, i32) -> i32,
) -> Vec<AlphabetVector> {
    let n = sigma.n();
    let top = n + m as usize;
    if descents.len() > m as usize {
        return Vec::new();
    }
    (1..=top - descents.len())
        .combinations(n)
        .map(|chain| {
            let mut entries = vec![0i32; n];
            for (idx, &b) in chain.iter().enumerate() {
                let i = idx + 1;
                let abs = (b + descents.count_below(i) - i) as i32;
                entries[sigma.at(i).unsigned_abs() as usize - 1] = letter(i, abs);
            }
            AlphabetVector::from_entries_unchecked(entries, m)
        })
        .collect()
}

/// The fiber `phi^{-1}(σ)` at bound `m`, each element checked against [`phi`].
pub fn fiber_enumerate_b(sigma: &SignedPermutation, m: u32) -> Result<Vec<AlphabetVector>> {
    let vectors = decode_chains(sigma, m, &sigma.des_b(), |i, abs| {
        if sigma.at(i) < 0 {
            -abs
        } else {
            abs
        }
    });
    for v in &vectors {
        let image = phi(v);
        if &image != sigma {
            return Err(Error::Invariant(format!(
                "vector {v} decoded for {sigma} maps to {image}"
            )));
        }
    }
    Ok(vectors)
}

/// All fibers of [`phi`] found by running it over the full vector space.
pub fn oracle_fibers_b(
    n: usize,
    m: u32,
) -> Result<HashMap<SignedPermutation, Vec<AlphabetVector>>> {
    let space = VectorSpace::new(n, m)?;
    let mut fibers: HashMap<_, Vec<_>> = HashMap::new();
    for v in space.iter() {
        fibers.entry(phi(&v)).or_default().push(v);
    }
    Ok(fibers)
}

pub(crate) fn build_fiber_report(
    kind: CoxeterType,
    sigma: &SignedPermutation,
    m: u32,
    expected: Integer,
    mut enumerated: Vec<AlphabetVector>,
    oracle: Option<&Vec<AlphabetVector>>,
) -> FiberReport {
    let mut oracle: Vec<AlphabetVector> = oracle.cloned().unwrap_or_default();
    oracle.sort();
    enumerated.sort();
    let pass = enumerated == oracle && Integer::from(oracle.len()) == expected;
    FiberReport {
        kind,
        sigma: sigma.clone(),
        m,
        expected,
        actual: Integer::from(oracle.len()),
        vectors: enumerated.iter().map(|v| v.entries().to_vec()).collect(),
        pass,
    }
}

/// Fiber reports for every `σ ∈ B_n`, in enumeration order.
pub fn fiber_reports_b(n: usize, m: u32) -> Result<Vec<FiberReport>> {
    let oracle = oracle_fibers_b(n, m)?;
    crate::signed_perm::enumerate_bn(n)
        .map(|sigma| {
            let vectors = fiber_enumerate_b(&sigma, m)?;
            Ok(build_fiber_report(
                CoxeterType::B,
                &sigma,
                m,
                fiber_size_b(&sigma, m),
                vectors,
                oracle.get(&sigma),
            ))
        })
        .collect()
}

/// Fiber report for a single permutation; the oracle is a full forward scan.
pub fn fiber_report_b(sigma: &SignedPermutation, m: u32) -> Result<FiberReport> {
    let space = VectorSpace::new(sigma.n(), m)?;
    let oracle: Vec<_> = space.iter().filter(|v| &phi(v) == sigma).collect();
    Ok(build_fiber_report(
        CoxeterType::B,
        sigma,
        m,
        fiber_size_b(sigma, m),
        fiber_enumerate_b(sigma, m)?,
        Some(&oracle),
    ))
}

/// `(k+1)^n = Σ_i A_{n,i} C(k+n-i, n)`.
pub fn verify_worpitzky_a(n: usize, k: u64) -> Result<IdentityReport> {
    let row = eulerian::eulerian_row_a(n)?;
    let lhs = QPolynomial::constant(crate::exactnum::int_pow(k as i64 + 1, n as u32));
    let terms = binomial_terms(&row, k);
    let rhs: QPolynomial = terms.iter().map(|t| &t.product).sum();
    Ok(IdentityReport {
        identity: Identity::WorpitzkyA,
        n,
        m: k,
        pass: lhs == rhs,
        lhs,
        rhs,
        components: Vec::new(),
        terms,
    })
}

/// `(1+(1+q)m)^n = Σ_k C(n+m-k, n) B_{n,k}(q) = Σ_v q^{neg(v)}`.
pub fn verify_worpitzky_b(n: usize, m: u32) -> Result<IdentityReport> {
    let row = eulerian::eulerian_row_b_q(n)?;
    let lhs = eulerian::type_b_lhs(n, m.into());
    let terms = binomial_terms(&row, m.into());
    let rhs: QPolynomial = terms.iter().map(|t| &t.product).sum();
    let brute = crate::alphabet::total_weight_neg(n, m)?;
    Ok(IdentityReport {
        identity: Identity::WorpitzkyB,
        n,
        m: m.into(),
        pass: lhs == rhs && rhs == brute,
        lhs,
        rhs,
        components: vec![NamedValue::new("brute_force", brute)],
        terms,
    })
}

/// Every descent `j` of `σ` has `|a_{|σ_j|}| < |a_{|σ_{j+1}|}|`, reading
/// `|a_{|σ_0|}|` as 0.
pub fn descents_are_strict(
    v: &AlphabetVector,
    sigma: &SignedPermutation,
    descents: &DescentSet,
) -> bool {
    let abs_at = |j: usize| -> i32 {
        if j == 0 {
            0
        } else {
            v.at(sigma.at(j).unsigned_abs() as usize).abs()
        }
    };
    descents
        .positions()
        .iter()
        .all(|&j| abs_at(j) < abs_at(j + 1))
}

type MembershipTest<'a> = Box<dyn Fn(&AlphabetVector) -> bool + 'a>;

impl FiberReport {
    /// Recomputes the checks behind a (possibly deserialized) fiber dump:
    /// every listed vector maps to `sigma`, the list has no duplicates, and
    /// its size matches both the binomial count and a fresh forward scan.
    pub fn reverify(&self) -> Result<bool> {
        let n = self.sigma.n();
        let (expected, forward): (Integer, MembershipTest<'_>) = match self.kind {
            CoxeterType::B => (
                fiber_size_b(&self.sigma, self.m),
                Box::new(|v| phi(v) == self.sigma),
            ),
            CoxeterType::D => (
                crate::map_d::fiber_size_d(&self.sigma, self.m)?,
                Box::new(
                    |v| matches!(crate::map_d::psi(v), Ok(crate::map_d::MapOutcome::Associated { ref sigma, .. }) if *sigma == self.sigma),
                ),
            ),
            CoxeterType::A => {
                return Err(Error::InvalidArgument(
                    "fibers exist for types B and D only".into(),
                ))
            }
        };
        let mut listed = Vec::with_capacity(self.vectors.len());
        for entries in &self.vectors {
            if entries.len() != n {
                return Ok(false);
            }
            listed.push(AlphabetVector::new(
                entries.iter().map(|&x| i64::from(x)).collect(),
                self.m,
            )?);
        }
        listed.sort();
        let distinct = listed.windows(2).all(|w| w[0] != w[1]);
        let all_map = listed.iter().all(&forward);
        let scanned = VectorSpace::new(n, self.m)?
            .iter()
            .filter(|v| forward(v))
            .count();
        let size = Integer::from(listed.len());
        Ok(distinct && all_map && size == expected && Integer::from(scanned) == expected)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};
    use std::collections::HashSet;

    fn vector(s: &str, m: u32) -> AlphabetVector {
        AlphabetVector::parse(s, m).unwrap()
    }

    fn sp(s: &str) -> SignedPermutation {
        s.parse().unwrap()
    }

    #[test]
    fn worked_example() {
        assert_eq!(phi(&vector("1,-2,0,-1,3,-2", 3)), sp("3,-4,1,-6,-2,5"));
    }

    #[test]
    fn zeros_read_left_to_right() {
        assert_eq!(phi(&vector("0,0,0,0", 2)), SignedPermutation::identity(4));
    }

    #[test]
    fn equal_negatives_read_right_to_left() {
        assert_eq!(phi(&vector("-1,-1", 1)), sp("-2,-1"));
        assert_eq!(phi(&vector("2,2", 2)), sp("1,2"));
    }

    #[test]
    fn fiber_sizes() {
        assert_eq!(fiber_size_b(&sp("2,-1,4,-5,3"), 3), Integer::from(6));
        assert_eq!(
            fiber_size_b(&SignedPermutation::identity(3), 0),
            Integer::from(1)
        );
        assert_eq!(fiber_size_b(&sp("-1"), 2), Integer::from(2));
    }

    #[test]
    fn small_fibers() {
        let f: HashSet<_> = fiber_enumerate_b(&sp("-1"), 2)
            .unwrap()
            .into_iter()
            .collect();
        assert_eq!(f, HashSet::from([vector("-1", 2), vector("-2", 2)]));

        let f = fiber_enumerate_b(&SignedPermutation::identity(3), 0).unwrap();
        assert_eq!(f, vec![vector("0,0,0", 0)]);

        let sigma = sp("2,-1,4,-5,3");
        let f = fiber_enumerate_b(&sigma, 3).unwrap();
        assert_eq!(f.len(), 6);
        assert!(f.iter().all(|v| phi(v) == sigma));
    }

    #[test]
    fn chain_decoding_matches_worked_display() {
        // b_1 = |a_2|+1, b_2 = |a_1|+1, b_3 = |a_4|+2, b_4 = |a_5|+2, b_5 = |a_3|+3
        let sigma = sp("2,-1,4,-5,3");
        for v in fiber_enumerate_b(&sigma, 3).unwrap() {
            let a = |i: usize| v.at(i).abs();
            let b = [a(2) + 1, a(1) + 1, a(4) + 2, a(5) + 2, a(3) + 3];
            assert!(b[0] >= 1 && b.windows(2).all(|w| w[0] < w[1]) && b[4] <= 6);
        }
    }

    #[test]
    fn empty_fiber_when_binomial_vanishes() {
        // des_B = 2 > m = 1
        let sigma = sp("2,-1,4,-5,3");
        assert!(fiber_enumerate_b(&sigma, 1).unwrap().is_empty());
        assert!(fiber_size_b(&sigma, 1).is_zero());
    }

    #[test]
    fn fibers_partition_the_vector_space() {
        for n in 1..=4 {
            for m in 0..=3u32 {
                let reports = fiber_reports_b(n, m).unwrap();
                assert!(reports.iter().all(|r| r.pass), "n={n} m={m}");
                let total: Integer = reports.iter().map(|r| r.expected.clone()).sum();
                assert_eq!(total, Integer::from(2 * m + 1).pow(n as u32));
            }
        }
    }

    #[test]
    fn neg_preserved_and_descents_strict() {
        for n in 1..=4 {
            for m in 0..=3 {
                for v in VectorSpace::new(n, m).unwrap().iter() {
                    let sigma = phi(&v);
                    assert_eq!(sigma.neg(), v.neg());
                    assert!(descents_are_strict(&v, &sigma, &sigma.des_b()), "{v}");
                }
            }
        }
    }

    #[test]
    fn identity_reports() {
        let r = verify_worpitzky_b(2, 1).unwrap();
        assert!(r.pass);
        assert_eq!(r.lhs.to_string(), "4 + 4*q + 1*q^2");
        let r = verify_worpitzky_b(1, 1).unwrap();
        assert_eq!(r.rhs.to_string(), "2 + 1*q");
        for n in 1..=4 {
            let r = verify_worpitzky_b(n, 0).unwrap();
            assert!(r.pass);
            assert!(r.lhs.is_one());
        }
        let r = verify_worpitzky_a(3, 2).unwrap();
        assert!(r.pass);
        assert_eq!(r.lhs.to_string(), "27");
    }

    #[test]
    fn dump_round_trip_reverifies() {
        let report = fiber_report_b(&sp("2,-1,4,-5,3"), 3).unwrap();
        assert!(report.pass);
        let json = serde_json::to_string(&report).unwrap();
        let back: FiberReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
        assert!(back.reverify().unwrap());

        let mut tampered = back.clone();
        tampered.vectors.pop();
        assert!(!tampered.reverify().unwrap());
    }
}
