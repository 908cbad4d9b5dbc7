//! The partial map from vectors to `D_n`, its fibers, the vectors it leaves
//! unassociated ("missing" vectors), and the type-D Worpitzky identities.
//!
//! [`psi`] starts from `σ = phi(v)`. Vectors without a zero are associated
//! with `σ` exactly when their number of negative letters is even. If `v`
//! contains a zero and the parity is odd, the sign of `σ_1` (which sits on
//! the first zero) is inverted to get `σ' ∈ D_n`. Either way, a zero in `v`
//! together with a type-D descent at 0 leaves the vector missing.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::alphabet::{AlphabetVector, VectorSpace};
use crate::bernoulli;
use crate::error::{Error, Result};
use crate::eulerian::{self, CoxeterType};
use crate::exactnum::int_pow;
use crate::exactnum::json::bigint;
use crate::map_b::{build_fiber_report, chain_count, decode_chains, phi};
use crate::report::{binomial_terms, FiberReport, Identity, IdentityReport, NamedValue};
use crate::signed_perm::SignedPermutation;
use crate::{binom, histogram_poly, Integer, QPolynomial};

/// Leaf of the decision procedure at which a vector is left unassociated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MissingCase {
    /// No zero, odd number of negatives.
    Case1,
    /// Zero present, odd parity, flipped `σ'` has a descent at 0, `|σ_1| > |σ_2|`.
    Case2a,
    /// As `Case2a` but `|σ_1| < |σ_2|` and `σ'_2 < 0`.
    Case2b,
    /// Zero present, even parity, `σ` has a descent at 0.
    Case3,
}

impl MissingCase {
    pub const ALL: [MissingCase; 4] = [
        MissingCase::Case1,
        MissingCase::Case2a,
        MissingCase::Case2b,
        MissingCase::Case3,
    ];

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for MissingCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MissingCase::Case1 => "case1",
            MissingCase::Case2a => "case2a",
            MissingCase::Case2b => "case2b",
            MissingCase::Case3 => "case3",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MapOutcome {
    Associated {
        sigma: SignedPermutation,
        flipped: bool,
    },
    Missing(MissingCase),
}

impl fmt::Display for MapOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapOutcome::Associated {
                sigma,
                flipped: true,
            } => write!(f, "{sigma} (flipped)"),
            MapOutcome::Associated { sigma, .. } => write!(f, "{sigma}"),
            MapOutcome::Missing(case) => write!(f, "missing: {case}"),
        }
    }
}

pub fn psi(v: &AlphabetVector) -> Result<MapOutcome> {
    if v.n() < 2 {
        return Err(Error::InvalidArgument("type-D map needs n >= 2".into()));
    }
    let sigma = phi(v);
    let even = v.neg().is_multiple_of(2);
    let outcome = match (v.contains_zero(), even) {
        (false, true) => MapOutcome::Associated {
            sigma,
            flipped: false,
        },
        (false, false) => MapOutcome::Missing(MissingCase::Case1),
        (true, true) => {
            if sigma.has_d_descent_at_zero() {
                MapOutcome::Missing(MissingCase::Case3)
            } else {
                MapOutcome::Associated {
                    sigma,
                    flipped: false,
                }
            }
        }
        (true, false) => {
            let flipped = sigma.with_first_sign_flipped();
            if flipped.has_d_descent_at_zero() {
                if sigma.at(1).abs() > sigma.at(2).abs() {
                    MapOutcome::Missing(MissingCase::Case2a)
                } else {
                    debug_assert!(flipped.at(2) < 0);
                    MapOutcome::Missing(MissingCase::Case2b)
                }
            } else {
                MapOutcome::Associated {
                    sigma: flipped,
                    flipped: true,
                }
            }
        }
    };
    Ok(outcome)
}

fn require_dn(sigma: &SignedPermutation) -> Result<()> {
    if sigma.n() < 2 || !sigma.is_in_dn() {
        return Err(Error::InvalidArgument(format!("{sigma} is not in D_n")));
    }
    Ok(())
}

/// `C(n + m - des_D(σ), n)`
pub fn fiber_size_d(sigma: &SignedPermutation, m: u32) -> Result<Integer> {
    require_dn(sigma)?;
    Ok(chain_count(sigma.n(), m, &sigma.des_d()?))
}

/// The fiber `psi^{-1}(σ)`, decoded from b-chains with the type-D descent set.
///
/// Position 1 takes the sign of `σ_1` even when its absolute value is 0, so
/// a leading zero can stand for a negative letter. Every decoded vector is
/// pushed back through [`psi`]; a mismatch is an [`Error::Invariant`].
pub fn fiber_enumerate_d(sigma: &SignedPermutation, m: u32) -> Result<Vec<AlphabetVector>> {
    require_dn(sigma)?;
    let vectors = decode_chains(sigma, m, &sigma.des_d()?, |i, abs| {
        if sigma.at(i) < 0 {
            -abs
        } else {
            abs
        }
    });
    for v in &vectors {
        match psi(v)? {
            MapOutcome::Associated {
                sigma: ref image, ..
            } if image == sigma => {}
            other => {
                return Err(Error::Invariant(format!(
                    "vector {v} decoded for {sigma} maps to {other}"
                )))
            }
        }
    }
    Ok(vectors)
}

/// Fibers of [`psi`] found by running it over every vector.
pub fn oracle_fibers_d(
    n: usize,
    m: u32,
) -> Result<HashMap<SignedPermutation, Vec<AlphabetVector>>> {
    let mut fibers: HashMap<_, Vec<_>> = HashMap::new();
    for v in VectorSpace::new(n, m)?.iter() {
        if let MapOutcome::Associated { sigma, .. } = psi(&v)? {
            fibers.entry(sigma).or_default().push(v);
        }
    }
    Ok(fibers)
}

pub fn fiber_reports_d(n: usize, m: u32) -> Result<Vec<FiberReport>> {
    let oracle = oracle_fibers_d(n, m)?;
    crate::signed_perm::enumerate_dn(n)?
        .map(|sigma| {
            let vectors = fiber_enumerate_d(&sigma, m)?;
            Ok(build_fiber_report(
                CoxeterType::D,
                &sigma,
                m,
                fiber_size_d(&sigma, m)?,
                vectors,
                oracle.get(&sigma),
            ))
        })
        .collect()
}

pub fn fiber_report_d(sigma: &SignedPermutation, m: u32) -> Result<FiberReport> {
    require_dn(sigma)?;
    let mut oracle = Vec::new();
    for v in VectorSpace::new(sigma.n(), m)?.iter() {
        if matches!(psi(&v)?, MapOutcome::Associated { sigma: ref s, .. } if s == sigma) {
            oracle.push(v);
        }
    }
    Ok(build_fiber_report(
        CoxeterType::D,
        sigma,
        m,
        fiber_size_d(sigma, m)?,
        fiber_enumerate_d(sigma, m)?,
        Some(&oracle),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseTally {
    #[serde(with = "bigint")]
    pub count: Integer,
    /// `Σ q^{neg2(v)}` over the vectors in this case.
    pub weight: QPolynomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseTallies {
    pub case1: CaseTally,
    pub case2a: CaseTally,
    pub case2b: CaseTally,
    pub case3: CaseTally,
}

impl CaseTallies {
    pub fn get(&self, case: MissingCase) -> &CaseTally {
        match case {
            MissingCase::Case1 => &self.case1,
            MissingCase::Case2a => &self.case2a,
            MissingCase::Case2b => &self.case2b,
            MissingCase::Case3 => &self.case3,
        }
    }

    pub fn total_count(&self) -> Integer {
        MissingCase::ALL
            .iter()
            .map(|&c| self.get(c).count.clone())
            .sum()
    }

    pub fn total_weight(&self) -> QPolynomial {
        MissingCase::ALL.iter().map(|&c| &self.get(c).weight).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedForms {
    #[serde(rename = "A", with = "bigint")]
    pub a: Integer,
    #[serde(rename = "B", with = "bigint")]
    pub b: Integer,
    #[serde(with = "bigint")]
    pub case1: Integer,
    #[serde(with = "bigint")]
    pub total: Integer,
    pub total_weight: QPolynomial,
}

/// The three printed per-case q-expressions for the missing weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrintedCaseWeights {
    pub case1: QPolynomial,
    pub case2a: QPolynomial,
    #[serde(rename = "case2b_plus_case3")]
    pub case2b_and_3: QPolynomial,
}

impl PrintedCaseWeights {
    pub fn sum(&self) -> QPolynomial {
        &(&self.case1 + &self.case2a) + &self.case2b_and_3
    }
}

/// Classification of every vector that [`psi`] leaves unassociated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MissingCensus {
    pub n: usize,
    pub m: u32,
    pub cases: CaseTallies,
    pub closed_forms: ClosedForms,
    pub printed_case_weights: PrintedCaseWeights,
    /// Missing vectors with two or more zeros; always zero when consistent.
    pub multi_zero_missing: u64,
    /// Per-case counts, total count and total weight all match the closed forms.
    pub pass: bool,
    /// The printed per-case weights sum to the enumerated total weight.
    pub printed_sum_matches: bool,
    /// Cases whose printed weight differs from the enumerated one.
    pub printed_case_mismatches: Vec<String>,
}

/// `2^{n-1} m^n`
pub fn closed_form_case1(n: usize, m: u64) -> Integer {
    int_pow(m as i64, n as u32) << (n - 1)
}

/// `½ Σ_{j<m} ((2j+2)^n - 2(2j+1)^n + (2j)^n)`
pub fn closed_form_a(n: usize, m: u64) -> Integer {
    let e = n as u32;
    let s: Integer = (0..m as i64)
        .map(|j| int_pow(2 * j + 2, e) - int_pow(2 * j + 1, e) * 2 + int_pow(2 * j, e))
        .sum();
    let (half, rem) = s.div_rem(&Integer::from(2));
    debug_assert!(rem.is_zero());
    half
}

/// `Σ_{j<m} (n(2j+2)^{n-1} - (2j+2)^n + (2j+1)^n)`
pub fn closed_form_b(n: usize, m: u64) -> Integer {
    let e = n as u32;
    (0..m as i64)
        .map(|j| int_pow(2 * j + 2, e - 1) * n - int_pow(2 * j + 2, e) + int_pow(2 * j + 1, e))
        .sum()
}

/// `Σ_{j<m} (j+1)^{n-1}`
fn shifted_power_sum(n: usize, m: u64) -> Integer {
    (0..m as i64).map(|j| int_pow(j + 1, n as u32 - 1)).sum()
}

/// `2^{n-1} n Σ_{j<m} (j+1)^{n-1}`
pub fn missing_total(n: usize, m: u64) -> Integer {
    (shifted_power_sum(n, m) * n) << (n - 1)
}

/// `(1+q)^{n-1} n Σ_{j<m} (j+1)^{n-1}`
pub fn missing_weight(n: usize, m: u64) -> QPolynomial {
    QPolynomial::one_plus_q()
        .pow(n as u32 - 1)
        .scale(&(shifted_power_sum(n, m) * n))
}

fn poly_int(c: Integer) -> QPolynomial {
    QPolynomial::constant(c)
}

/// The printed per-case expressions, evaluated verbatim with `1+q` in place of 2.
pub fn printed_case_weights_q(n: usize, m: u64) -> Result<PrintedCaseWeights> {
    if n < 2 {
        return Err(Error::InvalidArgument("type-D census needs n >= 2".into()));
    }
    let t = QPolynomial::one_plus_q();
    let mi = m as i64;
    let case1 = t.pow(n as u32 - 1).scale(&int_pow(mi, n as u32));

    let mut case2a = QPolynomial::zero();
    for j in 1..=mi {
        for i in 1..n {
            for k in 0..i {
                let bracket = int_pow(mi - j + 1, (n - i) as u32) - int_pow(mi - j, (n - i) as u32);
                let scalar =
                    bracket * binom((i - 1) as u64, k as u64) * int_pow(mi - j, (i - 1 - k) as u32);
                case2a += &t.pow((n - k - 2) as u32).scale(&scalar);
            }
        }
    }

    let mut case2b_and_3 = QPolynomial::zero();
    for j in 1..=mi {
        let right = t.scale(&Integer::from(mi - j));
        let left = t.scale(&Integer::from(mi - j + 1));
        for i in 1..n {
            for k in 1..=(n - i) {
                let signs = &t.pow(k as u32) - &QPolynomial::one();
                let term = &(&signs * &right.pow((n - i - k) as u32)) * &left.pow((i - 1) as u32);
                case2b_and_3 += &term.scale(&binom((n - i) as u64, k as u64));
            }
        }
    }

    Ok(PrintedCaseWeights {
        case1,
        case2a,
        case2b_and_3,
    })
}

pub fn missing_census(n: usize, m: u32) -> Result<MissingCensus> {
    if n < 2 {
        return Err(Error::InvalidArgument("type-D census needs n >= 2".into()));
    }
    let space = VectorSpace::new(n, m)?;
    let width = n + 1;
    // [case * width + neg2] histogram, followed by one multi-zero counter
    let hist = space.par_fold(
        || vec![0u64; 4 * width + 1],
        |mut h, v| {
            if let Ok(MapOutcome::Missing(case)) = psi(&v) {
                h[case.index() * width + v.neg2()] += 1;
                if v.zero_count() > 1 {
                    h[4 * width] += 1;
                }
            }
            h
        },
        crate::alphabet::add_histograms,
    );
    let tally = |case: MissingCase| {
        let slice = &hist[case.index() * width..(case.index() + 1) * width];
        CaseTally {
            count: slice.iter().map(|&c| Integer::from(c)).sum(),
            weight: histogram_poly(slice),
        }
    };
    let cases = CaseTallies {
        case1: tally(MissingCase::Case1),
        case2a: tally(MissingCase::Case2a),
        case2b: tally(MissingCase::Case2b),
        case3: tally(MissingCase::Case3),
    };
    let mm = u64::from(m);
    let closed_forms = ClosedForms {
        a: closed_form_a(n, mm),
        b: closed_form_b(n, mm),
        case1: closed_form_case1(n, mm),
        total: missing_total(n, mm),
        total_weight: missing_weight(n, mm),
    };
    let multi_zero_missing = hist[4 * width];
    let pass = cases.case1.count == closed_forms.case1
        && cases.case2a.count == closed_forms.a
        && &cases.case2b.count + &cases.case3.count == closed_forms.b
        && cases.total_count() == closed_forms.total
        && cases.total_weight() == closed_forms.total_weight
        && multi_zero_missing == 0;

    let printed = printed_case_weights_q(n, mm)?;
    let printed_sum_matches = printed.sum() == cases.total_weight();
    let mut printed_case_mismatches = Vec::new();
    if printed.case1 != cases.case1.weight {
        printed_case_mismatches.push("case1".to_string());
    }
    if printed.case2a != cases.case2a.weight {
        printed_case_mismatches.push("case2a".to_string());
    }
    if printed.case2b_and_3 != &cases.case2b.weight + &cases.case3.weight {
        printed_case_mismatches.push("case2b+case3".to_string());
    }

    Ok(MissingCensus {
        n,
        m,
        cases,
        closed_forms,
        printed_case_weights: printed,
        multi_zero_missing,
        pass,
        printed_sum_matches,
        printed_case_mismatches,
    })
}

/// `(1+2m)^n - 2^{n-1}(B_n(m+1) - B_n) = Σ_k C(n+m-k, n) D_{n,k}`.
pub fn verify_worpitzky_d_q1(n: usize, m: u64) -> Result<IdentityReport> {
    let row = eulerian::eulerian_row_d_q(n)?;
    let routes = bernoulli::type_d_lhs_routes(n, m)?;
    let at_one: Vec<QPolynomial> = row.at_one().into_iter().map(poly_int).collect();
    let row_at_one = eulerian::EulerianRow {
        kind: CoxeterType::D,
        n,
        entries: at_one,
    };
    let terms = binomial_terms(&row_at_one, m);
    let rhs: QPolynomial = terms.iter().map(|t| &t.product).sum();
    let lhs = poly_int(routes.power_sum_route.clone());
    let mut components = Vec::new();
    if routes.bernoulli_route.is_integer() {
        components.push(NamedValue::new(
            "bernoulli_route",
            poly_int(routes.bernoulli_route.to_integer()),
        ));
    }
    Ok(IdentityReport {
        identity: Identity::WorpitzkyD,
        n,
        m,
        pass: routes.agree() && lhs == rhs,
        lhs,
        rhs,
        components,
        terms,
    })
}

/// `Σ_v q^{neg2(v)} = Σ_k C(n+m-k, n) D_{n,k}(q) + (1+q)^{n-1} n Σ_{j<m} (j+1)^{n-1}`.
pub fn verify_balance_d_q(n: usize, m: u32) -> Result<IdentityReport> {
    let row = eulerian::eulerian_row_d_q(n)?;
    let terms = binomial_terms(&row, m.into());
    let associated: QPolynomial = terms.iter().map(|t| &t.product).sum();
    let missing = missing_weight(n, m.into());
    let lhs = crate::alphabet::total_weight_neg2(n, m)?;
    let rhs = &associated + &missing;
    Ok(IdentityReport {
        identity: Identity::BalanceD,
        n,
        m: m.into(),
        pass: lhs == rhs,
        lhs,
        rhs,
        components: vec![
            NamedValue::new("associated", associated),
            NamedValue::new("missing", missing),
        ],
        terms,
    })
}

/// `(1+2m)((1+q)m)^{n-1} - (1+q)^{n-1} n Σ_{j=1}^m j^{n-1}`, evaluated as printed.
pub fn printed_closed_form_d(n: usize, m: u64) -> Result<QPolynomial> {
    if n < 2 {
        return Err(Error::InvalidArgument(
            "type-D identity needs n >= 2".into(),
        ));
    }
    let t = QPolynomial::one_plus_q();
    let first = t
        .scale(&Integer::from(m))
        .pow(n as u32 - 1)
        .scale(&Integer::from(1 + 2 * m));
    let second = t.pow(n as u32 - 1).scale(&bernoulli::power_sum(n, m));
    Ok(&first - &second)
}

/// Compares the printed closed form with `Σ_k C(n+m-k, n) D_{n,k}(q)`;
/// `pass` is true when the discrepancy is confirmed.
pub fn verify_erratum_d(n: usize, m: u64) -> Result<IdentityReport> {
    let row = eulerian::eulerian_row_d_q(n)?;
    let terms = binomial_terms(&row, m);
    let rhs: QPolynomial = terms.iter().map(|t| &t.product).sum();
    let lhs = printed_closed_form_d(n, m)?;
    let one = Integer::one();
    let components = vec![
        NamedValue::new("printed_lhs_at_q1", poly_int(lhs.evaluate(&one))),
        NamedValue::new("rhs_at_q1", poly_int(rhs.evaluate(&one))),
        NamedValue::new("q1_identity_lhs", poly_int(bernoulli::type_d_lhs(n, m)?)),
    ];
    Ok(IdentityReport {
        identity: Identity::ErratumD,
        n,
        m,
        pass: lhs != rhs,
        lhs,
        rhs,
        components,
        terms,
    })
}
