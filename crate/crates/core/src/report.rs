//! Structured verification results shared by the identity checks.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eulerian::{CoxeterType, EulerianRow};
use crate::exactnum::json::bigint;
use crate::{Integer, QPolynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    /// `(k+1)^n = Σ_i A_{n,i} C(k+n-i, n)`
    WorpitzkyA,
    /// `(1+(1+q)m)^n = Σ_k C(n+m-k, n) B_{n,k}(q)`
    WorpitzkyB,
    /// Type D at `q = 1`, with the Bernoulli correction term.
    WorpitzkyD,
    /// Type D q-weights: all vectors = associated + missing.
    BalanceD,
    /// Probe of the closed form `(1+2m)((1+q)m)^{n-1} - (1+q)^{n-1} n Σ j^{n-1}`.
    ErratumD,
}

impl Identity {
    pub const ALL: [Identity; 5] = [
        Identity::WorpitzkyA,
        Identity::WorpitzkyB,
        Identity::WorpitzkyD,
        Identity::BalanceD,
        Identity::ErratumD,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::WorpitzkyA => "worpitzky-a",
            Identity::WorpitzkyB => "worpitzky-b",
            Identity::WorpitzkyD => "worpitzky-d",
            Identity::BalanceD => "balance-d",
            Identity::ErratumD => "erratum-d",
        }
    }

    pub fn min_n(self) -> usize {
        match self {
            Identity::WorpitzkyA | Identity::WorpitzkyB => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown identity {s:?}")))
    }
}

/// One `C(n+m-k, n) · E_k(q)` summand of a right-hand side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub k: usize,
    #[serde(with = "bigint")]
    pub binom: Integer,
    pub entry: QPolynomial,
    pub product: QPolynomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedValue {
    pub name: String,
    pub value: QPolynomial,
}

impl NamedValue {
    pub fn new(name: &str, value: QPolynomial) -> Self {
        NamedValue {
            name: name.to_string(),
            value,
        }
    }
}

/// Both sides of an identity, the quantities that fed them, and the verdict.
///
/// For [`Identity::ErratumD`] `pass` means the printed closed form was
/// confirmed to differ from the enumerated right-hand side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: Identity,
    pub n: usize,
    pub m: u64,
    pub lhs: QPolynomial,
    pub rhs: QPolynomial,
    /// Further routes or components, e.g. a brute-force vector weight.
    pub components: Vec<NamedValue>,
    pub terms: Vec<Term>,
    pub pass: bool,
}

impl IdentityReport {
    pub fn component(&self, name: &str) -> Option<&QPolynomial> {
        self.components
            .iter()
            .find(|c| c.name == name)
            .map(|c| &c.value)
    }
}

pub(crate) fn binomial_terms(row: &EulerianRow, m: u64) -> Vec<Term> {
    let n = row.n as u64;
    row.entries
        .iter()
        .enumerate()
        .map(|(k, entry)| {
            let b = crate::binom(n + m - k as u64, n);
            Term {
                k,
                product: entry.scale(&b),
                binom: b,
                entry: entry.clone(),
            }
        })
        .collect()
}

/// Per-permutation fiber check, also the JSON fiber dump format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberReport {
    #[serde(rename = "type")]
    pub kind: CoxeterType,
    pub sigma: crate::SignedPermutation,
    pub m: u32,
    /// `C(n + m - des(σ), n)`
    #[serde(with = "bigint")]
    pub expected: Integer,
    /// Size of the fiber found by running the forward map over every vector.
    #[serde(with = "bigint")]
    pub actual: Integer,
    /// The b-chain enumeration of the fiber.
    pub vectors: Vec<Vec<i32>>,
    pub pass: bool,
}
