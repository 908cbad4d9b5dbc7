//! Cross-check of enumerated Eulerian rows against OEIS b-files.
//!
//! A b-file has one `index value` pair per line; `#` starts a comment. Both
//! supported triangles are read row by row with row lengths 1, 2, 3, …, and
//! row `r` (counting from 0) holds the type-B or type-D row for `n = r`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::eulerian::{eulerian_row, CoxeterType};
use crate::exactnum::json::bigint;
use crate::Integer;

const B060187: &str = include_str!("../fixtures/b060187.txt");
const B262226: &str = include_str!("../fixtures/b262226.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sequence {
    /// Type-B Eulerian numbers.
    A060187,
    /// Type-D Eulerian numbers.
    A262226,
}

impl Sequence {
    pub fn kind(self) -> CoxeterType {
        match self {
            Sequence::A060187 => CoxeterType::B,
            Sequence::A262226 => CoxeterType::D,
        }
    }

    /// Smallest `n` for which the enumeration is defined.
    pub fn min_n(self) -> usize {
        match self {
            Sequence::A060187 => 1,
            Sequence::A262226 => 2,
        }
    }

    pub fn bundled_bfile(self) -> &'static str {
        match self {
            Sequence::A060187 => B060187,
            Sequence::A262226 => B262226,
        }
    }

    pub fn bfile_url(self) -> String {
        let digits = &self.to_string()[1..];
        format!("https://oeis.org/{self}/b{digits}.txt")
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for Sequence {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A060187" => Ok(Sequence::A060187),
            "A262226" => Ok(Sequence::A262226),
            _ => Err(Error::InvalidArgument(format!(
                "unsupported sequence {s:?}"
            ))),
        }
    }
}

/// Values of a b-file in file order. Indices must be consecutive.
pub fn parse_bfile(text: &str) -> Result<Vec<Integer>> {
    let mut values = Vec::new();
    let mut last: Option<i64> = None;
    for (line_no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad =
            |what: &str| Error::InvalidArgument(format!("b-file line {}: {what}", line_no + 1));
        let mut fields = line.split_whitespace();
        let (Some(index), Some(value), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(bad("expected `index value`"));
        };
        let index: i64 = index.parse().map_err(|_| bad("index is not an integer"))?;
        let value: Integer = value.parse().map_err(|_| bad("value is not an integer"))?;
        if let Some(prev) = last {
            if index != prev + 1 {
                return Err(bad("indices are not consecutive"));
            }
        }
        last = Some(index);
        values.push(value);
    }
    Ok(values)
}

/// Splits a flattened triangle into rows of length 1, 2, 3, …; an incomplete
/// trailing row is dropped.
pub fn triangle_rows(values: &[Integer]) -> Vec<Vec<Integer>> {
    let mut rows = Vec::new();
    let mut rest = values;
    let mut len = 1;
    while rest.len() >= len {
        let (row, tail) = rest.split_at(len);
        rows.push(row.to_vec());
        rest = tail;
        len += 1;
    }
    rows
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowCheck {
    pub n: usize,
    #[serde(serialize_with = "serialize_ints")]
    pub computed: Vec<Integer>,
    /// `None` when the b-file is too short to contain row `n`.
    #[serde(serialize_with = "serialize_opt_ints")]
    pub expected: Option<Vec<Integer>>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OeisComparison {
    pub sequence: Sequence,
    pub max_n: usize,
    pub rows: Vec<RowCheck>,
    pub pass: bool,
}

fn serialize_ints<S: serde::Serializer>(
    v: &[Integer],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&BigWrap(x))?;
    }
    seq.end()
}

fn serialize_opt_ints<S: serde::Serializer>(
    v: &Option<Vec<Integer>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => serialize_ints(v, s),
        None => s.serialize_none(),
    }
}

struct BigWrap<'a>(&'a Integer);

impl Serialize for BigWrap<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        bigint::serialize(self.0, s)
    }
}

/// Compares enumerated rows `min_n..=max_n` with the rows of `bfile`.
pub fn compare(sequence: Sequence, bfile: &str, max_n: usize) -> Result<OeisComparison> {
    if max_n < sequence.min_n() {
        return Err(Error::InvalidArgument(format!(
            "{sequence} needs max-n >= {}",
            sequence.min_n()
        )));
    }
    let rows = triangle_rows(&parse_bfile(bfile)?);
    let checks = (sequence.min_n()..=max_n)
        .map(|n| {
            let computed = eulerian_row(sequence.kind(), n)?.at_one();
            let expected = rows.get(n).cloned();
            Ok(RowCheck {
                n,
                pass: expected.as_ref() == Some(&computed),
                computed,
                expected,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OeisComparison {
        sequence,
        max_n,
        pass: checks.iter().all(|c| c.pass),
        rows: checks,
    })
}

pub fn compare_bundled(sequence: Sequence, max_n: usize) -> Result<OeisComparison> {
    compare(sequence, sequence.bundled_bfile(), max_n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&x| Integer::from(x)).collect()
    }

    #[test]
    fn parses_comments_and_blank_lines() {
        let text = "# header\n\n5 1\n6 -2  # trailing\n7 123456789012345678901234567890\n";
        let v = parse_bfile(text).unwrap();
        assert_eq!(v[1], Integer::from(-2));
        assert_eq!(v[2].to_string(), "123456789012345678901234567890");
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(parse_bfile("1 2 3\n").is_err());
        assert!(parse_bfile("1\n").is_err());
        assert!(parse_bfile("x 2\n").is_err());
        assert!(parse_bfile("1 2\n3 4\n").is_err());
    }

    #[test]
    fn triangle_shape() {
        let rows = triangle_rows(&ints(&[1, 1, 1, 1, 6, 1, 1, 23]));
        assert_eq!(rows, vec![ints(&[1]), ints(&[1, 1]), ints(&[1, 6, 1])]);
    }

    #[test]
    fn bundled_files_match_enumeration() {
        assert!(compare_bundled(Sequence::A060187, 6).unwrap().pass);
        assert!(compare_bundled(Sequence::A262226, 5).unwrap().pass);
    }

    #[test]
    fn short_or_wrong_files_fail() {
        let short = compare(Sequence::A060187, "1 1\n2 1\n3 1\n", 3).unwrap();
        assert!(short.rows[0].pass);
        assert!(short.rows[1].expected.is_none());
        assert!(!short.pass);

        let tampered = Sequence::A060187.bundled_bfile().replace("5 6\n", "5 7\n");
        assert!(!compare(Sequence::A060187, &tampered, 2).unwrap().pass);
        assert!(compare(Sequence::A262226, "", 1).is_err());
    }

    #[test]
    fn urls() {
        assert_eq!(
            Sequence::A262226.bfile_url(),
            "https://oeis.org/A262226/b262226.txt"
        );
        assert_eq!("a060187".parse::<Sequence>().unwrap(), Sequence::A060187);
    }
}
