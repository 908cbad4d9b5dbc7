//! JSON encoding for big integers and integer polynomials.
//!
//! Integers that fit in an `i64` are written as JSON numbers, larger ones as
//! decimal strings. Both forms are accepted on input.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Poly;

/// `#[serde(with = "...::bigint")]` adapter.
pub mod bigint {
    use super::*;

    pub fn serialize<S: Serializer>(value: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        match value.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&value.to_string()),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        d.deserialize_any(BigIntVisitor)
    }
}

struct BigIntVisitor;

impl<'de> Visitor<'de> for BigIntVisitor {
    type Value = BigInt;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<BigInt, E> {
        Ok(BigInt::from(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<BigInt, E> {
        Ok(BigInt::from(v))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<BigInt, E> {
        v.parse()
            .map_err(|_| E::custom(format!("invalid integer {v:?}")))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(transparent)]
struct Wrapped(#[serde(with = "bigint")] BigInt);

impl Serialize for Poly<BigInt> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs().len()))?;
        for c in self.coeffs() {
            match c.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Poly<BigInt> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct PolyVisitor;

        impl<'de> Visitor<'de> for PolyVisitor {
            type Value = Poly<BigInt>;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an ascending coefficient array")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
                let mut coeffs = Vec::new();
                while let Some(Wrapped(c)) = seq.next_element()? {
                    coeffs.push(c);
                }
                Ok(Poly::from_coeffs(coeffs))
            }
        }

        d.deserialize_seq(PolyVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_and_huge_coefficients() {
        let huge: BigInt = "123456789012345678901234567890".parse().unwrap();
        let p = Poly::from_coeffs(vec![BigInt::from(2), BigInt::from(-3), huge.clone()]);
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, r#"[2,-3,"123456789012345678901234567890"]"#);
        let back: Poly<BigInt> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn trailing_zeros_trimmed_on_input() {
        let p: Poly<BigInt> = serde_json::from_str("[1,0,0]").unwrap();
        assert_eq!(p.degree(), Some(0));
    }
}
