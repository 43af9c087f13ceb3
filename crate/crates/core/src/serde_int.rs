//! Serde adapters for arbitrary-precision integers.
//!
//! Integers whose magnitude is below 2^53 are written as JSON numbers so that
//! any JSON reader can represent them exactly; larger values are written as
//! decimal strings. Both forms are accepted on input.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::Deserialize;

const SAFE_LIMIT: u64 = 1 << 53;

#[derive(Deserialize)]
#[serde(untagged)]
enum Repr {
    Signed(i64),
    Unsigned(u64),
    Text(String),
}

impl Repr {
    fn into_bigint<E: de::Error>(self) -> Result<BigInt, E> {
        match self {
            Repr::Signed(v) => Ok(BigInt::from(v)),
            Repr::Unsigned(v) => Ok(BigInt::from(v)),
            Repr::Text(s) => s
                .trim()
                .parse::<BigInt>()
                .map_err(|_| E::custom(format!("invalid integer string {s:?}"))),
        }
    }
}

fn is_safe(value: &BigInt) -> bool {
    value.abs().to_u64().is_some_and(|m| m < SAFE_LIMIT)
}

fn write_one<S: Serializer>(value: &BigInt, serializer: S) -> Result<S::Ok, S::Error> {
    if is_safe(value) {
        serializer.serialize_i64(value.to_i64().expect("checked magnitude"))
    } else {
        serializer.serialize_str(&value.to_string())
    }
}

struct Item<'a>(&'a BigInt);

impl serde::Serialize for Item<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        write_one(self.0, serializer)
    }
}

pub fn serialize<S: Serializer>(value: &BigInt, serializer: S) -> Result<S::Ok, S::Error> {
    write_one(value, serializer)
}

pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<BigInt, D::Error> {
    Repr::deserialize(deserializer)?.into_bigint()
}

/// Same encoding applied element-wise to a list.
pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(values: &[BigInt], serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(values.len()))?;
        for v in values {
            seq.serialize_element(&Item(v))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Repr>::deserialize(deserializer)?
            .into_iter()
            .map(Repr::into_bigint)
            .collect()
    }
}

/// Always a decimal string, used for values that are big by nature.
pub mod string {
    use super::*;

    pub fn serialize<S: Serializer>(value: &BigInt, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<BigInt, D::Error> {
        Repr::deserialize(deserializer)?.into_bigint()
    }
}

#[cfg(test)]
mod tests {
    use serde::{Deserialize, Serialize};

    use super::*;

    #[derive(Serialize, Deserialize, PartialEq, Debug)]
    struct Wrap {
        #[serde(with = "super")]
        x: BigInt,
        #[serde(with = "super::vec")]
        xs: Vec<BigInt>,
    }

    #[test]
    fn small_values_are_numbers_large_are_strings() {
        let w = Wrap {
            x: BigInt::from(-42),
            xs: vec![BigInt::from(1u64 << 53), BigInt::from((1u64 << 53) - 1)],
        };
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, r#"{"x":-42,"xs":["9007199254740992",9007199254740991]}"#);
        let back: Wrap = serde_json::from_str(&s).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn rejects_garbage_strings() {
        assert!(serde_json::from_str::<Wrap>(r#"{"x":"12a","xs":[]}"#).is_err());
    }
}
