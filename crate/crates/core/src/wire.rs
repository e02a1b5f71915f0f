//! JSON encodings shared by the scenario files and reports.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Arbitrary-precision integer written as a JSON number when it fits in
/// `i64` and as a decimal string otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigIntJson(pub BigInt);

impl Serialize for BigIntJson {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for BigIntJson {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Signed(i64),
            Unsigned(u64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Signed(v) => Ok(BigIntJson(BigInt::from(v))),
            Repr::Unsigned(v) => Ok(BigIntJson(BigInt::from(v))),
            Repr::Text(t) => t.trim().parse().map(BigIntJson).map_err(serde::de::Error::custom),
        }
    }
}
