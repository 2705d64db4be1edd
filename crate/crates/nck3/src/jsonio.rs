//! Serde glue for arbitrary-precision integers on the JSON wire.
//!
//! Entries are emitted as plain JSON integers whenever they fit in an
//! `i64` and as decimal strings otherwise; both forms are accepted back.

use num_traits::ToPrimitive;
use serde::de::{self, Deserialize, Deserializer};
use serde::ser::{SerializeSeq, Serializer};

use crate::Int;

pub fn serialize_int<S: Serializer>(v: &Int, s: S) -> Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(small) => s.serialize_i64(small),
        None => s.serialize_str(&v.to_string()),
    }
}

pub fn deserialize_int<'de, D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
    struct V;
    impl<'de> de::Visitor<'de> for V {
        type Value = Int;
        fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
            f.write_str("an integer or a decimal string")
        }
        fn visit_i64<E: de::Error>(self, v: i64) -> Result<Int, E> {
            Ok(Int::from(v))
        }
        fn visit_u64<E: de::Error>(self, v: u64) -> Result<Int, E> {
            Ok(Int::from(v))
        }
        fn visit_str<E: de::Error>(self, v: &str) -> Result<Int, E> {
            v.parse().map_err(|_| E::custom(format!("invalid integer `{v}`")))
        }
    }
    d.deserialize_any(V)
}

pub mod int_scalar {
    pub use super::{deserialize_int as deserialize, serialize_int as serialize};
}

pub mod int_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Int], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for e in v {
            seq.serialize_element(&Wrapper(e))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Int>, D::Error> {
        let wrapped = Vec::<Owned>::deserialize(d)?;
        Ok(wrapped.into_iter().map(|w| w.0).collect())
    }
}

pub mod int_matrix {
    use super::*;

    pub fn serialize<S: Serializer>(m: &[Vec<Int>], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(m.len()))?;
        for row in m {
            seq.serialize_element(&RowWrapper(row))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Int>>, D::Error> {
        let wrapped = Vec::<Vec<Owned>>::deserialize(d)?;
        Ok(wrapped.into_iter().map(|row| row.into_iter().map(|w| w.0).collect()).collect())
    }
}

struct Wrapper<'a>(&'a Int);

impl serde::Serialize for Wrapper<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_int(self.0, s)
    }
}

struct RowWrapper<'a>(&'a [Int]);

impl serde::Serialize for RowWrapper<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for e in self.0 {
            seq.serialize_element(&Wrapper(e))?;
        }
        seq.end()
    }
}

struct Owned(Int);

impl<'de> Deserialize<'de> for Owned {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        deserialize_int(d).map(Owned)
    }
}
