//! JSON forms for surface vectors.
//!
//! Integers that fit in an `i64` are written as JSON numbers and everything larger as a
//! decimal string; both forms are accepted on input.

use super::{PieceKind, PieceRef, Tube};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

pub(crate) struct Int<'a>(pub &'a BigInt);

impl Serialize for Int<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(x) => s.serialize_i64(x),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

pub(crate) struct OwnedInt(pub BigInt);

impl<'de> Deserialize<'de> for OwnedInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = OwnedInt;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<OwnedInt, E> {
                Ok(OwnedInt(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<OwnedInt, E> {
                Ok(OwnedInt(v.into()))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<OwnedInt, E> {
                v.trim()
                    .parse::<BigInt>()
                    .map(OwnedInt)
                    .map_err(|_| E::custom(format!("not an integer: {v:?}")))
            }
        }
        d.deserialize_any(V)
    }
}

pub(crate) mod big {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        Int(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        OwnedInt::deserialize(d).map(|x| x.0)
    }
}

pub(crate) mod big_array {
    use super::*;

    pub fn serialize<S: Serializer, const N: usize>(v: &[BigInt; N], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(N))?;
        for x in v {
            seq.serialize_element(&Int(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>, const N: usize>(d: D) -> Result<[BigInt; N], D::Error> {
        let items = Vec::<OwnedInt>::deserialize(d)?;
        let n = items.len();
        let items: Vec<BigInt> = items.into_iter().map(|x| x.0).collect();
        items
            .try_into()
            .map_err(|_| de::Error::invalid_length(n, &format!("an array of {N} integers").as_str()))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PieceJson {
    piece: String,
    #[serde(rename = "type")]
    kind: usize,
    index: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TubeJson {
    tet: usize,
    first: PieceJson,
    second: PieceJson,
}

impl From<PieceRef> for PieceJson {
    fn from(p: PieceRef) -> Self {
        let (piece, kind) = match p.kind {
            PieceKind::Triangle(v) => ("tri", v),
            PieceKind::Quad(q) => ("quad", q),
            PieceKind::Octagon(k) => ("oct", k),
        };
        PieceJson { piece: piece.into(), kind, index: p.index }
    }
}

impl PieceJson {
    fn into_ref<E: de::Error>(self) -> Result<PieceRef, E> {
        let kind = match (self.piece.as_str(), self.kind) {
            ("tri", v) if v < 4 => PieceKind::Triangle(v),
            ("quad", q) if q < 3 => PieceKind::Quad(q),
            ("oct", k) if k < 3 => PieceKind::Octagon(k),
            (p, k) => return Err(E::custom(format!("unknown piece {p} of type {k}"))),
        };
        Ok(PieceRef { kind, index: self.index })
    }
}

pub(crate) mod tube {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<Tube>, s: S) -> Result<S::Ok, S::Error> {
        v.map(|t| TubeJson { tet: t.tet, first: t.first.into(), second: t.second.into() })
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Tube>, D::Error> {
        let Some(t) = Option::<TubeJson>::deserialize(d)? else { return Ok(None) };
        Ok(Some(Tube { tet: t.tet, first: t.first.into_ref()?, second: t.second.into_ref()? }))
    }
}
