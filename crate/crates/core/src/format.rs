//! Serde helpers for exact numbers.
//!
//! Integers are written as JSON numbers when they fit in 64 bits and as
//! decimal strings otherwise; rationals are `[numerator, denominator]` pairs.
//! Matrices are nested row arrays.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::matrix::{IntMatrix, RatMatrix};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Small(i64),
    Big(String),
}

impl IntRepr {
    fn from_big(v: &BigInt) -> Self {
        match v.to_i64() {
            Some(s) => IntRepr::Small(s),
            None => IntRepr::Big(v.to_string()),
        }
    }

    fn into_big<E: serde::de::Error>(self) -> Result<BigInt, E> {
        match self {
            IntRepr::Small(s) => Ok(BigInt::from(s)),
            IntRepr::Big(s) => s
                .parse()
                .map_err(|_| E::custom(format!("bad integer '{s}'"))),
        }
    }
}

/// Serializable integer wrapper.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        IntRepr::from_big(&self.0).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        IntRepr::deserialize(d)?.into_big().map(Int)
    }
}

/// Serializable rational as `[num, den]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rat(pub BigRational);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (
            IntRepr::from_big(self.0.numer()),
            IntRepr::from_big(self.0.denom()),
        )
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (n, q): (IntRepr, IntRepr) = Deserialize::deserialize(d)?;
        let n = n.into_big()?;
        let q: BigInt = q.into_big()?;
        if q == BigInt::from(0) {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(Rat(BigRational::new(n, q)))
    }
}

pub fn rats(v: &[BigRational]) -> Vec<Rat> {
    v.iter().cloned().map(Rat).collect()
}

pub fn int_rows(m: &IntMatrix) -> Vec<Vec<Int>> {
    m.to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(Int).collect())
        .collect()
}

pub fn rat_rows(m: &RatMatrix) -> Vec<Vec<Rat>> {
    m.to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(Rat).collect())
        .collect()
}

pub fn matrix_from_rows(rows: Vec<Vec<Int>>) -> crate::error::Result<IntMatrix> {
    IntMatrix::from_rows(
        rows.into_iter()
            .map(|r| r.into_iter().map(|v| v.0).collect())
            .collect(),
    )
}

pub mod bigint_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(IntRepr::from_big)
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw: Vec<IntRepr> = Deserialize::deserialize(d)?;
        raw.into_iter().map(IntRepr::into_big).collect()
    }
}

pub mod int_matrix {
    use super::*;

    pub fn serialize<S: Serializer>(m: &IntMatrix, s: S) -> Result<S::Ok, S::Error> {
        int_rows(m).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<IntMatrix, D::Error> {
        let rows: Vec<Vec<Int>> = Deserialize::deserialize(d)?;
        matrix_from_rows(rows).map_err(D::Error::custom)
    }
}

pub mod rat_matrix {
    use super::*;

    pub fn serialize<S: Serializer>(m: &RatMatrix, s: S) -> Result<S::Ok, S::Error> {
        rat_rows(m).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<RatMatrix, D::Error> {
        let rows: Vec<Vec<Rat>> = Deserialize::deserialize(d)?;
        RatMatrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(|v| v.0).collect())
                .collect(),
        )
        .map_err(D::Error::custom)
    }
}

pub mod bigint {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        IntRepr::from_big(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        IntRepr::deserialize(d)?.into_big()
    }
}

pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        Rat(v.clone()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        Rat::deserialize(d).map(|r| r.0)
    }
}

pub mod rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        rats(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        let raw: Vec<Rat> = Deserialize::deserialize(d)?;
        Ok(raw.into_iter().map(|r| r.0).collect())
    }
}
