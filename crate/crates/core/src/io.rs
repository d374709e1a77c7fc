//! JSON interchange formats. Exact integers serialize as decimal strings
//! so that arbitrary-precision values survive JSON round-trips; readers
//! also accept plain JSON integers for convenience.

use crate::exactmath::Rat;
use crate::geom::{DistanceMatrix, GeomError, NormalizedPoint, PointSet};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    File(#[from] std::io::Error),
    #[error("denom must be a positive even integer, got {0}")]
    BadDenom(u64),
    #[error("matrix entry at ({0}, {1}) is negative")]
    NegativeEntry(usize, usize),
    #[error("matrix entry at ({0}, {1}) does not fit u64")]
    EntryTooLarge(usize, usize),
    #[error("declared n = {declared} but matrix has {actual} rows")]
    SizeMismatch { declared: usize, actual: usize },
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// Arbitrary-precision integer that serializes as a decimal string and
/// deserializes from either a string or a JSON integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0.to_string())
    }
}

struct JsonIntVisitor;

impl Visitor<'_> for JsonIntVisitor {
    type Value = JsonInt;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonInt, E> {
        Ok(JsonInt(BigInt::from(v)))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonInt, E> {
        Ok(JsonInt(BigInt::from(v)))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<JsonInt, E> {
        BigInt::from_str(v.trim())
            .map(JsonInt)
            .map_err(|_| E::custom(format!("not a decimal integer: {v:?}")))
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_any(JsonIntVisitor)
    }
}

/// On-disk form of a point set: point `i` is
/// `(points[i][0] / denom, (points[i][1] / denom) * sqrt(m))`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PointSetFile {
    pub m: u64,
    pub denom: u64,
    pub points: Vec<[JsonInt; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

impl PointSetFile {
    /// Encodes a point set over the smallest even common denominator.
    pub fn from_point_set(
        set: &PointSet,
        name: Option<String>,
        source: Option<String>,
    ) -> Self {
        let mut denom = BigInt::one();
        for p in &set.points {
            denom = denom.lcm(p.x.denom());
            denom = denom.lcm(p.t.denom());
        }
        if (&denom % BigInt::from(2)).is_positive() {
            denom *= 2;
        }
        let points = set
            .points
            .iter()
            .map(|p| {
                let px = (&p.x * Rat::from_integer(denom.clone())).to_integer();
                let py = (&p.t * Rat::from_integer(denom.clone())).to_integer();
                [JsonInt(px), JsonInt(py)]
            })
            .collect();
        PointSetFile {
            m: set.m,
            denom: denom.to_u64().expect("denominator fits u64"),
            points,
            name,
            source,
        }
    }

    pub fn to_point_set(&self) -> Result<PointSet, IoError> {
        if self.denom == 0 || self.denom % 2 != 0 {
            return Err(IoError::BadDenom(self.denom));
        }
        let denom = BigInt::from(self.denom);
        let points = self
            .points
            .iter()
            .map(|[px, py]| {
                NormalizedPoint::new(
                    Rat::new(px.0.clone(), denom.clone()),
                    Rat::new(py.0.clone(), denom.clone()),
                )
            })
            .collect();
        Ok(PointSet::new(self.m, points)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self, IoError> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn read(path: &std::path::Path) -> Result<Self, IoError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: &std::path::Path) -> Result<(), IoError> {
        Ok(std::fs::write(path, self.to_json())?)
    }
}

/// On-disk form of a symmetric integer distance matrix.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct DistanceMatrixFile {
    pub n: usize,
    pub d: Vec<Vec<JsonInt>>,
}

impl DistanceMatrixFile {
    pub fn from_matrix(m: &DistanceMatrix) -> Self {
        DistanceMatrixFile {
            n: m.n(),
            d: m.rows()
                .iter()
                .map(|row| row.iter().map(|&v| JsonInt(BigInt::from(v))).collect())
                .collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<DistanceMatrix, IoError> {
        if self.d.len() != self.n {
            return Err(IoError::SizeMismatch {
                declared: self.n,
                actual: self.d.len(),
            });
        }
        let mut rows = Vec::with_capacity(self.n);
        for (i, row) in self.d.iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (j, v) in row.iter().enumerate() {
                if v.0.is_negative() {
                    return Err(IoError::NegativeEntry(i, j));
                }
                out.push(v.0.to_u64().ok_or(IoError::EntryTooLarge(i, j))?);
            }
            rows.push(out);
        }
        Ok(DistanceMatrix::new(rows)?)
    }

    pub fn from_json(s: &str) -> Result<Self, IoError> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn read(path: &std::path::Path) -> Result<Self, IoError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}
