//! Instance files: a polygon and a translate multiset in JSON.
//!
//! ```json
//! {
//!   "version": 1,
//!   "discriminant": 2,
//!   "polygon": [["1", "-1"], ["1", "1"], ["-1", "1"], ["-1", "-1"]],
//!   "parts": [
//!     { "basis": [["1", "0"], ["0", "1"]], "offsets": [["0", "0"], ["sqrt(2)/2", "0"]] }
//!   ],
//!   "expected_k": 8
//! }
//! ```
//!
//! Scalars are strings in the grammar of [`Scalar`](crate::field::Scalar)
//! or plain JSON integers; floats are rejected. `version`, `discriminant`,
//! `offsets` (default: the origin) and `expected_k` are optional. Every
//! irrational scalar must use the same square root, and it must match
//! `discriminant` when that is given. Parts whose lattices coincide are
//! grouped under the first basis listed.

use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer};
use serde_json::json;
use thiserror::Error;

use crate::field::{square_free_part, ParseScalarError, Scalar};
use crate::geometry::{PolygonError, SymPolygon, Vec2};
use crate::lattice::{Lattice2, TranslatedLattice};
use crate::tiling::{TileMultiset, TilingError};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("parse error{}{}: {message}", fmt_line(*.line, *.column), fmt_path(.path))]
    Parse {
        line: Option<usize>,
        column: Option<usize>,
        path: String,
        message: String,
    },
    #[error("mixed discriminants at {path}: sqrt({found}) where sqrt({expected}) is in use")]
    MixedDiscriminants { path: String, expected: u64, found: u64 },
    #[error("invalid polygon: {0}")]
    InvalidPolygon(PolygonError),
    #[error("invalid translate set: {0}")]
    InvalidParts(TilingError),
}

fn fmt_line(line: Option<usize>, column: Option<usize>) -> String {
    match (line, column) {
        (Some(l), Some(c)) => format!(" at line {l}, column {c}"),
        (Some(l), None) => format!(" at line {l}"),
        _ => String::new(),
    }
}

fn fmt_path(path: &str) -> String {
    if path.is_empty() || path == "." {
        String::new()
    } else {
        format!(" (field {path})")
    }
}

impl InstanceError {
    /// Stable machine-readable error code.
    pub fn code(&self) -> &'static str {
        match self {
            InstanceError::Parse { .. } => "PARSE_ERROR",
            InstanceError::MixedDiscriminants { .. } => "MIXED_DISCRIMINANTS",
            InstanceError::InvalidPolygon(_) => "INVALID_POLYGON",
            InstanceError::InvalidParts(_) => "INVALID_PARTS",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    /// Square-free radicand shared by all irrational scalars, 0 when rational.
    pub discriminant: u64,
    pub polygon: SymPolygon,
    pub parts: TileMultiset,
    pub expected_k: Option<u64>,
}

/// A scalar as written in the file, parsed later so errors carry a path.
#[derive(Debug)]
struct RawScalar(String);

impl<'de> Deserialize<'de> for RawScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = RawScalar;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a scalar string such as \"1/2\" or \"1+sqrt(2)\", or an integer")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<RawScalar, E> {
                Ok(RawScalar(v.to_string()))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<RawScalar, E> {
                Ok(RawScalar(v.to_string()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<RawScalar, E> {
                Ok(RawScalar(v.to_string()))
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<RawScalar, E> {
                Err(E::custom(format!("float {v} is not exact; write scalars as strings")))
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPart {
    basis: [[RawScalar; 2]; 2],
    #[serde(default)]
    offsets: Option<Vec<[RawScalar; 2]>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    #[serde(default)]
    version: Option<u32>,
    #[serde(default)]
    discriminant: Option<u64>,
    polygon: Vec<[RawScalar; 2]>,
    parts: Vec<RawPart>,
    #[serde(default)]
    expected_k: Option<u64>,
}

struct Reader<'a> {
    text: &'a str,
    discriminant: u64,
}

impl Reader<'_> {
    fn line_of(&self, raw: &str) -> Option<usize> {
        let needle = serde_json::to_string(raw).ok()?;
        let at = self.text.find(&needle).or_else(|| self.text.find(raw))?;
        Some(self.text[..at].matches('\n').count() + 1)
    }

    fn scalar(&mut self, raw: &RawScalar, path: String) -> Result<Scalar, InstanceError> {
        let s: Scalar = raw.0.parse().map_err(|e: ParseScalarError| match e {
            ParseScalarError::MixedRadicands { first, second, .. } => InstanceError::MixedDiscriminants {
                path: path.clone(),
                expected: first,
                found: second,
            },
            other => InstanceError::Parse {
                line: self.line_of(&raw.0),
                column: None,
                path: path.clone(),
                message: other.to_string(),
            },
        })?;
        let d = s.radicand();
        if d != 0 {
            if self.discriminant == 0 {
                self.discriminant = d;
            } else if self.discriminant != d {
                return Err(InstanceError::MixedDiscriminants {
                    path,
                    expected: self.discriminant,
                    found: d,
                });
            }
        }
        Ok(s)
    }

    fn point(&mut self, raw: &[RawScalar; 2], path: &str) -> Result<Vec2, InstanceError> {
        Ok(Vec2::new(
            self.scalar(&raw[0], format!("{path}[0]"))?,
            self.scalar(&raw[1], format!("{path}[1]"))?,
        ))
    }
}

pub fn parse_instance(text: &str) -> Result<Instance, InstanceError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let raw: RawInstance = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        InstanceError::Parse {
            line: Some(inner.line()),
            column: Some(inner.column()),
            path,
            message: inner.to_string(),
        }
    })?;
    if let Some(v) = raw.version {
        if v != FORMAT_VERSION {
            return Err(InstanceError::Parse {
                line: None,
                column: None,
                path: "version".into(),
                message: format!("unsupported version {v}, expected {FORMAT_VERSION}"),
            });
        }
    }
    let declared = raw
        .discriminant
        .map(|d| square_free_part(d).1)
        .filter(|&d| d > 1)
        .unwrap_or(0);
    let mut r = Reader {
        text,
        discriminant: declared,
    };

    let vertices = raw
        .polygon
        .iter()
        .enumerate()
        .map(|(i, p)| r.point(p, &format!("polygon[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let polygon = SymPolygon::new(vertices).map_err(InstanceError::InvalidPolygon)?;

    let mut parts = Vec::new();
    for (j, part) in raw.parts.iter().enumerate() {
        let u = r.point(&part.basis[0], &format!("parts[{j}].basis[0]"))?;
        let v = r.point(&part.basis[1], &format!("parts[{j}].basis[1]"))?;
        let lattice = Lattice2::new(u, v).map_err(|e| InstanceError::Parse {
            line: None,
            column: None,
            path: format!("parts[{j}].basis"),
            message: e.to_string(),
        })?;
        let offsets = match &part.offsets {
            None => vec![Vec2::zero()],
            Some(list) => list
                .iter()
                .enumerate()
                .map(|(k, o)| r.point(o, &format!("parts[{j}].offsets[{k}]")))
                .collect::<Result<Vec<_>, _>>()?,
        };
        parts.extend(offsets.into_iter().map(|offset| TranslatedLattice {
            lattice: lattice.clone(),
            offset,
        }));
    }
    let parts = TileMultiset::new(parts).map_err(InstanceError::InvalidParts)?;
    Ok(Instance {
        discriminant: r.discriminant,
        polygon,
        parts,
        expected_k: raw.expected_k,
    })
}

fn point_json(p: &Vec2) -> serde_json::Value {
    json!([p.x.to_string(), p.y.to_string()])
}

/// Canonical text of an instance; parsing it gives back an equal instance.
pub fn format_instance(instance: &Instance) -> String {
    let parts: Vec<serde_json::Value> = instance
        .parts
        .groups()
        .iter()
        .map(|g| {
            json!({
                "basis": [point_json(g.lattice.u()), point_json(g.lattice.v())],
                "offsets": g.offsets.iter().map(point_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut doc = serde_json::Map::new();
    doc.insert("version".into(), json!(FORMAT_VERSION));
    if instance.discriminant != 0 {
        doc.insert("discriminant".into(), json!(instance.discriminant));
    }
    doc.insert(
        "polygon".into(),
        instance.polygon.vertices().iter().map(point_json).collect(),
    );
    doc.insert("parts".into(), serde_json::Value::Array(parts));
    if let Some(k) = instance.expected_k {
        doc.insert("expected_k".into(), json!(k));
    }
    let mut out = serde_json::to_string_pretty(&serde_json::Value::Object(doc)).expect("json values serialize");
    out.push('\n');
    out
}
