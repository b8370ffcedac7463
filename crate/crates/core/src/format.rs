//! JSON file formats for complexes and words.
//!
//! Complex:
//!
//! ```json
//! {"ambient_dim": 2,
//!  "vertices": [{"id": "A", "coords": ["0", "0"]}, {"id": "B", "coords": ["1", "0"]}],
//!  "simplices": [["A", "B"]],
//!  "basepoint": "A"}
//! ```
//!
//! Word: `{"kind": "loop" | "path", "points": [["0", "0"], ["1/2", "0"], ...]}`.
//! Coordinates are rational strings (see [`crate::scalar`]).

use std::fmt;
use std::sync::Arc;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::geometry::{build_complex, ComplexSpec, Point, SimplicialComplex};
use crate::scalar::{format_scalar, parse_scalar, Scalar};
use crate::word::{make_word, PlWord, WordKind};

/// A rational in its string form; invalid strings fail deserialization at
/// their position in the document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalString(pub Scalar);

impl Serialize for RationalString {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_scalar(&self.0))
    }
}

impl<'de> Deserialize<'de> for RationalString {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = RationalString;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational string such as \"-7/12\"")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<RationalString, E> {
                parse_scalar(v)
                    .map(RationalString)
                    .map_err(|_| E::custom(format!("invalid rational `{v}`")))
            }
        }
        deserializer.deserialize_str(V)
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexEntry {
    id: String,
    coords: Vec<RationalString>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexFile {
    ambient_dim: usize,
    vertices: Vec<VertexEntry>,
    simplices: Vec<Vec<String>>,
    basepoint: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WordFile {
    pub kind: WordKind,
    pub points: Vec<Vec<RationalString>>,
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    })
}

// serde_json appends " at line L column C"; the position is reported separately
fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_owned(),
        None => msg.to_owned(),
    }
}

fn to_point(coords: Vec<RationalString>) -> Point {
    Point::new(coords.into_iter().map(|r| r.0).collect())
}

pub fn parse_complex_spec(text: &str) -> Result<ComplexSpec> {
    let file: ComplexFile = parse_json(text)?;
    Ok(ComplexSpec {
        ambient_dim: file.ambient_dim,
        vertices: file
            .vertices
            .into_iter()
            .map(|v| (v.id, to_point(v.coords)))
            .collect(),
        simplices: file.simplices,
        basepoint: file.basepoint,
    })
}

/// Parses and validates a complex file.
pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    build_complex(&parse_complex_spec(text)?)
}

/// Serializes a complex listing every simplex of its face closure.
pub fn complex_to_json(complex: &SimplicialComplex) -> Value {
    let file = ComplexFile {
        ambient_dim: complex.ambient_dim(),
        vertices: (0..complex.vertex_count())
            .map(|v| VertexEntry {
                id: complex.vertex_id(v).to_owned(),
                coords: point_strings(complex.vertex(v)),
            })
            .collect(),
        simplices: complex
            .simplices()
            .iter()
            .filter(|s| s.dim() > 0)
            .map(|s| {
                complex
                    .simplex_ids(s)
                    .into_iter()
                    .map(str::to_owned)
                    .collect()
            })
            .collect(),
        basepoint: complex.vertex_id(complex.basepoint_index()).to_owned(),
    };
    serde_json::to_value(file).expect("complex serializes")
}

fn point_strings(p: &Point) -> Vec<RationalString> {
    p.coords().iter().cloned().map(RationalString).collect()
}

pub fn point_to_json(p: &Point) -> Value {
    Value::Array(
        p.coords()
            .iter()
            .map(|c| Value::String(format_scalar(c)))
            .collect(),
    )
}

pub fn points_to_json(points: &[Point]) -> Value {
    Value::Array(points.iter().map(point_to_json).collect())
}

/// The word file document for `word`.
pub fn word_to_json(word: &PlWord) -> Value {
    serde_json::json!({
        "kind": word.kind(),
        "points": points_to_json(word.points()),
    })
}

/// Parses a word file and validates it against `complex`.
pub fn parse_word(complex: &Arc<SimplicialComplex>, text: &str) -> Result<PlWord> {
    let file: WordFile = parse_json(text)?;
    let points = file.points.into_iter().map(to_point).collect();
    make_word(complex, points, file.kind)
}

/// Parses a JSON array of rational-string coordinate arrays.
pub fn parse_points(text: &str) -> Result<Vec<Point>> {
    let raw: Vec<Vec<RationalString>> = parse_json(text)?;
    Ok(raw.into_iter().map(to_point).collect())
}
