//! Piecewise-linear loops and paths as vertex words, with their
//! parametrizations.
//!
//! A word `[x0, x1, ..., xn]` together with a subdivision
//! `0 = t0 <= t1 <= ... <= tn = 1` describes the map that is affine on each
//! `[t(i-1), ti]` and sends `ti` to `xi`. Lengths and breakpoints are
//! reported in `f64`; nothing downstream decides anything from them.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{intersects, Point, SimplicialComplex};
use crate::scalar::scalar_to_f64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WordKind {
    Loop,
    Path,
}

impl fmt::Display for WordKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WordKind::Loop => "loop",
            WordKind::Path => "path",
        })
    }
}

/// A validated vertex word on a complex.
///
/// Invariants: nonempty; starts at the basepoint; every consecutive pair
/// lies in a common simplex; a loop also ends at the basepoint.
#[derive(Clone, Debug)]
pub struct PlWord {
    complex: Arc<SimplicialComplex>,
    points: Vec<Point>,
    // carrier simplex indices per point, ascending
    carriers: Vec<Vec<usize>>,
    kind: WordKind,
}

impl PartialEq for PlWord {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.points == other.points
            && same_complex(&self.complex, &other.complex)
    }
}

impl Eq for PlWord {}

impl AsRef<PlWord> for PlWord {
    fn as_ref(&self) -> &PlWord {
        self
    }
}

pub(crate) fn same_complex(a: &Arc<SimplicialComplex>, b: &Arc<SimplicialComplex>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Validates `points` as a word of the given kind.
pub fn make_word(
    complex: &Arc<SimplicialComplex>,
    points: Vec<Point>,
    kind: WordKind,
) -> Result<PlWord> {
    if points.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut carriers = Vec::with_capacity(points.len());
    for (i, p) in points.iter().enumerate() {
        let c = complex.carrier_indices(p)?;
        if c.is_empty() {
            return Err(Error::PointNotInComplex { index: Some(i) });
        }
        carriers.push(c);
    }
    let base = complex.basepoint();
    if &points[0] != base {
        return Err(Error::NotBased);
    }
    if kind == WordKind::Loop && points.last() != Some(base) {
        return Err(Error::NotClosed);
    }
    if let Some(i) = carriers.windows(2).position(|w| !intersects(&w[0], &w[1])) {
        return Err(Error::NoCommonSimplex(i));
    }
    Ok(PlWord {
        complex: Arc::clone(complex),
        points,
        carriers,
        kind,
    })
}

impl PlWord {
    /// Builds a word from vertex ids of the complex.
    pub fn from_vertex_ids(
        complex: &Arc<SimplicialComplex>,
        ids: &[&str],
        kind: WordKind,
    ) -> Result<PlWord> {
        let points = ids
            .iter()
            .map(|id| {
                complex
                    .vertex_point(id)
                    .cloned()
                    .ok_or_else(|| Error::UnknownVertexInSimplex(id.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        make_word(complex, points, kind)
    }

    /// The constant word `[x0]`.
    pub fn constant(complex: &Arc<SimplicialComplex>, kind: WordKind) -> PlWord {
        let base = complex.basepoint().clone();
        let carriers = complex
            .carrier_indices(&base)
            .expect("basepoint has ambient dimension");
        PlWord {
            complex: Arc::clone(complex),
            points: vec![base],
            carriers: vec![carriers],
            kind,
        }
    }

    /// Assembles a word from parts already known to satisfy the invariants.
    pub(crate) fn from_parts(
        complex: Arc<SimplicialComplex>,
        points: Vec<Point>,
        carriers: Vec<Vec<usize>>,
        kind: WordKind,
    ) -> PlWord {
        debug_assert_eq!(points.len(), carriers.len());
        debug_assert!(!points.is_empty());
        PlWord {
            complex,
            points,
            carriers,
            kind,
        }
    }

    pub(crate) fn into_parts(self) -> (Arc<SimplicialComplex>, Vec<Point>, Vec<Vec<usize>>) {
        (self.complex, self.points, self.carriers)
    }

    pub fn complex(&self) -> &Arc<SimplicialComplex> {
        &self.complex
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub(crate) fn carriers(&self) -> &[Vec<usize>] {
        &self.carriers
    }

    pub fn kind(&self) -> WordKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Index of the filtration stage the word belongs to: its vertex count.
    pub fn filtration_index(&self) -> usize {
        self.points.len()
    }

    pub fn first(&self) -> &Point {
        &self.points[0]
    }

    pub fn last(&self) -> &Point {
        &self.points[self.points.len() - 1]
    }

    /// Whether every point coincides, i.e. the map is constant.
    pub fn is_constant(&self) -> bool {
        self.points.iter().all(|p| p == &self.points[0])
    }

    /// Number of affine segments the word is parametrized over. A single
    /// point is read as the constant segment `[x0, x0]`.
    pub fn segments(&self) -> usize {
        (self.points.len() - 1).max(1)
    }

    fn segment_ends(&self, i: usize) -> (&Point, &Point) {
        if self.points.len() == 1 {
            (&self.points[0], &self.points[0])
        } else {
            (&self.points[i - 1], &self.points[i])
        }
    }

    /// Chord length of each segment.
    pub fn chord_lengths(&self) -> Vec<f64> {
        (1..=self.segments())
            .map(|i| {
                let (a, b) = self.segment_ends(i);
                scalar_to_f64(&a.dist_sq(b)).sqrt()
            })
            .collect()
    }

    /// Total chord length.
    pub fn length(&self) -> f64 {
        self.chord_lengths().iter().sum()
    }
}

impl fmt::Display for PlWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

/// Breakpoints `0 = t0 <= t1 <= ... <= tn = 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Subdivision {
    breakpoints: Vec<f64>,
}

impl Subdivision {
    pub fn new(breakpoints: Vec<f64>) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(Error::InvalidSubdivision("needs at least two breakpoints"));
        }
        if breakpoints[0] != 0.0 || breakpoints[breakpoints.len() - 1] != 1.0 {
            return Err(Error::InvalidSubdivision(
                "endpoints must be exactly 0 and 1",
            ));
        }
        if breakpoints.iter().any(|t| !t.is_finite()) || breakpoints.windows(2).any(|w| w[0] > w[1])
        {
            return Err(Error::InvalidSubdivision(
                "breakpoints must be nondecreasing",
            ));
        }
        Ok(Subdivision { breakpoints })
    }

    /// `segments` equal gaps.
    pub fn even(segments: usize) -> Self {
        let n = segments.max(1);
        let mut breakpoints: Vec<f64> = (0..=n).map(|i| i as f64 / n as f64).collect();
        breakpoints[n] = 1.0;
        Subdivision { breakpoints }
    }

    /// The even subdivision with one gap per segment of `word`.
    pub fn even_for(word: &PlWord) -> Self {
        Self::even(word.segments())
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn segments(&self) -> usize {
        self.breakpoints.len() - 1
    }

    fn check_for(&self, word: &PlWord) -> Result<()> {
        let expected = word.segments() + 1;
        if self.breakpoints.len() == expected {
            Ok(())
        } else {
            Err(Error::SubdivisionLength {
                expected,
                found: self.breakpoints.len(),
            })
        }
    }
}

/// Constant-speed breakpoints of a word together with its length.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UniformParam {
    pub breakpoints: Subdivision,
    pub total_length: f64,
}

/// Breakpoints with gaps proportional to chord length. A constant word keeps
/// the even subdivision.
pub fn uniform_breakpoints(word: &PlWord) -> UniformParam {
    let chords = word.chord_lengths();
    let total: f64 = chords.iter().sum();
    if word.is_constant() {
        return UniformParam {
            breakpoints: Subdivision::even_for(word),
            total_length: 0.0,
        };
    }
    let mut breakpoints = Vec::with_capacity(chords.len() + 1);
    let mut t = 0.0;
    breakpoints.push(t);
    for d in &chords {
        t += d / total;
        breakpoints.push(t);
    }
    // everything after the last positive chord sits exactly at 1, so rounding
    // never opens a gap over a zero-length chord
    let last = chords
        .iter()
        .rposition(|&d| d > 0.0)
        .expect("word is not constant");
    for b in &mut breakpoints[last + 1..] {
        *b = 1.0;
    }
    for b in &mut breakpoints[..=last] {
        *b = b.min(1.0);
    }
    UniformParam {
        breakpoints: Subdivision { breakpoints },
        total_length: total,
    }
}

fn check_unit(t: f64) -> Result<()> {
    if (0.0..=1.0).contains(&t) {
        Ok(())
    } else {
        Err(Error::OutOfRange(t))
    }
}

/// Position at parameter `t`, in floating point. At a breakpoint this is the
/// corresponding word vertex (the first one when gaps have zero width).
pub fn evaluate(word: &PlWord, sub: &Subdivision, t: f64) -> Result<Vec<f64>> {
    sub.check_for(word)?;
    check_unit(t)?;
    let ts = &sub.breakpoints;
    if let Some(i) = ts.iter().position(|&b| b == t) {
        let (a, b) = word.segment_ends(i.max(1));
        return Ok(if i == 0 { a.to_f64() } else { b.to_f64() });
    }
    let i = ts
        .windows(2)
        .position(|w| w[0] < t && t < w[1])
        .expect("t lies strictly inside some positive-width gap")
        + 1;
    let (a, b) = word.segment_ends(i);
    let u = (t - ts[i - 1]) / (ts[i] - ts[i - 1]);
    Ok(a.to_f64()
        .iter()
        .zip(b.to_f64())
        .map(|(x, y)| x + u * (y - x))
        .collect())
}

/// Breakpoints `(1 - s) ti + s ui` where `u` is the uniform subdivision.
pub fn uniformize_homotopy(word: &PlWord, sub: &Subdivision, s: f64) -> Result<Subdivision> {
    sub.check_for(word)?;
    check_unit(s)?;
    let uniform = uniform_breakpoints(word).breakpoints;
    let mut breakpoints: Vec<f64> = sub
        .breakpoints
        .iter()
        .zip(&uniform.breakpoints)
        .map(|(t, u)| (1.0 - s) * t + s * u)
        .collect();
    let n = breakpoints.len() - 1;
    breakpoints[0] = 0.0;
    breakpoints[n] = 1.0;
    Ok(Subdivision { breakpoints })
}

/// Whether `sub` parametrizes `word` at constant speed: every gap equals the
/// chord's share of the total length within `rel_tol`. Constant words are
/// uniform under any subdivision.
pub fn is_uniform(word: &PlWord, sub: &Subdivision, rel_tol: f64) -> bool {
    if sub.check_for(word).is_err() {
        return false;
    }
    if word.is_constant() {
        return true;
    }
    let chords = word.chord_lengths();
    let total: f64 = chords.iter().sum();
    sub.breakpoints.windows(2).zip(&chords).all(|(w, d)| {
        let expected = d / total;
        ((w[1] - w[0]) - expected).abs() <= rel_tol * expected + 4.0 * f64::EPSILON
    })
}
