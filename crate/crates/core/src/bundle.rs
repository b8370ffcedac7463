//! Thin paths from the basepoint, the loop group acting on them by
//! concatenation, endpoint projection, star charts, and lifting over a
//! simplex.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::{intersects, Point, Simplex, SimplicialComplex};
use crate::thin::{concat, reduce, reduce_tape, Rule, Tape, ThinClass};
use crate::word::{same_complex, PlWord, WordKind};

/// A reduced path word starting at the basepoint. Both endpoints are fixed by
/// reduction; only interior vertices are ever deleted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThinPath {
    word: PlWord,
}

impl AsRef<PlWord> for ThinPath {
    fn as_ref(&self) -> &PlWord {
        &self.word
    }
}

impl fmt::Display for ThinPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.word.fmt(f)
    }
}

impl ThinPath {
    /// The constant path `[x0]`.
    pub fn trivial(complex: &Arc<SimplicialComplex>) -> ThinPath {
        ThinPath {
            word: PlWord::constant(complex, WordKind::Path),
        }
    }

    pub fn word(&self) -> &PlWord {
        &self.word
    }

    pub fn points(&self) -> &[Point] {
        self.word.points()
    }

    pub fn complex(&self) -> &Arc<SimplicialComplex> {
        self.word.complex()
    }

    /// Projection to the terminal point.
    pub fn endpoint(&self) -> &Point {
        self.word.last()
    }
}

/// Projection to the terminal point.
pub fn endpoint(path: &ThinPath) -> &Point {
    path.endpoint()
}

/// Thin reduction of a path with both ends pinned.
pub fn path_core(word: &PlWord) -> Result<ThinPath> {
    if word.kind() != WordKind::Path {
        return Err(Error::WrongKind { expected: "path" });
    }
    Ok(ThinPath {
        word: reduce(word, Rule::ThinRemove).0,
    })
}

fn finish(tape: Tape, junction: usize, complex: &Arc<SimplicialComplex>) -> ThinPath {
    ThinPath {
        word: reduce_tape(tape, junction, complex, WordKind::Path),
    }
}

/// `g . p`: the loop followed by the path, reduced. Preserves the endpoint.
pub fn act(g: &ThinClass, path: &ThinPath) -> Result<ThinPath> {
    let tape = concat(g.word(), &path.word)?;
    Ok(finish(tape, g.word().len() - 1, path.complex()))
}

fn check_chart(x: &Point, reference: &ThinPath) -> Result<()> {
    if reference.endpoint() == x {
        Ok(())
    } else {
        Err(Error::RefEndpointMismatch)
    }
}

/// Carriers of `y` after checking it lies in a simplex of the star of `x`.
fn star_carriers(complex: &SimplicialComplex, x: &Point, y: &Point) -> Result<Vec<usize>> {
    let star = complex.star(x)?;
    let carriers = complex.carrier_indices(y)?;
    let in_star = carriers
        .iter()
        .any(|&c| star.contains(&complex.simplices()[c]));
    if in_star {
        Ok(carriers)
    } else {
        Err(Error::PointNotInStar)
    }
}

/// Chart of the endpoint projection over the star of `x`:
/// `(g, y) -> g . reference . [x, y]`.
pub fn local_triv(x: &Point, reference: &ThinPath, g: &ThinClass, y: &Point) -> Result<ThinPath> {
    check_chart(x, reference)?;
    let complex = reference.complex();
    let y_carriers = star_carriers(complex, x, y)?;
    let mut tape = concat(g.word(), &reference.word)?;
    let junction = g.word().len() - 1;
    tape.push(y.clone(), y_carriers);
    Ok(finish(tape, junction, complex))
}

/// Inverse chart: `p -> (p . [y, x] . reverse(reference), y)` with `y` the
/// endpoint of `p`.
pub fn local_triv_inv(
    x: &Point,
    reference: &ThinPath,
    path: &ThinPath,
) -> Result<(ThinClass, Point)> {
    check_chart(x, reference)?;
    if !same_complex(reference.complex(), path.complex()) {
        return Err(Error::ComplexMismatch);
    }
    let complex = reference.complex();
    let y = path.endpoint().clone();
    star_carriers(complex, x, &y)?;
    let mut tape = Tape::of(&path.word);
    let junction = tape.len();
    tape.push(
        x.clone(),
        reference
            .word
            .carriers()
            .last()
            .cloned()
            .unwrap_or_default(),
    );
    tape.extend_reversed_tail(&reference.word);
    let loop_word = reduce_tape(tape, junction, complex, WordKind::Loop);
    let class = crate::thin::core(&loop_word)?;
    Ok((class, y))
}

/// Lift over a simplex: extends `e` (ending at `x` in `sigma`) linearly to
/// the point `target` of `sigma`, and reduces.
pub fn lift(e: &ThinPath, sigma: &Simplex, target: &Point) -> Result<ThinPath> {
    let complex = e.complex();
    let carriers = complex.carrier_indices(target)?;
    let sigma_index = complex
        .simplices()
        .iter()
        .position(|s| s == sigma)
        .ok_or(Error::PointNotInSimplex)?;
    let x_carriers = e.word.carriers().last().expect("paths are nonempty");
    if x_carriers.binary_search(&sigma_index).is_err()
        || carriers.binary_search(&sigma_index).is_err()
    {
        return Err(Error::PointNotInSimplex);
    }
    debug_assert!(intersects(x_carriers, &carriers));
    let mut tape = Tape::of(&e.word);
    let junction = tape.len();
    tape.push(target.clone(), carriers);
    Ok(finish(tape, junction, complex))
}

/// One step of the pull-back contraction: drop the last point and reduce.
pub fn contract_step(path: &ThinPath) -> ThinPath {
    let points = path.points();
    if points.len() == 1 {
        return path.clone();
    }
    let word = PlWord::from_parts(
        Arc::clone(path.complex()),
        points[..points.len() - 1].to_vec(),
        path.word.carriers()[..points.len() - 1].to_vec(),
        WordKind::Path,
    );
    ThinPath {
        word: reduce(&word, Rule::ThinRemove).0,
    }
}

/// The sequence of contraction steps from `path` down to `[x0]`, inclusive
/// of both ends.
pub fn contraction(path: &ThinPath) -> Vec<ThinPath> {
    let mut out = vec![path.clone()];
    while out.last().expect("nonempty").points().len() > 1 {
        let next = contract_step(out.last().expect("nonempty"));
        out.push(next);
    }
    out
}
