//! Thin reduction of vertex words and the group of thin loop classes.
//!
//! An interior vertex `x(i)` of a word may be deleted when `x(i-1), x(i),
//! x(i+1)` are collinear inside one closed simplex. This single move covers
//! both flare cancellation (`p q p`) and deletion of redundant vertices lying
//! between their neighbours. Fully reduced words are the normal forms of thin
//! classes; the identity is the one-point word at the basepoint.
//!
//! Two coarser rewriting systems are exposed for comparison: the W relation
//! (delete only vertices lying *between* their neighbours) and the Milnor
//! relation (delete only exact repeats `x x` and exact backtracks `x y x`).

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    between_unchecked, collinear_unchecked, intersects3, Point, SimplicialComplex,
};
use crate::word::{same_complex, PlWord, WordKind};

/// Which rewriting rule removed a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    ThinRemove,
    MilnorRemove,
    WRemove,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::ThinRemove => "ThinRemove",
            Rule::MilnorRemove => "MilnorRemove",
            Rule::WRemove => "WRemove",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TraceStep {
    pub rule: Rule,
    pub index: usize,
}

/// The ordered list of deletions that turned an input word into its reduced
/// form. Indices refer to the word as it was when the step was applied.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ReductionTrace {
    steps: Vec<TraceStep>,
}

impl ReductionTrace {
    pub fn steps(&self) -> &[TraceStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Applies the recorded deletions to `points`. `None` if a step indexes
    /// past the end of the word.
    pub fn replay(&self, points: &[Point]) -> Option<Vec<Point>> {
        let mut out = points.to_vec();
        for step in &self.steps {
            if step.index >= out.len() {
                return None;
            }
            out.remove(step.index);
        }
        Some(out)
    }
}

/// Mutable word under reduction: points with their cached carriers.
pub(crate) struct Tape {
    points: Vec<Point>,
    carriers: Vec<Vec<usize>>,
}

impl Tape {
    pub(crate) fn of(word: &PlWord) -> Tape {
        Tape {
            points: word.points().to_vec(),
            carriers: word.carriers().to_vec(),
        }
    }

    fn removable(&self, rule: Rule, i: usize) -> bool {
        let (p, q, r) = (&self.points[i - 1], &self.points[i], &self.points[i + 1]);
        match rule {
            Rule::ThinRemove => {
                intersects3(
                    &self.carriers[i - 1],
                    &self.carriers[i],
                    &self.carriers[i + 1],
                ) && collinear_unchecked(p, q, r)
            }
            Rule::WRemove => {
                intersects3(
                    &self.carriers[i - 1],
                    &self.carriers[i],
                    &self.carriers[i + 1],
                ) && between_unchecked(p, q, r)
            }
            Rule::MilnorRemove => p == q || p == r,
        }
    }

    /// Appends the points of `word` after its first one.
    pub(crate) fn extend_tail(&mut self, word: &PlWord) {
        self.points.extend_from_slice(&word.points()[1..]);
        self.carriers.extend_from_slice(&word.carriers()[1..]);
    }

    /// Appends the points of `word` in reverse, skipping its last one.
    pub(crate) fn extend_reversed_tail(&mut self, word: &PlWord) {
        let n = word.len() - 1;
        self.points.extend(word.points()[..n].iter().rev().cloned());
        self.carriers
            .extend(word.carriers()[..n].iter().rev().cloned());
    }

    pub(crate) fn push(&mut self, point: Point, carriers: Vec<usize>) {
        self.points.push(point);
        self.carriers.push(carriers);
    }

    pub(crate) fn len(&self) -> usize {
        self.points.len()
    }

    fn remove(&mut self, i: usize) {
        self.points.remove(i);
        self.carriers.remove(i);
    }

    /// Deletes the lowest removable interior index until none is left,
    /// assuming no index below `start` is removable. A two-point word with
    /// coincident points finally collapses to one point.
    fn reduce_from(&mut self, rule: Rule, start: usize, trace: &mut Vec<TraceStep>) {
        let mut i = start.max(1);
        while i + 1 < self.points.len() {
            if self.removable(rule, i) {
                self.remove(i);
                trace.push(TraceStep { rule, index: i });
                // only the triple to the left can have changed below i
                i = (i - 1).max(1);
            } else {
                i += 1;
            }
        }
        if self.points.len() == 2 && self.points[0] == self.points[1] {
            self.remove(1);
            trace.push(TraceStep { rule, index: 1 });
        }
    }

    fn is_reduced(&self, rule: Rule) -> bool {
        (1..self.points.len().saturating_sub(1)).all(|i| !self.removable(rule, i))
            && !(self.points.len() == 2 && self.points[0] == self.points[1])
    }

    fn into_word(self, complex: Arc<SimplicialComplex>, kind: WordKind) -> PlWord {
        PlWord::from_parts(complex, self.points, self.carriers, kind)
    }
}

/// Reduces `word` under `rule` to a fixed point, deleting the lowest
/// removable index first, and records each deletion.
pub fn reduce(word: &PlWord, rule: Rule) -> (PlWord, ReductionTrace) {
    let mut tape = Tape::of(word);
    let mut steps = Vec::new();
    tape.reduce_from(rule, 1, &mut steps);
    (
        tape.into_word(Arc::clone(word.complex()), word.kind()),
        ReductionTrace { steps },
    )
}

/// Interior indices whose triple is aligned inside a common simplex.
/// Endpoints are never removable.
pub fn removable_indices(word: &PlWord) -> Vec<usize> {
    let tape = Tape::of(word);
    (1..word.len().saturating_sub(1))
        .filter(|&i| tape.removable(Rule::ThinRemove, i))
        .collect()
}

/// Whether the word has an aligned interior triple.
pub fn is_degenerate(word: &PlWord) -> bool {
    !removable_indices(word).is_empty()
}

/// Removes vertices lying on the segment between their neighbours.
pub fn w_reduce(word: &PlWord) -> PlWord {
    reduce(word, Rule::WRemove).0
}

/// Removes exact repeats and exact backtracks.
pub fn milnor_reduce(word: &PlWord) -> PlWord {
    reduce(word, Rule::MilnorRemove).0
}

fn expect_kind(word: &PlWord, kind: WordKind) -> Result<()> {
    if word.kind() == kind {
        Ok(())
    } else {
        Err(Error::WrongKind {
            expected: match kind {
                WordKind::Loop => "loop",
                WordKind::Path => "path",
            },
        })
    }
}

/// Thin core of a loop.
pub fn core(word: &PlWord) -> Result<ThinClass> {
    core_traced(word).map(|(class, _)| class)
}

pub fn core_traced(word: &PlWord) -> Result<(ThinClass, ReductionTrace)> {
    expect_kind(word, WordKind::Loop)?;
    let (reduced, trace) = reduce(word, Rule::ThinRemove);
    Ok((ThinClass { word: reduced }, trace))
}

/// Thin equality: both sides reduce to the same word.
pub fn eq(a: &impl AsRef<PlWord>, b: &impl AsRef<PlWord>) -> Result<bool> {
    let (a, b) = (a.as_ref(), b.as_ref());
    if !same_complex(a.complex(), b.complex()) {
        return Err(Error::ComplexMismatch);
    }
    if a.kind() != b.kind() {
        return Ok(false);
    }
    Ok(reduce(a, Rule::ThinRemove).0.points() == reduce(b, Rule::ThinRemove).0.points())
}

/// An element of the thin loop group: a fully reduced loop word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThinClass {
    word: PlWord,
}

impl AsRef<PlWord> for ThinClass {
    fn as_ref(&self) -> &PlWord {
        &self.word
    }
}

impl fmt::Display for ThinClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.word.fmt(f)
    }
}

impl ThinClass {
    /// The class of the constant loop, `[x0]`.
    pub fn identity(complex: &Arc<SimplicialComplex>) -> ThinClass {
        ThinClass {
            word: PlWord::constant(complex, WordKind::Loop),
        }
    }

    pub fn word(&self) -> &PlWord {
        &self.word
    }

    pub fn into_word(self) -> PlWord {
        self.word
    }

    pub fn points(&self) -> &[Point] {
        self.word.points()
    }

    pub fn complex(&self) -> &Arc<SimplicialComplex> {
        self.word.complex()
    }

    pub fn is_identity(&self) -> bool {
        self.word.len() == 1
    }

    /// Product: concatenation at the basepoint, reduced.
    pub fn mul(&self, other: &ThinClass) -> Result<ThinClass> {
        let tape = concat(&self.word, &other.word)?;
        let junction = self.word.len() - 1;
        Ok(ThinClass {
            word: reduce_tape(tape, junction, self.complex(), WordKind::Loop),
        })
    }

    /// Inverse: the reversed word. Reversal preserves reducedness.
    pub fn inv(&self) -> ThinClass {
        let (complex, mut points, mut carriers) = self.word.clone().into_parts();
        points.reverse();
        carriers.reverse();
        let word = PlWord::from_parts(complex, points, carriers, WordKind::Loop);
        debug_assert!(is_reduced(&word));
        ThinClass { word }
    }

    /// `n`-fold product; negative powers use the inverse.
    pub fn pow(&self, n: i64) -> ThinClass {
        let base = if n < 0 { self.inv() } else { self.clone() };
        let mut acc = ThinClass::identity(self.complex());
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base).expect("powers share one complex");
        }
        acc
    }
}

/// Whether no thin move applies to `word`.
pub fn is_reduced(word: &PlWord) -> bool {
    Tape::of(word).is_reduced(Rule::ThinRemove)
}

/// Concatenation of `a` and `b` with the junction point written once.
/// `a` must end where `b` starts.
pub(crate) fn concat(a: &PlWord, b: &PlWord) -> Result<Tape> {
    if !same_complex(a.complex(), b.complex()) {
        return Err(Error::ComplexMismatch);
    }
    debug_assert_eq!(a.last(), b.first());
    let mut tape = Tape::of(a);
    tape.extend_tail(b);
    Ok(tape)
}

/// Thin-reduces a tape whose prefix before `junction - 1` is known reduced.
pub(crate) fn reduce_tape(
    mut tape: Tape,
    junction: usize,
    complex: &Arc<SimplicialComplex>,
    kind: WordKind,
) -> PlWord {
    let mut steps = Vec::new();
    tape.reduce_from(Rule::ThinRemove, junction.saturating_sub(1), &mut steps);
    tape.into_word(Arc::clone(complex), kind)
}

/// Every terminal word reachable by thin deletions in any order. A singleton
/// result certifies that the reduction of `word` is order independent.
pub fn reduce_all_orders(word: &PlWord, max_len: usize) -> Result<BTreeSet<Vec<Point>>> {
    if word.len() > max_len {
        return Err(Error::TooLong {
            len: word.len(),
            max: max_len,
        });
    }
    let mut terminals = BTreeSet::new();
    let mut seen: HashSet<Vec<Point>> = HashSet::new();
    let mut stack = vec![Tape::of(word)];
    while let Some(tape) = stack.pop() {
        if !seen.insert(tape.points.clone()) {
            continue;
        }
        let moves: Vec<usize> = (1..tape.points.len().saturating_sub(1))
            .filter(|&i| tape.removable(Rule::ThinRemove, i))
            .collect();
        if moves.is_empty() {
            let mut points = tape.points;
            if points.len() == 2 && points[0] == points[1] {
                points.pop();
            }
            terminals.insert(points);
            continue;
        }
        for i in moves {
            let mut next = Tape {
                points: tape.points.clone(),
                carriers: tape.carriers.clone(),
            };
            next.remove(i);
            stack.push(next);
        }
    }
    Ok(terminals)
}

/// A thin free loop: a cyclically reduced vertex cycle, canonically rotated.
/// The trivial class is the empty cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeThinClass {
    complex: Arc<SimplicialComplex>,
    cycle: Vec<Point>,
}

impl FreeThinClass {
    pub fn cycle(&self) -> &[Point] {
        &self.cycle
    }

    pub fn complex(&self) -> &Arc<SimplicialComplex> {
        &self.complex
    }

    pub fn is_trivial(&self) -> bool {
        self.cycle.is_empty()
    }
}

/// Cyclic thin reduction of a loop, ignoring its basepoint.
///
/// The closing basepoint is dropped and aligned triples are deleted with
/// wrap-around until none remain. Cycles of at most two points are trivial.
/// The result is rotated to its lexicographically least form.
pub fn cyclic_core(word: &PlWord) -> Result<FreeThinClass> {
    expect_kind(word, WordKind::Loop)?;
    let mut tape = Tape::of(word);
    tape.points.pop();
    tape.carriers.pop();
    loop {
        let n = tape.points.len();
        if n <= 2 {
            tape.points.clear();
            break;
        }
        let hit = (0..n).find(|&i| {
            let (a, b) = ((i + n - 1) % n, (i + 1) % n);
            intersects3(&tape.carriers[a], &tape.carriers[i], &tape.carriers[b])
                && collinear_unchecked(&tape.points[a], &tape.points[i], &tape.points[b])
        });
        match hit {
            Some(i) => tape.remove(i),
            None => break,
        }
    }
    let cycle = least_rotation(tape.points);
    Ok(FreeThinClass {
        complex: Arc::clone(word.complex()),
        cycle,
    })
}

fn least_rotation(points: Vec<Point>) -> Vec<Point> {
    let n = points.len();
    let best = (0..n)
        .min_by(|&a, &b| {
            (0..n)
                .map(|k| points[(a + k) % n].cmp(&points[(b + k) % n]))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .unwrap_or(0);
    let mut out = points;
    out.rotate_left(best);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scalar::ratio;
    use crate::word::make_word;

    fn hollow() -> Arc<SimplicialComplex> {
        Arc::new(fixtures::hollow3())
    }

    fn ids(c: &Arc<SimplicialComplex>, w: &[&str]) -> PlWord {
        PlWord::from_vertex_ids(c, w, WordKind::Loop).unwrap()
    }

    fn line_word(xs: &[i64], kind: WordKind) -> PlWord {
        let c = Arc::new(fixtures::line());
        make_word(
            &c,
            xs.iter().map(|&x| Point::from_ints(&[x])).collect(),
            kind,
        )
        .unwrap()
    }

    fn pts(c: &Arc<SimplicialComplex>, w: &[&str]) -> Vec<Point> {
        w.iter()
            .map(|id| c.vertex_point(id).unwrap().clone())
            .collect()
    }

    fn half(x: i64, y: i64) -> Point {
        Point::new(vec![ratio(x, 2), ratio(y, 2)])
    }

    #[test]
    fn removable_examples() {
        let c = hollow();
        assert_eq!(removable_indices(&ids(&c, &["A", "B", "A"])), vec![1]);
        assert!(removable_indices(&ids(&c, &["A", "B", "C", "A"])).is_empty());
        assert_eq!(
            removable_indices(&line_word(&[0, 2, 1, 3, 0], WordKind::Loop)),
            vec![1, 2, 3]
        );
    }

    #[test]
    fn degenerate_examples() {
        let c = hollow();
        assert!(is_degenerate(&ids(&c, &["A", "B", "A"])));
        assert!(!is_degenerate(&ids(&c, &["A", "B", "C", "A"])));
        assert!(!is_degenerate(&ids(&c, &["A"])));
    }

    #[test]
    fn core_examples() {
        let c = hollow();
        let g = core(&ids(&c, &["A", "B", "C", "A", "B", "A"])).unwrap();
        assert_eq!(g.points(), pts(&c, &["A", "B", "C", "A"]));
        let line = core(&line_word(&[0, 2, 1, 3, 0], WordKind::Loop)).unwrap();
        assert!(line.is_identity());
        let fixed = core(&ids(&c, &["A", "B", "C", "A"])).unwrap();
        assert_eq!(fixed.points(), pts(&c, &["A", "B", "C", "A"]));
        assert!(core(&ids(&c, &["A", "A", "A"])).unwrap().is_identity());
        assert!(core(&line_word(&[0, 1], WordKind::Path)).is_err());
    }

    #[test]
    fn trace_replays() {
        let c = hollow();
        let w = ids(&c, &["A", "B", "C", "A", "C", "B", "A"]);
        let (g, trace) = core_traced(&w).unwrap();
        assert!(g.is_identity());
        assert_eq!(trace.replay(w.points()).unwrap(), g.points());
        assert!(trace.steps().iter().all(|s| s.rule == Rule::ThinRemove));
        let json = serde_json::to_string(&trace).unwrap();
        assert!(
            json.starts_with(r#"[{"rule":"ThinRemove","index":3}"#),
            "{json}"
        );
    }

    #[test]
    fn w_examples() {
        let c = hollow();
        let a = c.vertex_point("A").unwrap().clone();
        let b = c.vertex_point("B").unwrap().clone();
        let cc = c.vertex_point("C").unwrap().clone();
        let w = make_word(
            &c,
            vec![a.clone(), half(1, 0), b.clone(), cc.clone(), a.clone()],
            WordKind::Loop,
        )
        .unwrap();
        assert_eq!(w_reduce(&w).points(), pts(&c, &["A", "B", "C", "A"]));

        let w = make_word(
            &c,
            vec![a.clone(), b.clone(), half(1, 0), a.clone()],
            WordKind::Loop,
        )
        .unwrap();
        let reduced = w_reduce(&w);
        assert_eq!(reduced.points(), pts(&c, &["A", "B", "A"]));
        assert!(is_degenerate(&reduced));

        let flare = ids(&c, &["A", "B", "A"]);
        assert_eq!(w_reduce(&flare), flare);
    }

    #[test]
    fn milnor_examples() {
        let c = hollow();
        let w = ids(&c, &["A", "B", "B", "C", "A"]);
        assert_eq!(milnor_reduce(&w).points(), pts(&c, &["A", "B", "C", "A"]));
        let w = ids(&c, &["A", "B", "A", "C", "A"]);
        assert_eq!(milnor_reduce(&w).points(), pts(&c, &["A"]));
        let w = line_word(&[0, 2, 1, 0], WordKind::Loop);
        assert_eq!(milnor_reduce(&w), w);
        assert!(core(&w).unwrap().is_identity());
    }

    #[test]
    fn group_examples() {
        let c = hollow();
        let g = core(&ids(&c, &["A", "B", "C", "A"])).unwrap();
        let h = core(&ids(&c, &["A", "C", "B", "A"])).unwrap();
        let e = ThinClass::identity(&c);
        assert!(g.mul(&h).unwrap().is_identity());
        assert_eq!(e.mul(&g).unwrap(), g);
        assert_eq!(
            g.mul(&g).unwrap().points(),
            pts(&c, &["A", "B", "C", "A", "B", "C", "A"])
        );
        assert_eq!(g.inv(), h);
        assert_eq!(e.inv(), e);
        assert_eq!(g.inv().inv(), g);
        assert_eq!(e.mul(&e).unwrap(), e);
        assert_eq!(e.points(), pts(&c, &["A"]));
        assert_eq!(g.pow(2).word().len(), 7);
        assert_eq!(g.pow(0), e);
        assert_eq!(g.pow(-1), g.inv());
    }

    #[test]
    fn mul_rejects_other_complex() {
        let g = ThinClass::identity(&hollow());
        let h = ThinClass::identity(&Arc::new(fixtures::filled3()));
        assert_eq!(g.mul(&h), Err(Error::ComplexMismatch));
        assert_eq!(eq(&g, &h), Err(Error::ComplexMismatch));
    }

    #[test]
    fn eq_examples() {
        let c = hollow();
        assert!(eq(
            &ids(&c, &["A", "B", "C", "A"]),
            &ids(&c, &["A", "B", "B", "C", "A"])
        )
        .unwrap());
        assert!(!eq(
            &ids(&c, &["A", "B", "C", "A"]),
            &ids(&c, &["A", "C", "B", "A"])
        )
        .unwrap());
        let g = core(&ids(&c, &["A", "B", "C", "A"])).unwrap();
        assert!(eq(&ids(&c, &["A", "B", "C", "A", "B", "A"]), &g).unwrap());
    }

    #[test]
    fn cyclic_examples() {
        let c = hollow();
        assert!(cyclic_core(&ids(&c, &["A", "B", "A"]))
            .unwrap()
            .is_trivial());
        let cyc = cyclic_core(&ids(&c, &["A", "B", "C", "A"])).unwrap();
        assert_eq!(cyc.cycle(), pts(&c, &["A", "B", "C"]));
        let g = core(&ids(&c, &["A", "B", "C", "A"])).unwrap();
        let a = core(&ids(&c, &["A", "C", "B", "A"])).unwrap();
        let conj = g.mul(&a).unwrap().mul(&g.inv()).unwrap();
        assert_eq!(
            cyclic_core(conj.word()).unwrap(),
            cyclic_core(a.word()).unwrap()
        );
    }

    #[test]
    fn least_rotation_picks_smallest() {
        let p = |x| Point::from_ints(&[x]);
        assert_eq!(
            least_rotation(vec![p(2), p(0), p(1)]),
            vec![p(0), p(1), p(2)]
        );
        assert_eq!(
            least_rotation(vec![p(1), p(0), p(1), p(0), p(0)]),
            vec![p(0), p(0), p(1), p(0), p(1)]
        );
        assert!(least_rotation(vec![]).is_empty());
    }

    #[test]
    fn all_orders_examples() {
        let c = hollow();
        let line = reduce_all_orders(&line_word(&[0, 2, 1, 3, 0], WordKind::Loop), 10).unwrap();
        assert_eq!(line.len(), 1);
        assert_eq!(line.first().unwrap(), &vec![Point::from_ints(&[0])]);

        let gg = reduce_all_orders(&ids(&c, &["A", "B", "C", "A", "C", "B", "A"]), 10).unwrap();
        assert_eq!(gg, BTreeSet::from([pts(&c, &["A"])]));

        let fixed = reduce_all_orders(&ids(&c, &["A", "B", "C", "A"]), 10).unwrap();
        assert_eq!(fixed, BTreeSet::from([pts(&c, &["A", "B", "C", "A"])]));

        assert_eq!(
            reduce_all_orders(&ids(&c, &["A", "B", "C", "A"]), 3),
            Err(Error::TooLong { len: 4, max: 3 })
        );
    }
}
