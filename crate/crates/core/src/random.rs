//! Seeded random loops and paths.
//!
//! The generator is SplitMix64 (state increment `0x9e3779b97f4a7c15`, output
//! mix multipliers `0xbf58476d1ce4e5b9` and `0x94d049bb133111eb`, shifts 30,
//! 27, 31), seeded by using the 64-bit seed as the initial state. Draws are
//! derived from successive 64-bit outputs `u` as follows:
//!
//! * `below(n)` = `(u * n) >> 64` computed in 128 bits;
//! * a walk step draws the simplex `below(|star|)` from the star of the
//!   current point (simplices in complex order), then a denominator
//!   `d = 1 + below(D)`, then `dim(sigma)` cut points `below(d + 1)` each;
//!   the sorted cuts split `d` into the numerators of the barycentric
//!   coordinates, in vertex order;
//! * the return leg goes from the last point to the lowest-index vertex of
//!   its lowest-dimensional carrier, then along a breadth-first shortest
//!   edge path to the basepoint.
//!
//! Any implementation following these rules reproduces the same words.

use std::sync::Arc;

use num_bigint::BigInt;
use rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::geometry::{Point, Simplex, SimplicialComplex};
use crate::scalar::Scalar;
use crate::word::{make_word, PlWord, WordKind};

/// Deterministic source of draws for word generation.
#[derive(Clone, Debug)]
pub struct WordRng {
    inner: SplitMix64,
}

impl WordRng {
    pub fn new(seed: u64) -> Self {
        WordRng {
            inner: SplitMix64::seed_from_u64(seed),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform-ish integer in `0..n`; `n` must be positive.
    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0, "empty range");
        ((u128::from(self.next_u64()) * n as u128) >> 64) as usize
    }

    /// Uniform float in `[0, 1)` from the top 53 bits.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
}

/// A point of `sigma` with barycentric denominator at most `denom_bound`.
pub fn random_point_in(
    complex: &SimplicialComplex,
    sigma: &Simplex,
    denom_bound: u32,
    rng: &mut WordRng,
) -> Point {
    let d = 1 + rng.below(denom_bound.max(1) as usize);
    let mut cuts: Vec<usize> = (0..sigma.dim()).map(|_| rng.below(d + 1)).collect();
    cuts.sort_unstable();
    let mut weights = Vec::with_capacity(sigma.vertices().len());
    let mut prev = 0;
    for c in cuts.into_iter().chain(std::iter::once(d)) {
        weights.push(Scalar::new(BigInt::from(c - prev), BigInt::from(d)));
        prev = c;
    }
    complex.affine_combination(sigma, &weights)
}

/// The points visited by a `steps`-long walk from the basepoint (basepoint
/// excluded).
fn walk(
    complex: &SimplicialComplex,
    steps: usize,
    denom_bound: u32,
    rng: &mut WordRng,
) -> Vec<Point> {
    let mut current = complex.basepoint().clone();
    let mut out = Vec::with_capacity(steps);
    for _ in 0..steps {
        let star = complex.star(&current).expect("walk stays in the complex");
        let sigma = &star[rng.below(star.len())];
        current = random_point_in(complex, sigma, denom_bound, rng);
        out.push(current.clone());
    }
    out
}

/// Points leading from `from` back to the basepoint (`from` excluded).
fn return_leg(complex: &SimplicialComplex, from: &Point) -> Vec<Point> {
    let base = complex.basepoint_index();
    if from == complex.basepoint() {
        return Vec::new();
    }
    let carriers = complex
        .carrier_indices(from)
        .expect("point has ambient dimension");
    let carrier = &complex.simplices()[carriers[0]];
    let start = carrier.vertices()[0];
    let mut out = Vec::new();
    if complex.vertex(start) != from {
        out.push(complex.vertex(start).clone());
    }
    out.extend(
        complex.vertex_path(start, base)[1..]
            .iter()
            .map(|&v| complex.vertex(v).clone()),
    );
    out
}

fn assemble(complex: &Arc<SimplicialComplex>, walk: &[Point], kind: WordKind) -> PlWord {
    let mut points = Vec::with_capacity(walk.len() + 4);
    points.push(complex.basepoint().clone());
    points.extend_from_slice(walk);
    if kind == WordKind::Loop {
        let last = points.last().expect("nonempty").clone();
        points.extend(return_leg(complex, &last));
    }
    make_word(complex, points, kind).expect("generated words are valid")
}

/// Random walk of `steps` points closed up through the 1-skeleton.
pub fn random_loop(
    complex: &Arc<SimplicialComplex>,
    steps: usize,
    seed: u64,
    denom_bound: u32,
) -> PlWord {
    random_loop_with(complex, steps, denom_bound, &mut WordRng::new(seed))
}

pub fn random_loop_with(
    complex: &Arc<SimplicialComplex>,
    steps: usize,
    denom_bound: u32,
    rng: &mut WordRng,
) -> PlWord {
    let points = walk(complex, steps, denom_bound, rng);
    assemble(complex, &points, WordKind::Loop)
}

pub fn random_path_with(
    complex: &Arc<SimplicialComplex>,
    steps: usize,
    denom_bound: u32,
    rng: &mut WordRng,
) -> PlWord {
    let points = walk(complex, steps, denom_bound, rng);
    assemble(complex, &points, WordKind::Path)
}

/// A random word of the given kind with at most `max_len` points.
///
/// Draws a walk of `below(max_len)` steps, then keeps the longest prefix of
/// the walk whose closed-up word fits.
pub fn random_bounded(
    complex: &Arc<SimplicialComplex>,
    kind: WordKind,
    max_len: usize,
    denom_bound: u32,
    rng: &mut WordRng,
) -> PlWord {
    assert!(max_len >= 1, "words have at least one point");
    let steps = rng.below(max_len);
    let points = walk(complex, steps, denom_bound, rng);
    (0..=steps)
        .rev()
        .map(|k| assemble(complex, &points[..k], kind))
        .find(|w| w.len() <= max_len)
        .expect("the empty walk fits")
}

/// A random point of the star of `x`.
pub fn random_point_in_star(
    complex: &SimplicialComplex,
    x: &Point,
    denom_bound: u32,
    rng: &mut WordRng,
) -> Point {
    let star = complex.star(x).expect("x lies in the complex");
    let sigma = &star[rng.below(star.len())];
    random_point_in(complex, sigma, denom_bound, rng)
}

/// Inserts a flare `p, q, p` at a random vertex `p` of `word`, with `q`
/// drawn from the star of `p`.
pub fn insert_flare(word: &PlWord, denom_bound: u32, rng: &mut WordRng) -> PlWord {
    let complex = word.complex();
    let i = rng.below(word.len());
    let p = word.points()[i].clone();
    let q = random_point_in_star(complex, &p, denom_bound, rng);
    let mut points = word.points().to_vec();
    points.splice(i + 1..i + 1, [q, p]);
    make_word(complex, points, word.kind()).expect("flares keep words valid")
}

/// Inserts a point strictly inside a random segment of `word`. On a
/// degenerate segment the inserted point repeats its ends.
pub fn insert_between(word: &PlWord, denom_bound: u32, rng: &mut WordRng) -> PlWord {
    let complex = word.complex();
    let points = word.points();
    let i = rng.below(points.len().saturating_sub(1).max(1));
    let j = (i + 1).min(points.len() - 1);
    let d = 2 + rng.below(denom_bound.max(1) as usize);
    let k = 1 + rng.below(d - 1);
    let t = Scalar::new(BigInt::from(k), BigInt::from(d));
    let (a, b) = (&points[i], &points[j]);
    let mid = Point::new(
        a.coords()
            .iter()
            .zip(b.coords())
            .map(|(x, y)| x + (y - x) * &t)
            .collect(),
    );
    let mut out = points.to_vec();
    out.insert(i + 1, mid);
    make_word(complex, out, word.kind()).expect("points on a segment keep words valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn splitmix_reference_outputs() {
        // first outputs of SplitMix64 seeded with 1234567
        let mut rng = WordRng::new(1234567);
        assert_eq!(rng.next_u64(), 6457827717110365317);
        assert_eq!(rng.next_u64(), 3203168211198807973);
    }

    #[test]
    fn zero_steps_is_constant() {
        let c = Arc::new(fixtures::hollow3());
        let w = random_loop(&c, 0, 1, 3);
        assert_eq!(w, PlWord::constant(&c, WordKind::Loop));
    }

    #[test]
    fn same_seed_same_word() {
        let c = Arc::new(fixtures::filled3());
        assert_eq!(random_loop(&c, 9, 42, 4), random_loop(&c, 9, 42, 4));
        assert_ne!(random_loop(&c, 9, 42, 4), random_loop(&c, 9, 43, 4));
    }

    #[test]
    fn generated_words_validate() {
        for (_, c) in fixtures::all() {
            let mut rng = WordRng::new(7);
            for _ in 0..200 {
                let w = random_loop_with(&c, 6, 3, &mut rng);
                assert!(make_word(&c, w.points().to_vec(), WordKind::Loop).is_ok());
                let p = random_bounded(&c, WordKind::Path, 8, 2, &mut rng);
                assert!(p.len() <= 8);
                let l = random_bounded(&c, WordKind::Loop, 8, 2, &mut rng);
                assert!(l.len() <= 8);
            }
        }
    }

    #[test]
    fn mutations_grow_by_fixed_amounts() {
        let c = Arc::new(fixtures::filled3());
        let mut rng = WordRng::new(11);
        for _ in 0..100 {
            let w = random_loop_with(&c, 4, 3, &mut rng);
            assert_eq!(insert_flare(&w, 3, &mut rng).len(), w.len() + 2);
            assert_eq!(insert_between(&w, 3, &mut rng).len(), w.len() + 1);
        }
    }

    #[test]
    fn points_respect_denominator_bound() {
        let c = fixtures::filled3();
        let abc = c.simplex(&["A", "B", "C"]).unwrap();
        let mut rng = WordRng::new(3);
        for _ in 0..100 {
            let p = random_point_in(&c, &abc, 4, &mut rng);
            let lambda = c.barycentric(&p, &abc).unwrap();
            assert!(lambda.iter().all(|l| *l.denom() <= BigInt::from(4)));
            assert!(!c.locate(&p).unwrap().is_empty());
        }
    }
}
