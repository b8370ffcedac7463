//! Finite simplicial complexes affinely embedded in rational space, and the
//! exact predicates the reduction rules are built on.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{format_scalar, scalar_to_f64, Scalar};

/// A point of the ambient space with exact rational coordinates.
///
/// Points order lexicographically by coordinate value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(Vec<Scalar>);

impl Point {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Point(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| crate::scalar::int(c)).collect())
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(scalar_to_f64).collect()
    }

    /// Scales every coordinate by `factor`.
    pub fn scaled(&self, factor: &Scalar) -> Point {
        Point(self.0.iter().map(|c| c * factor).collect())
    }

    fn minus(&self, other: &Point) -> Vec<Scalar> {
        self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()
    }

    /// Exact squared Euclidean distance.
    pub fn dist_sq(&self, other: &Point) -> Scalar {
        self.minus(other).iter().map(|d| d * d).sum()
    }
}

impl From<Vec<Scalar>> for Point {
    fn from(coords: Vec<Scalar>) -> Self {
        Point(coords)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&format_scalar(c))?;
        }
        f.write_str(")")
    }
}

fn check_dim(expected: usize, p: &Point) -> Result<()> {
    if p.dim() == expected {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected,
            found: p.dim(),
        })
    }
}

/// A simplex given by the sorted indices of its vertices in the owning complex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    vertices: Vec<usize>,
}

impl Simplex {
    fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Simplex { vertices }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.vertices
            .iter()
            .all(|v| other.vertices.binary_search(v).is_ok())
    }
}

/// Input description of a complex: vertices with coordinates, a list of
/// (typically maximal) simplices by vertex id, and a basepoint id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexSpec {
    pub ambient_dim: usize,
    pub vertices: Vec<(String, Point)>,
    pub simplices: Vec<Vec<String>>,
    pub basepoint: String,
}

/// A validated, face-closed simplicial complex with an affine embedding and a
/// basepoint vertex. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    ambient_dim: usize,
    ids: Vec<String>,
    coords: Vec<Point>,
    index: HashMap<String, usize>,
    simplices: Vec<Simplex>,
    adjacency: Vec<Vec<usize>>,
    basepoint: usize,
}

impl SimplicialComplex {
    pub fn build(spec: &ComplexSpec) -> Result<Self> {
        build_complex(spec)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn vertex(&self, v: usize) -> &Point {
        &self.coords[v]
    }

    /// Coordinates of the vertex named `id`.
    pub fn vertex_point(&self, id: &str) -> Option<&Point> {
        self.vertex_index(id).map(|v| &self.coords[v])
    }

    pub fn vertex_ids(&self) -> &[String] {
        &self.ids
    }

    /// All simplices, closed under faces, ordered by dimension then vertices.
    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    /// Looks up the simplex spanned by the named vertices.
    pub fn simplex(&self, ids: &[&str]) -> Option<Simplex> {
        let verts = ids
            .iter()
            .map(|id| self.vertex_index(id))
            .collect::<Option<Vec<_>>>()?;
        let s = Simplex::new(verts);
        self.simplices
            .binary_search_by(|t| cmp_simplex(t, &s))
            .ok()?;
        Some(s)
    }

    pub fn simplex_ids(&self, s: &Simplex) -> Vec<&str> {
        s.vertices.iter().map(|&v| self.ids[v].as_str()).collect()
    }

    /// Vertex-id name such as `"AB"` when ids are single characters; otherwise
    /// ids joined by commas.
    pub fn simplex_name(&self, s: &Simplex) -> String {
        let ids = self.simplex_ids(s);
        if ids.iter().all(|id| id.chars().count() == 1) {
            ids.concat()
        } else {
            ids.join(",")
        }
    }

    pub fn basepoint_index(&self) -> usize {
        self.basepoint
    }

    pub fn basepoint(&self) -> &Point {
        &self.coords[self.basepoint]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    /// Shortest edge path of vertex indices from `from` to `to`, both
    /// included. Breadth-first, visiting neighbours in index order.
    pub fn vertex_path(&self, from: usize, to: usize) -> Vec<usize> {
        let mut prev = vec![usize::MAX; self.ids.len()];
        prev[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                break;
            }
            for &w in &self.adjacency[v] {
                if prev[w] == usize::MAX {
                    prev[w] = v;
                    queue.push_back(w);
                }
            }
        }
        let mut path = vec![to];
        let mut v = to;
        while v != from {
            v = prev[v];
            path.push(v);
        }
        path.reverse();
        path
    }

    fn check(&self, p: &Point) -> Result<()> {
        check_dim(self.ambient_dim, p)
    }

    /// Barycentric coordinates of `p` with respect to the vertices of `s`, in
    /// vertex order, if `p` lies in the affine hull of `s`. The coordinates
    /// sum to one; `p` lies in the closed simplex iff all are nonnegative.
    pub fn barycentric(&self, p: &Point, s: &Simplex) -> Option<Vec<Scalar>> {
        let base = &self.coords[s.vertices[0]];
        let columns: Vec<Vec<Scalar>> = s.vertices[1..]
            .iter()
            .map(|&v| self.coords[v].minus(base))
            .collect();
        let rhs = p.minus(base);
        let mu = solve_columns(&columns, &rhs)?;
        let first = Scalar::one() - mu.iter().sum::<Scalar>();
        let mut lambda = Vec::with_capacity(mu.len() + 1);
        lambda.push(first);
        lambda.extend(mu);
        Some(lambda)
    }

    fn contains(&self, s: &Simplex, p: &Point) -> bool {
        // cheap bounding-box rejection before the exact solve
        for k in 0..self.ambient_dim {
            let c = &p.0[k];
            let mut lo = &self.coords[s.vertices[0]].0[k];
            let mut hi = lo;
            for &v in &s.vertices[1..] {
                let x = &self.coords[v].0[k];
                if x < lo {
                    lo = x;
                }
                if x > hi {
                    hi = x;
                }
            }
            if c < lo || c > hi {
                return false;
            }
        }
        match self.barycentric(p, s) {
            Some(lambda) => lambda.iter().all(|l| !l.is_negative()),
            None => false,
        }
    }

    /// Indices into [`simplices`](Self::simplices) of every closed simplex
    /// containing `p`, ascending.
    pub fn carrier_indices(&self, p: &Point) -> Result<Vec<usize>> {
        self.check(p)?;
        Ok(self
            .simplices
            .iter()
            .enumerate()
            .filter(|(_, s)| self.contains(s, p))
            .map(|(i, _)| i)
            .collect())
    }

    /// Every closed simplex containing `p`; empty iff `p` is not in the complex.
    pub fn locate(&self, p: &Point) -> Result<Vec<Simplex>> {
        Ok(self.collect(self.carrier_indices(p)?))
    }

    pub fn contains_point(&self, p: &Point) -> Result<bool> {
        Ok(!self.carrier_indices(p)?.is_empty())
    }

    /// Simplices containing both `p` and `q`.
    pub fn common_simplices(&self, p: &Point, q: &Point) -> Result<Vec<Simplex>> {
        let a = self.carrier_indices(p)?;
        let b = self.carrier_indices(q)?;
        Ok(self.collect(intersect(&a, &b)))
    }

    /// Whether `p`, `q`, `r` are collinear and lie in one simplex. Repeated
    /// points count as collinear.
    pub fn aligned_in_common_simplex(&self, p: &Point, q: &Point, r: &Point) -> Result<bool> {
        self.check(p)?;
        self.check(q)?;
        self.check(r)?;
        if !collinear(p, q, r)? {
            return Ok(false);
        }
        let a = self.carrier_indices(p)?;
        let b = self.carrier_indices(q)?;
        let c = self.carrier_indices(r)?;
        Ok(!intersect(&intersect(&a, &b), &c).is_empty())
    }

    /// Closed star: every simplex having a carrier of `p` as a face.
    pub fn star(&self, p: &Point) -> Result<Vec<Simplex>> {
        let carriers = self.carrier_indices(p)?;
        if carriers.is_empty() {
            return Err(Error::PointNotInComplex { index: None });
        }
        Ok(self
            .simplices
            .iter()
            .filter(|s| carriers.iter().any(|&c| self.simplices[c].is_face_of(s)))
            .cloned()
            .collect())
    }

    fn collect(&self, idx: Vec<usize>) -> Vec<Simplex> {
        idx.into_iter().map(|i| self.simplices[i].clone()).collect()
    }

    /// The point with barycentric `weights` (one per vertex of `s`, summing to
    /// one) in `s`.
    pub fn affine_combination(&self, s: &Simplex, weights: &[Scalar]) -> Point {
        let mut out = vec![Scalar::zero(); self.ambient_dim];
        for (&v, w) in s.vertices.iter().zip(weights) {
            for (o, c) in out.iter_mut().zip(&self.coords[v].0) {
                *o += w * c;
            }
        }
        Point(out)
    }
}

fn cmp_simplex(a: &Simplex, b: &Simplex) -> std::cmp::Ordering {
    a.vertices
        .len()
        .cmp(&b.vertices.len())
        .then_with(|| a.vertices.cmp(&b.vertices))
}

/// Intersection of two ascending index lists.
pub(crate) fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

pub(crate) fn intersects(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

pub(crate) fn intersects3(a: &[usize], b: &[usize], c: &[usize]) -> bool {
    a.iter()
        .any(|x| b.binary_search(x).is_ok() && c.binary_search(x).is_ok())
}

fn same_dims(p: &Point, q: &Point) -> Result<()> {
    check_dim(p.dim(), q)
}

/// Exact collinearity: every 2x2 minor of the rows `q - p`, `r - p` vanishes.
pub fn collinear(p: &Point, q: &Point, r: &Point) -> Result<bool> {
    same_dims(p, q)?;
    same_dims(p, r)?;
    Ok(collinear_unchecked(p, q, r))
}

pub(crate) fn collinear_unchecked(p: &Point, q: &Point, r: &Point) -> bool {
    let u = q.minus(p);
    let v = r.minus(p);
    for j in 0..u.len() {
        for k in j + 1..u.len() {
            if &u[j] * &v[k] != &u[k] * &v[j] {
                return false;
            }
        }
    }
    true
}

/// Whether `q` lies on the closed segment `[p, r]`.
pub fn between(p: &Point, q: &Point, r: &Point) -> Result<bool> {
    same_dims(p, q)?;
    same_dims(p, r)?;
    Ok(between_unchecked(p, q, r))
}

pub(crate) fn between_unchecked(p: &Point, q: &Point, r: &Point) -> bool {
    if p == r {
        return q == p;
    }
    if !collinear_unchecked(p, q, r) {
        return false;
    }
    let d = r.minus(p);
    let e = q.minus(p);
    let dot: Scalar = d.iter().zip(&e).map(|(a, b)| a * b).sum();
    let norm: Scalar = d.iter().map(|a| a * a).sum();
    !dot.is_negative() && dot <= norm
}

/// Solves `sum_j mu_j * columns[j] = rhs` exactly. Returns `None` when the
/// system is inconsistent. Columns must be linearly independent.
fn solve_columns(columns: &[Vec<Scalar>], rhs: &[Scalar]) -> Option<Vec<Scalar>> {
    let k = columns.len();
    let mut rows: Vec<Vec<Scalar>> = (0..rhs.len())
        .map(|i| {
            let mut row: Vec<Scalar> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    let pivots = row_reduce(&mut rows, k + 1);
    if pivots.last() == Some(&k) {
        return None;
    }
    let mut mu = vec![Scalar::zero(); k];
    for (r, &c) in pivots.iter().enumerate() {
        mu[c] = rows[r][k].clone();
    }
    Some(mu)
}

/// In-place reduced row echelon form over the first `ncols` columns; returns
/// the pivot columns.
fn row_reduce(rows: &mut [Vec<Scalar>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let (pivot, other) = if i < r {
                    let (a, b) = rows.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = rows.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                for (x, p) in other.iter_mut().zip(pivot) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn affinely_independent(points: &[&Point]) -> bool {
    let Some((base, rest)) = points.split_first() else {
        return false;
    };
    let mut rows: Vec<Vec<Scalar>> = rest.iter().map(|p| p.minus(base)).collect();
    let ncols = base.dim();
    row_reduce(&mut rows, ncols).len() == rest.len()
}

/// Validates `spec` and closes its simplices under taking faces.
pub fn build_complex(spec: &ComplexSpec) -> Result<SimplicialComplex> {
    let n = spec.ambient_dim;
    if n == 0 {
        return Err(Error::ZeroAmbientDimension);
    }
    let mut ids = Vec::with_capacity(spec.vertices.len());
    let mut coords = Vec::with_capacity(spec.vertices.len());
    let mut index = HashMap::new();
    for (id, p) in &spec.vertices {
        check_dim(n, p)?;
        if index.insert(id.clone(), ids.len()).is_some() {
            return Err(Error::DuplicateVertexId(id.clone()));
        }
        ids.push(id.clone());
        coords.push(p.clone());
    }

    let mut closed: BTreeSet<Vec<usize>> = (0..ids.len()).map(|v| vec![v]).collect();
    for simplex in &spec.simplices {
        if simplex.is_empty() {
            return Err(Error::EmptySimplex);
        }
        let mut verts = Vec::with_capacity(simplex.len());
        for id in simplex {
            let v = *index
                .get(id)
                .ok_or_else(|| Error::UnknownVertexInSimplex(id.clone()))?;
            verts.push(v);
        }
        let mut sorted = verts.clone();
        sorted.sort_unstable();
        sorted.dedup();
        let pts: Vec<&Point> = verts.iter().map(|&v| &coords[v]).collect();
        if sorted.len() != verts.len() || !affinely_independent(&pts) {
            return Err(Error::AffinelyDependentSimplex(simplex.clone()));
        }
        // every nonempty subset
        let k = sorted.len();
        for mask in 1u64..(1u64 << k) {
            let face: Vec<usize> = (0..k)
                .filter(|b| mask & (1 << b) != 0)
                .map(|b| sorted[b])
                .collect();
            closed.insert(face);
        }
    }
    let mut simplices: Vec<Simplex> = closed.into_iter().map(Simplex::new).collect();
    simplices.sort_by(cmp_simplex);

    let basepoint = *index
        .get(&spec.basepoint)
        .ok_or_else(|| Error::MissingBasepoint(spec.basepoint.clone()))?;

    let mut adjacency = vec![Vec::new(); ids.len()];
    for s in simplices.iter().filter(|s| s.vertices.len() == 2) {
        let (a, b) = (s.vertices[0], s.vertices[1]);
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    for adj in &mut adjacency {
        adj.sort_unstable();
    }
    let mut seen = vec![false; ids.len()];
    seen[basepoint] = true;
    let mut queue = VecDeque::from([basepoint]);
    while let Some(v) = queue.pop_front() {
        for &w in &adjacency[v] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::DisconnectedComplex);
    }

    Ok(SimplicialComplex {
        ambient_dim: n,
        ids,
        coords,
        index,
        simplices,
        adjacency,
        basepoint,
    })
}
