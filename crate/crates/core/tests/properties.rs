use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use thinloop::bundle::{contraction, lift};
use thinloop::geometry::collinear;
use thinloop::random::{
    insert_between, insert_flare, random_bounded, random_path_with, random_point_in,
    random_point_in_star, WordRng,
};
use thinloop::thin::{self, is_reduced, milnor_reduce, reduce_all_orders, w_reduce};
use thinloop::{
    act, between, core, cyclic_core, fixtures, local_triv, local_triv_inv, make_word, path_core,
    PlWord, Point, Scalar, SimplicialComplex, ThinClass, ThinPath, WordKind,
};

fn fixture() -> impl Strategy<Value = Arc<SimplicialComplex>> {
    let all: Vec<Arc<SimplicialComplex>> = fixtures::all().into_iter().map(|(_, c)| c).collect();
    prop::sample::select(all)
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Scalar::new(BigInt::from(n), BigInt::from(d)))
}

fn point2() -> impl Strategy<Value = Point> {
    prop::collection::vec(scalar(), 2).prop_map(Point::new)
}

fn nonzero_scalar() -> impl Strategy<Value = Scalar> {
    scalar().prop_filter("nonzero", |s| *s != Scalar::from_integer(BigInt::from(0)))
}

fn sub(a: &Point, b: &Point) -> Vec<Scalar> {
    a.coords()
        .iter()
        .zip(b.coords())
        .map(|(x, y)| x - y)
        .collect()
}

fn dot(u: &[Scalar], v: &[Scalar]) -> Scalar {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

// Cauchy-Schwarz equality: u and v are parallel iff (u.v)^2 = |u|^2 |v|^2.
fn collinear_oracle(p: &Point, q: &Point, r: &Point) -> bool {
    let (u, v) = (sub(q, p), sub(r, p));
    let uv = dot(&u, &v);
    &uv * &uv == dot(&u, &u) * dot(&v, &v)
}

fn orient(a: &Point, b: &Point, c: &Point) -> Scalar {
    let (u, v) = (sub(b, a), sub(c, a));
    &u[0] * &v[1] - &u[1] * &v[0]
}

// Membership in the closed convex hull of at most three points, in dimension
// at most two, by orientation signs.
fn in_hull_oracle(verts: &[&Point], p: &Point) -> bool {
    let zero = Scalar::from_integer(BigInt::from(0));
    match verts {
        [a] => p == *a,
        [a, b] => collinear_oracle(a, p, b) && dot(&sub(p, a), &sub(p, b)) <= zero,
        [a, b, c] => {
            let s = [orient(a, b, p), orient(b, c, p), orient(c, a, p)];
            s.iter().all(|x| *x >= zero) || s.iter().all(|x| *x <= zero)
        }
        _ => unreachable!("fixtures have dimension at most two"),
    }
}

fn loop_of(c: &Arc<SimplicialComplex>, seed: u64, max_len: usize) -> PlWord {
    random_bounded(c, WordKind::Loop, max_len, 3, &mut WordRng::new(seed))
}

fn class_of(c: &Arc<SimplicialComplex>, seed: u64, max_len: usize) -> ThinClass {
    core(&loop_of(c, seed, max_len)).unwrap()
}

fn concat_points(a: &[Point], b: &[Point]) -> Vec<Point> {
    let mut out = a.to_vec();
    out.extend_from_slice(&b[1..]);
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn collinearity_survives_rescaling(p in point2(), q in point2(), r in point2(), k in nonzero_scalar()) {
        let (kp, kq, kr) = (p.scaled(&k), q.scaled(&k), r.scaled(&k));
        prop_assert_eq!(collinear(&p, &q, &r).unwrap(), collinear(&kp, &kq, &kr).unwrap());
        prop_assert_eq!(between(&p, &q, &r).unwrap(), between(&kp, &kq, &kr).unwrap());
    }

    #[test]
    fn collinearity_matches_oracle_and_is_symmetric(p in point2(), q in point2(), r in point2()) {
        let c = collinear(&p, &q, &r).unwrap();
        prop_assert_eq!(c, collinear_oracle(&p, &q, &r));
        for (a, b, d) in [(&p, &r, &q), (&q, &p, &r), (&q, &r, &p), (&r, &p, &q), (&r, &q, &p)] {
            prop_assert_eq!(collinear(a, b, d).unwrap(), c);
        }
        prop_assert_eq!(between(&p, &q, &r).unwrap(), between(&r, &q, &p).unwrap());
        prop_assert_eq!(between(&p, &q, &r).unwrap(), in_hull_oracle(&[&p, &r], &q));
    }

    #[test]
    fn locate_is_sound_and_complete(c in fixture(), seed in any::<u64>()) {
        let mut rng = WordRng::new(seed);
        let sigma = &c.simplices()[rng.below(c.simplices().len())];
        let p = random_point_in(&c, sigma, 5, &mut rng);
        let found = c.locate(&p).unwrap();
        prop_assert!(found.contains(sigma));
        for s in c.simplices() {
            let verts: Vec<&Point> = s.vertices().iter().map(|&v| c.vertex(v)).collect();
            prop_assert_eq!(found.contains(s), in_hull_oracle(&verts, &p));
        }
    }

    #[test]
    fn arbitrary_points_locate_like_oracle(c in fixture(), coords in prop::collection::vec(scalar(), 2)) {
        let p = Point::new(coords[..c.ambient_dim()].to_vec());
        let found = c.locate(&p).unwrap();
        for s in c.simplices() {
            let verts: Vec<&Point> = s.vertices().iter().map(|&v| c.vertex(v)).collect();
            prop_assert_eq!(found.contains(s), in_hull_oracle(&verts, &p));
        }
    }

    #[test]
    fn uniform_breakpoints_have_constant_speed(c in fixture(), seed in any::<u64>()) {
        let w = loop_of(&c, seed, 12);
        let param = thinloop::uniform_breakpoints(&w);
        let ts = param.breakpoints.breakpoints();
        prop_assert_eq!(ts[0], 0.0);
        prop_assert_eq!(*ts.last().unwrap(), 1.0);
        prop_assert!(ts.windows(2).all(|g| g[0] <= g[1]));
        let gaps: f64 = ts.windows(2).map(|g| g[1] - g[0]).sum();
        prop_assert!((gaps - 1.0).abs() <= 1e-12);
        prop_assert!(thinloop::is_uniform(&w, &param.breakpoints, 1e-9));
        if !w.is_constant() {
            for (g, d) in ts.windows(2).zip(w.chord_lengths()) {
                if g[1] > g[0] {
                    let speed = d / (g[1] - g[0]);
                    prop_assert!((speed - param.total_length).abs() <= 1e-9 * param.total_length);
                }
            }
        }
    }

    #[test]
    fn chord_lengths_obey_triangle_inequality(c in fixture(), seed in any::<u64>()) {
        let w = loop_of(&c, seed, 12);
        let pts = w.points();
        for i in 0..pts.len().saturating_sub(2) {
            let direct = pts[i].dist_sq(&pts[i + 2]);
            let d = |a: &Point, b: &Point| thinloop::scalar::scalar_to_f64(&a.dist_sq(b)).sqrt();
            prop_assert!(thinloop::scalar::scalar_to_f64(&direct).sqrt() <= d(&pts[i], &pts[i + 1]) + d(&pts[i + 1], &pts[i + 2]) + 1e-12);
        }
    }

    #[test]
    fn group_axioms(c in fixture(), sa in any::<u64>(), sb in any::<u64>(), sc in any::<u64>()) {
        let (a, b, d) = (class_of(&c, sa, 12), class_of(&c, sb, 12), class_of(&c, sc, 12));
        let e = ThinClass::identity(&c);
        prop_assert_eq!(a.mul(&b).unwrap().mul(&d).unwrap(), a.mul(&b.mul(&d).unwrap()).unwrap());
        prop_assert_eq!(&a.mul(&e).unwrap(), &a);
        prop_assert_eq!(&e.mul(&a).unwrap(), &a);
        prop_assert!(a.mul(&a.inv()).unwrap().is_identity());
        prop_assert!(a.inv().mul(&a).unwrap().is_identity());
    }

    #[test]
    fn product_matches_core_of_concatenation(c in fixture(), sa in any::<u64>(), sb in any::<u64>()) {
        let (wa, wb) = (loop_of(&c, sa, 10), loop_of(&c, sb, 10));
        let joined = make_word(&c, concat_points(wa.points(), wb.points()), WordKind::Loop).unwrap();
        let product = core(&wa).unwrap().mul(&core(&wb).unwrap()).unwrap();
        prop_assert_eq!(product, core(&joined).unwrap());
    }

    #[test]
    fn core_is_idempotent_and_shortens(c in fixture(), seed in any::<u64>()) {
        let w = loop_of(&c, seed, 14);
        let g = core(&w).unwrap();
        prop_assert_eq!(&core(g.word()).unwrap(), &g);
        prop_assert!(is_reduced(g.word()));
        prop_assert!(g.word().length() <= w.length() * (1.0 + 1e-12) + 1e-12);
        prop_assert!(g.word().len() <= w.len());
    }

    #[test]
    fn thin_moves_preserve_core(c in fixture(), seed in any::<u64>()) {
        let mut rng = WordRng::new(seed);
        let w = random_bounded(&c, WordKind::Loop, 10, 3, &mut rng);
        let g = core(&w).unwrap();
        let mut m = w.clone();
        for _ in 0..3 {
            m = if rng.below(2) == 0 {
                insert_flare(&m, 3, &mut rng)
            } else {
                insert_between(&m, 3, &mut rng)
            };
            prop_assert_eq!(&core(&m).unwrap(), &g);
        }
    }

    #[test]
    fn reduction_is_confluent(c in fixture(), seed in any::<u64>()) {
        let w = loop_of(&c, seed, 8);
        let terminals = reduce_all_orders(&w, 8).unwrap();
        prop_assert_eq!(terminals.len(), 1);
        let g = core(&w).unwrap();
        prop_assert_eq!(terminals.first().unwrap().as_slice(), g.points());
    }

    #[test]
    fn weaker_reductions_sit_below_core(c in fixture(), seed in any::<u64>()) {
        let w = loop_of(&c, seed, 12);
        let g = core(&w).unwrap();
        let m = milnor_reduce(&w);
        let v = w_reduce(&w);
        prop_assert_eq!(&core(&m).unwrap(), &g);
        prop_assert_eq!(&core(&v).unwrap(), &g);
        prop_assert_eq!(milnor_reduce(&m), m);
        prop_assert_eq!(w_reduce(&v), v);
    }

    #[test]
    fn reversal_of_reduced_is_reduced(c in fixture(), seed in any::<u64>()) {
        let g = class_of(&c, seed, 12);
        let mut pts = g.points().to_vec();
        pts.reverse();
        let r = make_word(&c, pts, WordKind::Loop).unwrap();
        prop_assert!(is_reduced(&r));
        let gi = g.inv();
        prop_assert_eq!(r.points(), gi.points());
    }

    #[test]
    fn cyclic_core_is_conjugation_invariant(c in fixture(), sg in any::<u64>(), sa in any::<u64>()) {
        let (g, a) = (class_of(&c, sg, 8), class_of(&c, sa, 8));
        let conj = g.mul(&a).unwrap().mul(&g.inv()).unwrap();
        prop_assert_eq!(cyclic_core(conj.word()).unwrap(), cyclic_core(a.word()).unwrap());
    }

    #[test]
    fn action_preserves_fibers_and_is_free(c in fixture(), sg in any::<u64>(), sp in any::<u64>()) {
        let g = class_of(&c, sg, 8);
        let mut rng = WordRng::new(sp);
        let pw = random_bounded(&c, WordKind::Path, 8, 3, &mut rng);
        let p = path_core(&pw).unwrap();
        let gp = act(&g, &p).unwrap();
        prop_assert_eq!(gp.endpoint(), p.endpoint());
        let joined = make_word(&c, concat_points(g.points(), p.points()), WordKind::Path).unwrap();
        let terminals = reduce_all_orders(&joined, 16).unwrap();
        prop_assert_eq!(terminals.len(), 1);
        prop_assert_eq!(terminals.first().unwrap().as_slice(), gp.points());
        if gp == p {
            prop_assert!(g.is_identity());
        }
    }

    #[test]
    fn action_is_transitive_on_fibers(c in fixture(), sp in any::<u64>(), sg in any::<u64>()) {
        let mut rng = WordRng::new(sp);
        let q = path_core(&random_path_with(&c, 4, 3, &mut rng)).unwrap();
        let h = class_of(&c, sg, 8);
        let p = act(&h, &q).unwrap();
        let mut back = q.points().to_vec();
        back.reverse();
        let loop_word = make_word(&c, concat_points(p.points(), &back), WordKind::Loop).unwrap();
        let g = core(&loop_word).unwrap();
        prop_assert_eq!(&act(&g, &q).unwrap(), &p);
        prop_assert_eq!(g, h);
    }

    #[test]
    fn charts_round_trip(c in fixture(), seed in any::<u64>()) {
        let mut rng = WordRng::new(seed);
        let reference = path_core(&random_path_with(&c, 3, 3, &mut rng)).unwrap();
        let x = reference.endpoint().clone();
        let g = class_of(&c, rng.next_u64(), 8);
        let y = random_point_in_star(&c, &x, 4, &mut rng);
        let p = local_triv(&x, &reference, &g, &y).unwrap();
        prop_assert_eq!(p.endpoint(), &y);
        let (g2, y2) = local_triv_inv(&x, &reference, &p).unwrap();
        prop_assert_eq!(&g2, &g);
        prop_assert_eq!(&y2, &y);
        prop_assert_eq!(local_triv(&x, &reference, &g2, &y2).unwrap(), p);
    }

    #[test]
    fn lifts_end_at_target_and_keep_prefix(c in fixture(), seed in any::<u64>()) {
        let mut rng = WordRng::new(seed);
        let e = path_core(&random_path_with(&c, 4, 3, &mut rng)).unwrap();
        let x = e.endpoint().clone();
        let star = c.star(&x).unwrap();
        let sigma = &star[rng.below(star.len())];
        let q = random_point_in(&c, sigma, 4, &mut rng);
        let stem = &e.points()[..e.points().len() - 1];
        for k in 0..=8 {
            let t = Scalar::new(BigInt::from(k), BigInt::from(8));
            let gamma = Point::new(
                x.coords().iter().zip(q.coords()).map(|(a, b)| a + (b - a) * &t).collect(),
            );
            let l = lift(&e, sigma, &gamma).unwrap();
            prop_assert_eq!(l.endpoint(), &gamma);
            prop_assert!(l.points().starts_with(stem));
            prop_assert!(l.points().len() <= e.points().len() + 1);
        }
        let at_x = lift(&e, sigma, &x).unwrap();
        prop_assert!(thin::eq(&at_x, &e).unwrap());
    }

    #[test]
    fn contraction_reaches_basepoint(c in fixture(), seed in any::<u64>()) {
        let e = path_core(&random_path_with(&c, 5, 3, &mut WordRng::new(seed))).unwrap();
        let steps = contraction(&e);
        prop_assert_eq!(steps.first().unwrap(), &e);
        prop_assert_eq!(steps.last().unwrap(), &ThinPath::trivial(&c));
        prop_assert!(steps.windows(2).all(|s| s[1].points().len() < s[0].points().len()));
    }
}

#[test]
fn winding_separates_powers() {
    let c = Arc::new(fixtures::hollow3());
    let g =
        core(&PlWord::from_vertex_ids(&c, &["A", "B", "C", "A"], WordKind::Loop).unwrap()).unwrap();
    let powers: Vec<ThinClass> = (-5..=5).map(|n| g.pow(n)).collect();
    for (i, p) in powers.iter().enumerate() {
        let n = i as i64 - 5;
        assert_eq!(p.word().len() as i64, 3 * n.abs() + 1);
        for (j, q) in powers.iter().enumerate() {
            assert_eq!(thin::eq(p, q).unwrap(), i == j);
        }
    }
}

#[test]
fn boundary_of_filled_triangle_is_not_thin_trivial() {
    let c = Arc::new(fixtures::filled3());
    let w = PlWord::from_vertex_ids(&c, &["A", "B", "C", "A"], WordKind::Loop).unwrap();
    let g = core(&w).unwrap();
    assert!(!g.is_identity());
    assert_eq!(g.word(), &w);
}
