//! Property checks shared by the proptest suite and the acceptance run.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use matchstick::fixtures::load_fixture;
use matchstick::geom::*;
use matchstick::io::{graph_from_str, graph_to_string};
use matchstick::linkage::{build_template, jacobian, residuals, LinkageTemplate, RingSpec};
use matchstick::verify::{crossing_scan, crossing_scan_brute, verify, ToleranceProfile};
use matchstick::{Point, Scalar, UnitGraph};

pub const CASES: u32 = 100;

type Check = std::result::Result<(), TestCaseError>;

fn pt(x: f64, y: f64) -> Point {
    Point::from_f64(x, y)
}

fn close(a: &Point, b: &Point, k: i32) -> bool {
    a.dist(b) < Scalar::tolerance(k)
}

fn template() -> &'static LinkageTemplate {
    static T: OnceLock<LinkageTemplate> = OnceLock::new();
    T.get_or_init(|| build_template(&load_fixture("g2").unwrap()).unwrap())
}

/// Unit segments with random placement; `shared` of them start at an
/// earlier segment's endpoint and `on_edge` start on an earlier segment.
pub fn segment_graph(specs: &[(f64, f64, f64, u8)]) -> UnitGraph {
    let mut v: Vec<Point> = Vec::new();
    let mut e = Vec::new();
    for (i, &(x, y, theta, mode)) in specs.iter().enumerate() {
        let start = match (mode % 4, i) {
            (1, i) if i > 0 => None,
            (2, i) if i > 0 => {
                let (a, b) = e[(x.abs() * 1000.0) as usize % e.len()];
                let (p, q): (&Point, &Point) = (&v[a], &v[b]);
                Some(p.midpoint(q))
            }
            _ => Some(pt(x, y)),
        };
        let s = match start {
            Some(p) => {
                v.push(p);
                v.len() - 1
            }
            None => e.last().map(|&(_, b)| b).unwrap(),
        };
        let dir = Point::new(Scalar::from_f64(theta).cos(), Scalar::from_f64(theta).sin());
        v.push(v[s].add(&dir));
        e.push((s, v.len() - 1));
    }
    UnitGraph::new(v, e, [], BTreeMap::new(), BTreeMap::new()).unwrap()
}

pub fn segments() -> impl Strategy<Value = Vec<(f64, f64, f64, u8)>> {
    prop::collection::vec(
        (
            0.0..6.0f64,
            0.0..6.0f64,
            0.0..std::f64::consts::TAU,
            any::<u8>(),
        ),
        1..200,
    )
}

pub type CircleCase = (f64, f64, f64, f64);

pub fn circle_cases() -> impl Strategy<Value = CircleCase> {
    (-10.0..10.0f64, -10.0..10.0f64, 0.01..1.99f64, 0.0..6.3f64)
}

pub fn circle_law((x, y, d, a): CircleCase) -> Check {
    let c1 = pt(x, y);
    let c2 = c1.add(&Point::new(
        Scalar::from_f64(d) * Scalar::from_f64(a).cos(),
        Scalar::from_f64(d) * Scalar::from_f64(a).sin(),
    ));
    let l = circle_circle_intersect(&c1, &c2, Side::Left).unwrap();
    let r = circle_circle_intersect(&c1, &c2, Side::Right).unwrap();
    for p in [&l, &r] {
        prop_assert!((p.dist(&c1) - 1.0).abs() < Scalar::tolerance(10));
        prop_assert!((p.dist(&c2) - 1.0).abs() < Scalar::tolerance(10));
    }
    prop_assert!(orient(&c1, &c2, &l) > 0.0 && orient(&c1, &c2, &r) < 0.0);
    prop_assert!(close(&reflect(&l, &Line::through(&c1, &c2)), &r, 10));
    Ok(())
}

pub type MotionCase = ([f64; 2], [f64; 2], f64, f64);

pub fn motion_cases() -> impl Strategy<Value = MotionCase> {
    (
        [-20.0..20.0f64, -20.0..20.0f64],
        [-5.0..5.0f64, -5.0..5.0f64],
        -7.0..7.0f64,
        -7.0..7.0f64,
    )
}

/// Reflection is an involution, rotations compose additively, and two
/// reflections through a common point make a rotation by twice the angle
/// between the lines.
pub fn motion_laws((p, c, a, b): MotionCase) -> Check {
    let (p, c) = (pt(p[0], p[1]), pt(c[0], c[1]));
    let (a, b) = (Scalar::from_f64(a), Scalar::from_f64(b));
    let la = Line::new(c.clone(), a.clone());
    let q = reflect(&p, &la);
    prop_assert!(close(&reflect(&q, &la), &p, 5));
    prop_assert!((la.signed_distance(&q) + la.signed_distance(&p)).abs() < Scalar::tolerance(5));

    let twice = rotate(&rotate(&p, &c, &a), &c, &b);
    prop_assert!(close(&twice, &rotate(&p, &c, &(&a + &b)), 5));
    prop_assert!(close(&rotate(&rotate(&p, &c, &a), &c, &-&a), &p, 5));
    prop_assert!((rotate(&p, &c, &a).dist(&c) - p.dist(&c)).abs() < Scalar::tolerance(5));

    let q = reflect(&reflect(&p, &la), &Line::new(c.clone(), b.clone()));
    prop_assert!(close(&q, &rotate(&p, &c, &((&b - &a) * 2.0)), 5));
    Ok(())
}

pub fn small_segments() -> impl Strategy<Value = Vec<(f64, f64, f64, u8)>> {
    prop::collection::vec(
        (
            0.0..3.0f64,
            0.0..3.0f64,
            0.0..std::f64::consts::TAU,
            any::<u8>(),
        ),
        2..6,
    )
}

pub fn relation_symmetry(specs: Vec<(f64, f64, f64, u8)>) -> Check {
    let g = segment_graph(&specs);
    let tol = Scalar::tolerance(12);
    for (i, &(a, b)) in g.edges().iter().enumerate() {
        for &(c, d) in &g.edges()[i + 1..] {
            let (a, b, c, d) = (g.vertex(a), g.vertex(b), g.vertex(c), g.vertex(d));
            let r = segment_relation(a, b, c, d, &tol).unwrap();
            prop_assert_eq!(r, segment_relation(c, d, a, b, &tol).unwrap());
            prop_assert_eq!(r, segment_relation(b, a, d, c, &tol).unwrap());
        }
    }
    Ok(())
}

pub fn jacobian_cases() -> impl Strategy<Value = (u64, usize)> {
    (any::<u64>(), 0usize..1000)
}

/// Analytic Jacobian column against a central difference with step
/// `10^(-p/2)`, relative tolerance `10^(-p/4)`.
pub fn jacobian_vs_differences((seed, col): (u64, usize)) -> Check {
    use rand::{Rng, SeedableRng};
    let t = template();
    let spec = RingSpec::new(169).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let x: Vec<Scalar> = t
        .initial_state(&spec)
        .iter()
        .map(|v| v + rng.gen_range(-1e-2..1e-2))
        .collect();
    let k = col % x.len();
    let p = matchstick::scalar::precision() as i32;
    let h = Scalar::pow10(-p / 2);
    let (mut xp, mut xm) = (x.clone(), x.clone());
    xp[k] += &h;
    xm[k] -= &h;
    let (rp, rm) = (
        residuals(t, &spec, &xp).unwrap(),
        residuals(t, &spec, &xm).unwrap(),
    );
    let jac = jacobian(t, &spec, &x).unwrap();
    let rel = Scalar::pow10(-p / 4);
    for (i, row) in jac.iter().enumerate() {
        let analytic = row
            .iter()
            .find(|e| e.0 == k)
            .map_or(Scalar::zero(), |e| e.1.clone());
        let fd = (&rp[i] - &rm[i]) / (&h * 2.0);
        let scale = analytic.abs().max(Scalar::one());
        prop_assert!(
            (&fd - &analytic).abs() < &rel * &scale,
            "row {} col {}",
            i,
            k
        );
    }
    Ok(())
}

pub fn scan_equivalence(specs: Vec<(f64, f64, f64, u8)>) -> Check {
    let g = segment_graph(&specs);
    for prof in [ToleranceProfile::solved(), ToleranceProfile::sketch()] {
        prop_assert_eq!(crossing_scan(&g, &prof), crossing_scan_brute(&g, &prof));
    }
    Ok(())
}

pub type FileCase = (Vec<(i64, String, i64, String)>, BTreeMap<String, String>);

pub fn file_cases() -> impl Strategy<Value = FileCase> {
    (
        prop::collection::vec(
            (-99i64..99, "[0-9]{1,50}", -99i64..99, "[0-9]{1,50}"),
            0..40,
        ),
        prop::collection::btree_map("[a-z][a-z0-9.-]{0,10}", "[!-~]([ -~]{0,20}[!-~])?", 0..4),
    )
}

pub fn file_round_trip((coords, meta): FileCase) -> Check {
    let v: Vec<Point> = coords
        .iter()
        .map(|(a, b, c, d)| Point::parse(&format!("{a}.{b}"), &format!("{c}.{d}")).unwrap())
        .collect();
    let n = v.len();
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    let labels = if n > 1 {
        BTreeMap::from([("A".to_string(), 0), ("B".to_string(), n - 1)])
    } else {
        BTreeMap::new()
    };
    let g = UnitGraph::new(v, edges, [], labels, meta).unwrap();
    let text = graph_to_string(&g).unwrap();
    let back = graph_from_str(&text).unwrap();
    prop_assert_eq!(&back, &g);
    prop_assert_eq!(graph_to_string(&back).unwrap(), text);
    Ok(())
}

pub fn thread_independent_reports(specs: Vec<(f64, f64, f64, u8)>) -> Check {
    let g = segment_graph(&specs);
    let prof = ToleranceProfile::solved();
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| verify(&g, &prof).to_json().unwrap())
    };
    prop_assert_eq!(run(1), run(6));
    Ok(())
}
