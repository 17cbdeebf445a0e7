use matchstick::fixtures::load_fixture;
use matchstick::geom::{
    circle_circle_intersect, point_segment_distance, reflect, rotate, segment_relation, Line,
    Point, SegmentRelation, Side,
};
use matchstick::{Error, Scalar, UnitGraph};

fn p(x: f64, y: f64) -> Point {
    Point::from_f64(x, y)
}

fn tol5() -> Scalar {
    Scalar::tolerance(5)
}

fn raw(g: &UnitGraph, id: u32) -> &Point {
    g.vertex(g.vertex_for_source(id).unwrap())
}

#[test]
fn rotation_fixed_point_and_quarter_turn() {
    let o = Point::origin();
    assert_eq!(rotate(&o, &o, &Scalar::from_f64(1.234)), o);
    let q = rotate(&p(1.0, 0.0), &o, &(Scalar::pi() / 2.0));
    assert!(q.dist(&p(0.0, 1.0)) < tol5());
}

#[test]
fn n_rotations_close_up() {
    let c = p(3.5, -0.25);
    let x = p(-1.0, 2.0);
    let n = 169;
    let w = Scalar::pi() * 2.0 / Scalar::from_i64(n);
    let mut y = x.clone();
    for _ in 0..n {
        y = rotate(&y, &c, &w);
        assert!((y.dist(&c) - x.dist(&c)).abs() < tol5());
    }
    assert!(y.dist(&x) < tol5());
}

#[test]
fn g2_rails_meet_at_the_ring_angle() {
    let g = load_fixture("g2").unwrap();
    let ids = g.require_labels(&["A", "C", "D", "F"]).unwrap();
    let (a, c, d, f) = (
        g.vertex(ids[0]),
        g.vertex(ids[1]),
        g.vertex(ids[2]),
        g.vertex(ids[3]),
    );
    let g1 = Line::through(a, f);
    let g2 = Line::through(c, d);
    // apex O = g1 ∩ g2
    let (u, v) = (f.sub(a), d.sub(c));
    let t = c.sub(a).cross(&v) / u.cross(&v);
    let o = a.add(&u.scale(&t));
    let w = Scalar::pi() * 2.0 / Scalar::from_i64(169);
    // the next copy's A is this copy's C
    let a_next = rotate(a, &o, &w);
    assert!(g2.signed_distance(&a_next).abs() < Scalar::from_f64(1e-12));
    assert!(
        a_next.dist(c) < Scalar::from_f64(1e-12),
        "{}",
        a_next.dist(c).to_digits(3)
    );
    let c_prev = rotate(c, &o, &-w);
    assert!(g1.signed_distance(&c_prev).abs() < Scalar::from_f64(1e-12));
}

#[test]
fn reflection_examples() {
    let x_axis = Line::x_axis();
    assert!(reflect(&p(0.0, 1.0), &x_axis).dist(&p(0.0, -1.0)) < tol5());
    let on = p(2.5, 0.0);
    assert!(reflect(&on, &x_axis).dist(&on) < tol5());

    let g = load_fixture("g2").unwrap();
    let be = Line::through(raw(&g, 3), raw(&g, 37));
    let img = reflect(raw(&g, 17), &be);
    // table rounding puts the pair ~5e-15 apart
    assert!(img.dist(raw(&g, 52)) < Scalar::from_f64(1e-13));
}

#[test]
fn circle_intersection_examples() {
    let h = Scalar::from_i64(3).sqrt() / 2.0;
    let up = circle_circle_intersect(&p(0.0, 0.0), &p(1.0, 0.0), Side::Left).unwrap();
    assert!(up.dist(&Point::new(Scalar::from_f64(0.5), h.clone())) < tol5());
    let down = circle_circle_intersect(&p(0.0, 0.0), &p(1.0, 0.0), Side::Right).unwrap();
    assert!(down.dist(&Point::new(Scalar::from_f64(0.5), -h)) < tol5());

    let g = load_fixture("g2").unwrap();
    let (c1, c2, target) = (raw(&g, 2), raw(&g, 17), raw(&g, 16));
    let side = if matchstick::geom::orient(c1, c2, target) > 0.0 {
        Side::Left
    } else {
        Side::Right
    };
    let q = circle_circle_intersect(c1, c2, side).unwrap();
    assert!(q.dist(target) < Scalar::from_f64(1e-14));
}

#[test]
fn circle_intersection_errors() {
    assert!(matches!(
        circle_circle_intersect(&p(1.0, 1.0), &p(1.0, 1.0), Side::Left),
        Err(Error::DegenerateCenters { .. })
    ));
    assert!(matches!(
        circle_circle_intersect(&p(0.0, 0.0), &p(2.0, 0.0), Side::Left),
        Err(Error::NoIntersection { .. })
    ));
    assert!(matches!(
        circle_circle_intersect(&p(0.0, 0.0), &p(3.0, 0.0), Side::Right),
        Err(Error::NoIntersection { .. })
    ));
}

#[test]
fn segment_relation_examples() {
    let inc = Scalar::from_f64(1e-12);
    let rel = |a: (f64, f64), b: (f64, f64), c: (f64, f64), d: (f64, f64)| {
        segment_relation(&p(a.0, a.1), &p(b.0, b.1), &p(c.0, c.1), &p(d.0, d.1), &inc).unwrap()
    };
    assert_eq!(
        rel((0., 0.), (1., 0.), (0., 1.), (1., 1.)),
        SegmentRelation::Disjoint
    );
    assert_eq!(
        rel((0., 0.), (1., 1.), (0., 1.), (1., 0.)),
        SegmentRelation::ProperCrossing
    );
    assert_eq!(
        rel((0., 0.), (2., 0.), (1., 0.), (1., 1.)),
        SegmentRelation::EndpointOnInterior
    );
    assert_eq!(
        rel((0., 0.), (1., 0.), (1., 0.), (1., 1.)),
        SegmentRelation::SharedEndpoint
    );
    assert_eq!(
        rel((0., 0.), (2., 0.), (1., 0.), (3., 0.)),
        SegmentRelation::CollinearOverlap
    );
    let z = p(0.0, 0.0);
    assert!(matches!(
        segment_relation(&z, &z, &p(0.0, 1.0), &p(1.0, 1.0), &inc),
        Err(Error::DegenerateSegment)
    ));
}

#[test]
fn point_segment_distance_examples() {
    let d = point_segment_distance(&p(0.0, 1.0), &p(-1.0, 0.0), &p(1.0, 0.0)).unwrap();
    assert!((d - 1.0).abs() < tol5());
    let a = p(0.3, 0.7);
    assert!(point_segment_distance(&a, &a, &p(1.0, 1.0))
        .unwrap()
        .is_zero());
    assert!(matches!(
        point_segment_distance(&a, &a, &a),
        Err(Error::DegenerateSegment)
    ));

    let g = load_fixture("g1").unwrap();
    let d = point_segment_distance(raw(&g, 42), raw(&g, 58), raw(&g, 61)).unwrap();
    assert!(d < 1e-12, "{}", d.to_digits(3));
}
