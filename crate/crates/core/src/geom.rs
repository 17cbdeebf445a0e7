//! Planar kernel over [`Scalar`]: points, lines, rigid motions, unit-circle
//! intersection and segment classification.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: Scalar,
    pub y: Scalar,
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.x, self.y)
    }
}

impl Point {
    pub fn new(x: Scalar, y: Scalar) -> Self {
        Point { x, y }
    }

    pub fn origin() -> Self {
        Point::new(Scalar::zero(), Scalar::zero())
    }

    pub fn from_f64(x: f64, y: f64) -> Self {
        Point::new(Scalar::from_f64(x), Scalar::from_f64(y))
    }

    pub fn parse(x: &str, y: &str) -> Result<Self> {
        Ok(Point::new(Scalar::parse(x)?, Scalar::parse(y)?))
    }

    pub fn canonical(&self) -> Point {
        Point::new(self.x.canonical(), self.y.canonical())
    }

    pub fn to_f64(&self) -> [f64; 2] {
        [self.x.to_f64(), self.y.to_f64()]
    }

    pub fn add(&self, o: &Point) -> Point {
        Point::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn sub(&self, o: &Point) -> Point {
        Point::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn scale(&self, s: &Scalar) -> Point {
        Point::new(&self.x * s, &self.y * s)
    }

    pub fn dot(&self, o: &Point) -> Scalar {
        &self.x * &o.x + &self.y * &o.y
    }

    /// z-component of the 2D cross product.
    pub fn cross(&self, o: &Point) -> Scalar {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn norm2(&self) -> Scalar {
        self.dot(self)
    }

    pub fn norm(&self) -> Scalar {
        self.norm2().sqrt()
    }

    pub fn dist2(&self, o: &Point) -> Scalar {
        self.sub(o).norm2()
    }

    pub fn dist(&self, o: &Point) -> Scalar {
        self.dist2(o).sqrt()
    }

    pub fn midpoint(&self, o: &Point) -> Point {
        Point::new((&self.x + &o.x) / 2.0, (&self.y + &o.y) / 2.0)
    }

    /// Polar angle of the vector, in (-pi, pi].
    pub fn angle(&self) -> Scalar {
        self.y.atan2(&self.x)
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

/// Orientation of `c` relative to the directed line `a -> b` (twice the
/// signed triangle area; positive means counterclockwise).
pub fn orient(a: &Point, b: &Point, c: &Point) -> Scalar {
    b.sub(a).cross(&c.sub(a))
}

/// Counterclockwise angle from ray `apex -> a` to ray `apex -> c`, in radians in [0, 2pi).
pub fn ccw_angle(a: &Point, apex: &Point, c: &Point) -> Scalar {
    let u = a.sub(apex);
    let v = c.sub(apex);
    let mut t = u.cross(&v).atan2(&u.dot(&v));
    if t.is_sign_negative() {
        t += Scalar::pi() * 2.0;
    }
    t
}

/// A line through `anchor` with direction angle in [0, pi).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Line {
    pub anchor: Point,
    pub angle: Scalar,
}

impl Line {
    pub fn new(anchor: Point, angle: Scalar) -> Self {
        let pi = Scalar::pi();
        let mut a = angle;
        while a.is_sign_negative() {
            a += &pi;
        }
        while a >= pi {
            a -= &pi;
        }
        Line { anchor, angle: a }
    }

    pub fn through(a: &Point, b: &Point) -> Self {
        Line::new(a.clone(), b.sub(a).angle())
    }

    pub fn x_axis() -> Self {
        Line::new(Point::origin(), Scalar::zero())
    }

    /// Unit direction vector.
    pub fn direction(&self) -> Point {
        let (s, c) = self.angle.sin_cos();
        Point::new(c, s)
    }

    /// Unit normal, rotated +90 degrees from the direction.
    pub fn normal(&self) -> Point {
        let (s, c) = self.angle.sin_cos();
        Point::new(-s, c)
    }

    /// Signed distance, positive on the left of the direction.
    pub fn signed_distance(&self, p: &Point) -> Scalar {
        p.sub(&self.anchor).dot(&self.normal())
    }

    pub fn project(&self, p: &Point) -> Point {
        let d = self.direction();
        let t = p.sub(&self.anchor).dot(&d);
        self.anchor.add(&d.scale(&t))
    }
}

pub fn rotate(pt: &Point, center: &Point, angle: &Scalar) -> Point {
    let (s, c) = angle.sin_cos();
    rotate_sc(pt, center, &s, &c)
}

/// Rotation with a precomputed sine/cosine pair.
pub fn rotate_sc(pt: &Point, center: &Point, sin: &Scalar, cos: &Scalar) -> Point {
    let d = pt.sub(center);
    Point::new(
        &center.x + &(&d.x * cos) - &(&d.y * sin),
        &center.y + &(&d.x * sin) + &(&d.y * cos),
    )
}

pub fn reflect(pt: &Point, axis: &Line) -> Point {
    let n = axis.normal();
    let s = pt.sub(&axis.anchor).dot(&n);
    pt.sub(&n.scale(&(s * 2.0)))
}

/// Which side of the directed center pair to take.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    /// Counterclockwise (left) of `c1 -> c2`.
    Left,
    /// Clockwise (right) of `c1 -> c2`.
    Right,
}

impl Side {
    pub fn sign(self) -> f64 {
        match self {
            Side::Left => 1.0,
            Side::Right => -1.0,
        }
    }
}

/// The point at unit distance from both centers on the requested side.
pub fn circle_circle_intersect(c1: &Point, c2: &Point, side: Side) -> Result<Point> {
    let tol = Scalar::tolerance(5);
    let d = c1.dist(c2);
    if d <= tol {
        return Err(Error::DegenerateCenters {
            distance: d.to_f64(),
        });
    }
    if Scalar::from_i64(2) - &d <= tol {
        return Err(Error::NoIntersection {
            distance: d.to_f64(),
        });
    }
    let mid = c1.midpoint(c2);
    let half = &d / 2.0;
    let h = (Scalar::one() - half.square()).sqrt();
    let u = c2.sub(c1).scale(&(Scalar::one() / &d));
    let left = Point::new(-&u.y, u.x.clone());
    Ok(mid.add(&left.scale(&(h * side.sign()))))
}

/// Classification of a pair of closed segments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SegmentRelation {
    Disjoint,
    ProperCrossing,
    SharedEndpoint,
    EndpointOnInterior,
    CollinearOverlap,
}

/// Classifies segments `ab` and `cd`. Endpoints closer than `incidence`
/// count as shared, an endpoint within `incidence` of the other segment
/// counts as lying on it.
pub fn segment_relation(
    a: &Point,
    b: &Point,
    c: &Point,
    d: &Point,
    incidence: &Scalar,
) -> Result<SegmentRelation> {
    let degenerate = Scalar::tolerance(5);
    if a.dist(b) <= degenerate || c.dist(d) <= degenerate {
        return Err(Error::DegenerateSegment);
    }
    let close = |p: &Point, q: &Point| p.dist(q) <= *incidence;
    let shared = [(a, c), (a, d), (b, c), (b, d)]
        .iter()
        .filter(|(p, q)| close(p, q))
        .count();

    let on_cd = |p: &Point| point_segment_distance_unchecked(p, c, d) <= *incidence;
    let on_ab = |p: &Point| point_segment_distance_unchecked(p, a, b) <= *incidence;

    if shared > 0 {
        // An endpoint not taking part in the shared pair that still lies on
        // the other segment means the two overlap along a line.
        let a_sh = close(a, c) || close(a, d);
        let b_sh = close(b, c) || close(b, d);
        let c_sh = close(c, a) || close(c, b);
        let d_sh = close(d, a) || close(d, b);
        let overlap = (!a_sh && on_cd(a))
            || (!b_sh && on_cd(b))
            || (!c_sh && on_ab(c))
            || (!d_sh && on_ab(d));
        if overlap || shared >= 2 {
            return Ok(SegmentRelation::CollinearOverlap);
        }
        return Ok(SegmentRelation::SharedEndpoint);
    }

    let touching = [on_cd(a), on_cd(b), on_ab(c), on_ab(d)]
        .iter()
        .filter(|&&t| t)
        .count();
    if touching >= 2 {
        return Ok(SegmentRelation::CollinearOverlap);
    }
    if touching == 1 {
        return Ok(SegmentRelation::EndpointOnInterior);
    }

    let o1 = orient(a, b, c).signum();
    let o2 = orient(a, b, d).signum();
    let o3 = orient(c, d, a).signum();
    let o4 = orient(c, d, b).signum();
    if o1 * o2 < 0 && o3 * o4 < 0 {
        Ok(SegmentRelation::ProperCrossing)
    } else {
        Ok(SegmentRelation::Disjoint)
    }
}

/// Euclidean distance from `p` to the closed segment `ab`.
pub fn point_segment_distance(p: &Point, a: &Point, b: &Point) -> Result<Scalar> {
    if a.dist(b) <= Scalar::tolerance(5) {
        return Err(Error::DegenerateSegment);
    }
    Ok(point_segment_distance_unchecked(p, a, b))
}

pub(crate) fn point_segment_distance_unchecked(p: &Point, a: &Point, b: &Point) -> Scalar {
    let ab = b.sub(a);
    let ap = p.sub(a);
    let t = ap.dot(&ab);
    if t <= 0.0 {
        return ap.norm();
    }
    let len2 = ab.norm2();
    if t >= len2 {
        return p.dist(b);
    }
    // perpendicular distance
    (ab.cross(&ap).abs()) / len2.sqrt()
}

/// Segment-to-segment distance in f64, for prefiltering only.
pub(crate) fn segment_distance_f64(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]) -> f64 {
    fn orient(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
        (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    }
    let (o1, o2, o3, o4) = (
        orient(a, b, c),
        orient(a, b, d),
        orient(c, d, a),
        orient(c, d, b),
    );
    if o1 * o2 < 0.0 && o3 * o4 < 0.0 {
        return 0.0;
    }
    point_segment_distance_f64(a, c, d)
        .min(point_segment_distance_f64(b, c, d))
        .min(point_segment_distance_f64(c, a, b))
        .min(point_segment_distance_f64(d, a, b))
}

pub(crate) fn point_segment_distance_f64(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let ab = [b[0] - a[0], b[1] - a[1]];
    let ap = [p[0] - a[0], p[1] - a[1]];
    let len2 = ab[0] * ab[0] + ab[1] * ab[1];
    let t = if len2 > 0.0 {
        ((ap[0] * ab[0] + ap[1] * ab[1]) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let q = [a[0] + t * ab[0] - p[0], a[1] + t * ab[1] - p[1]];
    (q[0] * q[0] + q[1] * q[1]).sqrt()
}
