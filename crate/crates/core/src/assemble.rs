//! Building full graphs from solved pieces: mirror closure, rings, adapters
//! and open chains.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::geom::{orient, reflect, rotate_sc, Line, Point};
use crate::graph::{meta_keys, unit_three_cycles, UnitGraph, DEDUP_TOLERANCE};
use crate::linkage::RingSpec;
use crate::scalar::Scalar;
use crate::spatial::{close_point_pairs, Grid};

/// Tolerance for coordinates that must coincide exactly, `10^(8-p)`.
pub fn merge_tolerance() -> Scalar {
    Scalar::tolerance(8)
}

fn mirror_y(p: &Point) -> Point {
    Point::new(p.x.clone(), -&p.y)
}

/// Rebuilds a mirror-symmetric subgraph from its upper half (axis along the
/// x-axis). Axis vertices are shared between the halves. A half produced by
/// the solver carries a `mirror-map` that restores the source numbering;
/// otherwise reflected vertices are appended after the half.
pub fn mirror_close(half: &UnitGraph) -> Result<UnitGraph> {
    let n = half.num_vertices();
    let layout: Vec<(usize, bool)> = match half.meta_value("mirror-map") {
        Some(m) => m
            .split_whitespace()
            .map(|t| {
                let (k, refl) = match t.strip_suffix('\'') {
                    Some(k) => (k, true),
                    None => (t, false),
                };
                k.parse::<usize>()
                    .ok()
                    .filter(|&k| k < n)
                    .map(|k| (k, refl))
            })
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::SeamMismatch("malformed mirror-map".into()))?,
        None => {
            let tol = merge_tolerance();
            let mut l: Vec<(usize, bool)> = (0..n).map(|k| (k, false)).collect();
            l.extend(
                (0..n)
                    .filter(|&k| half.vertex(k).y.abs() > tol)
                    .map(|k| (k, true)),
            );
            l
        }
    };
    let mut plain = vec![usize::MAX; n];
    let mut mirrored = vec![usize::MAX; n];
    for (i, &(k, refl)) in layout.iter().enumerate() {
        if refl {
            mirrored[k] = i;
        } else {
            plain[k] = i;
        }
    }
    if plain.contains(&usize::MAX) {
        return Err(Error::SeamMismatch(
            "mirror-map does not cover every half vertex".into(),
        ));
    }
    let axis: Vec<usize> = (0..n).filter(|&k| mirrored[k] == usize::MAX).collect();
    if axis.is_empty() {
        return Err(Error::SeamMismatch(
            "half has no axis vertices to glue along".into(),
        ));
    }
    for k in 0..n {
        if mirrored[k] == usize::MAX {
            mirrored[k] = plain[k];
        }
    }

    let vertices: Vec<Point> = layout
        .iter()
        .map(|&(k, refl)| {
            if refl {
                mirror_y(half.vertex(k))
            } else {
                half.vertex(k).clone()
            }
        })
        .collect();
    let mut edges = Vec::new();
    for &(u, v) in half.edges() {
        edges.push((plain[u], plain[v]));
        edges.push((mirrored[u], mirrored[v]));
    }
    if let Some(cross) = half.meta_value("mirror-cross-edges") {
        for t in cross.split_whitespace() {
            let (u, v) = t
                .split_once('-')
                .and_then(|(a, b)| Some((a.parse::<usize>().ok()?, b.parse::<usize>().ok()?)))
                .filter(|&(u, v)| u < n && v < n)
                .ok_or_else(|| Error::SeamMismatch(format!("malformed cross edge {t:?}")))?;
            edges.push((plain[u], mirrored[v]));
            edges.push((mirrored[u], plain[v]));
        }
    }
    edges.retain(|e| e.0 != e.1);

    let unit_tol = Scalar::tolerance(10);
    for &(a, b) in &edges {
        let d = (vertices[a].dist(&vertices[b]) - 1.0).abs();
        if d > unit_tol {
            return Err(Error::SeamMismatch(format!(
                "edge ({a}, {b}) misses unit length by {}",
                d.to_digits(3)
            )));
        }
    }

    let labels: BTreeMap<String, usize> = match half.meta_value("full-labels") {
        Some(s) => s
            .split_whitespace()
            .filter_map(|t| {
                let (k, v) = t.split_once(':')?;
                Some((k.to_string(), v.parse().ok()?))
            })
            .collect(),
        None => half
            .labels()
            .iter()
            .map(|(k, &v)| (k.clone(), plain[v]))
            .collect(),
    };
    let mut meta = half.meta().clone();
    meta.remove("mirror-map");
    meta.remove("mirror-cross-edges");
    meta.remove("full-labels");
    let g = UnitGraph::new(vertices, edges, Vec::new(), labels, meta)?;
    let tris = unit_three_cycles(&g, &unit_tol);
    let (v, e, _, l, m) = g.into_parts();
    UnitGraph::new(v, e, tris, l, m)
}

fn apex_of(base: &UnitGraph, spec: &RingSpec) -> Result<Point> {
    if let Some(a) = &spec.apex {
        return Ok(a.clone());
    }
    let x = base
        .meta_value(meta_keys::APEX_X)
        .ok_or_else(|| Error::Invalid("ring apex unknown: base has no apex-x".into()))?;
    let y = base.meta_value(meta_keys::APEX_Y).unwrap_or("0");
    Point::parse(x, y)
}

/// Degree-2 vertices on each rail: `g1` through A and F ordered from A, `g2`
/// through C and D ordered from C.
pub fn rail_sets(g: &UnitGraph) -> Result<(Vec<usize>, Vec<usize>)> {
    let ids = g.require_labels(&["A", "C", "D", "F"])?;
    let (a, c, d, f) = (ids[0], ids[1], ids[2], ids[3]);
    let degrees = g.degrees();
    let tol = Scalar::from_f64(DEDUP_TOLERANCE);
    let collect = |p: usize, q: usize| -> Vec<usize> {
        let line = Line::through(g.vertex(p), g.vertex(q));
        let mut on: Vec<(Scalar, usize)> = (0..g.num_vertices())
            .filter(|&v| degrees[v] == 2 && line.signed_distance(g.vertex(v)).abs() < tol)
            .map(|v| (g.vertex(v).dist(g.vertex(p)), v))
            .collect();
        on.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("finite"));
        on.into_iter().map(|(_, v)| v).collect()
    };
    Ok((collect(a, f), collect(c, d)))
}

/// Direction angle of the line through a rail's end vertices, in [0, π).
pub fn rail_direction(g: &UnitGraph, rail: &[usize]) -> Result<Scalar> {
    let (first, last) = match (rail.first(), rail.last()) {
        (Some(&a), Some(&b)) if a != b => (a, b),
        _ => return Err(Error::Invalid("rail needs at least two vertices".into())),
    };
    Ok(Line::through(g.vertex(first), g.vertex(last)).angle)
}

/// Pairs each g1-rail vertex with the g2-rail vertex it lands on after
/// rotating by ω about the apex.
fn ring_seam(
    base: &UnitGraph,
    apex: &Point,
    sin: &Scalar,
    cos: &Scalar,
) -> Result<Vec<(usize, usize)>> {
    let (g1, g2) = rail_sets(base)?;
    if g1.len() != g2.len() || g1.is_empty() {
        return Err(Error::MergeFailure(format!(
            "rails have {} and {} vertices",
            g1.len(),
            g2.len()
        )));
    }
    let tol = merge_tolerance();
    let mut pairs = Vec::new();
    for &u in &g1 {
        let q = rotate_sc(base.vertex(u), apex, sin, cos);
        let (best, d) = g2
            .iter()
            .map(|&v| (v, base.vertex(v).dist(&q)))
            .min_by(|x, y| x.1.partial_cmp(&y.1).expect("finite"))
            .expect("non-empty rail");
        if d > tol {
            return Err(Error::MergeFailure(format!(
                "rail vertex {u} misses its partner {best} by {} after rotation",
                d.to_digits(3)
            )));
        }
        pairs.push((u, best));
    }
    Ok(pairs)
}

fn check_collisions(vertices: &[Point]) -> Result<()> {
    let pts: Vec<[f64; 2]> = vertices.iter().map(Point::to_f64).collect();
    let tol = Scalar::from_f64(DEDUP_TOLERANCE);
    for (i, j) in close_point_pairs(&pts, DEDUP_TOLERANCE, 1e-9) {
        let d = vertices[i].dist(&vertices[j]);
        if d < tol {
            return Err(Error::UnexpectedCollision(format!(
                "vertices {i} and {j} are {} apart",
                d.to_digits(3)
            )));
        }
    }
    Ok(())
}

/// Union of rotated copies `0..copies` of a solved base about the apex, with
/// seam vertices merged (lowest copy wins). A full ring also closes the seam
/// between the last copy and copy 0.
fn rotate_copies(base: &UnitGraph, spec: &RingSpec, copies: u32, close: bool) -> Result<UnitGraph> {
    let apex = apex_of(base, spec)?;
    let (s1, c1) = spec.omega.sin_cos();
    let seam = ring_seam(base, &apex, &s1, &c1)?;
    let nv = base.num_vertices();
    let mut incoming = vec![None; nv];
    let mut outgoing = vec![None; nv];
    for &(u, v) in &seam {
        incoming[u] = Some(v);
        outgoing[v] = Some(u);
    }
    let tol = merge_tolerance();
    let mut id = vec![vec![usize::MAX; nv]; copies as usize];
    let mut vertices: Vec<Point> = Vec::new();
    let mut positions: Vec<Vec<Point>> = Vec::with_capacity(copies as usize);
    for k in 0..copies as usize {
        let (s, c) = (&spec.omega * &Scalar::from_i64(k as i64)).sin_cos();
        positions.push(
            base.vertices()
                .iter()
                .map(|p| rotate_sc(p, &apex, &s, &c))
                .collect(),
        );
    }
    for k in 0..copies as usize {
        for i in 0..nv {
            let alias = match (incoming[i], outgoing[i]) {
                (Some(v), _) if k > 0 => Some((k - 1, v)),
                (_, Some(u)) if close && k + 1 == copies as usize => Some((0, u)),
                _ => None,
            };
            id[k][i] = match alias {
                Some((kk, j)) if id[kk][j] != usize::MAX => {
                    let d = positions[k][i].dist(&positions[kk][j]);
                    if d > tol {
                        return Err(Error::MergeFailure(format!(
                            "copy {k} vertex {i} misses copy {kk} vertex {j} by {}",
                            d.to_digits(3)
                        )));
                    }
                    id[kk][j]
                }
                _ => {
                    vertices.push(positions[k][i].clone());
                    vertices.len() - 1
                }
            };
        }
    }
    check_collisions(&vertices)?;
    let mut edges = Vec::with_capacity(base.num_edges() * copies as usize);
    let mut tris = Vec::with_capacity(base.triangles().len() * copies as usize);
    for ids in &id {
        edges.extend(base.edges().iter().map(|&(a, b)| (ids[a], ids[b])));
        tris.extend(
            base.triangles()
                .iter()
                .map(|t| [ids[t[0]], ids[t[1]], ids[t[2]]]),
        );
    }
    let expected = base.triangles().len() * copies as usize;
    let mut meta = BTreeMap::new();
    for key in [
        meta_keys::TEMPLATE,
        meta_keys::FIXTURE,
        "precision",
        "solver.residual",
        "solver.sigma-min",
    ] {
        if let Some(v) = base.meta_value(key) {
            meta.insert(key.to_string(), v.to_string());
        }
    }
    meta.insert(
        meta_keys::KIND.into(),
        if close { "ring".into() } else { "piece".into() },
    );
    meta.insert(meta_keys::N.into(), spec.n.to_string());
    meta.insert("copies".into(), copies.to_string());
    meta.insert(meta_keys::APEX_X.into(), apex.x.to_decimal_string());
    meta.insert(meta_keys::APEX_Y.into(), apex.y.to_decimal_string());
    meta.insert("base-vertices".into(), nv.to_string());
    let mut labels = BTreeMap::new();
    if !close {
        for (name, copy) in [
            ("A", 0usize),
            ("F", 0),
            ("C", copies as usize - 1),
            ("D", copies as usize - 1),
        ] {
            if let Some(v) = base.label(name) {
                labels.insert(name.to_string(), id[copy][v]);
            }
        }
    }
    let g = UnitGraph::new(vertices, edges, tris, labels, meta)?;
    if g.triangles().len() != expected {
        return Err(Error::MergeFailure(format!(
            "{} designated triangles after merging, expected {expected}",
            g.triangles().len()
        )));
    }
    Ok(g)
}

/// The closed ring of `spec.n` copies.
pub fn ring_assemble(base: &UnitGraph, spec: &RingSpec) -> Result<UnitGraph> {
    rotate_copies(base, spec, spec.n, true)
}

/// The first `copies` copies of the ring as an open piece, labeled for
/// chaining (A, F from copy 0; C, D from the last copy).
pub fn ring_arc(base: &UnitGraph, spec: &RingSpec, copies: u32) -> Result<UnitGraph> {
    if copies == 0 || copies > spec.n {
        return Err(Error::Invalid(format!(
            "arc of {copies} copies out of {}",
            spec.n
        )));
    }
    rotate_copies(base, spec, copies, false)
}

/// Largest distance from a rotated vertex (by ω about the apex) to the
/// nearest vertex of the graph.
pub fn ring_symmetry_defect(g: &UnitGraph, spec: &RingSpec) -> Result<Scalar> {
    let apex = apex_of(g, spec)?;
    let (s, c) = spec.omega.sin_cos();
    let cell = 0.05;
    let mut grid = Grid::new(cell);
    for (i, p) in g.vertices().iter().enumerate() {
        grid.insert_point(i, p.to_f64());
    }
    let mut worst = Scalar::zero();
    for p in g.vertices() {
        let q = rotate_sc(p, &apex, &s, &c);
        let best = grid
            .near(q.to_f64())
            .into_iter()
            .map(|j| g.vertex(j).dist(&q))
            .min_by(|x, y| x.partial_cmp(y).expect("finite"))
            .unwrap_or_else(|| Scalar::from_f64(cell));
        worst = worst.max(best);
    }
    Ok(worst)
}

/// Adapter built from a G1-family subgraph: every vertex strictly below BE
/// is reflected across g3, the perpendicular bisector of BE, and axis
/// endpoints of its edges move to their g3 partners. The two rails become
/// parallel. Labels C and D trade places.
pub fn make_adapter(base: &UnitGraph) -> Result<UnitGraph> {
    let frame = base.aligned_to_axis()?;
    let e = frame.vertex(frame.label("E").expect("aligned"));
    let g3 = Line::new(Point::new(&e.x / 2.0, Scalar::zero()), Scalar::pi() / 2.0);
    let tol = Scalar::from_f64(DEDUP_TOLERANCE);
    let neg = -&tol;
    let n = frame.num_vertices();
    let below: Vec<bool> = frame.vertices().iter().map(|p| p.y < neg).collect();
    let on_axis: Vec<usize> = (0..n).filter(|&i| frame.vertex(i).y.abs() <= tol).collect();

    let mut g3_partner = vec![usize::MAX; n];
    for &a in &on_axis {
        let q = reflect(frame.vertex(a), &g3);
        let hit = on_axis
            .iter()
            .copied()
            .find(|&b| frame.vertex(b).dist(&q) < tol);
        match hit {
            Some(b) => g3_partner[a] = b,
            None => {
                return Err(Error::AsymmetricFixture(format!(
                    "axis vertex {a} has no partner across g3"
                )))
            }
        }
    }
    let vertices: Vec<Point> = frame
        .vertices()
        .iter()
        .zip(&below)
        .map(|(p, &b)| if b { reflect(p, &g3) } else { p.clone() })
        .collect();
    let remap = |v: usize, other: usize| {
        if below[other] && !below[v] && g3_partner[v] != usize::MAX {
            g3_partner[v]
        } else {
            v
        }
    };
    let edges: Vec<(usize, usize)> = frame
        .edges()
        .iter()
        .map(|&(a, b)| (remap(a, b), remap(b, a)))
        .collect();
    let tris: Vec<[usize; 3]> = frame
        .triangles()
        .iter()
        .map(|t| {
            if t.iter().any(|&v| below[v]) {
                [t[0], t[1], t[2]].map(|v| if below[v] { v } else { g3_partner[v] })
            } else {
                *t
            }
        })
        .collect();
    if tris.iter().any(|t| t.contains(&usize::MAX)) {
        return Err(Error::AsymmetricFixture(
            "a lower triangle touches a vertex off the axis".into(),
        ));
    }
    let mut labels = frame.labels().clone();
    if let (Some(c), Some(d)) = (labels.get("C").copied(), labels.get("D").copied()) {
        labels.insert("C".into(), d);
        labels.insert("D".into(), c);
    }
    let mut meta = frame.meta().clone();
    meta.retain(|k, _| {
        !k.starts_with(meta_keys::PROBE_PREFIX) && k != meta_keys::APEX_X && k != meta_keys::APEX_Y
    });
    meta.insert(meta_keys::KIND.into(), "piece".into());
    meta.insert("adapter".into(), "g4".into());
    UnitGraph::new(vertices, edges, tris, labels, meta)
}

/// Reflection of an adapter across BE, relabeled so that A and F stay on
/// the incoming rail.
pub fn adapter_mirror(g4: &UnitGraph) -> Result<UnitGraph> {
    let frame = g4.aligned_to_axis()?;
    let mut g = frame.map_points(mirror_y);
    let mut labels = g.labels().clone();
    for (x, y) in [("A", "C"), ("F", "D")] {
        if let (Some(a), Some(b)) = (labels.get(x).copied(), labels.get(y).copied()) {
            labels.insert(x.into(), b);
            labels.insert(y.into(), a);
        }
    }
    g.set_labels(labels)?;
    let flipped = if g4.meta_value("adapter") == Some("g5") {
        "g4"
    } else {
        "g5"
    };
    g.set_meta("adapter", flipped);
    Ok(g)
}

/// How a piece enters a chain: `Forward` glues its A/F rail to the previous
/// piece and leaves through C/D; `Reversed` does the opposite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeamOrientation {
    Forward,
    Reversed,
}

impl SeamOrientation {
    fn incoming(self) -> [&'static str; 2] {
        match self {
            SeamOrientation::Forward => ["A", "F"],
            SeamOrientation::Reversed => ["C", "D"],
        }
    }

    fn outgoing(self) -> [&'static str; 2] {
        match self {
            SeamOrientation::Forward => ["C", "D"],
            SeamOrientation::Reversed => ["A", "F"],
        }
    }
}

struct RigidMap {
    reflect: Option<Line>,
    center: Point,
    sin: Scalar,
    cos: Scalar,
    shift: Point,
}

impl RigidMap {
    /// Maps `p1 -> q1`, `p2 -> q2` (assumes |p1p2| = |q1q2|), optionally
    /// reflecting across the line p1p2 first.
    fn new(p1: &Point, p2: &Point, q1: &Point, q2: &Point, reflected: bool) -> Self {
        let theta = q2.sub(q1).angle() - p2.sub(p1).angle();
        let (sin, cos) = theta.sin_cos();
        RigidMap {
            reflect: reflected.then(|| Line::through(p1, p2)),
            center: p1.clone(),
            sin,
            cos,
            shift: q1.sub(p1),
        }
    }

    fn apply(&self, p: &Point) -> Point {
        let p = match &self.reflect {
            Some(l) => reflect(p, l),
            None => p.clone(),
        };
        rotate_sc(&p, &self.center, &self.sin, &self.cos).add(&self.shift)
    }
}

fn centroid(pts: &[Point]) -> Point {
    let n = Scalar::from_i64(pts.len().max(1) as i64);
    let sum = pts.iter().fold(Point::origin(), |acc, p| acc.add(p));
    Point::new(&sum.x / &n, &sum.y / &n)
}

fn seam_vertices(g: &UnitGraph, side: [&str; 2]) -> Result<Vec<usize>> {
    let (g1, g2) = rail_sets(g)?;
    Ok(if side[0] == "A" { g1 } else { g2 })
}

/// Glues pieces end to end. Each piece is moved rigidly so that its
/// incoming seam lands on the previous piece's outgoing seam with its body
/// on the far side; seam vertices merge (earliest piece wins).
pub fn chain_assemble(pieces: &[(UnitGraph, SeamOrientation)]) -> Result<UnitGraph> {
    let (first, first_dir) = pieces
        .first()
        .ok_or_else(|| Error::Invalid("empty chain".into()))?;
    if pieces.len() == 1 {
        return Ok(first.clone());
    }
    let tol = merge_tolerance();
    let mut vertices: Vec<Point> = first.vertices().to_vec();
    let mut edges: Vec<(usize, usize)> = first.edges().to_vec();
    let mut tris: Vec<[usize; 3]> = first.triangles().to_vec();
    let mut prev_ids: Vec<usize> = (0..first.num_vertices()).collect();
    let mut prev_graph = first.clone();
    let mut prev_dir = *first_dir;
    let mut transforms = vec!["identity".to_string()];
    let incoming_first = first.require_labels(&first_dir.incoming())?;

    for (idx, (piece, dir)) in pieces.iter().enumerate().skip(1) {
        let out_seam = seam_vertices(&prev_graph, prev_dir.outgoing())?;
        let in_seam = seam_vertices(piece, dir.incoming())?;
        if out_seam.len() != in_seam.len() {
            return Err(Error::SeamMismatch(format!(
                "piece {idx}: seam has {} vertices, previous piece offers {}",
                in_seam.len(),
                out_seam.len()
            )));
        }
        let qs = prev_graph.require_labels(&prev_dir.outgoing())?;
        let ps = piece.require_labels(&dir.incoming())?;
        let (p1, p2) = (piece.vertex(ps[0]), piece.vertex(ps[1]));
        let prev_centroid = centroid(prev_graph.vertices());
        // the incoming rail may run either way along the outgoing one
        let mut chosen = None;
        let mut closest: Option<Scalar> = None;
        'search: for swapped in [false, true] {
            let (q1, q2) = if swapped {
                (prev_graph.vertex(qs[1]), prev_graph.vertex(qs[0]))
            } else {
                (prev_graph.vertex(qs[0]), prev_graph.vertex(qs[1]))
            };
            if (p1.dist(p2) - q1.dist(q2)).abs() > tol {
                continue;
            }
            let prev_side = orient(q1, q2, &prev_centroid).signum();
            for reflected in [false, true] {
                let map = RigidMap::new(p1, p2, q1, q2, reflected);
                let moved: Vec<Point> = piece.vertices().iter().map(|p| map.apply(p)).collect();
                if orient(q1, q2, &centroid(&moved)).signum() == prev_side {
                    continue;
                }
                let partners: Vec<usize> = if swapped {
                    out_seam.iter().rev().copied().collect()
                } else {
                    out_seam.clone()
                };
                let miss = in_seam
                    .iter()
                    .zip(&partners)
                    .map(|(&v, &u)| moved[v].dist(prev_graph.vertex(u)))
                    .fold(Scalar::zero(), Scalar::max);
                if miss <= tol {
                    chosen = Some((map, moved, reflected, partners));
                    break 'search;
                }
                closest = Some(closest.map_or(miss.clone(), |c| c.min(miss)));
            }
        }
        let (map, moved, reflected, partners) = chosen.ok_or_else(|| {
            Error::SeamMismatch(match closest {
                Some(d) => format!(
                    "piece {idx}: seam vertices miss their partners by up to {}",
                    d.to_digits(3)
                ),
                None => format!(
                    "piece {idx}: seam endpoints are {} apart, previous piece offers {}",
                    p1.dist(p2).to_digits(6),
                    prev_graph
                        .vertex(qs[0])
                        .dist(prev_graph.vertex(qs[1]))
                        .to_digits(6)
                ),
            })
        })?;
        let mut ids = vec![usize::MAX; piece.num_vertices()];
        for (&v, &u) in in_seam.iter().zip(&partners) {
            ids[v] = prev_ids[u];
        }
        for (i, p) in moved.iter().enumerate() {
            if ids[i] == usize::MAX {
                vertices.push(p.clone());
                ids[i] = vertices.len() - 1;
            }
        }
        edges.extend(piece.edges().iter().map(|&(a, b)| (ids[a], ids[b])));
        tris.extend(
            piece
                .triangles()
                .iter()
                .map(|t| [ids[t[0]], ids[t[1]], ids[t[2]]]),
        );
        transforms.push(format!(
            "rot={} refl={} shift=({},{})",
            map.sin.atan2(&map.cos).to_degrees().to_digits(20),
            reflected,
            map.shift.x.to_digits(20),
            map.shift.y.to_digits(20)
        ));
        prev_graph = UnitGraph::new(
            moved,
            piece.edges().to_vec(),
            piece.triangles().to_vec(),
            piece.labels().clone(),
            BTreeMap::new(),
        )?;
        prev_ids = ids;
        prev_dir = *dir;
    }
    check_collisions(&vertices)?;
    let last_out = prev_graph.require_labels(&prev_dir.outgoing())?;
    let labels = BTreeMap::from([
        ("A".to_string(), incoming_first[0]),
        ("F".to_string(), incoming_first[1]),
        ("C".to_string(), prev_ids[last_out[0]]),
        ("D".to_string(), prev_ids[last_out[1]]),
    ]);
    let mut meta = BTreeMap::new();
    meta.insert(meta_keys::KIND.into(), "chain".into());
    meta.insert("pieces".into(), pieces.len().to_string());
    meta.insert("chain.transforms".into(), transforms.join("; "));
    UnitGraph::new(vertices, edges, tris, labels, meta)
}

/// Matches the vertices of two labeled graphs after moving both into the
/// B/E frame. Returns the index map `a -> b` and the largest coordinate
/// deviation, or `None` if vertices or edges do not correspond.
pub fn frame_match(a: &UnitGraph, b: &UnitGraph, tol: f64) -> Result<Option<(Vec<usize>, Scalar)>> {
    let fa = a.aligned_to_axis()?;
    let fb = b.aligned_to_axis()?;
    Ok(match_points(&fa, &fb, tol))
}

fn match_points(a: &UnitGraph, b: &UnitGraph, tol: f64) -> Option<(Vec<usize>, Scalar)> {
    if a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges() {
        return None;
    }
    let mut grid = Grid::new(tol.max(1e-6) * 4.0);
    for (i, p) in b.vertices().iter().enumerate() {
        grid.insert_point(i, p.to_f64());
    }
    let tol_s = Scalar::from_f64(tol);
    let mut map = vec![usize::MAX; a.num_vertices()];
    let mut used = vec![false; b.num_vertices()];
    let mut worst = Scalar::zero();
    for (i, p) in a.vertices().iter().enumerate() {
        let (j, d) = grid
            .near(p.to_f64())
            .into_iter()
            .map(|j| (j, b.vertex(j).dist(p)))
            .min_by(|x, y| x.1.partial_cmp(&y.1).expect("finite"))?;
        if d > tol_s || used[j] {
            return None;
        }
        used[j] = true;
        map[i] = j;
        worst = worst.max(d);
    }
    if a.edges().iter().all(|&(u, v)| b.has_edge(map[u], map[v])) {
        Some((map, worst))
    } else {
        None
    }
}

/// Whether two labeled graphs are congruent (frames from B/E, or A/F when
/// either lacks B; rotation, translation and
/// possibly a reflection) with matching edges, up to `tol`.
pub fn congruent(a: &UnitGraph, b: &UnitGraph, tol: f64) -> Result<bool> {
    let (from, to) = if a.label("B").is_some() && b.label("B").is_some() {
        ("B", "E")
    } else {
        ("A", "F")
    };
    let fb = b.aligned_to(from, to)?;
    let fa = a.aligned_to(from, to)?;
    Ok(match_points(&fa, &fb, tol).is_some()
        || match_points(&fa.map_points(mirror_y), &fb, tol).is_some())
}
