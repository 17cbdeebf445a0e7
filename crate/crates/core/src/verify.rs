//! Certification of unit lengths, regularity, geometric planarity and the
//! triangle census.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geom::{
    point_segment_distance_f64, point_segment_distance_unchecked, segment_distance_f64,
    segment_relation, Point, SegmentRelation,
};
use crate::graph::{unit_three_cycles, Edge, GraphKind, Triangle, UnitGraph};
use crate::scalar::{precision, Scalar};
use crate::spatial::Grid;

/// Separations below this (coarse estimate) are re-checked at full precision.
const NEAR_EVENT: f64 = 1e-3;
const PREFILTER_CELL: f64 = 0.5;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToleranceProfile {
    pub name: String,
    /// Allowed |length - 1| for edges.
    pub unit: Scalar,
    /// Separations at or below this are incidences (vertex on edge, coincident vertices).
    pub incidence: Scalar,
    /// Separations above this are certified clear; between the two is indeterminate.
    pub clearance: Scalar,
    /// Side-length tolerance for the triangle census.
    pub census: Scalar,
    /// Angular tolerance (radians) for collinearity and 60° corners.
    pub angle: Scalar,
}

impl ToleranceProfile {
    /// Solver output: unit and incidence `10^(48-p)` (1e-12 at p = 60), clearance 1e-7.
    pub fn solved() -> Self {
        ToleranceProfile {
            name: "solved".into(),
            unit: Scalar::tolerance(48),
            incidence: Scalar::tolerance(48),
            clearance: Scalar::from_f64(1e-7),
            census: Scalar::tolerance(48),
            angle: Scalar::from_f64(1e-10),
        }
    }

    /// The 20-decimal figure tables.
    pub fn fixture() -> Self {
        ToleranceProfile {
            name: "fixture".into(),
            unit: Scalar::from_f64(1e-13),
            incidence: Scalar::from_f64(1e-12),
            clearance: Scalar::from_f64(1e-7),
            census: Scalar::from_f64(1e-13),
            angle: Scalar::from_f64(1e-10),
        }
    }

    /// The two-decimal sketches; verdicts are advisory.
    pub fn sketch() -> Self {
        ToleranceProfile {
            name: "sketch".into(),
            unit: Scalar::from_f64(0.05),
            incidence: Scalar::from_f64(0.005),
            clearance: Scalar::from_f64(0.02),
            census: Scalar::from_f64(0.05),
            angle: Scalar::from_f64(0.05),
        }
    }

    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "solved" => Some(Self::solved()),
            "fixture" => Some(Self::fixture()),
            "sketch" => Some(Self::sketch()),
            _ => None,
        }
    }

    fn near_event(&self) -> f64 {
        NEAR_EVENT.max(2.0 * self.clearance.to_f64())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexPair {
    pub u: usize,
    pub v: usize,
    pub distance: Scalar,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexEdge {
    pub vertex: usize,
    pub edge: Edge,
    pub distance: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    pub e1: Edge,
    pub e2: Edge,
    pub relation: SegmentRelation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LargerTriangle {
    pub side: usize,
    pub corners: [usize; 3],
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Separations {
    pub vertex_vertex: Option<VertexPair>,
    pub vertex_edge: Option<VertexEdge>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CrossingScan {
    pub crossings: Vec<Crossing>,
    pub incidences: Vec<VertexEdge>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub unit: bool,
    pub regular4: bool,
    pub planar: bool,
    pub no_additional: bool,
}

impl Verdicts {
    pub fn all(&self) -> bool {
        self.unit && self.regular4 && self.planar && self.no_additional
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub profile: ToleranceProfile,
    pub precision: u32,
    pub kind: String,
    pub vertices: usize,
    pub edges: usize,
    pub degree_histogram: BTreeMap<usize, usize>,
    pub max_length_deviation: Scalar,
    pub worst_edge: Option<Edge>,
    pub min_vertex_vertex: Option<VertexPair>,
    pub min_vertex_edge: Option<VertexEdge>,
    pub crossings: Vec<Crossing>,
    pub incidences: Vec<VertexEdge>,
    pub coincidences: Vec<VertexPair>,
    pub indeterminate_vertex_vertex: Vec<VertexPair>,
    pub indeterminate_vertex_edge: Vec<VertexEdge>,
    pub unit_three_cycles: usize,
    pub designated_triangles: usize,
    pub additional_unit_triangles: Vec<Triangle>,
    pub larger_triangles: Vec<LargerTriangle>,
    pub verdicts: Verdicts,
}

/// Failure classes in exit-code order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailureClass {
    Unit = 1,
    Regular = 2,
    Planar = 3,
    Indeterminate = 4,
    Additional = 5,
}

impl VerificationReport {
    /// The first failing verdict class, if any.
    pub fn first_failure(&self) -> Option<FailureClass> {
        let v = &self.verdicts;
        if !v.unit {
            Some(FailureClass::Unit)
        } else if !v.regular4 {
            Some(FailureClass::Regular)
        } else if !v.planar {
            let hard = !self.crossings.is_empty()
                || !self.incidences.is_empty()
                || !self.coincidences.is_empty();
            Some(if hard {
                FailureClass::Planar
            } else {
                FailureClass::Indeterminate
            })
        } else if !v.no_additional {
            Some(FailureClass::Additional)
        } else {
            None
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.first_failure().map_or(0, |f| f as i32)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    /// Plain-text summary, one fact per line.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        let yes = |b: bool| if b { "pass" } else { "FAIL" };
        s += &format!(
            "profile            {} (p = {})\n",
            self.profile.name, self.precision
        );
        s += &format!(
            "graph              {} vertices, {} edges, kind {}\n",
            self.vertices, self.edges, self.kind
        );
        let hist: Vec<String> = self
            .degree_histogram
            .iter()
            .map(|(d, c)| format!("{d}:{c}"))
            .collect();
        s += &format!("degrees            {}\n", hist.join(" "));
        s += &format!(
            "max |len - 1|      {}\n",
            self.max_length_deviation.to_digits(6)
        );
        if let Some(p) = &self.min_vertex_vertex {
            s += &format!(
                "min vertex-vertex  {} ({}, {})\n",
                p.distance.to_digits(15),
                p.u,
                p.v
            );
        }
        if let Some(p) = &self.min_vertex_edge {
            s += &format!(
                "min vertex-edge    {} ({} on {}-{})\n",
                p.distance.to_digits(15),
                p.vertex,
                p.edge.0,
                p.edge.1
            );
        }
        s += &format!("crossings          {}\n", self.crossings.len());
        s += &format!(
            "incidences         {}\n",
            self.incidences.len() + self.coincidences.len()
        );
        s += &format!(
            "indeterminate      {}\n",
            self.indeterminate_vertex_edge.len() + self.indeterminate_vertex_vertex.len()
        );
        s += &format!(
            "unit 3-cycles      {} (designated {})\n",
            self.unit_three_cycles, self.designated_triangles
        );
        s += &format!("larger triangles   {}\n", self.larger_triangles.len());
        s += &format!(
            "verdicts           unit {} / regular4 {} / planar {} / no_additional {}\n",
            yes(self.verdicts.unit),
            yes(self.verdicts.regular4),
            yes(self.verdicts.planar),
            yes(self.verdicts.no_additional)
        );
        s
    }
}

fn f64_points(g: &UnitGraph) -> Vec<[f64; 2]> {
    g.vertices().iter().map(Point::to_f64).collect()
}

fn cmp_scalar(a: &Scalar, b: &Scalar) -> std::cmp::Ordering {
    a.partial_cmp(b).expect("finite distances")
}

/// Vertex pairs with coarse distance below `radius`, as (u, v, estimate).
fn vertex_pairs_within(pts: &[[f64; 2]], radius: f64) -> Vec<(usize, usize)> {
    let mut grid = Grid::new(radius.max(1e-9));
    for (i, p) in pts.iter().enumerate() {
        grid.insert_point(i, *p);
    }
    let mut out = Vec::new();
    for (i, p) in pts.iter().enumerate() {
        for j in grid.near(*p) {
            if j > i && ((p[0] - pts[j][0]).powi(2) + (p[1] - pts[j][1]).powi(2)).sqrt() < radius {
                out.push((i, j));
            }
        }
    }
    out
}

/// (vertex, edge index) pairs, vertex not on the edge, with coarse distance below `radius`.
fn vertex_edge_pairs_within(g: &UnitGraph, pts: &[[f64; 2]], radius: f64) -> Vec<(usize, usize)> {
    let mut grid = Grid::new(radius.max(PREFILTER_CELL));
    for (k, &(a, b)) in g.edges().iter().enumerate() {
        grid.insert_box(k, pts[a], pts[b], radius);
    }
    let mut out = Vec::new();
    for (v, p) in pts.iter().enumerate() {
        for k in grid.near(*p) {
            let (a, b) = g.edges()[k];
            if a != v && b != v && point_segment_distance_f64(*p, pts[a], pts[b]) < radius {
                out.push((v, k));
            }
        }
    }
    out
}

fn nearest_vertex_pair(g: &UnitGraph, pts: &[[f64; 2]]) -> Option<VertexPair> {
    if g.num_vertices() < 2 {
        return None;
    }
    let mut radius = PREFILTER_CELL;
    loop {
        let cand = vertex_pairs_within(pts, radius);
        if !cand.is_empty() {
            let best = cand
                .par_iter()
                .map(|&(u, v)| VertexPair {
                    u,
                    v,
                    distance: g.vertex(u).dist(g.vertex(v)),
                })
                .collect::<Vec<_>>()
                .into_iter()
                .min_by(|x, y| {
                    cmp_scalar(&x.distance, &y.distance).then((x.u, x.v).cmp(&(y.u, y.v)))
                })?;
            // a pair just outside the coarse radius cannot beat one well inside it
            if best.distance.to_f64() < radius * 0.5 {
                return Some(best);
            }
        }
        radius *= 4.0;
    }
}

fn nearest_vertex_edge(g: &UnitGraph, pts: &[[f64; 2]]) -> Option<VertexEdge> {
    let has_pair = (0..g.num_vertices()).any(|v| g.edges().iter().any(|&(a, b)| a != v && b != v));
    if !has_pair {
        return None;
    }
    let mut radius = PREFILTER_CELL;
    loop {
        let cand = vertex_edge_pairs_within(g, pts, radius);
        if !cand.is_empty() {
            let best = cand
                .par_iter()
                .map(|&(v, k)| {
                    let (a, b) = g.edges()[k];
                    VertexEdge {
                        vertex: v,
                        edge: (a, b),
                        distance: point_segment_distance_unchecked(
                            g.vertex(v),
                            g.vertex(a),
                            g.vertex(b),
                        ),
                    }
                })
                .collect::<Vec<_>>()
                .into_iter()
                .min_by(|x, y| {
                    cmp_scalar(&x.distance, &y.distance)
                        .then((x.vertex, x.edge).cmp(&(y.vertex, y.edge)))
                })?;
            if best.distance.to_f64() < radius * 0.5 {
                return Some(best);
            }
        }
        radius *= 4.0;
    }
}

/// Smallest distance between distinct vertices and between a vertex and an
/// edge it is not an endpoint of, with witnesses.
pub fn min_separations(g: &UnitGraph) -> Separations {
    let pts = f64_points(g);
    Separations {
        vertex_vertex: nearest_vertex_pair(g, &pts),
        vertex_edge: nearest_vertex_edge(g, &pts),
    }
}

fn endpoint_incidence(g: &UnitGraph, e1: Edge, e2: Edge) -> VertexEdge {
    let cands = [(e1.0, e2), (e1.1, e2), (e2.0, e1), (e2.1, e1)];
    cands
        .iter()
        .map(|&(v, e)| VertexEdge {
            vertex: v,
            edge: e,
            distance: point_segment_distance_unchecked(g.vertex(v), g.vertex(e.0), g.vertex(e.1)),
        })
        .min_by(|x, y| cmp_scalar(&x.distance, &y.distance))
        .expect("four candidates")
}

fn classify_pairs(
    g: &UnitGraph,
    prof: &ToleranceProfile,
    pairs: &[(usize, usize)],
) -> CrossingScan {
    let edges = g.edges();
    let found: Vec<(Option<Crossing>, Option<VertexEdge>)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (e1, e2) = (edges[i], edges[j]);
            let rel = segment_relation(
                g.vertex(e1.0),
                g.vertex(e1.1),
                g.vertex(e2.0),
                g.vertex(e2.1),
                &prof.incidence,
            )
            .unwrap_or(SegmentRelation::CollinearOverlap);
            match rel {
                SegmentRelation::ProperCrossing | SegmentRelation::CollinearOverlap => (
                    Some(Crossing {
                        e1,
                        e2,
                        relation: rel,
                    }),
                    None,
                ),
                SegmentRelation::EndpointOnInterior => (None, Some(endpoint_incidence(g, e1, e2))),
                _ => (None, None),
            }
        })
        .collect();
    let mut scan = CrossingScan::default();
    for (c, inc) in found {
        scan.crossings.extend(c);
        scan.incidences.extend(inc);
    }
    canonicalize(&mut scan);
    scan
}

fn canonicalize(scan: &mut CrossingScan) {
    for c in &mut scan.crossings {
        if c.e2 < c.e1 {
            std::mem::swap(&mut c.e1, &mut c.e2);
        }
    }
    scan.crossings.sort_by_key(|a| (a.e1, a.e2));
    scan.crossings.dedup();
    scan.incidences.sort_by_key(|a| (a.vertex, a.edge));
    scan.incidences
        .dedup_by(|a, b| (a.vertex, a.edge) == (b.vertex, b.edge));
}

fn disjoint_edges(a: Edge, b: Edge) -> bool {
    a.0 != b.0 && a.0 != b.1 && a.1 != b.0 && a.1 != b.1
}

/// Proper crossings, collinear overlaps and vertex-on-edge incidences among
/// edges without a common endpoint. A coarse grid selects edge pairs closer
/// than the near-event distance; those are classified at full precision.
pub fn crossing_scan(g: &UnitGraph, prof: &ToleranceProfile) -> CrossingScan {
    let pts = f64_points(g);
    let near = prof.near_event();
    let mut grid = Grid::new(PREFILTER_CELL.max(near));
    for (k, &(a, b)) in g.edges().iter().enumerate() {
        grid.insert_box(k, pts[a], pts[b], near);
    }
    let edges = g.edges();
    let pairs: Vec<(usize, usize)> = grid
        .cell_pairs()
        .into_iter()
        .filter(|&(i, j)| {
            let (e1, e2) = (edges[i], edges[j]);
            disjoint_edges(e1, e2)
                && segment_distance_f64(pts[e1.0], pts[e1.1], pts[e2.0], pts[e2.1]) < near
        })
        .collect();
    classify_pairs(g, prof, &pairs)
}

/// All-pairs reference version of [`crossing_scan`].
pub fn crossing_scan_brute(g: &UnitGraph, prof: &ToleranceProfile) -> CrossingScan {
    let edges = g.edges();
    let mut pairs = Vec::new();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if disjoint_edges(edges[i], edges[j]) {
                pairs.push((i, j));
            }
        }
    }
    classify_pairs(g, prof, &pairs)
}

/// Maximal runs of collinear edges, as vertex sequences of at least two edges.
fn collinear_chains(g: &UnitGraph, angle_tol: &Scalar) -> Vec<Vec<usize>> {
    let adj = g.adjacency();
    let straight = Scalar::pi() - angle_tol;
    // next[(a, v)] = b when a-v-b is straight
    let mut next: HashMap<(usize, usize), usize> = HashMap::new();
    for (v, nb) in adj.iter().enumerate() {
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                let pa = g.vertex(a).sub(g.vertex(v));
                let pb = g.vertex(b).sub(g.vertex(v));
                let ang = pa.cross(&pb).abs().atan2(&pa.dot(&pb));
                if ang >= straight {
                    next.insert((a, v), b);
                    next.insert((b, v), a);
                }
            }
        }
    }
    let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut chains = Vec::new();
    for &(u, v) in g.edges() {
        if seen.contains(&(u, v)) {
            continue;
        }
        // walk back to the start of the run, then forward
        let (mut a, mut b) = (v, u);
        let mut steps = 0;
        while let Some(&c) = next.get(&(a, b)) {
            steps += 1;
            if c == u || steps > g.num_vertices() {
                break;
            }
            a = b;
            b = c;
        }
        let mut chain = vec![b, a];
        let (mut p, mut q) = (b, a);
        while let Some(&c) = next.get(&(p, q)) {
            if chain.contains(&c) {
                break;
            }
            chain.push(c);
            p = q;
            q = c;
        }
        for w in chain.windows(2) {
            seen.insert((w[0].min(w[1]), w[0].max(w[1])));
        }
        if chain.len() >= 3 {
            chains.push(chain);
        }
    }
    chains
}

/// Unit 3-cycles that are not designated, and equilateral triangles of side
/// `s >= 2` whose sides are collinear edge runs of `s` edges each.
pub fn additional_triangle_scan(
    g: &UnitGraph,
    prof: &ToleranceProfile,
) -> (Vec<Triangle>, Vec<LargerTriangle>) {
    let designated: BTreeSet<Triangle> = g.triangles().iter().copied().collect();
    let unit: Vec<Triangle> = unit_three_cycles(g, &prof.census)
        .into_iter()
        .filter(|t| !designated.contains(t))
        .collect();

    let chains = collinear_chains(g, &prof.angle);
    // every sub-run of >= 2 edges, keyed by its endpoints
    let mut runs: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    let mut from: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for c in &chains {
        for i in 0..c.len() {
            for j in i + 2..c.len() {
                let seg = c[i..=j].to_vec();
                let (a, b) = (c[i], c[j]);
                let s = j - i;
                runs.insert((a.min(b), a.max(b)), seg);
                from.entry(a).or_default().push((b, s));
                from.entry(b).or_default().push((a, s));
            }
        }
    }
    let sixty = Scalar::pi() / 3.0;
    let mut larger = BTreeMap::new();
    for (&p, ends) in &from {
        for (i, &(q, s)) in ends.iter().enumerate() {
            for &(r, s2) in &ends[i + 1..] {
                if s2 != s || q == r {
                    continue;
                }
                let Some(third) = runs.get(&(q.min(r), q.max(r))) else {
                    continue;
                };
                if third.len() - 1 != s {
                    continue;
                }
                let pq = g.vertex(q).sub(g.vertex(p));
                let pr = g.vertex(r).sub(g.vertex(p));
                let corner = pq.cross(&pr).abs().atan2(&pq.dot(&pr));
                let side = Scalar::from_i64(s as i64);
                let sides_ok = [pq.norm(), pr.norm(), g.vertex(q).dist(g.vertex(r))]
                    .iter()
                    .all(|l| (l - &side).abs() <= &prof.census * &side);
                if (corner - &sixty).abs() <= prof.angle && sides_ok {
                    let mut corners = [p, q, r];
                    corners.sort_unstable();
                    let mut verts: BTreeSet<usize> = BTreeSet::new();
                    for (a, b) in [(p, q), (p, r), (q, r)] {
                        verts.extend(&runs[&(a.min(b), a.max(b))]);
                    }
                    larger.insert(
                        corners,
                        LargerTriangle {
                            side: s,
                            corners,
                            vertices: verts.into_iter().collect(),
                        },
                    );
                }
            }
        }
    }
    (unit, larger.into_values().collect())
}

/// Full certification report. Never fails: problems show up as verdicts.
pub fn verify(g: &UnitGraph, prof: &ToleranceProfile) -> VerificationReport {
    let pts = f64_points(g);
    let histogram = g.degree_histogram();
    let kind = g.kind();
    let regular4 = match kind {
        GraphKind::Closed => histogram.keys().all(|&d| d == 4),
        GraphKind::Piece => histogram.keys().all(|&d| d == 4 || d == 2),
    };

    let devs: Vec<Scalar> = g
        .edges()
        .par_iter()
        .map(|&e| (g.edge_length(e) - 1.0).abs())
        .collect();
    let (worst_edge, max_dev) = devs
        .iter()
        .enumerate()
        .max_by(|a, b| cmp_scalar(a.1, b.1).then(b.0.cmp(&a.0)))
        .map(|(k, d)| (Some(g.edges()[k]), d.clone()))
        .unwrap_or((None, Scalar::zero()));
    let unit = max_dev <= prof.unit;

    let seps = Separations {
        vertex_vertex: nearest_vertex_pair(g, &pts),
        vertex_edge: nearest_vertex_edge(g, &pts),
    };

    let near = prof.near_event();
    let mut coincidences = Vec::new();
    let mut indeterminate_vv = Vec::new();
    let vv: Vec<VertexPair> = vertex_pairs_within(&pts, near)
        .par_iter()
        .map(|&(u, v)| VertexPair {
            u,
            v,
            distance: g.vertex(u).dist(g.vertex(v)),
        })
        .collect();
    for p in vv {
        if p.distance <= prof.incidence {
            coincidences.push(p);
        } else if p.distance <= prof.clearance {
            indeterminate_vv.push(p);
        }
    }
    let mut indeterminate_ve = Vec::new();
    let mut incidences = Vec::new();
    let ve: Vec<VertexEdge> = vertex_edge_pairs_within(g, &pts, near)
        .par_iter()
        .map(|&(v, k)| {
            let (a, b) = g.edges()[k];
            VertexEdge {
                vertex: v,
                edge: (a, b),
                distance: point_segment_distance_unchecked(g.vertex(v), g.vertex(a), g.vertex(b)),
            }
        })
        .collect();
    for p in ve {
        if p.distance <= prof.incidence {
            incidences.push(p);
        } else if p.distance <= prof.clearance {
            indeterminate_ve.push(p);
        }
    }

    let mut scan = crossing_scan(g, prof);
    scan.incidences.extend(incidences);
    canonicalize(&mut scan);
    coincidences.sort_by_key(|p| (p.u, p.v));
    indeterminate_vv.sort_by_key(|p| (p.u, p.v));
    indeterminate_ve.sort_by_key(|p| (p.vertex, p.edge));

    let planar = scan.crossings.is_empty()
        && scan.incidences.is_empty()
        && coincidences.is_empty()
        && indeterminate_vv.is_empty()
        && indeterminate_ve.is_empty();

    let cycles = unit_three_cycles(g, &prof.census).len();
    let (additional_unit, larger) = additional_triangle_scan(g, prof);
    let no_additional =
        additional_unit.is_empty() && cycles == g.triangles().len() && larger.is_empty();

    VerificationReport {
        profile: prof.clone(),
        precision: precision(),
        kind: g.meta_value("kind").unwrap_or(kind.as_str()).to_string(),
        vertices: g.num_vertices(),
        edges: g.num_edges(),
        degree_histogram: histogram,
        max_length_deviation: max_dev,
        worst_edge,
        min_vertex_vertex: seps.vertex_vertex,
        min_vertex_edge: seps.vertex_edge,
        crossings: scan.crossings,
        incidences: scan.incidences,
        coincidences,
        indeterminate_vertex_vertex: indeterminate_vv,
        indeterminate_vertex_edge: indeterminate_ve,
        unit_three_cycles: cycles,
        designated_triangles: g.triangles().len(),
        additional_unit_triangles: additional_unit,
        larger_triangles: larger,
        verdicts: Verdicts {
            unit,
            regular4,
            planar,
            no_additional,
        },
    }
}
