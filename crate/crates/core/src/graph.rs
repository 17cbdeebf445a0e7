//! The unit-graph container, fixture ingestion and structural primitives.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::geom::{rotate, Point};
use crate::scalar::Scalar;
use crate::spatial::close_point_pairs;

pub type Edge = (usize, usize);
pub type Triangle = [usize; 3];

/// Vertices closer than this are the same vertex.
pub const DEDUP_TOLERANCE: f64 = 1e-9;
/// Side-length tolerance used to designate triangles of high-precision fixtures.
pub const FIXTURE_UNIT_TOLERANCE: f64 = 1e-13;
/// Side-length tolerance for the two-decimal sketches.
pub const SKETCH_UNIT_TOLERANCE: f64 = 0.05;

pub mod meta_keys {
    pub const KIND: &str = "kind";
    pub const FIXTURE: &str = "fixture";
    pub const TITLE: &str = "title";
    pub const PRECISION_CLASS: &str = "precision-class";
    pub const DECLARED_TRIANGLES: &str = "declared-triangles";
    pub const ANCHOR_N: &str = "anchor-n";
    pub const SOURCE_IDS: &str = "source-ids";
    pub const MERGED: &str = "merged";
    pub const TEMPLATE: &str = "template";
    pub const N: &str = "n";
    pub const APEX_X: &str = "apex-x";
    pub const APEX_Y: &str = "apex-y";
    pub const PROBE_PREFIX: &str = "probe.";
}

/// What a graph represents; decides whether degree-2 vertices are legal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphKind {
    /// A subgraph with free rail vertices (fixtures G1/G2/G4, solved bases, chains).
    Piece,
    /// A closed graph that must be 4-regular (rings and closed sketches).
    Closed,
}

impl GraphKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GraphKind::Piece => "piece",
            GraphKind::Closed => "closed",
        }
    }
}

/// Vertices, edges, triangles, labels and metadata, as owned values.
pub(crate) type GraphParts = (
    Vec<Point>,
    Vec<Edge>,
    Vec<Triangle>,
    BTreeMap<String, usize>,
    BTreeMap<String, String>,
);

#[derive(Clone, Debug, PartialEq)]
pub struct UnitGraph {
    vertices: Vec<Point>,
    edges: Vec<Edge>,
    triangles: Vec<Triangle>,
    labels: BTreeMap<String, usize>,
    meta: BTreeMap<String, String>,
}

fn norm_edge(a: usize, b: usize) -> Edge {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

fn norm_tri(mut t: Triangle) -> Triangle {
    t.sort_unstable();
    t
}

impl UnitGraph {
    /// Builds a graph, normalizing edge and triangle order and rounding
    /// coordinates to the stored precision so that files round-trip exactly.
    /// Duplicate edges collapse; self-loops, out-of-range indices and
    /// triangles whose sides are not edges are rejected.
    pub fn new(
        vertices: Vec<Point>,
        edges: impl IntoIterator<Item = Edge>,
        triangles: impl IntoIterator<Item = Triangle>,
        labels: BTreeMap<String, usize>,
        meta: BTreeMap<String, String>,
    ) -> Result<Self> {
        let n = vertices.len();
        let mut es = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::Invalid(format!("self-loop at vertex {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::Invalid(format!(
                    "edge ({a}, {b}) out of range ({n} vertices)"
                )));
            }
            es.insert(norm_edge(a, b));
        }
        let mut ts = BTreeSet::new();
        for t in triangles {
            let t = norm_tri(t);
            if t[0] == t[1] || t[1] == t[2] {
                return Err(Error::Invalid(format!("degenerate triangle {t:?}")));
            }
            for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                if !es.contains(&(a, b)) {
                    return Err(Error::Invalid(format!(
                        "triangle {t:?} side ({a}, {b}) is not an edge"
                    )));
                }
            }
            ts.insert(t);
        }
        for (name, &v) in &labels {
            if v >= n {
                return Err(Error::Invalid(format!("label {name} -> {v} out of range")));
            }
        }
        let vertices = vertices.iter().map(Point::canonical).collect();
        Ok(UnitGraph {
            vertices,
            edges: es.into_iter().collect(),
            triangles: ts.into_iter().collect(),
            labels,
            meta,
        })
    }

    pub fn empty() -> Self {
        UnitGraph {
            vertices: Vec::new(),
            edges: Vec::new(),
            triangles: Vec::new(),
            labels: BTreeMap::new(),
            meta: BTreeMap::new(),
        }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Point {
        &self.vertices[i]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn labels(&self) -> &BTreeMap<String, usize> {
        &self.labels
    }

    pub fn label(&self, name: &str) -> Option<usize> {
        self.labels.get(name).copied()
    }

    pub fn require_labels(&self, names: &[&str]) -> Result<Vec<usize>> {
        let missing: Vec<&str> = names
            .iter()
            .copied()
            .filter(|n| !self.labels.contains_key(*n))
            .collect();
        if !missing.is_empty() {
            return Err(Error::MissingLabels(missing.join(", ")));
        }
        Ok(names.iter().map(|n| self.labels[*n]).collect())
    }

    pub fn meta(&self) -> &BTreeMap<String, String> {
        &self.meta
    }

    pub fn meta_value(&self, key: &str) -> Option<&str> {
        self.meta.get(key).map(String::as_str)
    }

    pub fn set_meta(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.meta.insert(key.into(), value.into());
    }

    pub fn set_labels(&mut self, labels: BTreeMap<String, usize>) -> Result<()> {
        if let Some((k, &v)) = labels.iter().find(|(_, &v)| v >= self.vertices.len()) {
            return Err(Error::Invalid(format!("label {k} -> {v} out of range")));
        }
        self.labels = labels;
        Ok(())
    }

    pub fn kind(&self) -> GraphKind {
        match self.meta_value(meta_keys::KIND) {
            Some("closed") | Some("ring") => GraphKind::Closed,
            _ => GraphKind::Piece,
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&norm_edge(a, b)).is_ok()
    }

    pub fn edge_length(&self, e: Edge) -> Scalar {
        self.vertices[e.0].dist(&self.vertices[e.1])
    }

    /// Sorted neighbour lists.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertices.len()];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    pub fn degree_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for d in self.degrees() {
            *h.entry(d).or_insert(0) += 1;
        }
        h
    }

    /// Same structure with every vertex mapped through `f`.
    pub fn map_points(&self, f: impl Fn(&Point) -> Point) -> UnitGraph {
        UnitGraph {
            vertices: self.vertices.iter().map(|p| f(p).canonical()).collect(),
            ..self.clone()
        }
    }

    /// Rigid motion putting label `B` at the origin and `E` on the positive x-axis.
    pub fn aligned_to_axis(&self) -> Result<UnitGraph> {
        self.aligned_to("B", "E")
    }

    /// Rigid motion putting label `from` at the origin and `to` on the positive x-axis.
    pub fn aligned_to(&self, from: &str, to: &str) -> Result<UnitGraph> {
        let ids = self.require_labels(&[from, to])?;
        let b = self.vertices[ids[0]].clone();
        let theta = self.vertices[ids[1]].sub(&b).angle();
        let neg = -theta;
        let origin = Point::origin();
        Ok(self.map_points(|p| rotate(&p.sub(&b), &origin, &neg)))
    }

    /// Original table numbers of the vertices, if this graph came from a fixture.
    pub fn source_ids(&self) -> Option<Vec<u32>> {
        let s = self.meta_value(meta_keys::SOURCE_IDS)?;
        s.split_whitespace().map(|t| t.parse().ok()).collect()
    }

    /// Vertex index of an original table number, following merges.
    pub fn vertex_for_source(&self, raw: u32) -> Option<usize> {
        let mut raw = raw;
        if let Some(m) = self.meta_value(meta_keys::MERGED) {
            for pair in m.split_whitespace() {
                if let Some((from, to)) = pair.split_once('>') {
                    if from.parse() == Ok(raw) {
                        raw = to.parse().ok()?;
                        break;
                    }
                }
            }
        }
        self.source_ids()?.iter().position(|&s| s == raw)
    }

    /// Angle probes stored in the metadata as `probe.<name>` entries.
    pub fn angle_probes(&self) -> Vec<(String, [usize; 3])> {
        let mut out = Vec::new();
        for (k, v) in &self.meta {
            if let Some(name) = k.strip_prefix(meta_keys::PROBE_PREFIX) {
                for t in v.split_whitespace() {
                    let parts: Vec<usize> = t.split('-').filter_map(|x| x.parse().ok()).collect();
                    if parts.len() == 3 {
                        out.push((name.to_string(), [parts[0], parts[1], parts[2]]));
                    }
                }
            }
        }
        out
    }

    pub(crate) fn into_parts(self) -> GraphParts {
        (
            self.vertices,
            self.edges,
            self.triangles,
            self.labels,
            self.meta,
        )
    }
}

/// All triples whose three pairs are edges with lengths within `tol` of 1.
pub fn unit_three_cycles(g: &UnitGraph, tol: &Scalar) -> Vec<Triangle> {
    let adj = g.adjacency();
    let unit = |a: usize, b: usize| (g.vertices[a].dist(&g.vertices[b]) - 1.0).abs() <= *tol;
    let mut out = Vec::new();
    for &(u, v) in g.edges() {
        if !unit(u, v) {
            continue;
        }
        // common neighbours above v keep each triple once
        for &w in &adj[u] {
            if w > v && adj[v].binary_search(&w).is_ok() && unit(u, w) && unit(v, w) {
                out.push([u, v, w]);
            }
        }
    }
    out.sort_unstable();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrecisionClass {
    /// 20-decimal coordinate tables.
    High,
    /// Two-decimal sketches; structural use only.
    Sketch,
}

impl PrecisionClass {
    pub fn as_str(self) -> &'static str {
        match self {
            PrecisionClass::High => "high",
            PrecisionClass::Sketch => "sketch",
        }
    }
}

/// A figure table as printed: raw numbering, possibly duplicated vertices,
/// self-loop rows and repeated edges.
#[derive(Clone, Debug)]
pub struct RawFixture {
    pub name: String,
    pub title: String,
    pub precision: PrecisionClass,
    pub declared_triangles: usize,
    pub anchor_n: Option<u32>,
    pub labels: Vec<(String, u32)>,
    pub angle_probes: Vec<(String, [u32; 3])>,
    /// (raw id, x, y, source line)
    pub vertices: Vec<(u32, String, String, usize)>,
    /// (raw a, raw b, source line)
    pub edges: Vec<(u32, u32, usize)>,
}

impl RawFixture {
    /// Parses the line-oriented fixture table format (`key value` header
    /// lines, then `[vertices]` and `[edges]` sections).
    pub fn parse(text: &str) -> Result<Self> {
        let mut fx = RawFixture {
            name: String::new(),
            title: String::new(),
            precision: PrecisionClass::High,
            declared_triangles: 0,
            anchor_n: None,
            labels: Vec::new(),
            angle_probes: Vec::new(),
            vertices: Vec::new(),
            edges: Vec::new(),
        };
        #[derive(PartialEq)]
        enum Section {
            Header,
            Vertices,
            Edges,
        }
        let mut section = Section::Header;
        let int = |tok: &str, line: usize| -> Result<u32> {
            tok.parse::<u32>()
                .map_err(|_| Error::parse(line, format!("expected an integer, got {tok:?}")))
        };
        for (i, raw_line) in text.lines().enumerate() {
            let line = i + 1;
            let l = raw_line.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            match l {
                "[vertices]" => {
                    section = Section::Vertices;
                    continue;
                }
                "[edges]" => {
                    section = Section::Edges;
                    continue;
                }
                _ => {}
            }
            let toks: Vec<&str> = l.split_whitespace().collect();
            match section {
                Section::Header => {
                    let (key, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
                    let rest = rest.trim();
                    match key {
                        "name" => fx.name = rest.to_string(),
                        "title" => fx.title = rest.to_string(),
                        "precision" => {
                            fx.precision = match rest {
                                "high" => PrecisionClass::High,
                                "sketch" => PrecisionClass::Sketch,
                                other => {
                                    return Err(Error::parse(
                                        line,
                                        format!("unknown precision class {other:?}"),
                                    ))
                                }
                            }
                        }
                        "triangles" => fx.declared_triangles = int(rest, line)? as usize,
                        "anchor-n" => fx.anchor_n = Some(int(rest, line)?),
                        "label" if toks.len() == 3 => {
                            fx.labels.push((toks[1].to_string(), int(toks[2], line)?))
                        }
                        "angle" if toks.len() == 5 => fx.angle_probes.push((
                            toks[1].to_string(),
                            [
                                int(toks[2], line)?,
                                int(toks[3], line)?,
                                int(toks[4], line)?,
                            ],
                        )),
                        _ => {
                            return Err(Error::parse(
                                line,
                                format!("unrecognized header line {l:?}"),
                            ))
                        }
                    }
                }
                Section::Vertices => {
                    if toks.len() != 3 {
                        return Err(Error::parse(line, "vertex rows are `id x y`"));
                    }
                    fx.vertices.push((
                        int(toks[0], line)?,
                        toks[1].to_string(),
                        toks[2].to_string(),
                        line,
                    ));
                }
                Section::Edges => {
                    if toks.len() != 2 {
                        return Err(Error::parse(line, "edge rows are `a b`"));
                    }
                    fx.edges
                        .push((int(toks[0], line)?, int(toks[1], line)?, line));
                }
            }
        }
        if fx.name.is_empty() {
            return Err(Error::parse(0, "fixture has no name"));
        }
        Ok(fx)
    }
}

/// Turns a raw figure table into a [`UnitGraph`]: merges vertices within
/// [`DEDUP_TOLERANCE`], drops self-loops and repeated edges, resolves labels
/// and designates the unit triangles.
pub fn ingest_fixture(raw: &RawFixture) -> Result<UnitGraph> {
    let mut rows: Vec<(u32, Point)> = Vec::with_capacity(raw.vertices.len());
    for (id, x, y, line) in &raw.vertices {
        let p = Point::parse(x, y).map_err(|e| match e {
            Error::Parse { message, .. } => Error::parse(*line, message),
            other => other,
        })?;
        rows.push((*id, p));
    }
    rows.sort_by_key(|r| r.0);
    if let Some(w) = rows.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(Error::parse(0, format!("vertex {} listed twice", w[0].0)));
    }

    // union-find over pairs closer than the dedup tolerance
    let pts: Vec<[f64; 2]> = rows.iter().map(|r| r.1.to_f64()).collect();
    let mut parent: Vec<usize> = (0..rows.len()).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    let tol = Scalar::from_f64(DEDUP_TOLERANCE);
    for (i, j) in close_point_pairs(&pts, DEDUP_TOLERANCE, 1e-9) {
        if rows[i].1.dist(&rows[j].1) < tol {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut clusters: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..rows.len() {
        let r = find(&mut parent, i);
        clusters.entry(r).or_default().push(i);
    }
    for members in clusters.values() {
        for (k, &a) in members.iter().enumerate() {
            for &b in &members[k + 1..] {
                let d = rows[a].1.dist(&rows[b].1);
                if d >= tol {
                    return Err(Error::MergeAmbiguity {
                        vertex: rows[a].0,
                        diameter: d.to_f64(),
                    });
                }
            }
        }
    }

    // representative = lowest raw id; index order follows raw ids
    let mut index_of_raw: HashMap<u32, usize> = HashMap::new();
    let mut vertices = Vec::new();
    let mut source_ids = Vec::new();
    let mut merged = Vec::new();
    for members in clusters.values() {
        let idx = vertices.len();
        let rep = members[0];
        vertices.push(rows[rep].1.clone());
        source_ids.push(rows[rep].0);
        for &m in members {
            index_of_raw.insert(rows[m].0, idx);
            if m != rep {
                merged.push((rows[m].0, rows[rep].0));
            }
        }
    }

    let lookup = |raw_id: u32, line: usize| -> Result<usize> {
        index_of_raw
            .get(&raw_id)
            .copied()
            .ok_or_else(|| Error::parse(line, format!("unknown vertex {raw_id}")))
    };
    let mut edges = Vec::new();
    for &(a, b, line) in &raw.edges {
        let (ia, ib) = (lookup(a, line)?, lookup(b, line)?);
        if ia != ib {
            edges.push((ia, ib));
        }
    }
    let mut labels = BTreeMap::new();
    for (name, id) in &raw.labels {
        labels.insert(name.clone(), lookup(*id, 0)?);
    }

    let mut meta = BTreeMap::new();
    meta.insert(meta_keys::FIXTURE.to_string(), raw.name.clone());
    if !raw.title.is_empty() {
        meta.insert(meta_keys::TITLE.to_string(), raw.title.clone());
    }
    meta.insert(
        meta_keys::PRECISION_CLASS.to_string(),
        raw.precision.as_str().to_string(),
    );
    meta.insert(
        meta_keys::DECLARED_TRIANGLES.to_string(),
        raw.declared_triangles.to_string(),
    );
    if let Some(n) = raw.anchor_n {
        meta.insert(meta_keys::ANCHOR_N.to_string(), n.to_string());
    }
    meta.insert(
        meta_keys::SOURCE_IDS.to_string(),
        source_ids
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(" "),
    );
    if !merged.is_empty() {
        merged.sort_unstable();
        meta.insert(
            meta_keys::MERGED.to_string(),
            merged
                .iter()
                .map(|(f, t)| format!("{f}>{t}"))
                .collect::<Vec<_>>()
                .join(" "),
        );
    }
    let mut probes: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for (name, ids) in &raw.angle_probes {
        let t = [lookup(ids[0], 0)?, lookup(ids[1], 0)?, lookup(ids[2], 0)?];
        probes
            .entry(name.clone())
            .or_default()
            .push(format!("{}-{}-{}", t[0], t[1], t[2]));
    }
    for (name, list) in probes {
        meta.insert(
            format!("{}{}", meta_keys::PROBE_PREFIX, name),
            list.join(" "),
        );
    }

    let mut g = UnitGraph::new(vertices, edges, Vec::new(), labels, meta)?;
    let degrees = g.degree_histogram();
    let kind = if degrees.keys().all(|&d| d == 4) {
        GraphKind::Closed
    } else {
        GraphKind::Piece
    };
    g.set_meta(meta_keys::KIND, kind.as_str());

    let designated = match raw.precision {
        PrecisionClass::High => unit_three_cycles(&g, &Scalar::from_f64(FIXTURE_UNIT_TOLERANCE)),
        PrecisionClass::Sketch => {
            edge_partition_triangles(&g, &Scalar::from_f64(SKETCH_UNIT_TOLERANCE))?
        }
    };
    if raw.declared_triangles != 0 && designated.len() != raw.declared_triangles {
        return Err(Error::Invalid(format!(
            "fixture {} declares {} triangles but {} were designated",
            raw.name,
            raw.declared_triangles,
            designated.len()
        )));
    }
    let (v, e, _, l, m) = g.into_parts();
    UnitGraph::new(v, e, designated, l, m)
}

/// Picks the unit 3-cycles that cover every edge exactly once. In a
/// vertex-to-vertex triangle arrangement each edge belongs to exactly one
/// triangle, so cycles that are forced by an edge lying in a single cycle are
/// taken first and cycles overlapping a taken one are discarded; holes
/// (inverted triangles) drop out this way.
fn edge_partition_triangles(g: &UnitGraph, tol: &Scalar) -> Result<Vec<Triangle>> {
    let cycles = unit_three_cycles(g, tol);
    let sides = |t: &Triangle| [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])];
    let mut alive = vec![true; cycles.len()];
    let mut chosen = vec![false; cycles.len()];
    let mut covered: BTreeSet<Edge> = BTreeSet::new();
    loop {
        let mut by_edge: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
        for (i, t) in cycles.iter().enumerate() {
            if alive[i] && !chosen[i] {
                for s in sides(t) {
                    if !covered.contains(&s) {
                        by_edge.entry(s).or_default().push(i);
                    }
                }
            }
        }
        let forced: BTreeSet<usize> = by_edge
            .values()
            .filter(|c| c.len() == 1)
            .map(|c| c[0])
            .collect();
        if forced.is_empty() {
            break;
        }
        for i in forced {
            if !alive[i] || sides(&cycles[i]).iter().any(|s| covered.contains(s)) {
                alive[i] = false;
                continue;
            }
            chosen[i] = true;
            covered.extend(sides(&cycles[i]));
        }
        for (i, t) in cycles.iter().enumerate() {
            if !chosen[i] && sides(t).iter().any(|s| covered.contains(s)) {
                alive[i] = false;
            }
        }
    }
    let uncovered = g.edges().iter().filter(|e| !covered.contains(e)).count();
    if uncovered > 0 {
        return Err(Error::Invalid(format!(
            "{uncovered} edges are not covered by an edge-disjoint triangle set"
        )));
    }
    Ok(cycles
        .iter()
        .zip(chosen)
        .filter(|(_, c)| *c)
        .map(|(t, _)| *t)
        .collect())
}
