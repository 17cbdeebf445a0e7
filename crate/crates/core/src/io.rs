//! The versioned text graph format.
//!
//! ```text
//! msf-graph 1
//! precision 60
//! meta <key> <value to end of line>
//! [labels]
//! <name> <vertex>
//! [vertices]
//! <id> <x> <y>
//! [edges]
//! <a> <b>
//! [triangles]
//! <a> <b> <c>
//! ```
//!
//! Coordinates are decimal strings at the stored precision. Meta lines are
//! sorted by key; empty sections are omitted.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::geom::Point;
use crate::graph::UnitGraph;
use crate::scalar::precision;

pub const FORMAT_VERSION: u32 = 1;
const MAGIC: &str = "msf-graph";

pub fn graph_to_string(g: &UnitGraph) -> Result<String> {
    let mut s = format!("{MAGIC} {FORMAT_VERSION}\nprecision {}\n", precision());
    for (k, v) in g.meta() {
        if k.is_empty() || k.contains(char::is_whitespace) || v.contains('\n') || v.trim() != v {
            return Err(Error::Invalid(format!(
                "meta entry {k:?} cannot be serialized"
            )));
        }
        s += &format!("meta {k} {v}\n");
    }
    if !g.labels().is_empty() {
        s += "[labels]\n";
        for (k, v) in g.labels() {
            s += &format!("{k} {v}\n");
        }
    }
    if g.num_vertices() > 0 {
        s += "[vertices]\n";
        for (i, p) in g.vertices().iter().enumerate() {
            s += &format!(
                "{i} {} {}\n",
                p.x.to_decimal_string(),
                p.y.to_decimal_string()
            );
        }
    }
    if g.num_edges() > 0 {
        s += "[edges]\n";
        for (a, b) in g.edges() {
            s += &format!("{a} {b}\n");
        }
    }
    if !g.triangles().is_empty() {
        s += "[triangles]\n";
        for t in g.triangles() {
            s += &format!("{} {} {}\n", t[0], t[1], t[2]);
        }
    }
    Ok(s)
}

pub fn graph_from_str(text: &str) -> Result<UnitGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    match lines.next() {
        Some((_, l)) if l.starts_with(MAGIC) => {
            let v = l[MAGIC.len()..].trim();
            if v.parse::<u32>().ok() != Some(FORMAT_VERSION) {
                return Err(Error::Version {
                    found: v.to_string(),
                    expected: FORMAT_VERSION,
                });
            }
        }
        Some((line, _)) => {
            return Err(Error::parse(
                line,
                format!("expected `{MAGIC} {FORMAT_VERSION}` header"),
            ))
        }
        None => return Err(Error::parse(1, "empty file")),
    }
    let mut meta = BTreeMap::new();
    let mut labels = BTreeMap::new();
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut tris = Vec::new();
    let mut section = "";
    let idx = |tok: &str, line: usize, field: &str| -> Result<usize> {
        tok.parse::<usize>()
            .map_err(|_| Error::parse(line, format!("{field}: expected an index, got {tok:?}")))
    };
    for (line, l) in lines {
        if l.starts_with('[') {
            section = match l {
                "[labels]" | "[vertices]" | "[edges]" | "[triangles]" => l,
                _ => return Err(Error::parse(line, format!("unknown section {l}"))),
            };
            continue;
        }
        let toks: Vec<&str> = l.split_whitespace().collect();
        match section {
            "" => match toks[0] {
                "precision" => {
                    if toks.len() != 2 || toks[1].parse::<u32>().is_err() {
                        return Err(Error::parse(line, "precision: expected a digit count"));
                    }
                }
                "meta" => {
                    let rest = l["meta".len()..].trim_start();
                    let (k, v) = rest.split_once(' ').unwrap_or((rest, ""));
                    if k.is_empty() {
                        return Err(Error::parse(line, "meta: missing key"));
                    }
                    meta.insert(k.to_string(), v.to_string());
                }
                other => return Err(Error::parse(line, format!("unknown header line {other:?}"))),
            },
            "[labels]" => {
                if toks.len() != 2 {
                    return Err(Error::parse(line, "label rows are `name vertex`"));
                }
                labels.insert(toks[0].to_string(), idx(toks[1], line, "label vertex")?);
            }
            "[vertices]" => {
                if toks.len() != 3 {
                    return Err(Error::parse(line, "vertex rows are `id x y`"));
                }
                let id = idx(toks[0], line, "vertex id")?;
                if id != vertices.len() {
                    return Err(Error::parse(
                        line,
                        format!(
                            "vertex id {id} out of sequence (expected {})",
                            vertices.len()
                        ),
                    ));
                }
                let p = Point::parse(toks[1], toks[2]).map_err(|e| match e {
                    Error::Parse { message, .. } => {
                        Error::parse(line, format!("vertex {id}: {message}"))
                    }
                    other => other,
                })?;
                vertices.push(p);
            }
            "[edges]" => {
                if toks.len() != 2 {
                    return Err(Error::parse(line, "edge rows are `a b`"));
                }
                edges.push((idx(toks[0], line, "edge")?, idx(toks[1], line, "edge")?));
            }
            "[triangles]" => {
                if toks.len() != 3 {
                    return Err(Error::parse(line, "triangle rows are `a b c`"));
                }
                tris.push([
                    idx(toks[0], line, "triangle")?,
                    idx(toks[1], line, "triangle")?,
                    idx(toks[2], line, "triangle")?,
                ]);
            }
            _ => unreachable!(),
        }
    }
    UnitGraph::new(vertices, edges, tris, labels, meta)
}

/// The precision recorded in a graph file header, if present.
pub fn stored_precision(text: &str) -> Option<u32> {
    text.lines()
        .take(3)
        .find_map(|l| l.trim().strip_prefix("precision ")?.trim().parse().ok())
}

pub fn write_graph(g: &UnitGraph, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, graph_to_string(g)?)?;
    Ok(())
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<UnitGraph> {
    graph_from_str(&fs::read_to_string(path)?)
}
