//! Minimal-n search over ring closures.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::assemble::ring_assemble;
use crate::error::{Error, Result};
use crate::linkage::{continue_in_n, solved_base, LinkageTemplate, RingSpec, SolveResult};
use crate::verify::{verify, ToleranceProfile, Verdicts, VerificationReport};

/// One line of the search table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchRow {
    pub n: u32,
    pub omega_deg: f64,
    pub solved: bool,
    pub residual: Option<f64>,
    pub triangles: Option<usize>,
    pub verdicts: Option<Verdicts>,
    pub crossings: Option<usize>,
    pub incidences: Option<usize>,
    pub min_vertex_vertex: Option<f64>,
    pub min_vertex_edge: Option<f64>,
    pub passed: bool,
    /// First failure witness, or the error that stopped this n.
    pub note: String,
}

/// Which verdicts a ring must pass.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchCriteria {
    pub unit: bool,
    pub regular4: bool,
    pub planar: bool,
    pub no_additional: bool,
}

impl SearchCriteria {
    pub fn full() -> Self {
        SearchCriteria {
            unit: true,
            regular4: true,
            planar: true,
            no_additional: true,
        }
    }

    pub fn without_planarity() -> Self {
        SearchCriteria {
            planar: false,
            ..Self::full()
        }
    }

    pub fn accepts(&self, v: &Verdicts) -> bool {
        (!self.unit || v.unit)
            && (!self.regular4 || v.regular4)
            && (!self.planar || v.planar)
            && (!self.no_additional || v.no_additional)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub minimal_n: u32,
    pub table: Vec<SearchRow>,
}

fn witness(r: &VerificationReport) -> String {
    if let Some(c) = r.crossings.first() {
        return format!(
            "edges {}-{} and {}-{} cross",
            c.e1.0, c.e1.1, c.e2.0, c.e2.1
        );
    }
    if let Some(i) = r.incidences.first() {
        return format!(
            "vertex {} lies on edge {}-{} ({})",
            i.vertex,
            i.edge.0,
            i.edge.1,
            i.distance.to_digits(3)
        );
    }
    if let Some(p) = r.coincidences.first() {
        return format!("vertices {} and {} coincide", p.u, p.v);
    }
    if let Some(i) = r.indeterminate_vertex_edge.first() {
        return format!(
            "vertex {} is {} from edge {}-{}",
            i.vertex,
            i.distance.to_digits(3),
            i.edge.0,
            i.edge.1
        );
    }
    if let Some(p) = r.indeterminate_vertex_vertex.first() {
        return format!(
            "vertices {} and {} are {} apart",
            p.u,
            p.v,
            p.distance.to_digits(3)
        );
    }
    if let Some(t) = r.additional_unit_triangles.first() {
        return format!("additional unit triangle {:?}", t);
    }
    if let Some(t) = r.larger_triangles.first() {
        return format!("additional side-{} triangle {:?}", t.side, t.corners);
    }
    String::new()
}

fn failed_row(n: u32, note: String) -> SearchRow {
    let omega_deg = 360.0 / n as f64;
    SearchRow {
        n,
        omega_deg,
        solved: false,
        residual: None,
        triangles: None,
        verdicts: None,
        crossings: None,
        incidences: None,
        min_vertex_vertex: None,
        min_vertex_edge: None,
        passed: false,
        note,
    }
}

/// Solves, assembles and verifies one ring.
pub fn evaluate_ring(
    t: &LinkageTemplate,
    solved: &SolveResult,
    prof: &ToleranceProfile,
    criteria: &SearchCriteria,
) -> SearchRow {
    let n = solved.n;
    let built = RingSpec::new(n).and_then(|spec| {
        let base = solved_base(t, solved)?;
        ring_assemble(&base, &spec)
    });
    let ring = match built {
        Ok(r) => r,
        Err(e) => {
            return SearchRow {
                solved: true,
                residual: Some(solved.residual_norm.to_f64()),
                ..failed_row(n, e.to_string())
            }
        }
    };
    let report = verify(&ring, prof);
    let passed = criteria.accepts(&report.verdicts);
    SearchRow {
        n,
        omega_deg: 360.0 / n as f64,
        solved: true,
        residual: Some(solved.residual_norm.to_f64()),
        triangles: Some(ring.triangles().len()),
        verdicts: Some(report.verdicts),
        crossings: Some(report.crossings.len()),
        incidences: Some(report.incidences.len()),
        min_vertex_vertex: report
            .min_vertex_vertex
            .as_ref()
            .map(|p| p.distance.to_f64()),
        min_vertex_edge: report.min_vertex_edge.as_ref().map(|p| p.distance.to_f64()),
        passed,
        note: if passed {
            String::new()
        } else {
            witness(&report)
        },
    }
}

/// Continues the anchor solution serially to every n in `[from, to]`, then
/// assembles and verifies the rings in parallel. Returns the smallest n whose
/// ring passes `criteria`, with the full table.
pub fn minimal_n_search(
    t: &LinkageTemplate,
    anchor: &SolveResult,
    from: u32,
    to: u32,
    prof: &ToleranceProfile,
    criteria: &SearchCriteria,
) -> Result<SearchOutcome> {
    if from > to || from < 3 {
        return Err(Error::Invalid(format!("bad search range [{from}, {to}]")));
    }
    let mut solved: Vec<(u32, std::result::Result<SolveResult, String>)> = Vec::new();
    // downward then upward from the anchor, each step seeded by its neighbour
    for range in [
        (from..=anchor.n.min(to)).rev().collect::<Vec<_>>(),
        (anchor.n.max(from)..=to).collect(),
    ] {
        let mut prev: std::result::Result<SolveResult, String> = Ok(anchor.clone());
        for n in range {
            if solved.iter().any(|(m, _)| *m == n) {
                continue;
            }
            let next = match &prev {
                Ok(p) => continue_in_n(t, p, n).map_err(|e| e.to_string()),
                Err(e) => Err(format!("continuation stopped earlier: {e}")),
            };
            solved.push((n, next.clone()));
            prev = next;
        }
    }
    solved.sort_by_key(|(n, _)| *n);
    let table: Vec<SearchRow> = solved
        .par_iter()
        .map(|(n, r)| match r {
            Ok(s) => evaluate_ring(t, s, prof, criteria),
            Err(e) => failed_row(*n, e.clone()),
        })
        .collect();
    match table.iter().find(|r| r.passed) {
        Some(r) => Ok(SearchOutcome {
            minimal_n: r.n,
            table,
        }),
        None => Err(Error::NoPassingN { from, to, table }),
    }
}

/// Fixed-width text rendering of a search table.
pub fn format_table(table: &[SearchRow]) -> String {
    let mut s = format!(
        "{:>5} {:>10} {:>6} {:>6} {:>9} {:>10} {:>12}  {}\n",
        "n", "omega", "tri", "pass", "crossings", "incidences", "min v-e", "note"
    );
    for r in table {
        s += &format!(
            "{:>5} {:>10.6} {:>6} {:>6} {:>9} {:>10} {:>12}  {}\n",
            r.n,
            r.omega_deg,
            r.triangles.map_or("-".into(), |t| t.to_string()),
            if r.passed { "yes" } else { "no" },
            r.crossings.map_or("-".into(), |c| c.to_string()),
            r.incidences.map_or("-".into(), |c| c.to_string()),
            r.min_vertex_edge.map_or("-".into(), |d| format!("{d:.3e}")),
            r.note
        );
    }
    s
}

/// The table as a JSON array.
pub fn table_to_json(table: &[SearchRow]) -> String {
    serde_json::to_string(table).expect("rows serialize")
}
