//! Closure of a flexible mirror-symmetric subgraph on two rails meeting at
//! the apex O, posed as a least-squares problem in vertex coordinates.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::assemble::mirror_close;
use crate::error::{Error, Result};
use crate::geom::{ccw_angle, Point};
use crate::graph::{meta_keys, UnitGraph, DEDUP_TOLERANCE};
use crate::linalg::{
    damped_cholesky_solve, max_abs, normal_equations, push_entry, singular_values, sum_squares,
    SparseRow,
};
use crate::scalar::{precision, Scalar};
use crate::spatial::close_point_pairs;

const HALF_TOLERANCE: f64 = 1e-9;
const MIRROR_TOLERANCE: f64 = 1e-12;
const MAX_ITERATIONS: usize = 200;
const POLISH_STEPS: usize = 3;
/// Ring sizes tried, relative to the target, when a start converges to a
/// root with coincident vertices.
const DETOUR_OFFSETS: [i64; 4] = [16, 32, -16, -32];
const RANK_THRESHOLD: f64 = 1e-12;
/// Largest ω change per continuation step, degrees.
pub const MAX_CONTINUATION_STEP_DEG: f64 = 0.05;
const MIN_CONTINUATION_STEP_DEG: f64 = 1e-5;

/// One unit-edge residual: `a` to `b`, with `b` reflected across the axis
/// when `mirrored` is set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct EdgeConstraint {
    pub a: usize,
    pub b: usize,
    pub mirrored: bool,
}

#[derive(Clone, Debug)]
pub struct LinkageTemplate {
    name: String,
    frame: UnitGraph,
    upper: Vec<usize>,
    slot: Vec<Option<usize>>,
    mirror: Vec<(usize, bool)>,
    axis: Vec<usize>,
    rails: Vec<usize>,
    constraints: Vec<EdgeConstraint>,
    b: usize,
}

/// Ring parameters. `apex` is filled in once a solve has located O.
#[derive(Clone, Debug, PartialEq)]
pub struct RingSpec {
    pub n: u32,
    pub omega: Scalar,
    pub apex: Option<Point>,
}

impl RingSpec {
    pub fn new(n: u32) -> Result<Self> {
        if n < 3 {
            return Err(Error::Invalid(format!(
                "ring needs at least 3 copies, got {n}"
            )));
        }
        let omega = Scalar::pi() * 2.0 / Scalar::from_i64(n as i64);
        Ok(RingSpec {
            n,
            omega,
            apex: None,
        })
    }

    pub fn with_apex(mut self, apex: Point) -> Self {
        self.apex = Some(apex);
        self
    }

    pub fn omega_degrees(&self) -> Scalar {
        self.omega.to_degrees()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveResult {
    pub n: u32,
    pub omega: Scalar,
    /// Upper-half coordinates (B omitted) followed by x_O.
    pub state: Vec<Scalar>,
    pub residual_norm: Scalar,
    pub iterations: usize,
    pub sigma_min: f64,
    pub rank_deficient: bool,
    pub converged: bool,
}

impl SolveResult {
    pub fn apex(&self) -> Point {
        Point::new(
            self.state.last().cloned().unwrap_or_default(),
            Scalar::zero(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeReading {
    pub name: String,
    pub vertices: [usize; 3],
    pub degrees: Scalar,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AngleReadout {
    pub alpha: Option<Scalar>,
    pub beta: Option<Scalar>,
    pub gamma: Option<Scalar>,
    pub delta: Option<Scalar>,
    pub gh: Scalar,
    pub omega_check: Scalar,
    pub probes: Vec<ProbeReading>,
}

impl AngleReadout {
    /// Largest minus smallest reading among probes of one angle name.
    pub fn spread(&self, name: &str) -> Option<Scalar> {
        let vals: Vec<&Scalar> = self
            .probes
            .iter()
            .filter(|p| p.name == name)
            .map(|p| &p.degrees)
            .collect();
        let first = (*vals.first()?).clone();
        let (lo, hi) = vals.iter().fold((first.clone(), first), |(lo, hi), v| {
            (lo.min((*v).clone()), hi.max((*v).clone()))
        });
        Some(hi - lo)
    }
}

fn mirror_point(p: &Point) -> Point {
    Point::new(p.x.clone(), -&p.y)
}

/// Splits a labeled, mirror-symmetric subgraph into the variables and
/// constraints of the closure problem.
pub fn build_template(g: &UnitGraph) -> Result<LinkageTemplate> {
    g.require_labels(&["B", "E"])?;
    let frame = g.aligned_to_axis()?;
    let b = frame.label("B").expect("checked");
    let n = frame.num_vertices();
    let half_tol = Scalar::from_f64(HALF_TOLERANCE);
    let neg_half_tol = -&half_tol;
    let upper: Vec<usize> = (0..n)
        .filter(|&i| frame.vertex(i).y >= neg_half_tol)
        .collect();
    let axis: Vec<usize> = upper
        .iter()
        .copied()
        .filter(|&i| frame.vertex(i).y.abs() < half_tol)
        .collect();

    let mirror_tol = Scalar::from_f64(MIRROR_TOLERANCE);
    let mut mirror = vec![(usize::MAX, false); n];
    let mut partner = vec![usize::MAX; n];
    for &u in &upper {
        mirror[u] = (u, false);
    }
    for &a in &axis {
        partner[a] = a;
    }
    for v in 0..n {
        if mirror[v].0 != usize::MAX {
            continue;
        }
        let q = mirror_point(frame.vertex(v));
        let hits: Vec<usize> = upper
            .iter()
            .copied()
            .filter(|&u| frame.vertex(u).dist(&q) < mirror_tol)
            .collect();
        match hits.as_slice() {
            [u] if !axis.contains(u) && partner[*u] == usize::MAX => {
                mirror[v] = (*u, true);
                partner[*u] = v;
                partner[v] = *u;
            }
            _ => {
                return Err(Error::AsymmetricFixture(format!(
                    "vertex {v} has {} mirror partners",
                    hits.len()
                )))
            }
        }
    }
    if let Some(u) = upper.iter().find(|&&u| partner[u] == usize::MAX) {
        return Err(Error::AsymmetricFixture(format!(
            "upper vertex {u} has no mirror image"
        )));
    }
    for &(a, c) in frame.edges() {
        if !frame.has_edge(partner[a], partner[c]) {
            return Err(Error::AsymmetricFixture(format!(
                "edge ({a}, {c}) has no mirror image"
            )));
        }
    }

    let degrees = frame.degrees();
    let rails: Vec<usize> = upper.iter().copied().filter(|&u| degrees[u] == 2).collect();

    let is_axis: BTreeSet<usize> = axis.iter().copied().collect();
    let mut keys = BTreeSet::new();
    for &(a, c) in frame.edges() {
        let (ha, mut ma) = mirror[a];
        let (hc, mut mc) = mirror[c];
        if ma && mc {
            ma = false;
            mc = false;
        }
        if is_axis.contains(&ha) {
            ma = false;
        }
        if is_axis.contains(&hc) {
            mc = false;
        }
        keys.insert(EdgeConstraint {
            a: ha.min(hc),
            b: ha.max(hc),
            mirrored: ma || mc,
        });
    }

    let mut slot = vec![None; n];
    let mut k = 0;
    for &u in &upper {
        if u != b {
            slot[u] = Some(k);
            k += 1;
        }
    }
    let name = g
        .meta_value(meta_keys::FIXTURE)
        .or(g.meta_value(meta_keys::TEMPLATE))
        .unwrap_or("template")
        .to_string();
    Ok(LinkageTemplate {
        name,
        frame,
        upper,
        slot,
        mirror,
        axis,
        rails,
        constraints: keys.into_iter().collect(),
        b,
    })
}

impl LinkageTemplate {
    pub fn name(&self) -> &str {
        &self.name
    }

    /// The source graph in template frame (B at origin, E on the +x axis).
    pub fn frame(&self) -> &UnitGraph {
        &self.frame
    }

    pub fn upper(&self) -> &[usize] {
        &self.upper
    }

    pub fn axis(&self) -> &[usize] {
        &self.axis
    }

    pub fn rails(&self) -> &[usize] {
        &self.rails
    }

    pub fn constraints(&self) -> &[EdgeConstraint] {
        &self.constraints
    }

    /// Upper-half vertex and whether it is reflected, for every source vertex.
    pub fn mirror_map(&self) -> &[(usize, bool)] {
        &self.mirror
    }

    pub fn num_variables(&self) -> usize {
        2 * (self.upper.len() - 1) + 1
    }

    pub fn num_residuals(&self) -> usize {
        self.constraints.len() + self.axis.len() - 1 + self.rails.len()
    }

    /// State built from the source coordinates, with x_O placed where the
    /// upper rail through label A (or the first rail vertex) meets the axis.
    pub fn initial_state(&self, spec: &RingSpec) -> Vec<Scalar> {
        let mut s = Vec::with_capacity(self.num_variables());
        for &u in &self.upper {
            if u != self.b {
                let p = self.frame.vertex(u);
                s.push(p.x.clone());
                s.push(p.y.clone());
            }
        }
        let x_o = match spec.apex.as_ref() {
            Some(o) => o.x.clone(),
            None => {
                let a = self.frame.label("A").unwrap_or(self.rails[0]);
                let p = self.frame.vertex(a);
                let half = &spec.omega / 2.0;
                &p.x + &(&p.y / &half.tan())
            }
        };
        s.push(x_o);
        s
    }

    fn pos(&self, state: &[Scalar], u: usize) -> Point {
        match self.slot[u] {
            Some(k) => Point::new(state[2 * k].clone(), state[2 * k + 1].clone()),
            None => Point::origin(),
        }
    }

    /// Coordinates of every source vertex implied by a state.
    pub fn full_positions(&self, state: &[Scalar]) -> Result<Vec<Point>> {
        self.check_dim(state)?;
        Ok(self
            .mirror
            .iter()
            .map(|&(u, m)| {
                let p = self.pos(state, u);
                if m {
                    mirror_point(&p)
                } else {
                    p
                }
            })
            .collect())
    }

    fn check_dim(&self, state: &[Scalar]) -> Result<()> {
        if state.len() != self.num_variables() {
            return Err(Error::DimensionMismatch {
                expected: self.num_variables(),
                found: state.len(),
            });
        }
        Ok(())
    }

    fn residuals_at(&self, omega: &Scalar, state: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_dim(state)?;
        let mut r = Vec::with_capacity(self.num_residuals());
        for c in &self.constraints {
            let pa = self.pos(state, c.a);
            let pb = self.pos(state, c.b);
            let pb = if c.mirrored { mirror_point(&pb) } else { pb };
            r.push(pa.dist2(&pb) - 1.0);
        }
        for &v in &self.axis {
            if v != self.b {
                r.push(self.pos(state, v).y);
            }
        }
        let (s, co) = (omega / 2.0).sin_cos();
        let x_o = state.last().expect("non-empty state");
        for &v in &self.rails {
            let p = self.pos(state, v);
            r.push(&(&(&p.x - x_o) * &s) + &(&p.y * &co));
        }
        Ok(r)
    }

    fn jacobian_at(&self, omega: &Scalar, state: &[Scalar]) -> Result<Vec<SparseRow>> {
        self.check_dim(state)?;
        let mut rows = Vec::with_capacity(self.num_residuals());
        for c in &self.constraints {
            let pa = self.pos(state, c.a);
            let pb = self.pos(state, c.b);
            let sb = if c.mirrored { -1.0 } else { 1.0 };
            let dx = &pa.x - &pb.x;
            let dy = &pa.y - &(&pb.y * sb);
            let mut row = SparseRow::new();
            if let Some(k) = self.slot[c.a] {
                push_entry(&mut row, 2 * k, &dx * 2.0);
                push_entry(&mut row, 2 * k + 1, &dy * 2.0);
            }
            if let Some(k) = self.slot[c.b] {
                push_entry(&mut row, 2 * k, &dx * -2.0);
                push_entry(&mut row, 2 * k + 1, &dy * (-2.0 * sb));
            }
            rows.push(row);
        }
        for &v in &self.axis {
            if let Some(k) = self.slot[v] {
                rows.push(vec![(2 * k + 1, Scalar::one())]);
            }
        }
        let (s, co) = (omega / 2.0).sin_cos();
        let xo_col = state.len() - 1;
        for &v in &self.rails {
            let mut row = SparseRow::new();
            if let Some(k) = self.slot[v] {
                row.push((2 * k, s.clone()));
                row.push((2 * k + 1, co.clone()));
            }
            row.push((xo_col, -&s));
            rows.push(row);
        }
        Ok(rows)
    }

    /// The solved upper half as a graph in template frame, carrying what
    /// [`mirror_close`] needs to rebuild the full subgraph with the source
    /// numbering.
    pub fn half_graph(&self, r: &SolveResult) -> Result<UnitGraph> {
        self.check_dim(&r.state)?;
        let mut half_index = vec![usize::MAX; self.frame.num_vertices()];
        for (h, &u) in self.upper.iter().enumerate() {
            half_index[u] = h;
        }
        let vertices: Vec<Point> = self.upper.iter().map(|&u| self.pos(&r.state, u)).collect();
        let is_axis: BTreeSet<usize> = self.axis.iter().copied().collect();
        let mut edges = Vec::new();
        let mut cross = Vec::new();
        for c in &self.constraints {
            let e = (half_index[c.a], half_index[c.b]);
            if c.mirrored && !is_axis.contains(&c.a) && !is_axis.contains(&c.b) {
                cross.push(format!("{}-{}", e.0, e.1));
            } else if e.0 != e.1 {
                edges.push(e);
            } else {
                cross.push(format!("{}-{}", e.0, e.1));
            }
        }
        let labels: BTreeMap<String, usize> = self
            .frame
            .labels()
            .iter()
            .filter(|(_, &v)| half_index[v] != usize::MAX)
            .map(|(k, &v)| (k.clone(), half_index[v]))
            .collect();
        let mut meta = self.frame.meta().clone();
        meta.remove(meta_keys::DECLARED_TRIANGLES);
        meta.remove(meta_keys::PRECISION_CLASS);
        let layout: Vec<String> = self
            .mirror
            .iter()
            .map(|&(u, m)| {
                if m {
                    format!("{}'", half_index[u])
                } else {
                    half_index[u].to_string()
                }
            })
            .collect();
        meta.insert("mirror-map".into(), layout.join(" "));
        if !cross.is_empty() {
            meta.insert("mirror-cross-edges".into(), cross.join(" "));
        }
        meta.insert(
            "full-labels".into(),
            self.frame
                .labels()
                .iter()
                .map(|(k, v)| format!("{k}:{v}"))
                .collect::<Vec<_>>()
                .join(" "),
        );
        meta.insert(meta_keys::TEMPLATE.into(), self.name.clone());
        meta.insert(meta_keys::KIND.into(), "piece".into());
        meta.insert(meta_keys::N.into(), r.n.to_string());
        meta.insert(meta_keys::APEX_X.into(), r.apex().x.to_decimal_string());
        meta.insert(meta_keys::APEX_Y.into(), "0".into());
        meta.insert("omega-deg".into(), r.omega.to_degrees().to_decimal_string());
        meta.insert("solver.residual".into(), r.residual_norm.to_digits(6));
        meta.insert("solver.iterations".into(), r.iterations.to_string());
        meta.insert("solver.sigma-min".into(), format!("{:e}", r.sigma_min));
        meta.insert("precision".into(), precision().to_string());
        UnitGraph::new(vertices, edges, Vec::new(), labels, meta)
    }
}

pub fn residuals(t: &LinkageTemplate, spec: &RingSpec, state: &[Scalar]) -> Result<Vec<Scalar>> {
    t.residuals_at(&spec.omega, state)
}

/// Analytic Jacobian of [`residuals`], one sparse row per residual.
pub fn jacobian(t: &LinkageTemplate, spec: &RingSpec, state: &[Scalar]) -> Result<Vec<SparseRow>> {
    t.jacobian_at(&spec.omega, state)
}

/// Levenberg–Marquardt on the residual vector; `tol` bounds the final
/// max-norm (default `10^(10-p)`).
///
/// A start that is only roughly right may not tell which way a pair of
/// nearly tangent unit circles splits, and then lands on a root where two
/// vertices coincide. In that case the start is solved at a ring size where
/// the pair is further apart and the solution is followed back to `spec.n`.
pub fn solve(
    t: &LinkageTemplate,
    spec: &RingSpec,
    init: &[Scalar],
    tol: Option<&Scalar>,
) -> Result<SolveResult> {
    let first = match solve_at(t, &spec.omega, init, tol) {
        Ok(mut r) => {
            r.n = spec.n;
            return Ok(r);
        }
        Err(e @ Error::CoincidentVertices(_)) => e,
        Err(e) => return Err(e),
    };
    for k in DETOUR_OFFSETS {
        let Ok(n) = u32::try_from(spec.n as i64 + k) else {
            continue;
        };
        let Ok(detour) = RingSpec::new(n) else {
            continue;
        };
        let Ok(mut far) = solve_at(t, &detour.omega, init, tol) else {
            continue;
        };
        far.n = n;
        if let Ok(back) = continue_in_n(t, &far, spec.n) {
            let mut r = solve_at(t, &spec.omega, &back.state, tol)?;
            r.n = spec.n;
            return Ok(r);
        }
    }
    Err(first)
}

fn solve_at(
    t: &LinkageTemplate,
    omega: &Scalar,
    init: &[Scalar],
    tol: Option<&Scalar>,
) -> Result<SolveResult> {
    let tol = tol.cloned().unwrap_or_else(|| Scalar::tolerance(10));
    let nvar = t.num_variables();
    let (x, r, iterations) = levenberg_marquardt(t, omega, init, &tol)?;
    // such a root satisfies every residual but is no embedding
    if let Some((u, v)) = coincident_vertices(t, &x)? {
        return Err(Error::CoincidentVertices(format!(
            "vertices {u} and {v} coincide"
        )));
    }
    let jac = t.jacobian_at(omega, &x)?;
    let sigma_min = singular_values(&jac, nvar).last().copied().unwrap_or(0.0);
    let residual_norm = max_abs(&r);
    Ok(SolveResult {
        n: 0,
        omega: omega.clone(),
        state: x,
        converged: residual_norm < tol,
        residual_norm,
        iterations,
        sigma_min,
        rank_deficient: sigma_min < RANK_THRESHOLD,
    })
}

/// First pair of distinct source vertices closer than the dedup tolerance.
fn coincident_vertices(t: &LinkageTemplate, state: &[Scalar]) -> Result<Option<(usize, usize)>> {
    let pts = t.full_positions(state)?;
    let approx: Vec<[f64; 2]> = pts.iter().map(|p| [p.x.to_f64(), p.y.to_f64()]).collect();
    let tol = Scalar::from_f64(DEDUP_TOLERANCE);
    Ok(close_point_pairs(&approx, DEDUP_TOLERANCE, 1e-9)
        .into_iter()
        .find(|&(i, j)| pts[i].dist(&pts[j]) < tol))
}

/// Levenberg–Marquardt from `init`; returns the state, its residuals and
/// the iteration count.
fn levenberg_marquardt(
    t: &LinkageTemplate,
    omega: &Scalar,
    init: &[Scalar],
    tol: &Scalar,
) -> Result<(Vec<Scalar>, Vec<Scalar>, usize)> {
    let nvar = t.num_variables();
    let mut x = init.to_vec();
    let mut r = t.residuals_at(omega, &x)?;
    let mut cost = sum_squares(&r);
    let mut lambda = Scalar::pow10(-3);
    let lambda_floor = Scalar::pow10(-30);
    let lambda_cap = Scalar::pow10(20);
    let mut iterations = 0;
    let mut polish = 0;
    loop {
        let rinf = max_abs(&r);
        if rinf < *tol {
            if polish >= POLISH_STEPS {
                break;
            }
            polish += 1;
        }
        if iterations >= MAX_ITERATIONS {
            if rinf < *tol {
                break;
            }
            return Err(Error::NoConvergence {
                iterations,
                residual: rinf.to_f64(),
                last_feasible_omega_deg: None,
            });
        }
        iterations += 1;
        let jac = t.jacobian_at(omega, &x)?;
        let (a, g) = normal_equations(&jac, &r, nvar);
        let mut accepted = false;
        while lambda < lambda_cap {
            if let Some(dx) = damped_cholesky_solve(&a, &lambda, &g) {
                let xn: Vec<Scalar> = x.iter().zip(&dx).map(|(xi, di)| xi - di).collect();
                let rn = t.residuals_at(omega, &xn)?;
                let cn = sum_squares(&rn);
                if cn < cost {
                    x = xn;
                    r = rn;
                    cost = cn;
                    lambda = (lambda / 10.0).max(lambda_floor.clone());
                    accepted = true;
                    break;
                }
            }
            lambda *= &Scalar::from_i64(10);
        }
        if !accepted {
            if max_abs(&r) < *tol {
                break;
            }
            return Err(Error::NoConvergence {
                iterations,
                residual: max_abs(&r).to_f64(),
                last_feasible_omega_deg: None,
            });
        }
    }
    Ok((x, r, iterations))
}

/// Steps ω from the solution at `from.n` to `2π/n1`, re-solving after each
/// step of at most [`MAX_CONTINUATION_STEP_DEG`]; failed steps are halved.
pub fn continue_in_n(t: &LinkageTemplate, from: &SolveResult, n1: u32) -> Result<SolveResult> {
    if n1 == from.n {
        return Ok(from.clone());
    }
    let target = RingSpec::new(n1)?.omega;
    let w0 = from.omega.clone();
    let span_deg = (&target - &w0).to_degrees().to_f64().abs();
    let mut current = from.clone();
    let mut t_done = 0.0f64;
    let mut step = (MAX_CONTINUATION_STEP_DEG / span_deg).min(1.0);
    while t_done < 1.0 {
        let t_next = (t_done + step).min(1.0);
        let omega = if t_next >= 1.0 {
            target.clone()
        } else {
            &w0 + &(&(&target - &w0) * t_next)
        };
        let guess = predict(t, &current, &omega).unwrap_or_else(|| current.state.clone());
        match solve_at(t, &omega, &guess, None) {
            Ok(r) => {
                current = r;
                t_done = t_next;
            }
            Err(e) => {
                step /= 2.0;
                if step * span_deg < MIN_CONTINUATION_STEP_DEG {
                    let last = current.omega.to_degrees().to_f64();
                    return Err(match e {
                        Error::NoConvergence {
                            iterations,
                            residual,
                            ..
                        } if residual < 1e-6 => Error::NoConvergence {
                            iterations,
                            residual,
                            last_feasible_omega_deg: Some(last),
                        },
                        _ => Error::StepCollapse {
                            last_feasible_omega_deg: last,
                        },
                    });
                }
            }
        }
    }
    current.n = n1;
    Ok(current)
}

/// Euler predictor along the solution curve: `x + (dx/dω)·Δω` with
/// `J·dx/dω = -∂r/∂ω` solved in the least-squares sense. Without it a step
/// that passes a branch point can land on the crossing branch.
fn predict(t: &LinkageTemplate, from: &SolveResult, omega: &Scalar) -> Option<Vec<Scalar>> {
    let nvar = t.num_variables();
    let jac = t.jacobian_at(&from.omega, &from.state).ok()?;
    let (s, c) = (&from.omega / 2.0).sin_cos();
    let x_o = from.state.last()?;
    let mut dr = vec![Scalar::zero(); t.num_residuals()];
    let offset = dr.len() - t.rails.len();
    for (i, &v) in t.rails.iter().enumerate() {
        let p = t.pos(&from.state, v);
        dr[offset + i] = &(&(&(&p.x - x_o) * &c) - &(&p.y * &s)) / 2.0;
    }
    let (a, g) = normal_equations(&jac, &dr, nvar);
    let tangent = damped_cholesky_solve(&a, &Scalar::pow10(-40), &g)?;
    let dw = omega - &from.omega;
    Some(
        from.state
            .iter()
            .zip(&tangent)
            .map(|(x, d)| x - &(d * &dw))
            .collect(),
    )
}

/// The full solved subgraph, in the source numbering.
pub fn solved_base(t: &LinkageTemplate, r: &SolveResult) -> Result<UnitGraph> {
    mirror_close(&t.half_graph(r)?)
}

/// Table-1 style readout of a solve.
pub fn extract_angles(t: &LinkageTemplate, r: &SolveResult) -> Result<AngleReadout> {
    graph_angles(&solved_base(t, r)?)
}

/// Angle probes, GH and the rail angle of a labeled subgraph.
pub fn graph_angles(g: &UnitGraph) -> Result<AngleReadout> {
    let ids = g.require_labels(&["A", "C", "D", "F", "G", "H"])?;
    let p = |i: usize| g.vertex(i);
    let gh = p(ids[4]).dist(p(ids[5]));
    let fa = p(ids[0]).sub(p(ids[3]));
    let dc = p(ids[1]).sub(p(ids[2]));
    let omega_check = fa.cross(&dc).abs().atan2(&fa.dot(&dc)).to_degrees();
    let mut probes = Vec::new();
    for (name, [a, apex, c]) in g.angle_probes() {
        probes.push(ProbeReading {
            name,
            vertices: [a, apex, c],
            degrees: ccw_angle(p(a), p(apex), p(c)).to_degrees(),
        });
    }
    let first = |n: &str| {
        probes
            .iter()
            .find(|pr| pr.name == n)
            .map(|pr| pr.degrees.clone())
    };
    Ok(AngleReadout {
        alpha: first("alpha"),
        beta: first("beta"),
        gamma: first("gamma"),
        delta: first("delta"),
        gh,
        omega_check,
        probes,
    })
}
