//! Python bindings: graphs, fixtures, the closure solver, assembly,
//! verification and SVG export.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;

use matchstick::assemble;
use matchstick::fixtures;
use matchstick::io;
use matchstick::linkage::{self, RingSpec};
use matchstick::scalar;
use matchstick::search;
use matchstick::svg::{export_svg, SvgOptions};
use matchstick::verify::{self, ToleranceProfile, VerificationReport};
use matchstick::{Error, UnitGraph};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::UnknownFixture(_) | Error::MissingLabels(_) => PyKeyError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// A unit-distance graph. Coordinates are exposed as decimal strings.
#[pyclass(name = "Graph", module = "matchstick_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGraph {
    inner: UnitGraph,
}

#[pymethods]
impl PyGraph {
    /// Parses the text graph format.
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        io::graph_from_str(text)
            .map(|inner| PyGraph { inner })
            .map_err(py_err)
    }

    #[staticmethod]
    fn read(path: &str) -> PyResult<Self> {
        io::read_graph(path)
            .map(|inner| PyGraph { inner })
            .map_err(py_err)
    }

    fn to_text(&self) -> PyResult<String> {
        io::graph_to_string(&self.inner).map_err(py_err)
    }

    fn write(&self, path: &str) -> PyResult<()> {
        io::write_graph(&self.inner, path).map_err(py_err)
    }

    #[getter]
    fn num_vertices(&self) -> usize {
        self.inner.num_vertices()
    }

    #[getter]
    fn num_edges(&self) -> usize {
        self.inner.num_edges()
    }

    #[getter]
    fn vertices(&self) -> Vec<(String, String)> {
        self.inner
            .vertices()
            .iter()
            .map(|p| (p.x.to_decimal_string(), p.y.to_decimal_string()))
            .collect()
    }

    /// Vertex coordinates rounded to floats.
    fn vertices_f64(&self) -> Vec<(f64, f64)> {
        self.inner
            .vertices()
            .iter()
            .map(|p| (p.x.to_f64(), p.y.to_f64()))
            .collect()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    #[getter]
    fn triangles(&self) -> Vec<(usize, usize, usize)> {
        self.inner
            .triangles()
            .iter()
            .map(|t| (t[0], t[1], t[2]))
            .collect()
    }

    #[getter]
    fn labels(&self) -> BTreeMap<String, usize> {
        self.inner.labels().clone()
    }

    #[getter]
    fn meta(&self) -> BTreeMap<String, String> {
        self.inner.meta().clone()
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.inner.kind().as_str()
    }

    fn degree_histogram(&self) -> BTreeMap<usize, usize> {
        self.inner.degree_histogram()
    }

    fn __len__(&self) -> usize {
        self.inner.num_vertices()
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph({} vertices, {} edges, {} triangles, kind={})",
            self.inner.num_vertices(),
            self.inner.num_edges(),
            self.inner.triangles().len(),
            self.inner.kind().as_str()
        )
    }
}

/// Outcome of a closure solve.
#[pyclass(name = "Solution", module = "matchstick_py", frozen, get_all)]
struct PySolution {
    graph: PyGraph,
    n: u32,
    residual: f64,
    iterations: usize,
    sigma_min: f64,
    rank_deficient: bool,
}

#[pymethods]
impl PySolution {
    fn __repr__(&self) -> String {
        format!(
            "Solution(n={}, residual={:e}, iterations={}, sigma_min={:e})",
            self.n, self.residual, self.iterations, self.sigma_min
        )
    }
}

#[pyclass(name = "Report", module = "matchstick_py", frozen)]
struct PyReport {
    inner: VerificationReport,
}

#[pymethods]
impl PyReport {
    #[getter]
    fn verdicts(&self) -> BTreeMap<&'static str, bool> {
        let v = self.inner.verdicts;
        BTreeMap::from([
            ("unit", v.unit),
            ("regular4", v.regular4),
            ("planar", v.planar),
            ("no_additional", v.no_additional),
        ])
    }

    #[getter]
    fn exit_code(&self) -> i32 {
        self.inner.exit_code()
    }

    #[getter]
    fn crossings(&self) -> usize {
        self.inner.crossings.len()
    }

    #[getter]
    fn incidences(&self) -> usize {
        self.inner.incidences.len()
    }

    #[getter]
    fn min_vertex_vertex(&self) -> Option<String> {
        self.inner
            .min_vertex_vertex
            .as_ref()
            .map(|p| p.distance.to_decimal_string())
    }

    #[getter]
    fn additional_unit_triangles(&self) -> Vec<(usize, usize, usize)> {
        self.inner
            .additional_unit_triangles
            .iter()
            .map(|t| (t[0], t[1], t[2]))
            .collect()
    }

    #[getter]
    fn larger_triangles(&self) -> Vec<(usize, (usize, usize, usize))> {
        self.inner
            .larger_triangles
            .iter()
            .map(|t| (t.side, (t.corners[0], t.corners[1], t.corners[2])))
            .collect()
    }

    fn summary(&self) -> String {
        self.inner.summary()
    }

    fn to_json(&self) -> PyResult<String> {
        self.inner.to_json().map_err(py_err)
    }
}

#[pyfunction]
fn precision() -> u32 {
    scalar::precision()
}

/// Sets the working precision in decimal digits; call before creating graphs.
#[pyfunction]
fn set_precision(digits: u32) -> PyResult<()> {
    scalar::set_precision(digits).map_err(py_err)
}

#[pyfunction]
fn fixture_names() -> Vec<&'static str> {
    fixtures::fixture_names()
}

#[pyfunction]
fn load_fixture(name: &str) -> PyResult<PyGraph> {
    fixtures::load_fixture(name)
        .map(|inner| PyGraph { inner })
        .map_err(py_err)
}

/// Solves the closure of fixture template `template` at ring size `n`,
/// continuing from the fixture's own ring size when they differ.
#[pyfunction]
#[pyo3(signature = (template, n, tol=None))]
fn solve(template: &str, n: u32, tol: Option<&str>) -> PyResult<PySolution> {
    let run = || -> matchstick::Result<PySolution> {
        let tol = tol.map(matchstick::Scalar::parse).transpose()?;
        let g = fixtures::load_fixture(template)?;
        let t = linkage::build_template(&g)?;
        let anchor = g
            .meta_value("anchor-n")
            .and_then(|s| s.parse().ok())
            .unwrap_or(n);
        let spec = RingSpec::new(anchor)?;
        let mut r = linkage::solve(&t, &spec, &t.initial_state(&spec), tol.as_ref())?;
        if anchor != n {
            r = linkage::continue_in_n(&t, &r, n)?;
        }
        Ok(PySolution {
            graph: PyGraph {
                inner: linkage::solved_base(&t, &r)?,
            },
            n,
            residual: r.residual_norm.to_f64(),
            iterations: r.iterations,
            sigma_min: r.sigma_min,
            rank_deficient: r.rank_deficient,
        })
    };
    run().map_err(py_err)
}

/// Angle readout (degrees, as decimal strings) of a labeled subgraph.
#[pyfunction]
fn angles(g: &PyGraph) -> PyResult<BTreeMap<String, String>> {
    let a = linkage::graph_angles(&g.inner).map_err(py_err)?;
    let mut out = BTreeMap::new();
    for (k, v) in [
        ("alpha", &a.alpha),
        ("beta", &a.beta),
        ("gamma", &a.gamma),
        ("delta", &a.delta),
    ] {
        if let Some(v) = v {
            out.insert(k.to_string(), v.to_decimal_string());
        }
    }
    out.insert("GH".into(), a.gh.to_decimal_string());
    out.insert("omega".into(), a.omega_check.to_decimal_string());
    Ok(out)
}

#[pyfunction]
fn ring_assemble(base: &PyGraph, n: u32) -> PyResult<PyGraph> {
    let spec = RingSpec::new(n).map_err(py_err)?;
    assemble::ring_assemble(&base.inner, &spec)
        .map(|inner| PyGraph { inner })
        .map_err(py_err)
}

#[pyfunction]
fn make_adapter(base: &PyGraph) -> PyResult<PyGraph> {
    assemble::make_adapter(&base.inner)
        .map(|inner| PyGraph { inner })
        .map_err(py_err)
}

#[pyfunction]
fn adapter_mirror(g4: &PyGraph) -> PyResult<PyGraph> {
    assemble::adapter_mirror(&g4.inner)
        .map(|inner| PyGraph { inner })
        .map_err(py_err)
}

/// Glues pieces end to end; each piece enters through A/F unless its flag is true.
#[pyfunction]
fn chain_assemble(pieces: Vec<(PyRef<'_, PyGraph>, bool)>) -> PyResult<PyGraph> {
    let pieces: Vec<_> = pieces
        .iter()
        .map(|(g, rev)| {
            (
                g.inner.clone(),
                if *rev {
                    assemble::SeamOrientation::Reversed
                } else {
                    assemble::SeamOrientation::Forward
                },
            )
        })
        .collect();
    assemble::chain_assemble(&pieces)
        .map(|inner| PyGraph { inner })
        .map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (g, profile="solved"))]
fn verify_graph(g: &PyGraph, profile: &str) -> PyResult<PyReport> {
    let prof = ToleranceProfile::by_name(profile)
        .ok_or_else(|| PyValueError::new_err(format!("unknown profile {profile:?}")))?;
    Ok(PyReport {
        inner: verify::verify(&g.inner, &prof),
    })
}

/// Minimal passing n in `[lo, hi]` for a template, with the table as JSON.
#[pyfunction]
fn minimal_n(template: &str, lo: u32, hi: u32) -> PyResult<(Option<u32>, String)> {
    let run = || -> matchstick::Result<(Option<u32>, String)> {
        let g = fixtures::load_fixture(template)?;
        let t = linkage::build_template(&g)?;
        let anchor = g
            .meta_value("anchor-n")
            .and_then(|s| s.parse().ok())
            .unwrap_or(lo);
        let spec = RingSpec::new(anchor)?;
        let r = linkage::solve(&t, &spec, &t.initial_state(&spec), None)?;
        match search::minimal_n_search(
            &t,
            &r,
            lo,
            hi,
            &ToleranceProfile::solved(),
            &search::SearchCriteria::full(),
        ) {
            Ok(o) => Ok((Some(o.minimal_n), search::table_to_json(&o.table))),
            Err(Error::NoPassingN { table, .. }) => Ok((None, search::table_to_json(&table))),
            Err(e) => Err(e),
        }
    };
    run().map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (g, insets=4, scale=40.0))]
fn to_svg(g: &PyGraph, insets: usize, scale: f64) -> String {
    export_svg(
        &g.inner,
        &SvgOptions {
            insets,
            scale,
            ..SvgOptions::default()
        },
    )
}

#[pymodule]
fn matchstick_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PySolution>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(precision, m)?)?;
    m.add_function(wrap_pyfunction!(set_precision, m)?)?;
    m.add_function(wrap_pyfunction!(fixture_names, m)?)?;
    m.add_function(wrap_pyfunction!(load_fixture, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(angles, m)?)?;
    m.add_function(wrap_pyfunction!(ring_assemble, m)?)?;
    m.add_function(wrap_pyfunction!(make_adapter, m)?)?;
    m.add_function(wrap_pyfunction!(adapter_mirror, m)?)?;
    m.add_function(wrap_pyfunction!(chain_assemble, m)?)?;
    m.add_function(wrap_pyfunction!(verify_graph, m)?)?;
    m.add_function(wrap_pyfunction!(minimal_n, m)?)?;
    m.add_function(wrap_pyfunction!(to_svg, m)?)?;
    Ok(())
}
