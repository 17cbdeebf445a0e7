use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("precision must be at least 30 significant digits, got {0}")]
    Precision(u32),

    #[error("circle centers coincide (distance {distance})")]
    DegenerateCenters { distance: f64 },
    #[error("unit circles do not intersect (center distance {distance})")]
    NoIntersection { distance: f64 },
    #[error("degenerate segment: endpoints coincide")]
    DegenerateSegment,

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unsupported graph file version {found} (expected {expected})")]
    Version { found: String, expected: u32 },
    #[error("vertex merge chain through raw vertex {vertex} spans {diameter:e}, more than the dedup tolerance")]
    MergeAmbiguity { vertex: u32, diameter: f64 },

    #[error("missing labels: {0}")]
    MissingLabels(String),
    #[error("fixture is not mirror-symmetric: {0}")]
    AsymmetricFixture(String),
    #[error("state has {found} entries, template expects {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("solver did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence {
        iterations: usize,
        residual: f64,
        last_feasible_omega_deg: Option<f64>,
    },
    #[error("degenerate solution: {0}")]
    CoincidentVertices(String),
    #[error(
        "continuation collapsed near omega = {last_feasible_omega_deg} deg (linkage locks up)"
    )]
    StepCollapse { last_feasible_omega_deg: f64 },

    #[error("seam mismatch: {0}")]
    SeamMismatch(String),
    #[error("expected coincidence failed: {0}")]
    MergeFailure(String),
    #[error("unexpected vertex collision: {0}")]
    UnexpectedCollision(String),

    #[error("no n in [{from}, {to}] passes the requested verdicts")]
    NoPassingN {
        from: u32,
        to: u32,
        table: Vec<crate::search::SearchRow>,
    },

    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
