//! The bundled coordinate tables.

use crate::error::{Error, Result};
use crate::graph::{ingest_fixture, RawFixture, UnitGraph};

const SOURCES: &[(&str, &str)] = &[
    ("fig1-left", include_str!("../fixtures/fig1-left.fix")),
    ("fig1-right", include_str!("../fixtures/fig1-right.fix")),
    ("g1", include_str!("../fixtures/g1.fix")),
    ("g2", include_str!("../fixtures/g2.fix")),
    ("g4", include_str!("../fixtures/g4.fix")),
];

pub fn fixture_names() -> Vec<&'static str> {
    SOURCES.iter().map(|s| s.0).collect()
}

/// Fixture source text, looked up case-insensitively.
pub fn fixture_source(name: &str) -> Result<&'static str> {
    SOURCES
        .iter()
        .find(|s| s.0.eq_ignore_ascii_case(name))
        .map(|s| s.1)
        .ok_or_else(|| Error::UnknownFixture(name.to_string()))
}

pub fn raw_fixture(name: &str) -> Result<RawFixture> {
    RawFixture::parse(fixture_source(name)?)
}

/// Parses and ingests a bundled fixture at the current precision.
pub fn load_fixture(name: &str) -> Result<UnitGraph> {
    ingest_fixture(&raw_fixture(name)?)
}
