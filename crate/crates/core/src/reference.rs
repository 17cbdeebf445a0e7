//! Published reference readouts for the two ring templates.

use serde::Serialize;

use crate::error::Result;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ReferenceColumn {
    pub template: &'static str,
    pub n: u32,
    pub alpha: &'static str,
    pub beta: &'static str,
    pub gamma: &'static str,
    pub delta: Option<&'static str>,
    pub gh: &'static str,
}

pub const G1: ReferenceColumn = ReferenceColumn {
    template: "g1",
    n: 100,
    alpha: "91.58566772584003",
    beta: "43.94364026236698",
    gamma: "119.90161279889431",
    delta: None,
    gh: "0.00171718039014",
};

pub const G2: ReferenceColumn = ReferenceColumn {
    template: "g2",
    n: 169,
    alpha: "78.95050838942406",
    beta: "38.40835335322197",
    gamma: "119.99637583181277",
    delta: Some("122.42510282308054"),
    gh: "0.00006325366750",
};

pub fn reference(template: &str) -> Option<&'static ReferenceColumn> {
    match template.to_ascii_lowercase().as_str() {
        "g1" => Some(&G1),
        "g2" => Some(&G2),
        _ => None,
    }
}

impl ReferenceColumn {
    pub fn omega_deg(&self) -> Scalar {
        Scalar::from_i64(360) / Scalar::from_i64(self.n as i64)
    }

    /// (name, reference value) pairs in display order.
    pub fn values(&self) -> Result<Vec<(&'static str, Scalar)>> {
        let mut v = vec![
            ("alpha", Scalar::parse(self.alpha)?),
            ("beta", Scalar::parse(self.beta)?),
            ("gamma", Scalar::parse(self.gamma)?),
        ];
        if let Some(d) = self.delta {
            v.push(("delta", Scalar::parse(d)?));
        }
        v.push(("GH", Scalar::parse(self.gh)?));
        v.push(("omega", self.omega_deg()));
        Ok(v)
    }
}
