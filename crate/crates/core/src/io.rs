//! JSON encoding of complexes: `{"n": 4, "facets": [[1,2],[3,4]], "mode": "strict"}`.

use serde::{Deserialize, Serialize};

use crate::complex::{Mode, SimplicialComplex};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub n: usize,
    pub facets: Vec<Vec<usize>>,
    #[serde(default)]
    pub mode: Mode,
}

impl ComplexJson {
    pub fn to_complex(&self) -> Result<SimplicialComplex> {
        SimplicialComplex::from_facet_lists(self.n, &self.facets, self.mode)
    }
}

impl From<&SimplicialComplex> for ComplexJson {
    fn from(c: &SimplicialComplex) -> Self {
        ComplexJson { n: c.n(), facets: c.facet_lists(), mode: c.mode() }
    }
}

pub fn complex_from_json(text: &str) -> Result<SimplicialComplex> {
    let raw: ComplexJson = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    raw.to_complex()
}

pub fn complex_to_json(complex: &SimplicialComplex) -> String {
    serde_json::to_string(&ComplexJson::from(complex)).expect("complex JSON is serialisable")
}

/// Canonical one-line encoding: the ascending list of face bitmasks.
pub fn canonical_encoding(complex: &SimplicialComplex) -> String {
    let masks: Vec<String> = complex.faces().iter().map(|f| f.mask().to_string()).collect();
    format!("{}:{}", complex.n(), masks.join(","))
}
