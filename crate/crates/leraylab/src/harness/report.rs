//! JSON report records shared by the CLI and the presets.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl CriterionResult {
    pub fn new(name: &str, pass: bool, detail: impl Into<String>) -> Self {
        CriterionResult { name: name.to_string(), pass, detail: detail.into() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub preset: String,
    pub pass: bool,
    pub criteria: Vec<CriterionResult>,
}

impl Report {
    pub fn new(preset: &str, criteria: Vec<CriterionResult>) -> Self {
        let pass = criteria.iter().all(|c| c.pass);
        Report { schema_version: 1, preset: preset.to_string(), pass, criteria }
    }
}
