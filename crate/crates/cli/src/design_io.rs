//! The on-disk JSON schema for superposition designs.
//!
//! `design` emits this document; `curve` accepts it back. Rates are always
//! stored in nats — the document is the canonical exchange format, unit
//! conversion is display-time only.

use serde::{Deserialize, Serialize};

use mmse_codes::superposition::{SnrLadder, SuperpositionDesign};

use crate::CliError;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct DesignDoc {
    pub snrs: Vec<f64>,
    pub betas: Vec<f64>,
    pub layer_rates_nats: Vec<f64>,
    pub total_rate_nats: f64,
}

impl DesignDoc {
    pub fn from_design(design: &SuperpositionDesign) -> Self {
        DesignDoc {
            snrs: design.ladder().points().to_vec(),
            betas: design.betas().to_vec(),
            layer_rates_nats: design.layer_rates().iter().map(|r| r.nats()).collect(),
            total_rate_nats: design.total_rate().nats(),
        }
    }

    /// Rebuild the design from its parameters, rejecting documents whose
    /// recorded rates no longer match (a stale or hand-edited file).
    pub fn to_design(&self) -> Result<SuperpositionDesign, CliError> {
        let design =
            SuperpositionDesign::new(SnrLadder::new(self.snrs.clone())?, self.betas.clone())?;
        let rebuilt: Vec<f64> = design.layer_rates().iter().map(|r| r.nats()).collect();
        let consistent = rebuilt.len() == self.layer_rates_nats.len()
            && rebuilt
                .iter()
                .zip(&self.layer_rates_nats)
                .all(|(a, b)| (a - b).abs() <= 1e-9)
            && (design.total_rate().nats() - self.total_rate_nats).abs() <= 1e-9;
        if !consistent {
            return Err(CliError::usage(
                "design document rates are inconsistent with its parameters",
            ));
        }
        Ok(design)
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("bad design JSON: {e}")))
    }

    pub fn load(path: &std::path::Path) -> Result<Self, CliError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}
