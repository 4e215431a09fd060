use dofnet_core::scheme::LegalityReport;
use serde::Serialize;

use super::scheme::GainJson;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LegalityJson {
    pub legal: bool,
    pub delay: u32,
    pub violations: Vec<ViolationJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ViolationJson {
    pub node: String,
    pub hop: usize,
    pub slot: u32,
    pub gain: Option<GainJson>,
    pub reason: String,
}

impl LegalityJson {
    pub fn new(report: &LegalityReport, delay: u32) -> Self {
        LegalityJson {
            legal: report.is_legal(),
            delay,
            violations: report
                .violations
                .iter()
                .map(|v| ViolationJson {
                    node: v.node.to_string(),
                    hop: v.hop,
                    slot: v.slot,
                    gain: v.gain.as_ref().map(GainJson::from),
                    reason: v.reason.to_string(),
                })
                .collect(),
        }
    }
}
