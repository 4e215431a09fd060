use dofnet_core::{BottleneckReport, Flow};
use serde::Serialize;

use super::flow_index;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportJson {
    pub bottlenecks: Vec<BottleneckJson>,
    pub omniscient: Vec<OmniscientJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BottleneckJson {
    pub node: String,
    pub destination: u8,
    pub m: usize,
    pub witness: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OmniscientJson {
    pub node: String,
    pub destination: u8,
    pub witness: String,
}

impl From<&BottleneckReport> for ReportJson {
    fn from(r: &BottleneckReport) -> Self {
        let d = |f: Flow| flow_index(f);
        ReportJson {
            bottlenecks: r
                .bottlenecks
                .iter()
                .map(|b| BottleneckJson {
                    node: b.node.to_string(),
                    destination: d(b.destination),
                    m: b.minimal_m,
                    witness: b.witness.iter().map(ToString::to_string).collect(),
                })
                .collect(),
            omniscient: r
                .omniscient
                .iter()
                .map(|o| OmniscientJson {
                    node: o.node.to_string(),
                    destination: d(o.destination),
                    witness: o.witness_u.to_string(),
                })
                .collect(),
        }
    }
}
