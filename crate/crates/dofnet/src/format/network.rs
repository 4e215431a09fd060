use dofnet_core::{LayeredNetwork, NodeId};
use serde::{Deserialize, Serialize};

use super::FormatError;

/// `{"layers": [[..]], "edges": [[u, v]], "sources": [s1, s2], "destinations": [d1, d2]}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkJson {
    pub layers: Vec<Vec<String>>,
    pub edges: Vec<[String; 2]>,
    pub sources: [String; 2],
    pub destinations: [String; 2],
}

impl From<&LayeredNetwork> for NetworkJson {
    fn from(net: &LayeredNetwork) -> Self {
        let s = |v: &NodeId| v.as_str().to_string();
        NetworkJson {
            layers: net
                .layers()
                .iter()
                .map(|l| l.iter().map(s).collect())
                .collect(),
            edges: net.edges().iter().map(|(u, v)| [s(u), s(v)]).collect(),
            sources: net.sources().clone().map(|v| s(&v)),
            destinations: net.destinations().clone().map(|v| s(&v)),
        }
    }
}

impl NetworkJson {
    pub fn to_network(&self) -> Result<LayeredNetwork, FormatError> {
        let id = |v: &String| NodeId::new(v.as_str());
        Ok(LayeredNetwork::new(
            self.layers
                .iter()
                .map(|l| l.iter().map(id).collect())
                .collect(),
            self.edges.iter().map(|[u, v]| (id(u), id(v))).collect(),
            self.sources.clone().map(|v| id(&v)),
            self.destinations.clone().map(|v| id(&v)),
        )?)
    }

    pub fn parse(text: &str) -> Result<LayeredNetwork, FormatError> {
        serde_json::from_str::<NetworkJson>(text)?.to_network()
    }

    pub fn render(net: &LayeredNetwork) -> String {
        serde_json::to_string_pretty(&NetworkJson::from(net)).expect("plain data")
    }
}
