//! Layered two-unicast networks.
//!
//! A [`LayeredNetwork`] is a DAG whose vertices are partitioned into layers
//! `V_1..V_r`, with every edge going from some layer `i` to layer `i + 1`.
//! The first layer holds exactly the two sources and the last layer exactly
//! the two destinations. Networks are immutable once built.

pub(crate) mod families;

pub use families::{bottleneck_family, double_bottleneck_family, no_bottleneck_example, Family};

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Name of a vertex, unique within its network.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(String);

impl NodeId {
    pub fn new(name: impl Into<String>) -> Self {
        NodeId(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for NodeId {
    fn from(name: &str) -> Self {
        NodeId(name.into())
    }
}

impl From<String> for NodeId {
    fn from(name: String) -> Self {
        NodeId(name)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// One of the two unicast sessions: flow 1 runs `s1 -> d1`, flow 2 runs `s2 -> d2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flow {
    One,
    Two,
}

impl Flow {
    pub const BOTH: [Flow; 2] = [Flow::One, Flow::Two];

    /// 1 or 2.
    pub fn index(self) -> u8 {
        match self {
            Flow::One => 1,
            Flow::Two => 2,
        }
    }

    pub fn from_index(i: u8) -> Option<Flow> {
        match i {
            1 => Some(Flow::One),
            2 => Some(Flow::Two),
            _ => None,
        }
    }

    /// The other flow (`ī = 3 - i`).
    pub fn other(self) -> Flow {
        match self {
            Flow::One => Flow::Two,
            Flow::Two => Flow::One,
        }
    }

    fn slot(self) -> usize {
        self.index() as usize - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NetworkError {
    #[error("a layered network needs at least 2 layers, got {0}")]
    TooFewLayers(usize),
    #[error("empty node name")]
    EmptyName,
    #[error("duplicate node `{0}`")]
    DuplicateNode(NodeId),
    #[error("unknown node `{0}`")]
    UnknownNode(NodeId),
    #[error("self-loop on `{0}`")]
    SelfLoop(NodeId),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(NodeId, NodeId),
    #[error(
        "layering violation: edge ({from}, {to}) goes from layer {from_layer} to layer {to_layer}"
    )]
    LayeringViolation {
        from: NodeId,
        to: NodeId,
        from_layer: usize,
        to_layer: usize,
    },
    #[error("sources and destinations must be four distinct nodes")]
    IndistinctEndpoints,
    #[error("missing source: the first layer must be exactly {{{0}, {1}}}")]
    SourceLayer(NodeId, NodeId),
    #[error("missing destination: the last layer must be exactly {{{0}, {1}}}")]
    DestinationLayer(NodeId, NodeId),
    #[error("invalid family parameter m = {0} (must be at least 1)")]
    InvalidParameter(u32),
    #[error("unknown network family `{0}`")]
    UnknownFamily(String),
    #[error("family `{0}` takes no parameter")]
    UnexpectedParameter(String),
}

/// The DAG `(G, L)` with its layer partition and the two source/destination pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayeredNetwork {
    layers: Vec<Vec<NodeId>>,
    edges: Vec<(NodeId, NodeId)>,
    sources: [NodeId; 2],
    destinations: [NodeId; 2],
    // Dense indices. Node `i` is `names[i]`; nodes are numbered in layer order.
    names: Vec<NodeId>,
    index: BTreeMap<NodeId, usize>,
    layer_of: Vec<usize>,
    parents: Vec<Vec<usize>>,
    children: Vec<Vec<usize>>,
}

impl LayeredNetwork {
    /// Validates and builds a network.
    ///
    /// Layers are given in order, the first must be `{s1, s2}` and the last
    /// `{d1, d2}`; the order of nodes inside a layer and the order of edges
    /// are preserved.
    pub fn new(
        layers: Vec<Vec<NodeId>>,
        edges: Vec<(NodeId, NodeId)>,
        sources: [NodeId; 2],
        destinations: [NodeId; 2],
    ) -> Result<Self, NetworkError> {
        if layers.len() < 2 {
            return Err(NetworkError::TooFewLayers(layers.len()));
        }

        let mut names = Vec::new();
        let mut index = BTreeMap::new();
        let mut layer_of = Vec::new();
        for (l, layer) in layers.iter().enumerate() {
            for v in layer {
                if v.as_str().is_empty() {
                    return Err(NetworkError::EmptyName);
                }
                if index.insert(v.clone(), names.len()).is_some() {
                    return Err(NetworkError::DuplicateNode(v.clone()));
                }
                names.push(v.clone());
                layer_of.push(l);
            }
        }

        let endpoints: BTreeSet<&NodeId> = sources.iter().chain(destinations.iter()).collect();
        if endpoints.len() != 4 {
            return Err(NetworkError::IndistinctEndpoints);
        }
        let first: BTreeSet<&NodeId> = layers[0].iter().collect();
        if first != sources.iter().collect() {
            return Err(NetworkError::SourceLayer(
                sources[0].clone(),
                sources[1].clone(),
            ));
        }
        let last: BTreeSet<&NodeId> = layers[layers.len() - 1].iter().collect();
        if last != destinations.iter().collect() {
            return Err(NetworkError::DestinationLayer(
                destinations[0].clone(),
                destinations[1].clone(),
            ));
        }

        let mut parents = vec![Vec::new(); names.len()];
        let mut children = vec![Vec::new(); names.len()];
        let mut seen = BTreeSet::new();
        for (u, v) in &edges {
            let iu = *index
                .get(u)
                .ok_or_else(|| NetworkError::UnknownNode(u.clone()))?;
            let iv = *index
                .get(v)
                .ok_or_else(|| NetworkError::UnknownNode(v.clone()))?;
            if iu == iv {
                return Err(NetworkError::SelfLoop(u.clone()));
            }
            if layer_of[iv] != layer_of[iu] + 1 {
                return Err(NetworkError::LayeringViolation {
                    from: u.clone(),
                    to: v.clone(),
                    from_layer: layer_of[iu] + 1,
                    to_layer: layer_of[iv] + 1,
                });
            }
            if !seen.insert((iu, iv)) {
                return Err(NetworkError::DuplicateEdge(u.clone(), v.clone()));
            }
            parents[iv].push(iu);
            children[iu].push(iv);
        }

        Ok(LayeredNetwork {
            layers,
            edges,
            sources,
            destinations,
            names,
            index,
            layer_of,
            parents,
            children,
        })
    }

    pub fn layers(&self) -> &[Vec<NodeId>] {
        &self.layers
    }

    pub fn num_layers(&self) -> usize {
        self.layers.len()
    }

    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn sources(&self) -> &[NodeId; 2] {
        &self.sources
    }

    pub fn destinations(&self) -> &[NodeId; 2] {
        &self.destinations
    }

    pub fn source(&self, flow: Flow) -> &NodeId {
        &self.sources[flow.slot()]
    }

    pub fn destination(&self, flow: Flow) -> &NodeId {
        &self.destinations[flow.slot()]
    }

    /// All nodes in layer order.
    pub fn nodes(&self) -> &[NodeId] {
        &self.names
    }

    pub fn num_nodes(&self) -> usize {
        self.names.len()
    }

    pub fn contains(&self, v: &NodeId) -> bool {
        self.index.contains_key(v)
    }

    /// Zero-based layer index of `v`.
    pub fn layer_of(&self, v: &NodeId) -> Result<usize, NetworkError> {
        Ok(self.layer_of[self.idx(v)?])
    }

    /// The parent set `I(v)`.
    pub fn parents(&self, v: &NodeId) -> Result<BTreeSet<NodeId>, NetworkError> {
        let i = self.idx(v)?;
        Ok(self.parents[i]
            .iter()
            .map(|&p| self.names[p].clone())
            .collect())
    }

    pub fn children(&self, v: &NodeId) -> Result<BTreeSet<NodeId>, NetworkError> {
        let i = self.idx(v)?;
        Ok(self.children[i]
            .iter()
            .map(|&c| self.names[c].clone())
            .collect())
    }

    /// Position of the edge `(from, to)` in [`edges`](Self::edges).
    pub fn edge_index(&self, from: &NodeId, to: &NodeId) -> Option<usize> {
        self.edges.iter().position(|(u, v)| u == from && v == to)
    }

    /// Forward-reachable set from `from` once `removed` (and incident edges)
    /// is deleted. Removed nodes are never returned, even when listed in `from`.
    pub fn reachable(
        &self,
        from: &BTreeSet<NodeId>,
        removed: &BTreeSet<NodeId>,
    ) -> Result<BTreeSet<NodeId>, NetworkError> {
        let start = self.indices(from)?;
        let mut mask = vec![false; self.names.len()];
        for i in self.indices(removed)? {
            mask[i] = true;
        }
        let seen = self.reach_mask(&start, &mask);
        Ok(seen
            .iter()
            .enumerate()
            .filter(|(_, &r)| r)
            .map(|(i, _)| self.names[i].clone())
            .collect())
    }

    /// True when some directed path runs from `from` to `to`.
    pub fn has_path(&self, from: &NodeId, to: &NodeId) -> Result<bool, NetworkError> {
        let f = self.idx(from)?;
        let t = self.idx(to)?;
        Ok(self.reach_mask(&[f], &vec![false; self.names.len()])[t])
    }

    pub(crate) fn idx(&self, v: &NodeId) -> Result<usize, NetworkError> {
        self.index
            .get(v)
            .copied()
            .ok_or_else(|| NetworkError::UnknownNode(v.clone()))
    }

    pub(crate) fn indices<'a, I>(&self, nodes: I) -> Result<Vec<usize>, NetworkError>
    where
        I: IntoIterator<Item = &'a NodeId>,
    {
        nodes.into_iter().map(|v| self.idx(v)).collect()
    }

    pub(crate) fn name(&self, i: usize) -> &NodeId {
        &self.names[i]
    }

    pub(crate) fn parent_indices(&self, i: usize) -> &[usize] {
        &self.parents[i]
    }

    pub(crate) fn layer_index(&self, i: usize) -> usize {
        self.layer_of[i]
    }

    /// BFS over dense indices; `removed[i]` nodes are skipped entirely.
    pub(crate) fn reach_mask(&self, from: &[usize], removed: &[bool]) -> Vec<bool> {
        let mut seen = vec![false; self.names.len()];
        let mut queue = VecDeque::new();
        for &s in from {
            if !removed[s] && !seen[s] {
                seen[s] = true;
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            for &c in &self.children[u] {
                if !removed[c] && !seen[c] {
                    seen[c] = true;
                    queue.push_back(c);
                }
            }
        }
        seen
    }
}
