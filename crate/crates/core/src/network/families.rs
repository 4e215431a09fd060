//! Built-in topologies.
//!
//! Node names are fixed so that generated documents are byte-stable:
//! `s1, s2, v1.., w, u1.., d1, d2` for the single-bottleneck family, plus
//! `g1, g2, x1.., w2, y1..` for the second half of the double family.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{LayeredNetwork, NetworkError, NodeId};

/// Identifier of a built-in network family (and of its built-in scheme).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// One `m`-bottleneck node for `d1`; corner point `((m-1)/m, 1)`.
    Bottleneck(u32),
    /// An `m`-bottleneck for each destination; corner point `(m/(m+1), m/(m+1))`.
    DoubleBottleneck(u32),
    /// Fixed 12-node network without bottleneck or omniscient nodes.
    NoBottleneck,
}

impl Family {
    pub const NAMES: [&'static str; 3] = ["bottleneck", "double-bottleneck", "no-bottleneck"];

    /// Parses a family name; `m` is required for the parameterized families
    /// and must be absent (or 1) for `no-bottleneck`.
    pub fn parse(name: &str, m: Option<u32>) -> Result<Family, NetworkError> {
        let need_m = |m: Option<u32>| match m {
            Some(0) | None => Err(NetworkError::InvalidParameter(m.unwrap_or(0))),
            Some(m) => Ok(m),
        };
        match name {
            "bottleneck" => Ok(Family::Bottleneck(need_m(m)?)),
            "double-bottleneck" => Ok(Family::DoubleBottleneck(need_m(m)?)),
            "no-bottleneck" => match m {
                None | Some(1) => Ok(Family::NoBottleneck),
                Some(_) => Err(NetworkError::UnexpectedParameter(name.to_string())),
            },
            other => Err(NetworkError::UnknownFamily(other.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Bottleneck(_) => "bottleneck",
            Family::DoubleBottleneck(_) => "double-bottleneck",
            Family::NoBottleneck => "no-bottleneck",
        }
    }

    pub fn m(&self) -> Option<u32> {
        match *self {
            Family::Bottleneck(m) | Family::DoubleBottleneck(m) => Some(m),
            Family::NoBottleneck => None,
        }
    }

    pub fn network(&self) -> Result<LayeredNetwork, NetworkError> {
        match *self {
            Family::Bottleneck(m) => bottleneck_family(m),
            Family::DoubleBottleneck(m) => double_bottleneck_family(m),
            Family::NoBottleneck => Ok(no_bottleneck_example()),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.m() {
            Some(m) => write!(f, "{}({})", self.name(), m),
            None => f.write_str(self.name()),
        }
    }
}

/// Names of one bottleneck stage: a single relay carrying the "narrow" flow,
/// `m` relays carrying the "wide" flow, the bottleneck node that hears all of
/// them, and the side relays that carry the wide flow around it.
pub(crate) struct StageNames {
    pub single: String,
    pub multi: Vec<String>,
    pub bottleneck: String,
    pub side: Vec<String>,
}

impl StageNames {
    pub(crate) fn new(m: u32, relay: &str, bottleneck: &str, side: &str) -> Self {
        let m = m as usize;
        StageNames {
            single: format!("{relay}1"),
            multi: (2..=m + 1).map(|j| format!("{relay}{j}")).collect(),
            bottleneck: bottleneck.to_string(),
            side: (1..=m.saturating_sub(1).max(1))
                .map(|k| format!("{side}{k}"))
                .collect(),
        }
    }

    /// Parents of side relay `k` (0-based): the distributor `multi[0]` and
    /// `multi[k + 1]`. With `m = 1` the only side relay hangs off `multi[0]`.
    pub(crate) fn side_parents(&self, k: usize) -> Vec<&str> {
        match self.multi.get(k + 1) {
            Some(other) => vec![self.multi[0].as_str(), other.as_str()],
            None => vec![self.multi[0].as_str()],
        }
    }

    fn relay_layer(&self) -> Vec<NodeId> {
        core::iter::once(&self.single)
            .chain(self.multi.iter())
            .map(|n| NodeId::from(n.as_str()))
            .collect()
    }

    fn middle_layer(&self) -> Vec<NodeId> {
        core::iter::once(&self.bottleneck)
            .chain(self.side.iter())
            .map(|n| NodeId::from(n.as_str()))
            .collect()
    }

    /// Edges from the two feeding nodes through the stage.
    fn edges(&self, single_src: &str, multi_src: &str) -> Vec<(NodeId, NodeId)> {
        let mut edges = vec![(single_src.into(), self.single.as_str().into())];
        for r in &self.multi {
            edges.push((multi_src.into(), r.as_str().into()));
        }
        edges.push((self.single.as_str().into(), self.bottleneck.as_str().into()));
        for r in &self.multi {
            edges.push((r.as_str().into(), self.bottleneck.as_str().into()));
        }
        for (k, u) in self.side.iter().enumerate() {
            for p in self.side_parents(k) {
                edges.push((p.into(), u.as_str().into()));
            }
        }
        edges
    }
}

fn check_m(m: u32) -> Result<(), NetworkError> {
    if m == 0 {
        Err(NetworkError::InvalidParameter(m))
    } else {
        Ok(())
    }
}

/// Four-layer network in which `w` is an `m`-bottleneck node for `d1`.
///
/// `s1 -> v1 -> w -> d1` carries flow 1; `s2` feeds `v2..v{m+1}`, all of which
/// also reach `w`. Side relay `u_k` listens to `v2` and `v{k+2}` and forwards
/// to `d2`. For `m = 1` there is a single side relay `u1` fed by `v2`.
pub fn bottleneck_family(m: u32) -> Result<LayeredNetwork, NetworkError> {
    check_m(m)?;
    let st = StageNames::new(m, "v", "w", "u");
    let mut edges = st.edges("s1", "s2");
    edges.push(("w".into(), "d1".into()));
    for u in &st.side {
        edges.push((u.as_str().into(), "d2".into()));
    }
    LayeredNetwork::new(
        vec![
            vec!["s1".into(), "s2".into()],
            st.relay_layer(),
            st.middle_layer(),
            vec!["d1".into(), "d2".into()],
        ],
        edges,
        ["s1".into(), "s2".into()],
        ["d1".into(), "d2".into()],
    )
}

/// [`bottleneck_family`] followed by a flow-swapped copy of itself.
///
/// The first stage ends in `g1` (fed by `w`, holds flow 1) and `g2` (fed by
/// the side relays, holds flow 2). The second stage swaps roles: `g2 -> x1 ->
/// w2 -> d2` carries flow 2, `g1` feeds `x2..x{m+1}`, and the side relays
/// `y_k` deliver flow 1 to `d1`.
pub fn double_bottleneck_family(m: u32) -> Result<LayeredNetwork, NetworkError> {
    check_m(m)?;
    let first = StageNames::new(m, "v", "w", "u");
    let second = StageNames::new(m, "x", "w2", "y");

    let mut edges = first.edges("s1", "s2");
    edges.push(("w".into(), "g1".into()));
    for u in &first.side {
        edges.push((u.as_str().into(), "g2".into()));
    }
    edges.extend(second.edges("g2", "g1"));
    edges.push(("w2".into(), "d2".into()));
    for y in &second.side {
        edges.push((y.as_str().into(), "d1".into()));
    }

    LayeredNetwork::new(
        vec![
            vec!["s1".into(), "s2".into()],
            first.relay_layer(),
            first.middle_layer(),
            vec!["g1".into(), "g2".into()],
            second.relay_layer(),
            second.middle_layer(),
            vec!["d1".into(), "d2".into()],
        ],
        edges,
        ["s1".into(), "s2".into()],
        ["d1".into(), "d2".into()],
    )
}

/// Fixed 12-node, 4-layer network with no bottleneck and no omniscient node,
/// on which `(1, 1)` is achievable.
pub fn no_bottleneck_example() -> LayeredNetwork {
    let edges: &[(&str, &[&str])] = &[
        ("s1", &["v1", "v2"]),
        ("s2", &["v3", "v4", "v5"]),
        ("v1", &["v6", "v7"]),
        ("v2", &["v6", "v7"]),
        ("v3", &["v6", "v8"]),
        ("v4", &["v6", "v7", "v8"]),
        ("v5", &["v6", "v7", "v8"]),
        ("v6", &["d1"]),
        ("v7", &["d1"]),
        ("v8", &["d2"]),
    ];
    let layer = |names: &[&str]| names.iter().map(|&n| NodeId::from(n)).collect::<Vec<_>>();
    LayeredNetwork::new(
        vec![
            layer(&["s1", "s2"]),
            layer(&["v1", "v2", "v3", "v4", "v5"]),
            layer(&["v6", "v7", "v8"]),
            layer(&["d1", "d2"]),
        ],
        edges
            .iter()
            .flat_map(|&(u, vs)| vs.iter().map(move |&v| (NodeId::from(u), NodeId::from(v))))
            .collect(),
        ["s1".into(), "s2".into()],
        ["d1".into(), "d2".into()],
    )
    .expect("fixed topology is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bottleneck_family_sizes() {
        for m in 1..=8 {
            let net = bottleneck_family(m).unwrap();
            assert_eq!(net.num_layers(), 4);
            let side = (m as usize - 1).max(1);
            assert_eq!(net.num_nodes(), 2 + (m as usize + 1) + 1 + side + 2);
        }
        assert_eq!(bottleneck_family(3).unwrap().num_nodes(), 11);
        assert_eq!(bottleneck_family(0), Err(NetworkError::InvalidParameter(0)));
    }

    #[test]
    fn side_relays_use_distributor() {
        let net = bottleneck_family(4).unwrap();
        for (u, other) in [("u1", "v3"), ("u2", "v4"), ("u3", "v5")] {
            let p = net.parents(&u.into()).unwrap();
            assert!(p.contains(&"v2".into()) && p.contains(&other.into()));
            assert_eq!(p.len(), 2);
        }
        let one = bottleneck_family(1).unwrap();
        assert_eq!(one.parents(&"d2".into()).unwrap().len(), 1);
        assert_eq!(
            one.parents(&"u1".into())
                .unwrap()
                .into_iter()
                .collect::<Vec<_>>(),
            vec![NodeId::from("v2")]
        );
    }

    #[test]
    fn double_family_has_seven_layers() {
        for m in 1..=5 {
            let net = double_bottleneck_family(m).unwrap();
            assert_eq!(net.num_layers(), 7);
            assert_eq!(net.parents(&"d2".into()).unwrap().len(), 1);
            assert_eq!(net.parents(&"w2".into()).unwrap().len(), m as usize + 1);
        }
        assert!(double_bottleneck_family(0).is_err());
    }

    #[test]
    fn family_parsing() {
        assert_eq!(
            Family::parse("bottleneck", Some(3)),
            Ok(Family::Bottleneck(3))
        );
        assert!(Family::parse("bottleneck", None).is_err());
        assert!(Family::parse("double-bottleneck", Some(0)).is_err());
        assert_eq!(
            Family::parse("no-bottleneck", None),
            Ok(Family::NoBottleneck)
        );
        assert!(Family::parse("no-bottleneck", Some(2)).is_err());
        assert!(Family::parse("ring", Some(2)).is_err());
    }

    #[test]
    fn no_bottleneck_example_shape() {
        let net = no_bottleneck_example();
        assert_eq!(net.num_nodes(), 12);
        assert_eq!(net.num_layers(), 4);
    }
}
