use dofnet_core::dof::{Provenance, SetMembership};
use dofnet_core::{in_set_s, DofConstraint, DofPoint, DofRegion};
use serde::Serialize;

use super::{flow_index, Exact};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegionJson {
    pub constraints: Vec<ConstraintJson>,
    pub vertices: Vec<[Exact; 2]>,
    pub max_sum: Exact,
    pub argmax: [Exact; 2],
    pub set_s: SetJson,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConstraintJson {
    pub a1: Exact,
    pub a2: Exact,
    pub rhs: Exact,
    pub provenance: ProvenanceJson,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ProvenanceJson {
    BoxLower {
        flow: u8,
    },
    BoxUpper {
        flow: u8,
    },
    Bottleneck {
        node: String,
        destination: u8,
        m: usize,
    },
    Omniscient {
        node: String,
        destination: u8,
    },
    External,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SetJson {
    pub member: bool,
    /// `k` with `max_sum = 2(1 - 1/k)`; absent for 2 and for non-members.
    pub k: Option<i64>,
}

fn point(p: &DofPoint) -> [Exact; 2] {
    [Exact(p.d1), Exact(p.d2)]
}

impl From<&DofConstraint> for ConstraintJson {
    fn from(c: &DofConstraint) -> Self {
        let provenance = match &c.provenance {
            Provenance::BoxLower(f) => ProvenanceJson::BoxLower {
                flow: flow_index(*f),
            },
            Provenance::BoxUpper(f) => ProvenanceJson::BoxUpper {
                flow: flow_index(*f),
            },
            Provenance::Bottleneck {
                node,
                destination,
                m,
            } => ProvenanceJson::Bottleneck {
                node: node.to_string(),
                destination: flow_index(*destination),
                m: *m,
            },
            Provenance::Omniscient { node, destination } => ProvenanceJson::Omniscient {
                node: node.to_string(),
                destination: flow_index(*destination),
            },
            Provenance::External => ProvenanceJson::External,
        };
        ConstraintJson {
            a1: Exact(c.a1),
            a2: Exact(c.a2),
            rhs: Exact(c.rhs),
            provenance,
        }
    }
}

impl From<&DofRegion> for RegionJson {
    fn from(r: &DofRegion) -> Self {
        let s = in_set_s(r.max_sum);
        RegionJson {
            constraints: r.constraints.iter().map(ConstraintJson::from).collect(),
            vertices: r.vertices.iter().map(point).collect(),
            max_sum: Exact(r.max_sum),
            argmax: point(&r.argmax),
            set_s: SetJson {
                member: s.is_member(),
                k: match s {
                    SetMembership::Finite { k } => Some(k),
                    _ => None,
                },
            },
        }
    }
}
