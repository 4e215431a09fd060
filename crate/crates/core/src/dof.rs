//! DoF outer-bound regions.
//!
//! The region is the polygon in the `(D1, D2)` plane cut out by the box
//! bounds and the constraints implied by detected structures:
//!
//! * every `m`-bottleneck node for `d_i` gives `m·D_i + D_ī ≤ m`;
//! * every omniscient node gives `D1 + D2 ≤ 1`.
//!
//! This is an outer bound only. Bottleneck constraints are not sufficient in
//! general: there are networks whose region is `D1 + D2 ≤ 3/2`, which no
//! combination of `m·D_i + D_ī ≤ m` constraints reproduces.
//!
//! Everything here is exact rational arithmetic.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::cuts::BottleneckReport;
use crate::network::{Flow, LayeredNetwork, NodeId};

pub type Rational = Ratio<i64>;

fn int(n: i64) -> Rational {
    Rational::from_integer(n)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// `D_i ≥ 0`
    BoxLower(Flow),
    /// `D_i ≤ 1`, or `D_i ≤ 0` when `s_i` cannot reach `d_i`.
    BoxUpper(Flow),
    Bottleneck {
        node: NodeId,
        destination: Flow,
        m: usize,
    },
    Omniscient {
        node: NodeId,
        destination: Flow,
    },
    /// Added by hand rather than derived from a network.
    External,
}

/// `a1·D1 + a2·D2 ≤ rhs`. Lower box bounds are stored as `-D_i ≤ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DofConstraint {
    pub a1: Rational,
    pub a2: Rational,
    pub rhs: Rational,
    pub provenance: Provenance,
}

impl DofConstraint {
    pub fn new(a1: Rational, a2: Rational, rhs: Rational, provenance: Provenance) -> Self {
        DofConstraint {
            a1,
            a2,
            rhs,
            provenance,
        }
    }

    fn coeffs(flow: Flow, own: Rational, other: Rational) -> (Rational, Rational) {
        match flow {
            Flow::One => (own, other),
            Flow::Two => (other, own),
        }
    }

    pub fn lower(flow: Flow) -> Self {
        let (a1, a2) = Self::coeffs(flow, -Rational::one(), Rational::zero());
        Self::new(a1, a2, Rational::zero(), Provenance::BoxLower(flow))
    }

    pub fn upper(flow: Flow, bound: Rational) -> Self {
        let (a1, a2) = Self::coeffs(flow, Rational::one(), Rational::zero());
        Self::new(a1, a2, bound, Provenance::BoxUpper(flow))
    }

    /// `m·D_i + D_ī ≤ m` for an `m`-bottleneck node for `d_i`.
    pub fn bottleneck(node: NodeId, destination: Flow, m: usize) -> Self {
        let mr = int(m as i64);
        let (a1, a2) = Self::coeffs(destination, mr, Rational::one());
        Self::new(
            a1,
            a2,
            mr,
            Provenance::Bottleneck {
                node,
                destination,
                m,
            },
        )
    }

    pub fn omniscient(node: NodeId, destination: Flow) -> Self {
        Self::new(
            Rational::one(),
            Rational::one(),
            Rational::one(),
            Provenance::Omniscient { node, destination },
        )
    }

    pub fn value(&self, p: &DofPoint) -> Rational {
        self.a1 * p.d1 + self.a2 * p.d2
    }

    pub fn is_satisfied(&self, p: &DofPoint) -> bool {
        self.value(p) <= self.rhs
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DofPoint {
    pub d1: Rational,
    pub d2: Rational,
}

impl DofPoint {
    pub fn new(d1: Rational, d2: Rational) -> Self {
        DofPoint { d1, d2 }
    }

    pub fn sum(&self) -> Rational {
        self.d1 + self.d2
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DofRegion {
    pub constraints: Vec<DofConstraint>,
    /// Counter-clockwise, starting at the origin.
    pub vertices: Vec<DofPoint>,
    pub max_sum: Rational,
    /// First vertex (in hull order) attaining `max_sum`.
    pub argmax: DofPoint,
}

impl DofRegion {
    /// Builds the polygon for an arbitrary constraint list.
    ///
    /// The list must contain both lower box bounds and bound the region; the
    /// origin must be feasible.
    pub fn from_constraints(constraints: Vec<DofConstraint>) -> DofRegion {
        let mut vertices = Vec::new();
        for (i, c) in constraints.iter().enumerate() {
            for e in &constraints[i + 1..] {
                if let Some(p) = intersect(c, e) {
                    if constraints.iter().all(|k| k.is_satisfied(&p)) {
                        vertices.push(p);
                    }
                }
            }
        }
        vertices.sort();
        vertices.dedup();
        vertices.sort_by(hull_order);

        let mut argmax = vertices
            .first()
            .copied()
            .unwrap_or(DofPoint::new(Rational::zero(), Rational::zero()));
        for v in &vertices {
            if v.sum() > argmax.sum() {
                argmax = *v;
            }
        }
        DofRegion {
            constraints,
            vertices,
            max_sum: argmax.sum(),
            argmax,
        }
    }

    pub fn contains(&self, p: &DofPoint) -> bool {
        self.constraints.iter().all(|c| c.is_satisfied(p))
    }

    /// Returns a new region with one more constraint.
    pub fn with_constraint(&self, c: DofConstraint) -> DofRegion {
        let mut constraints = self.constraints.clone();
        constraints.push(c);
        DofRegion::from_constraints(constraints)
    }
}

fn intersect(c: &DofConstraint, e: &DofConstraint) -> Option<DofPoint> {
    let det = c.a1 * e.a2 - c.a2 * e.a1;
    if det.is_zero() {
        return None;
    }
    let d1 = (c.rhs * e.a2 - c.a2 * e.rhs) / det;
    let d2 = (c.a1 * e.rhs - c.rhs * e.a1) / det;
    Some(DofPoint::new(d1, d2))
}

/// Polar order around the origin; points on one ray by distance.
fn hull_order(a: &DofPoint, b: &DofPoint) -> Ordering {
    let cross = a.d1 * b.d2 - a.d2 * b.d1;
    if cross > Rational::zero() {
        Ordering::Less
    } else if cross < Rational::zero() {
        Ordering::Greater
    } else {
        (a.d1 * a.d1 + a.d2 * a.d2).cmp(&(b.d1 * b.d1 + b.d2 * b.d2))
    }
}

/// Assembles the outer-bound region for `net` from a report produced on it.
///
/// Box bounds come first (lower D1, lower D2, upper D1, upper D2), then one
/// constraint per bottleneck record, then one per omniscient record.
pub fn build_region(net: &LayeredNetwork, report: &BottleneckReport) -> DofRegion {
    let mut constraints = Vec::new();
    for f in Flow::BOTH {
        constraints.push(DofConstraint::lower(f));
    }
    for f in Flow::BOTH {
        let connected = net
            .has_path(net.source(f), net.destination(f))
            .expect("endpoints belong to the network");
        let bound = if connected {
            Rational::one()
        } else {
            Rational::zero()
        };
        constraints.push(DofConstraint::upper(f, bound));
    }
    for r in &report.bottlenecks {
        constraints.push(DofConstraint::bottleneck(
            r.node.clone(),
            r.destination,
            r.minimal_m,
        ));
    }
    for r in &report.omniscient {
        constraints.push(DofConstraint::omniscient(r.node.clone(), r.destination));
    }
    DofRegion::from_constraints(constraints)
}

pub fn max_sum_dof(region: &DofRegion) -> Rational {
    region.max_sum
}

/// Membership of a sum-DoF value in `{2(1 - 1/k) : k ≥ 1} ∪ {2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetMembership {
    /// `x = 2(1 - 1/k)`
    Finite {
        k: i64,
    },
    /// `x = 2`
    Two,
    NotMember,
}

impl SetMembership {
    pub fn is_member(&self) -> bool {
        !matches!(self, SetMembership::NotMember)
    }

    pub fn witness(&self) -> Option<i64> {
        match self {
            SetMembership::Finite { k } => Some(*k),
            _ => None,
        }
    }
}

pub fn in_set_s(x: Rational) -> SetMembership {
    let two = int(2);
    if x == two {
        return SetMembership::Two;
    }
    if x < Rational::zero() || x > two {
        return SetMembership::NotMember;
    }
    let k = two / (two - x);
    if k.is_integer() && *k.numer() >= 1 {
        SetMembership::Finite { k: k.to_integer() }
    } else {
        SetMembership::NotMember
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuts::detect_bottlenecks;
    use crate::network::{bottleneck_family, double_bottleneck_family};
    use alloc::vec;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn p(a: (i64, i64), b: (i64, i64)) -> DofPoint {
        DofPoint::new(r(a.0, a.1), r(b.0, b.1))
    }

    fn box_constraints() -> Vec<DofConstraint> {
        vec![
            DofConstraint::lower(Flow::One),
            DofConstraint::lower(Flow::Two),
            DofConstraint::upper(Flow::One, int(1)),
            DofConstraint::upper(Flow::Two, int(1)),
        ]
    }

    #[test]
    fn unconstrained_box() {
        let region = DofRegion::from_constraints(box_constraints());
        assert_eq!(
            region.vertices,
            vec![
                p((0, 1), (0, 1)),
                p((1, 1), (0, 1)),
                p((1, 1), (1, 1)),
                p((0, 1), (1, 1))
            ]
        );
        assert_eq!(max_sum_dof(&region), int(2));
    }

    #[test]
    fn bottleneck_three_region() {
        let net = bottleneck_family(3).unwrap();
        let region = build_region(&net, &detect_bottlenecks(&net, 16).unwrap());
        assert!(region
            .constraints
            .iter()
            .any(|c| c.a1 == int(3) && c.a2 == int(1) && c.rhs == int(3)));
        assert_eq!(
            region.vertices,
            vec![
                p((0, 1), (0, 1)),
                p((1, 1), (0, 1)),
                p((2, 3), (1, 1)),
                p((0, 1), (1, 1))
            ]
        );
        assert_eq!(region.max_sum, r(5, 3));
        assert_eq!(region.argmax, p((2, 3), (1, 1)));
    }

    #[test]
    fn bottleneck_two_region() {
        let net = bottleneck_family(2).unwrap();
        let region = build_region(&net, &detect_bottlenecks(&net, 16).unwrap());
        assert!(region
            .constraints
            .iter()
            .any(|c| c.a1 == int(2) && c.a2 == int(1) && c.rhs == int(2)));
        assert_eq!(region.max_sum, r(3, 2));
    }

    #[test]
    fn double_family_corner() {
        for m in 1..=6 {
            let net = double_bottleneck_family(m).unwrap();
            let region = build_region(&net, &detect_bottlenecks(&net, 16).unwrap());
            let m = m as i64;
            assert_eq!(region.max_sum, r(2 * m, m + 1));
            if m > 1 {
                assert_eq!(region.argmax, p((m, m + 1), (m, m + 1)));
            }
        }
    }

    #[test]
    fn disconnected_flow_gives_segment() {
        let net = LayeredNetwork::new(
            vec![
                vec!["s1".into(), "s2".into()],
                vec!["d1".into(), "d2".into()],
            ],
            vec![("s1".into(), "d1".into()), ("s2".into(), "d1".into())],
            ["s1".into(), "s2".into()],
            ["d1".into(), "d2".into()],
        )
        .unwrap();
        let region = build_region(&net, &BottleneckReport::default());
        assert_eq!(region.vertices, vec![p((0, 1), (0, 1)), p((1, 1), (0, 1))]);
        assert_eq!(region.max_sum, int(1));
    }

    #[test]
    fn combined_bound() {
        for m in 1..=10usize {
            let mut cs = box_constraints();
            cs.push(DofConstraint::bottleneck("a".into(), Flow::One, m));
            cs.push(DofConstraint::bottleneck("b".into(), Flow::Two, m));
            let region = DofRegion::from_constraints(cs);
            let m = m as i64;
            assert_eq!(region.max_sum, r(2 * m, m + 1));
        }
    }

    #[test]
    fn set_s_membership() {
        assert_eq!(in_set_s(r(5, 3)), SetMembership::Finite { k: 6 });
        assert_eq!(in_set_s(r(3, 2)), SetMembership::Finite { k: 4 });
        assert_eq!(in_set_s(int(0)), SetMembership::Finite { k: 1 });
        assert_eq!(in_set_s(int(1)), SetMembership::Finite { k: 2 });
        assert_eq!(in_set_s(int(2)), SetMembership::Two);
        assert_eq!(in_set_s(r(17, 10)), SetMembership::NotMember);
        assert_eq!(in_set_s(r(19, 12)), SetMembership::NotMember);
        assert_eq!(in_set_s(r(5, 2)), SetMembership::NotMember);
    }
}
