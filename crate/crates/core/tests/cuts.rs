use std::collections::BTreeSet;

use dofnet_core::network::{bottleneck_family, double_bottleneck_family};
use dofnet_core::{
    detect_bottlenecks, detect_omniscient, is_cut, CutQuery, Flow, LayeredNetwork, NodeId,
    DEFAULT_EXHAUSTIVE_BUDGET,
};
use dofnet_testkit::{
    arb_network, brute_force_bottlenecks, brute_force_omniscient, is_cut_by_paths, random_network,
    NetParams,
};
use proptest::prelude::*;

fn subset(net: &LayeredNetwork, mask: u64) -> BTreeSet<NodeId> {
    net.nodes()
        .iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(_, v)| v.clone())
        .collect()
}

const WIDE: NetParams = NetParams {
    max_nodes: 14,
    max_layers: 4,
    max_indegree: 8,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn is_cut_matches_path_enumeration(
        net in arb_network(NetParams::SMALL),
        removed in any::<u64>(),
        from in 1u64..,
        to in 1u64..,
    ) {
        let q = CutQuery {
            removed: subset(&net, removed),
            from: subset(&net, from),
            to: subset(&net, to),
        };
        prop_assert_eq!(
            is_cut(&net, &q).unwrap(),
            is_cut_by_paths(&net, &q.removed, &q.from, &q.to)
        );
    }

    #[test]
    fn reachability_shrinks_as_more_is_removed(
        net in arb_network(NetParams::SMALL),
        a in any::<u64>(),
        b in any::<u64>(),
    ) {
        let small = subset(&net, a);
        let large: BTreeSet<NodeId> = small.union(&subset(&net, b)).cloned().collect();
        let from: BTreeSet<NodeId> = net.sources().iter().cloned().collect();
        let r_small = net.reachable(&from, &small).unwrap();
        let r_large = net.reachable(&from, &large).unwrap();
        prop_assert!(r_large.is_subset(&r_small));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn minimal_m_matches_brute_force(net in arb_network(WIDE)) {
        let report = detect_bottlenecks(&net, DEFAULT_EXHAUSTIVE_BUDGET).unwrap();
        let found: BTreeSet<(NodeId, Flow, usize)> = report
            .bottlenecks
            .iter()
            .map(|r| (r.node.clone(), r.destination, r.minimal_m))
            .collect();
        prop_assert_eq!(found, brute_force_bottlenecks(&net));
        for r in &report.bottlenecks {
            prop_assert_eq!(r.witness.len(), r.minimal_m);
            let parents = net.parents(&r.node).unwrap();
            prop_assert!(r.witness.iter().all(|w| parents.contains(w)));
        }
    }

    #[test]
    fn omniscient_matches_brute_force(net in arb_network(NetParams::SMALL)) {
        let found: BTreeSet<(NodeId, Flow)> = detect_omniscient(&net)
            .into_iter()
            .map(|r| (r.node, r.destination))
            .collect();
        prop_assert_eq!(found, brute_force_omniscient(&net));
    }
}

#[test]
fn generators_carry_their_bottlenecks() {
    for m in 1..=8usize {
        let net = bottleneck_family(m as u32).unwrap();
        let got = brute_force_bottlenecks(&net);
        assert!(got.contains(&("w".into(), Flow::One, m)), "m={m}: {got:?}");
        let report = detect_bottlenecks(&net, DEFAULT_EXHAUSTIVE_BUDGET).unwrap();
        assert!(report
            .bottlenecks
            .iter()
            .any(|r| r.node.as_str() == "w" && r.minimal_m == m));

        let net = double_bottleneck_family(m as u32).unwrap();
        let got = brute_force_bottlenecks(&net);
        assert!(got.contains(&("w".into(), Flow::One, m)), "m={m}: {got:?}");
        assert!(got.contains(&("w2".into(), Flow::Two, m)), "m={m}: {got:?}");
    }
}

#[test]
fn budget_is_enforced() {
    let net = bottleneck_family(5).unwrap();
    assert!(detect_bottlenecks(&net, 5).is_err());
    assert!(detect_bottlenecks(&net, 6).is_ok());
}

#[test]
fn random_networks_are_reproducible() {
    assert_eq!(random_network(3, WIDE), random_network(3, WIDE));
}
