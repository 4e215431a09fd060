use dofnet_core::scheme::{
    check_csit_legality_with_delay, Coefficient, FormTerm, GainRef, HopBlock, SymbolId,
    ViolationReason,
};
use dofnet_core::{builtin_scheme, check_csit_legality, Family, Scheme, TransmitSpec};
use proptest::prelude::*;

fn families() -> Vec<Family> {
    let mut f = vec![Family::NoBottleneck];
    for m in 1..=6 {
        f.push(Family::Bottleneck(m));
        f.push(Family::DoubleBottleneck(m));
    }
    f
}

/// The three-relay bottleneck scheme with hop 2, `(slot, node)` replaced.
fn patched(slot: u32, node: &str, spec: TransmitSpec) -> Scheme {
    let base = builtin_scheme(Family::Bottleneck(3)).unwrap();
    let mut hops: Vec<HopBlock> = base.hops().to_vec();
    hops[1].set(slot, node, spec);
    Scheme::new(base.family().clone(), hops, base.symbols()).unwrap()
}

fn scaled_b1(gain: GainRef) -> TransmitSpec {
    TransmitSpec::Symbol {
        symbol: SymbolId::b(1),
        scale: Coefficient::gain(gain),
    }
}

fn reasons(sch: &Scheme) -> Vec<ViolationReason> {
    let net = Family::Bottleneck(3).network().unwrap();
    check_csit_legality(&net, sch)
        .unwrap()
        .violations
        .into_iter()
        .map(|v| v.reason)
        .collect()
}

#[test]
fn canned_illegal_schemes_are_rejected() {
    let cross = patched(1, "v2", scaled_b1(GainRef::new("v3", "w", 1)));
    assert_eq!(
        reasons(&cross),
        vec![ViolationReason::InstantaneousCrossNodeGain]
    );

    let future = patched(2, "v2", scaled_b1(GainRef::new("v3", "w", 3)));
    assert_eq!(reasons(&future), vec![ViolationReason::FutureGain]);

    // v1 is idle in slot 1 and only ever hears flow-1 symbols.
    let lacking = patched(
        1,
        "v1",
        TransmitSpec::Reconstruct {
            target: vec![FormTerm {
                symbol: SymbolId::b(1),
                coefficient: Coefficient::one(),
            }],
        },
    );
    assert_eq!(
        reasons(&lacking),
        vec![ViolationReason::MissingSymbols(vec![SymbolId::b(1)])]
    );
}

#[test]
fn own_incoming_and_past_gains_are_legal() {
    for t in 1..=3 {
        let own = patched(t, "v2", scaled_b1(GainRef::new("s2", "v2", t)));
        assert!(reasons(&own).is_empty(), "slot {t}");
    }
    let past = patched(3, "v2", scaled_b1(GainRef::new("v3", "w", 2)));
    assert!(reasons(&past).is_empty());
}

#[test]
fn builtins_are_legal() {
    for f in families() {
        let net = f.network().unwrap();
        let report = check_csit_legality(&net, &builtin_scheme(f).unwrap()).unwrap();
        assert!(report.is_legal(), "{f}: {:?}", report.violations);
    }
}

#[test]
fn longer_delay_breaks_the_distributor() {
    let net = Family::Bottleneck(3).network().unwrap();
    let sch = builtin_scheme(Family::Bottleneck(3)).unwrap();
    let report = check_csit_legality_with_delay(&net, &sch, 2).unwrap();
    assert!(report
        .violations
        .iter()
        .all(|v| v.reason == ViolationReason::GainNotYetLearned && v.node.as_str() == "v2"));
    assert!(!report.is_legal());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Stretching a unit-delay scheme by `f` makes it legal under every delay
    /// up to `f`.
    #[test]
    fn interleaving_absorbs_delay(idx in 0usize..13, f in 1u32..6, d in 1u32..6) {
        let fam = families()[idx];
        let net = fam.network().unwrap();
        let sch = builtin_scheme(fam).unwrap().interleaved(f);
        let legal = check_csit_legality_with_delay(&net, &sch, d.min(f)).unwrap();
        prop_assert!(legal.is_legal(), "{} f={} d={}: {:?}", fam, f, d, legal.violations);
    }

    /// Violations only accumulate as the delay grows.
    #[test]
    fn legality_is_monotone_in_delay(idx in 0usize..13, d1 in 1u32..5, extra in 0u32..4) {
        let fam = families()[idx];
        let net = fam.network().unwrap();
        let sch = builtin_scheme(fam).unwrap();
        let short = check_csit_legality_with_delay(&net, &sch, d1).unwrap();
        let long = check_csit_legality_with_delay(&net, &sch, d1 + extra).unwrap();
        for v in &short.violations {
            prop_assert!(long.violations.contains(v));
        }
    }
}
