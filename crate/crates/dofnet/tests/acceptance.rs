//! Acceptance suite: one `[PASS]`/`[FAIL]` line per criterion, with the
//! wall-clock budget checked alongside the result.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use dofnet::cli::{run, Cli};
use dofnet_core::dof::SetMembership;
use dofnet_core::scheme::{Coefficient, FormTerm, GainRef, HopBlock, SymbolId, ViolationReason};
use dofnet_core::{
    build_region, builtin_scheme, check_csit_legality, detect_bottlenecks, execute, in_set_s,
    is_cut, monte_carlo, ChannelRealization, CutQuery, DofPoint, Family, Flow, LayeredNetwork,
    Mode, NodeId, Rational, Scheme, TransmitSpec, DEFAULT_EXHAUSTIVE_BUDGET,
};
use dofnet_testkit::{
    brute_force_bottlenecks, brute_force_omniscient, direct_simulate, is_cut_by_paths,
    random_network, symbol_values, NetParams,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

const TRIALS: u32 = 100;
const SEED: u64 = 20_240_601;

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cli(args: &[&str]) -> Result<String, String> {
    use clap::Parser;
    let parsed = Cli::try_parse_from(std::iter::once("dofnet").chain(args.iter().copied()))
        .map_err(|e| e.to_string())?;
    run(&parsed).map_err(|e| e.to_string())
}

fn region_of(net: &LayeredNetwork) -> Result<dofnet_core::DofRegion, String> {
    let report = detect_bottlenecks(net, DEFAULT_EXHAUSTIVE_BUDGET).map_err(|e| e.to_string())?;
    Ok(build_region(net, &report))
}

/// Runs `trials` realizations and requires every one to decode at both
/// destinations; returns the achieved pair.
fn achieve(fam: Family, seed: u64) -> Result<(Rational, Rational), String> {
    let net = fam.network().map_err(|e| e.to_string())?;
    let sch = builtin_scheme(fam).map_err(|e| e.to_string())?;
    let rep = monte_carlo(&net, &sch, TRIALS, seed, Mode::Noiseless).map_err(|e| e.to_string())?;
    ensure(rep.decoded == [TRIALS; 2], || {
        format!("{fam}: decodable {:?}/{TRIALS} (seed {seed})", rep.decoded)
    })?;
    rep.achieved_dof
        .ok_or_else(|| format!("{fam}: no achieved pair"))
}

fn criterion_1() -> Outcome {
    let fam = Family::Bottleneck(3);
    let net = fam.network().map_err(|e| e.to_string())?;
    let report = detect_bottlenecks(&net, DEFAULT_EXHAUSTIVE_BUDGET).map_err(|e| e.to_string())?;
    let got: Vec<(String, Flow, usize)> = report
        .bottlenecks
        .iter()
        .map(|b| (b.node.to_string(), b.destination, b.minimal_m))
        .collect();
    ensure(got == vec![("w".to_string(), Flow::One, 3)], || {
        format!("bottlenecks {got:?}")
    })?;

    let region = build_region(&net, &report);
    let cs: BTreeSet<(Rational, Rational, Rational)> = region
        .constraints
        .iter()
        .map(|c| (c.a1, c.a2, c.rhs))
        .collect();
    let want: BTreeSet<_> = [
        (r(-1, 1), r(0, 1), r(0, 1)),
        (r(0, 1), r(-1, 1), r(0, 1)),
        (r(1, 1), r(0, 1), r(1, 1)),
        (r(0, 1), r(1, 1), r(1, 1)),
        (r(3, 1), r(1, 1), r(3, 1)),
    ]
    .into_iter()
    .collect();
    ensure(cs == want, || format!("constraints {cs:?}"))?;
    ensure(
        region.vertices.contains(&DofPoint::new(r(2, 3), r(1, 1))),
        || format!("vertices {:?}", region.vertices),
    )?;
    ensure(region.max_sum == r(5, 3), || {
        format!("max_sum {}", region.max_sum)
    })?;

    let analyze = cli(&["analyze", "--family", "bottleneck", "--m", "3"])?;
    ensure(analyze.contains("w for d1: m = 3"), || analyze.clone())?;
    let text = cli(&["region", "--family", "bottleneck", "--m", "3"])?;
    ensure(
        text.contains("max_sum: 5/3") && text.contains("k = 6"),
        || text.clone(),
    )?;
    Ok("one 3-bottleneck (w, d1); 3 D1 + D2 <= 3; vertex (2/3,1); max_sum 5/3".into())
}

fn criterion_2() -> Outcome {
    for m in 1..=6i64 {
        let fam = Family::Bottleneck(m as u32);
        let net = fam.network().map_err(|e| e.to_string())?;
        let max = region_of(&net)?.max_sum;
        ensure(max == r(2, 1) - r(1, m), || format!("m={m}: max_sum {max}"))?;
        let got = achieve(fam, SEED + m as u64)?;
        ensure(got == (r(m - 1, m), r(1, 1)), || {
            format!("m={m}: achieved {got:?}")
        })?;
    }
    Ok(format!(
        "m = 1..6: max_sum 2 - 1/m, {TRIALS}/{TRIALS} decodable, ((m-1)/m, 1)"
    ))
}

fn criterion_3() -> Outcome {
    for m in 1..=5i64 {
        let fam = Family::DoubleBottleneck(m as u32);
        let net = fam.network().map_err(|e| e.to_string())?;
        let report =
            detect_bottlenecks(&net, DEFAULT_EXHAUSTIVE_BUDGET).map_err(|e| e.to_string())?;
        let recs: Vec<(Flow, usize)> = report
            .bottlenecks
            .iter()
            .map(|b| (b.destination, b.minimal_m))
            .collect();
        ensure(
            recs == vec![(Flow::One, m as usize), (Flow::Two, m as usize)],
            || format!("m={m}: records {recs:?}"),
        )?;
        let oracle = brute_force_bottlenecks(&net);
        ensure(oracle.len() == 2, || format!("m={m}: oracle {oracle:?}"))?;
        let max = build_region(&net, &report).max_sum;
        ensure(max == r(2, 1) - r(2, m + 1), || {
            format!("m={m}: max_sum {max}")
        })?;
        let got = achieve(fam, SEED + 100 + m as u64)?;
        ensure(got == (r(m, m + 1), r(m, m + 1)), || {
            format!("m={m}: achieved {got:?}")
        })?;
    }
    Ok(format!(
        "m = 1..5: two records, max_sum 2 - 2/(m+1), {TRIALS}/{TRIALS} at (m/(m+1), m/(m+1))"
    ))
}

fn criterion_4() -> Outcome {
    let fam = Family::NoBottleneck;
    let net = fam.network().map_err(|e| e.to_string())?;
    let report = detect_bottlenecks(&net, DEFAULT_EXHAUSTIVE_BUDGET).map_err(|e| e.to_string())?;
    ensure(report.is_empty(), || format!("{report:?}"))?;
    ensure(brute_force_bottlenecks(&net).is_empty(), || {
        "oracle finds a bottleneck".into()
    })?;
    ensure(brute_force_omniscient(&net).is_empty(), || {
        "oracle finds an omniscient node".into()
    })?;
    let text = cli(&["analyze", "--family", "no-bottleneck"])?;
    ensure(
        text.contains("bottlenecks: none") && text.contains("omniscient: none"),
        || text.clone(),
    )?;
    let got = achieve(fam, SEED + 200)?;
    ensure(got == (r(1, 1), r(1, 1)), || format!("achieved {got:?}"))?;
    Ok(format!(
        "empty reports (oracle agrees); {TRIALS}/{TRIALS} at (1,1)"
    ))
}

fn criterion_5() -> Outcome {
    for m in 1..=10i64 {
        let a = in_set_s(r(2, 1) - r(1, m));
        ensure(a == SetMembership::Finite { k: 2 * m }, || {
            format!("2 - 1/{m}: {a:?}")
        })?;
        let b = in_set_s(r(2, 1) - r(2, m + 1));
        ensure(b == SetMembership::Finite { k: m + 1 }, || {
            format!("2 - 2/{}: {b:?}", m + 1)
        })?;
    }
    for x in [r(17, 10), r(19, 12)] {
        ensure(!in_set_s(x).is_member(), || format!("{x} accepted"))?;
    }
    Ok("witnesses k = 2m and k = m+1 for m <= 10; 17/10 and 19/12 rejected".into())
}

fn random_subset(net: &LayeredNetwork, mask: u64) -> BTreeSet<NodeId> {
    net.nodes()
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, v)| v.clone())
        .collect()
}

fn builtin_families() -> Vec<Family> {
    let mut f = vec![Family::NoBottleneck];
    f.extend((1..=6).map(Family::Bottleneck));
    f.extend((1..=5).map(Family::DoubleBottleneck));
    f
}

fn patched(slot: u32, node: &str, spec: TransmitSpec) -> Result<Scheme, String> {
    let base = builtin_scheme(Family::Bottleneck(3)).map_err(|e| e.to_string())?;
    let mut hops: Vec<HopBlock> = base.hops().to_vec();
    hops[1].set(slot, node, spec);
    Scheme::new(base.family().clone(), hops, base.symbols()).map_err(|e| e.to_string())
}

fn criterion_6() -> Outcome {
    // (a) cut predicate against path enumeration.
    let mut queries = 0;
    for seed in 0..250u64 {
        let net = random_network(seed, NetParams::SMALL);
        for q in 0..8u64 {
            let h =
                seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ q.wrapping_mul(0xbf58_476d_1ce4_e5b9);
            let query = CutQuery {
                removed: random_subset(&net, h),
                from: random_subset(&net, h >> 16 | 1),
                to: random_subset(&net, h >> 32 | 1 << (net.num_nodes() - 1)),
            };
            let fast = is_cut(&net, &query).map_err(|e| e.to_string())?;
            let slow = is_cut_by_paths(&net, &query.removed, &query.from, &query.to);
            ensure(fast == slow, || {
                format!("(a) seed {seed} query {q}: {fast} vs {slow}")
            })?;
            queries += 1;
        }
    }

    // (b) minimal m against bitmask subset enumeration.
    let wide = NetParams {
        max_nodes: 14,
        max_layers: 4,
        max_indegree: 8,
    };
    let mut with_bottleneck = 0;
    for seed in 0..80u64 {
        let net = random_network(1_000 + seed, wide);
        let report =
            detect_bottlenecks(&net, DEFAULT_EXHAUSTIVE_BUDGET).map_err(|e| e.to_string())?;
        let fast: BTreeSet<(NodeId, Flow, usize)> = report
            .bottlenecks
            .iter()
            .map(|b| (b.node.clone(), b.destination, b.minimal_m))
            .collect();
        let slow = brute_force_bottlenecks(&net);
        ensure(fast == slow, || {
            format!("(b) seed {seed}: {fast:?} vs {slow:?}")
        })?;
        with_bottleneck += usize::from(!fast.is_empty());
    }
    ensure(with_bottleneck > 0, || {
        "(b) no random network had a bottleneck".into()
    })?;

    // (c) genericity on fresh seeds.
    for fam in builtin_families() {
        let net = fam.network().map_err(|e| e.to_string())?;
        let sch = builtin_scheme(fam).map_err(|e| e.to_string())?;
        let rep = monte_carlo(&net, &sch, 100, SEED ^ 0xfeed, Mode::Noiseless)
            .map_err(|e| e.to_string())?;
        ensure(rep.decoded.iter().all(|&n| n >= 99), || {
            format!("(c) {fam}: {:?}/100", rep.decoded)
        })?;
    }

    // (d) coefficient tracking against plain numeric simulation.
    let mut worst: f64 = 0.0;
    for fam in builtin_families() {
        let net = fam.network().map_err(|e| e.to_string())?;
        let sch = builtin_scheme(fam).map_err(|e| e.to_string())?;
        for trial in 0..5 {
            let real = ChannelRealization::draw(&net, sch.slots(), SEED, trial);
            let ledger = execute(&net, &sch, &real, Mode::Noiseless).map_err(|e| e.to_string())?;
            let values = symbol_values(&sch, trial);
            for ((node, slot), y) in direct_simulate(&net, &sch, &real, &values) {
                let sig = ledger.received(&node, slot).ok_or("missing reception")?;
                let tracked: f64 = values
                    .iter()
                    .map(|(s, x)| sig.symbols[ledger.column(*s)] * x)
                    .sum();
                let scale = y
                    .abs()
                    .max(sig.symbols.iter().map(|c| c.abs()).sum::<f64>());
                if scale > 0.0 {
                    worst = worst.max((tracked - y).abs() / scale);
                }
            }
        }
    }
    ensure(worst <= 1e-9, || format!("(d) relative error {worst:e}"))?;

    // (e) canned illegal schemes.
    let net = Family::Bottleneck(3).network().map_err(|e| e.to_string())?;
    let scaled = |g: GainRef| TransmitSpec::Symbol {
        symbol: SymbolId::b(1),
        scale: Coefficient::gain(g),
    };
    let canned = [
        (
            patched(1, "v2", scaled(GainRef::new("v3", "w", 1)))?,
            ViolationReason::InstantaneousCrossNodeGain,
        ),
        (
            patched(2, "v2", scaled(GainRef::new("v3", "w", 3)))?,
            ViolationReason::FutureGain,
        ),
        (
            patched(
                1,
                "v1",
                TransmitSpec::Reconstruct {
                    target: vec![FormTerm {
                        symbol: SymbolId::b(1),
                        coefficient: Coefficient::one(),
                    }],
                },
            )?,
            ViolationReason::MissingSymbols(vec![SymbolId::b(1)]),
        ),
    ];
    for (sch, reason) in canned {
        let rep = check_csit_legality(&net, &sch).map_err(|e| e.to_string())?;
        let reasons: Vec<_> = rep.violations.iter().map(|v| v.reason.clone()).collect();
        ensure(reasons == vec![reason.clone()], || {
            format!("(e) {reason}: {reasons:?}")
        })?;
    }

    Ok(format!(
        "(a) {queries} cut queries on 250 networks; (b) 80 networks, {with_bottleneck} with bottlenecks; \
         (c) >= 99/100; (d) max rel. error {worst:.1e}; (e) 3 schemes rejected"
    ))
}

fn criterion_7() -> Outcome {
    let mut pairs = 0;
    for fam in builtin_families() {
        let net = fam.network().map_err(|e| e.to_string())?;
        let region = region_of(&net)?;
        let (d1, d2) = achieve(fam, SEED + 300)?;
        let p = DofPoint::new(d1, d2);
        ensure(region.contains(&p), || {
            format!("{fam}: {p:?} outside the region")
        })?;
        ensure(p.sum() == region.max_sum, || {
            format!(
                "{fam}: achieved sum {} vs max_sum {}",
                p.sum(),
                region.max_sum
            )
        })?;
        pairs += 1;
    }
    Ok(format!(
        "{pairs} scheme/family pairs: achieved sum = max_sum"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        (
            "1 three-relay bottleneck pipeline",
            criterion_1,
            Duration::from_secs(1),
        ),
        (
            "2 bottleneck family sweep",
            criterion_2,
            Duration::from_secs(10),
        ),
        (
            "3 double-bottleneck sweep",
            criterion_3,
            Duration::from_secs(10),
        ),
        (
            "4 no-bottleneck network",
            criterion_4,
            Duration::from_secs(2),
        ),
        (
            "5 sum-DoF set membership",
            criterion_5,
            Duration::from_secs(1),
        ),
        ("6 property suites", criterion_6, Duration::from_secs(60)),
        (
            "7 inner bound meets outer bound",
            criterion_7,
            Duration::from_secs(60),
        ),
    ];
    let mut failed = 0;
    for (name, f, budget) in criteria {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if took > budget => Err(format!("{msg}; took {took:.2?} > {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("[PASS] {name}: {msg} ({took:.2?})"),
            Err(msg) => {
                failed += 1;
                println!("[FAIL] {name}: {msg} ({took:.2?})");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
