//! Human-readable output. Rationals are always printed as fractions.

use std::fmt::Write;

use dofnet_core::dof::{Provenance, SetMembership};
use dofnet_core::scheme::LegalityReport;
use dofnet_core::{
    in_set_s, BottleneckReport, DofConstraint, DofPoint, DofRegion, Flow, Mode, Rational,
    SimulationReport,
};

use crate::format::sim::matches_outer_bound;

fn pair(a: Rational, b: Rational) -> String {
    format!("({a},{b})")
}

fn point(p: &DofPoint) -> String {
    pair(p.d1, p.d2)
}

fn d(f: Flow) -> String {
    format!("d{}", f.index())
}

pub fn report(r: &BottleneckReport) -> String {
    let mut out = String::new();
    if r.bottlenecks.is_empty() {
        out.push_str("bottlenecks: none\n");
    } else {
        out.push_str("bottlenecks:\n");
        for b in &r.bottlenecks {
            let witness: Vec<&str> = b.witness.iter().map(|w| w.as_str()).collect();
            let _ = writeln!(
                out,
                "  {} for {}: m = {}, parents {{{}}}",
                b.node,
                d(b.destination),
                b.minimal_m,
                witness.join(", ")
            );
        }
    }
    if r.omniscient.is_empty() {
        out.push_str("omniscient: none\n");
    } else {
        out.push_str("omniscient:\n");
        for o in &r.omniscient {
            let _ = writeln!(
                out,
                "  {} for {}: via {}",
                o.node,
                d(o.destination),
                o.witness_u
            );
        }
    }
    out
}

fn term(a: Rational, var: &str) -> Option<String> {
    if a == Rational::from_integer(0) {
        None
    } else if a == Rational::from_integer(1) {
        Some(var.to_string())
    } else if a == Rational::from_integer(-1) {
        Some(format!("-{var}"))
    } else {
        Some(format!("{a} {var}"))
    }
}

fn constraint(c: &DofConstraint) -> String {
    let lhs = match &c.provenance {
        // Stored as -D_i <= 0.
        Provenance::BoxLower(f) => return format!("D{} >= 0    [box]", f.index()),
        _ => [term(c.a1, "D1"), term(c.a2, "D2")],
    };
    let lhs: Vec<String> = lhs.into_iter().flatten().collect();
    let lhs = if lhs.is_empty() {
        "0".to_string()
    } else {
        lhs.join(" + ").replace("+ -", "- ")
    };
    let why = match &c.provenance {
        Provenance::BoxLower(_) | Provenance::BoxUpper(_) => "box".to_string(),
        Provenance::Bottleneck {
            node,
            destination,
            m,
        } => {
            format!("{m}-bottleneck {node} for {}", d(*destination))
        }
        Provenance::Omniscient { node, destination } => {
            format!("omniscient {node} for {}", d(*destination))
        }
        Provenance::External => "external".to_string(),
    };
    format!("{lhs} <= {}    [{why}]", c.rhs)
}

pub fn set_s(x: Rational) -> String {
    match in_set_s(x) {
        SetMembership::Finite { k } => format!("set S: member, k = {k}"),
        SetMembership::Two => "set S: member (2)".to_string(),
        SetMembership::NotMember => "set S: not a member".to_string(),
    }
}

pub fn region(r: &DofRegion) -> String {
    let mut out = String::from("constraints:\n");
    for c in &r.constraints {
        let _ = writeln!(out, "  {}", constraint(c));
    }
    let vs: Vec<String> = r.vertices.iter().map(point).collect();
    let _ = writeln!(out, "vertices: {}", vs.join(", "));
    let _ = writeln!(out, "max_sum: {}", r.max_sum);
    let _ = writeln!(out, "argmax: {}", point(&r.argmax));
    let _ = writeln!(out, "{}", set_s(r.max_sum));
    out
}

fn fmt_f64(x: f64) -> String {
    format!("{x:.3e}")
}

pub fn simulation(r: &SimulationReport, outer_max_sum: Rational) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "seed: {}", r.seed);
    let _ = writeln!(out, "trials: {}", r.trials);
    match r.mode {
        Mode::Noiseless => out.push_str("mode: noiseless\n"),
        Mode::Noisy { power } => {
            let _ = writeln!(out, "mode: noisy, P = {power}");
        }
    }
    let _ = writeln!(out, "declared {}", pair(r.declared_dof.0, r.declared_dof.1));
    for f in Flow::BOTH {
        let i = f.index() as usize - 1;
        let _ = write!(out, "{}: decodable {}/{}", d(f), r.decoded[i], r.trials);
        if let Some(m) = &r.margin[i] {
            let _ = write!(
                out,
                ", margin min {} mean {} max {}",
                fmt_f64(m.min),
                fmt_f64(m.mean),
                fmt_f64(m.max)
            );
        }
        if let Some(mse) = r.mean_mse[i] {
            let _ = write!(out, ", mean mse {}", fmt_f64(mse));
        }
        out.push('\n');
    }
    let _ = writeln!(out, "outer bound max_sum: {outer_max_sum}");
    let yes = if matches_outer_bound(r, outer_max_sum) {
        "yes"
    } else {
        "no"
    };
    match r.achieved_dof {
        Some((a, b)) => {
            let _ = writeln!(out, "achieved {}; matches outer bound: {yes}", pair(a, b));
        }
        None => {
            let _ = writeln!(out, "achieved: none; matches outer bound: {yes}");
        }
    }
    out
}

pub fn legality(r: &LegalityReport, delay: u32) -> String {
    let mut out = String::new();
    if r.is_legal() {
        let _ = writeln!(out, "legal (delay {delay})");
        return out;
    }
    let _ = writeln!(
        out,
        "illegal (delay {delay}): {} violation(s)",
        r.violations.len()
    );
    for v in &r.violations {
        let _ = write!(
            out,
            "  hop {} slot {} node {}: {}",
            v.hop, v.slot, v.node, v.reason
        );
        if let Some(g) = &v.gain {
            let _ = write!(out, " {g}");
        }
        out.push('\n');
    }
    out
}
