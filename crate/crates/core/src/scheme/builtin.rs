//! The built-in schemes, one per network family.

use alloc::vec::Vec;

use super::{
    Coefficient, FamilyTag, FormTerm, GainRef, HopBlock, Scheme, SchemeError, SymbolId,
    TransmitSpec,
};
use crate::network::families::StageNames;
use crate::network::{Family, Flow};

/// Returns the scheme that achieves the corner point of `family`'s region on
/// the network generated for the same family.
///
/// * `Bottleneck(m)`: `T = m`, `k = (m - 1, m)`, DoF `((m-1)/m, 1)`.
/// * `DoubleBottleneck(m)`: `T = m + 1`, `k = (m, m)`, DoF `(m/(m+1), m/(m+1))`.
/// * `NoBottleneck`: `T = 3`, `k = (3, 3)`, DoF `(1, 1)`.
pub fn builtin_scheme(family: Family) -> Result<Scheme, SchemeError> {
    match family {
        Family::Bottleneck(m) => {
            check_m(m)?;
            let mut hops = blocks(3, m);
            let names = StageNames::new(m, "v", "w", "u");
            Stage {
                names: &names,
                single_src: "s1",
                multi_src: "s2",
                narrow: Flow::One,
                m,
                narrow_count: m - 1,
            }
            .plan(&mut hops[0..3]);
            Scheme::new(family.into(), hops, (m - 1, m))
        }
        Family::DoubleBottleneck(m) => {
            check_m(m)?;
            let mut hops = blocks(6, m + 1);
            let first = StageNames::new(m, "v", "w", "u");
            let second = StageNames::new(m, "x", "w2", "y");
            Stage {
                names: &first,
                single_src: "s1",
                multi_src: "s2",
                narrow: Flow::One,
                m,
                narrow_count: m,
            }
            .plan(&mut hops[0..3]);
            Stage {
                names: &second,
                single_src: "g2",
                multi_src: "g1",
                narrow: Flow::Two,
                m,
                narrow_count: m,
            }
            .plan(&mut hops[3..6]);
            Scheme::new(family.into(), hops, (m, m))
        }
        Family::NoBottleneck => no_bottleneck_scheme(),
    }
}

fn check_m(m: u32) -> Result<(), SchemeError> {
    if m == 0 {
        Err(SchemeError::InvalidParameter(m))
    } else {
        Ok(())
    }
}

fn blocks(count: usize, slots: u32) -> Vec<HopBlock> {
    (0..count).map(|_| HopBlock::new(slots)).collect()
}

fn form(terms: &[(SymbolId, GainRef)]) -> TransmitSpec {
    TransmitSpec::Reconstruct {
        target: terms
            .iter()
            .map(|(s, g)| FormTerm {
                symbol: *s,
                coefficient: Coefficient::gain(g.clone()),
            })
            .collect(),
    }
}

/// Three hop blocks moving `narrow_count` symbols of the narrow flow through
/// the bottleneck node and `m` symbols of the wide flow around it.
///
/// 1. The feeding nodes send their symbols one per slot.
/// 2. Slot 1: the `m` wide relays each send one wide symbol, so the
///    bottleneck hears a combination `L1` of all of them and every side relay
///    hears a two-symbol combination. Slot 2: the distributor (first wide
///    relay) rebuilds `L1` from slot-1 gains and sends it while the single
///    relay sends the first narrow symbol; the bottleneck cancels `L1` and the
///    side relays receive `L1` cleanly. Later slots carry the remaining narrow
///    symbols with the wide relays silent.
/// 3. The bottleneck forwards the narrow symbols; the side relays forward
///    `L1` and their slot-1 combinations, one per slot.
struct Stage<'a> {
    names: &'a StageNames,
    single_src: &'a str,
    multi_src: &'a str,
    narrow: Flow,
    m: u32,
    narrow_count: u32,
}

impl Stage<'_> {
    fn plan(&self, hops: &mut [HopBlock]) {
        let wide = self.narrow.other();
        let n = self.names;

        for j in 1..=self.narrow_count {
            hops[0].set(
                j,
                self.single_src,
                TransmitSpec::symbol(SymbolId::of(self.narrow, j)),
            );
        }
        for j in 1..=self.m {
            hops[0].set(
                j,
                self.multi_src,
                TransmitSpec::symbol(SymbolId::of(wide, j)),
            );
        }

        for (i, r) in n.multi.iter().enumerate() {
            hops[1].set(
                1,
                r.as_str(),
                TransmitSpec::symbol(SymbolId::of(wide, i as u32 + 1)),
            );
        }
        if self.m >= 2 {
            let l1: Vec<_> = n
                .multi
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    (
                        SymbolId::of(wide, i as u32 + 1),
                        GainRef::new(r.as_str(), n.bottleneck.as_str(), 1),
                    )
                })
                .collect();
            hops[1].set(2, n.multi[0].as_str(), form(&l1));
        }
        for j in 1..=self.narrow_count {
            hops[1].set(
                j + 1,
                n.single.as_str(),
                TransmitSpec::symbol(SymbolId::of(self.narrow, j)),
            );
        }

        for j in 1..=self.narrow_count {
            hops[2].set(
                j,
                n.bottleneck.as_str(),
                TransmitSpec::symbol(SymbolId::of(self.narrow, j)),
            );
        }
        if self.m >= 2 {
            hops[2].set(1, n.side[0].as_str(), TransmitSpec::replay(2));
            for (k, u) in n.side.iter().enumerate() {
                hops[2].set(k as u32 + 2, u.as_str(), TransmitSpec::replay(1));
            }
        } else {
            hops[2].set(1, n.side[0].as_str(), TransmitSpec::replay(1));
        }
    }
}

/// Three symbols per flow in three slots on the no-bottleneck network.
///
/// Hop 2, slot 1: `v3, v4, v5` send `b1, b2, b3`; `v6` hears `L1(b)`, `v7`
/// hears `L2(b2, b3)`, `v8` hears `L3(b)`. Slot 2: `v3` rebuilds `L1`, `v1`
/// and `v2` send `a1, a2`; `v6` can strip `L1` and keep `L5(a1, a2)`, `v7`
/// hears `L6(a1, a2)`, `v8` hears `L1`. Slot 3: `v1` sends `a3` and `v4`
/// rebuilds `L2`, which `v7` strips to recover `a3`; `v8` hears `L2`.
/// Hop 3: `v6` sends `L5`, `v7` sends `L6` then `a3` to `d1`; `v8` replays
/// its three clean `b` equations to `d2`.
fn no_bottleneck_scheme() -> Result<Scheme, SchemeError> {
    let mut hops = blocks(3, 3);
    for t in 1..=3 {
        hops[0].set(t, "s1", TransmitSpec::symbol(SymbolId::a(t)));
        hops[0].set(t, "s2", TransmitSpec::symbol(SymbolId::b(t)));
    }

    let hop2 = &mut hops[1];
    hop2.set(1, "v3", TransmitSpec::symbol(SymbolId::b(1)))
        .set(1, "v4", TransmitSpec::symbol(SymbolId::b(2)))
        .set(1, "v5", TransmitSpec::symbol(SymbolId::b(3)))
        .set(
            2,
            "v3",
            form(&[
                (SymbolId::b(1), GainRef::new("v3", "v6", 1)),
                (SymbolId::b(2), GainRef::new("v4", "v6", 1)),
                (SymbolId::b(3), GainRef::new("v5", "v6", 1)),
            ]),
        )
        .set(2, "v1", TransmitSpec::symbol(SymbolId::a(1)))
        .set(2, "v2", TransmitSpec::symbol(SymbolId::a(2)))
        .set(3, "v1", TransmitSpec::symbol(SymbolId::a(3)))
        .set(
            3,
            "v4",
            form(&[
                (SymbolId::b(2), GainRef::new("v4", "v7", 1)),
                (SymbolId::b(3), GainRef::new("v5", "v7", 1)),
            ]),
        );

    let hop3 = &mut hops[2];
    hop3.set(
        1,
        "v6",
        form(&[
            (SymbolId::a(1), GainRef::new("v1", "v6", 2)),
            (SymbolId::a(2), GainRef::new("v2", "v6", 2)),
        ]),
    )
    .set(2, "v7", TransmitSpec::replay(2))
    .set(3, "v7", TransmitSpec::symbol(SymbolId::a(3)));
    for t in 1..=3 {
        hop3.set(t, "v8", TransmitSpec::replay(t));
    }

    Scheme::new(FamilyTag::from(Family::NoBottleneck), hops, (3, 3))
}
