use std::collections::BTreeMap;

use dofnet_core::scheme::{Coefficient, FamilyTag, FormTerm, GainRef, HopBlock, SymbolId};
use dofnet_core::{Flow, Scheme, TransmitSpec};
use serde::{Deserialize, Serialize};

use super::FormatError;

/// `{family, m, hops: [{T, schedule: {"slot,node": spec}}], symbols: {k1, k2}}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeJson {
    pub family: String,
    #[serde(default)]
    pub m: Option<u32>,
    pub hops: Vec<HopJson>,
    pub symbols: SymbolsJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HopJson {
    #[serde(rename = "T")]
    pub slots: u32,
    pub schedule: BTreeMap<String, SpecJson>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolsJson {
    pub k1: u32,
    pub k2: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GainJson {
    pub edge: [String; 2],
    pub slot: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientJson {
    #[serde(default = "one")]
    pub weight: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub gains: Vec<GainJson>,
}

fn one() -> f64 {
    1.0
}

fn unit() -> CoefficientJson {
    CoefficientJson {
        weight: 1.0,
        gains: Vec::new(),
    }
}

fn is_unit(c: &CoefficientJson) -> bool {
    c == &unit()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub symbol: String,
    #[serde(default = "unit", skip_serializing_if = "is_unit")]
    pub coefficient: CoefficientJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartJson {
    pub weight: f64,
    pub spec: SpecJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum SpecJson {
    Silent,
    Symbol {
        symbol: String,
        #[serde(default = "unit", skip_serializing_if = "is_unit")]
        scale: CoefficientJson,
    },
    Replay {
        slot: u32,
        #[serde(default = "unit", skip_serializing_if = "is_unit")]
        scale: CoefficientJson,
    },
    Reconstruct {
        target: Vec<TermJson>,
    },
    Combo {
        parts: Vec<PartJson>,
    },
}

impl From<&GainRef> for GainJson {
    fn from(g: &GainRef) -> Self {
        GainJson {
            edge: [g.from.to_string(), g.to.to_string()],
            slot: g.slot,
        }
    }
}

impl From<&GainJson> for GainRef {
    fn from(g: &GainJson) -> Self {
        GainRef::new(g.edge[0].as_str(), g.edge[1].as_str(), g.slot)
    }
}

impl From<&Coefficient> for CoefficientJson {
    fn from(c: &Coefficient) -> Self {
        CoefficientJson {
            weight: c.weight,
            gains: c.gains.iter().map(GainJson::from).collect(),
        }
    }
}

impl From<&CoefficientJson> for Coefficient {
    fn from(c: &CoefficientJson) -> Self {
        Coefficient {
            weight: c.weight,
            gains: c.gains.iter().map(GainRef::from).collect(),
        }
    }
}

pub fn parse_symbol(text: &str) -> Result<SymbolId, FormatError> {
    let bad = || FormatError::Symbol(text.to_string());
    let mut chars = text.chars();
    let flow = match chars.next() {
        Some('a') => Flow::One,
        Some('b') => Flow::Two,
        _ => return Err(bad()),
    };
    let index: u32 = chars.as_str().parse().map_err(|_| bad())?;
    if index == 0 {
        return Err(bad());
    }
    Ok(SymbolId::of(flow, index))
}

impl From<&TransmitSpec> for SpecJson {
    fn from(spec: &TransmitSpec) -> Self {
        match spec {
            TransmitSpec::Silent => SpecJson::Silent,
            TransmitSpec::Symbol { symbol, scale } => SpecJson::Symbol {
                symbol: symbol.to_string(),
                scale: scale.into(),
            },
            TransmitSpec::Replay { slot, scale } => SpecJson::Replay {
                slot: *slot,
                scale: scale.into(),
            },
            TransmitSpec::Reconstruct { target } => SpecJson::Reconstruct {
                target: target
                    .iter()
                    .map(|t| TermJson {
                        symbol: t.symbol.to_string(),
                        coefficient: (&t.coefficient).into(),
                    })
                    .collect(),
            },
            TransmitSpec::Combo(parts) => SpecJson::Combo {
                parts: parts
                    .iter()
                    .map(|(w, p)| PartJson {
                        weight: *w,
                        spec: p.into(),
                    })
                    .collect(),
            },
        }
    }
}

impl SpecJson {
    pub fn to_spec(&self) -> Result<TransmitSpec, FormatError> {
        Ok(match self {
            SpecJson::Silent => TransmitSpec::Silent,
            SpecJson::Symbol { symbol, scale } => TransmitSpec::Symbol {
                symbol: parse_symbol(symbol)?,
                scale: scale.into(),
            },
            SpecJson::Replay { slot, scale } => TransmitSpec::Replay {
                slot: *slot,
                scale: scale.into(),
            },
            SpecJson::Reconstruct { target } => TransmitSpec::Reconstruct {
                target: target
                    .iter()
                    .map(|t| {
                        Ok(FormTerm {
                            symbol: parse_symbol(&t.symbol)?,
                            coefficient: (&t.coefficient).into(),
                        })
                    })
                    .collect::<Result<_, FormatError>>()?,
            },
            SpecJson::Combo { parts } => TransmitSpec::Combo(
                parts
                    .iter()
                    .map(|p| Ok((p.weight, p.spec.to_spec()?)))
                    .collect::<Result<_, FormatError>>()?,
            ),
        })
    }
}

impl From<&Scheme> for SchemeJson {
    fn from(s: &Scheme) -> Self {
        SchemeJson {
            family: s.family().name.clone(),
            m: s.family().m,
            hops: s
                .hops()
                .iter()
                .map(|b| HopJson {
                    slots: b.slots(),
                    schedule: b
                        .entries()
                        .map(|(t, node, spec)| (format!("{t},{node}"), spec.into()))
                        .collect(),
                })
                .collect(),
            symbols: SymbolsJson {
                k1: s.symbols().0,
                k2: s.symbols().1,
            },
        }
    }
}

impl SchemeJson {
    pub fn to_scheme(&self) -> Result<Scheme, FormatError> {
        let mut hops = Vec::with_capacity(self.hops.len());
        for h in &self.hops {
            let mut block = HopBlock::new(h.slots);
            for (key, spec) in &h.schedule {
                let (slot, node) = key
                    .split_once(',')
                    .and_then(|(s, n)| Some((s.trim().parse::<u32>().ok()?, n.trim())))
                    .filter(|(_, n)| !n.is_empty())
                    .ok_or_else(|| FormatError::ScheduleKey(key.clone()))?;
                block.set(slot, node, spec.to_spec()?);
            }
            hops.push(block);
        }
        let tag = FamilyTag {
            name: self.family.clone(),
            m: self.m,
        };
        Ok(Scheme::new(tag, hops, (self.symbols.k1, self.symbols.k2))?)
    }

    pub fn parse(text: &str) -> Result<Scheme, FormatError> {
        serde_json::from_str::<SchemeJson>(text)?.to_scheme()
    }

    pub fn render(s: &Scheme) -> String {
        serde_json::to_string_pretty(&SchemeJson::from(s)).expect("plain data")
    }
}
