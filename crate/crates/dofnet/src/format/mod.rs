//! JSON (and CSV) encodings of the core types.
//!
//! Rationals are written as strings (`"5/3"`, `"1"`) so they round-trip
//! exactly. Destinations and flows are written as `1` or `2`.

mod legality;
mod network;
mod region;
mod report;
mod scheme;
pub mod sim;

pub use legality::LegalityJson;
pub use network::NetworkJson;
pub use region::RegionJson;
pub use report::ReportJson;
pub use scheme::SchemeJson;
pub use sim::{trials_csv, SimulationJson};

use dofnet_core::{Flow, Rational};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid rational `{0}`")]
    Rational(String),
    #[error("invalid symbol `{0}`; expected a<i> or b<i>")]
    Symbol(String),
    #[error("invalid schedule key `{0}`; expected \"<slot>,<node>\"")]
    ScheduleKey(String),
    #[error("{0}")]
    Network(#[from] dofnet_core::NetworkError),
    #[error("{0}")]
    Scheme(#[from] dofnet_core::SchemeError),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

/// Serialize helper for exact rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Exact(pub Rational);

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text)
            .map(Exact)
            .map_err(serde::de::Error::custom)
    }
}

pub fn parse_rational(text: &str) -> Result<Rational, FormatError> {
    let bad = || FormatError::Rational(text.to_string());
    let t = text.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: i64 = n.parse().map_err(|_| bad())?;
    let d: i64 = d.parse().map_err(|_| bad())?;
    if d == 0 {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub(crate) fn flow_index(f: Flow) -> u8 {
    f.index()
}
