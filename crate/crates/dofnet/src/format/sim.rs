use dofnet_core::sim::MarginStats;
use dofnet_core::{Mode, Rational, SimulationReport};
use serde::Serialize;

use super::{Exact, FormatError};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimulationJson {
    pub seed: u64,
    pub trials: u32,
    pub mode: ModeJson,
    pub tol: f64,
    pub declared_dof: [Exact; 2],
    pub decodable_trials: [u32; 2],
    pub achieved_dof: Option<[Exact; 2]>,
    pub min_singular_values: [Option<StatsJson>; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_mse: Option<[Option<f64>; 2]>,
    pub outer_bound_max_sum: Exact,
    pub matches_outer_bound: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ModeJson {
    Noiseless,
    Noisy { power: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StatsJson {
    pub min: f64,
    pub mean: f64,
    pub max: f64,
}

impl From<&MarginStats> for StatsJson {
    fn from(s: &MarginStats) -> Self {
        StatsJson {
            min: s.min,
            mean: s.mean,
            max: s.max,
        }
    }
}

fn pair((a, b): (Rational, Rational)) -> [Exact; 2] {
    [Exact(a), Exact(b)]
}

impl SimulationJson {
    pub fn new(r: &SimulationReport, outer_max_sum: Rational) -> Self {
        let mode = match r.mode {
            Mode::Noiseless => ModeJson::Noiseless,
            Mode::Noisy { power } => ModeJson::Noisy { power },
        };
        SimulationJson {
            seed: r.seed,
            trials: r.trials,
            mode,
            tol: r.tol,
            declared_dof: pair(r.declared_dof),
            decodable_trials: r.decoded,
            achieved_dof: r.achieved_dof.map(pair),
            min_singular_values: r.margin.map(|m| m.as_ref().map(StatsJson::from)),
            mean_mse: matches!(r.mode, Mode::Noisy { .. }).then_some(r.mean_mse),
            outer_bound_max_sum: Exact(outer_max_sum),
            matches_outer_bound: matches_outer_bound(r, outer_max_sum),
        }
    }
}

pub fn matches_outer_bound(r: &SimulationReport, outer_max_sum: Rational) -> bool {
    r.achieved_dof.is_some_and(|(a, b)| a + b == outer_max_sum)
}

/// One row per trial:
/// `trial,decodable_d1,decodable_d2,margin_d1,margin_d2,mse_d1,mse_d2`.
/// Missing values are empty fields.
pub fn trials_csv(r: &SimulationReport) -> Result<String, FormatError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "trial",
        "decodable_d1",
        "decodable_d2",
        "margin_d1",
        "margin_d2",
        "mse_d1",
        "mse_d2",
    ])?;
    let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
    for t in &r.per_trial {
        w.write_record([
            t.trial.to_string(),
            t.decodable[0].to_string(),
            t.decodable[1].to_string(),
            opt(t.margin[0]),
            opt(t.margin[1]),
            opt(t.mse[0]),
            opt(t.mse[1]),
        ])?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| csv::Error::from(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
