use alloc::boxed::Box;
use alloc::vec::Vec;

use super::{
    decodable, decoding_margin, execute, zero_forcing_mse, ChannelRealization, Mode, SimError,
    DEFAULT_RANK_TOL,
};
use crate::dof::Rational;
use crate::network::{Flow, LayeredNetwork};
use crate::scheme::Scheme;

/// Monte-Carlo run parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MonteCarlo {
    pub trials: u32,
    pub seed: u64,
    pub mode: Mode,
    pub tol: f64,
}

impl Default for MonteCarlo {
    fn default() -> Self {
        MonteCarlo {
            trials: 100,
            seed: 0,
            mode: Mode::Noiseless,
            tol: DEFAULT_RANK_TOL,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MarginStats {
    pub min: f64,
    pub mean: f64,
    pub max: f64,
}

impl MarginStats {
    fn of(values: impl Iterator<Item = f64>) -> Option<Self> {
        let mut n = 0usize;
        let (mut min, mut max, mut sum) = (f64::INFINITY, f64::NEG_INFINITY, 0.0);
        for v in values {
            n += 1;
            min = min.min(v);
            max = max.max(v);
            sum += v;
        }
        (n > 0).then(|| MarginStats {
            min,
            mean: sum / n as f64,
            max,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrialRecord {
    pub trial: u64,
    pub decodable: [bool; 2],
    pub margin: [Option<f64>; 2],
    pub mse: [Option<f64>; 2],
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimulationReport {
    pub seed: u64,
    pub trials: u32,
    pub mode: Mode,
    pub tol: f64,
    pub declared_dof: (Rational, Rational),
    /// Trials in which each destination decoded.
    pub decoded: [u32; 2],
    /// The declared DoF pair when every trial decoded at both destinations.
    pub achieved_dof: Option<(Rational, Rational)>,
    pub margin: [Option<MarginStats>; 2],
    /// Mean zero-forcing MSE per destination in noisy mode.
    pub mean_mse: [Option<f64>; 2],
    pub per_trial: Vec<TrialRecord>,
}

impl SimulationReport {
    pub fn all_decodable(&self) -> bool {
        self.achieved_dof.is_some()
    }
}

impl MonteCarlo {
    pub fn run(&self, net: &LayeredNetwork, sch: &Scheme) -> Result<SimulationReport, SimError> {
        if self.trials == 0 {
            return Err(SimError::NoTrials);
        }
        let mut per_trial = Vec::with_capacity(self.trials as usize);
        for trial in 0..self.trials as u64 {
            let real = ChannelRealization::draw(net, sch.slots(), self.seed, trial);
            let ledger = execute(net, sch, &real, self.mode).map_err(|e| SimError::Trial {
                seed: self.seed,
                trial,
                source: Box::new(e),
            })?;
            let per = |f: fn(&super::SignalLedger, Flow, f64) -> Option<f64>| {
                Flow::BOTH.map(|d| f(&ledger, d, self.tol))
            };
            per_trial.push(TrialRecord {
                trial,
                decodable: Flow::BOTH.map(|d| decodable(&ledger, d, self.tol)),
                margin: per(decoding_margin),
                mse: per(zero_forcing_mse),
            });
        }

        let decoded = [0, 1].map(|i| per_trial.iter().filter(|r| r.decodable[i]).count() as u32);
        let declared_dof = sch.declared_dof();
        let achieved_dof = (decoded == [self.trials; 2]).then_some(declared_dof);
        let margin = [0, 1].map(|i| MarginStats::of(per_trial.iter().filter_map(|r| r.margin[i])));
        let mean_mse = [0, 1].map(|i| {
            if per_trial.iter().any(|r| r.mse[i].is_none()) {
                return None;
            }
            MarginStats::of(per_trial.iter().filter_map(|r| r.mse[i])).map(|s| s.mean)
        });
        Ok(SimulationReport {
            seed: self.seed,
            trials: self.trials,
            mode: self.mode,
            tol: self.tol,
            declared_dof,
            decoded,
            achieved_dof,
            margin,
            mean_mse,
            per_trial,
        })
    }
}

/// [`MonteCarlo::run`] with the default rank tolerance.
pub fn monte_carlo(
    net: &LayeredNetwork,
    sch: &Scheme,
    trials: u32,
    seed: u64,
    mode: Mode,
) -> Result<SimulationReport, SimError> {
    MonteCarlo {
        trials,
        seed,
        mode,
        tol: DEFAULT_RANK_TOL,
    }
    .run(net, sch)
}
