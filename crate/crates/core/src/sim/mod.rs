//! Coefficient-tracking simulation of linear schemes.
//!
//! Every signal is tracked as a vector of coefficients over the joint symbol
//! space `(a_1..a_k1, b_1..b_k2)` (and, in noisy mode, over the noise samples
//! injected at each reception). Receptions follow
//! `Y_j[t] = Σ_{i ∈ I(j)} h_{i,j}[t] X_i[t] + Z_j[t]`.
//!
//! Decodability is judged by generic rank in noiseless mode: with gains drawn
//! from a continuous distribution, a rank that holds for one draw holds for
//! almost every draw.

mod channel;
mod decode;
mod engine;
mod linalg;
mod monte_carlo;

pub use channel::{ChannelRealization, MIN_GAIN_MAGNITUDE};
pub use decode::{decodable, decoding_margin, zero_forcing_mse};
pub use engine::{execute, Mode, Signal, SignalLedger};
pub use monte_carlo::{monte_carlo, MarginStats, MonteCarlo, SimulationReport, TrialRecord};

use alloc::boxed::Box;

use crate::network::NodeId;
use crate::scheme::{GainRef, SchemeError};

/// Relative singular-value threshold for rank decisions.
pub const DEFAULT_RANK_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SimError {
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error("reconstruction infeasible at node `{node}` (hop {hop}, slot {slot})")]
    ReconstructionInfeasible { node: NodeId, hop: usize, slot: u32 },
    #[error("missing gain {0}")]
    MissingGain(GainRef),
    #[error("node `{node}` replays slot {slot} in hop {hop} but receives nothing")]
    ReplayWithoutReception { node: NodeId, hop: usize, slot: u32 },
    #[error("trial count must be at least 1")]
    NoTrials,
    #[error("trial {trial} (seed {seed}) failed: {source}")]
    Trial {
        seed: u64,
        trial: u64,
        #[source]
        source: Box<SimError>,
    },
}
