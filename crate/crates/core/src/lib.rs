//! Core analysis for two-unicast layered wireless networks under delayed CSIT.
//!
//! The crate is `no_std` (with `alloc`). It covers:
//!
//! * [`network`]: the layered network model and the built-in topology families.
//! * [`cuts`]: cut predicates, omniscient nodes and `m`-bottleneck detection.
//! * [`dof`]: the exact-rational DoF outer-bound polygon and the sum-DoF value set.
//! * [`scheme`]: time-slotted linear schedules and their delayed-CSIT legality.
//! * [`sim`]: coefficient-tracking execution, generic-rank decoding and Monte Carlo runs.
//!
//! File formats, the command line and everything else touching IO live in the
//! `dofnet` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cuts;
pub mod dof;
pub mod network;
pub mod scheme;
pub mod sim;

pub use cuts::{
    detect_bottlenecks, detect_omniscient, is_cut, BottleneckRecord, BottleneckReport, CutError,
    CutQuery, OmniscientRecord, DEFAULT_EXHAUSTIVE_BUDGET,
};
pub use dof::{build_region, in_set_s, max_sum_dof, DofConstraint, DofPoint, DofRegion, Rational};
pub use network::{Family, Flow, LayeredNetwork, NetworkError, NodeId};
pub use scheme::{builtin_scheme, check_csit_legality, Scheme, SchemeError, TransmitSpec};
pub use sim::{
    decodable, execute, monte_carlo, ChannelRealization, Mode, MonteCarlo, SignalLedger, SimError,
    SimulationReport,
};
