//! Test-only oracles for `dofnet-core`.
//!
//! Everything here is written the slow, obvious way (path enumeration,
//! bitmask subsets, genie-aided numeric simulation) and shares no code with
//! the algorithms it checks.

pub mod gen;
pub mod numeric;
pub mod oracle;

pub use gen::{arb_network, random_network, NetParams};
pub use numeric::{direct_simulate, symbol_values};
pub use oracle::{all_paths, brute_force_bottlenecks, brute_force_omniscient, is_cut_by_paths};
