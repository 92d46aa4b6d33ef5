//! Slot-level Monte Carlo simulation of a saturated flow over a random
//! multi-hop Aloha path.
//!
//! A replication draws a path geometry once (hop count and per-hop
//! interference-set sizes) and then plays `t` slots on it. In each slot
//! every hop independently succeeds when its transmitter fires and no
//! other member of the receiver's interference set does. The source is
//! saturated; relays forward one unit per successful slot out of the
//! backlog they held at the start of the slot.

mod convolution;
mod geometry;
mod path;
mod validate;

pub use convolution::{single_hop_convolution_check, ConvolutionCheck};
pub use geometry::{sample_geometry, GeometryRealization};
pub use path::{
    draw_interference_field, field_success, hop_success_draw, simulate_path, HopChannel,
    PathSimulator, TraceRow,
};
pub use validate::{
    check_horizon, replication_rng, run_replication, validate_bounds, SimConfig, SimReport,
};
