//! Per-flow throughput capacity of a multi-hop slotted-Aloha path whose
//! geometry is random: random interference-set sizes (hop densities), a
//! random number of hops, and a bounded range of spatial dependence
//! between hop densities.
//!
//! The crate is `no_std` (with `alloc`) and purely computational:
//!
//! * [`dist`]: finite probability laws for hop densities and hop counts,
//!   plus a catalog of reference families.
//! * [`bounds`]: non-asymptotic lower/upper capacity bounds optimized over
//!   the Chernoff parameter, the asymptotic capacity, and parameter sweeps.
//! * [`gains`]: randomness-gain functionals, their maximizing bimodal laws,
//!   and a brute-force vertex-enumeration LP oracle.
//! * [`sim`]: a slot-level Monte Carlo simulator used to validate the bounds.
//!
//! IO, configuration files, parallel replication and the CLI live in the
//! `netcap` crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod dist;
mod error;
pub mod gains;
pub mod math;
mod optimize;
pub mod sim;
pub mod sweep;

pub use bounds::{BoundQuery, CapacityBounds, MacMode, NetworkConfig, ThetaSearch};
pub use dist::{CatalogFamily, CatalogParams, DiscretePmf, PmfKind};
pub use error::{Error, Result};
pub use gains::{GainReport, HopGainReport};
pub use sim::{GeometryRealization, SimConfig, SimReport};
