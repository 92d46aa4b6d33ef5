//! Rayon-backed versions of the replication harness and the sweeps.
//!
//! Replication `r` always draws from its own stream of `(seed, r)`, so
//! the results match the sequential functions bit for bit.

use rayon::prelude::*;

use netcap_core::sim::{check_horizon, run_replication, TraceRow};
use netcap_core::sweep::{sweep_point, Coupling, SweepAxis, SweepRow};
use netcap_core::{BoundQuery, NetworkConfig, Result, SimConfig, SimReport};

pub fn validate_bounds_parallel(
    network: &NetworkConfig,
    query: &BoundQuery,
    sim: &SimConfig,
) -> Result<SimReport> {
    let bounds = check_horizon(network, query, sim)?;
    let departures = (0..sim.replications)
        .into_par_iter()
        .map(|r| run_replication(network, sim.t, sim.seed, r, None))
        .collect();
    Ok(SimReport::from_departures(sim.t, query.epsilon(), bounds, departures))
}

/// Replays replication 0 with tracing on.
pub fn trace_first_replication(network: &NetworkConfig, sim: &SimConfig) -> Vec<TraceRow> {
    let mut rows = Vec::new();
    run_replication(network, sim.t, sim.seed, 0, Some(&mut rows));
    rows
}

pub fn sweep_parallel(
    network: &NetworkConfig,
    query: &BoundQuery,
    axis: SweepAxis,
    grid: &[f64],
    coupling: Option<Coupling>,
) -> Vec<SweepRow> {
    grid.par_iter()
        .map(|v| sweep_point(network, query, axis, *v, coupling))
        .collect()
}
