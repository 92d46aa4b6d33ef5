use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{sample_geometry, PathSimulator, TraceRow};
use crate::bounds::{capacity_bounds, BoundQuery, CapacityBounds, NetworkConfig};
use crate::error::{Error, Result};
use crate::math;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimConfig {
    pub t: u64,
    pub replications: u64,
    pub seed: u64,
    pub record_trajectory: bool,
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.t == 0 {
            return Err(Error::param("sim.t", "must be positive"));
        }
        if self.replications == 0 {
            return Err(Error::param("sim.replications", "must be positive"));
        }
        Ok(())
    }
}

/// Generator of replication `r`: ChaCha8 keyed by `seed`, on stream `r`.
/// Replications are independent of each other and of execution order.
pub fn replication_rng(seed: u64, replication: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(replication);
    rng
}

/// Plays one replication (fresh geometry, `t` slots) and returns `D(t)`.
pub fn run_replication(
    network: &NetworkConfig,
    t: u64,
    seed: u64,
    replication: u64,
    mut trace: Option<&mut Vec<TraceRow>>,
) -> u64 {
    let mut rng = replication_rng(seed, replication);
    let geometry = sample_geometry(network, &mut rng);
    let mut sim = PathSimulator::new(&geometry, network.mac())
        .expect("validated network yields valid hop channels");
    for _ in 0..t {
        sim.step(&mut rng, trace.as_deref_mut());
    }
    sim.departures()
}

/// Empirical check of the probabilistic capacity bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct SimReport {
    pub t: u64,
    pub epsilon: f64,
    pub bounds: CapacityBounds,
    /// `D(t)` per replication, in replication order.
    pub departures: Vec<u64>,
    /// Mean of `D(t)/t` over replications.
    pub mean_throughput: f64,
    /// Half-width of the normal-approximation 95% interval of the mean.
    pub ci_half_width: f64,
    /// Replications with `D(t) <= lower * t`.
    pub lower_violations: u64,
    /// Replications with `D(t) >= upper * t`.
    pub upper_violations: u64,
}

impl SimReport {
    pub fn from_departures(t: u64, epsilon: f64, bounds: CapacityBounds, departures: Vec<u64>) -> Self {
        let m = departures.len() as f64;
        let tf = t as f64;
        let rates = || departures.iter().map(|d| *d as f64 / tf);
        let mean = math::sum(rates()) / m;
        let var = if departures.len() > 1 {
            math::sum(rates().map(|r| (r - mean) * (r - mean))) / (m - 1.0)
        } else {
            0.0
        };
        let lower_line = bounds.lower * tf;
        let upper_line = bounds.upper * tf;
        let lower_violations = departures.iter().filter(|d| **d as f64 <= lower_line).count() as u64;
        let upper_violations = departures.iter().filter(|d| **d as f64 >= upper_line).count() as u64;
        SimReport {
            t,
            epsilon,
            bounds,
            mean_throughput: mean,
            ci_half_width: 1.96 * math::sqrt(var / m),
            lower_violations,
            upper_violations,
            departures,
        }
    }

    pub fn replications(&self) -> u64 {
        self.departures.len() as u64
    }

    pub fn lower_violation_fraction(&self) -> f64 {
        self.lower_violations as f64 / self.departures.len() as f64
    }

    pub fn upper_violation_fraction(&self) -> f64 {
        self.upper_violations as f64 / self.departures.len() as f64
    }
}

/// Checks that the simulation and the bound query share a horizon and
/// computes the bounds the replications are judged against.
pub fn check_horizon(network: &NetworkConfig, query: &BoundQuery, sim: &SimConfig) -> Result<CapacityBounds> {
    sim.validate()?;
    if sim.t != query.t() {
        return Err(Error::HorizonMismatch {
            query_t: query.t(),
            sim_t: sim.t,
        });
    }
    capacity_bounds(network, query)
}

/// Runs `sim.replications` replications sequentially and counts bound
/// violations.
pub fn validate_bounds(network: &NetworkConfig, query: &BoundQuery, sim: &SimConfig) -> Result<SimReport> {
    let bounds = check_horizon(network, query, sim)?;
    let departures = (0..sim.replications)
        .map(|r| run_replication(network, sim.t, sim.seed, r, None))
        .collect();
    Ok(SimReport::from_departures(sim.t, query.epsilon(), bounds, departures))
}
