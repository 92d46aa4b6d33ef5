//! One-dimensional parameter sweeps over the capacity bounds.

use alloc::format;
use alloc::vec::Vec;

use crate::bounds::{capacity_bounds, BoundQuery, CapacityBounds, NetworkConfig};
use crate::dist::{DiscretePmf, PmfKind};
use crate::error::{Error, Result};
use crate::{gains, math};

/// Hop-count law generated from a target mean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HopShape {
    /// `K ≡ mean`; the mean must be an integer.
    PointMass,
    /// Bimodal gain-maximizing law on `{1, k_max}`. Without an explicit
    /// `k_max` the row's horizon `t` is used (the largest value allowed).
    GainMax { k_max: Option<u32> },
}

/// Density law generated from a target mean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DensityShape {
    PointMass,
    GainMax { n_max: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SweepAxis {
    Horizon,
    Gamma,
    MeanHops(HopShape),
    MeanDensity(DensityShape),
}

/// Joint scaling for mean-hop sweeps: `t = ceil(E[K]^(1 + zeta))`, and
/// optionally `γ = round(E[K])`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coupling {
    pub zeta: f64,
    pub gamma_follows_mean: bool,
}

impl Default for Coupling {
    fn default() -> Self {
        Coupling {
            zeta: 0.5,
            gamma_follows_mean: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    /// Grid value of the swept variable.
    pub value: f64,
    pub t: u64,
    pub gamma: u32,
    pub bounds: Result<CapacityBounds>,
}

fn integral(name: &'static str, v: f64, min: u64) -> Result<u64> {
    let r = math::round(v);
    if !v.is_finite() || (v - r).abs() > 1e-9 || r < min as f64 {
        return Err(Error::param(name, format!("{v} is not an integer >= {min}")));
    }
    Ok(r as u64)
}

fn to_u32(name: &'static str, v: u64) -> Result<u32> {
    u32::try_from(v).map_err(|_| Error::param(name, format!("{v} too large")))
}

/// Evaluates one grid point. Errors are kept in the row.
pub fn sweep_point(
    network: &NetworkConfig,
    query: &BoundQuery,
    axis: SweepAxis,
    value: f64,
    coupling: Option<Coupling>,
) -> SweepRow {
    let mut t = query.t();
    let mut gamma = network.gamma();
    let bounds = (|| {
        let (net, q) = match axis {
            SweepAxis::Horizon => {
                t = integral("t", value, 1)?;
                (network.clone(), query.with_t(t)?)
            }
            SweepAxis::Gamma => {
                gamma = to_u32("gamma", integral("gamma", value, 1)?)?;
                (network.with_gamma(gamma)?, *query)
            }
            SweepAxis::MeanHops(shape) => {
                if value.is_nan() || value < 1.0 {
                    return Err(Error::param("mean_K", format!("{value} below 1")));
                }
                if let Some(c) = coupling {
                    t = math::ceil(libm::pow(value, 1.0 + c.zeta)) as u64;
                    if c.gamma_follows_mean {
                        gamma = math::round(value).max(1.0) as u32;
                    }
                }
                let law = match shape {
                    HopShape::PointMass => {
                        let k = to_u32("mean_K", integral("mean_K", value, 1)?)?;
                        DiscretePmf::point_mass(k, PmfKind::HopCount)?
                    }
                    HopShape::GainMax { k_max } => {
                        let k = match k_max {
                            Some(k) => k,
                            None => to_u32("t", t)?.max(math::ceil(value) as u32).max(2),
                        };
                        gains::gain_max_hops(k, value)?
                    }
                };
                (network.with_hop_law(law, gamma)?, query.with_t(t)?)
            }
            SweepAxis::MeanDensity(shape) => {
                let law = match shape {
                    DensityShape::PointMass => {
                        let n = to_u32("mean_N", integral("mean_N", value, 2)?)?;
                        DiscretePmf::point_mass(n, PmfKind::Density)?
                    }
                    DensityShape::GainMax { n_max } => gains::gain_max_density(n_max, value)?,
                };
                (network.with_density_law(law)?, *query)
            }
        };
        capacity_bounds(&net, &q)
    })();
    SweepRow {
        value,
        t,
        gamma,
        bounds,
    }
}

/// Sequential sweep; rows come back in grid order.
pub fn sweep(
    network: &NetworkConfig,
    query: &BoundQuery,
    axis: SweepAxis,
    grid: &[f64],
    coupling: Option<Coupling>,
) -> Vec<SweepRow> {
    grid.iter()
        .map(|v| sweep_point(network, query, axis, *v, coupling))
        .collect()
}
