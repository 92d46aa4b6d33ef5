use alloc::vec::Vec;

use rand::Rng;

use crate::bounds::NetworkConfig;
use crate::error::{Error, Result};

/// One sampled path: the interference-set size of every hop, in hop order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeometryRealization {
    densities: Vec<u32>,
}

impl GeometryRealization {
    pub fn new(densities: Vec<u32>) -> Result<Self> {
        if densities.is_empty() {
            return Err(Error::param("geometry", "a path has at least one hop"));
        }
        if densities.iter().any(|n| *n < 2) {
            return Err(Error::param("geometry", "hop densities must be at least 2"));
        }
        Ok(GeometryRealization { densities })
    }

    /// Number of hops `K`.
    pub fn hops(&self) -> usize {
        self.densities.len()
    }

    pub fn densities(&self) -> &[u32] {
        &self.densities
    }
}

/// Draws `K` from the hop law, then one density per block of `γ`
/// consecutive hops (the last block may be shorter); all hops of a block
/// share that density. Hops at distance `γ` or more never share a block,
/// so their densities are independent.
pub fn sample_geometry<R: Rng + ?Sized>(network: &NetworkConfig, rng: &mut R) -> GeometryRealization {
    let k = network.hop_law().sample(rng) as usize;
    let block = network.gamma() as usize;
    let mut densities = Vec::with_capacity(k);
    while densities.len() < k {
        let n = network.density_law().sample(rng);
        let len = block.min(k - densities.len());
        densities.extend(core::iter::repeat_n(n, len));
    }
    GeometryRealization { densities }
}
