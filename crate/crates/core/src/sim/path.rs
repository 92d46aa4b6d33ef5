use alloc::format;
use alloc::vec::Vec;

use rand::distr::{Bernoulli, Distribution};
use rand::Rng;

use super::GeometryRealization;
use crate::bounds::MacMode;
use crate::error::{Error, Result};

fn bernoulli(mac: MacMode, density: u32) -> Result<Bernoulli> {
    let p = mac.transmit_prob(density);
    Bernoulli::new(p).map_err(|_| Error::param("p", format!("{p} outside [0, 1]")))
}

/// Transmission indicators of one slot: index 0 is the hop's own
/// transmitter, the rest are the other `density - 1` members of the
/// receiver's interference set.
pub fn draw_interference_field<R: Rng + ?Sized>(
    density: u32,
    mac: MacMode,
    rng: &mut R,
) -> Result<Vec<bool>> {
    let coin = bernoulli(mac, density)?;
    Ok((0..density).map(|_| coin.sample(rng)).collect())
}

/// The slot succeeds iff the transmitter fires and nobody else does, i.e.
/// the virtual interference increment `1 - X_1 Π (1 - X_l)` is zero.
pub fn field_success(field: &[bool]) -> bool {
    match field.split_first() {
        Some((own, others)) => *own && others.iter().all(|x| !x),
        None => false,
    }
}

/// Per-slot success generator of a single hop.
#[derive(Debug, Clone, Copy)]
pub struct HopChannel {
    coin: Bernoulli,
    others: u32,
}

impl HopChannel {
    pub fn new(density: u32, mac: MacMode) -> Result<Self> {
        if density < 2 {
            return Err(Error::param("density", format!("{density} below 2")));
        }
        Ok(HopChannel {
            coin: bernoulli(mac, density)?,
            others: density - 1,
        })
    }

    /// Draws the interference field lazily: the transmitter first, then
    /// the others until one of them fires. The outcome has the same law as
    /// [`field_success`] on a fully drawn field.
    #[inline]
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> bool {
        if !self.coin.sample(rng) {
            return false;
        }
        (0..self.others).all(|_| !self.coin.sample(rng))
    }
}

pub fn hop_success_draw<R: Rng + ?Sized>(density: u32, mac: MacMode, rng: &mut R) -> Result<bool> {
    Ok(HopChannel::new(density, mac)?.draw(rng))
}

/// One hop in one slot of a recorded trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceRow {
    pub slot: u64,
    /// 1-based hop index.
    pub hop: u32,
    pub success: bool,
    /// Units queued at the hop's transmitter after the slot; `None` for the
    /// saturated source.
    pub backlog: Option<u64>,
}

/// Queue dynamics of a saturated flow along a fixed geometry.
#[derive(Debug, Clone)]
pub struct PathSimulator {
    channels: Vec<HopChannel>,
    /// `backlog[j]`: units waiting at the transmitter of hop `j`; unused
    /// for the source (`j = 0`).
    backlog: Vec<u64>,
    /// Cumulative units carried over each hop.
    forwarded: Vec<u64>,
    slot: u64,
    success: Vec<bool>,
    fired: Vec<bool>,
}

impl PathSimulator {
    pub fn new(geometry: &GeometryRealization, mac: MacMode) -> Result<Self> {
        let channels = geometry
            .densities()
            .iter()
            .map(|n| HopChannel::new(*n, mac))
            .collect::<Result<Vec<_>>>()?;
        let k = channels.len();
        Ok(PathSimulator {
            channels,
            backlog: alloc::vec![0; k],
            forwarded: alloc::vec![0; k],
            slot: 0,
            success: alloc::vec![false; k],
            fired: alloc::vec![false; k],
        })
    }

    /// Plays one slot. Each hop draws its success bit; a hop whose
    /// transmitter held at least one unit at the start of the slot (the
    /// source always does) moves one unit downstream on success.
    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R, trace: Option<&mut Vec<TraceRow>>) {
        self.slot += 1;
        let k = self.channels.len();
        for j in 0..k {
            self.success[j] = self.channels[j].draw(rng);
            self.fired[j] = self.success[j] && (j == 0 || self.backlog[j] > 0);
        }
        for j in 0..k {
            if self.fired[j] {
                if j > 0 {
                    self.backlog[j] -= 1;
                }
                if j + 1 < k {
                    self.backlog[j + 1] += 1;
                }
                self.forwarded[j] += 1;
            }
        }
        if let Some(rows) = trace {
            rows.extend((0..k).map(|j| TraceRow {
                slot: self.slot,
                hop: j as u32 + 1,
                success: self.success[j],
                backlog: (j > 0).then(|| self.backlog[j]),
            }));
        }
    }

    /// Cumulative departures at the destination, `D(slot)`.
    pub fn departures(&self) -> u64 {
        self.forwarded[self.forwarded.len() - 1]
    }

    pub fn forwarded(&self) -> &[u64] {
        &self.forwarded
    }

    pub fn backlog(&self) -> &[u64] {
        &self.backlog
    }

    pub fn slot(&self) -> u64 {
        self.slot
    }
}

/// Runs `t` slots and returns `D(1), ..., D(t)`.
pub fn simulate_path<R: Rng + ?Sized>(
    geometry: &GeometryRealization,
    mac: MacMode,
    t: u64,
    rng: &mut R,
) -> Result<Vec<u64>> {
    let mut sim = PathSimulator::new(geometry, mac)?;
    Ok((0..t)
        .map(|_| {
            sim.step(rng, None);
            sim.departures()
        })
        .collect())
}
