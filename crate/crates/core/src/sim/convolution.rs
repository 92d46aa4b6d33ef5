use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Departures of a single hop computed two ways, for `u = 0..=t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvolutionCheck {
    /// `D(u) = min(A(u), D(u-1) + s(u))`, `D(0) = 0`.
    pub queue: Vec<u64>,
    /// `(A * S)(u) = min_{0<=s<=u} A(s) + S(s, u)`, with the service
    /// `S(s, u) = (u - s) - V(s, u)` counting successful slots in `(s, u]`.
    pub convolution: Vec<u64>,
    pub equal: bool,
}

/// Runs the single-hop queue on cumulative arrivals `A(0..=t)` (with
/// `A(0) = 0`) and per-slot success bits `s(1..=t)`, and compares it with
/// the min-plus convolution of the arrivals with the service process.
pub fn single_hop_convolution_check(arrivals: &[u64], success: &[bool]) -> Result<ConvolutionCheck> {
    if arrivals.len() != success.len() + 1 {
        return Err(Error::LengthMismatch {
            what: "arrivals must have one more entry than success bits",
        });
    }
    if arrivals[0] != 0 {
        return Err(Error::param("arrivals", "A(0) must be 0"));
    }
    if let Some(slot) = arrivals.windows(2).position(|w| w[1] < w[0]) {
        return Err(Error::DecreasingArrivals { slot: slot + 1 });
    }
    let t = success.len();

    let mut queue = Vec::with_capacity(t + 1);
    queue.push(0_u64);
    for u in 1..=t {
        let next = arrivals[u].min(queue[u - 1] + success[u - 1] as u64);
        queue.push(next);
    }

    // served[u] = number of successful slots in (0, u]
    let mut served = Vec::with_capacity(t + 1);
    served.push(0_u64);
    for u in 1..=t {
        served.push(served[u - 1] + success[u - 1] as u64);
    }
    let convolution: Vec<u64> = (0..=t)
        .map(|u| {
            (0..=u)
                .map(|s| arrivals[s] + (served[u] - served[s]))
                .min()
                .unwrap_or(0)
        })
        .collect();

    let equal = queue == convolution;
    Ok(ConvolutionCheck {
        queue,
        convolution,
        equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_worked_trace() {
        let c = single_hop_convolution_check(&[0, 3, 3, 3], &[true, false, true]).unwrap();
        assert_eq!(c.queue, [0, 1, 1, 2]);
        assert_eq!(c.convolution, [0, 1, 1, 2]);
        assert!(c.equal);
    }

    #[test]
    fn unit_rate_server_follows_arrivals_up_to_slot_count() {
        let a = [0, 0, 2, 5, 5, 9, 9];
        let c = single_hop_convolution_check(&a, &[true; 6]).unwrap();
        // D(u) = min over s of A(s) + (u - s)
        assert_eq!(c.queue, [0, 0, 1, 2, 3, 4, 5]);
        assert!(c.equal);
        let c = single_hop_convolution_check(&[0, 10, 10, 10], &[true; 3]).unwrap();
        assert_eq!(c.queue, [0, 1, 2, 3]);
    }

    #[test]
    fn no_service_means_no_departures() {
        let c = single_hop_convolution_check(&[0, 1, 4, 4, 7], &[false; 4]).unwrap();
        assert!(c.queue.iter().all(|d| *d == 0));
        assert!(c.equal);
    }

    #[test]
    fn rejects_malformed_input() {
        assert_eq!(
            single_hop_convolution_check(&[0, 3, 2], &[true, true]),
            Err(Error::DecreasingArrivals { slot: 2 })
        );
        assert!(single_hop_convolution_check(&[0, 3], &[true, true]).is_err());
        assert!(single_hop_convolution_check(&[1, 3], &[true]).is_err());
    }
}
