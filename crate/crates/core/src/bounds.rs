//! Capacity bounds for a saturated flow over a random multi-hop Aloha path.
//!
//! Every hop of interference-set size `l` succeeds in a slot with
//! probability `1 - q_l`; `q` is the mean of `q_l` under the density law and
//! `b(θ) = 1 + q (e^θ - 1)` is the per-slot moment generating function of
//! the failure indicator. For a horizon `t`, violation probability `ε` and
//! dependency parameter `γ`:
//!
//! ```text
//! lower(t) = sup_θ>0 { 1 - ln b(γθ) / (γθ) + (ln ε - c_K) / (tθ) }
//! upper(t) = inf_θ>0 { 1 + ln b(-γθ) / (γθ) - ln ε / (tθ) }
//! c_K      = E[ ln C(t + K - 1, K - 1) ]
//! ```
//!
//! Both bounds converge to the asymptotic capacity `1 - q` as `t` grows.
//! The suprema/infima are taken numerically over a bracket of `θ`.

use alloc::format;

use crate::dist::{DiscretePmf, PmfKind};
use crate::error::{Error, Result};
use crate::math;
use crate::optimize;

/// Medium-access rule of every node on the path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MacMode {
    /// Every node transmits with the same probability `p` in each slot.
    FixedP(f64),
    /// On each sample path, nodes of a hop with density `l` transmit with
    /// probability `1/l`.
    NeighborAware,
}

impl MacMode {
    /// Transmission probability used by the nodes of a hop of density `l`.
    pub fn transmit_prob(self, density: u32) -> f64 {
        match self {
            MacMode::FixedP(p) => p,
            MacMode::NeighborAware => 1.0 / density as f64,
        }
    }

    /// `p (1 - p)^(l - 1)`: the hop's transmitter fires and none of the other
    /// `l - 1` members of the interference set does.
    pub fn success_prob(self, density: u32) -> f64 {
        let p = self.transmit_prob(density);
        if p >= 1.0 {
            return if density <= 1 { 1.0 } else { 0.0 };
        }
        p * math::exp((density.saturating_sub(1)) as f64 * math::ln_1p(-p))
    }

    /// Mean per-slot success probability, `1 - q`.
    pub fn mean_success(self, density_law: &DiscretePmf) -> f64 {
        density_law.expect(|l| self.success_prob(l))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NetworkConfig {
    mac: MacMode,
    density_law: DiscretePmf,
    hop_law: DiscretePmf,
    gamma: u32,
}

impl NetworkConfig {
    pub fn new(mac: MacMode, density_law: DiscretePmf, hop_law: DiscretePmf, gamma: u32) -> Result<Self> {
        if let MacMode::FixedP(p) = mac {
            if !(p > 0.0 && p < 1.0) {
                return Err(Error::param("p", format!("{p} outside (0, 1)")));
            }
        }
        density_law.require(PmfKind::Density)?;
        hop_law.require(PmfKind::HopCount)?;
        let k_max = hop_law.support_max();
        if gamma < 1 || gamma > k_max {
            return Err(Error::param(
                "gamma",
                format!("{gamma} outside [1, k_max = {k_max}]"),
            ));
        }
        Ok(NetworkConfig {
            mac,
            density_law,
            hop_law,
            gamma,
        })
    }

    pub fn mac(&self) -> MacMode {
        self.mac
    }

    pub fn density_law(&self) -> &DiscretePmf {
        &self.density_law
    }

    pub fn hop_law(&self) -> &DiscretePmf {
        &self.hop_law
    }

    pub fn gamma(&self) -> u32 {
        self.gamma
    }

    pub fn k_max(&self) -> u32 {
        self.hop_law.support_max()
    }

    pub fn with_gamma(&self, gamma: u32) -> Result<Self> {
        Self::new(self.mac, self.density_law.clone(), self.hop_law.clone(), gamma)
    }

    pub fn with_hop_law(&self, hop_law: DiscretePmf, gamma: u32) -> Result<Self> {
        Self::new(self.mac, self.density_law.clone(), hop_law, gamma)
    }

    pub fn with_density_law(&self, density_law: DiscretePmf) -> Result<Self> {
        Self::new(self.mac, density_law, self.hop_law.clone(), self.gamma)
    }
}

/// Bracket and accuracy of the search over the Chernoff parameter θ.
/// The search runs on `ln θ` between `theta_min` and `theta_max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaSearch {
    pub theta_min: f64,
    pub theta_max: f64,
    /// Width of the final bracket in `ln θ`.
    pub tolerance: f64,
    pub multistart_points: usize,
}

impl Default for ThetaSearch {
    fn default() -> Self {
        ThetaSearch {
            theta_min: 1e-8,
            theta_max: 50.0,
            tolerance: 1e-10,
            multistart_points: 8,
        }
    }
}

impl ThetaSearch {
    pub fn validate(&self) -> Result<()> {
        let ok = self.theta_min > 0.0
            && self.theta_max.is_finite()
            && self.theta_min < self.theta_max
            && self.tolerance > 0.0
            && self.multistart_points >= 2;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidBracket {
                low: self.theta_min,
                high: self.theta_max,
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundQuery {
    t: u64,
    epsilon: f64,
    search: ThetaSearch,
}

impl BoundQuery {
    pub fn new(t: u64, epsilon: f64) -> Result<Self> {
        Self::with_search(t, epsilon, ThetaSearch::default())
    }

    pub fn with_search(t: u64, epsilon: f64, search: ThetaSearch) -> Result<Self> {
        if t == 0 {
            return Err(Error::param("t", "must be positive"));
        }
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::InvalidEpsilon(epsilon));
        }
        search.validate()?;
        Ok(BoundQuery { t, epsilon, search })
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn search(&self) -> &ThetaSearch {
        &self.search
    }

    pub fn with_t(&self, t: u64) -> Result<Self> {
        Self::with_search(t, self.epsilon, self.search)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacityBounds {
    /// Supremum of the lower-bound objective over the θ bracket; negative
    /// when no positive rate can be certified at this `(t, ε)`.
    pub lower_raw: f64,
    /// `lower_raw` clamped to `[0, 1]`.
    pub lower: f64,
    pub upper: f64,
    pub asymptotic: f64,
    pub theta_star_lower: f64,
    pub theta_star_upper: f64,
}

/// `q_l = 1 - p (1 - p)^(l - 1)`, with `p = 1/l` in neighbor-aware mode.
pub fn collision_prob_given_density(config: &NetworkConfig, l: u32) -> Result<f64> {
    if l < 2 {
        return Err(Error::param("l", format!("density {l} below 2")));
    }
    Ok(1.0 - config.mac.success_prob(l))
}

/// Mean collision probability `q` under the density law.
pub fn q_bar(config: &NetworkConfig) -> f64 {
    1.0 - config.mac.mean_success(&config.density_law)
}

/// The per-slot failure MGF in log form, parameterized by the mean
/// success probability so that `q` close to 1 keeps full precision.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LogMgf {
    q: f64,
    s: f64,
}

impl LogMgf {
    pub(crate) fn new(config: &NetworkConfig) -> Self {
        let s = config.mac.mean_success(&config.density_law);
        LogMgf { q: 1.0 - s, s }
    }

    /// `ln(1 + q (e^x - 1))` for any real `x`.
    pub(crate) fn eval(self, x: f64) -> f64 {
        if x.abs() < 0.5 {
            math::ln_1p(self.q * math::exp_m1(x))
        } else if x > 0.0 {
            x + math::ln_add_exp(math::ln(self.q), math::ln(self.s) - x)
        } else {
            math::ln_add_exp(math::ln(self.s), math::ln(self.q) + x)
        }
    }
}

/// `ln b(θ)`, finite for every real θ.
pub fn log_mgf_base(config: &NetworkConfig, theta: f64) -> f64 {
    LogMgf::new(config).eval(theta)
}

/// `b(θ) = 1 + q (e^θ - 1)`. Overflows to infinity for θ beyond ~709;
/// use [`log_mgf_base`] there.
pub fn mgf_base(config: &NetworkConfig, theta: f64) -> f64 {
    math::exp(log_mgf_base(config, theta))
}

/// `c_K = Σ_k π̃_k ln C(t + k - 1, k - 1)`, through log-gamma.
pub fn c_k_term(hop_law: &DiscretePmf, t: u64) -> Result<f64> {
    hop_law.require(PmfKind::HopCount)?;
    let k_max = hop_law.support_max();
    if t < k_max as u64 {
        return Err(Error::HorizonTooShort { t, k_max });
    }
    Ok(hop_law.expect(|k| {
        let k = k as u64;
        math::ln_binomial(t + k - 1, k - 1)
    }))
}

/// Lower-bound objective at a single θ > 0.
pub fn lower_objective(config: &NetworkConfig, query: &BoundQuery, theta: f64) -> Result<f64> {
    let c_k = c_k_term(&config.hop_law, query.t)?;
    Ok(lower_at(LogMgf::new(config), config.gamma, query, c_k, theta))
}

/// Upper-bound objective at a single θ > 0.
pub fn upper_objective(config: &NetworkConfig, query: &BoundQuery, theta: f64) -> f64 {
    upper_at(LogMgf::new(config), config.gamma, query, theta)
}

fn lower_at(mgf: LogMgf, gamma: u32, query: &BoundQuery, c_k: f64, theta: f64) -> f64 {
    let g = gamma as f64 * theta;
    1.0 - mgf.eval(g) / g + (math::ln(query.epsilon) - c_k) / (query.t as f64 * theta)
}

fn upper_at(mgf: LogMgf, gamma: u32, query: &BoundQuery, theta: f64) -> f64 {
    let g = gamma as f64 * theta;
    1.0 + mgf.eval(-g) / g - math::ln(query.epsilon) / (query.t as f64 * theta)
}

fn search_log_theta(search: &ThetaSearch, f: impl Fn(f64) -> f64) -> optimize::Maximum {
    let m = optimize::maximize(
        |x| f(math::exp(x)),
        math::ln(search.theta_min),
        math::ln(search.theta_max),
        search.multistart_points,
        search.tolerance,
    );
    optimize::Maximum {
        arg: math::exp(m.arg),
        value: m.value,
    }
}

/// Unclamped lower bound and its maximizing θ. Requires `t >= k_max`.
pub fn lower_bound(config: &NetworkConfig, query: &BoundQuery) -> Result<(f64, f64)> {
    query.search.validate()?;
    let c_k = c_k_term(&config.hop_law, query.t)?;
    let mgf = LogMgf::new(config);
    let best = search_log_theta(&query.search, |theta| {
        lower_at(mgf, config.gamma, query, c_k, theta)
    });
    Ok((best.value, best.arg))
}

/// Upper bound and its minimizing θ.
pub fn upper_bound(config: &NetworkConfig, query: &BoundQuery) -> Result<(f64, f64)> {
    query.search.validate()?;
    let mgf = LogMgf::new(config);
    let best = search_log_theta(&query.search, |theta| {
        -upper_at(mgf, config.gamma, query, theta)
    });
    Ok((-best.value, best.arg))
}

/// `1 - q`; in neighbor-aware mode this is `Σ π_l (1/l)(1 - 1/l)^(l-1)`.
pub fn asymptotic_capacity(config: &NetworkConfig) -> f64 {
    config.mac.mean_success(&config.density_law)
}

pub fn capacity_bounds(config: &NetworkConfig, query: &BoundQuery) -> Result<CapacityBounds> {
    let (lower_raw, theta_star_lower) = lower_bound(config, query)?;
    let (upper, theta_star_upper) = upper_bound(config, query)?;
    Ok(CapacityBounds {
        lower_raw,
        lower: lower_raw.clamp(0.0, 1.0),
        upper,
        asymptotic: asymptotic_capacity(config),
        theta_star_lower,
        theta_star_upper,
    })
}

/// Best common transmission probability for a density law: maximizes
/// `Σ π_l p (1 - p)^(l - 1)` over `p ∈ (0, 1)`. Returns `(p*, λ*)`.
pub fn optimize_fixed_p(density_law: &DiscretePmf) -> Result<(f64, f64)> {
    density_law.require(PmfKind::Density)?;
    let best = optimize::maximize(
        |p| MacMode::FixedP(p).mean_success(density_law),
        0.0,
        1.0,
        16,
        1e-12,
    );
    Ok((best.arg, best.value))
}
