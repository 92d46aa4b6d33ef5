//! Independent oracles for the bound optimizer, the log-binomial term and
//! the gain-maximizing laws.

use netcap_core::bounds::{self, c_k_term, BoundQuery, MacMode, NetworkConfig};
use netcap_core::gains::{self, gain_max_density, gain_max_hops, lp_oracle_density, lp_oracle_hops};
use netcap_core::{DiscretePmf, PmfKind};

/// Naive evaluation of both objectives, straight from the closed forms.
struct Naive {
    q: f64,
    gamma: f64,
    t: f64,
    eps: f64,
    c_k: f64,
}

impl Naive {
    fn new(success: f64, gamma: u32, t: u64, eps: f64, c_k: f64) -> Self {
        Naive {
            q: 1.0 - success,
            gamma: gamma as f64,
            t: t as f64,
            eps,
            c_k,
        }
    }

    fn b(&self, theta: f64) -> f64 {
        1.0 + self.q * (theta.exp() - 1.0)
    }

    fn lower(&self, theta: f64) -> f64 {
        1.0 - self.b(self.gamma * theta).ln() / (self.gamma * theta) + self.eps.ln() / (self.t * theta)
            - self.c_k / (self.t * theta)
    }

    fn upper(&self, theta: f64) -> f64 {
        1.0 + self.b(-self.gamma * theta).ln() / (self.gamma * theta) - self.eps.ln() / (self.t * theta)
    }

    /// 10^4 log-spaced points over the default bracket [1e-8, 50].
    fn grid() -> impl Iterator<Item = f64> {
        let (lo, hi) = (1e-8_f64.ln(), 50_f64.ln());
        (0..10_000).map(move |i| (lo + (hi - lo) * i as f64 / 9_999.0).exp())
    }

    fn scan_lower(&self) -> f64 {
        Self::grid().map(|th| self.lower(th)).fold(f64::NEG_INFINITY, f64::max)
    }

    fn scan_upper(&self) -> f64 {
        Self::grid().map(|th| self.upper(th)).fold(f64::INFINITY, f64::min)
    }
}

/// Direct sum of logs: ln C(t+k-1, k-1) = Σ_{j=1}^{k-1} ln((t+j)/j).
fn c_k_direct(law: &DiscretePmf, t: u64) -> f64 {
    law.atoms()
        .iter()
        .map(|(k, m)| m * (1..*k as u64).map(|j| ((t + j) as f64 / j as f64).ln()).sum::<f64>())
        .sum()
}

fn density(l: u32) -> DiscretePmf {
    DiscretePmf::point_mass(l, PmfKind::Density).unwrap()
}

fn hops(k: u32) -> DiscretePmf {
    DiscretePmf::point_mass(k, PmfKind::HopCount).unwrap()
}

fn configs() -> Vec<(NetworkConfig, BoundQuery)> {
    let uniform_n = DiscretePmf::from_weights(2, &[1.0; 9], PmfKind::Density).unwrap();
    let uniform_k = DiscretePmf::from_weights(1, &[1.0; 5], PmfKind::HopCount).unwrap();
    let bimodal_n = gain_max_density(40, 7.5).unwrap();
    let bimodal_k = gain_max_hops(12, 3.0).unwrap();
    let mut out = Vec::new();
    for (mac, n, k, gamma, t, eps) in [
        (MacMode::FixedP(0.2), density(5), hops(1), 1, 1_000_000, 0.01),
        (MacMode::FixedP(0.2), density(5), hops(3), 1, 10_000_000, 0.01),
        (MacMode::FixedP(0.1), uniform_n.clone(), uniform_k.clone(), 1, 500, 0.05),
        (MacMode::FixedP(0.1), uniform_n, uniform_k, 3, 500, 0.05),
        (MacMode::NeighborAware, density(2), hops(4), 2, 2_000, 0.001),
        (MacMode::NeighborAware, bimodal_n.clone(), bimodal_k.clone(), 4, 5_000, 0.1),
        (MacMode::FixedP(0.05), bimodal_n, bimodal_k, 1, 100_000, 1e-6),
        (MacMode::FixedP(0.5), density(2), hops(2), 2, 50, 0.2),
    ] {
        out.push((
            NetworkConfig::new(mac, n, k, gamma).unwrap(),
            BoundQuery::new(t, eps).unwrap(),
        ));
    }
    out
}

#[test]
fn c_k_matches_direct_log_sum() {
    let laws = [
        hops(1),
        hops(2),
        hops(7),
        DiscretePmf::from_weights(1, &[1.0, 2.0, 3.0, 4.0], PmfKind::HopCount).unwrap(),
        gain_max_hops(30, 4.5).unwrap(),
    ];
    for law in &laws {
        for t in [30_u64, 100, 10_000, 10_000_000] {
            let fast = c_k_term(law, t).unwrap();
            let slow = c_k_direct(law, t);
            assert!((fast - slow).abs() <= 1e-7 * slow.max(1.0), "t={t}: {fast} vs {slow}");
        }
    }
}

#[test]
fn optimizer_matches_fine_grid_scan() {
    for (net, query) in configs() {
        let c_k = c_k_term(net.hop_law(), query.t()).unwrap();
        let naive = Naive::new(
            bounds::asymptotic_capacity(&net),
            net.gamma(),
            query.t(),
            query.epsilon(),
            c_k,
        );
        let (lower, theta_l) = bounds::lower_bound(&net, &query).unwrap();
        let (upper, theta_u) = bounds::upper_bound(&net, &query).unwrap();
        let (scan_l, scan_u) = (naive.scan_lower(), naive.scan_upper());
        assert!((lower - scan_l).abs() <= 1e-6, "lower {lower} vs scan {scan_l}");
        assert!((upper - scan_u).abs() <= 1e-6, "upper {upper} vs scan {scan_u}");
        // the reported maximizers evaluate to the reported values
        assert!((naive.lower(theta_l) - lower).abs() <= 1e-9);
        assert!((naive.upper(theta_u) - upper).abs() <= 1e-9);
    }
}

#[test]
fn reference_single_hop_converges_to_asymptote() {
    let net = NetworkConfig::new(MacMode::FixedP(0.2), density(5), hops(1), 1).unwrap();
    let query = BoundQuery::new(1_000_000, 0.01).unwrap();
    let naive = Naive::new(0.2 * 0.8_f64.powi(4), 1, 1_000_000, 0.01, 0.0);
    let (scan_l, scan_u) = (naive.scan_lower(), naive.scan_upper());
    assert!((scan_l - 0.08192).abs() < 0.01);
    assert!((scan_u - 0.08192).abs() < 0.01);
    let b = bounds::capacity_bounds(&net, &query).unwrap();
    assert!((b.lower - scan_l).abs() < 1e-6);
    assert!((b.upper - scan_u).abs() < 1e-6);
}

#[test]
fn aloha_optimum_is_one_over_mean_for_point_masses() {
    for n in 2..=30 {
        let (p, lambda) = bounds::optimize_fixed_p(&density(n)).unwrap();
        let nf = n as f64;
        assert!((p - 1.0 / nf).abs() < 1e-8);
        assert!((lambda - (1.0 / nf) * (1.0 - 1.0 / nf).powi(n as i32 - 1)).abs() < 1e-14);
    }
}

#[test]
fn fixed_p_capacity_at_inverse_mean_beats_jensen_floor() {
    let laws = [
        gain_max_density(20, 6.0).unwrap(),
        DiscretePmf::from_weights(2, &[3.0, 1.0, 4.0, 1.0, 5.0], PmfKind::Density).unwrap(),
        DiscretePmf::from_weights(2, &[1.0; 30], PmfKind::Density).unwrap(),
    ];
    for law in &laws {
        let m = law.mean();
        let p = 1.0 / m;
        let lambda = MacMode::FixedP(p).mean_success(law);
        assert!(lambda >= p * (1.0 - p).powf(m - 1.0) - 1e-15);
        let (_, best) = bounds::optimize_fixed_p(law).unwrap();
        assert!(best >= lambda - 1e-12);
    }
}

#[test]
fn lp_enumeration_equals_closed_form_laws() {
    for n in 3..=30_u32 {
        let mut mean = 2.0;
        while mean <= n as f64 {
            let closed = gain_max_density(n, mean).unwrap().mean_reciprocal().unwrap();
            let lp = lp_oracle_density(n, mean).unwrap();
            assert!((closed - lp.optimum).abs() <= 1e-12, "n={n} mean={mean}");
            mean += 0.25;
        }
    }
    for k in 2..=30_u32 {
        let mut mean = 1.0;
        while mean <= k as f64 {
            let closed = gain_max_hops(k, mean).unwrap().mean_log().unwrap();
            let lp = lp_oracle_hops(k, mean).unwrap();
            assert!((closed - lp.optimum).abs() <= 1e-12, "k={k} mean={mean}");
            let gain = gains::gain_k(&lp.pmf).unwrap();
            assert!((gain - (mean.ln() - lp.optimum)).abs() <= 1e-12);
            mean += 0.25;
        }
    }
}

/// Loose diagnostic only: for a 1/k^2 hop-count law the gain grows like
/// ln ln k. Checked as a ratio between the two largest grid points.
#[test]
fn heavy_tail_hop_gain_grows_like_log_log() {
    let params = netcap_core::CatalogParams::default();
    let rows = gains::hop_gain_report(&[1 << 13, 1 << 14], &[netcap_core::CatalogFamily::HeavyTailSparse], &params)
        .unwrap();
    let norm = |r: &netcap_core::HopGainReport| r.gain_k / (r.k as f64).ln().ln();
    let ratio = norm(&rows[1]) / norm(&rows[0]);
    assert!((0.8..=1.25).contains(&ratio), "{ratio}");
}
