//! Randomness gains of density and hop-count laws.
//!
//! With neighbor-aware access the asymptotic capacity scales as `E[1/N]`,
//! against `1/E[N]` for a fixed access probability, so the multiplicative
//! gain of a density law is `E[N] E[1/N] >= 1`. For hop counts the lower
//! bound moves with `-E[log K]` against `-log E[K]`, giving the additive
//! gain `log E[K] - E[log K] >= 0`. Both are Jensen gaps, maximized for a
//! fixed maximum and mean by the two-point law on the support extremes.

use alloc::vec::Vec;

use crate::dist::{CatalogFamily, CatalogParams, DiscretePmf, PmfKind};
use crate::error::{Error, Result};
use crate::math;

/// `E[N] E[1/N]`.
pub fn gain_n(pmf: &DiscretePmf) -> Result<f64> {
    Ok(pmf.mean() * pmf.mean_reciprocal()?)
}

/// `log E[K] - E[log K]`.
pub fn gain_k(pmf: &DiscretePmf) -> Result<f64> {
    let mean_log = pmf.mean_log()?;
    Ok(math::ln(pmf.mean()) - mean_log)
}

fn check_mean(mean: f64, min: f64, max: f64) -> Result<()> {
    if mean.is_finite() && (min..=max).contains(&mean) {
        Ok(())
    } else {
        Err(Error::InfeasibleMean { mean, min, max })
    }
}

/// Gain-maximizing density law with maximum `n` and the given mean:
/// `π_2 = (n - m)/(n - 2)`, `π_n = (m - 2)/(n - 2)`.
pub fn gain_max_density(n: u32, mean: f64) -> Result<DiscretePmf> {
    if n < 3 {
        return Err(Error::param("n", "gain-maximizing density law needs n >= 3"));
    }
    let nf = n as f64;
    check_mean(mean, 2.0, nf)?;
    DiscretePmf::two_point(2, n, (nf - mean) / (nf - 2.0), PmfKind::Density)
}

/// Gain-maximizing hop-count law with maximum `k` and the given mean:
/// `π̃_1 = (k - m)/(k - 1)`, `π̃_k = (m - 1)/(k - 1)`.
pub fn gain_max_hops(k: u32, mean: f64) -> Result<DiscretePmf> {
    if k < 2 {
        return Err(Error::param("k", "gain-maximizing hop-count law needs k >= 2"));
    }
    let kf = k as f64;
    check_mean(mean, 1.0, kf)?;
    DiscretePmf::two_point(1, k, (kf - mean) / (kf - 1.0), PmfKind::HopCount)
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub optimum: f64,
    pub pmf: DiscretePmf,
}

/// Optimizes `E[f(X)]` over laws on `lo..=hi` with a fixed mean. The
/// feasible set has two equality constraints, so every vertex has at most
/// two atoms; enumerating all of them solves the LP exactly.
fn vertex_enumeration(
    lo: u32,
    hi: u32,
    mean: f64,
    kind: PmfKind,
    f: impl Fn(u32) -> f64,
    maximize: bool,
) -> Result<LpSolution> {
    let better = |a: f64, b: f64| if maximize { a > b } else { a < b };
    let mut best: Option<(f64, u32, u32, f64)> = None;
    for i in lo..=hi {
        let fi = f(i);
        let fi64 = i as f64;
        if fi64 > mean {
            break;
        }
        if fi64 == mean && best.is_none_or(|b| better(fi, b.0)) {
            best = Some((fi, i, i, 1.0));
        }
        for j in (i + 1)..=hi {
            let fj64 = j as f64;
            if fj64 < mean {
                continue;
            }
            let p_i = (fj64 - mean) / (fj64 - fi64);
            let value = p_i * fi + (1.0 - p_i) * f(j);
            if best.is_none_or(|b| better(value, b.0)) {
                best = Some((value, i, j, p_i));
            }
        }
    }
    let (optimum, i, j, p_i) = best.ok_or(Error::InfeasibleMean {
        mean,
        min: lo as f64,
        max: hi as f64,
    })?;
    Ok(LpSolution {
        optimum,
        pmf: DiscretePmf::two_point(i, j, p_i, kind)?,
    })
}

/// Brute-force maximum of `E[1/N]` over density laws on `{2..n}` with the
/// given mean.
pub fn lp_oracle_density(n: u32, mean: f64) -> Result<LpSolution> {
    if n < 3 {
        return Err(Error::param("n", "needs n >= 3"));
    }
    check_mean(mean, 2.0, n as f64)?;
    vertex_enumeration(2, n, mean, PmfKind::Density, |i| 1.0 / i as f64, true)
}

/// Brute-force minimum of `E[log K]` over hop-count laws on `{1..k}` with
/// the given mean.
pub fn lp_oracle_hops(k: u32, mean: f64) -> Result<LpSolution> {
    if k < 2 {
        return Err(Error::param("k", "needs k >= 2"));
    }
    check_mean(mean, 1.0, k as f64)?;
    vertex_enumeration(1, k, mean, PmfKind::HopCount, |i| math::ln(i as f64), false)
}

/// One row of the density-law gain table.
#[derive(Debug, Clone, PartialEq)]
pub struct GainReport {
    pub family: CatalogFamily,
    pub n: u32,
    pub mean_n: f64,
    pub mean_inv_n: f64,
    pub gain_n: f64,
    /// `gain(2n) / gain(n)`.
    pub doubling_ratio: f64,
}

/// One row of the hop-count gain table.
#[derive(Debug, Clone, PartialEq)]
pub struct HopGainReport {
    pub family: CatalogFamily,
    pub k: u32,
    pub mean_k: f64,
    pub mean_log_k: f64,
    pub gain_k: f64,
    /// `gain(2k) / gain(k)`.
    pub doubling_ratio: f64,
}

/// Gain table for every `(family, n)` pair, grouped by family.
pub fn table1_report(
    n_grid: &[u32],
    families: &[CatalogFamily],
    params: &CatalogParams,
) -> Result<Vec<GainReport>> {
    let mut rows = Vec::with_capacity(n_grid.len() * families.len());
    for &family in families {
        for &n in n_grid {
            let pmf = family.density(n, params)?;
            let gain = gain_n(&pmf)?;
            let doubled = gain_n(&family.density(n.saturating_mul(2), params)?)?;
            rows.push(GainReport {
                family,
                n,
                mean_n: pmf.mean(),
                mean_inv_n: pmf.mean_reciprocal()?,
                gain_n: gain,
                doubling_ratio: doubled / gain,
            });
        }
    }
    Ok(rows)
}

/// Hop-count analogue of [`table1_report`].
pub fn hop_gain_report(
    k_grid: &[u32],
    families: &[CatalogFamily],
    params: &CatalogParams,
) -> Result<Vec<HopGainReport>> {
    let mut rows = Vec::with_capacity(k_grid.len() * families.len());
    for &family in families {
        for &k in k_grid {
            let pmf = family.hop_count(k, params)?;
            let gain = gain_k(&pmf)?;
            let doubled = gain_k(&family.hop_count(k.saturating_mul(2), params)?)?;
            rows.push(HopGainReport {
                family,
                k,
                mean_k: pmf.mean(),
                mean_log_k: pmf.mean_log()?,
                gain_k: gain,
                doubling_ratio: doubled / gain,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12
    }

    #[test]
    fn gain_n_examples() {
        let point = DiscretePmf::point_mass(6, PmfKind::Density).unwrap();
        assert!(close(gain_n(&point).unwrap(), 1.0));
        let bimodal = DiscretePmf::two_point(2, 10, 0.75, PmfKind::Density).unwrap();
        assert!(close(gain_n(&bimodal).unwrap(), 1.6));
        let uniform = DiscretePmf::from_weights(2, &[1.0; 3], PmfKind::Density).unwrap();
        assert!(close(gain_n(&uniform).unwrap(), 13.0 / 12.0));
        assert!(gain_n(&DiscretePmf::point_mass(2, PmfKind::HopCount).unwrap()).is_err());
    }

    #[test]
    fn gain_k_examples() {
        let point = DiscretePmf::point_mass(6, PmfKind::HopCount).unwrap();
        assert!(close(gain_k(&point).unwrap(), 0.0));
        let a = DiscretePmf::two_point(1, 9, 0.75, PmfKind::HopCount).unwrap();
        assert!(close(gain_k(&a).unwrap(), math::ln(3.0) - 0.25 * math::ln(9.0)));
        assert!((gain_k(&a).unwrap() - 0.549_306).abs() < 1e-6);
        let b = DiscretePmf::two_point(1, 3, 0.5, PmfKind::HopCount).unwrap();
        assert!((gain_k(&b).unwrap() - 0.143_841).abs() < 1e-6);
        assert!(gain_k(&DiscretePmf::point_mass(2, PmfKind::Density).unwrap()).is_err());
    }

    #[test]
    fn gain_max_density_examples() {
        let pmf = gain_max_density(10, 4.0).unwrap();
        assert_eq!(pmf.atoms(), &[(2, 0.75), (10, 0.25)]);
        assert_eq!(gain_max_density(10, 2.0).unwrap().atoms(), &[(2, 1.0)]);
        assert_eq!(gain_max_density(10, 10.0).unwrap().atoms(), &[(10, 1.0)]);
        assert!(matches!(gain_max_density(10, 1.9), Err(Error::InfeasibleMean { .. })));
        assert!(gain_max_density(2, 2.0).is_err());
    }

    #[test]
    fn gain_max_hops_examples() {
        let pmf = gain_max_hops(9, 3.0).unwrap();
        assert_eq!(pmf.atoms(), &[(1, 0.75), (9, 0.25)]);
        assert_eq!(gain_max_hops(9, 1.0).unwrap().atoms(), &[(1, 1.0)]);
        assert_eq!(gain_max_hops(9, 9.0).unwrap().atoms(), &[(9, 1.0)]);
        assert!(gain_max_hops(9, 9.5).is_err());
    }

    #[test]
    fn lp_oracle_density_examples() {
        let sol = lp_oracle_density(10, 4.0).unwrap();
        assert!(close(sol.optimum, 0.4));
        assert_eq!(sol.pmf.atoms(), &[(2, 0.75), (10, 0.25)]);
        let sol = lp_oracle_density(10, 2.0).unwrap();
        assert!(close(sol.optimum, 0.5));
        assert!(sol.pmf.is_point_mass());
        let sol = lp_oracle_density(5, 3.5).unwrap();
        assert!(close(sol.optimum, 0.35));
        assert!(lp_oracle_density(5, 5.5).is_err());
    }

    #[test]
    fn lp_oracle_hops_examples() {
        let sol = lp_oracle_hops(9, 3.0).unwrap();
        assert!(close(sol.optimum, 0.25 * math::ln(9.0)));
        assert_eq!(sol.pmf.atoms(), &[(1, 0.75), (9, 0.25)]);
        assert_eq!(lp_oracle_hops(9, 1.0).unwrap().optimum, 0.0);
        let sol = lp_oracle_hops(4, 2.0).unwrap();
        assert!((sol.optimum - 0.462_098).abs() < 1e-6);
        assert_eq!(sol.pmf.support_max(), 4);
        assert!(close(gain_k(&sol.pmf).unwrap(), math::ln(2.0) - sol.optimum));
    }

    #[test]
    fn table_rows_cover_grid() {
        let rows = table1_report(&[8, 16], &CatalogFamily::ALL, &CatalogParams::default()).unwrap();
        assert_eq!(rows.len(), 22);
        assert!(rows.iter().all(|r| r.gain_n >= 1.0 - 1e-12));
        let hops = hop_gain_report(&[8, 16], &CatalogFamily::ALL, &CatalogParams::default()).unwrap();
        assert!(hops.iter().all(|r| r.gain_k >= -1e-12));
    }

    #[test]
    fn gain_max_dominates_catalog_at_equal_mean() {
        let params = CatalogParams::default();
        for n in [8_u32, 20, 64] {
            for fam in CatalogFamily::ALL {
                let pmf = fam.density(n, &params).unwrap();
                let best = gain_max_density(n, pmf.mean()).unwrap();
                assert!(
                    best.mean_reciprocal().unwrap() >= pmf.mean_reciprocal().unwrap() - 1e-12,
                    "{fam} n={n}"
                );
            }
        }
    }
}
