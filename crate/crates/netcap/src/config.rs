//! JSON run configuration.

use std::path::Path;

use serde::{Deserialize, Deserializer, Serialize};

use netcap_core::bounds::ThetaSearch;
use netcap_core::dist::MeanSpec;
use netcap_core::{
    BoundQuery, CatalogFamily, CatalogParams, DiscretePmf, MacMode, NetworkConfig, PmfKind,
    SimConfig,
};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub network: NetworkSpec,
    pub query: QuerySpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sim: Option<SimSpec>,
    #[serde(default)]
    pub output: OutputSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkSpec {
    pub mac: MacSpec,
    pub density_law: PmfSpec,
    pub hop_law: PmfSpec,
    #[serde(default = "one")]
    pub gamma: u32,
}

fn one() -> u32 {
    1
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case", deny_unknown_fields)]
pub enum MacSpec {
    FixedP { p: f64 },
    NeighborAware,
}

/// A pmf given either by its masses or by a catalog family.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum PmfSpec {
    Literal(PmfLiteral),
    Family(FamilySpec),
}

// Dispatch on the presence of "family" so that field errors are reported
// against the right shape instead of "no variant matched".
impl<'de> Deserialize<'de> for PmfSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let value = serde_json::Value::deserialize(d)?;
        let is_family = value.get("family").is_some();
        if is_family {
            FamilySpec::deserialize(value).map(PmfSpec::Family).map_err(D::Error::custom)
        } else {
            PmfLiteral::deserialize(value).map(PmfSpec::Literal).map_err(D::Error::custom)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PmfLiteral {
    pub support_min: u32,
    pub masses: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<KindSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KindSpec {
    Density,
    HopCount,
}

impl From<KindSpec> for PmfKind {
    fn from(k: KindSpec) -> Self {
        match k {
            KindSpec::Density => PmfKind::Density,
            KindSpec::HopCount => PmfKind::HopCount,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub family: FamilyName,
    /// Largest value of the support.
    pub n: u32,
    #[serde(default, skip_serializing_if = "FamilyParams::is_empty")]
    pub params: FamilyParams,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct FamilyName(pub CatalogFamily);

impl TryFrom<String> for FamilyName {
    type Error = String;

    fn try_from(s: String) -> Result<Self, String> {
        CatalogFamily::from_name(&s).map(FamilyName).ok_or_else(|| {
            let known: Vec<_> = CatalogFamily::ALL.iter().map(|f| f.name()).collect();
            format!("unknown family `{s}` (expected one of {})", known.join(", "))
        })
    }
}

impl From<FamilyName> for String {
    fn from(f: FamilyName) -> String {
        f.0.name().to_string()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyParams {
    /// Binomial success probability.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    /// Geometric ratio.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    /// Absolute mean of the gain-maximizing law.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mean: Option<f64>,
    /// Mean of the gain-maximizing law as a fraction of `n`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mean_fraction: Option<f64>,
}

impl FamilyParams {
    fn is_empty(&self) -> bool {
        *self == FamilyParams::default()
    }

    pub fn to_catalog(self) -> Result<CatalogParams, CliError> {
        let mut p = CatalogParams::default();
        if let Some(r) = self.r {
            p.binomial_r = r;
        }
        if let Some(a) = self.a {
            p.geometric_a = a;
        }
        p.mean = match (self.mean, self.mean_fraction) {
            (Some(_), Some(_)) => {
                return Err(CliError::Parse(
                    "params: give either `mean` or `mean_fraction`, not both".into(),
                ))
            }
            (Some(m), None) => MeanSpec::Absolute(m),
            (None, Some(f)) => MeanSpec::FractionOfMax(f),
            (None, None) => p.mean,
        };
        Ok(p)
    }
}

impl PmfSpec {
    /// Builds the law; `kind` is the role the pmf plays in the network.
    pub fn build(&self, kind: PmfKind) -> Result<DiscretePmf, CliError> {
        match self {
            PmfSpec::Literal(lit) => {
                let declared = lit.kind.map(PmfKind::from).unwrap_or(kind);
                Ok(DiscretePmf::new(lit.support_min, &lit.masses, declared)?)
            }
            PmfSpec::Family(f) => Ok(f.family.0.build(f.n, &f.params.to_catalog()?, kind)?),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuerySpec {
    pub t: u64,
    pub epsilon: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta_search: Option<ThetaSearchSpec>,
}

/// Bracket endpoints are values of θ; the search itself runs on `ln θ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThetaSearchSpec {
    #[serde(default = "defaults::theta_min")]
    pub log_bracket_low: f64,
    #[serde(default = "defaults::theta_max")]
    pub log_bracket_high: f64,
    #[serde(default = "defaults::tolerance")]
    pub tolerance: f64,
    #[serde(default = "defaults::multistart")]
    pub multistart_points: usize,
}

mod defaults {
    use netcap_core::bounds::ThetaSearch;

    pub fn theta_min() -> f64 {
        ThetaSearch::default().theta_min
    }
    pub fn theta_max() -> f64 {
        ThetaSearch::default().theta_max
    }
    pub fn tolerance() -> f64 {
        ThetaSearch::default().tolerance
    }
    pub fn multistart() -> usize {
        ThetaSearch::default().multistart_points
    }
}

impl From<ThetaSearchSpec> for ThetaSearch {
    fn from(s: ThetaSearchSpec) -> Self {
        ThetaSearch {
            theta_min: s.log_bracket_low,
            theta_max: s.log_bracket_high,
            tolerance: s.tolerance,
            multistart_points: s.multistart_points,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimSpec {
    pub t: u64,
    pub replications: u64,
    pub seed: u64,
    #[serde(default)]
    pub record_trajectory: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    /// Unset means the subcommand's natural format.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[serde(default = "stdout_path")]
    pub path: String,
    /// Where `simulate` writes the replication-0 trajectory.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trajectory: Option<String>,
}

fn stdout_path() -> String {
    "-".into()
}

impl Default for OutputSpec {
    fn default() -> Self {
        OutputSpec {
            format: None,
            path: stdout_path(),
            trajectory: None,
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            CliError::Parse(format!("config field `{path}`: {}", e.inner()))
        })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("reading {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn network(&self) -> Result<NetworkConfig, CliError> {
        let n = &self.network;
        let mac = match n.mac {
            MacSpec::FixedP { p } => MacMode::FixedP(p),
            MacSpec::NeighborAware => MacMode::NeighborAware,
        };
        let density = n.density_law.build(PmfKind::Density)?;
        let hops = n.hop_law.build(PmfKind::HopCount)?;
        Ok(NetworkConfig::new(mac, density, hops, n.gamma)?)
    }

    pub fn query(&self) -> Result<BoundQuery, CliError> {
        let q = &self.query;
        let search = q.theta_search.map(ThetaSearch::from).unwrap_or_default();
        Ok(BoundQuery::with_search(q.t, q.epsilon, search)?)
    }

    pub fn sim(&self) -> Result<SimConfig, CliError> {
        let s = self
            .sim
            .ok_or_else(|| CliError::Precondition("config has no `sim` section".into()))?;
        let cfg = SimConfig {
            t: s.t,
            replications: s.replications,
            seed: s.seed,
            record_trajectory: s.record_trajectory,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}
