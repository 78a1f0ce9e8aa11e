//! Verification suites that reproduce the computational claims end to end.
//!
//! Each claim produces a [`VerificationReport`]: one [`Instance`] per graph
//! or property checked, aggregated into a pass/fail/unresolved status.
//! Unresolved instances never count as passes.

mod claims;
mod suites;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::ConstructionError;
use crate::enumeration::EnumerationError;
use crate::par::Exec;
use crate::rigidity::{Basis, Flag, MatroidVerdict, RankConfig, TriState, DEFAULT_SEED};

pub use claims::{
    classify_flexible_circuits, expected_flexible_circuits, verify_cone_ladder, verify_edge_bound,
    verify_families, verify_independence, verify_regular_independence, verify_two_sum_closure,
    Classification, RegularCase,
};
pub use suites::verify_structure_lemmas;

/// Version of the report layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Unresolved,
}

impl Status {
    /// Fail dominates unresolved, which dominates pass.
    pub fn combine(self, other: Status) -> Status {
        use Status::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Unresolved, _) | (_, Unresolved) => Unresolved,
            _ => Pass,
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Unresolved => 2,
        }
    }

    fn of(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    /// Whether `flag` settles to `expected`.
    fn expect(flag: Flag, expected: bool) -> Status {
        match flag.value {
            TriState::Unresolved => Status::Unresolved,
            v => Status::of(v == TriState::from(expected)),
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Unresolved => "unresolved",
        })
    }
}

/// One checked graph or property.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub name: String,
    pub status: Status,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<MatroidVerdict>,
}

impl Instance {
    fn new(name: impl Into<String>, status: Status, detail: impl Into<String>) -> Self {
        Instance { name: name.into(), status, detail: detail.into(), verdict: None }
    }

    fn with_verdict(mut self, verdict: MatroidVerdict) -> Self {
        self.verdict = Some(verdict);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub claim: String,
    pub status: Status,
    pub instance_count: usize,
    pub instances: Vec<Instance>,
    /// graph6 strings produced by the claim, if any.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub graphs: Vec<String>,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<String>,
    pub version: String,
    pub wall_time_ms: u64,
}

impl VerificationReport {
    fn build(claim: Claim, config: &HarnessConfig, instances: Vec<Instance>, started: Instant) -> Self {
        let status = instances.iter().fold(Status::Pass, |s, i| s.combine(i.status));
        VerificationReport {
            schema_version: SCHEMA_VERSION,
            claim: claim.id().to_string(),
            status,
            instance_count: instances.len(),
            instances,
            graphs: Vec::new(),
            seed: config.seed,
            partition: None,
            version: crate::VERSION.to_string(),
            wall_time_ms: started.elapsed().as_millis() as u64,
        }
    }

    /// The report with timing zeroed; identical across reruns with the same
    /// version, seed and partition.
    pub fn without_timing(&self) -> Self {
        VerificationReport { wall_time_ms: 0, ..self.clone() }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Instance> {
        self.instances.iter().filter(|i| i.status != Status::Pass)
    }
}

/// The verifiable claims.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    /// 6-regular graphs on 10 vertices are independent in dimension 4.
    Regular10,
    /// 12-regular graphs on 15 vertices are independent in dimension 9.
    Regular15,
    /// The `B` and `B+` families (and `K_{d+2,d+2}`) are flexible circuits.
    Families,
    /// Classification of small flexible circuits in dimension 3.
    Classify,
    /// Minimum edge count of flexible circuits.
    EdgeBound,
    /// Iterated cones of `K_{6,6}` stay flexible circuits.
    ConeLadder,
    /// 2-sums of circuits are circuits, and only those.
    TwoSum,
    /// Randomized and exhaustive property suites.
    Structure,
}

impl Claim {
    pub const ALL: [Claim; 8] = [
        Claim::Regular10,
        Claim::Regular15,
        Claim::Families,
        Claim::Classify,
        Claim::EdgeBound,
        Claim::ConeLadder,
        Claim::TwoSum,
        Claim::Structure,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::Regular10 => "regular-10-6",
            Claim::Regular15 => "regular-15-12",
            Claim::Families => "families",
            Claim::Classify => "classify",
            Claim::EdgeBound => "edge-bound",
            Claim::ConeLadder => "cone-ladder",
            Claim::TwoSum => "two-sum",
            Claim::Structure => "structure",
        }
    }
}

impl FromStr for Claim {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Claim::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| HarnessError::UnknownClaim(s.to_string()))
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("unknown claim {0:?}")]
    UnknownClaim(String),
    #[error("unsupported scope: {0}")]
    Scope(String),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

/// Settings shared by every claim.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HarnessConfig {
    pub seed: u64,
    pub rank: RankConfig,
    /// Parallelism across instances. Rank trials inside one instance stay sequential.
    pub exec: Exec,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig { seed: DEFAULT_SEED, rank: RankConfig::default(), exec: Exec::default() }
    }
}

impl HarnessConfig {
    pub fn with_seed(self, seed: u64) -> Self {
        HarnessConfig { seed, rank: self.rank.with_seed(seed), ..self }
    }

    pub fn with_exec(self, exec: Exec) -> Self {
        HarnessConfig { exec, ..self }
    }

    pub fn with_trials(self, trials: usize) -> Self {
        HarnessConfig { rank: self.rank.with_trials(trials), ..self }
    }
}

/// Runs `claim` with its default parameters.
pub fn run(claim: Claim, config: &HarnessConfig) -> Result<VerificationReport, HarnessError> {
    use crate::enumeration::Partition;
    match claim {
        Claim::Regular10 => verify_regular_independence(RegularCase::TenSix, config),
        Claim::Regular15 => verify_regular_independence(RegularCase::FifteenTwelve, config),
        Claim::Families => verify_families(5, config),
        Claim::Classify => {
            classify_flexible_circuits(3, 9, Partition::WHOLE, false, config).map(|c| c.report)
        }
        Claim::EdgeBound => verify_edge_bound(8, config),
        Claim::ConeLadder => verify_cone_ladder(3, config),
        Claim::TwoSum => verify_two_sum_closure(20, config),
        Claim::Structure => Ok(verify_structure_lemmas(config)),
    }
}

/// `log2` failure bound carried by a flag, `None` for deterministic flags.
fn failure_log2(flag: Flag) -> Option<f64> {
    match flag.basis {
        Basis::MonteCarlo { failure_log2 } => Some(failure_log2),
        _ => None,
    }
}

fn describe_basis(flag: Flag) -> String {
    match flag.basis {
        Basis::Deterministic => "deterministic".to_string(),
        Basis::MonteCarlo { failure_log2 } => format!("monte carlo, failure <= 2^{failure_log2:.1}"),
        Basis::Open => "open".to_string(),
    }
}
