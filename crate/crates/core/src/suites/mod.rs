//! Seeded verification suites and their reports.
//!
//! Each suite runs a family of exact checks and returns one record per
//! check, sorted by id. A failing record carries a witness with the data
//! needed to replay the failure.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::generate::Profile;

pub mod derham;
pub mod gauge;
pub mod homops;
pub mod ncomplex;
pub mod qcomb;
pub mod quantum;
pub mod simplicial;

pub use derham::run as run_derham;
pub use gauge::run as run_gauge;
pub use homops::run as run_homops;
pub use ncomplex::run as run_ncomplex;
pub use qcomb::run as run_qcomb;
pub use quantum::run as run_quantum;
pub use simplicial::run as run_simplicial;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    /// Short description of the identity or property being checked.
    pub claim: String,
    pub instance: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl CheckRecord {
    pub fn pass(id: impl Into<String>, claim: impl Into<String>, instance: impl Into<String>) -> Self {
        CheckRecord { id: id.into(), claim: claim.into(), instance: instance.into(), passed: true, witness: None }
    }

    pub fn fail(id: impl Into<String>, claim: impl Into<String>, instance: impl Into<String>, witness: Value) -> Self {
        CheckRecord { id: id.into(), claim: claim.into(), instance: instance.into(), passed: false, witness: Some(witness) }
    }

    /// A record that passes when `witness` is `None`.
    pub fn from_witness(id: impl Into<String>, claim: impl Into<String>, instance: impl Into<String>, witness: Option<Value>) -> Self {
        match witness {
            None => Self::pass(id, claim, instance),
            Some(w) => Self::fail(id, claim, instance, w),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub profile: String,
    pub records: Vec<CheckRecord>,
}

impl Report {
    pub fn new(suite: Suite, config: &SuiteConfig, mut records: Vec<CheckRecord>) -> Self {
        records.sort_by(|a, b| a.id.cmp(&b.id));
        Report { suite: suite.to_string(), seed: config.seed, profile: config.profile.to_string(), records }
    }

    pub fn all_passed(&self) -> bool {
        self.records.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {} (seed {}, profile {})", self.suite, self.seed, self.profile)?;
        for r in &self.records {
            writeln!(f, "{} {}  {}  [{}]", if r.passed { "PASS" } else { "FAIL" }, r.id, r.claim, r.instance)?;
            if let Some(w) = &r.witness {
                writeln!(f, "     witness: {w}")?;
            }
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} passed, {} failed", self.records.len(), self.records.len() - failed, failed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    QCombinatorics,
    Simplicial,
    NcomplexTheorems,
    Homops,
    Derham,
    Quantum,
    Gauge,
    All,
}

impl Suite {
    pub const EACH: [Suite; 7] =
        [Suite::QCombinatorics, Suite::Simplicial, Suite::NcomplexTheorems, Suite::Homops, Suite::Derham, Suite::Quantum, Suite::Gauge];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::QCombinatorics => "q-combinatorics",
            Suite::Simplicial => "simplicial",
            Suite::NcomplexTheorems => "ncomplex-theorems",
            Suite::Homops => "homops",
            Suite::Derham => "derham",
            Suite::Quantum => "quantum",
            Suite::Gauge => "gauge",
            Suite::All => "all",
        })
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.to_string() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

/// Parameters shared by all suites.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub profile: Profile,
    /// Restricts suites that range over orders to this one.
    pub order: Option<u32>,
    /// Overrides the number of random instances per check group.
    pub instances: Option<usize>,
}

impl SuiteConfig {
    pub fn new(seed: u64, profile: Profile) -> Self {
        SuiteConfig { seed, profile, order: None, instances: None }
    }

    /// Number of random instances, defaulting by profile.
    pub fn count(&self, small: usize, medium: usize) -> usize {
        self.instances.unwrap_or(match self.profile {
            Profile::Small => small,
            Profile::Medium => medium,
        })
    }

    /// The configured order, or `default` when none is set.
    pub fn orders(&self, default: &[u32]) -> Vec<u32> {
        match self.order {
            Some(n) => vec![n],
            None => default.to_vec(),
        }
    }

    /// Seed of the `k`-th instance of check group `tag`.
    pub fn instance_seed(&self, tag: &str, k: usize) -> u64 {
        let h = tag.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
        self.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ h ^ (k as u64).wrapping_mul(0xbf58_476d_1ce4_e5b9)
    }
}

pub fn run_suite(suite: Suite, config: &SuiteConfig) -> Report {
    let records = match suite {
        Suite::QCombinatorics => run_qcomb(config),
        Suite::Simplicial => run_simplicial(config),
        Suite::NcomplexTheorems => run_ncomplex(config),
        Suite::Homops => run_homops(config),
        Suite::Derham => run_derham(config),
        Suite::Quantum => run_quantum(config),
        Suite::Gauge => run_gauge(config),
        Suite::All => Suite::EACH.iter().flat_map(|&s| run_suite(s, config).records).collect(),
    };
    Report::new(suite, config, records)
}

/// Records for a group of instances: one pass record, or a fail record with
/// the first failing instance's witness.
pub(crate) fn group_record(
    id: String,
    claim: &str,
    instance: String,
    results: impl IntoIterator<Item = Option<Value>>,
) -> CheckRecord {
    let mut total = 0;
    let mut first = None;
    let mut failed = 0;
    for w in results {
        total += 1;
        if let Some(w) = w {
            failed += 1;
            first.get_or_insert(w);
        }
    }
    match first {
        None => CheckRecord::pass(id, claim, format!("{instance}, {total} instances")),
        Some(w) => CheckRecord::fail(id, claim, format!("{instance}, {failed} of {total} instances fail"), w),
    }
}

/// A witness carrying an error message.
pub(crate) fn error_witness(e: impl fmt::Display) -> Value {
    serde_json::json!({ "error": e.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH.into_iter().chain([Suite::All]) {
            assert_eq!(s.to_string().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn instance_seeds_differ() {
        let c = SuiteConfig::new(42, Profile::Small);
        assert_ne!(c.instance_seed("a", 0), c.instance_seed("a", 1));
        assert_ne!(c.instance_seed("a", 0), c.instance_seed("b", 0));
    }
}
