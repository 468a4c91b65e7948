//! Runs the hyperjac verification suites and turns their outcomes into flat,
//! claim-keyed reports suitable for JSON-lines output.

use std::fmt;
use std::time::Instant;

use clap::ValueEnum;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use hyperjac::tower::curves::CurveRoots;
use hyperjac::tower::Precision;
use hyperjac::Error;

mod suites;

/// Claim ids that a full default run must produce.
pub const MANIFEST: &str = include_str!("../claims.txt");

pub fn manifest_claims() -> Vec<&'static str> {
    MANIFEST
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

pub const DEFAULT_CAP_ELEMENTS: usize = 1 << 21;
/// Element cap applied by `--quick`; too small for the genus-two enumeration.
pub const QUICK_CAP_ELEMENTS: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum)]
pub enum Suite {
    #[value(alias = "lemma31")]
    Congruence,
    CommutatorFormula,
    #[value(alias = "lemma32")]
    Transvections,
    #[value(alias = "prop22")]
    Monodromy,
    #[value(alias = "prop33")]
    SpanningSets,
    #[value(alias = "prop34")]
    PhiKernel,
    #[value(aliases = ["thm23", "thm23-parity", "curve-iso"])]
    Parity,
    #[value(alias = "thm1")]
    Tower,
    #[value(alias = "remark13")]
    EighthRoots,
    #[value(alias = "elliptic-4tors")]
    Elliptic,
    All,
}

impl Suite {
    pub const CONCRETE: [Suite; 10] = [
        Suite::Congruence,
        Suite::CommutatorFormula,
        Suite::Transvections,
        Suite::Monodromy,
        Suite::SpanningSets,
        Suite::PhiKernel,
        Suite::Parity,
        Suite::Tower,
        Suite::EighthRoots,
        Suite::Elliptic,
    ];

    pub fn name(self) -> String {
        self.to_possible_value()
            .map(|v| v.get_name().to_string())
            .unwrap_or_default()
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub suites: Vec<Suite>,
    pub g: Option<usize>,
    pub d: Option<usize>,
    pub roots: Option<CurveRoots>,
    /// Largest number of group elements any enumeration may hold.
    pub cap_elements: usize,
    pub precision_rounds: u32,
    /// Range bound for the commutator closed form.
    pub max_exponent: u32,
    pub quick: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            suites: Vec::new(),
            g: None,
            d: None,
            roots: None,
            cap_elements: DEFAULT_CAP_ELEMENTS,
            precision_rounds: Precision::default().rounds,
            max_exponent: 6,
            quick: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid configuration: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

impl RunConfig {
    pub fn with_suites(suites: &[Suite]) -> Self {
        Self {
            suites: suites.to_vec(),
            ..Self::default()
        }
    }

    /// Selected suites with `all` expanded, deduplicated, in canonical order.
    pub fn expanded_suites(&self) -> Vec<Suite> {
        let mut out: Vec<Suite> = if self.suites.contains(&Suite::All) {
            Suite::CONCRETE.to_vec()
        } else {
            self.suites.clone()
        };
        out.sort();
        out.dedup();
        out
    }

    pub fn effective_cap(&self) -> usize {
        if self.quick {
            self.cap_elements.min(QUICK_CAP_ELEMENTS)
        } else {
            self.cap_elements
        }
    }

    pub fn precision(&self) -> Precision {
        Precision {
            rounds: self.precision_rounds,
            ..Precision::default()
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let err = |m: String| Err(ConfigError(m));
        if self.cap_elements == 0 {
            return err("element cap must be positive".into());
        }
        if self.precision_rounds == 0 {
            return err("precision rounds must be positive".into());
        }
        if self.max_exponent == 0 || self.max_exponent > 12 {
            return err(format!(
                "commutator range must be in 1..=12, got {}",
                self.max_exponent
            ));
        }
        if let Some(g) = self.g {
            if !(1..=2).contains(&g) {
                return err(format!("genus must be 1 or 2, got {g}"));
            }
        }
        let suites = self.expanded_suites();
        let explicit = !self.suites.contains(&Suite::All);
        let root_count = self.roots.as_ref().map(CurveRoots::d);
        if let (Some(d), Some(n)) = (self.d, root_count) {
            if d != n {
                return err(format!("--d {d} disagrees with {n} roots"));
            }
        }
        let d = self.d.or(root_count);
        for s in suites {
            let ok = match s {
                Suite::Congruence => true,
                Suite::Transvections => self.g.is_none_or(|g| g == 2) || !explicit,
                Suite::Monodromy => d.is_none_or(|d| (3..=6).contains(&d)) || !explicit,
                Suite::SpanningSets => d.is_none_or(|d| (5..=7).contains(&d)) || !explicit,
                Suite::Parity => d.is_none_or(|d| d == 4 || d == 6) || !explicit,
                Suite::Tower => {
                    let from_roots = root_count.is_none_or(|n| (3..=6).contains(&n));
                    let agree = match (self.g, root_count) {
                        (Some(g), Some(n)) => (n - 1) / 2 == g,
                        _ => true,
                    };
                    from_roots && agree
                }
                Suite::EighthRoots | Suite::Elliptic => {
                    root_count.is_none_or(|n| n == 3) || !explicit
                }
                Suite::CommutatorFormula | Suite::PhiKernel | Suite::All => true,
            };
            if !ok {
                return err(format!("parameters do not apply to suite {}", s.name()));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped(String),
}

impl Status {
    pub fn is_fail(&self) -> bool {
        matches!(self, Status::Fail)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => write!(f, "pass"),
            Status::Fail => write!(f, "fail"),
            Status::Skipped(why) => write!(f, "skipped: {why}"),
        }
    }
}

impl Serialize for Status {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub claim: String,
    /// Plain statement of what was checked.
    pub statement: String,
    pub status: Status,
    pub witness: Value,
    pub wall_time_ms: f64,
}

impl VerificationReport {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

/// Pass/fail and witness per claim, in claim order.
pub(crate) type Outcomes = hyperjac::Result<Vec<(bool, Value)>>;

/// A batch of claims decided by one computation.
pub(crate) struct Unit {
    pub claims: Vec<(String, &'static str)>,
    pub body: Box<dyn FnOnce() -> Outcomes + Send>,
}

impl Unit {
    pub fn new(
        claims: Vec<(String, &'static str)>,
        body: impl FnOnce() -> Outcomes + Send + 'static,
    ) -> Self {
        Self {
            claims,
            body: Box::new(body),
        }
    }

    fn execute(self) -> Vec<VerificationReport> {
        let start = Instant::now();
        let outcome = (self.body)();
        let ms = start.elapsed().as_secs_f64() * 1e3;
        let report = |(claim, statement): (String, &str), status, witness| VerificationReport {
            claim,
            statement: statement.to_string(),
            status,
            witness,
            wall_time_ms: ms,
        };
        match outcome {
            Ok(results) if results.len() == self.claims.len() => self
                .claims
                .into_iter()
                .zip(results)
                .map(|(c, (pass, w))| report(c, if pass { Status::Pass } else { Status::Fail }, w))
                .collect(),
            Ok(results) => {
                let w = json!({ "error": format!("{} outcomes for {} claims", results.len(), self.claims.len()) });
                self.claims
                    .into_iter()
                    .map(|c| report(c, Status::Fail, w.clone()))
                    .collect()
            }
            Err(e @ (Error::Capacity { .. } | Error::BranchUndecidable { .. })) => {
                let w = json!({ "error": e.to_string() });
                self.claims
                    .into_iter()
                    .map(|c| report(c, Status::Skipped("capacity".into()), w.clone()))
                    .collect()
            }
            Err(e) => {
                let w = json!({ "error": e.to_string() });
                self.claims
                    .into_iter()
                    .map(|c| report(c, Status::Fail, w.clone()))
                    .collect()
            }
        }
    }
}

/// Runs every selected suite; reports are sorted by claim id.
pub fn run(config: &RunConfig) -> Result<Vec<VerificationReport>, ConfigError> {
    config.validate()?;
    let units: Vec<Unit> = config
        .expanded_suites()
        .into_iter()
        .flat_map(|s| suites::units(s, config))
        .collect();
    let mut reports: Vec<VerificationReport> =
        units.into_par_iter().flat_map_iter(Unit::execute).collect();
    reports.sort_by(|a, b| a.claim.cmp(&b.claim));
    Ok(reports)
}

pub fn any_failed(reports: &[VerificationReport]) -> bool {
    reports.iter().any(|r| r.status.is_fail())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(RunConfig::default().validate().is_ok());
        let mut c = RunConfig::with_suites(&[Suite::Parity]);
        c.d = Some(5);
        assert!(c.validate().is_err());
        c.suites = vec![Suite::All];
        assert!(c.validate().is_ok());
        c.roots = Some(CurveRoots::from_integers(&[0, 1, 3, 7]).unwrap());
        assert!(c.validate().is_err(), "d disagrees with the roots");
        let mut c = RunConfig::with_suites(&[Suite::Tower]);
        c.g = Some(2);
        c.roots = Some(CurveRoots::from_integers(&[0, 3, 10]).unwrap());
        assert!(c.validate().is_err());
    }

    #[test]
    fn suite_expansion_and_quick_cap() {
        let c = RunConfig::with_suites(&[Suite::Tower, Suite::All, Suite::Tower]);
        assert_eq!(c.expanded_suites(), Suite::CONCRETE.to_vec());
        let q = RunConfig {
            quick: true,
            ..RunConfig::default()
        };
        assert_eq!(q.effective_cap(), QUICK_CAP_ELEMENTS);
        assert_eq!(
            Status::Skipped("capacity".into()).to_string(),
            "skipped: capacity"
        );
        assert_eq!(Suite::EighthRoots.name(), "eighth-roots");
    }
}
