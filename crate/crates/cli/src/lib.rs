//! Verification suites, reports and exports behind the `tripletorb` binary.

pub mod output;
pub mod report;
pub mod suites;

use std::path::PathBuf;
use std::time::Duration;

pub use report::{Check, Observation, Report, Status};
pub use suites::run_suite;

/// Report schema version, bumped on any incompatible field change.
pub const SCHEMA_VERSION: u32 = 1;

pub const ENV_MAX_TERMS: &str = "TRIPLETORB_MAX_TERMS";
pub const ENV_MAX_SECONDS: &str = "TRIPLETORB_MAX_SECONDS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] tripletorb_core::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Core(tripletorb_core::Error::BudgetExceeded(_)) => exit::BUDGET,
            CliError::Core(tripletorb_core::Error::InvalidParameter(_)) => exit::USAGE,
            _ => exit::FAILED,
        }
    }
}

pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILED: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const BUDGET: i32 = 3;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Ct,
    Jack,
    Chars,
    Closure,
    Zhu,
    All,
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Ct => "ct",
            Suite::Jack => "jack",
            Suite::Chars => "chars",
            Suite::Closure => "closure",
            Suite::Zhu => "zhu",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Emit {
    #[default]
    Json,
    Csv,
    Human,
}

impl std::str::FromStr for Emit {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "json" => Ok(Emit::Json),
            "csv" => Ok(Emit::Csv),
            "human" => Ok(Emit::Human),
            _ => Err(CliError::Usage(format!("unknown output format {s}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BudgetConfig {
    pub max_terms: usize,
    pub max_seconds: Option<u64>,
}

impl Default for BudgetConfig {
    fn default() -> Self {
        BudgetConfig {
            max_terms: 20_000_000,
            max_seconds: None,
        }
    }
}

impl BudgetConfig {
    /// Defaults overridden by the environment.
    pub fn from_env() -> Result<Self, CliError> {
        let mut b = BudgetConfig::default();
        if let Ok(v) = std::env::var(ENV_MAX_TERMS) {
            b.max_terms = v
                .parse()
                .map_err(|_| CliError::Usage(format!("{ENV_MAX_TERMS}={v} is not a count")))?;
        }
        if let Ok(v) = std::env::var(ENV_MAX_SECONDS) {
            b.max_seconds = Some(v.parse().map_err(|_| {
                CliError::Usage(format!("{ENV_MAX_SECONDS}={v} is not a number of seconds"))
            })?);
        }
        Ok(b)
    }

    pub fn time_limit(&self) -> Option<Duration> {
        self.max_seconds.map(Duration::from_secs)
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub suite: Suite,
    pub p: Option<u32>,
    pub m: Option<u32>,
    pub r: Option<u32>,
    pub order: Option<u32>,
    pub long: bool,
    pub workers: Option<usize>,
    pub budget: BudgetConfig,
    pub emit: Emit,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(suite: Suite) -> Self {
        RunConfig {
            suite,
            p: None,
            m: None,
            r: None,
            order: None,
            long: false,
            workers: None,
            budget: BudgetConfig::default(),
            emit: Emit::Json,
            out: None,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if let Some(p) = self.p {
            if p < 2 {
                return Err(CliError::Usage(format!("p must be at least 2, got {p}")));
            }
        }
        if self.m == Some(0) {
            return Err(CliError::Usage("m must be positive".into()));
        }
        if let Some(r) = self.r {
            if r < 2 {
                return Err(CliError::Usage(format!("r must be at least 2, got {r}")));
            }
        }
        if self.order == Some(0) {
            return Err(CliError::Usage("order must be positive".into()));
        }
        if self.budget.max_terms == 0 || self.budget.max_seconds == Some(0) {
            return Err(CliError::Usage("budgets must be positive".into()));
        }
        if self.workers == Some(0) {
            return Err(CliError::Usage("workers must be positive".into()));
        }
        Ok(())
    }
}
