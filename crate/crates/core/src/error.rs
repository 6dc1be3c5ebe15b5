use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("infinite expansion of {0} needs an expansion direction")]
    MissingDirection(String),
    #[error("exponent window for {0} is unbounded")]
    UnboundedWindow(String),
    #[error("product term outside the declared window of {var} (exponent {exponent})")]
    WindowOverflow { var: String, exponent: i32 },
    #[error("exponent {exponent} of {var} lies outside the window {lo}..={hi}")]
    ExponentOutsideWindow {
        var: String,
        exponent: i32,
        lo: i32,
        hi: i32,
    },
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("incompatible variable sets")]
    IncompatibleRings,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("parse error: {0}")]
    Parse(String),
}
