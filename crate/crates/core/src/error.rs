use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed group spec `{spec}`: {reason}")]
    MalformedSpec { spec: String, reason: String },
    #[error("group order {order} exceeds the configured cap {cap}")]
    OrderCapExceeded { order: u128, cap: usize },
    #[error("table does not define a group: {0}")]
    NotAGroup(String),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("subsets belong to different groups")]
    GroupMismatch,
    #[error("operation requires a nonempty set")]
    EmptySet,
    #[error("exact enumeration needs |A| <= {cap}, got {size}")]
    ExactCapExceeded { size: usize, cap: usize },
    #[error("set kind `{kind}` is not supported for group {group}")]
    KindUnsupportedForGroup { kind: String, group: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("fiber functions are defined on different domains")]
    DomainMismatch,
    #[error("pointwise identity f1(a)f2(a)=f3(a) holds on {holds} of {total} elements, below the required fraction")]
    PointwiseIdentityFailed { holds: usize, total: usize },
    #[error("fiber of size {actual} exceeds the bound {bound}")]
    FiberBoundExceeded { actual: usize, bound: usize },
    #[error("validation failed: {0}")]
    ValidationFailed(String),
    #[error("invalid config: {0}")]
    ConfigInvalid(String),
    #[error("grid has {cells} cells, the limit is {limit}")]
    GridTooLarge { cells: usize, limit: usize },
    #[error("{context}: {source}")]
    Instance {
        context: String,
        #[source]
        source: Box<Error>,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// Coarse failure classes, mapped onto process exit codes by the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Usage,
    Invariant,
    Budget,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Instance { source, .. } => source.class(),
            Error::NotAGroup(_) | Error::ValidationFailed(_) => ErrorClass::Invariant,
            Error::OrderCapExceeded { .. }
            | Error::ExactCapExceeded { .. }
            | Error::BudgetExceeded(_)
            | Error::GridTooLarge { .. } => ErrorClass::Budget,
            _ => ErrorClass::Usage,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.class() {
            ErrorClass::Usage => 1,
            ErrorClass::Invariant => 2,
            ErrorClass::Budget => 3,
        }
    }

    /// Attaches the experiment instance that failed.
    pub fn in_instance(self, context: impl Into<String>) -> Self {
        Error::Instance {
            context: context.into(),
            source: Box::new(self),
        }
    }

    pub(crate) fn malformed(spec: &str, reason: impl Into<String>) -> Self {
        Error::MalformedSpec {
            spec: spec.to_string(),
            reason: reason.into(),
        }
    }
}
