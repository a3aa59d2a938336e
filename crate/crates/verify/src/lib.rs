//! Named verification suites over the `ribet-core` checks, their TOML
//! configuration and the JSON reports they produce.

pub mod catalog;
pub mod config;
pub mod report;
pub mod suites;

use thiserror::Error;

pub use catalog::{find_suite, list_suites, SuiteInfo};
pub use config::{Budget, SuiteConfig, SuiteOptions};
pub use report::{CheckRecord, Report, Status, Summary};
pub use suites::{plan, run_suite, Check};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config error: {0}")]
    Config(String),
    #[error("unknown suite '{0}' (see `verify list`)")]
    UnknownSuite(String),
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("could not encode report: {0}")]
    Encode(#[from] serde_json::Error),
}
