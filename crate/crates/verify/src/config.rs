//! TOML run configuration. Every key is optional; command-line flags
//! override the file.
//!
//! ```toml
//! prime = 10007
//! seeds = [1, 2, 3]
//! out = "report.json"
//! jobs = 4
//!
//! [budget]
//! groebner_steps = 1000000
//! degree_cap = 2
//! retries = 100
//!
//! [shapes]
//! files = ["shapes/mixed.toml"]
//! specialization = "shapes/specialization.toml"
//!
//! [suite.trace-identities]
//! max_word_len = 3
//! ranks = [2, 3]
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use ribet_core::exactpoly::{is_prime, MAX_PRIME};
use ribet_core::ribet::shape::corpus;
use ribet_core::ribet::RibetShape;
use serde::Deserialize;

use crate::HarnessError;

pub const DEFAULT_PRIME: u64 = 10007;
pub const DEFAULT_SEED_COUNT: u64 = 20;

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct Budget {
    /// Gröbner step budget; `VERIFY_BUDGET_STEPS` takes precedence.
    pub groebner_steps: Option<u64>,
    /// Highest complex degree built by the morphism suite.
    pub degree_cap: usize,
    /// Rerolls allowed per specialization seed.
    pub retries: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            groebner_steps: None,
            degree_cap: 2,
            retries: 100,
        }
    }
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct ShapeFiles {
    pub files: Vec<PathBuf>,
    pub specialization: Option<PathBuf>,
}

/// Per-suite knobs; each suite reads only the ones it understands.
#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct SuiteOptions {
    pub max_word_len: Option<usize>,
    pub ranks: Option<Vec<usize>>,
    pub cases: Option<usize>,
    pub points: Option<usize>,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct SuiteConfig {
    pub prime: u64,
    pub seeds: Vec<u64>,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub budget: Budget,
    pub shapes: ShapeFiles,
    pub suite: BTreeMap<String, SuiteOptions>,
    /// Directory relative shape paths are resolved against.
    #[serde(skip)]
    pub base_dir: PathBuf,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            prime: DEFAULT_PRIME,
            seeds: (1..=DEFAULT_SEED_COUNT).collect(),
            out: None,
            jobs: None,
            budget: Budget::default(),
            shapes: ShapeFiles::default(),
            suite: BTreeMap::new(),
            base_dir: PathBuf::from("."),
        }
    }
}

impl SuiteConfig {
    pub fn from_toml(text: &str) -> Result<Self, HarnessError> {
        toml::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path).map_err(|source| HarnessError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let mut cfg = Self::from_toml(&text)?;
        cfg.base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(cfg)
    }

    /// Replaces the seed list by as many consecutive seeds starting at `seed`.
    pub fn with_base_seed(mut self, seed: u64) -> Self {
        let n = self.seeds.len().max(1) as u64;
        self.seeds = (0..n).map(|i| seed.wrapping_add(i)).collect();
        self
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let bad = |m: String| Err(HarnessError::Config(m));
        if self.prime == 2 || self.prime > MAX_PRIME || !is_prime(self.prime) {
            return bad(format!("prime {} must be an odd prime below {MAX_PRIME}", self.prime));
        }
        if self.seeds.is_empty() {
            return bad("seed list is empty".into());
        }
        if self.budget.degree_cap == 0 {
            return bad("degree_cap must be at least 1".into());
        }
        if self.budget.retries == 0 {
            return bad("retries must be at least 1".into());
        }
        if self.jobs == Some(0) {
            return bad("jobs must be at least 1".into());
        }
        for p in self.shapes.files.iter().chain(&self.shapes.specialization) {
            if !self.resolve(p).is_file() {
                return bad(format!("shape file {} does not exist", self.resolve(p).display()));
            }
        }
        for name in self.suite.keys() {
            if crate::find_suite(name).is_none() {
                return Err(HarnessError::UnknownSuite(name.clone()));
            }
        }
        Ok(())
    }

    fn resolve(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base_dir.join(p)
        }
    }

    fn read_shape(&self, p: &Path) -> Result<RibetShape, HarnessError> {
        let path = self.resolve(p);
        let text = std::fs::read_to_string(&path).map_err(|source| HarnessError::Io {
            path: path.display().to_string(),
            source,
        })?;
        RibetShape::from_toml(&text).map_err(|e| HarnessError::Config(format!("{}: {e}", path.display())))
    }

    /// Shapes for the symbolic suites; the built-in corpus when none are listed.
    pub fn symbolic_shapes(&self) -> Result<Vec<RibetShape>, HarnessError> {
        if self.shapes.files.is_empty() {
            return Ok(corpus::all());
        }
        self.shapes.files.iter().map(|p| self.read_shape(p)).collect()
    }

    pub fn specialization_shape(&self) -> Result<RibetShape, HarnessError> {
        match &self.shapes.specialization {
            Some(p) => self.read_shape(p),
            None => Ok(corpus::specialization()),
        }
    }

    pub fn options(&self, suite: &str) -> SuiteOptions {
        self.suite.get(suite).cloned().unwrap_or_default()
    }
}
