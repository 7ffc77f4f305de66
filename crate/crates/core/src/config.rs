//! Run configuration: named weights and symbols plus numeric parameters, in TOML.
//!
//! ```toml
//! [weights.w1]
//! kind = "power"
//! nu = 0.5
//!
//! [symbols.half]
//! kind = "mobius"
//! a = 0.5
//!
//! [run]
//! N = 256
//! seed = 7
//! ```

use crate::error::{Error, Result};
use crate::symbols::{make_symbol, Symbol, SymbolSpec};
use crate::weights::{make_weight, WeightSequence, WeightSpec};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunParams {
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_list: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radii: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default)]
    pub weights: BTreeMap<String, WeightSpec>,
    #[serde(default)]
    pub symbols: BTreeMap<String, SymbolSpec>,
    #[serde(default)]
    pub run: RunParams,
}

/// 1-based line and column of a byte offset.
pub fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

pub(crate) fn toml_error(text: &str, e: &toml::de::Error) -> Error {
    let (line, column) = e.span().map_or((0, 0), |s| line_column(text, s.start));
    Error::Config { msg: e.message().trim().to_string(), line, column }
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| toml_error(text, &e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// A configured weight by name, or an inline spec such as `power:nu=0.5`.
    pub fn weight(&self, key: &str) -> Result<WeightSequence> {
        match self.weights.get(key) {
            Some(spec) => make_weight(spec),
            None => make_weight(&key.parse()?),
        }
    }

    pub fn symbol(&self, key: &str) -> Result<Symbol> {
        match self.symbols.get(key) {
            Some(spec) => make_symbol(spec),
            None => make_symbol(&key.parse()?),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_and_inline() {
        let c = Config::parse(
            "[weights.w]\nkind = \"power\"\nnu = 0.5\n\n[symbols.s]\nkind = \"mobius\"\na = 0.5\n\n[run]\nN = 64\nseed = 3\n",
        )
        .unwrap();
        assert_eq!(c.run.dim, Some(64));
        assert_eq!(c.weights["w"], WeightSpec::Power { nu: 0.5 });
        assert!(c.weight("w").is_ok());
        assert!(c.weight("bergman").is_ok());
        assert!(c.symbol("s").is_ok());
        assert!(c.symbol("monomial:k=2").is_ok());
        assert!(c.weight("nope").is_err());
    }

    #[test]
    fn error_position() {
        let err = Config::parse("[run]\nN = 64\ntol = \"x\"\n").unwrap_err();
        match err {
            Error::Config { line, column, .. } => assert_eq!((line, column), (3, 7)),
            e => panic!("{e}"),
        }
        let err = Config::parse("[weights.w]\nkind = \"hardy\"\n[oops]\n").unwrap_err();
        assert!(matches!(err, Error::Config { line: 3, .. }), "{err}");
    }
}
