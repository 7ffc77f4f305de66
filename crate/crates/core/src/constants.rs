//! Empirical constants for the stationary-phase and mean-bound checks.

use crate::asymptotics::AdmissibleBand;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::path::Path;

const BUILTIN: &str = include_str!("../data/constants.txt");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Constants {
    pub delta_floor: f64,
    pub stationary_kappa: f64,
    pub stationary_n_min: u64,
    pub h_q_abs_max: f64,
    pub phi_prime_abs_min: f64,
    pub phi_prime_abs_max: f64,
    pub x_prime_abs_min: f64,
    pub x_prime_abs_max: f64,
    pub p_prime_min: f64,
    pub p_prime_max: f64,
}

impl Constants {
    pub fn builtin() -> Self {
        Self::parse(BUILTIN).expect("checked-in constants parse")
    }

    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| crate::config::toml_error(text, &e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Names of band constants the measurement falls outside of (relative slack 1e-6).
    pub fn band_violations(&self, b: &AdmissibleBand) -> Vec<String> {
        let s = 1e-6;
        let mut out = Vec::new();
        let mut lower = |name: &str, measured: f64, stored: f64| {
            if measured < stored * (1.0 - s) {
                out.push(format!("{name}: measured {measured} < {stored}"));
            }
        };
        lower("phi_prime_abs_min", b.phi_prime_abs_min, self.phi_prime_abs_min);
        lower("x_prime_abs_min", b.x_prime_abs_min, self.x_prime_abs_min);
        lower("p_prime_min", b.p_prime_min, self.p_prime_min);
        let mut upper = |name: &str, measured: f64, stored: f64| {
            if measured > stored * (1.0 + s) {
                out.push(format!("{name}: measured {measured} > {stored}"));
            }
        };
        upper("h_q_abs_max", b.abs_h_max, self.h_q_abs_max);
        upper("phi_prime_abs_max", b.phi_prime_abs_max, self.phi_prime_abs_max);
        upper("x_prime_abs_max", b.x_prime_abs_max, self.x_prime_abs_max);
        upper("p_prime_max", b.p_prime_max, self.p_prime_max);
        out
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            self.delta_floor,
            self.stationary_kappa,
            self.phi_prime_abs_min,
            self.x_prime_abs_min,
            self.p_prime_min,
        ];
        if positive.iter().any(|v| !(*v > 0.0)) {
            return Err(Error::InvalidParameter("constants must be positive".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::{admissible_band, mean_lower_bound_multi, q_grid_indices, MeanGrid};

    #[test]
    fn builtin_parses() {
        let c = Constants::builtin();
        c.validate().unwrap();
        assert!(c.h_q_abs_max <= 15.0 / 16.0);
    }

    #[test]
    fn unknown_key_reports_position() {
        let err = Constants::parse("delta_floor = 1.0\nbogus = 2\n").unwrap_err();
        assert!(matches!(err, Error::Config { line: 2, .. }), "{err}");
    }

    #[test]
    fn band_is_stable() {
        let c = Constants::builtin();
        let b = admissible_band(20, 20).unwrap();
        assert!(c.band_violations(&b).is_empty(), "{:?}", c.band_violations(&b));
    }

    /// Prints the values stored in data/constants.txt.
    #[test]
    #[ignore]
    fn calibrate() {
        let b = admissible_band(20, 20).unwrap();
        println!("{}", serde_json::to_string_pretty(&b).unwrap());
        let r = mean_lower_bound_multi(64, &q_grid_indices(64), &MeanGrid::default()).unwrap();
        let min = r.iter().map(|x| x.value).fold(f64::INFINITY, f64::min);
        println!("delta_floor = {}", min / 2.0);
    }
}
