//! Weight sequences β and the catalog of examples.

mod classify;

pub use classify::{
    classify, classify_with, so_envelopes, ClassificationReport, ClassifyOptions, Constant, DeltaReport, Property,
    SoEnvelopes, Verdict,
};

use crate::error::{Error, Result};
use crate::quad;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

/// Indices below this are memoized; larger ones are evaluated directly.
const CACHE_CAP: u64 = 1 << 22;

/// Catalog entry plus parameters. Also the config-file representation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WeightSpec {
    Hardy,
    Bergman,
    Dirichlet,
    Power { nu: f64 },
    Alternating,
    #[serde(rename = "prop26_ex2")]
    Prop26Ex2 { delta: f64 },
    #[serde(rename = "prop26_ex3")]
    Prop26Ex3,
    #[serde(rename = "thm38_spiked")]
    Thm38Spiked,
    Reich { r: f64 },
    KrieteMaccluer {
        b: f64,
        alpha: f64,
        #[serde(default = "default_quad_tol")]
        quad_tol: f64,
    },
    LogSquare { c: f64 },
    Custom { table: Vec<f64> },
    /// Custom table of V-shaped dips in log scale: each dip is
    /// `[center, depth_log2, half_width_log2]`, β = 2^(-depth) at the center.
    LogDips { len: usize, dips: Vec<[f64; 3]> },
}

fn default_quad_tol() -> f64 {
    1e-10
}

impl WeightSpec {
    pub fn catalog_id(&self) -> &'static str {
        match self {
            WeightSpec::Hardy => "hardy",
            WeightSpec::Bergman => "bergman",
            WeightSpec::Dirichlet => "dirichlet",
            WeightSpec::Power { .. } => "power",
            WeightSpec::Alternating => "alternating",
            WeightSpec::Prop26Ex2 { .. } => "prop26_ex2",
            WeightSpec::Prop26Ex3 => "prop26_ex3",
            WeightSpec::Thm38Spiked => "thm38_spiked",
            WeightSpec::Reich { .. } => "reich",
            WeightSpec::KrieteMaccluer { .. } => "kriete_maccluer",
            WeightSpec::LogSquare { .. } => "log_square",
            WeightSpec::Custom { .. } => "custom",
            WeightSpec::LogDips { .. } => "log_dips",
        }
    }
}

impl fmt::Display for WeightSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightSpec::Power { nu } => write!(f, "power:nu={nu}"),
            WeightSpec::Prop26Ex2 { delta } => write!(f, "prop26_ex2:delta={delta}"),
            WeightSpec::Reich { r } => write!(f, "reich:r={r}"),
            WeightSpec::KrieteMaccluer { b, alpha, .. } => write!(f, "kriete_maccluer:b={b},alpha={alpha}"),
            WeightSpec::LogSquare { c } => write!(f, "log_square:c={c}"),
            WeightSpec::Custom { table } => write!(f, "custom[{}]", table.len()),
            WeightSpec::LogDips { len, dips } => write!(f, "log_dips[{len};{}]", dips.len()),
            other => f.write_str(other.catalog_id()),
        }
    }
}

/// Parses `name` or `name:key=value,key=value`, e.g. `prop26_ex2:delta=1`.
impl FromStr for WeightSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, params) = split_spec(s)?;
        let get = |k: &str| -> Result<f64> {
            params
                .iter()
                .find(|(key, _)| key == k)
                .map(|(_, v)| *v)
                .ok_or_else(|| Error::InvalidParameter(format!("`{name}` needs parameter `{k}`")))
        };
        Ok(match name.as_str() {
            "hardy" => WeightSpec::Hardy,
            "bergman" => WeightSpec::Bergman,
            "dirichlet" => WeightSpec::Dirichlet,
            "power" => WeightSpec::Power { nu: get("nu")? },
            "alternating" => WeightSpec::Alternating,
            "prop26_ex2" => WeightSpec::Prop26Ex2 { delta: get("delta")? },
            "prop26_ex3" => WeightSpec::Prop26Ex3,
            "thm38_spiked" => WeightSpec::Thm38Spiked,
            "reich" => WeightSpec::Reich { r: get("r")? },
            "kriete_maccluer" => WeightSpec::KrieteMaccluer {
                b: get("b")?,
                alpha: get("alpha")?,
                quad_tol: get("quad_tol").unwrap_or(default_quad_tol()),
            },
            "log_square" => WeightSpec::LogSquare { c: get("c")? },
            _ => return Err(Error::UnknownCatalog(name)),
        })
    }
}

pub(crate) fn split_spec(s: &str) -> Result<(String, Vec<(String, f64)>)> {
    let s = s.trim();
    let (name, rest) = match s.split_once(':') {
        Some((n, r)) => (n, r),
        None => (s, ""),
    };
    let mut params = Vec::new();
    for part in rest.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::InvalidParameter(format!("expected key=value, got `{part}`")))?;
        let v: f64 = v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("`{k}` is not a number: `{v}`")))?;
        params.push((k.trim().to_string(), v));
    }
    Ok((name.to_string(), params))
}

/// Optional analytic facts about a weight.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct WeightMeta {
    pub monotone_nonincreasing: bool,
    pub closed_form_description: Option<String>,
}

type MomentFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
enum Source {
    Catalog(WeightSpec),
    Table(Arc<Vec<f64>>),
    /// `g(s)` is G evaluated at s = 1 - t.
    Moment { g: MomentFn, quad_tol: f64 },
}

/// A positive sequence β with memoized evaluation.
pub struct WeightSequence {
    name: String,
    spec: Option<WeightSpec>,
    source: Source,
    cache: RwLock<Vec<f64>>,
    meta: WeightMeta,
}

impl fmt::Debug for WeightSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightSequence").field("name", &self.name).field("meta", &self.meta).finish()
    }
}

impl Clone for WeightSequence {
    fn clone(&self) -> Self {
        WeightSequence {
            name: self.name.clone(),
            spec: self.spec.clone(),
            source: self.source.clone(),
            cache: RwLock::new(self.cache.read().expect("cache poisoned").clone()),
            meta: self.meta.clone(),
        }
    }
}

/// Builds a catalog weight, validating its parameters.
pub fn make_weight(spec: &WeightSpec) -> Result<WeightSequence> {
    let pos = |name: &str, v: f64| -> Result<()> {
        if v.is_finite() && v > 0.0 {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("{name} must be positive, got {v}")))
        }
    };
    let (monotone, desc): (bool, Option<&str>) = match spec {
        WeightSpec::Hardy => (true, Some("1")),
        WeightSpec::Bergman => (true, Some("1/(n+1)")),
        WeightSpec::Dirichlet => (false, Some("n+1")),
        WeightSpec::Power { nu } => {
            if !nu.is_finite() {
                return Err(Error::InvalidParameter(format!("nu must be finite, got {nu}")));
            }
            (*nu >= 0.0, Some("(n+1)^(-nu)"))
        }
        WeightSpec::Alternating => (false, Some("1 for n = 2k, 1/(k+1) for n = 2k+1")),
        WeightSpec::Prop26Ex2 { delta } => {
            pos("delta", *delta)?;
            (true, Some("1/(k!)^delta for k! < n <= (k+1)!"))
        }
        WeightSpec::Prop26Ex3 => (false, Some("a_k/n on [a_k, b_k), n/a_{k+1} on [b_k, a_{k+1}), a_k = 4^(k^2)")),
        WeightSpec::Thm38Spiked => (false, Some("1/k! on (k!, (k+1)!], except 1/(k+1)! at (k+1)!-1")),
        WeightSpec::Reich { r } => {
            pos("r", *r)?;
            if *r >= 1.0 {
                return Err(Error::InvalidParameter(format!("r must be < 1, got {r}")));
            }
            (false, Some("pi n r^(2n), beta_0 = 1"))
        }
        WeightSpec::KrieteMaccluer { b, alpha, quad_tol } => {
            pos("b", *b)?;
            pos("alpha", *alpha)?;
            pos("quad_tol", *quad_tol)?;
            let (b, alpha) = (*b, *alpha);
            let g: MomentFn = Arc::new(move |s: f64| {
                // 1 - sqrt(1 - s) written without cancellation
                let d = s / (1.0 + (1.0 - s).max(0.0).sqrt());
                if d <= 0.0 {
                    0.0
                } else {
                    (-b / d.powf(alpha)).exp()
                }
            });
            let mut w = moment_weight("kriete_maccluer", g, *quad_tol)?;
            w.spec = Some(spec.clone());
            w.meta.closed_form_description = Some("int_0^1 t^n exp(-B/(1-sqrt t)^alpha) dt".into());
            return Ok(w);
        }
        WeightSpec::LogSquare { c } => {
            pos("c", *c)?;
            (true, Some("exp(-c log^2(n+1))"))
        }
        WeightSpec::Custom { table } => return custom_weight(table.clone()),
        WeightSpec::LogDips { len, dips } => {
            let mut w = custom_weight(log_dips(*len, dips)?)?;
            w.spec = Some(spec.clone());
            return Ok(w);
        }
    };
    Ok(WeightSequence {
        name: spec.to_string(),
        spec: Some(spec.clone()),
        source: Source::Catalog(spec.clone()),
        cache: RwLock::new(Vec::new()),
        meta: WeightMeta { monotone_nonincreasing: monotone, closed_form_description: desc.map(String::from) },
    })
}

/// A weight given by an explicit table β_0, β_1, …
pub fn custom_weight(table: Vec<f64>) -> Result<WeightSequence> {
    if table.is_empty() {
        return Err(Error::InvalidParameter("custom table is empty".into()));
    }
    if let Some((i, v)) = table.iter().enumerate().find(|(_, v)| !(v.is_finite() && **v > 0.0)) {
        return Err(Error::InvalidParameter(format!("custom table entry {i} is not positive: {v}")));
    }
    let monotone = table.windows(2).all(|w| w[1] <= w[0]);
    let w = WeightSequence {
        name: "custom".into(),
        spec: Some(WeightSpec::Custom { table: table.clone() }),
        source: Source::Table(Arc::new(table.clone())),
        cache: RwLock::new(Vec::new()),
        meta: WeightMeta { monotone_nonincreasing: monotone, closed_form_description: None },
    };
    if table.len() > 32 {
        let n = (table.len() as u64 - 1).min(1 << 10);
        let (min_root, ok) = w.root_test(n, ROOT_TOL)?;
        if !ok {
            return Err(Error::InvalidParameter(format!(
                "custom table fails the root test: min beta_n^(1/n) on [{}, {n}] is {min_root:.4}",
                n / 2
            )));
        }
    }
    Ok(w)
}

/// Tolerance of the root-test sanity check.
pub const ROOT_TOL: f64 = 0.05;

/// Table of length `len` with V-shaped dips in log scale. Each dip is
/// `[center, depth, half_width]` with depth and width measured in powers of 2;
/// overlapping dips take the deepest value.
pub fn log_dips(len: usize, dips: &[[f64; 3]]) -> Result<Vec<f64>> {
    for d in dips {
        if !(d[0] > 0.0 && d[1] >= 0.0 && d[2] > 0.0) {
            return Err(Error::InvalidParameter(format!("bad dip {d:?}")));
        }
    }
    Ok((0..len)
        .map(|n| {
            let x = (n.max(1) as f64).log2();
            let h = dips
                .iter()
                .map(|[c, depth, width]| {
                    let dist = (x - c.log2()).abs();
                    (depth * (1.0 - dist / width)).max(0.0)
                })
                .fold(0.0_f64, f64::max);
            (-h).exp2()
        })
        .collect())
}

/// Moment weight β_n = ∫₀¹ tⁿ G(1−t) dt, with `g(s) = G(s)` for s = 1 − t.
/// Uses the substitution t = 1 − s² so that mild blow-up of G near s = 0 is tamed.
pub fn moment_weight(name: &str, g: MomentFn, quad_tol: f64) -> Result<WeightSequence> {
    if !(quad_tol > 0.0) {
        return Err(Error::InvalidParameter(format!("quad_tol must be positive, got {quad_tol}")));
    }
    Ok(WeightSequence {
        name: name.to_string(),
        spec: None,
        source: Source::Moment { g, quad_tol },
        cache: RwLock::new(Vec::new()),
        meta: WeightMeta { monotone_nonincreasing: true, closed_form_description: None },
    })
}

fn factorial_u128(k: u32) -> u128 {
    (1..=k as u128).product()
}

impl WeightSequence {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn spec(&self) -> Option<&WeightSpec> {
        self.spec.as_ref()
    }

    pub fn meta(&self) -> &WeightMeta {
        &self.meta
    }

    /// β_n.
    pub fn eval(&self, n: u64) -> Result<f64> {
        if let Some(v) = self.cache.read().expect("cache poisoned").get(n as usize) {
            return Ok(*v);
        }
        let v = self.raw(n)?;
        if n < CACHE_CAP {
            let mut c = self.cache.write().expect("cache poisoned");
            if c.len() as u64 == n {
                self.check_monotone(&c, n, v)?;
                c.push(v);
            }
        }
        Ok(v)
    }

    /// β_0, …, β_N (N + 1 values).
    pub fn values(&self, n_max: u64) -> Result<Vec<f64>> {
        {
            let c = self.cache.read().expect("cache poisoned");
            if c.len() as u64 > n_max {
                return Ok(c[..=n_max as usize].to_vec());
            }
        }
        let mut out = self.cache.read().expect("cache poisoned").clone();
        while (out.len() as u64) <= n_max {
            let n = out.len() as u64;
            let v = self.raw(n)?;
            self.check_monotone(&out, n, v)?;
            out.push(v);
        }
        if n_max < CACHE_CAP {
            let mut c = self.cache.write().expect("cache poisoned");
            if c.len() < out.len() {
                *c = out.clone();
            }
        }
        Ok(out)
    }

    /// ln β_n, accurate even where β_n underflows.
    pub fn ln_eval(&self, n: u64) -> Result<f64> {
        if let Source::Catalog(WeightSpec::Reich { r }) = &self.source {
            if n == 0 {
                return Ok(0.0);
            }
            return Ok(std::f64::consts::PI.ln() + (n as f64).ln() + 2.0 * n as f64 * r.ln());
        }
        Ok(self.eval(n)?.ln())
    }

    fn check_monotone(&self, prev: &[f64], n: u64, v: f64) -> Result<()> {
        if let Source::Moment { quad_tol, .. } = &self.source {
            if n > 0 {
                let p = prev[n as usize - 1];
                if v > p * (1.0 + 4.0 * quad_tol) {
                    return Err(Error::Quadrature {
                        msg: format!("moment weight not non-increasing at n={n}: {v} > {p}"),
                        trace: vec![],
                    });
                }
            }
        }
        Ok(())
    }

    /// Root-test sanity check: min over n ∈ [N/2, N] of β_n^{1/n} ≥ 1 − tol.
    pub fn root_test(&self, n_max: u64, tol: f64) -> Result<(f64, bool)> {
        let lo = (n_max / 2).max(1);
        let mut m = f64::INFINITY;
        for n in lo..=n_max {
            m = m.min((self.ln_eval(n)? / n as f64).exp());
        }
        Ok((m, m >= 1.0 - tol))
    }

    fn raw(&self, n: u64) -> Result<f64> {
        let v = match &self.source {
            Source::Table(t) => *t.get(n as usize).ok_or(Error::OutOfTable { index: n, len: t.len() })?,
            Source::Moment { g, quad_tol } => moment(g, n, *quad_tol)?,
            Source::Catalog(spec) => catalog_value(spec, n)?,
        };
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::InvalidParameter(format!("{} gives non-positive or non-finite beta_{n} = {v}", self.name)));
        }
        Ok(v)
    }
}

fn catalog_value(spec: &WeightSpec, n: u64) -> Result<f64> {
    let nf = n as f64;
    Ok(match spec {
        WeightSpec::Hardy => 1.0,
        WeightSpec::Bergman => 1.0 / (nf + 1.0),
        WeightSpec::Dirichlet => nf + 1.0,
        WeightSpec::Power { nu } => (nf + 1.0).powf(-nu),
        WeightSpec::Alternating => {
            if n.is_multiple_of(2) {
                1.0
            } else {
                1.0 / ((n / 2) as f64 + 1.0)
            }
        }
        WeightSpec::Prop26Ex2 { delta } => {
            if n <= 1 {
                1.0
            } else {
                // k! < n <= (k+1)!
                let mut k = 1u32;
                while factorial_u128(k + 1) < n as u128 {
                    k += 1;
                }
                (factorial_u128(k) as f64).powf(-delta)
            }
        }
        WeightSpec::Prop26Ex3 => {
            if n == 0 {
                1.0
            } else {
                // a_k = 2^(2k^2), b_k = 2^(2k^2+2k+1); find a_k <= n < a_{k+1}
                let log2n = 63 - n.leading_zeros() as u64;
                let mut k = 0u64;
                while 2 * (k + 1) * (k + 1) <= log2n {
                    k += 1;
                }
                // k <= 5 here, so b_k = 2^(2k^2+2k+1) fits in 64 bits
                let bk_exp = 2 * k * k + 2 * k + 1;
                if n >= 1u64 << bk_exp {
                    let a_next_exp = 2 * (k + 1) * (k + 1);
                    if a_next_exp >= 64 {
                        return Err(Error::IndexOverflow {
                            index: n,
                            reason: format!("a_{} = 2^{a_next_exp} exceeds 64 bits", k + 1),
                        });
                    }
                    nf / (a_next_exp as f64).exp2()
                } else {
                    ((2 * k * k) as f64).exp2() / nf
                }
            }
        }
        WeightSpec::Thm38Spiked => {
            if n <= 6 {
                1.0
            } else {
                let mut k = 3u32;
                while factorial_u128(k + 1) < n as u128 {
                    k += 1;
                }
                let next = factorial_u128(k + 1);
                if n as u128 == next - 1 {
                    1.0 / next as f64
                } else {
                    1.0 / factorial_u128(k) as f64
                }
            }
        }
        WeightSpec::Reich { r } => {
            if n == 0 {
                1.0
            } else {
                std::f64::consts::PI * nf * r.powf(2.0 * nf)
            }
        }
        WeightSpec::LogSquare { c } => {
            let l = (nf + 1.0).ln();
            (-c * l * l).exp()
        }
        WeightSpec::KrieteMaccluer { .. } | WeightSpec::Custom { .. } | WeightSpec::LogDips { .. } => {
            unreachable!("handled by other sources")
        }
    })
}

fn moment(g: &MomentFn, n: u64, quad_tol: f64) -> Result<f64> {
    let nf = n as f64;
    let f = |s: f64| {
        let s2 = s * s;
        if s2 >= 1.0 {
            return if n == 0 { 2.0 * s * g(s2) } else { 0.0 };
        }
        (nf * (-s2).ln_1p()).exp() * g(s2) * 2.0 * s
    };
    // split near the peak of (1-s^2)^n so the adaptive rule sees the bulk
    let peak = if n > 0 { (1.0 / (nf + 1.0)).sqrt().min(0.5) } else { 0.5 };
    let mut total = 0.0;
    for (a, b) in [(0.0, peak), (peak, 1.0)] {
        let r = quad::adaptive(f, a, b, quad_tol * 0.25, 0.0, 4000).map_err(|e| Error::Quadrature {
            msg: format!("moment n={n} on [{a}, {b}]"),
            trace: e.trace,
        })?;
        total += r.value;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_formulas() {
        let w = make_weight(&WeightSpec::Bergman).unwrap();
        assert_eq!(w.eval(5).unwrap(), 1.0 / 6.0);
        let w = make_weight(&WeightSpec::Dirichlet).unwrap();
        assert_eq!(w.eval(4).unwrap(), 5.0);
        let w = make_weight(&WeightSpec::Alternating).unwrap();
        assert_eq!(w.values(5).unwrap(), vec![1.0, 1.0, 1.0, 0.5, 1.0, 1.0 / 3.0]);
    }

    #[test]
    fn prop26_ex2_blocks() {
        let w = make_weight(&WeightSpec::Prop26Ex2 { delta: 1.0 }).unwrap();
        let v = w.values(25).unwrap();
        assert_eq!(&v[..3], &[1.0, 1.0, 1.0]);
        assert!(v[3..=6].iter().all(|x| *x == 0.5));
        assert!(v[7..=24].iter().all(|x| *x == 1.0 / 6.0));
        assert_eq!(v[25], 1.0 / 24.0);
    }

    #[test]
    fn prop26_ex3_breakpoints() {
        let w = make_weight(&WeightSpec::Prop26Ex3).unwrap();
        for k in 0..5u32 {
            let ak = 4f64.powi((k * k) as i32);
            let ak1 = 4f64.powi(((k + 1) * (k + 1)) as i32);
            let bk = (ak * ak1).sqrt();
            let v = w.eval(bk as u64).unwrap();
            assert!((v - (ak / ak1).sqrt()).abs() <= 1e-15 * v, "k={k}");
            assert!((w.eval(ak as u64).unwrap() - 1.0).abs() < 1e-15);
        }
        assert!(matches!(w.eval(1u64 << 61), Err(Error::IndexOverflow { .. })));
        assert!(w.eval((1u64 << 61) - 1).is_ok());
    }

    #[test]
    fn spiked_values() {
        let w = make_weight(&WeightSpec::Thm38Spiked).unwrap();
        assert_eq!(w.eval(6).unwrap(), 1.0);
        assert_eq!(w.eval(7).unwrap(), 1.0 / 6.0);
        for k in 3u32..9 {
            let f1 = factorial_u128(k + 1) as u64;
            assert_eq!(w.eval(f1 - 1).unwrap(), 1.0 / f1 as f64);
            assert_eq!(w.eval(f1).unwrap(), 1.0 / factorial_u128(k) as f64);
            assert_eq!(w.eval(f1 - 2).unwrap(), 1.0 / factorial_u128(k) as f64);
        }
    }

    #[test]
    fn parameter_errors() {
        assert!(make_weight(&WeightSpec::Reich { r: 1.5 }).is_err());
        assert!(make_weight(&WeightSpec::Prop26Ex2 { delta: 0.0 }).is_err());
        assert!(make_weight(&WeightSpec::Custom { table: vec![1.0, -1.0] }).is_err());
        assert!(matches!("nosuch".parse::<WeightSpec>(), Err(Error::UnknownCatalog(_))));
    }

    #[test]
    fn spec_strings_roundtrip() {
        for s in ["hardy", "power:nu=0.5", "prop26_ex2:delta=1", "reich:r=0.5", "log_square:c=0.25"] {
            let spec: WeightSpec = s.parse().unwrap();
            assert_eq!(spec.to_string().parse::<WeightSpec>().unwrap(), spec);
        }
    }

    #[test]
    fn moment_constant_densities() {
        let w = moment_weight("one", Arc::new(|_| 1.0), 1e-12).unwrap();
        let w2 = moment_weight("two", Arc::new(|_| 2.0), 1e-12).unwrap();
        for n in [0u64, 1, 5, 100, 4000] {
            let e = 1.0 / (n as f64 + 1.0);
            assert!((w.eval(n).unwrap() - e).abs() < 1e-11 * e);
            assert!((w2.eval(n).unwrap() - 2.0 * e).abs() < 1e-11 * e);
        }
    }

    #[test]
    fn moment_singular_density() {
        // G(s) = s^(-1/2): beta_n = B(n+1, 1/2)
        let w = moment_weight("sing", Arc::new(|s: f64| s.powf(-0.5)), 1e-11).unwrap();
        let mut expect = 2.0; // B(1, 1/2)
        for n in 0..20u64 {
            let v = w.eval(n).unwrap();
            assert!((v - expect).abs() < 1e-9 * expect, "n={n} {v} {expect}");
            expect *= (n as f64 + 1.0) / (n as f64 + 1.5);
        }
    }

    #[test]
    fn log_dips_shape() {
        let t = log_dips(64, &[[4.0, 1.0, 1.0], [32.0, 2.0, 2.0]]).unwrap();
        assert_eq!(t[4], 0.5);
        assert_eq!(t[8], 1.0);
        assert_eq!(t[32], 0.25);
        assert_eq!(t[2], 1.0);
    }
}
