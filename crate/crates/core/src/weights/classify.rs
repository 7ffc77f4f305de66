//! Finite-window classifiers for the regularity notions of a weight.
//!
//! Every verdict is "up to N": the extremal constant of the defining ratio is
//! computed exactly over the window, and the property is declared to fail when
//! that constant exceeds a configured bound.

use super::WeightSequence;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    EssentiallyDecreasing,
    SlowlyOscillating,
    PolynomialDecay,
    PolynomialGrowth,
    WeaklyDecreasing,
}

impl std::str::FromStr for Property {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.replace('_', "-").as_str() {
            "essentially-decreasing" | "ed" => Property::EssentiallyDecreasing,
            "slowly-oscillating" | "so" => Property::SlowlyOscillating,
            "polynomial-decay" => Property::PolynomialDecay,
            "polynomial-growth" => Property::PolynomialGrowth,
            "weakly-decreasing" | "wd" => Property::WeaklyDecreasing,
            _ => return Err(Error::InvalidParameter(format!("unknown property `{s}`"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    HoldsUpToN,
    FailsWithWitness,
}

/// Best constant found on the window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum Constant {
    /// β_m ≤ C β_n form.
    Upper { c_upper: f64 },
    /// c ≤ β_m/β_n ≤ C.
    Pair { c_lower: f64, c_upper: f64 },
    /// β_n ≥ c n^{−α} (decay) or β_n ≤ c n^{α} (growth).
    Envelope { c: f64, exponent: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaReport {
    pub delta: f64,
    pub constant: f64,
    pub witness_m: Option<u64>,
    pub witness_n: Option<u64>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub property: Property,
    pub window: u64,
    pub verdict: Verdict,
    pub constant: Constant,
    pub witness_m: Option<u64>,
    pub witness_n: Option<u64>,
    /// Value of the defining ratio at the witness pair (the extremum).
    pub ratio: f64,
    /// Always false: the scan is exhaustive at every window size.
    pub subsampled: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub per_delta: Vec<DeltaReport>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassifyOptions {
    /// A ratio property fails when its extremal constant exceeds this.
    pub ratio_bound: f64,
    /// A polynomial envelope fails when its exponent exceeds this.
    pub exponent_bound: f64,
    pub deltas: Vec<f64>,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { ratio_bound: 4.0, exponent_bound: 8.0, deltas: vec![0.125, 0.25, 0.5, 1.0] }
    }
}

pub fn classify(w: &WeightSequence, property: Property, n_max: u64) -> Result<ClassificationReport> {
    classify_with(w, property, n_max, &ClassifyOptions::default())
}

pub fn classify_with(
    w: &WeightSequence,
    property: Property,
    n_max: u64,
    opts: &ClassifyOptions,
) -> Result<ClassificationReport> {
    if n_max < 16 {
        return Err(Error::WindowTooSmall(format!("window {n_max} < 16")));
    }
    let beta = w.values(n_max)?;
    let report = match property {
        Property::EssentiallyDecreasing => {
            let (c, m, n) = suffix_ratio(&beta, |n| n);
            ratio_report(property, n_max, Constant::Upper { c_upper: c }, c, Some((m, n)), opts)
        }
        Property::SlowlyOscillating => {
            let (c_up, m, n) = slow_oscillation(&beta);
            ratio_report(
                property,
                n_max,
                Constant::Pair { c_lower: 1.0 / c_up, c_upper: c_up },
                c_up,
                Some((m, n)),
                opts,
            )
        }
        Property::PolynomialDecay | Property::PolynomialGrowth => {
            let sign = if property == Property::PolynomialDecay { 1.0 } else { -1.0 };
            let ln: Vec<f64> = (0..=n_max).map(|n| w.ln_eval(n)).collect::<Result<_>>()?;
            let (exponent, c, wn) = envelope(&ln, sign);
            let holds = exponent <= opts.exponent_bound;
            ClassificationReport {
                property,
                window: n_max,
                verdict: if holds { Verdict::HoldsUpToN } else { Verdict::FailsWithWitness },
                constant: Constant::Envelope { c, exponent },
                witness_m: Some(1),
                witness_n: Some(wn),
                ratio: exponent,
                subsampled: false,
                per_delta: vec![],
            }
        }
        Property::WeaklyDecreasing => {
            let mut per = Vec::new();
            for &d in &opts.deltas {
                if !(d > 0.0) {
                    return Err(Error::InvalidParameter(format!("delta must be positive, got {d}")));
                }
                let (c, m, n) = suffix_ratio(&beta, |n| ((1.0 + d) * n as f64).floor() as usize + 1);
                let found = c > 0.0;
                per.push(DeltaReport {
                    delta: d,
                    constant: c,
                    witness_m: found.then_some(m),
                    witness_n: found.then_some(n),
                    holds: c <= opts.ratio_bound,
                });
            }
            let worst = per
                .iter()
                .max_by(|a, b| a.constant.total_cmp(&b.constant))
                .cloned()
                .ok_or_else(|| Error::InvalidParameter("empty delta grid".into()))?;
            let holds = per.iter().all(|d| d.holds);
            ClassificationReport {
                property,
                window: n_max,
                verdict: if holds { Verdict::HoldsUpToN } else { Verdict::FailsWithWitness },
                constant: Constant::Upper { c_upper: worst.constant },
                witness_m: worst.witness_m,
                witness_n: worst.witness_n,
                ratio: worst.constant,
                subsampled: false,
                per_delta: per,
            }
        }
    };
    Ok(report)
}

fn ratio_report(
    property: Property,
    window: u64,
    constant: Constant,
    ratio: f64,
    witness: Option<(u64, u64)>,
    opts: &ClassifyOptions,
) -> ClassificationReport {
    let holds = ratio <= opts.ratio_bound;
    ClassificationReport {
        property,
        window,
        verdict: if holds { Verdict::HoldsUpToN } else { Verdict::FailsWithWitness },
        constant,
        witness_m: witness.map(|w| w.0),
        witness_n: witness.map(|w| w.1),
        ratio,
        subsampled: false,
        per_delta: vec![],
    }
}

/// max over n and m ≥ start(n) of β_m/β_n, with the first maximizing pair
/// (smallest n, then smallest m). Returns 0 if no pair is admissible.
fn suffix_ratio(beta: &[f64], start: impl Fn(usize) -> usize) -> (f64, u64, u64) {
    let len = beta.len();
    // suffix argmax, smallest index on ties
    let mut arg = vec![0usize; len];
    arg[len - 1] = len - 1;
    for i in (0..len - 1).rev() {
        let j = arg[i + 1];
        arg[i] = if beta[i] >= beta[j] { i } else { j };
    }
    let mut best = (0.0, 0u64, 0u64);
    for n in 0..len {
        let s = start(n);
        if s >= len {
            continue;
        }
        let m = arg[s];
        let r = beta[m] / beta[n];
        if r > best.0 {
            best = (r, m as u64, n as u64);
        }
    }
    best
}

/// max over 1 ≤ n ≤ N of max_{n/2 ≤ m ≤ 2n, m ≤ N} β_m/β_n.
/// The window of admissible m slides monotonically, so a deque gives it exactly.
fn slow_oscillation(beta: &[f64]) -> (f64, u64, u64) {
    let n_max = beta.len() - 1;
    let mut dq: VecDeque<usize> = VecDeque::new();
    let mut next = 1usize;
    let mut best = (0.0, 0u64, 0u64);
    for n in 1..=n_max {
        let hi = (2 * n).min(n_max);
        let lo = n.div_ceil(2);
        while next <= hi {
            while let Some(&b) = dq.back() {
                if beta[b] < beta[next] {
                    dq.pop_back();
                } else {
                    break;
                }
            }
            dq.push_back(next);
            next += 1;
        }
        while let Some(&f) = dq.front() {
            if f < lo {
                dq.pop_front();
            } else {
                break;
            }
        }
        let m = *dq.front().expect("window is never empty");
        let r = beta[m] / beta[n];
        if r > best.0 {
            best = (r, m as u64, n as u64);
        }
    }
    best
}

/// Exponent of the best power envelope anchored at β_1, clamped at 0.
/// `sign = 1` for decay (β_n ≥ c n^{−α}), `-1` for growth (β_n ≤ C n^{γ}).
fn envelope(ln_beta: &[f64], sign: f64) -> (f64, f64, u64) {
    let mut exponent = 0.0;
    let mut wn = 1u64;
    for (n, l) in ln_beta.iter().enumerate().skip(2) {
        let e = sign * (ln_beta[1] - l) / (n as f64).ln();
        if e > exponent {
            exponent = e;
            wn = n as u64;
        }
    }
    let mut c: f64 = if sign > 0.0 { f64::INFINITY } else { 0.0 };
    for (n, l) in ln_beta.iter().enumerate().skip(1) {
        let v = (l + sign * exponent * (n as f64).ln()).exp();
        c = if sign > 0.0 { c.min(v) } else { c.max(v) };
    }
    (exponent, c, wn)
}

/// Polynomial envelopes implied by a slow-oscillation certificate (c, C):
/// β_n ≥ c·β_1·n^{−α} with α = log(1/c)/log 2 and β_n ≤ C·β_1·n^{γ} with γ = log C/log 2.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SoEnvelopes {
    pub c_lower: f64,
    pub c_upper: f64,
    pub alpha: f64,
    pub gamma: f64,
    pub decay_holds: bool,
    pub growth_holds: bool,
    /// min over n of β_n / (c β_1 n^{−α}); ≥ 1 when the envelope is valid.
    pub decay_margin: f64,
    /// min over n of (C β_1 n^{γ}) / β_n; ≥ 1 when the envelope is valid.
    pub growth_margin: f64,
}

pub fn so_envelopes(w: &WeightSequence, n_max: u64) -> Result<SoEnvelopes> {
    let so = classify(w, Property::SlowlyOscillating, n_max)?;
    let (c_lower, c_upper) = match so.constant {
        Constant::Pair { c_lower, c_upper } => (c_lower, c_upper),
        _ => unreachable!("slow oscillation reports a pair"),
    };
    let alpha = (1.0 / c_lower).ln() / 2f64.ln();
    let gamma = c_upper.ln() / 2f64.ln();
    let b1 = w.eval(1)?;
    let mut decay_margin = f64::INFINITY;
    let mut growth_margin = f64::INFINITY;
    for n in 1..=n_max {
        let b = w.eval(n)?;
        let nf = n as f64;
        decay_margin = decay_margin.min(b / (c_lower * b1 * nf.powf(-alpha)));
        growth_margin = growth_margin.min(c_upper * b1 * nf.powf(gamma) / b);
    }
    let slack = 1.0 - 1e-12;
    Ok(SoEnvelopes {
        c_lower,
        c_upper,
        alpha,
        gamma,
        decay_holds: decay_margin >= slack,
        growth_holds: growth_margin >= slack,
        decay_margin,
        growth_margin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::{custom_weight, make_weight, WeightSpec};

    fn brute_so(beta: &[f64]) -> f64 {
        let n_max = beta.len() - 1;
        let mut best: f64 = 0.0;
        for n in 1..=n_max {
            for m in n.div_ceil(2)..=(2 * n).min(n_max) {
                best = best.max(beta[m] / beta[n]);
            }
        }
        best
    }

    #[test]
    fn dirichlet_slowly_oscillates() {
        let w = make_weight(&WeightSpec::Dirichlet).unwrap();
        let r = classify(&w, Property::SlowlyOscillating, 4096).unwrap();
        assert_eq!(r.verdict, Verdict::HoldsUpToN);
        if let Constant::Pair { c_lower, c_upper } = r.constant {
            assert!(c_lower >= 0.5 && c_upper <= 2.0);
        } else {
            panic!()
        }
    }

    #[test]
    fn alternating_fails_ed_with_ratio_k() {
        let w = make_weight(&WeightSpec::Alternating).unwrap();
        let r = classify(&w, Property::EssentiallyDecreasing, 1000).unwrap();
        assert_eq!(r.verdict, Verdict::FailsWithWitness);
        // beta_{2k}/beta_{2k-1} = k, largest k with 2k <= 1000
        assert_eq!(r.ratio, 500.0);
        let (m, n) = (r.witness_m.unwrap(), r.witness_n.unwrap());
        assert_eq!(w.eval(m).unwrap() / w.eval(n).unwrap(), r.ratio);
    }

    #[test]
    fn deque_matches_brute_force() {
        let t: Vec<f64> = (0..300).map(|i| 1.0 + ((i * 7919) % 13) as f64).collect();
        let w = custom_weight(t.clone()).unwrap();
        let r = classify(&w, Property::SlowlyOscillating, 299).unwrap();
        assert_eq!(r.ratio, brute_so(&t));
    }

    #[test]
    fn window_too_small() {
        let w = make_weight(&WeightSpec::Hardy).unwrap();
        assert!(matches!(classify(&w, Property::SlowlyOscillating, 3), Err(Error::WindowTooSmall(_))));
    }

    #[test]
    fn json_fields() {
        let w = make_weight(&WeightSpec::Bergman).unwrap();
        let r = classify(&w, Property::EssentiallyDecreasing, 64).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        for k in ["property", "window", "verdict", "constant", "witness_m", "witness_n", "ratio"] {
            assert!(v.get(k).is_some(), "{k}");
        }
    }
}
