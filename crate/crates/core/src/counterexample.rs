//! Staged Blaschke product φ = Π T_{a_k}(z^{n_k}) whose composition operator is unbounded
//! on a slowly oscillating weight that is not essentially decreasing.

use crate::coeffs::{self, TailN};
use crate::error::{Error, Result};
use crate::operator;
use crate::symbols::{make_symbol, Symbol, SymbolSpec};
use crate::weights::{classify, Property, Verdict, WeightSequence};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CounterexampleOptions {
    pub k_max: usize,
    pub epsilon: f64,
    /// Powers whose tails are measured directly; larger powers rely on the analytic bound.
    pub p_max: u32,
    /// Largest index the search may use.
    pub max_index: u64,
    /// Compute masses Σ_{j=n_k}^{2n_k} |φ̂^{m_k}(j)|² for each stage.
    pub masses: bool,
}

impl Default for CounterexampleOptions {
    fn default() -> Self {
        CounterexampleOptions { k_max: 3, epsilon: (-15.0f64).exp2(), p_max: 8, max_index: 1 << 16, masses: true }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Stage {
    pub k: usize,
    pub m_k: u64,
    pub n_k: u64,
    /// Tail index certified for u_k = φ_1⋯φ_k; absent for the last stage.
    #[serde(rename = "N_k")]
    pub tail_n: Option<u64>,
    pub a_k: f64,
    /// max_{p ≤ p_max} Σ_{j ≥ N_k p} |û_k^p(j)|² at the certified N_k.
    pub tail_bound: Option<f64>,
    pub analytic_tail_n: Option<u64>,
    /// β_{n_k}/β_{m_k}.
    pub weight_ratio: f64,
    /// Σ_{j=n_k}^{2n_k} |φ̂^{m_k}(j)|² for the truncated product.
    pub mass: Option<f64>,
    /// Σ_{j=n_k}^{2n_k} |φ̂^{m_k}(j)|² β_j/β_{m_k}, a lower bound for ‖C_φ e_{m_k}‖²/‖e_{m_k}‖².
    pub column_lower_bound: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CounterexamplePlan {
    pub weight_id: String,
    pub epsilon: f64,
    pub p_max: u32,
    pub max_index: u64,
    pub stages: Vec<Stage>,
    /// Σ_k (1 − a_k) = Σ_k 1/m_k.
    pub sum_one_minus_a: f64,
    /// |T_{a_k}(z^{n_k}) − 1| ≤ factor_k/(1 − |z|) with factor_k = 2(1 − a_k).
    pub tail_factors: Vec<f64>,
    /// Whether n_1 ≥ N_0 m_1 was imposed; N_0 plays no role in the mass estimate since v_1 = 1.
    pub n0_enforced: bool,
    pub symbol: SymbolSpec,
}

impl CounterexamplePlan {
    /// Structural invariants: growth of (m_k), (n_k), the weight ratios, a_k and the tail bounds.
    pub fn check_invariants(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Precondition(msg));
        for (i, s) in self.stages.iter().enumerate() {
            if s.k != i + 1 || s.m_k < 4 || s.n_k <= s.m_k {
                return fail(format!("stage {} has bad indices", s.k));
            }
            if (s.a_k - (1.0 - 1.0 / s.m_k as f64)).abs() > 1e-15 {
                return fail(format!("stage {}: a_k != 1 - 1/m_k", s.k));
            }
            if s.weight_ratio < (s.k as f64).exp2() * (1.0 - 1e-12) {
                return fail(format!("stage {}: weight ratio {} below 2^k", s.k, s.weight_ratio));
            }
            if let Some(t) = s.tail_bound {
                if t > self.epsilon {
                    return fail(format!("stage {}: tail {t:e} above epsilon", s.k));
                }
            }
            if i > 0 {
                let p = &self.stages[i - 1];
                if s.m_k < 4 * p.m_k || s.n_k < 4 * p.n_k {
                    return fail(format!("stage {} does not grow fourfold", s.k));
                }
                match p.tail_n {
                    Some(nt) if s.n_k >= nt * s.m_k => {}
                    _ => return fail(format!("stage {}: n_k < N_(k-1) m_k", s.k)),
                }
            }
        }
        if self.sum_one_minus_a > 1.0 / 3.0 + 1e-15 {
            return fail(format!("sum of 1 - a_k = {} exceeds 1/3", self.sum_one_minus_a));
        }
        Ok(())
    }
}

/// Smallest m ≥ m_lo (then smallest n) with n ≥ max(n_lo, c·m), n > m and β_n ≥ ratio·β_m, n ≤ max_index.
fn find_pair(beta: &[f64], m_lo: u64, n_lo: u64, c: u64, ratio: f64) -> Option<(u64, u64)> {
    let len = beta.len();
    let mut suffix = vec![0.0_f64; len + 1];
    for i in (0..len).rev() {
        suffix[i] = suffix[i + 1].max(beta[i]);
    }
    for m in m_lo as usize..len {
        let lo = (n_lo as usize).max(c as usize * m).max(m + 1);
        if lo >= len {
            break;
        }
        let target = ratio * beta[m];
        if suffix[lo] >= target {
            let n = (lo..len).find(|&n| beta[n] >= target).expect("suffix max attained");
            return Some((m as u64, n as u64));
        }
    }
    None
}

fn product_spec(stages: &[(u64, u64)]) -> SymbolSpec {
    let factors = stages.iter().map(|&(m, n)| SymbolSpec::blaschke(1.0 - 1.0 / m as f64, n as u32)).collect();
    SymbolSpec::Product { factors }
}

pub fn build_counterexample(w: &WeightSequence, opts: &CounterexampleOptions) -> Result<(Symbol, CounterexamplePlan)> {
    if opts.k_max == 0 || !(opts.epsilon > 0.0 && opts.epsilon < 1.0) || opts.max_index < 16 {
        return Err(Error::InvalidParameter("counterexample needs k_max >= 1, eps in (0,1), max_index >= 16".into()));
    }
    if opts.max_index > u32::MAX as u64 {
        return Err(Error::IndexOverflow { index: opts.max_index, reason: "exponents must fit in 32 bits".into() });
    }
    let window = opts.max_index;
    let so = classify(w, Property::SlowlyOscillating, window)?;
    if so.verdict != Verdict::HoldsUpToN {
        return Err(Error::Precondition(format!("{} is not slowly oscillating up to {window}", w.name())));
    }
    let ed = classify(w, Property::EssentiallyDecreasing, window)?;
    let need = (opts.k_max as f64).exp2();
    if ed.ratio < need {
        return Err(Error::SearchCap(format!(
            "largest ratio β_n/β_m (n > m) up to {window} is {} < 2^{}",
            ed.ratio, opts.k_max
        )));
    }
    let beta = w.values(window)?;

    let mut picked: Vec<(u64, u64)> = Vec::new();
    let mut stages: Vec<Stage> = Vec::new();
    let mut prev_tail_n: u64 = 1;
    for k in 1..=opts.k_max {
        let (m_lo, n_lo) = match picked.last() {
            Some(&(m, n)) => (4 * m, 4 * n),
            None => (4, 5),
        };
        let ratio = (k as f64).exp2();
        let (m, n) = find_pair(&beta, m_lo, n_lo, prev_tail_n, ratio).ok_or_else(|| {
            Error::SearchCap(format!(
                "stage {k}: no m >= {m_lo}, n >= max({n_lo}, {prev_tail_n} m) with β_n >= 2^{k} β_m up to {window}"
            ))
        })?;
        picked.push((m, n));
        let mut stage = Stage {
            k,
            m_k: m,
            n_k: n,
            tail_n: None,
            a_k: 1.0 - 1.0 / m as f64,
            tail_bound: None,
            analytic_tail_n: None,
            weight_ratio: beta[n as usize] / beta[m as usize],
            mass: None,
            column_lower_bound: None,
        };
        if k < opts.k_max {
            let u = make_symbol(&product_spec(&picked))?;
            let t: TailN = coeffs::find_tail_n(&u, opts.epsilon, opts.p_max)?;
            stage.tail_n = Some(t.n);
            stage.analytic_tail_n = Some(t.analytic_n);
            stage.tail_bound = Some(t.tails.iter().cloned().fold(0.0, f64::max));
            prev_tail_n = t.n;
        }
        stages.push(stage);
    }

    let spec = product_spec(&picked);
    let phi = make_symbol(&spec)?;
    if opts.masses {
        for s in stages.iter_mut() {
            let (lo, hi) = (s.n_k as usize, 2 * s.n_k as usize);
            let mass = operator::coefficient_mass(&phi, s.m_k as u32, lo, hi)?;
            let cv = coeffs::convolution_power(&phi, s.m_k as u32, hi + 1)?;
            let bm = beta[s.m_k as usize];
            let col: f64 = (lo..=hi).map(|j| cv.values[j].norm_sqr() * w.eval(j as u64).unwrap_or(0.0) / bm).sum();
            s.mass = Some(mass);
            s.column_lower_bound = Some(col);
        }
    }
    let plan = CounterexamplePlan {
        weight_id: w.name().to_string(),
        epsilon: opts.epsilon,
        p_max: opts.p_max,
        max_index: opts.max_index,
        sum_one_minus_a: stages.iter().map(|s| 1.0 / s.m_k as f64).sum(),
        tail_factors: stages.iter().map(|s| 2.0 * (1.0 - s.a_k)).collect(),
        stages,
        n0_enforced: false,
        symbol: spec,
    };
    plan.check_invariants()?;
    Ok((phi, plan))
}

/// Slowly oscillating test table with β_4 = 1/2, β_32 = 1/4 and β = 1 on [8, 16] and from 128 on.
pub fn desk_weight_table(len: usize) -> Result<Vec<f64>> {
    crate::weights::log_dips(len, &[[4.0, 1.0, 1.0], [32.0, 2.0, 2.0]])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_search() {
        let beta = desk_weight_table(4096).unwrap();
        assert_eq!(find_pair(&beta, 4, 5, 1, 2.0), Some((4, 8)));
        assert_eq!(find_pair(&beta, 16, 32, 10, 4.0), Some((32, 320)));
        assert_eq!(find_pair(&beta, 128, 512, 1, 8.0), None);
    }
}
