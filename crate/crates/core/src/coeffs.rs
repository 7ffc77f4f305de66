//! Taylor coefficients φ̂ⁿ(m) of symbol powers with error and tail certificates.

use crate::error::{Error, Result};
use crate::symbols::Symbol;
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::sync::Arc;

type C = Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// DFT of boundary samples φ(e^{ix})ⁿ.
    BoundaryFft,
    /// DFT on the interior circle |z| = r, rescaled by r^{−m}.
    InteriorFft,
    /// Repeated truncated Cauchy products of the Taylor series.
    ConvolutionPower,
}

/// Truncated coefficient array of φⁿ.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoeffVector {
    pub power: u32,
    pub values: Vec<C>,
    /// Upper bound on Σ_{m ≥ M} |φ̂ⁿ(m)|².
    pub tail_bound: f64,
    pub method: Method,
    pub grid_size: usize,
    /// Sampling radius (1 for the boundary).
    pub radius: f64,
    /// Per-coefficient error estimate: max of grid agreement, alias bound and rounding.
    pub error: f64,
    /// Analytic alias bound at the accepted grid (∞ when uninformative).
    pub alias_bound: f64,
    /// Whether the analytic alias bound is below the requested tolerance.
    pub alias_certified: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoeffOptions {
    pub tol: f64,
    pub grid_cap: usize,
    /// Interior radius; `None` picks max(1 − 2⁻⁸, 1 − 1/M) … see `interior_radius`.
    pub interior_r: Option<f64>,
    /// Force a method instead of choosing from the symbol's metadata.
    pub method: Option<Method>,
}

impl Default for CoeffOptions {
    fn default() -> Self {
        CoeffOptions { tol: 1e-10, grid_cap: 1 << 24, interior_r: None, method: None }
    }
}

impl CoeffOptions {
    pub fn with_tol(tol: f64) -> Self {
        CoeffOptions { tol, ..Default::default() }
    }
}

/// r = 1 − 2⁻⁸ while the amplification r^{−M} stays below e; beyond that r = 1 − 1/M.
pub fn interior_radius(m_len: usize) -> f64 {
    let r0 = 1.0 - 2f64.powi(-8);
    if m_len <= 256 {
        r0
    } else {
        1.0 - 1.0 / m_len as f64
    }
}

pub fn default_method(phi: &Symbol) -> Method {
    if phi.continuation_radius() > 1.0 || phi.is_inner() {
        Method::BoundaryFft
    } else {
        Method::InteriorFft
    }
}

pub fn coeffs_of_power(phi: &Symbol, n: u32, m_len: usize, tol: f64) -> Result<CoeffVector> {
    coeffs_of_power_with(phi, n, m_len, &CoeffOptions::with_tol(tol))
}

pub fn coeffs_of_power_with(phi: &Symbol, n: u32, m_len: usize, opts: &CoeffOptions) -> Result<CoeffVector> {
    if m_len == 0 {
        return Err(Error::InvalidParameter("coefficient length must be >= 1".into()));
    }
    if !(opts.tol > 0.0) {
        return Err(Error::InvalidParameter("tol must be positive".into()));
    }
    let method = opts.method.unwrap_or_else(|| default_method(phi));
    match method {
        Method::ConvolutionPower => convolution_power(phi, n, m_len),
        Method::BoundaryFft | Method::InteriorFft => {
            let plan = GridPlan::choose(phi, n, m_len, opts, method)?;
            let mut t = Transformer::new(plan.grid);
            let samples = t.samples(phi, plan.radius);
            let values = t.power_coeffs(&samples, n, m_len, plan.radius);
            Ok(finish(phi, n, values, &plan))
        }
    }
}

/// Accepted transform parameters for a symbol and a largest power.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridPlan {
    pub method: Method,
    pub grid: usize,
    pub radius: f64,
    pub error: f64,
    pub alias_bound: f64,
    pub alias_certified: bool,
    pub tol: f64,
}

impl GridPlan {
    /// Doubles the grid until two successive transforms of φⁿ agree within tol/2
    /// and, when informative, the analytic alias bound is below tol.
    /// Alias bounds grow with the power, so a plan for n also serves smaller powers.
    pub fn choose(phi: &Symbol, n: u32, m_len: usize, opts: &CoeffOptions, method: Method) -> Result<GridPlan> {
        let tol = opts.tol;
        let radius = match method {
            Method::BoundaryFft => 1.0,
            _ => opts.interior_r.unwrap_or_else(|| interior_radius(m_len)),
        };
        if method == Method::BoundaryFft && !(phi.continuation_radius() > 1.0 || phi.is_inner()) {
            return Err(Error::NotEvaluable(format!(
                "{} is not known to be analytic across the circle; use the interior circle",
                phi.name()
            )));
        }
        let spread = (n.max(1) as f64 * phi.boundary_frequency()).ceil() as usize;
        let mut k = (4 * m_len.max(spread)).max(64).next_power_of_two();
        if k > opts.grid_cap {
            k = opts.grid_cap;
        }
        let alias = |k: usize| -> f64 {
            match method {
                Method::BoundaryFft => boundary_alias_bound(phi, n, k),
                _ => {
                    let rk = radius.powf(k as f64);
                    rk / (1.0 - rk)
                }
            }
        };
        // rounding in the transform, amplified by r^{-m} on the interior circle
        let rounding = 1e-15 * (k as f64).log2() * radius.powf(-(m_len as f64));
        let mut t = Transformer::new(k);
        let s = t.samples(phi, radius);
        let mut prev = t.power_coeffs(&s, n, m_len, radius);
        loop {
            let k2 = 2 * k;
            if k2 > opts.grid_cap {
                return Err(Error::GridCap { cap: opts.grid_cap, achieved: f64::NAN, target: tol });
            }
            let mut t2 = Transformer::new(k2);
            let s2 = t2.samples(phi, radius);
            let cur = t2.power_coeffs(&s2, n, m_len, radius);
            let diff = prev.iter().zip(&cur).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            let ab = alias(k2);
            let informative = ab.is_finite() && ab < 1.0;
            if diff <= tol / 2.0 && (ab <= tol || !informative) {
                let error = diff.max(if informative { ab } else { 0.0 }).max(rounding);
                return Ok(GridPlan {
                    method,
                    grid: k2,
                    radius,
                    error,
                    alias_bound: if informative { ab } else { f64::INFINITY },
                    alias_certified: ab <= tol,
                    tol,
                });
            }
            if k2 * 2 > opts.grid_cap {
                return Err(Error::GridCap { cap: opts.grid_cap, achieved: diff.max(ab), target: tol });
            }
            k = k2;
            prev = cur;
        }
    }
}

fn finish(phi: &Symbol, n: u32, mut values: Vec<C>, plan: &GridPlan) -> CoeffVector {
    if phi.origin_value().norm() == 0.0 {
        // φ(0) = 0 forces φⁿ to vanish to order n
        for v in values.iter_mut().take(n as usize) {
            if v.norm() <= 10.0 * plan.error.max(1e-15) {
                *v = C::new(0.0, 0.0);
            }
        }
    }
    let tail_bound = tail_bound_for(phi, n, &values, plan.error);
    CoeffVector {
        power: n,
        values,
        tail_bound,
        method: plan.method,
        grid_size: plan.grid,
        radius: plan.radius,
        error: plan.error,
        alias_bound: plan.alias_bound,
        alias_certified: plan.alias_certified,
    }
}

/// Σ_{m≥M}|φ̂ⁿ(m)|² ≤ ‖φⁿ‖²_{H²} − Σ_{m<M}|φ̂ⁿ(m)|², with ‖φⁿ‖ ≤ 1 for a self-map
/// (equality for inner φ); tightened by the Cauchy estimate when φ continues past the circle.
fn tail_bound_for(phi: &Symbol, n: u32, values: &[C], err: f64) -> f64 {
    let mass: f64 = values.iter().map(|v| v.norm_sqr()).sum();
    let slack = 2.0 * (values.len() as f64).sqrt() * err + 1e-14;
    let mut bound = (1.0 - mass).max(0.0) + slack;
    if phi.continuation_radius() > 1.0 && !phi.is_inner() {
        bound = bound.min(cauchy_tail(phi, n, values.len()));
    }
    bound
}

/// min over ρ of M(ρ)^{2n} ρ^{−2M}/(1 − ρ^{−2}).
fn cauchy_tail(phi: &Symbol, n: u32, m_len: usize) -> f64 {
    radius_candidates(phi)
        .into_iter()
        .map(|rho| {
            let lm = sampled_max(phi, rho).ln();
            let l = 2.0 * n as f64 * lm - 2.0 * m_len as f64 * rho.ln() - (1.0 - rho.powi(-2)).ln();
            l.exp()
        })
        .fold(f64::INFINITY, f64::min)
}

fn radius_candidates(phi: &Symbol) -> Vec<f64> {
    let r = phi.continuation_radius();
    if r.is_infinite() {
        vec![1.25, 1.5, 2.0, std::f64::consts::E, 4.0, 8.0]
    } else if r > 1.0 {
        (1..20).map(|i| r.powf(i as f64 / 20.0)).collect()
    } else {
        vec![]
    }
}

/// Max of |φ| on |z| = ρ, sampled densely relative to the symbol's oscillation.
fn sampled_max(phi: &Symbol, rho: f64) -> f64 {
    let samples = ((64.0 * phi.boundary_frequency() * rho.max(1.0)) as usize).clamp(2048, 1 << 20).next_power_of_two();
    phi.max_modulus(rho, samples)
}

/// Per-coefficient alias bound on the boundary: M(ρ)ⁿ ρ^{−K}/(1 − ρ^{−K}), minimized over ρ.
fn boundary_alias_bound(phi: &Symbol, n: u32, k: usize) -> f64 {
    radius_candidates(phi)
        .into_iter()
        .map(|rho| {
            let lm = sampled_max(phi, rho).ln();
            let lk = -(k as f64) * rho.ln();
            (n as f64 * lm + lk - (-lk.exp()).ln_1p()).exp()
        })
        .fold(f64::INFINITY, f64::min)
}

/// FFT of a fixed size.
pub struct Transformer {
    k: usize,
    fft: Arc<dyn Fft<f64>>,
    scratch: Vec<C>,
}

impl Transformer {
    pub fn new(k: usize) -> Self {
        let fft = FftPlanner::new().plan_fft_forward(k);
        let scratch = vec![C::new(0.0, 0.0); fft.get_inplace_scratch_len()];
        Transformer { k, fft, scratch }
    }

    pub fn grid(&self) -> usize {
        self.k
    }

    /// φ(r e^{2πij/K}), j = 0..K.
    pub fn samples(&self, phi: &Symbol, r: f64) -> Vec<C> {
        (0..self.k).map(|j| phi.eval(C::from_polar(r, 2.0 * PI * j as f64 / self.k as f64))).collect()
    }

    /// First `m_len` coefficients of the function whose samples are `buf` (consumed).
    pub fn coeffs_in_place(&mut self, buf: &mut [C], m_len: usize, r: f64) -> Vec<C> {
        self.fft.process_with_scratch(buf, &mut self.scratch);
        let inv_k = 1.0 / self.k as f64;
        let mut scale = inv_k;
        let rinv = 1.0 / r;
        (0..m_len)
            .map(|m| {
                let v = if m < self.k { buf[m] * scale } else { C::new(0.0, 0.0) };
                scale *= rinv;
                v
            })
            .collect()
    }

    pub fn power_coeffs(&mut self, samples: &[C], n: u32, m_len: usize, r: f64) -> Vec<C> {
        let mut buf: Vec<C> = samples.iter().map(|s| s.powu(n)).collect();
        self.coeffs_in_place(&mut buf, m_len, r)
    }
}

/// First `len` coefficients of a·b.
pub fn truncated_product(a: &[C], b: &[C], len: usize) -> Vec<C> {
    let la = a.len().min(len);
    let lb = b.len().min(len);
    let nza = a[..la].iter().filter(|x| x.norm_sqr() > 0.0).count();
    let nzb = b[..lb].iter().filter(|x| x.norm_sqr() > 0.0).count();
    let zero = C::new(0.0, 0.0);
    if nza.min(nzb) <= 64 || la.max(lb) <= 128 {
        // sparse-aware direct product
        let (s, d, ls, ld) = if nza <= nzb { (a, b, la, lb) } else { (b, a, lb, la) };
        let mut out = vec![zero; len];
        for i in 0..ls {
            if s[i].norm_sqr() == 0.0 {
                continue;
            }
            for j in 0..ld.min(len - i) {
                out[i + j] += s[i] * d[j];
            }
        }
        return out;
    }
    let size = (la + lb).next_power_of_two();
    let mut planner = FftPlanner::new();
    let fwd = planner.plan_fft_forward(size);
    let inv = planner.plan_fft_inverse(size);
    let mut fa = vec![zero; size];
    fa[..la].copy_from_slice(&a[..la]);
    let mut fb = vec![zero; size];
    fb[..lb].copy_from_slice(&b[..lb]);
    fwd.process(&mut fa);
    fwd.process(&mut fb);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= y;
    }
    inv.process(&mut fa);
    let s = 1.0 / size as f64;
    fa.truncate(len);
    fa.resize(len, zero);
    fa.iter().map(|x| x * s).collect()
}

/// φⁿ by binary powering of the truncated Taylor series. Exact up to rounding for the
/// first `len` coefficients, since truncation commutes with multiplication.
pub fn convolution_power(phi: &Symbol, n: u32, len: usize) -> Result<CoeffVector> {
    let base = phi
        .taylor(len)
        .ok_or_else(|| Error::Unsupported(format!("{} has no Taylor series available", phi.name())))?;
    let mut result: Vec<C> = vec![C::new(0.0, 0.0); len];
    result[0] = C::new(1.0, 0.0);
    let mut b = base;
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            result = truncated_product(&result, &b, len);
        }
        e >>= 1;
        if e > 0 {
            b = truncated_product(&b, &b, len);
        }
    }
    let error = 1e-15 * (n.max(2) as f64).log2() * (len as f64).log2().max(1.0);
    let tail_bound = tail_bound_for(phi, n, &result, error);
    Ok(CoeffVector {
        power: n,
        values: result,
        tail_bound,
        method: Method::ConvolutionPower,
        grid_size: len,
        radius: 1.0,
        error,
        alias_bound: 0.0,
        alias_certified: true,
    })
}

/// Constants (λ, b) with |φ̂ⁿ(m)| ≤ e^{−bn} for n ≥ λm and ≤ e^{−bm} for m ≥ λn.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TailExponents {
    pub lambda: u64,
    pub b: f64,
    pub rho: f64,
    pub lambda1: f64,
    pub b1: f64,
    /// Outer radius R = e^{β} actually used (below the continuation radius).
    pub outer_radius: f64,
    pub alpha: f64,
    pub lambda2: f64,
    pub b2: f64,
}

impl TailExponents {
    /// Largest ratio |φ̂ⁿ(m)| / bound over the region where a bound applies.
    pub fn worst_ratio(&self, n: u32, values: &[C]) -> f64 {
        let lam = self.lambda as f64;
        let nf = n as f64;
        let mut worst: f64 = 0.0;
        for (m, v) in values.iter().enumerate() {
            let mf = m as f64;
            let mut bound = f64::INFINITY;
            if nf >= lam * mf {
                bound = (-self.b * nf).exp();
            }
            if mf >= lam * nf {
                bound = bound.min((-self.b * mf).exp());
            }
            if bound.is_finite() {
                worst = worst.max(v.norm() / bound);
            }
        }
        worst
    }
}

pub fn cauchy_tail_exponents(phi: &Symbol) -> Result<TailExponents> {
    cauchy_tail_exponents_at(phi, (-1.0f64).exp())
}

pub fn cauchy_tail_exponents_at(phi: &Symbol, r_inner: f64) -> Result<TailExponents> {
    let r = phi.continuation_radius();
    if !(r > 1.0) {
        return Err(Error::Unsupported(format!("{} has no analytic continuation past the circle", phi.name())));
    }
    let m_in = sampled_max(phi, r_inner);
    if m_in >= 1.0 {
        return Err(Error::InvalidParameter(format!("{}: M(r) = {m_in} >= 1, not a self-map", phi.name())));
    }
    let rho = m_in.ln() / r_inner.ln();
    let lambda1 = (2.0f64).max(2.0 / rho);
    let b1 = rho - 1.0 / lambda1;
    let mut best: Option<TailExponents> = None;
    for rr in radius_candidates(phi) {
        let beta = rr.ln();
        let alpha = sampled_max(phi, rr).ln();
        let lambda2 = (2.0f64).max(2.0 * alpha / beta);
        let b2 = beta - alpha / lambda2;
        let cand = TailExponents {
            lambda: lambda1.max(lambda2).ceil() as u64,
            b: b1.min(b2),
            rho,
            lambda1,
            b1,
            outer_radius: rr,
            alpha,
            lambda2,
            b2,
        };
        let better = match &best {
            None => true,
            Some(bst) => cand.b > bst.b * (1.0 + 1e-12) || (cand.b >= bst.b * (1.0 - 1e-12) && cand.lambda < bst.lambda),
        };
        if better {
            best = Some(cand);
        }
    }
    best.ok_or_else(|| Error::Unsupported("no admissible outer radius".into()))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TailN {
    pub n: u64,
    pub analytic_n: u64,
    pub empirical_n: u64,
    pub exponents: TailExponents,
    pub epsilon: f64,
    pub p_max: u32,
    /// Σ_{j ≥ N p}|û^p(j)|² measured at the returned N, p = 1..p_max.
    pub tails: Vec<f64>,
}

/// Smallest N ≥ λ with (1 − e^{−2b})^{−1} e^{−2bN} ≤ ε, confirmed by direct tail sums for p ≤ p_max.
pub fn find_tail_n(u: &Symbol, eps: f64, p_max: u32) -> Result<TailN> {
    if !(eps > 0.0 && eps < 1.0) || p_max == 0 {
        return Err(Error::InvalidParameter(format!("need eps in (0,1) and p_max >= 1, got {eps}, {p_max}")));
    }
    let ex = cauchy_tail_exponents(u)?;
    let b = ex.b;
    let need = ((1.0 / (eps * (1.0 - (-2.0 * b).exp()))).ln() / (2.0 * b)).ceil().max(0.0) as u64;
    let analytic_n = need.max(ex.lambda);
    // direct tails Σ_{j ≥ N p}: coefficient vectors of length 2 N p, remainder from the tail certificate
    let mut profiles = Vec::new();
    for p in 1..=p_max {
        let len = (2 * analytic_n * p as u64) as usize;
        let cv = coeffs_of_power(u, p, len, 1e-12)?;
        profiles.push(cv);
    }
    let tail_at = |nn: u64, p: u32, cv: &CoeffVector| -> f64 {
        let start = (nn * p as u64) as usize;
        cv.values.iter().skip(start).map(|v| v.norm_sqr()).sum::<f64>() + cv.tail_bound
    };
    let tails: Vec<f64> = profiles.iter().enumerate().map(|(i, cv)| tail_at(analytic_n, i as u32 + 1, cv)).collect();
    if let Some((i, t)) = tails.iter().enumerate().find(|(_, t)| **t > eps) {
        return Err(Error::TailMismatch(format!(
            "analytic N = {analytic_n} but the measured tail at p = {} is {t:e} > {eps:e}",
            i + 1
        )));
    }
    let mut empirical_n = 1;
    while empirical_n < analytic_n
        && profiles.iter().enumerate().any(|(i, cv)| tail_at(empirical_n, i as u32 + 1, cv) > eps)
    {
        empirical_n += 1;
    }
    Ok(TailN { n: analytic_n.max(empirical_n), analytic_n, empirical_n, exponents: ex, epsilon: eps, p_max, tails })
}

/// ρ with M(e^{−1/2}) = e^{−ρ/2} for φ₁ = φ/z, giving |φ̂ⁿ(m)| ≤ exp(−½[(1+ρ)n − m]).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VanishingBound {
    pub rho: f64,
    pub m_half: f64,
    pub derivative_at_0: f64,
}

impl VanishingBound {
    pub fn bound(&self, n: u32, m: usize) -> f64 {
        (-0.5 * ((1.0 + self.rho) * n as f64 - m as f64)).exp()
    }

    /// max over m of |φ̂ⁿ(m)| / bound(n, m); at most 1 when the inequality holds.
    pub fn check(&self, n: u32, values: &[C]) -> f64 {
        values.iter().enumerate().map(|(m, v)| v.norm() / self.bound(n, m)).fold(0.0, f64::max)
    }
}

pub fn vanishing_origin_bound(phi: &Symbol) -> Result<VanishingBound> {
    if phi.origin_value().norm() > 1e-14 {
        return Err(Error::Precondition(format!("{} does not vanish at 0", phi.name())));
    }
    // φ'(0) as the mean of φ(z)/z on |z| = 1/2
    let k = 256;
    let d0 = (0..k)
        .map(|j| {
            let z = C::from_polar(0.5, 2.0 * PI * j as f64 / k as f64);
            phi.eval(z) / z
        })
        .sum::<C>()
        / k as f64;
    if d0.norm() >= 1.0 - 1e-12 {
        return Err(Error::Unsupported(format!("|phi'(0)| = {} (a rotation); the bound does not apply", d0.norm())));
    }
    let r = (-0.5f64).exp();
    let m_half = sampled_max(phi, r) / r;
    let rho = m_half.ln() / r.ln();
    Ok(VanishingBound { rho, m_half, derivative_at_0: d0.norm() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::{make_symbol, SymbolSpec};

    #[test]
    fn monomial_power_is_indicator() {
        let f = make_symbol(&SymbolSpec::Monomial { k: 2 }).unwrap();
        let cv = coeffs_of_power(&f, 3, 10, 1e-12).unwrap();
        for (m, v) in cv.values.iter().enumerate() {
            let e = if m == 6 { 1.0 } else { 0.0 };
            assert!((v - C::new(e, 0.0)).norm() < 1e-13);
        }
    }

    #[test]
    fn mobius_first_power_closed_form() {
        let a = 0.6;
        let f = make_symbol(&SymbolSpec::mobius(a)).unwrap();
        let cv = coeffs_of_power(&f, 1, 64, 1e-12).unwrap();
        assert!((cv.values[0].re - a).abs() < 1e-12);
        for m in 1..64 {
            let e = (1.0 - a * a) * (-a).powi(m as i32 - 1);
            assert!((cv.values[m].re - e).abs() < 1e-12, "m={m}");
        }
        assert!(cv.alias_certified);
    }

    #[test]
    fn phi_mn_power_has_two_entries() {
        let f = make_symbol(&SymbolSpec::PhiMn { m: 9, n: 4 }).unwrap();
        let cv = coeffs_of_power(&f, 4, 20, 1e-10).unwrap();
        assert_eq!(cv.method, Method::InteriorFft);
        for (j, v) in cv.values.iter().enumerate() {
            let e = if j == 4 || j == 9 { 0.5 } else { 0.0 };
            assert!((v - C::new(e, 0.0)).norm() < 1e-10, "j={j} v={v}");
        }
    }

    #[test]
    fn fft_and_convolution_agree() {
        let f = make_symbol(&SymbolSpec::Product {
            factors: vec![SymbolSpec::blaschke(0.5, 2), SymbolSpec::mobius(-0.3)],
        })
        .unwrap();
        for n in [1u32, 3, 7] {
            let a = coeffs_of_power(&f, n, 128, 1e-12).unwrap();
            let b = convolution_power(&f, n, 128).unwrap();
            let d = a.values.iter().zip(&b.values).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
            assert!(d < 1e-10, "n={n} d={d}");
        }
    }

    #[test]
    fn tail_n_for_identity_is_lambda() {
        let u = make_symbol(&SymbolSpec::Monomial { k: 1 }).unwrap();
        let t = find_tail_n(&u, 2f64.powi(-15), 4).unwrap();
        assert!(t.tails.iter().all(|x| *x < 1e-12));
        assert!(t.n >= t.exponents.lambda);
    }

    #[test]
    fn vanishing_bound_for_z_squared() {
        let f = make_symbol(&SymbolSpec::Monomial { k: 2 }).unwrap();
        let vb = vanishing_origin_bound(&f).unwrap();
        assert!((vb.rho - 1.0).abs() < 1e-12);
        let rot = make_symbol(&SymbolSpec::Rotation { theta: 0.3 }).unwrap();
        assert!(vanishing_origin_bound(&rot).is_err());
    }
}
