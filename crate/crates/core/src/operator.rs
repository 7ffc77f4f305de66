//! Finite sections of C_φ on H²(β), norm estimates, kernels and Schur-multiplier checks.

use crate::coeffs::{self, CoeffOptions, GridPlan, Method, Transformer};
use crate::error::{Error, Result};
use crate::symbols::Symbol;
use crate::weights::{classify, Constant, Property, Verdict, WeightSequence};
use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::Path;

type C = Complex64;

/// Dense complex matrix, column-major.
#[derive(Debug, Clone)]
pub struct DenseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<C>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, data: vec![C::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, C::new(1.0, 0.0));
        }
        m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> C {
        self.data[c * self.rows + r]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: C) {
        self.data[c * self.rows + r] = v;
    }

    pub fn column(&self, c: usize) -> &[C] {
        &self.data[c * self.rows..(c + 1) * self.rows]
    }

    /// y = A x.
    pub fn apply(&self, x: &[C]) -> Vec<C> {
        let mut y = vec![C::new(0.0, 0.0); self.rows];
        for (c, xc) in x.iter().enumerate() {
            if xc.norm_sqr() == 0.0 {
                continue;
            }
            for (yi, a) in y.iter_mut().zip(self.column(c)) {
                *yi += a * xc;
            }
        }
        y
    }

    /// x = A* y.
    pub fn apply_adjoint(&self, y: &[C]) -> Vec<C> {
        (0..self.cols).map(|c| self.column(c).iter().zip(y).map(|(a, yi)| a.conj() * yi).sum()).collect()
    }

    /// Top-left block.
    pub fn leading(&self, n: usize) -> DenseMatrix {
        let mut m = Self::zeros(n, n);
        for c in 0..n {
            for r in 0..n {
                m.set(r, c, self.get(r, c));
            }
        }
        m
    }
}

/// N×N matrix of C_φ in the orthonormal basis e_n = zⁿ/√β_n.
#[derive(Debug, Clone)]
pub struct OperatorSection {
    pub dim: usize,
    pub matrix: DenseMatrix,
    pub weight_id: String,
    pub symbol_id: String,
    pub coeff_tol: f64,
    /// Certified discarded mass Σ_{m≥N} |φ̂ⁿ(m)|² β_m/β_n per column.
    pub column_tail: Vec<f64>,
    pub grid: Option<GridPlan>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SectionMeta {
    pub dim: usize,
    pub weight_id: String,
    pub symbol_id: String,
    pub coeff_tol: f64,
    pub column_tails_max: f64,
    pub grid: Option<GridPlan>,
}

impl OperatorSection {
    pub fn entry(&self, m: usize, n: usize) -> C {
        self.matrix.get(m, n)
    }

    pub fn column_norm(&self, n: usize) -> f64 {
        self.matrix.column(n).iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn meta(&self) -> SectionMeta {
        SectionMeta {
            dim: self.dim,
            weight_id: self.weight_id.clone(),
            symbol_id: self.symbol_id.clone(),
            coeff_tol: self.coeff_tol,
            column_tails_max: self.column_tail.iter().cloned().fold(0.0, f64::max),
            grid: self.grid.clone(),
        }
    }

    /// CSV of nonzero entries (m, n, re, im) plus a JSON sidecar.
    pub fn export(&self, csv_path: &Path, json_path: &Path) -> Result<()> {
        let mut w = csv::Writer::from_path(csv_path)?;
        w.write_record(["m", "n", "re", "im"])?;
        for n in 0..self.dim {
            for m in 0..self.dim {
                let v = self.entry(m, n);
                if v.norm_sqr() > 0.0 {
                    w.write_record([m.to_string(), n.to_string(), format!("{:e}", v.re), format!("{:e}", v.im)])?;
                }
            }
        }
        w.flush()?;
        let mut f = std::fs::File::create(json_path)?;
        serde_json::to_writer_pretty(&mut f, &self.meta())?;
        f.write_all(b"\n")?;
        Ok(())
    }
}

/// Window used for the weight maximum in tail certificates, relative to the coefficient length.
const TAIL_WINDOW_FACTOR: usize = 4;

pub fn build_section(w: &WeightSequence, phi: &Symbol, n_dim: usize, tol: f64) -> Result<OperatorSection> {
    build_section_with(w, phi, n_dim, &CoeffOptions::with_tol(tol))
}

/// Columns n = 0..N−1 with entries √(β_m/β_n)·φ̂ⁿ(m). One transform grid, chosen for the
/// largest power, serves every column; powers are accumulated sample-wise.
pub fn build_section_with(
    w: &WeightSequence,
    phi: &Symbol,
    n_dim: usize,
    opts: &CoeffOptions,
) -> Result<OperatorSection> {
    if n_dim < 2 {
        return Err(Error::InvalidParameter("section dimension must be >= 2".into()));
    }
    let method = opts.method.unwrap_or_else(|| coeffs::default_method(phi));
    let mut matrix = DenseMatrix::zeros(n_dim, n_dim);
    let mut column_tail = vec![0.0; n_dim];
    matrix.set(0, 0, C::new(1.0, 0.0));

    let top = (n_dim - 1) as u32;
    let (plan, len) = match method {
        Method::ConvolutionPower => (None, TAIL_WINDOW_FACTOR * n_dim),
        _ => {
            let plan = GridPlan::choose(phi, top, n_dim, opts, method)?;
            // coefficients past N feed the tail; on the interior circle the r^{-m} growth limits them to N
            let len = if method == Method::BoundaryFft { (plan.grid / 2).max(n_dim) } else { n_dim };
            (Some(plan), len)
        }
    };
    let beta = w.values((TAIL_WINDOW_FACTOR * len) as u64)?;
    // suffix maxima of β for the part of the tail beyond the computed coefficients
    let far_max = beta[len..].iter().cloned().fold(0.0, f64::max);

    let mut fill = |n: usize, values: &[C], tail_beyond: f64| -> Result<()> {
        let bn = beta[n];
        for m in 0..n_dim {
            let v = values[m];
            if v.norm_sqr() != 0.0 {
                matrix.set(m, n, v * (beta[m] / bn).sqrt());
            }
        }
        let mid: f64 = values[n_dim..].iter().enumerate().map(|(i, v)| v.norm_sqr() * beta[n_dim + i] / bn).sum();
        let t = mid + far_max / bn * tail_beyond;
        if !t.is_finite() || t > 1e12 {
            return Err(Error::Uncertifiable { column: n, reason: format!("column tail {t:e}") });
        }
        column_tail[n] = t;
        Ok(())
    };

    match &plan {
        None => {
            for n in 1..n_dim {
                let cv = coeffs::convolution_power(phi, n as u32, len)?;
                fill(n, &cv.values, cv.tail_bound)?;
            }
        }
        Some(plan) => {
            let mut t = Transformer::new(plan.grid);
            let samples = t.samples(phi, plan.radius);
            let mut acc = samples.clone();
            let vanishes = phi.origin_value().norm() == 0.0;
            for n in 1..n_dim {
                if n > 1 {
                    for (a, s) in acc.iter_mut().zip(&samples) {
                        *a *= s;
                    }
                }
                let mut buf = acc.clone();
                let mut values = t.coeffs_in_place(&mut buf, len, plan.radius);
                if vanishes {
                    for v in values.iter_mut().take(n) {
                        if v.norm() <= 10.0 * plan.error.max(1e-15) {
                            *v = C::new(0.0, 0.0);
                        }
                    }
                }
                let mass: f64 = values.iter().map(|v| v.norm_sqr()).sum();
                let slack = 2.0 * (len as f64).sqrt() * plan.error + 1e-14;
                let tail_beyond = (1.0 - mass).max(0.0) + slack;
                fill(n, &values, tail_beyond)?;
            }
        }
    }
    if phi.has_real_coefficients() {
        matrix.data.iter_mut().for_each(|v| v.im = 0.0);
    }
    Ok(OperatorSection {
        dim: n_dim,
        matrix,
        weight_id: w.name().to_string(),
        symbol_id: phi.name(),
        coeff_tol: opts.tol,
        column_tail,
        grid: plan,
    })
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct NormEstimate {
    /// Rayleigh-quotient estimate; never exceeds the true largest singular value.
    pub sigma: f64,
    /// ‖S*Sv − σ²v‖/σ².
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
}

pub const NORM_ITER_CAP: usize = 10_000;

/// Power iteration on S*S from the normalized all-ones vector.
pub fn norm_estimate(s: &DenseMatrix, iters: usize, tol: f64) -> NormEstimate {
    if s.data.iter().all(|v| v.im == 0.0) {
        return norm_estimate_real(s, iters, tol);
    }
    let n = s.cols;
    let mut v = vec![C::new(1.0 / (n as f64).sqrt(), 0.0); n];
    let mut best = NormEstimate { sigma: 0.0, residual: f64::INFINITY, iterations: 0, converged: false };
    for it in 1..=iters.min(NORM_ITER_CAP) {
        let u = s.apply_adjoint(&s.apply(&v));
        let lambda: f64 = v.iter().zip(&u).map(|(a, b)| (a.conj() * b).re).sum();
        if lambda <= 0.0 {
            return NormEstimate { sigma: 0.0, residual: 0.0, iterations: it, converged: true };
        }
        let res = u.iter().zip(&v).map(|(a, b)| (a - b * lambda).norm_sqr()).sum::<f64>().sqrt() / lambda;
        best = NormEstimate { sigma: lambda.sqrt(), residual: res, iterations: it, converged: res <= tol };
        if best.converged {
            break;
        }
        let nu = u.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        v = u.into_iter().map(|x| x / nu).collect();
    }
    best
}

/// Same iteration for real matrices; the start vector is real so the iterates stay real.
fn norm_estimate_real(s: &DenseMatrix, iters: usize, tol: f64) -> NormEstimate {
    let (rows, n) = (s.rows, s.cols);
    let a: Vec<f64> = s.data.iter().map(|v| v.re).collect();
    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    let mut y = vec![0.0; rows];
    let mut u = vec![0.0; n];
    let mut best = NormEstimate { sigma: 0.0, residual: f64::INFINITY, iterations: 0, converged: false };
    for it in 1..=iters.min(NORM_ITER_CAP) {
        y.iter_mut().for_each(|x| *x = 0.0);
        for (c, vc) in v.iter().enumerate() {
            if *vc != 0.0 {
                for (yi, aij) in y.iter_mut().zip(&a[c * rows..(c + 1) * rows]) {
                    *yi += aij * vc;
                }
            }
        }
        for (c, uc) in u.iter_mut().enumerate() {
            *uc = a[c * rows..(c + 1) * rows].iter().zip(&y).map(|(p, q)| p * q).sum();
        }
        let lambda: f64 = v.iter().zip(&u).map(|(p, q)| p * q).sum();
        if lambda <= 0.0 {
            return NormEstimate { sigma: 0.0, residual: 0.0, iterations: it, converged: true };
        }
        let res = u.iter().zip(&v).map(|(p, q)| (p - q * lambda).powi(2)).sum::<f64>().sqrt() / lambda;
        best = NormEstimate { sigma: lambda.sqrt(), residual: res, iterations: it, converged: res <= tol };
        if best.converged {
            break;
        }
        let nu = u.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.iter_mut().zip(&u).for_each(|(p, q)| *p = q / nu);
    }
    best
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NormReport {
    #[serde(rename = "N")]
    pub n: usize,
    pub sigma: f64,
    pub residual: f64,
    pub column_tails_max: f64,
    pub converged: bool,
}

pub fn norm_report(s: &OperatorSection, iters: usize, tol: f64) -> NormReport {
    let e = norm_estimate(&s.matrix, iters, tol);
    NormReport {
        n: s.dim,
        sigma: e.sigma,
        residual: e.residual,
        column_tails_max: s.column_tail.iter().cloned().fold(0.0, f64::max),
        converged: e.converged,
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DivergenceEntry {
    #[serde(rename = "N")]
    pub n: usize,
    pub sigma: f64,
    pub residual: f64,
    /// max_n ‖S e_n‖, a provable lower bound for ‖C_φ‖.
    pub max_column_norm: f64,
    pub argmax_column: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DivergenceReport {
    pub weight_id: String,
    pub symbol_id: String,
    pub entries: Vec<DivergenceEntry>,
    /// Least-squares slope of log σ(N) against log N.
    pub fitted_slope: f64,
    pub threshold: f64,
    pub divergent: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DivergenceOptions {
    pub threshold: f64,
    pub min_slope: f64,
    pub tol: f64,
    pub norm_tol: f64,
    pub iters: usize,
}

impl Default for DivergenceOptions {
    fn default() -> Self {
        DivergenceOptions { threshold: 4.0, min_slope: 0.1, tol: 1e-10, norm_tol: 1e-8, iters: NORM_ITER_CAP }
    }
}

/// σ(N) and column lower bounds along increasing N. DIVERGENT when a column lower bound
/// exceeds the threshold, or σ(N) does while growing with slope at least `min_slope`.
pub fn divergence_probe(
    w: &WeightSequence,
    phi: &Symbol,
    n_list: &[usize],
    opts: &DivergenceOptions,
) -> Result<DivergenceReport> {
    if n_list.windows(2).any(|p| p[1] <= p[0]) || n_list.is_empty() {
        return Err(Error::InvalidParameter("N list must be nonempty and increasing".into()));
    }
    let largest = build_section(w, phi, *n_list.last().expect("nonempty"), opts.tol)?;
    let mut entries = Vec::new();
    for &n in n_list {
        let m = largest.matrix.leading(n);
        let e = norm_estimate(&m, opts.iters, opts.norm_tol);
        let (mut best, mut arg) = (0.0, 0);
        for c in 0..n {
            let v = m.column(c).iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            if v > best {
                best = v;
                arg = c;
            }
        }
        entries.push(DivergenceEntry { n, sigma: e.sigma, residual: e.residual, max_column_norm: best, argmax_column: arg });
    }
    let xs: Vec<f64> = entries.iter().map(|e| (e.n as f64).ln()).collect();
    let ys: Vec<f64> = entries.iter().map(|e| e.sigma.ln()).collect();
    let slope = if entries.len() > 1 { lsq_slope(&xs, &ys) } else { 0.0 };
    let last = entries.last().expect("nonempty");
    let col_max = entries.iter().map(|e| e.max_column_norm).fold(0.0, f64::max);
    let divergent = col_max > opts.threshold || (last.sigma > opts.threshold && slope >= opts.min_slope);
    Ok(DivergenceReport {
        weight_id: w.name().to_string(),
        symbol_id: phi.name(),
        entries,
        fitted_slope: slope,
        threshold: opts.threshold,
        divergent,
    })
}

pub fn lsq_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Σ_{j ∈ [lo, hi]} |φ̂ᵖ(j)|², from the Taylor series when available, else the transform.
pub fn coefficient_mass(phi: &Symbol, p: u32, lo: usize, hi: usize) -> Result<f64> {
    if lo > hi {
        return Err(Error::InvalidParameter(format!("empty range [{lo}, {hi}]")));
    }
    let len = hi + 1;
    let cv = if phi.taylor(1).is_some() {
        coeffs::convolution_power(phi, p, len)?
    } else {
        let opts = CoeffOptions::default();
        if 4 * len > opts.grid_cap {
            return Err(Error::InvalidParameter(format!("range end {hi} exceeds the certifiable length")));
        }
        coeffs::coeffs_of_power_with(phi, p, len, &opts)?
    };
    Ok(cv.values[lo..=hi].iter().map(|v| v.norm_sqr()).sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KernelVerdict {
    SlowGrowth,
    FailsSlowGrowth,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KernelSample {
    pub w: f64,
    /// ‖K_w‖² (∞ when the series diverges).
    pub norm_sq: f64,
    pub tail_bound: f64,
    pub terms: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KernelProfile {
    pub weight_id: String,
    pub samples: Vec<KernelSample>,
    /// Slope of log‖K_w‖ against −log(1 − w) over the last half of the radii (∞ if a norm diverges).
    pub fitted_exponent: f64,
    pub certified: bool,
    pub verdict: KernelVerdict,
    /// Decay envelope β_n ≥ c n^{−α} used for truncation.
    pub envelope: Option<(f64, f64)>,
}

/// Window on which the polynomial-decay envelope is certified.
pub const KERNEL_CERT_WINDOW: u64 = 1 << 12;
const KERNEL_TERM_CAP: usize = 50_000_000;

/// ‖K_w‖² = Σ w^{2n}/β_n, truncated once the envelope tail drops below trunc_tol·partial sum.
pub fn kernel_profile(w: &WeightSequence, radii: &[f64], trunc_tol: f64) -> Result<KernelProfile> {
    // underflowing weights (β_n = 0 in floating point) have no decay envelope either
    let pd = match classify(w, Property::PolynomialDecay, KERNEL_CERT_WINDOW) {
        Ok(p) => p,
        Err(Error::InvalidParameter(reason)) => return Err(Error::Uncertifiable { column: 0, reason }),
        Err(e) => return Err(e),
    };
    let (c, alpha) = match (pd.verdict, pd.constant) {
        (Verdict::HoldsUpToN, Constant::Envelope { c, exponent }) => (c, exponent),
        _ => {
            return Err(Error::Uncertifiable {
                column: 0,
                reason: format!("{} has no polynomial decay certificate; truncation cannot be certified", w.name()),
            })
        }
    };
    let mut samples = Vec::new();
    for &r in radii {
        if !(0.0..1.0).contains(&r) {
            return Err(Error::InvalidParameter(format!("radius {r} not in [0, 1)")));
        }
        samples.push(kernel_sample_certified(w, r, trunc_tol, c, alpha)?);
    }
    let fitted_exponent = fit_kernel_exponent(&samples);
    Ok(KernelProfile {
        weight_id: w.name().to_string(),
        samples,
        fitted_exponent,
        certified: true,
        verdict: KernelVerdict::SlowGrowth,
        envelope: Some((c, alpha)),
    })
}

fn kernel_sample_certified(w: &WeightSequence, r: f64, trunc_tol: f64, c: f64, alpha: f64) -> Result<KernelSample> {
    let r2 = r * r;
    let mut sum = 1.0 / w.eval(0)?;
    if r == 0.0 {
        return Ok(KernelSample { w: r, norm_sq: sum, tail_bound: 0.0, terms: 1 });
    }
    let mut k = 0usize;
    loop {
        k += 1;
        let kf = k as f64;
        sum += (2.0 * kf * r.ln() - w.ln_eval(k as u64)?).exp();
        // tail Σ_{n>k} n^α r^{2n}/c, geometric once the term ratio is below 1
        let q = (1.0 + 1.0 / (kf + 1.0)).powf(alpha) * r2;
        if q < 1.0 {
            let next = ((kf + 1.0).ln() * alpha + 2.0 * (kf + 1.0) * r.ln()).exp() / c;
            let tail = next / (1.0 - q);
            if tail <= trunc_tol * sum {
                return Ok(KernelSample { w: r, norm_sq: sum, tail_bound: tail, terms: k + 1 });
            }
        }
        if k >= KERNEL_TERM_CAP {
            return Err(Error::Uncertifiable { column: 0, reason: format!("kernel series at w={r} needs too many terms") });
        }
    }
}

fn fit_kernel_exponent(samples: &[KernelSample]) -> f64 {
    let half = &samples[samples.len() / 2..];
    if half.iter().any(|s| !s.norm_sq.is_finite()) {
        return f64::INFINITY;
    }
    if half.len() < 2 {
        return f64::NAN;
    }
    let xs: Vec<f64> = half.iter().map(|s| -(1.0 - s.w).ln()).collect();
    let ys: Vec<f64> = half.iter().map(|s| 0.5 * s.norm_sq.ln()).collect();
    lsq_slope(&xs, &ys)
}

/// Kernel profile with a verdict: the certified profile when the weight has polynomial decay,
/// otherwise uncertified partial sums with a divergence test, reported as FailsSlowGrowth.
pub fn kernel_growth_report(w: &WeightSequence, radii: &[f64], trunc_tol: f64) -> Result<KernelProfile> {
    match kernel_profile(w, radii, trunc_tol) {
        Ok(p) => Ok(p),
        Err(Error::Uncertifiable { .. }) => {
            let mut samples = Vec::new();
            for &r in radii {
                samples.push(kernel_sample_direct(w, r, trunc_tol)?);
            }
            let fitted_exponent = fit_kernel_exponent(&samples);
            Ok(KernelProfile {
                weight_id: w.name().to_string(),
                samples,
                fitted_exponent,
                certified: false,
                verdict: KernelVerdict::FailsSlowGrowth,
                envelope: None,
            })
        }
        Err(e) => Err(e),
    }
}

/// Partial sums until terms are negligible; ∞ when the root test shows the terms do not decay.
fn kernel_sample_direct(w: &WeightSequence, r: f64, trunc_tol: f64) -> Result<KernelSample> {
    let mut sum = 1.0 / w.eval(0)?;
    if r == 0.0 {
        return Ok(KernelSample { w: r, norm_sq: sum, tail_bound: 0.0, terms: 1 });
    }
    let mut k = 0usize;
    loop {
        k += 1;
        let lt = 2.0 * k as f64 * r.ln() - w.ln_eval(k as u64)?;
        // root-test divergence: (w^{2k}/β_k)^{1/k} ≥ 1 on a long stretch
        if k >= 64 && lt / k as f64 >= 0.0 {
            return Ok(KernelSample { w: r, norm_sq: f64::INFINITY, tail_bound: f64::INFINITY, terms: k });
        }
        let t = lt.exp();
        sum += t;
        if !sum.is_finite() {
            return Ok(KernelSample { w: r, norm_sq: f64::INFINITY, tail_bound: f64::INFINITY, terms: k });
        }
        if k >= 64 && t <= trunc_tol * sum * 1e-3 {
            return Ok(KernelSample { w: r, norm_sq: sum, tail_bound: f64::NAN, terms: k });
        }
        if k >= KERNEL_TERM_CAP {
            return Ok(KernelSample { w: r, norm_sq: f64::INFINITY, tail_bound: f64::INFINITY, terms: k });
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchurKind {
    Kacnelson,
    Gap,
}

impl std::str::FromStr for SchurKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kacnelson" => Ok(SchurKind::Kacnelson),
            "gap" => Ok(SchurKind::Gap),
            _ => Err(Error::InvalidParameter(format!("unknown schur kind `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SchurReport {
    pub kind: SchurKind,
    pub trials: usize,
    pub dim: usize,
    pub seed: u64,
    pub violations: usize,
    /// max over trials of ‖transformed‖/‖original‖.
    pub worst_ratio: f64,
    pub unconverged: usize,
    pub pass: bool,
}

pub const SCHUR_REL_TOL: f64 = 1e-10;

fn gaussian(rng: &mut ChaCha8Rng) -> C {
    C::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Random instances of ‖Γ⁻¹MΓ‖ ≤ ‖M‖ (M lower triangular, γ non-decreasing) or
/// ‖D⁻¹AD‖ ≤ ‖A‖ (a_{mn} = 0 whenever d_m < d_n).
pub fn schur_check(kind: SchurKind, trials: usize, dim: usize, seed: u64) -> Result<SchurReport> {
    if dim == 0 || dim > 256 {
        return Err(Error::InvalidParameter(format!("schur_check needs 1 <= dim <= 256, got {dim}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0;
    let mut worst: f64 = 0.0;
    let mut unconverged = 0;
    for _ in 0..trials {
        let (m, t) = schur_instance(kind, dim, &mut rng);
        let (Some(a), Some(b)) = (spectral_norm(&m), spectral_norm(&t)) else {
            unconverged += 1;
            continue;
        };
        let ratio = if a > 0.0 { b / a } else { 1.0 };
        worst = worst.max(ratio);
        if b > a * (1.0 + SCHUR_REL_TOL) {
            violations += 1;
        }
    }
    Ok(SchurReport { kind, trials, dim, seed, violations, worst_ratio: worst, unconverged, pass: violations == 0 && unconverged == 0 })
}

/// Largest singular value by a full SVD; None if the SVD does not converge.
fn spectral_norm(s: &DenseMatrix) -> Option<f64> {
    let m = nalgebra::DMatrix::from_fn(s.rows, s.cols, |r, c| s.get(r, c));
    m.try_svd(false, false, 1e-15, 10_000).map(|svd| svd.singular_values.max())
}

/// One random (original, transformed) pair.
pub fn schur_instance(kind: SchurKind, dim: usize, rng: &mut ChaCha8Rng) -> (DenseMatrix, DenseMatrix) {
    let mut m = DenseMatrix::zeros(dim, dim);
    let mut t = DenseMatrix::zeros(dim, dim);
    match kind {
        SchurKind::Kacnelson => {
            // γ: cumulative products of factors ≥ 1, spread over several orders of magnitude
            let spread: f64 = rng.random_range(0.0..0.5);
            let mut g = Vec::with_capacity(dim);
            let mut acc = 1.0;
            for _ in 0..dim {
                acc *= 1.0 + spread * rng.random::<f64>();
                g.push(acc);
            }
            for c in 0..dim {
                for r in c..dim {
                    let v = gaussian(rng);
                    m.set(r, c, v);
                    t.set(r, c, v * (g[c] / g[r]));
                }
            }
        }
        SchurKind::Gap => {
            let levels = rng.random_range(1..=8u32);
            let d: Vec<f64> = (0..dim).map(|_| (1 + rng.random_range(0..levels)) as f64 * 0.75).collect();
            for c in 0..dim {
                for r in 0..dim {
                    if d[r] >= d[c] {
                        let v = gaussian(rng);
                        m.set(r, c, v);
                        t.set(r, c, v * (d[c] / d[r]));
                    }
                }
            }
        }
    }
    (m, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::{make_symbol, SymbolSpec};
    use crate::weights::{make_weight, WeightSpec};

    #[test]
    fn identity_symbol_gives_identity() {
        let w = make_weight(&WeightSpec::Alternating).unwrap();
        let phi = make_symbol(&SymbolSpec::Monomial { k: 1 }).unwrap();
        let s = build_section(&w, &phi, 32, 1e-12).unwrap();
        for n in 0..32 {
            for m in 0..32 {
                let e = if m == n { 1.0 } else { 0.0 };
                assert!((s.entry(m, n) - C::new(e, 0.0)).norm() < 1e-13, "({m},{n})");
            }
        }
        let e = norm_estimate(&s.matrix, 100, 1e-12);
        assert!((e.sigma - 1.0).abs() < 1e-12);
    }

    #[test]
    fn z_squared_on_alternating() {
        let w = make_weight(&WeightSpec::Alternating).unwrap();
        let phi = make_symbol(&SymbolSpec::Monomial { k: 2 }).unwrap();
        let s = build_section(&w, &phi, 64, 1e-12).unwrap();
        for k in 0..15usize {
            let v = s.entry(4 * k + 2, 2 * k + 1);
            assert!((v.re - ((k + 1) as f64).sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn hardy_kernel_closed_form() {
        let w = make_weight(&WeightSpec::Hardy).unwrap();
        let p = kernel_profile(&w, &[0.6], 1e-14).unwrap();
        assert!((p.samples[0].norm_sq - 1.5625).abs() < 1e-12);
    }

    #[test]
    fn schur_identity_equality() {
        let m = DenseMatrix::identity(8);
        let e = norm_estimate(&m, 10, 1e-14);
        assert!((e.sigma - 1.0).abs() < 1e-14);
    }
}
