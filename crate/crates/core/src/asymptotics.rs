//! Oscillatory integrals I_{m,n} = ∫₀^π exp i[nV_a(x) − mx] dx for the Möbius maps T_a,
//! their stationary-phase approximation, and the averaged lower bound over a ∈ [1/2, 2/3].

use crate::error::{Error, Result};
use crate::quad::{self, GaussRule};
use crate::symbols::{poisson, poisson_phase, poisson_phase_closed};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::path::Path;

type C = Complex64;

/// The admissible rectangle for (a, q).
pub const A_RANGE: (f64, f64) = (0.5, 2.0 / 3.0);
pub const Q_RANGE: (f64, f64) = (0.8, 1.25);

/// P′_{−a}(x) = 2a(1 − a²) sin x/(1 + 2a cos x + a²)².
pub fn poisson_deriv(a: f64, x: f64) -> f64 {
    let d = 1.0 + 2.0 * a * x.cos() + a * a;
    2.0 * a * (1.0 - a * a) * x.sin() / (d * d)
}

/// h_q(a) = (1/q)(1 − a²)/(2a) − (1 + a²)/(2a), the cosine of the critical point.
pub fn h_q(a: f64, q: f64) -> f64 {
    ((1.0 - a * a) / q - (1.0 + a * a)) / (2.0 * a)
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PhaseContext {
    pub a: f64,
    pub q: f64,
    pub h_q: f64,
    pub x_q: Option<f64>,
    /// φ_q(a) = V_a(x_q) − q x_q.
    pub f_q_at_xq: Option<f64>,
    pub poisson_deriv_at_xq: Option<f64>,
}

impl PhaseContext {
    pub fn has_critical_point(&self) -> bool {
        self.x_q.is_some()
    }

    pub fn is_admissible(&self) -> bool {
        (A_RANGE.0..=A_RANGE.1).contains(&self.a) && (Q_RANGE.0..=Q_RANGE.1).contains(&self.q)
    }
}

pub fn phase_context(a: f64, m: u64, n: u64) -> Result<PhaseContext> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidParameter("phase_context needs m, n >= 1".into()));
    }
    phase_context_q(a, m as f64 / n as f64)
}

pub fn phase_context_q(a: f64, q: f64) -> Result<PhaseContext> {
    if !(a > 0.0 && a < 1.0) || !(q > 0.0) {
        return Err(Error::InvalidParameter(format!("need a in (0,1) and q > 0, got a={a}, q={q}")));
    }
    let h = h_q(a, q);
    if h.abs() < 1.0 {
        let x = h.acos();
        Ok(PhaseContext {
            a,
            q,
            h_q: h,
            x_q: Some(x),
            f_q_at_xq: Some(poisson_phase(a, x) - q * x),
            poisson_deriv_at_xq: Some(poisson_deriv(a, x)),
        })
    } else {
        Ok(PhaseContext { a, q, h_q: h, x_q: None, f_q_at_xq: None, poisson_deriv_at_xq: None })
    }
}

fn critical_point(a: f64, q: f64) -> Result<f64> {
    let h = h_q(a, q);
    if h.abs() >= 1.0 {
        return Err(Error::Precondition(format!("no critical point for a={a}, q={q} (h_q={h})")));
    }
    Ok(h.acos())
}

/// φ_q(a) = V_a(x_q(a)) − q·x_q(a), with the closed-form phase.
pub fn phi_q(a: f64, q: f64) -> Result<f64> {
    let x = critical_point(a, q)?;
    Ok(poisson_phase_closed(a, x) - q * x)
}

/// φ′_q(a) = −2 sin x_q/(1 + 2a cos x_q + a²).
pub fn phi_q_derivative(a: f64, q: f64) -> Result<f64> {
    let x = critical_point(a, q)?;
    Ok(-2.0 * x.sin() / (1.0 + 2.0 * a * x.cos() + a * a))
}

/// Result of an oscillatory quadrature certified by panel doubling.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct OscResult {
    pub value: C,
    /// |I_fine − I_coarse| for the accepted pair.
    pub error: f64,
    pub panels: usize,
}

pub const PANEL_CAP: usize = 1 << 24;
const PANEL_RULE: usize = 6;

/// Composite Gauss rule for ∫_A^B g, with panels no wider than `max_width` and
/// width·freq ≤ 1/(4·scale) at both panel ends.
fn panel_sum(
    rule: &GaussRule,
    g: &impl Fn(f64) -> C,
    freq: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    max_width: f64,
    scale: f64,
) -> Option<(C, usize)> {
    let mut sum = C::new(0.0, 0.0);
    let mut x = a;
    let mut count = 0usize;
    let limit = 0.25 / scale;
    while x < b {
        let mut h = (max_width / scale).min(b - x);
        let f0 = freq(x);
        if f0 * h > limit {
            h = limit / f0;
        }
        for _ in 0..8 {
            let f1 = freq(x + h);
            if f1 * h <= limit * 1.000001 {
                break;
            }
            h = limit / f1;
        }
        let end = if b - (x + h) < 1e-14 * (b - a) { b } else { x + h };
        sum += rule.apply(x, end, g);
        x = end;
        count += 1;
        if count > PANEL_CAP {
            return None;
        }
    }
    Some((sum, count))
}

/// ∫_A^B g with panel refinement driven by the local phase frequency; halves panel widths
/// until two successive sums agree to `tol`.
pub fn oscillatory_quad(
    g: impl Fn(f64) -> C,
    freq: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<OscResult> {
    let rule = GaussRule::new(PANEL_RULE);
    let max_width = ((b - a) / 64.0).min(PI / 64.0);
    let mut scale = 1.0;
    let mut trace = Vec::new();
    let (mut prev, _) = panel_sum(&rule, &g, &freq, a, b, max_width, scale)
        .ok_or_else(|| Error::Quadrature { msg: "panel cap reached".into(), trace: vec![] })?;
    loop {
        scale *= 2.0;
        let Some((cur, panels)) = panel_sum(&rule, &g, &freq, a, b, max_width, scale) else {
            return Err(Error::Quadrature { msg: format!("tolerance {tol:e} unreachable at panel cap"), trace });
        };
        let err = (cur - prev).norm();
        trace.push((panels, cur.re, err));
        if err <= tol {
            return Ok(OscResult { value: cur, error: err, panels });
        }
        prev = cur;
    }
}

/// I_{m,n} with its real Fourier coefficient T̂_aⁿ(m) = Re I/π.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct OscillatoryI {
    pub value: C,
    pub coefficient: f64,
    pub error: f64,
    pub panels: usize,
}

pub fn oscillatory_i(a: f64, m: f64, n: f64, tol: f64) -> Result<OscillatoryI> {
    if !(a > 0.0 && a < 1.0) || !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("oscillatory_i needs a in (0,1) and tol > 0, got a={a}")));
    }
    let r = oscillatory_quad(
        |x| C::from_polar(1.0, n * poisson_phase_closed(a, x) - m * x),
        |x| (n * poisson(a, x) - m).abs(),
        0.0,
        PI,
        tol,
    )?;
    Ok(OscillatoryI { value: r.value, coefficient: r.value.re / PI, error: r.error, panels: r.panels })
}

/// Leading stationary-phase term √(2π) n^{−1/2} e^{i[nφ_q + π/4]}/√P′_{−a}(x_q)
/// with budget κ·n^{−3/5}.
pub fn stationary_phase_i(ctx: &PhaseContext, n: f64, kappa: f64) -> Result<(C, f64)> {
    let (Some(x), Some(f), Some(p2)) = (ctx.x_q, ctx.f_q_at_xq, ctx.poisson_deriv_at_xq) else {
        return Err(Error::Precondition(format!("no critical point for a={}, q={}", ctx.a, ctx.q)));
    };
    if x < 1e-8 || PI - x < 1e-8 || p2 <= 0.0 {
        return Err(Error::Precondition(format!("critical point {x} on the boundary")));
    }
    let modulus = (2.0 * PI / (n * p2)).sqrt();
    Ok((C::from_polar(modulus, n * f + PI / 4.0), kappa * n.powf(-0.6)))
}

/// A phase with its first three derivatives.
pub trait Phase {
    fn f(&self, x: f64) -> f64;
    fn d1(&self, x: f64) -> f64;
    fn d2(&self, x: f64) -> f64;
    fn d3(&self, x: f64) -> f64;
}

/// Polynomial phase Σ c_k x^k.
#[derive(Debug, Clone)]
pub struct Poly(pub Vec<f64>);

impl Poly {
    fn eval_deriv(&self, x: f64, d: usize) -> f64 {
        let mut s = 0.0;
        for (k, c) in self.0.iter().enumerate().skip(d) {
            let fall: f64 = (0..d).map(|j| (k - j) as f64).product();
            s += c * fall * x.powi((k - d) as i32);
        }
        s
    }
}

impl Phase for Poly {
    fn f(&self, x: f64) -> f64 {
        self.eval_deriv(x, 0)
    }
    fn d1(&self, x: f64) -> f64 {
        self.eval_deriv(x, 1)
    }
    fn d2(&self, x: f64) -> f64 {
        self.eval_deriv(x, 2)
    }
    fn d3(&self, x: f64) -> f64 {
        self.eval_deriv(x, 3)
    }
}

/// n·(V_a(x) − q x) as a phase in x.
#[derive(Debug, Clone, Copy)]
pub struct MobiusPhase {
    pub a: f64,
    pub q: f64,
    pub n: f64,
}

impl Phase for MobiusPhase {
    fn f(&self, x: f64) -> f64 {
        self.n * (poisson_phase_closed(self.a, x) - self.q * x)
    }
    fn d1(&self, x: f64) -> f64 {
        self.n * (poisson(self.a, x) - self.q)
    }
    fn d2(&self, x: f64) -> f64 {
        self.n * poisson_deriv(self.a, x)
    }
    fn d3(&self, x: f64) -> f64 {
        let a = self.a;
        let d = 1.0 + 2.0 * a * x.cos() + a * a;
        let k = 2.0 * a * (1.0 - a * a);
        self.n * k * (x.cos() / (d * d) + 4.0 * a * x.sin().powi(2) / (d * d * d))
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct AppendixResult {
    pub approx: C,
    /// 8/(ηλ₂) + η⁴λ₃/12.
    pub err_bound: f64,
}

const PRECONDITION_GRID: usize = 2001;

/// ∫_A^B e^{iF} ≈ √(2π) e^{i[F(c)+π/4]}/√F″(c). The bound needs F′(c) = 0, F″ ≥ λ₂ on
/// [c−η, c+η], F″ > 0 on [A, B] and |F‴| ≤ λ₃ on [A, B]; all are spot-checked on a grid.
#[allow(clippy::too_many_arguments)]
pub fn appendix_stationary_phase(
    phase: &impl Phase,
    a: f64,
    b: f64,
    c: f64,
    eta: f64,
    lambda2: f64,
    lambda3: f64,
) -> Result<AppendixResult> {
    if !(a <= c - eta && c + eta <= b) || eta <= 0.0 || lambda2 <= 0.0 || lambda3 < 0.0 {
        return Err(Error::Precondition(format!("[c-η, c+η] = [{}, {}] not inside ({a}, {b})", c - eta, c + eta)));
    }
    let scale = phase.d2(c).abs().max(1.0);
    if phase.d1(c).abs() > 1e-8 * scale * (b - a) {
        return Err(Error::Precondition(format!("F'(c) = {} is not zero", phase.d1(c))));
    }
    let slack = 1.0 - 1e-12;
    for i in 0..PRECONDITION_GRID {
        let t = i as f64 / (PRECONDITION_GRID - 1) as f64;
        let x = a + (b - a) * t;
        let d2 = phase.d2(x);
        if d2 <= 0.0 {
            return Err(Error::Precondition(format!("F'' = {d2} <= 0 at x = {x}")));
        }
        if phase.d3(x).abs() * slack > lambda3 {
            return Err(Error::Precondition(format!("|F'''({x})| = {} exceeds λ3 = {lambda3}", phase.d3(x).abs())));
        }
        let y = c - eta + 2.0 * eta * t;
        if phase.d2(y) < lambda2 * slack {
            return Err(Error::Precondition(format!("F''({y}) = {} below λ2 = {lambda2}", phase.d2(y))));
        }
    }
    let approx = C::from_polar((2.0 * PI / phase.d2(c)).sqrt(), phase.f(c) + PI / 4.0);
    Ok(AppendixResult { approx, err_bound: 8.0 / (eta * lambda2) + eta.powi(4) * lambda3 / 12.0 })
}

/// ∫_A^B e^{iF} by oscillatory quadrature.
pub fn phase_integral(phase: &impl Phase, a: f64, b: f64, tol: f64) -> Result<OscResult> {
    oscillatory_quad(|x| C::from_polar(1.0, phase.f(x)), |x| phase.d1(x).abs(), a, b, tol)
}

/// Real phase f with f′ and f″ for the van der Corput lemma.
pub trait VdcPhase {
    fn f(&self, x: f64) -> f64;
    fn d1(&self, x: f64) -> f64;
    fn d2(&self, x: f64) -> f64;
}

impl<P: Phase> VdcPhase for P {
    fn f(&self, x: f64) -> f64 {
        Phase::f(self, x)
    }
    fn d1(&self, x: f64) -> f64 {
        Phase::d1(self, x)
    }
    fn d2(&self, x: f64) -> f64 {
        Phase::d2(self, x)
    }
}

/// a ↦ φ_q(a), with φ″ by a centered difference of the closed-form φ′.
#[derive(Debug, Clone, Copy)]
pub struct PhiQ {
    pub q: f64,
}

impl VdcPhase for PhiQ {
    fn f(&self, a: f64) -> f64 {
        phi_q(a, self.q).unwrap_or(f64::NAN)
    }
    fn d1(&self, a: f64) -> f64 {
        phi_q_derivative(a, self.q).unwrap_or(f64::NAN)
    }
    fn d2(&self, a: f64) -> f64 {
        let h = 1e-5;
        (self.d1(a + h) - self.d1(a - h)) / (2.0 * h)
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct VdcResult {
    pub bound: f64,
    pub lhs: f64,
    pub holds: bool,
}

/// |∫_A^B e^{inf}| against 2/(nδ) + C(B − A)/(nδ²), with |f′| ≥ δ and |f″| ≤ C checked on a grid.
pub fn van_der_corput_bound(f: &impl VdcPhase, a: f64, b: f64, n: f64, delta: f64, c: f64) -> Result<VdcResult> {
    if !(a < b) || delta <= 0.0 || c < 0.0 {
        return Err(Error::InvalidParameter("van der Corput needs A < B, δ > 0, C >= 0".into()));
    }
    for i in 0..PRECONDITION_GRID {
        let x = a + (b - a) * i as f64 / (PRECONDITION_GRID - 1) as f64;
        let (d1, d2) = (f.d1(x), f.d2(x));
        if !(d1.abs() >= delta) {
            return Err(Error::Precondition(format!("|f'({x})| = {} below δ = {delta}", d1.abs())));
        }
        if !(d2.abs() <= c * (1.0 + 1e-9)) {
            return Err(Error::Precondition(format!("|f''({x})| = {} exceeds C = {c}", d2.abs())));
        }
    }
    let r = oscillatory_quad(|x| C::from_polar(1.0, n * f.f(x)), |x| n * f.d1(x).abs(), a, b, 1e-12)?;
    let bound = 2.0 / (n * delta) + c * (b - a) / (n * delta * delta);
    let lhs = r.value.norm();
    Ok(VdcResult { bound, lhs, holds: lhs <= bound })
}

/// Fourier coefficients T̂_aⁿ(m) for several m at once, from K equispaced boundary samples.
/// Returns the coefficients and a Cauchy bound on the aliased mass Σ_{l≥1}|T̂_aⁿ(m + lK)|.
pub struct MobiusDft {
    k: usize,
    cis: Vec<C>,
}

impl MobiusDft {
    pub fn new(k: usize) -> Self {
        assert!(k >= 8 && k.is_multiple_of(2));
        let cis = (0..k).map(|j| C::from_polar(1.0, 2.0 * PI * j as f64 / k as f64)).collect();
        MobiusDft { k, cis }
    }

    pub fn grid(&self) -> usize {
        self.k
    }

    /// T̂_aⁿ(m) for each m in `ms`. Conjugate symmetry halves the sum.
    pub fn coefficients(&self, a: f64, n: u32, ms: &[u64], out: &mut [f64]) {
        let k = self.k;
        let half = k / 2;
        out.iter_mut().for_each(|v| *v = 0.0);
        let n = n as i32;
        for j in 0..=half {
            let z = self.cis[j];
            let s = ((z + a) / (z * a + 1.0)).powi(n);
            let w = if j == 0 || j == half { 1.0 } else { 2.0 };
            for (o, &m) in out.iter_mut().zip(ms) {
                let e = self.cis[((m as usize % k) * j) % k];
                // Re(s·conj(e))
                *o += w * (s.re * e.re + s.im * e.im);
            }
        }
        let inv = 1.0 / k as f64;
        out.iter_mut().for_each(|v| *v *= inv);
    }
}

/// Σ_{l≥1} |T̂_aⁿ(m + lK)| ≤ min_ρ M(ρ)ⁿ ρ^{−(m+K)}/(1 − ρ^{−K}), M(ρ) = (ρ + a)/(1 + aρ).
pub fn mobius_alias_bound(a: f64, n: u32, m: u64, k: usize) -> f64 {
    let mut best = f64::INFINITY;
    let r_max = 1.0 / a;
    for i in 1..200 {
        let rho = 1.0 + (r_max - 1.0) * i as f64 / 200.0;
        let mm = (rho + a) / (1.0 + a * rho);
        let l = n as f64 * mm.ln() - (m as f64 + k as f64) * rho.ln() - (1.0 - rho.powf(-(k as f64))).ln();
        best = best.min(l.exp());
    }
    best
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MeanBound {
    pub n: u64,
    pub m: u64,
    pub q: f64,
    /// n·∫_{1/2}^{2/3} |T̂_aⁿ(m)|² da.
    pub value: f64,
    pub a_nodes: usize,
    pub dft_size: usize,
    pub alias_bound: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MeanGrid {
    /// Minimum number of a-nodes.
    pub min_nodes: usize,
    /// Nodes per unit of n·max|φ′_q|/π.
    pub density: f64,
    /// Cap on the DFT alias bound for each coefficient.
    pub alias_tol: f64,
}

impl Default for MeanGrid {
    fn default() -> Self {
        MeanGrid { min_nodes: 256, density: 8.0, alias_tol: 1e-13 }
    }
}

/// The admissible q-grid.
pub const Q_GRID: [f64; 5] = [0.8, 0.9, 1.0, 1.1, 1.25];

const MEAN_RULE: usize = 4;

/// max over a ∈ [1/2, 2/3] of |φ′_q(a)|, sampled.
pub fn max_phi_prime(q: f64) -> Result<f64> {
    let mut best: f64 = 0.0;
    for i in 0..=200 {
        let a = A_RANGE.0 + (A_RANGE.1 - A_RANGE.0) * i as f64 / 200.0;
        best = best.max(phi_q_derivative(a, q)?.abs());
    }
    Ok(best)
}

pub fn mean_lower_bound(m: u64, n: u64, grid: &MeanGrid) -> Result<MeanBound> {
    Ok(mean_lower_bound_multi(n, &[m], grid)?.remove(0))
}

/// n·∫_{1/2}^{2/3} |T̂_aⁿ(m)|² da for several m sharing one a-grid. The a-rule is a composite
/// Gauss rule with max(min_nodes, density·n·max|φ′_q|/π) nodes.
pub fn mean_lower_bound_multi(n: u64, ms: &[u64], grid: &MeanGrid) -> Result<Vec<MeanBound>> {
    if n == 0 || n > u32::MAX as u64 || ms.is_empty() {
        return Err(Error::InvalidParameter("mean bound needs 1 <= n < 2^32 and some m".into()));
    }
    let mut phi_max: f64 = 0.0;
    for &m in ms {
        let q = m as f64 / n as f64;
        if !(Q_RANGE.0 - 1e-12..=Q_RANGE.1 + 1e-12).contains(&q) {
            return Err(Error::Precondition(format!("m/n = {q} outside [4/5, 5/4]")));
        }
        phi_max = phi_max.max(max_phi_prime(q)?);
    }
    let nodes = grid.min_nodes.max((grid.density * n as f64 * phi_max / PI).ceil() as usize);
    let panels = nodes.div_ceil(MEAN_RULE);
    let m_max = *ms.iter().max().expect("nonempty");
    let m_min = *ms.iter().min().expect("nonempty");
    // the worst alias is at the largest a and smallest m
    let mut k = ((6 * n + 64) as usize).next_multiple_of(64);
    while mobius_alias_bound(A_RANGE.1, n as u32, m_min, k) > grid.alias_tol {
        k *= 2;
        if k > 1 << 26 {
            return Err(Error::GridCap { cap: 1 << 26, achieved: f64::NAN, target: grid.alias_tol });
        }
    }
    let _ = m_max;
    let dft = MobiusDft::new(k);
    let rule = GaussRule::new(MEAN_RULE);
    let (a0, a1) = A_RANGE;
    let h = (a1 - a0) / panels as f64;
    let mut sums = vec![0.0; ms.len()];
    let mut vals = vec![0.0; ms.len()];
    for p in 0..panels {
        let lo = a0 + h * p as f64;
        for (x, wgt) in rule.nodes.iter().zip(&rule.weights) {
            let a = lo + 0.5 * h * (x + 1.0);
            dft.coefficients(a, n as u32, ms, &mut vals);
            for (s, v) in sums.iter_mut().zip(&vals) {
                *s += 0.5 * h * wgt * v * v;
            }
        }
    }
    Ok(ms
        .iter()
        .zip(sums)
        .map(|(&m, s)| MeanBound {
            n,
            m,
            q: m as f64 / n as f64,
            value: n as f64 * s,
            a_nodes: panels * MEAN_RULE,
            dft_size: k,
            alias_bound: mobius_alias_bound(A_RANGE.1, n as u32, m, k),
        })
        .collect())
}

/// m = ⌈q·n⌉ for each q of the admissible grid.
pub fn q_grid_indices(n: u64) -> Vec<u64> {
    Q_GRID.iter().map(|q| (q * n as f64 - 1e-9).ceil() as u64).collect()
}

/// √π e^{iπ/4} = ∫₀^∞ e^{it}/√t dt.
pub fn fresnel_reference() -> C {
    C::from_polar(PI.sqrt(), PI / 4.0)
}

/// ∫₀^m e^{it}/√t dt = 2∫₀^{√m} e^{is²} ds.
pub fn fresnel_partial(m: f64) -> Result<C> {
    if m <= 0.0 {
        return Err(Error::InvalidParameter("fresnel_partial needs m > 0".into()));
    }
    let r = oscillatory_quad(|s| C::from_polar(2.0, s * s), |s| 2.0 * s, 0.0, m.sqrt(), 1e-11)?;
    Ok(r.value)
}

/// Tail ∫_m^∞ e^{it}/√t dt and the bound 2/√m.
pub fn fresnel_tail(m: f64) -> Result<(f64, f64)> {
    Ok(((fresnel_reference() - fresnel_partial(m)?).norm(), 2.0 / m.sqrt()))
}

/// Measured constants on an admissible grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AdmissibleBand {
    pub grid: (usize, usize),
    pub h_min: f64,
    pub h_max: f64,
    pub abs_h_max: f64,
    pub phi_prime_abs_min: f64,
    pub phi_prime_abs_max: f64,
    pub x_prime_abs_min: f64,
    pub x_prime_abs_max: f64,
    pub p_prime_min: f64,
    pub p_prime_max: f64,
    pub phi_q_max: f64,
    /// max |P_{−a}(x_q) − q|.
    pub critical_residual: f64,
}

/// Sweep (a, q) over an na×nq grid of the admissible rectangle.
pub fn admissible_band(na: usize, nq: usize) -> Result<AdmissibleBand> {
    if na < 2 || nq < 2 {
        return Err(Error::InvalidParameter("admissible grid needs at least 2x2 points".into()));
    }
    let mut b = AdmissibleBand {
        grid: (na, nq),
        h_min: f64::INFINITY,
        h_max: f64::NEG_INFINITY,
        abs_h_max: 0.0,
        phi_prime_abs_min: f64::INFINITY,
        phi_prime_abs_max: 0.0,
        x_prime_abs_min: f64::INFINITY,
        x_prime_abs_max: 0.0,
        p_prime_min: f64::INFINITY,
        p_prime_max: 0.0,
        phi_q_max: f64::NEG_INFINITY,
        critical_residual: 0.0,
    };
    let step = 1e-5;
    for i in 0..na {
        let a = A_RANGE.0 + (A_RANGE.1 - A_RANGE.0) * i as f64 / (na - 1) as f64;
        for j in 0..nq {
            let q = Q_RANGE.0 + (Q_RANGE.1 - Q_RANGE.0) * j as f64 / (nq - 1) as f64;
            let ctx = phase_context_q(a, q)?;
            let x = ctx.x_q.ok_or_else(|| Error::Precondition(format!("no critical point at a={a}, q={q}")))?;
            b.h_min = b.h_min.min(ctx.h_q);
            b.h_max = b.h_max.max(ctx.h_q);
            b.abs_h_max = b.abs_h_max.max(ctx.h_q.abs());
            let d = phi_q_derivative(a, q)?.abs();
            b.phi_prime_abs_min = b.phi_prime_abs_min.min(d);
            b.phi_prime_abs_max = b.phi_prime_abs_max.max(d);
            let xp = ((h_q(a + step, q).acos() - h_q(a - step, q).acos()) / (2.0 * step)).abs();
            b.x_prime_abs_min = b.x_prime_abs_min.min(xp);
            b.x_prime_abs_max = b.x_prime_abs_max.max(xp);
            let pp = ctx.poisson_deriv_at_xq.expect("critical point exists");
            b.p_prime_min = b.p_prime_min.min(pp);
            b.p_prime_max = b.p_prime_max.max(pp);
            b.phi_q_max = b.phi_q_max.max(ctx.f_q_at_xq.expect("critical point exists"));
            b.critical_residual = b.critical_residual.max((poisson(a, x) - q).abs());
        }
    }
    Ok(b)
}

/// One row of a validation-grid export.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridRow {
    /// Absent for quantities integrated over a.
    pub a: Option<f64>,
    pub q: f64,
    pub n: f64,
    pub value: f64,
    pub bound: f64,
}

pub fn write_grid_csv(path: &Path, rows: &[GridRow]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Direct adaptive quadrature of V_a on [0, x], exposed for cross-checks.
pub fn poisson_phase_adaptive(a: f64, x: f64) -> Result<f64> {
    quad::adaptive(|t| poisson(a, t), 0.0, x, 1e-14, 1e-15, 10_000)
        .map(|r| r.value)
        .map_err(|f| Error::Quadrature { msg: "poisson phase".into(), trace: f.trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn critical_point_half_one() {
        let c = phase_context(0.5, 1, 1).unwrap();
        assert_relative_eq!(c.h_q, -0.5, epsilon = 1e-15);
        assert_relative_eq!(c.x_q.unwrap(), 2.0 * PI / 3.0, epsilon = 1e-14);
        let d = phi_q_derivative(0.5, 1.0).unwrap();
        assert_relative_eq!(d, -4.0 / 3.0f64.sqrt(), epsilon = 1e-13);
        let h = 1e-5;
        let fd = (phi_q(0.5 + h, 1.0).unwrap() - phi_q(0.5 - h, 1.0).unwrap()) / (2.0 * h);
        assert!((fd - d).abs() <= 1e-6 * d.abs());
    }

    #[test]
    fn no_critical_point() {
        let c = phase_context_q(0.5, 10.0).unwrap();
        assert!(c.x_q.is_none());
        assert!(stationary_phase_i(&c, 100.0, 1.0).is_err());
    }

    #[test]
    fn first_power_coefficients() {
        let a = 0.6;
        for m in 1..=10u32 {
            let r = oscillatory_i(a, m as f64, 1.0, 1e-12).unwrap();
            let exact = (1.0 - a * a) * (-a).powi(m as i32 - 1);
            assert!((r.coefficient - exact).abs() < 1e-11, "m={m}: {} vs {exact}", r.coefficient);
        }
    }

    #[test]
    fn identity_limit() {
        let r = oscillatory_i(1e-9, 5.0, 5.0, 1e-12).unwrap();
        assert!((r.value - C::new(PI, 0.0)).norm() < 1e-6);
    }

    #[test]
    fn dft_matches_quadrature() {
        let dft = MobiusDft::new(1024);
        let mut out = [0.0; 3];
        dft.coefficients(0.55, 100, &[80, 100, 125], &mut out);
        for (i, m) in [80.0, 100.0, 125.0].iter().enumerate() {
            let r = oscillatory_i(0.55, *m, 100.0, 1e-13).unwrap();
            assert!((r.coefficient - out[i]).abs() < 1e-11, "{} vs {}", r.coefficient, out[i]);
        }
    }

    #[test]
    fn appendix_gaussian() {
        let n = 400.0;
        let c = 0.3;
        let f = Poly(vec![n * c * c / 2.0, -n * c, n / 2.0]);
        let r = appendix_stationary_phase(&f, c - 1.0, c + 1.0, c, 1.0, n, 0.0).unwrap();
        assert_relative_eq!(r.approx.norm(), (2.0 * PI / n).sqrt(), epsilon = 1e-14);
        let q = phase_integral(&f, c - 1.0, c + 1.0, 1e-12).unwrap();
        assert!((q.value - r.approx).norm() <= r.err_bound);
        assert_relative_eq!(r.err_bound, 8.0 / n, epsilon = 1e-15);
    }

    #[test]
    fn appendix_rejects_bad_curvature() {
        let f = Poly(vec![0.0, 0.0, 1.0]);
        assert!(appendix_stationary_phase(&f, -1.0, 1.0, 0.0, 0.5, 3.0, 0.0).is_err());
    }

    #[test]
    fn linear_vdc() {
        let f = Poly(vec![0.0, 1.0]);
        let r = van_der_corput_bound(&f, 0.0, 1.0, 37.0, 1.0, 0.0).unwrap();
        let exact = ((C::from_polar(1.0, 37.0) - 1.0) / C::new(0.0, 37.0)).norm();
        assert!((r.lhs - exact).abs() < 1e-12);
        assert!(r.lhs <= 2.0 / 37.0);
    }

    #[test]
    fn fresnel_tail_bound() {
        let (t, b) = fresnel_tail(100.0).unwrap();
        assert!(t <= b);
        assert_relative_eq!(fresnel_reference().re, PI.sqrt() * 0.5f64.sqrt(), epsilon = 1e-15);
    }
}
