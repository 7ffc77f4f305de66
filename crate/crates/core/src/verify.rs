//! Named verification suites and the JSON report.

use crate::asymptotics::{self as asy, GridRow, MeanGrid, MobiusPhase, Phase, PhiQ, Poly, VdcPhase};
use crate::constants::Constants;
use crate::counterexample::{build_counterexample, desk_weight_table, CounterexampleOptions};
use crate::error::{Error, Result};
use crate::operator::{self, DivergenceOptions, KernelVerdict, SchurKind, NORM_ITER_CAP};
use crate::symbols::{make_symbol, poisson_phase, SymbolSpec};
use crate::weights::{classify, custom_weight, make_weight, so_envelopes, Constant, Property, Verdict, WeightSpec};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::path::Path;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub status: Status,
    pub measured: f64,
    pub expected: String,
    pub tolerance: f64,
    /// The statement being checked.
    pub anchor: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteResult {
    pub suite: String,
    pub checks: Vec<CheckRecord>,
    pub pass: bool,
}

impl SuiteResult {
    pub fn new(suite: &str) -> Self {
        SuiteResult { suite: suite.to_string(), checks: Vec::new(), pass: false }
    }

    pub fn record(&mut self, id: impl Into<String>, ok: bool, measured: f64, expected: impl Into<String>, tolerance: f64, anchor: &str) {
        self.checks.push(CheckRecord {
            id: id.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            measured,
            expected: expected.into(),
            tolerance,
            anchor: anchor.to_string(),
        });
    }

    /// Sorts records by id and sets the overall status.
    pub fn finish(mut self) -> Self {
        self.checks.sort_by(|a, b| a.id.cmp(&b.id));
        self.pass = !self.checks.is_empty() && self.checks.iter().all(|c| c.status == Status::Pass);
        self
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Goluzin,
    MobiusNorms,
    Divergence,
    StationaryPhase,
    MeanBound,
    Schur,
    Counterexample,
    Classifiers,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Goluzin,
        Suite::MobiusNorms,
        Suite::Divergence,
        Suite::StationaryPhase,
        Suite::MeanBound,
        Suite::Schur,
        Suite::Counterexample,
        Suite::Classifiers,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Goluzin => "goluzin",
            Suite::MobiusNorms => "mobius-norms",
            Suite::Divergence => "divergence",
            Suite::StationaryPhase => "stationary-phase",
            Suite::MeanBound => "mean-bound",
            Suite::Schur => "schur",
            Suite::Counterexample => "counterexample",
            Suite::Classifiers => "classifiers",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown suite `{s}`")))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteOptions {
    pub seed: u64,
    pub constants: Constants,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { seed: 20240601, constants: Constants::builtin() }
    }
}

/// A suite's records plus grid data for CSV companions.
#[derive(Debug, Clone)]
pub struct SuiteOutput {
    pub result: SuiteResult,
    pub grids: Vec<(String, Vec<GridRow>)>,
}

pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Result<SuiteOutput> {
    let mut grids = Vec::new();
    let result = match suite {
        Suite::Goluzin => goluzin()?,
        Suite::MobiusNorms => mobius_norms()?,
        Suite::Divergence => divergence()?,
        Suite::StationaryPhase => stationary_phase(&opts.constants, &mut grids)?,
        Suite::MeanBound => mean_bound(&opts.constants, &mut grids)?,
        Suite::Schur => schur(opts.seed)?,
        Suite::Counterexample => counterexample()?,
        Suite::Classifiers => classifiers()?,
    };
    Ok(SuiteOutput { result: result.finish(), grids })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub config: serde_json::Value,
    pub suites: Vec<SuiteResult>,
    pub pass: bool,
}

/// Writes one JSON document; errors on an empty result list or a suite without checks.
pub fn emit_report(results: &[SuiteResult], config: serde_json::Value, path: &Path) -> Result<Report> {
    if results.is_empty() {
        return Err(Error::InvalidParameter("report needs at least one suite".into()));
    }
    if let Some(s) = results.iter().find(|s| s.checks.is_empty()) {
        return Err(Error::InvalidParameter(format!("suite `{}` has no checks", s.suite)));
    }
    let report = Report {
        schema_version: SCHEMA_VERSION,
        config,
        suites: results.to_vec(),
        pass: results.iter().all(|s| s.pass),
    };
    let mut text = serde_json::to_string_pretty(&report)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(report)
}

/// Symbols with φ(0) = 0 used for the contraction check.
pub fn contraction_symbols() -> Vec<SymbolSpec> {
    let m = |a: f64| SymbolSpec::mobius(a);
    let z = SymbolSpec::Monomial { k: 1 };
    vec![
        z.clone(),
        SymbolSpec::Monomial { k: 2 },
        SymbolSpec::Monomial { k: 3 },
        SymbolSpec::Rotation { theta: 1.0 },
        SymbolSpec::PhiMn { m: 2, n: 1 },
        SymbolSpec::PhiMn { m: 5, n: 2 },
        SymbolSpec::Product { factors: vec![z.clone(), m(0.6)] },
        SymbolSpec::Product { factors: vec![z, SymbolSpec::blaschke(-0.4, 2)] },
        SymbolSpec::Compose { outer: Box::new(m(-0.25)), inner: Box::new(SymbolSpec::Product { factors: vec![m(0.5), m(0.5)] }) },
        SymbolSpec::Compose { outer: Box::new(m(-0.21)), inner: Box::new(SymbolSpec::Product { factors: vec![m(0.3), m(0.7)] }) },
    ]
}

pub fn contraction_weights() -> Vec<WeightSpec> {
    vec![WeightSpec::Bergman, WeightSpec::Power { nu: 0.5 }, WeightSpec::Prop26Ex2 { delta: 1.0 }]
}

fn goluzin() -> Result<SuiteResult> {
    let mut r = SuiteResult::new("goluzin");
    let anchor = "sections of C_phi with phi(0) = 0 on a non-increasing weight have norm <= 1";
    for ws in contraction_weights() {
        let w = make_weight(&ws)?;
        for ss in contraction_symbols() {
            let phi = make_symbol(&ss)?;
            let origin = phi.origin_value().norm();
            let s = operator::build_section(&w, &phi, 256, 1e-12)?;
            let e = operator::norm_estimate(&s.matrix, NORM_ITER_CAP, 1e-10);
            r.record(format!("{ws}|{ss}"), e.sigma <= 1.0 + 1e-8 && origin < 1e-14, e.sigma, "<= 1", 1e-8, anchor);
        }
    }
    Ok(r)
}

fn mobius_norms() -> Result<SuiteResult> {
    let mut r = SuiteResult::new("mobius-norms");
    let anchor = "||C_{T_a}|| = ((1+a)/(1-a))^((nu+1)/2), approached from below by sections";
    for (ws, nu) in [(WeightSpec::Hardy, 0.0), (WeightSpec::Power { nu: 1.0 }, 1.0)] {
        let w = make_weight(&ws)?;
        for a in [0.3, 0.5, 0.7] {
            let phi = make_symbol(&SymbolSpec::mobius(a))?;
            let s = operator::build_section(&w, &phi, 512, 1e-12)?;
            let e = operator::norm_estimate(&s.matrix, 2000, 1e-10);
            let target = ((1.0 + a) / (1.0 - a)).powf((nu + 1.0) / 2.0);
            let ratio = e.sigma / target;
            r.record(format!("{ws}|a={a}"), (0.97..=1.0 + 1e-9).contains(&ratio), ratio, "in [0.97, 1]", 1e-9, anchor);
        }
    }
    let anchor = "C*_{T_a} K_x = K_{T_a(x)}, so ||K_{T_a(x)}||/||K_x|| <= ||C_{T_a}|| on H^2";
    for a in [0.3f64, 0.5, 0.7] {
        let bound = ((1.0 + a) / (1.0 - a)).sqrt();
        for x in [0.0, 0.5, 0.9] {
            let y: f64 = (x + a) / (1.0 + a * x);
            let ratio = ((1.0 - x * x) / (1.0 - y * y)).sqrt();
            r.record(format!("kernel-covariance|a={a}|x={x}"), ratio <= bound * (1.0 + 1e-12), ratio / bound, "<= 1", 1e-12, anchor);
        }
    }
    Ok(r)
}

/// max over k ≤ k_max of the relative error of ‖S e_{2k+1}‖ against √(k+1) for z² on the alternating weight.
pub fn alternating_column_error(k_max: usize) -> Result<f64> {
    let w = make_weight(&WeightSpec::Alternating)?;
    let phi = make_symbol(&SymbolSpec::Monomial { k: 2 })?;
    let s = operator::build_section(&w, &phi, 4 * k_max + 4, 1e-12)?;
    let mut worst: f64 = 0.0;
    for k in 0..=k_max {
        let exact = ((k + 1) as f64).sqrt();
        worst = worst.max((s.column_norm(2 * k + 1) - exact).abs() / exact);
    }
    Ok(worst)
}

pub const SPIKED_N_LIST: [usize; 4] = [64, 256, 1024, 4096];

fn divergence() -> Result<SuiteResult> {
    let mut r = SuiteResult::new("divergence");
    let alt = make_weight(&WeightSpec::Alternating)?;
    let anchor = "z^2 on the alternating weight: ||C e_{2k+1}|| = sqrt(k+1), so C_phi is unbounded";
    let err = alternating_column_error(60)?;
    r.record("alternating|z^2|columns", err <= 1e-8, err, "relative error of sqrt(k+1), k <= 60", 1e-8, anchor);
    let opts = DivergenceOptions::default();
    let z2 = make_symbol(&SymbolSpec::Monomial { k: 2 })?;
    let rep = operator::divergence_probe(&alt, &z2, &[32, 64, 128, 256], &opts)?;
    let col = rep.entries.iter().map(|e| e.max_column_norm).fold(0.0, f64::max);
    r.record("alternating|z^2|flag", rep.divergent, col, "DIVERGENT", 0.0, anchor);
    let z = make_symbol(&SymbolSpec::Monomial { k: 1 })?;
    let rep = operator::divergence_probe(&alt, &z, &[32, 64, 128, 256], &opts)?;
    let col = rep.entries.iter().map(|e| e.max_column_norm).fold(0.0, f64::max);
    r.record("alternating|z|flag", !rep.divergent, col, "not DIVERGENT", 0.0, "C_z is the identity");

    let anchor = "no automorphism T_a is bounded on the spiked weight";
    let w = make_weight(&WeightSpec::Thm38Spiked)?;
    let phi = make_symbol(&SymbolSpec::mobius(0.5))?;
    let opts = DivergenceOptions { iters: 300, ..DivergenceOptions::default() };
    let rep = operator::divergence_probe(&w, &phi, &SPIKED_N_LIST, &opts)?;
    let first = rep.entries.first().expect("nonempty").sigma;
    let last = rep.entries.last().expect("nonempty").sigma;
    let monotone = rep.entries.windows(2).all(|p| p[1].sigma >= p[0].sigma * (1.0 - 1e-9));
    r.record("spiked|T_1/2|monotone", monotone, last, "sigma(N) non-decreasing", 1e-9, anchor);
    r.record("spiked|T_1/2|growth", last / first >= 2.0, last / first, "sigma(4096)/sigma(64) >= 2", 0.0, anchor);
    Ok(r)
}

/// Fitted log-log slope of |stationary − quadrature| for n = 2^6..2^13, with m = round(q n).
pub fn stationary_slope(a: f64, q: f64, kappa: f64, rows: &mut Vec<GridRow>) -> Result<(f64, f64)> {
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    let mut worst_budget: f64 = 0.0;
    for e in 6..=13 {
        let n = (1u64 << e) as f64;
        let m = (q * n).round();
        let ctx = asy::phase_context_q(a, m / n)?;
        let (approx, budget) = asy::stationary_phase_i(&ctx, n, kappa)?;
        let oracle = asy::oscillatory_i(a, m, n, 1e-11)?;
        let err = (approx - oracle.value).norm();
        worst_budget = worst_budget.max(err / budget);
        rows.push(GridRow { a: Some(a), q, n, value: err, bound: budget });
        xs.push(n.ln());
        ys.push(err.ln());
    }
    Ok((operator::lsq_slope(&xs, &ys), worst_budget))
}

/// λ₂ = min F″ on [c−η, c+η] and λ₃ = max |F‴| on [A, B], sampled, with small safety factors.
fn phase_constants(f: &impl Phase, a: f64, b: f64, c: f64, eta: f64) -> (f64, f64) {
    let k = 4001;
    let (mut l2, mut l3) = (f64::INFINITY, 0.0f64);
    for i in 0..k {
        let t = i as f64 / (k - 1) as f64;
        l2 = l2.min(f.d2(c - eta + 2.0 * eta * t));
        l3 = l3.max(f.d3(a + (b - a) * t).abs());
    }
    (0.999 * l2, 1.001 * l3)
}

fn stationary_phase(c: &Constants, grids: &mut Vec<(String, Vec<GridRow>)>) -> Result<SuiteResult> {
    let mut r = SuiteResult::new("stationary-phase");
    let anchor = "I_{m,n} = leading stationary-phase term + O(n^(-3/5))";
    let mut rows = Vec::new();
    let mut worst_budget: f64 = 0.0;
    for a in [0.55, 0.6, 0.65] {
        for q in [0.9, 1.0, 1.1] {
            let (slope, wb) = stationary_slope(a, q, c.stationary_kappa, &mut rows)?;
            worst_budget = worst_budget.max(wb);
            r.record(format!("slope|a={a}|q={q}"), slope <= -0.55, slope, "<= -0.55", 0.0, anchor);
        }
    }
    r.record("budget", worst_budget <= 1.0, worst_budget, "|error| / (kappa n^(-3/5)) <= 1 for n >= 64", 0.0, anchor);
    grids.push(("stationary_phase".into(), rows));

    let anchor = "int e^{iF} = sqrt(2 pi) e^{i(F(c)+pi/4)}/sqrt(F''(c)) + O(1/(eta l2) + eta^4 l3)";
    for n in [100.0, 1000.0, 10000.0] {
        let cc = 0.3;
        let f = Poly(vec![n * cc * cc / 2.0, -n * cc, n / 2.0]);
        let res = asy::appendix_stationary_phase(&f, cc - 1.0, cc + 1.0, cc, 1.0, n, 0.0)?;
        let q = asy::phase_integral(&f, cc - 1.0, cc + 1.0, 1e-12)?;
        let err = (q.value - res.approx).norm();
        r.record(format!("appendix|quadratic|n={n}"), err <= res.err_bound, err / res.err_bound, "<= 1", 0.0, anchor);
    }
    for n in [256.0, 1024.0, 4096.0] {
        let f = MobiusPhase { a: 0.6, q: 1.0, n };
        let xq = asy::phase_context_q(0.6, 1.0)?.x_q.expect("critical point");
        let (lo, hi) = (xq - 0.8, xq + 0.8);
        let eta = 0.5 * n.powf(-0.4);
        let (l2, l3) = phase_constants(&f, lo, hi, xq, eta);
        let res = asy::appendix_stationary_phase(&f, lo, hi, xq, eta, l2, l3)?;
        let q = asy::phase_integral(&f, lo, hi, 1e-12)?;
        let err = (q.value - res.approx).norm();
        r.record(format!("appendix|mobius|n={n}"), err <= res.err_bound, err / res.err_bound, "<= 1", 0.0, anchor);
    }

    let anchor = "|int_A^B e^{inf}| <= 2/(n delta) + C(B-A)/(n delta^2)";
    let f = PhiQ { q: 1.0 };
    let (mut d, mut cc) = (f64::INFINITY, 0.0f64);
    for i in 0..2001 {
        let x = asy::A_RANGE.0 + (asy::A_RANGE.1 - asy::A_RANGE.0) * i as f64 / 2000.0;
        d = d.min(f.d1(x).abs());
        cc = cc.max(f.d2(x).abs());
    }
    for n in [100.0, 1000.0, 10000.0] {
        let v = asy::van_der_corput_bound(&f, asy::A_RANGE.0, asy::A_RANGE.1, n, 0.999 * d, 1.001 * cc)?;
        r.record(format!("vdc|phi_q|n={n}"), v.holds, v.lhs / v.bound, "<= 1", 0.0, anchor);
    }
    let v = asy::van_der_corput_bound(&Poly(vec![0.0, 1.0]), 0.0, 1.0, 50.0, 1.0, 0.0)?;
    r.record("vdc|linear", v.holds && v.lhs <= 2.0 / 50.0, v.lhs / v.bound, "<= 1", 0.0, anchor);
    let v = asy::van_der_corput_bound(&Poly(vec![0.0, 2.0, 1.0]), 0.0, 1.0, 50.0, 2.0, 2.0)?;
    r.record("vdc|quadratic", v.holds, v.lhs / v.bound, "<= 1", 0.0, anchor);

    let anchor = "int_0^inf e^{it}/sqrt(t) dt = sqrt(pi) e^{i pi/4}, tail beyond m at most 2/sqrt(m)";
    let p = asy::fresnel_partial(1e4)?;
    let e = (p - asy::fresnel_reference()).norm();
    r.record("fresnel|m=1e4", e <= 0.02, e, "<= 2/sqrt(m)", 0.02, anchor);
    let (t, b) = asy::fresnel_tail(100.0)?;
    r.record("fresnel|tail|m=100", t <= b, t / b, "<= 1", 0.0, anchor);

    let anchor = "T_a(e^{ix}) = exp(i V_a(x)), V_a the integral of the Poisson kernel";
    for a in [0.3, 0.5, 0.66] {
        let phi = make_symbol(&SymbolSpec::mobius(a))?;
        let mut worst: f64 = 0.0;
        for i in 0..1000 {
            let x = -PI + 2.0 * PI * i as f64 / 999.0;
            let v = poisson_phase(a, x);
            worst = worst.max((Complex64::from_polar(1.0, v) - phi.eval_boundary(x)).norm());
        }
        r.record(format!("phase|a={a}"), worst <= 1e-10, worst, "<= 1e-10", 1e-10, anchor);
    }

    let anchor = "on the admissible rectangle |h_q| < 1, P(x_q) = q, phi_q <= 0 and the derivative bands are bounded away from 0";
    let band = asy::admissible_band(20, 20)?;
    let v = c.band_violations(&band);
    r.record("band|constants", v.is_empty(), v.len() as f64, "no regression against stored bands", 1e-6, anchor);
    r.record("band|h_q", band.abs_h_max <= 15.0 / 16.0 && band.h_min >= -11.0 / 12.0, band.abs_h_max, "|h_q| <= 15/16", 0.0, anchor);
    r.record("band|critical", band.critical_residual <= 1e-10, band.critical_residual, "<= 1e-10", 1e-10, anchor);
    r.record("band|phi_q", band.phi_q_max <= 0.0, band.phi_q_max, "<= 0", 0.0, anchor);
    Ok(r)
}

pub const MEAN_EXPONENTS: std::ops::RangeInclusive<u32> = 6..=12;

fn mean_bound(c: &Constants, grids: &mut Vec<(String, Vec<GridRow>)>) -> Result<SuiteResult> {
    let mut r = SuiteResult::new("mean-bound");
    let anchor = "n * int_{1/2}^{2/3} |T_a^n(m)|^2 da >= delta > 0 for m/n in [4/5, 5/4]";
    let mut rows = Vec::new();
    let mut base: Vec<f64> = Vec::new();
    for e in MEAN_EXPONENTS {
        let n = 1u64 << e;
        let res = asy::mean_lower_bound_multi(n, &asy::q_grid_indices(n), &MeanGrid::default())?;
        if base.is_empty() {
            base = res.iter().map(|b| b.value).collect();
        }
        for (i, b) in res.iter().enumerate() {
            let q = asy::Q_GRID[i];
            rows.push(GridRow { a: None, q, n: n as f64, value: b.value, bound: c.delta_floor });
            r.record(format!("floor|n={n:05}|q={q}"), b.value >= c.delta_floor, b.value, format!(">= {}", c.delta_floor), 0.0, anchor);
            r.record(format!("decay|n={n:05}|q={q}"), b.value >= base[i] / 3.0, b.value / base[i], ">= 1/3 of n = 64", 0.0, anchor);
            r.record(format!("cap|n={n:05}|q={q}"), b.value <= 10.0, b.value, "<= 10", 0.0, anchor);
        }
    }
    grids.push(("mean_bound".into(), rows));
    Ok(r)
}

fn schur(seed: u64) -> Result<SuiteResult> {
    let mut r = SuiteResult::new("schur");
    for (kind, anchor) in [
        (SchurKind::Kacnelson, "||G^-1 M G|| <= ||M|| for M lower triangular and G diagonal non-decreasing"),
        (SchurKind::Gap, "||D^-1 A D|| <= ||A|| when d_m < d_n forces a_mn = 0"),
    ] {
        let rep = operator::schur_check(kind, 200, 64, seed)?;
        r.record(format!("{kind:?}|200x64").to_lowercase(), rep.pass, rep.worst_ratio, "<= 1", operator::SCHUR_REL_TOL, anchor);
        r.record(format!("{kind:?}|converged").to_lowercase(), rep.unconverged == 0, rep.unconverged as f64, "0", 0.0, anchor);
    }
    Ok(r)
}

/// Slowly oscillating weight with β_{n}/β_{m} reaching 2 and 4 at small indices.
pub fn desk_weight() -> Result<crate::weights::WeightSequence> {
    custom_weight(desk_weight_table(1 << 17)?)
}

fn counterexample() -> Result<SuiteResult> {
    let mut r = SuiteResult::new("counterexample");
    let w = desk_weight()?;
    let (_, plan) = build_counterexample(&w, &CounterexampleOptions { k_max: 2, ..Default::default() })?;
    let eps = plan.epsilon;
    let s2 = &plan.stages[1];
    let mass = s2.mass.unwrap_or(0.0);
    let floor = (-9.0f64).exp2() - eps;
    r.record("mass|stage=2", mass >= floor, mass, format!(">= 2^-9 - 2^-15 = {floor}"), 0.0, "sum_{j=n_k}^{2n_k} |phi^{m_k}(j)|^2 >= c_1 > 0");
    let tail = plan.stages[0].tail_bound.unwrap_or(f64::INFINITY);
    r.record("tail|stage=1|p<=8", tail <= eps, tail, "<= 2^-15", 0.0, "sum_{j >= N m} |u^m(j)|^2 <= 2^-15");
    let top = plan.stages.iter().map(|s| s.n_k).max().unwrap_or(0);
    r.record("indices", top <= 1 << 16, top as f64, "<= 2^16", 0.0, "desk-scale indices");
    r.record("invariants", plan.check_invariants().is_ok(), plan.sum_one_minus_a, "a_k = 1 - 1/m_k, fourfold growth, sum 1/m_k <= 1/3", 0.0, "staged Blaschke construction");
    r.record("ratio|stage=1", s2.weight_ratio >= 4.0 && plan.stages[0].weight_ratio >= 2.0, plan.stages[0].weight_ratio, ">= 2", 0.0, "beta_{n_k} >= 2^k beta_{m_k}");
    Ok(r)
}

/// Window on which the spiked weight's slow-oscillation extremum sits at n = 8! − 1.
pub const SPIKED_WINDOW: u64 = 40320;

fn classifiers() -> Result<SuiteResult> {
    let mut r = SuiteResult::new("classifiers");
    let holds = |w: &crate::weights::WeightSequence, p: Property, n: u64| -> Result<(bool, f64)> {
        let rep = classify(w, p, n)?;
        let c = match rep.constant {
            Constant::Upper { c_upper } => c_upper,
            Constant::Pair { c_lower, c_upper } => c_upper.max(1.0 / c_lower),
            Constant::Envelope { exponent, .. } => exponent,
        };
        Ok((rep.verdict == Verdict::HoldsUpToN, c))
    };
    let anchor = "example 2: essentially decreasing, polynomial decay, not slowly oscillating";
    let ex2 = make_weight(&WeightSpec::Prop26Ex2 { delta: 1.0 })?;
    let (h, c) = holds(&ex2, Property::EssentiallyDecreasing, 5040)?;
    r.record("ex2|ed", h, c, "holds", 0.0, anchor);
    let (h, c) = holds(&ex2, Property::PolynomialDecay, 5040)?;
    r.record("ex2|pd", h, c, "holds", 0.0, anchor);
    let (h, c) = holds(&ex2, Property::SlowlyOscillating, 5040)?;
    r.record("ex2|so", !h, c, "fails", 0.0, anchor);

    let anchor = "example 3: slowly oscillating, bounded, not essentially decreasing";
    let ex3 = make_weight(&WeightSpec::Prop26Ex3)?;
    let win = 1 << 20;
    let (h, c) = holds(&ex3, Property::SlowlyOscillating, win)?;
    r.record("ex3|so", h, c, "holds", 0.0, anchor);
    let sup = ex3.values(win)?.into_iter().fold(0.0, f64::max);
    r.record("ex3|bounded", sup <= 1.0, sup, "sup beta <= 1", 0.0, anchor);
    let (h, c) = holds(&ex3, Property::EssentiallyDecreasing, win)?;
    r.record("ex3|ed", !h, c, "fails", 0.0, anchor);

    let anchor = "slow oscillation with constants c, C gives c b_1 n^-alpha <= b_n <= C b_1 n^gamma, alpha = log2(1/c), gamma = log2 C";
    let so_weights: Vec<(String, crate::weights::WeightSequence)> = vec![
        ("hardy".into(), make_weight(&WeightSpec::Hardy)?),
        ("bergman".into(), make_weight(&WeightSpec::Bergman)?),
        ("dirichlet".into(), make_weight(&WeightSpec::Dirichlet)?),
        ("power:nu=2.5".into(), make_weight(&WeightSpec::Power { nu: 2.5 })?),
        ("prop26_ex3".into(), make_weight(&WeightSpec::Prop26Ex3)?),
        ("desk".into(), desk_weight()?),
    ];
    for (name, w) in &so_weights {
        let env = so_envelopes(w, 1 << 16)?;
        r.record(format!("envelopes|{name}"), env.decay_holds && env.growth_holds, env.decay_margin.min(env.growth_margin), "margins >= 1", 0.0, anchor);
    }

    let anchor = "spiked weight: weakly decreasing, not slowly oscillating, ratio k+1 at n = (k+1)! - 1";
    let sp = make_weight(&WeightSpec::Thm38Spiked)?;
    let (h, c) = holds(&sp, Property::WeaklyDecreasing, SPIKED_WINDOW)?;
    r.record("spiked|wd", h, c, "holds", 0.0, anchor);
    let rep = classify(&sp, Property::SlowlyOscillating, SPIKED_WINDOW)?;
    r.record("spiked|so", rep.verdict == Verdict::FailsWithWitness, rep.ratio, "fails", 0.0, anchor);
    let ok = rep.witness_n == Some(SPIKED_WINDOW - 1) && (rep.ratio - 8.0).abs() < 1e-9;
    r.record("spiked|so|witness", ok, rep.witness_n.unwrap_or(0) as f64, "n = 8! - 1 with ratio 8", 1e-9, anchor);

    let anchor = "||K_w||^2 = sum w^(2n)/beta_n";
    let radii: Vec<f64> = (1..=9).map(|i| i as f64 / 10.0).collect();
    for (ws, exact) in [
        (WeightSpec::Hardy, Box::new(|w: f64| 1.0 / (1.0 - w * w)) as Box<dyn Fn(f64) -> f64>),
        (WeightSpec::Bergman, Box::new(|w: f64| 1.0 / (1.0 - w * w).powi(2))),
    ] {
        let p = operator::kernel_profile(&make_weight(&ws)?, &radii, 1e-14)?;
        let err = p.samples.iter().map(|s| (s.norm_sq - exact(s.w)).abs() / exact(s.w)).fold(0.0, f64::max);
        r.record(format!("kernel|{ws}"), err <= 1e-10, err, "closed form", 1e-10, anchor);
    }
    let p = operator::kernel_profile(&make_weight(&WeightSpec::Dirichlet)?, &[0.9, 0.99, 0.995, 0.999], 1e-12)?;
    r.record("kernel|dirichlet|exponent", p.fitted_exponent < 0.15, p.fitted_exponent, "< 0.15", 0.0, "logarithmic kernel growth");
    let exps = reich_exponents()?;
    let increasing = exps.windows(2).all(|p| p[1] > p[0]);
    let last = *exps.last().expect("nonempty");
    let verdict = reich_verdict()?;
    r.record("kernel|reich|diverges", increasing && last > 10.0, last, "exponents increase without bound", 0.0, "no polynomial decay, no slow growth");
    r.record("kernel|reich|verdict", verdict == KernelVerdict::FailsSlowGrowth, 0.0, "FailsSlowGrowth", 0.0, "no polynomial decay, no slow growth");
    Ok(r)
}

/// Fitted kernel exponents of reich(0.5) on radius windows tightening toward r = 1/2.
pub fn reich_exponents() -> Result<Vec<f64>> {
    let w = make_weight(&WeightSpec::Reich { r: 0.5 })?;
    let mut out = Vec::new();
    for j in 2..=8 {
        let gap = (-(j as f64)).exp2();
        let radii: Vec<f64> = (0..4).map(|i| 0.5 - gap * (-(i as f64)).exp2()).collect();
        out.push(operator::kernel_growth_report(&w, &radii, 1e-12)?.fitted_exponent);
    }
    Ok(out)
}

pub fn reich_verdict() -> Result<KernelVerdict> {
    let w = make_weight(&WeightSpec::Reich { r: 0.5 })?;
    Ok(operator::kernel_growth_report(&w, &[0.3, 0.45, 0.5, 0.6, 0.9], 1e-12)?.verdict)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overall_status() {
        let mut s = SuiteResult::new("x");
        s.record("b", true, 1.0, "", 0.0, "");
        s.record("a", true, 1.0, "", 0.0, "");
        let s = s.finish();
        assert!(s.pass);
        assert_eq!(s.checks[0].id, "a");
        let mut t = SuiteResult::new("y");
        t.record("a", false, 1.0, "", 0.0, "");
        assert!(!t.finish().pass);
        assert!(!SuiteResult::new("z").finish().pass);
    }

    #[test]
    fn report_rejects_empty() {
        let dir = std::env::temp_dir().join("h2beta-report-test.json");
        assert!(emit_report(&[], serde_json::Value::Null, &dir).is_err());
        assert!(emit_report(&[SuiteResult::new("e").finish()], serde_json::Value::Null, &dir).is_err());
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }
}
