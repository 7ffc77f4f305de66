//! Quadrature: Gauss–Legendre panels and adaptive Gauss–Kronrod (7/15).

use num_complex::Complex64;
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::{Add, Mul, Sub};

/// Values that can be integrated: reals and complex numbers.
pub trait Integrand: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
}

impl Integrand for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl Integrand for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

/// Gauss–Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    /// Nodes by Newton iteration on P_n, starting from the Chebyshev-like guess.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussRule { nodes, weights }
    }

    /// Integrate `f` over [a, b] with this rule.
    pub fn apply<T: Integrand>(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> T) -> T {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let mut s = T::zero();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            s = s + f(c + h * x) * *w;
        }
        s * h
    }
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<T: Integrand>(f: &mut impl FnMut(f64) -> T, a: f64, b: f64) -> (T, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        k = k + s * WGK[j];
        if j % 2 == 1 {
            g = g + s * WG[j / 2];
        }
    }
    let k = k * h;
    let g = g * h;
    (k, (k - g).magnitude())
}

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult<T> {
    pub value: T,
    pub error: f64,
    pub intervals: usize,
}

/// Adaptive integration that gave up; `trace` holds (intervals, |estimate|, error) snapshots.
#[derive(Debug, Clone)]
pub struct QuadFailure {
    pub value: f64,
    pub error: f64,
    pub trace: Vec<(usize, f64, f64)>,
}

struct Piece<T> {
    a: f64,
    b: f64,
    value: T,
    err: f64,
}

impl<T> PartialEq for Piece<T> {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl<T> Eq for Piece<T> {}
impl<T> PartialOrd for Piece<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Piece<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Global adaptive Gauss–Kronrod: bisect the worst interval until the summed
/// error estimate is below `max(abs_tol, rel_tol·|I|)`.
pub fn adaptive<T: Integrand>(
    mut f: impl FnMut(f64) -> T,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
    max_intervals: usize,
) -> Result<QuadResult<T>, QuadFailure> {
    let (v, e) = gk15(&mut f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Piece { a, b, value: v, err: e });
    let mut total = v;
    let mut total_err = e;
    let mut trace = Vec::new();
    let mut n = 1;
    loop {
        if total_err <= abs_tol.max(rel_tol * total.magnitude()) {
            return Ok(QuadResult { value: total, error: total_err, intervals: n });
        }
        if n >= max_intervals {
            trace.push((n, total.magnitude(), total_err));
            return Err(QuadFailure { value: total.magnitude(), error: total_err, trace });
        }
        let worst = heap.pop().expect("heap never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            trace.push((n, total.magnitude(), total_err));
            return Err(QuadFailure { value: total.magnitude(), error: total_err, trace });
        }
        let (v1, e1) = gk15(&mut f, worst.a, mid);
        let (v2, e2) = gk15(&mut f, mid, worst.b);
        total = total - worst.value + v1 + v2;
        total_err = total_err - worst.err + e1 + e2;
        heap.push(Piece { a: worst.a, b: mid, value: v1, err: e1 });
        heap.push(Piece { a: mid, b: worst.b, value: v2, err: e2 });
        n += 1;
        if n.is_power_of_two() {
            trace.push((n, total.magnitude(), total_err));
            // re-sum to limit drift from incremental updates
            total = heap.iter().fold(T::zero(), |s, p| s + p.value);
            total_err = heap.iter().map(|p| p.err).sum();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_rule_integrates_polynomials_exactly() {
        for n in 1..12 {
            let g = GaussRule::new(n);
            let deg = 2 * n - 1;
            let v: f64 = g.apply(0.0, 1.0, |x| x.powi(deg as i32));
            assert!((v - 1.0 / (deg as f64 + 1.0)).abs() < 1e-14, "n={n} v={v}");
            let wsum: f64 = g.weights.iter().sum();
            assert!((wsum - 2.0).abs() < 1e-14);
        }
    }

    #[test]
    fn adaptive_handles_endpoint_singularity() {
        let r = adaptive(|x: f64| 1.0 / x.sqrt(), 0.0, 1.0, 1e-12, 0.0, 2000).unwrap();
        assert!((r.value - 2.0).abs() < 1e-10);
    }

    #[test]
    fn adaptive_complex() {
        let r = adaptive(|x: f64| Complex64::new(0.0, x).exp(), 0.0, std::f64::consts::PI, 1e-13, 0.0, 100)
            .unwrap();
        assert!((r.value - Complex64::new(0.0, 2.0)).norm() < 1e-12);
    }

    #[test]
    fn adaptive_reports_failure_with_trace() {
        let r = adaptive(|x: f64| 1.0 / x, 0.0, 1.0, 1e-12, 0.0, 64);
        let e = r.unwrap_err();
        assert!(!e.trace.is_empty());
    }
}
