//! Independent reference computations for values the library derives.

#![allow(clippy::needless_range_loop)]

use approx::assert_relative_eq;
use h2beta::asymptotics::{oscillatory_i, stationary_phase_i, phase_context_q};
use h2beta::coeffs::{coeffs_of_power, convolution_power};
use h2beta::operator::{build_section, norm_estimate, NORM_ITER_CAP};
use h2beta::symbols::{make_symbol, poisson_phase, poisson_phase_closed, SymbolSpec};
use h2beta::weights::{make_weight, WeightSpec};
use nalgebra::DMatrix;
use num_complex::Complex64 as C;

/// Taylor coefficients of T_a^n by repeated multiplication of a + (1 − a²) Σ (−a)^{k−1} z^k.
fn mobius_power_naive(a: f64, n: u32, len: usize) -> Vec<f64> {
    let mut base = vec![0.0; len];
    base[0] = a;
    for k in 1..len {
        base[k] = (1.0 - a * a) * (-a).powi(k as i32 - 1);
    }
    let mut out = vec![0.0; len];
    out[0] = 1.0;
    for _ in 0..n {
        let mut next = vec![0.0; len];
        for i in 0..len {
            for j in 0..len - i {
                next[i + j] += out[i] * base[j];
            }
        }
        out = next;
    }
    out
}

#[test]
fn mobius_power_coefficients() {
    for (a, n) in [(0.5, 1), (0.3, 4), (0.62, 9), (-0.4, 6)] {
        let phi = make_symbol(&SymbolSpec::mobius(a)).unwrap();
        let naive = mobius_power_naive(a, n, 48);
        let fft = coeffs_of_power(&phi, n, 48, 1e-13).unwrap();
        let conv = convolution_power(&phi, n, 48).unwrap();
        for m in 0..48 {
            assert!((fft.values[m] - C::new(naive[m], 0.0)).norm() < 1e-12, "a={a} n={n} m={m}");
            assert!((conv.values[m] - C::new(naive[m], 0.0)).norm() < 1e-12, "a={a} n={n} m={m}");
        }
    }
}

#[test]
fn section_norm_matches_svd() {
    let w = make_weight(&WeightSpec::Power { nu: 1.0 }).unwrap();
    for a in [0.3, 0.6] {
        let phi = make_symbol(&SymbolSpec::mobius(a)).unwrap();
        let s = build_section(&w, &phi, 64, 1e-13).unwrap();
        let m = DMatrix::from_fn(64, 64, |i, j| s.matrix.get(i, j).re);
        let svd = m.singular_values().max();
        let est = norm_estimate(&s.matrix, NORM_ITER_CAP, 1e-12);
        assert_relative_eq!(est.sigma, svd, max_relative = 1e-8);
    }
}

#[test]
fn section_entries_match_definition() {
    // B[m][n] = sqrt(β_m/β_n) · (φ^n)^(m)
    let w = make_weight(&WeightSpec::Bergman).unwrap();
    let a = 0.45;
    let phi = make_symbol(&SymbolSpec::mobius(a)).unwrap();
    let s = build_section(&w, &phi, 24, 1e-13).unwrap();
    for n in 0..24u32 {
        let col = mobius_power_naive(a, n, 24);
        for m in 0..24 {
            let bm = w.eval(m as u64).unwrap();
            let bn = w.eval(n as u64).unwrap();
            let want = (bm / bn).sqrt() * col[m];
            assert!((s.entry(m, n as usize).re - want).abs() < 1e-11, "m={m} n={n}");
        }
    }
}

#[test]
fn boundary_phase_closed_form() {
    for a in [0.1, 0.5, 0.66, 0.9] {
        for i in 0..=40 {
            let x = -3.1 + 6.2 * i as f64 / 40.0;
            assert!((poisson_phase(a, x) - poisson_phase_closed(a, x)).abs() < 1e-12);
        }
    }
}

#[test]
fn oscillatory_integral_gives_coefficient() {
    let a = 0.6;
    let phi = make_symbol(&SymbolSpec::mobius(a)).unwrap();
    for n in [8u32, 20] {
        let c = coeffs_of_power(&phi, n, 30, 1e-13).unwrap();
        for m in [n - 2, n, n + 3] {
            let osc = oscillatory_i(a, m as f64, n as f64, 1e-12).unwrap();
            assert!((osc.coefficient - c.values[m as usize].re).abs() < 1e-10, "n={n} m={m}");
        }
    }
}

#[test]
fn stationary_phase_converges_slowly() {
    let ctx = phase_context_q(0.6, 1.0).unwrap();
    let n = 2048.0;
    let (approx, budget) = stationary_phase_i(&ctx, n, 1.0).unwrap();
    let exact = oscillatory_i(0.6, n, n, 1e-11).unwrap().value;
    let err = (approx - exact).norm();
    assert!(err <= budget, "{err} > {budget}");
    assert!(err < 0.05 * approx.norm());
}
