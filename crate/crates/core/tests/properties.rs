use h2beta::coeffs::{coeffs_of_power, convolution_power};
use h2beta::operator::{build_section, schur_check, SchurKind};
use h2beta::symbols::{make_symbol, mobius_param_compose, orbit_t_a, SymbolSpec};
use h2beta::weights::{make_weight, WeightSpec};
use num_complex::Complex64 as C;
use proptest::prelude::*;

fn disk_point() -> impl Strategy<Value = C> {
    (0.0f64..0.95, -3.2f64..3.2).prop_map(|(r, t)| C::from_polar(r, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mobius_semigroup(a in -0.9f64..0.9, b in -0.9f64..0.9, z in disk_point()) {
        let ta = make_symbol(&SymbolSpec::mobius(a)).unwrap();
        let tb = make_symbol(&SymbolSpec::mobius(b)).unwrap();
        let tab = make_symbol(&SymbolSpec::mobius(mobius_param_compose(a, b))).unwrap();
        prop_assert!((ta.eval(tb.eval(z)) - tab.eval(z)).norm() < 1e-12);
    }

    #[test]
    fn inner_symbols_have_unimodular_boundary(a in -0.9f64..0.9, n in 1u32..6, x in -3.2f64..3.2) {
        let phi = make_symbol(&SymbolSpec::Product {
            factors: vec![SymbolSpec::blaschke(a, n), SymbolSpec::Monomial { k: 1 }],
        }).unwrap();
        prop_assert!((phi.eval_boundary(x).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rotation_columns_are_isometric(theta in -3.2f64..3.2, nu in 0.0f64..3.0) {
        let w = make_weight(&WeightSpec::Power { nu }).unwrap();
        let phi = make_symbol(&SymbolSpec::Rotation { theta }).unwrap();
        let s = build_section(&w, &phi, 32, 1e-13).unwrap();
        for n in 0..32 {
            prop_assert!((s.column_norm(n) - 1.0).abs() < 1e-11);
        }
    }

    #[test]
    fn orbit_gaps_between_bounds(a in 0.05f64..0.95) {
        // 100 steps keep the gaps above the subnormal range for a < 0.95
        let o = orbit_t_a(a, 100).unwrap();
        prop_assert!(o.gap_bound_slack() >= -1e-15);
        prop_assert!(o.gap.windows(2).all(|g| g[1] < g[0]));
    }

    #[test]
    fn sections_nest(a in -0.8f64..0.8) {
        let w = make_weight(&WeightSpec::Bergman).unwrap();
        let phi = make_symbol(&SymbolSpec::mobius(a)).unwrap();
        let big = build_section(&w, &phi, 40, 1e-13).unwrap();
        let small = build_section(&w, &phi, 20, 1e-13).unwrap();
        let lead = big.matrix.leading(20);
        for m in 0..20 {
            for n in 0..20 {
                prop_assert!((lead.get(m, n) - small.matrix.get(m, n)).norm() < 1e-11);
            }
        }
    }

    #[test]
    fn fft_agrees_with_convolution(a in -0.8f64..0.8, n in 1u32..12) {
        let phi = make_symbol(&SymbolSpec::Product {
            factors: vec![SymbolSpec::mobius(a), SymbolSpec::Monomial { k: 1 }],
        }).unwrap();
        let f = coeffs_of_power(&phi, n, 64, 1e-13).unwrap();
        let c = convolution_power(&phi, n, 64).unwrap();
        for m in 0..64 {
            prop_assert!((f.values[m] - c.values[m]).norm() < 1e-11);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn schur_multipliers_contract(seed in any::<u64>(), dim in 2usize..24) {
        for kind in [SchurKind::Kacnelson, SchurKind::Gap] {
            let r = schur_check(kind, 5, dim, seed).unwrap();
            prop_assert!(r.pass, "{kind:?} seed {seed} dim {dim}: {}", r.worst_ratio);
        }
    }
}
