use proptest::prelude::*;
use udw_core::entanglement::{assemble_rho, estimator_i, negativity_general, negativity_split, ptrans_eigen_oracle};
use udw_core::matrix_elements::{compute, kernel_k, kernel_script_k_parts, EvalOptions, MatrixElements};
use udw_core::model::{FieldSpec, PairConfig};
use udw_core::quadrature::QuadratureResult;
use udw_core::specfun::{dawson, erf, faddeeva_w};
use udw_core::wightman::{smeared_commutator, TestFunctionPair};
use udw_core::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn q(v: Complex64) -> QuadratureResult {
    QuadratureResult {
        value: v,
        ..QuadratureResult::zero()
    }
}

fn elements(l: f64, lab: Complex64, mp: Complex64, mm: Complex64) -> MatrixElements {
    MatrixElements {
        l_aa: q(c(l, 0.0)),
        l_bb: q(c(l, 0.0)),
        l_ab: q(lab),
        m: q(mp + mm),
        m_plus: q(mp),
        m_minus: q(mm),
    }
}

fn small() -> impl Strategy<Value = Complex64> {
    (-0.1f64..0.1, -0.1f64..0.1).prop_map(|(a, b)| c(a, b))
}

proptest! {
    #[test]
    fn negativity_identities(l in 0.0f64..0.1, mp in small(), mm in small()) {
        let s = negativity_split(l, mp, mm);
        prop_assert!(s.n >= 0.0 && s.n_plus >= 0.0 && s.n_minus >= 0.0);
        prop_assert_eq!(s.n, negativity_general(l, l, (mp + mm).norm()));
        // triangle bounds on |M| carry over to the negativities
        prop_assert!(s.n <= (mp.norm() + mm.norm() - l).max(0.0) + 1e-15);
        prop_assert!(s.n + 1e-15 >= ((mp.norm() - mm.norm()).abs() - l).max(0.0));
        let i = estimator_i(s.n, s.n_minus);
        prop_assert!(i >= 0.0);
        if s.n == 0.0 {
            prop_assert_eq!(i, 0.0);
        }
    }

    #[test]
    fn density_matrix_hermitian_unit_trace(l in 0.0f64..0.4, lab in small(), mp in small(), mm in small()) {
        let rho = assemble_rho(&elements(l, lab, mp, mm)).unwrap();
        prop_assert!(rho.is_hermitian(0.0));
        prop_assert!((rho.trace() - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn ptrans_eigen_matches_closed_negativity(l in 1e-4f64..0.05, lab in small(), m in small()) {
        let lab = lab * 1e-3;
        let rho = assemble_rho(&elements(l, lab, m * (l * 3.0), c(0.0, 0.0))).unwrap();
        let n = negativity_general(l, l, (m * (l * 3.0)).norm());
        let e = (-ptrans_eigen_oracle(&rho)).max(0.0);
        prop_assert!((n - e).abs() <= (2.0 * l).powi(2));
    }

    #[test]
    fn smeared_commutator_antisymmetric(
        n in 1usize..8,
        ca in -12.0f64..12.0,
        cb in -3.0f64..3.0,
        wa in 0.3f64..1.5,
        wb in 0.3f64..1.5,
        dx in 0.5f64..9.0,
    ) {
        let f = TestFunctionPair { a: (ca, wa), b: (cb, wb) };
        prop_assume!(n <= 2 || n % 2 == 1);
        let x = smeared_commutator(n, &f, dx).unwrap();
        let y = smeared_commutator(n, &f.swapped(), dx).unwrap();
        prop_assert!((x + y).norm() <= 1e-10 * x.norm().max(1e-300), "{x} {y}");
    }

    #[test]
    fn error_function_symmetries(x in -6.0f64..6.0, y in -6.0f64..6.0) {
        let z = c(x, y);
        let a = erf(z.conj()).unwrap();
        let b = erf(z).unwrap().conj();
        prop_assert!((a - b).norm() <= 1e-13 * b.norm().max(1.0));
        prop_assert!((dawson(c(-x, -y)).unwrap() + dawson(z).unwrap()).norm() <= 1e-13 * dawson(z).unwrap().norm().max(1.0));
        if y >= 0.0 {
            // w(-z̄) = conj w(z) in the upper half plane
            let w1 = faddeeva_w(c(-x, y)).unwrap();
            let w2 = faddeeva_w(z).unwrap().conj();
            prop_assert!((w1 - w2).norm() <= 1e-14 * w2.norm());
        }
    }

    #[test]
    fn erf_part_equals_k3_plus_k4(n in 1usize..7, k in 0.0f64..15.0, t in -14.0f64..14.0, om in 0.0f64..8.0) {
        let mut f = FieldSpec::massless(n);
        if n == 1 {
            f.ir_cutoff = 0.01;
        }
        let cfg = PairConfig::new(f, om, 7.0, t);
        let k3 = kernel_k(3, k, &cfg).unwrap();
        let k4 = kernel_k(4, k, &cfg).unwrap();
        let (g, j) = kernel_script_k_parts(k, &cfg).unwrap();
        let k12 = kernel_k(1, k, &cfg).unwrap() + kernel_k(2, k, &cfg).unwrap();
        let s = k3.norm() + k4.norm();
        prop_assert!((k3 + k4 - j).norm() <= 1e-9 * s.max(1e-300));
        prop_assert!((k12 - g).norm() <= 1e-12 * k12.norm().max(1e-300));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn coupling_scales_elements_quadratically(t in -14.0f64..14.0, lam in 0.01f64..3.0, n in 2usize..6) {
        let mut cfg = PairConfig::new(FieldSpec::massless(n), 7.0, 7.0, t);
        let opts = EvalOptions::default();
        let one = compute(&cfg, &opts).unwrap();
        cfg.coupling = lam;
        let s = compute(&cfg, &opts).unwrap();
        let l2 = lam * lam;
        for (a, b) in [(one.l_aa, s.l_aa), (one.l_ab, s.l_ab), (one.m, s.m), (one.m_plus, s.m_plus), (one.m_minus, s.m_minus)] {
            prop_assert!((b.value - a.value * l2).norm() <= 4.0 * f64::EPSILON * (a.value * l2).norm());
        }
    }

    #[test]
    fn total_is_sum_of_parts(t in -14.0f64..14.0, n in 2usize..6, om in 0.0f64..8.0) {
        let cfg = PairConfig::new(FieldSpec::massless(n), om, 7.0, t);
        let me = compute(&cfg, &EvalOptions::default()).unwrap();
        let d = (me.m.value - me.m_plus.value - me.m_minus.value).norm();
        let allowed = 10.0 * (me.m.abs_error + me.m_plus.abs_error + me.m_minus.abs_error) + 1e-9 * me.m.value.norm();
        prop_assert!(d <= allowed, "d={d:e} allowed={allowed:e}");
    }
}
