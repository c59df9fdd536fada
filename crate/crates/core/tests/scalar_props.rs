use dsw_edge_core::scattering::{
    chi_fn, delta_boundary, delta_fn, delta_with_weight, nu_of, reflection_abs2, EdgeFrame, ScatteringData,
};
use dsw_edge_core::specfun::{AxisSide, Point, QuadratureSpec};
use dsw_edge_core::spectrum::Genus0Spectrum;
use dsw_edge_core::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn spec_strategy() -> impl Strategy<Value = Genus0Spectrum> {
    (-1.5f64..0.5, 0.3f64..1.5).prop_map(|(a, b)| Genus0Spectrum::new(a, b).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn delta_jump_matches_weight(s in spec_strategy(), k0_off in -1.0f64..1.0, gap in 0.05f64..3.0) {
        let q = QuadratureSpec::default();
        let k0 = s.a + k0_off;
        let x = k0 - gap;
        prop_assume!((x - s.a).abs() > 1e-3);
        let up = delta_boundary(&s, x, AxisSide::Above, k0, &q).unwrap();
        let dn = delta_boundary(&s, x, AxisSide::Below, k0, &q).unwrap();
        let expect = 1.0 + reflection_abs2(&s, x);
        prop_assert!((up / dn - expect).norm() < 1e-8);
    }

    #[test]
    fn delta_reflection_symmetry(s in spec_strategy(), k0_off in -1.0f64..1.0, re in -3.0f64..3.0, im in 0.05f64..3.0) {
        let q = QuadratureSpec::default();
        let k0 = s.a + k0_off;
        let k = c(re, im);
        let d = delta_fn(&s, k, k0, &q).unwrap();
        let dc = delta_fn(&s, k.conj(), k0, &q).unwrap();
        prop_assert!((dc.conj() * d - 1.0).norm() < 1e-8);
    }

    #[test]
    fn chi_independent_of_cut(s in spec_strategy(), k0_off in -1.0f64..1.0) {
        let q = QuadratureSpec::default();
        let k0 = s.a + k0_off;
        prop_assume!(k0 > -4.9);
        let base = chi_fn(&s, k0, 5.0, &q).unwrap();
        for n in [20.0, 50.0] {
            let v = chi_fn(&s, k0, n, &q).unwrap();
            prop_assert!((v - base).norm() < 1e-8, "N={n}");
        }
    }

    #[test]
    fn psi_is_real_and_nu_nonnegative(rho in 0.0f64..4.0, t in 2.0f64..500.0) {
        let s = Genus0Spectrum::new(-1.0, 0.5).unwrap();
        let sd = ScatteringData::new(s, QuadratureSpec::default()).unwrap();
        let e = EdgeFrame::new(&sd, rho, t).unwrap();
        prop_assert!(e.psi.is_finite());
        prop_assert!(e.nu >= 0.0 && e.nu <= 2f64.ln() / (2.0 * PI) + 1e-15);
        prop_assert!((e.chi.norm() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn delta_of_step_weight_oracle() {
    // δ for the indicator weight ln2·1_{[k0-1,k0]} has a closed form.
    let q = QuadratureSpec::default();
    let (lo, k0) = (-1.3, -0.3);
    let k = c(0.4, 0.7);
    let w = |s: f64| if s >= lo { 2f64.ln() } else { 0.0 };
    let d = delta_with_weight(w, &[lo], Point::Off(k), k0, &q).unwrap();
    let expect = ((c(k0, 0.0) - k) / (c(lo, 0.0) - k)).powc(c(0.0, -2f64.ln() / (2.0 * PI)));
    assert!((d - expect).norm() < 1e-10, "{d} {expect}");
}

#[test]
fn nu_at_band_crossing() {
    let s = Genus0Spectrum::new(-0.6, 0.9).unwrap();
    assert!((nu_of(&s, -0.6) - 2f64.ln() / (2.0 * PI)).abs() < 1e-15);
}

#[test]
fn chi_one_ulp_from_band_crossing() {
    let q = QuadratureSpec::default();
    let s = Genus0Spectrum::new(0.3, 1.2).unwrap();
    let at = chi_fn(&s, 0.3, 5.0, &q).unwrap();
    for k0 in [0.3f64.next_up(), 0.3f64.next_down(), 0.3 + 1e-9] {
        let v = chi_fn(&s, k0, 5.0, &q).unwrap();
        assert!((v - at).norm() < 1e-6, "k0={k0} {v} {at}");
    }
}
