use dsw_edge_core::scattering::{reflection, scattering_ab};
use dsw_edge_core::spectrum::{
    baker_akhiezer_phi, baker_akhiezer_phi_side, lax_q, lax_q_tilde, q_plane_wave, q_plane_wave_x, BranchSide,
    Genus0Spectrum,
};
use dsw_edge_core::{Complex64, Matrix2};
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

const I: Complex64 = Complex64::new(0.0, 1.0);

fn sigma2() -> Matrix2 {
    Matrix2::new(c(0.0, 0.0), -I, I, c(0.0, 0.0))
}

fn spec_strategy() -> impl Strategy<Value = Genus0Spectrum> {
    (-2.0f64..2.0, 0.2f64..2.0).prop_map(|(a, b)| Genus0Spectrum::new(a, b).unwrap())
}

/// Off-band points kept away from the endpoints.
fn point_strategy() -> impl Strategy<Value = (f64, f64)> {
    (-3.0f64..3.0, -3.0f64..3.0).prop_filter("off band", |&(dx, _)| dx.abs() > 0.05)
}

fn fd5<F: Fn(f64) -> Matrix2>(f: F, x: f64, h: f64) -> Matrix2 {
    let w = |s: f64| c(s / (12.0 * h), 0.0);
    f(x - 2.0 * h) * w(1.0) - f(x - h) * w(8.0) + f(x + h) * w(8.0) - f(x + 2.0 * h) * w(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn determinant_is_one(s in spec_strategy(), (dx, y) in point_strategy(), x in -3.0f64..3.0, t in 0.0f64..2.0) {
        let k = c(s.a + dx, y);
        let p = baker_akhiezer_phi(&s, x, t, k).unwrap();
        prop_assert!((p.det() - 1.0).norm() < 1e-12);
    }

    #[test]
    fn lax_pair(s in spec_strategy(), (dx, y) in point_strategy(), x in -2.0f64..2.0, t in 0.0f64..1.0) {
        let k = c(s.a + dx, y);
        let h = 1e-3;
        let phi = baker_akhiezer_phi(&s, x, t, k).unwrap();
        let scale = phi.max_abs();
        let sig = Matrix2::sigma3();
        let phi_x = fd5(|xx| baker_akhiezer_phi(&s, xx, t, k).unwrap(), x, h);
        let q = q_plane_wave(&s, x, t);
        let rx = phi_x + sig * phi * (I * k) - lax_q(q) * phi;
        prop_assert!(rx.max_abs() <= 1e-6 * scale * (1.0 + k.norm()));
        let phi_t = fd5(|tt| baker_akhiezer_phi(&s, x, tt, k).unwrap(), t, h);
        let qt = lax_q_tilde(q, q_plane_wave_x(&s, x, t), k);
        let rt = phi_t + sig * phi * (I * k * k * 2.0) - qt * phi;
        prop_assert!(rt.max_abs() <= 1e-6 * scale * (1.0 + k.norm()).powi(2));
    }

    #[test]
    fn cut_jump(s in spec_strategy(), frac in -0.95f64..0.95, x in -2.0f64..2.0, t in 0.0f64..2.0) {
        let k = c(s.a, frac * s.b);
        let plus = baker_akhiezer_phi_side(&s, x, t, k, Some(BranchSide::Plus)).unwrap();
        let minus = baker_akhiezer_phi_side(&s, x, t, k, Some(BranchSide::Minus)).unwrap();
        let j0 = Matrix2::new(c(0.0, 0.0), I, I, c(0.0, 0.0));
        prop_assert!((minus - plus * j0).max_abs() < 1e-10);
    }

    #[test]
    fn ab_unimodular(s in spec_strategy(), (dx, y) in point_strategy()) {
        let (a, b) = scattering_ab(&s, c(s.a + dx, y), None).unwrap();
        prop_assert!((a * a - b * b - 1.0).norm() < 1e-12);
    }

    #[test]
    fn schwarz_symmetry(s in spec_strategy(), (dx, y) in point_strategy(), x in -2.0f64..2.0, t in 0.0f64..2.0) {
        let k = c(s.a + dx, y);
        let (a, b) = scattering_ab(&s, k, None).unwrap();
        let (ac, bc) = scattering_ab(&s, k.conj(), None).unwrap();
        prop_assert!((ac - a.conj()).norm() < 1e-12);
        prop_assert!((bc + b.conj()).norm() < 1e-12);
        let p = baker_akhiezer_phi(&s, x, t, k).unwrap();
        let pc = baker_akhiezer_phi(&s, x, t, k.conj()).unwrap();
        prop_assert!((pc - sigma2() * p.conj() * sigma2()).max_abs() < 1e-12 * p.max_abs());
    }

    #[test]
    fn real_line_reflection_is_imaginary(s in spec_strategy(), dx in -5.0f64..5.0) {
        prop_assume!(dx != 0.0);
        let r = reflection(&s, c(s.a + dx, 0.0), None).unwrap();
        prop_assert!(r.re.abs() < 1e-14 && r.norm() < 1.0);
    }
}
