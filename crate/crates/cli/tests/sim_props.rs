use std::f64::consts::PI;

use dsw_edge::sim::{asymptotic_profile, compare_edge, evolve, step_initial, EvolveOptions, Field, Grid};
use dsw_edge_core::scattering::ScatteringData;
use dsw_edge_core::specfun::QuadratureSpec;
use dsw_edge_core::spectrum::Genus0Spectrum;
use dsw_edge_core::Complex64;
use proptest::prelude::*;

fn packet(g: Grid, amp: f64, x0: f64, width: f64, k: f64) -> Field {
    let vals = g
        .xs()
        .iter()
        .map(|&x| Complex64::from_polar(amp * (-((x - x0) / width).powi(2)).exp(), k * x))
        .collect();
    Field::new(g, 0.0, vals).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn mass_and_energy_conserved(amp in 0.1f64..0.8, x0 in -4.0f64..4.0, width in 1.0f64..2.0, k in -2.0f64..2.0) {
        let g = Grid::new(-20.0, 20.0, 512).unwrap();
        let f0 = packet(g, amp, x0, width, k);
        // E = K − Q can cancel, so measure against K + Q = E + 2Q
        let quartic: f64 = f0.values.iter().map(|v| v.norm_sqr().powi(2)).sum::<f64>() * g.dx;
        let scale = f0.energy0 + 2.0 * quartic;
        let f = evolve(f0, 0.002, 500, EvolveOptions::periodic(amp)).unwrap();
        prop_assert!(f.mass_drift().abs() <= 1e-8 * f.t);
        prop_assert!((f.energy() - f.energy0).abs() <= 1e-6 * scale, "{}", (f.energy() - f.energy0) / scale);
    }

    #[test]
    fn modulated_plane_wave(b in 0.1f64..1.5, m in -6i32..6) {
        // B e^{i(kx − (k² − 2B²)t)} with k commensurate with the period
        let g = Grid::new(-8.0, 8.0, 128).unwrap();
        let k = 2.0 * PI * f64::from(m) / 16.0;
        let vals = g.xs().iter().map(|&x| Complex64::from_polar(b, k * x)).collect();
        let f = evolve(Field::new(g, 0.0, vals).unwrap(), 0.0125, 80, EvolveOptions::periodic(b)).unwrap();
        for (x, v) in g.xs().iter().zip(&f.values) {
            let exact = Complex64::from_polar(b, k * x - (k * k - 2.0 * b * b) * f.t);
            prop_assert!((v - exact).norm() <= 1e-10);
        }
    }

    #[test]
    fn step_mass_oracle(a in -1.5f64..1.5, b in 0.2f64..1.5, r in 0.0f64..3.0) {
        let spec = Genus0Spectrum::new(a, b).unwrap();
        let g = Grid::new(-32.0, 32.0, 2048).unwrap();
        let f = step_initial(&spec, g, r).unwrap();
        let exact = b * b * (32.0 - 5.0 * r / 8.0);
        prop_assert!((f.mass() - exact).abs() <= b * b * g.dx);
        prop_assert!(f.values.iter().zip(g.xs()).all(|(v, x)| x < 0.0 || *v == Complex64::default()));
    }

    #[test]
    fn sponge_mass_balance(amp in 0.3f64..1.0, k in 1.0f64..3.0) {
        let g = Grid::new(-20.0, 20.0, 512).unwrap();
        let f = evolve(packet(g, amp, 10.0, 1.5, k), 0.005, 600, EvolveOptions::with_sponge(amp, 0.15)).unwrap();
        prop_assert!(f.absorbed > 0.0);
        prop_assert!(f.mass_drift().abs() <= 1e-10);
    }
}

#[test]
fn zero_field_comparison_measures_the_asymptotics() {
    let sd = ScatteringData::new(Genus0Spectrum::new(-1.0, 0.5).unwrap(), QuadratureSpec::default()).unwrap();
    let t = 30.0;
    let g = Grid::new(90.0, 130.0, 512).unwrap();
    let f = Field::new(g, t, vec![Complex64::default(); 512]).unwrap();
    let window = (100.0, 125.0);
    let cmp = compare_edge(&f, &sd, window).unwrap();
    let xs: Vec<f64> = g.xs().into_iter().filter(|x| (window.0..=window.1).contains(x)).collect();
    let max = asymptotic_profile(&sd, &xs, t).unwrap().iter().map(|v| v.norm()).fold(0.0, f64::max);
    assert_eq!(cmp.linf_env, max);
    assert!(cmp.peaks.iter().all(|p| p.x_num.is_none() && p.offset().is_nan()));
}
