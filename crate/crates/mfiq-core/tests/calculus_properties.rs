//! Property tests for the discrete calculus and the polar decomposition.

mod common;

use mfiq_core::action::{decompose, reconstruct};
use mfiq_core::*;
use num_complex::Complex64;
use proptest::prelude::*;

fn smooth_field(grid: Grid, amps: &[f64; 4], phases: &[f64; 4]) -> RealField {
    let span = grid.span();
    let x0 = grid.x_min();
    let amps = *amps;
    let phases = *phases;
    RealField::from_fn(grid, move |x| {
        let u = 2.0 * core::f64::consts::PI * (x - x0) / span;
        (0..4).map(|m| amps[m] * ((m + 1) as f64 * u + phases[m]).sin()).sum()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn derivative_is_linear(
        a in -3.0f64..3.0,
        b in -3.0f64..3.0,
        amps1 in prop::array::uniform4(-1.0f64..1.0),
        amps2 in prop::array::uniform4(-1.0f64..1.0),
        phases in prop::array::uniform4(0.0f64..6.28),
        periodic in any::<bool>(),
        order in 1u8..=2,
    ) {
        let boundary = if periodic { Boundary::Periodic } else { Boundary::Dirichlet };
        let grid = Grid::new(256, -2.0, 2.0, boundary).unwrap();
        let f = smooth_field(grid.clone(), &amps1, &phases);
        let g = smooth_field(grid.clone(), &amps2, &phases);
        let combo = RealField::new(
            grid.clone(),
            f.values().iter().zip(g.values()).map(|(&x, &y)| a * x + b * y).collect(),
        ).unwrap();
        let lhs = combo.derivative(order).unwrap();
        let df = f.derivative(order).unwrap();
        let dg = g.derivative(order).unwrap();
        let scale = lhs.max_abs().max(1.0);
        for i in 0..grid.len() {
            let rhs = a * df.values()[i] + b * dg.values()[i];
            prop_assert!((lhs.values()[i] - rhs).abs() <= 1e-11 * scale);
        }
    }

    #[test]
    fn normalisation_is_idempotent(
        amps in prop::array::uniform4(0.0f64..0.2),
        phases in prop::array::uniform4(0.0f64..6.28),
        scale in 0.1f64..10.0,
    ) {
        let grid = Grid::new(512, -3.0, 3.0, Boundary::Dirichlet).unwrap();
        let bump = smooth_field(grid.clone(), &amps, &phases);
        let raw = RealField::new(
            grid,
            bump.values().iter().map(|&x| scale * (1.0 + x)).collect(),
        ).unwrap();
        let rho = DensityField::new(raw).unwrap();
        prop_assert!((rho.as_real().quadrature().unwrap() - 1.0).abs() < 1e-12);
        let again = rho.normalized();
        for (x, y) in rho.values().iter().zip(again.values()) {
            prop_assert!((x - y).abs() <= 1e-14 * x.abs().max(1e-3));
        }
    }

    #[test]
    fn polar_roundtrip_is_identity_on_node_free_states(
        amps in prop::array::uniform4(0.0f64..0.15),
        phase_amps in prop::array::uniform4(-0.8f64..0.8),
        phases in prop::array::uniform4(0.0f64..6.28),
    ) {
        let consts = PhysicalConstants::default();
        let grid = Grid::new(512, -3.0, 3.0, Boundary::Dirichlet).unwrap();
        let envelope = smooth_field(grid.clone(), &amps, &phases);
        let action = smooth_field(grid.clone(), &phase_amps, &phases);
        let psi = WaveField::new(ComplexField::new(
            grid.clone(),
            (0..grid.len())
                .map(|i| Complex64::from_polar(1.0 + envelope.values()[i], action.values()[i]))
                .collect(),
        ).unwrap()).unwrap();
        let pair = decompose(&psi, &consts).unwrap();
        let back = reconstruct(&pair, &consts).unwrap();
        for i in 0..grid.len() {
            if pair.trusted[i] {
                prop_assert!((psi.values()[i] - back.values()[i]).norm() <= 1e-10);
            }
        }
    }
}
