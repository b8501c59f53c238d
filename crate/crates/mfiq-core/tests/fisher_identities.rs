//! Corpus-wide checks of the three Fisher identities, plus the symmetry and
//! scaling properties of the information functional.

mod common;

use common::*;
use mfiq_core::fisher::*;
use mfiq_core::*;

const N: usize = 32768;

fn real_corpus() -> Vec<(String, WaveField)> {
    let mut corpus = Vec::new();
    for sigma in [0.5, 1.0, 2.0, 3.0, 4.0] {
        corpus.push((format!("gaussian_sigma_{sigma}"), real_wave(&gaussian_density(N, sigma))));
    }
    for n in 1..=5 {
        corpus.push((format!("well_{n}"), well_state(N, n)));
    }
    for seed in 0..10u64 {
        let rho = random_smooth_density(N, 1000 + seed);
        corpus.push((format!("random_{seed}"), real_wave(&rho)));
    }
    corpus
}

#[test]
fn momentum_identity_on_the_real_corpus() {
    let consts = PhysicalConstants::default();
    for (name, psi) in real_corpus() {
        let rho = psi.to_density();
        let p2 = p2_expectation(&psi, &consts).unwrap();
        let info = fisher_info(&rho).unwrap();
        let residual = (p2 - 0.25 * info).abs();
        let bound = 1e-6 * p2.max(1.0);
        assert!(residual <= bound, "{name}: |p2 - I/4| = {residual:e} > {bound:e}");
    }
}

#[test]
fn quantum_potential_identity_on_the_real_corpus() {
    let consts = PhysicalConstants::default();
    for (name, psi) in real_corpus() {
        let rho = psi.to_density();
        let q = q_expectation(&rho, &consts).unwrap();
        let info = fisher_info(&rho).unwrap();
        let residual = (q + 0.125 * info).abs();
        let bound = 1e-6 * q.abs().max(1.0);
        assert!(residual <= bound, "{name}: |q + I/8| = {residual:e} > {bound:e}");
    }
}

#[test]
fn momentum_decomposition_for_complex_states() {
    // <P^2> = (hbar^2/4) I[rho] + integral rho (S')^2 for node-free psi
    let consts = PhysicalConstants::default();
    let params: [(f64, f64, f64); 10] = [
        (1.0, 2.0, 0.0),
        (1.0, -1.0, 0.5),
        (0.8, 3.0, -0.4),
        (1.5, 0.5, 0.2),
        (2.0, 1.0, 0.1),
        (0.7, -2.5, 0.0),
        (1.2, 0.0, 0.8),
        (1.0, 1.5, -0.7),
        (0.9, -0.5, 0.3),
        (1.8, 2.5, -0.1),
    ];
    for (sigma, k, a) in params {
        let psi = chirped_gaussian(N, sigma, k, a);
        let p2 = p2_expectation(&psi, &consts).unwrap();
        let info = fisher_info(&psi.to_density()).unwrap();
        let flow = flow_term(&psi, &consts);
        let residual = (p2 - (0.25 * info + flow)).abs();
        assert!(
            residual <= 1e-5 * p2,
            "(sigma, k, a) = ({sigma}, {k}, {a}): residual {residual:e}, p2 {p2}"
        );
    }
}

#[test]
fn information_is_translation_invariant_on_rings() {
    // shifting by whole cells permutes the stored values
    let grid = Grid::new(4096, 0.0, 10.0, Boundary::Periodic).unwrap();
    let bump = |x: f64| 1.0 + 0.9 * (2.0 * PI * x / 10.0).cos();
    let rho = DensityField::new(RealField::from_fn(grid.clone(), bump)).unwrap();
    let i0 = fisher_info(&rho).unwrap();
    for shift in [1usize, 17, 512] {
        let n = grid.len();
        let values: Vec<f64> = (0..n).map(|i| rho.values()[(i + shift) % n]).collect();
        let shifted = DensityField::new(RealField::new(grid.clone(), values).unwrap()).unwrap();
        let i = fisher_info(&shifted).unwrap();
        assert!((i - i0).abs() <= 1e-8, "shift {shift}: {i} vs {i0}");
    }
}

#[test]
fn information_scales_as_inverse_variance() {
    let i1 = fisher_info(&gaussian_density(N, 1.0)).unwrap();
    let i2 = fisher_info(&gaussian_density(N, 2.0)).unwrap();
    let ratio = i1 / i2;
    assert!((ratio - 4.0).abs() <= 1e-5, "I(sigma)/I(2 sigma) = {ratio}");
}

#[test]
fn report_serialisable_quantities_are_consistent() {
    let consts = PhysicalConstants::default();
    let psi = chirped_gaussian(N, 1.0, 2.0, 0.0);
    let report = FisherReport::compute(&psi, &consts).unwrap();
    // the flow term is what the momentum identity residual reports for a
    // complex state
    let flow = flow_term(&psi, &consts);
    assert!((report.identity_residuals.p2_vs_info - flow).abs() < 1e-5 * flow.max(1.0));
    assert!(report.identity_residuals.q_vs_info.abs() < 1e-6);
    assert!((report.p2_expect - 4.25).abs() < 1e-5);
}
