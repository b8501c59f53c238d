//! Shared analytic oracles and state builders for the integration tests.

use mfiq_core::*;
use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

pub const PI: f64 = core::f64::consts::PI;

/// Gaussian density with standard deviation `sigma`, truncated at 8 sigma.
pub fn gaussian_density(n: usize, sigma: f64) -> DensityField {
    let grid = Grid::new(n, -8.0 * sigma, 8.0 * sigma, Boundary::Dirichlet).unwrap();
    DensityField::new(RealField::from_fn(grid, move |x| {
        (-0.5 * x * x / (sigma * sigma)).exp()
    }))
    .unwrap()
}

pub fn real_wave(rho: &DensityField) -> WaveField {
    WaveField::from_real(&rho.as_real().map(f64::sqrt)).unwrap()
}

/// n-th infinite-well eigenstate `sqrt(2) sin(n pi x)` sampled on `[0, 1]`.
pub fn well_state(points: usize, n: usize) -> WaveField {
    let grid = Grid::new(points, 0.0, 1.0, Boundary::Dirichlet).unwrap();
    WaveField::from_real(&RealField::from_fn(grid, move |x| (n as f64 * PI * x).sin())).unwrap()
}

/// Smooth strictly positive random density on `[-5, 5]`: box-filtered noise
/// around 1, normalised. Node-free by construction.
pub fn random_smooth_density(points: usize, seed: u64) -> DensityField {
    let grid = Grid::new(points, -5.0, 5.0, Boundary::Dirichlet).unwrap();
    let n = grid.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut noise: Vec<f64> =
        (0..n).map(|_| (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 - 0.5).collect();
    let w = n / 32;
    let mut tmp = vec![0.0; n];
    for _ in 0..3 {
        for i in 0..n {
            let lo = i.saturating_sub(w);
            let hi = (i + w + 1).min(n);
            tmp[i] = noise[lo..hi].iter().sum::<f64>() / (hi - lo) as f64;
        }
        std::mem::swap(&mut noise, &mut tmp);
    }
    let peak = noise.iter().fold(0.0f64, |m, &x| m.max(x.abs())).max(1e-300);
    let values: Vec<f64> = noise.iter().map(|&x| 1.0 + 0.8 * x / peak).collect();
    DensityField::new(RealField::new(grid, values).unwrap()).unwrap()
}

/// Node-free complex state: Gaussian envelope times a quadratic phase
/// `exp(i (k x + a x^2 / 2))`.
pub fn chirped_gaussian(points: usize, sigma: f64, k: f64, a: f64) -> WaveField {
    let grid = Grid::new(points, -8.0 * sigma, 8.0 * sigma, Boundary::Dirichlet).unwrap();
    WaveField::new(ComplexField::from_fn(grid, move |x| {
        Complex64::from_polar((-0.25 * x * x / (sigma * sigma)).exp(), k * x + 0.5 * a * x * x)
    }))
    .unwrap()
}

/// Quadrature of `rho (S')^2` with the phase gradient taken from the state.
pub fn flow_term(psi: &WaveField, consts: &PhysicalConstants) -> f64 {
    let grad = mfiq_core::action::phase_gradient(psi, consts).unwrap();
    let rho = psi.to_density();
    let grid = psi.grid().clone();
    let values: Vec<f64> = (0..grid.len())
        .map(|i| rho.values()[i] * grad.values()[i] * grad.values()[i])
        .collect();
    RealField::new(grid, values).unwrap().quadrature().unwrap()
}
