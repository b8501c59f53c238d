//! Field types on a [`Grid`] and the discrete calculus they share:
//! second-order finite-difference derivatives, quadrature, normalisation.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::constants::{DENSITY_FLOOR_REL, TRUST_FACTOR};
use crate::error::{Error, Result};
use crate::grid::{Boundary, Grid};

/// Scalar kinds a field can hold. Sealed; implemented for `f64` and
/// [`Complex64`].
pub trait FieldScalar: Copy + core::fmt::Debug {
    fn zero() -> Self;
    fn add(self, other: Self) -> Self;
    fn sub(self, other: Self) -> Self;
    fn scale(self, k: f64) -> Self;
    fn finite(self) -> bool;
}

impl FieldScalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn sub(self, other: Self) -> Self {
        self - other
    }
    fn scale(self, k: f64) -> Self {
        self * k
    }
    fn finite(self) -> bool {
        self.is_finite()
    }
}

impl FieldScalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn sub(self, other: Self) -> Self {
        self - other
    }
    fn scale(self, k: f64) -> Self {
        self * k
    }
    fn finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// Central second-order stencils; Dirichlet endpoints use one-sided
/// second-order stencils, periodic grids wrap.
fn stencil_derivative<T: FieldScalar>(v: &[T], grid: &Grid, order: u8) -> Result<Vec<T>> {
    let n = v.len();
    if n < 4 {
        return Err(Error::GridTooSmall);
    }
    let h = grid.spacing();
    let mut out = vec![T::zero(); n];
    let wrap = |i: isize| -> T { v[i.rem_euclid(n as isize) as usize] };

    match order {
        1 => {
            let inv2h = 1.0 / (2.0 * h);
            for i in 1..n - 1 {
                out[i] = v[i + 1].sub(v[i - 1]).scale(inv2h);
            }
            match grid.boundary() {
                Boundary::Periodic => {
                    out[0] = v[1].sub(v[n - 1]).scale(inv2h);
                    out[n - 1] = v[0].sub(v[n - 2]).scale(inv2h);
                }
                Boundary::Dirichlet => {
                    // one-sided: (-3 f0 + 4 f1 - f2) / 2h
                    out[0] = v[1].scale(4.0).sub(v[0].scale(3.0)).sub(v[2]).scale(inv2h);
                    out[n - 1] = v[n - 1]
                        .scale(3.0)
                        .sub(v[n - 2].scale(4.0))
                        .add(v[n - 3])
                        .scale(inv2h);
                }
            }
        }
        2 => {
            let invh2 = 1.0 / (h * h);
            for i in 1..n - 1 {
                out[i] = v[i + 1].add(v[i - 1]).sub(v[i].scale(2.0)).scale(invh2);
            }
            match grid.boundary() {
                Boundary::Periodic => {
                    out[0] = wrap(1).add(wrap(-1)).sub(v[0].scale(2.0)).scale(invh2);
                    out[n - 1] = wrap(0).add(wrap(n as isize - 2)).sub(v[n - 1].scale(2.0)).scale(invh2);
                }
                Boundary::Dirichlet => {
                    // one-sided: (2 f0 - 5 f1 + 4 f2 - f3) / h^2
                    out[0] = v[0]
                        .scale(2.0)
                        .sub(v[1].scale(5.0))
                        .add(v[2].scale(4.0))
                        .sub(v[3])
                        .scale(invh2);
                    out[n - 1] = v[n - 1]
                        .scale(2.0)
                        .sub(v[n - 2].scale(5.0))
                        .add(v[n - 3].scale(4.0))
                        .sub(v[n - 4])
                        .scale(invh2);
                }
            }
        }
        _ => return Err(Error::InvalidInput("derivative order must be 1 or 2")),
    }
    Ok(out)
}

/// Trapezoidal rule on Dirichlet grids, rectangle rule over the period on
/// periodic grids. Exact for linear functions on Dirichlet grids.
fn quadrature_weights_sum(v: &[f64], grid: &Grid) -> Result<f64> {
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFiniteField);
    }
    let h = grid.spacing();
    let sum = match grid.boundary() {
        Boundary::Dirichlet => {
            let inner: f64 = v[1..v.len() - 1].iter().sum();
            inner + 0.5 * (v[0] + v[v.len() - 1])
        }
        Boundary::Periodic => v.iter().sum(),
    };
    Ok(sum * h)
}

/// Real-valued field on a grid. Values are immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct RealField {
    grid: Grid,
    values: Vec<f64>,
}

impl RealField {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidInput("value count does not match grid storage length"));
        }
        Ok(RealField { grid, values })
    }

    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> f64) -> Self {
        let values = (0..grid.len()).map(|i| f(grid.point(i))).collect();
        RealField { grid, values }
    }

    pub fn zeros(grid: Grid) -> Self {
        let values = vec![0.0; grid.len()];
        RealField { grid, values }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|x| x.is_finite())
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> RealField {
        RealField { grid: self.grid.clone(), values: self.values.iter().map(|&x| f(x)).collect() }
    }

    /// First or second spatial derivative with the shared stencils.
    pub fn derivative(&self, order: u8) -> Result<RealField> {
        let values = stencil_derivative(&self.values, &self.grid, order)?;
        Ok(RealField { grid: self.grid.clone(), values })
    }

    /// Definite integral over the grid domain.
    pub fn quadrature(&self) -> Result<f64> {
        quadrature_weights_sum(&self.values, &self.grid)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, &x| m.max(x.abs()))
    }
}

/// Complex-valued field on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexField {
    grid: Grid,
    values: Vec<Complex64>,
}

impl ComplexField {
    pub fn new(grid: Grid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidInput("value count does not match grid storage length"));
        }
        Ok(ComplexField { grid, values })
    }

    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> Complex64) -> Self {
        let values = (0..grid.len()).map(|i| f(grid.point(i))).collect();
        ComplexField { grid, values }
    }

    pub fn from_real(field: &RealField) -> Self {
        ComplexField {
            grid: field.grid.clone(),
            values: field.values.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|z| z.finite())
    }

    pub fn derivative(&self, order: u8) -> Result<ComplexField> {
        let values = stencil_derivative(&self.values, &self.grid, order)?;
        Ok(ComplexField { grid: self.grid.clone(), values })
    }

    /// Pointwise `|z|^2` as a real field.
    pub fn modulus_squared(&self) -> RealField {
        RealField {
            grid: self.grid.clone(),
            values: self.values.iter().map(|z| z.norm_sqr()).collect(),
        }
    }

    pub fn scale(&self, k: Complex64) -> ComplexField {
        ComplexField { grid: self.grid.clone(), values: self.values.iter().map(|&z| z * k).collect() }
    }
}

/// Nonnegative probability density with unit integral (the likelihood).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityField {
    field: RealField,
}

impl DensityField {
    /// Validates nonnegativity, then rescales so the quadrature is exactly 1
    /// at working precision. Values more negative than `-1e-12 * max` are
    /// rejected; less negative round-off is clamped to zero.
    pub fn new(field: RealField) -> Result<Self> {
        if !field.is_finite() {
            return Err(Error::NonFiniteField);
        }
        let max = field.max_abs();
        if field.values.iter().any(|&x| x < -1e-12 * max) {
            return Err(Error::InvalidInput("density values must be nonnegative"));
        }
        let clamped = field.map(|x| x.max(0.0));
        let norm = clamped.quadrature()?;
        if norm <= 0.0 {
            return Err(Error::ZeroNorm);
        }
        Ok(DensityField { field: clamped.map(|x| x / norm) })
    }

    /// `|psi|^2` of a normalised wavefunction; already unit-integral.
    pub fn from_wave(psi: &WaveField) -> Self {
        // renormalise anyway: |psi|^2 quadrature is 1 only to round-off
        DensityField::new(psi.as_complex().modulus_squared())
            .expect("|psi|^2 of a normalised wavefunction is a valid density")
    }

    /// Re-apply the normalisation map; idempotent.
    pub fn normalized(&self) -> DensityField {
        DensityField::new(self.field.clone()).expect("a density stays valid under renormalisation")
    }

    pub fn grid(&self) -> &Grid {
        self.field.grid()
    }

    pub fn values(&self) -> &[f64] {
        self.field.values()
    }

    pub fn as_real(&self) -> &RealField {
        &self.field
    }

    /// Division floor `DENSITY_FLOOR_REL * max(rho)`.
    pub fn division_floor(&self) -> f64 {
        DENSITY_FLOOR_REL * self.field.max_abs()
    }

    /// Plain density-threshold trusted mask: `rho > 10 * floor`.
    pub fn trusted_mask(&self) -> Vec<bool> {
        let cut = TRUST_FACTOR * self.division_floor();
        self.field.values().iter().map(|&r| r > cut).collect()
    }
}

/// Complex wavefunction with unit L2 norm.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveField {
    field: ComplexField,
}

impl WaveField {
    /// Rescales to unit L2 norm; errors on an (almost) all-zero input.
    pub fn new(field: ComplexField) -> Result<Self> {
        if !field.is_finite() {
            return Err(Error::NonFiniteField);
        }
        let norm_sq = field.modulus_squared().quadrature()?;
        if norm_sq <= 0.0 {
            return Err(Error::ZeroNorm);
        }
        let inv = 1.0 / norm_sq.sqrt();
        Ok(WaveField { field: field.scale(Complex64::new(inv, 0.0)) })
    }

    pub fn from_real(field: &RealField) -> Result<Self> {
        WaveField::new(ComplexField::from_real(field))
    }

    /// Re-apply the normalisation map; idempotent.
    pub fn normalized(&self) -> WaveField {
        WaveField::new(self.field.clone()).expect("a wavefunction stays valid under renormalisation")
    }

    pub fn grid(&self) -> &Grid {
        self.field.grid()
    }

    pub fn values(&self) -> &[Complex64] {
        self.field.values()
    }

    pub fn as_complex(&self) -> &ComplexField {
        &self.field
    }

    pub fn to_density(&self) -> DensityField {
        DensityField::from_wave(self)
    }

    /// True when the imaginary part is negligible against the field scale.
    pub fn is_real(&self) -> bool {
        let scale = self.field.values.iter().fold(0.0f64, |m, z| m.max(z.norm_sqr())).sqrt();
        self.field.values.iter().all(|z| z.im.abs() <= 1e-12 * scale)
    }
}

/// Real action field, in the same units as `hbar`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseField {
    field: RealField,
}

impl PhaseField {
    pub fn new(field: RealField) -> Result<Self> {
        if !field.is_finite() {
            return Err(Error::NonFiniteField);
        }
        Ok(PhaseField { field })
    }

    pub fn grid(&self) -> &Grid {
        self.field.grid()
    }

    pub fn values(&self) -> &[f64] {
        self.field.values()
    }

    pub fn as_real(&self) -> &RealField {
        &self.field
    }
}

/// How a potential was constructed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PotentialKind {
    Harmonic { omega: f64 },
    /// Hard walls are the Dirichlet boundary itself; the interior is zero.
    /// Never represented by literal infinities.
    InfiniteWell,
    Free,
    Custom,
}

/// Static external potential (energy units) with provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialField {
    field: RealField,
    kind: PotentialKind,
}

impl PotentialField {
    /// `V(x) = m omega^2 x^2 / 2`.
    pub fn harmonic(grid: Grid, omega: f64, mass: f64) -> Result<Self> {
        if !(omega > 0.0) || !(mass > 0.0) {
            return Err(Error::InvalidInput("harmonic potential requires omega > 0 and mass > 0"));
        }
        let field = RealField::from_fn(grid, |x| 0.5 * mass * omega * omega * x * x);
        Ok(PotentialField { field, kind: PotentialKind::Harmonic { omega } })
    }

    /// Infinite well: zero interior potential on a Dirichlet grid.
    pub fn infinite_well(grid: Grid) -> Result<Self> {
        if grid.is_periodic() {
            return Err(Error::InvalidInput("an infinite well requires Dirichlet boundaries"));
        }
        Ok(PotentialField { field: RealField::zeros(grid), kind: PotentialKind::InfiniteWell })
    }

    pub fn free(grid: Grid) -> Self {
        PotentialField { field: RealField::zeros(grid), kind: PotentialKind::Free }
    }

    pub fn custom(field: RealField) -> Result<Self> {
        if !field.is_finite() {
            return Err(Error::NonFiniteField);
        }
        Ok(PotentialField { field, kind: PotentialKind::Custom })
    }

    pub fn grid(&self) -> &Grid {
        self.field.grid()
    }

    pub fn values(&self) -> &[f64] {
        self.field.values()
    }

    pub fn as_real(&self) -> &RealField {
        &self.field
    }

    pub fn kind(&self) -> PotentialKind {
        self.kind
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn dirichlet(n: usize, a: f64, b: f64) -> Grid {
        Grid::new(n, a, b, Boundary::Dirichlet).unwrap()
    }

    fn periodic(n: usize, a: f64, b: f64) -> Grid {
        Grid::new(n, a, b, Boundary::Periodic).unwrap()
    }

    #[test]
    fn derivative_of_constant_vanishes() {
        for grid in [dirichlet(64, -1.0, 3.0), periodic(64, 0.0, 2.0)] {
            let f = RealField::from_fn(grid, |_| 2.75);
            for order in [1, 2] {
                let d = f.derivative(order).unwrap();
                assert!(d.max_abs() < 1e-12, "order {order}");
            }
        }
    }

    #[test]
    fn second_derivative_of_sine_converges_at_order_two() {
        // -k^2 sin(kx) oracle; halving h must cut the error ~4x.
        let k = 2.0 * PI; // one full period on [0, 1]
        let err = |n: usize| -> f64 {
            let grid = periodic(n, 0.0, 1.0);
            let f = RealField::from_fn(grid.clone(), |x| (k * x).sin());
            let d2 = f.derivative(2).unwrap();
            (0..grid.len())
                .map(|i| (d2.values()[i] + k * k * (k * grid.point(i)).sin()).abs())
                .fold(0.0f64, f64::max)
        };
        let (e1, e2) = (err(256), err(511)); // 510 = 2*255 intervals: h exactly halves
        let ratio = e1 / e2;
        assert!((3.5..4.5).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn first_derivative_of_square_is_exact_on_quadratics() {
        let grid = dirichlet(33, -1.0, 1.0);
        let f = RealField::from_fn(grid.clone(), |x| x * x);
        let d = f.derivative(1).unwrap();
        for i in 0..grid.len() {
            assert!((d.values()[i] - 2.0 * grid.point(i)).abs() < 1e-12);
        }
    }

    #[test]
    fn quadrature_of_unit_constant_is_exact() {
        let f = RealField::from_fn(dirichlet(17, 0.0, 1.0), |_| 1.0);
        assert_eq!(f.quadrature().unwrap(), 1.0);
    }

    #[test]
    fn quadrature_of_gaussian_matches_analytic_normalisation() {
        let grid = dirichlet(1024, -10.0, 10.0);
        let f = RealField::from_fn(grid, |x| (-0.5 * x * x).exp() / (2.0 * PI).sqrt());
        assert!((f.quadrature().unwrap() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn quadrature_of_sin_squared() {
        let grid = dirichlet(2001, 0.0, 1.0);
        let f = RealField::from_fn(grid, |x| (PI * x).sin().powi(2));
        assert!((f.quadrature().unwrap() - 0.5).abs() < 1e-6);
    }

    #[test]
    fn quadrature_rejects_non_finite() {
        let grid = dirichlet(16, 0.0, 1.0);
        let mut values = vec![1.0; 16];
        values[3] = f64::NAN;
        let f = RealField::new(grid, values).unwrap();
        assert_eq!(f.quadrature(), Err(Error::NonFiniteField));
    }

    #[test]
    fn fundamental_theorem_on_dirichlet_grids() {
        let expected = (2.0f64 * 2.0 * 2.0).sin() - (-1.0f64).sin();
        let err = |n: usize| {
            let f = RealField::from_fn(dirichlet(n, -1.0, 2.0), |x| (x * x * x).sin());
            (f.derivative(1).unwrap().quadrature().unwrap() - expected).abs()
        };
        assert!(err(2048) < 2e-4, "error {}", err(2048));
        // and the error is O(h^2): quartering under h-halving
        let ratio = err(512) / err(1023);
        assert!((3.0..5.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn density_normalises_and_is_idempotent() {
        let grid = dirichlet(1024, -8.0, 8.0);
        let raw = RealField::from_fn(grid, |x| 2.0 * (-x * x).exp());
        let rho = DensityField::new(raw).unwrap();
        assert!((rho.as_real().quadrature().unwrap() - 1.0).abs() < 1e-12);
        let again = rho.normalized();
        for (a, b) in rho.values().iter().zip(again.values()) {
            assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
        }
    }

    #[test]
    fn density_rejects_negative_and_zero() {
        let grid = dirichlet(16, 0.0, 1.0);
        let neg = RealField::from_fn(grid.clone(), |x| x - 0.5);
        assert!(DensityField::new(neg).is_err());
        let zero = RealField::zeros(grid);
        assert_eq!(DensityField::new(zero).unwrap_err(), Error::ZeroNorm);
    }

    #[test]
    fn wave_normalisation_recomputes_to_one() {
        let grid = dirichlet(2048, -8.0, 8.0);
        let raw = ComplexField::from_fn(grid, |x| Complex64::new((-x * x).exp(), 0.0));
        let psi = WaveField::new(raw).unwrap();
        let n2 = psi.as_complex().modulus_squared().quadrature().unwrap();
        assert!((n2 - 1.0).abs() < 1e-12);
        assert!(psi.is_real());
    }

    #[test]
    fn scaled_density_recovers_the_normalised_one() {
        let grid = dirichlet(1024, -8.0, 8.0);
        let base = DensityField::new(RealField::from_fn(grid.clone(), |x| (-x * x).exp())).unwrap();
        let doubled = RealField::from_fn(grid, |x| 2.0 * (-x * x).exp());
        let rho = DensityField::new(doubled).unwrap();
        for (a, b) in rho.values().iter().zip(base.values()) {
            assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn infinite_well_needs_dirichlet() {
        assert!(PotentialField::infinite_well(periodic(16, 0.0, 1.0)).is_err());
        let w = PotentialField::infinite_well(dirichlet(16, 0.0, 1.0)).unwrap();
        assert!(w.values().iter().all(|&v| v == 0.0));
    }
}
