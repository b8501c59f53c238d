//! Ground states from minimum Fisher information, cross-checked by an
//! independent finite-difference eigensolver.
//!
//! Minimising `(hbar^2/8m) I[rho] + integral rho V` over normalised
//! `rho = psi^2` is the variational route; the stationarity condition is the
//! time-independent Schrodinger equation, which the eigensolver attacks
//! directly. [`solve_ground_mfi`] runs normalised gradient descent
//! `psi <- normalize(psi - tau H psi)` (an imaginary-time-style iteration);
//! [`solve_fd_eigensolver`] assembles the symmetric tridiagonal
//! discretisation of `-(hbar^2/2m) d^2/dx^2 + V` and solves it by bisection
//! on the LDL^T inertia plus inverse iteration. The two must agree; that
//! agreement is the point.

use alloc::vec;
use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;
use rand_core::{RngCore, SeedableRng};

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::field::{DensityField, PotentialField, RealField, WaveField};
use crate::fisher::fisher_info;
use crate::grid::{Boundary, Grid};

/// Solver knobs for the MFI iteration.
#[derive(Debug, Clone, Copy)]
pub struct MfiOptions {
    /// Iteration budget before `mfi_no_convergence`.
    pub max_iters: usize,
    /// Convergence threshold on the discrete Euler-Lagrange residual.
    pub tol: f64,
    /// Step size as a fraction of the explicit-diffusion stability bound
    /// `h^2 m / hbar^2`; keep in `(0, 0.5]`.
    pub tau_factor: f64,
    /// Seed for the smooth random initial state.
    pub seed: u64,
}

impl Default for MfiOptions {
    fn default() -> Self {
        MfiOptions { max_iters: 20_000_000, tol: 1e-8, tau_factor: 0.4, seed: 42 }
    }
}

/// A stationary-state problem: potential, constants, solver knobs.
/// The grid is the potential's grid.
#[derive(Debug, Clone)]
pub struct MfiProblem {
    pub potential: PotentialField,
    pub consts: PhysicalConstants,
    pub options: MfiOptions,
}

impl MfiProblem {
    pub fn new(potential: PotentialField, consts: PhysicalConstants, options: MfiOptions) -> Result<Self> {
        consts.require_mass()?;
        if !(options.tau_factor > 0.0 && options.tau_factor <= 0.5) {
            return Err(Error::InvalidInput("tau_factor must lie in (0, 0.5]"));
        }
        if !(options.tol > 0.0) || options.max_iters == 0 {
            return Err(Error::InvalidInput("tol must be positive and max_iters nonzero"));
        }
        Ok(MfiProblem { potential, consts, options })
    }

    pub fn grid(&self) -> &Grid {
        self.potential.grid()
    }
}

/// Which route produced a [`SpectrumResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumMethod {
    MfiMinimization,
    FdEigensolver,
}

impl SpectrumMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            SpectrumMethod::MfiMinimization => "mfi_minimization",
            SpectrumMethod::FdEigensolver => "fd_eigensolver",
        }
    }
}

/// Energies (ascending) and normalised real eigenstates, with the
/// Euler-Lagrange residual of each state.
#[derive(Debug, Clone)]
pub struct SpectrumResult {
    pub energies: Vec<f64>,
    pub states: Vec<WaveField>,
    pub residuals: Vec<f64>,
    pub method: SpectrumMethod,
}

/// Per-iteration record of the MFI descent, for monotonicity checks.
#[derive(Debug, Clone)]
pub struct MfiTrace {
    /// Rayleigh-quotient energy sampled every few hundred iterations.
    pub energies: Vec<f64>,
    pub iterations: usize,
    pub final_residual: f64,
}

/// The constrained Fisher functional
/// `(hbar^2/8m) I[rho] - integral rho (E - V) dx`,
/// equal to `(hbar^2/8m) I + <V> - E` for a normalised density.
pub fn mfi_functional(rho: &DensityField, problem: &MfiProblem, energy: f64) -> Result<f64> {
    if rho.grid() != problem.grid() {
        return Err(Error::GridMismatch);
    }
    let mass = problem.consts.require_mass()?;
    let hb = problem.consts.hbar;
    let info = fisher_info(rho)?;
    let weighted = RealField::new(
        rho.grid().clone(),
        rho.values()
            .iter()
            .zip(problem.potential.values())
            .map(|(&r, &v)| r * (energy - v))
            .collect(),
    )?;
    Ok(hb * hb / (8.0 * mass) * info - weighted.quadrature()?)
}

/// Euler-Lagrange residual `max |(E - V) psi + (hbar^2/2m) psi''|` over the
/// trusted mask (well-defined at nodes; zero for exact eigenstates of the
/// same discretisation).
pub fn el_residual(psi: &WaveField, problem: &MfiProblem, energy: f64) -> Result<f64> {
    if psi.grid() != problem.grid() {
        return Err(Error::GridMismatch);
    }
    if !psi.is_real() {
        return Err(Error::ComplexInput);
    }
    let mass = problem.consts.require_mass()?;
    let half_hb2_m = 0.5 * problem.consts.hbar * problem.consts.hbar / mass;
    let rho = psi.to_density();
    let mask = rho.trusted_mask();
    let psi_re = RealField::new(
        psi.grid().clone(),
        psi.values().iter().map(|z| z.re).collect(),
    )?;
    let d2 = psi_re.derivative(2)?;
    let v = problem.potential.values();
    let mut worst = 0.0f64;
    for i in 0..psi_re.len() {
        if !mask[i] {
            continue;
        }
        let r = (energy - v[i]) * psi_re.values()[i] + half_hb2_m * d2.values()[i];
        worst = worst.max(r.abs());
    }
    Ok(worst)
}

// ---------------------------------------------------------------------------
// discrete Hamiltonian
// ---------------------------------------------------------------------------

/// `-(hbar^2/2m) D2 + V` on the stored grid points. Dirichlet boundary rows
/// are pinned to zero (hard-wall states vanish there).
struct DiscreteHamiltonian<'a> {
    v: &'a [f64],
    /// Kinetic hopping `hbar^2 / (2 m h^2)`.
    t: f64,
    periodic: bool,
}

impl<'a> DiscreteHamiltonian<'a> {
    fn new(problem: &'a MfiProblem) -> Result<Self> {
        let mass = problem.consts.require_mass()?;
        let h = problem.grid().spacing();
        let t = problem.consts.hbar * problem.consts.hbar / (2.0 * mass * h * h);
        Ok(DiscreteHamiltonian {
            v: problem.potential.values(),
            t,
            periodic: problem.grid().is_periodic(),
        })
    }

    fn apply(&self, psi: &[f64], out: &mut [f64]) {
        let n = psi.len();
        let t = self.t;
        for i in 1..n - 1 {
            out[i] = t * (2.0 * psi[i] - psi[i - 1] - psi[i + 1]) + self.v[i] * psi[i];
        }
        if self.periodic {
            out[0] = t * (2.0 * psi[0] - psi[n - 1] - psi[1]) + self.v[0] * psi[0];
            out[n - 1] = t * (2.0 * psi[n - 1] - psi[n - 2] - psi[0]) + self.v[n - 1] * psi[n - 1];
        } else {
            out[0] = 0.0;
            out[n - 1] = 0.0;
        }
    }
}

// ---------------------------------------------------------------------------
// MFI gradient descent
// ---------------------------------------------------------------------------

/// Smooth positive random field: box-filtered uniform noise around 1.
fn smooth_random_start(grid: &Grid, seed: u64) -> Vec<f64> {
    let n = grid.len();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut noise: Vec<f64> =
        (0..n).map(|_| (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0).collect();
    // three box-filter passes kill the high-frequency content
    let w = (n / 64).max(2);
    let periodic = grid.is_periodic();
    let mut tmp = vec![0.0; n];
    for _ in 0..3 {
        for i in 0..n {
            let mut acc = 0.0;
            for j in i as isize - w as isize..=i as isize + w as isize {
                let idx = if periodic {
                    j.rem_euclid(n as isize) as usize
                } else if (0..n as isize).contains(&j) {
                    j as usize
                } else {
                    continue;
                };
                acc += noise[idx];
            }
            tmp[i] = acc / (2 * w + 1) as f64;
        }
        core::mem::swap(&mut noise, &mut tmp);
    }
    let peak = noise.iter().fold(0.0f64, |m, &x| m.max(x.abs())).max(1e-300);
    let mut psi: Vec<f64> = noise.iter().map(|&x| 1.0 + 0.5 * x / peak).collect();
    if !periodic {
        psi[0] = 0.0;
        psi[n - 1] = 0.0;
    }
    psi
}

/// Flags potentials that keep decreasing all the way into a Dirichlet wall:
/// their variational minimum is an artifact of the domain truncation.
fn potential_unbounded_guard(potential: &PotentialField, grid: &Grid) -> bool {
    if grid.is_periodic() {
        return false;
    }
    let v = potential.values();
    let n = v.len();
    let k = (n / 4).min(8).max(2);
    let interior_min = v[k..n - k].iter().fold(f64::INFINITY, |m, &x| m.min(x));
    let vmax = v.iter().fold(f64::NEG_INFINITY, |m, &x| m.max(x));
    let vmin = v.iter().fold(f64::INFINITY, |m, &x| m.min(x));
    let margin = 1e-9 * (vmax - vmin) + 1e-300;
    let left = (0..k - 1).all(|i| v[i] <= v[i + 1]) && v[0] < interior_min - margin;
    let right = (n - k + 1..n).all(|i| v[i] <= v[i - 1]) && v[n - 1] < interior_min - margin;
    left || right
}

fn quadrature_norm_sq(psi: &[f64], h: f64, periodic: bool) -> f64 {
    // Dirichlet endpoints are zero for every state the solver produces, so
    // the plain rectangle sum coincides with the trapezoid rule.
    let _ = periodic;
    psi.iter().map(|&x| x * x).sum::<f64>() * h
}

/// Minimise the constrained Fisher functional over `rho = psi^2` and return
/// the ground energy (Rayleigh quotient) with the minimising state, plus the
/// descent trace.
pub fn solve_ground_mfi_traced(problem: &MfiProblem) -> Result<(SpectrumResult, MfiTrace)> {
    const CHECK_EVERY: usize = 500;

    if potential_unbounded_guard(&problem.potential, problem.grid()) {
        return Err(Error::PotentialUnbounded);
    }
    let ham = DiscreteHamiltonian::new(problem)?;
    let grid = problem.grid();
    let h = grid.spacing();
    let n = grid.len();
    let mass = problem.consts.require_mass()?;
    let hb = problem.consts.hbar;

    // step size: the prescribed fraction of the explicit stability bound,
    // clamped so the descent filter 1 - tau*lambda stays positive on the
    // whole spectrum even for violent custom potentials
    let vmax = problem.potential.values().iter().fold(f64::NEG_INFINITY, |m, &x| m.max(x));
    let lambda_max = 4.0 * ham.t + vmax.max(0.0);
    let tau = (problem.options.tau_factor * h * h * mass / (hb * hb)).min(0.95 / lambda_max);

    let mut psi = smooth_random_start(grid, problem.options.seed);
    let norm = quadrature_norm_sq(&psi, h, grid.is_periodic()).sqrt();
    psi.iter_mut().for_each(|x| *x /= norm);

    let mut hpsi = vec![0.0; n];
    let mut energies = Vec::new();
    let mut prev_energy = f64::INFINITY;
    let mut last_residual = f64::INFINITY;

    let floor_mask = |psi: &[f64]| -> f64 {
        // trusted cut for the residual: rho > 10 * eps_rho * max(rho)
        let max_sq = psi.iter().fold(0.0f64, |m, &x| m.max(x * x));
        10.0 * crate::constants::DENSITY_FLOOR_REL * max_sq
    };

    let mut iters = 0usize;
    while iters < problem.options.max_iters {
        ham.apply(&psi, &mut hpsi);

        // Rayleigh quotient comes for free from H psi
        let mut num = 0.0;
        let mut den = 0.0;
        for i in 0..n {
            num += psi[i] * hpsi[i];
            den += psi[i] * psi[i];
        }
        let energy = num / den;
        debug_assert!(
            energy <= prev_energy + 1e-12 * (1.0 + energy.abs()),
            "descent must be monotone: {prev_energy} -> {energy} at iteration {iters}"
        );
        prev_energy = energy;

        if iters % CHECK_EVERY == 0 {
            energies.push(energy);
            let cut = floor_mask(&psi);
            let mut r = 0.0f64;
            for i in 0..n {
                if psi[i] * psi[i] > cut {
                    r = r.max((hpsi[i] - energy * psi[i]).abs());
                }
            }
            last_residual = r;
            if !r.is_finite() {
                return Err(Error::MfiNoConvergence { last_residual: r });
            }
            if r < problem.options.tol {
                break;
            }
        }

        let mut norm_sq = 0.0;
        for i in 0..n {
            psi[i] -= tau * hpsi[i];
            norm_sq += psi[i] * psi[i];
        }
        let inv = 1.0 / (norm_sq * h).sqrt();
        psi.iter_mut().for_each(|x| *x *= inv);
        iters += 1;
    }

    if last_residual >= problem.options.tol {
        return Err(Error::MfiNoConvergence { last_residual });
    }

    // canonical sign: the ground state is nodeless, keep it positive
    if psi.iter().sum::<f64>() < 0.0 {
        psi.iter_mut().for_each(|x| *x = -*x);
    }
    let state = WaveField::from_real(&RealField::new(grid.clone(), psi)?)?;
    let energy = *energies.last().expect("at least one energy sample");
    let residual = el_residual(&state, problem, energy)?;
    let trace = MfiTrace { energies, iterations: iters, final_residual: last_residual };
    Ok((
        SpectrumResult {
            energies: vec![energy],
            states: vec![state],
            residuals: vec![residual],
            method: SpectrumMethod::MfiMinimization,
        },
        trace,
    ))
}

/// [`solve_ground_mfi_traced`] without the trace.
pub fn solve_ground_mfi(problem: &MfiProblem) -> Result<SpectrumResult> {
    solve_ground_mfi_traced(problem).map(|(r, _)| r)
}

// ---------------------------------------------------------------------------
// finite-difference eigensolver (the oracle route)
// ---------------------------------------------------------------------------

/// Symmetric tridiagonal matrix with an optional periodic corner coupling.
struct SymTri {
    d: Vec<f64>,
    e: Vec<f64>,
    corner: f64,
}

impl SymTri {
    fn dim(&self) -> usize {
        self.d.len()
    }

    fn scale(&self) -> f64 {
        let emax = self.e.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
        let dmax = self.d.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
        dmax + 2.0 * emax + self.corner.abs()
    }

    /// Number of eigenvalues strictly below `lambda`, by counting negative
    /// pivots of the LDL^T factorisation of `A - lambda I` (Sylvester's law
    /// of inertia). The periodic corner contributes a rank-structured fill
    /// in the last row/column, tracked alongside the tridiagonal sweep.
    fn count_below(&self, lambda: f64) -> usize {
        let m = self.dim();
        let pivmin = 1e-300f64.max(f64::EPSILON * f64::EPSILON * self.scale());
        let mut count = 0usize;
        let mut piv = self.d[0] - lambda;
        let mut fill = self.corner; // A[m-1][0]
        let mut last = self.d[m - 1] - lambda;
        for i in 0..m - 1 {
            if i == m - 2 {
                // the accumulated fill merges with the physical e[m-2]
                fill += self.e[m - 2];
            }
            if piv.abs() < pivmin {
                piv = -pivmin;
            }
            if piv < 0.0 {
                count += 1;
            }
            last -= fill * fill / piv;
            if i < m - 2 {
                let next = self.d[i + 1] - lambda - self.e[i] * self.e[i] / piv;
                fill = -self.e[i] * fill / piv;
                piv = next;
            }
        }
        if last < 0.0 {
            count += 1;
        }
        count
    }

    /// `j`-th (0-based) eigenvalue from bisection on the inertia count.
    fn eigenvalue(&self, j: usize) -> f64 {
        let r = self.scale();
        let mut lo = self.d.iter().fold(f64::INFINITY, |m, &x| m.min(x)) - r;
        let mut hi = self.d.iter().fold(f64::NEG_INFINITY, |m, &x| m.max(x)) + r;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.count_below(mid) >= j + 1 {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo <= 1e-15 * hi.abs().max(lo.abs()).max(1.0) {
                break;
            }
        }
        0.5 * (lo + hi)
    }

    /// Solve `(A - lambda I) x = b` by Gaussian elimination along the band
    /// with the cyclic corner folded in through a bordered last row/column.
    /// Near-singular pivots are nudged; inverse iteration tolerates (in fact
    /// exploits) the resulting growth.
    fn solve_shifted(&self, lambda: f64, b: &[f64], x: &mut [f64]) {
        let m = self.dim();
        let pivmin = 1e-300f64.max(f64::EPSILON * f64::EPSILON * self.scale());
        let guard = |p: f64| if p.abs() < pivmin { pivmin } else { p };

        if self.corner == 0.0 {
            // plain Thomas with back substitution
            let mut c_prime = vec![0.0; m];
            let mut d_prime = vec![0.0; m];
            let mut piv = guard(self.d[0] - lambda);
            c_prime[0] = self.e[0] / piv;
            d_prime[0] = b[0] / piv;
            for i in 1..m {
                piv = guard(self.d[i] - lambda - self.e[i - 1] * c_prime[i - 1]);
                if i < m - 1 {
                    c_prime[i] = self.e[i] / piv;
                }
                d_prime[i] = (b[i] - self.e[i - 1] * d_prime[i - 1]) / piv;
            }
            x[m - 1] = d_prime[m - 1];
            for i in (0..m - 1).rev() {
                x[i] = d_prime[i] - c_prime[i] * x[i + 1];
            }
            return;
        }

        // bordered elimination: row/column m-1 carries the corner fill
        let mut diag: Vec<f64> = self.d.iter().map(|&di| di - lambda).collect();
        let mut rhs = b.to_vec();
        let mut fill = vec![0.0; m]; // A[i][m-1] for the active rows
        fill[0] = self.corner;
        fill[m - 2] = self.e[m - 2];
        let mut lastrow = vec![0.0; m]; // A[m-1][i]
        lastrow[0] = self.corner;
        lastrow[m - 2] = self.e[m - 2];

        for i in 0..m - 1 {
            let piv = guard(diag[i]);
            diag[i] = piv;
            // eliminate the sub-diagonal of row i+1
            if i < m - 2 {
                let l = self.e[i] / piv;
                diag[i + 1] -= l * self.e[i];
                fill[i + 1] -= l * fill[i];
                rhs[i + 1] -= l * rhs[i];
            }
            // eliminate the last row's entry in column i
            let g = lastrow[i] / piv;
            if i < m - 2 {
                lastrow[i + 1] -= g * self.e[i];
            } else {
                // column m-1 of row i is fill[i]; handled below
            }
            diag[m - 1] -= g * fill[i];
            rhs[m - 1] -= g * rhs[i];
        }
        let piv_last = guard(diag[m - 1]);
        x[m - 1] = rhs[m - 1] / piv_last;
        // back substitution through the band plus the last column
        for i in (0..m - 1).rev() {
            let mut acc = rhs[i] - fill[i] * x[m - 1];
            if i < m - 2 {
                acc -= self.e[i] * x[i + 1];
            }
            x[i] = acc / diag[i];
        }
    }

    /// Inverse iteration for the eigenvector at `lambda`, orthogonalised
    /// against already-found vectors (handles degenerate pairs).
    fn eigenvector(&self, lambda: f64, found: &[Vec<f64>], seed: u64) -> Result<(f64, Vec<f64>)> {
        let m = self.dim();
        let scale = self.scale();
        for attempt in 0..3u64 {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ (attempt * 0x9E37_79B9));
            let mut v: Vec<f64> =
                (0..m).map(|_| (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 - 0.5).collect();
            let mut w = vec![0.0; m];
            let shift = lambda + (attempt as f64) * 1e-11 * scale.max(1.0);
            for _ in 0..20 {
                for prev in found {
                    let dot: f64 = v.iter().zip(prev).map(|(a, b)| a * b).sum();
                    v.iter_mut().zip(prev).for_each(|(a, b)| *a -= dot * b);
                }
                let norm = v.iter().map(|&x| x * x).sum::<f64>().sqrt();
                if norm < 1e-280 {
                    break;
                }
                v.iter_mut().for_each(|x| *x /= norm);
                self.solve_shifted(shift, &v, &mut w);
                core::mem::swap(&mut v, &mut w);
            }
            for prev in found {
                let dot: f64 = v.iter().zip(prev).map(|(a, b)| a * b).sum();
                v.iter_mut().zip(prev).for_each(|(a, b)| *a -= dot * b);
            }
            let norm = v.iter().map(|&x| x * x).sum::<f64>().sqrt();
            if norm < 1e-280 {
                continue;
            }
            v.iter_mut().for_each(|x| *x /= norm);

            // Rayleigh-quotient polish and residual acceptance
            let rq = {
                self.apply(&v, &mut w);
                v.iter().zip(&w).map(|(a, b)| a * b).sum::<f64>()
            };
            let resid = {
                let mut r = 0.0f64;
                for i in 0..m {
                    r = r.max((w[i] - rq * v[i]).abs());
                }
                r
            };
            if resid <= 1e-9 * scale.max(1.0) {
                return Ok((rq, v));
            }
        }
        Err(Error::EigenFail)
    }

    fn apply(&self, v: &[f64], out: &mut [f64]) {
        let m = self.dim();
        for i in 0..m {
            let mut acc = self.d[i] * v[i];
            if i > 0 {
                acc += self.e[i - 1] * v[i - 1];
            }
            if i < m - 1 {
                acc += self.e[i] * v[i + 1];
            }
            out[i] = acc;
        }
        if self.corner != 0.0 {
            out[0] += self.corner * v[m - 1];
            out[m - 1] += self.corner * v[0];
        }
    }
}

/// Lowest `n_states` eigenpairs of the discrete Hamiltonian, independent of
/// the MFI iteration. Dirichlet problems are reduced to the interior points;
/// periodic problems keep the cyclic corner coupling.
pub fn solve_fd_eigensolver(problem: &MfiProblem, n_states: usize) -> Result<SpectrumResult> {
    let grid = problem.grid();
    if n_states < 1 || n_states > grid.n_points() / 4 {
        return Err(Error::InvalidInput("n_states must lie in [1, n_points/4]"));
    }
    let mass = problem.consts.require_mass()?;
    let h = grid.spacing();
    let t = problem.consts.hbar * problem.consts.hbar / (2.0 * mass * h * h);
    let v = problem.potential.values();
    let n = grid.len();

    let (matrix, interior_offset) = match grid.boundary() {
        Boundary::Dirichlet => {
            let m = n - 2;
            let d: Vec<f64> = (0..m).map(|i| 2.0 * t + v[i + 1]).collect();
            let e = vec![-t; m - 1];
            (SymTri { d, e, corner: 0.0 }, 1usize)
        }
        Boundary::Periodic => {
            let d: Vec<f64> = (0..n).map(|i| 2.0 * t + v[i]).collect();
            let e = vec![-t; n - 1];
            (SymTri { d, e, corner: -t }, 0usize)
        }
    };

    let mut energies = Vec::with_capacity(n_states);
    let mut states = Vec::with_capacity(n_states);
    let mut residuals = Vec::with_capacity(n_states);
    let mut found: Vec<Vec<f64>> = Vec::with_capacity(n_states);

    for j in 0..n_states {
        let lambda = matrix.eigenvalue(j);
        let (rq, vec_j) = matrix.eigenvector(lambda, &found, 0x5EED ^ j as u64)?;

        let mut full = vec![0.0; n];
        full[interior_offset..interior_offset + vec_j.len()].copy_from_slice(&vec_j);
        // canonical sign: largest-magnitude entry positive
        let (mut pk, mut pv) = (0usize, 0.0f64);
        for (i, &x) in full.iter().enumerate() {
            if x.abs() > pv {
                pv = x.abs();
                pk = i;
            }
        }
        if full[pk] < 0.0 {
            full.iter_mut().for_each(|x| *x = -*x);
        }
        let state = WaveField::from_real(&RealField::new(grid.clone(), full)?)?;
        residuals.push(el_residual(&state, problem, rq)?);
        energies.push(rq);
        states.push(state);
        found.push(vec_j);
    }

    Ok(SpectrumResult { energies, states, residuals, method: SpectrumMethod::FdEigensolver })
}
