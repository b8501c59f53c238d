//! Time-dependent propagation `i hbar d psi/dt = -(hbar^2/2m) psi'' + V psi`
//! and residual checks of the equivalent hydrodynamic pair: the continuity
//! equation `d rho/dt + (rho S'/m)' = 0` and the quantum Hamilton-Jacobi
//! equation `dS/dt + (S')^2/2m + V + Q = 0`.
//!
//! The hydrodynamic equations are never integrated directly (they are
//! singular at nodes); propagated Schrodinger states are decomposed and the
//! equations evaluated as residuals, which is exactly the equivalence claim
//! being tested. Dropping the quantum potential from the second residual
//! gives the classical Hamilton-Jacobi residual and with it the
//! hbar -> 0 limit.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::action::{decompose, phase_gradient};
use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::field::{ComplexField, PotentialField, RealField, WaveField};
use crate::fisher::{quantum_potential, trusted_mask};
use crate::grid::Grid;

/// One propagation job: initial state, static potential, step controls.
#[derive(Debug, Clone)]
pub struct PropagationRun {
    pub initial: WaveField,
    pub potential: PotentialField,
    pub consts: PhysicalConstants,
    pub dt: f64,
    pub n_steps: usize,
    /// Record every `snapshot_stride`-th step (plus step 0).
    pub snapshot_stride: usize,
}

impl PropagationRun {
    pub fn new(
        initial: WaveField,
        potential: PotentialField,
        consts: PhysicalConstants,
        dt: f64,
        n_steps: usize,
        snapshot_stride: usize,
    ) -> Result<Self> {
        if initial.grid() != potential.grid() {
            return Err(Error::GridMismatch);
        }
        consts.require_mass()?;
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(Error::InvalidInput("dt must be positive and finite"));
        }
        if n_steps == 0 || snapshot_stride == 0 {
            return Err(Error::InvalidInput("n_steps and snapshot_stride must be nonzero"));
        }
        Ok(PropagationRun { initial, potential, consts, dt, n_steps, snapshot_stride })
    }

    pub fn grid(&self) -> &Grid {
        self.initial.grid()
    }

    /// Soft accuracy budget: the time step that advances the mean-energy
    /// phase by 0.2 rad. The Crank-Nicolson scheme is stable far beyond
    /// this, but its O(dt^2) phase error stops being negligible.
    pub fn accuracy_budget(&self) -> Result<f64> {
        let e = expectation_energy(&self.initial, &self.potential, &self.consts)?;
        Ok(0.2 * self.consts.hbar / e.abs().max(1e-300))
    }
}

/// Recorded state at one instant.
#[derive(Debug, Clone)]
pub struct Snapshot {
    pub time: f64,
    pub state: WaveField,
}

/// Max-norm residuals of the hydrodynamic equations over the propagated
/// snapshots, with the discretisation the residuals were evaluated at.
#[derive(Debug, Clone, Copy)]
pub struct MadelungResidualReport {
    pub continuity_residual: f64,
    pub qhj_residual: f64,
    pub grid_h: f64,
    pub dt: f64,
}

// ---------------------------------------------------------------------------
// Crank-Nicolson stepping
// ---------------------------------------------------------------------------

/// LU factorisation of a (possibly cyclic) tridiagonal matrix with constant
/// off-diagonal, bordered so the periodic corner only fills the last
/// row/column. Factored once per run, applied every step.
struct BorderedLu {
    diag: Vec<Complex64>,
    off: Complex64,
    sub: Vec<Complex64>,
    last_row: Vec<Complex64>,
    last_col: Vec<Complex64>,
}

impl BorderedLu {
    fn factor(mut diag: Vec<Complex64>, off: Complex64, corner: Complex64) -> Result<Self> {
        let m = diag.len();
        let zero = Complex64::new(0.0, 0.0);
        let mut fill = vec![zero; m];
        let mut lastrow = vec![zero; m];
        fill[0] = corner;
        fill[m - 2] = fill[m - 2] + off;
        lastrow[0] = corner;
        lastrow[m - 2] = lastrow[m - 2] + off;
        let mut sub = vec![zero; m];
        let mut g = vec![zero; m];
        for i in 0..m - 1 {
            let piv = diag[i];
            if piv.norm_sqr() == 0.0 {
                return Err(Error::PropagationFail);
            }
            if i < m - 2 {
                let l = off / piv;
                diag[i + 1] -= l * off;
                fill[i + 1] = fill[i + 1] - l * fill[i];
                sub[i + 1] = l;
            }
            let gi = lastrow[i] / piv;
            if i < m - 2 {
                lastrow[i + 1] -= gi * off;
            }
            diag[m - 1] -= gi * fill[i];
            g[i] = gi;
        }
        if diag[m - 1].norm_sqr() == 0.0 {
            return Err(Error::PropagationFail);
        }
        Ok(BorderedLu { diag, off, sub, last_row: g, last_col: fill })
    }

    fn solve(&self, b: &mut [Complex64]) {
        let m = b.len();
        for i in 1..m - 1 {
            let l = self.sub[i];
            b[i] = b[i] - l * b[i - 1];
        }
        let mut acc = b[m - 1];
        for i in 0..m - 1 {
            acc -= self.last_row[i] * b[i];
        }
        b[m - 1] = acc / self.diag[m - 1];
        for i in (0..m - 1).rev() {
            let mut v = b[i] - self.last_col[i] * b[m - 1];
            if i < m - 2 {
                v -= self.off * b[i + 1];
            }
            b[i] = v / self.diag[i];
        }
    }
}

/// Propagate with Crank-Nicolson time stepping:
/// `(1 + i dt H / 2 hbar) psi_next = (1 - i dt H / 2 hbar) psi`.
/// Unconditionally stable, norm-preserving to round-off, O(dt^2) + O(h^2).
/// Snapshots are recorded at the configured stride plus the final step, and
/// each recorded state is checked for unit norm within 1e-8.
pub fn propagate(run: &PropagationRun) -> Result<Vec<Snapshot>> {
    let grid = run.grid();
    let n = grid.len();
    let mass = run.consts.require_mass()?;
    let h = grid.spacing();
    let t_hop = run.consts.hbar * run.consts.hbar / (2.0 * mass * h * h);
    let alpha = run.dt / (2.0 * run.consts.hbar);
    let periodic = grid.is_periodic();
    let v = run.potential.values();

    // Dirichlet states vanish at the walls; the linear system lives on the
    // interior points only.
    let (lo, hi) = if periodic { (0usize, n) } else { (1usize, n - 1) };
    let m = hi - lo;
    if m < 4 {
        return Err(Error::GridTooSmall);
    }

    let i_unit = Complex64::i();
    let a_diag: Vec<Complex64> = (lo..hi)
        .map(|j| Complex64::new(1.0, 0.0) + i_unit * (alpha * (2.0 * t_hop + v[j])))
        .collect();
    let a_off = -i_unit * (alpha * t_hop);
    let a_corner = if periodic { a_off } else { Complex64::new(0.0, 0.0) };
    let lu = BorderedLu::factor(a_diag, a_off, a_corner)?;

    let b_diag: Vec<Complex64> = (lo..hi)
        .map(|j| Complex64::new(1.0, 0.0) - i_unit * (alpha * (2.0 * t_hop + v[j])))
        .collect();
    let b_off = i_unit * (alpha * t_hop);

    let mut psi: Vec<Complex64> = run.initial.values().to_vec();
    let mut work = vec![Complex64::new(0.0, 0.0); m];

    let record = |psi: &[Complex64], time: f64, out: &mut Vec<Snapshot>| -> Result<()> {
        let field = ComplexField::new(grid.clone(), psi.to_vec())?;
        let norm_sq = field.modulus_squared().quadrature()?;
        if (norm_sq - 1.0).abs() > 1e-8 {
            return Err(Error::PropagationFail);
        }
        out.push(Snapshot { time, state: WaveField::new(field)? });
        Ok(())
    };

    let mut snapshots = Vec::new();
    record(&psi, 0.0, &mut snapshots)?;

    for step in 1..=run.n_steps {
        // rhs = B psi on the active window
        for (w, j) in work.iter_mut().zip(lo..hi) {
            let mut acc = b_diag[j - lo] * psi[j];
            let left = if j > 0 {
                psi[j - 1]
            } else if periodic {
                psi[n - 1]
            } else {
                Complex64::new(0.0, 0.0)
            };
            let right = if j + 1 < n {
                psi[j + 1]
            } else if periodic {
                psi[0]
            } else {
                Complex64::new(0.0, 0.0)
            };
            acc += b_off * (left + right);
            *w = acc;
        }
        lu.solve(&mut work);
        if work.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::PropagationFail);
        }
        psi[lo..hi].copy_from_slice(&work);
        if !periodic {
            psi[0] = Complex64::new(0.0, 0.0);
            psi[n - 1] = Complex64::new(0.0, 0.0);
        }
        if step % run.snapshot_stride == 0 || step == run.n_steps {
            record(&psi, step as f64 * run.dt, &mut snapshots)?;
        }
    }
    Ok(snapshots)
}

// ---------------------------------------------------------------------------
// observables
// ---------------------------------------------------------------------------

fn weighted_moment(psi: &WaveField, weight: impl Fn(f64) -> f64) -> Result<f64> {
    let grid = psi.grid();
    let values: Vec<f64> =
        (0..grid.len()).map(|i| weight(grid.point(i)) * psi.values()[i].norm_sqr()).collect();
    RealField::new(grid.clone(), values)?.quadrature()
}

pub fn expectation_position(psi: &WaveField) -> Result<f64> {
    weighted_moment(psi, |x| x)
}

pub fn position_variance(psi: &WaveField) -> Result<f64> {
    let mean = expectation_position(psi)?;
    Ok(weighted_moment(psi, |x| x * x)? - mean * mean)
}

/// `<p> = hbar Im integral conj(psi) psi' dx`.
pub fn expectation_momentum(psi: &WaveField, consts: &PhysicalConstants) -> Result<f64> {
    let dpsi = psi.as_complex().derivative(1)?;
    let integrand: Vec<f64> =
        psi.values().iter().zip(dpsi.values()).map(|(z, dz)| (z.conj() * dz).im).collect();
    let field = RealField::new(psi.grid().clone(), integrand)?;
    Ok(consts.hbar * field.quadrature()?)
}

/// `<H> = (hbar^2/2m) integral |psi'|^2 + integral V |psi|^2`.
pub fn expectation_energy(
    psi: &WaveField,
    potential: &PotentialField,
    consts: &PhysicalConstants,
) -> Result<f64> {
    if psi.grid() != potential.grid() {
        return Err(Error::GridMismatch);
    }
    let mass = consts.require_mass()?;
    let dpsi = psi.as_complex().derivative(1)?;
    let kinetic = dpsi.modulus_squared().quadrature()? * consts.hbar * consts.hbar / (2.0 * mass);
    let pot: Vec<f64> = psi
        .values()
        .iter()
        .zip(potential.values())
        .map(|(z, &v)| v * z.norm_sqr())
        .collect();
    Ok(kinetic + RealField::new(psi.grid().clone(), pot)?.quadrature()?)
}

// ---------------------------------------------------------------------------
// Madelung residuals
// ---------------------------------------------------------------------------

/// Per-point residual fields (maximised over the interior snapshots) and the
/// masks they were evaluated on. The continuity residual carries no `1/rho`
/// and is evaluated on the density-floor mask; the Hamilton-Jacobi residuals
/// contain the quantum potential and use its resolution-refined mask.
#[derive(Debug, Clone)]
pub struct MadelungResidualFields {
    pub continuity: RealField,
    pub qhj: RealField,
    pub classical: RealField,
    pub continuity_mask: Vec<bool>,
    pub qhj_mask: Vec<bool>,
}

fn uniform_snapshot_count(snapshots: &[Snapshot]) -> usize {
    if snapshots.len() < 2 {
        return snapshots.len();
    }
    let dt = snapshots[1].time - snapshots[0].time;
    let mut count = 2;
    while count < snapshots.len() {
        let expect = snapshots[count - 1].time + dt;
        if (snapshots[count].time - expect).abs() > 1e-9 * dt {
            break;
        }
        count += 1;
    }
    count
}

/// Space-time window restricting where residuals are collected; used to pin
/// a resolution-independent functional for convergence-order studies (the
/// trusted masks themselves widen under refinement, so comparing full-mask
/// maxima across resolutions mixes different evaluation sets).
#[derive(Debug, Clone, Copy)]
pub struct ResidualWindow {
    pub x_min: f64,
    pub x_max: f64,
    pub t_min: f64,
    pub t_max: f64,
}

/// Evaluate the residual fields of both hydrodynamic equations (and the
/// classical one) on a uniformly spaced snapshot window. Time derivatives
/// are centered differences over snapshots; endpoint snapshots and grid
/// endpoints are excluded. Each snapshot's action carries an arbitrary
/// `2 pi hbar` anchoring, so the time difference is reduced per point into
/// `(-pi hbar, pi hbar]` before differencing.
pub fn madelung_residual_fields(
    snapshots: &[Snapshot],
    run: &PropagationRun,
) -> Result<MadelungResidualFields> {
    madelung_residual_fields_windowed(snapshots, run, None)
}

/// [`madelung_residual_fields`] restricted to a fixed space-time window.
pub fn madelung_residual_fields_windowed(
    snapshots: &[Snapshot],
    run: &PropagationRun,
    window: Option<ResidualWindow>,
) -> Result<MadelungResidualFields> {
    let usable = uniform_snapshot_count(snapshots);
    if usable < 3 {
        return Err(Error::InvalidInput("need at least 3 uniformly spaced snapshots"));
    }
    let snapshots = &snapshots[..usable];
    let grid = run.grid();
    let n = grid.len();
    let mass = run.consts.require_mass()?;
    let hbar = run.consts.hbar;
    let dt_snap = snapshots[1].time - snapshots[0].time;
    let two_pi_hbar = 2.0 * core::f64::consts::PI * hbar;
    let v = run.potential.values();
    let periodic = grid.is_periodic();

    let pairs: Vec<_> = snapshots
        .iter()
        .map(|s| decompose(&s.state, &run.consts))
        .collect::<Result<_>>()?;
    let grads: Vec<_> = snapshots
        .iter()
        .map(|s| phase_gradient(&s.state, &run.consts))
        .collect::<Result<_>>()?;

    let mut cont = vec![0.0f64; n];
    let mut qhj = vec![0.0f64; n];
    let mut classical = vec![0.0f64; n];
    let mut cont_mask = vec![false; n];
    let mut qhj_mask = vec![false; n];

    for k in 1..snapshots.len() - 1 {
        if let Some(w) = window {
            let t = snapshots[k].time;
            if t < w.t_min || t > w.t_max {
                continue;
            }
        }
        let (prev, mid, next) = (&pairs[k - 1], &pairs[k], &pairs[k + 1]);
        let q = quantum_potential(&mid.rho, &run.consts)?;
        let refined = trusted_mask(&mid.rho)?;
        let grad_s = &grads[k];

        // flux divergence (rho S'/m)'
        let flux = RealField::new(
            grid.clone(),
            (0..n).map(|i| mid.rho.values()[i] * grad_s.values()[i] / mass).collect(),
        )?;
        let div_flux = flux.derivative(1)?;

        // The action of each snapshot is only defined up to 2 pi hbar (the
        // unwrap anchoring and its seam can shift between snapshots), so the
        // time difference is reduced per point into (-pi hbar, pi hbar].
        // This aliases only if the true action rate exceeds
        // pi hbar / (2 dt_snap), far above any run here.
        let reduce = |ds: f64| ds - two_pi_hbar * (ds / two_pi_hbar).round();

        for i in 0..n {
            if !periodic && (i == 0 || i == n - 1) {
                continue;
            }
            if let Some(w) = window {
                let x = grid.point(i);
                if x < w.x_min || x > w.x_max {
                    continue;
                }
            }
            let in_all = prev.trusted[i] && mid.trusted[i] && next.trusted[i];
            if !in_all {
                continue;
            }
            let drho_dt = (next.rho.values()[i] - prev.rho.values()[i]) / (2.0 * dt_snap);
            let rc = (drho_dt + div_flux.values()[i]).abs();
            cont_mask[i] = true;
            if rc > cont[i] {
                cont[i] = rc;
            }

            if !(refined[i] && q.trusted[i]) {
                continue;
            }
            let ds_dt = reduce(next.s.values()[i] - prev.s.values()[i]) / (2.0 * dt_snap);
            let g = grad_s.values()[i];
            let classical_term = ds_dt + g * g / (2.0 * mass) + v[i];
            qhj_mask[i] = true;
            let rq = (classical_term + q.values.values()[i]).abs();
            if rq > qhj[i] {
                qhj[i] = rq;
            }
            let rcl = classical_term.abs();
            if rcl > classical[i] {
                classical[i] = rcl;
            }
        }
    }

    Ok(MadelungResidualFields {
        continuity: RealField::new(grid.clone(), cont)?,
        qhj: RealField::new(grid.clone(), qhj)?,
        classical: RealField::new(grid.clone(), classical)?,
        continuity_mask: cont_mask,
        qhj_mask,
    })
}

/// Max-norm residuals of the continuity and quantum Hamilton-Jacobi
/// equations over all interior trusted points and snapshots.
pub fn madelung_residuals(
    snapshots: &[Snapshot],
    run: &PropagationRun,
) -> Result<MadelungResidualReport> {
    let fields = madelung_residual_fields(snapshots, run)?;
    Ok(MadelungResidualReport {
        continuity_residual: fields.continuity.max_abs(),
        qhj_residual: fields.qhj.max_abs(),
        grid_h: run.grid().spacing(),
        dt: run.dt,
    })
}

/// Max-norm of the classical Hamilton-Jacobi residual
/// `dS/dt + (S')^2/2m + V` (the quantum term dropped). Against the full
/// quantum residual this is shifted by the quantum potential, so
/// `|classical - max|Q|| <= qhj + discretisation error`, which quantifies
/// the hbar -> 0 limit.
pub fn classical_hj_residual(snapshots: &[Snapshot], run: &PropagationRun) -> Result<f64> {
    let fields = madelung_residual_fields(snapshots, run)?;
    Ok(fields.classical.max_abs())
}
