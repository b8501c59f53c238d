//! Polar decomposition of wavefunctions into density and action,
//! `psi = sqrt(rho) exp(i S / hbar)`, and the checks that fix its
//! conventions.
//!
//! The action is recovered by unwrapping the complex argument of psi from an
//! anchor point outward, per connected trusted component; its gradient is
//! the momentum field `p = S'`. Gradients are always computed from wrapped
//! nearest-neighbour phase increments, so they stay correct on periodic
//! grids where a winding phase cannot be stored without a seam.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::field::{ComplexField, DensityField, PhaseField, RealField, WaveField};

/// Density, action, and the global phase left over after anchoring.
///
/// `reference_phase` is the phase of the reference value `psi_0` (the anchor
/// amplitude); [`decompose`] folds the anchor's principal phase into `s`
/// itself and leaves 0 here, while hand-built pairs may carry any constant.
#[derive(Debug, Clone)]
pub struct MadelungPair {
    pub rho: DensityField,
    pub s: PhaseField,
    pub reference_phase: f64,
    /// Grid index of the anchor (the point of maximum density).
    pub anchor: usize,
    /// Where the action is defined: the connected trusted component of rho.
    pub trusted: Vec<bool>,
}

impl MadelungPair {
    /// Assemble a pair by hand; the action is taken as trusted wherever the
    /// density clears the floor.
    pub fn new(rho: DensityField, s: PhaseField, reference_phase: f64) -> Result<Self> {
        if rho.grid() != s.grid() {
            return Err(Error::GridMismatch);
        }
        if !reference_phase.is_finite() {
            return Err(Error::InvalidInput("reference phase must be finite"));
        }
        let trusted = rho.trusted_mask();
        let anchor = argmax(rho.values());
        Ok(MadelungPair { rho, s, reference_phase, anchor, trusted })
    }
}

fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > values[best] {
            best = i;
        }
    }
    best
}

/// Wrap an angle difference into (-pi, pi].
fn principal(delta: f64) -> f64 {
    use core::f64::consts::PI;
    let mut d = delta % (2.0 * PI);
    if d <= -PI {
        d += 2.0 * PI;
    } else if d > PI {
        d -= 2.0 * PI;
    }
    d
}

/// Largest neighbour phase step that still unwraps unambiguously. A phase
/// step of ~pi is the signature of a node sitting between two grid points
/// (a real field changing sign); beyond pi/2 the 2-pi-jump detection cannot
/// distinguish winding from a node.
const PHASE_JUMP_MAX: f64 = core::f64::consts::FRAC_PI_2;

/// Split `psi` into its Madelung pair. The action is
/// `hbar * (unwrapped arg psi)`, anchored so that `s(anchor)` is the
/// principal value in `(-pi hbar, pi hbar]`; unwrapping proceeds from the
/// anchor's component outward, inserting `2 pi hbar` jumps where neighbour
/// phase differences exceed pi. The trusted region must form one connected
/// component: gaps where the density drops below the floor, or neighbour
/// steps larger than [`PHASE_JUMP_MAX`] (interior nodes), split it and the
/// action is then only defined per component.
pub fn decompose(psi: &WaveField, consts: &PhysicalConstants) -> Result<MadelungPair> {
    let rho = psi.to_density();
    let trusted = rho.trusted_mask();
    let periodic = psi.grid().is_periodic();
    let n = psi.grid().len();
    let theta: Vec<f64> = psi.values().iter().map(|z| z.arg()).collect();

    // bond i joins points i and (i+1) mod n
    let bond_ok = |i: usize| -> bool {
        let j = (i + 1) % n;
        trusted[i] && trusted[j] && principal(theta[j] - theta[i]).abs() <= PHASE_JUMP_MAX
    };

    let mut components = 0usize;
    let mut first_start = None;
    for i in 0..n {
        if !trusted[i] {
            continue;
        }
        let left_connected = if i == 0 {
            periodic && bond_ok(n - 1)
        } else {
            bond_ok(i - 1)
        };
        if !left_connected {
            components += 1;
            if first_start.is_none() {
                first_start = Some(i);
            }
        }
    }
    if components > 1 {
        return Err(Error::PhaseDisconnected { components });
    }

    let anchor = argmax(rho.values());
    let mut s = vec![0.0f64; n];
    // walk the single component (or the full intact ring) accumulating
    // wrapped increments, then shift so the anchor carries its principal
    // phase
    let start = first_start.unwrap_or(anchor);
    let mut cur = start;
    s[cur] = theta[cur];
    for _ in 1..n {
        if !bond_ok(cur) {
            break;
        }
        let next = (cur + 1) % n;
        if next == start {
            break;
        }
        s[next] = s[cur] + principal(theta[next] - theta[cur]);
        cur = next;
    }
    let offset = theta[anchor] - s[anchor];
    for (i, v) in s.iter_mut().enumerate() {
        if trusted[i] {
            *v += offset;
        } else {
            *v = 0.0;
        }
    }

    let s_field = RealField::new(psi.grid().clone(), s.iter().map(|&x| x * consts.hbar).collect())?;
    Ok(MadelungPair {
        rho,
        s: PhaseField::new(s_field)?,
        reference_phase: 0.0,
        anchor,
        trusted,
    })
}

/// Rebuild `psi = sqrt(rho) exp(i (s/hbar + reference_phase))`, normalised.
pub fn reconstruct(pair: &MadelungPair, consts: &PhysicalConstants) -> Result<WaveField> {
    let grid = pair.rho.grid().clone();
    let inv_hbar = 1.0 / consts.hbar;
    let values: Vec<Complex64> = pair
        .rho
        .values()
        .iter()
        .zip(pair.s.values())
        .map(|(&r, &s)| {
            Complex64::from_polar(r.max(0.0).sqrt(), s * inv_hbar + pair.reference_phase)
        })
        .collect();
    WaveField::new(ComplexField::new(grid, values)?)
}

/// Momentum field `S'(x)` from wrapped nearest-neighbour phase increments of
/// psi. Exact for linear and quadratic phases; immune to the storage seam of
/// winding phases on periodic grids. Values outside the trusted region of
/// `|psi|^2` are meaningless.
pub fn phase_gradient(psi: &WaveField, consts: &PhysicalConstants) -> Result<RealField> {
    let grid = psi.grid().clone();
    let n = grid.len();
    let h = grid.spacing();
    let theta: Vec<f64> = psi.values().iter().map(|z| z.arg()).collect();
    let step = |from: usize, to: usize| principal(theta[to] - theta[from]);
    let mut out = vec![0.0f64; n];
    for i in 1..n - 1 {
        out[i] = (step(i - 1, i) + step(i, i + 1)) / (2.0 * h);
    }
    if grid.is_periodic() {
        out[0] = (step(n - 1, 0) + step(0, 1)) / (2.0 * h);
        out[n - 1] = (step(n - 2, n - 1) + step(n - 1, 0)) / (2.0 * h);
    } else {
        // one-sided second order from wrapped single-step increments
        out[0] = (3.0 * step(0, 1) - step(1, 2)) / (2.0 * h);
        out[n - 1] = (3.0 * step(n - 2, n - 1) - step(n - 3, n - 2)) / (2.0 * h);
    }
    let scaled: Vec<f64> = out.iter().map(|&g| g * consts.hbar).collect();
    RealField::new(grid, scaled)
}

/// Pointwise magnitude of `(S')^2 psi + hbar^2 psi''` for the reconstructed
/// state: the residual of the stationary action-curvature relation
/// `(grad S)^2 = -hbar^2 psi''/psi` in its division-free form. Plane waves
/// satisfy it exactly; generic states do not, which is why this is a
/// diagnostic field rather than an asserted identity. Untrusted points are
/// reported as zero.
pub fn action_curvature_residual(pair: &MadelungPair, consts: &PhysicalConstants) -> Result<RealField> {
    let psi = reconstruct(pair, consts)?;
    let d2 = psi.as_complex().derivative(2)?;
    let grad_s = phase_gradient(&psi, consts)?;
    let hb2 = consts.hbar * consts.hbar;
    let values: Vec<f64> = (0..psi.grid().len())
        .map(|i| {
            if !pair.trusted[i] {
                return 0.0;
            }
            let g = grad_s.values()[i];
            let r = psi.values()[i] * (g * g) + d2.values()[i] * hb2;
            r.norm()
        })
        .collect();
    RealField::new(psi.grid().clone(), values)
}

/// Least action of a free classical particle between the end points,
/// `S_c = m (x_b - x_a)^2 / (2 (t_b - t_a))`.
pub fn classical_free_action(
    x_a: f64,
    x_b: f64,
    t_a: f64,
    t_b: f64,
    consts: &PhysicalConstants,
) -> Result<f64> {
    if !(t_b > t_a) {
        return Err(Error::BadInterval);
    }
    let dx = x_b - x_a;
    Ok(consts.mass * dx * dx / (2.0 * (t_b - t_a)))
}
