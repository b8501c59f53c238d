//! Uniform 1D spatial lattice shared by every field.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Boundary condition of a [`Grid`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    /// Fields vanish outside `[x_min, x_max]`; endpoint stencils are
    /// one-sided.
    Dirichlet,
    /// The point at `x_max` is identified with `x_min`; stencils wrap.
    Periodic,
}

/// Uniform grid on `[x_min, x_max]`.
///
/// `n_points` counts the nominal lattice points including both endpoints, so
/// the spacing is always `h = (x_max - x_min) / (n_points - 1)`. On periodic
/// grids the duplicate point at `x_max` is not stored: [`Grid::len`] is the
/// number of stored values per field.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    n_points: usize,
    x_min: f64,
    x_max: f64,
    boundary: Boundary,
}

impl Grid {
    pub fn new(n_points: usize, x_min: f64, x_max: f64, boundary: Boundary) -> Result<Self> {
        if n_points < 8 {
            return Err(Error::GridTooSmall);
        }
        if !x_min.is_finite() || !x_max.is_finite() || x_max <= x_min {
            return Err(Error::InvalidInput("grid requires finite x_max > x_min"));
        }
        Ok(Grid { n_points, x_min, x_max, boundary })
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    /// Number of stored values per field on this grid.
    pub fn len(&self) -> usize {
        match self.boundary {
            Boundary::Dirichlet => self.n_points,
            Boundary::Periodic => self.n_points - 1,
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn span(&self) -> f64 {
        self.x_max - self.x_min
    }

    /// Lattice spacing `h = (x_max - x_min) / (n_points - 1)`.
    pub fn spacing(&self) -> f64 {
        self.span() / (self.n_points - 1) as f64
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn is_periodic(&self) -> bool {
        self.boundary == Boundary::Periodic
    }

    /// Coordinate of stored point `i`.
    pub fn point(&self, i: usize) -> f64 {
        debug_assert!(i < self.len());
        self.x_min + i as f64 * self.spacing()
    }

    /// Coordinates of all stored points.
    pub fn points(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.point(i)).collect()
    }
}
