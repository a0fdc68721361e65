//! Uniform periodic grids and unit systems.
//!
//! A [`GridSpec`] describes a 1-, 2- or 3-dimensional uniform grid with
//! periodic boundaries. Samples are stored flat with axis 0 fastest:
//! `flat = i0 + n0*(i1 + n1*i2)`.

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Uniform periodic grid in 1-3 dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    n: Vec<usize>,
    length: Vec<f64>,
    origin: Vec<f64>,
}

impl GridSpec {
    /// Minimum number of points per axis.
    pub const MIN_POINTS: usize = 8;

    pub fn new(n: &[usize], length: &[f64], origin: &[f64]) -> Result<Self> {
        let dim = n.len();
        if dim == 0 || dim > 3 {
            return Err(Error::InvalidGrid(format!(
                "dimension must be 1..=3, got {dim}"
            )));
        }
        if length.len() != dim || origin.len() != dim {
            return Err(Error::InvalidGrid(
                "n, length and origin must have equal length".into(),
            ));
        }
        for &ni in n {
            if ni < Self::MIN_POINTS {
                return Err(Error::InvalidGrid(format!(
                    "need at least {} points per axis, got {ni}",
                    Self::MIN_POINTS
                )));
            }
        }
        for &li in length {
            if !(li.is_finite() && li > 0.0) {
                return Err(Error::InvalidGrid(format!("axis length {li} must be > 0")));
            }
        }
        if origin.iter().any(|o| !o.is_finite()) {
            return Err(Error::InvalidGrid("origin must be finite".into()));
        }
        Ok(Self {
            n: n.to_vec(),
            length: length.to_vec(),
            origin: origin.to_vec(),
        })
    }

    /// 1D grid on `[origin, origin + length)`.
    pub fn line(n: usize, length: f64, origin: f64) -> Result<Self> {
        Self::new(&[n], &[length], &[origin])
    }

    /// Grid centered on the coordinate origin: `[-L/2, L/2)` per axis.
    pub fn centered(n: &[usize], length: &[f64]) -> Result<Self> {
        let origin: Vec<f64> = length.iter().map(|l| -0.5 * l).collect();
        Self::new(n, length, &origin)
    }

    pub fn dim(&self) -> usize {
        self.n.len()
    }

    /// Total number of grid points.
    pub fn points(&self) -> usize {
        self.n.iter().product()
    }

    pub fn n(&self, axis: usize) -> usize {
        self.n[axis]
    }

    pub fn shape(&self) -> &[usize] {
        &self.n
    }

    pub fn length(&self, axis: usize) -> f64 {
        self.length[axis]
    }

    pub fn origin(&self, axis: usize) -> f64 {
        self.origin[axis]
    }

    /// Grid spacing along `axis`.
    pub fn dx(&self, axis: usize) -> f64 {
        self.length[axis] / self.n[axis] as f64
    }

    /// Volume of one grid cell.
    pub fn cell_volume(&self) -> f64 {
        (0..self.dim()).map(|a| self.dx(a)).product()
    }

    /// Coordinate of sample `i` along `axis`.
    pub fn coord(&self, axis: usize, i: usize) -> f64 {
        self.origin[axis] + i as f64 * self.dx(axis)
    }

    /// Multi-index of flat index `flat`, written into `out`.
    pub fn unravel(&self, flat: usize, out: &mut [usize]) {
        let mut rem = flat;
        for (a, &na) in self.n.iter().enumerate() {
            out[a] = rem % na;
            rem /= na;
        }
    }

    pub fn ravel(&self, idx: &[usize]) -> usize {
        let mut flat = 0;
        let mut stride = 1;
        for (a, &na) in self.n.iter().enumerate() {
            flat += idx[a] * stride;
            stride *= na;
        }
        flat
    }

    /// Position of the grid point with flat index `flat`.
    pub fn position(&self, flat: usize) -> Vec<f64> {
        let mut idx = [0usize; 3];
        self.unravel(flat, &mut idx[..self.dim()]);
        (0..self.dim()).map(|a| self.coord(a, idx[a])).collect()
    }

    /// Signed angular wavenumbers along `axis` in FFT output order.
    ///
    /// `k[j] = 2 pi j / L` for `j <= n/2`, shifted negative above. For even
    /// `n` the Nyquist index carries `+pi/dx`.
    pub fn wavenumbers(&self, axis: usize) -> Vec<f64> {
        let n = self.n[axis];
        let dk = 2.0 * PI / self.length[axis];
        (0..n)
            .map(|j| {
                let s = if j <= n / 2 { j as isize } else { j as isize - n as isize };
                s as f64 * dk
            })
            .collect()
    }

    /// `true` if `j` is the unpaired Nyquist index of an even-sized axis.
    pub fn is_nyquist(&self, axis: usize, j: usize) -> bool {
        let n = self.n[axis];
        n % 2 == 0 && j == n / 2
    }

    /// Largest resolvable |k| over all axes (for stability bounds).
    pub fn k_max(&self) -> f64 {
        (0..self.dim())
            .map(|a| PI / self.dx(a))
            .fold(0.0f64, |acc, k| (acc * acc + k * k).sqrt())
    }
}

/// Physical constants for a run: hbar, particle mass and light speed.
///
/// `mass` doubles as the rest mass `m0` in the relativistic operations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitSystem {
    pub hbar: f64,
    pub mass: f64,
    pub c: f64,
}

impl UnitSystem {
    /// hbar = m = c = 1.
    pub fn natural() -> Self {
        Self {
            hbar: 1.0,
            mass: 1.0,
            c: 1.0,
        }
    }

    pub fn explicit(hbar: f64, mass: f64, c: f64) -> Result<Self> {
        for (name, v) in [("hbar", hbar), ("mass", mass), ("c", c)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParam(format!("{name} must be > 0, got {v}")));
            }
        }
        Ok(Self { hbar, mass, c })
    }

    pub fn is_natural(&self) -> bool {
        self.hbar == 1.0 && self.mass == 1.0 && self.c == 1.0
    }

    /// Compton wavenumber `m0 c / hbar`.
    pub fn compton_wavenumber(&self) -> f64 {
        self.mass * self.c / self.hbar
    }
}

impl Default for UnitSystem {
    fn default() -> Self {
        Self::natural()
    }
}
