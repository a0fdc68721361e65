//! Fourier-based calculus on periodic grids.
//!
//! All derivatives here are spectral: exact (to rounding) for resolved
//! modes. For odd-order derivatives the unpaired Nyquist mode of an
//! even-sized axis is zeroed so real fields stay real; even-order
//! derivatives keep it.

use crate::error::Result;
use crate::field::{ComplexField, RealField};
use crate::grid::GridSpec;
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::sync::{Arc, Mutex, OnceLock};

fn planner() -> &'static Mutex<FftPlanner<f64>> {
    static PLANNER: OnceLock<Mutex<FftPlanner<f64>>> = OnceLock::new();
    PLANNER.get_or_init(|| Mutex::new(FftPlanner::new()))
}

pub(crate) fn plan(n: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    let mut p = planner().lock().expect("fft planner poisoned");
    if inverse {
        p.plan_fft_inverse(n)
    } else {
        p.plan_fft_forward(n)
    }
}

/// Apply a 1D FFT along `axis` of the flat array `values` (layout: axis 0
/// fastest). The inverse transform includes the 1/n normalization.
pub(crate) fn fft_axis(values: &mut [Complex64], grid: &GridSpec, axis: usize, inverse: bool) {
    let n_axis = grid.n(axis);
    let fft = plan(n_axis, inverse);
    let stride: usize = (0..axis).map(|a| grid.n(a)).product();
    let block = stride * n_axis;
    let total = grid.points();
    let mut line = vec![Complex64::new(0.0, 0.0); n_axis];
    let scale = 1.0 / n_axis as f64;
    let mut chunk = 0;
    while chunk < total {
        for s in 0..stride {
            let base = chunk + s;
            for (j, l) in line.iter_mut().enumerate() {
                *l = values[base + j * stride];
            }
            fft.process(&mut line);
            if inverse {
                for (j, l) in line.iter().enumerate() {
                    values[base + j * stride] = *l * scale;
                }
            } else {
                for (j, l) in line.iter().enumerate() {
                    values[base + j * stride] = *l;
                }
            }
        }
        chunk += block;
    }
}

/// Full N-D forward transform (in place, unnormalized).
pub(crate) fn fft_forward(values: &mut [Complex64], grid: &GridSpec) {
    for axis in 0..grid.dim() {
        fft_axis(values, grid, axis, false);
    }
}

/// Full N-D inverse transform (in place, normalized).
pub(crate) fn fft_inverse(values: &mut [Complex64], grid: &GridSpec) {
    for axis in 0..grid.dim() {
        fft_axis(values, grid, axis, true);
    }
}

/// Forward-then-inverse round trip; used by the conservation checks.
pub fn roundtrip(f: &ComplexField) -> ComplexField {
    let grid = f.grid().clone();
    let mut v = f.values().to_vec();
    fft_forward(&mut v, &grid);
    fft_inverse(&mut v, &grid);
    ComplexField::from_raw(grid, v)
}

/// `|k|^2` for every flat index of the grid, in FFT layout.
pub(crate) fn k_squared(grid: &GridSpec) -> Vec<f64> {
    let dim = grid.dim();
    let ks: Vec<Vec<f64>> = (0..dim).map(|a| grid.wavenumbers(a)).collect();
    let mut out = vec![0.0; grid.points()];
    let mut idx = [0usize; 3];
    for (flat, o) in out.iter_mut().enumerate() {
        grid.unravel(flat, &mut idx[..dim]);
        *o = (0..dim).map(|a| ks[a][idx[a]] * ks[a][idx[a]]).sum();
    }
    out
}

fn derivative_axis_complex(f: &ComplexField, axis: usize) -> ComplexField {
    let grid = f.grid().clone();
    let mut v = f.values().to_vec();
    fft_axis(&mut v, &grid, axis, false);
    let ks = grid.wavenumbers(axis);
    let dim = grid.dim();
    let mut idx = [0usize; 3];
    for (flat, val) in v.iter_mut().enumerate() {
        grid.unravel(flat, &mut idx[..dim]);
        let j = idx[axis];
        if grid.is_nyquist(axis, j) {
            *val = Complex64::new(0.0, 0.0);
        } else {
            *val *= Complex64::new(0.0, ks[j]);
        }
    }
    fft_axis(&mut v, &grid, axis, true);
    ComplexField::from_raw(grid, v)
}

fn laplacian_complex(f: &ComplexField) -> ComplexField {
    let grid = f.grid().clone();
    let mut v = f.values().to_vec();
    fft_forward(&mut v, &grid);
    for (val, k2) in v.iter_mut().zip(k_squared(&grid)) {
        *val *= -k2;
    }
    fft_inverse(&mut v, &grid);
    ComplexField::from_raw(grid, v)
}

impl ComplexField {
    /// Per-axis spectral derivative.
    pub fn gradient(&self) -> Vec<ComplexField> {
        (0..self.grid().dim())
            .map(|a| derivative_axis_complex(self, a))
            .collect()
    }

    /// Derivative along one axis.
    pub fn derivative(&self, axis: usize) -> ComplexField {
        derivative_axis_complex(self, axis)
    }

    /// Spectral Laplacian.
    pub fn laplacian(&self) -> ComplexField {
        laplacian_complex(self)
    }

    /// Pointwise `|lap f + k^2 f|`: residual of the time-invariant wave
    /// equation at wavenumber `k`.
    pub fn helmholtz_residual(&self, k: f64) -> Result<RealField> {
        if !k.is_finite() {
            return Err(crate::error::Error::InvalidParam(format!(
                "wavenumber must be finite, got {k}"
            )));
        }
        let lap = self.laplacian();
        let k2 = k * k;
        Ok(RealField::from_raw(
            self.grid().clone(),
            lap.values()
                .iter()
                .zip(self.values())
                .map(|(l, f)| (l + k2 * f).norm())
                .collect(),
        ))
    }
}

impl RealField {
    /// Per-axis spectral derivative (computed through the complex
    /// transform; the imaginary rounding residue is dropped).
    pub fn gradient(&self) -> Vec<RealField> {
        let c = self.to_complex();
        (0..self.grid().dim())
            .map(|a| derivative_axis_complex(&c, a).re())
            .collect()
    }

    pub fn derivative(&self, axis: usize) -> RealField {
        derivative_axis_complex(&self.to_complex(), axis).re()
    }

    pub fn laplacian(&self) -> RealField {
        laplacian_complex(&self.to_complex()).re()
    }
}

/// Divergence of a vector of real component fields.
pub fn divergence(components: &[RealField]) -> Result<RealField> {
    let grid = components[0].grid().clone();
    let mut acc = vec![0.0; grid.points()];
    for (axis, comp) in components.iter().enumerate() {
        if comp.grid() != &grid {
            return Err(crate::error::Error::GridMismatch);
        }
        let d = comp.derivative(axis);
        for (a, v) in acc.iter_mut().zip(d.values()) {
            *a += v;
        }
    }
    Ok(RealField::from_raw(grid, acc))
}
