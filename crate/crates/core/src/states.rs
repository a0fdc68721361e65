//! Built-in initial states.

use crate::error::{Error, Result};
use crate::field::ComplexField;
use crate::grid::{GridSpec, UnitSystem};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Normalized Gaussian packet `prod_a exp(-(x-c)^2/(4 sigma^2)) * exp(i k.x)`.
///
/// The position-space density has standard deviation `sigma` per axis.
pub fn gaussian(
    grid: &GridSpec,
    center: &[f64],
    sigma: f64,
    wavevector: &[f64],
) -> Result<ComplexField> {
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::InvalidParam(format!("sigma must be > 0, got {sigma}")));
    }
    let dim = grid.dim();
    if center.len() != dim || wavevector.len() != dim {
        return Err(Error::InvalidParam(
            "center/wavevector dimension mismatch".into(),
        ));
    }
    let center = center.to_vec();
    let kv = wavevector.to_vec();
    let f = ComplexField::from_fn(grid.clone(), |x| {
        let mut q = 0.0;
        let mut phase = 0.0;
        for a in 0..x.len() {
            let d = x[a] - center[a];
            q += d * d;
            phase += kv[a] * x[a];
        }
        Complex64::from_polar((-q / (4.0 * sigma * sigma)).exp(), phase)
    })?;
    f.normalized()
}

/// Plane wave `exp(i k.x)` with `k_a = 2 pi modes_a / L_a` (unit amplitude,
/// exactly periodic on the grid).
pub fn plane_wave(grid: &GridSpec, modes: &[i64]) -> Result<ComplexField> {
    if modes.len() != grid.dim() {
        return Err(Error::InvalidParam("modes dimension mismatch".into()));
    }
    let k: Vec<f64> = modes
        .iter()
        .enumerate()
        .map(|(a, &m)| 2.0 * PI * m as f64 / grid.length(a))
        .collect();
    ComplexField::from_fn(grid.clone(), move |x| {
        let phase: f64 = x.iter().zip(&k).map(|(xi, ki)| xi * ki).sum();
        Complex64::from_polar(1.0, phase)
    })
}

/// Wavevector corresponding to integer `modes` on this grid.
pub fn mode_wavevector(grid: &GridSpec, modes: &[i64]) -> Vec<f64> {
    modes
        .iter()
        .enumerate()
        .map(|(a, &m)| 2.0 * PI * m as f64 / grid.length(a))
        .collect()
}

/// Analytic harmonic-oscillator eigenstate (1D), levels 0 and 1.
pub fn harmonic_eigenstate_1d(
    grid: &GridSpec,
    units: &UnitSystem,
    omega: f64,
    level: usize,
) -> Result<ComplexField> {
    if grid.dim() != 1 {
        return Err(Error::InvalidParam("1D grid required".into()));
    }
    if level > 1 {
        return Err(Error::InvalidParam("only levels 0 and 1 provided".into()));
    }
    let alpha = units.mass * omega / units.hbar;
    let norm0 = (alpha / PI).powf(0.25);
    let f = ComplexField::from_fn(grid.clone(), move |x| {
        let g = (-0.5 * alpha * x[0] * x[0]).exp();
        let v = match level {
            0 => norm0 * g,
            _ => norm0 * (2.0 * alpha).sqrt() * x[0] * g,
        };
        Complex64::new(v, 0.0)
    })?;
    // analytic normalization is exact in the continuum; renormalize on the
    // grid so discrete norms are 1 to rounding
    f.normalized()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_is_normalized() {
        let g = GridSpec::centered(&[128], &[20.0]).unwrap();
        let f = gaussian(&g, &[0.0], 1.0, &[2.0]).unwrap();
        assert!((f.l2_norm() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn plane_wave_is_periodic_mode() {
        let g = GridSpec::line(32, 4.0, 0.0).unwrap();
        let f = plane_wave(&g, &[3]).unwrap();
        // amplitude 1 everywhere
        for v in f.values() {
            assert!((v.norm() - 1.0).abs() < 1e-14);
        }
        // resolved mode: spectral derivative equals ik f
        let k = mode_wavevector(&g, &[3])[0];
        let d = f.derivative(0);
        let err = d
            .zip_map(&f, |dv, fv| dv - Complex64::new(0.0, k) * fv)
            .unwrap()
            .max_abs();
        assert!(err < 1e-10);
    }

    #[test]
    fn excited_state_has_node() {
        let g = GridSpec::centered(&[128], &[20.0]).unwrap();
        let u = UnitSystem::natural();
        let f = harmonic_eigenstate_1d(&g, &u, 1.0, 1).unwrap();
        assert!((f.l2_norm() - 1.0).abs() < 1e-13);
        // odd function: value at x<0 and x>0 have opposite signs
        let v = f.values();
        assert!(v[10].re * v[120].re < 0.0);
    }
}
