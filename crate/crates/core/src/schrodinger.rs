//! Split-step spectral propagation of `i hbar d psi/dt = -(hbar^2/2m) lap psi + V psi`
//! and imaginary-time relaxation to stationary states.
//!
//! The step is Strang-split kinetic-potential-kinetic: the potential acts
//! pointwise, the kinetic factor acts in Fourier space, so every factor is
//! unitary and the L2 norm is conserved unconditionally.

use crate::error::{Error, Result};
use crate::field::{ComplexField, RealField};
use crate::grid::{GridSpec, UnitSystem};
use crate::spectral;
use num_complex::Complex64;

/// Force potential acting on the wavefunction.
#[derive(Debug, Clone)]
pub enum PotentialSpec {
    Zero,
    /// `V = (m omega^2 / 2) |x|^2` about the coordinate origin.
    Harmonic { omega: f64 },
    /// `V = -depth` where every `|x_a| < width/2`, zero outside.
    SquareWell { depth: f64, width: f64 },
    Tabulated(RealField),
}

impl PotentialSpec {
    pub fn evaluate(&self, grid: &GridSpec, units: &UnitSystem) -> Result<RealField> {
        match self {
            PotentialSpec::Zero => Ok(RealField::zeros(grid.clone())),
            PotentialSpec::Harmonic { omega } => {
                if !omega.is_finite() {
                    return Err(Error::InvalidParam("omega must be finite".into()));
                }
                let m = units.mass;
                let w = *omega;
                RealField::from_fn(grid.clone(), move |x| {
                    0.5 * m * w * w * x.iter().map(|v| v * v).sum::<f64>()
                })
            }
            PotentialSpec::SquareWell { depth, width } => {
                if !(depth.is_finite() && width.is_finite() && *width > 0.0) {
                    return Err(Error::InvalidParam("bad square well parameters".into()));
                }
                let (d, w) = (*depth, *width);
                RealField::from_fn(grid.clone(), move |x| {
                    if x.iter().all(|v| v.abs() < w / 2.0) {
                        -d
                    } else {
                        0.0
                    }
                })
            }
            PotentialSpec::Tabulated(f) => {
                if f.grid() != grid {
                    return Err(Error::GridMismatch);
                }
                Ok(f.clone())
            }
        }
    }
}

/// Time step, step count and units for one evolution run.
#[derive(Debug, Clone)]
pub struct EvolutionConfig {
    pub dt: f64,
    pub steps: usize,
    pub units: UnitSystem,
}

impl EvolutionConfig {
    pub fn new(dt: f64, steps: usize, units: UnitSystem) -> Result<Self> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::InvalidParam(format!("dt must be > 0, got {dt}")));
        }
        if steps == 0 {
            return Err(Error::InvalidParam("steps must be >= 1".into()));
        }
        Ok(Self { dt, steps, units })
    }
}

struct SplitStepper {
    grid: GridSpec,
    /// exp(-i hbar |k|^2 dt / 4m): kinetic half step in Fourier space.
    kinetic_half: Vec<Complex64>,
    /// exp(-i V dt / hbar)
    potential_full: Vec<Complex64>,
}

impl SplitStepper {
    fn new(grid: &GridSpec, v: &RealField, dt: f64, units: &UnitSystem, imaginary: bool) -> Self {
        let k2 = spectral::k_squared(grid);
        let kin_coeff = units.hbar * dt / (4.0 * units.mass);
        let pot_coeff = dt / units.hbar;
        let (kinetic_half, potential_full) = if imaginary {
            (
                k2.iter()
                    .map(|&k| Complex64::new((-kin_coeff * k).exp(), 0.0))
                    .collect(),
                v.values()
                    .iter()
                    .map(|&vv| Complex64::new((-pot_coeff * vv).exp(), 0.0))
                    .collect(),
            )
        } else {
            (
                k2.iter()
                    .map(|&k| Complex64::from_polar(1.0, -kin_coeff * k))
                    .collect(),
                v.values()
                    .iter()
                    .map(|&vv| Complex64::from_polar(1.0, -pot_coeff * vv))
                    .collect(),
            )
        };
        Self {
            grid: grid.clone(),
            kinetic_half,
            potential_full,
        }
    }

    fn kinetic_half(&self, values: &mut [Complex64]) {
        spectral::fft_forward(values, &self.grid);
        for (v, k) in values.iter_mut().zip(&self.kinetic_half) {
            *v *= k;
        }
        spectral::fft_inverse(values, &self.grid);
    }

    fn potential_full(&self, values: &mut [Complex64]) {
        for (v, p) in values.iter_mut().zip(&self.potential_full) {
            *v *= p;
        }
    }

    /// Advance `steps` steps; adjacent kinetic half-steps are merged.
    fn run(
        &self,
        values: &mut [Complex64],
        steps: usize,
        step_offset: usize,
    ) -> Result<()> {
        let full: Vec<Complex64> = self.kinetic_half.iter().map(|k| k * k).collect();
        self.kinetic_half(values);
        for s in 0..steps {
            self.potential_full(values);
            if s + 1 == steps {
                self.kinetic_half(values);
            } else {
                spectral::fft_forward(values, &self.grid);
                for (v, k) in values.iter_mut().zip(&full) {
                    *v *= k;
                }
                spectral::fft_inverse(values, &self.grid);
            }
            if !values.iter().all(|v| v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::NonFiniteAtStep {
                    step: step_offset + s,
                });
            }
        }
        Ok(())
    }
}

/// Evolve `psi` for `cfg.steps` steps of size `cfg.dt`.
pub fn evolve(psi: &ComplexField, v: &PotentialSpec, cfg: &EvolutionConfig) -> Result<ComplexField> {
    let grid = psi.grid().clone();
    let vf = v.evaluate(&grid, &cfg.units)?;
    let stepper = SplitStepper::new(&grid, &vf, cfg.dt, &cfg.units, false);
    let mut values = psi.values().to_vec();
    stepper.run(&mut values, cfg.steps, 0)?;
    Ok(ComplexField::new(grid, values)?)
}

/// Evolve and keep snapshots every `snapshot_every` steps (including the
/// initial state and the final state).
pub fn evolve_snapshots(
    psi: &ComplexField,
    v: &PotentialSpec,
    cfg: &EvolutionConfig,
    snapshot_every: usize,
) -> Result<Vec<(f64, ComplexField)>> {
    if snapshot_every == 0 {
        return Err(Error::InvalidParam("snapshot_every must be >= 1".into()));
    }
    let grid = psi.grid().clone();
    let vf = v.evaluate(&grid, &cfg.units)?;
    let stepper = SplitStepper::new(&grid, &vf, cfg.dt, &cfg.units, false);
    let mut values = psi.values().to_vec();
    let mut out = vec![(0.0, psi.clone())];
    let mut done = 0;
    while done < cfg.steps {
        let chunk = snapshot_every.min(cfg.steps - done);
        stepper.run(&mut values, chunk, done)?;
        done += chunk;
        out.push((
            done as f64 * cfg.dt,
            ComplexField::new(grid.clone(), values.clone())?,
        ));
    }
    Ok(out)
}

/// Rayleigh quotient `<psi|H|psi> / <psi|psi>` with the spectral kinetic term.
pub fn energy(psi: &ComplexField, v: &PotentialSpec, units: &UnitSystem) -> Result<f64> {
    let vf = v.evaluate(psi.grid(), units)?;
    let lap = psi.laplacian();
    let dv = psi.grid().cell_volume();
    let mut kinetic = 0.0;
    let mut potential = 0.0;
    let mut norm = 0.0;
    for ((p, l), vv) in psi.values().iter().zip(lap.values()).zip(vf.values()) {
        kinetic += -(units.hbar * units.hbar) / (2.0 * units.mass) * (p.conj() * l).re;
        potential += vv * p.norm_sqr();
        norm += p.norm_sqr();
    }
    if norm == 0.0 {
        return Err(Error::InvalidParam("zero state has no energy".into()));
    }
    let _ = dv; // cancels in the quotient
    Ok((kinetic + potential) / norm)
}

/// Imaginary-time relaxation to the ground state of `v`.
///
/// Returns the normalized state and its Rayleigh-quotient energy. The
/// relaxation renormalizes every step and stops once the energy change per
/// step falls below `tol` at the smallest relaxation step.
pub fn ground_state(
    v: &PotentialSpec,
    grid: &GridSpec,
    units: &UnitSystem,
    tol: f64,
) -> Result<(ComplexField, f64)> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidParam("tol must be > 0".into()));
    }
    let vf = v.evaluate(grid, units)?;
    // symmetric bump seed: decent overlap with nodeless ground states
    let width: f64 = (0..grid.dim()).map(|a| grid.length(a)).fold(f64::INFINITY, f64::min) / 6.0;
    let mut psi = ComplexField::from_fn(grid.clone(), |x| {
        let q: f64 = x.iter().map(|v| v * v).sum();
        Complex64::new((-q / (2.0 * width * width)).exp(), 0.0)
    })?
    .normalized()?;

    const MAX_ITERS: usize = 60_000;
    let stages = [0.1, 0.02];
    let mut e_prev = energy(&psi, v, units)?;
    let mut iters = 0usize;
    let mut residual = f64::INFINITY;
    for (si, &tau) in stages.iter().enumerate() {
        let stage_tol = if si + 1 == stages.len() { tol } else { tol.max(1e-7) };
        let stepper = SplitStepper::new(grid, &vf, tau, units, true);
        loop {
            if iters >= MAX_ITERS {
                return Err(Error::NoConvergence {
                    iterations: iters,
                    residual,
                });
            }
            let mut values = psi.values().to_vec();
            stepper.run(&mut values, 1, iters)?;
            psi = ComplexField::new(grid.clone(), values)?.normalized()?;
            let e = energy(&psi, v, units)?;
            residual = (e - e_prev).abs();
            e_prev = e;
            iters += 1;
            if residual < stage_tol {
                break;
            }
        }
    }
    Ok((psi, e_prev))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states;
    use std::f64::consts::PI;

    fn natural() -> UnitSystem {
        UnitSystem::natural()
    }

    #[test]
    fn free_plane_wave_phase() {
        // V = 0: psi(t) = exp(i(kx - hbar k^2 t / 2m)), exact for split-step
        let g = GridSpec::line(64, 2.0 * PI, 0.0).unwrap();
        let psi0 = states::plane_wave(&g, &[3]).unwrap();
        let k = states::mode_wavevector(&g, &[3])[0];
        let cfg = EvolutionConfig::new(1e-3, 500, natural()).unwrap();
        let t = cfg.dt * cfg.steps as f64;
        let psi = evolve(&psi0, &PotentialSpec::Zero, &cfg).unwrap();
        let exact = ComplexField::from_fn(g, |x| {
            num_complex::Complex64::from_polar(1.0, k * x[0] - k * k * t / 2.0)
        })
        .unwrap();
        let err = psi.zip_map(&exact, |a, b| a - b).unwrap().max_abs();
        assert!(err < 1e-9, "err = {err:.3e}");
    }

    #[test]
    fn harmonic_ground_state_evolution() {
        // analytic ground state: |psi| stationary, global phase exp(-i E0 T)
        let g = GridSpec::centered(&[256], &[20.0]).unwrap();
        let u = natural();
        let psi0 = states::harmonic_eigenstate_1d(&g, &u, 1.0, 0).unwrap();
        let dt = 2e-4;
        let steps = 5000; // T = 1.0
        let cfg = EvolutionConfig::new(dt, steps, u).unwrap();
        let psi = evolve(&psi0, &PotentialSpec::Harmonic { omega: 1.0 }, &cfg).unwrap();
        let drift = psi
            .abs()
            .zip_map(&psi0.abs(), |a, b| a - b)
            .unwrap()
            .max_abs();
        assert!(drift < 1e-8, "|psi| drift = {drift:.3e}");
        let overlap = psi0.inner(&psi).unwrap();
        let phase = overlap.arg();
        // E0 = 0.5 -> phase = -0.5 * T
        assert!((phase + 0.5).abs() < 1e-6, "phase = {phase}");
    }

    #[test]
    fn gaussian_spreading_law() {
        // sigma(t)^2 = sigma0^2 (1 + (hbar t / 2 m sigma0^2)^2)
        let g = GridSpec::centered(&[512], &[40.0]).unwrap();
        let u = natural();
        let psi0 = states::gaussian(&g, &[0.0], 1.0, &[0.0]).unwrap();
        for (dt, steps) in [(1e-3, 500), (1e-3, 1000), (1e-3, 2000)] {
            let cfg = EvolutionConfig::new(dt, steps, u).unwrap();
            let t = dt * steps as f64;
            let psi = evolve(&psi0, &PotentialSpec::Zero, &cfg).unwrap();
            let rho = psi.abs_sq();
            let total = rho.integral();
            let mean = RealField::from_fn(g.clone(), |x| x[0])
                .unwrap()
                .zip_map(&rho, |x, r| x * r)
                .unwrap()
                .integral()
                / total;
            let var = RealField::from_fn(g.clone(), |x| x[0])
                .unwrap()
                .zip_map(&rho, |x, r| (x - mean) * (x - mean) * r)
                .unwrap()
                .integral()
                / total;
            let expected = 1.0 + (t / 2.0) * (t / 2.0);
            let rel = (var - expected).abs() / expected;
            assert!(rel < 1e-6, "t={t}: rel err {rel:.3e}");
        }
    }

    #[test]
    fn norm_conserved_across_potentials() {
        let g = GridSpec::centered(&[128], &[20.0]).unwrap();
        let u = natural();
        let psi0 = states::gaussian(&g, &[1.0], 1.2, &[0.5]).unwrap();
        let tab = PotentialSpec::Tabulated(
            RealField::from_fn(g.clone(), |x| 0.3 * (x[0] * 0.7).sin() + 0.1 * x[0].cos()).unwrap(),
        );
        let potentials = vec![
            PotentialSpec::Zero,
            PotentialSpec::Harmonic { omega: 1.0 },
            PotentialSpec::SquareWell {
                depth: 2.0,
                width: 5.0,
            },
            tab,
        ];
        for v in potentials {
            let cfg = EvolutionConfig::new(1e-3, 1000, u).unwrap();
            let psi = evolve(&psi0, &v, &cfg).unwrap();
            let drift = (psi.l2_norm() - psi0.l2_norm()).abs() / psi0.l2_norm();
            assert!(drift < 1e-10, "drift {drift:.3e} for {v:?}");
        }
    }

    #[test]
    fn energy_conserved_for_static_potential() {
        let g = GridSpec::centered(&[128], &[20.0]).unwrap();
        let u = natural();
        let psi0 = states::gaussian(&g, &[1.5], 1.0, &[0.0]).unwrap();
        let v = PotentialSpec::Harmonic { omega: 1.0 };
        let e0 = energy(&psi0, &v, &u).unwrap();
        let cfg = EvolutionConfig::new(5e-4, 1000, u).unwrap();
        let psi = evolve(&psi0, &v, &cfg).unwrap();
        let e1 = energy(&psi, &v, &u).unwrap();
        let rel = (e1 - e0).abs() / e0.abs();
        assert!(rel < 1e-8, "energy drift {rel:.3e}");
    }

    #[test]
    fn strang_is_second_order() {
        let g = GridSpec::centered(&[128], &[20.0]).unwrap();
        let u = natural();
        let psi0 = states::gaussian(&g, &[1.0], 1.0, &[1.0]).unwrap();
        let v = PotentialSpec::Harmonic { omega: 1.0 };
        let t = 0.5;
        let reference = {
            let cfg = EvolutionConfig::new(t / 16384.0, 16384, u).unwrap();
            evolve(&psi0, &v, &cfg).unwrap()
        };
        let err_at = |steps: usize| {
            let cfg = EvolutionConfig::new(t / steps as f64, steps, u).unwrap();
            let psi = evolve(&psi0, &v, &cfg).unwrap();
            psi.zip_map(&reference, |a, b| a - b).unwrap().max_abs()
        };
        let e1 = err_at(64);
        let e2 = err_at(128);
        let order = (e1 / e2).log2();
        assert!(
            (order - 2.0).abs() < 0.2,
            "observed order {order:.3} (e1={e1:.3e}, e2={e2:.3e})"
        );
    }

    #[test]
    fn ground_state_harmonic() {
        let g = GridSpec::centered(&[256], &[20.0]).unwrap();
        let u = natural();
        let (psi, e) = ground_state(&PotentialSpec::Harmonic { omega: 1.0 }, &g, &u, 1e-10).unwrap();
        assert!((e - 0.5).abs() < 1e-6, "E0 = {e}");
        assert!((psi.l2_norm() - 1.0).abs() < 1e-12);
        // matches the analytic profile
        let exact = states::harmonic_eigenstate_1d(&g, &u, 1.0, 0).unwrap();
        let overlap = exact.inner(&psi).unwrap().norm();
        assert!(overlap > 1.0 - 1e-8, "overlap = {overlap}");
    }

    #[test]
    fn ground_state_harmonic_omega2() {
        let g = GridSpec::centered(&[256], &[20.0]).unwrap();
        let u = natural();
        let (_, e) = ground_state(&PotentialSpec::Harmonic { omega: 2.0 }, &g, &u, 1e-10).unwrap();
        assert!((e - 1.0).abs() < 1e-6, "E0 = {e}");
    }

    #[test]
    fn ground_state_free_is_constant() {
        let g = GridSpec::centered(&[64], &[10.0]).unwrap();
        let u = natural();
        let (psi, e) = ground_state(&PotentialSpec::Zero, &g, &u, 1e-12).unwrap();
        assert!(e.abs() < 1e-9, "E = {e:.3e}");
        let spread = psi.abs().values().iter().cloned().fold(f64::NEG_INFINITY, f64::max)
            - psi.abs().values().iter().cloned().fold(f64::INFINITY, f64::min);
        assert!(spread < 1e-6, "not constant: spread {spread:.3e}");
    }

    #[test]
    fn energy_examples() {
        let g = GridSpec::line(64, 2.0 * PI, 0.0).unwrap();
        let u = natural();
        // plane wave k: E = hbar^2 k^2 / 2m
        let psi = states::plane_wave(&g, &[4]).unwrap();
        let k = states::mode_wavevector(&g, &[4])[0];
        let e = energy(&psi, &PotentialSpec::Zero, &u).unwrap();
        assert!((e - k * k / 2.0).abs() < 1e-10);
        // constant field, V = 0: E = 0
        let c = ComplexField::from_fn(g, |_| num_complex::Complex64::new(0.5, 0.0)).unwrap();
        let e0 = energy(&c, &PotentialSpec::Zero, &u).unwrap();
        assert!(e0.abs() < 1e-12);
    }

    #[test]
    fn relaxed_state_is_stationary_under_evolution() {
        let g = GridSpec::centered(&[128], &[20.0]).unwrap();
        let u = natural();
        let v = PotentialSpec::Harmonic { omega: 1.0 };
        let (psi0, _) = ground_state(&v, &g, &u, 1e-11).unwrap();
        let cfg = EvolutionConfig::new(2e-4, 5000, u).unwrap(); // T = 1
        let psi = evolve(&psi0, &v, &cfg).unwrap();
        let drift = psi
            .abs()
            .zip_map(&psi0.abs(), |a, b| a - b)
            .unwrap()
            .max_abs();
        assert!(drift < 1e-8, "drift = {drift:.3e}");
    }

    #[test]
    fn tabulated_potential_grid_mismatch_rejected() {
        let g1 = GridSpec::line(32, 1.0, 0.0).unwrap();
        let g2 = GridSpec::line(64, 1.0, 0.0).unwrap();
        let v = PotentialSpec::Tabulated(RealField::zeros(g2));
        let psi = ComplexField::zeros(g1.clone());
        let cfg = EvolutionConfig::new(0.1, 1, natural()).unwrap();
        assert!(evolve(&psi, &v, &cfg).is_err());
    }

    #[test]
    fn config_validation() {
        assert!(EvolutionConfig::new(0.0, 10, natural()).is_err());
        assert!(EvolutionConfig::new(0.1, 0, natural()).is_err());
    }
}
