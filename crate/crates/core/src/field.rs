//! Real- and complex-valued sample fields on a [`GridSpec`].
//!
//! Fields are immutable after construction and validate finiteness up
//! front, so downstream operators never have to propagate NaNs.

use crate::error::{Error, Result};
use crate::grid::GridSpec;
use num_complex::Complex64;

/// Real scalar samples on a grid.
#[derive(Debug, Clone)]
pub struct RealField {
    grid: GridSpec,
    values: Vec<f64>,
}

/// Complex scalar samples on a grid (carrier for wavefunctions).
#[derive(Debug, Clone)]
pub struct ComplexField {
    grid: GridSpec,
    values: Vec<Complex64>,
}

impl RealField {
    pub fn new(grid: GridSpec, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.points() {
            return Err(Error::InvalidGrid(format!(
                "expected {} samples, got {}",
                grid.points(),
                values.len()
            )));
        }
        if !values.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite {
                context: "RealField::new".into(),
            });
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: GridSpec) -> Self {
        let n = grid.points();
        Self {
            grid,
            values: vec![0.0; n],
        }
    }

    pub fn constant(grid: GridSpec, value: f64) -> Result<Self> {
        let n = grid.points();
        Self::new(grid, vec![value; n])
    }

    /// Sample `f` at every grid position.
    pub fn from_fn(grid: GridSpec, f: impl Fn(&[f64]) -> f64) -> Result<Self> {
        let values: Vec<f64> = (0..grid.points()).map(|i| f(&grid.position(i))).collect();
        Self::new(grid, values)
    }

    pub(crate) fn from_raw(grid: GridSpec, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), grid.points());
        Self { grid, values }
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self::from_raw(self.grid.clone(), self.values.iter().map(|&v| f(v)).collect())
    }

    pub fn zip_map(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        Ok(Self::from_raw(
            self.grid.clone(),
            self.values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        ))
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// L2 norm including the cell volume weight.
    pub fn l2_norm(&self) -> f64 {
        let dv = self.grid.cell_volume();
        (self.values.iter().map(|v| v * v).sum::<f64>() * dv).sqrt()
    }

    /// Integral of the field over the domain.
    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.grid.cell_volume()
    }

    pub fn all_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    pub fn to_complex(&self) -> ComplexField {
        ComplexField::from_raw(
            self.grid.clone(),
            self.values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        )
    }
}

impl ComplexField {
    pub fn new(grid: GridSpec, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.points() {
            return Err(Error::InvalidGrid(format!(
                "expected {} samples, got {}",
                grid.points(),
                values.len()
            )));
        }
        if !values.iter().all(|v| v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::NonFinite {
                context: "ComplexField::new".into(),
            });
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: GridSpec) -> Self {
        let n = grid.points();
        Self {
            grid,
            values: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    pub fn from_fn(grid: GridSpec, f: impl Fn(&[f64]) -> Complex64) -> Result<Self> {
        let values: Vec<Complex64> = (0..grid.points()).map(|i| f(&grid.position(i))).collect();
        Self::new(grid, values)
    }

    pub(crate) fn from_raw(grid: GridSpec, values: Vec<Complex64>) -> Self {
        debug_assert_eq!(values.len(), grid.points());
        Self { grid, values }
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub(crate) fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self::from_raw(self.grid.clone(), self.values.iter().map(|&v| f(v)).collect())
    }

    pub fn zip_map(
        &self,
        other: &Self,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        Ok(Self::from_raw(
            self.grid.clone(),
            self.values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        ))
    }

    /// Pointwise modulus as a real field.
    pub fn abs(&self) -> RealField {
        RealField::from_raw(
            self.grid.clone(),
            self.values.iter().map(|v| v.norm()).collect(),
        )
    }

    /// Pointwise modulus squared.
    pub fn abs_sq(&self) -> RealField {
        RealField::from_raw(
            self.grid.clone(),
            self.values.iter().map(|v| v.norm_sqr()).collect(),
        )
    }

    pub fn re(&self) -> RealField {
        RealField::from_raw(self.grid.clone(), self.values.iter().map(|v| v.re).collect())
    }

    pub fn im(&self) -> RealField {
        RealField::from_raw(self.grid.clone(), self.values.iter().map(|v| v.im).collect())
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.norm()))
    }

    /// L2 norm with cell volume weight: `sqrt(sum |psi|^2 dV)`.
    pub fn l2_norm(&self) -> f64 {
        let dv = self.grid.cell_volume();
        (self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * dv).sqrt()
    }

    /// `<self|other>` with cell volume weight.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        let dv = self.grid.cell_volume();
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            * dv)
    }

    /// Rescale to unit L2 norm.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.l2_norm();
        if n == 0.0 {
            return Err(Error::InvalidParam("cannot normalize a zero field".into()));
        }
        Ok(self.map(|v| v / n))
    }

    pub fn all_finite(&self) -> bool {
        self.values.iter().all(|v| v.re.is_finite() && v.im.is_finite())
    }
}
