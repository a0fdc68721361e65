//! Numerical laboratory for wave mechanics in its fluid and optical
//! readings: spectral Schrodinger and Klein-Gordon propagation, polar
//! (amplitude/action) decomposition with quantum-potential diagnostics,
//! pilot-wave trajectories next to classical rays, chart-level Cartan
//! calculus, and Born-Infeld field quantities.

pub mod borninfeld;
pub mod error;
pub mod field;
pub mod geometry;
pub mod grid;
pub mod io;
pub mod kleingordon;
pub mod madelung;
pub mod schrodinger;
pub mod spectral;
pub mod states;
pub mod trajectories;

pub use error::{Error, Result};
pub use field::{ComplexField, RealField};
pub use grid::{GridSpec, UnitSystem};

pub use num_complex::Complex64;
