//! Lattice points on spheres `x_1² + … + x_d² = n` and their distribution
//! modulo a prime.
//!
//! The crate is organised bottom-up:
//!
//! - [`arith`]: Jacobi symbols, `ε_d`, `p`-adic valuations and the `j ↦ j′`
//!   pairing used by the theta transformation laws.
//! - [`lattice`]: sphere enumeration, fast representation-number tables,
//!   finite quadrics over `Z/pZ` (and the mod-4 lift for `p = 2`), residue
//!   histograms.
//! - [`density`]: Gauss sums, the circle-method coefficients `A_d(q, n)`,
//!   local densities, the singular series and the main term of `r_d(n)`.
//! - [`theta`]: test functions on `(Z/pZ)^d`, weighted theta series, the
//!   Poisson/transformation identities and the cusp-form criterion.
//! - [`equidist`]: empirical measures, total-variation discrepancy, Weyl sums
//!   and decay studies.

pub mod arith;
pub mod density;
pub mod equidist;
mod error;
pub mod lattice;
pub mod theta;

pub use error::{Error, Result};
pub use num_complex::Complex64;

pub use arith::{OddInt, PAdicSplit};
pub use density::{DensityMethod, DensityReport, SingularSeriesValue};
pub use equidist::{DiscrepancyRecord, EmpiricalMeasure};
pub use lattice::{Limits, LatticePoint, ResidueHistogram, ResidueVector, SphereCount};
pub use theta::{CoefficientSeries, TestFunction, TransformResidual, UpperHalfPoint};
