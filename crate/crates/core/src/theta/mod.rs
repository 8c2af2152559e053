//! Test functions on `(Z/pZ)^d`, weighted theta series and their
//! transformation laws, and the cusp-form criterion.

mod cusp;
mod function;
mod series;
mod transform;

use num_complex::Complex64;

use crate::error::{domain, Result};

pub use cusp::{
    cusp_check, cusp_check_tol, lemma_r_check, lemma_t_check, srw_predicate, srw_sum, srw_sum_direct,
    CuspReport, KernelCheck,
};
pub use function::{random_cusp, TestFunction};
pub use series::{
    theta_coeffs, theta_coeffs_by_classes, theta_eval, theta_eval_detailed, theta_j_eval, CoefficientSeries,
    ThetaIndex, ThetaValue,
};
pub use transform::{
    is_in_gamma, principal_half_power, verify_poisson, verify_table1, verify_weak_modularity, SL2,
    TransformResidual,
};

/// A point `τ` with `Im τ > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UpperHalfPoint(Complex64);

impl UpperHalfPoint {
    pub fn new(tau: Complex64) -> Result<Self> {
        if !tau.re.is_finite() || !tau.im.is_finite() || tau.im <= 0.0 {
            return domain(format!("τ = {tau} is not in the upper half-plane"));
        }
        Ok(UpperHalfPoint(tau))
    }

    pub fn get(self) -> Complex64 {
        self.0
    }
}
