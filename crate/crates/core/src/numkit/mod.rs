//! Numerical building blocks shared by the rest of the crate.

pub mod gamma;
pub mod hyper;
pub mod power;
pub mod quad;
pub mod sum;

pub use gamma::{gamma_complex, gamma_real, recip_gamma};
pub use hyper::{kummer_1f1, kummer_1f1_with, tricomi_u, HyperOptions};
pub use power::{on_branch_cut, principal_power, principal_powf, sqrt_off_cut};
pub use quad::{
    adaptive_quad, adaptive_quad_real, gauss_hermite, gauss_hermite_apply, integrate, tanh_sinh, trapezoid_line, Domain,
    QuadRule, QuadValue, QuadratureSpec,
};
pub use sum::{compensated_sum, compensated_sum_with, two_sum, DoubleDouble, Precision, SumAccumulator};

pub use num_complex::Complex64;

/// Shorthand constructor.
#[inline]
pub fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
