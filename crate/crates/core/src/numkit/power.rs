//! Principal-branch powers and square roots.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// True when `z` lies on (or numerically on) the negative real axis.
pub fn on_branch_cut(z: Complex64) -> bool {
    z.re < 0.0 && z.im.abs() <= 1e-14 * z.re.abs()
}

/// `z^w = exp(w log z)` with the cut of `log` along the negative real axis.
pub fn principal_power(z: Complex64, w: Complex64) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) {
        return if w.re > 0.0 {
            Ok(Complex64::new(0.0, 0.0))
        } else {
            Err(Error::InvalidArgument(format!("0 raised to a power with Re w = {} <= 0", w.re)))
        };
    }
    if w == Complex64::new(1.0, 0.0) {
        return Ok(z);
    }
    if w.im == 0.0 && w.re == w.re.round() && w.re.abs() <= 64.0 {
        return Ok(z.powi(w.re as i32));
    }
    Ok((w * z.ln()).exp())
}

pub fn principal_powf(z: Complex64, w: f64) -> Result<Complex64> {
    principal_power(z, Complex64::new(w, 0.0))
}

/// Principal square root that refuses arguments on the cut.
pub fn sqrt_off_cut(z: Complex64) -> Result<Complex64> {
    if on_branch_cut(z) {
        return Err(Error::BranchCut { argument: z });
    }
    Ok(z.sqrt())
}
