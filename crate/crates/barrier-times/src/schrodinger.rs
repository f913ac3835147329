//! Independent non-relativistic (Schrodinger) rectangular-barrier solver.
//!
//! Written directly from the textbook junction algebra in the normalized
//! variables of the `upsilon = 0` baseline: lengths in units of `1/w`,
//! exterior wave number `k = n`, interior `kappa = sqrt(1 - n^2)` (continued
//! to `i q` above the barrier). This module deliberately shares no code
//! with [`crate::scattering`] or [`crate::times`]; it is the reduction
//! oracle that the `upsilon = 0` limit of the relativistic closed forms is
//! tested against.

use crate::error::BarrierError;
use crate::numerics::{adaptive_simpson, richardson_derivative};
use num_complex::Complex64;

/// Transmission amplitude at `x = L` (convention `t e^{ik(x-L)}`) for the
/// normalized barrier of opacity `wl` at `n^2 = n2`.
///
/// # Errors
///
/// Requires `n2 > 0`.
pub fn transmission(wl: f64, n2: f64) -> Result<Complex64, BarrierError> {
    let (k, kappa) = wave_numbers(n2)?;
    let ik = Complex64::new(0.0, 1.0) * k;
    let kl = kappa * wl;
    let num = 2.0 * ik * kappa;
    let den = 2.0 * ik * kappa * kl.cosh() + (k * k - kappa * kappa) * kl.sinh();
    Ok(num / den)
}

/// Reflection amplitude for the same barrier.
///
/// # Errors
///
/// Requires `n2 > 0`.
pub fn reflection(wl: f64, n2: f64) -> Result<Complex64, BarrierError> {
    let (k, kappa) = wave_numbers(n2)?;
    let ik = Complex64::new(0.0, 1.0) * k;
    let kl = kappa * wl;
    let num = (k * k + kappa * kappa) * kl.sinh();
    let den = 2.0 * ik * kappa * kl.cosh() + (k * k - kappa * kappa) * kl.sinh();
    Ok(num / den)
}

/// Normalized dwell time: `(1/L) * integral_0^L |phi_2|^2 dx`, computed by
/// adaptive quadrature over the interior solution.
///
/// # Errors
///
/// Requires `n2 > 0`; propagates quadrature failures.
pub fn dwell_norm(wl: f64, n2: f64) -> Result<f64, BarrierError> {
    let (k, kappa) = wave_numbers(n2)?;
    let t = transmission(wl, n2)?;
    // Interior amplitudes from continuity of phi and phi' at x = L.
    let ik = Complex64::new(0.0, 1.0) * k;
    let ep = (kappa * wl).exp();
    let alpha = t * (1.0 - ik / kappa) * ep / 2.0;
    let beta = t * (1.0 + ik / kappa) / ep / 2.0;
    adaptive_simpson(
        |xi| {
            let arg = kappa * wl * xi;
            (alpha * (-arg).exp() + beta * arg.exp()).norm_sqr()
        },
        0.0,
        1.0,
        1e-12,
    )
}

/// Normalized phase time `d(arg t)/dn / wl`, by Richardson-extrapolated
/// numerical differentiation of the transmission phase.
///
/// # Errors
///
/// Requires `n2 > 0` with the differentiation stencil away from `n = 0`.
pub fn phase_time_norm(wl: f64, n2: f64) -> Result<f64, BarrierError> {
    let n = n2.sqrt();
    let h = (1e-6_f64).max(1e-4 * (1.0 - n2).abs() / (2.0 * n));
    if n - h <= 0.0 {
        return Err(BarrierError::invalid("n2", n2, "too close to 0 for differentiation"));
    }
    let d = richardson_derivative(
        |nn| transmission(wl, nn * nn).map(|t| t.arg()).unwrap_or(f64::NAN),
        n,
        h,
    );
    Ok(d / wl)
}

fn wave_numbers(n2: f64) -> Result<(f64, Complex64), BarrierError> {
    if !(n2.is_finite() && n2 > 0.0) {
        return Err(BarrierError::invalid("n2", n2, "must be finite and > 0"));
    }
    Ok((n2.sqrt(), Complex64::from(1.0 - n2).sqrt()))
}
