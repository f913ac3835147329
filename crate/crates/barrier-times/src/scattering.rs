//! Closed-form transmission modulus, phase, and interior amplitudes.
//!
//! With `z = rho^2 (wL)^2` the transmission probability is evaluated in the
//! regularized form
//!
//! ```text
//! 1 / |T|^2 = 1 + (wL)^2 * sh2_over(z) / (4 n^2)
//! ```
//!
//! which is a single entire expression across all zones: it reproduces the
//! evanescent `sinh^2` law, the oscillatory `sin^2` law with transmission
//! resonances at `q wL = j pi`, and the finite boundary limit at `z = 0`
//! without any case split. The transmission phase is
//!
//! ```text
//! tan(phase) = (n^2 - rho^2) wL thc(z) / (2 n)
//! ```
//!
//! evaluated with `atan2` in the oscillatory zones so the poles of
//! `tan(q wL)` map to smooth crossings of `+-pi/2`. The phase convention is
//! that of plain wave-function and derivative continuity (scalar matching);
//! the modulus coincides with the spinor-matching one. Both statements are
//! enforced against [`crate::matching`] in the test suite.

use crate::kinematics::{BarrierConfig, EnergyPoint};
use crate::stable::{sh2_over, thc};
use num_complex::Complex64;

/// Transmission probability `|T|^2`.
pub fn transmission_mod2(cfg: &BarrierConfig, pt: &EnergyPoint) -> f64 {
    let z = pt.rho2 * cfg.wl * cfg.wl;
    1.0 / (1.0 + cfg.wl * cfg.wl * sh2_over(z) / (4.0 * pt.n2))
}

/// Transmission phase at `x = L`, principal value in `(-pi, pi]`.
///
/// Along a sweep the phase is smooth except for `2 pi` wraps in the
/// oscillatory zones; see [`unwrap_phases`].
pub fn transmission_phase(cfg: &BarrierConfig, pt: &EnergyPoint) -> f64 {
    let z = pt.rho2 * cfg.wl * cfg.wl;
    if z >= 0.0 {
        // tanh is bounded: the argument of atan is finite everywhere.
        ((pt.n2 - pt.rho2) * cfg.wl * thc(z) / (2.0 * pt.n)).atan()
    } else {
        // Oscillatory zone: tan(q wL) has poles; fold them into atan2.
        let q = (-pt.rho2).sqrt();
        let x = q * cfg.wl;
        ((pt.n2 + q * q) * x.sin()).atan2(2.0 * pt.n * q * x.cos())
    }
}

/// Complex transmission amplitude `|T| e^{i phase}`.
pub fn transmission(cfg: &BarrierConfig, pt: &EnergyPoint) -> Complex64 {
    Complex64::from_polar(
        transmission_mod2(cfg, pt).sqrt(),
        transmission_phase(cfg, pt),
    )
}

/// Interior amplitudes `(alpha, beta)` of the closed-form solution family,
/// in `phi_2(xi) = alpha e^{-rho wL xi} + beta e^{rho wL xi}` with
/// `xi = x / L`.
///
/// These are obtained from wave-function and derivative continuity at
/// `x = L` given the transmission amplitude [`transmission`]; the dwell-time
/// closed form integrates exactly this density.
pub fn interior_amplitudes(cfg: &BarrierConfig, pt: &EnergyPoint) -> (Complex64, Complex64) {
    let t = transmission(cfg, pt);
    let rho = Complex64::from(pt.rho2).sqrt();
    let i = Complex64::I;
    let ep = (rho * cfg.wl).exp();
    let ratio = i * pt.n / rho;
    let alpha = t * (1.0 - ratio) * ep / 2.0;
    let beta = t * (1.0 + ratio) / ep / 2.0;
    (alpha, beta)
}

/// Interior probability density `|phi_2(xi)|^2` at `xi = x / L`.
pub fn interior_density(cfg: &BarrierConfig, pt: &EnergyPoint, xi: f64) -> f64 {
    let (alpha, beta) = interior_amplitudes(cfg, pt);
    let rho = Complex64::from(pt.rho2).sqrt();
    let arg = rho * cfg.wl * xi;
    (alpha * (-arg).exp() + beta * arg.exp()).norm_sqr()
}

/// Removes `2 pi` wraps from a sequence of principal-value phases sampled
/// along a sweep, making the sequence continuous.
pub fn unwrap_phases(phases: &mut [f64]) {
    use std::f64::consts::{PI, TAU};
    let mut offset = 0.0;
    for i in 1..phases.len() {
        let raw = phases[i] + offset;
        let mut jump = raw - phases[i - 1];
        while jump > PI {
            offset -= TAU;
            jump -= TAU;
        }
        while jump < -PI {
            offset += TAU;
            jump += TAU;
        }
        phases[i] = phases[i - 1] + jump;
    }
}
