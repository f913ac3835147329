//! Exact four-wave matching across the barrier, solved as a dense 4x4
//! complex linear system.
//!
//! The stationary solution is
//!
//! ```text
//! x < 0:      e^{ikx} + R e^{-ikx}
//! 0 < x < L:  alpha e^{-kappa x} + beta e^{kappa x}
//! x > L:      T e^{ik(x-L)}
//! ```
//!
//! with `kappa = w sqrt(rho^2)` continued to `i |w rho|` in the oscillatory
//! zones. Two junction conditions at each interface give four equations for
//! `(R, alpha, beta, T)`. The junction convention is selectable:
//!
//! * [`Convention::Scalar`] - continuity of the wave function and of its
//!   plain first derivative (second-order wave equation),
//! * [`Convention::Spinor`] - continuity of the wave function and of the
//!   derivative weighted by `1 / (E - V + m)` per region, the junction rule
//!   of the first-order (spinor) reduction of the same dispersion.
//!
//! The two conventions agree on `|T|` in the non-relativistic regime and
//! differ at relativistic strengths; both serve as independent oracles for
//! the closed forms in [`crate::scattering`].

use crate::error::BarrierError;
use crate::kinematics::BarrierConfig;
use num_complex::Complex64;

/// Junction condition used at the barrier interfaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    /// Continuity of `phi` and `phi'`.
    Scalar,
    /// Continuity of `phi` and `phi' / (E - V + m)`.
    Spinor,
}

/// Amplitudes of the matched stationary solution.
#[derive(Debug, Clone, Copy)]
pub struct MatchingSolution {
    /// Reflection amplitude.
    pub r: Complex64,
    /// Transmission amplitude (at `x = L`).
    pub t: Complex64,
    /// Decaying interior amplitude.
    pub alpha: Complex64,
    /// Growing interior amplitude.
    pub beta: Complex64,
    /// Exterior wave number `k`.
    pub k: f64,
    /// Interior wave number `kappa` (positive real or positive imaginary).
    pub kappa: Complex64,
    /// Barrier width `L` in the same units as `1/k`.
    pub length: f64,
}

impl MatchingSolution {
    /// `|R|^2 + |T|^2 - 1`; zero for an exact flux-conserving solution.
    pub fn unitarity_defect(&self) -> f64 {
        self.r.norm_sqr() + self.t.norm_sqr() - 1.0
    }

    /// Interior wave function at `x = xi * L`, `xi` in `[0, 1]`.
    pub fn interior(&self, xi: f64) -> Complex64 {
        let arg = self.kappa * self.length * xi;
        self.alpha * (-arg).exp() + self.beta * arg.exp()
    }
}

/// Solves the matching problem at `n2` under the given junction convention.
///
/// # Errors
///
/// * [`BarrierError::InvalidParameter`] for `n2 <= 0`, or for
///   [`Convention::Spinor`] on the non-relativistic baseline configuration,
///   which carries no energy scale.
/// * [`BarrierError::SingularMatching`] if the linear system is singular.
pub fn solve(
    cfg: &BarrierConfig,
    n2: f64,
    convention: Convention,
) -> Result<MatchingSolution, BarrierError> {
    let pt = cfg.energy_point(n2)?;

    // Work in units of w: k = n, kappa = sqrt(rho^2), length = wL.
    let k = pt.n;
    let length = cfg.wl;
    let kappa = Complex64::from(pt.rho2).sqrt();

    // Derivative weights per region under the chosen convention.
    let (w_out, w_in) = match convention {
        Convention::Scalar => (1.0, 1.0),
        Convention::Spinor => {
            let p = cfg.physical.ok_or_else(|| {
                BarrierError::invalid(
                    "upsilon",
                    cfg.upsilon,
                    "spinor matching requires a physical configuration",
                )
            })?;
            let e = p.mass * cfg.s_factor(n2);
            (1.0 / (e + p.mass), 1.0 / (e - p.v0 + p.mass))
        }
    };

    let ik = Complex64::new(0.0, k);
    let em = (-kappa * length).exp();
    let ep = (kappa * length).exp();
    let zero = Complex64::ZERO;
    let one = Complex64::ONE;

    // Unknowns: [R, alpha, beta, T].
    let mut m = [
        // phi continuity at 0: 1 + R = alpha + beta
        [one, -one, -one, zero],
        // weighted phi' at 0: w_out ik (1 - R) = w_in kappa (beta - alpha)
        [w_out * ik, -(w_in * kappa), w_in * kappa, zero],
        // phi continuity at L
        [zero, em, ep, -one],
        // weighted phi' at L: w_in kappa (beta ep - alpha em) = w_out ik T
        [zero, -(w_in * kappa * em), w_in * kappa * ep, -(w_out * ik)],
    ];
    let mut rhs = [-one, w_out * ik, zero, zero];

    solve_4x4(&mut m, &mut rhs).map_err(|_| BarrierError::SingularMatching { n2 })?;

    Ok(MatchingSolution {
        r: rhs[0],
        alpha: rhs[1],
        beta: rhs[2],
        t: rhs[3],
        k,
        kappa,
        length,
    })
}

/// In-place Gaussian elimination with partial pivoting; the solution is
/// left in `rhs`.
fn solve_4x4(m: &mut [[Complex64; 4]; 4], rhs: &mut [Complex64; 4]) -> Result<(), ()> {
    for col in 0..4 {
        let pivot = (col..4)
            .max_by(|&a, &b| {
                m[a][col]
                    .norm_sqr()
                    .partial_cmp(&m[b][col].norm_sqr())
                    .unwrap()
            })
            .unwrap();
        if m[pivot][col].norm_sqr() == 0.0 {
            return Err(());
        }
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        for row in (col + 1)..4 {
            let factor = m[row][col] / m[col][col];
            for j in col..4 {
                let sub = factor * m[col][j];
                m[row][j] -= sub;
            }
            let sub = factor * rhs[col];
            rhs[row] -= sub;
        }
    }
    for col in (0..4).rev() {
        let mut acc = rhs[col];
        for j in (col + 1)..4 {
            acc -= m[col][j] * rhs[j];
        }
        rhs[col] = acc / m[col][col];
    }
    Ok(())
}
