//! Small numerical kernels: adaptive Simpson quadrature and a
//! Richardson-extrapolated central difference.

use crate::error::BarrierError;

/// Maximum bisection depth of the adaptive quadrature.
const MAX_DEPTH: u32 = 48;

/// Integrates `f` over `[a, b]` with adaptive Simpson bisection.
///
/// # Arguments
///
/// * `f` - integrand, evaluated at points of `[a, b]`
/// * `a`, `b` - integration limits, `a < b`
/// * `tol` - absolute error target
///
/// # Errors
///
/// Returns [`BarrierError::Convergence`] if the recursion depth limit is
/// reached before the local error estimate drops below the target.
pub fn adaptive_simpson<F>(f: F, a: f64, b: f64, tol: f64) -> Result<f64, BarrierError>
where
    F: Fn(f64) -> f64,
{
    let m = 0.5 * (a + b);
    let fa = f(a);
    let fm = f(m);
    let fb = f(b);
    let whole = simpson(a, b, fa, fm, fb);
    simpson_step(&f, a, b, fa, fm, fb, whole, tol, MAX_DEPTH)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64, BarrierError>
where
    F: Fn(f64) -> f64,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let err = left + right - whole;
    if err.abs() <= 15.0 * tol {
        // Classic one-step Richardson correction of the composite rule.
        return Ok(left + right + err / 15.0);
    }
    if depth == 0 {
        return Err(BarrierError::Convergence {
            what: "adaptive Simpson quadrature",
            requested: tol,
            achieved: err.abs() / 15.0,
        });
    }
    let half_tol = 0.5 * tol;
    Ok(simpson_step(f, a, m, fa, flm, fm, left, half_tol, depth - 1)?
        + simpson_step(f, m, b, fm, frm, fb, right, half_tol, depth - 1)?)
}

/// First derivative of `f` at `x` by central differences at steps `h` and
/// `h/2`, combined with one Richardson extrapolation (leading error
/// `O(h^4)`).
pub fn richardson_derivative<F>(f: F, x: f64, h: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    let d1 = (f(x + h) - f(x - h)) / (2.0 * h);
    let d2 = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
    (4.0 * d2 - d1) / 3.0
}
