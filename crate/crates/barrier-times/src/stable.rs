//! Numerically stable hyperbolic helpers on the signed argument
//! `z = rho^2 * (wL)^2`.
//!
//! Inside the evanescent zone `rho^2 > 0` and the barrier solutions are real
//! exponentials; in the Klein and above-barrier zones `rho^2 < 0` and the
//! same closed forms continue analytically with `sinh -> i sin`. Writing
//! every formula in terms of entire functions of `z` (with `x = sqrt(|z|)`)
//! removes the zone dispatch and the `0/0` forms at the zone boundaries,
//! where `z -> 0`:
//!
//! * [`sh2`]  `= sinh^2(x)` continued to `-sin^2(x)` for `z < 0`,
//! * [`shc`]  `= sinh(2x) / (2x)`,
//! * [`sh2_over`]  `= sinh^2(x) / z`,
//! * [`shc_m1_over`]  `= (sinh(2x)/(2x) - 1) / z`,
//! * [`thc`]  `= tanh(x) / x`.
//!
//! Each helper switches to a truncated Maclaurin series for small `|z|`;
//! with the chosen cut the truncation error is far below `1e-15` relative.

/// Series cut: below this `|z|` the Maclaurin expansions are used.
const SERIES_CUT: f64 = 0.09;

/// `sinh^2(sqrt(z))` for `z >= 0`, `-sin^2(sqrt(-z))` for `z < 0`.
///
/// This is the entire function `z/1! + ... = (cosh(2 sqrt(z)) - 1) / 2`.
pub fn sh2(z: f64) -> f64 {
    if z >= 0.0 {
        let s = z.sqrt().sinh();
        s * s
    } else {
        let s = (-z).sqrt().sin();
        -(s * s)
    }
}

/// `sinh(2x) / (2x)` with `x = sqrt(z)`, continued to `sin(2x)/(2x)` for
/// `z < 0`; equals `1` at `z = 0`.
pub fn shc(z: f64) -> f64 {
    if z.abs() < SERIES_CUT {
        // sum_j (4z)^j / (2j+1)!
        let u = 4.0 * z;
        let mut term = 1.0;
        let mut acc = 1.0;
        for j in 1..12 {
            term *= u / ((2 * j) as f64 * (2 * j + 1) as f64);
            acc += term;
            if term.abs() < 1e-18 * acc.abs() {
                break;
            }
        }
        acc
    } else if z > 0.0 {
        let x2 = 2.0 * z.sqrt();
        x2.sinh() / x2
    } else {
        let x2 = 2.0 * (-z).sqrt();
        x2.sin() / x2
    }
}

/// `sinh^2(sqrt(z)) / z`, continued through `z = 0` where it equals `1`.
pub fn sh2_over(z: f64) -> f64 {
    if z.abs() < SERIES_CUT {
        // sum_j 2 (4z)^j / (2j+2)!
        let u = 4.0 * z;
        let mut term = 1.0;
        let mut acc = 1.0;
        for j in 1..12 {
            term *= u / ((2 * j + 1) as f64 * (2 * j + 2) as f64);
            acc += term;
            if term.abs() < 1e-18 * acc.abs() {
                break;
            }
        }
        acc
    } else {
        sh2(z) / z
    }
}

/// `(sinh(2x)/(2x) - 1) / z` with `x = sqrt(z)`; equals `2/3` at `z = 0`.
pub fn shc_m1_over(z: f64) -> f64 {
    if z.abs() < SERIES_CUT {
        // sum_i 4^(i+1) z^i / (2i+3)!
        let u = 4.0 * z;
        let mut term = 2.0 / 3.0;
        let mut acc = term;
        for i in 1..12 {
            term *= u / ((2 * i + 2) as f64 * (2 * i + 3) as f64);
            acc += term;
            if term.abs() < 1e-18 * acc.abs() {
                break;
            }
        }
        acc
    } else {
        (shc(z) - 1.0) / z
    }
}

/// `tanh(sqrt(z)) / sqrt(z)`, continued to `tan(sqrt(-z)) / sqrt(-z)` for
/// `z < 0`; equals `1` at `z = 0`.
///
/// For `z < 0` the continuation has poles at `sqrt(-z) = (2j+1) pi / 2`;
/// callers in the oscillatory zones must pair this with an `atan2`-based
/// phase so the poles map to `+-pi/2` cleanly.
pub fn thc(z: f64) -> f64 {
    if z.abs() < 1e-12 {
        // Unlike the others, tanh(x)/x is cancellation-free for any x > 0;
        // only the origin itself needs its limit expansion.
        1.0 - z / 3.0
    } else if z > 0.0 {
        let x = z.sqrt();
        x.tanh() / x
    } else {
        let x = (-z).sqrt();
        x.tan() / x
    }
}
