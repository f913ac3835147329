//! Barrier configuration, normalized kinematic variables, and energy-zone
//! classification.
//!
//! All scattering quantities depend on three numbers only:
//!
//! * `upsilon = V0 / m` — barrier height in units of the mass,
//! * `wL` — barrier opacity, with `w = sqrt(2 m V0)`,
//! * `n^2 = k^2 / w^2` — squared incident wave number in units of `w`.
//!
//! The relativistic dispersion `k^2 = E^2 - m^2` gives `E / m =
//! sqrt(1 + 2 n^2 upsilon)`, and the squared evanescent wave number inside
//! the barrier, in units of `w`, is
//!
//! ```text
//! rho^2(n) = sqrt(1 + 2 n^2 upsilon) - (n^2 + upsilon / 2)
//! ```
//!
//! which satisfies `(w rho)^2 = m^2 - (E - V0)^2` identically and vanishes
//! exactly at the zone boundaries `n^2 = upsilon/2 -+ 1`. `rho^2` carries
//! the sign of the zone: positive in the evanescent tunneling zone, negative
//! in the Klein and above-barrier zones where the interior solutions
//! oscillate.

use crate::error::BarrierError;
use serde::{Deserialize, Serialize};

/// Half-width of the boundary band around a zone edge, in `n^2`.
pub const EPS_EDGE: f64 = 1e-9;

/// Energy zone of an incident `n^2` for a given barrier strength.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Zone {
    /// `n^2 < upsilon/2 - 1`: oscillatory interior solutions below the gap.
    /// Exists only for `upsilon > 2`.
    Klein,
    /// `|n^2 - upsilon/2| < 1`: exponentially damped interior solutions.
    TunnelingEvanescent,
    /// `n^2 > upsilon/2 + 1`: oscillatory interior solutions above the
    /// barrier.
    AboveBarrier,
    /// Within [`EPS_EDGE`] of a zone edge, where `rho^2 -> 0`.
    Boundary,
}

impl Zone {
    /// Short lowercase label used in CSV output.
    pub fn label(self) -> &'static str {
        match self {
            Zone::Klein => "klein",
            Zone::TunnelingEvanescent => "tunneling",
            Zone::AboveBarrier => "above",
            Zone::Boundary => "boundary",
        }
    }
}

/// Dimensionful barrier parameters, available when the configuration was
/// built from (or is equivalent to) a physical `(m, V0, L)` triple.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Physical {
    /// Particle mass `m` (natural units, `hbar = c = 1`).
    pub mass: f64,
    /// Barrier height `V0`.
    pub v0: f64,
    /// Barrier width `L`.
    pub length: f64,
    /// Wave-number scale `w = sqrt(2 m V0)`.
    pub w: f64,
}

/// A rectangular barrier, normalized: `upsilon = V0/m` and opacity `wL`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct BarrierConfig {
    /// Relativistic barrier strength `V0 / m`.
    pub upsilon: f64,
    /// Opacity `w L`.
    pub wl: f64,
    /// Physical parameters; `None` for the `upsilon = 0` non-relativistic
    /// baseline, which is defined by `wL` alone (lengths measured in `1/w`).
    pub physical: Option<Physical>,
}

/// One incident energy, classified.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct EnergyPoint {
    /// Squared normalized wave number `k^2 / w^2`.
    pub n2: f64,
    /// `n = sqrt(n2)`.
    pub n: f64,
    /// Signed `rho^2(n)`; see the module docs.
    pub rho2: f64,
    /// Energy zone.
    pub zone: Zone,
}

impl BarrierConfig {
    /// Builds a configuration from physical `(m, V0, L)`.
    ///
    /// # Errors
    ///
    /// All three parameters must be strictly positive.
    pub fn new(mass: f64, v0: f64, length: f64) -> Result<Self, BarrierError> {
        require_positive("mass", mass)?;
        require_positive("v0", v0)?;
        require_positive("length", length)?;
        let w = (2.0 * mass * v0).sqrt();
        Ok(Self {
            upsilon: v0 / mass,
            wl: w * length,
            physical: Some(Physical {
                mass,
                v0,
                length,
                w,
            }),
        })
    }

    /// Builds a configuration from normalized `(upsilon, wL)`.
    ///
    /// For `upsilon > 0` the representative physical triple `m = 1`,
    /// `V0 = upsilon`, `L = wL / sqrt(2 upsilon)` is attached; every
    /// normalized observable is independent of that choice. `upsilon = 0`
    /// selects the non-relativistic baseline with no mass scale.
    ///
    /// # Errors
    ///
    /// Requires `upsilon >= 0` and `wL > 0`, both finite.
    pub fn from_normalized(upsilon: f64, wl: f64) -> Result<Self, BarrierError> {
        if !upsilon.is_finite() || upsilon < 0.0 {
            return Err(BarrierError::invalid("upsilon", upsilon, "must be >= 0"));
        }
        require_positive("wl", wl)?;
        if upsilon == 0.0 {
            return Ok(Self {
                upsilon,
                wl,
                physical: None,
            });
        }
        let w = (2.0 * upsilon).sqrt();
        Self::new(1.0, upsilon, wl / w)
    }

    /// Non-relativistic baseline (`upsilon = 0`) of the given opacity.
    pub fn nr_baseline(wl: f64) -> Result<Self, BarrierError> {
        Self::from_normalized(0.0, wl)
    }

    /// Lower zone edge `n^2 = upsilon/2 - 1` (Klein/tunneling boundary),
    /// present only for `upsilon > 2`.
    pub fn lower_edge(&self) -> Option<f64> {
        let e = self.upsilon / 2.0 - 1.0;
        (e > 0.0).then_some(e)
    }

    /// Upper zone edge `n^2 = upsilon/2 + 1` (tunneling/above-barrier
    /// boundary).
    pub fn upper_edge(&self) -> f64 {
        self.upsilon / 2.0 + 1.0
    }

    /// `E / m = sqrt(1 + 2 n^2 upsilon)`.
    pub fn s_factor(&self, n2: f64) -> f64 {
        (1.0 + 2.0 * n2 * self.upsilon).sqrt()
    }

    /// Signed `rho^2(n)`.
    pub fn rho2(&self, n2: f64) -> f64 {
        self.s_factor(n2) - (n2 + self.upsilon / 2.0)
    }

    /// Classifies `n^2` into its energy zone, with a [`EPS_EDGE`]-wide
    /// boundary band around each edge.
    pub fn zone(&self, n2: f64) -> Zone {
        let upper = self.upper_edge();
        if (n2 - upper).abs() < EPS_EDGE {
            return Zone::Boundary;
        }
        if let Some(lower) = self.lower_edge() {
            if (n2 - lower).abs() < EPS_EDGE {
                return Zone::Boundary;
            }
            if n2 < lower {
                return Zone::Klein;
            }
        }
        if n2 > upper {
            Zone::AboveBarrier
        } else {
            Zone::TunnelingEvanescent
        }
    }

    /// Validates and classifies one incident energy.
    ///
    /// # Errors
    ///
    /// Requires `n2 > 0` and finite.
    pub fn energy_point(&self, n2: f64) -> Result<EnergyPoint, BarrierError> {
        require_positive("n2", n2)?;
        Ok(EnergyPoint {
            n2,
            n: n2.sqrt(),
            rho2: self.rho2(n2),
            zone: self.zone(n2),
        })
    }

    /// Free traversal time `tau = L E / k` for physical configurations.
    ///
    /// Returns `None` for the non-relativistic baseline, where normalized
    /// times (ratios to `tau`) are the native observables.
    pub fn tau(&self, n2: f64) -> Option<f64> {
        let p = self.physical?;
        let k = p.w * n2.sqrt();
        let e = p.mass * self.s_factor(n2);
        Some(p.length * e / k)
    }
}

fn require_positive(name: &'static str, value: f64) -> Result<(), BarrierError> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(BarrierError::invalid(name, value, "must be finite and > 0"))
    }
}
