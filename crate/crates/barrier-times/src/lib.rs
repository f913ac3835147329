//! Transmission, phase time, and dwell time for a relativistic spin-0
//! particle tunneling through a one-dimensional rectangular barrier.
//!
//! The barrier of height `V0` and width `L` is characterised by two
//! dimensionless parameters: the relativistic strength `upsilon = V0 / m`
//! and the opacity `wL`, where `w = sqrt(2 m V0)`. Incident energies are
//! parameterised by `n^2 = k^2 / w^2`, the squared wave number in units of
//! `w`. In these variables the energy domain splits into a Klein zone
//! (oscillatory solutions below the barrier gap, present for `upsilon > 2`),
//! an evanescent tunneling zone, and an above-barrier zone.
//!
//! The crate provides:
//!
//! * closed-form transmission modulus and phase with numerically stable
//!   evaluation across zone boundaries ([`scattering`]),
//! * exact four-wave matching solvers used as independent cross-checks
//!   ([`matching`]),
//! * phase (group-delay) time and dwell time, including boundary-limit and
//!   small-opacity series branches ([`times`]),
//! * Gaussian wavepacket synthesis for measuring arrival delays
//!   ([`wavepacket`]),
//! * parameter sweeps with a data-parallel driver and CSV/JSON serialization
//!   ([`sweep`]),
//! * a non-relativistic reference solver ([`schrodinger`]).
//!
//! The data-parallel sweep driver uses rayon when the default `parallel`
//! feature is enabled and falls back to a sequential loop otherwise.

pub mod error;
pub mod kinematics;
pub mod matching;
pub mod numerics;
pub mod scattering;
pub mod schrodinger;
pub mod stable;
pub mod sweep;
pub mod times;
pub mod wavepacket;

pub use error::BarrierError;
pub use kinematics::{BarrierConfig, EnergyPoint, Zone};
pub use times::TimeObservables;
