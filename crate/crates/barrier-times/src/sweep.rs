//! Parameter sweeps over `(upsilon, wL, n^2)` grids with deterministic
//! CSV/JSON serialization.
//!
//! Rows are computed data-parallel with rayon when the `parallel` feature
//! (default) is enabled and by a plain sequential loop otherwise; either
//! way the output ordering is the deterministic request order
//! `(upsilon, wL, ascending n^2)`, so identical invocations produce
//! byte-identical files.
//!
//! Numbers are serialized with 17 significant digits, which round-trips
//! `f64` exactly; the CSV header is fixed and versioned.

use crate::error::BarrierError;
use crate::kinematics::{BarrierConfig, Zone};
use crate::scattering;
use crate::times::{self, Branch};
use serde::{Deserialize, Serialize};
use std::io::Write;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Versioned, fixed CSV header.
pub const CSV_HEADER: &str = "upsilon,wL,n2,zone,rho2,T_mod2,phase,t_phi_norm,t_dwell_norm,branch";
/// Schema version stamped into CSV comments and JSON reports.
pub const SCHEMA_VERSION: u32 = 1;

/// A sweep request: the cross product of `upsilons` and `wls`, each over
/// the same inclusive `n^2` grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepSpec {
    /// Barrier strengths (each `>= 0`).
    pub upsilons: Vec<f64>,
    /// Opacities (each `> 0`).
    pub wls: Vec<f64>,
    /// Lower `n^2` bound (inclusive, `> 0`).
    pub n2_min: f64,
    /// Upper `n^2` bound (inclusive, `> n2_min`).
    pub n2_max: f64,
    /// Number of grid points (`>= 2`).
    pub steps: usize,
}

/// One computed sweep row; field order matches [`CSV_HEADER`].
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SweepRow {
    /// Barrier strength.
    pub upsilon: f64,
    /// Opacity `wL`.
    pub wl: f64,
    /// Squared normalized wave number.
    pub n2: f64,
    /// Energy zone.
    pub zone: Zone,
    /// Signed `rho^2`.
    pub rho2: f64,
    /// Transmission probability.
    pub t_mod2: f64,
    /// Transmission phase (principal value).
    pub phase: f64,
    /// Phase time over `tau`.
    pub t_phi_norm: f64,
    /// Dwell time over `tau`.
    pub t_dwell_norm: f64,
    /// Phase-time evaluation branch.
    pub branch: Branch,
}

impl SweepSpec {
    /// Figure-reproduction preset: `upsilon` in `{0, 1, 2, 5, 10}` at
    /// `wL = 2 pi`, `n^2` from just above 0 through the widest
    /// above-barrier zone.
    pub fn figure_preset() -> Self {
        Self {
            upsilons: vec![0.0, 1.0, 2.0, 5.0, 10.0],
            wls: vec![2.0 * std::f64::consts::PI],
            n2_min: 0.01,
            n2_max: 8.0,
            steps: 4000,
        }
    }

    fn validate(&self) -> Result<(), BarrierError> {
        if self.upsilons.is_empty() {
            return Err(BarrierError::invalid("upsilon", f64::NAN, "list is empty"));
        }
        if self.wls.is_empty() {
            return Err(BarrierError::invalid("wl", f64::NAN, "list is empty"));
        }
        if self.steps < 2 {
            return Err(BarrierError::invalid(
                "steps",
                self.steps as f64,
                "must be >= 2",
            ));
        }
        if !(self.n2_min.is_finite() && self.n2_min > 0.0 && self.n2_max > self.n2_min) {
            return Err(BarrierError::invalid(
                "n2_min",
                self.n2_min,
                "need 0 < n2_min < n2_max",
            ));
        }
        Ok(())
    }

    /// The inclusive `n^2` grid.
    pub fn grid(&self) -> Vec<f64> {
        let step = (self.n2_max - self.n2_min) / (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| self.n2_min + step * i as f64)
            .collect()
    }
}

/// Computes one sweep row.
pub fn row(cfg: &BarrierConfig, n2: f64) -> Result<SweepRow, BarrierError> {
    let pt = cfg.energy_point(n2)?;
    let obs = times::observables(cfg, &pt);
    Ok(SweepRow {
        upsilon: cfg.upsilon,
        wl: cfg.wl,
        n2,
        zone: pt.zone,
        rho2: pt.rho2,
        t_mod2: scattering::transmission_mod2(cfg, &pt),
        phase: scattering::transmission_phase(cfg, &pt),
        t_phi_norm: obs.t_phi_norm,
        t_dwell_norm: obs.t_dwell_norm,
        branch: obs.branch,
    })
}

/// Runs the sweep, in parallel when the `parallel` feature is enabled.
///
/// # Errors
///
/// Fails on an invalid spec or on the first failing row.
pub fn run(spec: &SweepSpec) -> Result<Vec<SweepRow>, BarrierError> {
    map_tasks(&tasks(spec)?)
}

/// Runs the sweep on the current thread regardless of feature flags.
///
/// Output is identical to [`run`]; this exists as the comparison baseline
/// for the parallel path.
///
/// # Errors
///
/// Fails on an invalid spec or on the first failing row.
pub fn run_sequential(spec: &SweepSpec) -> Result<Vec<SweepRow>, BarrierError> {
    tasks(spec)?.iter().map(|(cfg, n2)| row(cfg, *n2)).collect()
}

fn tasks(spec: &SweepSpec) -> Result<Vec<(BarrierConfig, f64)>, BarrierError> {
    spec.validate()?;
    let grid = spec.grid();
    let mut tasks = Vec::with_capacity(spec.upsilons.len() * spec.wls.len() * grid.len());
    for &upsilon in &spec.upsilons {
        for &wl in &spec.wls {
            let cfg = BarrierConfig::from_normalized(upsilon, wl)?;
            for &n2 in &grid {
                tasks.push((cfg, n2));
            }
        }
    }
    Ok(tasks)
}

#[cfg(feature = "parallel")]
fn map_tasks(tasks: &[(BarrierConfig, f64)]) -> Result<Vec<SweepRow>, BarrierError> {
    tasks
        .par_iter()
        .map(|(cfg, n2)| row(cfg, *n2))
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn map_tasks(tasks: &[(BarrierConfig, f64)]) -> Result<Vec<SweepRow>, BarrierError> {
    tasks.iter().map(|(cfg, n2)| row(cfg, *n2)).collect()
}

/// Formats a float with 17 significant digits (exact `f64` round-trip).
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes rows as CSV with the fixed versioned header.
///
/// # Errors
///
/// Propagates I/O errors from the writer.
pub fn write_csv<W: Write>(rows: &[SweepRow], out: &mut W) -> std::io::Result<()> {
    writeln!(out, "# schema_version={SCHEMA_VERSION}")?;
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            fmt_f64(r.upsilon),
            fmt_f64(r.wl),
            fmt_f64(r.n2),
            r.zone.label(),
            fmt_f64(r.rho2),
            fmt_f64(r.t_mod2),
            fmt_f64(r.phase),
            fmt_f64(r.t_phi_norm),
            fmt_f64(r.t_dwell_norm),
            r.branch.label(),
        )?;
    }
    Ok(())
}

/// Serializes rows as a JSON document mirroring the CSV columns.
pub fn to_json(rows: &[SweepRow]) -> serde_json::Value {
    serde_json::json!({
        "schema_version": SCHEMA_VERSION,
        "columns": CSV_HEADER.split(',').collect::<Vec<_>>(),
        "rows": rows,
    })
}
