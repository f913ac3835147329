//! Output plumbing: format selection, stdout/file writers, and the
//! edge-limit table serializers.

use barrier_times::sweep::{fmt_f64, SCHEMA_VERSION};
use barrier_times::times::EdgeLimits;
use clap::ValueEnum;
use std::fs::File;
use std::io::{self, BufWriter, Write};

/// Output format of tabular commands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// Comma-separated values with a versioned header.
    Csv,
    /// JSON document mirroring the CSV columns.
    Json,
}

/// Fixed header of the edge-limit table.
pub const LIMITS_HEADER: &str = "upsilon,wL,edge,n2,T_mod_lim,t_phi_norm_lim,t_dwell_norm_lim";

/// Opens the output sink: a buffered file, or stdout when `path` is `None`.
pub fn open_out(path: Option<&str>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

/// Writes the edge-limit rows in the requested format.
pub fn write_limits(
    rows: &[(f64, f64, &str, EdgeLimits)],
    format: OutputFormat,
    out: &mut dyn Write,
) -> anyhow::Result<()> {
    match format {
        OutputFormat::Csv => {
            writeln!(out, "# schema_version={SCHEMA_VERSION}")?;
            writeln!(out, "{LIMITS_HEADER}")?;
            for (upsilon, wl, edge, lim) in rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    fmt_f64(*upsilon),
                    fmt_f64(*wl),
                    edge,
                    fmt_f64(lim.n2),
                    fmt_f64(lim.t_mod),
                    fmt_f64(lim.t_phi_norm),
                    fmt_f64(lim.t_dwell_norm),
                )?;
            }
        }
        OutputFormat::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|(upsilon, wl, edge, lim)| {
                    serde_json::json!({
                        "upsilon": upsilon,
                        "wL": wl,
                        "edge": edge,
                        "n2": lim.n2,
                        "T_mod_lim": lim.t_mod,
                        "t_phi_norm_lim": lim.t_phi_norm,
                        "t_dwell_norm_lim": lim.t_dwell_norm,
                    })
                })
                .collect();
            let doc = serde_json::json!({
                "schema_version": SCHEMA_VERSION,
                "columns": LIMITS_HEADER.split(',').collect::<Vec<_>>(),
                "rows": rows,
            });
            serde_json::to_writer_pretty(&mut *out, &doc)?;
            writeln!(out)?;
        }
    }
    Ok(())
}
