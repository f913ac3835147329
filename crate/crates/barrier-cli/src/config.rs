//! Line-based `key=value` configuration files for the `sweep` subcommand.
//!
//! Keys use the flag names without the leading dashes (`upsilon`, `wl`,
//! `n2-min`, `n2-max`, `steps`, `format`, `out`, `mass`, `v0`, `length`).
//! Repeatable keys may appear on multiple lines. Values given on the
//! command line always win; the file only fills in what was left unset.
//! Blank lines and lines starting with `#` are ignored.

use crate::{OutputFormat, SweepArgs};
use anyhow::{anyhow, bail, Context, Result};
use clap::ValueEnum;

/// Applies `path` onto `args`, filling unset fields only.
pub fn apply(path: &str, args: &mut SweepArgs) -> Result<()> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read config file {path}"))?;
    let mut upsilons = Vec::new();
    let mut wls = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("{path}:{}: expected key=value, got {line:?}", lineno + 1))?;
        let (key, value) = (key.trim(), value.trim());
        let parse = |what: &str| -> Result<f64> {
            value
                .parse::<f64>()
                .with_context(|| format!("{path}:{}: invalid {what}: {value:?}", lineno + 1))
        };
        match key {
            "upsilon" => upsilons.push(parse("upsilon")?),
            "wl" => wls.push(parse("wl")?),
            "n2-min" => fill(&mut args.n2_min, parse("n2-min")?),
            "n2-max" => fill(&mut args.n2_max, parse("n2-max")?),
            "steps" => fill(
                &mut args.steps,
                value
                    .parse::<usize>()
                    .with_context(|| format!("{path}:{}: invalid steps", lineno + 1))?,
            ),
            "format" => fill(
                &mut args.format,
                OutputFormat::from_str(value, true)
                    .map_err(|e| anyhow!("{path}:{}: {e}", lineno + 1))?,
            ),
            "out" => fill(&mut args.out, value.to_string()),
            "mass" => fill(&mut args.mass, parse("mass")?),
            "v0" => fill(&mut args.v0, parse("v0")?),
            "length" => fill(&mut args.length, parse("length")?),
            other => bail!("{path}:{}: unknown key {other:?}", lineno + 1),
        }
    }
    // List-valued keys: the file applies only when the flag list is empty.
    if args.upsilons.is_empty() {
        args.upsilons = upsilons;
    }
    if args.wls.is_empty() {
        args.wls = wls;
    }
    Ok(())
}

fn fill<T>(slot: &mut Option<T>, value: T) {
    if slot.is_none() {
        *slot = Some(value);
    }
}
