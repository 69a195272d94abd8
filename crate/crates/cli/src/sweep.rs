//! Grid sweeps: expand the axes, evaluate points in parallel, gather rows in
//! row-major order and write them as CSV.

use std::io::Write;
use std::path::Path;

use log::{debug, info};
use rayon::prelude::*;

use crate::commands::{Command, Options};
use crate::error::CliError;
use crate::params::ParamRange;

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub command: Command,
    pub ranges: Vec<ParamRange>,
    pub options: Options,
}

impl SweepConfig {
    pub fn new(command: Command, ranges: Vec<ParamRange>) -> Self {
        Self {
            command,
            ranges,
            options: Options::default(),
        }
    }

    /// One axis per command parameter, in the command's order; parameters
    /// not given on the command line are fixed at their defaults.
    pub fn axes(&self) -> Result<Vec<ParamRange>, CliError> {
        let params = self.command.params();
        for (k, r) in self.ranges.iter().enumerate() {
            if !params.iter().any(|(name, _)| *name == r.name) {
                let known: Vec<&str> = params.iter().map(|(n, _)| *n).collect();
                return Err(CliError::Usage(format!(
                    "`{}` is not a parameter of {:?} (expected one of {})",
                    r.name,
                    self.command,
                    known.join(", ")
                )));
            }
            if self.ranges[..k].iter().any(|q| q.name == r.name) {
                return Err(CliError::Usage(format!(
                    "parameter `{}` given twice",
                    r.name
                )));
            }
        }
        Ok(params
            .iter()
            .map(|&(name, default)| {
                self.ranges
                    .iter()
                    .find(|r| r.name == name)
                    .cloned()
                    .unwrap_or_else(|| ParamRange::fixed(name, default))
            })
            .collect())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

/// Row-major cartesian product of the axis values.
fn grid(axes: &[ParamRange]) -> Vec<Vec<f64>> {
    axes.iter().fold(vec![Vec::new()], |acc, axis| {
        let values = axis.values();
        acc.into_iter()
            .flat_map(|prefix| {
                values.iter().map(move |&v| {
                    let mut row = prefix.clone();
                    row.push(v);
                    row
                })
            })
            .collect()
    })
}

fn describe(axes: &[ParamRange], point: &[f64]) -> String {
    axes.iter()
        .zip(point)
        .map(|(a, v)| format!("{}={}", a.name, v))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Evaluates every grid point. Points run concurrently; the collected order
/// is the grid order, so the result does not depend on scheduling.
pub fn run(config: &SweepConfig) -> Result<SweepResult, CliError> {
    let axes = config.axes()?;
    let points = grid(&axes);
    info!("{:?}: {} grid points", config.command, points.len());
    let rows = points
        .par_iter()
        .map(|point| {
            let values = config
                .command
                .evaluate(point, &config.options)
                .map_err(|source| CliError::Numeric {
                    point: describe(&axes, point),
                    source,
                })?;
            debug!("{} -> {:?}", describe(&axes, point), values);
            if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
                return Err(CliError::Numeric {
                    point: describe(&axes, point),
                    source: fockent::Error::NonPhysical(format!("non-finite diagnostic {bad}")),
                });
            }
            Ok(point.iter().chain(&values).copied().collect())
        })
        .collect::<Result<Vec<Vec<f64>>, CliError>>()?;
    let header = axes
        .iter()
        .map(|a| a.name.clone())
        .chain(config.command.columns().iter().map(|c| c.to_string()))
        .collect();
    Ok(SweepResult { header, rows })
}

/// `x` with 12 significant digits: fixed notation for moderate exponents,
/// scientific otherwise, trailing zeros trimmed.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp) as usize;
        let fixed = format!("{x:.decimals$}");
        if fixed.contains('.') {
            fixed
                .trim_end_matches('0')
                .trim_end_matches('.')
                .to_string()
        } else {
            fixed
        }
    } else {
        let mantissa = if mantissa.contains('.') {
            mantissa.trim_end_matches('0').trim_end_matches('.')
        } else {
            mantissa
        };
        format!("{mantissa}e{exp}")
    }
}

pub fn write_csv<W: Write>(result: &SweepResult, out: W) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(&result.header)?;
    for row in &result.rows {
        w.write_record(row.iter().map(|&v| format_sig(v)))?;
    }
    w.flush()?;
    Ok(())
}

pub fn emit_csv(result: &SweepResult, path: &Path) -> Result<(), CliError> {
    let file = std::fs::File::create(path)?;
    write_csv(result, std::io::BufWriter::new(file))
}
