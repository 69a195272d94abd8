//! Sweep axes on the command line: `name=value` or `name=min..max:steps`.
//! Numbers may be written with `pi` (or `π`): `pi`, `2pi`, `-pi/2`, `0.5pi`.

use std::f64::consts::PI;
use std::str::FromStr;

use crate::error::CliError;

/// One sweep axis; `steps` evenly spaced values from `min` to `max`
/// inclusive.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamRange {
    pub name: String,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl ParamRange {
    pub fn fixed(name: &str, value: f64) -> Self {
        Self {
            name: name.to_string(),
            min: value,
            max: value,
            steps: 1,
        }
    }

    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.min];
        }
        let span = self.max - self.min;
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|k| {
                if k + 1 == self.steps {
                    self.max
                } else {
                    self.min + span * (k as f64) / last
                }
            })
            .collect()
    }
}

impl FromStr for ParamRange {
    type Err = CliError;

    fn from_str(arg: &str) -> Result<Self, CliError> {
        let (name, spec) = arg.split_once('=').ok_or_else(|| {
            CliError::Usage(format!(
                "expected name=value or name=min..max:steps, got `{arg}`"
            ))
        })?;
        let name = name.trim();
        if name.is_empty() {
            return Err(CliError::Usage(format!(
                "missing parameter name in `{arg}`"
            )));
        }
        let range = match spec.split_once("..") {
            None => ParamRange::fixed(name, parse_number(spec)?),
            Some((lo, rest)) => {
                let (hi, steps) = rest.split_once(':').ok_or_else(|| {
                    CliError::Usage(format!("range `{arg}` needs a step count (min..max:steps)"))
                })?;
                let steps: usize = steps
                    .trim()
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad step count in `{arg}`")))?;
                if steps == 0 {
                    return Err(CliError::Usage(format!(
                        "`{arg}`: steps must be at least 1"
                    )));
                }
                let (min, max) = (parse_number(lo)?, parse_number(hi)?);
                if steps == 1 && min != max {
                    return Err(CliError::Usage(format!(
                        "`{arg}`: a single step needs min = max"
                    )));
                }
                ParamRange {
                    name: name.to_string(),
                    min,
                    max,
                    steps,
                }
            }
        };
        Ok(range)
    }
}

/// Plain float, or a multiple of π: `[coef][*]pi[/den]`.
pub fn parse_number(text: &str) -> Result<f64, CliError> {
    let t = text.trim().replace('π', "pi");
    let bad = || CliError::Usage(format!("cannot parse `{}` as a number", text.trim()));
    let value = match t.find("pi") {
        None => t.parse::<f64>().map_err(|_| bad())?,
        Some(at) => {
            let coef = t[..at].trim_end_matches('*');
            let coef = match coef {
                "" | "+" => 1.0,
                "-" => -1.0,
                c => c.parse::<f64>().map_err(|_| bad())?,
            };
            let den = match &t[at + 2..] {
                "" => 1.0,
                rest => rest
                    .strip_prefix('/')
                    .and_then(|d| d.parse::<f64>().ok())
                    .filter(|&d| d != 0.0)
                    .ok_or_else(bad)?,
            };
            coef * PI / den
        }
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(bad())
    }
}
