//! Run configuration: per-check truncation orders, output format,
//! parallelism and output path. A config file holds `key = value` lines;
//! command-line flags override it.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            _ => Err(ConfigError(format!("unknown format {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    /// One-variable identities.
    pub qseries: i64,
    pub modules: i64,
    /// Two-variable series and recursions.
    pub two_variable: i64,
    pub recurrence: i64,
    pub hilbert: i64,
    pub groebner: i64,
    pub virasoro: i64,
    pub e8: i64,
    /// Largest family index for the ideal elements.
    pub element_k: i64,
    pub format: Format,
    /// Worker threads; 0 lets the pool decide.
    pub jobs: usize,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            qseries: 60,
            modules: 50,
            two_variable: 40,
            recurrence: 30,
            hilbert: 30,
            groebner: 22,
            virasoro: 15,
            e8: 12,
            element_k: 5,
            format: Format::Json,
            jobs: 0,
            out: None,
        }
    }
}

const MAX_ORDER: i64 = 10_000;

fn order(key: &str, value: &str) -> Result<i64, ConfigError> {
    let n: i64 = value
        .parse()
        .map_err(|_| ConfigError(format!("{key}: {value:?} is not an integer")))?;
    if !(1..=MAX_ORDER).contains(&n) {
        return Err(ConfigError(format!("{key}: {n} is outside 1..={MAX_ORDER}")));
    }
    Ok(n)
}

impl RunConfig {
    /// Apply one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        match key {
            "qseries" => self.qseries = order(key, value)?,
            "modules" => self.modules = order(key, value)?,
            "two_variable" => self.two_variable = order(key, value)?,
            "recurrence" => self.recurrence = order(key, value)?,
            "hilbert" => self.hilbert = order(key, value)?,
            "groebner" => self.groebner = order(key, value)?,
            "virasoro" => self.virasoro = order(key, value)?,
            "e8" => self.e8 = order(key, value)?,
            "element_k" => self.element_k = order(key, value)?,
            "format" => self.format = value.parse()?,
            "jobs" => {
                self.jobs = value
                    .parse()
                    .ok()
                    .filter(|j| *j <= 1024)
                    .ok_or_else(|| ConfigError(format!("jobs: {value:?} is not a thread count")))?
            }
            "out" => self.out = Some(PathBuf::from(value)),
            _ => return Err(ConfigError(format!("unknown key {key:?}"))),
        }
        Ok(())
    }

    /// Parse a config file; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<RunConfig, ConfigError> {
        let mut cfg = RunConfig::default();
        cfg.apply(text)?;
        Ok(cfg)
    }

    pub fn apply(&mut self, text: &str) -> Result<(), ConfigError> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| ConfigError(format!("line {}: expected key = value", i + 1)))?;
            self.set(key.trim(), value.trim())
                .map_err(|e| ConfigError(format!("line {}: {e}", i + 1)))?;
        }
        Ok(())
    }

    /// Every truncation order halved (at least 1), for quick runs.
    pub fn reduced(&self) -> RunConfig {
        let h = |n: i64| (n / 2).max(1);
        RunConfig {
            qseries: h(self.qseries),
            modules: h(self.modules),
            two_variable: h(self.two_variable),
            recurrence: h(self.recurrence),
            hilbert: h(self.hilbert),
            groebner: h(self.groebner),
            virasoro: h(self.virasoro),
            e8: h(self.e8),
            element_k: h(self.element_k),
            ..self.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_keys_and_comments() {
        let cfg = RunConfig::parse("# quick\nqseries = 10\n\nformat=csv\njobs = 2\nout = r.csv\n").unwrap();
        assert_eq!(cfg.qseries, 10);
        assert_eq!(cfg.format, Format::Csv);
        assert_eq!(cfg.jobs, 2);
        assert_eq!(cfg.out, Some(PathBuf::from("r.csv")));
        assert_eq!(cfg.hilbert, 30);
    }

    #[test]
    fn rejects_bad_lines() {
        for bad in ["colour = red", "qseries = 0", "qseries = x", "qseries", "format = xml", "jobs = -1"] {
            assert!(RunConfig::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn reduced_halves_orders() {
        let r = RunConfig::default().reduced();
        assert_eq!((r.qseries, r.hilbert, r.e8, r.element_k), (30, 15, 6, 2));
    }
}
