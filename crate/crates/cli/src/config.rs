//! Per-check size caps, a config file that may move them, and the
//! `KRCYCLO_MAX_N` ceiling.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use clap::ValueEnum;

use crate::CliError;

pub const MAX_N_ENV: &str = "KRCYCLO_MAX_N";
pub const MIN_N: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum)]
pub enum Theorem {
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
    Gp,
    Tight,
    Duality,
    Unimodular,
    Quasitoric,
}

impl Theorem {
    pub const ALL: [Theorem; 7] = [
        Theorem::A,
        Theorem::B,
        Theorem::Gp,
        Theorem::Tight,
        Theorem::Duality,
        Theorem::Unimodular,
        Theorem::Quasitoric,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::A => "A",
            Theorem::B => "B",
            Theorem::Gp => "gp",
            Theorem::Tight => "tight",
            Theorem::Duality => "duality",
            Theorem::Unimodular => "unimodular",
            Theorem::Quasitoric => "quasitoric",
        }
    }

    pub fn default_range(self) -> std::ops::RangeInclusive<usize> {
        match self {
            Theorem::A | Theorem::B | Theorem::Duality | Theorem::Unimodular => 3..=5,
            Theorem::Gp => 3..=4,
            Theorem::Tight => 3..=8,
            Theorem::Quasitoric => 3..=6,
        }
    }

    /// Largest `n` the underlying pipeline accepts.
    pub fn hard_max(self) -> usize {
        match self {
            Theorem::A | Theorem::B => 6,
            Theorem::Gp => 5,
            Theorem::Tight => 16,
            Theorem::Duality => 6,
            Theorem::Unimodular => 5,
            Theorem::Quasitoric => 7,
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.name().eq_ignore_ascii_case(s))
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub const FACES_MAX_N: usize = krcyclo_core::arcs::MAX_N;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Caps {
    max_n: BTreeMap<String, usize>,
    ceiling: Option<usize>,
}

impl Default for Caps {
    fn default() -> Self {
        let mut max_n: BTreeMap<String, usize> =
            Theorem::ALL.iter().map(|t| (t.name().to_string(), t.hard_max())).collect();
        max_n.insert("faces".into(), FACES_MAX_N);
        Self { max_n, ceiling: None }
    }
}

impl Caps {
    /// Defaults, then the config file if any, then the environment ceiling.
    pub fn load(config: Option<&Path>) -> Result<Self, CliError> {
        let mut caps = Self::default();
        if let Some(path) = config {
            let text = std::fs::read_to_string(path)?;
            caps.apply_config(&text)?;
        }
        if let Ok(v) = std::env::var(MAX_N_ENV) {
            let c = v
                .trim()
                .parse::<usize>()
                .map_err(|_| CliError::Config(format!("{MAX_N_ENV} must be an integer, got {v:?}")))?;
            caps.ceiling = Some(c);
        }
        Ok(caps)
    }

    /// Accepts `max_n.<check> = N` lines or a `[max_n]` table. A config may
    /// lower a cap or raise it up to the pipeline limit.
    pub fn apply_config(&mut self, text: &str) -> Result<(), CliError> {
        let table: toml::Table = text.parse().map_err(|e: toml::de::Error| CliError::Config(e.to_string()))?;
        for (key, value) in &table {
            if key != "max_n" {
                return Err(CliError::Config(format!("unknown key {key:?}")));
            }
            let inner = value
                .as_table()
                .ok_or_else(|| CliError::Config("max_n must be a table".into()))?;
            for (check, v) in inner {
                let limit = if check == "faces" {
                    FACES_MAX_N
                } else {
                    Theorem::from_name(check)
                        .ok_or_else(|| CliError::Config(format!("unknown check {check:?}")))?
                        .hard_max()
                };
                let v = v
                    .as_integer()
                    .and_then(|x| usize::try_from(x).ok())
                    .ok_or_else(|| CliError::Config(format!("max_n.{check} must be a nonnegative integer")))?;
                if v > limit {
                    return Err(CliError::Config(format!("max_n.{check} = {v} exceeds the limit {limit}")));
                }
                let name = Theorem::from_name(check).map_or(check.clone(), |t| t.name().to_string());
                self.max_n.insert(name, v);
            }
        }
        Ok(())
    }

    pub fn max_n(&self, check: &str) -> usize {
        let m = self.max_n.get(check).copied().unwrap_or(0);
        self.ceiling.map_or(m, |c| m.min(c))
    }

    pub fn check(&self, check: &str, n: usize) -> Result<(), CliError> {
        let max = self.max_n(check);
        if n < MIN_N || n > max {
            return Err(CliError::Cap { what: check.to_string(), value: n, min: MIN_N, max });
        }
        Ok(())
    }
}
