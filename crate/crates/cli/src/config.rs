use std::path::PathBuf;

use collapse_core::criteria::AnalyzeOptions;
use collapse_core::nichols::NicholsCaps;
use collapse_core::permcore::DEFAULT_ORDER_CAP;
use collapse_core::rack::DEFAULT_RACK_CAP;
use serde::Serialize;

use crate::CliError;

/// Limits shared by every command.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Caps {
    /// Largest group enumerated at load.
    pub order: usize,
    /// Largest `⟨r, s⟩`-orbit in type-D scans.
    pub subgroup: usize,
    pub rows: usize,
    pub degree: usize,
    /// Largest class turned into a dense rack.
    pub rack: usize,
}

impl Default for Caps {
    fn default() -> Self {
        let n = NicholsCaps::default();
        Caps {
            order: DEFAULT_ORDER_CAP,
            subgroup: DEFAULT_ORDER_CAP,
            rows: n.max_rows,
            degree: n.max_degree,
            rack: DEFAULT_RACK_CAP,
        }
    }
}

impl Caps {
    /// Parses `key=value` pairs separated by commas on top of the defaults.
    pub fn parse(text: &str) -> Result<Caps, CliError> {
        let mut caps = Caps::default();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| CliError::input(format!("cap {item:?} is not key=value")))?;
            let value: usize = value.trim().parse().map_err(|_| {
                CliError::input(format!("cap {key} needs a positive integer, got {value:?}"))
            })?;
            if value == 0 {
                return Err(CliError::input(format!("cap {key} must be positive")));
            }
            match key.trim() {
                "order" => caps.order = value,
                "subgroup" => caps.subgroup = value,
                "rows" => caps.rows = value,
                "degree" => caps.degree = value,
                "rack" => caps.rack = value,
                other => return Err(CliError::input(format!("unknown cap {other:?}"))),
            }
        }
        Ok(caps)
    }

    pub fn nichols(&self) -> NicholsCaps {
        NicholsCaps {
            max_degree: self.degree,
            max_rows: self.rows,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Toggle {
    On,
    Off,
}

/// Everything a command needs besides its own arguments.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub group: Option<String>,
    pub caps: Caps,
    pub probe_hilbert: bool,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
    pub timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            group: None,
            caps: Caps::default(),
            probe_hilbert: true,
            format: Format::Json,
            out: None,
            threads: None,
            timing: false,
        }
    }
}

impl RunConfig {
    pub fn analyze_options(&self) -> AnalyzeOptions {
        AnalyzeOptions {
            subgroup_cap: self.caps.subgroup,
            rack_cap: self.caps.rack,
            nichols: self.caps.nichols(),
            probe_hilbert: self.probe_hilbert,
            ..AnalyzeOptions::default()
        }
    }
}
