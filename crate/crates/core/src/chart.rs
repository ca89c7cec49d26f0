//! Coordinate chart tags shared across the crate.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// The three charts in play. Stable string names "cartesian", "cylindrical"
/// and "kundt" are the CLI-facing identifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chart {
    Cartesian,
    Cylindrical,
    Kundt,
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Chart::Cartesian => "cartesian",
            Chart::Cylindrical => "cylindrical",
            Chart::Kundt => "kundt",
        };
        f.write_str(name)
    }
}

impl FromStr for Chart {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cartesian" => Ok(Chart::Cartesian),
            "cylindrical" => Ok(Chart::Cylindrical),
            "kundt" => Ok(Chart::Kundt),
            other => Err(format!(
                "unknown chart {other:?}; expected cartesian, cylindrical or kundt"
            )),
        }
    }
}
