use serde::Serialize;

use crate::error::{Error, Result};

/// Capacity limits for the exhaustive algorithms. Defaults target desk scale;
/// the `SDSLAB_LIMITS` environment variable and the CLI `--limit-*` flags
/// override them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Limits {
    /// Largest vertex count accepted by the automorphism search.
    pub max_aut_vertices: usize,
    /// Largest edge count accepted by acyclic-orientation enumeration.
    pub max_edges: usize,
    /// Largest number of states (|K|^n) accepted by map-table construction.
    pub max_states: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_aut_vertices: 12,
            max_edges: 24,
            max_states: 1 << 24,
        }
    }
}

impl Limits {
    /// Defaults, with any overrides from `SDSLAB_LIMITS`.
    ///
    /// Format: comma-separated `key=value` pairs with keys `aut`, `edges`,
    /// `states`, e.g. `SDSLAB_LIMITS=edges=28,states=1048576`.
    pub fn from_env() -> Result<Limits> {
        match std::env::var("SDSLAB_LIMITS") {
            Ok(s) => Limits::default().parse_overrides(&s),
            Err(_) => Ok(Limits::default()),
        }
    }

    pub fn parse_overrides(mut self, spec: &str) -> Result<Limits> {
        for part in spec.split(',').filter(|p| !p.trim().is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::invalid(format!("limit override `{part}` is not key=value")))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("limit value `{value}` is not an integer")))?;
            match key.trim() {
                "aut" => self.max_aut_vertices = value,
                "edges" => self.max_edges = value,
                "states" => self.max_states = value,
                other => {
                    return Err(Error::invalid(format!(
                        "unknown limit key `{other}` (expected aut, edges or states)"
                    )))
                }
            }
        }
        Ok(self)
    }

    pub fn check_edges(&self, m: usize) -> Result<()> {
        if m > self.max_edges {
            return Err(Error::Capacity {
                what: "edge count",
                actual: m,
                limit: self.max_edges,
                flag: "--limit-edges",
            });
        }
        Ok(())
    }

    pub fn check_aut_vertices(&self, n: usize) -> Result<()> {
        if n > self.max_aut_vertices {
            return Err(Error::Capacity {
                what: "vertex count for automorphism search",
                actual: n,
                limit: self.max_aut_vertices,
                flag: "SDSLAB_LIMITS=aut=<n>",
            });
        }
        Ok(())
    }

    pub fn check_states(&self, states: usize) -> Result<()> {
        if states > self.max_states {
            return Err(Error::Capacity {
                what: "state-space size",
                actual: states,
                limit: self.max_states,
                flag: "--limit-states",
            });
        }
        Ok(())
    }
}
