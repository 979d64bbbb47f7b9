//! Explicit size limits for everything that enumerates or materializes.
//!
//! Exceeding a limit is always an [`Error::BudgetExceeded`](crate::Error),
//! never a silent truncation.

use serde::Serialize;

use crate::error::{Error, Result};

/// Environment variable consulted by [`Budgets::from_env`].
pub const BUDGET_ENV: &str = "RINGSPEC_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budgets {
    /// Largest field order for which arithmetic tables are built.
    pub field_order: u64,
    /// Largest number of matrices an exhaustive enumeration may emit.
    pub enumeration: u64,
    /// Largest group order for which characters are enumerated.
    pub characters: u64,
    /// Largest vertex count for which an adjacency matrix is materialized.
    pub adjacency: u64,
    /// Largest vertex count for the dense symmetric eigensolver.
    pub eigensolve: u64,
    /// Largest vertex count for independent-set and clique search.
    pub search_vertices: u64,
    /// Largest vertex count for exact colouring.
    pub coloring_vertices: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            field_order: 1024,
            enumeration: 1_000_000,
            characters: 10_000,
            adjacency: 5_000,
            eigensolve: 2_000,
            search_vertices: 128,
            coloring_vertices: 64,
        }
    }
}

impl Budgets {
    /// Defaults overridden by `RINGSPEC_BUDGET`, if set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(BUDGET_ENV) {
            Ok(spec) => Budgets::default().with_overrides(&spec),
            Err(_) => Ok(Budgets::default()),
        }
    }

    /// Applies an override string.
    ///
    /// A bare integer replaces the enumeration budget. Otherwise the string is a
    /// comma-separated list of `key=value` pairs using the field names of this
    /// struct, e.g. `enumeration=20000,adjacency=600`.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if spec.is_empty() {
            return Ok(self);
        }
        if let Ok(value) = spec.parse::<u64>() {
            self.enumeration = value;
            return Ok(self);
        }
        for pair in spec.split(',') {
            let (key, value) = pair
                .split_once('=')
                .ok_or_else(|| Error::InvalidInput(format!("malformed budget override `{pair}`")))?;
            let value: u64 = value
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("budget `{key}` is not an integer")))?;
            let slot = match key.trim() {
                "field_order" => &mut self.field_order,
                "enumeration" => &mut self.enumeration,
                "characters" => &mut self.characters,
                "adjacency" => &mut self.adjacency,
                "eigensolve" => &mut self.eigensolve,
                "search_vertices" => &mut self.search_vertices,
                "coloring_vertices" => &mut self.coloring_vertices,
                other => return Err(Error::InvalidInput(format!("unknown budget `{other}`"))),
            };
            *slot = value;
        }
        Ok(self)
    }
}

pub(crate) fn check(what: &'static str, required: u64, budget: u64) -> Result<()> {
    if required > budget {
        Err(Error::budget(what, required, budget))
    } else {
        Ok(())
    }
}
