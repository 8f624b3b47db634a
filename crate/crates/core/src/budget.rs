//! Limit on how many candidates an enumeration may visit.

use std::env;

use crate::error::{Error, Result};

pub const BUDGET_ENV: &str = "MODBASIS_BUDGET";
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget(u64);

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget(limit)
    }

    /// Reads `MODBASIS_BUDGET`, falling back to the default when unset.
    pub fn from_env() -> Result<Self> {
        match env::var(BUDGET_ENV) {
            Ok(raw) => raw
                .trim()
                .parse()
                .map(Budget)
                .map_err(|_| Error::Parse(format!("{BUDGET_ENV}={raw:?} is not an integer"))),
            Err(_) => Ok(Budget::default()),
        }
    }

    pub fn get(&self) -> u64 {
        self.0
    }

    pub fn check(&self, needed: u128) -> Result<()> {
        if needed > self.0 as u128 {
            Err(Error::Budget {
                needed,
                budget: self.0,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget(DEFAULT_BUDGET)
    }
}
