//! Size budgets for carriers and brute-force searches.
//!
//! Everything in this crate is exhaustive, so it must fail loudly instead of
//! hanging when an input is too large. A [`Budget`] bounds both the carrier
//! size of constructed rings and the number of nodes any backtracking search
//! may visit.

use crate::error::{Error, Result};

pub const DEFAULT_MAX_CARRIER: usize = 64;
pub const DEFAULT_MAX_SEARCH: u64 = 10_000_000;

/// Environment variable overriding the default budget. Accepts either
/// `<search-nodes>` or `<max-carrier>,<search-nodes>`.
pub const BUDGET_ENV: &str = "RINGOID_BUDGET";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest admitted ring or module carrier.
    pub max_carrier: usize,
    /// Largest number of candidate nodes a search may visit.
    pub max_search: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_carrier: DEFAULT_MAX_CARRIER,
            max_search: DEFAULT_MAX_SEARCH,
        }
    }
}

impl Budget {
    /// Parses `"<search>"` or `"<carrier>,<search>"`.
    pub fn parse(text: &str) -> Result<Budget> {
        let mk_err = || Error::malformed("budget", format!("cannot parse {text:?}"));
        let parts: Vec<&str> = text.split(',').collect();
        match parts.as_slice() {
            [search] => Ok(Budget {
                max_carrier: DEFAULT_MAX_CARRIER,
                max_search: search.trim().parse().map_err(|_| mk_err())?,
            }),
            [carrier, search] => Ok(Budget {
                max_carrier: carrier.trim().parse().map_err(|_| mk_err())?,
                max_search: search.trim().parse().map_err(|_| mk_err())?,
            }),
            _ => Err(mk_err()),
        }
    }

    /// Default budget, overridden by the `RINGOID_BUDGET` environment
    /// variable when set.
    pub fn from_env() -> Result<Budget> {
        match std::env::var(BUDGET_ENV) {
            Ok(text) => Budget::parse(&text),
            Err(_) => Ok(Budget::default()),
        }
    }

    pub fn check_carrier(&self, size: usize, context: &str) -> Result<()> {
        if size > self.max_carrier {
            Err(Error::BudgetExceeded(format!(
                "{context}: carrier size {size} exceeds limit {}",
                self.max_carrier
            )))
        } else {
            Ok(())
        }
    }

    pub fn guard(&self, context: &str) -> SearchGuard {
        SearchGuard {
            remaining: self.max_search,
            context: context.to_string(),
        }
    }
}

/// Node counter for bounded backtracking searches.
pub struct SearchGuard {
    remaining: u64,
    context: String,
}

impl SearchGuard {
    /// Accounts for one visited node; errors once the budget is spent.
    pub fn tick(&mut self) -> Result<()> {
        if self.remaining == 0 {
            Err(Error::BudgetExceeded(self.context.clone()))
        } else {
            self.remaining -= 1;
            Ok(())
        }
    }
}
