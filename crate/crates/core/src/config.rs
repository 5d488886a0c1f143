//! Effective search configuration: flags over environment over file over defaults.

use std::path::Path;

use crate::error::{Error, Result};
use crate::json::parse_json;
use crate::pool::SearchConfig;

pub const POOL_CAP_ENV: &str = "ANTIPODAL_POOL_CAP";

/// Values given on the command line; `None` defers to lower layers.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub unit_order: Option<u32>,
    pub pool_cap: Option<usize>,
    pub restarts: Option<usize>,
    pub rank_limit: Option<usize>,
    pub monomial_only: Option<bool>,
    pub seed: Option<u64>,
}

pub fn config_from_text(text: &str) -> Result<SearchConfig> {
    let v = parse_json(text)?;
    serde_json::from_value(v).map_err(|e| Error::Parse(format!("config: {e}")))
}

pub fn resolve(file: Option<&Path>, env_pool_cap: Option<&str>, flags: &Overrides) -> Result<SearchConfig> {
    let mut c = match file {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
            config_from_text(&text)?
        }
        None => SearchConfig::default(),
    };
    if let Some(raw) = env_pool_cap {
        c.pool_cap = raw.trim().parse().map_err(|_| Error::Parse(format!("{POOL_CAP_ENV}={raw:?} is not a count")))?;
    }
    let Overrides { unit_order, pool_cap, restarts, rank_limit, monomial_only, seed } = flags.clone();
    c.unit_order = unit_order.unwrap_or(c.unit_order);
    c.pool_cap = pool_cap.unwrap_or(c.pool_cap);
    c.restarts = restarts.unwrap_or(c.restarts);
    c.rank_limit = rank_limit.unwrap_or(c.rank_limit);
    c.monomial_only = monomial_only.unwrap_or(c.monomial_only);
    c.seed = seed.unwrap_or(c.seed);
    Ok(c)
}
