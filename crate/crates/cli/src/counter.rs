//! Counting through the cache.

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use benzel_core::{
    benzel, canonical_params, count_with, triangle, Budget, CountOptions, EngineKind,
};
use benzel_core::{Region, TileSet};
use num_bigint::BigUint;

use crate::cache::{Cache, CacheRecord, RegionKey};
use crate::error::{CliError, CliResult};

/// Frontier limit used unless overridden; keeps the memoized engine within a few GB.
pub const DEFAULT_MAX_STATES: usize = 20_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RegionSpec {
    Benzel { a: u32, b: u32 },
    Triangle { n: u32 },
}

impl RegionSpec {
    pub fn build(&self) -> CliResult<Region> {
        Ok(match *self {
            RegionSpec::Benzel { a, b } => benzel(a, b)?,
            RegionSpec::Triangle { n } => triangle(n)?,
        })
    }

    /// Benzels are keyed by their canonical parameters.
    pub fn key(&self) -> RegionKey {
        match *self {
            RegionSpec::Benzel { a, b } => {
                let (a, b) = canonical_params(a, b);
                RegionKey {
                    kind: "benzel".into(),
                    params: vec![a, b],
                }
            }
            RegionSpec::Triangle { n } => RegionKey {
                kind: "triangle".into(),
                params: vec![n],
            },
        }
    }
}

impl fmt::Display for RegionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegionSpec::Benzel { a, b } => write!(f, "benzel({a},{b})"),
            RegionSpec::Triangle { n } => write!(f, "triangle({n})"),
        }
    }
}

pub fn parse_engine(s: &str) -> CliResult<EngineKind> {
    match s {
        "plain" => Ok(EngineKind::Plain),
        "memo" | "memoized" => Ok(EngineKind::Memoized),
        _ => Err(CliError::Usage(format!(
            "unknown engine {s:?}, expected plain or memo"
        ))),
    }
}

pub fn parse_tiles(s: &str) -> CliResult<TileSet> {
    TileSet::from_str(s).map_err(|e| CliError::Usage(e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counted {
    pub value: BigUint,
    pub cached: bool,
    pub elapsed: Duration,
}

#[derive(Debug)]
pub struct Counter {
    cache: Option<Cache>,
    pub engine: EngineKind,
    pub budget: Budget,
    /// When false, only cached counts are returned.
    pub recompute: bool,
}

impl Counter {
    pub fn new(cache: Option<Cache>) -> Counter {
        Counter {
            cache,
            engine: EngineKind::Memoized,
            budget: Budget {
                max_states: Some(DEFAULT_MAX_STATES),
                ..Budget::UNLIMITED
            },
            recompute: true,
        }
    }

    /// No cache, default engine and budget.
    pub fn uncached() -> Counter {
        Counter::new(None)
    }

    pub fn cache(&self) -> Option<&Cache> {
        self.cache.as_ref()
    }

    pub fn count(&self, region: RegionSpec, ts: &TileSet) -> CliResult<Counted> {
        let key = region.key();
        let code = ts.to_string();
        if let Some(rec) = self.cache.as_ref().and_then(|c| c.get(&key, &code)) {
            return Ok(Counted {
                value: rec.value().expect("validated on load"),
                cached: true,
                elapsed: Duration::from_millis(rec.elapsed_ms),
            });
        }
        if !self.recompute {
            return Err(CliError::NotCached(format!("{region} with tiles {code}")));
        }
        let opts = CountOptions {
            engine: self.engine,
            budget: self.budget,
        };
        let c = count_with(&region.build()?, ts, opts)?;
        log::debug!("{region} {code} = {} ({:?})", c.value, c.elapsed);
        if let Some(cache) = &self.cache {
            cache.put(CacheRecord::new(key, code, &c.value, c.engine, c.elapsed))?;
        }
        Ok(Counted {
            value: c.value,
            cached: false,
            elapsed: c.elapsed,
        })
    }

    pub fn benzel(&self, a: u32, b: u32, ts: &TileSet) -> CliResult<BigUint> {
        Ok(self.count(RegionSpec::Benzel { a, b }, ts)?.value)
    }
}
