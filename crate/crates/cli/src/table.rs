//! Tables of `T_ijk(a, b)` in the published layout.

use std::collections::BTreeMap;

use benzel_core::TileSet;
use num_bigint::BigUint;
use rayon::prelude::*;

use crate::counter::{Counter, RegionSpec};
use crate::error::{CliError, CliResult};

/// Printed positions: `2 ≤ a, b ≤ max` with `a ≤ 2b - 2` and `b ≤ 2a - 2`.
pub fn band(max: u32) -> Vec<(u32, u32)> {
    (2..=max)
        .flat_map(|a| (2..=max).map(move |b| (a, b)))
        .filter(|&(a, b)| a + 2 <= 2 * b && b + 2 <= 2 * a)
        .collect()
}

/// A computed table; `None` marks an entry that could not be computed.
pub type Entries = BTreeMap<(u32, u32), Option<BigUint>>;

pub fn compute(counter: &Counter, ts: &TileSet, max: u32, jobs: usize) -> CliResult<Entries> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {jobs} jobs: {e}")))?;
    let results: Vec<((u32, u32), CliResult<BigUint>)> = pool.install(|| {
        band(max)
            .into_par_iter()
            .map(|(a, b)| {
                (
                    (a, b),
                    counter
                        .count(RegionSpec::Benzel { a, b }, ts)
                        .map(|c| c.value),
                )
            })
            .collect()
    });
    let mut out = Entries::new();
    for (key, r) in results {
        match r {
            Ok(v) => {
                out.insert(key, Some(v));
            }
            Err(e @ (CliError::Io { .. } | CliError::Usage(_))) => return Err(e),
            Err(e) => {
                log::warn!("T({},{}) failed: {e}", key.0, key.1);
                out.insert(key, None);
            }
        }
    }
    Ok(out)
}

const CORNER: &str = "a\\b";

/// Right-aligned columns separated by two spaces; blank outside the band, `?` for failures.
pub fn render(entries: &Entries, max: u32) -> String {
    let cell = |a: u32, b: u32| -> Option<String> {
        entries.get(&(a, b)).map(|v| {
            v.as_ref()
                .map_or_else(|| "?".to_string(), BigUint::to_string)
        })
    };
    let cols: Vec<u32> = (2..=max).collect();
    let first = (2..=max)
        .map(|a| a.to_string().len())
        .chain([CORNER.len()])
        .max()
        .unwrap();
    let widths: Vec<usize> = cols
        .iter()
        .map(|&b| {
            (2..=max)
                .filter_map(|a| cell(a, b).map(|s| s.len()))
                .chain([b.to_string().len()])
                .max()
                .unwrap()
        })
        .collect();
    let mut out = String::new();
    let mut line = format!("{CORNER:>first$}");
    for (b, w) in cols.iter().zip(&widths) {
        line.push_str(&format!("  {b:>w$}"));
    }
    out.push_str(line.trim_end());
    out.push('\n');
    for a in 2..=max {
        let mut line = format!("{a:>first$}");
        for (&b, w) in cols.iter().zip(&widths) {
            let s = cell(a, b).unwrap_or_default();
            line.push_str(&format!("  {s:>w$}"));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Inverse of [`render`]: column extents come from the right-aligned header labels.
pub fn parse(text: &str) -> CliResult<Entries> {
    let bad = |m: String| CliError::Usage(format!("unparseable table: {m}"));
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| bad("empty".into()))?;
    let mut cols: Vec<(usize, u32)> = Vec::new();
    let mut label_end = 0;
    let mut pos = 0;
    for tok in header.split_whitespace() {
        let start = pos + header[pos..].find(tok).unwrap();
        pos = start + tok.len();
        if tok == CORNER {
            label_end = pos;
        } else {
            let b = tok
                .parse()
                .map_err(|_| bad(format!("column label {tok:?}")))?;
            cols.push((pos, b));
        }
    }
    let mut out = Entries::new();
    for line in lines {
        let a: u32 = line
            .get(..label_end)
            .and_then(|t| t.trim().parse().ok())
            .ok_or_else(|| bad(format!("row label in {line:?}")))?;
        let mut prev = label_end;
        for &(end, b) in &cols {
            let slice = line.get(prev..end.min(line.len())).unwrap_or("").trim();
            prev = end;
            match slice {
                "" => {}
                "?" => {
                    out.insert((a, b), None);
                }
                s => {
                    let v = s
                        .parse()
                        .map_err(|_| bad(format!("entry {s:?} at ({a},{b})")))?;
                    out.insert((a, b), Some(v));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn band_matches_published_layout() {
        let b = band(10);
        assert_eq!(b.len(), 41);
        assert!(b.contains(&(2, 2)) && b.contains(&(6, 10)) && !b.contains(&(5, 9)));
        assert_eq!(band(2), vec![(2, 2)]);
    }

    #[test]
    fn render_parse_round_trip() {
        let mut e = Entries::new();
        for (a, b) in band(7) {
            let v = if (a, b) == (5, 6) {
                None
            } else {
                Some(BigUint::from(a * 1000 + b))
            };
            e.insert((a, b), v);
        }
        let text = render(&e, 7);
        assert!(text.starts_with("a\\b"));
        assert_eq!(parse(&text).unwrap(), e);
    }
}
