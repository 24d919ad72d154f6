//! OEIS b-file client with bundled offline copies.

use std::fmt;
use std::time::Duration;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::fixtures;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Network,
    Fixture,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Network => "network",
            Source::Fixture => "fixture",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OeisSequence {
    pub id: String,
    /// Index of `terms[0]`.
    pub first_index: i64,
    pub terms: Vec<BigInt>,
    pub source: Source,
}

impl OeisSequence {
    pub fn term(&self, index: i64) -> Option<&BigInt> {
        let at = index.checked_sub(self.first_index)?;
        usize::try_from(at).ok().and_then(|at| self.terms.get(at))
    }

    pub fn indexed(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        (self.first_index..).zip(&self.terms)
    }
}

pub fn validate_id(id: &str) -> CliResult<()> {
    let ok = id.len() == 7 && id.starts_with('A') && id[1..].bytes().all(|c| c.is_ascii_digit());
    if ok {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "malformed sequence id {id:?}, expected A followed by six digits"
        )))
    }
}

pub fn bfile_url(id: &str) -> String {
    format!("https://oeis.org/{id}/b{}.txt", &id[1..])
}

/// Parses the b-file grammar: `#` comment lines, then `index value` pairs with
/// contiguous indices. Blank lines are ignored.
pub fn parse_bfile(id: &str, text: &str, source: Source) -> CliResult<OeisSequence> {
    let bad = |line: usize, reason: String| CliError::BFile {
        source_name: format!("{id} ({source})"),
        line,
        reason,
    };
    let mut first_index = None;
    let mut terms = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let (Some(i), Some(v), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(bad(n + 1, format!("expected `index value`, got {line:?}")));
        };
        let i: i64 = i
            .parse()
            .map_err(|_| bad(n + 1, format!("bad index {i:?}")))?;
        let v: BigInt = v
            .parse()
            .map_err(|_| bad(n + 1, format!("bad value {v:?}")))?;
        let expected = *first_index.get_or_insert(i) + terms.len() as i64;
        if i != expected {
            return Err(bad(n + 1, format!("index {i}, expected {expected}")));
        }
        terms.push(v);
    }
    Ok(OeisSequence {
        id: id.to_string(),
        first_index: first_index.unwrap_or(0),
        terms,
        source,
    })
}

pub fn from_fixture(id: &str) -> CliResult<OeisSequence> {
    validate_id(id)?;
    let (_, text) = fixtures::oeis(id).ok_or_else(|| CliError::Network {
        id: id.to_string(),
        reason: "offline mode".to_string(),
    })?;
    parse_bfile(id, text, Source::Fixture)
}

fn download(url: &str) -> Result<String, ureq::Error> {
    let agent: ureq::Agent = ureq::Agent::config_builder()
        .timeout_global(Some(Duration::from_secs(20)))
        .build()
        .into();
    agent.get(url).call()?.body_mut().read_to_string()
}

/// Fetches from oeis.org unless `offline`; falls back to the bundled copy on any network failure.
pub fn fetch(id: &str, offline: bool) -> CliResult<OeisSequence> {
    validate_id(id)?;
    if offline {
        return from_fixture(id);
    }
    let url = bfile_url(id);
    match download(&url) {
        Ok(text) => parse_bfile(id, &text, Source::Network),
        Err(e) => {
            if fixtures::oeis(id).is_none() {
                return Err(CliError::Network {
                    id: id.to_string(),
                    reason: e.to_string(),
                });
            }
            log::warn!("{url}: {e}; using bundled fixture");
            from_fixture(id)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub index: i64,
    pub expected: String,
    pub found: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub id: String,
    /// Number of indices present on both sides.
    pub overlap: usize,
    pub first_mismatch: Option<Mismatch>,
}

impl Comparison {
    pub fn agrees(&self) -> bool {
        self.first_mismatch.is_none() && self.overlap > 0
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.first_mismatch {
            None if self.overlap == 0 => write!(f, "{}: no overlapping indices", self.id),
            None => write!(
                f,
                "{}: agreement on all {} overlapping terms",
                self.id, self.overlap
            ),
            Some(m) => write!(
                f,
                "{}: first mismatch at index {}: expected {}, found {}",
                self.id, m.index, m.expected, m.found
            ),
        }
    }
}

/// Compares `values` against the sequence wherever both define a term.
pub fn compare(seq: &OeisSequence, values: &[(i64, BigInt)]) -> Comparison {
    let mut overlap = 0;
    let mut first_mismatch = None;
    let mut sorted: Vec<&(i64, BigInt)> = values.iter().collect();
    sorted.sort_by_key(|(i, _)| *i);
    for (i, v) in sorted {
        let Some(t) = seq.term(*i) else { continue };
        overlap += 1;
        if t != v && first_mismatch.is_none() {
            first_mismatch = Some(Mismatch {
                index: *i,
                expected: t.to_string(),
                found: v.to_string(),
            });
        }
    }
    Comparison {
        id: seq.id.clone(),
        overlap,
        first_mismatch,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids() {
        assert!(validate_id("A006318").is_ok());
        for bad in ["A06318", "B006318", "A00631x", "a006318", ""] {
            assert!(validate_id(bad).is_err(), "{bad}");
        }
        assert_eq!(bfile_url("A006318"), "https://oeis.org/A006318/b006318.txt");
    }

    #[test]
    fn fixtures_parse() {
        for id in fixtures::oeis_ids() {
            let s = from_fixture(id).unwrap();
            assert_eq!(s.source, Source::Fixture);
            assert!(!s.terms.is_empty());
        }
        let s = from_fixture("A006318").unwrap();
        assert_eq!(s.term(3), Some(&BigInt::from(22)));
        assert_eq!(
            from_fixture("A006319").unwrap().term(4),
            Some(&BigInt::from(68))
        );
        assert!(matches!(
            from_fixture("A000045"),
            Err(CliError::Network { .. })
        ));
    }

    #[test]
    fn comparison() {
        let s = parse_bfile("A000001", "0 1\n1 1\n2 2\n", Source::Fixture).unwrap();
        let v = |xs: &[(i64, i64)]| {
            xs.iter()
                .map(|&(i, x)| (i, BigInt::from(x)))
                .collect::<Vec<_>>()
        };
        let c = compare(&s, &v(&[(1, 1), (2, 2), (7, 9)]));
        assert!(c.agrees());
        assert_eq!(c.overlap, 2);
        let c = compare(&s, &v(&[(2, 3), (0, 5)]));
        assert_eq!(c.first_mismatch.unwrap().index, 0);
        assert!(!compare(&s, &v(&[(9, 1)])).agrees());
    }
}
