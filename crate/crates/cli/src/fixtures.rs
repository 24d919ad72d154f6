//! Published data bundled at compile time.

use std::collections::BTreeMap;

use num_bigint::BigUint;

use crate::error::{CliError, CliResult};

macro_rules! fixture {
    ($path:literal) => {
        ($path, include_str!(concat!("../fixtures/", $path)))
    };
}

const TABLES: [(&str, &str); 6] = [
    fixture!("tables/T012.txt"),
    fixture!("tables/T013.txt"),
    fixture!("tables/T102.txt"),
    fixture!("tables/T103.txt"),
    fixture!("tables/T112.txt"),
    fixture!("tables/T113.txt"),
];

const APPENDIX: [(u32, (&str, &str)); 12] = [
    (1, fixture!("appendix/problem01.txt")),
    (2, fixture!("appendix/problem02.txt")),
    (3, fixture!("appendix/problem03.txt")),
    (8, fixture!("appendix/problem08.txt")),
    (9, fixture!("appendix/problem09.txt")),
    (10, fixture!("appendix/problem10.txt")),
    (11, fixture!("appendix/problem11.txt")),
    (15, fixture!("appendix/problem15.txt")),
    (16, fixture!("appendix/problem16.txt")),
    (17, fixture!("appendix/problem17.txt")),
    (18, fixture!("appendix/problem18.txt")),
    (20, fixture!("appendix/problem20.txt")),
];

const FACTORED: [(u32, (&str, &str)); 4] = [
    (8, fixture!("appendix/factored08.txt")),
    (9, fixture!("appendix/factored09.txt")),
    (10, fixture!("appendix/factored10.txt")),
    (11, fixture!("appendix/factored11.txt")),
];

const PADIC: (&str, &str) = fixture!("appendix/padic.txt");

const OEIS: [(&str, (&str, &str)); 3] = [
    ("A006318", fixture!("oeis/A006318.txt")),
    ("A006319", fixture!("oeis/A006319.txt")),
    ("A334875", fixture!("oeis/A334875.txt")),
];

/// Codes of the published tables.
pub const TABLE_CODES: [&str; 6] = ["012", "013", "102", "103", "112", "113"];

fn data_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(n, l)| (n + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(n, l)| (n, l.split_whitespace().collect()))
}

fn malformed(name: &str, line: usize, reason: impl Into<String>) -> CliError {
    CliError::BFile {
        source_name: name.to_string(),
        line,
        reason: reason.into(),
    }
}

fn parse_num<T: std::str::FromStr>(name: &str, line: usize, s: &str) -> CliResult<T> {
    s.parse()
        .map_err(|_| malformed(name, line, format!("not a number: {s:?}")))
}

/// A published table: `(a, b) → T(a, b)` for the printed entries.
pub fn table(code: &str) -> Option<BTreeMap<(u32, u32), BigUint>> {
    let (name, text) = TABLES.iter().find(|(p, _)| p.contains(code))?;
    let mut out = BTreeMap::new();
    for (line, fields) in data_lines(text) {
        let [a, b, v] = fields[..] else {
            panic!("{}", malformed(name, line, "expected `a b value`"));
        };
        let key = (
            parse_num(name, line, a).unwrap(),
            parse_num(name, line, b).unwrap(),
        );
        out.insert(key, parse_num(name, line, v).unwrap());
    }
    Some(out)
}

/// Appendix list of a problem as `(index, value)` pairs.
pub fn appendix(problem: u32) -> Option<Vec<(u64, BigUint)>> {
    let (_, (name, text)) = APPENDIX.iter().find(|(p, _)| *p == problem)?;
    Some(parse_pairs(name, text).expect("bundled appendix fixture is well formed"))
}

/// Published factorizations as `(index, prime → exponent)`; a `1^1` entry is the empty product.
pub fn factored(problem: u32) -> Option<Vec<(u64, BTreeMap<u64, u32>)>> {
    let (_, (name, text)) = FACTORED.iter().find(|(p, _)| *p == problem)?;
    let mut out = Vec::new();
    for (line, fields) in data_lines(text) {
        let index = parse_num(name, line, fields[0]).unwrap();
        let mut factors = BTreeMap::new();
        for f in &fields[1..] {
            let (p, e) = f
                .split_once('^')
                .unwrap_or_else(|| panic!("{}", malformed(name, line, "expected p^e")));
            let p: u64 = parse_num(name, line, p).unwrap();
            let e: u32 = parse_num(name, line, e).unwrap();
            if p > 1 {
                *factors.entry(p).or_insert(0) += e;
            }
        }
        out.push((index, factors));
    }
    Some(out)
}

/// A published residue claim: from `first_index` on, the sequence is
/// `period`-periodic modulo `modulus`, optionally with the stated pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicClaim {
    pub problem: u32,
    pub first_index: u64,
    pub modulus: u32,
    pub period: usize,
    pub pattern: Option<Vec<u32>>,
}

pub fn padic_claims(problem: u32) -> Vec<PadicClaim> {
    let (name, text) = PADIC;
    data_lines(text)
        .map(|(line, f)| {
            let n = |s: &str| -> u64 { parse_num(name, line, s).unwrap() };
            assert!(f.len() >= 4, "{}", malformed(name, line, "too few fields"));
            let pattern: Vec<u32> = f[4..].iter().map(|s| n(s) as u32).collect();
            PadicClaim {
                problem: n(f[0]) as u32,
                first_index: n(f[1]),
                modulus: n(f[2]) as u32,
                period: n(f[3]) as usize,
                pattern: (!pattern.is_empty()).then_some(pattern),
            }
        })
        .filter(|c| c.problem == problem)
        .collect()
}

/// Raw text of the bundled b-file for an OEIS id.
pub fn oeis(id: &str) -> Option<(&'static str, &'static str)> {
    OEIS.iter().find(|(i, _)| *i == id).map(|(_, f)| *f)
}

pub fn oeis_ids() -> impl Iterator<Item = &'static str> {
    OEIS.iter().map(|(id, _)| *id)
}

/// `index value` pairs with contiguous indices.
pub fn parse_pairs(name: &str, text: &str) -> CliResult<Vec<(u64, BigUint)>> {
    let mut out: Vec<(u64, BigUint)> = Vec::new();
    for (line, fields) in data_lines(text) {
        let [i, v] = fields[..] else {
            return Err(malformed(name, line, "expected `index value`"));
        };
        let i: u64 = parse_num(name, line, i)?;
        if let Some((prev, _)) = out.last() {
            if i != prev + 1 {
                return Err(malformed(name, line, format!("index {i} follows {prev}")));
            }
        }
        out.push((i, parse_num(name, line, v)?));
    }
    Ok(out)
}
