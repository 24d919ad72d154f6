//! Checks of the twenty published problems against engine counts, closed forms and data.

use std::fmt::{Display, Write};
use std::ops::RangeInclusive;

use benzel_core::flips::flip_graph;
use benzel_core::theory::{
    bone_benzel_params, check_prime_bound, cl_invariant, formula_p2, formula_p3, formula_p5,
    formula_p6, padic_profile, predict_zero_or_one, quotient_p10, quotient_p8, royal_paths,
    schroeder, second_quotient, third_quotient, two_adic_valuation, Prediction,
};
use benzel_core::{canonical_params, TileSet};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::counter::{Counter, RegionSpec};
use crate::error::CliResult;
use crate::{fixtures, oeis};

pub const PROBLEMS: RangeInclusive<u32> = 1..=20;

/// Largest type-112 count whose flip graph is built.
pub const FLIP_LIMIT_112: u64 = 10_000;
pub const FLIP_LIMIT_113: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub label: String,
    pub expected: String,
    pub computed: String,
    pub status: Status,
    /// Non-gating checks are evidence for open questions; their failure does not fail the report.
    pub gating: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub problem: u32,
    pub subject: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Report {
    fn new(problem: u32, subject: &str) -> Report {
        Report {
            problem,
            subject: subject.to_string(),
            passed: true,
            checks: Vec::new(),
        }
    }

    fn check(
        &mut self,
        label: impl Into<String>,
        ok: bool,
        expected: impl Display,
        computed: impl Display,
    ) {
        self.push(
            label.into(),
            ok,
            expected.to_string(),
            computed.to_string(),
            true,
        );
    }

    fn evidence(
        &mut self,
        label: impl Into<String>,
        ok: bool,
        expected: impl Display,
        computed: impl Display,
    ) {
        self.push(
            label.into(),
            ok,
            expected.to_string(),
            computed.to_string(),
            false,
        );
    }

    fn equal<T: PartialEq + Display>(
        &mut self,
        label: impl Into<String>,
        expected: T,
        computed: T,
    ) {
        let ok = expected == computed;
        self.check(label, ok, expected, computed);
    }

    fn push(&mut self, label: String, ok: bool, expected: String, computed: String, gating: bool) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.passed &= ok || !gating;
        self.checks.push(Check {
            label,
            expected,
            computed,
            status,
            gating,
        });
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks
            .iter()
            .filter(|c| c.gating && c.status == Status::Fail)
    }

    /// Non-gating checks that did not hold.
    pub fn notes(&self) -> impl Iterator<Item = &Check> {
        self.checks
            .iter()
            .filter(|c| !c.gating && c.status == Status::Fail)
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "problem {}: {} ({} checks) {}\n",
            self.problem,
            if self.passed { "PASS" } else { "FAIL" },
            self.checks.len(),
            self.subject
        );
        for c in self.failures() {
            writeln!(
                s,
                "  FAIL {}: expected {}, computed {}",
                c.label, c.expected, c.computed
            )
            .unwrap();
        }
        for c in self.notes() {
            writeln!(
                s,
                "  NOTE (evidence only) {}: expected {}, computed {}",
                c.label, c.expected, c.computed
            )
            .unwrap();
        }
        s
    }
}

#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    pub n_max: Option<u64>,
    pub k_max: Option<u64>,
    pub ab_max: Option<u32>,
    /// Restricts residue checks to one modulus.
    pub modulus: Option<u32>,
    pub offline: bool,
}

type Indexed<T> = fn(u64) -> T;

fn tiles(code: &str) -> TileSet {
    code.parse().expect("built-in tile code")
}

fn bz(a: u64, b: u64) -> RegionSpec {
    RegionSpec::Benzel {
        a: a as u32,
        b: b as u32,
    }
}

/// Canonical `(a, b)` with `2 ≤ a ≤ b ≤ max`.
fn canonical_pairs(max: u32) -> Vec<(u32, u32)> {
    (2..=max)
        .flat_map(|a| (a..=max).map(move |b| (a, b)))
        .filter(|&(a, b)| canonical_params(a, b) == (a, b))
        .collect()
}

fn list_or_none(xs: &[String]) -> String {
    if xs.is_empty() {
        "none".to_string()
    } else {
        xs.join(" ")
    }
}

pub fn verify(problem: u32, counter: &Counter, opts: &VerifyOptions) -> CliResult<Report> {
    let r = match problem {
        1 => problem1(counter, opts)?,
        2 | 3 => problem2_3(problem, counter, opts)?,
        4 | 7 => problem4_7(problem, counter, opts)?,
        5 => problem5(counter, opts)?,
        6 => problem6(counter, opts)?,
        8 | 10 => problem8_10(problem, counter, opts)?,
        9 | 11 => problem9_11(problem, counter, opts)?,
        12 | 13 => problem12_13(problem, counter, opts)?,
        14 => problem14(counter, opts)?,
        15..=18 => problem15_18(problem, counter, opts)?,
        19 => problem19(counter, opts)?,
        20 => problem20(counter, opts)?,
        _ => {
            return Err(crate::error::CliError::Usage(format!(
                "problem must be in 1..=20, got {problem}"
            )))
        }
    };
    Ok(r)
}

fn published(problem: u32) -> Vec<(u64, BigUint)> {
    fixtures::appendix(problem).unwrap_or_default()
}

/// Engine counts against the published list for indices up to `upto`.
fn against_published(
    r: &mut Report,
    counter: &Counter,
    list: &[(u64, BigUint)],
    upto: u64,
    ts: &TileSet,
    region: impl Fn(u64) -> RegionSpec,
) -> CliResult<()> {
    for (n, v) in list.iter().filter(|(n, _)| *n <= upto) {
        let spec = region(*n);
        let c = counter.count(spec, ts)?.value;
        r.equal(format!("{spec} {ts} (n={n}) vs published"), v.clone(), c);
    }
    Ok(())
}

fn problem1(counter: &Counter, opts: &VerifyOptions) -> CliResult<Report> {
    let mut r = Report::new(1, "T_003 vanishes off the bone family; values on it");
    let ab = opts.ab_max.unwrap_or(12);
    let k_max = opts.k_max.unwrap_or(3);
    let family: Vec<(u32, u32)> = (2..=20).map(bone_benzel_params).collect();
    let ts = tiles("003");
    let mut checked = 0;
    let mut nonzero = Vec::new();
    for (a, b) in canonical_pairs(ab) {
        if family.contains(&(a, b)) || family.contains(&(b, a)) {
            continue;
        }
        checked += 1;
        let v = counter.benzel(a, b, &ts)?;
        if !v.is_zero() {
            nonzero.push(format!("({a},{b})={v}"));
        }
    }
    r.check(
        format!("T_003 on {checked} canonical benzels a<=b<={ab} off the family"),
        nonzero.is_empty(),
        "all zero",
        format!("nonzero: {}", list_or_none(&nonzero)),
    );
    let list = published(1);
    for (k, v) in list.iter().filter(|(k, _)| *k <= k_max) {
        let (a, b) = bone_benzel_params(*k as u32);
        let c = counter.benzel(a, b, &ts)?;
        r.equal(format!("T_003({a},{b}) (k={k}) vs published"), v.clone(), c);
    }
    Ok(r)
}

fn problem2_3(problem: u32, counter: &Counter, opts: &VerifyOptions) -> CliResult<Report> {
    let (subject, formula, region): (_, Indexed<BigUint>, Indexed<RegionSpec>) = if problem == 2 {
        ("T_012(3n,3n) = 2^n n!", formula_p2, |n| bz(3 * n, 3 * n))
    } else {
        ("T_012(3n+1,3n+2) = 2^n n!", formula_p3, |n| {
            bz(3 * n + 1, 3 * n + 2)
        })
    };
    let mut r = Report::new(problem, subject);
    let ts = tiles("012");
    for n in 1..=opts.n_max.unwrap_or(4) {
        let spec = region(n);
        let c = counter.count(spec, &ts)?.value;
        r.equal(format!("{spec} (n={n}) vs formula"), formula(n), c);
    }
    for (n, v) in published(problem) {
        r.equal(format!("published n={n} vs formula"), formula(n), v);
    }
    Ok(r)
}

fn problem4_7(problem: u32, counter: &Counter, opts: &VerifyOptions) -> CliResult<Report> {
    let (subject, code, applies): (_, _, fn(i64) -> bool) = if problem == 4 {
        ("CL <= 0 implies type-013 tilings exist", "013", |cl| {
            cl <= 0
        })
    } else {
        ("CL >= 0 implies type-103 tilings exist", "103", |cl| {
            cl >= 0
        })
    };
    let mut r = Report::new(problem, subject);
    let ab = opts.ab_max.unwrap_or(8);
    let ts = tiles(code);
    let mut checked = 0;
    let mut empty = Vec::new();
    for (a, b) in canonical_pairs(ab) {
        if !applies(cl_invariant(a, b)) {
            continue;
        }
        checked += 1;
        if counter.benzel(a, b, &ts)?.is_zero() {
            empty.push(format!("({a},{b})"));
        }
    }
    r.check(
        format!("T_{code} > 0 on {checked} qualifying canonical benzels a<=b<={ab}"),
        empty.is_empty(),
        "all positive",
        format!("zero at: {}", list_or_none(&empty)),
    );
    Ok(r)
}

fn problem5(counter: &Counter, opts: &VerifyOptions) -> CliResult<Report> {
    let mut r = Report::new(5, "T_102(n+3k,2n+3k-1) product formula");
    let ts = tiles("102");
    for k in 0..=opts.k_max.unwrap_or(2) {
        for n in 1..=opts.n_max.unwrap_or(3) {
            if (k, n) == (0, 1) {
                continue;
            }
            let spec = bz(n + 3 * k, 2 * n + 3 * k - 1);
            let c = counter.count(spec, &ts)?.value;
            r.equal(
                format!("{spec} (k={k}, n={n}) vs formula"),
                formula_p5(k, n),
                c,
            );
        }
    }
    Ok(r)
}

fn problem6(counter: &Counter, opts: &VerifyOptions) -> CliResult<Report> {
    let mut r = Report::new(6, "T_103(n,2n-3) = (3n+3)(3n-7)!/((n-5)!(2n-1)!)");
    let ts = tiles("103");
    for n in 3..=opts.n_max.unwrap_or(7) {
        let spec = bz(n, 2 * n - 3);
        let c = counter.count(spec, &ts)?.value;
        r.equal(format!("{spec} (n={n}) vs formula"), formula_p6(n), c);
    }
    Ok(r)
}

fn factored_consistency(r: &mut Report, problem: u32, list: &[(u64, BigUint)]) {
    for (n, factors) in fixtures::factored(problem).unwrap_or_default() {
        let product = factors.iter().fold(BigUint::one(), |acc, (&p, &e)| {
            acc * BigUint::from(p).pow(e)
        });
        if let Some((_, v)) = list.iter().find(|(i, _)| *i == n) {
            r.equal(
                format!("published factorization n={n} vs value"),
                v.clone(),
                product,
            );
        }
    }
}

fn problem8_10(problem: u32, counter: &Counter, opts: &VerifyOptions) -> CliResult<Report> {
    let list = published(problem);
    let mut r;
    if problem == 8 {
        r = Report::new(8, "second quotient of T_112(3n,3n)");
        against_published(
            &mut r,
            counter,
            &list,
            opts.n_max.unwrap_or(3),
            &tiles("112"),
            |n| bz(3 * n, 3 * n),
        )?;
        for w in list.windows(3) {
            let n = w[0].0;
            let q = second_quotient(&w[0].1, &w[1].1, &w[2].1);
            r.equal(format!("T(n)T(n+2)/T(n+1)^2 at n={n}"), quotient_p8(n), q);
        }
    } else {
        r = Report::new(10, "third quotient of T_112(3n+1,3n+2)");
        against_published(
            &mut r,
            counter,
            &list,
            opts.n_max.unwrap_or(3),
            &tiles("112"),
            |n| bz(3 * n + 1, 3 * n + 2),
        )?;
        for w in list.windows(4) {
            let n = w[0].0;
            let q = third_quotient(&w[0].1, &w[1].1, &w[2].1, &w[3].1);
            r.equal(
                format!("T(n)T(n+3)/(T(n+1)T(n+2)) at n={n}"),
                quotient_p10(n),
                q,
            );
        }
    }
    factored_consistency(&mut r, problem, &list);
    Ok(r)
}

fn problem9_11(problem: u32, counter: &Counter, opts: &VerifyOptions) -> CliResult<Report> {
    let list = published(problem);
    let (subject, region): (_, Indexed<RegionSpec>) = if problem == 9 {
        ("T_112(3n+1,3n+1) has no prime factor >= 4n", |n| {
            bz(3 * n + 1, 3 * n + 1)
        })
    } else {
        ("T_112(3n-1,3n) has no prime factor >= 4n", |n| {
            bz(3 * n - 1, 3 * n)
        })
    };
    let mut r = Report::new(problem, subject);
    against_published(
        &mut r,
        counter,
        &list,
        opts.n_max.unwrap_or(3),
        &tiles("112"),
        region,
    )?;
    for (n, v) in &list {
        r.check(
            format!("prime factors of published n={n} below {}", 4 * n),
            check_prime_bound(*n, v),
            "true",
            check_prime_bound(*n, v),
        );
    }
    factored_consistency(&mut r, problem, &list);
    Ok(r)
}

fn problem12_13(problem: u32, counter: &Counter, opts: &VerifyOptions) -> CliResult<Report> {
    let ts = tiles("112");
    let (subject, id, n_max, region, closed): (_, _, _, Indexed<RegionSpec>, fn(usize) -> BigUint) =
        if problem == 12 {
            (
                "T_112(n+2,2n+1) is the large Schroeder number",
                "A006318",
                4,
                |n| bz(n + 2, 2 * n + 1),
                schroeder,
            )
        } else {
            (
                "T_112(n+2,2n) counts royal paths",
                "A006319",
                5,
                |n| bz(n + 2, 2 * n),
                royal_paths,
            )
        };
    let mut r = Report::new(problem, subject);
    let seq = oeis::fetch(id, opts.offline)?;
    for n in 1..=opts.n_max.unwrap_or(n_max) {
        let spec = region(n);
        let c = counter.count(spec, &ts)?.value;
        r.equal(
            format!("{spec} (n={n}) vs recurrence"),
            closed(n as usize),
            c.clone(),
        );
        let term = seq.term(n as i64).cloned();
        r.check(
            format!("{spec} (n={n}) vs {id} ({})", seq.source),
            term.as_ref() == Some(&BigInt::from(c.clone())),
            term.map_or_else(|| "a term".to_string(), |t| t.to_string()),
            c,
        );
    }
    Ok(r)
}

fn problem14(counter: &Counter, opts: &VerifyOptions) -> CliResult<Report> {
    let mut r = Report::new(14, "T_113 = 1 when a+b = 1 (mod 3)");
    let ab = opts.ab_max.unwrap_or(9);
    let ts = tiles("113");
    for (a, b) in canonical_pairs(ab)
        .into_iter()
        .filter(|(a, b)| (a + b) % 3 == 1)
    {
        let c = counter.benzel(a, b, &ts)?;
        r.equal(format!("T_113({a},{b})"), BigUint::one(), c);
    }
    let mut contradictions = Vec::new();
    let mut checked = 0;
    for code in TileSet::all_codes() {
        let ts = TileSet::from_code(code.0, code.1, code.2)?;
        for (a, b) in canonical_pairs(ab) {
            let Some(p) = predict_zero_or_one(code, a, b) else {
                continue;
            };
            checked += 1;
            let c = counter.benzel(a, b, &ts)?;
            let want = match p {
                Prediction::Zero(_) => BigUint::zero(),
                Prediction::One => BigUint::one(),
            };
            if c != want {
                contradictions.push(format!("T_{ts}({a},{b})={c}"));
            }
        }
    }
    r.check(
        format!("invariant predictions on {checked} (code, benzel) pairs a<=b<={ab}"),
        contradictions.is_empty(),
        "no contradiction",
        format!("contradictions: {}", list_or_none(&contradictions)),
    );
    Ok(r)
}

fn is_periodic(residues: &[u32], p: usize) -> bool {
    (0..residues.len().saturating_sub(p)).all(|t| residues[t] == residues[t + p])
}

fn problem15_18(problem: u32, counter: &Counter, opts: &VerifyOptions) -> CliResult<Report> {
    let (subject, code, shift, n_max) = match problem {
        15 => ("T_113(n,2n-4) residues", "113", 4, 10),
        16 => ("T_113(n,2n-3) residues", "113", 3, 10),
        17 => ("T_113(n,2n-4;3) residues", "113;3", 4, 8),
        _ => ("T_113(n,2n-3;3) residues", "113;3", 3, 8),
    };
    let mut r = Report::new(problem, subject);
    let list = published(problem);
    against_published(
        &mut r,
        counter,
        &list,
        opts.n_max.unwrap_or(n_max),
        &tiles(code),
        |n| bz(n, 2 * n - shift),
    )?;
    for claim in fixtures::padic_claims(problem) {
        if opts.modulus.is_some_and(|m| m != claim.modulus) {
            continue;
        }
        let from = |start: u64| -> Vec<BigUint> {
            list.iter()
                .filter(|(n, _)| *n >= start)
                .map(|(_, v)| v.clone())
                .collect()
        };
        let rep = padic_profile(
            &from(claim.first_index),
            claim.modulus,
            claim.first_index as usize,
        );
        let period_ok = rep.detected_period.is_some_and(|d| claim.period % d == 0);
        let pattern_ok = claim
            .pattern
            .as_ref()
            .is_none_or(|p| rep.residues.len() >= p.len() && rep.residues[..p.len()] == p[..]);
        let expected = match &claim.pattern {
            Some(p) => format!("period {} pattern {:?}", claim.period, p),
            None if claim.period == 1 => "constant".to_string(),
            None => format!("period dividing {}", claim.period),
        };
        let computed = match rep.detected_period {
            Some(d) => format!("period {d} residues {:?}", rep.residues),
            None => format!("no period, residues {:?}", rep.residues),
        };
        let label = format!("mod {} from n={}", claim.modulus, claim.first_index);
        // The mod-8 comments are not all consistent with the mod-16 patterns; they are evidence only.
        if claim.modulus == 8 {
            r.evidence(label, period_ok && pattern_ok, expected, computed);
        } else {
            r.check(label, period_ok && pattern_ok, expected, computed);
        }
        if claim.pattern.is_some() {
            let before = claim.first_index - 1;
            let ext = padic_profile(&from(before), claim.modulus, before as usize);
            let breaks = !is_periodic(&ext.residues, claim.period);
            r.check(
                format!("n={before} breaks the mod {} pattern", claim.modulus),
                breaks,
                "pattern broken",
                format!("residues {:?}", ext.residues),
            );
        }
    }
    Ok(r)
}

fn problem19(counter: &Counter, opts: &VerifyOptions) -> CliResult<Report> {
    let mut r = Report::new(19, "flip connectivity (proved for type 112, open for 113)");
    let ab = opts.ab_max.unwrap_or(7);
    for (code, max, limit, gating) in [
        ("112", ab.max(10), FLIP_LIMIT_112, true),
        ("113", ab, FLIP_LIMIT_113, false),
    ] {
        let ts = tiles(code);
        for (a, b) in canonical_pairs(max) {
            let c = counter.benzel(a, b, &ts)?;
            if c.is_zero() || c > BigUint::from(limit) {
                continue;
            }
            let region = RegionSpec::Benzel { a, b }.build()?;
            let g = flip_graph(&region, &ts, limit)?;
            let label = format!(
                "T_{code}({a},{b}): {} tilings, {} flips",
                g.vertex_count(),
                g.edge_count
            );
            let computed = match g.diameter {
                Some(d) => format!("{} component(s), diameter {d}", g.component_count),
                None => format!("{} component(s)", g.component_count),
            };
            if gating {
                r.check(label, g.is_connected(), "1 component", computed);
            } else {
                r.evidence(label, g.is_connected(), "1 component", computed);
            }
        }
    }
    Ok(r)
}

/// Stone-only tilings of the side-`n` triangle; the empty triangle has one tiling.
pub fn triangle_stone_count(counter: &Counter, n: u32) -> CliResult<BigUint> {
    match n {
        0 => Ok(BigUint::one()),
        1 => Ok(BigUint::zero()),
        _ => Ok(counter
            .count(RegionSpec::Triangle { n }, &tiles("110"))?
            .value),
    }
}

pub fn stone_tilable(n: u32) -> bool {
    matches!(n % 12, 0 | 2 | 9 | 11)
}

fn problem20(counter: &Counter, opts: &VerifyOptions) -> CliResult<Report> {
    let mut r = Report::new(20, "2-adic valuations of stone tilings of triangles");
    let n_max = opts.n_max.unwrap_or(12) as u32;
    let seq = oeis::fetch("A334875", opts.offline)?;
    let mut values = Vec::new();
    let mut stray = Vec::new();
    for n in 0..=n_max {
        let v = triangle_stone_count(counter, n)?;
        if !stone_tilable(n) && !v.is_zero() {
            stray.push(format!("n={n}: {v}"));
        }
        values.push((n as i64, v));
    }
    r.check(
        format!("no stone tilings for n <= {n_max} outside 0, 2, 9, 11 (mod 12)"),
        stray.is_empty(),
        "none",
        list_or_none(&stray),
    );
    let as_int: Vec<(i64, BigInt)> = values
        .iter()
        .map(|(n, v)| (*n, BigInt::from(v.clone())))
        .collect();
    let cmp = oeis::compare(&seq, &as_int);
    r.check(
        format!("counts for n <= {n_max} vs A334875 ({})", seq.source),
        cmp.agrees(),
        "agreement",
        cmp,
    );
    let vals: Vec<u64> = values
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(_, v)| two_adic_valuation(v))
        .collect();
    let stated: Vec<u64> = published(20)
        .iter()
        .take(vals.len())
        .map(|(_, v)| u64::try_from(v).expect("small valuation"))
        .collect();
    let show = |xs: &[u64]| xs.iter().map(u64::to_string).collect::<Vec<_>>().join(", ");
    r.check(
        "2-adic valuations of nonzero terms from n=0",
        vals.len() <= published(20).len() && vals == stated,
        show(&stated),
        show(&vals),
    );
    Ok(r)
}
