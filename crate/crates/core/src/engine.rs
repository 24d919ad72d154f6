//! Exact counting and enumeration of tilings.
//!
//! Cells are visited in ascending `(i, j)` order and the branch cell is always
//! the least uncovered one, so a placement chosen there must be anchored at
//! that cell. The plain engine walks the search tree. The memoized engine
//! sweeps the same tree breadth-first, merging partial tilings that agree on
//! the branch index and on the occupancy of the next `W` cells, where `W` is
//! the largest index span of any placement in the region.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use crate::error::{Error, Partial, Result};
use crate::grid::{benzel, Region};
use crate::tiles::{Placement, PrototileKind, TileSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum EngineKind {
    Plain,
    #[default]
    Memoized,
}

impl fmt::Display for EngineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EngineKind::Plain => "plain",
            EngineKind::Memoized => "memo",
        })
    }
}

/// Search limits. `None` means unlimited.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
    /// Largest frontier the memoized engine may hold (a memory bound).
    pub max_states: Option<usize>,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget {
        max_nodes: None,
        max_time: None,
        max_states: None,
    };

    pub fn nodes(max: u64) -> Budget {
        Budget {
            max_nodes: Some(max),
            ..Budget::UNLIMITED
        }
    }
}

struct Meter {
    budget: Budget,
    start: Instant,
    nodes: u64,
}

impl Meter {
    fn new(budget: Budget) -> Self {
        Meter {
            budget,
            start: Instant::now(),
            nodes: 0,
        }
    }

    #[inline]
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if let Some(max) = self.budget.max_nodes {
            if self.nodes > max {
                return Err(self.exceeded());
            }
        }
        if self.nodes & 0x3ff == 0 {
            if let Some(max) = self.budget.max_time {
                if self.start.elapsed() > max {
                    return Err(self.exceeded());
                }
            }
        }
        Ok(())
    }

    fn exceeded(&self) -> Error {
        Error::BudgetExceeded(Partial {
            nodes: self.nodes,
            elapsed: self.start.elapsed(),
            frontier: 0,
        })
    }

    #[inline]
    fn check_frontier(&self, len: usize) -> Result<()> {
        match self.budget.max_states {
            Some(max) if len > max => Err(Error::BudgetExceeded(Partial {
                nodes: self.nodes,
                elapsed: self.start.elapsed(),
                frontier: len,
            })),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CountOptions {
    pub engine: EngineKind,
    pub budget: Budget,
}

impl CountOptions {
    pub fn with_engine(engine: EngineKind) -> Self {
        CountOptions {
            engine,
            budget: Budget::UNLIMITED,
        }
    }
}

/// An exact (weighted) tiling count with provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Count {
    pub value: BigUint,
    pub engine: EngineKind,
    pub elapsed: Duration,
    pub nodes: u64,
}

/// A set of placements, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tiling {
    placements: Vec<Placement>,
}

impl Tiling {
    pub fn new(mut placements: Vec<Placement>) -> Tiling {
        placements.sort_unstable();
        Tiling { placements }
    }

    pub fn placements(&self) -> &[Placement] {
        &self.placements
    }

    pub fn len(&self) -> usize {
        self.placements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.placements.is_empty()
    }

    pub fn count_kind(&self, kind: PrototileKind) -> usize {
        self.placements.iter().filter(|p| p.kind == kind).count()
    }

    pub fn stone_count(&self) -> usize {
        self.placements.iter().filter(|p| p.kind.is_stone()).count()
    }

    /// Product of the tile weights.
    pub fn weight(&self, ts: &TileSet) -> BigUint {
        self.placements
            .iter()
            .fold(BigUint::one(), |acc, p| acc * ts.weight(p.kind))
    }

    /// Check that the placements partition exactly the cells of `region`
    /// using only kinds from `ts`.
    pub fn validate(&self, region: &Region, ts: &TileSet) -> Result<()> {
        let mut covered = vec![false; region.len()];
        for p in &self.placements {
            if !ts.allows(p.kind) {
                return Err(Error::InvalidTiling(format!(
                    "{p} uses a disallowed prototile"
                )));
            }
            for c in p.cells() {
                let idx = region
                    .index_of(c)
                    .ok_or_else(|| Error::InvalidTiling(format!("{p} leaves the region")))?;
                if std::mem::replace(&mut covered[idx], true) {
                    return Err(Error::InvalidTiling(format!("{p} overlaps another tile")));
                }
            }
        }
        if let Some(idx) = covered.iter().position(|c| !c) {
            return Err(Error::InvalidTiling(format!(
                "cell {} is uncovered",
                region.cells()[idx]
            )));
        }
        Ok(())
    }
}

/// Right-stone area minus left-stone area, in cells.
pub fn cl_statistic(t: &Tiling) -> i64 {
    3 * (t.count_kind(PrototileKind::RightStone) as i64
        - t.count_kind(PrototileKind::LeftStone) as i64)
}

#[derive(Debug, Clone, Copy)]
struct Branch {
    kind: PrototileKind,
    d1: u32,
    d2: u32,
    weight: u64,
}

/// A region and tile set reduced to cell indices.
struct Compiled {
    len: usize,
    anchored: Vec<Vec<Branch>>,
    window: usize,
}

impl Compiled {
    fn new(region: &Region, ts: &TileSet) -> Compiled {
        let mut anchored = vec![Vec::new(); region.len()];
        let mut window = 1;
        for (idx, &anchor) in region.cells().iter().enumerate() {
            for kind in ts.kinds() {
                let cells = Placement::new(kind, anchor).cells();
                let (Some(i1), Some(i2)) = (region.index_of(cells[1]), region.index_of(cells[2]))
                else {
                    continue;
                };
                window = window.max(i2 - idx + 1);
                anchored[idx].push(Branch {
                    kind,
                    d1: (i1 - idx) as u32,
                    d2: (i2 - idx) as u32,
                    weight: ts.weight(kind),
                });
            }
        }
        Compiled {
            len: region.len(),
            anchored,
            window,
        }
    }
}

/// Count (weighted) tilings with the default engine and no budget.
pub fn count(region: &Region, ts: &TileSet) -> Result<Count> {
    count_with(region, ts, CountOptions::default())
}

pub fn count_weighted(region: &Region, ts: &TileSet, stone_weight: u64) -> Result<Count> {
    count(region, &ts.with_stone_weight(stone_weight)?)
}

pub fn count_with(region: &Region, ts: &TileSet, opts: CountOptions) -> Result<Count> {
    let start = Instant::now();
    let compiled = Compiled::new(region, ts);
    let mut meter = Meter::new(opts.budget);
    let value = match opts.engine {
        EngineKind::Plain => count_plain(&compiled, ts, &mut meter)?,
        EngineKind::Memoized => count_memo(&compiled, &mut meter)?,
    };
    Ok(Count {
        value,
        engine: opts.engine,
        elapsed: start.elapsed(),
        nodes: meter.nodes,
    })
}

/// Counting `T_ijk(a, b; w)` directly.
#[allow(non_snake_case)]
pub fn T(i: u8, j: u8, k: u8, a: u32, b: u32, stone_weight: u64) -> Result<Count> {
    let ts = TileSet::from_code(i, j, k)?.with_stone_weight(stone_weight)?;
    count(&benzel(a, b)?, &ts)
}

fn count_plain(c: &Compiled, ts: &TileSet, meter: &mut Meter) -> Result<BigUint> {
    // Leaves are grouped by how many tiles of each kind they use, then weighted once.
    struct Walk<'a> {
        c: &'a Compiled,
        covered: Vec<bool>,
        hist: [u32; 5],
        leaves: FxHashMap<[u32; 5], u64>,
    }
    impl Walk<'_> {
        fn go(&mut self, mut pos: usize, meter: &mut Meter) -> Result<()> {
            meter.tick()?;
            while pos < self.c.len && self.covered[pos] {
                pos += 1;
            }
            if pos == self.c.len {
                *self.leaves.entry(self.hist).or_insert(0) += 1;
                return Ok(());
            }
            for br in &self.c.anchored[pos] {
                let (p1, p2) = (pos + br.d1 as usize, pos + br.d2 as usize);
                if self.covered[p1] || self.covered[p2] {
                    continue;
                }
                self.covered[pos] = true;
                self.covered[p1] = true;
                self.covered[p2] = true;
                self.hist[br.kind.index()] += 1;
                let r = self.go(pos + 1, meter);
                self.hist[br.kind.index()] -= 1;
                self.covered[pos] = false;
                self.covered[p1] = false;
                self.covered[p2] = false;
                r?;
            }
            Ok(())
        }
    }
    let mut walk = Walk {
        c,
        covered: vec![false; c.len],
        hist: [0; 5],
        leaves: FxHashMap::default(),
    };
    walk.go(0, meter)?;
    let mut total = BigUint::zero();
    for (hist, n) in walk.leaves {
        let mut w = BigUint::from(n);
        for kind in PrototileKind::ALL {
            w *= BigUint::from(ts.weight(kind)).pow(hist[kind.index()]);
        }
        total += w;
    }
    Ok(total)
}

struct Overflow;

trait Tally: Clone {
    fn unit() -> Self;
    fn add_to(&mut self, other: &Self) -> Result<(), Overflow>;
    fn scaled(&self, w: u64) -> Result<Self, Overflow>;
    fn into_big(self) -> BigUint;
}

impl Tally for u128 {
    fn unit() -> Self {
        1
    }
    #[inline]
    fn add_to(&mut self, other: &Self) -> Result<(), Overflow> {
        *self = self.checked_add(*other).ok_or(Overflow)?;
        Ok(())
    }
    #[inline]
    fn scaled(&self, w: u64) -> Result<Self, Overflow> {
        self.checked_mul(w as u128).ok_or(Overflow)
    }
    fn into_big(self) -> BigUint {
        BigUint::from(self)
    }
}

impl Tally for BigUint {
    fn unit() -> Self {
        One::one()
    }
    fn add_to(&mut self, other: &Self) -> Result<(), Overflow> {
        *self += other;
        Ok(())
    }
    fn scaled(&self, w: u64) -> Result<Self, Overflow> {
        Ok(if w == 1 { self.clone() } else { self * w })
    }
    fn into_big(self) -> BigUint {
        self
    }
}

fn count_memo(c: &Compiled, meter: &mut Meter) -> Result<BigUint> {
    if c.window > 128 {
        return Err(Error::WindowTooWide(c.window));
    }
    match sweep::<u128>(c, meter)? {
        Some(v) => Ok(v),
        None => Ok(sweep::<BigUint>(c, meter)?.expect("big integers do not overflow")),
    }
}

/// Frontier sweep. `Ok(None)` signals that `V` overflowed.
fn sweep<V: Tally>(c: &Compiled, meter: &mut Meter) -> Result<Option<BigUint>> {
    let mut cur: FxHashMap<u128, V> = FxHashMap::default();
    cur.insert(0, V::unit());
    let mut next: FxHashMap<u128, V> = FxHashMap::default();
    for idx in 0..c.len {
        let branches = &c.anchored[idx];
        for (mask, val) in cur.drain() {
            meter.tick()?;
            if mask & 1 == 1 {
                if add(&mut next, mask >> 1, &val).is_err() {
                    return Ok(None);
                }
                continue;
            }
            for br in branches {
                let bits = (1u128 << br.d1) | (1u128 << br.d2);
                if mask & bits != 0 {
                    continue;
                }
                let Ok(v) = val.scaled(br.weight) else {
                    return Ok(None);
                };
                if add(&mut next, (mask | 1 | bits) >> 1, &v).is_err() {
                    return Ok(None);
                }
            }
            meter.check_frontier(next.len())?;
        }
        std::mem::swap(&mut cur, &mut next);
    }
    Ok(Some(cur.remove(&0).map_or_else(BigUint::zero, V::into_big)))
}

#[inline]
fn add<V: Tally>(map: &mut FxHashMap<u128, V>, key: u128, v: &V) -> Result<(), Overflow> {
    match map.get_mut(&key) {
        Some(slot) => slot.add_to(v),
        None => {
            map.insert(key, v.clone());
            Ok(())
        }
    }
}

/// Streaming enumeration in a fixed order: at each branch cell the
/// placements are tried in ascending kind order.
pub struct Tilings {
    compiled: Compiled,
    region_cells: Vec<crate::grid::Cell>,
    covered: Vec<bool>,
    /// (branch cell, index of the next branch to try, branch currently applied)
    stack: Vec<(usize, usize, Option<usize>)>,
    meter: Meter,
    started: bool,
    finished: bool,
}

impl Tilings {
    pub fn new(region: &Region, ts: &TileSet, budget: Budget) -> Tilings {
        let compiled = Compiled::new(region, ts);
        Tilings {
            covered: vec![false; compiled.len],
            compiled,
            region_cells: region.cells().to_vec(),
            stack: Vec::new(),
            meter: Meter::new(budget),
            started: false,
            finished: false,
        }
    }

    fn set(&mut self, pos: usize, br: usize, on: bool) {
        let b = self.compiled.anchored[pos][br];
        self.covered[pos] = on;
        self.covered[pos + b.d1 as usize] = on;
        self.covered[pos + b.d2 as usize] = on;
    }

    /// Move the top frame to its next applicable branch, popping it if exhausted.
    fn advance(&mut self) -> bool {
        let (pos, from, applied) = *self.stack.last().expect("nonempty stack");
        if let Some(br) = applied {
            self.set(pos, br, false);
        }
        let branches = &self.compiled.anchored[pos];
        for (n, b) in branches.iter().enumerate().skip(from) {
            if !self.covered[pos + b.d1 as usize] && !self.covered[pos + b.d2 as usize] {
                self.set(pos, n, true);
                *self.stack.last_mut().unwrap() = (pos, n + 1, Some(n));
                return true;
            }
        }
        self.stack.pop();
        false
    }

    fn backtrack(&mut self) -> bool {
        while !self.stack.is_empty() {
            if self.advance() {
                return true;
            }
        }
        false
    }

    fn current(&self) -> Tiling {
        Tiling::new(
            self.stack
                .iter()
                .map(|&(pos, _, br)| {
                    let kind = self.compiled.anchored[pos][br.unwrap()].kind;
                    Placement::new(kind, self.region_cells[pos])
                })
                .collect(),
        )
    }

    fn step(&mut self) -> Result<Option<Tiling>> {
        if self.started && !self.backtrack() {
            return Ok(None);
        }
        self.started = true;
        loop {
            let from = self.stack.last().map_or(0, |f| f.0 + 1);
            let Some(pos) = (from..self.compiled.len).find(|&p| !self.covered[p]) else {
                return Ok(Some(self.current()));
            };
            self.meter.tick()?;
            self.stack.push((pos, 0, None));
            if !self.advance() && !self.backtrack() {
                return Ok(None);
            }
        }
    }
}

impl Iterator for Tilings {
    type Item = Result<Tiling>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.finished {
            return None;
        }
        let r = self.step();
        match r {
            Ok(Some(t)) => Some(Ok(t)),
            Ok(None) => {
                self.finished = true;
                None
            }
            Err(e) => {
                self.finished = true;
                Some(Err(e))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub tilings: Vec<Tiling>,
    /// True when `limit` stopped the enumeration before it was exhausted.
    pub truncated: bool,
}

pub fn enumerate(region: &Region, ts: &TileSet, limit: Option<usize>) -> Result<Enumeration> {
    enumerate_with(region, ts, limit, Budget::UNLIMITED)
}

pub fn enumerate_with(
    region: &Region,
    ts: &TileSet,
    limit: Option<usize>,
    budget: Budget,
) -> Result<Enumeration> {
    let mut it = Tilings::new(region, ts, budget);
    let mut tilings = Vec::new();
    while limit.is_none_or(|l| tilings.len() < l) {
        match it.next() {
            Some(t) => tilings.push(t?),
            None => {
                return Ok(Enumeration {
                    tilings,
                    truncated: false,
                })
            }
        }
    }
    let truncated = it.next().is_some();
    Ok(Enumeration { tilings, truncated })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{benzel, triangle};

    fn code(s: &str) -> TileSet {
        s.parse().unwrap()
    }

    fn n(r: &Region, ts: &str) -> u64 {
        let c = count(r, &code(ts)).unwrap();
        c.value.try_into().unwrap()
    }

    #[test]
    fn small_published_values() {
        assert_eq!(n(&benzel(6, 6).unwrap(), "112"), 48);
        assert_eq!(n(&benzel(4, 6).unwrap(), "113"), 1);
        assert_eq!(n(&benzel(3, 3).unwrap(), "102"), 0);
        assert_eq!(n(&benzel(9, 9).unwrap(), "013"), 73454);
        assert_eq!(T(1, 1, 2, 7, 8, 1).unwrap().value, BigUint::from(512u32));
        assert_eq!(T(1, 0, 3, 8, 9, 1).unwrap().value, BigUint::from(12430u32));
    }

    #[test]
    fn weighted_values() {
        let ts = code("113");
        assert_eq!(
            count_weighted(&benzel(4, 4).unwrap(), &ts, 3)
                .unwrap()
                .value,
            BigUint::from(102u32)
        );
        assert_eq!(
            count_weighted(&benzel(4, 5).unwrap(), &ts, 3)
                .unwrap()
                .value,
            BigUint::from(270u32)
        );
        assert_eq!(
            count_weighted(&benzel(5, 7).unwrap(), &ts, 3)
                .unwrap()
                .value,
            BigUint::from(27110u32)
        );
        assert_eq!(T(1, 1, 3, 5, 6, 3).unwrap().value, BigUint::from(10260u32));
        assert_eq!(
            T(1, 1, 3, 7, 10, 3).unwrap().value,
            BigUint::from(3272495580u64)
        );
        let r = benzel(5, 6).unwrap();
        assert_eq!(
            count_weighted(&r, &ts, 1).unwrap().value,
            count(&r, &ts).unwrap().value
        );
    }

    #[test]
    fn engines_agree_small() {
        for (a, b) in [(3, 3), (4, 4), (4, 5), (5, 6), (6, 6)] {
            let r = benzel(a, b).unwrap();
            for (i, j, k) in TileSet::all_codes() {
                let ts = TileSet::from_code(i, j, k)
                    .unwrap()
                    .with_stone_weight(3)
                    .unwrap();
                let p = count_with(&r, &ts, CountOptions::with_engine(EngineKind::Plain)).unwrap();
                let m =
                    count_with(&r, &ts, CountOptions::with_engine(EngineKind::Memoized)).unwrap();
                assert_eq!(p.value, m.value, "({a},{b}) {i}{j}{k}");
            }
        }
    }

    #[test]
    fn enumeration_of_3_3() {
        let r = benzel(3, 3).unwrap();
        let ts = code("113");
        let e = enumerate(&r, &ts, None).unwrap();
        assert_eq!(e.tilings.len(), 3);
        assert!(!e.truncated);
        for t in &e.tilings {
            t.validate(&r, &ts).unwrap();
            assert_eq!(cl_statistic(t), -3);
        }
        let sorted = {
            let mut s = e.tilings.clone();
            s.sort();
            s.dedup();
            s
        };
        assert_eq!(sorted.len(), 3);
        let lim = enumerate(&r, &ts, Some(2)).unwrap();
        assert_eq!(lim.tilings, e.tilings[..2]);
        assert!(lim.truncated);
        let exact = enumerate(&r, &ts, Some(3)).unwrap();
        assert!(!exact.truncated);
    }

    #[test]
    fn all_right_stones_on_4_6() {
        let r = benzel(4, 6).unwrap();
        let e = enumerate(&r, &code("113"), None).unwrap();
        assert_eq!(e.tilings.len(), 1);
        let t = &e.tilings[0];
        assert_eq!(t.count_kind(PrototileKind::RightStone), t.len());
        assert_eq!(cl_statistic(t), 18);
    }

    #[test]
    fn bone_benzel_5_7() {
        let r = benzel(5, 7).unwrap();
        let e = enumerate(&r, &code("003"), None).unwrap();
        assert_eq!(e.tilings.len(), 2);
        for t in &e.tilings {
            assert_eq!(cl_statistic(t), 0);
        }
    }

    #[test]
    fn budget_is_an_error() {
        let r = benzel(8, 8).unwrap();
        let ts = code("013");
        for engine in [EngineKind::Plain, EngineKind::Memoized] {
            let opts = CountOptions {
                engine,
                budget: Budget::nodes(10),
            };
            match count_with(&r, &ts, opts) {
                Err(Error::BudgetExceeded(p)) => assert_eq!(p.nodes, 11),
                other => panic!("{other:?}"),
            }
        }
        let e = enumerate_with(&r, &code("113"), None, Budget::nodes(5));
        assert!(matches!(e, Err(Error::BudgetExceeded(_))));
        let opts = CountOptions {
            engine: EngineKind::Memoized,
            budget: Budget {
                max_states: Some(20),
                ..Budget::UNLIMITED
            },
        };
        match count_with(&benzel(9, 9).unwrap(), &code("113"), opts) {
            Err(Error::BudgetExceeded(p)) => assert!(p.frontier > 20),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn invalid_tilings_detected() {
        let r = benzel(2, 2).unwrap();
        let ts = code("113");
        let stone = Placement::new(PrototileKind::RightStone, r.cells()[0]);
        Tiling::new(vec![stone]).validate(&r, &ts).unwrap();
        assert!(Tiling::new(vec![]).validate(&r, &ts).is_err());
        assert!(Tiling::new(vec![stone, stone]).validate(&r, &ts).is_err());
        assert!(Tiling::new(vec![stone]).validate(&r, &code("013")).is_err());
    }

    #[test]
    fn triangle_stone_tilings() {
        assert_eq!(n(&triangle(2).unwrap(), "110"), 1);
        assert_eq!(n(&triangle(3).unwrap(), "110"), 0);
        assert_eq!(n(&triangle(5).unwrap(), "110"), 0);
    }
}
