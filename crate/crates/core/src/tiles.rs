//! The five trimer prototiles, tile sets, and placements of tiles in a region.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::grid::{Cell, Region};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PrototileKind {
    RightStone,
    LeftStone,
    VerticalBone,
    RisingBone,
    FallingBone,
}

impl PrototileKind {
    pub const ALL: [PrototileKind; 5] = [
        PrototileKind::RightStone,
        PrototileKind::LeftStone,
        PrototileKind::VerticalBone,
        PrototileKind::RisingBone,
        PrototileKind::FallingBone,
    ];

    /// Bones in the order used to pick a subset of size `k` from a tile code.
    pub const BONES: [PrototileKind; 3] = [
        PrototileKind::VerticalBone,
        PrototileKind::RisingBone,
        PrototileKind::FallingBone,
    ];

    /// Displacements of the three cells from the least one, in ascending cell order.
    pub const fn offsets(self) -> [(i32, i32, i32); 3] {
        match self {
            PrototileKind::RightStone => [(0, 0, 0), (0, 1, -1), (1, 0, -1)],
            PrototileKind::LeftStone => [(0, 0, 0), (1, -1, 0), (1, 0, -1)],
            PrototileKind::VerticalBone => [(0, 0, 0), (0, 1, -1), (0, 2, -2)],
            PrototileKind::RisingBone => [(0, 0, 0), (1, 0, -1), (2, 0, -2)],
            PrototileKind::FallingBone => [(0, 0, 0), (1, -1, 0), (2, -2, 0)],
        }
    }

    pub const fn is_stone(self) -> bool {
        matches!(self, PrototileKind::RightStone | PrototileKind::LeftStone)
    }

    pub const fn index(self) -> usize {
        self as usize
    }

    pub const fn short_name(self) -> char {
        match self {
            PrototileKind::RightStone => 'R',
            PrototileKind::LeftStone => 'L',
            PrototileKind::VerticalBone => 'V',
            PrototileKind::RisingBone => 'U',
            PrototileKind::FallingBone => 'D',
        }
    }
}

/// A translate of a prototile, named by its lexicographically least cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Placement {
    pub anchor: Cell,
    pub kind: PrototileKind,
}

impl Placement {
    pub const fn new(kind: PrototileKind, anchor: Cell) -> Self {
        Placement { anchor, kind }
    }

    /// The three cells, ascending.
    pub fn cells(self) -> [Cell; 3] {
        self.kind.offsets().map(|d| self.anchor.offset(d))
    }

    /// Recognize a cell triple as a placement of some prototile.
    pub fn from_cells(mut cells: [Cell; 3]) -> Option<Placement> {
        cells.sort_unstable();
        let a = cells[0];
        PrototileKind::ALL
            .into_iter()
            .map(|kind| Placement::new(kind, a))
            .find(|p| p.cells() == cells)
    }

    /// Image under a cell symmetry, if it is again a prototile translate.
    pub fn map(self, f: impl Fn(Cell) -> Cell) -> Option<Placement> {
        Placement::from_cells(self.cells().map(f))
    }
}

impl fmt::Display for Placement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.kind.short_name(), self.anchor)
    }
}

/// Allowed prototiles with positive integer weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TileSet {
    allowed: [bool; 5],
    weights: [u64; 5],
}

impl TileSet {
    pub fn new(kinds: impl IntoIterator<Item = PrototileKind>) -> Result<TileSet> {
        let mut allowed = [false; 5];
        for k in kinds {
            allowed[k.index()] = true;
        }
        if !allowed.contains(&true) {
            return Err(Error::EmptyTileSet);
        }
        Ok(TileSet {
            allowed,
            weights: [1; 5],
        })
    }

    /// Tile set for `T_ijk`: digit 1 allows the corresponding stone, and the
    /// first `k` bones of [`PrototileKind::BONES`] are allowed.
    pub fn from_code(i: u8, j: u8, k: u8) -> Result<TileSet> {
        if i > 1 || j > 1 || k > 3 {
            return Err(Error::BadTileCode(format!("{i}{j}{k}")));
        }
        let mut kinds = Vec::new();
        if i == 1 {
            kinds.push(PrototileKind::RightStone);
        }
        if j == 1 {
            kinds.push(PrototileKind::LeftStone);
        }
        kinds.extend_from_slice(&PrototileKind::BONES[..k as usize]);
        TileSet::new(kinds)
    }

    /// All fifteen tile-set codes, in ascending order.
    pub fn all_codes() -> impl Iterator<Item = (u8, u8, u8)> {
        (0..=1u8)
            .flat_map(|i| (0..=1u8).flat_map(move |j| (0..=3u8).map(move |k| (i, j, k))))
            .filter(|&c| c != (0, 0, 0))
    }

    pub fn with_weight(mut self, kind: PrototileKind, weight: u64) -> Result<TileSet> {
        if weight == 0 {
            return Err(Error::ParamOutOfRange(
                "tile weights must be positive".into(),
            ));
        }
        self.weights[kind.index()] = weight;
        Ok(self)
    }

    pub fn with_stone_weight(self, weight: u64) -> Result<TileSet> {
        self.with_weight(PrototileKind::RightStone, weight)?
            .with_weight(PrototileKind::LeftStone, weight)
    }

    pub fn allows(&self, kind: PrototileKind) -> bool {
        self.allowed[kind.index()]
    }

    pub fn weight(&self, kind: PrototileKind) -> u64 {
        self.weights[kind.index()]
    }

    pub fn kinds(&self) -> impl Iterator<Item = PrototileKind> + '_ {
        PrototileKind::ALL.into_iter().filter(|k| self.allows(*k))
    }

    pub fn bone_count(&self) -> u8 {
        PrototileKind::BONES
            .iter()
            .filter(|k| self.allows(**k))
            .count() as u8
    }

    /// The `(i, j, k)` code; the bone subset itself is forgotten.
    pub fn code(&self) -> (u8, u8, u8) {
        (
            self.allows(PrototileKind::RightStone) as u8,
            self.allows(PrototileKind::LeftStone) as u8,
            self.bone_count(),
        )
    }

    /// Whether the bone subset is the one [`TileSet::from_code`] would choose.
    pub fn has_canonical_bones(&self) -> bool {
        let k = self.bone_count() as usize;
        PrototileKind::BONES[..k].iter().all(|b| self.allows(*b))
    }

    pub fn uniform_stone_weight(&self) -> Option<u64> {
        let r = self.weight(PrototileKind::RightStone);
        (r == self.weight(PrototileKind::LeftStone)).then_some(r)
    }

    pub fn all_weights_one(&self) -> bool {
        self.kinds().all(|k| self.weight(k) == 1)
    }
}

/// Formats as `ijk`, with `;w` appended for a stone weight other than 1.
/// Non-canonical bone subsets and other weights are spelled out in brackets.
impl fmt::Display for TileSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j, k) = self.code();
        write!(f, "{i}{j}{k}")?;
        if !self.has_canonical_bones() {
            let bones: String = PrototileKind::BONES
                .iter()
                .filter(|b| self.allows(**b))
                .map(|b| b.short_name())
                .collect();
            write!(f, "[{bones}]")?;
        }
        let stones_match = self.uniform_stone_weight();
        match stones_match {
            Some(1) => {}
            Some(w) => write!(f, ";{w}")?,
            None => write!(
                f,
                ";R{},L{}",
                self.weight(PrototileKind::RightStone),
                self.weight(PrototileKind::LeftStone)
            )?,
        }
        for b in PrototileKind::BONES {
            if self.weight(b) != 1 {
                write!(f, ";{}{}", b.short_name(), self.weight(b))?;
            }
        }
        Ok(())
    }
}

/// Parses the command-line form `ijk` or `ijk;w`.
impl FromStr for TileSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<TileSet> {
        let bad = || Error::BadTileCode(s.to_string());
        let (code, weight) = match s.split_once(';') {
            Some((c, w)) => (c.trim(), Some(w.trim())),
            None => (s.trim(), None),
        };
        let digits: Vec<u8> = code
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as u8))
            .collect::<Option<_>>()
            .ok_or_else(bad)?;
        let &[i, j, k] = digits.as_slice() else {
            return Err(bad());
        };
        let ts = TileSet::from_code(i, j, k).map_err(|e| match e {
            Error::EmptyTileSet => e,
            _ => bad(),
        })?;
        match weight {
            None => Ok(ts),
            Some(w) => {
                let w: u64 = w.parse().map_err(|_| bad())?;
                ts.with_stone_weight(w)
            }
        }
    }
}

/// Every placement of an allowed prototile inside the region, ordered by anchor then kind.
pub fn placements_in(region: &Region, ts: &TileSet) -> Vec<Placement> {
    let mut out = Vec::new();
    for &anchor in region.cells() {
        for kind in ts.kinds() {
            let p = Placement::new(kind, anchor);
            if p.cells().iter().all(|c| region.contains(*c)) {
                out.push(p);
            }
        }
    }
    out
}

/// Placements inside the region that contain `cell`, in the same order as [`placements_in`].
pub fn placements_covering(cell: Cell, region: &Region, ts: &TileSet) -> Result<Vec<Placement>> {
    if !region.contains(cell) {
        return Err(Error::CellNotInRegion(cell));
    }
    let mut out: Vec<Placement> = ts
        .kinds()
        .flat_map(|kind| {
            kind.offsets()
                .map(|(di, dj, dk)| Placement::new(kind, cell.offset((-di, -dj, -dk))))
        })
        .filter(|p| p.cells().iter().all(|c| region.contains(*c)))
        .collect();
    out.sort_unstable();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{benzel, Cell};
    use std::collections::BTreeSet;

    use PrototileKind::*;

    fn kinds(ts: &TileSet) -> Vec<PrototileKind> {
        ts.kinds().collect()
    }

    #[test]
    fn codes() {
        assert_eq!(
            kinds(&TileSet::from_code(1, 0, 2).unwrap()),
            vec![RightStone, VerticalBone, RisingBone]
        );
        assert_eq!(
            kinds(&TileSet::from_code(0, 1, 3).unwrap()),
            vec![LeftStone, VerticalBone, RisingBone, FallingBone]
        );
        assert_eq!(
            kinds(&TileSet::from_code(1, 1, 0).unwrap()),
            vec![RightStone, LeftStone]
        );
        assert!(matches!(
            TileSet::from_code(0, 0, 0),
            Err(Error::EmptyTileSet)
        ));
        assert_eq!(TileSet::all_codes().count(), 15);
        for (i, j, k) in TileSet::all_codes() {
            let ts = TileSet::from_code(i, j, k).unwrap();
            assert_eq!(ts.code(), (i, j, k));
            assert_eq!(ts.to_string().parse::<TileSet>().unwrap(), ts);
        }
    }

    #[test]
    fn parse_weight_suffix() {
        let ts: TileSet = "113;3".parse().unwrap();
        assert_eq!(ts.weight(RightStone), 3);
        assert_eq!(ts.weight(LeftStone), 3);
        assert_eq!(ts.weight(FallingBone), 1);
        assert_eq!(ts.to_string(), "113;3");
        for bad in ["", "11", "1134", "213", "11x", "113;", "113;0", "113;-1"] {
            assert!(bad.parse::<TileSet>().is_err(), "{bad:?}");
        }
        assert!(matches!("000".parse::<TileSet>(), Err(Error::EmptyTileSet)));
    }

    #[test]
    fn noncanonical_bones_label() {
        let ts = TileSet::new([RightStone, FallingBone]).unwrap();
        assert_eq!(ts.code(), (1, 0, 1));
        assert!(!ts.has_canonical_bones());
        assert_eq!(ts.to_string(), "101[D]");
    }

    #[test]
    fn prototile_shapes() {
        let c = Cell::new(2, -1);
        for kind in PrototileKind::ALL {
            let cells = Placement::new(kind, c).cells();
            assert_eq!(cells[0], c);
            assert!(cells.windows(2).all(|w| w[0] < w[1]));
            let edges = [(0, 1), (0, 2), (1, 2)]
                .iter()
                .filter(|(x, y)| cells[*x].is_adjacent(cells[*y]))
                .count();
            // Stones are triangles; bones are induced paths.
            assert_eq!(edges, if kind.is_stone() { 3 } else { 2 }, "{kind:?}");
            assert_eq!(Placement::from_cells(cells), Some(Placement::new(kind, c)));
        }
    }

    /// The stone's vertex farthest right (relative to the centroid) points the
    /// way the stone is named.
    #[test]
    fn stone_orientation() {
        for (kind, right) in [(RightStone, true), (LeftStone, false)] {
            let pts = Placement::new(kind, Cell::new(0, 0))
                .cells()
                .map(|c| c.center());
            let cx = pts.iter().map(|p| p.0).sum::<f64>() / 3.0;
            let cy = pts.iter().map(|p| p.1).sum::<f64>() / 3.0;
            let rel: Vec<(f64, f64)> = pts.iter().map(|p| (p.0 - cx, p.1 - cy)).collect();
            let apex = rel
                .iter()
                .find(|p| p.1.abs() < 1e-9)
                .expect("one vertex on the horizontal axis");
            assert_eq!(apex.0 > 0.0, right, "{kind:?}");
        }
    }

    #[test]
    fn right_stone_is_smallest_benzel() {
        let r = benzel(2, 2).unwrap();
        let p = placements_in(&r, &TileSet::new([RightStone]).unwrap());
        assert_eq!(p, vec![Placement::new(RightStone, Cell::new(0, 0))]);
        assert!(placements_in(&r, &TileSet::new([LeftStone]).unwrap()).is_empty());
        assert_eq!(
            placements_covering(Cell::new(1, 0), &r, &TileSet::new([RightStone]).unwrap()).unwrap(),
            p
        );
        assert!(matches!(
            placements_covering(Cell::new(5, 5), &r, &TileSet::new([RightStone]).unwrap()),
            Err(Error::CellNotInRegion(_))
        ));
    }

    #[test]
    fn covering_partitions_placements() {
        let all = TileSet::from_code(1, 1, 3).unwrap();
        for (a, b) in [(4, 5), (6, 6), (5, 7)] {
            let r = benzel(a, b).unwrap();
            let ps = placements_in(&r, &all);
            for p in &ps {
                let cells = p.cells();
                assert!(cells.iter().all(|c| r.contains(*c)));
            }
            let mut union = BTreeSet::new();
            for &c in r.cells() {
                let cov = placements_covering(c, &r, &all).unwrap();
                assert!(cov.len() <= 15);
                assert!(cov.iter().all(|p| p.cells().contains(&c)));
                union.extend(cov);
            }
            assert_eq!(union.into_iter().collect::<Vec<_>>(), ps);
        }
    }

    #[test]
    fn rotation_and_reflection_act_on_kinds() {
        let all = TileSet::from_code(1, 1, 3).unwrap();
        let rot = |k| match k {
            VerticalBone => RisingBone,
            RisingBone => FallingBone,
            FallingBone => VerticalBone,
            s => s,
        };
        let refl = |k| match k {
            RisingBone => FallingBone,
            FallingBone => RisingBone,
            s => s,
        };
        for a in 2..=8 {
            for b in 2..=8 {
                let r = benzel(a, b).unwrap();
                let ps: BTreeSet<Placement> = placements_in(&r, &all).into_iter().collect();
                let rotated: BTreeSet<Placement> = ps
                    .iter()
                    .map(|p| {
                        let q = p.map(Cell::rotate120).unwrap();
                        assert_eq!(q.kind, rot(p.kind));
                        q
                    })
                    .collect();
                assert_eq!(rotated, ps);
                let mirror: BTreeSet<Placement> = placements_in(&benzel(b, a).unwrap(), &all)
                    .into_iter()
                    .collect();
                let reflected: BTreeSet<Placement> = ps
                    .iter()
                    .map(|p| {
                        let q = p.map(Cell::reflect).unwrap();
                        assert_eq!(q.kind, refl(p.kind));
                        q
                    })
                    .collect();
                assert_eq!(reflected, mirror);
            }
        }
    }
}
