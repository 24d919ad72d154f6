//! Hexagonal cells in barycentric coordinates, and the benzel and triangle
//! regions built from them.
//!
//! A cell is named by the integer triple `(i, j, k)` with `i + j + k = 1`;
//! its center in the complex plane is `i + jω + kω²`. Two cells share an edge
//! exactly when their triples differ by a permutation of `(1, -1, 0)`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub i: i32,
    pub j: i32,
    pub k: i32,
}

/// Displacements to the six edge-adjacent cells.
pub const NEIGHBOR_OFFSETS: [(i32, i32, i32); 6] = [
    (1, -1, 0),
    (-1, 1, 0),
    (0, 1, -1),
    (0, -1, 1),
    (1, 0, -1),
    (-1, 0, 1),
];

impl Cell {
    /// The cell with first two coordinates `i`, `j`; `k` is determined.
    pub const fn new(i: i32, j: i32) -> Self {
        Cell { i, j, k: 1 - i - j }
    }

    pub fn from_triple(i: i32, j: i32, k: i32) -> Result<Self> {
        if i + j + k != 1 {
            return Err(Error::ParamOutOfRange(format!(
                "({i},{j},{k}) does not sum to 1"
            )));
        }
        Ok(Cell { i, j, k })
    }

    pub const fn triple(self) -> (i32, i32, i32) {
        (self.i, self.j, self.k)
    }

    /// Translate by a displacement whose coordinates sum to zero.
    pub const fn offset(self, d: (i32, i32, i32)) -> Self {
        Cell {
            i: self.i + d.0,
            j: self.j + d.1,
            k: self.k + d.2,
        }
    }

    pub fn neighbors(self) -> [Cell; 6] {
        NEIGHBOR_OFFSETS.map(|d| self.offset(d))
    }

    pub fn is_adjacent(self, other: Cell) -> bool {
        (self.i - other.i).abs() + (self.j - other.j).abs() + (self.k - other.k).abs() == 2
    }

    /// Multiplication of the center by ω.
    pub const fn rotate120(self) -> Self {
        Cell {
            i: self.k,
            j: self.i,
            k: self.j,
        }
    }

    /// Complex conjugation of the center.
    pub const fn reflect(self) -> Self {
        Cell {
            i: self.i,
            j: self.k,
            k: self.j,
        }
    }

    /// Center as an Eisenstein integer `x + yω`.
    pub const fn eisenstein(self) -> (i64, i64) {
        ((self.i - self.k) as i64, (self.j - self.k) as i64)
    }

    /// Center in Cartesian coordinates (x right, y up).
    pub fn center(self) -> (f64, f64) {
        let (i, j, k) = (self.i as f64, self.j as f64, self.k as f64);
        (i - 0.5 * (j + k), (j - k) * 3f64.sqrt() / 2.0)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.i, self.j, self.k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionKind {
    /// `a`, `b` are canonical; `requested` is what the caller asked for.
    Benzel {
        a: u32,
        b: u32,
        requested: (u32, u32),
    },
    Triangle {
        n: u32,
    },
    Custom,
}

/// An immutable finite set of cells, sorted lexicographically by `(i, j, k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    cells: Vec<Cell>,
    kind: RegionKind,
}

impl Region {
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn kind(&self) -> RegionKind {
        self.kind
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.cells.binary_search(&c).is_ok()
    }

    /// Position of `c` in the sorted cell order.
    pub fn index_of(&self, c: Cell) -> Option<usize> {
        self.cells.binary_search(&c).ok()
    }

    pub fn custom(cells: impl IntoIterator<Item = Cell>) -> Result<Region> {
        let mut cells: Vec<Cell> = cells.into_iter().collect();
        cells.sort_unstable();
        if let Some(w) = cells.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateCell(w[0]));
        }
        Ok(Region {
            cells,
            kind: RegionKind::Custom,
        })
    }

    /// Image of the region under a cell map, as a custom region.
    pub fn map(&self, f: impl Fn(Cell) -> Cell) -> Region {
        let mut cells: Vec<Cell> = self.cells.iter().map(|&c| f(c)).collect();
        cells.sort_unstable();
        Region {
            cells,
            kind: RegionKind::Custom,
        }
    }

    pub fn same_cells(&self, other: &Region) -> bool {
        self.cells == other.cells
    }

    /// Short name used as a cache key and in reports.
    pub fn label(&self) -> String {
        match self.kind {
            RegionKind::Benzel { a, b, .. } => format!("benzel({a},{b})"),
            RegionKind::Triangle { n } => format!("triangle({n})"),
            RegionKind::Custom => format!("custom[{}]", self.cells.len()),
        }
    }
}

/// Reduce `(a, b)` to the range `a ≤ 2b`, `b ≤ 2a` without changing the benzel.
pub fn canonical_params(mut a: u32, mut b: u32) -> (u32, u32) {
    loop {
        if a > 2 * b {
            b = a - b;
        } else if b > 2 * a {
            a = b - a;
        } else {
            return (a, b);
        }
    }
}

fn checked_params(a: u32, b: u32) -> Result<(u32, u32)> {
    if a == 0 || b == 0 {
        return Err(Error::ParamOutOfRange(format!(
            "benzel parameters must be positive, got ({a},{b})"
        )));
    }
    let (ca, cb) = canonical_params(a, b);
    if ca < 2 || cb < 2 {
        return Err(Error::ParamOutOfRange(format!(
            "({a},{b}) canonicalizes to ({ca},{cb}), below 2"
        )));
    }
    Ok((ca, cb))
}

fn bounding_box(a: u32, b: u32) -> impl Iterator<Item = Cell> {
    let r = (a + b) as i32 + 1;
    (-r..=r).flat_map(move |i| (-r..=r).map(move |j| Cell::new(i, j)))
}

/// The `(a, b)`-benzel: cells with `-(a-1) ≤ j-i, k-j, i-k ≤ b-1`.
pub fn benzel(a: u32, b: u32) -> Result<Region> {
    let (ca, cb) = checked_params(a, b)?;
    let lo = -(ca as i32 - 1);
    let hi = cb as i32 - 1;
    let within = |d: i32| lo <= d && d <= hi;
    let cells = bounding_box(ca, cb)
        .filter(|c| within(c.j - c.i) && within(c.k - c.j) && within(c.i - c.k))
        .collect();
    Ok(Region {
        cells,
        kind: RegionKind::Benzel {
            a: ca,
            b: cb,
            requested: (a, b),
        },
    })
}

/// An Eisenstein integer `x + yω` as `(x, y)`.
pub type Eis = (i64, i64);

fn cross(u: Eis, v: Eis) -> i64 {
    u.0 * v.1 - u.1 * v.0
}

fn sub(u: Eis, v: Eis) -> Eis {
    (u.0 - v.0, u.1 - v.1)
}

/// The clipping hexagon with vertices `aω+b, -aω²-b, aω²+bω, -a-bω, a+bω², -aω-bω²`
/// in Eisenstein coordinates, for canonical `(a, b)`.
pub fn clip_hexagon(a: i64, b: i64) -> [Eis; 6] {
    [
        (b, a),
        (a - b, a),
        (-a, b - a),
        (-a, -b),
        (a - b, -b),
        (b, b - a),
    ]
}

/// Same region as [`benzel`], built by keeping every cell whose closed unit
/// hexagon lies inside the clipping hexagon. Integer arithmetic only.
pub fn benzel_by_hexagon_clip(a: u32, b: u32) -> Result<Region> {
    let (ca, cb) = checked_params(a, b)?;
    let hex = clip_hexagon(ca as i64, cb as i64);
    let twice_area: i64 = (0..6).map(|t| cross(hex[t], hex[(t + 1) % 6])).sum();
    let orient = twice_area.signum();
    let inside = |p: Eis| {
        (0..6).all(|t| {
            let (p0, p1) = (hex[t], hex[(t + 1) % 6]);
            orient * cross(sub(p1, p0), sub(p, p0)) >= 0
        })
    };
    // Corners at center ± 1, ± ω, ± ω².
    const CORNERS: [Eis; 6] = [(1, 0), (-1, 0), (0, 1), (0, -1), (-1, -1), (1, 1)];
    let cells = bounding_box(ca, cb)
        .filter(|c| {
            let z = c.eisenstein();
            CORNERS.iter().all(|d| inside((z.0 + d.0, z.1 + d.1)))
        })
        .collect();
    Ok(Region {
        cells,
        kind: RegionKind::Benzel {
            a: ca,
            b: cb,
            requested: (a, b),
        },
    })
}

/// Triangle with `n` cells per side, anchored at the balanced bounds
/// `i ≤ ⌈n/3⌉`, `j ≤ ⌈(n-p)/2⌉`, `k ≤ n-p-q`.
pub fn triangle(n: u32) -> Result<Region> {
    if n < 2 {
        return Err(Error::ParamOutOfRange(format!(
            "triangle side must be at least 2, got {n}"
        )));
    }
    let n = n as i32;
    let p = (n + 2) / 3;
    let q = (n - p + 1) / 2;
    let r = n - p - q;
    let mut cells = Vec::with_capacity((n * (n + 1) / 2) as usize);
    for i in (p + 1 - n)..=p {
        for j in (1 - i - r)..=q {
            cells.push(Cell::new(i, j));
        }
    }
    Ok(Region {
        cells,
        kind: RegionKind::Triangle { n: n as u32 },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{BTreeSet, VecDeque};

    fn set(r: &Region) -> BTreeSet<Cell> {
        r.cells().iter().copied().collect()
    }

    #[test]
    fn smallest_benzel_is_one_stone() {
        let r = benzel(2, 2).unwrap();
        assert_eq!(
            r.cells(),
            &[Cell::new(0, 0), Cell::new(0, 1), Cell::new(1, 0)]
        );
        assert_eq!(benzel_by_hexagon_clip(2, 2).unwrap().len(), 3);
    }

    #[test]
    fn benzel_sizes() {
        assert_eq!(benzel(4, 6).unwrap().len(), 18);
        assert_eq!(benzel(9, 9).unwrap().len(), 72);
    }

    #[test]
    fn canonicalization() {
        assert_eq!(canonical_params(4, 6), (4, 6));
        assert_eq!(canonical_params(10, 3), (10, 7));
        assert_eq!(canonical_params(3, 10), (7, 10));
        let r = benzel(10, 3).unwrap();
        assert_eq!(
            r.kind(),
            RegionKind::Benzel {
                a: 10,
                b: 7,
                requested: (10, 3)
            }
        );
        assert!(matches!(benzel(2, 1), Err(Error::ParamOutOfRange(_))));
        assert!(matches!(benzel(0, 3), Err(Error::ParamOutOfRange(_))));
    }

    #[test]
    fn clip_matches_inequalities() {
        for a in 2..=12 {
            for b in 2..=12 {
                assert_eq!(
                    benzel(a, b).unwrap(),
                    benzel_by_hexagon_clip(a, b).unwrap(),
                    "({a},{b})"
                );
            }
        }
    }

    #[test]
    fn degenerate_coincidences() {
        for n in 2..=12 {
            let full = benzel(n, 2 * n).unwrap();
            assert!(full.same_cells(&benzel(n, 2 * n - 1).unwrap()));
            assert!(full.same_cells(&benzel(n, 2 * n - 2).unwrap()));
        }
    }

    #[test]
    fn neighbor_offsets() {
        let got: BTreeSet<Cell> = Cell::new(1, 0).neighbors().into_iter().collect();
        let want: BTreeSet<Cell> = [
            (0, 1, 0),
            (2, -1, 0),
            (1, -1, 1),
            (1, 1, -1),
            (0, 0, 1),
            (2, 0, -1),
        ]
        .into_iter()
        .map(|(i, j, k)| Cell::from_triple(i, j, k).unwrap())
        .collect();
        assert_eq!(got, want);
        let c = Cell::new(3, -5);
        for n in c.neighbors() {
            assert!(c.is_adjacent(n));
            assert!(n.neighbors().contains(&c));
        }
    }

    #[test]
    fn symmetries() {
        let c = Cell::new(4, -7);
        assert_eq!(c.rotate120().rotate120().rotate120(), c);
        assert_eq!(c.reflect().reflect(), c);
        for a in 2..=10 {
            for b in 2..=10 {
                let r = benzel(a, b).unwrap();
                assert_eq!(set(&r.map(Cell::rotate120)), set(&r), "rotate ({a},{b})");
                assert_eq!(
                    set(&r.map(Cell::reflect)),
                    set(&benzel(b, a).unwrap()),
                    "reflect ({a},{b})"
                );
            }
        }
        // Symmetries preserve adjacency.
        for d in NEIGHBOR_OFFSETS {
            let n = c.offset(d);
            assert!(c.rotate120().is_adjacent(n.rotate120()));
            assert!(c.reflect().is_adjacent(n.reflect()));
        }
    }

    #[test]
    fn triangles() {
        assert!(triangle(1).is_err());
        for n in 2..=20 {
            let t = triangle(n).unwrap();
            assert_eq!(t.len() as u32, n * (n + 1) / 2);
            // Connected under adjacency.
            let mut seen = BTreeSet::from([t.cells()[0]]);
            let mut queue = VecDeque::from([t.cells()[0]]);
            while let Some(c) = queue.pop_front() {
                for nb in c.neighbors() {
                    if t.contains(nb) && seen.insert(nb) {
                        queue.push_back(nb);
                    }
                }
            }
            assert_eq!(seen.len(), t.len());
        }
        assert_eq!(triangle(9).unwrap().len(), 45);
    }

    #[test]
    fn custom_rejects_duplicates() {
        let c = Cell::new(0, 0);
        assert!(matches!(
            Region::custom([c, c]),
            Err(Error::DuplicateCell(_))
        ));
        assert!(matches!(
            Cell::from_triple(1, 1, 1),
            Err(Error::ParamOutOfRange(_))
        ));
    }
}
