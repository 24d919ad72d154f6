//! 2-flips: replace two tiles by two different tiles covering the same six cells.

use std::collections::VecDeque;

use num_bigint::BigUint;
use rustc_hash::FxHashMap;

use crate::engine::{count, enumerate, Tiling};
use crate::error::{Error, Result};
use crate::grid::{Cell, Region};
use crate::tiles::{Placement, TileSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FlipMove {
    pub remove: [Placement; 2],
    pub add: [Placement; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FlipKind {
    /// Two stones of opposite orientation for two bones, or back.
    StonesForBones,
    /// A stone and a bone for a stone of the same orientation and another bone.
    StoneAndBone,
    Other,
}

impl FlipMove {
    pub fn reverse(self) -> FlipMove {
        FlipMove {
            remove: self.add,
            add: self.remove,
        }
    }

    pub fn kind(&self) -> FlipKind {
        let stones = |ps: &[Placement; 2]| ps.iter().filter(|p| p.kind.is_stone()).count();
        match (stones(&self.remove), stones(&self.add)) {
            (2, 0) | (0, 2) => FlipKind::StonesForBones,
            (1, 1) => {
                let stone =
                    |ps: &[Placement; 2]| ps.iter().find(|p| p.kind.is_stone()).unwrap().kind;
                if stone(&self.remove) == stone(&self.add) {
                    FlipKind::StoneAndBone
                } else {
                    FlipKind::Other
                }
            }
            _ => FlipKind::Other,
        }
    }
}

fn sorted_pair(a: Placement, b: Placement) -> [Placement; 2] {
    if a <= b {
        [a, b]
    } else {
        [b, a]
    }
}

/// Map each covered cell to the index of its placement, rejecting overlaps.
fn cell_owners(t: &Tiling, ts: &TileSet) -> Result<FxHashMap<Cell, usize>> {
    let mut owner = FxHashMap::default();
    for (n, p) in t.placements().iter().enumerate() {
        if !ts.allows(p.kind) {
            return Err(Error::InvalidTiling(format!(
                "{p} uses a disallowed prototile"
            )));
        }
        for c in p.cells() {
            if owner.insert(c, n).is_some() {
                return Err(Error::InvalidTiling(format!("{p} overlaps another tile")));
            }
        }
    }
    Ok(owner)
}

/// All ways to split six cells into two allowed placements.
fn partitions(cells: &[Cell; 6], ts: &TileSet) -> Vec<[Placement; 2]> {
    let first = *cells.iter().min().unwrap();
    let inside = |c: &Cell| cells.contains(c);
    let mut out = Vec::new();
    for kind in ts.kinds() {
        for (di, dj, dk) in kind.offsets() {
            let p = Placement::new(kind, first.offset((-di, -dj, -dk)));
            let pc = p.cells();
            if !pc.iter().all(inside) {
                continue;
            }
            let rest: Vec<Cell> = cells.iter().copied().filter(|c| !pc.contains(c)).collect();
            let Some(q) = Placement::from_cells([rest[0], rest[1], rest[2]]) else {
                continue;
            };
            if ts.allows(q.kind) {
                out.push(sorted_pair(p, q));
            }
        }
    }
    out
}

pub fn find_flips(t: &Tiling, ts: &TileSet) -> Result<Vec<FlipMove>> {
    let owner = cell_owners(t, ts)?;
    let ps = t.placements();
    let mut moves = Vec::new();
    for (n, p) in ps.iter().enumerate() {
        let mut partners: Vec<usize> = p
            .cells()
            .iter()
            .flat_map(|c| c.neighbors())
            .filter_map(|c| owner.get(&c).copied())
            .filter(|&m| m > n)
            .collect();
        partners.sort_unstable();
        partners.dedup();
        for m in partners {
            let q = ps[m];
            let (a, b) = (p.cells(), q.cells());
            let union = [a[0], a[1], a[2], b[0], b[1], b[2]];
            let remove = sorted_pair(*p, q);
            for add in partitions(&union, ts) {
                if add != remove {
                    moves.push(FlipMove { remove, add });
                }
            }
        }
    }
    moves.sort_unstable();
    Ok(moves)
}

pub fn apply_flip(t: &Tiling, m: &FlipMove) -> Result<Tiling> {
    let ps = t.placements();
    if !m.remove.iter().all(|r| ps.binary_search(r).is_ok()) {
        return Err(Error::MoveNotApplicable);
    }
    let mut cells_removed: Vec<Cell> = m.remove.iter().flat_map(|p| p.cells()).collect();
    let mut cells_added: Vec<Cell> = m.add.iter().flat_map(|p| p.cells()).collect();
    cells_removed.sort_unstable();
    cells_added.sort_unstable();
    if cells_removed != cells_added || m.remove == m.add {
        return Err(Error::MoveNotApplicable);
    }
    let mut out: Vec<Placement> = ps
        .iter()
        .copied()
        .filter(|p| !m.remove.contains(p))
        .collect();
    out.extend(m.add);
    Ok(Tiling::new(out))
}

/// Tilings are vertices (in ascending order), flips are edges.
#[derive(Debug, Clone)]
pub struct FlipGraph {
    pub tilings: Vec<Tiling>,
    pub adjacency: Vec<Vec<usize>>,
    pub edge_count: usize,
    pub component_count: usize,
    /// Only computed for connected graphs with at most [`DIAMETER_LIMIT`] vertices.
    pub diameter: Option<usize>,
}

pub const DIAMETER_LIMIT: usize = 2000;

impl FlipGraph {
    pub fn vertex_count(&self) -> usize {
        self.tilings.len()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count <= 1
    }
}

fn bfs(adj: &[Vec<usize>], from: usize, dist: &mut [usize]) -> usize {
    dist.fill(usize::MAX);
    dist[from] = 0;
    let mut queue = VecDeque::from([from]);
    let mut far = 0;
    while let Some(v) = queue.pop_front() {
        far = far.max(dist[v]);
        for &w in &adj[v] {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    far
}

pub fn flip_graph(region: &Region, ts: &TileSet, max_tilings: u64) -> Result<FlipGraph> {
    let total = count(region, ts)?.value;
    if total > BigUint::from(max_tilings) {
        return Err(Error::TooManyTilings {
            count: total,
            limit: max_tilings,
        });
    }
    let mut tilings = enumerate(region, ts, None)?.tilings;
    tilings.sort();
    let index: FxHashMap<&Tiling, usize> =
        tilings.iter().enumerate().map(|(n, t)| (t, n)).collect();
    let mut adjacency = vec![Vec::new(); tilings.len()];
    for (n, t) in tilings.iter().enumerate() {
        for m in find_flips(t, ts)? {
            let next = apply_flip(t, &m)?;
            let &other = index
                .get(&next)
                .expect("a flip of a tiling is a tiling of the same region");
            adjacency[n].push(other);
        }
        adjacency[n].sort_unstable();
        adjacency[n].dedup();
    }
    let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;

    let mut dist = vec![usize::MAX; tilings.len()];
    let mut component = vec![usize::MAX; tilings.len()];
    let mut component_count = 0;
    for start in 0..tilings.len() {
        if component[start] != usize::MAX {
            continue;
        }
        bfs(&adjacency, start, &mut dist);
        for (v, d) in dist.iter().enumerate() {
            if *d != usize::MAX {
                component[v] = component_count;
            }
        }
        component_count += 1;
    }
    let diameter = (component_count == 1 && tilings.len() <= DIAMETER_LIMIT).then(|| {
        (0..tilings.len())
            .map(|v| bfs(&adjacency, v, &mut dist))
            .max()
            .unwrap_or(0)
    });
    Ok(FlipGraph {
        tilings,
        adjacency,
        edge_count,
        component_count,
        diameter,
    })
}
