//! Deterministic SVG 1.1 drawings of regions and tilings.
//!
//! Cells are hexagons of circumradius 1 with vertices at the sixth roots of
//! unity around the cell center; screen `y` is minus the imaginary part.
//! The palette, stroke widths and number formatting are fixed so output is
//! byte-stable.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt::Write;

use benzel_core::grid::{clip_hexagon, RegionKind};
use benzel_core::{Cell, PrototileKind, Region, Tiling};

pub const RIGHT_STONE_FILL: &str = "#e4572e";
pub const LEFT_STONE_FILL: &str = "#29335c";
pub const VERTICAL_BONE_FILL: &str = "#f3a712";
pub const RISING_BONE_FILL: &str = "#669bbc";
pub const FALLING_BONE_FILL: &str = "#a8c686";
pub const EMPTY_FILL: &str = "#f2f2f2";
pub const OUTLINE_COLOR: &str = "#000000";
pub const CELL_STROKE: f64 = 0.04;
pub const TILE_STROKE: f64 = 0.16;
pub const HEXAGON_STROKE: f64 = 0.08;
/// Pixels per unit of length in the `width`/`height` attributes.
pub const SCALE: f64 = 16.0;
const MARGIN: f64 = 0.5;

pub fn fill(kind: PrototileKind) -> &'static str {
    match kind {
        PrototileKind::RightStone => RIGHT_STONE_FILL,
        PrototileKind::LeftStone => LEFT_STONE_FILL,
        PrototileKind::VerticalBone => VERTICAL_BONE_FILL,
        PrototileKind::RisingBone => RISING_BONE_FILL,
        PrototileKind::FallingBone => FALLING_BONE_FILL,
    }
}

/// Three decimals, with negative zero printed as zero.
fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".to_string()
    } else {
        s
    }
}

type Pt = (f64, f64);

fn screen((x, y): Pt) -> Pt {
    (x, -y)
}

fn vertex(c: Cell, m: usize) -> Pt {
    let (x, y) = c.center();
    let t = PI / 3.0 * m as f64;
    screen((x + t.cos(), y + t.sin()))
}

fn hexagon_points(c: Cell) -> String {
    (0..6)
        .map(|m| {
            let (x, y) = vertex(c, m);
            format!("{},{}", num(x), num(y))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn eisenstein_point((x, y): (i64, i64)) -> Pt {
    let (x, y) = (x as f64, y as f64);
    screen((x - y / 2.0, y * 3f64.sqrt() / 2.0))
}

/// Edge `m` joins vertices `m` and `m + 1`; returns the neighbor across it.
fn across(c: Cell, m: usize) -> Cell {
    let (cx, cy) = c.center();
    let want = PI / 6.0 + PI / 3.0 * m as f64;
    *c.neighbors()
        .iter()
        .min_by(|p, q| {
            let d = |n: &Cell| {
                let (x, y) = n.center();
                let a = (y - cy).atan2(x - cx) - want;
                a.sin().abs() + (1.0 - a.cos())
            };
            d(p).total_cmp(&d(q))
        })
        .unwrap()
}

struct Canvas {
    body: String,
    min: Pt,
    max: Pt,
}

impl Canvas {
    fn new(region: &Region) -> Canvas {
        let mut min = (f64::INFINITY, f64::INFINITY);
        let mut max = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        let mut grow = |(x, y): Pt| {
            min = (min.0.min(x), min.1.min(y));
            max = (max.0.max(x), max.1.max(y));
        };
        for &c in region.cells() {
            (0..6).for_each(|m| grow(vertex(c, m)));
        }
        if let Some(hex) = outline(region) {
            hex.iter().for_each(|&p| grow(p));
        }
        if region.is_empty() {
            grow((0.0, 0.0));
        }
        Canvas {
            body: String::new(),
            min: (min.0 - MARGIN, min.1 - MARGIN),
            max: (max.0 + MARGIN, max.1 + MARGIN),
        }
    }

    fn finish(self) -> String {
        let (w, h) = (self.max.0 - self.min.0, self.max.1 - self.min.1);
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
             <svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
             width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">\n{}</svg>\n",
            num(w * SCALE),
            num(h * SCALE),
            num(self.min.0),
            num(self.min.1),
            num(w),
            num(h),
            self.body
        )
    }
}

fn outline(region: &Region) -> Option<[Pt; 6]> {
    match region.kind() {
        RegionKind::Benzel { a, b, .. } => {
            Some(clip_hexagon(a as i64, b as i64).map(eisenstein_point))
        }
        _ => None,
    }
}

fn draw_outline(canvas: &mut Canvas, region: &Region) {
    if let Some(hex) = outline(region) {
        let pts: Vec<String> = hex
            .iter()
            .map(|&(x, y)| format!("{},{}", num(x), num(y)))
            .collect();
        writeln!(
            canvas.body,
            "<polygon points=\"{}\" fill=\"none\" stroke=\"{OUTLINE_COLOR}\" stroke-width=\"{}\"/>",
            pts.join(" "),
            num(HEXAGON_STROKE)
        )
        .unwrap();
    }
}

fn draw_cells(canvas: &mut Canvas, cells: impl Iterator<Item = (Cell, &'static str)>) {
    writeln!(
        canvas.body,
        "<g stroke=\"{OUTLINE_COLOR}\" stroke-width=\"{}\">",
        num(CELL_STROKE)
    )
    .unwrap();
    for (c, color) in cells {
        writeln!(
            canvas.body,
            "<polygon points=\"{}\" fill=\"{color}\"/>",
            hexagon_points(c)
        )
        .unwrap();
    }
    canvas.body.push_str("</g>\n");
}

/// The region's cells, plus the enclosing hexagon for benzels.
pub fn render_region(region: &Region) -> String {
    let mut canvas = Canvas::new(region);
    draw_cells(&mut canvas, region.cells().iter().map(|&c| (c, EMPTY_FILL)));
    draw_outline(&mut canvas, region);
    canvas.finish()
}

/// Cells filled by prototile kind, with heavier strokes along tile boundaries.
pub fn render_tiling(region: &Region, tiling: &Tiling) -> String {
    let mut owner: HashMap<Cell, (usize, PrototileKind)> = HashMap::new();
    for (n, p) in tiling.placements().iter().enumerate() {
        for c in p.cells() {
            owner.insert(c, (n, p.kind));
        }
    }
    let mut canvas = Canvas::new(region);
    draw_cells(
        &mut canvas,
        region
            .cells()
            .iter()
            .map(|&c| (c, owner.get(&c).map_or(EMPTY_FILL, |&(_, k)| fill(k)))),
    );
    let mut path = String::new();
    for &c in region.cells() {
        let mine = owner.get(&c).map(|o| o.0);
        for m in 0..6 {
            let n = across(c, m);
            let theirs = owner.get(&n).map(|o| o.0);
            // Interior edges are drawn once, from the lesser cell.
            let boundary = mine != theirs || mine.is_none();
            if !boundary || (region.contains(n) && n < c) {
                continue;
            }
            let (x0, y0) = vertex(c, m);
            let (x1, y1) = vertex(c, (m + 1) % 6);
            write!(path, "M{} {}L{} {}", num(x0), num(y0), num(x1), num(y1)).unwrap();
        }
    }
    writeln!(
        canvas.body,
        "<path d=\"{path}\" fill=\"none\" stroke=\"{OUTLINE_COLOR}\" stroke-width=\"{}\" stroke-linecap=\"round\"/>",
        num(TILE_STROKE)
    )
    .unwrap();
    draw_outline(&mut canvas, region);
    canvas.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use benzel_core::{benzel, enumerate};

    #[test]
    fn neighbor_across_each_edge() {
        let c = Cell::new(0, 0);
        let mut seen: Vec<Cell> = (0..6).map(|m| across(c, m)).collect();
        seen.sort();
        let mut all = c.neighbors().to_vec();
        all.sort();
        assert_eq!(seen, all);
        for m in 0..6 {
            let n = across(c, m);
            let (a, b) = (vertex(c, m), vertex(c, (m + 1) % 6));
            let shared = (0..6).filter(|&k| {
                let v = vertex(n, k);
                (v.0 - a.0).hypot(v.1 - a.1) < 1e-9 || (v.0 - b.0).hypot(v.1 - b.1) < 1e-9
            });
            assert_eq!(shared.count(), 2);
        }
    }

    #[test]
    fn benzel_cells_lie_inside_outline() {
        let r = benzel(4, 6).unwrap();
        let hex = outline(&r).unwrap();
        let area2: f64 = (0..6)
            .map(|t| hex[t].0 * hex[(t + 1) % 6].1 - hex[t].1 * hex[(t + 1) % 6].0)
            .sum();
        for &c in r.cells() {
            for m in 0..6 {
                let p = vertex(c, m);
                for t in 0..6 {
                    let (u, v) = (hex[t], hex[(t + 1) % 6]);
                    let cross = (v.0 - u.0) * (p.1 - u.1) - (v.1 - u.1) * (p.0 - u.0);
                    assert!(cross * area2.signum() >= -1e-9);
                }
            }
        }
    }

    #[test]
    fn tiling_render_counts() {
        let r = benzel(4, 6).unwrap();
        let t = enumerate(&r, &"113".parse().unwrap(), Some(1))
            .unwrap()
            .tilings
            .remove(0);
        let svg = render_tiling(&r, &t);
        assert_eq!(t.len(), 6);
        assert_eq!(svg.matches(RIGHT_STONE_FILL).count(), 18);
        assert_eq!(svg, render_tiling(&r, &t));
        assert!(!svg.contains("-0.000"));
    }
}
