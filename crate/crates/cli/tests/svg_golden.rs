use std::fs;
use std::path::PathBuf;

use benzel_cli::svg::{render_region, render_tiling, RIGHT_STONE_FILL};
use benzel_core::engine::enumerate;
use benzel_core::theory::tile_count;
use benzel_core::{benzel, triangle, Region};

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures/golden")
        .join(name);
    fs::read_to_string(path).unwrap()
}

fn nth_tiling_svg(r: &Region, code: &str, n: usize) -> String {
    let ts = code.parse().unwrap();
    let t = enumerate(r, &ts, Some(n + 1)).unwrap().tilings.remove(n);
    render_tiling(r, &t)
}

#[test]
fn regions_match_goldens() {
    assert_eq!(
        render_region(&benzel(3, 3).unwrap()),
        golden("region_3_3.svg")
    );
    assert_eq!(
        render_region(&triangle(4).unwrap()),
        golden("region_triangle_4.svg")
    );
}

#[test]
fn tilings_match_goldens() {
    let r = benzel(4, 6).unwrap();
    let svg = nth_tiling_svg(&r, "113", 0);
    assert_eq!(svg, golden("tiling_4_6_113_0.svg"));
    assert_eq!(svg.matches(RIGHT_STONE_FILL).count(), 18);
    assert_eq!(
        nth_tiling_svg(&benzel(5, 5).unwrap(), "113", 0),
        golden("tiling_5_5_113_0.svg")
    );
}

#[test]
fn repeated_rendering_is_identical() {
    let r = benzel(9, 9).unwrap();
    let first = nth_tiling_svg(&r, "113", 0);
    assert_eq!(first, nth_tiling_svg(&r, "113", 0));
    assert_eq!(r.len() as i64, 3 * tile_count(9, 9));
    assert_eq!(first.matches("<polygon").count(), r.len() + 1);
}
