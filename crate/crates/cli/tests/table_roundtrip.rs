use benzel_cli::table::{band, compute, parse, render};
use benzel_cli::Counter;
use benzel_core::{benzel, count, TileSet};

fn check(code: &str, max: u32) {
    let ts: TileSet = code.parse().unwrap();
    let counter = Counter::uncached();
    let entries = compute(&counter, &ts, max, 2).unwrap();
    let parsed = parse(&render(&entries, max)).unwrap();
    assert_eq!(parsed.len(), band(max).len());
    for (&(a, b), v) in &parsed {
        let direct = count(&benzel(a, b).unwrap(), &ts).unwrap().value;
        assert_eq!(v.as_ref(), Some(&direct), "T_{code}({a},{b})");
    }
}

#[test]
fn parsed_tables_equal_engine_counts() {
    check("113", 9);
    check("112;3", 8);
    check("003", 8);
    check("110", 6);
}

#[test]
fn stones_only_give_at_most_one_tiling() {
    let ts: TileSet = "110".parse().unwrap();
    let entries = compute(&Counter::uncached(), &ts, 6, 1).unwrap();
    assert!(entries
        .values()
        .all(|v| v.as_ref().is_some_and(|v| *v <= 1u32.into())));
}
