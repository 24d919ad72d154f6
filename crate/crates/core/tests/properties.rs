use benzel_core::engine::{cl_statistic, count_with, enumerate, CountOptions, EngineKind};
use benzel_core::theory::{area, cl_invariant};
use benzel_core::{benzel, canonical_params, count, Cell, Region, TileSet};
use num_bigint::BigUint;
use proptest::prelude::*;

fn canonical() -> impl Strategy<Value = (u32, u32)> {
    (2u32..=40, 2u32..=40).prop_filter("canonical", |&(a, b)| canonical_params(a, b) == (a, b))
}

fn code() -> impl Strategy<Value = (u8, u8, u8)> {
    (0u8..=1, 0u8..=1, 0u8..=3).prop_filter("nonempty", |c| *c != (0, 0, 0))
}

proptest! {
    #[test]
    fn tile_codes_round_trip((i, j, k) in code(), w in 1u64..50) {
        let ts = TileSet::from_code(i, j, k).unwrap().with_stone_weight(w).unwrap();
        let text = ts.to_string();
        let back: TileSet = text.parse().unwrap();
        prop_assert_eq!(back, ts);
        prop_assert_eq!(back.code(), (i, j, k));
    }

    #[test]
    fn benzel_symmetries((a, b) in canonical()) {
        let r = benzel(a, b).unwrap();
        prop_assert_eq!(r.len() as i64, area(a, b));
        prop_assert!(r.map(Cell::rotate120).same_cells(&r));
        prop_assert!(r.map(Cell::reflect).same_cells(&benzel(b, a).unwrap()));
    }

    #[test]
    fn custom_regions_sort_and_reject_duplicates((a, b) in canonical(), seed in any::<u64>()) {
        let r = benzel(a, b).unwrap();
        let mut cells = r.cells().to_vec();
        let n = cells.len();
        for t in 0..n {
            let s = (seed.wrapping_mul(t as u64 + 1) % n as u64) as usize;
            cells.swap(t, s);
        }
        prop_assert!(Region::custom(cells.clone()).unwrap().same_cells(&r));
        cells.push(cells[seed as usize % n]);
        prop_assert!(Region::custom(cells).is_err());
    }

    #[test]
    fn weighted_count_is_stone_generating_function(
        (a, b) in (2u32..=6, 2u32..=6).prop_filter("canonical", |&(a, b)| canonical_params(a, b) == (a, b)),
        (i, j, k) in code(),
        w in 1u64..6,
    ) {
        let r = benzel(a, b).unwrap();
        let ts = TileSet::from_code(i, j, k).unwrap();
        let by_hand: BigUint = enumerate(&r, &ts, None)
            .unwrap()
            .tilings
            .iter()
            .map(|t| BigUint::from(w).pow(t.stone_count() as u32))
            .sum();
        let weighted = ts.with_stone_weight(w).unwrap();
        prop_assert_eq!(&count(&r, &weighted).unwrap().value, &by_hand);
        let plain = count_with(&r, &weighted, CountOptions::with_engine(EngineKind::Plain)).unwrap();
        prop_assert_eq!(plain.value, by_hand);
    }

    #[test]
    fn enumerated_tilings_are_valid(
        (a, b) in (2u32..=7, 2u32..=7).prop_filter("canonical", |&(a, b)| canonical_params(a, b) == (a, b)),
        (i, j, k) in code(),
    ) {
        let r = benzel(a, b).unwrap();
        let ts = TileSet::from_code(i, j, k).unwrap();
        let e = enumerate(&r, &ts, Some(200)).unwrap();
        for t in &e.tilings {
            t.validate(&r, &ts).unwrap();
            prop_assert_eq!(cl_statistic(t), cl_invariant(a, b));
        }
        if !e.truncated {
            prop_assert_eq!(count(&r, &ts).unwrap().value, BigUint::from(e.tilings.len()));
        }
    }
}
