use benzel_cli::oeis::{compare, parse_bfile, Source};
use num_bigint::BigInt;
use proptest::prelude::*;

#[test]
fn accepts_the_grammar() {
    let text = "# A999999 comment\n#another\n\n5 -3\n6\t12345678901234567890123\n  7   0  \n";
    let s = parse_bfile("A999999", text, Source::Fixture).unwrap();
    assert_eq!(s.first_index, 5);
    assert_eq!(s.terms.len(), 3);
    assert_eq!(s.term(5), Some(&BigInt::from(-3)));
    assert_eq!(s.term(7), Some(&BigInt::from(0)));
    assert_eq!(s.term(4), None);
    assert_eq!(s.term(8), None);
}

#[test]
fn rejects_malformed_lines() {
    for bad in [
        "1 2\n3 4\n",
        "1\n",
        "1 2 3\n",
        "x 2\n",
        "1 2.5\n",
        "2 1\n1 1\n",
    ] {
        assert!(
            parse_bfile("A000001", bad, Source::Fixture).is_err(),
            "{bad:?}"
        );
    }
    assert!(parse_bfile("A000001", "# only comments\n", Source::Fixture)
        .unwrap()
        .terms
        .is_empty());
}

proptest! {
    #[test]
    fn write_then_parse(first in -5i64..100, terms in prop::collection::vec(any::<i64>(), 0..40)) {
        let text: String = terms
            .iter()
            .enumerate()
            .map(|(n, t)| format!("{} {t}\n", first + n as i64))
            .collect();
        let s = parse_bfile("A000001", &format!("# header\n{text}"), Source::Network).unwrap();
        let want: Vec<BigInt> = terms.iter().map(|&t| BigInt::from(t)).collect();
        prop_assert_eq!(&s.terms, &want);
        if !terms.is_empty() {
            prop_assert_eq!(s.first_index, first);
            let values: Vec<(i64, BigInt)> = s.indexed().map(|(i, v)| (i, v.clone())).collect();
            prop_assert!(compare(&s, &values).agrees());
        }
    }
}
