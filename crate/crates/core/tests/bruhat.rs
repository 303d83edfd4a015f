use std::collections::BTreeSet;

use weyl_core::checks::{run_checks, CheckOptions};
use weyl_core::fixtures;
use weyl_core::WeylGroupoid;

/// Labels of the 40 elements of `Hom(→a)`, level by level, as drawn in the
/// Hasse diagram of the example: canonical word, then `^source`.
const LABELS_AT_A: [&[&str]; 9] = [
    &["id^a"],
    &["2^a", "1^b", "3^a"],
    &["21^b", "23^a", "12^c", "13^b", "32^a"],
    &["121^c", "213^b", "232^a", "123^d", "323^a", "132^c", "321^b"],
    &["1213^d", "2132^c", "2321^b", "2323^a", "1231^e", "1232^d", "3213^b", "1321^c"],
    &["12132^d", "12131^e", "21321^c", "23213^b", "12312^e", "32132^c", "13213^d"],
    &["121312^e", "213213^d", "232132^c", "123123^e", "132132^d"],
    &["1213123^e", "2132132^d", "1231232^e"],
    &["12131232^e"],
];

fn parse_label(g: &WeylGroupoid, label: &str) -> (Vec<usize>, usize) {
    let (word, source) = label.split_once('^').unwrap();
    let source = g.scheme().object_index(source).unwrap();
    if word == "id" {
        return (Vec::new(), source);
    }
    let word = word.chars().map(|c| c.to_digit(10).unwrap() as usize - 1).collect();
    (word, source)
}

#[test]
fn drawn_labels_are_exactly_hom_into_a() {
    let g = WeylGroupoid::new(fixtures::bruhat()).unwrap();
    let a = g.scheme().object_index("a").unwrap();
    let hom = g.enumerate_hom_to(a);
    let mut seen = BTreeSet::new();
    for (level, labels) in LABELS_AT_A.iter().enumerate() {
        for label in labels.iter() {
            let (word, source) = parse_label(&g, label);
            let w = g.from_word(&word, source).unwrap();
            assert_eq!(w.target(), a, "{label}");
            assert_eq!(w.length(), level, "{label}");
            assert_eq!(g.label(&w), *label);
            assert!(hom.index_of(&w).is_some());
            assert!(seen.insert(label.to_string()));
        }
    }
    assert_eq!(seen.len(), hom.len());
}

#[test]
fn full_suite_passes_on_every_object() {
    let g = WeylGroupoid::new(fixtures::bruhat()).unwrap();
    let suite = run_checks(&g, CheckOptions::default());
    let failed: Vec<_> = suite.failed().collect();
    assert!(failed.is_empty(), "{failed:#?}");
    assert_eq!(suite.all_named("order.meet").count(), 5);
}
