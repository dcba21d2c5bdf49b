mod common;

use std::collections::BTreeSet;

use common::{fixture, limits, SMALL};
use polyatlas::{run_classify, run_oracle, ClassifyOptions, Perm};

fn forms(report: &polyatlas::Report, high: bool) -> BTreeSet<Vec<Perm>> {
    report
        .catalog
        .iter()
        .filter(|t| if high { t.rank() >= 4 } else { t.rank() == 3 })
        .map(|t| t.gens().to_vec())
        .collect()
}

#[test]
fn classifier_matches_oracle_on_small_fixtures() {
    for &(name, order, rank3, high) in SMALL {
        let g = fixture(name);
        assert_eq!(g.order(), order, "{name}");
        let fast = run_classify(&g, name, ClassifyOptions::default()).unwrap();
        let slow = run_oracle(&g, name, 3, None, limits()).unwrap();
        assert_eq!(forms(&fast, false), forms(&slow, false), "{name}: rank 3");
        assert_eq!(forms(&fast, true), forms(&slow, true), "{name}: rank >= 4");
        assert_eq!((fast.count_rank(3), fast.count_high()), (rank3, high), "{name}: counts");
    }
}

#[test]
fn schlafli_types_of_small_catalogs() {
    let types = |name: &str| -> Vec<Vec<u64>> {
        let g = fixture(name);
        let r = run_classify(&g, name, ClassifyOptions::default()).unwrap();
        let mut v: Vec<Vec<u64>> = r
            .catalog
            .iter()
            .map(|t| t.schlafli().min(t.schlafli().reversed()).0)
            .collect();
        v.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        v
    };
    assert_eq!(types("s4"), vec![vec![3, 3], vec![3, 4]]);
    assert_eq!(types("a5"), vec![vec![3, 5], vec![5, 5]]);
    assert_eq!(types("s5"), vec![vec![4, 5], vec![4, 6], vec![5, 6], vec![6, 6], vec![3, 3, 3]]);
    assert_eq!(types("c2c2c2"), vec![vec![2, 2]]);
    assert_eq!(
        types("s6"),
        vec![
            vec![5, 6],
            vec![6, 6],
            vec![3, 4, 4],
            vec![3, 6, 4],
            vec![4, 4, 4],
            vec![4, 6, 4],
            vec![3, 3, 3, 3],
        ]
    );
}

#[test]
fn oracle_rank_two() {
    let g = fixture("d8");
    let r = run_oracle(&g, "d8", 2, None, limits()).unwrap();
    assert_eq!(r.count_rank(2), 1);
    assert_eq!(r.catalog[0].schlafli().0, vec![4]);
}

#[test]
fn catalog_entries_verify() {
    for name in ["s5", "s4xc2"] {
        let g = fixture(name);
        let r = run_classify(&g, name, ClassifyOptions::default()).unwrap();
        for e in r.entries().unwrap() {
            assert!(e.verify(&g, limits()).unwrap(), "{name}: {e:?}");
        }
    }
}
