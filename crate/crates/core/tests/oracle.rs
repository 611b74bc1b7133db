mod support;

use std::collections::BTreeSet;

use isotile::enumerate::{enumerate_size, enumerate_tiles, EnumerateOptions, TileSignature};
use isotile::group::{admissible_sizes, build_group, GroupKind};
use isotile::lattice::LatticeKind;

use support::oracle::{brute_force, connected_sets};

fn check(kind: GroupKind, max_n: u64) {
    for entry in admissible_sizes(kind, max_n) {
        let mut want = BTreeSet::new();
        for &p in &entry.params {
            let g = build_group(kind, p).unwrap();
            let oracle = brute_force(&g);
            assert!(!oracle.is_empty(), "{kind} {p}");
            let got: BTreeSet<TileSignature> =
                enumerate_tiles(&g, &EnumerateOptions::default()).unwrap().iter().map(|t| t.signature()).collect();
            assert_eq!(got, oracle, "{kind} {p} n={}", entry.n);
            want.extend(oracle);
        }
        let merged: BTreeSet<TileSignature> =
            enumerate_size(kind, entry.n, &EnumerateOptions::default()).unwrap().iter().map(|t| t.signature()).collect();
        assert_eq!(merged, want, "{kind} n={}", entry.n);
    }
}

#[test]
fn p4_matches_brute_force() {
    check(GroupKind::P4, 5);
}

#[test]
fn p3_matches_brute_force() {
    check(GroupKind::P3, 8);
}

#[test]
fn p6_matches_brute_force() {
    check(GroupKind::P6, 4);
}

#[test]
fn connected_set_counts() {
    // 4 dominoes inside the 2x2 block around the origin, 8 sticking out
    assert_eq!(connected_sets(LatticeKind::Square, 2).len(), 12);
    assert_eq!(connected_sets(LatticeKind::Triangular, 1).len(), 6);
}
