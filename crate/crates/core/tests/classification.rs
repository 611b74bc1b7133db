use std::collections::BTreeSet;

use isotile::classify::{assert_theorems, classified_size, count_row, SymmetryReport, WallpaperType};
use isotile::enumerate::{EnumerateOptions, MarkedTile};
use isotile::group::GroupKind;
use isotile::lattice::{cells_touching_point, Cell, LatticeKind, ScaledPoint};

fn classified(kind: GroupKind, n: u64) -> Vec<(MarkedTile, SymmetryReport)> {
    let (tiles, reports) = classified_size(kind, n, &EnumerateOptions::default()).unwrap();
    tiles.into_iter().zip(reports).collect()
}

fn non_fundamental(kind: GroupKind, n: u64) -> Vec<(MarkedTile, SymmetryReport)> {
    classified(kind, n).into_iter().filter(|(_, r)| !r.is_fundamental).collect()
}

fn square_block(k: i64) -> BTreeSet<Cell> {
    (0..k).flat_map(|a| (0..k).map(move |b| Cell::square(a, b))).collect()
}

fn normalized(cells: &BTreeSet<Cell>) -> BTreeSet<(i64, i64)> {
    let a0 = cells.iter().map(|c| c.a).min().unwrap();
    let b0 = cells.iter().map(|c| c.b).min().unwrap();
    cells.iter().map(|c| (c.a - a0, c.b - b0)).collect()
}

#[test]
fn p4_named_tilings() {
    let one = classified(GroupKind::P4, 1);
    assert_eq!(one[0].1.full_kind, WallpaperType::P4m);
    let two = classified(GroupKind::P4, 2);
    assert_eq!(two[0].1.full_kind, WallpaperType::P4g);
    let four = non_fundamental(GroupKind::P4, 4);
    assert_eq!(four.len(), 1);
    assert_eq!(four[0].1.full_kind, WallpaperType::P4m);
    assert_eq!(normalized(&four[0].0.cells), normalized(&square_block(2)));
}

#[test]
fn p3_named_tilings() {
    assert_eq!(classified(GroupKind::P3, 2)[0].1.full_kind, WallpaperType::P6m);

    let hexagon: BTreeSet<Cell> = cells_touching_point(ScaledPoint::ORIGIN, LatticeKind::Triangular).unwrap().into_iter().collect();
    let six = non_fundamental(GroupKind::P3, 6);
    assert_eq!(six.len(), 3);
    let hex: Vec<_> = six
        .iter()
        .filter(|(t, _)| t.shape_signature() == MarkedTile { cells: hexagon.clone(), centers: vec![], ..t.clone() }.shape_signature())
        .collect();
    assert_eq!(hex.len(), 1);
    assert_eq!(hex[0].1.full_kind, WallpaperType::P6m);
    let kinds: BTreeSet<_> = six.iter().map(|(_, r)| r.full_kind).collect();
    assert_eq!(kinds, BTreeSet::from([WallpaperType::P6m, WallpaperType::P6, WallpaperType::P31m]));

    let eight = non_fundamental(GroupKind::P3, 8);
    assert_eq!(eight.len(), 1);
    assert_eq!(eight[0].1.full_kind, WallpaperType::P6m);
}

#[test]
fn p6_named_tilings() {
    assert_eq!(classified(GroupKind::P6, 1)[0].1.full_kind, WallpaperType::P6m);
    let four = non_fundamental(GroupKind::P6, 4);
    assert_eq!(four.len(), 1);
    assert_eq!(four[0].1.full_kind, WallpaperType::P6m);
    let seven = non_fundamental(GroupKind::P6, 7);
    assert_eq!(seven.len(), 1);
    let r = &seven[0].1;
    assert_eq!(r.full_kind, WallpaperType::P6);
    assert!(r.index > 1);
    assert!(r.new_centers.iter().any(|c| c.order == 3));
}

#[test]
fn p4g_only_the_square_is_special() {
    for (n, k) in [(1, 1), (4, 2), (9, 3)] {
        let special = non_fundamental(GroupKind::P4G, n);
        assert_eq!(special.len(), 1, "n={n}");
        assert_eq!(normalized(&special[0].0.cells), normalized(&square_block(k)));
        assert_eq!(special[0].1.full_kind, WallpaperType::P4m);
    }
}

#[test]
fn p31m_is_always_its_own_full_group() {
    for n in [3, 12] {
        for (_, r) in classified(GroupKind::P31M, n) {
            assert_eq!(r.full_kind, WallpaperType::P31m);
            assert_eq!(r.index, 1);
        }
    }
}

#[test]
fn theorem_checks_catch_a_bad_report() {
    let (tiles, mut reports) = classified_size(GroupKind::P31M, 3, &EnumerateOptions::default()).unwrap();
    assert!(assert_theorems(GroupKind::P31M, &tiles, &reports).iter().all(|c| c.passed));
    reports[0].index = 2;
    reports[0].is_fundamental = false;
    let failed: Vec<_> = assert_theorems(GroupKind::P31M, &tiles, &reports).into_iter().filter(|c| !c.passed).collect();
    assert!(!failed.is_empty());
    assert!(failed[0].detail.contains("tile"));
}

#[test]
fn special_groups() {
    for n in 1..=16 {
        for kind in [GroupKind::P4M, GroupKind::P6M] {
            let row = count_row(kind, n, &EnumerateOptions::default()).unwrap();
            assert_eq!((row.tiles, row.full, row.shapes, row.full_shapes), (0, 0, 0, 0));
        }
        let row = count_row(GroupKind::P3M1, n, &EnumerateOptions::default()).unwrap();
        let k = (n as f64).sqrt() as u64;
        let want = if k * k == n { (1, 0, 1, 0) } else { (0, 0, 0, 0) };
        assert_eq!((row.tiles, row.full, row.shapes, row.full_shapes), want, "p3m1 n={n}");
    }
}
