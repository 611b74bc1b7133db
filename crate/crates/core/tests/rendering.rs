use std::collections::BTreeSet;

use isotile::classify::{full_symmetry_group, generate_torus_tiling};
use isotile::enumerate::{enumerate_size, enumerate_tiles, EnumerateOptions};
use isotile::group::{admissible_sizes, build_group, GroupKind, GroupParams};
use isotile::report::{render_tile_svg, render_tiling_svg, RenderStyle};

const GOLDEN_SQUARE: &str = include_str!("golden/p4_n1_tile.svg");
const GOLDEN_RHOMBUS_TILING: &str = include_str!("golden/p3_n2_tiling.svg");

#[test]
fn unit_square_matches_golden() {
    let g = build_group(GroupKind::P4, GroupParams::new(1, 1)).unwrap();
    let t = &enumerate_tiles(&g, &EnumerateOptions::default()).unwrap()[0];
    assert_eq!(render_tile_svg(t, &RenderStyle::default()).unwrap(), GOLDEN_SQUARE);
}

#[test]
fn rhombus_tiling_matches_golden() {
    let g = build_group(GroupKind::P3, GroupParams::new(1, 0)).unwrap();
    let t = &enumerate_tiles(&g, &EnumerateOptions::default()).unwrap()[0];
    let tt = generate_torus_tiling(t, &g).unwrap();
    let r = full_symmetry_group(&tt).unwrap();
    let style = RenderStyle { show_axes: true, ..RenderStyle::default() };
    assert_eq!(render_tiling_svg(&tt, Some(&r), &style).unwrap(), GOLDEN_RHOMBUS_TILING);
}

#[test]
fn outlines_are_simple_loops() {
    for kind in [GroupKind::P4, GroupKind::P4G, GroupKind::P3, GroupKind::P31M, GroupKind::P6] {
        for e in admissible_sizes(kind, 9) {
            for t in enumerate_size(kind, e.n, &EnumerateOptions::default()).unwrap() {
                let outline = t.boundary_loop();
                let distinct: BTreeSet<_> = outline.iter().collect();
                assert_eq!(distinct.len(), outline.len(), "{kind} {:?}", t.cells);
                let svg = render_tile_svg(&t, &RenderStyle::default()).unwrap();
                assert_eq!(svg.matches("<path").count(), 1);
                assert_eq!(svg.matches("<circle").count(), t.centers.len());
            }
        }
    }
}
