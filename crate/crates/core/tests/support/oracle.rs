//! Brute-force reference enumeration: grow every edge-connected cell set
//! containing an origin cell, then filter. Orbits come from union-find
//! over generator moves inside a large window, not from the coset table.

use std::collections::{BTreeMap, BTreeSet};

use isotile::enumerate::{attach_centers, TileSignature};
use isotile::group::WallpaperGroup;
use isotile::isometry::apply_to_cell;
use isotile::lattice::{cells_touching_point, edge_neighbors, Cell, LatticeKind, ScaledPoint};

struct Orbits {
    parent: BTreeMap<Cell, Cell>,
}

impl Orbits {
    fn find(&mut self, c: Cell) -> Cell {
        let p = self.parent[&c];
        if p == c {
            return c;
        }
        let root = self.find(p);
        self.parent.insert(c, root);
        root
    }

    fn union(&mut self, a: Cell, b: Cell) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent.insert(ra.max(rb), ra.min(rb));
        }
    }
}

fn window(lat: LatticeKind, r: i64) -> Vec<Cell> {
    let mut out = Vec::new();
    for a in -r..=r {
        for b in -r..=r {
            match lat {
                LatticeKind::Square => out.push(Cell::square(a, b)),
                LatticeKind::Triangular => {
                    out.push(Cell::up(a, b));
                    out.push(Cell::down(a, b));
                }
            }
        }
    }
    out
}

fn orbits(group: &WallpaperGroup, r: i64) -> Orbits {
    let cells = window(group.lattice, r);
    let inside: BTreeSet<Cell> = cells.iter().copied().collect();
    let mut o = Orbits { parent: cells.iter().map(|&c| (c, c)).collect() };
    for &c in &cells {
        for g in &group.generators {
            let img = apply_to_cell(g, &c).expect("generators map cells");
            if inside.contains(&img) {
                o.union(c, img);
            }
        }
    }
    o
}

/// All edge-connected `n`-cell sets containing an origin cell.
pub fn connected_sets(lat: LatticeKind, n: usize) -> BTreeSet<BTreeSet<Cell>> {
    let mut layer: BTreeSet<BTreeSet<Cell>> =
        cells_touching_point(ScaledPoint::ORIGIN, lat).unwrap().into_iter().map(|c| BTreeSet::from([c])).collect();
    for _ in 1..n {
        let mut next = BTreeSet::new();
        for set in &layer {
            for c in set {
                for d in edge_neighbors(c) {
                    if !set.contains(&d) {
                        let mut grown = set.clone();
                        grown.insert(d);
                        next.insert(grown);
                    }
                }
            }
        }
        layer = next;
    }
    layer
}

fn touches(cells: &BTreeSet<Cell>, p: ScaledPoint, lat: LatticeKind) -> bool {
    cells_touching_point(p, lat).unwrap().iter().any(|c| cells.contains(c))
}

/// Signatures of every tile for a two-center group, found by brute force.
pub fn brute_force(group: &WallpaperGroup) -> BTreeSet<TileSignature> {
    let n = group.n as usize;
    let lat = group.lattice;
    let mut orbit = orbits(group, 4 * n as i64 + 8);
    let white = group.white.expect("two-center group");
    connected_sets(lat, n)
        .into_iter()
        .filter(|set| {
            let roots: BTreeSet<Cell> = set.iter().map(|&c| orbit.find(c)).collect();
            roots.len() == n && touches(set, white, lat)
        })
        .map(|set| attach_centers(&set, group).signature())
        .collect()
}
