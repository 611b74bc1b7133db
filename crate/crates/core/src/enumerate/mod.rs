//! Enumeration of fundamental-domain tiles for a placed group.

mod search;
pub mod tile;

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{GroupKind, GroupParams, WallpaperGroup};
use crate::lattice::{self, Cell, ScaledPoint};

pub use search::CandidateOrder;
use search::{SearchSpace, Searcher, Subproblem};
pub use tile::{attach_centers, congruence_classes, tiles_from_json, tiles_to_json, Center, MarkedTile, TileRecord, TileSignature};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerateOptions {
    /// Worker threads; 0 picks the rayon default.
    pub workers: usize,
    /// Depth at which the search is cut into independent pieces.
    pub split_depth: usize,
    pub order: CandidateOrder,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { workers: 1, split_depth: 4, order: CandidateOrder::Lexicographic }
    }
}

/// A partial tile for step-by-step use; the bulk search works on a dense
/// index instead.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialTile {
    pub cells: BTreeSet<Cell>,
}

impl PartialTile {
    pub fn new() -> Self {
        PartialTile { cells: BTreeSet::new() }
    }

    pub fn with(&self, c: Cell) -> Self {
        let mut cells = self.cells.clone();
        cells.insert(c);
        PartialTile { cells }
    }
}

impl Default for PartialTile {
    fn default() -> Self {
        Self::new()
    }
}

/// Cells that may extend `t`: edge neighbors (or, for the empty tile, the
/// cells at the origin) that lie in the group's region and whose orbit is
/// not yet used.
pub fn boundary_candidates(t: &PartialTile, group: &WallpaperGroup) -> BTreeSet<Cell> {
    let used: BTreeSet<_> = t.cells.iter().map(|c| group.orbit_label(c)).collect();
    let raw: Vec<Cell> = if t.cells.is_empty() {
        lattice::cells_touching_point(ScaledPoint::ORIGIN, group.lattice).expect("origin is a vertex")
    } else {
        t.cells.iter().flat_map(lattice::edge_neighbors).collect()
    };
    raw.into_iter().filter(|c| !t.cells.contains(c) && group.in_region(c) && !used.contains(&group.orbit_label(c))).collect()
}

/// Whether `t` is a finished tile: `n` cells, one per orbit, touching the
/// origin, and for two-center groups touching the second center too.
pub fn is_complete(t: &PartialTile, group: &WallpaperGroup) -> bool {
    if t.cells.len() as u64 != group.n {
        return false;
    }
    let labels: BTreeSet<_> = t.cells.iter().map(|c| group.orbit_label(c)).collect();
    if labels.len() != t.cells.len() || !t.cells.iter().all(|c| group.in_region(c)) {
        return false;
    }
    let touches =
        |p: ScaledPoint| lattice::cells_touching_point(p, group.lattice).map(|cs| cs.iter().any(|c| t.cells.contains(c))).unwrap_or(false);
    if !touches(group.black) {
        return false;
    }
    match group.white {
        Some(w) if !group.kind.has_region() => touches(w),
        _ => true,
    }
}

fn run_search(space: &SearchSpace, opts: &EnumerateOptions) -> Result<Vec<Vec<u32>>> {
    let mut found = Vec::new();
    let split = (opts.workers != 1 && opts.split_depth > 0 && opts.split_depth < space.n).then_some(opts.split_depth);
    let mut subs: Vec<Subproblem> = Vec::new();
    Searcher::new(space).run(|t| found.push(t.to_vec()), split, &mut subs);
    if subs.is_empty() {
        return Ok(found);
    }
    let pool =
        rayon::ThreadPoolBuilder::new().num_threads(opts.workers).build().map_err(|e| Error::Inconsistent(format!("thread pool: {e}")))?;
    let parts: Vec<Vec<Vec<u32>>> = pool.install(|| {
        subs.par_iter()
            .map(|s| {
                let mut out = Vec::new();
                Searcher::resume(space, s).run(|t| out.push(t.to_vec()), None, &mut Vec::new());
                out
            })
            .collect()
    });
    found.extend(parts.into_iter().flatten());
    Ok(found)
}

/// All marked tiles for `group`, one per equivalence class, sorted by
/// signature.
pub fn enumerate_tiles(group: &WallpaperGroup, opts: &EnumerateOptions) -> Result<Vec<MarkedTile>> {
    let space = SearchSpace::new(group, opts.order);
    let raw = run_search(&space, opts)?;

    let mut classes: BTreeMap<TileSignature, MarkedTile> = BTreeMap::new();
    for idx in raw {
        let cells: BTreeSet<Cell> = idx.iter().map(|&i| space.cells[i as usize]).collect();
        if !lattice::is_simply_connected(&cells)? {
            return Err(Error::Inconsistent(format!("tile {:?} of {} is not a disk", cells, group.kind)));
        }
        let tile = attach_centers(&cells, group);
        match classes.entry(tile.signature()) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(tile);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                if tile.cells < o.get().cells {
                    o.insert(tile);
                }
            }
        }
    }
    Ok(classes.into_values().collect())
}

/// Tiles for a group and size, merged over every admissible parameter pair
/// and sorted by signature; includes the special cases.
pub fn enumerate_size(kind: GroupKind, n: u64, opts: &EnumerateOptions) -> Result<Vec<MarkedTile>> {
    if let Some(tiles) = special_case_tiles(kind, n) {
        return Ok(tiles);
    }
    let entry = crate::group::admissible_sizes(kind, n).into_iter().find(|e| e.n == n);
    let Some(entry) = entry else {
        return Err(Error::NotAdmissible { kind, n });
    };
    let mut merged: BTreeMap<TileSignature, MarkedTile> = BTreeMap::new();
    for p in entry.params {
        let g = crate::group::build_group(kind, p)?;
        for t in enumerate_tiles(&g, opts)? {
            merged.entry(t.signature()).or_insert(t);
        }
    }
    Ok(merged.into_values().collect())
}

/// Tiles for the groups that are not generated directly. p4m and p6m have
/// none; p3m1 has a single triangle that is a fundamental domain only when
/// decorated, at sizes k².
pub fn special_case_tiles(kind: GroupKind, n: u64) -> Option<Vec<MarkedTile>> {
    match kind {
        GroupKind::P4M | GroupKind::P6M => Some(Vec::new()),
        GroupKind::P3M1 => {
            let k = (n as f64).sqrt().round() as i64;
            if k < 1 || (k * k) as u64 != n {
                return Some(Vec::new());
            }
            let mut cells = BTreeSet::new();
            for a in 0..k {
                for b in 0..k - a {
                    cells.insert(Cell::up(a, b));
                    if a + b <= k - 2 {
                        cells.insert(Cell::down(a, b));
                    }
                }
            }
            let s = 6;
            let centers = vec![
                Center { at: ScaledPoint::new(0, 0), order: 3 },
                Center { at: ScaledPoint::new(0, k * s), order: 3 },
                Center { at: ScaledPoint::new(k * s, 0), order: 3 },
            ];
            let mut mirror_edges: Vec<_> = lattice::boundary_edges(&cells);
            mirror_edges.sort();
            Some(vec![MarkedTile {
                group_kind: GroupKind::P3M1,
                params: GroupParams::single(k as u32),
                lattice: kind.lattice(),
                cells,
                centers,
                mirror_edges,
                marked_only: true,
            }])
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;

    fn tiles(kind: GroupKind, n: u64) -> Vec<MarkedTile> {
        enumerate_size(kind, n, &EnumerateOptions::default()).unwrap()
    }

    #[test]
    fn small_counts() {
        assert_eq!(tiles(GroupKind::P4, 1).len(), 1);
        assert_eq!(tiles(GroupKind::P4, 2).len(), 1);
        assert_eq!(tiles(GroupKind::P4, 4).len(), 3);
        assert_eq!(tiles(GroupKind::P6, 1).len(), 1);
        assert_eq!(tiles(GroupKind::P3, 2).len(), 1);
    }

    #[test]
    fn p3m1_triangle() {
        let t = special_case_tiles(GroupKind::P3M1, 9).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].n(), 9);
        assert!(lattice::is_simply_connected(&t[0].cells).unwrap());
        assert!(special_case_tiles(GroupKind::P3M1, 8).unwrap().is_empty());
    }

    #[test]
    fn stepwise_api_agrees_with_search() {
        let g = build_group(GroupKind::P4, GroupParams::new(1, 1)).unwrap();
        let start = PartialTile::new();
        let cands = boundary_candidates(&start, &g);
        assert_eq!(cands.len(), 4);
        assert!(!is_complete(&start.with(Cell::square(-1, -1)), &g), "must touch the second center");
        let t = start.with(Cell::square(0, 0));
        assert!(is_complete(&t, &g));
        assert!(boundary_candidates(&t, &g).is_empty());
    }
}
