//! Backtracking over edge-connected cell sets with one cell per orbit.
//!
//! Each connected set containing a cell at the origin is visited exactly
//! once: a frame's untried cells are inherited by its children, and a
//! "seen" mark keeps a cell from entering the untried set twice along one
//! branch. The stack of frames is the explicit `(T, U_T)` state, so a
//! search can be cut at a fixed depth and the pieces run independently.

use std::collections::{BTreeMap, VecDeque};

use crate::group::WallpaperGroup;
use crate::lattice::{cells_touching_point, edge_neighbors, Cell, LatticeKind, Orient, ScaledPoint};

const NONE: u32 = u32::MAX;

/// Order in which untried cells are tried. The output set does not depend
/// on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CandidateOrder {
    #[default]
    Lexicographic,
    /// A fixed pseudo-random permutation derived from the seed.
    Scrambled(u64),
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Dense precomputed view of the cells a tile can reach.
pub struct SearchSpace {
    pub n: usize,
    radius: i64,
    width: i64,
    per_site: i64,
    pub cells: Vec<Cell>,
    orbit: Vec<u32>,
    neighbors: Vec<[u32; 4]>,
    allowed: Vec<bool>,
    /// Origin cells in the order they seed the search.
    seeds: Vec<u32>,
    /// Cells touching the second placed center, when it must be on the
    /// boundary.
    target: Option<Vec<bool>>,
    /// Edge-path distance to the nearest target cell.
    dist: Vec<u32>,
    rank: Vec<u64>,
}

impl SearchSpace {
    pub fn new(group: &WallpaperGroup, order: CandidateOrder) -> Self {
        let n = group.n as usize;
        let lat = group.lattice;
        let radius = n as i64 + 1;
        let width = 2 * radius + 1;
        let per_site = lat.cells_per_unit();
        let mut cells = Vec::with_capacity((width * width * per_site) as usize);
        for a in -radius..=radius {
            for b in -radius..=radius {
                match lat {
                    LatticeKind::Square => cells.push(Cell::square(a, b)),
                    LatticeKind::Triangular => {
                        cells.push(Cell::up(a, b));
                        cells.push(Cell::down(a, b));
                    }
                }
            }
        }
        let mut space = SearchSpace {
            n,
            radius,
            width,
            per_site,
            cells,
            orbit: Vec::new(),
            neighbors: Vec::new(),
            allowed: Vec::new(),
            seeds: Vec::new(),
            target: None,
            dist: Vec::new(),
            rank: Vec::new(),
        };

        let mut label_ids = BTreeMap::new();
        space.orbit = space
            .cells
            .iter()
            .map(|c| {
                let next = label_ids.len() as u32;
                *label_ids.entry(group.orbit_label(c)).or_insert(next)
            })
            .collect();
        space.neighbors = space
            .cells
            .iter()
            .map(|c| {
                let mut out = [NONE; 4];
                for (slot, d) in out.iter_mut().zip(edge_neighbors(c)) {
                    *slot = space.index(&d).unwrap_or(NONE);
                }
                out
            })
            .collect();
        space.allowed = space.cells.iter().map(|c| group.in_region(c)).collect();
        space.rank = match order {
            CandidateOrder::Lexicographic => {
                let mut idx: Vec<usize> = (0..space.cells.len()).collect();
                idx.sort_by_key(|&i| space.cells[i]);
                let mut rank = vec![0; idx.len()];
                for (r, i) in idx.into_iter().enumerate() {
                    rank[i] = r as u64;
                }
                rank
            }
            CandidateOrder::Scrambled(seed) => (0..space.cells.len() as u64).map(|i| splitmix(i ^ splitmix(seed))).collect(),
        };

        let mut seeds: Vec<u32> = cells_touching_point(ScaledPoint::ORIGIN, lat)
            .expect("origin is a vertex")
            .iter()
            .map(|c| space.index(c).expect("origin cells are in range"))
            .filter(|&i| space.allowed[i as usize])
            .collect();
        seeds.sort_by_key(|&i| space.rank[i as usize]);
        space.seeds = seeds;

        if let Some(white) = group.white.filter(|_| !group.kind.has_region()) {
            let mut target = vec![false; space.cells.len()];
            for c in cells_touching_point(white, lat).expect("white center is a vertex") {
                if let Some(i) = space.index(&c) {
                    target[i as usize] = true;
                }
            }
            space.dist = space.distances(&target);
            space.target = Some(target);
        } else {
            space.dist = vec![0; space.cells.len()];
        }
        space
    }

    pub fn index(&self, c: &Cell) -> Option<u32> {
        let (a, b) = (c.a + self.radius, c.b + self.radius);
        if a < 0 || b < 0 || a >= self.width || b >= self.width {
            return None;
        }
        let off = match c.orient {
            Orient::Down => 1,
            _ => 0,
        };
        Some(((a * self.width + b) * self.per_site + off) as u32)
    }

    fn distances(&self, target: &[bool]) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.cells.len()];
        let mut queue = VecDeque::new();
        for (i, &t) in target.iter().enumerate() {
            if t && self.allowed[i] {
                dist[i] = 0;
                queue.push_back(i);
            }
        }
        while let Some(i) = queue.pop_front() {
            for &nb in &self.neighbors[i] {
                if nb != NONE && self.allowed[nb as usize] && dist[nb as usize] == u32::MAX {
                    dist[nb as usize] = dist[i] + 1;
                    queue.push_back(nb as usize);
                }
            }
        }
        dist
    }

    fn is_complete(&self, cells: &[u32]) -> bool {
        cells.len() == self.n
            && match &self.target {
                Some(target) => cells.iter().any(|&c| target[c as usize]),
                None => true,
            }
    }

    pub fn orbit_of(&self, idx: u32) -> u32 {
        self.orbit[idx as usize]
    }
}

#[derive(Debug, Clone)]
struct Frame {
    untried: Vec<u32>,
    marked: Vec<u32>,
    added: Option<u32>,
    root: bool,
    min_dist: u32,
}

/// A detached subtree of the search: a partial tile together with the
/// cells it may still try and the cells it must not revisit.
#[derive(Debug, Clone)]
pub struct Subproblem {
    cells: Vec<u32>,
    untried: Vec<u32>,
    seen: Vec<bool>,
    min_dist: u32,
}

pub struct Searcher<'a> {
    space: &'a SearchSpace,
    tile: Vec<u32>,
    used: Vec<bool>,
    seen: Vec<bool>,
    stack: Vec<Frame>,
}

impl<'a> Searcher<'a> {
    pub fn new(space: &'a SearchSpace) -> Self {
        let mut root_untried = space.seeds.clone();
        root_untried.reverse();
        Searcher {
            space,
            tile: Vec::with_capacity(space.n),
            used: vec![false; space.n],
            seen: vec![false; space.cells.len()],
            stack: vec![Frame { untried: root_untried, marked: Vec::new(), added: None, root: true, min_dist: u32::MAX }],
        }
    }

    pub fn resume(space: &'a SearchSpace, sub: &Subproblem) -> Self {
        let mut used = vec![false; space.n];
        for &c in &sub.cells {
            used[space.orbit_of(c) as usize] = true;
        }
        Searcher {
            space,
            tile: sub.cells.clone(),
            used,
            seen: sub.seen.clone(),
            stack: vec![Frame { untried: sub.untried.clone(), marked: Vec::new(), added: None, root: false, min_dist: sub.min_dist }],
        }
    }

    /// Run to exhaustion, reporting every completed tile. With
    /// `split_at = Some(d)`, partial tiles reaching depth `d` are detached
    /// into `detached` instead of being explored.
    pub fn run(&mut self, mut emit: impl FnMut(&[u32]), split_at: Option<usize>, detached: &mut Vec<Subproblem>) {
        let space = self.space;
        let n = space.n;
        while let Some(top) = self.stack.last_mut() {
            let Some(e) = top.untried.pop() else {
                let frame = self.stack.pop().expect("non-empty stack");
                for c in frame.marked {
                    self.seen[c as usize] = false;
                }
                if let Some(c) = frame.added {
                    self.tile.pop();
                    self.used[space.orbit_of(c) as usize] = false;
                }
                continue;
            };
            let ei = e as usize;
            if top.root {
                self.seen[ei] = true;
                top.marked.push(e);
            }
            if self.used[space.orbit[ei] as usize] {
                continue;
            }
            let depth = self.tile.len() + 1;
            if depth == n {
                self.tile.push(e);
                if space.is_complete(&self.tile) {
                    emit(&self.tile);
                }
                self.tile.pop();
                continue;
            }
            let min_dist = top.min_dist.min(space.dist[ei]);
            if space.target.is_some() && min_dist as usize > n - depth {
                continue;
            }

            let mut fresh: Vec<u32> = space.neighbors[ei]
                .iter()
                .copied()
                .filter(|&nb| {
                    nb != NONE
                        && space.allowed[nb as usize]
                        && !self.seen[nb as usize]
                        && !self.used[space.orbit[nb as usize] as usize]
                        && space.orbit[nb as usize] != space.orbit[ei]
                })
                .collect();
            // highest rank first so the lowest rank pops first
            fresh.sort_by_key(|&c| std::cmp::Reverse(space.rank[c as usize]));
            let mut untried = if top.root { Vec::with_capacity(fresh.len()) } else { top.untried.clone() };
            untried.extend_from_slice(&fresh);
            for &c in &fresh {
                self.seen[c as usize] = true;
            }
            self.tile.push(e);
            self.used[space.orbit[ei] as usize] = true;

            if split_at == Some(depth) {
                detached.push(Subproblem { cells: self.tile.clone(), untried, seen: self.seen.clone(), min_dist });
                for &c in &fresh {
                    self.seen[c as usize] = false;
                }
                self.tile.pop();
                self.used[space.orbit[ei] as usize] = false;
                continue;
            }
            self.stack.push(Frame { untried, marked: fresh, added: Some(e), root: false, min_dist });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, GroupKind, GroupParams};

    fn count(kind: GroupKind, p: GroupParams, split: Option<usize>) -> usize {
        let g = build_group(kind, p).unwrap();
        let space = SearchSpace::new(&g, CandidateOrder::Lexicographic);
        let mut total = 0;
        let mut subs = Vec::new();
        Searcher::new(&space).run(|_| total += 1, split, &mut subs);
        for s in &subs {
            Searcher::resume(&space, s).run(|_| total += 1, None, &mut Vec::new());
        }
        total
    }

    #[test]
    fn split_search_visits_the_same_completions() {
        for (kind, p) in [(GroupKind::P4, GroupParams::new(3, 1)), (GroupKind::P6, GroupParams::new(2, 0))] {
            let whole = count(kind, p, None);
            assert!(whole > 0);
            for d in 1..4 {
                assert_eq!(count(kind, p, Some(d)), whole, "{kind} split at {d}");
            }
        }
    }

    #[test]
    fn single_cell_tile() {
        assert_eq!(count(GroupKind::P4, GroupParams::new(1, 1), None), 1);
    }
}
