//! Exact integer geometry for the square and triangular lattices.
//!
//! Points are kept in the `(u, v)` lattice basis multiplied by a fixed
//! scale (2 for squares, 6 for triangles) so that vertices, edge midpoints
//! and cell centers all have integer coordinates.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum LatticeKind {
    Square,
    Triangular,
}

impl LatticeKind {
    /// Multiplier from lattice units to scaled integer coordinates.
    pub const fn scale(self) -> i64 {
        match self {
            LatticeKind::Square => 2,
            LatticeKind::Triangular => 6,
        }
    }

    /// Number of cells in one fundamental parallelogram of the lattice.
    pub const fn cells_per_unit(self) -> i64 {
        match self {
            LatticeKind::Square => 1,
            LatticeKind::Triangular => 2,
        }
    }

    pub const fn cells_per_vertex(self) -> usize {
        match self {
            LatticeKind::Square => 4,
            LatticeKind::Triangular => 6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Orient {
    None,
    Up,
    Down,
}

/// A point in scaled lattice coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct ScaledPoint {
    pub px: i64,
    pub py: i64,
}

impl ScaledPoint {
    pub const ORIGIN: ScaledPoint = ScaledPoint { px: 0, py: 0 };

    pub const fn new(px: i64, py: i64) -> Self {
        ScaledPoint { px, py }
    }
}

impl Add for ScaledPoint {
    type Output = ScaledPoint;
    fn add(self, o: ScaledPoint) -> ScaledPoint {
        ScaledPoint::new(self.px + o.px, self.py + o.py)
    }
}

impl Sub for ScaledPoint {
    type Output = ScaledPoint;
    fn sub(self, o: ScaledPoint) -> ScaledPoint {
        ScaledPoint::new(self.px - o.px, self.py - o.py)
    }
}

impl Neg for ScaledPoint {
    type Output = ScaledPoint;
    fn neg(self) -> ScaledPoint {
        ScaledPoint::new(-self.px, -self.py)
    }
}

impl Mul<ScaledPoint> for i64 {
    type Output = ScaledPoint;
    fn mul(self, p: ScaledPoint) -> ScaledPoint {
        ScaledPoint::new(self * p.px, self * p.py)
    }
}

impl fmt::Display for ScaledPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.px, self.py)
    }
}

/// A unit square or unit triangle of a lattice.
///
/// Square `(a, b)` spans the lattice points `(a, b)` to `(a+1, b+1)`.
/// Up triangle `(a, b)` has vertices `(a,b), (a+1,b), (a,b+1)`; Down
/// triangle `(a, b)` has vertices `(a+1,b), (a,b+1), (a+1,b+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cell {
    pub lattice: LatticeKind,
    pub a: i64,
    pub b: i64,
    pub orient: Orient,
}

impl Cell {
    pub const fn square(a: i64, b: i64) -> Self {
        Cell { lattice: LatticeKind::Square, a, b, orient: Orient::None }
    }

    pub const fn up(a: i64, b: i64) -> Self {
        Cell { lattice: LatticeKind::Triangular, a, b, orient: Orient::Up }
    }

    pub const fn down(a: i64, b: i64) -> Self {
        Cell { lattice: LatticeKind::Triangular, a, b, orient: Orient::Down }
    }

    /// The cell centroid in scaled coordinates.
    pub fn center(&self) -> ScaledPoint {
        let s = self.lattice.scale();
        let (a, b) = (self.a * s, self.b * s);
        match self.orient {
            Orient::None => ScaledPoint::new(a + 1, b + 1),
            Orient::Up => ScaledPoint::new(a + 2, b + 2),
            Orient::Down => ScaledPoint::new(a + 4, b + 4),
        }
    }

    /// Inverse of [`Cell::center`]; `None` when `p` is not a cell center.
    pub fn from_center(lattice: LatticeKind, p: ScaledPoint) -> Option<Cell> {
        let s = lattice.scale();
        let (qx, rx) = (p.px.div_euclid(s), p.px.rem_euclid(s));
        let (qy, ry) = (p.py.div_euclid(s), p.py.rem_euclid(s));
        match (lattice, rx, ry) {
            (LatticeKind::Square, 1, 1) => Some(Cell::square(qx, qy)),
            (LatticeKind::Triangular, 2, 2) => Some(Cell::up(qx, qy)),
            (LatticeKind::Triangular, 4, 4) => Some(Cell::down(qx, qy)),
            _ => None,
        }
    }

    /// Translate by whole lattice steps.
    pub fn shifted(&self, da: i64, db: i64) -> Cell {
        Cell { a: self.a + da, b: self.b + db, ..*self }
    }

    fn order_key(&self) -> (Orient, i64, i64) {
        (self.orient, self.a, self.b)
    }
}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Cells order by `(orient, a, b)`.
impl Ord for Cell {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.orient {
            Orient::None => write!(f, "[{},{}]", self.a, self.b),
            Orient::Up => write!(f, "[{},{},U]", self.a, self.b),
            Orient::Down => write!(f, "[{},{},D]", self.a, self.b),
        }
    }
}

/// Corner points of `c` in counterclockwise order.
pub fn cell_vertices(c: &Cell) -> Vec<ScaledPoint> {
    let s = c.lattice.scale();
    let (x, y) = (c.a * s, c.b * s);
    let p = ScaledPoint::new;
    match c.orient {
        Orient::None => vec![p(x, y), p(x + s, y), p(x + s, y + s), p(x, y + s)],
        Orient::Up => vec![p(x, y), p(x + s, y), p(x, y + s)],
        Orient::Down => vec![p(x + s, y), p(x + s, y + s), p(x, y + s)],
    }
}

/// Oriented edges `(from, to)` of `c`, following [`cell_vertices`].
pub fn cell_edges(c: &Cell) -> Vec<(ScaledPoint, ScaledPoint)> {
    let vs = cell_vertices(c);
    (0..vs.len()).map(|i| (vs[i], vs[(i + 1) % vs.len()])).collect()
}

/// Edge midpoint; identifies an edge uniquely on either lattice.
pub fn edge_key(p: ScaledPoint, q: ScaledPoint) -> ScaledPoint {
    ScaledPoint::new((p.px + q.px) / 2, (p.py + q.py) / 2)
}

/// The cells sharing a full edge with `c`.
pub fn edge_neighbors(c: &Cell) -> Vec<Cell> {
    let (a, b) = (c.a, c.b);
    match c.orient {
        Orient::None => vec![Cell::square(a + 1, b), Cell::square(a - 1, b), Cell::square(a, b + 1), Cell::square(a, b - 1)],
        Orient::Up => vec![Cell::down(a, b), Cell::down(a - 1, b), Cell::down(a, b - 1)],
        Orient::Down => vec![Cell::up(a, b), Cell::up(a + 1, b), Cell::up(a, b + 1)],
    }
}

/// All cells having the lattice vertex `p` as a corner.
pub fn cells_touching_point(p: ScaledPoint, lattice: LatticeKind) -> Result<Vec<Cell>> {
    let s = lattice.scale();
    if p.px.rem_euclid(s) != 0 || p.py.rem_euclid(s) != 0 {
        return Err(Error::NotAVertex(p));
    }
    let (a, b) = (p.px / s, p.py / s);
    Ok(match lattice {
        LatticeKind::Square => vec![Cell::square(a, b), Cell::square(a - 1, b), Cell::square(a, b - 1), Cell::square(a - 1, b - 1)],
        LatticeKind::Triangular => vec![
            Cell::up(a, b),
            Cell::down(a - 1, b),
            Cell::up(a - 1, b),
            Cell::down(a - 1, b - 1),
            Cell::up(a, b - 1),
            Cell::down(a, b - 1),
        ],
    })
}

/// Boundary edges of a cell union, oriented counterclockwise around the
/// interior.
pub fn boundary_edges(cells: &BTreeSet<Cell>) -> Vec<(ScaledPoint, ScaledPoint)> {
    let mut count: BTreeMap<ScaledPoint, usize> = BTreeMap::new();
    let mut edges = Vec::new();
    for c in cells {
        for (p, q) in cell_edges(c) {
            *count.entry(edge_key(p, q)).or_default() += 1;
            edges.push((p, q));
        }
    }
    edges.retain(|&(p, q)| count[&edge_key(p, q)] == 1);
    edges
}

fn is_edge_connected(cells: &BTreeSet<Cell>) -> bool {
    let Some(&start) = cells.iter().next() else {
        return false;
    };
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(c) = stack.pop() {
        for d in edge_neighbors(&c) {
            if cells.contains(&d) && seen.insert(d) {
                stack.push(d);
            }
        }
    }
    seen.len() == cells.len()
}

/// True iff the closed union of `cells` is a topological disk.
///
/// Checks `V - E + F = 1` on the cell complex and that the boundary is a
/// single cycle, which rules out holes and vertex pinches.
pub fn is_simply_connected(cells: &BTreeSet<Cell>) -> Result<bool> {
    if cells.is_empty() || !is_edge_connected(cells) {
        return Err(Error::Disconnected);
    }
    let mut vertices = BTreeSet::new();
    let mut edges = BTreeSet::new();
    for c in cells {
        for (p, q) in cell_edges(c) {
            vertices.insert(p);
            edges.insert(edge_key(p, q));
        }
    }
    let euler = vertices.len() as i64 - edges.len() as i64 + cells.len() as i64;
    if euler != 1 {
        return Ok(false);
    }
    let boundary = boundary_edges(cells);
    let mut next: BTreeMap<ScaledPoint, ScaledPoint> = BTreeMap::new();
    for &(p, q) in &boundary {
        if next.insert(p, q).is_some() {
            // two boundary edges leave the same vertex: pinch point
            return Ok(false);
        }
    }
    let start = boundary[0].0;
    let mut at = start;
    let mut steps = 0;
    loop {
        at = next[&at];
        steps += 1;
        if at == start {
            break;
        }
    }
    Ok(steps == boundary.len())
}

/// The boundary as one closed counterclockwise vertex loop, with collinear
/// runs merged. Requires a disk-shaped union.
pub fn boundary_loop(cells: &BTreeSet<Cell>) -> Vec<ScaledPoint> {
    let boundary = boundary_edges(cells);
    let next: BTreeMap<ScaledPoint, ScaledPoint> = boundary.iter().copied().collect();
    let start = *next.keys().next().expect("non-empty boundary");
    let mut raw = vec![start];
    let mut at = next[&start];
    while at != start {
        raw.push(at);
        at = next[&at];
    }
    let n = raw.len();
    let collinear = |a: ScaledPoint, b: ScaledPoint, c: ScaledPoint| {
        let (d1, d2) = (b - a, c - b);
        d1.px * d2.py - d1.py * d2.px == 0
    };
    let mut out: Vec<ScaledPoint> =
        (0..n).filter(|&i| !collinear(raw[(i + n - 1) % n], raw[i], raw[(i + 1) % n])).map(|i| raw[i]).collect();
    // start at the least corner so the loop is canonical
    let first = out.iter().enumerate().min_by_key(|(_, p)| (p.py, p.px)).map(|(i, _)| i).unwrap_or(0);
    out.rotate_left(first);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertices_match_definition() {
        let p = ScaledPoint::new;
        assert_eq!(cell_vertices(&Cell::square(0, 0)), vec![p(0, 0), p(2, 0), p(2, 2), p(0, 2)]);
        assert_eq!(cell_vertices(&Cell::up(0, 0)), vec![p(0, 0), p(6, 0), p(0, 6)]);
        assert_eq!(cell_vertices(&Cell::down(0, 0)), vec![p(6, 0), p(6, 6), p(0, 6)]);
    }

    #[test]
    fn centers_round_trip() {
        assert_eq!(Cell::up(0, 0).center(), ScaledPoint::new(2, 2));
        assert_eq!(Cell::down(0, 0).center(), ScaledPoint::new(4, 4));
        for c in [Cell::square(-3, 5), Cell::up(-1, 2), Cell::down(4, -7)] {
            assert_eq!(Cell::from_center(c.lattice, c.center()), Some(c));
        }
        assert_eq!(Cell::from_center(LatticeKind::Square, ScaledPoint::new(2, 1)), None);
        assert_eq!(Cell::from_center(LatticeKind::Triangular, ScaledPoint::new(2, 4)), None);
    }

    #[test]
    fn neighbors() {
        let sq: BTreeSet<_> = edge_neighbors(&Cell::square(0, 0)).into_iter().collect();
        let want: BTreeSet<_> = [(1, 0), (-1, 0), (0, 1), (0, -1)].map(|(a, b)| Cell::square(a, b)).into_iter().collect();
        assert_eq!(sq, want);
        let up: BTreeSet<_> = edge_neighbors(&Cell::up(0, 0)).into_iter().collect();
        let want: BTreeSet<_> = [Cell::down(0, 0), Cell::down(-1, 0), Cell::down(0, -1)].into_iter().collect();
        assert_eq!(up, want);
    }

    #[test]
    fn touching_origin() {
        let sq = cells_touching_point(ScaledPoint::ORIGIN, LatticeKind::Square).unwrap();
        assert_eq!(sq.len(), 4);
        for c in [(0, 0), (-1, 0), (0, -1), (-1, -1)] {
            assert!(sq.contains(&Cell::square(c.0, c.1)));
        }
        let tri = cells_touching_point(ScaledPoint::ORIGIN, LatticeKind::Triangular).unwrap();
        assert_eq!(tri.len(), 6);
        for c in &tri {
            assert!(cell_vertices(c).contains(&ScaledPoint::ORIGIN));
        }
        let moved = cells_touching_point(ScaledPoint::new(2, 6), LatticeKind::Square).unwrap();
        assert_eq!(moved, sq.iter().map(|c| c.shifted(1, 3)).collect::<Vec<_>>());
        assert!(cells_touching_point(ScaledPoint::new(1, 0), LatticeKind::Square).is_err());
    }

    #[test]
    fn disk_checks() {
        let one = BTreeSet::from([Cell::square(0, 0)]);
        assert!(is_simply_connected(&one).unwrap());
        let ring: BTreeSet<_> = (0..3).flat_map(|a| (0..3).map(move |b| Cell::square(a, b))).filter(|c| (c.a, c.b) != (1, 1)).collect();
        assert!(!is_simply_connected(&ring).unwrap());
        let u_shape: BTreeSet<_> = [(0, 0), (1, 0), (2, 0), (2, 1), (2, 2), (1, 2), (0, 2)].map(|(a, b)| Cell::square(a, b)).into();
        assert!(is_simply_connected(&u_shape).unwrap());
        let apart = BTreeSet::from([Cell::square(0, 0), Cell::square(1, 1)]);
        assert!(matches!(is_simply_connected(&apart), Err(Error::Disconnected)));
        // six triangles around a vertex form a hexagon
        let hex: BTreeSet<_> = cells_touching_point(ScaledPoint::ORIGIN, LatticeKind::Triangular).unwrap().into_iter().collect();
        assert!(is_simply_connected(&hex).unwrap());
        // five of them leave a notch but stay a disk
        let mut notch = hex.clone();
        notch.remove(&Cell::up(0, 0));
        assert!(is_simply_connected(&notch).unwrap());
    }

    #[test]
    fn vertex_pinch_is_rejected() {
        // (0,0) and (1,1) meet only at a vertex; the path around (1,0)
        // closes a hole whose rim touches that vertex.
        let cells: BTreeSet<_> = [(0, 0), (0, -1), (1, -1), (2, -1), (2, 0), (2, 1), (1, 1)].map(|(a, b)| Cell::square(a, b)).into();
        assert!(!is_simply_connected(&cells).unwrap());
        let rhombus = BTreeSet::from([Cell::up(0, 0), Cell::down(0, 0)]);
        assert!(is_simply_connected(&rhombus).unwrap());
    }

    #[test]
    fn loop_of_domino() {
        let dom = BTreeSet::from([Cell::square(0, 0), Cell::square(1, 0)]);
        let p = ScaledPoint::new;
        assert_eq!(boundary_loop(&dom), vec![p(0, 0), p(4, 0), p(4, 2), p(0, 2)]);
    }
}
