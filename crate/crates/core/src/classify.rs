//! Full symmetry groups of generated tilings and the counting statistics.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::{enumerate_size, special_case_tiles, Center, EnumerateOptions, MarkedTile, TileSignature};
use crate::error::{Error, Result};
use crate::group::{build_group, CosetTable, GroupKind, WallpaperGroup};
use crate::isometry::{lattice_point_group, Isometry, Lattice2, Mat2};
use crate::lattice::{cell_edges, cell_vertices, edge_key, Cell, LatticeKind, Orient, ScaledPoint};

/// The 17 wallpaper types. Only the rotation-3/4/6 families are reachable
/// from the generating groups; the others are reported if ever produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WallpaperType {
    P1,
    P2,
    Pm,
    Pg,
    Cm,
    Pmm,
    Pmg,
    Pgg,
    Cmm,
    P4,
    P4m,
    P4g,
    P3,
    P3m1,
    P31m,
    P6,
    P6m,
}

impl WallpaperType {
    pub fn name(self) -> &'static str {
        match self {
            WallpaperType::P1 => "p1",
            WallpaperType::P2 => "p2",
            WallpaperType::Pm => "pm",
            WallpaperType::Pg => "pg",
            WallpaperType::Cm => "cm",
            WallpaperType::Pmm => "pmm",
            WallpaperType::Pmg => "pmg",
            WallpaperType::Pgg => "pgg",
            WallpaperType::Cmm => "cmm",
            WallpaperType::P4 => "p4",
            WallpaperType::P4m => "p4m",
            WallpaperType::P4g => "p4g",
            WallpaperType::P3 => "p3",
            WallpaperType::P3m1 => "p3m1",
            WallpaperType::P31m => "p31m",
            WallpaperType::P6 => "p6",
            WallpaperType::P6m => "p6m",
        }
    }

    pub fn group_kind(self) -> Option<GroupKind> {
        self.name().parse().ok()
    }
}

impl fmt::Display for WallpaperType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The tiling generated by a tile, reduced modulo `N Z^2` for the smallest
/// `N` with `N Z^2` inside the group's translations. Working on a square
/// torus lets every lattice isometry act on it, whatever the group.
#[derive(Debug, Clone)]
pub struct TorusTiling {
    pub group: WallpaperGroup,
    pub tile: MarkedTile,
    /// Side of the torus in lattice units.
    pub period: i64,
    pub lambda_basis: [ScaledPoint; 2],
    /// Placement of each copy of the tile.
    pub copies: Vec<Isometry>,
    cell_to_copy: Vec<u32>,
    copy_cells: Vec<Vec<usize>>,
}

impl TorusTiling {
    fn scale(&self) -> i64 {
        self.group.lattice.scale()
    }

    /// Index of the torus cell containing `c`.
    pub fn cell_index(&self, c: &Cell) -> usize {
        let n = self.period;
        let (a, b) = (c.a.rem_euclid(n), c.b.rem_euclid(n));
        let off = usize::from(c.orient == Orient::Down);
        ((a * n + b) as usize) * self.group.lattice.cells_per_unit() as usize + off
    }

    pub fn cell_count(&self) -> usize {
        self.cell_to_copy.len()
    }

    /// The torus cell with index `i`, with `0 <= a, b < period`.
    pub fn cell_at(&self, i: usize) -> Cell {
        let per = self.group.lattice.cells_per_unit() as usize;
        let site = (i / per) as i64;
        let (a, b) = (site / self.period, site % self.period);
        match (self.group.lattice, i % per) {
            (LatticeKind::Square, _) => Cell::square(a, b),
            (LatticeKind::Triangular, 0) => Cell::up(a, b),
            _ => Cell::down(a, b),
        }
    }

    pub fn copy_of(&self, c: &Cell) -> usize {
        self.cell_to_copy[self.cell_index(c)] as usize
    }

    /// Torus cells of one copy.
    pub fn copy_cells(&self, k: usize) -> impl Iterator<Item = Cell> + '_ {
        self.copy_cells[k].iter().map(|&i| self.cell_at(i))
    }

    fn image_index(&self, m: &Mat2, t: ScaledPoint, i: usize) -> usize {
        let c = self.cell_at(i);
        let img = Cell::from_center(self.group.lattice, m.apply(c.center()) + t).expect("lattice isometry maps cells");
        self.cell_index(&img)
    }

    /// Whether `(m, t)` maps every copy onto a copy.
    fn preserves_partition(&self, m: &Mat2, t: ScaledPoint) -> bool {
        let maps_copy = |k: usize| {
            let mut owners = self.copy_cells[k].iter().map(|&i| self.cell_to_copy[self.image_index(m, t, i)]);
            let first = owners.next().expect("copies are non-empty");
            owners.all(|o| o == first)
        };
        maps_copy(0) && (1..self.copies.len()).all(maps_copy)
    }
}

/// Place every G-image of the tile on the torus, failing if the images do
/// not partition its cells.
pub fn generate_torus_tiling(tile: &MarkedTile, group: &WallpaperGroup) -> Result<TorusTiling> {
    let lat = group.lattice;
    let s = lat.scale();
    let lambda = &group.table.translations;
    let det = lambda.covolume() / (s * s);
    let period = (1..=det)
        .find(|&k| lambda.contains(ScaledPoint::new(k * s, 0)) && lambda.contains(ScaledPoint::new(0, k * s)))
        .expect("det Z^2 lies in the lattice");
    let side = period * s;
    let [b1, b2] = lambda.basis();
    let mut shifts = Vec::new();
    for j in 0..side / b2.py {
        for i in 0..side / b1.px {
            shifts.push(i * b1 + j * b2);
        }
    }

    let cells = (period * period * lat.cells_per_unit()) as usize;
    let mut tt = TorusTiling {
        group: group.clone(),
        tile: tile.clone(),
        period,
        lambda_basis: [b1, b2],
        copies: Vec::new(),
        cell_to_copy: vec![u32::MAX; cells],
        copy_cells: Vec::new(),
    };
    for rep in &group.table.reps {
        for &shift in &shifts {
            let g = Isometry::translation(shift).compose(rep);
            let id = tt.copies.len() as u32;
            let mut members = Vec::with_capacity(tile.n());
            for c in &tile.cells {
                let img = Cell::from_center(lat, g.apply(c.center())).ok_or(Error::NotACell { cell: *c })?;
                let idx = tt.cell_index(&img);
                if tt.cell_to_copy[idx] != u32::MAX {
                    return Err(Error::Partition(format!("{} covered twice by tile {:?}", tt.cell_at(idx), tile.cells)));
                }
                tt.cell_to_copy[idx] = id;
                members.push(idx);
            }
            tt.copies.push(g);
            tt.copy_cells.push(members);
        }
    }
    if let Some(i) = tt.cell_to_copy.iter().position(|&c| c == u32::MAX) {
        return Err(Error::Partition(format!("{} uncovered by tile {:?}", tt.cell_at(i), tile.cells)));
    }
    Ok(tt)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryReport {
    pub full_kind: WallpaperType,
    /// `[G' : G]`.
    pub index: u64,
    pub is_fundamental: bool,
    /// Points of the tile where G' has a higher rotation order than G.
    pub new_centers: Vec<Center>,
    pub has_reflection: bool,
    /// Elements of G' mapping the tile onto itself, identity included,
    /// counted directly in the plane.
    pub tile_stabilizer: u64,
    pub translations: [ScaledPoint; 2],
}

/// Per-tile classification record; field order is part of the format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub group: GroupKind,
    pub params: [u32; 2],
    pub n: usize,
    pub full_kind: WallpaperType,
    pub index: u64,
    pub is_fundamental: bool,
    pub has_reflection: bool,
    pub tile_stabilizer: u64,
    pub translations: [[i64; 2]; 2],
    pub new_centers: Vec<CenterEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterEntry {
    pub at: [i64; 2],
    pub order: u32,
}

impl ReportRecord {
    pub fn new(tile: &MarkedTile, r: &SymmetryReport) -> Self {
        ReportRecord {
            group: tile.group_kind,
            params: [tile.params.x, tile.params.y],
            n: tile.n(),
            full_kind: r.full_kind,
            index: r.index,
            is_fundamental: r.is_fundamental,
            has_reflection: r.has_reflection,
            tile_stabilizer: r.tile_stabilizer,
            translations: r.translations.map(|v| [v.px, v.py]),
            new_centers: r.new_centers.iter().map(|c| CenterEntry { at: [c.at.px, c.at.py], order: c.order }).collect(),
        }
    }
}

fn reduce_mod(p: ScaledPoint, side: i64) -> ScaledPoint {
    ScaledPoint::new(p.px.rem_euclid(side), p.py.rem_euclid(side))
}

/// Isometries `h` of the lattice with `h(T) = T` as a set of cells.
fn shape_stabilizer(lat: LatticeKind, cells: &BTreeSet<Cell>) -> Vec<Isometry> {
    let s = lat.scale();
    let min = *cells.iter().next().expect("non-empty tile");
    lattice_point_group(lat)
        .into_iter()
        .filter_map(|m| {
            let imgs: BTreeSet<Cell> =
                cells.iter().map(|c| Cell::from_center(lat, m.apply(c.center())).expect("point group maps cells")).collect();
            let img_min = *imgs.iter().next().expect("non-empty tile");
            if img_min.orient != min.orient {
                return None;
            }
            let (da, db) = (min.a - img_min.a, min.b - img_min.b);
            imgs.iter().all(|c| cells.contains(&c.shifted(da, db))).then(|| Isometry::new(m, ScaledPoint::new(da * s, db * s)))
        })
        .collect()
}

/// Points where a grid isometry can have a fixed point, restricted to the
/// closed tile.
fn tile_points(cells: &BTreeSet<Cell>) -> BTreeSet<ScaledPoint> {
    let mut pts = BTreeSet::new();
    for c in cells {
        pts.insert(c.center());
        pts.extend(cell_vertices(c));
        pts.extend(cell_edges(c).into_iter().map(|(p, q)| edge_key(p, q)));
    }
    pts
}

fn name_type(table: &CosetTable) -> WallpaperType {
    let pg = table.point_group();
    let max_rot = pg.iter().filter(|m| m.is_proper()).map(|m| m.order()).max().unwrap_or(1);
    let improper: Vec<&Isometry> = table.reps.iter().filter(|g| !g.is_proper()).collect();
    let reflective = improper.iter().filter(|g| table.coset_has_reflection(g)).count();
    let centers = table.rotation_centers();
    let all_on_mirrors =
        |order: u32| centers.iter().filter(|(_, &o)| o == order).all(|(&p, _)| table.stabilizer(p).any(|g| !g.is_proper()));
    match (max_rot, improper.is_empty()) {
        (6, true) => WallpaperType::P6,
        (6, false) => WallpaperType::P6m,
        (4, true) => WallpaperType::P4,
        (4, false) if all_on_mirrors(4) => WallpaperType::P4m,
        (4, false) => WallpaperType::P4g,
        (3, true) => WallpaperType::P3,
        (3, false) if all_on_mirrors(3) => WallpaperType::P3m1,
        (3, false) => WallpaperType::P31m,
        (2, true) => WallpaperType::P2,
        (2, false) if reflective == 0 => WallpaperType::Pgg,
        (2, false) if reflective < improper.len() => WallpaperType::Pmg,
        (2, false) if all_on_mirrors(2) => WallpaperType::Pmm,
        (2, false) => WallpaperType::Cmm,
        (_, true) => WallpaperType::P1,
        (_, false) if reflective == 0 => WallpaperType::Pg,
        (_, false) => {
            // cm has glides whose glide vector is half a translation
            let g = improper[0];
            let ipm = Mat2::IDENTITY.add(&g.m);
            let essential_glide = table.translations.basis().iter().any(|&b| {
                let w = ipm.apply(b);
                w.px % 2 != 0 || w.py % 2 != 0 || !table.translations.contains(ScaledPoint::new(w.px / 2, w.py / 2))
            });
            if essential_glide {
                WallpaperType::Cm
            } else {
                WallpaperType::Pm
            }
        }
    }
}

/// Find every lattice isometry preserving the tiling and name the group.
pub fn full_symmetry_group(tt: &TorusTiling) -> Result<SymmetryReport> {
    let lat = tt.group.lattice;
    let s = tt.scale();
    let side = tt.period * s;

    let mut found: Vec<Isometry> = Vec::new();
    for m in lattice_point_group(lat) {
        for i in 0..tt.period {
            for j in 0..tt.period {
                let t = ScaledPoint::new(i * s, j * s);
                if tt.preserves_partition(&m, t) {
                    found.push(Isometry::new(m, t));
                }
            }
        }
    }
    let elements: BTreeSet<(Mat2, ScaledPoint)> = found.iter().map(|g| (g.m, g.t)).collect();
    let member = |g: &Isometry| elements.contains(&(g.m, reduce_mod(g.t, side)));

    for rep in &tt.group.table.reps {
        if !member(rep) {
            return Err(Error::Theorem(format!("generating element {rep} missing from the tiling's symmetries")));
        }
    }

    let translations = Lattice2::from_generators(
        found.iter().filter(|g| g.m == Mat2::IDENTITY).map(|g| g.t).chain([ScaledPoint::new(side, 0), ScaledPoint::new(0, side)]),
    )?;
    let mut reps: BTreeMap<Mat2, Isometry> = BTreeMap::new();
    for g in &found {
        reps.entry(g.m).or_insert(*g);
    }
    let mut reps: Vec<Isometry> = reps.into_values().collect();
    reps.sort_by_key(|g| (g.m != Mat2::IDENTITY, g.m));
    let table = CosetTable { lattice: lat, translations, reps };

    let copies = tt.copies.len() as u64;
    let total = found.len() as u64;
    if !total.is_multiple_of(copies) {
        return Err(Error::Theorem(format!("{total} symmetries do not divide into {copies} copies")));
    }
    let index = total / copies;

    let tile_stabilizer = shape_stabilizer(lat, &tt.tile.cells).iter().filter(|g| member(g)).count() as u64;
    if tile_stabilizer != index {
        return Err(Error::Theorem(format!("tile {:?}: index {index} but {tile_stabilizer} symmetries fix the tile", tt.tile.cells)));
    }

    let mut new_centers: Vec<Center> = tile_points(&tt.tile.cells)
        .into_iter()
        .filter_map(|p| {
            let order = table.rotation_order_at(p);
            (order >= 2 && order > tt.group.table.rotation_order_at(p)).then_some(Center { at: p, order })
        })
        .collect();
    new_centers.sort_by_key(|c| (std::cmp::Reverse(c.order), c.at));

    let has_reflection = table.reps.iter().any(|g| table.coset_has_reflection(g));
    Ok(SymmetryReport {
        full_kind: name_type(&table),
        index,
        is_fundamental: index == 1,
        new_centers,
        has_reflection,
        tile_stabilizer,
        translations: table.translations.basis(),
    })
}

/// Classify one tile of the group it was generated by.
pub fn classify_tile(tile: &MarkedTile) -> Result<SymmetryReport> {
    let group = build_group(tile.group_kind, tile.params)?;
    full_symmetry_group(&generate_torus_tiling(tile, &group)?)
}

/// Classify many tiles, in order, on `workers` threads.
pub fn classify_tiles(tiles: &[MarkedTile], workers: usize) -> Result<Vec<SymmetryReport>> {
    let mut groups: BTreeMap<(GroupKind, crate::group::GroupParams), WallpaperGroup> = BTreeMap::new();
    for t in tiles.iter().filter(|t| !t.marked_only) {
        if let std::collections::btree_map::Entry::Vacant(v) = groups.entry((t.group_kind, t.params)) {
            v.insert(build_group(t.group_kind, t.params)?);
        }
    }
    let one = |t: &MarkedTile| -> Result<SymmetryReport> {
        if t.marked_only {
            return Ok(marked_only_report(t));
        }
        let g = &groups[&(t.group_kind, t.params)];
        full_symmetry_group(&generate_torus_tiling(t, g)?)
    };
    if workers == 1 {
        return tiles.iter().map(one).collect();
    }
    let pool =
        rayon::ThreadPoolBuilder::new().num_threads(workers).build().map_err(|e| Error::Inconsistent(format!("thread pool: {e}")))?;
    pool.install(|| tiles.par_iter().map(one).collect())
}

/// The decorated p3m1 triangle: its bare tiling is the triangle grid
/// refined by mirrors, of type p6m.
fn marked_only_report(t: &MarkedTile) -> SymmetryReport {
    let s = t.lattice.scale();
    let k = t.params.x as i64;
    SymmetryReport {
        full_kind: WallpaperType::P6m,
        index: 2,
        is_fundamental: false,
        new_centers: Vec::new(),
        has_reflection: true,
        tile_stabilizer: 2,
        translations: [ScaledPoint::new(k * s, 0), ScaledPoint::new(0, k * s)],
    }
}

/// One row of the counting tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRow {
    pub group: GroupKind,
    pub n: u64,
    #[serde(rename = "N")]
    pub tiles: u64,
    #[serde(rename = "S")]
    pub full: u64,
    #[serde(rename = "Nprime")]
    pub shapes: u64,
    #[serde(rename = "Sprime")]
    pub full_shapes: u64,
}

/// Counts for a finished classification.
pub fn tally(kind: GroupKind, n: u64, tiles: &[MarkedTile], reports: &[SymmetryReport]) -> CountRow {
    let shapes: BTreeSet<TileSignature> = tiles.iter().map(|t| t.shape_signature()).collect();
    let full: Vec<&MarkedTile> = tiles.iter().zip(reports).filter(|(t, r)| r.is_fundamental && !t.marked_only).map(|(t, _)| t).collect();
    let full_shapes: BTreeSet<TileSignature> = full.iter().map(|t| t.shape_signature()).collect();
    CountRow {
        group: kind,
        n,
        tiles: tiles.len() as u64,
        full: full.len() as u64,
        shapes: shapes.len() as u64,
        full_shapes: full_shapes.len() as u64,
    }
}

/// Enumerate, classify, check the theorems and count.
pub fn classified_size(kind: GroupKind, n: u64, opts: &EnumerateOptions) -> Result<(Vec<MarkedTile>, Vec<SymmetryReport>)> {
    let tiles = match special_case_tiles(kind, n) {
        Some(t) => t,
        None => {
            let admissible = crate::group::admissible_sizes(kind, n).iter().any(|e| e.n == n);
            if admissible {
                enumerate_size(kind, n, opts)?
            } else {
                Vec::new()
            }
        }
    };
    let reports = classify_tiles(&tiles, opts.workers)?;
    for check in assert_theorems(kind, &tiles, &reports) {
        if !check.passed {
            return Err(Error::Theorem(format!("{}: {}", check.name, check.detail)));
        }
    }
    Ok((tiles, reports))
}

pub fn count_row(kind: GroupKind, n: u64, opts: &EnumerateOptions) -> Result<CountRow> {
    let (tiles, reports) = classified_size(kind, n, opts)?;
    Ok(tally(kind, n, &tiles, &reports))
}

/// Outcome of one machine-checked statement about a classification run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn is_square_block(cells: &BTreeSet<Cell>) -> bool {
    let k = (cells.len() as f64).sqrt().round() as i64;
    let min_a = cells.iter().map(|c| c.a).min().unwrap_or(0);
    let min_b = cells.iter().map(|c| c.b).min().unwrap_or(0);
    k * k == cells.len() as i64 && cells.iter().all(|c| c.a - min_a < k && c.b - min_b < k)
}

/// Statements every classification must satisfy, per generating group.
pub fn assert_theorems(kind: GroupKind, tiles: &[MarkedTile], reports: &[SymmetryReport]) -> Vec<TheoremCheck> {
    let mut out = Vec::new();
    let first_bad = |pred: &dyn Fn(&MarkedTile, &SymmetryReport) -> bool| {
        tiles
            .iter()
            .zip(reports)
            .find(|(t, r)| !pred(t, r))
            .map(|(t, r)| format!("tile {:?} classified {} index {}", t.cells, r.full_kind, r.index))
    };
    let mut push = |name: &str, bad: Option<String>| {
        out.push(TheoremCheck { name: name.into(), passed: bad.is_none(), detail: bad.unwrap_or_else(|| "ok".into()) });
    };

    push(
        "fundamental iff trivial tile stabilizer",
        first_bad(&|t, r| t.marked_only || (r.index == r.tile_stabilizer && r.is_fundamental == (r.index == 1))),
    );
    match kind {
        GroupKind::P4G => push(
            "p4g: only the square tile has a larger symmetry group, of type p4m",
            first_bad(&|t, r| {
                let square = is_square_block(&t.cells);
                square == !r.is_fundamental && (!square || r.full_kind == WallpaperType::P4m)
            }),
        ),
        GroupKind::P31M => {
            push("p31m: every tiling has full group p31m", first_bad(&|_, r| r.is_fundamental && r.full_kind == WallpaperType::P31m))
        }
        GroupKind::P4M | GroupKind::P6M => {
            push("no tilings for this group", (!tiles.is_empty()).then(|| format!("{} tiles produced", tiles.len())))
        }
        GroupKind::P3M1 => push(
            "p3m1: only the decorated triangle",
            (tiles.len() > 1 || tiles.iter().any(|t| !t.marked_only)).then(|| format!("{} tiles produced", tiles.len())),
        ),
        _ => {}
    }
    if matches!(kind, GroupKind::P4 | GroupKind::P4G | GroupKind::P3 | GroupKind::P31M | GroupKind::P6) {
        push(
            "full group is of the generating family",
            first_bad(&|_, r| {
                r.is_fundamental == (r.full_kind.group_kind() == Some(kind)) || (r.index > 1 && r.full_kind.group_kind() == Some(kind))
            }),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_tiles;
    use crate::group::GroupParams;

    fn group(kind: GroupKind, x: u32, y: u32) -> WallpaperGroup {
        build_group(kind, GroupParams::new(x, y)).unwrap()
    }

    fn reports(kind: GroupKind, n: u64) -> Vec<(MarkedTile, SymmetryReport)> {
        let (tiles, reports) = classified_size(kind, n, &EnumerateOptions::default()).unwrap();
        tiles.into_iter().zip(reports).collect()
    }

    #[test]
    fn unit_square_torus() {
        let g = group(GroupKind::P4, 1, 1);
        let tiles = enumerate_tiles(&g, &EnumerateOptions::default()).unwrap();
        let tt = generate_torus_tiling(&tiles[0], &g).unwrap();
        assert_eq!(tt.copies.len() * tiles[0].n(), tt.cell_count());
        let r = full_symmetry_group(&tt).unwrap();
        assert_eq!(r.full_kind, WallpaperType::P4m);
        assert_eq!(r.index, 8);
        assert_eq!(r.translations, [ScaledPoint::new(2, 0), ScaledPoint::new(0, 2)]);
    }

    #[test]
    fn domino_is_p4g() {
        let r = reports(GroupKind::P4, 2);
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].1.full_kind, WallpaperType::P4g);
        assert!(!r[0].1.is_fundamental);
    }

    #[test]
    fn rhombus_is_p6m() {
        let r = reports(GroupKind::P3, 2);
        assert_eq!(r[0].1.full_kind, WallpaperType::P6m);
    }

    #[test]
    fn hexagon_family() {
        let mut kinds: Vec<_> =
            reports(GroupKind::P3, 6).into_iter().filter(|(_, r)| !r.is_fundamental).map(|(_, r)| r.full_kind).collect();
        kinds.sort();
        assert_eq!(kinds, vec![WallpaperType::P31m, WallpaperType::P6, WallpaperType::P6m]);
    }

    #[test]
    fn every_partition_is_exact() {
        let g = group(GroupKind::P6, 2, 1);
        for t in enumerate_tiles(&g, &EnumerateOptions::default()).unwrap() {
            let tt = generate_torus_tiling(&t, &g).unwrap();
            assert_eq!(tt.copies.len() * 7, tt.cell_count());
        }
    }

    #[test]
    fn broken_tile_is_rejected() {
        let g = group(GroupKind::P4, 1, 1);
        let mut t = enumerate_tiles(&g, &EnumerateOptions::default()).unwrap().remove(0);
        t.cells.insert(Cell::square(5, 5));
        assert!(matches!(generate_torus_tiling(&t, &g), Err(Error::Partition(_))));
    }

    #[test]
    fn rotor_gains_three_fold_centers() {
        let r: Vec<_> = reports(GroupKind::P6, 7).into_iter().filter(|(_, r)| !r.is_fundamental).collect();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].1.full_kind, WallpaperType::P6);
        assert!(r[0].1.index > 1);
        assert!(r[0].1.new_centers.iter().any(|c| c.order == 3));
    }

    #[test]
    fn p4_rows() {
        let row = count_row(GroupKind::P4, 5, &EnumerateOptions::default()).unwrap();
        assert_eq!((row.tiles, row.full, row.shapes, row.full_shapes), (12, 9, 8, 7));
    }

    #[test]
    fn special_rows() {
        let row = count_row(GroupKind::P3M1, 4, &EnumerateOptions::default()).unwrap();
        assert_eq!((row.tiles, row.full, row.shapes, row.full_shapes), (1, 0, 1, 0));
        let row = count_row(GroupKind::P4M, 4, &EnumerateOptions::default()).unwrap();
        assert_eq!((row.tiles, row.full, row.shapes, row.full_shapes), (0, 0, 0, 0));
    }

    #[test]
    fn report_ignores_markings() {
        let g = group(GroupKind::P4, 3, 1);
        let t = enumerate_tiles(&g, &EnumerateOptions::default()).unwrap().remove(3);
        let mut shuffled = t.clone();
        shuffled.centers.reverse();
        let a = full_symmetry_group(&generate_torus_tiling(&t, &g).unwrap()).unwrap();
        let b = full_symmetry_group(&generate_torus_tiling(&shuffled, &g).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
