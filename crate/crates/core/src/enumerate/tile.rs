use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{GroupKind, GroupParams, WallpaperGroup};
use crate::isometry::{lattice_point_group, Mat2};
use crate::lattice::{self, Cell, LatticeKind, Orient, ScaledPoint};

/// A rotation center of the generating group, with its order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Center {
    pub at: ScaledPoint,
    pub order: u32,
}

/// A completed tile: its cells plus the rotation centers on its boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedTile {
    pub group_kind: GroupKind,
    pub params: GroupParams,
    pub lattice: LatticeKind,
    pub cells: BTreeSet<Cell>,
    /// Sorted by decreasing order, then position.
    pub centers: Vec<Center>,
    /// Boundary edges lying on mirror axes of the generating group.
    pub mirror_edges: Vec<(ScaledPoint, ScaledPoint)>,
    /// A fundamental domain only when decorated with an asymmetric motif.
    pub marked_only: bool,
}

impl MarkedTile {
    pub fn n(&self) -> usize {
        self.cells.len()
    }

    pub fn signature(&self) -> TileSignature {
        signature_of(self.lattice, &self.cells, &self.centers)
    }

    /// Congruence class of the bare shape, ignoring centers.
    pub fn shape_signature(&self) -> TileSignature {
        signature_of(self.lattice, &self.cells, &[])
    }

    pub fn boundary_loop(&self) -> Vec<ScaledPoint> {
        lattice::boundary_loop(&self.cells)
    }
}

/// Canonical form of a marked tile under the lattice point group and
/// lattice translations.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TileSignature {
    cells: Vec<(Orient, i64, i64)>,
    centers: Vec<(u32, i64, i64)>,
}

fn signature_of(lat: LatticeKind, cells: &BTreeSet<Cell>, centers: &[Center]) -> TileSignature {
    let s = lat.scale();
    lattice_point_group(lat).iter().map(|m| transformed_signature(lat, s, m, cells, centers)).min().expect("point group is non-empty")
}

fn transformed_signature(lat: LatticeKind, s: i64, m: &Mat2, cells: &BTreeSet<Cell>, centers: &[Center]) -> TileSignature {
    let imgs: Vec<Cell> = cells.iter().map(|c| Cell::from_center(lat, m.apply(c.center())).expect("point group maps cells")).collect();
    let anchor = *imgs.iter().min().expect("non-empty tile");
    let shift = ScaledPoint::new(-anchor.a * s, -anchor.b * s);
    let mut cell_keys: Vec<_> = imgs.iter().map(|c| (c.orient, c.a - anchor.a, c.b - anchor.b)).collect();
    cell_keys.sort_unstable();
    let mut center_keys: Vec<_> = centers
        .iter()
        .map(|c| {
            let p = m.apply(c.at) + shift;
            (c.order, p.px, p.py)
        })
        .collect();
    center_keys.sort_unstable();
    TileSignature { cells: cell_keys, centers: center_keys }
}

/// Whether `p` is on the boundary of the union of `cells`.
fn vertex_on_boundary(cells: &BTreeSet<Cell>, p: ScaledPoint, lat: LatticeKind) -> bool {
    lattice::cells_touching_point(p, lat).map(|around| around.iter().any(|c| !cells.contains(c))).unwrap_or(false)
}

/// Record every rotation center of `group` on the boundary of `cells`,
/// and the boundary edges that lie on its mirror axes.
pub fn attach_centers(cells: &BTreeSet<Cell>, group: &WallpaperGroup) -> MarkedTile {
    let lat = group.lattice;
    let table = &group.table;
    let boundary = lattice::boundary_edges(cells);

    let mut points = BTreeSet::new();
    for &(p, q) in &boundary {
        points.insert(p);
        points.insert(lattice::edge_key(p, q));
    }
    let mut centers: Vec<Center> = points
        .into_iter()
        .filter(|&p| {
            // vertex points must really be on the boundary; midpoints of
            // boundary edges always are
            let is_vertex = p.px % lat.scale() == 0 && p.py % lat.scale() == 0;
            !is_vertex || vertex_on_boundary(cells, p, lat)
        })
        .filter_map(|p| {
            let order = table.rotation_order_at(p);
            (order >= 2).then_some(Center { at: p, order })
        })
        .collect();
    centers.sort_by_key(|c| (Reverse(c.order), c.at));

    let mut mirror_edges: Vec<_> = if table.reps.iter().any(|g| !g.is_proper()) {
        boundary.iter().copied().filter(|&(p, q)| table.mirror_contains(p, q)).collect()
    } else {
        Vec::new()
    };
    mirror_edges.sort();

    MarkedTile {
        group_kind: group.kind,
        params: group.params,
        lattice: lat,
        cells: cells.clone(),
        centers,
        mirror_edges,
        marked_only: false,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum CellRecord {
    Square(i64, i64),
    Triangle(i64, i64, String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct CenterRecord {
    at: [i64; 2],
    order: u32,
}

/// Tile exchange record; field order is part of the format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TileRecord {
    group: String,
    params: [u32; 2],
    n: usize,
    cells: Vec<CellRecord>,
    centers: Vec<CenterRecord>,
    scale: i64,
}

impl From<&MarkedTile> for TileRecord {
    fn from(t: &MarkedTile) -> Self {
        let cells = t
            .cells
            .iter()
            .map(|c| match c.orient {
                Orient::None => CellRecord::Square(c.a, c.b),
                Orient::Up => CellRecord::Triangle(c.a, c.b, "U".into()),
                Orient::Down => CellRecord::Triangle(c.a, c.b, "D".into()),
            })
            .collect();
        TileRecord {
            group: t.group_kind.name().to_string(),
            params: [t.params.x, t.params.y],
            n: t.n(),
            cells,
            centers: t.centers.iter().map(|c| CenterRecord { at: [c.at.px, c.at.py], order: c.order }).collect(),
            scale: t.lattice.scale(),
        }
    }
}

impl TileRecord {
    /// Rebuild the tile. Mirror edges are recomputed from the group when
    /// it can be built.
    pub fn to_tile(&self) -> Result<MarkedTile> {
        let kind: GroupKind = self.group.parse()?;
        let lat = kind.lattice();
        if self.scale != lat.scale() {
            return Err(Error::Format(format!("scale {} does not match {}", self.scale, kind)));
        }
        let cells: BTreeSet<Cell> = self
            .cells
            .iter()
            .map(|c| match (c, lat) {
                (CellRecord::Square(a, b), LatticeKind::Square) => Ok(Cell::square(*a, *b)),
                (CellRecord::Triangle(a, b, o), LatticeKind::Triangular) => match o.as_str() {
                    "U" => Ok(Cell::up(*a, *b)),
                    "D" => Ok(Cell::down(*a, *b)),
                    other => Err(Error::Format(format!("bad orientation {other:?}"))),
                },
                _ => Err(Error::Format("cell does not match lattice".into())),
            })
            .collect::<Result<_>>()?;
        if cells.len() != self.n {
            return Err(Error::Format(format!("n = {} but {} cells", self.n, cells.len())));
        }
        let params = GroupParams::new(self.params[0], self.params[1]);
        let mirror_edges = match crate::group::build_group(kind, params) {
            Ok(g) => attach_centers(&cells, &g).mirror_edges,
            Err(_) => Vec::new(),
        };
        Ok(MarkedTile {
            group_kind: kind,
            params,
            lattice: lat,
            cells,
            centers: self.centers.iter().map(|c| Center { at: ScaledPoint::new(c.at[0], c.at[1]), order: c.order }).collect(),
            mirror_edges,
            marked_only: kind == GroupKind::P3M1,
        })
    }
}

pub fn tiles_to_json(tiles: &[MarkedTile]) -> Result<String> {
    let records: Vec<TileRecord> = tiles.iter().map(TileRecord::from).collect();
    Ok(serde_json::to_string_pretty(&records)?)
}

pub fn tiles_from_json(text: &str) -> Result<Vec<MarkedTile>> {
    let records: Vec<TileRecord> = serde_json::from_str(text)?;
    records.iter().map(TileRecord::to_tile).collect()
}

/// Group the tiles by shape congruence class (ignoring centers).
pub fn congruence_classes<'a, I: IntoIterator<Item = &'a MarkedTile>>(tiles: I) -> BTreeMap<TileSignature, usize> {
    let mut out = BTreeMap::new();
    for t in tiles {
        *out.entry(t.shape_signature()).or_insert(0) += 1;
    }
    out
}
