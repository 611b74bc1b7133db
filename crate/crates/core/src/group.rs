//! Concrete wallpaper groups built from rotation centers and mirror axes
//! placed on the square or triangular lattice.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::isometry::{in_line_lattice, Isometry, Lattice2, Mat2};
use crate::lattice::{Cell, LatticeKind, ScaledPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    P3,
    P31M,
    P3M1,
    P4,
    P4G,
    P4M,
    P6,
    P6M,
}

impl GroupKind {
    pub const ALL: [GroupKind; 8] =
        [GroupKind::P3, GroupKind::P31M, GroupKind::P3M1, GroupKind::P4, GroupKind::P4G, GroupKind::P4M, GroupKind::P6, GroupKind::P6M];

    pub fn name(self) -> &'static str {
        match self {
            GroupKind::P3 => "p3",
            GroupKind::P31M => "p31m",
            GroupKind::P3M1 => "p3m1",
            GroupKind::P4 => "p4",
            GroupKind::P4G => "p4g",
            GroupKind::P4M => "p4m",
            GroupKind::P6 => "p6",
            GroupKind::P6M => "p6m",
        }
    }

    pub fn lattice(self) -> LatticeKind {
        match self {
            GroupKind::P4 | GroupKind::P4G | GroupKind::P4M => LatticeKind::Square,
            _ => LatticeKind::Triangular,
        }
    }

    /// Whether tiles are built by the backtracking search (as opposed to
    /// the empty / marked-only special cases).
    pub fn is_constructible(self) -> bool {
        !matches!(self, GroupKind::P3M1 | GroupKind::P4M | GroupKind::P6M)
    }

    /// Groups placed with a single size parameter `x`.
    pub fn single_param(self) -> bool {
        matches!(self, GroupKind::P4G | GroupKind::P31M | GroupKind::P3M1)
    }

    /// Groups whose tiles are confined to the region cut out by the
    /// mirror axes nearest the origin.
    pub fn has_region(self) -> bool {
        matches!(self, GroupKind::P4G | GroupKind::P31M)
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GroupKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        GroupKind::ALL.into_iter().find(|k| k.name().eq_ignore_ascii_case(s)).ok_or_else(|| Error::UnknownGroup(s.to_string()))
    }
}

/// Placement parameters: the second center sits at `x u + y v`, or the
/// nearest mirror axes sit at distance `x` (`y` unused).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GroupParams {
    pub x: u32,
    pub y: u32,
}

impl GroupParams {
    pub const fn new(x: u32, y: u32) -> Self {
        GroupParams { x, y }
    }

    pub const fn single(x: u32) -> Self {
        GroupParams { x, y: 0 }
    }

    /// Interchangeable parameter pairs are ordered `x >= y`.
    pub fn normalized(self, kind: GroupKind) -> Self {
        if kind.single_param() {
            GroupParams::single(self.x)
        } else if self.y > self.x {
            GroupParams::new(self.y, self.x)
        } else {
            self
        }
    }

    pub fn display_for(&self, kind: GroupKind) -> String {
        if kind.single_param() {
            format!("({})", self.x)
        } else {
            format!("({},{})", self.x, self.y)
        }
    }
}

impl fmt::Display for GroupParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Area of a fundamental domain in cells.
pub fn fundamental_area(kind: GroupKind, params: GroupParams) -> Result<u64> {
    let (x, y) = (params.x as u64, params.y as u64);
    let invalid = |reason| Err(Error::InvalidParams { kind, params, reason });
    match kind {
        GroupKind::P4 => {
            if x == 0 && y == 0 {
                return invalid("x and y must not both be 0");
            }
            if (x + y) % 2 != 0 {
                return invalid("x and y must have the same parity");
            }
            Ok((x * x + y * y) / 2)
        }
        GroupKind::P3 | GroupKind::P6 => {
            if x == 0 && y == 0 {
                return invalid("x and y must not both be 0");
            }
            let q = x * x + x * y + y * y;
            Ok(if kind == GroupKind::P3 { 2 * q } else { q })
        }
        GroupKind::P4G | GroupKind::P31M | GroupKind::P3M1 => {
            if x == 0 {
                return invalid("x must be at least 1");
            }
            Ok(match kind {
                GroupKind::P31M => 3 * x * x,
                _ => x * x,
            })
        }
        GroupKind::P4M | GroupKind::P6M => Err(Error::NotConstructible(kind)),
    }
}

/// One admissible tile size with every parameter choice realizing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeEntry {
    pub n: u64,
    pub params: Vec<GroupParams>,
    /// Only a fundamental domain when decorated with an asymmetric motif.
    pub marked_only: bool,
}

/// Every `n <= max_n` realizable for `kind`, ascending.
pub fn admissible_sizes(kind: GroupKind, max_n: u64) -> Vec<SizeEntry> {
    let mut by_n: BTreeMap<u64, Vec<GroupParams>> = BTreeMap::new();
    match kind {
        GroupKind::P4M | GroupKind::P6M => return Vec::new(),
        _ if kind.single_param() => {
            for x in 1u32.. {
                let n = fundamental_area(kind, GroupParams::single(x)).expect("x >= 1");
                if n > max_n {
                    break;
                }
                by_n.entry(n).or_default().push(GroupParams::single(x));
            }
        }
        _ => {
            // the area grows at least like x^2 / 2
            let bound = ((2 * max_n) as f64).sqrt() as u32 + 2;
            for x in 0..=bound {
                for y in 0..=x {
                    let p = GroupParams::new(x, y);
                    if let Ok(n) = fundamental_area(kind, p) {
                        if n <= max_n {
                            by_n.entry(n).or_default().push(p);
                        }
                    }
                }
            }
        }
    }
    by_n.into_iter()
        .map(|(n, mut params)| {
            params.sort();
            SizeEntry { n, params, marked_only: kind == GroupKind::P3M1 }
        })
        .collect()
}

/// Coset representatives of a wallpaper group modulo a translation lattice.
#[derive(Debug, Clone)]
pub struct CosetTable {
    pub lattice: LatticeKind,
    pub translations: Lattice2,
    /// One element per linear part, translation reduced modulo the lattice.
    pub reps: Vec<Isometry>,
}

impl CosetTable {
    pub fn reduce_cell(&self, c: &Cell) -> Cell {
        Cell::from_center(self.lattice, self.translations.reduce(c.center())).expect("lattice translation keeps cells")
    }

    /// Whether `g` belongs to the group.
    pub fn contains(&self, g: &Isometry) -> bool {
        self.reps.iter().any(|r| r.m == g.m && self.translations.contains(g.t - r.t))
    }

    /// Elements (modulo translations) fixing `p`.
    pub fn stabilizer(&self, p: ScaledPoint) -> impl Iterator<Item = &Isometry> + '_ {
        self.reps.iter().filter(move |g| self.translations.contains(g.apply(p) - p))
    }

    /// Order of the rotation subgroup fixing `p` (1 when `p` is not a center).
    pub fn rotation_order_at(&self, p: ScaledPoint) -> u32 {
        self.stabilizer(p).filter(|g| g.is_proper()).count() as u32
    }

    /// Whether some reflection of the group fixes both endpoints of a segment.
    pub fn mirror_contains(&self, p: ScaledPoint, q: ScaledPoint) -> bool {
        self.reps.iter().filter(|g| !g.is_proper()).any(|g| {
            let dp = g.apply(p) - p;
            let dq = g.apply(q) - q;
            dp == dq && self.translations.contains(dp)
        })
    }

    /// Whether the coset with improper linear part `g.m` contains a true
    /// reflection rather than only glide reflections.
    pub fn coset_has_reflection(&self, g: &Isometry) -> bool {
        if g.is_proper() {
            return false;
        }
        let ipm = Mat2::IDENTITY.add(&g.m);
        let gens = self.translations.basis().map(|b| ipm.apply(b));
        in_line_lattice(ipm.apply(g.t), &gens)
    }

    /// All rotation centers modulo translations, reduced into the
    /// fundamental box, with their orders.
    pub fn rotation_centers(&self) -> BTreeMap<ScaledPoint, u32> {
        let mut out = BTreeMap::new();
        let basis = self.translations.basis();
        for g in self.reps.iter().filter(|g| g.is_proper() && g.m != Mat2::IDENTITY) {
            let imm = Mat2::IDENTITY.sub(&g.m);
            let det = imm.det();
            let adj = imm.adjugate();
            for i in 0..det.abs() {
                for j in 0..det.abs() {
                    let rhs = g.t + i * basis[0] + j * basis[1];
                    let num = adj.apply(rhs);
                    if num.px % det != 0 || num.py % det != 0 {
                        continue;
                    }
                    let p = self.translations.reduce(ScaledPoint::new(num.px / det, num.py / det));
                    out.entry(p).or_insert_with(|| self.rotation_order_at(p));
                }
            }
        }
        out
    }

    pub fn point_group(&self) -> BTreeSet<Mat2> {
        self.reps.iter().map(|g| g.m).collect()
    }
}

/// Canonical orbit identifier: the least Λ-reduced image of a cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrbitLabel(pub Cell);

#[derive(Debug, Clone)]
pub struct WallpaperGroup {
    pub kind: GroupKind,
    pub params: GroupParams,
    pub lattice: LatticeKind,
    pub generators: Vec<Isometry>,
    pub table: CosetTable,
    /// The 4- or 6-fold center placed at the origin.
    pub black: ScaledPoint,
    /// The second placed center (`x u + y v`); for p31m the axis
    /// intersection `x (u + v)`, for p4g absent.
    pub white: Option<ScaledPoint>,
    pub n: u64,
}

impl WallpaperGroup {
    pub fn lambda_basis(&self) -> [ScaledPoint; 2] {
        self.table.translations.basis()
    }

    pub fn cosets(&self) -> &[Isometry] {
        &self.table.reps
    }

    pub fn orbit_label(&self, c: &Cell) -> OrbitLabel {
        let label = self
            .table
            .reps
            .iter()
            .map(|g| self.table.reduce_cell(&Cell::from_center(self.lattice, g.apply(c.center())).expect("group maps cells to cells")))
            .min()
            .expect("identity coset");
        OrbitLabel(label)
    }

    /// Whether a cell lies in the closed region bounded by the mirror
    /// axes nearest the origin (always true for groups without one).
    pub fn in_region(&self, c: &Cell) -> bool {
        let x = self.params.x as i64;
        match self.kind {
            GroupKind::P4G => (-x..x).contains(&c.a) && (-x..x).contains(&c.b),
            GroupKind::P31M => {
                // triangle with corners x(u+v), x(-2u+v), x(u-2v):
                // q <= x, p <= x, p + q >= -x on every vertex
                crate::lattice::cell_vertices(c).iter().all(|v| {
                    let (p, q) = (v.px / 6, v.py / 6);
                    q <= x && p <= x && p + q >= -x
                })
            }
            _ => true,
        }
    }

    /// Number of cells in one fundamental parallelogram of Λ.
    pub fn cells_per_lambda(&self) -> i64 {
        let s = self.lattice.scale();
        self.table.translations.covolume() / (s * s) * self.lattice.cells_per_unit()
    }

    /// Cells whose centers lie in the fundamental box of Λ.
    pub fn lambda_cells(&self) -> Vec<Cell> {
        let lat = &self.table.translations;
        match self.lattice {
            LatticeKind::Square => lat.box_points(2, ScaledPoint::new(1, 1)),
            LatticeKind::Triangular => {
                let mut pts = lat.box_points(6, ScaledPoint::new(2, 2));
                pts.extend(lat.box_points(6, ScaledPoint::new(4, 4)));
                pts
            }
        }
        .into_iter()
        .map(|p| Cell::from_center(self.lattice, p).expect("centers"))
        .collect()
    }
}

/// Build the group generated by the placed centers / axes of `kind`.
pub fn build_group(kind: GroupKind, params: GroupParams) -> Result<WallpaperGroup> {
    if !kind.is_constructible() {
        return Err(Error::NotConstructible(kind));
    }
    let params = params.normalized(kind);
    let n = fundamental_area(kind, params)?;
    let lattice = kind.lattice();
    let s = lattice.scale();
    let (x, y) = (params.x as i64, params.y as i64);
    let rot120 = Mat2::ROT60.mul(&Mat2::ROT60);
    let at = |p: i64, q: i64| ScaledPoint::new(p * s, q * s);

    let (generators, white) = match kind {
        GroupKind::P4 => {
            let w = at(x, y);
            (vec![Isometry::rotation_about(Mat2::ROT90, ScaledPoint::ORIGIN), Isometry::rotation_about(Mat2::ROT90, w)], Some(w))
        }
        GroupKind::P4G => {
            // mirror in the vertical line through x u
            let mirror = Isometry::new(Mat2::new(-1, 0, 0, 1), at(2 * x, 0));
            (vec![Isometry::rotation_about(Mat2::ROT90, ScaledPoint::ORIGIN), mirror], None)
        }
        GroupKind::P3 => {
            let w = at(x, y);
            (vec![Isometry::rotation_about(rot120, ScaledPoint::ORIGIN), Isometry::rotation_about(rot120, w)], Some(w))
        }
        GroupKind::P31M => {
            // mirror in the line through x(u+v) and x(-2u+v), i.e. q = x
            let mirror = Isometry::new(Mat2::new(1, 1, 0, -1), at(-x, 2 * x));
            (vec![Isometry::rotation_about(rot120, ScaledPoint::ORIGIN), mirror], Some(at(x, x)))
        }
        GroupKind::P6 => {
            let w = at(x, y);
            (vec![Isometry::rotation_about(Mat2::ROT60, ScaledPoint::ORIGIN), Isometry::rotation_about(rot120, w)], Some(w))
        }
        _ => unreachable!(),
    };

    let table = close_cosets(lattice, &generators)?;
    let group = WallpaperGroup { kind, params, lattice, generators, table, black: ScaledPoint::ORIGIN, white, n };

    let cells = group.cells_per_lambda();
    let index = group.table.reps.len() as i64;
    if cells % index != 0 || (cells / index) as u64 != n {
        return Err(Error::Inconsistent(format!(
            "{kind}{params}: {cells} cells per translation cell over {index} cosets, expected area {n}"
        )));
    }
    Ok(group)
}

/// Find the translation subgroup and one coset representative per linear
/// part of the group generated by `gens`.
fn close_cosets(lattice: LatticeKind, gens: &[Isometry]) -> Result<CosetTable> {
    // seed translations from short words over the generators and inverses
    let letters: Vec<Isometry> = gens.iter().flat_map(|g| [*g, g.inverse()]).collect();
    let mut words = vec![Isometry::IDENTITY];
    let mut frontier = vec![Isometry::IDENTITY];
    for _ in 0..4 {
        let next: Vec<Isometry> = frontier.iter().flat_map(|w| letters.iter().map(move |l| l.compose(w))).collect();
        words.extend(next.iter().copied());
        frontier = next;
    }
    let mut by_linear: BTreeMap<Mat2, ScaledPoint> = BTreeMap::new();
    let mut translations: BTreeSet<ScaledPoint> = BTreeSet::new();
    for w in &words {
        match by_linear.get(&w.m) {
            Some(&t0) => {
                if w.t != t0 {
                    translations.insert(w.m.inverse().apply(w.t - t0));
                }
            }
            None => {
                by_linear.insert(w.m, w.t);
            }
        }
    }

    loop {
        let lat = Lattice2::from_generators(translations.iter().copied())?;
        let mut reps: BTreeMap<Mat2, ScaledPoint> = BTreeMap::from([(Mat2::IDENTITY, ScaledPoint::ORIGIN)]);
        let mut queue = vec![Isometry::IDENTITY];
        let mut found = None;
        'bfs: while let Some(g) = queue.pop() {
            for gen in gens {
                let h = gen.compose(&g);
                let t = lat.reduce(h.t);
                match reps.get(&h.m) {
                    None => {
                        reps.insert(h.m, t);
                        queue.push(Isometry::new(h.m, t));
                    }
                    Some(&t0) if t0 != t => {
                        found = Some(h.m.inverse().apply(t - t0));
                        break 'bfs;
                    }
                    _ => {}
                }
            }
        }
        match found {
            Some(extra) => {
                translations.insert(extra);
            }
            None => {
                let reps = reps.into_iter().map(|(m, t)| Isometry::new(m, t)).collect();
                return Ok(CosetTable { lattice, translations: lat, reps });
            }
        }
    }
}
