//! SVG pictures of tiles and tilings, and the counting tables as text.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::classify::{CountRow, SymmetryReport, TorusTiling};
use crate::enumerate::{Center, MarkedTile};
use crate::error::{Error, Result};
use crate::isometry::Isometry;
use crate::lattice::{boundary_loop, Cell, LatticeKind, ScaledPoint};

const MARGIN: f64 = 12.0;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderStyle {
    /// Pixels per lattice unit.
    pub cell_px: u32,
    /// Fill colors, indexed by copy id modulo the palette length.
    pub palette: Vec<String>,
    pub show_centers: bool,
    pub show_axes: bool,
    /// Translation cells per side of a tiling patch.
    pub patch_radius: u32,
}

impl Default for RenderStyle {
    fn default() -> Self {
        RenderStyle {
            cell_px: 24,
            palette: [
                "#e8c872", "#8fb8de", "#b5d99c", "#f2a7a7", "#c9b3e6", "#f5d0a9", "#a8dadc", "#d4d4aa", "#e0bbd0", "#bcd4c4", "#f0c987",
                "#9fc5c0",
            ]
            .map(String::from)
            .to_vec(),
            show_centers: true,
            show_axes: false,
            patch_radius: 2,
        }
    }
}

impl RenderStyle {
    pub fn validate(&self) -> Result<()> {
        if self.cell_px < 4 {
            return Err(Error::Format(format!("cell_px must be at least 4, got {}", self.cell_px)));
        }
        if self.patch_radius < 1 {
            return Err(Error::Format("patch_radius must be at least 1".into()));
        }
        if self.palette.is_empty() {
            return Err(Error::Format("palette is empty".into()));
        }
        Ok(())
    }
}

/// Cartesian position of a scaled point, in lattice units.
pub fn to_cartesian(lat: LatticeKind, p: ScaledPoint) -> (f64, f64) {
    match lat {
        LatticeKind::Square => (p.px as f64 / 2.0, p.py as f64 / 2.0),
        LatticeKind::Triangular => {
            let (x, y) = (p.px as f64, p.py as f64);
            ((x + y / 2.0) / 6.0, y * 3f64.sqrt() / 12.0)
        }
    }
}

struct Canvas {
    lat: LatticeKind,
    px: f64,
    min_x: f64,
    max_y: f64,
    width: f64,
    height: f64,
    body: String,
}

impl Canvas {
    fn new<'a>(lat: LatticeKind, px: u32, points: impl IntoIterator<Item = &'a ScaledPoint>) -> Self {
        let (mut min_x, mut max_x, mut min_y, mut max_y) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for &p in points {
            let (x, y) = to_cartesian(lat, p);
            min_x = min_x.min(x);
            max_x = max_x.max(x);
            min_y = min_y.min(y);
            max_y = max_y.max(y);
        }
        let px = px as f64;
        Canvas {
            lat,
            px,
            min_x,
            max_y,
            width: (max_x - min_x) * px + 2.0 * MARGIN,
            height: (max_y - min_y) * px + 2.0 * MARGIN,
            body: String::new(),
        }
    }

    fn xy(&self, p: ScaledPoint) -> (f64, f64) {
        let (x, y) = to_cartesian(self.lat, p);
        ((x - self.min_x) * self.px + MARGIN, (self.max_y - y) * self.px + MARGIN)
    }

    fn outline(&mut self, pts: &[ScaledPoint], fill: &str) {
        let mut d = String::new();
        for (i, &p) in pts.iter().enumerate() {
            let (x, y) = self.xy(p);
            let _ = write!(d, "{}{x:.3},{y:.3} ", if i == 0 { "M" } else { "L" });
        }
        d.push('Z');
        let _ = writeln!(self.body, r##"<path d="{d}" fill="{fill}" stroke="#000" stroke-width="1.5" stroke-linejoin="round"/>"##);
    }

    fn segment(&mut self, p: ScaledPoint, q: ScaledPoint) {
        let ((x1, y1), (x2, y2)) = (self.xy(p), self.xy(q));
        let _ = writeln!(
            self.body,
            r##"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="#c0392b" stroke-width="2" stroke-dasharray="4 3"/>"##
        );
    }

    /// Filled disc for 4- and 6-fold centers, open circle for 3-fold,
    /// small gray disc for 2-fold and derived centers.
    fn marker(&mut self, c: &Center, derived: bool) {
        let (x, y) = self.xy(c.at);
        let r = (self.px / 6.0).clamp(2.5, 7.0);
        let glyph = match (derived, c.order) {
            (true, _) | (false, 2) => format!(r##"<circle cx="{x:.3}" cy="{y:.3}" r="{:.3}" fill="#888"/>"##, r * 0.6),
            (false, 3) => format!(r##"<circle cx="{x:.3}" cy="{y:.3}" r="{r:.3}" fill="#fff" stroke="#000" stroke-width="1.2"/>"##),
            _ => format!(r##"<circle cx="{x:.3}" cy="{y:.3}" r="{r:.3}" fill="#000"/>"##),
        };
        self.body.push_str(&glyph);
        self.body.push('\n');
    }

    fn finish(self) -> String {
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.3} {h:.3}\">\n{}</svg>\n",
            self.body,
            w = self.width.ceil(),
            h = self.height.ceil()
        )
    }
}

/// The tile outline with its rotation centers.
pub fn render_tile_svg(t: &MarkedTile, style: &RenderStyle) -> Result<String> {
    style.validate()?;
    let outline = boundary_loop(&t.cells);
    let mut canvas = Canvas::new(t.lattice, style.cell_px, &outline);
    canvas.outline(&outline, &style.palette[0]);
    if style.show_axes {
        for &(p, q) in &t.mirror_edges {
            canvas.segment(p, q);
        }
    }
    if style.show_centers {
        for c in &t.centers {
            canvas.marker(c, false);
        }
    }
    Ok(canvas.finish())
}

/// A Gauss-reduced basis of the same lattice, so patches come out compact.
fn reduced_basis(lat: LatticeKind, [mut b1, mut b2]: [ScaledPoint; 2]) -> [ScaledPoint; 2] {
    let norm = |p: ScaledPoint| {
        let (x, y) = to_cartesian(lat, p);
        x * x + y * y
    };
    let dot = |p: ScaledPoint, q: ScaledPoint| {
        let ((x1, y1), (x2, y2)) = (to_cartesian(lat, p), to_cartesian(lat, q));
        x1 * x2 + y1 * y2
    };
    if norm(b2) < norm(b1) {
        std::mem::swap(&mut b1, &mut b2);
    }
    loop {
        let k = (dot(b1, b2) / norm(b1)).round() as i64;
        b2 = b2 - k * b1;
        if norm(b2) >= norm(b1) - 1e-9 {
            return [b1, b2];
        }
        std::mem::swap(&mut b1, &mut b2);
    }
}

fn image_cells(g: &Isometry, cells: &BTreeSet<Cell>, lat: LatticeKind) -> BTreeSet<Cell> {
    cells.iter().map(|c| Cell::from_center(lat, g.apply(c.center())).expect("group maps cells")).collect()
}

/// A patch of the tiling: `patch_radius`² translation cells of copies,
/// colored by coset, with optional center and axis overlays.
pub fn render_tiling_svg(tt: &TorusTiling, report: Option<&SymmetryReport>, style: &RenderStyle) -> Result<String> {
    style.validate()?;
    let lat = tt.group.lattice;
    let [b1, b2] = reduced_basis(lat, tt.lambda_basis);
    let r = style.patch_radius as i64;
    let mut placed: Vec<(usize, Isometry)> = Vec::new();
    for i in 0..r {
        for j in 0..r {
            let shift = Isometry::translation(i * b1 + j * b2);
            for (k, rep) in tt.group.table.reps.iter().enumerate() {
                placed.push((k, shift.compose(rep)));
            }
        }
    }
    let outlines: Vec<(usize, &Isometry, Vec<ScaledPoint>)> =
        placed.iter().map(|(k, g)| (*k, g, boundary_loop(&image_cells(g, &tt.tile.cells, lat)))).collect();
    let mut canvas = Canvas::new(lat, style.cell_px, outlines.iter().flat_map(|(_, _, o)| o.iter()));
    for (k, _, outline) in &outlines {
        canvas.outline(outline, &style.palette[k % style.palette.len()]);
    }
    if style.show_axes {
        let mut segs = BTreeSet::new();
        for (_, g, _) in &outlines {
            for &(p, q) in &tt.tile.mirror_edges {
                let (a, b) = (g.apply(p), g.apply(q));
                segs.insert(if a <= b { (a, b) } else { (b, a) });
            }
        }
        for (p, q) in segs {
            canvas.segment(p, q);
        }
    }
    if style.show_centers {
        let mut marks: BTreeSet<(ScaledPoint, u32, bool)> = BTreeSet::new();
        for (_, g, _) in &outlines {
            for c in &tt.tile.centers {
                marks.insert((g.apply(c.at), c.order, false));
            }
            for c in report.map(|r| r.new_centers.as_slice()).unwrap_or(&[]) {
                marks.insert((g.apply(c.at), c.order, true));
            }
        }
        for (at, order, derived) in marks {
            canvas.marker(&Center { at, order }, derived);
        }
    }
    Ok(canvas.finish())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

impl FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            other => Err(Error::Format(format!("unknown table format {other:?}"))),
        }
    }
}

/// Rows ordered by group, then n.
pub fn emit_tables(rows: &[CountRow], format: TableFormat) -> Result<String> {
    let mut rows = rows.to_vec();
    rows.sort_by_key(|r| (r.group, r.n));
    match format {
        TableFormat::Json => Ok(serde_json::to_string_pretty(&rows)? + "\n"),
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in &rows {
                w.serialize(r).map_err(|e| Error::Format(e.to_string()))?;
            }
            if rows.is_empty() {
                w.write_record(["group", "n", "N", "S", "Nprime", "Sprime"]).map_err(|e| Error::Format(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Format(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Error::Format(e.to_string()))
        }
    }
}

pub fn parse_tables(text: &str, format: TableFormat) -> Result<Vec<CountRow>> {
    match format {
        TableFormat::Json => Ok(serde_json::from_str(text)?),
        TableFormat::Csv => csv::Reader::from_reader(text.as_bytes())
            .deserialize()
            .collect::<std::result::Result<Vec<CountRow>, _>>()
            .map_err(|e| Error::Format(e.to_string())),
    }
}
