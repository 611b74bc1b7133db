//! Exact lattice isometries and 2D integer translation lattices.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{Cell, LatticeKind, ScaledPoint};

/// Integer 2x2 matrix `[[a, b], [c, d]]` acting on column vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mat2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2::new(1, 0, 0, 1);

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn apply(&self, p: ScaledPoint) -> ScaledPoint {
        ScaledPoint::new(self.a * p.px + self.b * p.py, self.c * p.px + self.d * p.py)
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2::new(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d, self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)
    }

    /// Inverse of a unimodular matrix.
    pub fn inverse(&self) -> Mat2 {
        let det = self.det();
        debug_assert!(det == 1 || det == -1);
        Mat2::new(self.d * det, -self.b * det, -self.c * det, self.a * det)
    }

    pub fn adjugate(&self) -> Mat2 {
        Mat2::new(self.d, -self.b, -self.c, self.a)
    }

    pub fn sub(&self, o: &Mat2) -> Mat2 {
        Mat2::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }

    pub fn add(&self, o: &Mat2) -> Mat2 {
        Mat2::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }

    pub fn is_proper(&self) -> bool {
        self.det() == 1
    }

    /// Smallest `k >= 1` with `m^k = I` (at most 6 for lattice matrices).
    pub fn order(&self) -> u32 {
        let mut p = *self;
        for k in 1..=12 {
            if p == Mat2::IDENTITY {
                return k;
            }
            p = p.mul(self);
        }
        0
    }

    /// Counterclockwise rotation by 90 degrees (square lattice).
    pub const ROT90: Mat2 = Mat2::new(0, -1, 1, 0);
    /// Counterclockwise rotation by 60 degrees in the triangular basis
    /// (`u -> v`, `v -> v - u`).
    pub const ROT60: Mat2 = Mat2::new(0, -1, 1, 1);
}

/// The full point group of a lattice: 8 elements for squares, 12 for
/// triangles, identity first.
pub fn lattice_point_group(lattice: LatticeKind) -> Vec<Mat2> {
    let (rot, mirror) = match lattice {
        LatticeKind::Square => (Mat2::ROT90, Mat2::new(1, 0, 0, -1)),
        LatticeKind::Triangular => (Mat2::ROT60, Mat2::new(0, 1, 1, 0)),
    };
    let mut out = vec![Mat2::IDENTITY];
    let mut p = rot;
    while p != Mat2::IDENTITY {
        out.push(p);
        p = p.mul(&rot);
    }
    let rotations = out.clone();
    out.extend(rotations.iter().map(|r| r.mul(&mirror)));
    out
}

/// An isometry `p -> m p + t` in scaled lattice coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Isometry {
    pub m: Mat2,
    pub t: ScaledPoint,
}

impl Isometry {
    pub const IDENTITY: Isometry = Isometry { m: Mat2::IDENTITY, t: ScaledPoint::ORIGIN };

    pub const fn new(m: Mat2, t: ScaledPoint) -> Self {
        Isometry { m, t }
    }

    pub fn translation(t: ScaledPoint) -> Self {
        Isometry::new(Mat2::IDENTITY, t)
    }

    /// Rotation by the linear part `m` about `center`.
    pub fn rotation_about(m: Mat2, center: ScaledPoint) -> Self {
        Isometry::new(m, center - m.apply(center))
    }

    pub fn apply(&self, p: ScaledPoint) -> ScaledPoint {
        self.m.apply(p) + self.t
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        Isometry::new(self.m.mul(&other.m), self.m.apply(other.t) + self.t)
    }

    pub fn inverse(&self) -> Isometry {
        let mi = self.m.inverse();
        Isometry::new(mi, -mi.apply(self.t))
    }

    pub fn is_proper(&self) -> bool {
        self.m.is_proper()
    }
}

impl fmt::Display for Isometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]+{}", self.m.a, self.m.b, self.m.c, self.m.d, self.t)
    }
}

/// Image of a cell under `g`.
pub fn apply_to_cell(g: &Isometry, c: &Cell) -> Result<Cell> {
    Cell::from_center(c.lattice, g.apply(c.center())).ok_or(Error::NotACell { cell: *c })
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        // a = q b + r, with r = a - q b
        let q = a.div_euclid(b);
        (g, y, x - q * y)
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A full-rank sublattice of Z^2 in Hermite normal form, with basis
/// `(a, 0)` and `(b, d)`, `a, d > 0`, `0 <= b < a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Lattice2 {
    a: i64,
    b: i64,
    d: i64,
}

impl Lattice2 {
    /// The lattice spanned by `gens`; errors if they do not span a
    /// full-rank lattice.
    pub fn from_generators<I: IntoIterator<Item = ScaledPoint>>(gens: I) -> Result<Self> {
        let mut row_a = 0i64;
        let mut v2 = ScaledPoint::ORIGIN;
        for w in gens {
            if w.py == 0 {
                row_a = gcd(row_a, w.px);
                continue;
            }
            if v2.py == 0 {
                v2 = if w.py < 0 { -w } else { w };
                continue;
            }
            let (g, s, t) = ext_gcd(v2.py, w.py);
            let new_v2 = s * v2 + t * w;
            let rest = (w.py / g) * v2 - (v2.py / g) * w;
            debug_assert_eq!(rest.py, 0);
            v2 = new_v2;
            row_a = gcd(row_a, rest.px);
        }
        if row_a == 0 || v2.py == 0 {
            return Err(Error::Inconsistent("translations do not span a full-rank lattice".into()));
        }
        Ok(Lattice2 { a: row_a, b: v2.px.rem_euclid(row_a), d: v2.py })
    }

    pub fn basis(&self) -> [ScaledPoint; 2] {
        [ScaledPoint::new(self.a, 0), ScaledPoint::new(self.b, self.d)]
    }

    /// Area of a fundamental parallelogram in scaled units.
    pub fn covolume(&self) -> i64 {
        self.a * self.d
    }

    /// Canonical representative of `p` modulo the lattice, with
    /// `0 <= x < a` and `0 <= y < d`.
    pub fn reduce(&self, p: ScaledPoint) -> ScaledPoint {
        let k = p.py.div_euclid(self.d);
        let q = ScaledPoint::new(p.px - k * self.b, p.py - k * self.d);
        ScaledPoint::new(q.px.rem_euclid(self.a), q.py)
    }

    pub fn contains(&self, p: ScaledPoint) -> bool {
        self.reduce(p) == ScaledPoint::ORIGIN
    }

    pub fn is_sublattice_of(&self, other: &Lattice2) -> bool {
        self.basis().iter().all(|&v| other.contains(v))
    }

    /// Points of the fundamental box that lie on the grid `offset + step Z^2`.
    pub fn box_points(&self, step: i64, offset: ScaledPoint) -> Vec<ScaledPoint> {
        let mut out = Vec::new();
        let start_y = offset.py.rem_euclid(step);
        let start_x = offset.px.rem_euclid(step);
        let mut y = start_y;
        while y < self.d {
            let mut x = start_x;
            while x < self.a {
                out.push(ScaledPoint::new(x, y));
                x += step;
            }
            y += step;
        }
        out
    }

    /// Whether `m` maps the lattice onto itself.
    pub fn is_invariant_under(&self, m: &Mat2) -> bool {
        self.basis().iter().all(|&v| self.contains(m.apply(v)))
    }
}

/// Membership of `w` in the rank-one lattice spanned by `gens`
/// (all assumed parallel).
pub fn in_line_lattice(w: ScaledPoint, gens: &[ScaledPoint]) -> bool {
    let nonzero: Vec<_> = gens.iter().copied().filter(|g| *g != ScaledPoint::ORIGIN).collect();
    if nonzero.is_empty() {
        return w == ScaledPoint::ORIGIN;
    }
    let g0 = nonzero[0];
    let k = gcd(g0.px, g0.py);
    let dir = ScaledPoint::new(g0.px / k, g0.py / k);
    let coef = |v: ScaledPoint| -> Option<i64> {
        if dir.px != 0 {
            (v.px % dir.px == 0 && v.px / dir.px * dir.py == v.py).then(|| v.px / dir.px)
        } else {
            (v.py % dir.py == 0 && v.px == 0).then(|| v.py / dir.py)
        }
    };
    let mut step = 0;
    for g in &nonzero {
        step = gcd(step, coef(*g).expect("parallel generators"));
    }
    match coef(w) {
        Some(c) => c % step == 0,
        None => false,
    }
}

/// Distinct translation vectors, handy for building lattices.
pub fn dedup_points<I: IntoIterator<Item = ScaledPoint>>(pts: I) -> Vec<ScaledPoint> {
    pts.into_iter().collect::<BTreeSet<_>>().into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn point_groups_are_closed() {
        for (lat, size) in [(LatticeKind::Square, 8), (LatticeKind::Triangular, 12)] {
            let pg = lattice_point_group(lat);
            assert_eq!(pg.len(), size);
            let set: BTreeSet<_> = pg.iter().copied().collect();
            assert_eq!(set.len(), size);
            for a in &pg {
                assert!(a.det() == 1 || a.det() == -1);
                for b in &pg {
                    assert!(set.contains(&a.mul(b)));
                }
            }
        }
    }

    #[test]
    fn rotations_act_on_cells() {
        let r90 = Isometry::new(Mat2::ROT90, ScaledPoint::ORIGIN);
        assert_eq!(apply_to_cell(&r90, &Cell::square(0, 0)).unwrap(), Cell::square(-1, 0));
        let r60 = Isometry::new(Mat2::ROT60, ScaledPoint::ORIGIN);
        assert_eq!(apply_to_cell(&r60, &Cell::up(0, 0)).unwrap(), Cell::down(-1, 0));
        assert_eq!(apply_to_cell(&Isometry::IDENTITY, &Cell::down(3, -2)).unwrap(), Cell::down(3, -2));
        let half = Isometry::translation(ScaledPoint::new(1, 0));
        assert!(apply_to_cell(&half, &Cell::square(0, 0)).is_err());
    }

    #[test]
    fn rotation_vertex_images_match_cells() {
        // the image cell computed from the centroid has the mapped vertex set
        let r60 = Isometry::rotation_about(Mat2::ROT60, ScaledPoint::new(6, 0));
        for c in [Cell::up(0, 0), Cell::down(2, -1), Cell::up(-3, 4)] {
            let img = apply_to_cell(&r60, &c).unwrap();
            let mut a: Vec<_> = crate::lattice::cell_vertices(&c).iter().map(|&p| r60.apply(p)).collect();
            let mut b = crate::lattice::cell_vertices(&img);
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn hnf_basics() {
        let l = Lattice2::from_generators([ScaledPoint::new(4, 2), ScaledPoint::new(-2, 4)]).unwrap();
        assert_eq!(l.covolume(), 20);
        assert!(l.contains(ScaledPoint::new(2, 6)));
        assert!(!l.contains(ScaledPoint::new(2, 0)));
        assert!(Lattice2::from_generators([ScaledPoint::new(1, 1), ScaledPoint::new(2, 2)]).is_err());
    }

    #[test]
    fn line_lattice_membership() {
        let g = [ScaledPoint::new(4, -4), ScaledPoint::new(6, -6)];
        assert!(in_line_lattice(ScaledPoint::new(2, -2), &g));
        assert!(!in_line_lattice(ScaledPoint::new(1, -1), &g));
        assert!(!in_line_lattice(ScaledPoint::new(2, 2), &g));
    }

    proptest! {
        #[test]
        fn reduce_is_canonical(x1 in -20i64..20, y1 in -20i64..20, x2 in -20i64..20, y2 in -20i64..20,
                               px in -100i64..100, py in -100i64..100, k1 in -5i64..5, k2 in -5i64..5) {
            prop_assume!(x1 * y2 - x2 * y1 != 0);
            let v1 = ScaledPoint::new(x1, y1);
            let v2 = ScaledPoint::new(x2, y2);
            let l = Lattice2::from_generators([v1, v2]).unwrap();
            prop_assert_eq!(l.covolume(), (x1 * y2 - x2 * y1).abs());
            let p = ScaledPoint::new(px, py);
            let q = p + k1 * v1 + k2 * v2;
            prop_assert_eq!(l.reduce(p), l.reduce(q));
            prop_assert!(l.contains(p - l.reduce(p)));
        }

        #[test]
        fn compose_inverse(i in 0usize..12, j in 0usize..12, tx in -30i64..30, ty in -30i64..30, px in -30i64..30, py in -30i64..30) {
            let pg = lattice_point_group(LatticeKind::Triangular);
            let g = Isometry::new(pg[i], ScaledPoint::new(tx, ty));
            let h = Isometry::new(pg[j], ScaledPoint::new(ty, tx));
            let p = ScaledPoint::new(px, py);
            prop_assert_eq!(g.inverse().apply(g.apply(p)), p);
            prop_assert_eq!(g.compose(&h).apply(p), g.apply(h.apply(p)));
        }
    }
}
