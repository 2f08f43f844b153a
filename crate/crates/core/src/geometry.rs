//! Planar primitives, barycentric coordinates and the 12-split frame.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

/// Relative cutoff below which areas (scaled by the squared bounding-box
/// diagonal) are treated as zero.
pub const DEGENERACY_TOL: f64 = 1e-12;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum GeometryError {
    #[error("non-finite coordinate ({0}, {1})")]
    NonFinite(f64, f64),

    #[error("degenerate triangle: area {area:e} is below the cutoff {cutoff:e}")]
    Degenerate { area: f64, cutoff: f64 },

    #[error("triangle is clockwise (signed area {0:e}); corners must be counterclockwise")]
    Clockwise(f64),

    #[error("points are collinear; barycentric coordinates are undefined")]
    Collinear,
}

/// A point (or vector) in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    /// Panics on non-finite input; use [`Point2::try_new`] for untrusted data.
    pub fn new(x: f64, y: f64) -> Self {
        Self::try_new(x, y).expect("Point2 coordinates must be finite")
    }

    pub fn try_new(x: f64, y: f64) -> Result<Self, GeometryError> {
        if x.is_finite() && y.is_finite() {
            Ok(Point2 { x, y })
        } else {
            Err(GeometryError::NonFinite(x, y))
        }
    }

    pub fn dot(self, o: Point2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, o: Point2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Counterclockwise rotation by a right angle.
    pub fn perp(self) -> Point2 {
        Point2 {
            x: -self.y,
            y: self.x,
        }
    }

    pub fn midpoint(self, o: Point2) -> Point2 {
        Point2 {
            x: 0.5 * (self.x + o.x),
            y: 0.5 * (self.y + o.y),
        }
    }

    pub fn lerp(self, o: Point2, t: f64) -> Point2 {
        Point2 {
            x: self.x + t * (o.x - self.x),
            y: self.y + t * (o.y - self.y),
        }
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2 {
            x: self.x + o.x,
            y: self.y + o.y,
        }
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2 {
            x: self.x - o.x,
            y: self.y - o.y,
        }
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2 {
            x: -self.x,
            y: -self.y,
        }
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, s: f64) -> Point2 {
        Point2 {
            x: self.x * s,
            y: self.y * s,
        }
    }
}

impl Mul<Point2> for f64 {
    type Output = Point2;
    fn mul(self, p: Point2) -> Point2 {
        p * self
    }
}

/// Twice the signed area of the triangle (a, b, c).
pub fn orient2d(a: Point2, b: Point2, c: Point2) -> f64 {
    (b - a).cross(c - a)
}

/// Length of the diagonal of the axis-aligned bounding box.
pub fn bbox_diagonal<'a>(points: impl IntoIterator<Item = &'a Point2>) -> f64 {
    let mut lo = Point2 {
        x: f64::INFINITY,
        y: f64::INFINITY,
    };
    let mut hi = Point2 {
        x: f64::NEG_INFINITY,
        y: f64::NEG_INFINITY,
    };
    let mut any = false;
    for p in points {
        any = true;
        lo.x = lo.x.min(p.x);
        lo.y = lo.y.min(p.y);
        hi.x = hi.x.max(p.x);
        hi.y = hi.y.max(p.y);
    }
    if !any {
        return 0.0;
    }
    (hi - lo).norm()
}

/// A nondegenerate, counterclockwise triangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triangle {
    corners: [Point2; 3],
}

impl Triangle {
    pub fn new(a: Point2, b: Point2, c: Point2) -> Result<Self, GeometryError> {
        let corners = [a, b, c];
        let area = 0.5 * orient2d(a, b, c);
        let diag = bbox_diagonal(&corners);
        let cutoff = DEGENERACY_TOL * diag * diag;
        if area.abs() <= cutoff {
            return Err(GeometryError::Degenerate { area, cutoff });
        }
        if area < 0.0 {
            return Err(GeometryError::Clockwise(area));
        }
        Ok(Triangle { corners })
    }

    /// Like [`Triangle::new`] but reorders clockwise input instead of rejecting it.
    pub fn new_any_orientation(a: Point2, b: Point2, c: Point2) -> Result<Self, GeometryError> {
        if orient2d(a, b, c) < 0.0 {
            Self::new(a, c, b)
        } else {
            Self::new(a, b, c)
        }
    }

    /// The reference triangle (0,0), (1,0), (0,1).
    pub fn unit() -> Self {
        Triangle {
            corners: [
                Point2::new(0.0, 0.0),
                Point2::new(1.0, 0.0),
                Point2::new(0.0, 1.0),
            ],
        }
    }

    pub fn corners(&self) -> [Point2; 3] {
        self.corners
    }

    pub fn area(&self) -> f64 {
        let [a, b, c] = self.corners;
        0.5 * orient2d(a, b, c)
    }

    pub fn point_at(&self, b: Bary3) -> Point2 {
        b.combine(self.corners[0], self.corners[1], self.corners[2])
    }
}

/// Barycentric coordinates with respect to three points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bary3 {
    pub b: [f64; 3],
}

impl Bary3 {
    /// Normalizes the triple so that it sums to one.
    pub fn normalized(b1: f64, b2: f64, b3: f64) -> Self {
        let s = b1 + b2 + b3;
        Bary3 {
            b: [b1 / s, b2 / s, b3 / s],
        }
    }

    pub fn combine(&self, p1: Point2, p2: Point2, p3: Point2) -> Point2 {
        let [b1, b2, b3] = self.b;
        Point2 {
            x: b1 * p1.x + b2 * p2.x + b3 * p3.x,
            y: b1 * p1.y + b2 * p2.y + b3 * p3.y,
        }
    }
}

/// Solves `x = b1 p1 + b2 p2 + b3 p3` with `b1 + b2 + b3 = 1`.
pub fn barycentric(p1: Point2, p2: Point2, p3: Point2, x: Point2) -> Result<Bary3, GeometryError> {
    let det = orient2d(p1, p2, p3);
    let diag = bbox_diagonal(&[p1, p2, p3]);
    if det.abs() <= 2.0 * DEGENERACY_TOL * diag * diag {
        return Err(GeometryError::Collinear);
    }
    let e2 = p2 - p1;
    let e3 = p3 - p1;
    let r = x - p1;
    let b2 = r.cross(e3) / det;
    let b3 = e2.cross(r) / det;
    Ok(Bary3 {
        b: [1.0 - b2 - b3, b2, b3],
    })
}

/// Area of the convex hull of the distinct points; zero for collinear input.
pub fn hull_area(points: &[Point2]) -> f64 {
    let hull = convex_hull(points);
    if hull.len() < 3 {
        return 0.0;
    }
    let mut twice = 0.0;
    for i in 0..hull.len() {
        twice += hull[i].cross(hull[(i + 1) % hull.len()]);
    }
    0.5 * twice.abs()
}

/// Counterclockwise convex hull (Andrew's monotone chain). Collinear points
/// on the hull boundary are dropped.
pub fn convex_hull(points: &[Point2]) -> Vec<Point2> {
    let mut pts: Vec<Point2> = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let diag = bbox_diagonal(&pts);
    let tol = DEGENERACY_TOL * diag * diag;
    let mut hull: Vec<Point2> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point2>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2
                && orient2d(hull[hull.len() - 2], hull[hull.len() - 1], p) <= tol
            {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// Whether `x` lies in the closed convex hull of `points`, up to a relative tolerance.
pub fn in_closed_hull(points: &[Point2], x: Point2) -> bool {
    let hull = convex_hull(points);
    if hull.len() < 3 {
        return false;
    }
    let diag = bbox_diagonal(&hull);
    let n = hull.len();
    (0..n).all(|i| {
        let a = hull[i];
        let b = hull[(i + 1) % n];
        orient2d(a, b, x) >= -DEGENERACY_TOL * diag * (b - a).norm()
    })
}

/// Rule deciding which boundary points belong to a half-open triangle.
///
/// Both modes are symbolic perturbations: `x` is in `[p1, p2, p3)` iff
/// `x + εd + ε²d'` lies in the open triangle for all small `ε > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum HalfOpenConvention {
    /// `d = (1, 0)`, `d' = (0, 1)`.
    #[default]
    Lexicographic,
    /// `d = toward - x`, `d'` its left normal; falls back to lexicographic at `toward`.
    InteriorLimit { toward: Point2 },
}

impl HalfOpenConvention {
    fn directions(&self, x: Point2) -> [Point2; 2] {
        const LEX: [Point2; 2] = [Point2 { x: 1.0, y: 0.0 }, Point2 { x: 0.0, y: 1.0 }];
        match *self {
            HalfOpenConvention::Lexicographic => LEX,
            HalfOpenConvention::InteriorLimit { toward } => {
                let d = toward - x;
                if d.x == 0.0 && d.y == 0.0 {
                    LEX
                } else {
                    [d, d.perp()]
                }
            }
        }
    }
}

/// Side test of `x` against the directed line `p -> q` under the perturbation.
/// Returns true if the perturbed point is strictly to the left.
fn left_of(p: Point2, q: Point2, x: Point2, dirs: &[Point2; 2], tol: f64) -> bool {
    let e = q - p;
    let s = e.cross(x - p);
    if s.abs() > tol * e.norm() {
        return s > 0.0;
    }
    for d in dirs {
        let sd = e.cross(*d);
        if sd != 0.0 {
            return sd > 0.0;
        }
    }
    false
}

/// Membership of `x` in the half-open triangle `[p1, p2, p3)`.
pub fn half_open_contains(
    p1: Point2,
    p2: Point2,
    p3: Point2,
    x: Point2,
    conv: HalfOpenConvention,
) -> bool {
    let (a, b, c) = if orient2d(p1, p2, p3) >= 0.0 {
        (p1, p2, p3)
    } else {
        (p1, p3, p2)
    };
    let dirs = conv.directions(x);
    let tol = DEGENERACY_TOL * bbox_diagonal(&[a, b, c]);
    left_of(a, b, x, &dirs, tol) && left_of(b, c, x, &dirs, tol) && left_of(c, a, x, &dirs, tol)
}

/// Index of one of the 12 subtriangles of the split, in `1..=12`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubtriangleId(u8);

impl SubtriangleId {
    pub fn new(index: u8) -> Option<Self> {
        (1..=12).contains(&index).then_some(SubtriangleId(index))
    }

    pub fn index(self) -> u8 {
        self.0
    }

    /// Vertex ids (1-based) of this subtriangle, counterclockwise.
    pub fn vertex_ids(self) -> [u8; 3] {
        SUBTRIANGLES[self.0 as usize - 1]
    }

    pub fn all() -> impl Iterator<Item = SubtriangleId> {
        (1..=12).map(SubtriangleId)
    }
}

/// Vertex ids of the subtriangles: the two halves of each corner triangle,
/// then the six triangles of the medial triangle around the centroid.
pub const SUBTRIANGLES: [[u8; 3]; 12] = [
    [1, 4, 7],
    [1, 7, 6],
    [2, 8, 4],
    [2, 5, 8],
    [3, 6, 9],
    [3, 9, 5],
    [4, 8, 10],
    [8, 5, 10],
    [5, 9, 10],
    [9, 6, 10],
    [6, 7, 10],
    [7, 4, 10],
];

/// The nine knot lines of the split, each given by two vertex ids on it:
/// macro edges, medial-triangle edges, then medians.
pub const SPLIT_LINES: [[u8; 2]; 9] = [
    [1, 2],
    [2, 3],
    [3, 1],
    [4, 5],
    [5, 6],
    [6, 4],
    [1, 5],
    [2, 6],
    [3, 4],
];

/// The ten vertices of the 12-split of a macro triangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PS12Frame {
    vertices: [Point2; 10],
    macro_area: f64,
}

impl PS12Frame {
    /// Vertex by 1-based id.
    pub fn vertex(&self, id: u8) -> Point2 {
        self.vertices[id as usize - 1]
    }

    pub fn vertices(&self) -> &[Point2; 10] {
        &self.vertices
    }

    pub fn macro_area(&self) -> f64 {
        self.macro_area
    }

    pub fn triangle(&self) -> Triangle {
        Triangle {
            corners: [self.vertices[0], self.vertices[1], self.vertices[2]],
        }
    }

    pub fn centroid(&self) -> Point2 {
        self.vertices[9]
    }

    /// Diameter of the macro triangle (longest edge).
    pub fn diameter(&self) -> f64 {
        let [a, b, c] = [self.vertices[0], self.vertices[1], self.vertices[2]];
        (b - a).norm().max((c - b).norm()).max((a - c).norm())
    }

    pub fn subtriangle_corners(&self, id: SubtriangleId) -> [Point2; 3] {
        id.vertex_ids().map(|v| self.vertex(v))
    }

    pub fn point_at(&self, b: Bary3) -> Point2 {
        b.combine(self.vertices[0], self.vertices[1], self.vertices[2])
    }

    pub fn barycentric(&self, x: Point2) -> Bary3 {
        barycentric(self.vertices[0], self.vertices[1], self.vertices[2], x)
            .expect("frame corners are affinely independent")
    }

    /// Closed-triangle test with a relative tolerance.
    pub fn contains(&self, x: Point2) -> bool {
        in_closed_hull(&self.vertices[..3], x)
    }
}

pub fn make_frame(t: &Triangle) -> PS12Frame {
    let [v1, v2, v3] = t.corners;
    let v4 = v1.midpoint(v2);
    let v5 = v2.midpoint(v3);
    let v6 = v1.midpoint(v3);
    let v7 = v4.midpoint(v6);
    let v8 = v4.midpoint(v5);
    let v9 = v5.midpoint(v6);
    let v10 = Point2 {
        x: (v1.x + v2.x + v3.x) / 3.0,
        y: (v1.y + v2.y + v3.y) / 3.0,
    };
    PS12Frame {
        vertices: [v1, v2, v3, v4, v5, v6, v7, v8, v9, v10],
        macro_area: t.area(),
    }
}

/// A knot line of the split, identified by its index into [`SPLIT_LINES`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SplitLine(pub u8);

impl SplitLine {
    pub fn vertex_ids(self) -> [u8; 2] {
        SPLIT_LINES[self.0 as usize]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Location {
    /// `None` when `x` is outside the closed macro triangle.
    pub subtriangle: Option<SubtriangleId>,
    /// Every split line passing through `x`.
    pub on_lines: Vec<SplitLine>,
}

/// Finds the subtriangle containing `x`.
///
/// Points on shared edges go to the subtriangle selected by `conv`. A point on the
/// macro boundary that `conv` pushes outside is resolved as a limit from the interior.
pub fn locate(frame: &PS12Frame, x: Point2, conv: HalfOpenConvention) -> Location {
    let diag = frame.diameter();
    let on_lines = (0..SPLIT_LINES.len() as u8)
        .map(SplitLine)
        .filter(|l| {
            let [i, j] = l.vertex_ids();
            let (p, q) = (frame.vertex(i), frame.vertex(j));
            orient2d(p, q, x).abs() <= DEGENERACY_TOL * diag * (q - p).norm()
        })
        .collect();
    if !frame.contains(x) {
        return Location {
            subtriangle: None,
            on_lines,
        };
    }
    let find = |conv: HalfOpenConvention| {
        SubtriangleId::all().find(|&id| {
            let [a, b, c] = frame.subtriangle_corners(id);
            half_open_contains(a, b, c, x, conv)
        })
    };
    let subtriangle = find(conv).or_else(|| {
        find(HalfOpenConvention::InteriorLimit {
            toward: frame.centroid(),
        })
    });
    Location {
        subtriangle,
        on_lines,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    #[test]
    fn unit_frame_vertices() {
        let f = make_frame(&Triangle::unit());
        assert_eq!(f.vertex(4), p(0.5, 0.0));
        assert_eq!(f.vertex(6), p(0.0, 0.5));
        assert_eq!(f.vertex(7), p(0.25, 0.25));
        assert_abs_diff_eq!(f.vertex(10).x, 1.0 / 3.0, epsilon = 1e-16);
        assert_abs_diff_eq!(f.vertex(10).y, 1.0 / 3.0, epsilon = 1e-16);
        assert_eq!(f.macro_area(), 0.5);
    }

    #[test]
    fn frame_invariants_on_general_triangle() {
        let t = Triangle::new(p(0.3, -1.2), p(4.0, 0.5), p(-0.7, 2.2)).unwrap();
        let f = make_frame(&t);
        let v = |i| f.vertex(i);
        let close = |a: Point2, b: Point2| (a - b).norm() <= 1e-14 * 5.0;
        assert!(close(v(4), (v(1) + v(2)) * 0.5));
        assert!(close(v(5), (v(2) + v(3)) * 0.5));
        assert!(close(v(6), (v(1) + v(3)) * 0.5));
        assert!(close(v(7), (v(4) + v(6)) * 0.5));
        assert!(close(v(8), (v(4) + v(5)) * 0.5));
        assert!(close(v(9), (v(5) + v(6)) * 0.5));
        assert!(close(v(10), (v(1) + v(2) + v(3)) * (1.0 / 3.0)));
        assert_abs_diff_eq!(f.macro_area(), t.area(), epsilon = 1e-15);
    }

    #[test]
    fn degenerate_and_clockwise_rejected() {
        assert!(matches!(
            Triangle::new(p(0.0, 0.0), p(1.0, 1.0), p(2.0, 2.0)),
            Err(GeometryError::Degenerate { .. })
        ));
        assert!(matches!(
            Triangle::new(p(0.0, 0.0), p(0.0, 1.0), p(1.0, 0.0)),
            Err(GeometryError::Clockwise(_))
        ));
        assert!(Triangle::new(p(0.0, 0.0), p(1.0, 0.0), p(0.5, 1e-13)).is_err());
        assert!(Point2::try_new(f64::NAN, 0.0).is_err());
        assert!(Point2::try_new(0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn barycentric_examples() {
        let (a, b, c) = (p(0.0, 0.0), p(1.0, 0.0), p(0.0, 1.0));
        assert_eq!(barycentric(a, b, c, a).unwrap().b, [1.0, 0.0, 0.0]);
        let g = barycentric(a, b, c, p(1.0 / 3.0, 1.0 / 3.0)).unwrap();
        for v in g.b {
            assert_abs_diff_eq!(v, 1.0 / 3.0, epsilon = 1e-15);
        }
        assert_eq!(
            barycentric(a, b, c, p(0.25, 0.25)).unwrap().b,
            [0.5, 0.25, 0.25]
        );
        assert_eq!(
            barycentric(a, p(1.0, 1.0), p(2.0, 2.0), a),
            Err(GeometryError::Collinear)
        );
    }

    #[test]
    fn hull_area_examples() {
        assert_eq!(hull_area(&[p(0.0, 0.0), p(1.0, 0.0), p(0.0, 1.0)]), 0.5);
        assert_eq!(hull_area(&[p(0.0, 0.0), p(0.0, 0.0), p(1.0, 0.0)]), 0.0);
        assert_eq!(
            hull_area(&[p(0.0, 0.0), p(1.0, 0.0), p(1.0, 1.0), p(0.0, 1.0)]),
            1.0
        );
        assert_eq!(hull_area(&[p(2.0, 3.0)]), 0.0);
        // interior and collinear boundary points do not change the hull
        let pts = [
            p(0.0, 0.0),
            p(0.5, 0.0),
            p(1.0, 0.0),
            p(0.0, 1.0),
            p(0.2, 0.2),
        ];
        assert_eq!(hull_area(&pts), 0.5);
    }

    #[test]
    fn locate_examples() {
        let f = make_frame(&Triangle::unit());
        let at_centroid = locate(&f, f.vertex(10), HalfOpenConvention::Lexicographic);
        let medians: Vec<_> = at_centroid.on_lines.iter().map(|l| l.0).collect();
        assert_eq!(medians, vec![6, 7, 8]);
        assert!(at_centroid.subtriangle.is_some());

        let inside = (f.vertex(1) + f.vertex(4) + f.vertex(7)) * (1.0 / 3.0);
        let loc = locate(&f, inside, HalfOpenConvention::Lexicographic);
        assert_eq!(loc.subtriangle, SubtriangleId::new(1));
        assert!(loc.on_lines.is_empty());

        let on_seg = f.vertex(4).lerp(f.vertex(10), 0.4);
        let loc = locate(&f, on_seg, HalfOpenConvention::Lexicographic);
        assert_eq!(loc.on_lines, vec![SplitLine(8)]);
        let id = loc.subtriangle.unwrap();
        assert!(id == SubtriangleId::new(7).unwrap() || id == SubtriangleId::new(12).unwrap());

        let out = locate(&f, p(1.0, 1.0), HalfOpenConvention::Lexicographic);
        assert_eq!(out.subtriangle, None);

        // boundary point pushed outside by the lexicographic rule still resolves
        let hyp = locate(&f, p(0.6, 0.4), HalfOpenConvention::Lexicographic);
        assert!(hyp.subtriangle.is_some());
        assert_eq!(hyp.on_lines, vec![SplitLine(1)]);
    }

    #[test]
    fn half_open_interior_and_exterior() {
        let (a, b, c) = (p(0.0, 0.0), p(1.0, 0.0), p(0.0, 1.0));
        let conv = HalfOpenConvention::Lexicographic;
        assert!(half_open_contains(a, b, c, p(0.2, 0.2), conv));
        assert!(!half_open_contains(a, b, c, p(0.8, 0.8), conv));
        // orientation of the input does not matter
        assert!(half_open_contains(a, c, b, p(0.2, 0.2), conv));
    }

    /// Tiles a 3x3 block of unit squares, each cut along its diagonal, and
    /// checks that boundary points of the center square are covered exactly once.
    #[test]
    fn half_open_tiling_covers_boundary_once() {
        let mut tris = Vec::new();
        for i in -1..=1 {
            for j in -1..=1 {
                let (x0, y0) = (i as f64, j as f64);
                let q00 = p(x0, y0);
                let q10 = p(x0 + 1.0, y0);
                let q11 = p(x0 + 1.0, y0 + 1.0);
                let q01 = p(x0, y0 + 1.0);
                tris.push([q00, q10, q11]);
                tris.push([q00, q11, q01]);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut samples = vec![p(0.0, 0.0), p(1.0, 0.0), p(1.0, 1.0), p(0.0, 1.0)];
        while samples.len() < 1000 {
            let t: f64 = rng.random();
            let s = match samples.len() % 5 {
                0 => p(t, 0.0),
                1 => p(1.0, t),
                2 => p(t, 1.0),
                3 => p(0.0, t),
                _ => p(t, t),
            };
            samples.push(s);
        }
        for conv in [
            HalfOpenConvention::Lexicographic,
            HalfOpenConvention::InteriorLimit {
                toward: p(0.3, 0.7),
            },
        ] {
            for &x in &samples {
                let count = tris
                    .iter()
                    .filter(|t| half_open_contains(t[0], t[1], t[2], x, conv))
                    .count();
                assert_eq!(count, 1, "point {x} covered {count} times under {conv:?}");
            }
        }
    }

    #[test]
    fn locate_tiling_frequencies() {
        let f = make_frame(&Triangle::new(p(-1.0, 0.2), p(2.0, -0.5), p(0.4, 1.9)).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = 100_000;
        let mut counts = [0usize; 12];
        for _ in 0..n {
            let (mut s, mut t): (f64, f64) = (rng.random(), rng.random());
            if s + t > 1.0 {
                s = 1.0 - s;
                t = 1.0 - t;
            }
            let x = f.point_at(Bary3 {
                b: [1.0 - s - t, s, t],
            });
            let hits = SubtriangleId::all()
                .filter(|&id| {
                    let [a, b, c] = f.subtriangle_corners(id);
                    half_open_contains(a, b, c, x, HalfOpenConvention::Lexicographic)
                })
                .count();
            assert_eq!(hits, 1);
            let id = locate(&f, x, HalfOpenConvention::Lexicographic)
                .subtriangle
                .unwrap();
            counts[id.index() as usize - 1] += 1;
        }
        // corner halves cover 1/8 of the macro triangle, medial sixths 1/24
        for (id, c) in SubtriangleId::all().zip(counts) {
            let [a, b, c3] = f.subtriangle_corners(id);
            let expected = 0.5 * orient2d(a, b, c3) / f.macro_area();
            let se = (expected * (1.0 - expected) / n as f64).sqrt();
            let freq = c as f64 / n as f64;
            assert!(
                (freq - expected).abs() <= 3.0 * se,
                "{id:?}: {freq} vs {expected} (se {se})"
            );
        }
    }

    #[test]
    fn subtriangles_are_counterclockwise_and_tile() {
        let f = make_frame(&Triangle::unit());
        let total: f64 = SubtriangleId::all()
            .map(|id| {
                let [a, b, c] = f.subtriangle_corners(id);
                let a2 = orient2d(a, b, c);
                assert!(a2 > 0.0);
                0.5 * a2
            })
            .sum();
        assert_abs_diff_eq!(total, f.macro_area(), epsilon = 1e-15);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn coord() -> impl Strategy<Value = f64> {
            -10.0f64..10.0
        }

        proptest! {
            #[test]
            fn frame_is_affine_equivariant(
                ax in coord(), ay in coord(), bx in coord(), by in coord(),
                m in prop::array::uniform4(-3.0f64..3.0), tx in coord(), ty in coord(),
            ) {
                let det = m[0] * m[3] - m[1] * m[2];
                prop_assume!(det > 0.1);
                let t = Triangle::new(p(0.0, 0.0), p(1.0 + ax.abs(), ay), p(bx, 1.0 + by.abs() + ay.abs()));
                prop_assume!(t.is_ok());
                let t = t.unwrap();
                let map = |q: Point2| p(m[0] * q.x + m[1] * q.y + tx, m[2] * q.x + m[3] * q.y + ty);
                let [a, b, c] = t.corners();
                let mapped = Triangle::new(map(a), map(b), map(c)).unwrap();
                let fa = make_frame(&mapped);
                let f = make_frame(&t);
                let scale = bbox_diagonal(fa.vertices());
                for i in 1..=10u8 {
                    let d = (fa.vertex(i) - map(f.vertex(i))).norm();
                    prop_assert!(d <= 1e-12 * scale.max(1.0));
                }
            }

            #[test]
            fn barycentric_inverts_combine(
                b1 in -1.0f64..2.0, b2 in -1.0f64..2.0,
                q in prop::array::uniform6(-5.0f64..5.0),
            ) {
                let (p1, p2, p3) = (p(q[0], q[1]), p(q[2], q[3]), p(q[4], q[5]));
                let d = bbox_diagonal(&[p1, p2, p3]);
                prop_assume!(orient2d(p1, p2, p3).abs() > 0.05 * d * d);
                let b = Bary3 { b: [b1, b2, 1.0 - b1 - b2] };
                let x = b.combine(p1, p2, p3);
                let back = barycentric(p1, p2, p3, x).unwrap();
                for k in 0..3 {
                    prop_assert!((back.b[k] - b.b[k]).abs() <= 1e-12);
                }
                prop_assert!((back.b.iter().sum::<f64>() - 1.0).abs() <= 1e-14);
            }
        }
    }
}
