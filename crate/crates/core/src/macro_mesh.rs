//! C¹ quadratic splines over a triangulation whose triangles are all 12-split.
//!
//! Each macro triangle carries its own 12 S-basis coefficients. Global C¹
//! smoothness is imposed numerically: across every interior edge the value
//! and the normal derivative of the two local splines are matched at five
//! points. The dimension of the space is `12 |T| - rank(constraints)`.
//!
//! Mesh file format (text, `#` starts a comment):
//!
//! ```text
//! nv nt
//! x y        # nv lines
//! i j k      # nt lines, 0-based, counterclockwise
//! ```

use std::collections::HashMap;
use std::path::Path;

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use crate::geometry::{
    make_frame, orient2d, Bary3, GeometryError, Point2, Triangle, DEGENERACY_TOL,
};
use crate::linalg::{numerical_rank, RankInfo};
use crate::ps12_spline::{dual_functionals, quasi_interpolant, SBasis, SplineFunction};

/// Edge parameters of the collocation points; the break of the edge
/// restriction at `t = 1/2` is avoided.
pub const EDGE_COLLOCATION: [f64; 5] = [0.1, 0.3, 0.45, 0.65, 0.85];

/// Relative singular-value cutoff for the constraint rank.
pub const RANK_CUTOFF: f64 = 1e-9;

/// Minimum ratio between the smallest kept and largest dropped singular value.
pub const MIN_SPECTRAL_GAP: f64 = 10.0;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum MeshError {
    #[error("cannot read mesh file: {0}")]
    Io(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("triangle {triangle} references vertex {index}, but there are only {count} vertices")]
    IndexOutOfRange {
        triangle: usize,
        index: usize,
        count: usize,
    },

    #[error("triangle {0} is degenerate")]
    Degenerate(usize),

    #[error("triangle {0} is clockwise")]
    Orientation(usize),

    #[error("mesh is not conforming: {0}")]
    NonConforming(String),

    #[error("mesh has no triangles")]
    Empty,

    #[error("expected {expected} coefficients, got {got}")]
    CoefficientCount { expected: usize, got: usize },

    #[error(
        "coefficients violate the C1 constraints (residual {residual:e}, allowed {allowed:e})"
    )]
    ConstraintViolation { residual: f64, allowed: f64 },

    #[error("convergence study needs at least 3 refinement levels, got {0}")]
    TooFewLevels(usize),
}

impl MeshError {
    /// Stable short code for reports.
    pub fn code(&self) -> &'static str {
        match self {
            MeshError::Io(_) => "io",
            MeshError::Parse { .. } => "parse",
            MeshError::IndexOutOfRange { .. } => "index",
            MeshError::Degenerate(_) => "degenerate",
            MeshError::Orientation(_) => "orientation",
            MeshError::NonConforming(_) => "nonconforming",
            MeshError::Empty => "empty",
            MeshError::CoefficientCount { .. } => "coefficients",
            MeshError::ConstraintViolation { .. } => "constraints",
            MeshError::TooFewLevels(_) => "levels",
        }
    }
}

/// Edge id and the (triangle, same direction) pairs using it.
type EdgeUses = (usize, Vec<(usize, bool)>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeshEdge {
    /// Endpoints, smaller index first.
    pub vertices: [usize; 2],
    /// One triangle on the boundary, two inside.
    pub triangles: Vec<usize>,
}

impl MeshEdge {
    pub fn is_interior(&self) -> bool {
        self.triangles.len() == 2
    }
}

/// A validated conforming triangulation.
#[derive(Debug, Clone, PartialEq)]
pub struct Triangulation {
    vertices: Vec<Point2>,
    triangles: Vec<[usize; 3]>,
    edges: Vec<MeshEdge>,
    /// Triangles incident to each vertex, ascending.
    vertex_triangles: Vec<Vec<usize>>,
}

impl Triangulation {
    pub fn new(vertices: Vec<Point2>, triangles: Vec<[usize; 3]>) -> Result<Self, MeshError> {
        if triangles.is_empty() {
            return Err(MeshError::Empty);
        }
        let nv = vertices.len();
        for (t, tri) in triangles.iter().enumerate() {
            if let Some(&index) = tri.iter().find(|&&i| i >= nv) {
                return Err(MeshError::IndexOutOfRange {
                    triangle: t,
                    index,
                    count: nv,
                });
            }
            let [a, b, c] = tri.map(|i| vertices[i]);
            match Triangle::new(a, b, c) {
                Ok(_) => {}
                Err(GeometryError::Clockwise(_)) => return Err(MeshError::Orientation(t)),
                Err(_) => return Err(MeshError::Degenerate(t)),
            }
        }

        let mut by_key: HashMap<[usize; 2], EdgeUses> = HashMap::new();
        let mut order = Vec::new();
        for (t, tri) in triangles.iter().enumerate() {
            for k in 0..3 {
                let (a, b) = (tri[k], tri[(k + 1) % 3]);
                let key = if a < b { [a, b] } else { [b, a] };
                let entry = by_key.entry(key).or_insert_with(|| {
                    order.push(key);
                    (order.len() - 1, Vec::new())
                });
                entry.1.push((t, a < b));
            }
        }
        let mut edges = Vec::with_capacity(order.len());
        for key in order {
            let uses = &by_key[&key].1;
            match uses.as_slice() {
                [_] => {}
                [(_, d1), (_, d2)] if d1 != d2 => {}
                [(t1, _), (t2, _)] => {
                    return Err(MeshError::NonConforming(format!(
                        "triangles {t1} and {t2} overlap along edge {key:?}"
                    )))
                }
                _ => {
                    return Err(MeshError::NonConforming(format!(
                        "edge {key:?} is shared by {} triangles",
                        uses.len()
                    )))
                }
            }
            edges.push(MeshEdge {
                vertices: key,
                triangles: uses.iter().map(|u| u.0).collect(),
            });
        }

        let mut used = vec![false; nv];
        for tri in &triangles {
            for &i in tri {
                used[i] = true;
            }
        }
        if let Some(i) = used.iter().position(|u| !u) {
            return Err(MeshError::NonConforming(format!(
                "vertex {i} belongs to no triangle"
            )));
        }
        // hanging vertices: a vertex strictly inside some edge
        for e in &edges {
            let (p, q) = (vertices[e.vertices[0]], vertices[e.vertices[1]]);
            let len = (q - p).norm();
            for (i, &v) in vertices.iter().enumerate() {
                if e.vertices.contains(&i) {
                    continue;
                }
                let t = (v - p).dot(q - p) / (len * len);
                if t > 0.0 && t < 1.0 && orient2d(p, q, v).abs() <= DEGENERACY_TOL * len * len {
                    return Err(MeshError::NonConforming(format!(
                        "vertex {i} lies inside edge {:?}",
                        e.vertices
                    )));
                }
            }
        }
        let mut vertex_triangles = vec![Vec::new(); nv];
        for (t, tri) in triangles.iter().enumerate() {
            for &i in tri {
                vertex_triangles[i].push(t);
            }
        }
        Ok(Triangulation {
            vertices,
            triangles,
            edges,
            vertex_triangles,
        })
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn edges(&self) -> &[MeshEdge] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_triangles(&self) -> usize {
        self.triangles.len()
    }

    /// `V - E + T`; 1 for a triangulated disc.
    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - self.num_edges() as i64 + self.num_triangles() as i64
    }

    /// `3|V| + |E|`.
    pub fn expected_dimension(&self) -> usize {
        3 * self.num_vertices() + self.num_edges()
    }

    pub fn triangle(&self, t: usize) -> Triangle {
        let [a, b, c] = self.triangles[t].map(|i| self.vertices[i]);
        Triangle::new(a, b, c).expect("validated at construction")
    }

    /// Longest edge length.
    pub fn mesh_size(&self) -> f64 {
        self.edges
            .iter()
            .map(|e| (self.vertices[e.vertices[1]] - self.vertices[e.vertices[0]]).norm())
            .fold(0.0, f64::max)
    }

    pub fn single_triangle() -> Self {
        Triangulation::new(
            vec![
                Point2::new(0.0, 0.0),
                Point2::new(1.0, 0.0),
                Point2::new(0.0, 1.0),
            ],
            vec![[0, 1, 2]],
        )
        .expect("valid mesh")
    }

    /// Unit square cut along the diagonal from (0,0) to (1,1).
    pub fn unit_square() -> Self {
        Self::grid(2)
    }

    /// `n × n` vertices on the unit square, each cell cut along its rising diagonal.
    pub fn grid(n: usize) -> Self {
        assert!(n >= 2, "a grid needs at least two vertices per side");
        let step = 1.0 / (n - 1) as f64;
        let vertices = (0..n)
            .flat_map(|j| (0..n).map(move |i| Point2::new(i as f64 * step, j as f64 * step)))
            .collect();
        let mut triangles = Vec::new();
        for j in 0..n - 1 {
            for i in 0..n - 1 {
                let v00 = j * n + i;
                let v10 = v00 + 1;
                let v01 = v00 + n;
                let v11 = v01 + 1;
                triangles.push([v00, v10, v11]);
                triangles.push([v00, v11, v01]);
            }
        }
        Triangulation::new(vertices, triangles).expect("valid mesh")
    }

    /// Uniform refinement: every triangle split into four at its edge midpoints.
    pub fn refine_uniform(&self) -> Self {
        let mut vertices = self.vertices.clone();
        let mut mid: HashMap<[usize; 2], usize> = HashMap::new();
        let mut midpoint = |a: usize, b: usize, vertices: &mut Vec<Point2>| {
            let key = if a < b { [a, b] } else { [b, a] };
            *mid.entry(key).or_insert_with(|| {
                vertices.push(vertices[a].midpoint(vertices[b]));
                vertices.len() - 1
            })
        };
        let mut triangles = Vec::with_capacity(4 * self.triangles.len());
        for &[a, b, c] in &self.triangles {
            let ab = midpoint(a, b, &mut vertices);
            let bc = midpoint(b, c, &mut vertices);
            let ca = midpoint(c, a, &mut vertices);
            triangles.extend([[a, ab, ca], [ab, b, bc], [ca, bc, c], [ab, bc, ca]]);
        }
        Triangulation::new(vertices, triangles).expect("refinement of a valid mesh is valid")
    }

    fn closed_contains(&self, t: usize, x: Point2) -> bool {
        let [a, b, c] = self.triangles[t].map(|i| self.vertices[i]);
        crate::geometry::in_closed_hull(&[a, b, c], x)
    }

    /// Lowest-index triangle whose closed hull contains `x`.
    pub fn locate(&self, x: Point2) -> Option<usize> {
        (0..self.triangles.len()).find(|&t| self.closed_contains(t, x))
    }

    /// Same answer as [`locate`](Self::locate) for a point known to lie in
    /// triangle `hint`: any other triangle containing it shares a vertex
    /// with `hint` in a conforming mesh.
    pub fn locate_near(&self, x: Point2, hint: usize) -> Option<usize> {
        self.triangles[hint]
            .iter()
            .flat_map(|&v| self.vertex_triangles[v].iter().copied())
            .filter(|&t| t < hint && self.closed_contains(t, x))
            .min()
            .or_else(|| self.closed_contains(hint, x).then_some(hint))
            .or_else(|| self.locate(x))
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.num_vertices(), self.num_triangles());
        for v in &self.vertices {
            s.push_str(&format!("{} {}\n", v.x, v.y));
        }
        for t in &self.triangles {
            s.push_str(&format!("{} {} {}\n", t[0], t[1], t[2]));
        }
        s
    }
}

/// Parses the mesh text format.
pub fn parse_mesh(text: &str) -> Result<Triangulation, MeshError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    fn fields<T: std::str::FromStr>(line: usize, s: &str, n: usize) -> Result<Vec<T>, MeshError> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        if parts.len() != n {
            return Err(MeshError::Parse {
                line,
                msg: format!("expected {n} fields, found {}", parts.len()),
            });
        }
        parts
            .iter()
            .map(|p| {
                p.parse::<T>().map_err(|_| MeshError::Parse {
                    line,
                    msg: format!("cannot parse {p:?}"),
                })
            })
            .collect()
    }

    let (line, header) = lines.next().ok_or(MeshError::Parse {
        line: 1,
        msg: "missing header".into(),
    })?;
    let counts: Vec<usize> = fields(line, header, 2)?;
    let (nv, nt) = (counts[0], counts[1]);
    let mut vertices = Vec::with_capacity(nv);
    let mut last = line;
    for _ in 0..nv {
        let (line, l) = lines.next().ok_or(MeshError::Parse {
            line: last + 1,
            msg: "missing vertex line".into(),
        })?;
        let xy: Vec<f64> = fields(line, l, 2)?;
        let p = Point2::try_new(xy[0], xy[1]).map_err(|e| MeshError::Parse {
            line,
            msg: e.to_string(),
        })?;
        vertices.push(p);
        last = line;
    }
    let mut triangles = Vec::with_capacity(nt);
    for _ in 0..nt {
        let (line, l) = lines.next().ok_or(MeshError::Parse {
            line: last + 1,
            msg: "missing triangle line".into(),
        })?;
        let ijk: Vec<usize> = fields(line, l, 3)?;
        triangles.push([ijk[0], ijk[1], ijk[2]]);
        last = line;
    }
    if let Some((line, _)) = lines.next() {
        return Err(MeshError::Parse {
            line,
            msg: "unexpected trailing data".into(),
        });
    }
    Triangulation::new(vertices, triangles)
}

pub fn load_mesh(path: impl AsRef<Path>) -> Result<Triangulation, MeshError> {
    let text = std::fs::read_to_string(path.as_ref()).map_err(|e| MeshError::Io(e.to_string()))?;
    parse_mesh(&text)
}

/// A mesh with one S-basis per triangle; coefficient `12 t + j` belongs to
/// basis function `j` of triangle `t`.
#[derive(Debug, Clone)]
pub struct SplineMesh {
    mesh: Triangulation,
    bases: Vec<SBasis>,
}

impl SplineMesh {
    pub fn new(mesh: Triangulation) -> Self {
        let bases = (0..mesh.num_triangles())
            .map(|t| SBasis::new(make_frame(&mesh.triangle(t))))
            .collect();
        SplineMesh { mesh, bases }
    }

    pub fn mesh(&self) -> &Triangulation {
        &self.mesh
    }

    pub fn bases(&self) -> &[SBasis] {
        &self.bases
    }

    pub fn num_coefficients(&self) -> usize {
        12 * self.bases.len()
    }
}

/// The C¹ constraint system and its rank analysis.
#[derive(Debug, Clone)]
pub struct GlobalSpace {
    layout: SplineMesh,
    constraints: DMatrix<f64>,
    rank: RankInfo,
}

impl GlobalSpace {
    pub fn layout(&self) -> &SplineMesh {
        &self.layout
    }

    pub fn mesh(&self) -> &Triangulation {
        &self.layout.mesh
    }

    pub fn constraints(&self) -> &DMatrix<f64> {
        &self.constraints
    }

    pub fn rank(&self) -> &RankInfo {
        &self.rank
    }

    /// `12 |T| - rank`.
    pub fn dimension(&self) -> usize {
        self.layout.num_coefficients() - self.rank.rank
    }

    /// Whether the kept and dropped singular values are separated by at least [`MIN_SPECTRAL_GAP`].
    pub fn well_conditioned(&self) -> bool {
        self.rank.gap >= MIN_SPECTRAL_GAP
    }

    /// Largest absolute constraint residual.
    pub fn residual(&self, coefficients: &[f64]) -> f64 {
        if self.constraints.nrows() == 0 {
            return 0.0;
        }
        let c = DVector::from_column_slice(coefficients);
        (&self.constraints * c).amax()
    }
}

/// Builds the value and normal-derivative matching rows for every interior edge.
pub fn assemble_c1_constraints(mesh: &Triangulation) -> GlobalSpace {
    let layout = SplineMesh::new(mesh.clone());
    let interior: Vec<&MeshEdge> = mesh.edges.iter().filter(|e| e.is_interior()).collect();
    let rows = interior.len() * 2 * EDGE_COLLOCATION.len();
    let mut m = DMatrix::zeros(rows, layout.num_coefficients());
    let mut r = 0;
    for e in interior {
        let (p, q) = (mesh.vertices[e.vertices[0]], mesh.vertices[e.vertices[1]]);
        let len = (q - p).norm();
        // derivative rows scaled by the edge length to match the value rows
        let normal = (q - p).perp() * (1.0 / len);
        let (ta, tb) = (e.triangles[0], e.triangles[1]);
        let (ba, bb) = (&layout.bases[ta], &layout.bases[tb]);
        for &s in &EDGE_COLLOCATION {
            let x = p.lerp(q, s);
            let (va, vb) = (ba.eval(x), bb.eval(x));
            let (da, db) = (
                ba.directional(x, normal * len),
                bb.directional(x, normal * len),
            );
            for j in 0..12 {
                m[(r, 12 * ta + j)] += va[j];
                m[(r, 12 * tb + j)] -= vb[j];
                m[(r + 1, 12 * ta + j)] += da[j];
                m[(r + 1, 12 * tb + j)] -= db[j];
            }
            r += 2;
        }
    }
    let rank = numerical_rank(&m, RANK_CUTOFF);
    GlobalSpace {
        layout,
        constraints: m,
        rank,
    }
}

/// A coefficient vector over a [`SplineMesh`].
#[derive(Debug, Clone)]
pub struct GlobalSplineFunction<'a> {
    layout: &'a SplineMesh,
    coefficients: Vec<f64>,
}

impl<'a> GlobalSplineFunction<'a> {
    /// Checks the C¹ constraints: residual at most `1e-10 × ‖c‖`.
    pub fn new(space: &'a GlobalSpace, coefficients: Vec<f64>) -> Result<Self, MeshError> {
        let g = Self::piecewise(&space.layout, coefficients)?;
        let norm = g.coefficients.iter().map(|c| c * c).sum::<f64>().sqrt();
        let allowed = 1e-10 * norm.max(f64::MIN_POSITIVE);
        let residual = space.residual(&g.coefficients);
        if residual > allowed {
            return Err(MeshError::ConstraintViolation { residual, allowed });
        }
        Ok(g)
    }

    /// Per-triangle splines with no smoothness requirement across edges.
    pub fn piecewise(layout: &'a SplineMesh, coefficients: Vec<f64>) -> Result<Self, MeshError> {
        if coefficients.len() != layout.num_coefficients() {
            return Err(MeshError::CoefficientCount {
                expected: layout.num_coefficients(),
                got: coefficients.len(),
            });
        }
        Ok(GlobalSplineFunction {
            layout,
            coefficients,
        })
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn layout(&self) -> &SplineMesh {
        self.layout
    }

    /// Local spline on triangle `t`.
    pub fn local(&self, t: usize) -> SplineFunction {
        let mut coefficients = [0.0; 12];
        coefficients.copy_from_slice(&self.coefficients[12 * t..12 * t + 12]);
        SplineFunction {
            basis: self.layout.bases[t].clone(),
            coefficients,
        }
    }

    fn eval_local(&self, t: usize, x: Point2) -> f64 {
        self.layout.bases[t]
            .eval(x)
            .iter()
            .zip(&self.coefficients[12 * t..12 * t + 12])
            .map(|(b, c)| b * c)
            .sum()
    }
}

/// Value at `x`, or `None` outside the mesh.
pub fn eval_global(g: &GlobalSplineFunction, x: Point2) -> Option<f64> {
    let t = g.layout.mesh.locate(x)?;
    Some(g.eval_local(t, x))
}

/// Per-triangle quasi-interpolant of `f`.
pub fn quasi_interpolate_global<'a>(
    layout: &'a SplineMesh,
    f: impl Fn(Point2) -> f64,
) -> GlobalSplineFunction<'a> {
    let coefficients = layout
        .bases
        .iter()
        .flat_map(|b| quasi_interpolant(b, &f).coefficients)
        .collect();
    GlobalSplineFunction {
        layout,
        coefficients,
    }
}

/// Largest gap between the spline and its control points: `|s(γ_j) - c_j|`
/// with `γ_j` the midpoint of the blossom pair of basis function `j`.
pub fn control_surface_distance(g: &GlobalSplineFunction) -> f64 {
    let mut worst: f64 = 0.0;
    for (t, basis) in g.layout.bases.iter().enumerate() {
        for (j, d) in dual_functionals(basis).iter().enumerate() {
            let x = d.midpoint();
            let owner = g
                .layout
                .mesh
                .locate_near(x, t)
                .expect("control points lie in the mesh");
            let s = g.eval_local(owner, x);
            worst = worst.max((s - g.coefficients[12 * t + j]).abs());
        }
    }
    worst
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    /// Longest edge of the mesh.
    pub h: f64,
    pub distance: f64,
    /// Largest `|s - f|` over a few fixed interior points per triangle.
    pub approximation_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    /// Base mesh first, then each refinement.
    pub rows: Vec<ConvergenceRow>,
    /// Least-squares slope of `ln distance` against `ln h`; `None` when some
    /// distance is at rounding level, as for affine `f`.
    pub slope: Option<f64>,
}

impl ConvergenceReport {
    /// Whether the quasi-interpolant matched `f` to rounding on every mesh,
    /// as it does for quadratics. The control-surface distance of a
    /// quadratic is still of order `h²`.
    pub fn exact_reproduction(&self) -> bool {
        self.rows.iter().all(|r| r.approximation_error <= EXACT_TOL)
    }
}

/// Barycentric sample points for the approximation error; off every split
/// line and away from the symmetric points where cubic errors can vanish.
const ERROR_SAMPLES: [[f64; 3]; 4] = [
    [0.61, 0.27, 0.12],
    [0.14, 0.57, 0.29],
    [0.23, 0.18, 0.59],
    [0.37, 0.41, 0.22],
];

/// Distances and errors below this are treated as rounding.
const EXACT_TOL: f64 = 1e-12;

/// Refines `base` uniformly `levels` times and records the control-surface
/// distance of the quasi-interpolant of `f` on every mesh.
pub fn h2_convergence(
    f: impl Fn(Point2) -> f64,
    base: &Triangulation,
    levels: usize,
) -> Result<ConvergenceReport, MeshError> {
    if levels < 3 {
        return Err(MeshError::TooFewLevels(levels));
    }
    let mut mesh = base.clone();
    let mut rows = Vec::with_capacity(levels + 1);
    for level in 0..=levels {
        if level > 0 {
            mesh = mesh.refine_uniform();
        }
        let layout = SplineMesh::new(mesh.clone());
        let g = quasi_interpolate_global(&layout, &f);
        let mut approximation_error: f64 = 0.0;
        for (t, basis) in layout.bases.iter().enumerate() {
            let local = g.local(t);
            for w in ERROR_SAMPLES {
                let x = basis.frame().point_at(Bary3 { b: w });
                approximation_error = approximation_error.max((local.eval(x) - f(x)).abs());
            }
        }
        rows.push(ConvergenceRow {
            h: mesh.mesh_size(),
            distance: control_surface_distance(&g),
            approximation_error,
        });
    }
    let slope = if rows.iter().any(|r| r.distance <= EXACT_TOL) {
        None
    } else {
        Some(fit_slope(&rows))
    };
    Ok(ConvergenceReport { rows, slope })
}

fn fit_slope(rows: &[ConvergenceRow]) -> f64 {
    let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.h.ln(), r.distance.ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}
