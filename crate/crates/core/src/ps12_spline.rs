//! The quadratic S-basis on a single 12-split macro triangle.
//!
//! The basis consists of the `S₃` orbits of three scaled quadratic simplex
//! splines: `¼ Q[v1³ v4 v6]` (3 corner functions), `½ Q[v1² v2 v4 v6]`
//! (6 edge functions) and `¾ Q[v1 v2 v4 v5 v6]` (3 interior functions).
//!
//! Each function carries a pair of split vertices read off its coefficient
//! in the Marsden identity
//!
//! ```text
//! (c1 Q[v1² v2 v3] + c2 Q[v1 v2² v3] + c3 Q[v1 v2 v3²])² = Σ_j c_{a_j} c_{b_j} B_j
//! ```
//!
//! where `c4..c10` are the averages of `c1..c3` matching the vertex
//! construction. The pairs drive the dual functionals and the quasi-interpolant.

use std::fmt;

use nalgebra::DMatrix;
use thiserror::Error;

use crate::geometry::{
    barycentric, in_closed_hull, HalfOpenConvention, PS12Frame, Point2, SubtriangleId,
};
use crate::linalg::numerical_rank;
use crate::simplex_spline::{directional_derivative, eval_q, EvalContext, KnotMultiset};

#[derive(Error, Debug, Clone, PartialEq)]
pub enum Ps12Error {
    #[error("{0:?} is not a permutation of (1, 2, 3)")]
    NotAPermutation([u8; 3]),

    #[error("invalid multiplicity vector {0:?}: expected 6 or 10 decimal digits")]
    InvalidMultiplicity(String),

    #[error("a multiplicity vector needs at least 3 knots, got {0}")]
    TooFewKnots(usize),

    #[error("({0}, {1}) is not an edge of the macro triangle")]
    NotAMacroEdge(u8, u8),

    #[error("unknown basis function {0:?}")]
    UnknownBasis(String),
}

/// Vertex id of the midpoint of two vertex ids, for the pairs that define
/// v4..v9.
fn midpoint_id(a: u8, b: u8) -> Option<u8> {
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    match (a, b) {
        (1, 2) => Some(4),
        (2, 3) => Some(5),
        (1, 3) => Some(6),
        (4, 6) => Some(7),
        (4, 5) => Some(8),
        (5, 6) => Some(9),
        _ => None,
    }
}

/// The two vertex ids whose midpoint is vertex `m` (4..=9).
fn midpoint_parents(m: u8) -> (u8, u8) {
    match m {
        4 => (1, 2),
        5 => (2, 3),
        6 => (1, 3),
        7 => (4, 6),
        8 => (4, 5),
        9 => (5, 6),
        _ => panic!("vertex {m} is not a midpoint"),
    }
}

/// Multiplicities `m1..m10` of the split vertices in a knot multiset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MultiplicityVector(pub [u8; 10]);

impl MultiplicityVector {
    /// Parses the 6-digit graphical form (`ijklmn`, vertices 1..6) or all 10 digits.
    pub fn parse(s: &str) -> Result<Self, Ps12Error> {
        let digits: Option<Vec<u8>> = s.chars().map(|c| c.to_digit(10).map(|d| d as u8)).collect();
        let digits = digits.ok_or_else(|| Ps12Error::InvalidMultiplicity(s.to_string()))?;
        if digits.len() != 6 && digits.len() != 10 {
            return Err(Ps12Error::InvalidMultiplicity(s.to_string()));
        }
        let mut m = [0u8; 10];
        m[..digits.len()].copy_from_slice(&digits);
        let mv = MultiplicityVector(m);
        if mv.total() < 3 {
            return Err(Ps12Error::TooFewKnots(mv.total()));
        }
        Ok(mv)
    }

    pub fn total(&self) -> usize {
        self.0.iter().map(|&m| m as usize).sum()
    }

    pub fn degree(&self) -> usize {
        self.total().saturating_sub(3)
    }

    /// Knots in canonical order: `v1` repeated `m1` times, then `v2`, ...
    pub fn knots(&self, frame: &PS12Frame) -> KnotMultiset {
        let pts = (1..=10u8)
            .flat_map(|i| std::iter::repeat_n(frame.vertex(i), self.0[i as usize - 1] as usize))
            .collect();
        KnotMultiset::new(pts).expect("multiplicity vectors carry at least three knots")
    }

    /// Whether the 6-digit graphical notation can express this vector.
    pub fn is_graphical(&self) -> bool {
        self.0[6..].iter().all(|&m| m == 0)
    }

    /// Vertex ids present with nonzero multiplicity.
    pub fn support_ids(&self) -> Vec<u8> {
        (1..=10u8).filter(|&i| self.0[i as usize - 1] > 0).collect()
    }
}

impl fmt::Display for MultiplicityVector {
    /// Six digits when the graphical notation applies, ten otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = if self.is_graphical() { 6 } else { 10 };
        for m in &self.0[..n] {
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// One of the six symmetries of the triangle, acting on vertex ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SymmetryElement {
    corners: [u8; 3],
    induced: [u8; 10],
}

impl SymmetryElement {
    pub fn new(corners: [u8; 3]) -> Result<Self, Ps12Error> {
        let induced = s3_induced_permutation(corners)?;
        Ok(SymmetryElement { corners, induced })
    }

    /// Images of corners 1, 2, 3.
    pub fn corner_permutation(&self) -> [u8; 3] {
        self.corners
    }

    pub fn induced_permutation(&self) -> [u8; 10] {
        self.induced
    }

    /// Image of a vertex id.
    pub fn apply(&self, id: u8) -> u8 {
        self.induced[id as usize - 1]
    }
}

/// Extends a permutation of the corners to the ten split vertices so that
/// it commutes with the midpoint and centroid construction.
pub fn s3_induced_permutation(g: [u8; 3]) -> Result<[u8; 10], Ps12Error> {
    let mut sorted = g;
    sorted.sort_unstable();
    if sorted != [1, 2, 3] {
        return Err(Ps12Error::NotAPermutation(g));
    }
    let mut image = [0u8; 10];
    image[..3].copy_from_slice(&g);
    // v4..v6 are midpoints of corners, v7..v9 midpoints of v4..v6
    for m in 4..=9u8 {
        let (a, b) = midpoint_parents(m);
        let (ga, gb) = (image[a as usize - 1], image[b as usize - 1]);
        image[m as usize - 1] = midpoint_id(ga, gb).expect("images of parents are parents");
    }
    image[9] = 10;
    Ok(image)
}

/// The group `S₃`: identity, the two rotations, then the three reflections.
pub fn symmetry_group() -> [SymmetryElement; 6] {
    [
        [1, 2, 3],
        [2, 3, 1],
        [3, 1, 2],
        [2, 1, 3],
        [1, 3, 2],
        [3, 2, 1],
    ]
    .map(|g| SymmetryElement::new(g).expect("listed elements are permutations"))
}

/// Anything on which `S₃` acts by relabelling split vertices.
pub trait SymmetryAction: Clone + PartialEq {
    fn act(&self, g: &SymmetryElement) -> Self;
}

/// `[item]_{S₃}`: the distinct images of `item`, in group order.
pub fn orbit<T: SymmetryAction>(item: &T) -> Vec<T> {
    let mut out: Vec<T> = Vec::with_capacity(6);
    for g in symmetry_group() {
        let image = item.act(&g);
        if !out.contains(&image) {
            out.push(image);
        }
    }
    out
}

impl SymmetryAction for MultiplicityVector {
    fn act(&self, g: &SymmetryElement) -> Self {
        let mut m = [0u8; 10];
        for i in 1..=10u8 {
            m[g.apply(i) as usize - 1] = self.0[i as usize - 1];
        }
        MultiplicityVector(m)
    }
}

/// Exact scale factor `num/den` of a basis function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Scale {
    pub num: u32,
    pub den: u32,
}

impl Scale {
    pub const QUARTER: Scale = Scale { num: 1, den: 4 };
    pub const HALF: Scale = Scale { num: 1, den: 2 };
    pub const THREE_QUARTERS: Scale = Scale { num: 3, den: 4 };

    pub fn value(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// A scaled simplex spline `scale · Q[mult]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ScaledSpline {
    pub scale: Scale,
    pub mult: MultiplicityVector,
}

impl SymmetryAction for ScaledSpline {
    fn act(&self, g: &SymmetryElement) -> Self {
        ScaledSpline {
            scale: self.scale,
            mult: self.mult.act(g),
        }
    }
}

impl fmt::Display for ScaledSpline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·Q[{}]", self.scale, self.mult)
    }
}

/// A coefficient monomial in `c1..c10` times a scaled spline, e.g. `c4 c10 · ¾ Q[110111]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    /// Indices of the `c` factors, sorted.
    pub coefficient: Vec<u8>,
    pub spline: ScaledSpline,
}

impl Term {
    pub fn new(mut coefficient: Vec<u8>, spline: ScaledSpline) -> Self {
        coefficient.sort_unstable();
        Term {
            coefficient,
            spline,
        }
    }
}

impl SymmetryAction for Term {
    fn act(&self, g: &SymmetryElement) -> Self {
        Term::new(
            self.coefficient.iter().map(|&c| g.apply(c)).collect(),
            self.spline.act(g),
        )
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.coefficient {
            write!(f, "c{c}")?;
        }
        write!(f, "·{}", self.spline)
    }
}

/// Role of a basis function within the macro triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisClass {
    /// Corner `j` in 1..=3.
    Corner(u8),
    /// Attached to `corner` and the midpoint `midpoint` of an edge through it.
    Edge { corner: u8, midpoint: u8 },
    /// Attached to the edge midpoint `m` in 4..=6.
    Interior(u8),
}

/// Canonical order: corners, edge functions walking the boundary, interiors.
pub const CANONICAL_ORDER: [BasisClass; 12] = [
    BasisClass::Corner(1),
    BasisClass::Corner(2),
    BasisClass::Corner(3),
    BasisClass::Edge {
        corner: 1,
        midpoint: 4,
    },
    BasisClass::Edge {
        corner: 2,
        midpoint: 4,
    },
    BasisClass::Edge {
        corner: 2,
        midpoint: 5,
    },
    BasisClass::Edge {
        corner: 3,
        midpoint: 5,
    },
    BasisClass::Edge {
        corner: 3,
        midpoint: 6,
    },
    BasisClass::Edge {
        corner: 1,
        midpoint: 6,
    },
    BasisClass::Interior(4),
    BasisClass::Interior(5),
    BasisClass::Interior(6),
];

impl BasisClass {
    pub fn scale(self) -> Scale {
        match self {
            BasisClass::Corner(_) => Scale::QUARTER,
            BasisClass::Edge { .. } => Scale::HALF,
            BasisClass::Interior(_) => Scale::THREE_QUARTERS,
        }
    }

    /// Vertex ids of the Marsden coefficient factors `c_a c_b`.
    pub fn blossom_ids(self) -> (u8, u8) {
        match self {
            BasisClass::Corner(j) => (j, j),
            BasisClass::Edge { corner, midpoint } => (corner, midpoint),
            BasisClass::Interior(m) => (m, 10),
        }
    }

    pub fn multiplicities(self) -> MultiplicityVector {
        let mut m = [0u8; 10];
        let mut add = |id: u8, k: u8| m[id as usize - 1] += k;
        match self {
            BasisClass::Corner(j) => {
                add(j, 3);
                for other in (1..=3).filter(|&o| o != j) {
                    add(midpoint_id(j, other).unwrap(), 1);
                }
            }
            BasisClass::Edge { corner, midpoint } => {
                let (p, q) = midpoint_parents(midpoint);
                let far = if p == corner { q } else { p };
                let third = 6 - corner - far;
                add(corner, 2);
                add(far, 1);
                add(midpoint, 1);
                add(midpoint_id(corner, third).unwrap(), 1);
            }
            BasisClass::Interior(mid) => {
                let (p, q) = midpoint_parents(mid);
                add(p, 1);
                add(q, 1);
                for v in 4..=6 {
                    add(v, 1);
                }
            }
        }
        MultiplicityVector(m)
    }

    pub fn act(self, g: &SymmetryElement) -> Self {
        match self {
            BasisClass::Corner(j) => BasisClass::Corner(g.apply(j)),
            BasisClass::Edge { corner, midpoint } => BasisClass::Edge {
                corner: g.apply(corner),
                midpoint: g.apply(midpoint),
            },
            BasisClass::Interior(m) => BasisClass::Interior(g.apply(m)),
        }
    }

    /// Position in [`CANONICAL_ORDER`].
    pub fn canonical_index(self) -> usize {
        CANONICAL_ORDER
            .iter()
            .position(|&c| c == self)
            .expect("every class is listed")
    }

    /// Short name: `corner1`, `edge14` (corner 1, midpoint 4), `interior4`.
    pub fn name(self) -> String {
        match self {
            BasisClass::Corner(j) => format!("corner{j}"),
            BasisClass::Edge { corner, midpoint } => format!("edge{corner}{midpoint}"),
            BasisClass::Interior(m) => format!("interior{m}"),
        }
    }

    pub fn parse(name: &str) -> Result<Self, Ps12Error> {
        CANONICAL_ORDER
            .iter()
            .copied()
            .find(|c| c.name() == name)
            .ok_or_else(|| Ps12Error::UnknownBasis(name.to_string()))
    }
}

/// One scaled basis spline on a concrete frame.
#[derive(Debug, Clone, PartialEq)]
pub struct SBasisFunction {
    pub class: BasisClass,
    pub scale: Scale,
    pub mult: MultiplicityVector,
    pub blossom_pair: (Point2, Point2),
    knots: KnotMultiset,
}

impl SBasisFunction {
    pub fn knots(&self) -> &KnotMultiset {
        &self.knots
    }

    pub fn scaled_spline(&self) -> ScaledSpline {
        ScaledSpline {
            scale: self.scale,
            mult: self.mult,
        }
    }
}

/// The twelve basis functions on one macro triangle.
#[derive(Debug, Clone, PartialEq)]
pub struct SBasis {
    frame: PS12Frame,
    functions: Vec<SBasisFunction>,
    ctx: EvalContext,
}

impl SBasis {
    pub fn new(frame: PS12Frame) -> Self {
        let functions = CANONICAL_ORDER
            .iter()
            .map(|&class| {
                let mult = class.multiplicities();
                let (a, b) = class.blossom_ids();
                SBasisFunction {
                    class,
                    scale: class.scale(),
                    mult,
                    blossom_pair: (frame.vertex(a), frame.vertex(b)),
                    knots: mult.knots(&frame),
                }
            })
            .collect();
        let ctx = EvalContext::new(
            frame.macro_area(),
            HalfOpenConvention::InteriorLimit {
                toward: frame.centroid(),
            },
        )
        .expect("frame area is positive");
        SBasis {
            frame,
            functions,
            ctx,
        }
    }

    pub fn frame(&self) -> &PS12Frame {
        &self.frame
    }

    pub fn functions(&self) -> &[SBasisFunction] {
        &self.functions
    }

    /// Interior-limit context used for all basis evaluation.
    pub fn context(&self) -> &EvalContext {
        &self.ctx
    }

    /// Values of the twelve scaled functions; zero outside the macro triangle.
    pub fn eval(&self, x: Point2) -> [f64; 12] {
        let mut out = [0.0; 12];
        if !self.frame.contains(x) {
            return out;
        }
        for (o, f) in out.iter_mut().zip(&self.functions) {
            *o = f.scale.value() * eval_q(&f.knots, x, &self.ctx);
        }
        out
    }

    /// Value of a single scaled function at any point (zero outside its support).
    pub fn eval_one(&self, j: usize, x: Point2) -> f64 {
        let f = &self.functions[j];
        f.scale.value() * eval_q(&f.knots, x, &self.ctx)
    }

    /// Directional derivatives of the twelve functions, as limits from the
    /// interior on the macro boundary. Valid off the split lines.
    pub fn directional(&self, x: Point2, u: Point2) -> [f64; 12] {
        let mut out = [0.0; 12];
        if !self.frame.contains(x) {
            return out;
        }
        for (o, f) in out.iter_mut().zip(&self.functions) {
            *o = f.scale.value()
                * directional_derivative(&f.knots, x, u, &self.ctx)
                    .expect("basis functions are quadratic");
        }
        out
    }

    pub fn gradients(&self, x: Point2) -> [Point2; 12] {
        let dx = self.directional(x, Point2 { x: 1.0, y: 0.0 });
        let dy = self.directional(x, Point2 { x: 0.0, y: 1.0 });
        std::array::from_fn(|j| Point2 { x: dx[j], y: dy[j] })
    }
}

pub fn s_basis(frame: &PS12Frame) -> SBasis {
    SBasis::new(*frame)
}

/// Convenience wrapper building the basis on the fly.
pub fn eval_basis(frame: &PS12Frame, x: Point2) -> [f64; 12] {
    SBasis::new(*frame).eval(x)
}

/// The four basis functions that survive on one macro edge, as univariate
/// quadratic B-splines in the edge parameter `t ∈ [0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeRestriction {
    pub from: u8,
    pub to: u8,
    /// Canonical indices, in order along the edge.
    pub basis_indices: [usize; 4],
    /// Knot sets as vertex ids, e.g. `[1, 1, 1, 4]`.
    pub knot_sets: [[u8; 4]; 4],
    /// The same knots as edge parameters.
    pub knot_vectors: [[f64; 4]; 4],
}

impl EdgeRestriction {
    pub fn point(&self, frame: &PS12Frame, t: f64) -> Point2 {
        frame.vertex(self.from).lerp(frame.vertex(self.to), t)
    }

    /// The four scaled basis values at edge parameter `t`.
    pub fn eval(&self, basis: &SBasis, t: f64) -> [f64; 4] {
        let all = basis.eval(self.point(basis.frame(), t));
        self.basis_indices.map(|j| all[j])
    }

    /// The univariate B-spline values at `t`.
    pub fn bsplines(&self, t: f64) -> [f64; 4] {
        self.knot_vectors.map(|k| univariate_bspline(k, t))
    }
}

pub fn boundary_restriction(
    frame: &PS12Frame,
    edge: (u8, u8),
) -> Result<EdgeRestriction, Ps12Error> {
    let (a, b) = edge;
    if a == b || !(1..=3).contains(&a) || !(1..=3).contains(&b) {
        return Err(Ps12Error::NotAMacroEdge(a, b));
    }
    let m = midpoint_id(a, b).expect("distinct corners have a midpoint");
    let idx = |c: BasisClass| c.canonical_index();
    let knot_sets = [[a, a, a, m], [a, a, m, b], [a, m, b, b], [m, b, b, b]];
    let (pa, pb) = (frame.vertex(a), frame.vertex(b));
    let dir = pb - pa;
    let param = |id: u8| (frame.vertex(id) - pa).dot(dir) / dir.dot(dir);
    Ok(EdgeRestriction {
        from: a,
        to: b,
        basis_indices: [
            idx(BasisClass::Corner(a)),
            idx(BasisClass::Edge {
                corner: a,
                midpoint: m,
            }),
            idx(BasisClass::Edge {
                corner: b,
                midpoint: m,
            }),
            idx(BasisClass::Corner(b)),
        ],
        knot_sets,
        knot_vectors: knot_sets.map(|ks| ks.map(param)),
    })
}

/// Quadratic B-spline on four nondecreasing knots by the Cox-de Boor
/// recurrence. Intervals are half-open `[t_i, t_{i+1})` except that the last
/// nonempty one is closed when it ends at `t_3`, so values at the right end
/// of the support are left limits.
pub fn univariate_bspline(knots: [f64; 4], t: f64) -> f64 {
    if t < knots[0] || t > knots[3] {
        return 0.0;
    }
    let last_nonempty = (0..3).rev().find(|&i| knots[i] < knots[i + 1]);
    let mut n: [f64; 3] = std::array::from_fn(|i| {
        let (lo, hi) = (knots[i], knots[i + 1]);
        let inside = (lo <= t && t < hi) || (Some(i) == last_nonempty && t == hi);
        if inside {
            1.0
        } else {
            0.0
        }
    });
    let ratio = |num: f64, den: f64| if den == 0.0 { 0.0 } else { num / den };
    for k in 1..=2 {
        for i in 0..3 - k {
            n[i] = ratio(t - knots[i], knots[i + k] - knots[i]) * n[i]
                + ratio(knots[i + k + 1] - t, knots[i + k + 1] - knots[i + 1]) * n[i + 1];
        }
    }
    n[0]
}

/// `c1..c10` from `c1..c3` by the same averaging that builds `v4..v10`.
pub fn extend_coefficients(c: [f64; 3]) -> [f64; 10] {
    let [c1, c2, c3] = c;
    let c4 = (c1 + c2) / 2.0;
    let c5 = (c2 + c3) / 2.0;
    let c6 = (c1 + c3) / 2.0;
    [
        c1,
        c2,
        c3,
        c4,
        c5,
        c6,
        (c4 + c6) / 2.0,
        (c4 + c5) / 2.0,
        (c5 + c6) / 2.0,
        (c1 + c2 + c3) / 3.0,
    ]
}

/// `c1 Q[v1² v2 v3] + c2 Q[v1 v2² v3] + c3 Q[v1 v2 v3²]` at `x`.
pub fn marsden_lhs(basis: &SBasis, c: [f64; 3], x: Point2) -> f64 {
    if !basis.frame.contains(x) {
        return 0.0;
    }
    let linear = [[2u8, 1, 1], [1, 2, 1], [1, 1, 2]];
    linear
        .iter()
        .zip(c)
        .map(|(m, ci)| {
            let mut mv = [0u8; 10];
            mv[..3].copy_from_slice(m);
            ci * eval_q(&MultiplicityVector(mv).knots(&basis.frame), x, &basis.ctx)
        })
        .sum()
}

/// Coefficient of basis function `class` in the Marsden expansion of the
/// squared linear form; the scales stay with the basis functions.
pub fn marsden_coefficient(c: [f64; 3], class: BasisClass) -> f64 {
    let ext = extend_coefficients(c);
    let (a, b) = class.blossom_ids();
    ext[a as usize - 1] * ext[b as usize - 1]
}

/// Largest deviation from the Marsden identity over the sample points.
pub fn verify_marsden(basis: &SBasis, c: [f64; 3], samples: &[Point2]) -> f64 {
    let coeffs = CANONICAL_ORDER.map(|class| marsden_coefficient(c, class));
    samples
        .iter()
        .map(|&x| {
            let lhs = marsden_lhs(basis, c, x);
            let rhs: f64 = basis.eval(x).iter().zip(&coeffs).map(|(b, k)| b * k).sum();
            (lhs * lhs - rhs).abs()
        })
        .fold(0.0, f64::max)
}

/// Quadratic polar form at `(a, b)`: `2 f((a+b)/2) - (f(a) + f(b)) / 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualFunctional {
    pub a: Point2,
    pub b: Point2,
}

impl DualFunctional {
    pub fn apply(&self, f: impl Fn(Point2) -> f64) -> f64 {
        if self.a == self.b {
            return f(self.a);
        }
        2.0 * f(self.a.midpoint(self.b)) - 0.5 * (f(self.a) + f(self.b))
    }

    /// The point where the control value sits.
    pub fn midpoint(&self) -> Point2 {
        self.a.midpoint(self.b)
    }
}

pub fn dual_functionals(basis: &SBasis) -> [DualFunctional; 12] {
    std::array::from_fn(|j| {
        let (a, b) = basis.functions[j].blossom_pair;
        DualFunctional { a, b }
    })
}

/// A spline on one macro triangle in the canonical coefficient order.
#[derive(Debug, Clone, PartialEq)]
pub struct SplineFunction {
    pub basis: SBasis,
    pub coefficients: [f64; 12],
}

impl SplineFunction {
    pub fn eval(&self, x: Point2) -> f64 {
        self.basis
            .eval(x)
            .iter()
            .zip(&self.coefficients)
            .map(|(b, c)| b * c)
            .sum()
    }

    pub fn directional(&self, x: Point2, u: Point2) -> f64 {
        self.basis
            .directional(x, u)
            .iter()
            .zip(&self.coefficients)
            .map(|(b, c)| b * c)
            .sum()
    }

    pub fn frame(&self) -> &PS12Frame {
        self.basis.frame()
    }
}

/// Spline with coefficients `λ_j(f)`; reproduces quadratics exactly.
pub fn quasi_interpolant(basis: &SBasis, f: impl Fn(Point2) -> f64) -> SplineFunction {
    let duals = dual_functionals(basis);
    SplineFunction {
        basis: basis.clone(),
        coefficients: duals.map(|d| d.apply(&f)),
    }
}

/// Active basis functions and their sampled rank on one subtriangle.
#[derive(Debug, Clone, PartialEq)]
pub struct SubtriangleReport {
    pub subtriangle: SubtriangleId,
    /// Canonical indices of the functions not identically zero there.
    pub active: Vec<usize>,
    pub rank: usize,
    pub samples: usize,
}

/// Interior sample points as barycentric weights on a subtriangle.
const SUBTRIANGLE_SAMPLES: [[f64; 3]; 12] = [
    [1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0],
    [0.6, 0.2, 0.2],
    [0.2, 0.6, 0.2],
    [0.2, 0.2, 0.6],
    [0.5, 0.3, 0.2],
    [0.5, 0.2, 0.3],
    [0.3, 0.5, 0.2],
    [0.2, 0.5, 0.3],
    [0.3, 0.2, 0.5],
    [0.2, 0.3, 0.5],
    [0.8, 0.1, 0.1],
    [0.1, 0.45, 0.45],
];

pub fn local_independence_report(basis: &SBasis) -> Vec<SubtriangleReport> {
    SubtriangleId::all()
        .map(|id| {
            let [a, b, c] = basis.frame.subtriangle_corners(id);
            let values: Vec<[f64; 12]> = SUBTRIANGLE_SAMPLES
                .iter()
                .map(|w| basis.eval(crate::geometry::Bary3 { b: *w }.combine(a, b, c)))
                .collect();
            let active: Vec<usize> = (0..12)
                .filter(|&j| values.iter().any(|v| v[j].abs() > 1e-12))
                .collect();
            let m = DMatrix::from_fn(values.len(), active.len(), |r, k| values[r][active[k]]);
            let rank = numerical_rank(&m, 1e-10).rank;
            SubtriangleReport {
                subtriangle: id,
                active,
                rank,
                samples: values.len(),
            }
        })
        .collect()
}

/// Support test used to cross-check activity: the subtriangle lies in the
/// convex hull of the function's knots.
pub fn subtriangle_in_support(basis: &SBasis, j: usize, id: SubtriangleId) -> bool {
    let knots = basis.functions[j].knots.distinct();
    basis
        .frame
        .subtriangle_corners(id)
        .iter()
        .all(|&p| in_closed_hull(knots, p))
}

/// Barycentric coordinates of `x` with respect to the macro corners.
pub fn macro_barycentric(basis: &SBasis, x: Point2) -> [f64; 3] {
    let f = &basis.frame;
    barycentric(f.vertex(1), f.vertex(2), f.vertex(3), x)
        .expect("frame corners are affinely independent")
        .b
}
