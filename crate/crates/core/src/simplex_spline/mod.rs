//! Bivariate simplex splines in the area normalization.
//!
//! For a knot multiset `K` with `|K| = d + 3` and a normalization area `A`,
//! `Q[K]` is defined by
//!
//! * `0` if the convex hull of `K` has zero area,
//! * `A / area([K])` on the half-open triangle `[K)` when `|K| = 3`,
//! * `Σ_j β_j Q[K \ v_j]` otherwise, where `x = Σ_j β_j v_j`, `Σ_j β_j = 1`
//!   and only knots of `K` carry weight.
//!
//! The weights come from a single affinely independent triple of knots (see
//! [`choose_triple`]); the value does not depend on which triple is used.

pub mod oracle;

pub use oracle::{
    default_radius, eval_geometric_oracle, eval_geometric_oracle_batch, OracleEstimate,
};

use thiserror::Error;

use crate::geometry::{
    barycentric, bbox_diagonal, half_open_contains, hull_area, in_closed_hull, orient2d,
    HalfOpenConvention, Point2, DEGENERACY_TOL,
};

#[derive(Error, Debug, Clone, PartialEq)]
pub enum SplineError {
    #[error("a simplex spline needs at least 3 knots, got {0}")]
    TooFewKnots(usize),

    #[error("knot ({0}, {1}) is not finite")]
    NonFiniteKnot(f64, f64),

    #[error("the convex hull of the knots has zero area")]
    DegenerateHull,

    #[error("normalization area must be positive, got {0}")]
    NonPositiveArea(f64),

    #[error("degree-0 splines have no classical derivative")]
    DegreeZeroDerivative,

    #[error("the line through {0} and {1} contains fewer than two knots")]
    NotAKnotLine(Point2, Point2),

    #[error("insertion point {0} lies outside the convex hull of the knots")]
    OutsideHull(Point2),

    #[error("Monte Carlo oracle needs at least {min} samples, got {got}")]
    TooFewSamples { min: usize, got: usize },
}

/// A multiset of planar knots in a fixed canonical order.
///
/// Repeated knots are stored explicitly; `distinct` groups equal knots in
/// order of first appearance.
#[derive(Debug, Clone, PartialEq)]
pub struct KnotMultiset {
    knots: Vec<Point2>,
    distinct: Vec<Point2>,
    slot: Vec<usize>,
    scale: f64,
}

impl KnotMultiset {
    pub fn new(knots: Vec<Point2>) -> Result<Self, SplineError> {
        if knots.len() < 3 {
            return Err(SplineError::TooFewKnots(knots.len()));
        }
        if let Some(p) = knots.iter().find(|p| !(p.x.is_finite() && p.y.is_finite())) {
            return Err(SplineError::NonFiniteKnot(p.x, p.y));
        }
        let scale = bbox_diagonal(&knots);
        let same = |a: Point2, b: Point2| (a - b).norm() <= DEGENERACY_TOL * scale;
        let mut distinct: Vec<Point2> = Vec::new();
        let mut slot = Vec::with_capacity(knots.len());
        for &k in &knots {
            match distinct.iter().position(|&d| same(d, k)) {
                Some(i) => slot.push(i),
                None => {
                    slot.push(distinct.len());
                    distinct.push(k);
                }
            }
        }
        Ok(KnotMultiset {
            knots,
            distinct,
            slot,
            scale,
        })
    }

    pub fn knots(&self) -> &[Point2] {
        &self.knots
    }

    pub fn len(&self) -> usize {
        self.knots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.knots.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.knots.len() - 3
    }

    /// Distinct knots in order of first appearance.
    pub fn distinct(&self) -> &[Point2] {
        &self.distinct
    }

    /// Multiplicity of each distinct knot.
    pub fn multiplicities(&self) -> Vec<u32> {
        let mut m = vec![0u32; self.distinct.len()];
        for &s in &self.slot {
            m[s] += 1;
        }
        m
    }

    pub fn hull_area(&self) -> f64 {
        hull_area(&self.distinct)
    }

    /// Bounding-box diagonal; the length scale for all tolerances.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn hull_contains(&self, x: Point2) -> bool {
        in_closed_hull(&self.distinct, x)
    }

    fn area_tol(&self) -> f64 {
        DEGENERACY_TOL * self.scale * self.scale
    }

    /// Position in `knots` of the first copy of distinct knot `i`.
    fn first_position(&self, i: usize) -> usize {
        self.slot
            .iter()
            .position(|&s| s == i)
            .expect("every distinct knot occurs")
    }

    /// The multiset with the knot at `pos` removed.
    pub fn without(&self, pos: usize) -> KnotMultiset {
        let mut knots = self.knots.clone();
        knots.remove(pos);
        KnotMultiset::new_unchecked(knots)
    }

    fn new_unchecked(knots: Vec<Point2>) -> KnotMultiset {
        KnotMultiset::new(knots).expect("sub-multisets of valid multisets are valid")
    }

    /// Multiset equality, ignoring order.
    pub fn same_multiset(&self, other: &KnotMultiset) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let tol = DEGENERACY_TOL * self.scale.max(other.scale);
        let mut used = vec![false; other.len()];
        self.knots.iter().all(|&a| {
            match other
                .knots
                .iter()
                .enumerate()
                .position(|(j, &b)| !used[j] && (a - b).norm() <= tol)
            {
                Some(j) => {
                    used[j] = true;
                    true
                }
                None => false,
            }
        })
    }
}

/// Evaluation parameters shared by a whole recursion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalContext {
    normalization_area: f64,
    pub convention: HalfOpenConvention,
}

impl EvalContext {
    pub fn new(
        normalization_area: f64,
        convention: HalfOpenConvention,
    ) -> Result<Self, SplineError> {
        if !(normalization_area > 0.0 && normalization_area.is_finite()) {
            return Err(SplineError::NonPositiveArea(normalization_area));
        }
        Ok(EvalContext {
            normalization_area,
            convention,
        })
    }

    pub fn normalization_area(&self) -> f64 {
        self.normalization_area
    }

    pub fn with_convention(self, convention: HalfOpenConvention) -> Self {
        EvalContext { convention, ..self }
    }
}

/// How the recursion picks the triple of knots that carries the weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TripleStrategy {
    /// First affinely independent triple in lexicographic order of distinct knots.
    #[default]
    FirstFit,
    /// First affinely independent triple in reverse lexicographic order.
    LastFit,
}

/// Result of [`choose_triple`].
#[derive(Debug, Clone, PartialEq)]
pub struct TripleChoice {
    /// Positions in the knot sequence (first copy of each chosen knot).
    pub indices: [usize; 3],
    /// One weight per knot position; zero off the chosen triple.
    pub weights: Vec<f64>,
}

/// Walks the recursion on multiplicity counts over the distinct knots.
struct Recursion<'a> {
    pts: &'a [Point2],
    x: Point2,
    ctx: &'a EvalContext,
    strategy: TripleStrategy,
    area_tol: f64,
}

impl Recursion<'_> {
    fn active(&self, counts: &[u32]) -> Vec<usize> {
        (0..counts.len()).filter(|&i| counts[i] > 0).collect()
    }

    fn triple(&self, active: &[usize]) -> Option<[usize; 3]> {
        pick_triple(self.pts, active, self.strategy, self.area_tol)
    }

    fn eval(&self, counts: &mut [u32]) -> f64 {
        let total: u32 = counts.iter().sum();
        let active = self.active(counts);
        if active.len() < 3 {
            return 0.0;
        }
        let support: Vec<Point2> = active.iter().map(|&i| self.pts[i]).collect();
        let area = hull_area(&support);
        if area <= self.area_tol {
            return 0.0;
        }
        if total == 3 {
            let [a, b, c] = [support[0], support[1], support[2]];
            return if half_open_contains(a, b, c, self.x, self.ctx.convention) {
                self.ctx.normalization_area / area
            } else {
                0.0
            };
        }
        let Some(t) = self.triple(&active) else {
            return 0.0;
        };
        let beta = barycentric(self.pts[t[0]], self.pts[t[1]], self.pts[t[2]], self.x)
            .expect("chosen triple is nondegenerate");
        let mut sum = 0.0;
        for (k, &i) in t.iter().enumerate() {
            if beta.b[k] == 0.0 {
                continue;
            }
            counts[i] -= 1;
            sum += beta.b[k] * self.eval(counts);
            counts[i] += 1;
        }
        sum
    }

    /// `D_u Q[K] = d Σ_j α_j Q[K \ v_j]` with `Σ α_j = 0`, `Σ α_j v_j = u`.
    fn derivative(&self, counts: &mut [u32], u: Point2) -> f64 {
        let total: u32 = counts.iter().sum();
        let d = f64::from(total - 3);
        let active = self.active(counts);
        let support: Vec<Point2> = active.iter().map(|&i| self.pts[i]).collect();
        if hull_area(&support) <= self.area_tol {
            return 0.0;
        }
        let Some(t) = self.triple(&active) else {
            return 0.0;
        };
        let alpha = direction_weights(self.pts[t[0]], self.pts[t[1]], self.pts[t[2]], u);
        let mut sum = 0.0;
        for (k, &i) in t.iter().enumerate() {
            if alpha[k] == 0.0 {
                continue;
            }
            counts[i] -= 1;
            sum += alpha[k] * self.eval(counts);
            counts[i] += 1;
        }
        d * sum
    }
}

fn pick_triple(
    pts: &[Point2],
    active: &[usize],
    strategy: TripleStrategy,
    area_tol: f64,
) -> Option<[usize; 3]> {
    let n = active.len();
    let ok = |a: usize, b: usize, c: usize| {
        0.5 * orient2d(pts[active[a]], pts[active[b]], pts[active[c]]).abs() > area_tol
    };
    match strategy {
        TripleStrategy::FirstFit => {
            for a in 0..n {
                for b in a + 1..n {
                    for c in b + 1..n {
                        if ok(a, b, c) {
                            return Some([active[a], active[b], active[c]]);
                        }
                    }
                }
            }
        }
        TripleStrategy::LastFit => {
            for c in (0..n).rev() {
                for b in (0..c).rev() {
                    for a in (0..b).rev() {
                        if ok(a, b, c) {
                            return Some([active[a], active[b], active[c]]);
                        }
                    }
                }
            }
        }
    }
    None
}

/// Solves `α1 + α2 + α3 = 0`, `α1 p1 + α2 p2 + α3 p3 = u`.
fn direction_weights(p1: Point2, p2: Point2, p3: Point2, u: Point2) -> [f64; 3] {
    let det = orient2d(p1, p2, p3);
    let a2 = u.cross(p3 - p1) / det;
    let a3 = (p2 - p1).cross(u) / det;
    [-a2 - a3, a2, a3]
}

fn recursion<'a>(
    k: &'a KnotMultiset,
    x: Point2,
    ctx: &'a EvalContext,
    strategy: TripleStrategy,
) -> Recursion<'a> {
    Recursion {
        pts: &k.distinct,
        x,
        ctx,
        strategy,
        area_tol: k.area_tol(),
    }
}

/// `Q[K](x)` with first-fit triple selection.
pub fn eval_q(k: &KnotMultiset, x: Point2, ctx: &EvalContext) -> f64 {
    eval_q_with(k, x, ctx, TripleStrategy::FirstFit)
}

pub fn eval_q_with(
    k: &KnotMultiset,
    x: Point2,
    ctx: &EvalContext,
    strategy: TripleStrategy,
) -> f64 {
    let mut counts = k.multiplicities();
    recursion(k, x, ctx, strategy).eval(&mut counts)
}

/// The triple of knots used for the top-level recursion step at `x`, with
/// the barycentric weights of `x` spread over the knot positions.
pub fn choose_triple(k: &KnotMultiset, x: Point2) -> Result<TripleChoice, SplineError> {
    let active: Vec<usize> = (0..k.distinct.len()).collect();
    let t = pick_triple(&k.distinct, &active, TripleStrategy::FirstFit, k.area_tol())
        .ok_or(SplineError::DegenerateHull)?;
    let beta = barycentric(k.distinct[t[0]], k.distinct[t[1]], k.distinct[t[2]], x)
        .map_err(|_| SplineError::DegenerateHull)?;
    let indices = t.map(|i| k.first_position(i));
    let mut weights = vec![0.0; k.len()];
    for (slot, w) in indices.iter().zip(beta.b) {
        weights[*slot] = w;
    }
    Ok(TripleChoice { indices, weights })
}

/// Derivative of `Q[K]` at `x` in direction `u`. Only meaningful off the
/// knot lines of `K`, where the spline is a polynomial near `x`.
pub fn directional_derivative(
    k: &KnotMultiset,
    x: Point2,
    u: Point2,
    ctx: &EvalContext,
) -> Result<f64, SplineError> {
    if k.degree() == 0 {
        return Err(SplineError::DegreeZeroDerivative);
    }
    if u.x == 0.0 && u.y == 0.0 {
        return Ok(0.0);
    }
    let mut counts = k.multiplicities();
    Ok(recursion(k, x, ctx, TripleStrategy::FirstFit).derivative(&mut counts, u))
}

/// Gradient of `Q[K]` at `x` from two directional derivatives.
pub fn gradient(k: &KnotMultiset, x: Point2, ctx: &EvalContext) -> Result<Point2, SplineError> {
    Ok(Point2 {
        x: directional_derivative(k, x, Point2 { x: 1.0, y: 0.0 }, ctx)?,
        y: directional_derivative(k, x, Point2 { x: 0.0, y: 1.0 }, ctx)?,
    })
}

/// Knot insertion: `Q[K] = Σ_j β_j Q[(K ∪ {y}) \ v_j]` over the first-fit
/// triple of `K`, where `β` are the barycentric coordinates of `y`.
///
/// `y` goes right after the last copy of an equal knot (or at the end), and
/// each term removes the last copy of `v_j`, so inserting an existing knot
/// reproduces `K` verbatim in the corresponding term.
pub fn insert_knot(k: &KnotMultiset, y: Point2) -> Result<Vec<(f64, KnotMultiset)>, SplineError> {
    if k.hull_area() <= k.area_tol() {
        return Err(SplineError::DegenerateHull);
    }
    if !k.hull_contains(y) {
        return Err(SplineError::OutsideHull(y));
    }
    let choice = choose_triple(k, y)?;
    let tol = DEGENERACY_TOL * k.scale;
    let insert_at = k
        .knots
        .iter()
        .rposition(|&p| (p - y).norm() <= tol)
        .map_or(k.len(), |i| i + 1);
    let mut extended = k.knots.clone();
    extended.insert(insert_at, y);
    let extended = KnotMultiset::new_unchecked(extended);
    let mut terms = Vec::with_capacity(3);
    for &pos in &choice.indices {
        let distinct = k.slot[pos];
        let target = k.distinct[distinct];
        let remove = extended
            .slot
            .iter()
            .rposition(|&s| (extended.distinct[s] - target).norm() <= tol)
            .expect("chosen knot is present");
        terms.push((choice.weights[pos], extended.without(remove)));
    }
    Ok(terms)
}

/// A line through at least two knots, with the number of knots on it
/// counted with multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KnotLine {
    pub a: Point2,
    pub b: Point2,
    pub multiplicity: usize,
}

fn knots_on_line(k: &KnotMultiset, p: Point2, q: Point2) -> usize {
    let len = (q - p).norm();
    k.knots
        .iter()
        .filter(|&&v| orient2d(p, q, v).abs() <= DEGENERACY_TOL * k.scale.max(len) * len)
        .count()
}

/// Number of continuous derivatives across the line through `line.0` and
/// `line.1`: `d - m + 1`, where `m` counts knots on the line with
/// multiplicity. `-1` means the spline may jump there.
pub fn continuity_order(k: &KnotMultiset, line: (Point2, Point2)) -> Result<i32, SplineError> {
    let (p, q) = line;
    if (q - p).norm() <= DEGENERACY_TOL * k.scale {
        return Err(SplineError::NotAKnotLine(p, q));
    }
    let m = knots_on_line(k, p, q);
    if m < 2 {
        return Err(SplineError::NotAKnotLine(p, q));
    }
    Ok(k.degree() as i32 - m as i32 + 1)
}

/// All distinct knot lines of `K`.
pub fn knot_lines(k: &KnotMultiset) -> Vec<KnotLine> {
    let d = &k.distinct;
    let mut lines: Vec<KnotLine> = Vec::new();
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let (a, b) = (d[i], d[j]);
            let len = (b - a).norm();
            let dup = lines.iter().any(|l| {
                let tol = DEGENERACY_TOL * k.scale * len;
                orient2d(a, b, l.a).abs() <= tol && orient2d(a, b, l.b).abs() <= tol
            });
            if !dup {
                lines.push(KnotLine {
                    a,
                    b,
                    multiplicity: knots_on_line(k, a, b),
                });
            }
        }
    }
    lines
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{make_frame, Triangle};
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    fn lex(area: f64) -> EvalContext {
        EvalContext::new(area, HalfOpenConvention::Lexicographic).unwrap()
    }

    fn frame_knots(ids: &[u8]) -> (crate::geometry::PS12Frame, KnotMultiset) {
        let f = make_frame(&Triangle::unit());
        let k = KnotMultiset::new(ids.iter().map(|&i| f.vertex(i)).collect()).unwrap();
        (f, k)
    }

    /// Distance from `x` to the nearest knot line of `k`.
    fn line_distance(k: &KnotMultiset, x: Point2) -> f64 {
        knot_lines(k)
            .iter()
            .map(|l| orient2d(l.a, l.b, x).abs() / (l.b - l.a).norm())
            .fold(f64::INFINITY, f64::min)
    }

    fn random_generic_points(k: &KnotMultiset, n: usize, margin: f64, seed: u64) -> Vec<Point2> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = k.distinct();
        let (mut lo, mut hi) = (d[0], d[0]);
        for q in d {
            lo = p(lo.x.min(q.x), lo.y.min(q.y));
            hi = p(hi.x.max(q.x), hi.y.max(q.y));
        }
        let mut out = Vec::new();
        while out.len() < n {
            let x = p(rng.random_range(lo.x..hi.x), rng.random_range(lo.y..hi.y));
            if k.hull_contains(x) && line_distance(k, x) > margin {
                out.push(x);
            }
        }
        out
    }

    #[test]
    fn degree_and_cardinality() {
        let (_, k3) = frame_knots(&[1, 2, 3]);
        let (_, k4) = frame_knots(&[1, 2, 3, 10]);
        let (_, k5) = frame_knots(&[1, 1, 1, 4, 6]);
        assert_eq!((k3.degree(), k4.degree(), k5.degree()), (0, 1, 2));
        assert_eq!(
            KnotMultiset::new(vec![p(0.0, 0.0), p(1.0, 0.0)]),
            Err(SplineError::TooFewKnots(2))
        );
    }

    #[test]
    fn base_case_value() {
        let (f, k) = frame_knots(&[1, 4, 6]);
        let ctx = lex(f.macro_area());
        assert_abs_diff_eq!(eval_q(&k, p(0.1, 0.1), &ctx), 0.5 / 0.125, epsilon = 1e-14);
        assert_eq!(eval_q(&k, p(0.4, 0.4), &ctx), 0.0);
    }

    #[test]
    fn degenerate_multiset_is_zero() {
        let (f, k) = frame_knots(&[1, 1, 1, 4]);
        assert_eq!(eval_q(&k, p(0.2, 0.0), &lex(f.macro_area())), 0.0);
    }

    #[test]
    fn corner_value_in_interior_limit() {
        let (f, k) = frame_knots(&[1, 1, 1, 4, 6]);
        let ctx = EvalContext::new(
            f.macro_area(),
            HalfOpenConvention::InteriorLimit {
                toward: f.centroid(),
            },
        )
        .unwrap();
        assert_abs_diff_eq!(eval_q(&k, f.vertex(1), &ctx), 4.0, epsilon = 1e-13);
    }

    #[test]
    fn exterior_points_vanish() {
        let (f, k) = frame_knots(&[1, 2, 4, 5, 6]);
        let ctx = lex(f.macro_area());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut tested = 0;
        while tested < 10_000 {
            let x = p(rng.random_range(-1.0..2.0), rng.random_range(-1.0..2.0));
            if k.hull_contains(x) {
                continue;
            }
            assert_eq!(eval_q(&k, x, &ctx), 0.0, "nonzero at {x}");
            tested += 1;
        }
    }

    #[test]
    fn values_are_nonnegative() {
        let ctx = lex(0.5);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for ids in [
            &[1u8, 1, 1, 4, 6][..],
            &[1, 1, 2, 4, 6],
            &[1, 2, 4, 5, 6],
            &[1, 2, 3, 7, 10],
        ] {
            let (_, k) = frame_knots(ids);
            for _ in 0..2_500 {
                let x = p(rng.random_range(-0.1..1.1), rng.random_range(-0.1..1.1));
                assert!(eval_q(&k, x, &ctx) >= -1e-14);
            }
        }
    }

    #[test]
    fn choose_triple_examples() {
        let (_, k) = frame_knots(&[1, 2, 3, 10]);
        assert_eq!(choose_triple(&k, p(0.2, 0.2)).unwrap().indices, [0, 1, 2]);

        let a = p(0.0, 0.0);
        let k = KnotMultiset::new(vec![a, a, p(1.0, 0.0), p(0.0, 1.0)]).unwrap();
        let c = choose_triple(&k, p(0.25, 0.25)).unwrap();
        assert_eq!(c.indices, [0, 2, 3]);
        assert_eq!(c.weights, vec![0.5, 0.0, 0.25, 0.25]);
        assert_abs_diff_eq!(c.weights.iter().sum::<f64>(), 1.0, epsilon = 1e-15);
        // collinear leading knots are skipped
        let k = KnotMultiset::new(vec![a, p(1.0, 0.0), p(2.0, 0.0), p(0.0, 1.0)]).unwrap();
        assert_eq!(choose_triple(&k, a).unwrap().indices, [0, 1, 3]);
    }

    #[test]
    fn triple_choice_does_not_matter() {
        let ctx = lex(0.5);
        for ids in [
            &[1u8, 2, 4, 5, 6][..],
            &[1, 1, 2, 4, 6],
            &[1, 2, 3, 10],
            &[1, 2, 3, 7, 8, 10],
        ] {
            let (_, k) = frame_knots(ids);
            for x in random_generic_points(&k, 1000, 1e-6, 9) {
                let a = eval_q_with(&k, x, &ctx, TripleStrategy::FirstFit);
                let b = eval_q_with(&k, x, &ctx, TripleStrategy::LastFit);
                assert!((a - b).abs() <= 1e-12, "{ids:?} at {x}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn derivative_matches_central_differences() {
        let ctx = lex(0.5);
        let h = 1e-5;
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for ids in [
            &[1u8, 1, 1, 4, 6][..],
            &[1, 2, 4, 5, 6],
            &[1, 1, 2, 3],
            &[1, 2, 3, 7, 8, 10],
        ] {
            let (_, k) = frame_knots(ids);
            for x in random_generic_points(&k, 100, 4.0 * h, 12) {
                let angle: f64 = rng.random_range(0.0..std::f64::consts::TAU);
                let u = p(angle.cos(), angle.sin());
                let d = directional_derivative(&k, x, u, &ctx).unwrap();
                let fd = (eval_q(&k, x + u * h, &ctx) - eval_q(&k, x - u * h, &ctx)) / (2.0 * h);
                assert!((d - fd).abs() <= 1e-6, "{ids:?} at {x}: {d} vs {fd}");
            }
        }
    }

    #[test]
    fn derivative_edge_cases() {
        let (_, k) = frame_knots(&[1, 2, 4, 5, 6]);
        let ctx = lex(0.5);
        assert_eq!(
            directional_derivative(&k, p(0.3, 0.2), p(0.0, 0.0), &ctx),
            Ok(0.0)
        );
        let (_, k0) = frame_knots(&[1, 2, 3]);
        assert_eq!(
            directional_derivative(&k0, p(0.3, 0.2), p(1.0, 0.0), &ctx),
            Err(SplineError::DegreeZeroDerivative)
        );
    }

    #[test]
    fn knot_insertion_identity() {
        let ctx = lex(0.5);
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for ids in [&[1u8, 1, 1, 4, 6][..], &[1, 2, 4, 5, 6], &[1, 1, 2, 3]] {
            let (_, k) = frame_knots(ids);
            for y in random_generic_points(&k, 10, 1e-3, rng.random()) {
                let terms = insert_knot(&k, y).unwrap();
                assert_eq!(terms.len(), 3);
                let wsum: f64 = terms.iter().map(|t| t.0).sum();
                assert_abs_diff_eq!(wsum, 1.0, epsilon = 1e-13);
                for x in random_generic_points(&k, 50, 1e-6, rng.random()) {
                    let lhs = eval_q(&k, x, &ctx);
                    let rhs: f64 = terms.iter().map(|(w, kj)| w * eval_q(kj, x, &ctx)).sum();
                    assert!(
                        (lhs - rhs).abs() <= 1e-12,
                        "{ids:?} y={y} x={x}: {lhs} vs {rhs}"
                    );
                }
            }
        }
    }

    #[test]
    fn knot_insertion_examples() {
        let (f, k) = frame_knots(&[1, 2, 4, 5, 6]);
        let terms = insert_knot(&k, f.vertex(2)).unwrap();
        assert!(terms.iter().any(|(w, kj)| *w == 1.0 && kj == &k));

        let (f, k) = frame_knots(&[1, 2, 3, 10]);
        let terms = insert_knot(&k, f.vertex(10)).unwrap();
        for (w, _) in &terms {
            assert_abs_diff_eq!(*w, 1.0 / 3.0, epsilon = 1e-15);
        }
        assert_eq!(
            insert_knot(&k, p(2.0, 2.0)),
            Err(SplineError::OutsideHull(p(2.0, 2.0)))
        );
    }

    #[test]
    fn continuity_order_examples() {
        let (f, k) = frame_knots(&[1, 1, 1, 4, 6]);
        assert_eq!(continuity_order(&k, (f.vertex(1), f.vertex(4))), Ok(-1));
        assert_eq!(continuity_order(&k, (f.vertex(4), f.vertex(6))), Ok(1));

        let (f, k) = frame_knots(&[1, 2, 4, 5, 6]);
        assert_eq!(continuity_order(&k, (f.vertex(4), f.vertex(5))), Ok(1));
        assert_eq!(continuity_order(&k, (f.vertex(1), f.vertex(5))), Ok(1));

        let (f, k) = frame_knots(&[1, 2, 3, 10]);
        assert_eq!(continuity_order(&k, (f.vertex(1), f.vertex(10))), Ok(0));
        assert!(matches!(
            continuity_order(&k, (f.vertex(7), f.vertex(8))),
            Err(SplineError::NotAKnotLine(..))
        ));
    }

    #[test]
    fn affine_invariance() {
        let (f, k) = frame_knots(&[1, 2, 4, 5, 6]);
        let map = |q: Point2| p(2.0 * q.x - 0.7 * q.y + 3.0, 0.4 * q.x + 1.5 * q.y - 1.0);
        let det = 2.0 * 1.5 + 0.7 * 0.4;
        let mapped = KnotMultiset::new(k.knots().iter().map(|&q| map(q)).collect()).unwrap();
        let ctx = lex(f.macro_area());
        let ctx_m = lex(f.macro_area() * det);
        for x in random_generic_points(&k, 200, 1e-6, 21) {
            let a = eval_q(&k, x, &ctx);
            let b = eval_q(&mapped, map(x), &ctx_m);
            assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
        }
    }

    #[test]
    fn knot_lines_of_interior_spline() {
        let (_, k) = frame_knots(&[1, 2, 4, 5, 6]);
        let lines = knot_lines(&k);
        // macro edge through v1, v2, v4; edges v2v5, v1v6; medial v4v5, v5v6, v6v4; medians v1v5, v2v6
        assert_eq!(lines.len(), 8);
        let m: Vec<usize> = lines.iter().map(|l| l.multiplicity).collect();
        assert_eq!(m.iter().filter(|&&m| m == 3).count(), 1);
    }
}
