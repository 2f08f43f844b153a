//! Named verification suites. Each suite samples one property of the
//! S-basis, compares against an independent computation and reports one
//! [`Check`] per measured quantity.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};
use thiserror::Error;

use crate::geometry::{make_frame, Bary3, PS12Frame, Point2, Triangle, SPLIT_LINES};
use crate::ps12_spline::{
    boundary_restriction, local_independence_report, quasi_interpolant, verify_marsden, BasisClass,
    MultiplicityVector, SBasis,
};
use crate::simplex_spline::oracle::{default_radius, eval_geometric_oracle_batch};
use crate::simplex_spline::{
    eval_q, eval_q_with, insert_knot, knot_lines, EvalContext, KnotMultiset, TripleStrategy,
};

type Monomial = fn(Point2) -> f64;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum VerifyError {
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Pou,
    Marsden,
    Boundary,
    Smoothness,
    Independence,
    Stability,
    Oracle,
    Insertion,
    Derivative,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Pou,
        Suite::Marsden,
        Suite::Boundary,
        Suite::Smoothness,
        Suite::Independence,
        Suite::Stability,
        Suite::Oracle,
        Suite::Insertion,
        Suite::Derivative,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Pou => "pou",
            Suite::Marsden => "marsden",
            Suite::Boundary => "boundary",
            Suite::Smoothness => "smoothness",
            Suite::Independence => "independence",
            Suite::Stability => "stability",
            Suite::Oracle => "oracle",
            Suite::Insertion => "insertion",
            Suite::Derivative => "derivative",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| VerifyError::UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Replaces the default tolerance of every upper-bound check.
    pub tol: Option<f64>,
    /// Step for finite differences and one-sided limits.
    pub h: f64,
    /// Replaces the suite's default sample count.
    pub samples: Option<usize>,
    pub triangle: Triangle,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0,
            tol: None,
            h: 1e-5,
            samples: None,
            triangle: Triangle::unit(),
        }
    }
}

/// One measured quantity against its bound.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub max_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    /// Passes when `max_error <= tolerance`.
    pub fn at_most(name: impl Into<String>, max_error: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            max_error,
            tolerance,
            pass: max_error <= tolerance,
        }
    }

    /// Passes when the measured value reaches `bound`; used for sharpness checks.
    pub fn at_least(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Check {
            name: name.into(),
            max_error: value,
            tolerance: bound,
            pass: value >= bound,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Result<SuiteReport, VerifyError> {
    if !(cfg.h > 0.0 && cfg.h.is_finite()) {
        return Err(VerifyError::InvalidConfig(format!(
            "step must be positive, got {}",
            cfg.h
        )));
    }
    if let Some(t) = cfg.tol {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(VerifyError::InvalidConfig(format!(
                "tolerance must be nonnegative, got {t}"
            )));
        }
    }
    if cfg.samples == Some(0) {
        return Err(VerifyError::InvalidConfig(
            "sample count must be positive".into(),
        ));
    }
    let basis = SBasis::new(make_frame(&cfg.triangle));
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let tol = |default: f64| cfg.tol.unwrap_or(default);
    let n = |default: usize| cfg.samples.unwrap_or(default);
    let checks = match suite {
        Suite::Pou => pou(&basis, &mut rng, n(10_000), tol(1e-12)),
        Suite::Marsden => marsden(&basis, &mut rng, n(1_000), tol(1e-12)),
        Suite::Boundary => boundary(&basis, n(1_000), tol(1e-12), tol(1e-14)),
        Suite::Smoothness => smoothness(&basis, cfg.h, n(25), tol(1e-4)),
        Suite::Independence => independence(&basis),
        Suite::Stability => stability(&mut rng, n(50), tol(1e-12)),
        Suite::Oracle => oracle(
            basis.frame(),
            &mut rng,
            n(1_000_000),
            cfg.tol.unwrap_or(3.0),
        )?,
        Suite::Insertion => insertion(basis.frame(), &mut rng, n(500), tol(1e-12)),
        Suite::Derivative => derivative(&basis, &mut rng, cfg.h, n(100), tol(1e-6)),
    };
    Ok(SuiteReport { suite, checks })
}

/// Uniform point in the triangle with corners `p`.
pub fn random_point_in(p: [Point2; 3], rng: &mut impl Rng) -> Point2 {
    let w: [f64; 3] = std::array::from_fn(|_| Exp1.sample(rng));
    Bary3::normalized(w[0], w[1], w[2]).combine(p[0], p[1], p[2])
}

/// Distance from `x` to the nearest of the nine split lines.
pub fn distance_to_split_lines(frame: &PS12Frame, x: Point2) -> f64 {
    SPLIT_LINES
        .iter()
        .map(|&[a, b]| {
            let (p, q) = (frame.vertex(a), frame.vertex(b));
            ((q - p).cross(x - p) / (q - p).norm()).abs()
        })
        .fold(f64::INFINITY, f64::min)
}

/// Uniform interior point at least `margin × diameter` away from every split line.
pub fn random_generic_point(frame: &PS12Frame, margin: f64, rng: &mut impl Rng) -> Point2 {
    let corners = frame.triangle().corners();
    loop {
        let x = random_point_in(corners, rng);
        if distance_to_split_lines(frame, x) >= margin * frame.diameter() {
            return x;
        }
    }
}

/// Aspect ratio: longest edge over the height onto it.
pub fn aspect_ratio(t: &Triangle) -> f64 {
    let c = t.corners();
    let longest = (0..3)
        .map(|k| (c[(k + 1) % 3] - c[k]).norm())
        .fold(0.0, f64::max);
    longest * longest / (2.0 * t.area())
}

/// Random triangle with aspect ratio at most `max_aspect` (roughly
/// log-uniform), randomly rotated and scaled, with its centroid at the origin.
///
/// Placement matters at high aspect ratio: a point stored in coordinates of
/// magnitude `R` carries rounding `eps·R`, which moves it by `eps·R·aspect/size`
/// in barycentric terms, so far-off-origin triangles cannot meet 1e-12.
pub fn random_triangle(rng: &mut impl Rng, max_aspect: f64) -> Triangle {
    loop {
        let aspect = (max_aspect.ln() * rng.random::<f64>()).exp();
        let apex = Point2::new(rng.random_range(0.0..1.0), 1.0 / aspect);
        let theta = rng.random_range(0.0..std::f64::consts::TAU);
        let scale = 10f64.powf(rng.random_range(-2.0..2.0));
        let (s, c) = theta.sin_cos();
        let centroid = Point2::new((1.0 + apex.x) / 3.0, apex.y / 3.0);
        let map = |p: Point2| {
            let p = p - centroid;
            Point2::new(c * p.x - s * p.y, s * p.x + c * p.y) * scale
        };
        if let Ok(t) = Triangle::new(
            map(Point2::new(0.0, 0.0)),
            map(Point2::new(1.0, 0.0)),
            map(apex),
        ) {
            if aspect_ratio(&t) <= max_aspect {
                return t;
            }
        }
    }
}

/// Uniform point in a convex polygon given counterclockwise.
pub fn random_point_in_polygon(poly: &[Point2], rng: &mut impl Rng) -> Point2 {
    let fan: Vec<[Point2; 3]> = (1..poly.len() - 1)
        .map(|i| [poly[0], poly[i], poly[i + 1]])
        .collect();
    let areas: Vec<f64> = fan
        .iter()
        .map(|t| (t[1] - t[0]).cross(t[2] - t[0]).abs())
        .collect();
    let mut u = rng.random::<f64>() * areas.iter().sum::<f64>();
    let idx = areas
        .iter()
        .position(|&a| {
            u -= a;
            u <= 0.0
        })
        .unwrap_or(fan.len() - 1);
    random_point_in(fan[idx], rng)
}

fn pou(basis: &SBasis, rng: &mut impl Rng, n: usize, tol: f64) -> Vec<Check> {
    let corners = basis.frame().triangle().corners();
    let (mut sum_err, mut negative) = (0.0f64, 0.0f64);
    for _ in 0..n {
        let v = basis.eval(random_point_in(corners, rng));
        sum_err = sum_err.max((v.iter().sum::<f64>() - 1.0).abs());
        negative = negative.max(-v.iter().copied().fold(0.0, f64::min));
    }
    vec![
        Check::at_most("partition_of_unity", sum_err, tol),
        Check::at_most("nonnegativity", negative, tol),
    ]
}

fn marsden(basis: &SBasis, rng: &mut impl Rng, n: usize, tol: f64) -> Vec<Check> {
    let corners = basis.frame().triangle().corners();
    let points: Vec<Point2> = (0..n).map(|_| random_point_in(corners, rng)).collect();
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let c: [f64; 3] = std::array::from_fn(|_| rng.random_range(-1.0..=1.0));
        worst = worst.max(verify_marsden(basis, c, &points));
    }
    let monomials: [(&str, Monomial); 6] = [
        ("1", |_| 1.0),
        ("x", |p| p.x),
        ("y", |p| p.y),
        ("x2", |p| p.x * p.x),
        ("xy", |p| p.x * p.y),
        ("y2", |p| p.y * p.y),
    ];
    let mut checks = vec![Check::at_most("marsden_identity", worst, tol)];
    for (name, f) in monomials {
        let s = quasi_interpolant(basis, f);
        let err = points
            .iter()
            .map(|&x| (s.eval(x) - f(x)).abs())
            .fold(0.0, f64::max);
        checks.push(Check::at_most(
            format!("reproduce_{name}"),
            err,
            tol.max(1e-10),
        ));
    }
    checks
}

fn boundary(basis: &SBasis, n: usize, tol_active: f64, tol_rest: f64) -> Vec<Check> {
    let mut checks = Vec::new();
    for (a, b) in [(1, 2), (2, 3), (3, 1)] {
        let r = boundary_restriction(basis.frame(), (a, b)).expect("macro edge");
        let (mut active, mut rest) = (0.0f64, 0.0f64);
        for i in 0..n {
            let t = i as f64 / (n - 1).max(1) as f64;
            let all = basis.eval(r.point(basis.frame(), t));
            let b = r.bsplines(t);
            for (k, &j) in r.basis_indices.iter().enumerate() {
                active = active.max((all[j] - b[k]).abs());
            }
            for (j, v) in all.iter().enumerate() {
                if !r.basis_indices.contains(&j) {
                    rest = rest.max(v.abs());
                }
            }
        }
        checks.push(Check::at_most(
            format!("edge_{a}{b}_bsplines"),
            active,
            tol_active,
        ));
        checks.push(Check::at_most(
            format!("edge_{a}{b}_others_vanish"),
            rest,
            tol_rest,
        ));
    }
    checks
}

/// Value jumps of the functions whose knots put four or more on a macro
/// edge must be of order one there.
pub const SHARPNESS_BOUND: f64 = 0.1;

/// One-sided gradient at `p` from the side `n` points to: normal component
/// by a one-sided second-order difference of values, tangential component
/// by extrapolating exact tangential derivatives.
fn one_sided_gradient(
    basis: &SBasis,
    j: usize,
    p: Point2,
    t: Point2,
    n: Point2,
    h: f64,
) -> (f64, f64) {
    let f = basis.functions();
    let ctx = basis.context();
    let scale = f[j].scale.value();
    let at = |k: f64| p + n * (k * h);
    let val = |x: Point2| {
        if basis.frame().contains(x) {
            basis.eval_one(j, x)
        } else {
            0.0
        }
    };
    let tan = |x: Point2| {
        if basis.frame().contains(x) {
            scale
                * crate::simplex_spline::directional_derivative(f[j].knots(), x, t, ctx)
                    .expect("quadratic")
        } else {
            0.0
        }
    };
    let (g1, g2, g3) = (val(at(1.0)), val(at(2.0)), val(at(3.0)));
    let normal = (-5.0 * g1 + 8.0 * g2 - 3.0 * g3) / (2.0 * h);
    let tangential = 3.0 * tan(at(1.0)) - 3.0 * tan(at(2.0)) + tan(at(3.0));
    (normal, tangential)
}

fn smoothness(basis: &SBasis, h: f64, per_line: usize, tol: f64) -> Vec<Check> {
    let frame = basis.frame();
    let diam = frame.diameter();
    let mut checks = Vec::new();
    for (j, f) in basis.functions().iter().enumerate() {
        let name = f.class.name();
        for line in knot_lines(f.knots()) {
            let (a, b) = (line.a, line.b);
            let dir = b - a;
            let t = dir * (1.0 / dir.norm());
            let n = t.perp();
            // the segment of the line inside the macro triangle, away from vertices
            let segment = clip_to_frame(frame, a, dir);
            let Some((s0, s1)) = segment else { continue };
            let samples: Vec<Point2> = (0..per_line)
                .map(|i| a + dir * (s0 + (s1 - s0) * (i as f64 + 0.5) / per_line as f64))
                .filter(|&p| {
                    frame
                        .vertices()
                        .iter()
                        .all(|&v| (p - v).norm() > 0.02 * diam)
                })
                .collect();
            if line.multiplicity == 2 {
                let mut jump = 0.0f64;
                for &p in &samples {
                    let (n_plus, t_plus) = one_sided_gradient(basis, j, p, t, n, h);
                    let (n_minus, t_minus) = one_sided_gradient(basis, j, p, t, -n, h);
                    // the normal derivative from the minus side is taken along -n
                    let dn = n_plus + n_minus;
                    let dt = t_plus - t_minus;
                    jump = jump.max((dn * dn + dt * dt).sqrt());
                }
                let scaled = jump * diam;
                checks.push(Check::at_most(
                    format!("{name} line {} m=2 gradient_jump", describe(frame, a, b)),
                    scaled,
                    tol,
                ));
            } else if line.multiplicity >= 4 && is_macro_edge(frame, a, b) {
                let inward = if n.dot(frame.centroid() - a) > 0.0 {
                    n
                } else {
                    -n
                };
                let mut jump = 0.0f64;
                for &p in &samples {
                    let inside = basis.eval_one(j, p + inward * (h * diam));
                    let outside = basis.eval_one(j, p - inward * (h * diam));
                    jump = jump.max((inside - outside).abs());
                }
                checks.push(Check::at_least(
                    format!(
                        "{name} line {} m={} value_jump",
                        describe(frame, a, b),
                        line.multiplicity
                    ),
                    jump,
                    SHARPNESS_BOUND,
                ));
            }
        }
    }
    checks
}

fn vertex_id(frame: &PS12Frame, p: Point2) -> Option<u8> {
    (1..=10).find(|&i| (frame.vertex(i) - p).norm() <= 1e-12 * frame.diameter())
}

fn describe(frame: &PS12Frame, a: Point2, b: Point2) -> String {
    match (vertex_id(frame, a), vertex_id(frame, b)) {
        (Some(i), Some(j)) => format!("{}-{}", i.min(j), i.max(j)),
        _ => format!("({a})-({b})"),
    }
}

fn is_macro_edge(frame: &PS12Frame, a: Point2, b: Point2) -> bool {
    let c = frame.triangle().corners();
    (0..3).any(|k| {
        let (p, q) = (c[k], c[(k + 1) % 3]);
        let on = |x: Point2| ((q - p).cross(x - p)).abs() <= 1e-12 * (q - p).dot(q - p);
        on(a) && on(b)
    })
}

/// Parameter range `[s0, s1]` of `a + s·dir` inside the closed macro triangle.
fn clip_to_frame(frame: &PS12Frame, a: Point2, dir: Point2) -> Option<(f64, f64)> {
    let c = frame.triangle().corners();
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    for k in 0..3 {
        let (p, q) = (c[k], c[(k + 1) % 3]);
        // inside means cross(q - p, x - p) >= 0 for a counterclockwise triangle
        let e = q - p;
        let base = e.cross(a - p);
        let slope = e.cross(dir);
        let tol = 1e-12 * e.dot(e);
        if slope.abs() <= 1e-14 * e.norm() * dir.norm() {
            if base < -tol {
                return None;
            }
        } else if slope > 0.0 {
            lo = lo.max(-base / slope);
        } else {
            hi = hi.min(-base / slope);
        }
    }
    (hi > lo).then_some((lo, hi))
}

fn independence(basis: &SBasis) -> Vec<Check> {
    local_independence_report(basis)
        .into_iter()
        .map(|r| {
            let deficit = (r.active.len() as f64 - 6.0).abs() + (6.0 - r.rank as f64).abs();
            Check::at_most(
                format!("subtriangle_{}_active6_rank6", r.subtriangle.index()),
                deficit,
                0.0,
            )
        })
        .collect()
}

fn stability(rng: &mut impl Rng, nodes: usize, tol: f64) -> Vec<Check> {
    let reference = SBasis::new(make_frame(&Triangle::unit()));
    let bary: Vec<Bary3> = (0..nodes)
        .map(|_| loop {
            let w: [f64; 3] = std::array::from_fn(|_| Exp1.sample(rng));
            let b = Bary3::normalized(w[0], w[1], w[2]);
            let x = b.combine(
                Point2::new(0.0, 0.0),
                Point2::new(1.0, 0.0),
                Point2::new(0.0, 1.0),
            );
            if distance_to_split_lines(reference.frame(), x) > 1e-3 {
                break b;
            }
        })
        .collect();
    let collocate = |basis: &SBasis| -> Vec<[f64; 12]> {
        bary.iter()
            .map(|&b| basis.eval(basis.frame().point_at(b)))
            .collect()
    };
    let expected = collocate(&reference);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let t = random_triangle(rng, 1e3);
        let got = collocate(&SBasis::new(make_frame(&t)));
        for (g, e) in got.iter().zip(&expected) {
            for j in 0..12 {
                worst = worst.max((g[j] - e[j]).abs());
            }
        }
    }
    vec![Check::at_most("collocation_matrix_invariance", worst, tol)]
}

/// Six multisets of degrees 0 to 2 on the split vertices.
pub const ORACLE_MULTISETS: [&str; 6] = [
    "1110000000",
    "1110000001",
    "1001010000",
    "300101",
    "210101",
    "110111",
];

fn oracle(
    frame: &PS12Frame,
    rng: &mut impl Rng,
    n: usize,
    z_bound: f64,
) -> Result<Vec<Check>, VerifyError> {
    let ctx = EvalContext::new(frame.macro_area(), Default::default()).expect("positive area");
    let mut checks = Vec::new();
    for digits in ORACLE_MULTISETS {
        let k = MultiplicityVector::parse(digits)
            .expect("valid literal")
            .knots(frame);
        let hull = crate::geometry::convex_hull(k.distinct());
        let points = reliable_points(&k, &hull, n, 20, rng);
        let seed = rng.random();
        let est = eval_geometric_oracle_batch(&k, &points, &ctx, n, seed)
            .map_err(|e| VerifyError::InvalidConfig(e.to_string()))?;
        let worst = points
            .iter()
            .zip(&est)
            .map(|(&x, e)| e.z_score(eval_q(&k, x, &ctx)))
            .fold(0.0, f64::max);
        checks.push(Check::at_most(
            format!("Q[{digits}] max_z_score"),
            worst,
            z_bound,
        ));
    }
    Ok(checks)
}

/// Points in the knot hull whose oracle disc avoids all knot lines.
pub fn reliable_points(
    k: &KnotMultiset,
    hull: &[Point2],
    n: usize,
    count: usize,
    rng: &mut impl Rng,
) -> Vec<Point2> {
    let r = default_radius(k, n);
    let lines = knot_lines(k);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let x = random_point_in_polygon(hull, rng);
        let clear = lines
            .iter()
            .all(|l| (l.b - l.a).cross(x - l.a).abs() / (l.b - l.a).norm() > 2.0 * r);
        if clear {
            out.push(x);
        }
    }
    out
}

/// Multisets used for the insertion check.
pub const INSERTION_MULTISETS: [&str; 4] = ["300101", "210101", "110111", "1110000001"];

fn insertion(frame: &PS12Frame, rng: &mut impl Rng, n: usize, tol: f64) -> Vec<Check> {
    let ctx = EvalContext::new(frame.macro_area(), Default::default()).expect("positive area");
    let mut checks = Vec::new();
    for digits in INSERTION_MULTISETS {
        let k = MultiplicityVector::parse(digits)
            .expect("valid literal")
            .knots(frame);
        let hull = crate::geometry::convex_hull(k.distinct());
        let xs: Vec<Point2> = (0..n)
            .map(|_| random_generic_point(frame, 1e-6, rng))
            .collect();
        let mut worst = 0.0f64;
        for _ in 0..10 {
            let y = random_point_in_polygon(&hull, rng);
            let terms = insert_knot(&k, y).expect("insertion point lies in the hull");
            for &x in &xs {
                let lhs = eval_q(&k, x, &ctx);
                let rhs: f64 = terms.iter().map(|(w, kk)| w * eval_q(kk, x, &ctx)).sum();
                worst = worst.max((lhs - rhs).abs());
            }
        }
        checks.push(Check::at_most(format!("Q[{digits}] insertion"), worst, tol));
    }
    let k = MultiplicityVector::parse("110111")
        .expect("valid literal")
        .knots(frame);
    let mut worst = 0.0f64;
    for _ in 0..n {
        let x = random_generic_point(frame, 1e-6, rng);
        let a = eval_q_with(&k, x, &ctx, TripleStrategy::FirstFit);
        let b = eval_q_with(&k, x, &ctx, TripleStrategy::LastFit);
        worst = worst.max((a - b).abs());
    }
    checks.push(Check::at_most("choice_independence", worst, tol));
    checks
}

fn derivative(basis: &SBasis, rng: &mut impl Rng, h: f64, n: usize, tol: f64) -> Vec<Check> {
    let frame = basis.frame();
    let diam = frame.diameter();
    let step = h * diam;
    let mut checks = Vec::new();
    for (j, f) in basis.functions().iter().enumerate() {
        let mut worst = 0.0f64;
        for _ in 0..n {
            let x = random_generic_point(frame, 4.0 * h, rng);
            let theta = rng.random_range(0.0..std::f64::consts::TAU);
            let u = Point2::new(theta.cos(), theta.sin());
            let exact = basis.directional(x, u)[j];
            let fd =
                (basis.eval_one(j, x + u * step) - basis.eval_one(j, x - u * step)) / (2.0 * step);
            worst = worst.max((exact - fd).abs() * diam);
        }
        checks.push(Check::at_most(
            format!("{} directional", f.class.name()),
            worst,
            tol,
        ));
    }
    checks
}

/// Canonical index of a named basis function.
pub fn basis_index(name: &str) -> Option<usize> {
    BasisClass::parse(name)
        .ok()
        .map(BasisClass::canonical_index)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> VerifyConfig {
        VerifyConfig {
            seed: 11,
            ..Default::default()
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn cheap_suites_pass() {
        for s in [
            Suite::Pou,
            Suite::Marsden,
            Suite::Boundary,
            Suite::Independence,
            Suite::Derivative,
        ] {
            let cfg = VerifyConfig {
                samples: Some(200),
                ..quick()
            };
            let r = run_suite(s, &cfg).unwrap();
            assert!(
                r.passed(),
                "{s}: {:?}",
                r.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn smoothness_suite_passes_and_covers_lines() {
        let r = run_suite(Suite::Smoothness, &quick()).unwrap();
        assert!(
            r.passed(),
            "{:?}",
            r.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>()
        );
        assert!(r.checks.iter().any(|c| c.name.contains("gradient_jump")));
        // corners jump on two macro edges, edge functions on one
        assert_eq!(
            r.checks
                .iter()
                .filter(|c| c.name.contains("value_jump"))
                .count(),
            12
        );
    }

    #[test]
    fn smoothness_detects_c0_lines() {
        // interior4 has three knots on the edge 1-2, so its gradient jumps there
        let basis = SBasis::new(make_frame(&Triangle::unit()));
        let f = basis.frame();
        let j = basis_index("interior4").unwrap();
        let (a, b) = (f.vertex(1), f.vertex(4));
        let t = (b - a) * (1.0 / (b - a).norm());
        let p = a.midpoint(b);
        let plus = one_sided_gradient(&basis, j, p, t, t.perp(), 1e-5);
        let minus = one_sided_gradient(&basis, j, p, t, -t.perp(), 1e-5);
        assert!((plus.0 + minus.0).abs() > 0.1);
    }

    #[test]
    fn tolerance_override_applies() {
        let cfg = VerifyConfig {
            tol: Some(0.0),
            samples: Some(50),
            ..quick()
        };
        let r = run_suite(Suite::Derivative, &cfg).unwrap();
        assert!(r.checks.iter().all(|c| c.tolerance == 0.0));
        assert!(run_suite(Suite::Pou, &VerifyConfig { h: -1.0, ..quick() }).is_err());
        assert!(run_suite(
            Suite::Pou,
            &VerifyConfig {
                samples: Some(0),
                ..quick()
            }
        )
        .is_err());
    }

    #[test]
    fn random_triangles_have_bounded_aspect() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let t = random_triangle(&mut rng, 1e3);
            assert!(aspect_ratio(&t) <= 1e3);
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let cfg = VerifyConfig {
            samples: Some(100),
            ..quick()
        };
        assert_eq!(
            run_suite(Suite::Marsden, &cfg),
            run_suite(Suite::Marsden, &cfg)
        );
    }
}
