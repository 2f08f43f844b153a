//! Monte Carlo estimate of a simplex spline from its geometric definition.
//!
//! A point drawn uniformly from a `(d+2)`-simplex and pushed through the
//! affine projection that sends its vertices onto the knots has density
//! `vol_d(σ ∩ π⁻¹(x)) / vol_{d+2}(σ)`, which is the unit-integral simplex
//! spline `M[K]`. Uniform sampling of the simplex is the same as drawing
//! flat Dirichlet weights, so the projected sample is `Σ_i w_i k_i`.
//!
//! The density at `x` is estimated by the fraction of samples landing in a
//! disc of radius `r` around `x`, divided by the disc area. The area
//! normalization relates to it by `Q[K] = A · M[K] / C(d+2, 2)`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};

use super::{knot_lines, EvalContext, KnotMultiset, SplineError};
use crate::geometry::{orient2d, Point2};

pub const MIN_SAMPLES: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleEstimate {
    pub mean: f64,
    pub standard_error: f64,
    pub samples: usize,
    /// False when the averaging disc meets a knot line, where the density
    /// may be discontinuous and the disc average biased.
    pub reliable: bool,
}

impl OracleEstimate {
    /// `|value - mean|` in units of the standard error.
    pub fn z_score(&self, value: f64) -> f64 {
        let diff = (value - self.mean).abs();
        if diff == 0.0 {
            0.0
        } else {
            diff / self.standard_error
        }
    }
}

/// Disc radius: 2% of the knot hull diameter at 10⁴ samples, shrinking as `n^(-1/4)`.
pub fn default_radius(k: &KnotMultiset, n: usize) -> f64 {
    let d = k.distinct();
    let mut diam: f64 = 0.0;
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            diam = diam.max((d[i] - d[j]).norm());
        }
    }
    0.02 * diam * (MIN_SAMPLES as f64 / n as f64).powf(0.25)
}

pub fn eval_geometric_oracle(
    k: &KnotMultiset,
    x: Point2,
    ctx: &EvalContext,
    n: usize,
    seed: u64,
) -> Result<OracleEstimate, SplineError> {
    Ok(eval_geometric_oracle_batch(k, &[x], ctx, n, seed)?[0])
}

/// Estimates at several points from one shared sample stream.
pub fn eval_geometric_oracle_batch(
    k: &KnotMultiset,
    xs: &[Point2],
    ctx: &EvalContext,
    n: usize,
    seed: u64,
) -> Result<Vec<OracleEstimate>, SplineError> {
    if n < MIN_SAMPLES {
        return Err(SplineError::TooFewSamples {
            min: MIN_SAMPLES,
            got: n,
        });
    }
    if k.hull_area() <= 0.0 {
        return Err(SplineError::DegenerateHull);
    }
    let r = default_radius(k, n);
    let r2 = r * r;
    let knots = k.knots();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut weights = vec![0.0f64; knots.len()];
    let mut hits = vec![0u64; xs.len()];
    for _ in 0..n {
        let mut total = 0.0;
        for w in weights.iter_mut() {
            *w = Exp1.sample(&mut rng);
            total += *w;
        }
        let mut y = Point2::default();
        for (w, q) in weights.iter().zip(knots) {
            y.x += w * q.x;
            y.y += w * q.y;
        }
        y = y * (1.0 / total);
        for (h, x) in hits.iter_mut().zip(xs) {
            let dx = y.x - x.x;
            let dy = y.y - x.y;
            if dx * dx + dy * dy <= r2 {
                *h += 1;
            }
        }
    }

    let d = k.degree() as f64;
    let binom = (d + 1.0) * (d + 2.0) / 2.0;
    let scale = ctx.normalization_area() / (binom * std::f64::consts::PI * r2);
    let lines = knot_lines(k);
    Ok(xs
        .iter()
        .zip(hits)
        .map(|(&x, h)| {
            let p = h as f64 / n as f64;
            let se = (p * (1.0 - p) / n as f64).sqrt();
            let reliable = lines
                .iter()
                .all(|l| orient2d(l.a, l.b, x).abs() / (l.b - l.a).norm() > r);
            OracleEstimate {
                mean: p * scale,
                standard_error: se * scale,
                samples: n,
                reliable,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{make_frame, HalfOpenConvention, Triangle};
    use crate::simplex_spline::eval_q;

    fn setup(ids: &[u8]) -> (KnotMultiset, EvalContext) {
        let f = make_frame(&Triangle::unit());
        let k = KnotMultiset::new(ids.iter().map(|&i| f.vertex(i)).collect()).unwrap();
        let ctx = EvalContext::new(f.macro_area(), HalfOpenConvention::Lexicographic).unwrap();
        (k, ctx)
    }

    #[test]
    fn uniform_triangle_density() {
        let (k, ctx) = setup(&[1, 4, 6]);
        let x = Point2::new(0.12, 0.15);
        let est = eval_geometric_oracle(&k, x, &ctx, 200_000, 1).unwrap();
        assert!(est.reliable);
        assert!(est.z_score(4.0) <= 3.0, "{est:?}");
    }

    #[test]
    fn linear_spline_at_centroid() {
        let (k, ctx) = setup(&[1, 1, 2, 3]);
        let x = Point2::new(1.0 / 3.0, 1.0 / 3.0);
        let est = eval_geometric_oracle(&k, x, &ctx, 400_000, 2).unwrap();
        let q = eval_q(&k, x, &ctx);
        assert!(est.z_score(q) <= 3.0, "{est:?} vs {q}");
    }

    #[test]
    fn far_outside_is_zero() {
        let (k, ctx) = setup(&[1, 2, 4, 5, 6]);
        let est = eval_geometric_oracle(&k, Point2::new(5.0, 5.0), &ctx, 10_000, 3).unwrap();
        assert_eq!(est.mean, 0.0);
        assert_eq!(est.z_score(0.0), 0.0);
    }

    #[test]
    fn knot_line_points_are_flagged() {
        let (k, ctx) = setup(&[1, 2, 4, 5, 6]);
        let est = eval_geometric_oracle(&k, Point2::new(0.5, 0.1), &ctx, 10_000, 4).unwrap();
        assert!(!est.reliable);
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let (k, ctx) = setup(&[1, 1, 1, 4, 6]);
        let x = Point2::new(0.1, 0.05);
        let a = eval_geometric_oracle(&k, x, &ctx, 20_000, 9).unwrap();
        let b = eval_geometric_oracle(&k, x, &ctx, 20_000, 9).unwrap();
        assert_eq!(a, b);
        assert!(eval_geometric_oracle(&k, x, &ctx, 100, 9).is_err());
    }
}
