//! Fixtures shared by the benchmarks.

use ps12::{make_frame, MultiplicityVector, PS12Frame, Point2, SBasis, Triangle};

pub fn unit_frame() -> PS12Frame {
    make_frame(&Triangle::unit())
}

pub fn unit_basis() -> SBasis {
    SBasis::new(unit_frame())
}

/// `n × n` barycentric lattice points strictly inside the unit triangle.
pub fn interior_points(n: usize) -> Vec<Point2> {
    let step = 1.0 / (n + 1) as f64;
    (1..=n)
        .flat_map(|j| (1..=n - j + 1).map(move |i| Point2::new(i as f64 * step, j as f64 * step)))
        .filter(|p| p.x + p.y < 1.0)
        .collect()
}

/// Knot multisets of degree 0, 1 and 2 on the unit frame.
pub fn knot_sets() -> Vec<(&'static str, ps12::KnotMultiset)> {
    let f = unit_frame();
    ["1110000000", "1110000001", "110111"]
        .into_iter()
        .map(|d| {
            (
                d,
                MultiplicityVector::parse(d)
                    .expect("valid literal")
                    .knots(&f),
            )
        })
        .collect()
}
