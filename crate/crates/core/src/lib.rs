//! C¹ quadratic simplex splines on the Powell-Sabin 12-split.
//!
//! The crate is layered bottom-up:
//!
//! * [`geometry`]: points, barycentric coordinates, the 12-split frame and
//!   the half-open triangle rule.
//! * [`simplex_spline`]: area-normalized bivariate simplex splines evaluated
//!   by recurrence, with derivatives, knot insertion and a Monte Carlo
//!   oracle built on the volume-projection definition.
//! * [`ps12_spline`]: the twelve-function S-basis on one macro triangle, its
//!   symmetry group, the Marsden identity and the quasi-interpolant.
//! * [`macro_mesh`]: splines over triangulations, C¹ constraint assembly and
//!   the dimension and convergence experiments.
//! * [`verify`]: named verification suites shared by the CLI.

pub mod geometry;
pub mod linalg;
pub mod macro_mesh;
pub mod ps12_spline;
pub mod simplex_spline;
pub mod verify;

pub use geometry::{
    barycentric, hull_area, locate, make_frame, Bary3, GeometryError, HalfOpenConvention, Location,
    PS12Frame, Point2, SubtriangleId, Triangle,
};
pub use macro_mesh::{
    assemble_c1_constraints, eval_global, GlobalSpace, GlobalSplineFunction, MeshError, SplineMesh,
    Triangulation,
};
pub use ps12_spline::{
    BasisClass, MultiplicityVector, Ps12Error, SBasis, SBasisFunction, SplineFunction,
};
pub use simplex_spline::{EvalContext, KnotMultiset, OracleEstimate, SplineError};
