//! `ps12`: evaluate, verify and experiment with C¹ quadratic 12-split splines.
//!
//! Exit codes: 0 success, 1 a quantitative check failed, 2 bad usage or input.

mod funcspec;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use funcspec::FunctionSpec;
use output::{emit, Cell, Format, Report, Table};
use ps12::macro_mesh::{h2_convergence, load_mesh, MIN_SPECTRAL_GAP};
use ps12::ps12_spline::{dual_functionals, quasi_interpolant, BasisClass};
use ps12::simplex_spline::eval_q;
use ps12::verify::{run_suite, Suite, VerifyConfig};
use ps12::{
    assemble_c1_constraints, make_frame, MultiplicityVector, Point2, SBasis, Triangle,
    Triangulation,
};

#[derive(Parser, Debug)]
#[command(
    name = "ps12",
    version,
    about = "C1 quadratic simplex splines on the Powell-Sabin 12-split"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one basis function or simplex spline at points.
    Eval(EvalArgs),
    /// Run a named verification suite.
    Verify(VerifyArgs),
    /// Quasi-interpolation coefficients of a function on one triangle.
    Quasi(QuasiArgs),
    /// Dimension of the C1 space on a mesh against 3|V| + |E|.
    MeshDim(MeshDimArgs),
    /// Control-surface distance under uniform refinement.
    Convergence(ConvergenceArgs),
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

const UNIT_TRIANGLE: &str = "0,0,1,0,0,1";

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("function").required(true).args(["basis", "mult"]))]
#[command(group = clap::ArgGroup::new("where").required(true).args(["point", "grid", "points"]))]
struct EvalArgs {
    /// Macro triangle corners, counterclockwise.
    #[arg(long, default_value = UNIT_TRIANGLE, value_name = "X1,Y1,X2,Y2,X3,Y3")]
    triangle: String,
    /// Basis function name: corner1..3, edge14, edge24, edge25, edge35, edge36, edge16, interior4..6.
    #[arg(long)]
    basis: Option<String>,
    /// Knot multiplicities on the split vertices, 6 or 10 digits (e.g. 110111).
    #[arg(long)]
    mult: Option<String>,
    /// Evaluation point; may be repeated.
    #[arg(long, value_name = "X,Y", allow_hyphen_values = true)]
    point: Vec<String>,
    /// Barycentric lattice with N points per side, clipped to the triangle.
    #[arg(long, value_name = "N")]
    grid: Option<usize>,
    /// File of points, one `x y` or `x,y` per line.
    #[arg(long, value_name = "PATH")]
    points: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// pou, marsden, boundary, smoothness, independence, stability, oracle, insertion or derivative.
    suite: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Override the tolerance of every upper-bound check.
    #[arg(long)]
    tol: Option<f64>,
    /// Step for finite differences and one-sided limits.
    #[arg(long, default_value_t = 1e-5)]
    h: f64,
    /// Override the suite's sample count.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value = UNIT_TRIANGLE, value_name = "X1,Y1,X2,Y2,X3,Y3")]
    triangle: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct QuasiArgs {
    /// const:C, poly:TERMS (e.g. poly:x2+y2) or table:PATH.
    #[arg(long = "fn", value_name = "SPEC")]
    function: Option<String>,
    #[arg(long, default_value = UNIT_TRIANGLE, value_name = "X1,Y1,X2,Y2,X3,Y3")]
    triangle: String,
    /// Also report the largest error on a sample lattice.
    #[arg(long)]
    check: bool,
    /// Lattice points per side for --check.
    #[arg(long, default_value_t = 41)]
    grid: usize,
    /// Tolerance shown next to the sampled error.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Print the points a table must contain, then exit.
    #[arg(long, conflicts_with = "check")]
    list_points: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct MeshDimArgs {
    /// Mesh file: `nv nt`, then nv lines `x y`, then nt lines `i j k`.
    mesh: PathBuf,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct ConvergenceArgs {
    /// const:C or poly:TERMS.
    #[arg(long = "fn", value_name = "SPEC")]
    function: String,
    /// Base mesh file; the unit square split along its diagonal by default.
    #[arg(long)]
    mesh: Option<PathBuf>,
    /// Number of uniform refinements, at least 3.
    #[arg(long, default_value_t = 4)]
    levels: usize,
    /// Smallest acceptable fitted slope.
    #[arg(long, default_value_t = 1.8)]
    min_slope: f64,
    #[command(flatten)]
    output: OutputArgs,
}

/// Failure categories mapped to exit codes.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(String),
}

impl Failure {
    fn usage(msg: impl std::fmt::Display) -> Self {
        Failure::Usage(msg.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code().clamp(0, 255) as u8);
        }
    };
    let result = match cli.command {
        Command::Eval(a) => cmd_eval(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Quasi(a) => cmd_quasi(a),
        Command::MeshDim(a) => cmd_mesh_dim(a),
        Command::Convergence(a) => cmd_convergence(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) | Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn parse_numbers(s: &str, n: usize, what: &str) -> Result<Vec<f64>, Failure> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::usage(format!("{what}: cannot parse {s:?}")))?;
    if v.len() != n || v.iter().any(|x| !x.is_finite()) {
        return Err(Failure::usage(format!(
            "{what}: expected {n} finite comma-separated numbers, got {s:?}"
        )));
    }
    Ok(v)
}

fn parse_triangle(s: &str) -> Result<Triangle, Failure> {
    let v = parse_numbers(s, 6, "--triangle")?;
    Triangle::new(
        Point2::new(v[0], v[1]),
        Point2::new(v[2], v[3]),
        Point2::new(v[4], v[5]),
    )
    .map_err(|e| Failure::usage(format!("--triangle: {e}")))
}

fn parse_point(s: &str) -> Result<Point2, Failure> {
    let v = parse_numbers(s, 2, "--point")?;
    Ok(Point2::new(v[0], v[1]))
}

fn read_points(path: &Path) -> Result<Vec<Point2>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let mut pts = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let normalized = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty());
        let joined = normalized.collect::<Vec<_>>().join(",");
        let v = parse_numbers(&joined, 2, &format!("{} line {}", path.display(), n + 1))?;
        pts.push(Point2::new(v[0], v[1]));
    }
    Ok(pts)
}

/// Points `v1 + i/(n-1) (v2 - v1) + j/(n-1) (v3 - v1)` with `i + j <= n - 1`.
fn lattice(t: &Triangle, n: usize) -> Vec<Point2> {
    let [a, b, c] = t.corners();
    let m = (n - 1) as f64;
    let mut pts = Vec::with_capacity(n * (n + 1) / 2);
    for j in 0..n {
        for i in 0..n - j {
            let (u, v) = (i as f64 / m, j as f64 / m);
            pts.push(a * (1.0 - u - v) + b * u + c * v);
        }
    }
    pts
}

fn write(report: &Report, out: &OutputArgs) -> Result<(), Failure> {
    emit(&report.render(out.format), out.out.as_deref())
        .map_err(|e| Failure::Io(format!("cannot write output: {e}")))
}

fn cmd_eval(a: EvalArgs) -> Outcome {
    let tri = parse_triangle(&a.triangle)?;
    let basis = SBasis::new(make_frame(&tri));
    let f: Box<dyn Fn(Point2) -> f64> = match (&a.basis, &a.mult) {
        (Some(name), _) => {
            let j = BasisClass::parse(name)
                .map_err(Failure::usage)?
                .canonical_index();
            let b = basis.clone();
            Box::new(move |x| b.eval(x)[j])
        }
        (None, Some(digits)) => {
            let m = MultiplicityVector::parse(digits).map_err(Failure::usage)?;
            let k = m.knots(basis.frame());
            let ctx = *basis.context();
            Box::new(move |x| eval_q(&k, x, &ctx))
        }
        (None, None) => unreachable!("clap requires --basis or --mult"),
    };
    let points = if let Some(n) = a.grid {
        if n < 2 {
            return Err(Failure::usage("--grid needs at least 2 points per side"));
        }
        lattice(&tri, n)
    } else if let Some(path) = &a.points {
        read_points(path)?
    } else {
        a.point
            .iter()
            .map(|s| parse_point(s))
            .collect::<Result<_, _>>()?
    };
    let mut t = Table::new(&["x", "y", "value"]);
    for p in points {
        t.push(vec![Cell::Num(p.x), Cell::Num(p.y), Cell::Num(f(p))]);
    }
    write(
        &Report {
            sections: vec![("rows", t)],
            notes: vec![],
        },
        &a.output,
    )?;
    Ok(true)
}

fn cmd_verify(a: VerifyArgs) -> Outcome {
    let suite: Suite = a.suite.parse().map_err(Failure::usage)?;
    let cfg = VerifyConfig {
        seed: a.seed,
        tol: a.tol,
        h: a.h,
        samples: a.samples,
        triangle: parse_triangle(&a.triangle)?,
    };
    let report = run_suite(suite, &cfg).map_err(Failure::usage)?;
    let mut t = Table::new(&["check", "max_error", "tolerance", "pass"]);
    for c in &report.checks {
        t.push(vec![
            Cell::Text(c.name.clone()),
            Cell::Num(c.max_error),
            Cell::Num(c.tolerance),
            Cell::Bool(c.pass),
        ]);
    }
    write(
        &Report {
            sections: vec![("checks", t)],
            notes: vec![],
        },
        &a.output,
    )?;
    let passed = report.checks.iter().filter(|c| c.pass).count();
    eprintln!(
        "verify {suite}: {passed}/{} checks passed",
        report.checks.len()
    );
    Ok(report.passed())
}

fn cmd_quasi(a: QuasiArgs) -> Outcome {
    let tri = parse_triangle(&a.triangle)?;
    let basis = SBasis::new(make_frame(&tri));
    if a.list_points {
        let mut pts: Vec<Point2> = Vec::new();
        for d in dual_functionals(&basis) {
            for p in [d.a, d.b, d.midpoint()] {
                if !pts.contains(&p) {
                    pts.push(p);
                }
            }
        }
        let mut t = Table::new(&["x", "y"]);
        for p in pts {
            t.push(vec![Cell::Num(p.x), Cell::Num(p.y)]);
        }
        write(
            &Report {
                sections: vec![("points", t)],
                notes: vec![],
            },
            &a.output,
        )?;
        return Ok(true);
    }
    let spec = a
        .function
        .as_deref()
        .ok_or_else(|| Failure::usage("--fn is required"))?;
    let spec = FunctionSpec::parse(spec).map_err(Failure::usage)?;
    if a.check && matches!(spec, FunctionSpec::Table(_)) {
        return Err(Failure::usage(
            "--check needs a function defined everywhere, not a table",
        ));
    }
    // tables may lack a point; surface that as an input error instead of panicking
    let missing = std::cell::RefCell::new(None);
    let s = quasi_interpolant(&basis, |p| {
        spec.eval(p).unwrap_or_else(|e| {
            missing.borrow_mut().get_or_insert(e);
            f64::NAN
        })
    });
    if let Some(e) = missing.into_inner() {
        return Err(Failure::usage(e));
    }
    let mut coef = Table::new(&["basis", "coefficient"]);
    for (f, c) in basis.functions().iter().zip(s.coefficients) {
        coef.push(vec![Cell::Text(f.class.name()), Cell::Num(c)]);
    }
    let mut report = Report {
        sections: vec![("coefficients", coef)],
        notes: vec![],
    };
    if a.check {
        if a.grid < 2 {
            return Err(Failure::usage("--grid needs at least 2 points per side"));
        }
        let err = lattice(&tri, a.grid)
            .into_iter()
            .map(|x| (s.eval(x) - spec.eval(x).expect("defined everywhere")).abs())
            .fold(0.0, f64::max);
        let mut t = Table::new(&["check", "max_error", "tolerance", "pass"]);
        t.push(vec![
            Cell::Text("reproduction".into()),
            Cell::Num(err),
            Cell::Num(a.tol),
            Cell::Bool(err <= a.tol),
        ]);
        report.sections.push(("checks", t));
    }
    write(&report, &a.output)?;
    Ok(true)
}

fn cmd_mesh_dim(a: MeshDimArgs) -> Outcome {
    let mesh =
        load_mesh(&a.mesh).map_err(|e| Failure::usage(format!("{}: {e}", a.mesh.display())))?;
    let space = assemble_c1_constraints(&mesh);
    let rank = space.rank();
    let formula = mesh.expected_dimension();
    let well = space.well_conditioned();
    let pass = space.dimension() == formula && well;
    let sv = &rank.singular_values;
    let kept = if rank.rank > 0 {
        sv[rank.rank - 1]
    } else {
        f64::NAN
    };
    let dropped = sv.get(rank.rank).copied().unwrap_or(0.0);
    let mut t = Table::new(&[
        "vertices",
        "edges",
        "triangles",
        "constraint_rows",
        "rank",
        "dimension",
        "formula",
        "smallest_kept",
        "largest_dropped",
        "gap",
        "pass",
    ]);
    t.push(vec![
        Cell::Int(mesh.num_vertices()),
        Cell::Int(mesh.num_edges()),
        Cell::Int(mesh.num_triangles()),
        Cell::Int(space.constraints().nrows()),
        Cell::Int(rank.rank),
        Cell::Int(space.dimension()),
        Cell::Int(formula),
        Cell::Num(kept),
        Cell::Num(dropped),
        Cell::Num(rank.gap),
        Cell::Bool(pass),
    ]);
    write(
        &Report {
            sections: vec![("dimension", t)],
            notes: vec![],
        },
        &a.output,
    )?;
    if !well {
        eprintln!(
            "ill-conditioned rank: spectral gap {:.3e} below {MIN_SPECTRAL_GAP}",
            rank.gap
        );
    }
    Ok(pass)
}

fn cmd_convergence(a: ConvergenceArgs) -> Outcome {
    if a.levels < 3 {
        return Err(Failure::usage(format!(
            "--levels must be at least 3, got {}",
            a.levels
        )));
    }
    let spec = FunctionSpec::parse(&a.function).map_err(Failure::usage)?;
    if matches!(spec, FunctionSpec::Table(_)) {
        return Err(Failure::usage(
            "convergence needs a function defined everywhere, not a table",
        ));
    }
    let base = match &a.mesh {
        Some(p) => load_mesh(p).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?,
        None => Triangulation::unit_square(),
    };
    let rep = h2_convergence(
        |p| spec.eval(p).expect("defined everywhere"),
        &base,
        a.levels,
    )
    .map_err(Failure::usage)?;
    let mut t = Table::new(&["level", "h", "distance", "approximation_error"]);
    for (i, r) in rep.rows.iter().enumerate() {
        t.push(vec![
            Cell::Int(i),
            Cell::Num(r.h),
            Cell::Num(r.distance),
            Cell::Num(r.approximation_error),
        ]);
    }
    // a reproduced f needs no rate; its control distance is reported as is
    let exact = rep.exact_reproduction();
    let (status, pass, slope) = match rep.slope {
        None => (
            "exact reproduction; slope undefined".to_string(),
            true,
            Cell::Text("undefined".into()),
        ),
        Some(s) if exact => (
            format!("exact reproduction; control-surface slope {s:.4}"),
            true,
            Cell::Num(s),
        ),
        Some(s) if s >= a.min_slope => (
            format!("slope {s:.4} >= {}", a.min_slope),
            true,
            Cell::Num(s),
        ),
        Some(s) => (
            format!("slope {s:.4} below {}", a.min_slope),
            false,
            Cell::Num(s),
        ),
    };
    let report = Report {
        sections: vec![("levels", t)],
        notes: vec![
            ("slope", slope),
            ("exact_reproduction", Cell::Bool(exact)),
            ("status", Cell::Text(status.clone())),
        ],
    };
    write(&report, &a.output)?;
    eprintln!("convergence: {status}");
    Ok(pass)
}
