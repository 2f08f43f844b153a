//! Function specifications accepted by `quasi` and `convergence`.
//!
//! * `const:C`
//! * `poly:TERMS`, e.g. `poly:x2+y2`, `poly:3 - 0.5xy + x^3`, `poly:2*x*y2`
//! * `table:PATH`, rows `x y value`; evaluation requires an exact row match

use std::collections::HashMap;
use std::fmt;

use ps12::Point2;

#[derive(Debug, Clone, PartialEq)]
pub enum FunctionSpec {
    Constant(f64),
    /// `(coefficient, power of x, power of y)`.
    Polynomial(Vec<(f64, u32, u32)>),
    Table(Table),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpecError(pub String);

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for SpecError {}

impl FunctionSpec {
    pub fn parse(spec: &str) -> Result<Self, SpecError> {
        let (kind, body) = spec.split_once(':').ok_or_else(|| {
            SpecError(format!(
                "function spec {spec:?} needs a kind prefix (const:, poly:, table:)"
            ))
        })?;
        match kind {
            "const" => body
                .trim()
                .parse::<f64>()
                .ok()
                .filter(|c| c.is_finite())
                .map(FunctionSpec::Constant)
                .ok_or_else(|| SpecError(format!("bad constant {body:?}"))),
            "poly" => parse_polynomial(body).map(FunctionSpec::Polynomial),
            "table" => Table::load(body).map(FunctionSpec::Table),
            _ => Err(SpecError(format!("unknown function kind {kind:?}"))),
        }
    }

    pub fn eval(&self, p: Point2) -> Result<f64, SpecError> {
        match self {
            FunctionSpec::Constant(c) => Ok(*c),
            FunctionSpec::Polynomial(terms) => Ok(terms
                .iter()
                .map(|&(c, i, j)| c * p.x.powi(i as i32) * p.y.powi(j as i32))
                .sum()),
            FunctionSpec::Table(t) => t.lookup(p),
        }
    }
}

fn parse_polynomial(body: &str) -> Result<Vec<(f64, u32, u32)>, SpecError> {
    let s: String = body
        .chars()
        .filter(|c| !c.is_whitespace() && *c != '*' && *c != '^')
        .collect();
    if s.is_empty() {
        return Err(SpecError("empty polynomial".into()));
    }
    let bad = |msg: &str| SpecError(format!("bad polynomial {body:?}: {msg}"));
    let mut terms = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let mut sign = 1.0;
        if chars[i] == '+' || chars[i] == '-' {
            if chars[i] == '-' {
                sign = -1.0;
            }
            i += 1;
        } else if i > 0 {
            return Err(bad("expected + or -"));
        }
        let start = i;
        while i < chars.len()
            && (chars[i].is_ascii_digit() || chars[i] == '.' || chars[i] == 'e' && start < i)
        {
            i += 1;
        }
        let coef = if i > start {
            let text: String = chars[start..i].iter().collect();
            text.parse::<f64>()
                .map_err(|_| bad(&format!("cannot read {text:?}")))?
        } else {
            1.0
        };
        let (mut px, mut py, mut vars) = (0u32, 0u32, 0);
        while i < chars.len() && (chars[i] == 'x' || chars[i] == 'y') {
            let var = chars[i];
            i += 1;
            let ds = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let power = if i > ds {
                chars[ds..i]
                    .iter()
                    .collect::<String>()
                    .parse::<u32>()
                    .map_err(|_| bad("bad power"))?
            } else {
                1
            };
            if var == 'x' {
                px += power;
            } else {
                py += power;
            }
            vars += 1;
        }
        if i == start {
            return Err(bad("empty term"));
        }
        if vars == 0 && i < chars.len() && chars[i] != '+' && chars[i] != '-' {
            return Err(bad(&format!("unexpected {:?}", chars[i])));
        }
        if px + py > 16 {
            return Err(bad("degree above 16"));
        }
        terms.push((sign * coef, px, py));
    }
    Ok(terms)
}

/// Tabulated values keyed by exact coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    rows: Vec<(Point2, f64)>,
    index: HashMap<(u64, u64), f64>,
}

impl Table {
    pub fn load(path: &str) -> Result<Self, SpecError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| SpecError(format!("cannot read {path}: {e}")))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, SpecError> {
        let mut rows = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let v: Vec<f64> = line
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|_| SpecError(format!("table line {}: not a number", n + 1)))?;
            if v.len() != 3 || v.iter().any(|x| !x.is_finite()) {
                return Err(SpecError(format!(
                    "table line {}: expected three finite numbers",
                    n + 1
                )));
            }
            rows.push((Point2::new(v[0], v[1]), v[2]));
        }
        if rows.is_empty() {
            return Err(SpecError("table is empty".into()));
        }
        let index = rows
            .iter()
            .map(|(p, v)| ((p.x.to_bits(), p.y.to_bits()), *v))
            .collect();
        Ok(Table { rows, index })
    }

    /// Exact match first, then the nearest row within `1e-12` relative distance.
    pub fn lookup(&self, p: Point2) -> Result<f64, SpecError> {
        if let Some(v) = self.index.get(&(p.x.to_bits(), p.y.to_bits())) {
            return Ok(*v);
        }
        let tol = 1e-12 * (1.0 + p.norm());
        self.rows
            .iter()
            .find(|(q, _)| (*q - p).norm() <= tol)
            .map(|r| r.1)
            .ok_or_else(|| SpecError(format!("point ({}, {}) is not tabulated", p.x, p.y)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(spec: &str, x: f64, y: f64) -> f64 {
        FunctionSpec::parse(spec)
            .unwrap()
            .eval(Point2::new(x, y))
            .unwrap()
    }

    #[test]
    fn polynomial_examples() {
        assert_eq!(eval("poly:x2+y2", 2.0, 3.0), 13.0);
        assert_eq!(eval("poly:x3", 2.0, 0.0), 8.0);
        assert_eq!(eval("poly:3 - 0.5xy + x^3", 1.0, 2.0), 3.0);
        assert_eq!(eval("poly:2*x*y2", 1.5, 2.0), 12.0);
        assert_eq!(eval("poly:-x", 4.0, 0.0), -4.0);
        assert_eq!(eval("const:2.5", 9.0, 9.0), 2.5);
    }

    #[test]
    fn malformed_specs() {
        for s in [
            "x2",
            "poly:",
            "poly:x2+",
            "poly:x2z",
            "const:abc",
            "sin:x",
            "table:/no/such",
        ] {
            assert!(FunctionSpec::parse(s).is_err(), "{s}");
        }
    }

    #[test]
    fn table_lookup() {
        let t = Table::parse("# x y f\n0 0 1\n0.5, 0.25, 2\n").unwrap();
        assert_eq!(t.lookup(Point2::new(0.5, 0.25)).unwrap(), 2.0);
        assert_eq!(t.lookup(Point2::new(0.5 + 1e-15, 0.25)).unwrap(), 2.0);
        assert!(t.lookup(Point2::new(0.1, 0.1)).is_err());
        assert!(Table::parse("1 2\n").is_err());
    }
}
