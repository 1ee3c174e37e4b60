//! Parsing of the `volume` flags.

use rho_volume::{ConvexBody, Matrix};

/// `diag(a,b,...)` or a JSON array of rows.
pub fn parse_matrix(s: &str) -> Result<Matrix, String> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix("diag(").and_then(|r| r.strip_suffix(')')) {
        let entries = inner
            .split(',')
            .map(|x| x.trim().parse::<f64>().map_err(|e| format!("bad diagonal entry {x:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(Matrix::from_diagonal(&rho_volume::Vector::from_vec(entries)));
    }
    let rows: Vec<Vec<f64>> =
        serde_json::from_str(s).map_err(|e| format!("matrix must be diag(...) or a JSON array of rows: {e}"))?;
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err("matrix must be square and nonempty".into());
    }
    Ok(Matrix::from_fn(n, n, |i, j| rows[i][j]))
}

/// `box<d>` or `ball<d>`.
pub fn parse_body(s: &str) -> Result<ConvexBody, String> {
    let (kind, dim) = if let Some(d) = s.strip_prefix("box") {
        ("box", d)
    } else if let Some(d) = s.strip_prefix("ball") {
        ("ball", d)
    } else {
        return Err(format!("unknown body {s:?} (expected box<d> or ball<d>)"));
    };
    let d: usize = dim.parse().map_err(|_| format!("bad dimension in {s:?}"))?;
    if d == 0 {
        return Err("body dimension must be positive".into());
    }
    Ok(if kind == "box" { ConvexBody::cube(d) } else { ConvexBody::unit_ball(d) })
}
