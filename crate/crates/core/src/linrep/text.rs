//! Module file format:
//!
//! ```text
//! dims: v1=2 v2=1
//! map v1->v2: [[1,0]]
//! ```
//!
//! Repeated `map` lines for the same vertex pair fill parallel arrows in order. Missing
//! maps are zero and missing vertices have dimension zero.

use std::fmt::Write as _;
use std::str::FromStr;

use super::{BoundAlgebra, LinrepError, Module};
use crate::linalg::{Matrix, Rational};

fn err(line: usize, msg: impl Into<String>) -> LinrepError {
    LinrepError::Parse { line, msg: msg.into() }
}

fn parse_matrix(s: &str, line: usize) -> Result<Vec<Vec<Rational>>, LinrepError> {
    let s = s.trim();
    let inner = s.strip_prefix('[').and_then(|x| x.strip_suffix(']')).ok_or_else(|| err(line, "matrix must be [[..],..]"))?;
    let mut rows = Vec::new();
    let mut rest = inner.trim();
    while !rest.is_empty() {
        let open = rest.find('[').ok_or_else(|| err(line, "expected `[`"))?;
        let close = rest.find(']').ok_or_else(|| err(line, "expected `]`"))?;
        let body = &rest[open + 1..close];
        let row: Result<Vec<Rational>, _> = body
            .split(',')
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .map(|x| Rational::from_str(x).map_err(|_| err(line, format!("bad number `{x}`"))))
            .collect();
        rows.push(row?);
        rest = rest[close + 1..].trim_start_matches(|c: char| c == ',' || c.is_whitespace());
    }
    Ok(rows)
}

pub fn parse_module(alg: &BoundAlgebra, src: &str) -> Result<Module, LinrepError> {
    let q = alg.quiver();
    let n = q.len();
    let mut dims: Option<Vec<usize>> = None;
    let mut maps: Vec<Option<Matrix>> = vec![None; q.arrows().len()];
    for (k, raw) in src.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("dims:") {
            let mut d = vec![0usize; n];
            for tok in rest.split_whitespace() {
                let (name, val) = tok.split_once('=').ok_or_else(|| err(line_no, format!("expected name=dim, got `{tok}`")))?;
                let v = q.index_of(name).ok_or_else(|| err(line_no, format!("unknown vertex `{name}`")))?;
                d[v] = val.parse().map_err(|_| err(line_no, format!("bad dimension `{val}`")))?;
            }
            dims = Some(d);
        } else if let Some(rest) = line.strip_prefix("map") {
            let (head, body) = rest.split_once(':').ok_or_else(|| err(line_no, "expected `map a->b: [[..]]`"))?;
            let (a, b) = head.trim().split_once("->").ok_or_else(|| err(line_no, "expected `a->b`"))?;
            let (s, t) = (
                q.index_of(a.trim()).ok_or_else(|| err(line_no, format!("unknown vertex `{}`", a.trim())))?,
                q.index_of(b.trim()).ok_or_else(|| err(line_no, format!("unknown vertex `{}`", b.trim())))?,
            );
            let slot = (0..maps.len())
                .find(|&i| q.arrows()[i] == (s, t) && maps[i].is_none())
                .ok_or_else(|| err(line_no, "no free arrow between these vertices"))?;
            let rows = parse_matrix(body, line_no)?;
            let r = rows.len();
            let c = rows.first().map_or(0, Vec::len);
            if rows.iter().any(|row| row.len() != c) {
                return Err(err(line_no, "ragged matrix"));
            }
            maps[slot] = Some(Matrix::from_fn(r, c, |i, j| rows[i][j].clone()));
        } else {
            return Err(err(line_no, "expected `dims:` or `map`"));
        }
    }
    let dims = dims.ok_or_else(|| err(0, "missing `dims:` line"))?;
    let maps = q
        .arrows()
        .iter()
        .zip(maps)
        .map(|(&(s, t), m)| {
            m.map(|m| if m.shape() == (0, 0) { Matrix::zeros(dims[t], dims[s]) } else { m })
                .unwrap_or_else(|| Matrix::zeros(dims[t], dims[s]))
        })
        .collect();
    Module::new(alg, dims, maps)
}

pub fn module_to_text(alg: &BoundAlgebra, m: &Module) -> String {
    let q = alg.quiver();
    let mut s = String::from("dims:");
    for (v, d) in m.dims().iter().enumerate() {
        let _ = write!(s, " {}={}", q.name(v), d);
    }
    s.push('\n');
    for (a, &(src, tgt)) in q.arrows().iter().enumerate() {
        let mat = &m.maps()[a];
        let _ = write!(s, "map {}->{}: [", q.name(src), q.name(tgt));
        for i in 0..mat.rows() {
            if i > 0 {
                s.push(',');
            }
            s.push('[');
            for j in 0..mat.cols() {
                if j > 0 {
                    s.push(',');
                }
                let _ = write!(s, "{}", mat.get(i, j));
            }
            s.push(']');
        }
        s.push_str("]\n");
    }
    s
}
