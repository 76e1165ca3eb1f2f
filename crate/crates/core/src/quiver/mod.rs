//! Finite acyclic quivers, their Tits forms and the wild/hyperbolic machinery.

mod classify;
mod reduce;

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use thiserror::Error;

pub use classify::{classify_graph, component_types, graph_type, inertia, Category, GraphType, Inertia, Letter};
pub use reduce::{
    is_hyperbolic, negative_cone_contains, negative_cone_witness, reduce_to_hyperbolic, replay_reduction,
    structure, Structure,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("quiver has an oriented cycle through `{0}`")]
    CycleDetected(String),
    #[error("quiver is not connected")]
    NotConnected,
    #[error("quiver is not wild")]
    NotWild,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("invalid vertex name `{0}`")]
    InvalidName(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("pattern type {pattern} disagrees with Tits form verdict {form:?}")]
    Inconsistent { pattern: String, form: Category },
    #[error("reduction replay failed at step {step}: {msg}")]
    BadReduction { step: usize, msg: String },
}

/// Acyclic multidigraph. Parallel arrows are repeated entries of `arrows`.
#[derive(Clone, PartialEq, Eq)]
pub struct Quiver {
    names: Vec<String>,
    arrows: Vec<(usize, usize)>,
}

impl Quiver {
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S)]) -> Result<Self, QuiverError> {
        let mut names: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut intern = |s: &str, names: &mut Vec<String>| -> Result<usize, QuiverError> {
            if !crate::poset::valid_name(s) {
                return Err(QuiverError::InvalidName(s.to_string()));
            }
            Ok(*index.entry(s.to_string()).or_insert_with(|| {
                names.push(s.to_string());
                names.len() - 1
            }))
        };
        for v in vertices {
            intern(v.as_ref(), &mut names)?;
        }
        let mut arr = Vec::new();
        for (a, b) in arrows {
            let i = intern(a.as_ref(), &mut names)?;
            let j = intern(b.as_ref(), &mut names)?;
            arr.push((i, j));
        }
        Self::from_indices(names, arr)
    }

    pub fn from_indices(names: Vec<String>, arrows: Vec<(usize, usize)>) -> Result<Self, QuiverError> {
        let q = Quiver { names, arrows };
        if let Some(v) = q.find_cycle_vertex() {
            return Err(QuiverError::CycleDetected(q.names[v].clone()));
        }
        Ok(q)
    }

    fn find_cycle_vertex(&self) -> Option<usize> {
        let n = self.len();
        let mut indeg = vec![0usize; n];
        for &(_, t) in &self.arrows {
            indeg[t] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &(s, t) in &self.arrows {
                if s == v {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        stack.push(t);
                    }
                }
            }
        }
        if seen == n {
            None
        } else {
            (0..n).find(|&v| indeg[v] > 0)
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    /// Symmetric edge multiplicities of the underlying graph.
    pub fn multiplicities(&self) -> Vec<Vec<u32>> {
        let n = self.len();
        let mut m = vec![vec![0u32; n]; n];
        for &(s, t) in &self.arrows {
            m[s][t] += 1;
            m[t][s] += 1;
        }
        m
    }

    /// Number of arrows `i -> j`.
    pub fn arrow_count(&self, i: usize, j: usize) -> usize {
        self.arrows.iter().filter(|&&a| a == (i, j)).count()
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.0 == v).map(|(k, a)| (k, a.1))
    }

    pub fn arrows_into(&self, v: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.1 == v).map(|(k, a)| (k, a.0))
    }

    /// Vertices so that every arrow goes from earlier to later.
    pub fn topological_order(&self) -> Vec<usize> {
        let n = self.len();
        let mut indeg = vec![0usize; n];
        for &(_, t) in &self.arrows {
            indeg[t] += 1;
        }
        let mut out = Vec::with_capacity(n);
        let mut done = vec![false; n];
        while out.len() < n {
            let v = (0..n).find(|&v| !done[v] && indeg[v] == 0).expect("acyclic");
            done[v] = true;
            out.push(v);
            for &(s, t) in &self.arrows {
                if s == v {
                    indeg[t] -= 1;
                }
            }
        }
        out
    }

    /// Components of the underlying graph restricted to `keep`, each sorted.
    pub fn components_within(&self, keep: &[bool]) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut comp = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if !keep[start] || comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut k = 0;
            while k < members.len() {
                let v = members[k];
                k += 1;
                for &(s, t) in &self.arrows {
                    let w = if s == v {
                        t
                    } else if t == v {
                        s
                    } else {
                        continue;
                    };
                    if keep[w] && comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_within(&vec![true; self.len()])
    }

    pub fn is_connected(&self) -> bool {
        self.len() <= 1 || self.components().len() == 1
    }

    /// Full subquiver on `vertices` (kept in the given order).
    pub fn induced(&self, vertices: &[usize]) -> Quiver {
        let mut pos = vec![usize::MAX; self.len()];
        for (k, &v) in vertices.iter().enumerate() {
            pos[v] = k;
        }
        let names = vertices.iter().map(|&v| self.names[v].clone()).collect();
        let arrows = self
            .arrows
            .iter()
            .filter(|(s, t)| pos[*s] != usize::MAX && pos[*t] != usize::MAX)
            .map(|&(s, t)| (pos[s], pos[t]))
            .collect();
        Quiver { names, arrows }
    }

    pub fn delete_vertex(&self, v: usize) -> Quiver {
        let keep: Vec<usize> = (0..self.len()).filter(|&w| w != v).collect();
        self.induced(&keep)
    }

    pub fn opposite(&self) -> Quiver {
        Quiver { names: self.names.clone(), arrows: self.arrows.iter().map(|&(s, t)| (t, s)).collect() }
    }

    /// Evaluate the Tits form.
    pub fn tits<T>(&self, x: &[T]) -> T
    where
        T: Clone + num_traits::Zero + std::ops::Mul<Output = T> + std::ops::Sub<Output = T>,
    {
        let mut acc = T::zero();
        for xi in x {
            acc = acc + xi.clone() * xi.clone();
        }
        for &(s, t) in &self.arrows {
            acc = acc - x[s].clone() * x[t].clone();
        }
        acc
    }

    /// `2I - (A + A^T)`, the symmetric matrix with `x^T G x = 2 q(x)`.
    pub fn gram(&self) -> Vec<Vec<i64>> {
        let n = self.len();
        let m = self.multiplicities();
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { 2 } else { -(m[i][j] as i64) }).collect())
            .collect()
    }

    pub fn parse(src: &str) -> Result<Quiver, QuiverError> {
        let t = parse_text(src)?;
        if !t.free.is_empty() {
            return Err(QuiverError::Parse { line: 0, msg: "`--` edges are only allowed in frame files".into() });
        }
        Quiver::new(&t.vertices, &t.arrows)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for &(a, b) in &self.arrows {
            let _ = writeln!(s, "{} -> {}", self.names[a], self.names[b]);
        }
        for v in 0..self.len() {
            if !self.arrows.iter().any(|&(a, b)| a == v || b == v) {
                let _ = writeln!(s, "{}", self.names[v]);
            }
        }
        s
    }
}

impl fmt::Debug for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quiver[")?;
        for (k, &(a, b)) in self.arrows.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}->{}", self.names[a], self.names[b])?;
        }
        write!(f, "]")
    }
}

/// Parsed `.quiver` text; `free` collects `a -- b` edges of frame files.
#[derive(Debug, Clone, Default)]
pub struct QuiverText {
    pub vertices: Vec<String>,
    pub arrows: Vec<(String, String)>,
    pub free: Vec<(String, String)>,
}

pub fn parse_text(src: &str) -> Result<QuiverText, QuiverError> {
    let mut out = QuiverText::default();
    for (k, raw) in src.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| QuiverError::Parse { line: k + 1, msg };
        let (parts, list): (Vec<&str>, _) = if line.contains("->") {
            (line.split("->").map(str::trim).collect(), &mut out.arrows)
        } else if line.contains("--") {
            (line.split("--").map(str::trim).collect(), &mut out.free)
        } else {
            if line.split_whitespace().count() != 1 || !crate::poset::valid_name(line) {
                return Err(err("expected `a -> b` or a single vertex".into()));
            }
            out.vertices.push(line.to_string());
            continue;
        };
        for w in parts.windows(2) {
            for s in w {
                if !crate::poset::valid_name(s) {
                    return Err(err(format!("invalid vertex name `{s}`")));
                }
            }
            list.push((w[0].to_string(), w[1].to_string()));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_kronecker() {
        let q = Quiver::parse("1 -> 2\n1 -> 2 # second arrow\n").unwrap();
        assert_eq!(q.arrows().len(), 2);
        assert_eq!(q.tits(&[1i64, 1]), 0);
        assert_eq!(Quiver::parse(&q.to_text()).unwrap(), q);
    }

    #[test]
    fn cycles_rejected() {
        assert!(matches!(Quiver::parse("a -> b\nb -> a"), Err(QuiverError::CycleDetected(_))));
    }
}
