use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Quiver, QuiverError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    A,
    D,
    E,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Category {
    Dynkin,
    Euclidean,
    Wild,
}

/// Type of a connected quiver. The Kronecker quiver is `Euclidean(A, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphType {
    Dynkin(Letter, usize),
    Euclidean(Letter, usize),
    Wild,
}

impl GraphType {
    pub fn category(&self) -> Category {
        match self {
            GraphType::Dynkin(..) => Category::Dynkin,
            GraphType::Euclidean(..) => Category::Euclidean,
            GraphType::Wild => Category::Wild,
        }
    }

    pub fn is_wild(&self) -> bool {
        matches!(self, GraphType::Wild)
    }
}

impl fmt::Display for GraphType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphType::Dynkin(l, n) => write!(f, "{l:?}{n}"),
            GraphType::Euclidean(l, n) => write!(f, "{l:?}~{n}"),
            GraphType::Wild => write!(f, "wild"),
        }
    }
}

/// Signs of the eigenvalues of a symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub zero: usize,
    pub negative: usize,
}

/// Exact inertia by fraction-free symmetric elimination with diagonal pivots.
///
/// After `k` Bareiss steps every entry is a `(k+1)`-minor, so `i128` is ample for the
/// small Gram matrices used here.
pub fn inertia(g: &[Vec<i64>]) -> Inertia {
    let n = g.len();
    let mut m: Vec<Vec<i128>> = g.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut prev: i128 = 1;
    let mut pos = 0;
    let mut neg = 0;
    let mut k = 0;
    while k < n {
        let pivot = (k..n).find(|&i| m[i][i] != 0);
        let Some(p) = pivot else {
            // all remaining diagonal entries vanish
            if (k..n).any(|i| (k..n).any(|j| m[i][j] != 0)) {
                // a 2x2 block [[0,b],[b,0]] contributes one positive and one negative
                // eigenvalue; we only need to know an indefinite direction exists
                let rest = n - k;
                return Inertia { positive: pos + 1, zero: rest.saturating_sub(2), negative: neg + 1 };
            }
            return Inertia { positive: pos, zero: n - k, negative: neg };
        };
        m.swap(k, p);
        for row in m.iter_mut() {
            row.swap(k, p);
        }
        let d = m[k][k];
        if (d > 0) == (prev > 0) {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (d * m[i][j] - m[i][k] * m[k][j]) / prev;
            }
        }
        for i in k + 1..n {
            m[i][k] = 0;
            m[k][i] = 0;
        }
        prev = d;
        k += 1;
    }
    Inertia { positive: pos, zero: 0, negative: neg }
}

fn form_category(g: &[Vec<i64>]) -> Category {
    let s = inertia(g);
    if s.negative > 0 {
        Category::Wild
    } else if s.zero == 0 {
        Category::Dynkin
    } else if s.zero == 1 {
        Category::Euclidean
    } else {
        Category::Wild
    }
}

/// Pattern recognition on the underlying multigraph of a connected quiver.
fn pattern_type(q: &Quiver) -> GraphType {
    let n = q.len();
    let m = q.multiplicities();
    if n == 1 {
        return GraphType::Dynkin(Letter::A, 1);
    }
    let max_mult = m.iter().flatten().copied().max().unwrap_or(0);
    if max_mult >= 3 {
        return GraphType::Wild;
    }
    if max_mult == 2 {
        return if n == 2 { GraphType::Euclidean(Letter::A, 1) } else { GraphType::Wild };
    }
    let edges = q.arrows().len();
    let deg: Vec<usize> = (0..n).map(|v| m[v].iter().map(|&c| c as usize).sum()).collect();
    if edges == n {
        return if deg.iter().all(|&d| d == 2) { GraphType::Euclidean(Letter::A, n - 1) } else { GraphType::Wild };
    }
    if edges != n - 1 {
        return GraphType::Wild;
    }
    let branch: Vec<usize> = (0..n).filter(|&v| deg[v] >= 3).collect();
    let m = &m;
    let deg = &deg;
    let neighbours = move |v: usize| (0..n).filter(move |&w| m[v][w] > 0);
    // walk from `from` into `start` until a leaf or branch vertex; count vertices
    let arm = move |from: usize, start: usize| -> (usize, bool) {
        let (mut prev, mut cur, mut len) = (from, start, 1);
        loop {
            if deg[cur] >= 3 {
                return (len, false);
            }
            if deg[cur] == 1 {
                return (len, true);
            }
            let next = neighbours(cur).find(|&w| w != prev).unwrap();
            prev = cur;
            cur = next;
            len += 1;
        }
    };
    match branch.as_slice() {
        [] => GraphType::Dynkin(Letter::A, n),
        [c] if deg[*c] == 3 => {
            let mut arms: Vec<usize> = neighbours(*c).map(|w| arm(*c, w).0).collect();
            arms.sort_unstable();
            match (arms[0], arms[1], arms[2]) {
                (1, 1, _) => GraphType::Dynkin(Letter::D, n),
                (1, 2, 2) => GraphType::Dynkin(Letter::E, 6),
                (1, 2, 3) => GraphType::Dynkin(Letter::E, 7),
                (1, 2, 4) => GraphType::Dynkin(Letter::E, 8),
                (2, 2, 2) => GraphType::Euclidean(Letter::E, 6),
                (1, 3, 3) => GraphType::Euclidean(Letter::E, 7),
                (1, 2, 5) => GraphType::Euclidean(Letter::E, 8),
                _ => GraphType::Wild,
            }
        }
        [c] if deg[*c] == 4 && n == 5 => GraphType::Euclidean(Letter::D, 4),
        [a, b] if deg[*a] == 3 && deg[*b] == 3 => {
            let leaves = move |c: usize| neighbours(c).filter(|&w| arm(c, w) == (1, true)).count();
            if leaves(*a) == 2 && leaves(*b) == 2 {
                GraphType::Euclidean(Letter::D, n - 1)
            } else {
                GraphType::Wild
            }
        }
        _ => GraphType::Wild,
    }
}

/// Type of a connected quiver, checked against the Tits form.
pub fn graph_type(q: &Quiver) -> Result<GraphType, QuiverError> {
    if !q.is_connected() {
        return Err(QuiverError::NotConnected);
    }
    let pattern = pattern_type(q);
    let form = form_category(&q.gram());
    if pattern.category() != form {
        return Err(QuiverError::Inconsistent { pattern: pattern.to_string(), form });
    }
    Ok(pattern)
}

/// Types of all components, in component order.
pub fn component_types(q: &Quiver) -> Result<Vec<GraphType>, QuiverError> {
    q.components().into_iter().map(|c| graph_type(&q.induced(&c))).collect()
}

/// Overall verdict: wild if any component is wild, else Euclidean if any is.
pub fn classify_graph(q: &Quiver) -> Result<Category, QuiverError> {
    let types = component_types(q)?;
    Ok(if types.iter().any(GraphType::is_wild) {
        Category::Wild
    } else if types.iter().any(|t| t.category() == Category::Euclidean) {
        Category::Euclidean
    } else {
        Category::Dynkin
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(src: &str) -> Quiver {
        Quiver::parse(src).unwrap()
    }

    #[test]
    fn named_types() {
        assert_eq!(graph_type(&q("1 -> 2\n1 -> 2")).unwrap(), GraphType::Euclidean(Letter::A, 1));
        assert_eq!(graph_type(&q("1 -> 2\n1 -> 2\n1 -> 2")).unwrap(), GraphType::Wild);
        assert_eq!(graph_type(&q("a -> c\nb -> c\nd -> c\ne -> c")).unwrap(), GraphType::Euclidean(Letter::D, 4));
        assert_eq!(graph_type(&q("a -> b -> c -> d")).unwrap(), GraphType::Dynkin(Letter::A, 4));
        assert_eq!(graph_type(&q("a -> b\nb -> c\na -> c")).unwrap(), GraphType::Euclidean(Letter::A, 2));
        // T(2,3,6)
        let e8t = "c -> x1\nc -> y1\ny1 -> y2\nc -> z1\nz1 -> z2\nz2 -> z3\nz3 -> z4\nz4 -> z5";
        assert_eq!(graph_type(&q(e8t)).unwrap(), GraphType::Euclidean(Letter::E, 8));
    }

    #[test]
    fn inertia_of_small_forms() {
        assert_eq!(inertia(&[vec![2, -2], vec![-2, 2]]), Inertia { positive: 1, zero: 1, negative: 0 });
        assert_eq!(inertia(&[vec![2, -3], vec![-3, 2]]).negative, 1);
        assert_eq!(inertia(&[vec![0, 1], vec![1, 0]]).negative, 1);
    }
}
