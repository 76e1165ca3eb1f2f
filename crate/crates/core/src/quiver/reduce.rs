use serde::Serialize;

use super::{classify_graph, component_types, graph_type, Category, GraphType, Quiver, QuiverError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Structure {
    /// Vertices joined to exactly one other vertex by a single edge.
    pub tips: Vec<String>,
    pub twice_edge_connected: bool,
    pub is_tree: bool,
}

fn tips(q: &Quiver) -> Vec<usize> {
    let m = q.multiplicities();
    (0..q.len())
        .filter(|&v| {
            let nb: Vec<u32> = m[v].iter().copied().filter(|&c| c > 0).collect();
            nb.len() == 1 && nb[0] == 1
        })
        .collect()
}

fn is_tree(q: &Quiver) -> bool {
    q.is_connected() && q.arrows().len() + 1 == q.len()
}

/// No single edge is a bridge. Parallel edges are never bridges.
fn twice_edge_connected(q: &Quiver) -> bool {
    if !q.is_connected() {
        return false;
    }
    let m = q.multiplicities();
    let n = q.len();
    for a in 0..n {
        for b in a + 1..n {
            if m[a][b] != 1 {
                continue;
            }
            // remove the single edge a-b and test connectivity
            let mut seen = vec![false; n];
            let mut stack = vec![a];
            seen[a] = true;
            while let Some(v) = stack.pop() {
                for w in 0..n {
                    let c = if (v, w) == (a, b) || (v, w) == (b, a) { m[v][w] - 1 } else { m[v][w] };
                    if c > 0 && !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            if !seen[b] {
                return false;
            }
        }
    }
    true
}

pub fn structure(q: &Quiver) -> Structure {
    Structure {
        tips: tips(q).into_iter().map(|v| q.name(v).to_string()).collect(),
        twice_edge_connected: twice_edge_connected(q),
        is_tree: is_tree(q),
    }
}

/// Wild, and every vertex deletion leaves only Dynkin or Euclidean components.
pub fn is_hyperbolic(q: &Quiver) -> Result<bool, QuiverError> {
    if !q.is_connected() {
        return Err(QuiverError::NotConnected);
    }
    if classify_graph(q)? != Category::Wild {
        return Ok(false);
    }
    for v in 0..q.len() {
        if component_types(&q.delete_vertex(v))?.iter().any(GraphType::is_wild) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn connected_wild(q: &Quiver) -> Result<bool, QuiverError> {
    Ok(!q.is_empty() && q.is_connected() && graph_type(q)?.is_wild())
}

/// Vertex deletions keeping every intermediate quiver connected and wild and ending
/// at a hyperbolic quiver. Ties go to the lexicographically smallest vertex name.
pub fn reduce_to_hyperbolic(q: &Quiver) -> Result<Vec<String>, QuiverError> {
    if !q.is_connected() {
        return Err(QuiverError::NotConnected);
    }
    if !graph_type(q)?.is_wild() {
        return Err(QuiverError::NotWild);
    }
    let mut cur = q.clone();
    let mut steps = Vec::new();
    while !is_hyperbolic(&cur)? {
        let v = choose_deletion(&cur)?;
        steps.push(cur.name(v).to_string());
        cur = cur.delete_vertex(v);
    }
    Ok(steps)
}

fn by_name(q: &Quiver, mut vs: Vec<usize>) -> Vec<usize> {
    vs.sort_by(|&a, &b| q.name(a).cmp(q.name(b)));
    vs
}

fn choose_deletion(q: &Quiver) -> Result<usize, QuiverError> {
    let n = q.len();
    let valid = |v: usize| connected_wild(&q.delete_vertex(v));
    let tip_list = by_name(q, tips(q));
    if is_tree(q) || !twice_edge_connected(q) {
        for &t in &tip_list {
            if valid(t)? {
                return Ok(t);
            }
        }
        if !is_tree(q) {
            if let Some(v) = far_cycle_vertex(q)? {
                return Ok(v);
            }
        }
    }
    // twice edge-connected, or fallback: any vertex keeping the rest connected and wild
    for v in by_name(q, (0..n).collect()) {
        if valid(v)? {
            return Ok(v);
        }
    }
    Err(QuiverError::BadReduction { step: 0, msg: "no admissible vertex deletion".into() })
}

/// Cycle-with-tail case: delete a cycle vertex as far as possible from the branch
/// vertex.
fn far_cycle_vertex(q: &Quiver) -> Result<Option<usize>, QuiverError> {
    let n = q.len();
    let m = q.multiplicities();
    let deg: Vec<u32> = (0..n).map(|v| m[v].iter().sum()).collect();
    let Some(hub) = (0..n).find(|&v| deg[v] >= 3) else { return Ok(None) };
    let mut dist = vec![usize::MAX; n];
    dist[hub] = 0;
    let mut queue = std::collections::VecDeque::from([hub]);
    while let Some(v) = queue.pop_front() {
        for w in 0..n {
            if m[v][w] > 0 && dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    let mut cands: Vec<usize> = (0..n).filter(|&v| deg[v] == 2).collect();
    cands.sort_by(|&a, &b| dist[b].cmp(&dist[a]).then(q.name(a).cmp(q.name(b))));
    for v in cands {
        if connected_wild(&q.delete_vertex(v))? {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

/// Check a deletion sequence: every step connected and wild, the end hyperbolic.
pub fn replay_reduction(q: &Quiver, steps: &[String]) -> Result<(), QuiverError> {
    let mut cur = q.clone();
    for (k, name) in steps.iter().enumerate() {
        let v = cur.index_of(name).ok_or_else(|| QuiverError::UnknownVertex(name.clone()))?;
        cur = cur.delete_vertex(v);
        if !connected_wild(&cur)? {
            return Err(QuiverError::BadReduction { step: k, msg: format!("not connected and wild after deleting {name}") });
        }
    }
    if !is_hyperbolic(&cur)? {
        return Err(QuiverError::BadReduction { step: steps.len(), msg: "end quiver is not hyperbolic".into() });
    }
    Ok(())
}

/// Strictly positive with negative Tits value.
pub fn negative_cone_contains(q: &Quiver, x: &[i64]) -> bool {
    x.len() == q.len() && x.iter().all(|&c| c > 0) && q.tits(x) < 0
}

/// First vector of `{1..=bound}^n` in lexicographic order lying in the negative cone.
pub fn negative_cone_witness(q: &Quiver, bound: i64) -> Option<Vec<i64>> {
    let n = q.len();
    if n == 0 || bound < 1 {
        return None;
    }
    let mut x = vec![1i64; n];
    loop {
        if q.tits(&x) < 0 {
            return Some(x);
        }
        let mut k = n;
        loop {
            if k == 0 {
                return None;
            }
            k -= 1;
            if x[k] < bound {
                x[k] += 1;
                for y in x.iter_mut().skip(k + 1) {
                    *y = 1;
                }
                break;
            }
        }
    }
}
