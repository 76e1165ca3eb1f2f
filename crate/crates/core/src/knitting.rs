//! Postprojective components of hereditary path algebras.
//!
//! Node `(v, r)` stands for `τ^{-r} P(v)`. Dimension vectors come from mesh additivity,
//! and Hom/Ext between nodes use the shift invariance of Hom inside the component:
//! `hom((v, r), (w, s)) = dim(τ^{-(s-r)} P(w))_v` for `s >= r`, zero otherwise, and
//! `Ext¹(X, Y) = D Hom(Y, τX)`.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::linrep::{self, hom_dim, BoundAlgebra, LinrepError, Module};
use crate::quiver::Quiver;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KnitError {
    #[error("node ({vertex}, {shift}) lies outside the knitted window")]
    NodeOutOfWindow { vertex: String, shift: usize },
    #[error("quiver is not connected")]
    NotConnected,
    #[error("dimension vectors overflow at shift {0}")]
    Overflow(usize),
    #[error(transparent)]
    Linrep(#[from] LinrepError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NodeId {
    pub vertex: usize,
    pub shift: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Node {
    pub id: NodeId,
    pub dims: Vec<i64>,
}

/// Almost split sequence `start -> ⊕ middle -> end`, by node index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mesh {
    pub start: usize,
    pub middle: Vec<usize>,
    pub end: usize,
}

#[derive(Debug, Clone)]
pub struct KnittedComponent {
    quiver: Quiver,
    nodes: Vec<Node>,
    index: HashMap<NodeId, usize>,
    meshes: Vec<Mesh>,
    window: usize,
    /// Every τ-orbit ended inside the window: the quiver is representation-finite.
    exhausted: bool,
}

fn positive(v: &[i64]) -> bool {
    v.iter().all(|&x| x >= 0) && v.iter().any(|&x| x > 0)
}

/// Knit `τ^{-r} P(v)` for `r <= window`. Orbits stop at the first injective.
pub fn knit(q: &Quiver, window: usize) -> Result<KnittedComponent, KnitError> {
    if !q.is_connected() {
        return Err(KnitError::NotConnected);
    }
    let n = q.len();
    let mut nodes: Vec<Node> = Vec::new();
    let mut index: HashMap<NodeId, usize> = HashMap::new();
    let mut meshes = Vec::new();
    // sinks first, so that successors at the same shift are ready
    let mut order = q.topological_order();
    order.reverse();
    for &v in &order {
        let mut dims = vec![0i64; n];
        dims[v] = 1;
        for t in path_targets(q, v) {
            dims[t] += 1;
        }
        let id = NodeId { vertex: v, shift: 0 };
        index.insert(id.clone(), nodes.len());
        nodes.push(Node { id, dims });
    }
    let mut exhausted = false;
    for r in 0..window {
        let mut grew = false;
        for &v in &order {
            let Some(&start) = index.get(&NodeId { vertex: v, shift: r }) else { continue };
            let mut middle = Vec::new();
            for &(u, t) in q.arrows() {
                if t == v {
                    if let Some(&m) = index.get(&NodeId { vertex: u, shift: r }) {
                        middle.push(m);
                    }
                }
            }
            for &(s, w) in q.arrows() {
                if s == v {
                    if let Some(&m) = index.get(&NodeId { vertex: w, shift: r + 1 }) {
                        middle.push(m);
                    }
                }
            }
            let mut dims = vec![0i64; n];
            for &m in &middle {
                for (d, x) in dims.iter_mut().zip(&nodes[m].dims) {
                    *d = d.checked_add(*x).ok_or(KnitError::Overflow(r + 1))?;
                }
            }
            for (d, x) in dims.iter_mut().zip(&nodes[start].dims) {
                *d -= x;
            }
            if !positive(&dims) {
                continue;
            }
            grew = true;
            let id = NodeId { vertex: v, shift: r + 1 };
            let end = nodes.len();
            index.insert(id.clone(), end);
            nodes.push(Node { id, dims });
            meshes.push(Mesh { start, middle, end });
        }
        if !grew {
            exhausted = true;
            break;
        }
    }
    Ok(KnittedComponent { quiver: q.clone(), nodes, index, meshes, window, exhausted })
}

/// Targets of all paths of positive length starting at `v`, one entry per path.
fn path_targets(q: &Quiver, v: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut stack = vec![v];
    while let Some(x) = stack.pop() {
        for &(s, t) in q.arrows() {
            if s == x {
                out.push(t);
                stack.push(t);
            }
        }
    }
    out
}

impl KnittedComponent {
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn meshes(&self) -> &[Mesh] {
        &self.meshes
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn exhausted(&self) -> bool {
        self.exhausted
    }

    pub fn node(&self, vertex: usize, shift: usize) -> Result<usize, KnitError> {
        self.index.get(&NodeId { vertex, shift }).copied().ok_or_else(|| KnitError::NodeOutOfWindow {
            vertex: self.quiver.name(vertex).to_string(),
            shift,
        })
    }

    pub fn dims(&self, node: usize) -> &[i64] {
        &self.nodes[node].dims
    }

    /// `dim Hom(X, Y)` between knitted nodes.
    pub fn hom(&self, x: usize, y: usize) -> i64 {
        let (a, b) = (&self.nodes[x].id, &self.nodes[y].id);
        if b.shift < a.shift {
            return 0;
        }
        // τ^{-(s-r)} P(w) exists because τ^{-s} P(w) does
        self.index.get(&NodeId { vertex: b.vertex, shift: b.shift - a.shift }).map_or(0, |&k| self.nodes[k].dims[a.vertex])
    }

    /// `dim Ext¹(X, Y) = dim Hom(Y, τX)`.
    pub fn ext(&self, x: usize, y: usize) -> i64 {
        let a = &self.nodes[x].id;
        if a.shift == 0 {
            return 0;
        }
        match self.index.get(&NodeId { vertex: a.vertex, shift: a.shift - 1 }) {
            Some(&tx) => self.hom(y, tx),
            None => 0,
        }
    }

    pub fn rigid_pair(&self, x: usize, y: usize) -> bool {
        self.ext(x, y) == 0 && self.ext(y, x) == 0
    }

    /// Nodes by increasing shift, then vertex order.
    pub fn sorted_nodes(&self) -> Vec<usize> {
        let mut ix: Vec<usize> = (0..self.nodes.len()).collect();
        ix.sort_by_key(|&i| self.nodes[i].id.clone());
        ix.sort_by_key(|&i| self.nodes[i].id.shift);
        ix
    }

    pub fn label(&self, node: usize) -> String {
        let id = &self.nodes[node].id;
        match id.shift {
            0 => format!("P({})", self.quiver.name(id.vertex)),
            1 => format!("τ⁻P({})", self.quiver.name(id.vertex)),
            r => format!("τ^-{}P({})", r, self.quiver.name(id.vertex)),
        }
    }

    /// Explicit module of one node, `τ⁻` iterated on its projective.
    pub fn explicit_module(&self, alg: &BoundAlgebra, node: usize) -> Module {
        let id = &self.nodes[node].id;
        (0..id.shift).fold(alg.projective(id.vertex), |m, _| linrep::tau_inverse(alg, &m))
    }

    /// Explicit modules for every node, built by iterating `τ⁻` on the projectives.
    pub fn explicit_modules(&self, alg: &BoundAlgebra) -> Vec<Module> {
        let mut out: Vec<Option<Module>> = vec![None; self.nodes.len()];
        for (k, node) in self.nodes.iter().enumerate() {
            if node.id.shift == 0 {
                out[k] = Some(alg.projective(node.id.vertex));
            }
        }
        for mesh in &self.meshes {
            let prev = out[mesh.start].clone().expect("mesh start built first");
            out[mesh.end] = Some(linrep::tau_inverse(alg, &prev));
        }
        out.into_iter().map(|m| m.expect("every node is reached")).collect()
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph component {\n  rankdir=LR;\n");
        for (k, node) in self.nodes.iter().enumerate() {
            let dims: Vec<String> = node.dims.iter().map(i64::to_string).collect();
            s.push_str(&format!("  n{} [label=\"{}\\n({})\"];\n", k, self.label(k), dims.join(",")));
        }
        for mesh in &self.meshes {
            for &m in &mesh.middle {
                s.push_str(&format!("  n{} -> n{};\n", mesh.start, m));
                s.push_str(&format!("  n{} -> n{};\n", m, mesh.end));
            }
            s.push_str(&format!("  n{} -> n{} [style=dashed, dir=back];\n", mesh.start, mesh.end));
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ProfileSource {
    /// Shift-invariance formula on knitted dimension vectors.
    Knitted,
    /// Hom spaces between explicitly constructed modules.
    Explicit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomProfile {
    pub source: usize,
    pub values: Vec<i64>,
    pub computed_by: ProfileSource,
}

impl HomProfile {
    pub fn at(&self, node: usize) -> i64 {
        self.values[node]
    }
}

/// `dim Hom(source, -)` on every knitted node.
pub fn hom_profile(c: &KnittedComponent, source: usize) -> HomProfile {
    HomProfile { source, values: (0..c.nodes.len()).map(|y| c.hom(source, y)).collect(), computed_by: ProfileSource::Knitted }
}

/// Ground-truth profile from explicit modules; `modules` as from `explicit_modules`.
pub fn hom_profile_explicit(
    c: &KnittedComponent,
    alg: &BoundAlgebra,
    modules: &[Module],
    source: usize,
) -> Result<HomProfile, KnitError> {
    let values = (0..c.nodes.len())
        .map(|y| hom_dim(alg, &modules[source], &modules[y]).map(|d| d as i64))
        .collect::<Result<_, _>>()?;
    Ok(HomProfile { source, values, computed_by: ProfileSource::Explicit })
}

/// Basic postprojective tilting modules inside the window, as sorted node sets.
pub fn enumerate_postprojective_tilting(q: &Quiver, window: usize) -> Result<Vec<Vec<usize>>, KnitError> {
    let c = knit(q, window)?;
    Ok(tilting_sets(&c))
}

/// Pairwise rigid node sets of size `|Q_0|`; over a hereditary algebra these are exactly
/// the basic tilting modules with summands among the nodes.
pub fn tilting_sets(c: &KnittedComponent) -> Vec<Vec<usize>> {
    let n = c.quiver.len();
    let order = c.sorted_nodes();
    let m = order.len();
    let compat: Vec<Vec<bool>> =
        (0..m).map(|i| (0..m).map(|j| i == j || c.rigid_pair(order[i], order[j])).collect()).collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn go(
        start: usize,
        n: usize,
        compat: &[Vec<bool>],
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        order: &[usize],
    ) {
        if chosen.len() == n {
            let mut set: Vec<usize> = chosen.iter().map(|&i| order[i]).collect();
            set.sort_unstable();
            out.push(set);
            return;
        }
        for i in start..compat.len() {
            if compat.len() - i < n - chosen.len() {
                break;
            }
            if chosen.iter().all(|&j| compat[i][j]) {
                chosen.push(i);
                go(i + 1, n, compat, chosen, out, order);
                chosen.pop();
            }
        }
    }
    go(0, n, &compat, &mut chosen, &mut out, &order);
    out
}

/// Quiver of type `Ã̃_{p,q}` normalised as in the ladder computations: a cycle with a
/// source `s`, `p` arrows along the upper arc and `q` along the lower arc into `b`, and
/// the tip arrow `b -> a`. Returns the quiver with the indices of `a` and `b`.
pub fn a_tilde_tilde(p: usize, q: usize) -> (Quiver, usize, usize) {
    assert!(p >= 1 && q >= 1 && p + q >= 3, "Ã̃_{{p,q}} needs p, q >= 1 and p + q >= 3");
    let mut arrows: Vec<(String, String)> = Vec::new();
    for (arc, len) in [("t", p), ("u", q)] {
        let mut prev = "s".to_string();
        for k in (1..len).rev() {
            let cur = format!("{arc}{k}");
            arrows.push((prev, cur.clone()));
            prev = cur;
        }
        arrows.push((prev, "b".to_string()));
    }
    arrows.push(("b".into(), "a".into()));
    let quiver = Quiver::new::<String>(&[], &arrows).expect("acyclic by construction");
    let a = quiver.index_of("a").unwrap();
    let b = quiver.index_of("b").unwrap();
    (quiver, a, b)
}

/// The four ladder values `dim Hom(P(a), -)` at `τ⁻a, τ⁻²a, τ⁻³a, τ⁻²b`.
pub fn tip_ladder(c: &KnittedComponent, profile: &HomProfile, a: usize, b: usize) -> Result<[i64; 4], KnitError> {
    Ok([
        profile.at(c.node(a, 1)?),
        profile.at(c.node(a, 2)?),
        profile.at(c.node(a, 3)?),
        profile.at(c.node(b, 2)?),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quiver(src: &str) -> Quiver {
        Quiver::parse(src).unwrap()
    }

    #[test]
    fn a2_has_three_indecomposables() {
        let c = knit(&quiver("1 -> 2"), 10).unwrap();
        assert_eq!(c.nodes().len(), 3);
        assert!(c.exhausted());
    }

    #[test]
    fn dynkin_counts_match_positive_roots() {
        assert_eq!(knit(&quiver("1 -> 2 -> 3"), 10).unwrap().nodes().len(), 6);
        assert_eq!(knit(&quiver("c -> x\nc -> y\nz -> c"), 10).unwrap().nodes().len(), 12);
    }

    #[test]
    fn kronecker_preprojectives() {
        let c = knit(&quiver("1 -> 2\n1 -> 2"), 3).unwrap();
        let dims: Vec<Vec<i64>> = c.sorted_nodes().iter().map(|&k| c.dims(k).to_vec()).collect();
        assert_eq!(dims[..4], [vec![1, 2], vec![0, 1], vec![3, 4], vec![2, 3]]);
        assert!(!c.exhausted());
    }

    #[test]
    fn knitted_matches_explicit_on_small_window() {
        let q = quiver("1 -> 2\n1 -> 2\n3 -> 2");
        let c = knit(&q, 2).unwrap();
        let alg = BoundAlgebra::path_algebra(&q);
        let mods = c.explicit_modules(&alg);
        for (k, m) in mods.iter().enumerate() {
            assert_eq!(m.dims().iter().map(|&d| d as i64).collect::<Vec<_>>(), c.dims(k));
        }
        for s in 0..c.nodes().len() {
            assert_eq!(hom_profile(&c, s).values, hom_profile_explicit(&c, &alg, &mods, s).unwrap().values);
        }
    }

    #[test]
    fn kronecker_tilting_modules_are_adjacent_pairs() {
        for w in 1..5 {
            let sets = enumerate_postprojective_tilting(&quiver("1 -> 2\n1 -> 2"), w).unwrap();
            assert_eq!(sets.len(), 2 * w + 1);
        }
    }

    #[test]
    fn a_tilde_tilde_shape() {
        let (q, a, b) = a_tilde_tilde(1, 3);
        assert_eq!(q.len(), 5);
        assert_eq!(q.arrows().iter().filter(|&&(s, t)| s == b && t == a).count(), 1);
    }
}

#[cfg(test)]
mod ladder_tests {
    use super::*;

    fn ladder(p: usize, q: usize) -> [i64; 4] {
        let (quiver, a, b) = a_tilde_tilde(p, q);
        let c = knit(&quiver, 4).unwrap();
        let prof = hom_profile(&c, c.node(a, 0).unwrap());
        tip_ladder(&c, &prof, a, b).unwrap()
    }

    #[test]
    fn ladders_by_short_arc_length() {
        for (p, q) in [(3, 3), (3, 4), (4, 4)] {
            assert_eq!(ladder(p, q), [0, 1, 1, 2], "p={p} q={q}");
        }
        // the ladder shape needs the long arc to have its own vertex next to the source
        for q in 3..6 {
            assert_eq!(ladder(2, q), [0, 1, 2, 3], "p=2 q={q}");
        }
        for q in 3..7 {
            assert_eq!(ladder(1, q), [0, 2, 3, 5], "p=1 q={q}");
        }
    }

    #[test]
    fn tip_orbit_rigid_only_at_distance_two() {
        let (quiver, a, _) = a_tilde_tilde(2, 3);
        let c = knit(&quiver, 8).unwrap();
        for base in 0..3 {
            let m = c.node(a, base).unwrap();
            for r in 1..=5 {
                let x = c.node(a, base + r).unwrap();
                assert_eq!(c.rigid_pair(x, m), r == 2, "base {base} r {r}");
            }
        }
    }
}
