use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{end_algebra, flatten, paths_between, ConcealedError, EndAlgebraPresentation};
use crate::knitting::{knit, KnittedComponent};
use crate::linalg::{q, Matrix, Rational};
use crate::linrep::{injective_dimension, projective_dimension, tau_inverse, BoundAlgebra, Module};
use crate::quiver::{GraphType, Letter, Quiver};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IsoLayer {
    /// Dimension, Cartan matrix and quiver agree under the matching.
    CartanAndQuiver,
    /// The relations also agree after rescaling arrows.
    FullIsomorphism,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConcealednessCertificate {
    pub type_name: String,
    /// The oriented quiver the tilting module lives over.
    pub type_quiver: String,
    /// Knitted node `(vertex name, shift)` matched to each vertex of the algebra, in order.
    pub tilting_nodes: Vec<(String, usize)>,
    pub iso_layer: IsoLayer,
    pub window: usize,
}

/// Result of a concealedness search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConcealedSearch {
    pub certificate: Option<ConcealednessCertificate>,
    /// Dimension vector of a module with projective and injective dimension at least two.
    pub obstruction: Option<Vec<i64>>,
    pub orientations_searched: usize,
    pub cartan_matches: usize,
    pub window: usize,
}

/// One orientation of a quiver of the given type.
pub fn type_quiver(t: GraphType) -> Option<Quiver> {
    let chain = |names: &[String]| -> Vec<(String, String)> {
        names.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect()
    };
    let arm = |prefix: &str, len: usize| -> Vec<String> { (1..=len).map(|k| format!("{prefix}{k}")).collect() };
    // star with centre c and arms of the given lengths
    let star = |lens: &[usize]| -> Quiver {
        let mut arrows = Vec::new();
        for (i, &l) in lens.iter().enumerate() {
            let names = [vec!["c".to_string()], arm(&format!("{}", (b'a' + i as u8) as char), l)].concat();
            arrows.extend(chain(&names));
        }
        Quiver::new::<String>(&["c".to_string()], &arrows).expect("trees are acyclic")
    };
    Some(match t {
        GraphType::Dynkin(Letter::A, n) if n >= 1 => {
            if n == 1 {
                Quiver::new(&["v1"], &[]).ok()?
            } else {
                let names = arm("v", n);
                Quiver::new::<String>(&[], &chain(&names)).ok()?
            }
        }
        GraphType::Dynkin(Letter::D, n) if n >= 4 => star(&[1, 1, n - 3]),
        GraphType::Dynkin(Letter::E, n) if (6..=8).contains(&n) => star(&[1, 2, n - 4]),
        GraphType::Euclidean(Letter::A, 1) => Quiver::parse("v1 -> v2\nv1 -> v2").ok()?,
        GraphType::Euclidean(Letter::A, n) if n >= 2 => {
            let names = arm("v", n + 1);
            let mut arrows = chain(&names);
            arrows.push((names[0].clone(), names[n].clone()));
            Quiver::new::<String>(&[], &arrows).ok()?
        }
        GraphType::Euclidean(Letter::D, 4) => star(&[1, 1, 1, 1]),
        GraphType::Euclidean(Letter::D, n) if n >= 5 => {
            let spine = arm("v", n - 3);
            let mut arrows = chain(&spine);
            arrows.push(("a".into(), spine[0].clone()));
            arrows.push(("b".into(), spine[0].clone()));
            arrows.push((spine[n - 4].clone(), "x".into()));
            arrows.push((spine[n - 4].clone(), "y".into()));
            Quiver::new::<String>(&[], &arrows).ok()?
        }
        GraphType::Euclidean(Letter::E, 6) => star(&[2, 2, 2]),
        GraphType::Euclidean(Letter::E, 7) => star(&[1, 3, 3]),
        GraphType::Euclidean(Letter::E, 8) => star(&[1, 2, 5]),
        _ => return None,
    })
}

/// Acyclic orientations of the underlying graph of `quiver`, at most `cap`, starting
/// with `quiver` itself. Parallel arrows keep a common direction.
pub fn orientations(quiver: &Quiver, cap: usize) -> Vec<Quiver> {
    let mut edges: Vec<(usize, usize)> = quiver.arrows().iter().map(|&(s, t)| (s.min(t), s.max(t))).collect();
    edges.sort_unstable();
    edges.dedup();
    let base: BTreeSet<(usize, usize)> = quiver.arrows().iter().copied().collect();
    let k = edges.len().min(20);
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for mask in 0..(1u64 << k) {
        if out.len() >= cap {
            break;
        }
        let flip: Vec<bool> = edges
            .iter()
            .enumerate()
            .map(|(b, e)| {
                let forward = base.contains(e);
                (mask >> b & 1 == 1) == forward
            })
            .collect();
        let arrows: Vec<(usize, usize)> = quiver
            .arrows()
            .iter()
            .map(|&(s, t)| {
                let e = (s.min(t), s.max(t));
                let b = edges.binary_search(&e).expect("edge listed");
                if flip[b] {
                    (e.1, e.0)
                } else {
                    e
                }
            })
            .collect();
        let mut key = arrows.clone();
        key.sort_unstable();
        if !seen.insert(key) {
            continue;
        }
        if let Ok(o) = Quiver::from_indices(quiver.names().to_vec(), arrows) {
            out.push(o);
        }
    }
    // the input orientation first
    if let Some(pos) = out.iter().position(|o| {
        let mut a = o.arrows().to_vec();
        let mut b = quiver.arrows().to_vec();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }) {
        let first = out.remove(pos);
        out.insert(0, first);
    }
    out
}

/// A thin module with `pd >= 2` and `id >= 2`, which rules out quasi-tilted (hence
/// concealed) algebras. Thin modules are built on vertex subsets with every arrow inside
/// the support acting by 1; at most `budget` of them are resolved.
pub fn quasi_tilted_obstruction(alg: &BoundAlgebra, budget: usize) -> Option<Module> {
    let n = alg.len();
    if n > 20 {
        return None;
    }
    let arrows = alg.quiver().arrows();
    let mut masks: Vec<u32> = (1u32..(1 << n)).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let mut tried = 0;
    for mask in masks {
        if tried >= budget {
            break;
        }
        let inside = |v: usize| mask >> v & 1 == 1;
        let support: Vec<usize> = (0..n).filter(|&v| inside(v)).collect();
        let keep: Vec<bool> = (0..n).map(inside).collect();
        if support.len() < 2 || alg.quiver().components_within(&keep).len() != 1 {
            continue;
        }
        let dims: Vec<usize> = (0..n).map(|v| usize::from(inside(v))).collect();
        let maps = arrows
            .iter()
            .map(|&(s, t)| {
                if inside(s) && inside(t) {
                    Matrix::identity(1)
                } else {
                    Matrix::zeros(dims[t], dims[s])
                }
            })
            .collect();
        let Ok(m) = Module::new(alg, dims, maps) else { continue };
        tried += 1;
        if projective_dimension(alg, &m) >= 2 && injective_dimension(alg, &m) >= 2 {
            return Some(m);
        }
    }
    None
}

/// Explicit module of a knitted node, built by iterating `τ⁻` from the projective.
struct NodeModules<'a> {
    alg: BoundAlgebra,
    c: &'a KnittedComponent,
    cache: HashMap<(usize, usize), Module>,
}

impl NodeModules<'_> {
    fn get(&mut self, node: usize) -> Module {
        let id = self.c.nodes()[node].id.clone();
        for r in 0..=id.shift {
            if self.cache.contains_key(&(id.vertex, r)) {
                continue;
            }
            let m = if r == 0 {
                self.alg.projective(id.vertex)
            } else {
                tau_inverse(&self.alg, &self.cache[&(id.vertex, r - 1)])
            };
            self.cache.insert((id.vertex, r), m);
        }
        self.cache[&(id.vertex, id.shift)].clone()
    }
}

const ASSIGNMENT_CAP: usize = 64;

/// Assignments of knitted nodes to the vertices of `a` reproducing its Cartan data:
/// `hom(T_k, T_i) = dim e_k a e_i` read as paths `i -> k`, and pairwise rigidity.
fn cartan_assignments(a: &BoundAlgebra, c: &KnittedComponent, cap: usize) -> Vec<Vec<usize>> {
    let n = a.len();
    let order = a.quiver().topological_order();
    let nodes = c.nodes().len();
    let cands: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..nodes).filter(|&x| c.hom(x, x) == a.pair_dim(i, i) as i64 && c.ext(x, x) == 0).collect())
        .collect();
    let mut out = Vec::new();
    let mut assign: Vec<Option<usize>> = vec![None; n];
    fn go(
        depth: usize,
        order: &[usize],
        a: &BoundAlgebra,
        c: &KnittedComponent,
        cands: &[Vec<usize>],
        assign: &mut Vec<Option<usize>>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) {
        if out.len() >= cap {
            return;
        }
        if depth == order.len() {
            out.push(assign.iter().map(|x| x.expect("complete")).collect());
            return;
        }
        let i = order[depth];
        'cand: for &x in &cands[i] {
            for (j, y) in assign.iter().enumerate() {
                let Some(y) = *y else { continue };
                if y == x
                    || c.hom(x, y) != a.pair_dim(j, i) as i64
                    || c.hom(y, x) != a.pair_dim(i, j) as i64
                    || !c.rigid_pair(x, y)
                {
                    continue 'cand;
                }
            }
            assign[i] = Some(x);
            go(depth + 1, order, a, c, cands, assign, out, cap);
            assign[i] = None;
        }
    }
    go(0, &order, a, c, &cands, &mut assign, &mut out, cap);
    out
}

fn arrow_multiset(q: &Quiver) -> BTreeMap<(usize, usize), usize> {
    let mut m = BTreeMap::new();
    for &e in q.arrows() {
        *m.entry(e).or_default() += 1;
    }
    m
}

/// Whether every nonzero path space of `alg` is one-dimensional and spanned by each path.
fn all_paths_equal_nonzero(alg: &BoundAlgebra) -> bool {
    let n = alg.len();
    (0..n).all(|i| (0..n).all(|k| alg.pair_dim(i, k) <= 1))
}

fn ratio(x: &[Rational], y: &[Rational]) -> Option<Rational> {
    let pivot = y.iter().position(|v| !v.is_zero())?;
    let r = &x[pivot] / &y[pivot];
    x.iter().zip(y).all(|(a, b)| *a == &r * b).then_some(r)
}

fn factor(n: &BigInt, out: &mut BTreeMap<u64, i64>, sign: i64) -> Option<()> {
    let mut m = n.abs().to_u64()?;
    let mut p = 2u64;
    while p * p <= m {
        while m % p == 0 {
            *out.entry(p).or_default() += sign;
            m /= p;
        }
        p += 1;
    }
    if m > 1 {
        *out.entry(m).or_default() += sign;
    }
    Some(())
}

fn solvable_over_f2(rows: &[Vec<i64>], rhs: &[bool]) -> bool {
    let cols = rows.first().map_or(0, Vec::len);
    let mut m: Vec<(Vec<bool>, bool)> =
        rows.iter().zip(rhs).map(|(r, &b)| (r.iter().map(|x| x.rem_euclid(2) == 1).collect(), b)).collect();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| m[r].0[col]) else { continue };
        m.swap(row, p);
        let pivot = m[row].clone();
        for (r, line) in m.iter_mut().enumerate() {
            if r != row && line.0[col] {
                for (a, b) in line.0.iter_mut().zip(&pivot.0) {
                    *a ^= b;
                }
                line.1 ^= pivot.1;
            }
        }
        row += 1;
    }
    m.iter().all(|(r, b)| r.iter().any(|&x| x) || !b)
}

/// For schurian presentations with the same quiver: arrows can be rescaled so that all
/// parallel paths of `end` agree, as they do in `a`.
fn relations_match(end: &EndAlgebraPresentation) -> bool {
    let quiver = end.quiver();
    let n = quiver.len();
    let arrows = quiver.arrows().len();
    let image = |p: &Vec<usize>, k: usize| -> Vec<Rational> {
        let mut acc = end.summands[k].identity();
        for &a in p.iter().rev() {
            acc = crate::linrep::compose(&acc, &end.arrow_maps[a]);
        }
        flatten(&acc)
    };
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut logs: Vec<BTreeMap<u64, i64>> = Vec::new();
    let mut signs: Vec<bool> = Vec::new();
    for i in 0..n {
        for k in 0..n {
            let paths = paths_between(quiver, i, k);
            if paths.len() < 2 {
                continue;
            }
            let base = image(&paths[0], k);
            if base.iter().all(Zero::is_zero) {
                return false;
            }
            for p in &paths[1..] {
                let Some(r) = ratio(&image(p, k), &base) else { return false };
                if r.is_zero() {
                    return false;
                }
                // λ(p) r = λ(p0)
                let mut row = vec![0i64; arrows];
                for &a in p {
                    row[a] += 1;
                }
                for &a in &paths[0] {
                    row[a] -= 1;
                }
                let mut f = BTreeMap::new();
                if factor(r.numer(), &mut f, -1).is_none() || factor(r.denom(), &mut f, 1).is_none() {
                    return false;
                }
                rows.push(row);
                logs.push(f);
                signs.push(r.is_negative());
            }
        }
    }
    if rows.is_empty() {
        return true;
    }
    let primes: BTreeSet<u64> = logs.iter().flat_map(|f| f.keys().copied()).collect();
    let m = Matrix::from_i64(&rows);
    let rank = m.rank();
    for p in primes {
        let rhs: Vec<Vec<Rational>> = vec![logs.iter().map(|f| q(f.get(&p).copied().unwrap_or(0))).collect()];
        if m.hstack(&Matrix::from_columns(rows.len(), &rhs)).rank() != rank {
            return false;
        }
    }
    solvable_over_f2(&rows, &signs)
}

fn layer_for(a: &BoundAlgebra, end: &EndAlgebraPresentation) -> Option<IsoLayer> {
    let n = a.len();
    let cartan_ok = (0..n).all(|i| (0..n).all(|k| end.cartan[k][i] == a.pair_dim(i, k) as i64));
    if !cartan_ok || arrow_multiset(end.quiver()) != arrow_multiset(a.quiver()) {
        return None;
    }
    if all_paths_equal_nonzero(a) && a.relations().iter().all(|r| r.terms.len() == 2) && relations_match(end) {
        Some(IsoLayer::FullIsomorphism)
    } else {
        Some(IsoLayer::CartanAndQuiver)
    }
}

/// Search for a postprojective tilting module over some orientation of a candidate type
/// whose endomorphism algebra matches `a`. Vertex `i` of `a` is matched with the summand
/// `T_i` so that `Hom(T_k, T_i)` has the dimension of the paths `i -> k` in `a`.
pub fn certify_concealed(
    a: &BoundAlgebra,
    candidate_types: &[(String, Quiver)],
    window: usize,
    orientation_cap: usize,
) -> Result<ConcealedSearch, ConcealedError> {
    let mut search =
        ConcealedSearch { certificate: None, obstruction: None, orientations_searched: 0, cartan_matches: 0, window };
    if let Some(m) = quasi_tilted_obstruction(a, 512) {
        search.obstruction = Some(m.dim_vector());
        return Ok(search);
    }
    let total: i64 = (0..a.len()).flat_map(|i| (0..a.len()).map(move |k| (i, k))).map(|(i, k)| a.pair_dim(i, k) as i64).sum();
    for (name, t) in candidate_types {
        if t.len() != a.len() {
            continue;
        }
        for o in orientations(t, orientation_cap) {
            search.orientations_searched += 1;
            let Ok(c) = knit(&o, window) else { continue };
            let assignments = cartan_assignments(a, &c, ASSIGNMENT_CAP);
            search.cartan_matches += assignments.len();
            log::debug!("{name}: orientation {} has {} Cartan matches", search.orientations_searched, assignments.len());
            let mut modules = NodeModules { alg: BoundAlgebra::path_algebra(&o), c: &c, cache: HashMap::new() };
            for assign in assignments {
                let summands: Vec<Module> = assign.iter().map(|&x| modules.get(x)).collect();
                if summands.iter().map(|m| m.total_dim() as i64).sum::<i64>() == 0 {
                    continue;
                }
                let end = end_algebra(&modules.alg, &summands)?;
                if end.summary().dimension != total {
                    continue;
                }
                let Some(layer) = layer_for(a, &end) else { continue };
                let better = search.certificate.as_ref().is_none_or(|c| c.iso_layer < layer);
                if better {
                    search.certificate = Some(ConcealednessCertificate {
                        type_name: name.clone(),
                        type_quiver: o.to_text(),
                        tilting_nodes: assign
                            .iter()
                            .map(|&x| {
                                let id = &c.nodes()[x].id;
                                (o.name(id.vertex).to_string(), id.shift)
                            })
                            .collect(),
                        iso_layer: layer,
                        window,
                    });
                }
                if layer == IsoLayer::FullIsomorphism {
                    return Ok(search);
                }
            }
        }
    }
    Ok(search)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::Poset;

    #[test]
    fn orientation_counts() {
        let a3 = type_quiver(GraphType::Dynkin(Letter::A, 3)).unwrap();
        assert_eq!(orientations(&a3, 100).len(), 4);
        let cyc = type_quiver(GraphType::Euclidean(Letter::A, 3)).unwrap();
        // 16 orientations of a 4-cycle minus the two cyclic ones
        assert_eq!(orientations(&cyc, 100).len(), 14);
        assert_eq!(orientations(&cyc, 5).len(), 5);
        let e7 = type_quiver(GraphType::Euclidean(Letter::E, 7)).unwrap();
        assert_eq!(e7.len(), 8);
    }

    #[test]
    fn hereditary_frame_is_its_own_certificate() {
        let p = Poset::parse("a < x\na < y\nb < x\nb < y").unwrap();
        let alg = BoundAlgebra::incidence(&p);
        let t = type_quiver(GraphType::Euclidean(Letter::A, 3)).unwrap();
        let s = certify_concealed(&alg, &[("A~3".into(), t)], 2, 64).unwrap();
        assert_eq!(s.certificate.expect("certificate").iso_layer, IsoLayer::FullIsomorphism);
    }

    #[test]
    fn commutative_square_is_tilted_of_type_d4() {
        let p = Poset::parse("0 < a < 1\n0 < b < 1").unwrap();
        let alg = BoundAlgebra::incidence(&p);
        assert!(quasi_tilted_obstruction(&alg, 100).is_none());
        let d4 = type_quiver(GraphType::Dynkin(Letter::D, 4)).unwrap();
        let s = certify_concealed(&alg, &[("D4".into(), d4)], 6, 64).unwrap();
        assert_eq!(s.certificate.expect("certificate").iso_layer, IsoLayer::FullIsomorphism);
    }
}

#[cfg(test)]
mod frame_tests {
    use super::*;
    use crate::frames::loupias_frame;

    #[test]
    fn r1_frame_is_concealed_of_type_e7() {
        let frame = loupias_frame("R1").unwrap();
        let alg = BoundAlgebra::incidence(&frame.base_poset());
        let e7 = type_quiver(GraphType::Euclidean(Letter::E, 7)).unwrap();
        let s = certify_concealed(&alg, &[("E~7".into(), e7)], 6, 512).unwrap();
        assert!(s.certificate.is_some());
    }
}
