use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{g_vector, GrothendieckError};
use crate::linalg::{q, Matrix, Rational};
use crate::linrep::{
    self, compose, decompose, gen_membership, hom, isomorphic_indecomposables, trace, BoundAlgebra, Module, Morphism,
};

/// Support τ-tilting pair `(M, P)`: indecomposable summands of `M` and the vertices of `P`.
#[derive(Debug, Clone)]
pub struct StPair {
    pub modules: Vec<Module>,
    pub projectives: Vec<usize>,
    pub g_vectors: Vec<Vec<i64>>,
}

impl StPair {
    fn key(&self) -> Vec<Vec<i64>> {
        let mut k = self.g_vectors.clone();
        k.sort();
        k
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FanReport {
    /// Maximal cones, each as its sorted list of rays.
    pub rays: Vec<Vec<Vec<i64>>>,
    /// Enumeration closed and every facet lies on exactly two maximal cones.
    pub complete: bool,
    pub closed: bool,
    pub facet_pairing: bool,
    pub budget: usize,
    /// Integer direction outside every found cone, when the fan is not complete.
    pub exterior_witness: Option<Vec<i64>>,
}

fn unit_pair(alg: &BoundAlgebra) -> StPair {
    let n = alg.len();
    let modules: Vec<Module> = (0..n).map(|v| alg.projective(v)).collect();
    let g_vectors = (0..n).map(|v| (0..n).map(|k| i64::from(k == v)).collect()).collect();
    StPair { modules, projectives: Vec::new(), g_vectors }
}

fn flatten(f: &Morphism) -> Vec<Rational> {
    f.iter().flat_map(|m| (0..m.rows()).flat_map(move |i| m.row(i).to_vec())).collect()
}

/// Minimal left `add(U)`-approximation of `x`, as the map into `⊕ U_j^{m_j}`.
fn left_approximation(
    alg: &BoundAlgebra,
    x: &Module,
    us: &[&Module],
) -> Result<(Module, Morphism), GrothendieckError> {
    let homs: Vec<Vec<Morphism>> = us.iter().map(|u| hom(alg, x, u).map(|h| h.basis)).collect::<Result<_, _>>()?;
    let mut targets: Vec<&Module> = Vec::new();
    let mut comps: Vec<Morphism> = Vec::new();
    for (j, uj) in us.iter().enumerate() {
        if homs[j].is_empty() {
            continue;
        }
        // maps X -> U_j that factor through a radical map U_k -> U_j
        let mut rad_images: Vec<Vec<Rational>> = Vec::new();
        for (k, uk) in us.iter().enumerate() {
            let between = hom(alg, uk, uj)?.basis;
            let radical: Vec<Morphism> = if k == j {
                let id_trace = trace(&uj.identity());
                between
                    .iter()
                    .map(|g| {
                        let t = trace(g) / &id_trace;
                        g.iter().zip(uj.identity()).map(|(a, e)| a - &e.scale(&t)).collect()
                    })
                    .collect()
            } else {
                between
            };
            for g in &radical {
                for h in &homs[k] {
                    rad_images.push(flatten(&compose(h, g)));
                }
            }
        }
        let len = flatten(&homs[j][0]).len();
        let mut span = Matrix::from_columns(len, &rad_images);
        for f in &homs[j] {
            let v = flatten(f);
            let grown = span.hstack(&Matrix::from_columns(len, &[v]));
            if grown.rank() > span.rank() {
                span = grown;
                targets.push(uj);
                comps.push(f.clone());
            }
        }
    }
    let target = Module::sum_over(alg, &targets);
    let map: Morphism = (0..alg.len())
        .map(|v| {
            let mut m = Matrix::zeros(0, x.dims()[v]);
            for f in &comps {
                m = m.vstack(&f[v]);
            }
            m
        })
        .collect();
    Ok((target, map))
}

/// Left mutations of a support τ-tilting pair at each summand `X` of `M` with
/// `X ∉ Fac(M/X)`.
fn left_mutations(alg: &BoundAlgebra, pair: &StPair) -> Result<Vec<StPair>, GrothendieckError> {
    let mut out = Vec::new();
    for k in 0..pair.modules.len() {
        let x = &pair.modules[k];
        let us: Vec<&Module> = pair.modules.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, m)| m).collect();
        let u_sum = Module::sum_over(alg, &us);
        if !us.is_empty() && gen_membership(alg, &u_sum, x)? {
            continue;
        }
        let (target, map) = left_approximation(alg, x, &us)?;
        let (y, _) = Module::cokernel(&target, alg, &map);
        let mut modules: Vec<Module> = us.iter().map(|&m| m.clone()).collect();
        let mut g_vectors: Vec<Vec<i64>> =
            pair.g_vectors.iter().take(pair.modules.len()).enumerate().filter(|&(j, _)| j != k).map(|(_, g)| g.clone()).collect();
        let mut projectives = pair.projectives.clone();
        if y.is_zero() {
            let v = (0..alg.len())
                .find(|&v| !projectives.contains(&v) && us.iter().all(|u| u.dims()[v] == 0))
                .expect("almost complete pair has one free vertex");
            projectives.push(v);
        } else {
            let mut fresh = None;
            for part in decompose(alg, &y)? {
                let mut known = false;
                for u in &us {
                    if isomorphic_indecomposables(alg, u, &part)? {
                        known = true;
                        break;
                    }
                }
                if !known {
                    fresh = Some(part);
                    break;
                }
            }
            let part = fresh.expect("mutation produces a new summand");
            g_vectors.push(g_vector(alg, &part, &vec![0; alg.len()]));
            modules.push(part);
        }
        let mut all_g = g_vectors;
        for &v in &projectives {
            all_g.push((0..alg.len()).map(|i| -i64::from(i == v)).collect());
        }
        out.push(StPair { modules, projectives, g_vectors: all_g });
    }
    Ok(out)
}

/// Maximal cones, each a sorted list of rays.
type Cones = BTreeSet<Vec<Vec<i64>>>;

/// Pairs whose modules exceed this total dimension are not mutated further.
const MAX_PAIR_DIM: usize = 64;

/// Breadth-first left mutation from `(Λ, 0)`; returns cones and whether it closed.
fn explore(alg: &BoundAlgebra, budget: usize) -> Result<(Cones, bool), GrothendieckError> {
    let start = unit_pair(alg);
    let mut seen = BTreeSet::new();
    seen.insert(start.key());
    let mut queue = VecDeque::from([start]);
    let mut closed = true;
    while let Some(pair) = queue.pop_front() {
        if pair.modules.iter().map(Module::total_dim).sum::<usize>() > MAX_PAIR_DIM {
            closed = false;
            continue;
        }
        for next in left_mutations(alg, &pair)? {
            if seen.contains(&next.key()) {
                continue;
            }
            if seen.len() >= budget {
                return Ok((seen, false));
            }
            seen.insert(next.key());
            queue.push_back(next);
        }
    }
    Ok((seen, closed))
}

/// Whether `x` lies in the closed simplicial cone spanned by `rays`.
pub fn in_cone(rays: &[Vec<i64>], x: &[i64]) -> bool {
    let cols: Vec<Vec<Rational>> = rays.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect();
    let m = Matrix::from_columns(x.len(), &cols);
    let target: Vec<Rational> = x.iter().map(|&v| q(v)).collect();
    m.solve(&target).is_some_and(|c| c.iter().all(|v| !v.is_negative()))
}

fn facet_pairing(cones: &Cones) -> bool {
    let mut count: BTreeMap<Vec<Vec<i64>>, usize> = BTreeMap::new();
    for cone in cones {
        for skip in 0..cone.len() {
            let facet: Vec<Vec<i64>> = cone.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, r)| r.clone()).collect();
            *count.entry(facet).or_default() += 1;
        }
    }
    count.values().all(|&c| c == 2)
}

/// Integer vectors in the box `[-bound, bound]^n` by increasing 1-norm.
fn box_vectors(n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v| (-bound..=bound).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out.retain(|v| v.iter().any(|&x| x != 0));
    out.sort_by_key(|v| (v.iter().map(|x| x.abs()).sum::<i64>(), v.clone()));
    out
}

/// g-vector fan by left mutation from `(Λ, 0)`, and from `(Λ^op, 0)` with negated rays
/// when the first search does not close within `budget` cones.
pub fn g_fan(alg: &BoundAlgebra, budget: usize, witness_box: i64) -> Result<FanReport, GrothendieckError> {
    let (mut cones, closed) = explore(alg, budget)?;
    if !closed {
        let (lower, _) = explore(&alg.opposite(), budget)?;
        for cone in lower {
            let mut neg: Vec<Vec<i64>> = cone.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
            neg.sort();
            cones.insert(neg);
        }
    }
    let pairing = facet_pairing(&cones);
    let complete = closed && pairing;
    let exterior_witness = if complete {
        None
    } else {
        box_vectors(alg.len(), witness_box).into_iter().find(|x| !cones.iter().any(|c| in_cone(c, x)))
    };
    Ok(FanReport { rays: cones.into_iter().collect(), complete, closed, facet_pairing: pairing, budget, exterior_witness })
}

/// Maximal cones by exhaustion over τ-rigid pairs built from a given list of
/// indecomposable modules; an oracle for small representation-finite algebras.
pub fn g_fan_brute_force(alg: &BoundAlgebra, indecomposables: &[Module]) -> Result<Vec<Vec<Vec<i64>>>, GrothendieckError> {
    let n = alg.len();
    let taus: Vec<Module> = indecomposables.iter().map(|m| linrep::tau(alg, m)).collect();
    let mut cones = BTreeSet::new();
    let items = indecomposables.len() + n;
    // choose n items: modules by index, then projective vertices
    let mut chosen: Vec<usize> = Vec::new();
    fn rec(
        start: usize,
        items: usize,
        n: usize,
        chosen: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]) -> Result<(), GrothendieckError>,
    ) -> Result<(), GrothendieckError> {
        if chosen.len() == n {
            return f(chosen);
        }
        for i in start..items {
            chosen.push(i);
            rec(i + 1, items, n, chosen, f)?;
            chosen.pop();
        }
        Ok(())
    }
    let mods = indecomposables.len();
    rec(0, items, n, &mut chosen, &mut |set: &[usize]| {
        let ms: Vec<usize> = set.iter().copied().filter(|&i| i < mods).collect();
        let ps: Vec<usize> = set.iter().copied().filter(|&i| i >= mods).map(|i| i - mods).collect();
        for &a in &ms {
            for &b in &ms {
                if !linrep::hom_dim(alg, &indecomposables[a], &taus[b])?.is_zero() {
                    return Ok(());
                }
            }
            for &v in &ps {
                if indecomposables[a].dims()[v] != 0 {
                    return Ok(());
                }
            }
        }
        let mut rays: Vec<Vec<i64>> = ms.iter().map(|&a| g_vector(alg, &indecomposables[a], &vec![0; n])).collect();
        rays.extend(ps.iter().map(|&v| (0..n).map(|i| -i64::from(i == v)).collect::<Vec<_>>()));
        rays.sort();
        cones.insert(rays);
        Ok(())
    })?;
    Ok(cones.into_iter().collect())
}
