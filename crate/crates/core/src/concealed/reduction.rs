use serde::Serialize;

use super::{end_algebra, end_algebra_modulo, hom_functor, ConcealedError, EndAlgebraPresentation};
use crate::grothendieck::euler_form;
use crate::linalg::Matrix;
use crate::linrep::{
    compose, decompose, ext1_dim, hom, hom_dim, is_tilting_summands, isomorphic_indecomposables, projective_dimension,
    syzygy, tau, BoundAlgebra, Module, Relation,
};
use crate::quiver::Quiver;

/// `Λ/(e_R)` on the remaining vertices, with the index map from old to new vertices.
fn drop_vertices(alg: &BoundAlgebra, removed: &[usize]) -> Result<(BoundAlgebra, Vec<Option<usize>>), ConcealedError> {
    let q = alg.quiver();
    let mut index = vec![None; q.len()];
    let mut names = Vec::new();
    for v in 0..q.len() {
        if !removed.contains(&v) {
            index[v] = Some(names.len());
            names.push(q.name(v).to_string());
        }
    }
    let mut arrow_index = vec![None; q.arrows().len()];
    let mut arrows = Vec::new();
    for (a, &(s, t)) in q.arrows().iter().enumerate() {
        if let (Some(s), Some(t)) = (index[s], index[t]) {
            arrow_index[a] = Some(arrows.len());
            arrows.push((s, t));
        }
    }
    let relations = alg
        .relations()
        .iter()
        .filter_map(|r| {
            let (source, target) = (index[r.source]?, index[r.target]?);
            let terms: Vec<_> = r
                .terms
                .iter()
                .filter_map(|(c, p)| p.iter().map(|&a| arrow_index[a]).collect::<Option<Vec<_>>>().map(|p| (c.clone(), p)))
                .collect();
            (!terms.is_empty()).then_some(Relation { source, target, terms })
        })
        .collect();
    let quiver = Quiver::from_indices(names, arrows)?;
    Ok((BoundAlgebra::with_relations(&quiver, relations)?, index))
}

fn restrict(alg: &BoundAlgebra, sub: &BoundAlgebra, index: &[Option<usize>], m: &Module) -> Result<Module, ConcealedError> {
    let dims = (0..alg.len()).filter(|&v| index[v].is_some()).map(|v| m.dims()[v]).collect();
    let maps = alg
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .filter(|(_, &(s, t))| index[s].is_some() && index[t].is_some())
        .map(|(a, _)| m.maps()[a].clone())
        .collect();
    Ok(Module::new(sub, dims, maps)?)
}

fn extend(alg: &BoundAlgebra, index: &[Option<usize>], m: &Module) -> Module {
    let dims: Vec<usize> = (0..alg.len()).map(|v| index[v].map_or(0, |w| m.dims()[w])).collect();
    let mut next = 0;
    let maps = alg
        .quiver()
        .arrows()
        .iter()
        .map(|&(s, t)| {
            if index[s].is_some() && index[t].is_some() {
                next += 1;
                m.maps()[next - 1].clone()
            } else {
                Matrix::zeros(dims[t], dims[s])
            }
        })
        .collect();
    Module::new_unchecked(dims, maps)
}

fn push_new(alg: &BoundAlgebra, out: &mut Vec<Module>, m: Module) -> Result<(), ConcealedError> {
    for x in out.iter() {
        if isomorphic_indecomposables(alg, x, &m)? {
            return Ok(());
        }
    }
    out.push(m);
    Ok(())
}

/// Universal extension `0 -> P(v) -> E -> M^d -> 0` with `d = dim Ext¹(M, P(v))`.
fn universal_extension(alg: &BoundAlgebra, m: &Module, v: usize) -> Result<Module, ConcealedError> {
    let x = alg.projective(v);
    let (cover, k, inc) = syzygy(alg, m);
    if k.is_zero() {
        return Ok(x);
    }
    let restricted: Vec<Vec<_>> = hom(alg, &cover.module, &x)?
        .basis
        .iter()
        .map(|h| super::flatten(&compose(&inc, h)))
        .collect();
    let from_k = hom(alg, &k, &x)?.basis;
    let len: usize = k.dims().iter().zip(x.dims()).map(|(a, b)| a * b).sum();
    let mut span = restricted;
    let mut reps = Vec::new();
    for f in &from_k {
        let before = super::rank_of(len, &span);
        span.push(super::flatten(f));
        if super::rank_of(len, &span) > before {
            reps.push(f.clone());
        } else {
            span.pop();
        }
    }
    if reps.is_empty() {
        return Ok(x);
    }
    let d = reps.len();
    let mut parts = vec![&x];
    parts.extend(std::iter::repeat_n(&cover.module, d));
    let target = Module::direct_sum(&parts);
    let map = (0..alg.len())
        .map(|u| {
            let mut top = Matrix::zeros(x.dims()[u], 0);
            for f in &reps {
                top = top.hstack(&f[u]);
            }
            let mut lower = Matrix::zeros(0, 0);
            for _ in 0..d {
                lower = lower.direct_sum(&inc[u].scale(&crate::linalg::q(-1)));
            }
            top.vstack(&lower)
        })
        .collect();
    Ok(Module::cokernel(&target, alg, &map).0)
}

fn check_tau_rigid(alg: &BoundAlgebra, summands: &[Module], removed: &[usize]) -> Result<(), ConcealedError> {
    for a in summands {
        if removed.iter().any(|&v| a.dims()[v] != 0) {
            return Err(ConcealedError::NotTauRigid);
        }
        let ta = tau(alg, a);
        for b in summands {
            if !ta.is_zero() && hom_dim(alg, b, &ta)? != 0 {
                return Err(ConcealedError::NotTauRigid);
            }
        }
    }
    Ok(())
}

/// Bongartz completion of the τ-rigid pair `(⊕ summands, ⊕_{v ∈ removed} P(v))`, as its
/// basic list of indecomposable summands. Built from universal extensions of the
/// projectives, so every summand must have projective dimension at most one.
pub fn bongartz_completion(alg: &BoundAlgebra, summands: &[Module], removed: &[usize]) -> Result<Vec<Module>, ConcealedError> {
    check_tau_rigid(alg, summands, removed)?;
    let (sub, index) = drop_vertices(alg, removed)?;
    let local: Vec<Module> = summands.iter().map(|m| restrict(alg, &sub, &index, m)).collect::<Result<_, _>>()?;
    if local.iter().any(|m| projective_dimension(&sub, m) > 1) {
        return Err(ConcealedError::Unsupported("completion needs projective dimension at most one".into()));
    }
    let mut out: Vec<Module> = Vec::new();
    for m in &local {
        push_new(&sub, &mut out, m.clone())?;
    }
    let m = if local.is_empty() { Module::zero(&sub) } else { Module::direct_sum(&local.iter().collect::<Vec<_>>()) };
    for v in 0..sub.len() {
        let e = if m.is_zero() { sub.projective(v) } else { universal_extension(&sub, &m, v)? };
        for part in decompose(&sub, &e)? {
            push_new(&sub, &mut out, part)?;
        }
    }
    if out.len() != sub.len() {
        return Err(ConcealedError::Unsupported(format!("completion has {} summands for {} vertices", out.len(), sub.len())));
    }
    Ok(out.iter().map(|x| extend(alg, &index, x)).collect())
}

/// `End(M⁺) / [M]` for the τ-rigid pair `(M, P_R)`, presented over the summands of the
/// Bongartz completion that are not in `add M`.
pub fn tau_tilting_reduction(
    alg: &BoundAlgebra,
    summands: &[Module],
    removed: &[usize],
) -> Result<EndAlgebraPresentation, ConcealedError> {
    let completion = bongartz_completion(alg, summands, removed)?;
    let mut rest = Vec::new();
    'outer: for x in completion {
        for m in summands {
            if isomorphic_indecomposables(alg, m, &x)? {
                continue 'outer;
            }
        }
        rest.push(x);
    }
    end_algebra_modulo(alg, &rest, summands)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BrennerButlerReport {
    /// Pairs `X, Y` in `Gen T` where `Hom(X, Y)` and `Hom_B(Hom(T, X), Hom(T, Y))` were compared.
    pub gen_pairs: usize,
    pub gen_ok: bool,
    /// Modules `N` with `Hom(T, N) = 0` whose `Ext¹(T_i, N)` matched `-⟨dim T_i, dim N⟩`.
    pub perp_modules: usize,
    pub perp_ok: bool,
}

impl BrennerButlerReport {
    pub fn passed(&self) -> bool {
        self.gen_ok && self.perp_ok
    }
}

/// Compare Hom spaces across `Hom(T, -)` on the test modules lying in `Gen T`, and the
/// Ext dimensions of the test modules with `Hom(T, N) = 0` against the Euler form.
pub fn brenner_butler_check(
    alg: &BoundAlgebra,
    tilting: &[Module],
    tests: &[Module],
) -> Result<BrennerButlerReport, ConcealedError> {
    if !is_tilting_summands(alg, tilting)?.tilting {
        return Err(ConcealedError::NotTilting);
    }
    let end = end_algebra(alg, tilting)?;
    let mut gen = Vec::new();
    let mut report = BrennerButlerReport { gen_pairs: 0, gen_ok: true, perp_modules: 0, perp_ok: true };
    for x in tests {
        let exts: Vec<usize> = tilting.iter().map(|t| ext1_dim(alg, t, x)).collect::<Result<_, _>>()?;
        let homs: Vec<usize> = tilting.iter().map(|t| hom_dim(alg, t, x)).collect::<Result<_, _>>()?;
        if exts.iter().all(|&e| e == 0) {
            gen.push((x, hom_functor(alg, &end, x)?));
        }
        if homs.iter().all(|&h| h == 0) {
            report.perp_modules += 1;
            for (t, &e) in tilting.iter().zip(&exts) {
                report.perp_ok &= euler_form(alg.quiver(), &t.dim_vector(), &x.dim_vector()) == -(e as i64);
            }
        }
    }
    for (x, hx) in &gen {
        for (y, hy) in &gen {
            report.gen_pairs += 1;
            report.gen_ok &= hom_dim(alg, x, y)? == hom_dim(end.algebra(), hx, hy)?;
        }
    }
    Ok(report)
}
