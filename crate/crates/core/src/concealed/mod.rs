//! Endomorphism algebras of tilting modules and concealedness certificates.
//!
//! For summands `T_1..T_n` the endomorphism algebra is presented on vertices `0..n` so
//! that `add T ≅ proj`: paths from `i` to `k` correspond to maps `T_k -> T_i`, and an
//! irreducible map `T_i -> T_j` becomes an arrow `j -> i`. Representations of this
//! presentation are `Hom(T, M)` with arrows acting by precomposition.

mod certify;
mod reduction;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{Matrix, Rational};
use crate::linrep::{compose, hom, is_indecomposable, trace, BoundAlgebra, LinrepError, Module, Morphism, Path, Relation};
use crate::quiver::{Quiver, QuiverError};

pub use certify::{
    certify_concealed, orientations, quasi_tilted_obstruction, type_quiver, ConcealedSearch, ConcealednessCertificate, IsoLayer,
};
pub use reduction::{bongartz_completion, brenner_butler_check, tau_tilting_reduction, BrennerButlerReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConcealedError {
    #[error("summand {0} is decomposable")]
    DecomposableSummand(usize),
    #[error("pair is not τ-rigid")]
    NotTauRigid,
    #[error("module is not tilting")]
    NotTilting,
    #[error("endomorphism algebra has an oriented cycle in its quiver")]
    CyclicQuiver,
    #[error("presentation does not reproduce Hom dimensions at ({0}, {1})")]
    PresentationMismatch(usize, usize),
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Linrep(#[from] LinrepError),
}

impl From<QuiverError> for ConcealedError {
    fn from(e: QuiverError) -> Self {
        match e {
            QuiverError::CycleDetected(_) => ConcealedError::CyclicQuiver,
            other => ConcealedError::Unsupported(other.to_string()),
        }
    }
}

/// `End(⊕ T_i)` modulo the maps factoring through a fixed module, with its quiver and
/// relations.
#[derive(Debug, Clone)]
pub struct EndAlgebraPresentation {
    pub summands: Vec<Module>,
    /// `hom_bases[i][j]` is a basis of `Hom(T_i, T_j)`.
    pub hom_bases: Vec<Vec<Vec<Morphism>>>,
    /// `cartan[i][j] = dim Hom(T_i, T_j)` in the quotient.
    pub cartan: Vec<Vec<i64>>,
    /// Map `T_t -> T_s` chosen for each arrow `s -> t`.
    pub arrow_maps: Vec<Morphism>,
    algebra: BoundAlgebra,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EndSummary {
    pub cartan: Vec<Vec<i64>>,
    pub arrows: Vec<(usize, usize)>,
    pub relations: usize,
    pub dimension: i64,
}

impl EndAlgebraPresentation {
    pub fn algebra(&self) -> &BoundAlgebra {
        &self.algebra
    }

    pub fn quiver(&self) -> &Quiver {
        self.algebra.quiver()
    }

    pub fn summary(&self) -> EndSummary {
        EndSummary {
            cartan: self.cartan.clone(),
            arrows: self.quiver().arrows().to_vec(),
            relations: self.algebra.relations().len(),
            dimension: self.cartan.iter().flatten().sum(),
        }
    }
}

pub(crate) fn flatten(f: &Morphism) -> Vec<Rational> {
    f.iter().flat_map(|m| (0..m.rows()).flat_map(move |i| m.row(i).to_vec())).collect()
}

fn rank_of(len: usize, vecs: &[Vec<Rational>]) -> usize {
    if vecs.is_empty() || len == 0 {
        0
    } else {
        Matrix::from_columns(len, vecs).rank()
    }
}

fn flat_len(x: &Module, y: &Module) -> usize {
    x.dims().iter().zip(y.dims()).map(|(a, b)| a * b).sum()
}

fn radical_part(basis: &[Morphism], module: &Module, diagonal: bool) -> Vec<Morphism> {
    if !diagonal {
        return basis.to_vec();
    }
    let id = module.identity();
    let id_trace = trace(&id);
    basis
        .iter()
        .map(|g| {
            let t = trace(g) / &id_trace;
            g.iter().zip(&id).map(|(a, e)| a - &e.scale(&t)).collect()
        })
        .filter(|g: &Morphism| !flatten(g).iter().all(Zero::is_zero))
        .collect()
}

fn paths_between(q: &Quiver, from: usize, to: usize) -> Vec<Path> {
    let mut out = Vec::new();
    let mut stack: Vec<(usize, Path)> = vec![(from, Vec::new())];
    while let Some((v, p)) = stack.pop() {
        if v == to {
            out.push(p.clone());
        }
        for (a, &(s, t)) in q.arrows().iter().enumerate() {
            if s == v {
                let mut p2 = p.clone();
                p2.push(a);
                stack.push((t, p2));
            }
        }
    }
    out.sort();
    out
}

/// `End(⊕ summands)`.
pub fn end_algebra(alg: &BoundAlgebra, summands: &[Module]) -> Result<EndAlgebraPresentation, ConcealedError> {
    end_algebra_modulo(alg, summands, &[])
}

/// `End(⊕ summands)` modulo the ideal of maps factoring through `add(killed)`.
pub fn end_algebra_modulo(
    alg: &BoundAlgebra,
    summands: &[Module],
    killed: &[Module],
) -> Result<EndAlgebraPresentation, ConcealedError> {
    for (i, t) in summands.iter().enumerate() {
        if !is_indecomposable(alg, t)? {
            return Err(ConcealedError::DecomposableSummand(i));
        }
    }
    let n = summands.len();
    let mut hom_bases = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            hom_bases[i][j] = hom(alg, &summands[i], &summands[j])?.basis;
        }
    }
    // ideal[i][j]: maps T_i -> K -> T_j
    let mut ideal: Vec<Vec<Vec<Vec<Rational>>>> = vec![vec![Vec::new(); n]; n];
    for k in killed {
        let into: Vec<Vec<Morphism>> = summands.iter().map(|t| hom(alg, t, k).map(|h| h.basis)).collect::<Result<_, _>>()?;
        let out: Vec<Vec<Morphism>> = summands.iter().map(|t| hom(alg, k, t).map(|h| h.basis)).collect::<Result<_, _>>()?;
        for i in 0..n {
            for j in 0..n {
                for f in &into[i] {
                    for g in &out[j] {
                        ideal[i][j].push(flatten(&compose(f, g)));
                    }
                }
            }
        }
    }
    let len = |i: usize, j: usize| flat_len(&summands[i], &summands[j]);
    let quotient_dim = |i: usize, j: usize| {
        let mut all = ideal[i][j].clone();
        all.extend(hom_bases[i][j].iter().map(flatten));
        rank_of(len(i, j), &all) - rank_of(len(i, j), &ideal[i][j])
    };
    let cartan: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| quotient_dim(i, j) as i64).collect()).collect();
    let rad: Vec<Vec<Vec<Morphism>>> =
        (0..n).map(|i| (0..n).map(|j| radical_part(&hom_bases[i][j], &summands[i], i == j)).collect()).collect();
    let mut arrows: Vec<(usize, usize)> = Vec::new();
    let mut arrow_maps: Vec<Morphism> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if cartan[i][j] == 0 {
                continue;
            }
            let mut span = ideal[i][j].clone();
            for k in 0..n {
                for f in &rad[i][k] {
                    for g in &rad[k][j] {
                        span.push(flatten(&compose(f, g)));
                    }
                }
            }
            let mut r = rank_of(len(i, j), &span);
            for f in &rad[i][j] {
                span.push(flatten(f));
                let r2 = rank_of(len(i, j), &span);
                if r2 > r {
                    r = r2;
                    arrows.push((j, i));
                    arrow_maps.push(f.clone());
                } else {
                    span.pop();
                }
            }
        }
    }
    let names: Vec<String> = (0..n).map(|i| format!("t{i}")).collect();
    let quiver = Quiver::from_indices(names, arrows)?;
    let image = |p: &Path, target: usize| -> Morphism {
        // path i -> .. -> k acts as f_{a1} ∘ .. ∘ f_{am}: T_k -> T_i
        let mut acc = summands[target].identity();
        for &a in p.iter().rev() {
            acc = compose(&acc, &arrow_maps[a]);
        }
        acc
    };
    let mut relations = Vec::new();
    for i in 0..n {
        for k in 0..n {
            let paths = paths_between(&quiver, i, k);
            if paths.is_empty() {
                continue;
            }
            let l = len(k, i);
            let one = || Rational::from_integer(1.into());
            if l == 0 {
                relations.extend(paths.iter().map(|p| Relation { source: i, target: k, terms: vec![(one(), p.clone())] }));
                continue;
            }
            let mut cols: Vec<Vec<Rational>> = paths.iter().map(|p| flatten(&image(p, k))).collect();
            cols.extend(ideal[k][i].iter().cloned());
            for v in Matrix::from_columns(l, &cols).nullspace().columns() {
                let terms: Vec<(Rational, Path)> = paths
                    .iter()
                    .enumerate()
                    .filter(|(c, _)| !v[*c].is_zero())
                    .map(|(c, p)| (v[c].clone(), p.clone()))
                    .collect();
                if !terms.is_empty() {
                    relations.push(Relation { source: i, target: k, terms });
                }
            }
        }
    }
    let algebra = BoundAlgebra::with_relations(&quiver, relations)?;
    for i in 0..n {
        for k in 0..n {
            if algebra.pair_dim(i, k) as i64 != cartan[k][i] {
                return Err(ConcealedError::PresentationMismatch(i, k));
            }
        }
    }
    Ok(EndAlgebraPresentation { summands: summands.to_vec(), hom_bases, cartan, arrow_maps, algebra })
}

/// `Hom(T, M)` as a representation of the endomorphism algebra presentation.
pub fn hom_functor(alg: &BoundAlgebra, end: &EndAlgebraPresentation, m: &Module) -> Result<Module, ConcealedError> {
    let bases: Vec<Vec<Morphism>> =
        end.summands.iter().map(|t| hom(alg, t, m).map(|h| h.basis)).collect::<Result<_, _>>()?;
    let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
    let maps = end
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, &(s, t))| {
            if dims[s] == 0 || dims[t] == 0 {
                return Matrix::zeros(dims[t], dims[s]);
            }
            let l = flat_len(&end.summands[t], m);
            let target = Matrix::from_columns(l, &bases[t].iter().map(flatten).collect::<Vec<_>>());
            let images: Vec<Vec<Rational>> = bases[s].iter().map(|h| flatten(&compose(&end.arrow_maps[a], h))).collect();
            target.solve_matrix(&Matrix::from_columns(l, &images)).expect("precomposition stays in Hom(T_t, M)")
        })
        .collect();
    Ok(Module::new(end.algebra(), dims, maps)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linrep::{decompose, hom_dim};

    fn path_alg(src: &str) -> BoundAlgebra {
        BoundAlgebra::path_algebra(&Quiver::parse(src).unwrap())
    }

    #[test]
    fn projectives_give_the_algebra_back() {
        let alg = path_alg("1 -> 2\n2 -> 3\n1 -> 3");
        let ps: Vec<Module> = (0..3).map(|v| alg.projective(v)).collect();
        let end = end_algebra(&alg, &ps).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(end.cartan[i][j], alg.pair_dim(j, i) as i64);
            }
        }
        // irreducible maps between projectives are the arrows, reversed twice
        let mut arrows = end.quiver().arrows().to_vec();
        arrows.sort();
        assert_eq!(arrows, vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn a2_apr_tilt_is_hereditary_a2() {
        let alg = path_alg("1 -> 2");
        let t = [alg.projective(0), alg.simple(0)];
        let end = end_algebra(&alg, &t).unwrap();
        assert_eq!(end.quiver().arrows().len(), 1);
        assert!(end.algebra().relations().is_empty());
        assert_eq!(end.summary().dimension, 3);
    }

    #[test]
    fn commutative_square_keeps_its_relation() {
        let p = crate::poset::Poset::parse("0 < a < 1\n0 < b < 1").unwrap();
        let alg = BoundAlgebra::incidence(&p);
        let ps: Vec<Module> = (0..4).map(|v| alg.projective(v)).collect();
        let end = end_algebra(&alg, &ps).unwrap();
        assert_eq!(end.quiver().arrows().len(), 4);
        assert_eq!(end.algebra().dim(), alg.dim());
    }

    #[test]
    fn hom_functor_is_fully_faithful_on_projectives() {
        let alg = path_alg("1 -> 2\n1 -> 2");
        let t = [alg.projective(0), alg.projective(1)];
        let end = end_algebra(&alg, &t).unwrap();
        let m = alg.injective(0);
        let hm = hom_functor(&alg, &end, &m).unwrap();
        assert_eq!(hm.dims(), m.dims());
        let x = alg.injective(1);
        let hx = hom_functor(&alg, &end, &x).unwrap();
        assert_eq!(hom_dim(&alg, &x, &m).unwrap(), hom_dim(end.algebra(), &hx, &hm).unwrap());
        assert_eq!(decompose(end.algebra(), &hm).unwrap().len(), 1);
    }

    #[test]
    fn decomposable_summand_is_rejected() {
        let alg = path_alg("1 -> 2");
        let s = Module::direct_sum(&[&alg.simple(0), &alg.simple(1)]);
        assert_eq!(end_algebra(&alg, &[s]).unwrap_err(), ConcealedError::DecomposableSummand(0));
    }
}
