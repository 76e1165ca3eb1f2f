//! Exact linear algebra for modules over bound quiver algebras.
//!
//! Left modules are covariant representations. `P(i)` is spanned by the paths starting
//! at `i`, so `Hom(P(i), M) = M_i`.

mod algebra;
mod decompose;
mod hom;
mod homological;
mod module;
pub mod text;

use serde::Serialize;
use thiserror::Error;

pub use algebra::{BoundAlgebra, Path, Relation};
pub use decompose::{decompose, is_indecomposable, isomorphic_indecomposables};
pub use hom::{hom, hom_dim, HomSpace};
pub use homological::{
    cover_from_generators, ext1_dim, ext_dim, global_dimension, injective_dimension, injective_resolution,
    presentation, projective_cover, projective_dimension, projective_resolution, syzygy, tau, tau_inverse,
    transpose, Cover, Presentation, Resolution,
};
pub use module::{compose, morphism_is_zero, trace, Module, Morphism};

use crate::linalg::Matrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinrepError {
    #[error("modules belong to different algebras")]
    AlgebraMismatch,
    #[error("bad matrix shape: {0}")]
    Shape(String),
    #[error("a relation does not vanish on the module")]
    RelationViolated,
    #[error("bad relation: {0}")]
    BadRelation(String),
    #[error("module is not indecomposable")]
    NotIndecomposable,
    #[error("could not split module with dimension vector {0}")]
    DecompositionStuck(String),
    #[error("algebra is not hereditary")]
    NotSupportedAlgebra,
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Tau,
    TauMinus,
}

/// `τM` or `τ⁻M` of an indecomposable module; `None` for the zero result.
pub fn ar_translate(alg: &BoundAlgebra, m: &Module, dir: Direction) -> Result<Option<Module>, LinrepError> {
    if !is_indecomposable(alg, m)? {
        return Err(LinrepError::NotIndecomposable);
    }
    let out = match dir {
        Direction::Tau => tau(alg, m),
        Direction::TauMinus => tau_inverse(alg, m),
    };
    Ok((!out.is_zero()).then_some(out))
}

/// Whether `x` lies in `Gen t`: the images of all maps `t -> x` span `x`.
pub fn gen_membership(alg: &BoundAlgebra, t: &Module, x: &Module) -> Result<bool, LinrepError> {
    let h = hom(alg, t, x)?;
    Ok((0..alg.len()).all(|v| {
        if x.dims()[v] == 0 {
            return true;
        }
        let mut acc = Matrix::zeros(x.dims()[v], 0);
        for f in &h.basis {
            acc = acc.hstack(&f[v]);
        }
        acc.rank() == x.dims()[v]
    }))
}

/// Evidence behind a tilting verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TiltingCertificate {
    pub summand_dims: Vec<Vec<usize>>,
    pub projective_dimension: usize,
    pub self_extensions: usize,
    pub distinct_summands: usize,
    pub vertices: usize,
    pub tilting: bool,
}

/// Tilting test from the indecomposable summands: projective dimension at most one, no
/// self-extensions, and as many isoclasses as vertices. For algebras of finite global
/// dimension these three conditions are equivalent to the defining ones.
pub fn is_tilting_summands(alg: &BoundAlgebra, summands: &[Module]) -> Result<TiltingCertificate, LinrepError> {
    let mut distinct: Vec<&Module> = Vec::new();
    for s in summands {
        if !is_indecomposable(alg, s)? {
            return Err(LinrepError::NotIndecomposable);
        }
        let mut seen = false;
        for d in &distinct {
            if isomorphic_indecomposables(alg, d, s)? {
                seen = true;
                break;
            }
        }
        if !seen {
            distinct.push(s);
        }
    }
    let pd = distinct.iter().map(|s| projective_dimension(alg, s)).max().unwrap_or(0);
    let mut ext = 0;
    for a in &distinct {
        for b in &distinct {
            ext += ext1_dim(alg, a, b)?;
        }
    }
    Ok(TiltingCertificate {
        summand_dims: distinct.iter().map(|s| s.dims().to_vec()).collect(),
        projective_dimension: pd,
        self_extensions: ext,
        distinct_summands: distinct.len(),
        vertices: alg.len(),
        tilting: pd <= 1 && ext == 0 && distinct.len() == alg.len(),
    })
}

pub fn is_tilting(alg: &BoundAlgebra, t: &Module) -> Result<TiltingCertificate, LinrepError> {
    is_tilting_summands(alg, &decompose(alg, t)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;

    #[test]
    fn free_module_is_tilting() {
        let a = BoundAlgebra::path_algebra(&Quiver::parse("1 -> 2\n1 -> 2").unwrap());
        assert!(is_tilting(&a, &a.free_module()).unwrap().tilting);
        let s = Module::direct_sum(&[&a.simple(0), &a.simple(1)]);
        assert!(!is_tilting(&a, &s).unwrap().tilting);
    }

    #[test]
    fn generation_by_projectives() {
        let a = BoundAlgebra::path_algebra(&Quiver::parse("1 -> 2").unwrap());
        let free = a.free_module();
        for m in [a.simple(0), a.simple(1), a.injective(0)] {
            assert!(gen_membership(&a, &free, &m).unwrap());
        }
        // the sink simple is not a quotient of the source simple
        assert!(!gen_membership(&a, &a.simple(0), &a.projective(1)).unwrap());
    }
}
