use num_traits::Zero;

use super::{BoundAlgebra, LinrepError};
use crate::linalg::{Matrix, Rational};

/// A finite-dimensional representation: a vector space per vertex and a matrix per
/// arrow (`maps[a]` is `dims[target] x dims[source]`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Module {
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

/// A module map, one matrix per vertex.
pub type Morphism = Vec<Matrix>;

impl Module {
    pub(crate) fn new_unchecked(dims: Vec<usize>, maps: Vec<Matrix>) -> Self {
        Module { dims, maps }
    }

    /// Build and validate shapes and relations.
    pub fn new(alg: &BoundAlgebra, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self, LinrepError> {
        let m = Module { dims, maps };
        m.check(alg)?;
        Ok(m)
    }

    pub fn check(&self, alg: &BoundAlgebra) -> Result<(), LinrepError> {
        let arrows = alg.quiver().arrows();
        if self.dims.len() != alg.len() || self.maps.len() != arrows.len() {
            return Err(LinrepError::AlgebraMismatch);
        }
        for (a, &(s, t)) in arrows.iter().enumerate() {
            if self.maps[a].shape() != (self.dims[t], self.dims[s]) {
                return Err(LinrepError::Shape(format!("arrow {a} has shape {:?}", self.maps[a].shape())));
            }
        }
        if !alg.satisfies_relations(self) {
            return Err(LinrepError::RelationViolated);
        }
        Ok(())
    }

    pub fn zero(alg: &BoundAlgebra) -> Self {
        let dims = vec![0; alg.len()];
        let maps = alg.quiver().arrows().iter().map(|_| Matrix::zeros(0, 0)).collect();
        Module { dims, maps }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_vector(&self) -> Vec<i64> {
        self.dims.iter().map(|&d| d as i64).collect()
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn direct_sum(parts: &[&Module]) -> Module {
        let first = parts.first().expect("at least one summand");
        let n = first.dims.len();
        let arrows = first.maps.len();
        let dims = (0..n).map(|v| parts.iter().map(|m| m.dims[v]).sum()).collect();
        let maps = (0..arrows)
            .map(|a| parts.iter().skip(1).fold(first.maps[a].clone(), |acc, m| acc.direct_sum(&m.maps[a])))
            .collect();
        Module { dims, maps }
    }

    /// Direct sum that is zero for an empty list.
    pub fn sum_over(alg: &BoundAlgebra, parts: &[&Module]) -> Module {
        if parts.is_empty() {
            Module::zero(alg)
        } else {
            Module::direct_sum(parts)
        }
    }

    /// Linear dual, a module over the opposite algebra.
    pub fn dual(&self) -> Module {
        Module { dims: self.dims.clone(), maps: self.maps.iter().map(Matrix::transpose).collect() }
    }

    pub fn identity(&self) -> Morphism {
        self.dims.iter().map(|&d| Matrix::identity(d)).collect()
    }

    /// Whether `f: self -> other` commutes with every arrow.
    pub fn is_morphism(&self, other: &Module, alg: &BoundAlgebra, f: &Morphism) -> bool {
        alg.quiver()
            .arrows()
            .iter()
            .enumerate()
            .all(|(a, &(s, t))| &other.maps[a] * &f[s] == &f[t] * &self.maps[a])
    }

    /// Submodule spanned by the columns of `basis[v]` (assumed closed under arrows),
    /// with the inclusion.
    pub fn submodule(&self, alg: &BoundAlgebra, basis: &[Matrix]) -> (Module, Morphism) {
        let basis: Vec<Matrix> = basis.iter().map(|b| if b.cols() == 0 { b.clone() } else { b.column_basis() }).collect();
        let dims: Vec<usize> = basis.iter().map(Matrix::cols).collect();
        let maps = alg
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let img = &self.maps[a] * &basis[s];
                if dims[t] == 0 || dims[s] == 0 {
                    Matrix::zeros(dims[t], dims[s])
                } else {
                    basis[t].solve_matrix(&img).expect("subspace closed under arrows")
                }
            })
            .collect();
        (Module { dims, maps }, basis)
    }

    /// Quotient by the subspaces spanned by `basis[v]` (closed under arrows), with the
    /// projection.
    pub fn quotient(&self, alg: &BoundAlgebra, basis: &[Matrix]) -> (Module, Morphism) {
        let n = self.dims.len();
        let mut proj = Vec::with_capacity(n);
        let mut lifts = Vec::with_capacity(n);
        for v in 0..n {
            let sub = if basis[v].cols() == 0 { Matrix::zeros(self.dims[v], 0) } else { basis[v].column_basis() };
            let comp = sub.complement_units();
            let units = Matrix::identity(self.dims[v]).select_columns(&comp);
            let inv = sub.hstack(&units).inverse().expect("basis of the ambient space");
            let rows: Vec<usize> = (sub.cols()..self.dims[v]).collect();
            proj.push(inv.select_rows(&rows));
            lifts.push(units);
        }
        let dims: Vec<usize> = lifts.iter().map(Matrix::cols).collect();
        let maps = alg
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| &(&proj[t] * &self.maps[a]) * &lifts[s])
            .collect();
        (Module { dims, maps }, proj)
    }

    /// Kernel of `f: self -> other`, with the inclusion.
    pub fn kernel(&self, alg: &BoundAlgebra, f: &Morphism) -> (Module, Morphism) {
        let basis: Vec<Matrix> = f.iter().map(Matrix::nullspace).collect();
        self.submodule(alg, &basis)
    }

    pub fn image_basis(f: &Morphism) -> Vec<Matrix> {
        f.iter().map(|m| if m.cols() == 0 { Matrix::zeros(m.rows(), 0) } else { m.column_basis() }).collect()
    }

    pub fn cokernel(target: &Module, alg: &BoundAlgebra, f: &Morphism) -> (Module, Morphism) {
        target.quotient(alg, &Self::image_basis(f))
    }

    /// Basis per vertex of the submodule generated by `(vertex, vector)` pairs.
    pub fn generated_basis(&self, alg: &BoundAlgebra, gens: &[(usize, Vec<Rational>)]) -> Vec<Matrix> {
        let n = self.dims.len();
        let mut span: Vec<Matrix> = (0..n).map(|v| Matrix::zeros(self.dims[v], 0)).collect();
        let mut queue: Vec<(usize, Vec<Rational>)> = gens.to_vec();
        while let Some((v, x)) = queue.pop() {
            let grown = span[v].hstack(&Matrix::from_columns(self.dims[v], std::slice::from_ref(&x)));
            if grown.rank() == span[v].cols() {
                continue;
            }
            span[v] = grown;
            for (a, &(s, t)) in alg.quiver().arrows().iter().enumerate() {
                if s == v {
                    queue.push((t, self.maps[a].mul_vec(&x)));
                }
            }
        }
        span
    }

    /// Radical: the sum of the images of all arrows, as a basis per vertex.
    pub fn radical_basis(&self, alg: &BoundAlgebra) -> Vec<Matrix> {
        let n = self.dims.len();
        (0..n)
            .map(|v| {
                let mut acc = Matrix::zeros(self.dims[v], 0);
                for (a, &(_, t)) in alg.quiver().arrows().iter().enumerate() {
                    if t == v {
                        acc = acc.hstack(&self.maps[a]);
                    }
                }
                if acc.cols() == 0 {
                    acc
                } else {
                    acc.column_basis()
                }
            })
            .collect()
    }

    /// Dimension vector of the top `M / rad M`.
    pub fn top_dims(&self, alg: &BoundAlgebra) -> Vec<usize> {
        self.radical_basis(alg).iter().zip(&self.dims).map(|(r, &d)| d - r.cols()).collect()
    }

    /// Dimension vector of the socle.
    pub fn socle_dims(&self, alg: &BoundAlgebra) -> Vec<usize> {
        let n = self.dims.len();
        (0..n)
            .map(|v| {
                let mut stacked = Matrix::zeros(0, self.dims[v]);
                for (a, &(s, _)) in alg.quiver().arrows().iter().enumerate() {
                    if s == v {
                        stacked = stacked.vstack(&self.maps[a]);
                    }
                }
                self.dims[v] - stacked.rank()
            })
            .collect()
    }

    pub fn is_projective(&self, alg: &BoundAlgebra) -> bool {
        let top = self.top_dims(alg);
        let expect: usize = top.iter().enumerate().map(|(v, &c)| c * alg.projective(v).total_dim()).sum();
        expect == self.total_dim()
    }

    pub fn is_injective(&self, alg: &BoundAlgebra) -> bool {
        let soc = self.socle_dims(alg);
        let expect: usize = soc.iter().enumerate().map(|(v, &c)| c * alg.injective(v).total_dim()).sum();
        expect == self.total_dim()
    }
}

pub fn compose(f: &Morphism, g: &Morphism) -> Morphism {
    // g after f
    f.iter().zip(g).map(|(a, b)| b * a).collect()
}

pub fn morphism_is_zero(f: &Morphism) -> bool {
    f.iter().all(Matrix::is_zero)
}

/// Sum of traces over all vertices of an endomorphism.
pub fn trace(f: &Morphism) -> Rational {
    f.iter().map(Matrix::trace).fold(Rational::zero(), |a, b| a + b)
}

impl std::fmt::Debug for Module {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Module{:?}", self.dims)
    }
}
