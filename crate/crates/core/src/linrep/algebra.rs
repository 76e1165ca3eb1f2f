use std::collections::HashMap;

use num_traits::{One, Zero};

use super::{LinrepError, Module};
use crate::linalg::{q, Matrix, Rational};
use crate::poset::Poset;
use crate::quiver::Quiver;

/// Arrow indices in travel order; the empty path is the idempotent at its vertex.
pub type Path = Vec<usize>;

/// A linear combination of paths from `source` to `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub source: usize,
    pub target: usize,
    pub terms: Vec<(Rational, Path)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct PairSpace {
    basis: Vec<Path>,
    coords: HashMap<Path, Vec<Rational>>,
}

/// `kQ/I` for an acyclic quiver `Q`, with a path basis of every `e_j Λ e_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundAlgebra {
    quiver: Quiver,
    relations: Vec<Relation>,
    spaces: Vec<Vec<PairSpace>>,
}

fn all_paths(q: &Quiver) -> Vec<Vec<Vec<Path>>> {
    let n = q.len();
    let mut out = vec![vec![Vec::new(); n]; n];
    let order = q.topological_order();
    for &i in &order {
        out[i][i].push(Vec::new());
    }
    // extend paths in topological order of their end vertex
    for &j in &order {
        for i in 0..n {
            let here = out[i][j].clone();
            for (a, &(s, t)) in q.arrows().iter().enumerate() {
                if s != j {
                    continue;
                }
                for p in &here {
                    let mut p2 = p.clone();
                    p2.push(a);
                    out[i][t].push(p2);
                }
            }
        }
    }
    out
}

fn unit(n: usize, k: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[k] = Rational::one();
    v
}

impl BoundAlgebra {
    pub fn path_algebra(q: &Quiver) -> Self {
        Self::with_relations(q, Vec::new()).expect("no relations")
    }

    /// Hasse quiver modulo all commutativity relations.
    pub fn incidence(p: &Poset) -> Self {
        let covers = p.covers();
        let arrows: Vec<(String, String)> =
            covers.iter().map(|&(a, b)| (p.name(a).to_string(), p.name(b).to_string())).collect();
        let quiver = Quiver::new(p.names(), &arrows).expect("Hasse quiver is acyclic");
        let paths = all_paths(&quiver);
        let n = quiver.len();
        let mut relations = Vec::new();
        let mut spaces = Vec::with_capacity(n);
        for (i, row) in paths.into_iter().enumerate() {
            let mut srow = Vec::with_capacity(n);
            for (j, ps) in row.into_iter().enumerate() {
                let basis: Vec<Path> = ps.first().cloned().into_iter().collect();
                for other in ps.iter().skip(1) {
                    relations.push(Relation {
                        source: i,
                        target: j,
                        terms: vec![(q(1), ps[0].clone()), (q(-1), other.clone())],
                    });
                }
                let coords = ps.into_iter().map(|p| (p, vec![q(1)])).collect();
                srow.push(PairSpace { basis, coords });
            }
            spaces.push(srow);
        }
        BoundAlgebra { quiver, relations, spaces }
    }

    /// `kQ` modulo the two-sided ideal generated by `relations`.
    pub fn with_relations(q: &Quiver, relations: Vec<Relation>) -> Result<Self, LinrepError> {
        let n = q.len();
        let paths = all_paths(q);
        for r in &relations {
            for (_, p) in &r.terms {
                if !paths[r.source][r.target].contains(p) {
                    return Err(LinrepError::BadRelation(format!("{p:?} is not a path {}->{}", r.source, r.target)));
                }
            }
        }
        let mut spaces = Vec::with_capacity(n);
        for i in 0..n {
            let mut srow = Vec::with_capacity(n);
            for j in 0..n {
                let ps = &paths[i][j];
                let index: HashMap<&Path, usize> = ps.iter().enumerate().map(|(k, p)| (p, k)).collect();
                // ideal component: u r w over all relations and paths around them
                let mut gens: Vec<Vec<Rational>> = Vec::new();
                for r in &relations {
                    for u in &paths[i][r.source] {
                        for w in &paths[r.target][j] {
                            let mut v = vec![Rational::zero(); ps.len()];
                            for (c, p) in &r.terms {
                                let full: Path = u.iter().chain(p).chain(w).copied().collect();
                                v[index[&full]] += c;
                            }
                            gens.push(v);
                        }
                    }
                }
                let ideal = Matrix::from_columns(ps.len(), &gens);
                let ideal = if gens.is_empty() { Matrix::zeros(ps.len(), 0) } else { ideal.column_basis() };
                let chosen = ideal.complement_units();
                let basis: Vec<Path> = chosen.iter().map(|&k| ps[k].clone()).collect();
                // coordinates: path = sum c_k basis_k mod ideal
                let b = ideal.hstack(&Matrix::from_columns(
                    ps.len(),
                    &chosen.iter().map(|&k| unit(ps.len(), k)).collect::<Vec<_>>(),
                ));
                let mut coords = HashMap::new();
                for (k, p) in ps.iter().enumerate() {
                    let x = b.solve(&unit(ps.len(), k)).expect("spanning set");
                    coords.insert(p.clone(), x[ideal.cols()..].to_vec());
                }
                srow.push(PairSpace { basis, coords });
            }
            spaces.push(srow);
        }
        Ok(BoundAlgebra { quiver: q.clone(), relations, spaces })
    }

    pub fn opposite(&self) -> BoundAlgebra {
        let n = self.len();
        let rev = |p: &Path| -> Path { p.iter().rev().copied().collect() };
        let spaces = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let s = &self.spaces[j][i];
                        PairSpace {
                            basis: s.basis.iter().map(rev).collect(),
                            coords: s.coords.iter().map(|(p, c)| (rev(p), c.clone())).collect(),
                        }
                    })
                    .collect()
            })
            .collect();
        let relations = self
            .relations
            .iter()
            .map(|r| Relation {
                source: r.target,
                target: r.source,
                terms: r.terms.iter().map(|(c, p)| (c.clone(), rev(p))).collect(),
            })
            .collect();
        BoundAlgebra { quiver: self.quiver.opposite(), relations, spaces }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn len(&self) -> usize {
        self.quiver.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quiver.is_empty()
    }

    pub fn is_hereditary_presentation(&self) -> bool {
        self.relations.is_empty()
    }

    /// Basis paths of `e_j Λ e_i`, i.e. paths `i -> j`.
    pub fn basis(&self, i: usize, j: usize) -> &[Path] {
        &self.spaces[i][j].basis
    }

    pub fn pair_dim(&self, i: usize, j: usize) -> usize {
        self.spaces[i][j].basis.len()
    }

    /// Coordinates of a path `i -> j` in the basis of `e_j Λ e_i`.
    pub fn coords(&self, i: usize, j: usize, p: &Path) -> &[Rational] {
        &self.spaces[i][j].coords[p]
    }

    pub fn dim(&self) -> usize {
        self.spaces.iter().flatten().map(|s| s.basis.len()).sum()
    }

    /// `cartan[i][j] = dim e_j Λ e_i`.
    pub fn cartan(&self) -> Vec<Vec<i64>> {
        let n = self.len();
        (0..n).map(|i| (0..n).map(|j| self.pair_dim(i, j) as i64).collect()).collect()
    }

    /// Product of `x` (an element `i -> j`) followed by `y` (an element `j -> k`).
    pub fn compose(&self, i: usize, j: usize, k: usize, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.pair_dim(i, k)];
        for (a, pa) in x.iter().zip(self.basis(i, j)) {
            if a.is_zero() {
                continue;
            }
            for (b, pb) in y.iter().zip(self.basis(j, k)) {
                if b.is_zero() {
                    continue;
                }
                let p: Path = pa.iter().chain(pb).copied().collect();
                let c = a * b;
                for (o, v) in out.iter_mut().zip(self.coords(i, k, &p)) {
                    if !v.is_zero() {
                        *o += &c * v;
                    }
                }
            }
        }
        out
    }

    /// The indecomposable projective `Λ e_i`, supported on vertices reachable from `i`.
    pub fn projective(&self, i: usize) -> Module {
        let n = self.len();
        let dims: Vec<usize> = (0..n).map(|j| self.pair_dim(i, j)).collect();
        let maps = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let cols: Vec<Vec<Rational>> = self
                    .basis(i, s)
                    .iter()
                    .map(|p| {
                        let mut p2 = p.clone();
                        p2.push(a);
                        self.coords(i, t, &p2).to_vec()
                    })
                    .collect();
                if cols.is_empty() {
                    Matrix::zeros(dims[t], 0)
                } else {
                    Matrix::from_columns(dims[t], &cols)
                }
            })
            .collect();
        Module::new_unchecked(dims, maps)
    }

    /// The indecomposable injective `D(e_i Λ)`, supported on vertices from which `i` is
    /// reachable.
    pub fn injective(&self, i: usize) -> Module {
        let n = self.len();
        let dims: Vec<usize> = (0..n).map(|j| self.pair_dim(j, i)).collect();
        let maps = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                // precomposition with `a`: paths t->i to paths s->i, then transpose
                let cols: Vec<Vec<Rational>> = self
                    .basis(t, i)
                    .iter()
                    .map(|p| {
                        let p2: Path = std::iter::once(a).chain(p.iter().copied()).collect();
                        self.coords(s, i, &p2).to_vec()
                    })
                    .collect();
                let pre = if cols.is_empty() { Matrix::zeros(dims[s], 0) } else { Matrix::from_columns(dims[s], &cols) };
                pre.transpose()
            })
            .collect();
        Module::new_unchecked(dims, maps)
    }

    pub fn simple(&self, i: usize) -> Module {
        let n = self.len();
        let dims: Vec<usize> = (0..n).map(|j| usize::from(j == i)).collect();
        let maps = self.quiver.arrows().iter().map(|&(s, t)| Matrix::zeros(dims[t], dims[s])).collect();
        Module::new_unchecked(dims, maps)
    }

    /// `Λ` as a left module.
    pub fn free_module(&self) -> Module {
        let ps: Vec<Module> = (0..self.len()).map(|i| self.projective(i)).collect();
        Module::direct_sum(&ps.iter().collect::<Vec<_>>())
    }

    /// Matrix of the action of `path` (from `i` to `j`) on a module.
    pub fn path_action(&self, m: &Module, i: usize, path: &Path) -> Matrix {
        let mut acc = Matrix::identity(m.dims()[i]);
        for &a in path {
            acc = &m.maps()[a] * &acc;
        }
        acc
    }

    /// Action of an element `i -> j` (coordinates in the basis) on a module.
    pub fn element_action(&self, m: &Module, i: usize, j: usize, x: &[Rational]) -> Matrix {
        let mut acc = Matrix::zeros(m.dims()[j], m.dims()[i]);
        for (c, p) in x.iter().zip(self.basis(i, j)) {
            if !c.is_zero() {
                acc = &acc + &self.path_action(m, i, p).scale(c);
            }
        }
        acc
    }

    /// Morphism between sums of projectives. `src[s]` and `dst[d]` are vertices and
    /// `elems[d][s]` holds coordinates in the basis of paths `dst[d] -> src[s]`: the image
    /// of the generator of `P(src[s])` inside `P(dst[d])`.
    pub fn projective_map(&self, src: &[usize], dst: &[usize], elems: &[Vec<Vec<Rational>>]) -> (Module, Module, Vec<Matrix>) {
        let ps: Vec<Module> = src.iter().map(|&v| self.projective(v)).collect();
        let pd: Vec<Module> = dst.iter().map(|&v| self.projective(v)).collect();
        let msrc = Module::direct_sum(&ps.iter().collect::<Vec<_>>());
        let mdst = Module::direct_sum(&pd.iter().collect::<Vec<_>>());
        let n = self.len();
        let mut comps = Vec::with_capacity(n);
        for u in 0..n {
            let mut m = Matrix::zeros(mdst.dims()[u], msrc.dims()[u]);
            let mut col0 = 0;
            for (s, &vs) in src.iter().enumerate() {
                let mut row0 = 0;
                for (d, &vd) in dst.iter().enumerate() {
                    let x = &elems[d][s];
                    // basis path p: vs -> u goes to x followed by p
                    for k in 0..self.pair_dim(vs, u) {
                        let img = self.compose(vd, vs, u, x, &unit(self.pair_dim(vs, u), k));
                        for (r, c) in img.into_iter().enumerate() {
                            m.set(row0 + r, col0 + k, c);
                        }
                    }
                    row0 += self.pair_dim(vd, u);
                }
                col0 += self.pair_dim(vs, u);
            }
            comps.push(m);
        }
        (msrc, mdst, comps)
    }

    /// Whether every relation acts as zero on `m`.
    pub fn satisfies_relations(&self, m: &Module) -> bool {
        self.relations.iter().all(|r| {
            let mut acc = Matrix::zeros(m.dims()[r.target], m.dims()[r.source]);
            for (c, p) in &r.terms {
                acc = &acc + &self.path_action(m, r.source, p).scale(c);
            }
            acc.is_zero()
        })
    }

    /// Number of nonempty intervals when the algebra is an incidence algebra.
    pub fn cartan_total(&self) -> i64 {
        self.cartan().iter().flatten().sum()
    }
}
