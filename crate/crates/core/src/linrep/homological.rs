use serde::Serialize;

use super::{hom_dim, BoundAlgebra, LinrepError, Module, Morphism};
use crate::linalg::{Matrix, Rational};

/// Projective cover `P -> M` with one generator per top basis vector.
#[derive(Debug, Clone)]
pub struct Cover {
    /// Vertex of each indecomposable summand of `P`, in order.
    pub vertices: Vec<usize>,
    pub module: Module,
    pub map: Morphism,
}

pub fn projective_cover(alg: &BoundAlgebra, m: &Module) -> Cover {
    let n = alg.len();
    let rad = m.radical_basis(alg);
    let mut gens: Vec<(usize, Vec<Rational>)> = Vec::new();
    for v in 0..n {
        for c in rad[v].complement_units() {
            gens.push((v, Matrix::identity(m.dims()[v]).column(c)));
        }
    }
    cover_from_generators(alg, m, &gens)
}

/// The map `⊕ P(v) -> M` sending each generator to the given vector.
pub fn cover_from_generators(alg: &BoundAlgebra, m: &Module, gens: &[(usize, Vec<Rational>)]) -> Cover {
    let n = alg.len();
    let vertices: Vec<usize> = gens.iter().map(|g| g.0).collect();
    if gens.is_empty() {
        let zero = Module::zero(alg);
        let map = (0..n).map(|w| Matrix::zeros(m.dims()[w], 0)).collect();
        return Cover { vertices, module: zero, map };
    }
    let ps: Vec<Module> = vertices.iter().map(|&v| alg.projective(v)).collect();
    let module = Module::direct_sum(&ps.iter().collect::<Vec<_>>());
    let map = (0..n)
        .map(|w| {
            let mut cols: Vec<Vec<Rational>> = Vec::new();
            for (v, g) in gens {
                for p in alg.basis(*v, w) {
                    cols.push(alg.path_action(m, *v, p).mul_vec(g));
                }
            }
            if cols.is_empty() {
                Matrix::zeros(m.dims()[w], 0)
            } else {
                Matrix::from_columns(m.dims()[w], &cols)
            }
        })
        .collect();
    Cover { vertices, module, map }
}

/// Kernel of the projective cover.
pub fn syzygy(alg: &BoundAlgebra, m: &Module) -> (Cover, Module, Morphism) {
    let c = projective_cover(alg, m);
    let (k, inc) = c.module.kernel(alg, &c.map);
    (c, k, inc)
}

/// Minimal resolution by indecomposable projectives: `terms[k][v]` is the multiplicity of
/// `P(v)` in degree `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Resolution {
    pub terms: Vec<Vec<usize>>,
    /// `None` when the resolution did not stop within the step limit.
    pub length: Option<usize>,
}

fn multiplicities(n: usize, vertices: &[usize]) -> Vec<usize> {
    let mut v = vec![0; n];
    for &x in vertices {
        v[x] += 1;
    }
    v
}

pub fn projective_resolution(alg: &BoundAlgebra, m: &Module, max_steps: usize) -> Resolution {
    let n = alg.len();
    let mut terms = Vec::new();
    let mut cur = m.clone();
    for k in 0..=max_steps {
        if cur.is_zero() {
            return Resolution { length: Some(k.saturating_sub(1)), terms };
        }
        let (c, next, _) = syzygy(alg, &cur);
        terms.push(multiplicities(n, &c.vertices));
        cur = next;
    }
    if cur.is_zero() {
        let len = terms.len().saturating_sub(1);
        return Resolution { length: Some(len), terms };
    }
    Resolution { length: None, terms }
}

/// Injective coresolution, computed as the projective resolution of the dual over the
/// opposite algebra.
pub fn injective_resolution(alg: &BoundAlgebra, m: &Module, max_steps: usize) -> Resolution {
    projective_resolution(&alg.opposite(), &m.dual(), max_steps)
}

/// Projective dimension; the zero module gets 0. Triangular algebras have global
/// dimension below the number of vertices, which bounds the search.
pub fn projective_dimension(alg: &BoundAlgebra, m: &Module) -> usize {
    projective_resolution(alg, m, alg.len()).length.expect("finite global dimension")
}

pub fn injective_dimension(alg: &BoundAlgebra, m: &Module) -> usize {
    injective_resolution(alg, m, alg.len()).length.expect("finite global dimension")
}

pub fn global_dimension(alg: &BoundAlgebra) -> usize {
    (0..alg.len()).map(|i| projective_dimension(alg, &alg.simple(i))).max().unwrap_or(0)
}

/// `dim Ext^1(X, Y)` from the syzygy sequence `0 -> ΩX -> P -> X -> 0`.
pub fn ext1_dim(alg: &BoundAlgebra, x: &Module, y: &Module) -> Result<usize, LinrepError> {
    let (c, omega, _) = syzygy(alg, x);
    let hom_p: usize = c.vertices.iter().map(|&v| y.dims()[v]).sum();
    let a = hom_dim(alg, &omega, y)?;
    let b = hom_dim(alg, x, y)?;
    Ok(a + b - hom_p)
}

/// `dim Ext^k(X, Y)` by dimension shifting.
pub fn ext_dim(alg: &BoundAlgebra, x: &Module, y: &Module, k: usize) -> Result<usize, LinrepError> {
    if k == 0 {
        return hom_dim(alg, x, y);
    }
    let mut cur = x.clone();
    for _ in 1..k {
        cur = syzygy(alg, &cur).1;
    }
    ext1_dim(alg, &cur, y)
}

/// Minimal projective presentation `P1 -> P0 -> M -> 0`, with the map written as
/// algebra elements: `elems[t][s]` is the component from the `t`-th summand of `P1` to
/// the `s`-th of `P0`, in the basis of paths `p0[s] -> p1[t]`.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub p0: Vec<usize>,
    pub p1: Vec<usize>,
    pub elems: Vec<Vec<Vec<Rational>>>,
}

pub fn presentation(alg: &BoundAlgebra, m: &Module) -> Presentation {
    let (c0, k, inc) = syzygy(alg, m);
    let c1 = projective_cover(alg, &k);
    let mut elems = Vec::with_capacity(c1.vertices.len());
    // generator t of P1 sits at vertex w; its image in (P0)_w splits by summand
    let mut idx_at = vec![0usize; alg.len()];
    for &w in &c1.vertices {
        let j = idx_at[w];
        idx_at[w] += 1;
        // column j of the cover map at w is the generator's value in K_w (top generators
        // come first among the columns for vertex w of the trivial path)
        let gen_k = generator_value(alg, &c1, w, j);
        let in_p0 = inc[w].mul_vec(&gen_k);
        let mut row = Vec::with_capacity(c0.vertices.len());
        let mut off = 0;
        for &v in &c0.vertices {
            let d = alg.pair_dim(v, w);
            row.push(in_p0[off..off + d].to_vec());
            off += d;
        }
        elems.push(row);
    }
    Presentation { p0: c0.vertices, p1: c1.vertices, elems }
}

/// Value of the `j`-th generator at vertex `w` of a cover: the column of the cover map
/// belonging to the trivial path of that summand.
fn generator_value(alg: &BoundAlgebra, c: &Cover, w: usize, j: usize) -> Vec<Rational> {
    let mut col = 0;
    let mut seen = 0;
    for &v in &c.vertices {
        let d = alg.pair_dim(v, w);
        if v == w {
            if seen == j {
                // the trivial path is the only basis path w -> w
                return c.map[w].column(col);
            }
            seen += 1;
        }
        col += d;
    }
    unreachable!("generator index out of range")
}

/// Auslander–Bridger transpose, a module over the opposite algebra.
pub fn transpose(alg: &BoundAlgebra, op: &BoundAlgebra, m: &Module) -> Module {
    let pres = presentation(alg, m);
    if pres.p0.is_empty() {
        return Module::zero(op);
    }
    if pres.p1.is_empty() {
        // P0* -> 0
        return Module::zero(op);
    }
    // P0* -> P1*: generator of P0*(s) goes to sum_t elems[t][s] in P1*(t)
    let elems: Vec<Vec<Vec<Rational>>> =
        (0..pres.p1.len()).map(|t| (0..pres.p0.len()).map(|s| pres.elems[t][s].clone()).collect()).collect();
    let (_, target, map) = op.projective_map(&pres.p0, &pres.p1, &elems);
    Module::cokernel(&target, op, &map).0
}

/// `τM = D Tr M`.
pub fn tau(alg: &BoundAlgebra, m: &Module) -> Module {
    let op = alg.opposite();
    transpose(alg, &op, m).dual()
}

/// `τ⁻M = Tr D M`.
pub fn tau_inverse(alg: &BoundAlgebra, m: &Module) -> Module {
    let op = alg.opposite();
    transpose(&op, alg, &m.dual())
}
