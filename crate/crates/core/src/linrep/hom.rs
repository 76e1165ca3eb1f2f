use num_traits::Zero;

use super::{BoundAlgebra, LinrepError, Module, Morphism};
use crate::linalg::{Matrix, Rational};

/// Basis of `Hom(X, Y)`.
#[derive(Debug, Clone)]
pub struct HomSpace {
    pub basis: Vec<Morphism>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `sum c_k basis_k`.
    pub fn combine(&self, coeffs: &[Rational]) -> Option<Morphism> {
        let first = self.basis.first()?;
        let mut out: Morphism = first.iter().map(|m| Matrix::zeros(m.rows(), m.cols())).collect();
        for (c, f) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, m) in out.iter_mut().zip(f) {
                *o = &*o + &m.scale(c);
            }
        }
        Some(out)
    }
}

fn offsets(x: &Module, y: &Module) -> (Vec<usize>, usize) {
    let mut off = Vec::with_capacity(x.dims().len());
    let mut total = 0;
    for (a, b) in x.dims().iter().zip(y.dims()) {
        off.push(total);
        total += a * b;
    }
    (off, total)
}

/// Linear system whose kernel is `Hom(X, Y)`; unknown `f_v` stored row-major.
fn system(alg: &BoundAlgebra, x: &Module, y: &Module) -> (Matrix, Vec<usize>, usize) {
    let (off, total) = offsets(x, y);
    let arrows = alg.quiver().arrows();
    let rows: usize = arrows.iter().map(|&(s, t)| y.dims()[t] * x.dims()[s]).sum();
    let mut m = Matrix::zeros(rows, total);
    let mut r0 = 0;
    for (a, &(s, t)) in arrows.iter().enumerate() {
        let (ya, xa) = (&y.maps()[a], &x.maps()[a]);
        let (xs, yt) = (x.dims()[s], y.dims()[t]);
        let (ys, xt) = (y.dims()[s], x.dims()[t]);
        // equation (r, c): sum_k ya[r][k] f_s[k][c] - sum_k f_t[r][k] xa[k][c]
        for r in 0..yt {
            for c in 0..xs {
                let row = r0 + r * xs + c;
                for k in 0..ys {
                    let v = ya.get(r, k);
                    if !v.is_zero() {
                        let col = off[s] + k * xs + c;
                        let cur = m.get(row, col) + v;
                        m.set(row, col, cur);
                    }
                }
                for k in 0..xt {
                    let v = xa.get(k, c);
                    if !v.is_zero() {
                        let col = off[t] + r * xt + k;
                        let cur = m.get(row, col) - v;
                        m.set(row, col, cur);
                    }
                }
            }
        }
        r0 += yt * xs;
    }
    (m, off, total)
}

fn same_algebra(alg: &BoundAlgebra, x: &Module, y: &Module) -> Result<(), LinrepError> {
    let (n, a) = (alg.len(), alg.quiver().arrows().len());
    if x.dims().len() != n || y.dims().len() != n || x.maps().len() != a || y.maps().len() != a {
        return Err(LinrepError::AlgebraMismatch);
    }
    Ok(())
}

pub fn hom(alg: &BoundAlgebra, x: &Module, y: &Module) -> Result<HomSpace, LinrepError> {
    same_algebra(alg, x, y)?;
    let (m, off, total) = system(alg, x, y);
    let ns = if m.rows() == 0 { Matrix::identity(total) } else { m.nullspace() };
    let basis = (0..ns.cols())
        .map(|k| {
            x.dims()
                .iter()
                .zip(y.dims())
                .enumerate()
                .map(|(v, (&dx, &dy))| Matrix::from_fn(dy, dx, |r, c| ns.get(off[v] + r * dx + c, k).clone()))
                .collect()
        })
        .collect();
    Ok(HomSpace { basis })
}

pub fn hom_dim(alg: &BoundAlgebra, x: &Module, y: &Module) -> Result<usize, LinrepError> {
    same_algebra(alg, x, y)?;
    let (m, _, total) = system(alg, x, y);
    Ok(total - if m.rows() == 0 { 0 } else { m.rank() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;

    #[test]
    fn projectives_represent_evaluation() {
        let k = Quiver::parse("1 -> 2\n1 -> 2\n2 -> 3").unwrap();
        let a = BoundAlgebra::path_algebra(&k);
        let m = a.injective(2);
        for i in 0..3 {
            assert_eq!(hom_dim(&a, &a.projective(i), &m).unwrap(), m.dims()[i]);
        }
        assert_eq!(hom_dim(&a, &a.simple(0), &a.simple(0)).unwrap(), 1);
        assert_eq!(hom_dim(&a, &a.simple(0), &a.simple(1)).unwrap(), 0);
    }

    #[test]
    fn hom_basis_elements_are_morphisms() {
        let k = Quiver::parse("1 -> 2\n1 -> 2").unwrap();
        let a = BoundAlgebra::path_algebra(&k);
        let (p1, i0) = (a.projective(0), a.injective(0));
        let h = hom(&a, &p1, &i0).unwrap();
        assert_eq!(h.dim(), 1);
        assert!(h.basis.iter().all(|f| p1.is_morphism(&i0, &a, f)));
    }
}
