use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::module::{compose, trace};
use super::{hom, BoundAlgebra, LinrepError, Module, Morphism};
use crate::linalg::{q, Matrix, Rational};

/// Gram matrix of the trace form on a basis of `End(M)`. In characteristic zero its
/// radical is the Jacobson radical, so its rank is `dim End(M)/rad`.
fn trace_gram(basis: &[Morphism]) -> Matrix {
    let k = basis.len();
    Matrix::from_fn(k, k, |s, t| trace(&compose(&basis[t], &basis[s])))
}

/// Nonzero with `End(M)/rad End(M) = Q`.
pub fn is_indecomposable(alg: &BoundAlgebra, m: &Module) -> Result<bool, LinrepError> {
    if m.is_zero() {
        return Ok(false);
    }
    let e = hom(alg, m, m)?;
    Ok(trace_gram(&e.basis).rank() == 1)
}

/// Isomorphism test for two indecomposable modules: some composite `Y -> X -> Y` is
/// invertible exactly when one has nonzero trace.
pub fn isomorphic_indecomposables(alg: &BoundAlgebra, x: &Module, y: &Module) -> Result<bool, LinrepError> {
    if x.dims() != y.dims() {
        return Ok(false);
    }
    let f = hom(alg, x, y)?;
    let g = hom(alg, y, x)?;
    for a in &f.basis {
        for b in &g.basis {
            if !trace(&compose(a, b)).is_zero() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn power(f: &Morphism, k: usize) -> Morphism {
    let mut acc: Morphism = f.iter().map(|m| Matrix::identity(m.rows())).collect();
    for _ in 0..k {
        acc = compose(&acc, f);
    }
    acc
}

fn flatten(f: &Morphism) -> Vec<Rational> {
    f.iter().flat_map(|m| (0..m.rows()).flat_map(move |i| m.row(i).to_vec())).collect()
}

/// Minimal polynomial of an endomorphism, lowest degree first, monic.
fn minimal_polynomial(f: &Morphism) -> Vec<Rational> {
    let mut powers: Vec<Vec<Rational>> = vec![flatten(&power(f, 0))];
    let mut cur = power(f, 0);
    loop {
        cur = compose(&cur, f);
        let v = flatten(&cur);
        let a = Matrix::from_columns(v.len(), &powers);
        if let Some(x) = a.solve(&v) {
            let mut poly: Vec<Rational> = x.into_iter().map(|c| -c).collect();
            poly.push(Rational::one());
            return poly;
        }
        powers.push(v);
    }
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Rational roots of a polynomial given lowest degree first.
fn rational_roots(poly: &[Rational]) -> Vec<Rational> {
    let lcm = poly.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = poly.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let mut roots = Vec::new();
    while ints.first().is_some_and(Zero::is_zero) {
        ints.remove(0);
        if !roots.contains(&Rational::zero()) {
            roots.push(Rational::zero());
        }
    }
    if ints.len() <= 1 {
        return roots;
    }
    let (Some(ps), Some(qs)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) else { return roots };
    let eval = |x: &Rational| ints.iter().rev().fold(Rational::zero(), |acc, c| acc * x + Rational::from_integer(c.clone()));
    for p in &ps {
        for d in &qs {
            for sign in [1, -1] {
                let r = Rational::new(p * sign, d.clone());
                if !roots.contains(&r) && eval(&r).is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    roots
}

/// Deterministic small integer coefficients for trial endomorphisms.
fn trial_coefficients(k: usize, trial: usize) -> Vec<Rational> {
    let mut state = 0x9E37_79B9_7F4A_7C15u64 ^ (trial as u64).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    (0..k)
        .map(|_| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            q((state % 7) as i64 - 3)
        })
        .collect()
}

/// Split `m` into absolutely indecomposable summands via Fitting decompositions of
/// endomorphisms with rational eigenvalues.
pub fn decompose(alg: &BoundAlgebra, m: &Module) -> Result<Vec<Module>, LinrepError> {
    if m.is_zero() {
        return Ok(Vec::new());
    }
    let e = hom(alg, m, m)?;
    let gram = trace_gram(&e.basis);
    if gram.rank() == 1 {
        return Ok(vec![m.clone()]);
    }
    // basis elements first, then mixtures
    let k = e.basis.len();
    let total = m.total_dim();
    for trial in 0..(k + 24) {
        let f = if trial < k { e.basis[trial].clone() } else { e.combine(&trial_coefficients(k, trial)).unwrap() };
        for lambda in rational_roots(&minimal_polynomial(&f)) {
            let shifted: Morphism = f.iter().map(|x| x - &Matrix::identity(x.rows()).scale(&lambda)).collect();
            let big = power(&shifted, total);
            let ker: Vec<Matrix> = big.iter().map(Matrix::nullspace).collect();
            let ker_dim: usize = ker.iter().map(Matrix::cols).sum();
            if ker_dim == 0 || ker_dim == total {
                continue;
            }
            let img = Module::image_basis(&big);
            let (a, _) = m.submodule(alg, &ker);
            let (b, _) = m.submodule(alg, &img);
            let mut out = decompose(alg, &a)?;
            out.extend(decompose(alg, &b)?);
            return Ok(out);
        }
    }
    Err(LinrepError::DecompositionStuck(format!("{:?}", m.dims())))
}
