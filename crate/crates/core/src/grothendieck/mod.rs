//! Grothendieck groups, g-vectors, tilting transfer, walls and g-vector fans.
//!
//! `K_0(proj Λ)` and `K_0(mod Λ)` are both identified with `Z^n`: `[P(v)] = e_v` on the
//! projective side and `[S(v)] = e_v` on the module side, so the pairing
//! `⟨[P], [M]⟩ = dim Hom(P, M)` is the dot product.

mod fan;
mod walls;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::knitting::{KnitError, KnittedComponent};
use crate::linalg::{q, Matrix, Rational};
use crate::linrep::{self, BoundAlgebra, LinrepError, Module};
use crate::quiver::{QuiverError, Quiver};

pub use fan::{g_fan, g_fan_brute_force, in_cone, FanReport, StPair};
pub use walls::{
    negative_cone_samples, negative_cone_vs_postprojectives, verify_notgtame, wall_check, ConeReport, NotGTameReport,
    SampleReport, WallCheck,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrothendieckError {
    #[error("vector lengths {0} and {1} do not match the algebra rank")]
    RankMismatch(usize, usize),
    #[error("module is not tilting")]
    NotTilting,
    #[error("vector is not in the negative cone of the Tits form")]
    NotInNegativeCone,
    #[error("quiver is not hyperbolic")]
    NotHyperbolic,
    #[error(transparent)]
    Knit(#[from] KnitError),
    #[error(transparent)]
    Linrep(#[from] LinrepError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

/// `⟨θ, d⟩`.
pub fn pairing(theta: &[Rational], d: &[Rational]) -> Result<Rational, GrothendieckError> {
    if theta.len() != d.len() {
        return Err(GrothendieckError::RankMismatch(theta.len(), d.len()));
    }
    Ok(theta.iter().zip(d).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
}

pub fn pairing_i64(theta: &[i64], d: &[i64]) -> i64 {
    theta.iter().zip(d).map(|(a, b)| a * b).sum()
}

/// Euler form of a path algebra: `⟨x, y⟩ = Σ x_i y_i - Σ_{i -> j} x_i y_j`.
pub fn euler_form(quiver: &Quiver, x: &[i64], y: &[i64]) -> i64 {
    let diag: i64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    diag - quiver.arrows().iter().map(|&(s, t)| x[s] * y[t]).sum::<i64>()
}

/// The g-vector of a module over a path algebra, read off from its dimension vector:
/// the functional `⟨dim M, -⟩` on `K_0(mod)`.
pub fn g_vector_hereditary(quiver: &Quiver, dims: &[i64]) -> Vec<i64> {
    let n = quiver.len();
    (0..n)
        .map(|k| {
            let mut e = vec![0; n];
            e[k] = 1;
            euler_form(quiver, dims, &e)
        })
        .collect()
}

/// `[P_0] - [P_1] - [Q]` from the minimal projective presentation of `m`.
pub fn g_vector(alg: &BoundAlgebra, m: &Module, proj_part: &[usize]) -> Vec<i64> {
    let mut g: Vec<i64> = proj_part.iter().map(|&c| -(c as i64)).collect();
    g.resize(alg.len(), 0);
    if m.is_zero() {
        return g;
    }
    let pres = linrep::presentation(alg, m);
    for v in pres.p0 {
        g[v] += 1;
    }
    for v in pres.p1 {
        g[v] -= 1;
    }
    g
}

/// The two maps attached to a tilting module `T = ⊕ T_i` over a path algebra.
///
/// `hat` sends `[M]` to `[Hom(T, M)] - [Ext¹(T, M)]`; row `i` is `⟨dim T_i, -⟩`.
/// `to_b` is the projective-side mate, `to_b = hat^{-T}`, so that
/// `⟨θ, d⟩ = ⟨to_b θ, hat d⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransferData {
    pub to_b: Vec<Vec<i64>>,
    pub hat: Vec<Vec<i64>>,
}

impl TransferData {
    pub fn hat_of(&self, d: &[i64]) -> Vec<i64> {
        mat_vec(&self.hat, d)
    }

    pub fn theta_b(&self, theta: &[i64]) -> Vec<i64> {
        mat_vec(&self.to_b, theta)
    }

    /// `to_b^T · hat = I`, the matrix form of `θ(d) = θ_B(d̂)`.
    pub fn identity_holds(&self) -> bool {
        let n = self.hat.len();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let s: i64 = (0..n).map(|k| self.to_b[k][i] * self.hat[k][j]).sum();
                s == i64::from(i == j)
            })
        })
    }
}

pub fn mat_vec(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| pairing_i64(row, v)).collect()
}

/// Transfer data from the dimension vectors of the summands of a tilting module.
pub fn transfer_from_dims(quiver: &Quiver, summands: &[Vec<i64>]) -> Result<TransferData, GrothendieckError> {
    let n = quiver.len();
    if summands.len() != n {
        return Err(GrothendieckError::NotTilting);
    }
    let hat: Vec<Vec<i64>> = summands.iter().map(|t| g_vector_hereditary(quiver, t)).collect();
    let inv = Matrix::from_i64(&hat).inverse().ok_or(GrothendieckError::NotTilting)?;
    let to_b = inv.transpose().to_i64().ok_or(GrothendieckError::NotTilting)?;
    Ok(TransferData { to_b, hat })
}

/// Transfer data for an explicit module, after checking that it is tilting.
pub fn transfer(alg: &BoundAlgebra, t: &Module) -> Result<TransferData, GrothendieckError> {
    let summands = linrep::decompose(alg, t)?;
    let cert = linrep::is_tilting_summands(alg, &summands)?;
    if !cert.tilting {
        return Err(GrothendieckError::NotTilting);
    }
    let mut dims: Vec<Vec<i64>> = cert.summand_dims.iter().map(|d| d.iter().map(|&x| x as i64).collect()).collect();
    // order summands by descending g-vector, so that `T = Λ` lists `P(1), P(2), ..`
    dims.sort_by_cached_key(|d| std::cmp::Reverse(g_vector_hereditary(alg.quiver(), d)));
    transfer_from_dims(alg.quiver(), &dims)
}

/// Outcome of the transfer checks for one postprojective tilting set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransferCheck {
    pub summands: Vec<usize>,
    pub identity: bool,
    /// `to_b` sends each `g^{T_i}` to the unit vector `e_i`.
    pub projectives_to_units: bool,
    pub gen_checked: usize,
    pub gen_ok: bool,
    pub perp_checked: usize,
    pub perp_ok: bool,
}

impl TransferCheck {
    pub fn passed(&self) -> bool {
        self.identity && self.projectives_to_units && self.gen_ok && self.perp_ok
    }
}

/// Check the transfer identities for a tilting node set against every knitted node:
/// `hat[M] = [Hom(T, M)]` on `Gen T = {M : Ext¹(T, M) = 0}` and
/// `hat[N] = -[Ext¹(T, N)]` on `T^⊥ = {N : Hom(T, N) = 0}`.
pub fn check_transfer(c: &KnittedComponent, tilting: &[usize]) -> Result<TransferCheck, GrothendieckError> {
    let quiver = c.quiver();
    let dims: Vec<Vec<i64>> = tilting.iter().map(|&k| c.dims(k).to_vec()).collect();
    let data = transfer_from_dims(quiver, &dims)?;
    let identity = data.identity_holds();
    let projectives_to_units = dims.iter().enumerate().all(|(i, d)| {
        let g = data.theta_b(&g_vector_hereditary(quiver, d));
        g.iter().enumerate().all(|(k, &x)| x == i64::from(k == i))
    });
    let (mut gen_checked, mut gen_ok, mut perp_checked, mut perp_ok) = (0, true, 0, true);
    for m in 0..c.nodes().len() {
        let homs: Vec<i64> = tilting.iter().map(|&t| c.hom(t, m)).collect();
        let exts: Vec<i64> = tilting.iter().map(|&t| c.ext(t, m)).collect();
        let hat = data.hat_of(c.dims(m));
        if exts.iter().all(|&e| e == 0) {
            gen_checked += 1;
            gen_ok &= hat == homs;
        }
        if homs.iter().all(|&h| h == 0) {
            perp_checked += 1;
            perp_ok &= hat == exts.iter().map(|e| -e).collect::<Vec<_>>();
        }
    }
    Ok(TransferCheck { summands: tilting.to_vec(), identity, projectives_to_units, gen_checked, gen_ok, perp_checked, perp_ok })
}

pub(crate) fn to_rationals(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| q(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knitting::{knit, tilting_sets};

    fn quiver(src: &str) -> Quiver {
        Quiver::parse(src).unwrap()
    }

    #[test]
    fn pairing_evaluates_projectives() {
        let k = quiver("1 -> 2\n1 -> 2\n1 -> 2");
        let alg = BoundAlgebra::path_algebra(&k);
        let m = alg.injective(0);
        for v in 0..2 {
            let mut e = vec![q(0); 2];
            e[v] = q(1);
            assert_eq!(pairing(&e, &to_rationals(&m.dim_vector())).unwrap(), q(m.dims()[v] as i64));
        }
        assert!(pairing(&[q(1)], &[q(1), q(2)]).is_err());
        assert_eq!(euler_form(&k, &[1, 1], &[1, 1]), -1);
    }

    #[test]
    fn g_vectors_of_projectives_and_shifts() {
        let alg = BoundAlgebra::path_algebra(&quiver("1 -> 2"));
        assert_eq!(g_vector(&alg, &alg.projective(0), &[0, 0]), vec![1, 0]);
        assert_eq!(g_vector(&alg, &Module::zero(&alg), &[0, 1]), vec![0, -1]);
        // S(1) = coker(P(2) -> P(1))
        assert_eq!(g_vector(&alg, &alg.simple(0), &[0, 0]), vec![1, -1]);
        assert_eq!(g_vector_hereditary(alg.quiver(), &[1, 0]), vec![1, -1]);
    }

    #[test]
    fn free_module_transfer_is_identity() {
        let k = quiver("1 -> 2\n2 -> 3");
        let alg = BoundAlgebra::path_algebra(&k);
        let data = transfer(&alg, &alg.free_module()).unwrap();
        assert!(data.identity_holds());
        let id: Vec<Vec<i64>> = (0..3).map(|i| (0..3).map(|j| i64::from(i == j)).collect()).collect();
        assert_eq!(data.hat, id);
        assert_eq!(data.to_b, id);
    }

    #[test]
    fn transfer_checks_pass_on_kronecker_window() {
        let c = knit(&quiver("1 -> 2\n1 -> 2"), 4).unwrap();
        for t in tilting_sets(&c) {
            assert!(check_transfer(&c, &t).unwrap().passed());
        }
    }
}
