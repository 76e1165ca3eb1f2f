use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{check_transfer, euler_form, g_vector_hereditary, pairing, to_rationals, GrothendieckError};
use crate::concealed::{end_algebra, hom_functor};
use crate::knitting::{knit, KnittedComponent};
use crate::linalg::{q, Matrix, Rational};
use crate::linrep::{is_indecomposable, BoundAlgebra, Module};
use crate::quiver::{is_hyperbolic, negative_cone_contains, Quiver};

/// Outcome of a budgeted wall membership test `M ∈ Θ_θ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WallCheck {
    pub passed: bool,
    pub theta_of_module: String,
    /// Dimension vector of a submodule `U` with `θ(U) > 0`, so `θ(M/U) < 0`.
    pub violating_submodule: Option<Vec<i64>>,
    pub submodules_checked: usize,
    /// Candidate generator subsets were cut off by the budget.
    pub budget_exhausted: bool,
}

fn candidate_vectors(alg: &BoundAlgebra, m: &Module) -> Vec<(usize, Vec<Rational>)> {
    let mut out: Vec<(usize, Vec<Rational>)> = Vec::new();
    let push = |v: usize, x: Vec<Rational>, out: &mut Vec<(usize, Vec<Rational>)>| {
        if x.iter().any(|c| !c.is_zero()) && !out.iter().any(|(w, y)| *w == v && *y == x) {
            out.push((v, x));
        }
    };
    for v in 0..alg.len() {
        let d = m.dims()[v];
        if d == 0 {
            continue;
        }
        for k in 0..d {
            push(v, (0..d).map(|i| q(i64::from(i == k))).collect(), &mut out);
        }
        push(v, vec![q(1); d], &mut out);
        let mut outgoing = Matrix::zeros(0, d);
        for (a, &(s, _)) in alg.quiver().arrows().iter().enumerate() {
            if s == v {
                let map = &m.maps()[a];
                for x in map.nullspace().columns() {
                    push(v, x, &mut out);
                }
                outgoing = outgoing.vstack(map);
            }
        }
        for x in outgoing.nullspace().columns() {
            push(v, x, &mut out);
        }
    }
    out
}

/// `θ(M) = 0` and `θ(U) <= 0` for submodules `U` generated by small sets of candidate
/// vectors. A violation is exact; a pass is only as strong as the budget.
pub fn wall_check(alg: &BoundAlgebra, theta: &[Rational], m: &Module, budget: usize) -> Result<WallCheck, GrothendieckError> {
    let value = pairing(theta, &to_rationals(&m.dim_vector()))?;
    let mut report = WallCheck {
        passed: false,
        theta_of_module: value.to_string(),
        violating_submodule: None,
        submodules_checked: 0,
        budget_exhausted: false,
    };
    if !value.is_zero() {
        return Ok(report);
    }
    let cands = candidate_vectors(alg, m);
    let mut subsets: Vec<Vec<usize>> = (0..cands.len()).map(|i| vec![i]).collect();
    let mut next = 0;
    while next < subsets.len() {
        if report.submodules_checked >= budget {
            report.budget_exhausted = true;
            break;
        }
        let set = subsets[next].clone();
        next += 1;
        let gens: Vec<(usize, Vec<Rational>)> = set.iter().map(|&i| cands[i].clone()).collect();
        let dims: Vec<i64> = m.generated_basis(alg, &gens).iter().map(|b| b.cols() as i64).collect();
        report.submodules_checked += 1;
        if pairing(theta, &to_rationals(&dims))? > Rational::zero() {
            report.violating_submodule = Some(dims);
            return Ok(report);
        }
        if set.len() < 3 {
            let last = *set.last().expect("nonempty subset");
            for j in last + 1..cands.len() {
                subsets.push([set.clone(), vec![j]].concat());
            }
        }
    }
    report.passed = true;
    Ok(report)
}

/// The first `count` vectors of the lattice box `{1..=bound}^n` inside the negative
/// cone, by increasing 1-norm and then lexicographically.
pub fn negative_cone_samples(quiver: &Quiver, count: usize, bound: i64) -> Vec<Vec<i64>> {
    let n = quiver.len();
    let mut all: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..n {
        all = all.into_iter().flat_map(|v| (1..=bound).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    all.retain(|x| negative_cone_contains(quiver, x));
    all.sort_by_key(|v| (v.iter().sum::<i64>(), v.clone()));
    all.truncate(count);
    all
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConeReport {
    pub cone_vector: Vec<i64>,
    /// `(node label, θ(N))` for every knitted postprojective.
    pub values: Vec<(String, i64)>,
    pub all_negative: bool,
}

fn require_hyperbolic_cone(quiver: &Quiver, x: &[i64]) -> Result<(), GrothendieckError> {
    if !is_hyperbolic(quiver)? {
        return Err(GrothendieckError::NotHyperbolic);
    }
    if !negative_cone_contains(quiver, x) {
        return Err(GrothendieckError::NotInNegativeCone);
    }
    Ok(())
}

fn cone_values(c: &KnittedComponent, x: &[i64]) -> ConeReport {
    let values: Vec<(String, i64)> =
        (0..c.nodes().len()).map(|k| (c.label(k), euler_form(c.quiver(), x, c.dims(k)))).collect();
    let all_negative = values.iter().all(|(_, v)| *v < 0);
    ConeReport { cone_vector: x.to_vec(), values, all_negative }
}

/// `θ = ⟨x, -⟩` evaluated on every postprojective up to shift `window`.
pub fn negative_cone_vs_postprojectives(quiver: &Quiver, x: &[i64], window: usize) -> Result<ConeReport, GrothendieckError> {
    require_hyperbolic_cone(quiver, x)?;
    Ok(cone_values(&knit(quiver, window)?, x))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampleReport {
    pub cone_vector: Vec<i64>,
    pub theta: Vec<i64>,
    pub theta_b: Vec<i64>,
    pub postprojectives_negative: bool,
    pub transfer_identity: bool,
    /// Dimension vector of the generic module placed on the wall, if one was built.
    pub wall_module: Option<Vec<i64>>,
    pub wall_h: Option<WallCheck>,
    pub wall_b: Option<WallCheck>,
    /// Why the wall step was skipped, when it was.
    pub skipped: Option<String>,
}

impl SampleReport {
    pub fn passed(&self) -> bool {
        let wall = |w: &Option<WallCheck>| w.as_ref().is_none_or(|w| w.passed);
        self.postprojectives_negative && self.transfer_identity && wall(&self.wall_h) && wall(&self.wall_b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NotGTameReport {
    pub tilting: Vec<String>,
    pub window: usize,
    pub samples: Vec<SampleReport>,
    pub passed: bool,
    pub budget_limited: bool,
}

/// Smallest positive vector (1-norm, then lexicographic) in the kernel of `theta`.
fn wall_dimension_vector(theta: &[i64], bound: i64) -> Option<Vec<i64>> {
    let n = theta.len();
    let mut all: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..n {
        all = all.into_iter().flat_map(|v| (0..=bound).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    all.retain(|d| d.iter().any(|&x| x > 0) && theta.iter().zip(d).map(|(a, b)| a * b).sum::<i64>() == 0);
    all.into_iter().min_by_key(|v| (v.iter().sum::<i64>(), v.clone()))
}

/// A module with random small integer maps, drawn from a fixed seed.
pub(crate) fn generic_module(alg: &BoundAlgebra, dims: &[i64], seed: u64) -> Module {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d: Vec<usize> = dims.iter().map(|&x| x as usize).collect();
    let maps = alg
        .quiver()
        .arrows()
        .iter()
        .map(|&(s, t)| Matrix::from_fn(d[t], d[s], |_, _| q(rng.gen_range(-3..=3))))
        .collect();
    Module::new(alg, d, maps).expect("path algebra has no relations")
}

const WALL_MODULE_CAP: i64 = 12;
const EXPLICIT_TILTING_CAP: i64 = 24;

/// Checks, for each sample `x` of the negative cone and `θ = ⟨x, -⟩`: negativity on
/// the postprojectives of the window, the transfer identity for the tilting node set
/// `tilting`, and membership of a generic indecomposable module `M` on the wall of `θ`
/// over `H`, and of `Hom(T, M)` on the wall of `θ_B` over `End(T)` when the summands are
/// small enough to build explicitly.
pub fn verify_notgtame(
    quiver: &Quiver,
    tilting: &[(usize, usize)],
    samples: &[Vec<i64>],
    window: usize,
    budget: usize,
) -> Result<NotGTameReport, GrothendieckError> {
    if !is_hyperbolic(quiver)? {
        return Err(GrothendieckError::NotHyperbolic);
    }
    let c = knit(quiver, window)?;
    let tilting: Vec<usize> = tilting.iter().map(|&(v, r)| c.node(v, r)).collect::<Result<_, _>>()?;
    let transfer = check_transfer(&c, &tilting)?;
    let dims: Vec<Vec<i64>> = tilting.iter().map(|&k| c.dims(k).to_vec()).collect();
    let data = super::transfer_from_dims(quiver, &dims)?;
    let alg = BoundAlgebra::path_algebra(quiver);
    let small = dims.iter().flatten().sum::<i64>() <= EXPLICIT_TILTING_CAP;
    let explicit = if small {
        let summands: Vec<Module> = tilting.iter().map(|&k| c.explicit_module(&alg, k)).collect();
        Some(end_algebra(&alg, &summands).map_err(|_| GrothendieckError::NotTilting)?)
    } else {
        None
    };
    let mut out = Vec::new();
    let mut budget_limited = false;
    for x in samples {
        require_hyperbolic_cone(quiver, x)?;
        let theta = g_vector_hereditary(quiver, x);
        let theta_b = data.theta_b(&theta);
        let mut sample = SampleReport {
            cone_vector: x.clone(),
            theta: theta.clone(),
            theta_b: theta_b.clone(),
            postprojectives_negative: cone_values(&c, x).all_negative,
            transfer_identity: transfer.identity && transfer.projectives_to_units,
            wall_module: None,
            wall_h: None,
            wall_b: None,
            skipped: None,
        };
        let Some(d) = wall_dimension_vector(&theta, WALL_MODULE_CAP) else {
            sample.skipped = Some("no wall dimension vector in the search box".into());
            out.push(sample);
            continue;
        };
        let m = generic_module(&alg, &d, 0);
        if !is_indecomposable(&alg, &m)? {
            sample.skipped = Some("generic module is decomposable".into());
            out.push(sample);
            continue;
        }
        let wall_h = wall_check(&alg, &to_rationals(&theta), &m, budget)?;
        budget_limited |= wall_h.budget_exhausted;
        sample.wall_h = Some(wall_h);
        match &explicit {
            Some(end) => {
                let hm = hom_functor(&alg, end, &m).map_err(|_| GrothendieckError::NotTilting)?;
                let wall_b = wall_check(end.algebra(), &to_rationals(&theta_b), &hm, budget)?;
                budget_limited |= wall_b.budget_exhausted;
                sample.wall_b = Some(wall_b);
            }
            None => sample.skipped = Some("tilting summands too large for the explicit endomorphism algebra".into()),
        }
        sample.wall_module = Some(d);
        out.push(sample);
    }
    let passed = out.iter().all(SampleReport::passed);
    Ok(NotGTameReport {
        tilting: tilting.iter().map(|&k| c.label(k)).collect(),
        window,
        samples: out,
        passed,
        budget_limited,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> Quiver {
        Quiver::parse("1 -> 2\n1 -> 2\n1 -> 2").unwrap()
    }

    #[test]
    fn zero_functional_is_always_a_wall() {
        let alg = BoundAlgebra::path_algebra(&k3());
        let m = generic_module(&alg, &[2, 3], 1);
        assert!(wall_check(&alg, &[q(0), q(0)], &m, 50).unwrap().passed);
        let s = alg.simple(0);
        assert!(!wall_check(&alg, &[q(1), q(-3)], &s, 50).unwrap().passed);
    }

    #[test]
    fn degenerate_module_is_refuted_by_a_submodule() {
        let alg = BoundAlgebra::path_algebra(&k3());
        // all three maps kill the first basis vector at vertex 1
        let mut m = generic_module(&alg, &[2, 1], 0);
        let maps: Vec<Matrix> = (0..3).map(|k| Matrix::from_i64(&[vec![0, k + 1]])).collect();
        m = Module::new(&alg, m.dims().to_vec(), maps).unwrap();
        let w = wall_check(&alg, &[q(1), q(-2)], &m, 50).unwrap();
        assert!(!w.passed);
        assert_eq!(w.violating_submodule, Some(vec![1, 0]));
    }

    #[test]
    fn cone_errors() {
        assert_eq!(negative_cone_vs_postprojectives(&k3(), &[1, 0], 2), Err(GrothendieckError::NotInNegativeCone));
        let kron = Quiver::parse("1 -> 2\n1 -> 2").unwrap();
        assert_eq!(negative_cone_vs_postprojectives(&kron, &[1, 1], 2), Err(GrothendieckError::NotHyperbolic));
        let r = negative_cone_vs_postprojectives(&k3(), &[1, 1], 4).unwrap();
        assert!(r.all_negative);
        assert_eq!(negative_cone_samples(&k3(), 2, 5), vec![vec![1, 1], vec![1, 2]]);
    }

    #[test]
    fn k3_free_tilting_passes_every_step() {
        let free = [(0, 0), (1, 0)];
        let r = verify_notgtame(&k3(), &free, &[vec![1, 1]], 4, 200).unwrap();
        let s = &r.samples[0];
        assert_eq!(s.theta, vec![1, -2]);
        assert_eq!(s.wall_module, Some(vec![2, 1]));
        assert!(r.passed, "{r:?}");
        assert!(s.wall_b.as_ref().unwrap().passed);
    }
}
