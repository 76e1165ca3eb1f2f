use super::{names_of, Answer, Certificate, ClassifyConfig, ClassifyError, Verdict};
use crate::concealed::certify_concealed;
use crate::frames::les_frames;
use crate::linalg::{smith_invariants, Matrix};
use crate::linrep::BoundAlgebra;
use crate::poset::families::cell_diamond;
use crate::poset::{bits, find_subposet_isomorphic, Poset};
use crate::quiver::{classify_graph, inertia, Category, Quiver};

/// Masks with exactly `k` of the low `n` bits set, in increasing order.
fn masks_of_size(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = if n == 64 { u64::MAX } else { 1u64 << n };
    let mut cur = if k == 0 || k > n { None } else { Some((1u64 << k) - 1) };
    std::iter::from_fn(move || {
        let m = cur?;
        // Gosper's hack
        let c = m & m.wrapping_neg();
        let r = m + c;
        let next = (((r ^ m) >> 2) / c) | r;
        cur = (r != 0 && next < limit).then_some(next);
        Some(m)
    })
}

/// Connected convex subsets of size at least `min`, smallest first.
fn convex_pieces(p: &Poset, min: usize) -> impl Iterator<Item = u64> + '_ {
    let n = p.len();
    (min..=n).flat_map(move |k| masks_of_size(n, k)).filter(move |&m| p.is_convex(m) && p.components_of(m).len() == 1)
}

/// Every interval inside `mask` is a chain, so the incidence algebra has no relations.
fn is_hereditary(p: &Poset, mask: u64) -> bool {
    bits(mask).all(|x| {
        bits(p.up(x) & mask).all(|y| {
            let interval = p.up(x) & p.down(y);
            bits(interval).all(|a| bits(interval).all(|b| p.comparable(a, b)))
        })
    })
}

fn hasse_quiver(p: &Poset) -> Quiver {
    let arrows: Vec<(String, String)> = p.cover_names();
    Quiver::new(p.names(), &arrows).expect("Hasse quivers are acyclic")
}

fn multigraph(q: &Quiver) -> Vec<Vec<u32>> {
    let m = q.multiplicities();
    let n = q.len();
    (0..n).map(|i| (0..n).map(|j| m[i][j] + m[j][i]).collect()).collect()
}

/// Whether two undirected multigraphs are isomorphic.
fn same_graph(a: &[Vec<u32>], b: &[Vec<u32>]) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    let degree = |g: &[Vec<u32>], i: usize| g[i].iter().sum::<u32>();
    let mut da: Vec<u32> = (0..n).map(|i| degree(a, i)).collect();
    let mut db: Vec<u32> = (0..n).map(|i| degree(b, i)).collect();
    let (ra, rb) = (da.clone(), db.clone());
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    fn extend(a: &[Vec<u32>], b: &[Vec<u32>], ra: &[u32], rb: &[u32], map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let i = map.len();
        if i == a.len() {
            return true;
        }
        for j in 0..b.len() {
            if used[j] || ra[i] != rb[j] || a[i][i] != b[j][j] {
                continue;
            }
            if map.iter().enumerate().all(|(k, &mk)| a[i][k] == b[j][mk]) {
                used[j] = true;
                map.push(j);
                if extend(a, b, ra, rb, map, used) {
                    return true;
                }
                map.pop();
                used[j] = false;
            }
        }
        false
    }
    extend(a, b, &ra, &rb, &mut Vec::new(), &mut vec![false; n])
}

/// Smallest connected convex subposet whose incidence algebra is a wild path algebra,
/// with the wild frame whose graph it realizes, if any.
pub fn hereditary_wild_witness(p: &Poset) -> Option<(u64, Option<String>)> {
    convex_pieces(p, 4).filter(|&m| is_hereditary(p, m)).find_map(|m| {
        let q = hasse_quiver(&p.induced(m));
        if classify_graph(&q).ok()? != Category::Wild {
            return None;
        }
        let g = multigraph(&q);
        let frame = les_frames().iter().find(|f| same_graph(&g, &multigraph(&f.quiver))).map(|f| f.id.clone());
        Some((m, frame))
    })
}

/// Symmetrized Euler form of the incidence algebra: `M + M^T` with `M` the inverse Cartan
/// matrix.
fn euler_gram(alg: &BoundAlgebra) -> Vec<Vec<i64>> {
    let c = Matrix::from_i64(&alg.cartan());
    let inv = c.inverse().expect("unitriangular").to_i64().expect("integral inverse");
    let n = inv.len();
    (0..n).map(|i| (0..n).map(|j| inv[i][j] + inv[j][i]).collect()).collect()
}

struct ConcealedHit {
    members: u64,
    frame: String,
    certificate: crate::concealed::ConcealednessCertificate,
}

/// Convex subposets whose Euler form matches a wild frame quiver, handed to the
/// concealedness search. Returns the hit and whether the candidate budget ran out.
fn wild_concealed_search(p: &Poset, cfg: &ClassifyConfig) -> (Option<ConcealedHit>, bool) {
    let frames: Vec<_> = les_frames()
        .iter()
        .map(|f| {
            let g = f.quiver.gram();
            (f, inertia(&g), smith_invariants(&g))
        })
        .collect();
    let sizes: Vec<usize> = frames.iter().map(|(f, ..)| f.quiver.len()).collect();
    let (lo, hi) = (*sizes.iter().min().unwrap_or(&0), *sizes.iter().max().unwrap_or(&0));
    let mut spent = 0;
    for m in convex_pieces(p, lo) {
        let k = m.count_ones() as usize;
        if k > hi {
            break;
        }
        if is_hereditary(p, m) {
            continue;
        }
        let alg = BoundAlgebra::incidence(&p.induced(m));
        let g = euler_gram(&alg);
        let (ine, snf) = (inertia(&g), smith_invariants(&g));
        let types: Vec<(String, Quiver)> = frames
            .iter()
            .filter(|(f, fi, fs)| f.quiver.len() == k && *fi == ine && *fs == snf)
            .map(|(f, ..)| (f.id.clone(), f.quiver.clone()))
            .collect();
        if types.is_empty() {
            continue;
        }
        if spent == cfg.concealed_budget {
            return (None, true);
        }
        spent += 1;
        let Ok(search) = certify_concealed(&alg, &types, cfg.window, cfg.orientation_cap) else { continue };
        if let Some(c) = search.certificate {
            return (Some(ConcealedHit { members: m, frame: c.type_name.clone(), certificate: c }), false);
        }
    }
    (None, false)
}

fn derived(question: &str, from: &str, source: &Verdict) -> Verdict {
    Verdict {
        question: question.to_string(),
        answer: source.answer,
        certificate: Certificate::Derived { from: from.to_string(), inner: Box::new(source.certificate.clone()) },
        budget_flags: source.budget_flags.clone(),
    }
}

pub(super) fn decide_tame_with(p: &Poset, cfg: &ClassifyConfig, rep: &Verdict, sc: &Verdict) -> Verdict {
    const Q: &str = "tame";
    if rep.answer == Answer::Yes {
        return derived(Q, "representation-finite", rep);
    }
    if !p.is_connected() {
        let parts: Vec<Verdict> = p
            .components()
            .into_iter()
            .map(|c| decide_tame(&p.induced(c), cfg).unwrap_or_else(|e| Verdict::note(Q, Answer::Unknown, e.to_string())))
            .collect();
        if let Some(w) = parts.iter().find(|v| v.answer == Answer::No) {
            return derived(Q, "a connected component is wild", w);
        }
        let flags = parts.iter().flat_map(|v| v.budget_flags.clone()).collect();
        let answer = if parts.iter().all(|v| v.answer == Answer::Yes) { Answer::Yes } else { Answer::Unknown };
        return Verdict::note(Q, answer, "decided componentwise").flagged(flags);
    }
    if p.len() > cfg.subset_limit {
        return Verdict::note(Q, Answer::Unknown, "too many elements for convex subposet enumeration")
            .flagged(vec![format!("subset-limit={}", cfg.subset_limit)]);
    }
    if let Some((m, frame)) = hereditary_wild_witness(p) {
        return Verdict::new(Q, Answer::No, Certificate::WildHereditary { members: names_of(p, m), frame });
    }
    if sc.answer != Answer::Yes {
        return Verdict::note(Q, Answer::Unknown, "not known to be simply connected; covering theory out of scope");
    }
    let (hit, exhausted) = wild_concealed_search(p, cfg);
    if let Some(h) = hit {
        return Verdict::new(
            Q,
            Answer::No,
            Certificate::WildConcealed { members: names_of(p, h.members), frame: h.frame, certificate: h.certificate },
        );
    }
    let mut flags = vec![format!("concealed-window={}", cfg.window), format!("orientation-cap={}", cfg.orientation_cap)];
    if exhausted {
        flags.push(format!("concealed-budget={}", cfg.concealed_budget));
    }
    Verdict::note(Q, Answer::Yes, "no wild concealed convex subposet found within budget").flagged(flags)
}

pub(super) fn decide_g_tame_with(p: &Poset, cfg: &ClassifyConfig, rep: &Verdict, sc: &Verdict, tame: &Verdict) -> Verdict {
    const Q: &str = "g_tame";
    if rep.answer == Answer::Yes {
        return derived(Q, "representation-finite, so the g-vector fan is complete", rep);
    }
    if sc.answer == Answer::Yes {
        return derived(Q, "simply connected: g-tame exactly when tame", tame);
    }
    if matches!(tame.certificate, Certificate::WildHereditary { .. }) {
        return derived(Q, "convex wild hereditary subalgebra", tame);
    }
    let n = p.len();
    if n <= cfg.subset_limit {
        for l in 5..=n.saturating_sub(2) / 2 {
            let pattern = cell_diamond(l).expect("l >= 5");
            if let Some(w) = find_subposet_isomorphic(p, &pattern, false) {
                return Verdict::new(
                    Q,
                    Answer::No,
                    Certificate::Pattern { pattern: format!("C{l}-diamond"), members: names_of(p, w.members) },
                );
            }
        }
    }
    Verdict::note(Q, Answer::Unknown, "multiply connected and not decided by the available criteria").flagged(tame.budget_flags.clone())
}

fn inputs(p: &Poset, cfg: &ClassifyConfig) -> Result<(Verdict, Verdict), ClassifyError> {
    let rep = super::decide_rep_finite(p, cfg.cap)?;
    let sc = match super::simply_connected(p) {
        Ok(v) => v,
        Err(ClassifyError::NotConnected) => Verdict::note("simply_connected", Answer::No, "poset is not connected"),
        Err(e) => return Err(e),
    };
    Ok((rep, sc))
}

pub fn decide_tame(p: &Poset, cfg: &ClassifyConfig) -> Result<Verdict, ClassifyError> {
    let (rep, sc) = inputs(p, cfg)?;
    Ok(decide_tame_with(p, cfg, &rep, &sc))
}

pub fn decide_g_tame(p: &Poset, cfg: &ClassifyConfig) -> Result<Verdict, ClassifyError> {
    let (rep, sc) = inputs(p, cfg)?;
    let tame = decide_tame_with(p, cfg, &rep, &sc);
    Ok(decide_g_tame_with(p, cfg, &rep, &sc, &tame))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gosper_enumerates_binomially() {
        assert_eq!(masks_of_size(6, 3).count(), 20);
        assert_eq!(masks_of_size(4, 4).collect::<Vec<_>>(), vec![15]);
    }

    #[test]
    fn diamond_ladder_tameness() {
        let cfg = ClassifyConfig::default();
        for l in 2..=4 {
            let v = decide_tame(&cell_diamond(l).unwrap(), &cfg).unwrap();
            assert_eq!(v.answer, Answer::Yes, "l = {l}: {v:?}");
        }
        let v = decide_tame(&cell_diamond(5).unwrap(), &cfg).unwrap();
        assert_eq!(v.answer, Answer::No);
        let Certificate::WildHereditary { members, frame } = &v.certificate else { panic!("{v:?}") };
        assert_eq!(members.len(), 6);
        assert_eq!(frame.as_deref(), Some("T5"));
        assert_eq!(decide_g_tame(&cell_diamond(5).unwrap(), &cfg).unwrap().answer, Answer::No);
    }

    #[test]
    fn wild_concealed_convex_subposet_is_found() {
        let p = Poset::from_covers(&[
            ("v0", "v1"),
            ("v1", "v2"),
            ("v1", "v5"),
            ("v2", "v6"),
            ("v3", "v5"),
            ("v4", "v5"),
            ("v5", "v6"),
        ])
        .unwrap();
        let v = decide_tame(&p, &ClassifyConfig::default()).unwrap();
        assert_eq!(v.answer, Answer::No);
        let Certificate::WildConcealed { members, frame, .. } = &v.certificate else { panic!("{v:?}") };
        assert_eq!((members.len(), frame.as_str()), (7, "Dtt_5"));
    }

    #[test]
    fn graph_isomorphism_ignores_labels() {
        let a = vec![vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]];
        let b = vec![vec![0, 1, 1], vec![1, 0, 0], vec![1, 0, 0]];
        let c = vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]];
        assert!(same_graph(&a, &b));
        assert!(!same_graph(&a, &c));
    }
}
