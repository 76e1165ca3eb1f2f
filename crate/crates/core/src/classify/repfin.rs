use std::collections::HashSet;

use super::{Answer, Certificate, ClassifyError, Verdict};
use crate::frames::{match_loupias, LoupiasFrame};
use crate::poset::{bits, ContractionStep, Poset, PosetError};

/// Smallest frame size; anything smaller is representation-finite.
const MIN_FRAME: usize = 4;

struct Reduction {
    steps: Vec<ContractionStep>,
    frame: &'static LoupiasFrame,
}

/// Memoized search over deletions and cover contractions.
///
/// Finite canonical forms are remembered across calls, so one search object can serve a
/// whole corpus.
pub struct RepFiniteSearch {
    cap: usize,
    finite: HashSet<String>,
    states: usize,
}

impl RepFiniteSearch {
    pub fn new(cap: usize) -> Self {
        RepFiniteSearch { cap, finite: HashSet::new(), states: 0 }
    }

    /// Number of distinct posets expanded so far.
    pub fn states(&self) -> usize {
        self.states
    }

    pub fn decide(&mut self, p: &Poset) -> Result<Verdict, ClassifyError> {
        let found = if p.len() > self.cap { self.descend(p) } else { self.infinite(p) };
        log::debug!("rep-finite search on {} elements visited {} states", p.len(), self.states);
        match found {
            Some(r) => Ok(Verdict::new(
                "rep_finite",
                Answer::No,
                Certificate::Reduction { steps: r.steps, frame: r.frame.id.clone(), euclidean: r.frame.euclidean.to_string() },
            )),
            None if p.len() > self.cap => Err(ClassifyError::SizeCapExceeded { size: p.len(), cap: self.cap }),
            None => Ok(Verdict::new("rep_finite", Answer::Yes, Certificate::Exhausted { states: self.states })),
        }
    }

    /// Deletion-only descent to the cap, then the full search. Can only prove infiniteness.
    fn descend(&mut self, p: &Poset) -> Option<Reduction> {
        let mut seen = HashSet::new();
        self.descend_inner(p, &mut seen)
    }

    fn descend_inner(&mut self, p: &Poset, seen: &mut HashSet<String>) -> Option<Reduction> {
        if p.len() <= self.cap {
            return self.infinite(p);
        }
        if !seen.insert(p.canonical_form()) {
            return None;
        }
        for i in (0..p.len()).rev() {
            if let Some(mut r) = self.descend_inner(&p.delete(i), seen) {
                r.steps.insert(0, p.delete_step(i));
                return Some(r);
            }
        }
        None
    }

    fn infinite(&mut self, p: &Poset) -> Option<Reduction> {
        if p.len() < MIN_FRAME {
            return None;
        }
        let key = p.canonical_form();
        if self.finite.contains(&key) {
            return None;
        }
        self.states += 1;
        if let Some(frame) = match_loupias(p) {
            return Some(Reduction { steps: Vec::new(), frame });
        }
        let comps = p.components();
        if comps.len() > 1 {
            for &c in &comps {
                if let Some(mut r) = self.infinite(&p.induced(c)) {
                    let outside: Vec<ContractionStep> = bits(p.all() & !c).map(|i| p.delete_step(i)).collect();
                    r.steps.splice(0..0, outside);
                    return Some(r);
                }
            }
        } else {
            for i in 0..p.len() {
                if let Some(mut r) = self.infinite(&p.delete(i)) {
                    r.steps.insert(0, p.delete_step(i));
                    return Some(r);
                }
            }
            for (x, y) in p.covers() {
                let contracted = p.contract_cover(x, y).expect("cover pairs contract");
                if let Some(mut r) = self.infinite(&contracted) {
                    r.steps.insert(0, p.contract_step(x, y));
                    return Some(r);
                }
            }
        }
        self.finite.insert(key);
        None
    }
}

pub fn decide_rep_finite(p: &Poset, cap: usize) -> Result<Verdict, ClassifyError> {
    RepFiniteSearch::new(cap).decide(p)
}

/// Apply `steps` to `p` and report whether the result is an orientation of frame `frame`.
pub fn replay_reduction(p: &Poset, steps: &[ContractionStep], frame: &str) -> Result<bool, PosetError> {
    let mut cur = p.clone();
    for s in steps {
        cur = cur.apply(s)?;
    }
    Ok(crate::frames::loupias_frame(frame)?.matches(&cur))
}

pub(super) fn tau_from_rep(rep: &Verdict) -> Verdict {
    let text = match &rep.certificate {
        Certificate::Reduction { frame, euclidean, .. } => {
            format!("infinitely many τ-rigid modules: frame {frame} carries a tame concealed algebra of type {euclidean}")
        }
        _ => "τ-tilting finiteness agrees with representation-finiteness for incidence algebras".to_string(),
    };
    Verdict {
        question: "tau_tilting_finite".into(),
        answer: rep.answer,
        certificate: Certificate::Derived { from: text, inner: Box::new(rep.certificate.clone()) },
        budget_flags: rep.budget_flags.clone(),
    }
}

pub fn decide_tau_tilting_finite(p: &Poset, cap: usize) -> Result<Verdict, ClassifyError> {
    Ok(tau_from_rep(&decide_rep_finite(p, cap)?))
}

/// Representation-infinite, while every single deletion and cover contraction is finite.
pub fn minimality_check(p: &Poset, cap: usize) -> Result<Verdict, ClassifyError> {
    if p.len() > cap {
        return Err(ClassifyError::SizeCapExceeded { size: p.len(), cap });
    }
    let mut search = RepFiniteSearch::new(cap);
    if search.infinite(p).is_none() {
        return Ok(Verdict::note("minimal", Answer::No, "representation-finite"));
    }
    let mut moves: Vec<(ContractionStep, Poset)> = (0..p.len()).map(|i| (p.delete_step(i), p.delete(i))).collect();
    for (x, y) in p.covers() {
        moves.push((p.contract_step(x, y), p.contract_cover(x, y).expect("cover pairs contract")));
    }
    let reductions = moves.len();
    for (step, q) in moves {
        if let Some(r) = search.infinite(&q) {
            let mut steps = vec![step];
            steps.extend(r.steps);
            return Ok(Verdict::new("minimal", Answer::No, Certificate::Minimal { reductions, infinite: Some(steps) }));
        }
    }
    Ok(Verdict::new("minimal", Answer::Yes, Certificate::Minimal { reductions, infinite: None }))
}
