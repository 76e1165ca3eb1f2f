//! Verdicts on incidence algebras of finite posets.
//!
//! Every decision returns a [`Verdict`] carrying a machine-checkable certificate and the
//! list of budgets that limited the answer, if any.

mod gldim;
mod repfin;
mod tame;
mod topology;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::concealed::ConcealednessCertificate;
use crate::poset::{ContractionStep, Poset};

pub use gldim::gldim_le_2;
pub use repfin::{decide_rep_finite, decide_tau_tilting_finite, minimality_check, replay_reduction, RepFiniteSearch};
pub use tame::{decide_g_tame, decide_tame, hereditary_wild_witness};
pub use topology::{homology_h1, simply_connected, H1};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("poset has {size} elements, search cap is {cap}")]
    SizeCapExceeded { size: usize, cap: usize },
    #[error("poset is not connected")]
    NotConnected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// Replaying `steps` from the input yields an orientation of `frame`.
    Reduction { steps: Vec<ContractionStep>, frame: String, euclidean: String },
    /// Every reachable reduction was visited without meeting a frame.
    Exhausted { states: usize },
    UniqueExtremum { element: String, maximum: bool },
    Homology { betti: usize, torsion: Vec<String> },
    TrivialGroup { generators: usize, relations: usize },
    /// A subposet isomorphic to `pattern`.
    Pattern { pattern: String, members: Vec<String> },
    GlobalDimension { iz: bool, computed: usize },
    /// Convex subposet whose Hasse quiver is a wild tree or graph without relations.
    WildHereditary { members: Vec<String>, frame: Option<String> },
    WildConcealed { members: Vec<String>, frame: String, certificate: ConcealednessCertificate },
    /// Deletions and contractions that all stay on the finite side.
    Minimal { reductions: usize, infinite: Option<Vec<ContractionStep>> },
    Derived { from: String, inner: Box<Certificate> },
    Note { text: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub question: String,
    pub answer: Answer,
    pub certificate: Certificate,
    pub budget_flags: Vec<String>,
}

impl Verdict {
    fn new(question: &str, answer: Answer, certificate: Certificate) -> Self {
        Verdict { question: question.to_string(), answer, certificate, budget_flags: Vec::new() }
    }

    fn note(question: &str, answer: Answer, text: impl Into<String>) -> Self {
        Self::new(question, answer, Certificate::Note { text: text.into() })
    }

    fn flagged(mut self, flags: Vec<String>) -> Self {
        self.budget_flags.extend(flags);
        self
    }
}

/// Search limits shared by all decisions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyConfig {
    /// Largest poset searched exhaustively for reductions.
    pub cap: usize,
    /// Knitting window for concealedness checks.
    pub window: usize,
    /// Maximum number of convex subposets handed to the concealedness search.
    pub concealed_budget: usize,
    pub orientation_cap: usize,
    /// Largest poset whose convex subsets are enumerated.
    pub subset_limit: usize,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig { cap: 14, window: 6, concealed_budget: 32, orientation_cap: 64, subset_limit: 20 }
    }
}

/// The full verdict bundle for one poset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Analysis {
    pub rep_finite: Verdict,
    pub tau_tilting_finite: Verdict,
    pub simply_connected: Verdict,
    pub gldim_le_2: Verdict,
    pub tame: Verdict,
    pub g_tame: Verdict,
}

impl Analysis {
    pub fn verdicts(&self) -> [&Verdict; 6] {
        [&self.rep_finite, &self.tau_tilting_finite, &self.simply_connected, &self.gldim_le_2, &self.tame, &self.g_tame]
    }

    pub fn any_unknown(&self) -> bool {
        self.verdicts().iter().any(|v| v.answer == Answer::Unknown)
    }
}

pub fn analyze(p: &Poset, cfg: &ClassifyConfig) -> Result<Analysis, ClassifyError> {
    let mut search = RepFiniteSearch::new(cfg.cap);
    let rep_finite = search.decide(p)?;
    let tau_tilting_finite = repfin::tau_from_rep(&rep_finite);
    let simply_connected = match simply_connected(p) {
        Ok(v) => v,
        Err(ClassifyError::NotConnected) => Verdict::note("simply_connected", Answer::No, "poset is not connected"),
        Err(e) => return Err(e),
    };
    let gldim = gldim_le_2(p);
    let tame = tame::decide_tame_with(p, cfg, &rep_finite, &simply_connected);
    let g_tame = tame::decide_g_tame_with(p, cfg, &rep_finite, &simply_connected, &tame);
    Ok(Analysis { rep_finite, tau_tilting_finite, simply_connected, gldim_le_2: gldim, tame, g_tame })
}

fn names_of(p: &Poset, mask: u64) -> Vec<String> {
    crate::poset::bits(mask).map(|i| p.name(i).to_string()).collect()
}
