use super::{names_of, Answer, Certificate, Verdict};
use crate::linrep::{global_dimension, BoundAlgebra};
use crate::poset::families::{cell_diamond, figure8};
use crate::poset::{find_all_subposets, find_subposet_isomorphic, Poset};

/// First subposet violating the two pattern conditions, as `(pattern, members)`.
pub(crate) fn iz_violation(p: &Poset) -> Option<(String, u64)> {
    for l in 3..=p.len().saturating_sub(2) / 2 {
        let pattern = cell_diamond(l).expect("l >= 3");
        if let Some(w) = find_subposet_isomorphic(p, &pattern, false) {
            return Some((format!("C{l}-diamond"), w.members));
        }
    }
    let small = find_all_subposets(p, &cell_diamond(2).expect("l = 2"), false);
    if small.is_empty() {
        return None;
    }
    let eights = find_all_subposets(p, &figure8(), false);
    small.into_iter().find(|&s| !eights.iter().any(|&e| e & s == s)).map(|s| ("C2-diamond".to_string(), s))
}

/// Global dimension at most two, by the pattern criterion, cross-checked against a direct
/// computation. A disagreement is reported in `budget_flags`.
pub fn gldim_le_2(p: &Poset) -> Verdict {
    const Q: &str = "gldim_le_2";
    let computed = global_dimension(&BoundAlgebra::incidence(p));
    let violation = iz_violation(p);
    let iz = violation.is_none();
    let mut v = match violation {
        Some((pattern, mask)) => Verdict::new(Q, Answer::No, Certificate::Pattern { pattern, members: names_of(p, mask) }),
        None => Verdict::new(Q, Answer::Yes, Certificate::GlobalDimension { iz, computed }),
    };
    if iz != (computed <= 2) {
        v.budget_flags.push(format!("cross-check-mismatch: computed global dimension {computed}"));
    }
    v
}
