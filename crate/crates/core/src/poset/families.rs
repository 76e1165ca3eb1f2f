//! Named poset families.

use super::{Poset, PosetError};
use crate::quiver::Quiver;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Chain(usize),
    CellDiamond(usize),
    Figure8,
    LoupiasFrame(String),
    LesFrame(String),
    /// Cycle poset; `+` at position `i` orients the edge `i -> i+1`, `-` reverses it.
    ATildeCycle(String),
    DTilde(usize),
}

#[derive(Debug, Clone)]
pub enum Generated {
    Poset(Poset),
    Quiver(Quiver),
}

pub fn generate(family: &Family) -> Result<Generated, PosetError> {
    Ok(match family {
        Family::Chain(n) => Generated::Poset(chain(*n)?),
        Family::CellDiamond(l) => Generated::Poset(cell_diamond(*l)?),
        Family::Figure8 => Generated::Poset(figure8()),
        Family::LoupiasFrame(id) => Generated::Poset(crate::frames::loupias_frame(id)?.base_poset()),
        Family::LesFrame(id) => Generated::Quiver(crate::frames::les_frame(id)?.quiver.clone()),
        Family::ATildeCycle(word) => Generated::Poset(a_tilde_cycle(word)?),
        Family::DTilde(n) => Generated::Poset(d_tilde(*n)?),
    })
}

/// Totally ordered set `1 < 2 < ... < n`.
pub fn chain(n: usize) -> Result<Poset, PosetError> {
    if n == 0 || n > super::MAX_ELEMENTS {
        return Err(PosetError::InvalidFamily(format!("chain length {n}")));
    }
    let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let pairs: Vec<(&str, &str)> = names.windows(2).map(|w| (w[0].as_str(), w[1].as_str())).collect();
    Poset::from_parts(&[names[0].as_str()], &pairs)
}

/// `C_l` with a bottom `0` and a top `ω` adjoined. Lower middles `p÷i`, upper middles
/// `p+i`; `p÷i` lies below `p+i` and `p+(i-1)`, cyclically.
pub fn cell_diamond(l: usize) -> Result<Poset, PosetError> {
    if l < 2 || 2 * l + 2 > super::MAX_ELEMENTS {
        return Err(PosetError::InvalidFamily(format!("C_l diamond needs 2 <= l, got {l}")));
    }
    let lo = |i: usize| format!("p÷{i}");
    let hi = |i: usize| format!("p+{i}");
    let mut pairs = Vec::new();
    for i in 1..=l {
        pairs.push(("0".to_string(), lo(i)));
    }
    for i in 1..=l {
        pairs.push((lo(i), hi(i)));
        let prev = if i == 1 { l } else { i - 1 };
        pairs.push((lo(i), hi(prev)));
    }
    for i in 1..=l {
        pairs.push((hi(i), "ω".to_string()));
    }
    Poset::from_covers(&pairs)
}

/// Two diamonds glued at a shared middle element.
pub fn figure8() -> Poset {
    Poset::from_covers(&[
        ("b", "l1"),
        ("b", "r1"),
        ("l1", "m"),
        ("r1", "m"),
        ("m", "l2"),
        ("m", "r2"),
        ("l2", "t"),
        ("r2", "t"),
    ])
    .expect("static shape")
}

pub fn a_tilde_cycle(word: &str) -> Result<Poset, PosetError> {
    let k = word.chars().count();
    if k < 2 || !word.chars().all(|c| c == '+' || c == '-') {
        return Err(PosetError::InvalidFamily(format!("orientation word `{word}`")));
    }
    let name = |i: usize| format!("c{}", i % k);
    let pairs: Vec<(String, String)> = word
        .chars()
        .enumerate()
        .map(|(i, c)| if c == '+' { (name(i), name(i + 1)) } else { (name(i + 1), name(i)) })
        .collect();
    let p = Poset::from_covers(&pairs)?;
    if p.covers().len() != k {
        return Err(PosetError::InvalidFamily(format!("`{word}` does not give a cycle-shaped Hasse diagram")));
    }
    Ok(p)
}

/// A `D~_n` tree poset (`n + 1` elements): two minimal leaves, a chain, two maximal leaves.
pub fn d_tilde(n: usize) -> Result<Poset, PosetError> {
    if n < 4 || n + 1 > super::MAX_ELEMENTS {
        return Err(PosetError::InvalidFamily(format!("D~_n needs n >= 4, got {n}")));
    }
    let mut pairs: Vec<(String, String)> = Vec::new();
    let mid: Vec<String> = (1..=n - 3).map(|i| format!("c{i}")).collect();
    for w in mid.windows(2) {
        pairs.push((w[0].clone(), w[1].clone()));
    }
    let (first, last) = (mid[0].clone(), mid[mid.len() - 1].clone());
    pairs.push(("a1".into(), first.clone()));
    pairs.push(("a2".into(), first));
    pairs.push((last.clone(), "b1".into()));
    pairs.push((last, "b2".into()));
    Poset::from_covers(&pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cell_diamond_shape() {
        let p = cell_diamond(3).unwrap();
        assert_eq!(p.len(), 8);
        assert!(p.has_unique_max() && p.has_unique_min());
        let two = chain(2).unwrap();
        let cube = two.product(&two).unwrap().product(&two).unwrap();
        assert_eq!(p.canonical_form(), cube.canonical_form());
    }

    #[test]
    fn figure8_shape() {
        let p = figure8();
        assert_eq!(p.len(), 7);
        assert_eq!(p.covers().len(), 8);
    }

    #[test]
    fn cycle_words() {
        assert_eq!(a_tilde_cycle("+-+-").unwrap().len(), 4);
        assert!(a_tilde_cycle("++-").is_err());
        assert!(a_tilde_cycle("+++").is_err());
    }

    #[test]
    fn d_tilde_sizes() {
        for n in 4..9 {
            let p = d_tilde(n).unwrap();
            assert_eq!(p.len(), n + 1);
            assert!(p.hasse_is_forest());
        }
    }
}
