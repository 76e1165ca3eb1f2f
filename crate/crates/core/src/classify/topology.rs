//! First homology and fundamental group of the order complex.

use std::collections::HashMap;

use num_traits::One;

use super::{Answer, Certificate, ClassifyError, Verdict};
use crate::linalg::{smith_invariants, Matrix};
use crate::poset::{bits, Poset};

/// Longest relator kept during simplification before giving up.
const MAX_WORD: usize = 400;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H1 {
    pub betti: usize,
    /// Invariant factors above one.
    pub torsion: Vec<String>,
}

impl H1 {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

/// Comparable pairs `(a, b)` with `a < b`, and the 2-chains as edge index triples.
fn skeleton(p: &Poset) -> (Vec<(usize, usize)>, Vec<[usize; 3]>) {
    let mut edges = Vec::new();
    let mut index = HashMap::new();
    for a in 0..p.len() {
        for b in bits(p.up(a)) {
            index.insert((a, b), edges.len());
            edges.push((a, b));
        }
    }
    let mut triangles = Vec::new();
    for &(a, b) in &edges {
        for c in bits(p.up(b)) {
            triangles.push([index[&(a, b)], index[&(b, c)], index[&(a, c)]]);
        }
    }
    (edges, triangles)
}

/// `H_1` of the order complex with integer coefficients.
pub fn homology_h1(p: &Poset) -> H1 {
    let (edges, triangles) = skeleton(p);
    let d1 = Matrix::from_fn(p.len(), edges.len(), |v, e| {
        let (a, b) = edges[e];
        crate::linalg::q(if v == b {
            1
        } else if v == a {
            -1
        } else {
            0
        })
    });
    let mut d2 = vec![vec![0i64; triangles.len()]; edges.len()];
    for (t, &[ab, bc, ac]) in triangles.iter().enumerate() {
        d2[ab][t] += 1;
        d2[bc][t] += 1;
        d2[ac][t] -= 1;
    }
    let invariants = if triangles.is_empty() { Vec::new() } else { smith_invariants(&d2) };
    let rank2 = invariants.len();
    let betti = edges.len() - d1.rank() - rank2;
    let torsion = invariants.iter().filter(|x| !x.is_one()).map(|x| x.to_string()).collect();
    H1 { betti, torsion }
}

type Word = Vec<(usize, i8)>;

fn reduce(w: &mut Word) {
    let mut out: Word = Vec::with_capacity(w.len());
    for &x in w.iter() {
        match out.last() {
            Some(&(g, e)) if g == x.0 && e == -x.1 => {
                out.pop();
            }
            _ => out.push(x),
        }
    }
    // cyclic reduction
    let mut s = 0;
    while out.len() >= 2 * (s + 1) {
        let (a, b) = (out[s], out[out.len() - 1 - s]);
        if a.0 == b.0 && a.1 == -b.1 {
            s += 1;
        } else {
            break;
        }
    }
    *w = out[s..out.len() - s].to_vec();
}

fn inverse(w: &[(usize, i8)]) -> Word {
    w.iter().rev().map(|&(g, e)| (g, -e)).collect()
}

/// Tietze elimination on a presentation; `true` when every generator is eliminated.
fn trivializes(generators: usize, mut relators: Vec<Word>) -> bool {
    let mut alive = vec![true; generators];
    loop {
        relators.iter_mut().for_each(reduce);
        relators.retain(|r| !r.is_empty());
        if alive.iter().all(|a| !a) {
            return true;
        }
        // a generator occurring exactly once in some relator, shortest relator first
        let mut best: Option<(usize, usize, usize)> = None;
        for (ri, r) in relators.iter().enumerate() {
            let mut counts: HashMap<usize, usize> = HashMap::new();
            for &(g, _) in r {
                *counts.entry(g).or_default() += 1;
            }
            if let Some(pos) = r.iter().position(|&(g, _)| counts[&g] == 1) {
                if best.is_none_or(|(_, _, len)| r.len() < len) {
                    best = Some((ri, pos, r.len()));
                }
            }
        }
        let Some((ri, pos, _)) = best else { return false };
        let r = relators.swap_remove(ri);
        let (g, e) = r[pos];
        // r = u g^e v = 1  =>  g^e = u^-1 v^-1
        let mut value: Word = inverse(&r[..pos]);
        value.extend(inverse(&r[pos + 1..]));
        if e < 0 {
            value = inverse(&value);
        }
        alive[g] = false;
        for other in relators.iter_mut() {
            let mut next = Word::with_capacity(other.len());
            for &(h, f) in other.iter() {
                if h == g {
                    if f > 0 {
                        next.extend(value.iter().copied());
                    } else {
                        next.extend(inverse(&value));
                    }
                } else {
                    next.push((h, f));
                }
            }
            if next.len() > MAX_WORD {
                return false;
            }
            *other = next;
        }
    }
}

/// Edge-path group presentation: spanning-tree edges are trivial, every 2-chain
/// `a < b < c` gives `[ab][bc] = [ac]`.
fn fundamental_group_trivial(p: &Poset) -> (bool, usize, usize) {
    let (edges, triangles) = skeleton(p);
    let mut parent: Vec<usize> = (0..p.len()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    let mut generator = vec![None; edges.len()];
    let mut count = 0;
    for (e, &(a, b)) in edges.iter().enumerate() {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            generator[e] = Some(count);
            count += 1;
        } else {
            parent[ra] = rb;
        }
    }
    let relators: Vec<Word> = triangles
        .iter()
        .map(|&[ab, bc, ac]| {
            let mut w = Word::new();
            w.extend(generator[ab].map(|g| (g, 1)));
            w.extend(generator[bc].map(|g| (g, 1)));
            w.extend(generator[ac].map(|g| (g, -1)));
            w
        })
        .collect();
    let n = relators.len();
    (trivializes(count, relators), count, n)
}

pub fn simply_connected(p: &Poset) -> Result<Verdict, ClassifyError> {
    const Q: &str = "simply_connected";
    if !p.is_connected() {
        return Err(ClassifyError::NotConnected);
    }
    for (mask, maximum) in [(p.maximal(), true), (p.minimal(), false)] {
        if mask.count_ones() == 1 {
            let element = p.name(mask.trailing_zeros() as usize).to_string();
            return Ok(Verdict::new(Q, Answer::Yes, Certificate::UniqueExtremum { element, maximum }));
        }
    }
    let h = homology_h1(p);
    if !h.is_zero() {
        return Ok(Verdict::new(Q, Answer::No, Certificate::Homology { betti: h.betti, torsion: h.torsion }));
    }
    let (trivial, generators, relations) = fundamental_group_trivial(p);
    if trivial {
        Ok(Verdict::new(Q, Answer::Yes, Certificate::TrivialGroup { generators, relations }))
    } else {
        Ok(Verdict::note(Q, Answer::Unknown, "H1 vanishes but the presentation did not simplify")
            .flagged(vec![format!("tietze-word-limit={MAX_WORD}")]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::families::{a_tilde_cycle, cell_diamond, figure8};

    fn seven() -> Poset {
        Poset::from_covers(&[
            ("ml", "c"),
            ("ml", "d"),
            ("ml", "xr"),
            ("mr", "xr"),
            ("mr", "xl"),
            ("d", "xl"),
            ("c", "e"),
            ("e", "xl"),
        ])
        .unwrap()
    }

    #[test]
    fn crown_has_one_loop() {
        let p = a_tilde_cycle("+-+-").unwrap();
        assert_eq!(homology_h1(&p), H1 { betti: 1, torsion: vec![] });
        assert_eq!(simply_connected(&p).unwrap().answer, Answer::No);
    }

    #[test]
    fn diamonds_are_simply_connected() {
        for l in 2..=5 {
            assert_eq!(simply_connected(&cell_diamond(l).unwrap()).unwrap().answer, Answer::Yes);
        }
        assert!(homology_h1(&figure8()).is_zero());
    }

    #[test]
    fn seven_element_poset_is_multiply_connected() {
        let v = simply_connected(&seven()).unwrap();
        assert_eq!(v.answer, Answer::No);
        assert_eq!(v.certificate, Certificate::Homology { betti: 1, torsion: vec![] });
    }

    #[test]
    fn tietze_handles_contractible_posets_without_extrema() {
        // two minima and two maxima, all four middle comparabilities filled by a common
        // middle element
        let p = Poset::from_covers(&[("a", "m"), ("b", "m"), ("m", "x"), ("m", "y")]).unwrap();
        let v = simply_connected(&p).unwrap();
        assert_eq!(v.answer, Answer::Yes);
        assert!(matches!(v.certificate, Certificate::TrivialGroup { .. }));
    }

    #[test]
    fn disconnected_is_an_error() {
        let p = Poset::from_parts(&["a", "b"], &[] as &[(&str, &str)]).unwrap();
        assert_eq!(simply_connected(&p), Err(ClassifyError::NotConnected));
    }
}
