use super::{bit, bits, Poset, SubposetWitness};

/// Induced-subposet embedding search. Pattern elements are placed in a connectivity
/// order so each new element is constrained by an already-placed neighbour.
struct Embedder<'a> {
    p: &'a Poset,
    pat: &'a Poset,
    order: Vec<usize>,
    convex_only: bool,
}

impl<'a> Embedder<'a> {
    fn new(p: &'a Poset, pat: &'a Poset, convex_only: bool) -> Self {
        let k = pat.len();
        let mut order = Vec::with_capacity(k);
        let mut placed = 0u64;
        while order.len() < k {
            // prefer elements adjacent to placed ones, then most relations
            let next = (0..k)
                .filter(|&i| placed & bit(i) == 0)
                .max_by_key(|&i| {
                    let adj = ((pat.up(i) | pat.down(i)) & placed).count_ones();
                    let deg = (pat.up(i) | pat.down(i)).count_ones();
                    (adj, deg, std::cmp::Reverse(i))
                })
                .unwrap();
            placed |= bit(next);
            order.push(next);
        }
        Embedder { p, pat, order, convex_only }
    }

    fn candidates(&self, depth: usize, map: &[usize], used: u64) -> u64 {
        let a = self.order[depth];
        let mut cand = self.p.all() & !used;
        for &b in &self.order[..depth] {
            let fb = map[b];
            cand &= if self.pat.lt(a, b) {
                self.p.down(fb)
            } else if self.pat.lt(b, a) {
                self.p.up(fb)
            } else {
                !(self.p.up(fb) | self.p.down(fb))
            };
        }
        let need_up = self.pat.up(a).count_ones();
        let need_down = self.pat.down(a).count_ones();
        for c in bits(cand) {
            if self.p.up(c).count_ones() < need_up || self.p.down(c).count_ones() < need_down {
                cand &= !bit(c);
            }
        }
        cand
    }

    /// Visit embeddings; `visit` returns true to stop.
    fn run(&self, visit: &mut dyn FnMut(&[usize]) -> bool) {
        let k = self.pat.len();
        if k > self.p.len() {
            return;
        }
        let mut map = vec![usize::MAX; k];
        self.rec(0, &mut map, 0, visit);
    }

    fn rec(&self, depth: usize, map: &mut Vec<usize>, used: u64, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if depth == self.order.len() {
            if self.convex_only && !self.p.is_convex(used) {
                return false;
            }
            return visit(map);
        }
        let a = self.order[depth];
        for c in bits(self.candidates(depth, map, used)) {
            map[a] = c;
            if self.rec(depth + 1, map, used | bit(c), visit) {
                return true;
            }
        }
        map[a] = usize::MAX;
        false
    }
}

/// First induced subposet of `p` isomorphic to `pattern`, in lexicographic order of the
/// embedding.
pub fn find_subposet_isomorphic(p: &Poset, pattern: &Poset, convex_only: bool) -> Option<SubposetWitness> {
    embedding(p, pattern, convex_only).map(|m| {
        let members = m.iter().fold(0u64, |acc, &i| acc | bit(i));
        SubposetWitness::new(p, members)
    })
}

/// The embedding itself: `map[i]` is the image of pattern element `i`.
pub fn embedding(p: &Poset, pattern: &Poset, convex_only: bool) -> Option<Vec<usize>> {
    let e = Embedder::new(p, pattern, convex_only);
    let mut found = None;
    e.run(&mut |m| {
        found = Some(m.to_vec());
        true
    });
    found
}

/// Every distinct member set inducing a copy of `pattern`.
pub fn find_all_subposets(p: &Poset, pattern: &Poset, convex_only: bool) -> Vec<u64> {
    let e = Embedder::new(p, pattern, convex_only);
    let mut sets = Vec::new();
    e.run(&mut |m| {
        sets.push(m.iter().fold(0u64, |acc, &i| acc | bit(i)));
        false
    });
    sets.sort_unstable();
    sets.dedup();
    sets
}

/// An isomorphism `a -> b` as an index map, if one exists.
pub fn isomorphism(a: &Poset, b: &Poset) -> Option<Vec<usize>> {
    if a.len() != b.len() || a.covers().len() != b.covers().len() {
        return None;
    }
    embedding(b, a, false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_has_no_figure_eight() {
        let chain = Poset::from_covers(&[("1", "2"), ("2", "3"), ("3", "4")]).unwrap();
        let eight = crate::poset::families::figure8();
        assert!(find_subposet_isomorphic(&chain, &eight, false).is_none());
    }

    #[test]
    fn three_chain_in_cube_is_never_convex() {
        let two = Poset::from_covers(&[("1", "2")]).unwrap();
        let cube = two.product(&two).unwrap().product(&two).unwrap();
        let chain = Poset::from_covers(&[("a", "b"), ("b", "c")]).unwrap();
        let w = find_subposet_isomorphic(&cube, &chain, false).unwrap();
        assert_eq!(w.members.count_ones(), 3);
        assert!(!w.convex);
        // every rank-2 interval of a Boolean lattice has four elements
        assert!(find_subposet_isomorphic(&cube, &chain, true).is_none());
    }
}
