use super::{bit, bits, compress, Poset};

/// Canonical label: components are labelled separately and sorted, so the search
/// never branches across isomorphic components.
pub(super) fn canonical_form(p: &Poset) -> String {
    let comps = p.components();
    if comps.len() <= 1 {
        return label_connected(p, p.all());
    }
    let mut parts: Vec<String> = comps.iter().map(|&c| label_connected(p, c)).collect();
    parts.sort();
    format!("[{}]", parts.join("|"))
}

fn label_connected(p: &Poset, members: u64) -> String {
    let idx: Vec<usize> = bits(members).collect();
    let n = idx.len();
    let up: Vec<u64> = idx.iter().map(|&i| compress(p.up(i), &idx)).collect();
    let upper: Vec<u64> = idx.iter().map(|&i| compress(p.upper_covers(i), &idx)).collect();
    let g = Graph::new(up, upper);
    let best = g.canonical_code();
    let mut s = format!("{n}:");
    for w in best {
        s.push_str(&format!("{w:x}."));
    }
    s
}

struct Graph {
    n: usize,
    up: Vec<u64>,
    down: Vec<u64>,
    upper: Vec<u64>,
    lower: Vec<u64>,
}

impl Graph {
    fn new(up: Vec<u64>, upper: Vec<u64>) -> Self {
        let n = up.len();
        let mut down = vec![0; n];
        let mut lower = vec![0; n];
        for i in 0..n {
            for j in bits(up[i]) {
                down[j] |= bit(i);
            }
            for j in bits(upper[i]) {
                lower[j] |= bit(i);
            }
        }
        Graph { n, up, down, upper, lower }
    }

    fn initial_colors(&self) -> Vec<u64> {
        // longest chain below each element
        let mut level = vec![0u64; self.n];
        let mut done = 0u64;
        while done.count_ones() as usize != self.n {
            for i in 0..self.n {
                if done & bit(i) == 0 && self.lower[i] & !done == 0 {
                    level[i] = bits(self.lower[i]).map(|j| level[j] + 1).max().unwrap_or(0);
                    done |= bit(i);
                }
            }
        }
        let keys: Vec<[u64; 5]> = (0..self.n)
            .map(|i| {
                [
                    level[i],
                    self.lower[i].count_ones() as u64,
                    self.upper[i].count_ones() as u64,
                    self.down[i].count_ones() as u64,
                    self.up[i].count_ones() as u64,
                ]
            })
            .collect();
        rank(&keys)
    }

    /// Refine until stable. Colors are dense ranks, so equal partitions give equal vectors.
    fn refine(&self, mut colors: Vec<u64>) -> Vec<u64> {
        loop {
            let keys: Vec<(u64, Vec<u64>, Vec<u64>)> = (0..self.n)
                .map(|i| {
                    let mut a: Vec<u64> = bits(self.lower[i]).map(|j| colors[j]).collect();
                    let mut b: Vec<u64> = bits(self.upper[i]).map(|j| colors[j]).collect();
                    a.sort_unstable();
                    b.sort_unstable();
                    (colors[i], a, b)
                })
                .collect();
            let next = rank(&keys);
            if distinct(&next) == distinct(&colors) {
                return next;
            }
            colors = next;
        }
    }

    fn canonical_code(&self) -> Vec<u64> {
        let start = self.refine(self.initial_colors());
        let mut best: Option<Vec<u64>> = None;
        self.search(start, &mut best);
        best.expect("at least one leaf")
    }

    fn search(&self, colors: Vec<u64>, best: &mut Option<Vec<u64>>) {
        let k = distinct(&colors);
        if k == self.n {
            let code = self.encode(&colors);
            if best.as_ref().is_none_or(|b| code < *b) {
                *best = Some(code);
            }
            return;
        }
        // first smallest non-singleton cell
        let mut counts = vec![0usize; k];
        for &c in &colors {
            counts[c as usize] += 1;
        }
        let target = (0..k)
            .filter(|&c| counts[c] > 1)
            .min_by_key(|&c| (counts[c], c))
            .unwrap() as u64;
        let mut tried: Vec<usize> = Vec::new();
        for v in 0..self.n {
            if colors[v] != target {
                continue;
            }
            if tried.iter().any(|&w| self.up[w] == self.up[v] && self.down[w] == self.down[v]) {
                continue;
            }
            tried.push(v);
            let mut c2: Vec<u64> = colors.iter().map(|&c| c * 2 + 1).collect();
            c2[v] -= 1;
            let c2 = self.refine(dense(&c2));
            self.search(c2, best);
        }
    }

    fn encode(&self, colors: &[u64]) -> Vec<u64> {
        let mut order = vec![0usize; self.n];
        for (v, &c) in colors.iter().enumerate() {
            order[c as usize] = v;
        }
        order
            .iter()
            .map(|&v| bits(self.up[v]).fold(0u64, |m, j| m | bit(colors[j] as usize)))
            .collect()
    }
}

fn rank<K: Ord + Clone>(keys: &[K]) -> Vec<u64> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(k).unwrap() as u64).collect()
}

fn dense(c: &[u64]) -> Vec<u64> {
    rank(c)
}

fn distinct(c: &[u64]) -> usize {
    let mut v = c.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

#[cfg(test)]
mod tests {
    use super::super::Poset;

    #[test]
    fn relabelled_chain_matches() {
        let a = Poset::from_covers(&[("1", "2"), ("2", "3")]).unwrap();
        let b = Poset::from_covers(&[("z", "x"), ("y", "z")]).unwrap();
        assert_eq!(a.canonical_form(), b.canonical_form());
    }

    #[test]
    fn chain_differs_from_antichain() {
        let a = Poset::from_covers(&[("1", "2"), ("2", "3")]).unwrap();
        let b = Poset::from_parts(&["1", "2", "3"], &[] as &[(&str, &str)]).unwrap();
        assert_ne!(a.canonical_form(), b.canonical_form());
    }

    #[test]
    fn crown_is_self_dual() {
        let p = Poset::from_covers(&[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")]).unwrap();
        assert_eq!(p.canonical_form(), p.opposite().canonical_form());
    }
}
