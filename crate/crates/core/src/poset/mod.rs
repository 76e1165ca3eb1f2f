//! Finite posets stored as bitmask up/down sets over at most 64 elements.

mod canon;
mod embed;
pub mod families;
pub mod text;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

pub use embed::{find_all_subposets, find_subposet_isomorphic, isomorphism};
pub use families::{generate, Family, Generated};

/// Hard ceiling on poset size; every set is a `u64` mask.
pub const MAX_ELEMENTS: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("relation has a cycle through `{0}`")]
    CycleDetected(String),
    #[error("({0}, {1}) is not a cover")]
    NotACover(String, String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("invalid element name `{0}`")]
    InvalidName(String),
    #[error("poset has {0} elements, limit is {MAX_ELEMENTS}")]
    TooLarge(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown frame `{0}`")]
    UnknownFrame(String),
    #[error("frame `{id}` failed validation: {msg}")]
    InvalidFrame { id: String, msg: String },
    #[error("invalid family parameter: {0}")]
    InvalidFamily(String),
}

/// A finite partial order.
///
/// `up[i]` is the strict up-set of `i`, `down[i]` the strict down-set; cover sets are
/// derived from them at construction and kept in sync.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    up: Vec<u64>,
    down: Vec<u64>,
    upper: Vec<u64>,
    lower: Vec<u64>,
}

/// One elementary reduction step.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ContractionStep {
    DeleteElement { element: String },
    ContractCover { lower: String, upper: String },
}

impl fmt::Display for ContractionStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContractionStep::DeleteElement { element } => write!(f, "delete {element}"),
            ContractionStep::ContractCover { lower, upper } => write!(f, "contract {lower}<{upper}"),
        }
    }
}

/// A subset of a parent poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubposetWitness {
    pub members: u64,
    pub convex: bool,
}

impl SubposetWitness {
    pub fn new(parent: &Poset, members: u64) -> Self {
        SubposetWitness { members, convex: parent.is_convex(members) }
    }

    pub fn names<'a>(&self, parent: &'a Poset) -> Vec<&'a str> {
        bits(self.members).map(|i| parent.name(i)).collect()
    }
}

#[inline]
pub(crate) fn bit(i: usize) -> u64 {
    1u64 << i
}

/// Iterate set bits in increasing order.
pub fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn valid_name(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '+' | '-' | '÷' | 'ω'))
}

impl Poset {
    /// Build from a strict relation given as `up` masks; closes transitively and checks
    /// antisymmetry.
    pub(crate) fn from_relation(names: Vec<String>, mut up: Vec<u64>) -> Result<Self, PosetError> {
        let n = names.len();
        if n > MAX_ELEMENTS {
            return Err(PosetError::TooLarge(n));
        }
        // Warshall on bitmasks
        for k in 0..n {
            for i in 0..n {
                if up[i] & bit(k) != 0 {
                    up[i] |= up[k];
                }
            }
        }
        for i in 0..n {
            if up[i] & bit(i) != 0 {
                return Err(PosetError::CycleDetected(names[i].clone()));
            }
        }
        Ok(Self::from_closed(names, up))
    }

    /// Build from strict up-sets (any relation; it is closed transitively).
    pub fn from_up_sets(names: Vec<String>, up: Vec<u64>) -> Result<Self, PosetError> {
        if up.len() != names.len() {
            return Err(PosetError::InvalidFamily("up-set count differs from name count".into()));
        }
        for n in &names {
            if !valid_name(n) {
                return Err(PosetError::InvalidName(n.clone()));
            }
        }
        Self::from_relation(names, up)
    }

    /// `up` must already be a transitively closed strict order.
    pub(crate) fn from_closed(names: Vec<String>, up: Vec<u64>) -> Self {
        let n = names.len();
        let mut down = vec![0u64; n];
        for i in 0..n {
            for j in bits(up[i]) {
                down[j] |= bit(i);
            }
        }
        let mut upper = vec![0u64; n];
        let mut lower = vec![0u64; n];
        for i in 0..n {
            let mut implied = 0u64;
            for z in bits(up[i]) {
                implied |= up[z];
            }
            upper[i] = up[i] & !implied;
            for j in bits(upper[i]) {
                lower[j] |= bit(i);
            }
        }
        Poset { names, up, down, upper, lower }
    }

    /// Build from cover-like pairs; redundant pairs are dropped.
    pub fn from_covers<S: AsRef<str>>(pairs: &[(S, S)]) -> Result<Self, PosetError> {
        Self::from_parts::<S>(&[], pairs)
    }

    /// Isolated elements first (in order), then elements of `pairs` in order of appearance.
    pub fn from_parts<S: AsRef<str>>(isolated: &[S], pairs: &[(S, S)]) -> Result<Self, PosetError> {
        let mut names: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut intern = |s: &str, names: &mut Vec<String>| -> Result<usize, PosetError> {
            if !valid_name(s) {
                return Err(PosetError::InvalidName(s.to_string()));
            }
            if let Some(&i) = index.get(s) {
                return Ok(i);
            }
            names.push(s.to_string());
            index.insert(s.to_string(), names.len() - 1);
            Ok(names.len() - 1)
        };
        let mut edges = Vec::with_capacity(pairs.len());
        for s in isolated {
            intern(s.as_ref(), &mut names)?;
        }
        for (a, b) in pairs {
            let i = intern(a.as_ref(), &mut names)?;
            let j = intern(b.as_ref(), &mut names)?;
            edges.push((i, j));
        }
        if names.len() > MAX_ELEMENTS {
            return Err(PosetError::TooLarge(names.len()));
        }
        let mut up = vec![0u64; names.len()];
        for (i, j) in edges {
            if i == j {
                return Err(PosetError::CycleDetected(names[i].clone()));
            }
            up[i] |= bit(j);
        }
        Self::from_relation(names, up)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub(crate) fn require(&self, name: &str) -> Result<usize, PosetError> {
        self.index_of(name).ok_or_else(|| PosetError::UnknownElement(name.to_string()))
    }

    pub fn all(&self) -> u64 {
        full_mask(self.len())
    }

    /// Strict up-set.
    pub fn up(&self, i: usize) -> u64 {
        self.up[i]
    }

    /// Strict down-set.
    pub fn down(&self, i: usize) -> u64 {
        self.down[i]
    }

    pub fn upper_covers(&self, i: usize) -> u64 {
        self.upper[i]
    }

    pub fn lower_covers(&self, i: usize) -> u64 {
        self.lower[i]
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.up[i] & bit(j) != 0
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        i == j || self.lt(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.lt(j, i)
    }

    pub fn is_cover(&self, i: usize, j: usize) -> bool {
        self.upper[i] & bit(j) != 0
    }

    /// Cover pairs `(x, y)` with `y` covering `x`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in bits(self.upper[i]) {
                out.push((i, j));
            }
        }
        out
    }

    pub fn cover_names(&self) -> Vec<(String, String)> {
        self.covers()
            .into_iter()
            .map(|(i, j)| (self.names[i].clone(), self.names[j].clone()))
            .collect()
    }

    pub fn minimal(&self) -> u64 {
        (0..self.len()).filter(|&i| self.down[i] == 0).fold(0, |m, i| m | bit(i))
    }

    pub fn maximal(&self) -> u64 {
        (0..self.len()).filter(|&i| self.up[i] == 0).fold(0, |m, i| m | bit(i))
    }

    pub fn has_unique_max(&self) -> bool {
        self.maximal().count_ones() == 1
    }

    pub fn has_unique_min(&self) -> bool {
        self.minimal().count_ones() == 1
    }

    /// Number of pairs `x <= y`; the dimension of the incidence algebra.
    pub fn interval_count(&self) -> usize {
        self.len() + self.up.iter().map(|m| m.count_ones() as usize).sum::<usize>()
    }

    /// Length of the longest chain ending at each element.
    pub fn levels(&self) -> Vec<usize> {
        let order = self.linear_extension();
        let mut lvl = vec![0usize; self.len()];
        for &i in &order {
            for j in bits(self.lower[i]) {
                lvl[i] = lvl[i].max(lvl[j] + 1);
            }
        }
        lvl
    }

    /// A linear extension, smallest index first among available elements.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut placed = 0u64;
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let i = (0..n)
                .find(|&i| placed & bit(i) == 0 && self.down[i] & !placed == 0)
                .expect("acyclic");
            placed |= bit(i);
            out.push(i);
        }
        out
    }

    /// Connected components of the comparability graph, as masks ordered by lowest element.
    pub fn components_of(&self, within: u64) -> Vec<u64> {
        let mut rest = within;
        let mut out = Vec::new();
        while rest != 0 {
            let start = rest.trailing_zeros() as usize;
            let mut comp = bit(start);
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0u64;
                for i in bits(frontier) {
                    next |= (self.up[i] | self.down[i]) & within;
                }
                frontier = next & !comp;
                comp |= next;
            }
            rest &= !comp;
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<u64> {
        self.components_of(self.all())
    }

    pub fn is_connected(&self) -> bool {
        self.len() <= 1 || self.components().len() == 1
    }

    /// True when no two distinct Hasse paths share endpoints, i.e. the Hasse quiver's
    /// underlying graph is a forest.
    pub fn hasse_is_forest(&self) -> bool {
        let edges: usize = self.upper.iter().map(|m| m.count_ones() as usize).sum();
        edges + self.components().len() == self.len()
    }

    pub fn is_convex(&self, members: u64) -> bool {
        self.convex_hull(members) == members
    }

    /// Smallest convex superset.
    pub fn convex_hull(&self, members: u64) -> u64 {
        let mut above = 0u64;
        let mut below = 0u64;
        for i in bits(members) {
            above |= self.up[i] | bit(i);
            below |= self.down[i] | bit(i);
        }
        above & below
    }

    pub fn convex_hull_witness(&self, w: &SubposetWitness) -> SubposetWitness {
        SubposetWitness { members: self.convex_hull(w.members), convex: true }
    }

    /// Induced subposet on `members`, keeping names and relative order.
    pub fn induced(&self, members: u64) -> Poset {
        let idx: Vec<usize> = bits(members).collect();
        let names = idx.iter().map(|&i| self.names[i].clone()).collect();
        let up = idx.iter().map(|&i| compress(self.up[i], &idx)).collect();
        Poset::from_closed(names, up)
    }

    pub fn delete(&self, i: usize) -> Poset {
        self.induced(self.all() & !bit(i))
    }

    /// Identify a cover pair `x < y`. The merged element takes the name `x+y`
    /// (suffixed with `_` until unique) and the position of `x`.
    pub fn contract_cover(&self, x: usize, y: usize) -> Result<Poset, PosetError> {
        if !self.is_cover(x, y) {
            return Err(PosetError::NotACover(self.names[x].clone(), self.names[y].clone()));
        }
        let mut merged = format!("{}+{}", self.names[x], self.names[y]);
        while self.names.contains(&merged) {
            merged.push('_');
        }
        let n = self.len();
        // map old index -> new index
        let map: Vec<usize> = (0..n)
            .map(|i| {
                let i = if i == y { x } else { i };
                if i > y {
                    i - 1
                } else {
                    i
                }
            })
            .collect();
        let mut names: Vec<String> = Vec::with_capacity(n - 1);
        for i in 0..n {
            if i == y {
                continue;
            }
            names.push(if i == x { merged.clone() } else { self.names[i].clone() });
        }
        let mut up = vec![0u64; n - 1];
        for i in 0..n {
            for j in bits(self.up[i]) {
                let (a, b) = (map[i], map[j]);
                if a != b {
                    up[a] |= bit(b);
                }
            }
        }
        // [x,y] = {x,y}, so closure cannot create a cycle
        Self::from_relation(names, up).map_err(|_| unreachable_cover_cycle())
    }

    pub fn apply(&self, step: &ContractionStep) -> Result<Poset, PosetError> {
        match step {
            ContractionStep::DeleteElement { element } => Ok(self.delete(self.require(element)?)),
            ContractionStep::ContractCover { lower, upper } => {
                let x = self.require(lower)?;
                let y = self.require(upper)?;
                self.contract_cover(x, y)
            }
        }
    }

    pub fn delete_step(&self, i: usize) -> ContractionStep {
        ContractionStep::DeleteElement { element: self.names[i].clone() }
    }

    pub fn contract_step(&self, x: usize, y: usize) -> ContractionStep {
        ContractionStep::ContractCover { lower: self.names[x].clone(), upper: self.names[y].clone() }
    }

    pub fn opposite(&self) -> Poset {
        Poset::from_closed(self.names.clone(), self.down.clone())
    }

    /// Componentwise order; the pair `(a, b)` is named `a_b`.
    pub fn product(&self, other: &Poset) -> Result<Poset, PosetError> {
        let (n, m) = (self.len(), other.len());
        if n * m > MAX_ELEMENTS {
            return Err(PosetError::TooLarge(n * m));
        }
        let mut names = Vec::with_capacity(n * m);
        for i in 0..n {
            for j in 0..m {
                names.push(format!("{}_{}", self.names[i], other.names[j]));
            }
        }
        let mut up = vec![0u64; n * m];
        for i in 0..n {
            for j in 0..m {
                for k in 0..n {
                    for l in 0..m {
                        if (i, j) != (k, l) && self.leq(i, k) && other.leq(j, l) {
                            up[i * m + j] |= bit(k * m + l);
                        }
                    }
                }
            }
        }
        Ok(Poset::from_closed(names, up))
    }

    /// Rename every element; `names` must be distinct and valid.
    pub fn renamed(&self, names: Vec<String>) -> Result<Poset, PosetError> {
        assert_eq!(names.len(), self.len());
        for n in &names {
            if !valid_name(n) {
                return Err(PosetError::InvalidName(n.clone()));
            }
        }
        Ok(Poset { names, ..self.clone() })
    }

    /// Reorder elements: new element `k` is old element `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Poset {
        let mut inv = vec![0usize; perm.len()];
        for (k, &p) in perm.iter().enumerate() {
            inv[p] = k;
        }
        let names = perm.iter().map(|&p| self.names[p].clone()).collect();
        let up = perm.iter().map(|&p| bits(self.up[p]).fold(0, |m, j| m | bit(inv[j]))).collect();
        Poset::from_closed(names, up)
    }

    pub fn canonical_form(&self) -> String {
        canon::canonical_form(self)
    }
}

fn unreachable_cover_cycle() -> PosetError {
    // kept as an error rather than a panic so a broken invariant surfaces in tests
    PosetError::CycleDetected("<merged cover>".into())
}

/// Re-index mask bits through the sorted index list `idx`.
pub(crate) fn compress(mask: u64, idx: &[usize]) -> u64 {
    let mut out = 0u64;
    for (k, &i) in idx.iter().enumerate() {
        if mask & bit(i) != 0 {
            out |= bit(k);
        }
    }
    out
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poset[")?;
        let mut first = true;
        for (i, j) in self.covers() {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{}<{}", self.names[i], self.names[j])?;
        }
        for i in 0..self.len() {
            if self.up[i] == 0 && self.down[i] == 0 {
                write!(f, "{}{}", if first { "" } else { ", " }, self.names[i])?;
                first = false;
            }
        }
        write!(f, "]")
    }
}
