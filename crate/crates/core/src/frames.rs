//! Shipped frame shapes.
//!
//! Minimal representation-infinite posets live in `frames/loupias/<id>.poset`. Edges
//! written `a ~ b` may take either orientation; blocks separated by a `---` line are
//! alternative shapes whose orientation sets are united. Opposites are added by the
//! loader.
//!
//! Wild quiver frames live in `frames/les/<id>.quiver`, with `a -- b` for free edges.

use std::collections::{BTreeSet, HashSet};
use std::path::Path;
use std::sync::OnceLock;

use crate::poset::{text::parse_text, Poset, PosetError};
use crate::quiver::{self, GraphType, Letter, Quiver};

const LOUPIAS: &[(&str, &str, usize, GraphType)] = &[
    ("A3", include_str!("../frames/loupias/A3.poset"), 4, GraphType::Euclidean(Letter::A, 3)),
    ("D4", include_str!("../frames/loupias/D4.poset"), 5, GraphType::Euclidean(Letter::D, 4)),
    ("E6", include_str!("../frames/loupias/E6.poset"), 7, GraphType::Euclidean(Letter::E, 6)),
    ("E7", include_str!("../frames/loupias/E7.poset"), 8, GraphType::Euclidean(Letter::E, 7)),
    ("E8", include_str!("../frames/loupias/E8.poset"), 9, GraphType::Euclidean(Letter::E, 8)),
    ("R1", include_str!("../frames/loupias/R1.poset"), 8, GraphType::Euclidean(Letter::E, 7)),
    ("R2", include_str!("../frames/loupias/R2.poset"), 9, GraphType::Euclidean(Letter::E, 8)),
    ("R3", include_str!("../frames/loupias/R3.poset"), 9, GraphType::Euclidean(Letter::E, 8)),
    ("R4", include_str!("../frames/loupias/R4.poset"), 9, GraphType::Euclidean(Letter::E, 8)),
    ("R5", include_str!("../frames/loupias/R5.poset"), 9, GraphType::Euclidean(Letter::E, 8)),
    ("R6", include_str!("../frames/loupias/R6.poset"), 9, GraphType::Euclidean(Letter::E, 8)),
    ("R7", include_str!("../frames/loupias/R7.poset"), 9, GraphType::Euclidean(Letter::E, 8)),
];

macro_rules! les {
    ($($id:literal => $n:expr),* $(,)?) => {
        &[$(($id, include_str!(concat!("../frames/les/", $id, ".quiver")), $n)),*]
    };
}

const LES: &[(&str, &str, usize)] = les![
    "Att_1_2" => 4, "Att_1_3" => 5, "Att_1_4" => 6, "Att_1_5" => 7, "Att_1_6" => 8, "Att_1_7" => 9,
    "Att_2_2" => 5, "Att_2_3" => 6, "Att_2_4" => 7, "Att_2_5" => 8, "Att_2_6" => 9,
    "Att_3_3" => 7, "Att_3_4" => 8, "Att_3_5" => 9, "Att_4_4" => 9,
    "Dtt_4" => 6, "Dtt_5" => 7, "Dtt_6" => 8, "Dtt_7" => 9, "Dtt_8" => 10,
    "Ett_6" => 8, "Ett_7" => 9, "Ett_8" => 10,
    "T5" => 6,
];

#[derive(Debug, Clone)]
pub struct LoupiasFrame {
    pub id: String,
    /// Euclidean type of the tame concealed algebra the frame carries.
    pub euclidean: GraphType,
    /// Pairwise non-isomorphic orientations, opposites included, in file order.
    pub orientations: Vec<Poset>,
    canon: HashSet<String>,
}

impl LoupiasFrame {
    pub fn base_poset(&self) -> Poset {
        self.orientations[0].clone()
    }

    /// Whether `p` is isomorphic to some orientation of this frame.
    pub fn matches(&self, p: &Poset) -> bool {
        self.canon.contains(&p.canonical_form())
    }

    pub fn canonical_forms(&self) -> &HashSet<String> {
        &self.canon
    }
}

#[derive(Debug, Clone)]
pub struct LesFrame {
    pub id: String,
    /// Base orientation; free edges point as written.
    pub quiver: Quiver,
    /// Indices into `quiver.arrows()` that may be reversed.
    pub free: Vec<usize>,
}

impl LesFrame {
    /// All orientations of the free edges, at most `cap` of them, base first.
    pub fn orientations(&self, cap: usize) -> Vec<Quiver> {
        let k = self.free.len().min(usize::BITS as usize - 1);
        let total = 1usize << k;
        (0..total.min(cap))
            .filter_map(|mask| {
                let mut arrows = self.quiver.arrows().to_vec();
                for (b, &e) in self.free.iter().enumerate() {
                    if mask >> b & 1 == 1 {
                        let (s, t) = arrows[e];
                        arrows[e] = (t, s);
                    }
                }
                Quiver::from_indices(self.quiver.names().to_vec(), arrows).ok()
            })
            .collect()
    }
}

fn invalid(id: &str, msg: impl Into<String>) -> PosetError {
    PosetError::InvalidFrame { id: id.to_string(), msg: msg.into() }
}

/// Parse and validate one Loupias frame file.
pub fn parse_loupias(id: &str, src: &str, size: usize, euclidean: GraphType) -> Result<LoupiasFrame, PosetError> {
    let mut orientations = Vec::new();
    let mut canon = HashSet::new();
    let mut blocks: Vec<String> = vec![String::new()];
    for line in src.lines() {
        if line.trim() == "---" {
            blocks.push(String::new());
        } else {
            let b = blocks.last_mut().unwrap();
            b.push_str(line);
            b.push('\n');
        }
    }
    let mut found = Vec::new();
    for block in &blocks {
        let t = parse_text(block).map_err(|e| invalid(id, e.to_string()))?;
        if t.free.len() > 16 {
            return Err(invalid(id, "too many free edges"));
        }
        let edges: BTreeSet<(String, String)> = t
            .fixed
            .iter()
            .chain(&t.free)
            .map(|(a, b)| if a < b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) })
            .collect();
        for mask in 0u32..1 << t.free.len() {
            let mut pairs = t.fixed.clone();
            for (k, (a, b)) in t.free.iter().enumerate() {
                pairs.push(if mask >> k & 1 == 0 { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) });
            }
            let p = Poset::from_parts(&t.isolated, &pairs).map_err(|e| invalid(id, e.to_string()))?;
            let hasse: BTreeSet<(String, String)> = p
                .cover_names()
                .into_iter()
                .map(|(a, b)| if a < b { (a, b) } else { (b, a) })
                .collect();
            if hasse != edges {
                // some drawn edge is implied by a path in this orientation
                continue;
            }
            found.push(p);
        }
    }
    if found.is_empty() {
        return Err(invalid(id, "no orientation has the drawn Hasse diagram"));
    }
    for p in found.iter().cloned().chain(found.iter().map(Poset::opposite)) {
        if p.len() != size {
            return Err(invalid(id, format!("expected {size} elements, found {}", p.len())));
        }
        if !p.is_connected() {
            return Err(invalid(id, "not connected"));
        }
        if canon.insert(p.canonical_form()) {
            orientations.push(p);
        }
    }
    Ok(LoupiasFrame { id: id.to_string(), euclidean, orientations, canon })
}

/// Parse and validate one wild quiver frame file.
pub fn parse_les(id: &str, src: &str, size: usize) -> Result<LesFrame, PosetError> {
    let t = quiver::parse_text(src).map_err(|e| invalid(id, e.to_string()))?;
    let mut arrows = t.arrows.clone();
    let free: Vec<usize> = (arrows.len()..arrows.len() + t.free.len()).collect();
    arrows.extend(t.free.iter().cloned());
    let q = Quiver::new(&t.vertices, &arrows).map_err(|e| invalid(id, e.to_string()))?;
    if q.len() != size {
        return Err(invalid(id, format!("expected {size} vertices, found {}", q.len())));
    }
    if !q.is_connected() {
        return Err(invalid(id, "not connected"));
    }
    match quiver::graph_type(&q) {
        Ok(GraphType::Wild) => {}
        Ok(other) => return Err(invalid(id, format!("type {other} is not wild"))),
        Err(e) => return Err(invalid(id, e.to_string())),
    }
    Ok(LesFrame { id: id.to_string(), quiver: q, free })
}

fn builtin_loupias() -> Result<Vec<LoupiasFrame>, PosetError> {
    LOUPIAS.iter().map(|&(id, src, n, ty)| parse_loupias(id, src, n, ty)).collect()
}

fn builtin_les() -> Result<Vec<LesFrame>, PosetError> {
    LES.iter().map(|&(id, src, n)| parse_les(id, src, n)).collect()
}

/// The twelve minimal representation-infinite frames.
pub fn loupias_frames() -> &'static [LoupiasFrame] {
    static CELL: OnceLock<Vec<LoupiasFrame>> = OnceLock::new();
    CELL.get_or_init(|| builtin_loupias().expect("shipped Loupias frames are valid"))
}

pub fn les_frames() -> &'static [LesFrame] {
    static CELL: OnceLock<Vec<LesFrame>> = OnceLock::new();
    CELL.get_or_init(|| builtin_les().expect("shipped wild frames are valid"))
}

pub fn loupias_frame(id: &str) -> Result<&'static LoupiasFrame, PosetError> {
    loupias_frames().iter().find(|f| f.id == id).ok_or_else(|| PosetError::UnknownFrame(id.to_string()))
}

pub fn les_frame(id: &str) -> Result<&'static LesFrame, PosetError> {
    les_frames().iter().find(|f| f.id == id).ok_or_else(|| PosetError::UnknownFrame(id.to_string()))
}

/// Frame whose orientation set contains `p`, if any.
pub fn match_loupias(p: &Poset) -> Option<&'static LoupiasFrame> {
    let key = p.canonical_form();
    loupias_frames().iter().find(|f| f.canon.contains(&key))
}

/// Validate a frames directory laid out as `loupias/<id>.poset` and `les/<id>.quiver`.
/// Every shipped id must be present.
pub fn validate_dir(dir: &Path) -> Result<usize, PosetError> {
    let read = |rel: String, id: &str| {
        std::fs::read_to_string(dir.join(&rel)).map_err(|e| invalid(id, format!("{rel}: {e}")))
    };
    let mut count = 0;
    for &(id, _, n, ty) in LOUPIAS {
        parse_loupias(id, &read(format!("loupias/{id}.poset"), id)?, n, ty)?;
        count += 1;
    }
    for &(id, _, n) in LES {
        parse_les(id, &read(format!("les/{id}.quiver"), id)?, n)?;
        count += 1;
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_frames_load() {
        assert_eq!(loupias_frames().len(), 12);
        assert_eq!(les_frames().len(), LES.len());
        let a3 = loupias_frame("A3").unwrap().base_poset();
        assert_eq!((a3.len(), a3.covers().len()), (4, 4));
        assert_eq!(a3.minimal().count_ones(), 2);
    }

    #[test]
    fn orientation_counts() {
        // balanced star is excluded
        assert_eq!(loupias_frame("D4").unwrap().orientations.len(), 4);
        assert_eq!(loupias_frame("E6").unwrap().orientations.len(), 20);
        assert_eq!(loupias_frame("E7").unwrap().orientations.len(), 72);
    }

    #[test]
    fn les_frames_are_hyperbolic_up_to_nine_vertices() {
        for f in les_frames() {
            if f.quiver.len() <= 9 {
                assert!(quiver::is_hyperbolic(&f.quiver).unwrap(), "{}", f.id);
            }
        }
    }

    #[test]
    fn corrupt_frame_is_named() {
        let err = parse_loupias("R1", "s < m1 < t\ns < m1", 8, GraphType::Wild).unwrap_err();
        assert!(matches!(err, PosetError::InvalidFrame { ref id, .. } if id == "R1"));
    }
}
