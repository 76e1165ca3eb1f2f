use std::fmt::Write as _;

use super::{bits, Poset, PosetError};

/// Parsed `.poset` text. `free` holds `a ~ b` edges (either orientation); only frame
/// files use them.
#[derive(Debug, Clone, Default)]
pub struct PosetText {
    pub isolated: Vec<String>,
    pub fixed: Vec<(String, String)>,
    pub free: Vec<(String, String)>,
}

pub fn parse_text(src: &str) -> Result<PosetText, PosetError> {
    let mut out = PosetText::default();
    for (k, raw) in src.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| PosetError::Parse { line: k + 1, msg: msg.to_string() };
        let (sep, list) = if line.contains('<') {
            ('<', &mut out.fixed)
        } else if line.contains('~') {
            ('~', &mut out.free)
        } else {
            let name = line.to_string();
            if name.split_whitespace().count() != 1 || !super::valid_name(&name) {
                return Err(err("expected `a < b`, `a ~ b` or a single element"));
            }
            out.isolated.push(name);
            continue;
        };
        let parts: Vec<&str> = line.split(sep).map(str::trim).collect();
        if parts.len() < 2 {
            return Err(err("dangling relation"));
        }
        // `a < b < c` is read as a chain
        for w in parts.windows(2) {
            for s in w {
                if !super::valid_name(s) {
                    return Err(err(&format!("invalid element name `{s}`")));
                }
            }
            list.push((w[0].to_string(), w[1].to_string()));
        }
    }
    Ok(out)
}

impl Poset {
    /// Parse the `a < b` text format. Free edges are rejected here.
    pub fn parse(src: &str) -> Result<Poset, PosetError> {
        let t = parse_text(src)?;
        if !t.free.is_empty() {
            return Err(PosetError::Parse { line: 0, msg: "`~` edges are only allowed in frame files".into() });
        }
        let isolated: Vec<&str> = t.isolated.iter().map(String::as_str).collect();
        let pairs: Vec<(&str, &str)> = t.fixed.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        Poset::from_parts(&isolated, &pairs)
    }

    /// Cover lines in element order, then isolated elements.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for i in 0..self.len() {
            for j in bits(self.upper_covers(i)) {
                let _ = writeln!(s, "{} < {}", self.name(i), self.name(j));
            }
        }
        for i in 0..self.len() {
            if self.up(i) == 0 && self.down(i) == 0 {
                let _ = writeln!(s, "{}", self.name(i));
            }
        }
        s
    }
}
