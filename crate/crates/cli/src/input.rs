use std::io::Read;

use posetrep::linrep::BoundAlgebra;
use posetrep::poset::Poset;
use posetrep::quiver::Quiver;

pub type Error = Box<dyn std::error::Error + Send + Sync>;

/// File contents, or standard input for `-`.
pub fn read_source(path: &str) -> Result<String, Error> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}").into())
    }
}

pub fn poset(path: &str) -> Result<Poset, Error> {
    Ok(Poset::parse(&read_source(path)?)?)
}

pub fn quiver(path: &str) -> Result<Quiver, Error> {
    Ok(Quiver::parse(&read_source(path)?)?)
}

fn is_quiver_text(src: &str) -> bool {
    src.lines().any(|l| l.split('#').next().unwrap_or("").contains("->"))
}

/// Path algebra for quiver text (`a -> b`), incidence algebra for poset text (`a < b`).
pub fn algebra(path: &str) -> Result<(BoundAlgebra, Option<Poset>), Error> {
    let src = read_source(path)?;
    if is_quiver_text(&src) {
        Ok((BoundAlgebra::path_algebra(&Quiver::parse(&src)?), None))
    } else {
        let p = Poset::parse(&src)?;
        Ok((BoundAlgebra::incidence(&p), Some(p)))
    }
}

#[cfg(test)]
mod tests {
    use super::is_quiver_text;

    #[test]
    fn arrows_mark_quiver_text() {
        assert!(is_quiver_text("1 -> 2\n"));
        assert!(!is_quiver_text("a < b\n# not a -> quiver\n"));
    }
}
