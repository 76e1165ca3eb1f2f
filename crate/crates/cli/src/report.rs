use serde::Serialize;
use serde_json::{json, Value};

use crate::{Command, Options};

pub const SCHEMA_VERSION: u32 = 1;

/// Versioned envelope: tool version, full configuration and seed, then the payload.
pub fn envelope(command: &Command, opts: &Options, payload: Value) -> Value {
    json!({
        "tool": "posetrep",
        "version": env!("CARGO_PKG_VERSION"),
        "schema": SCHEMA_VERSION,
        "command": command,
        "config": opts,
        "seed": opts.seed,
        "result": payload,
    })
}

pub fn value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

/// Pretty JSON with keys in sorted order, so parsing and re-serializing is the identity.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering_is_stable_under_reparsing() {
        let v = json!({"b": [1, 2], "a": {"z": null, "y": "text"}});
        let text = render(&v);
        let back: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(render(&back), text);
        assert!(text.find("\"a\"").unwrap() < text.find("\"b\"").unwrap());
    }
}
