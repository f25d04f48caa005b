//! Built-in sources shipped as JSON under `presets/`.

use crate::error::{Error, Result};
use crate::io::parse_source;
use crate::lang::Source;

pub const NAMES: [&str; 5] = [
    "fibonacci",
    "tribonacci",
    "thue-morse",
    "paper-example",
    "periodic-ab",
];

pub fn preset_json(name: &str) -> Option<&'static str> {
    Some(match name {
        "fibonacci" => include_str!("../presets/fibonacci.json"),
        "tribonacci" => include_str!("../presets/tribonacci.json"),
        "thue-morse" => include_str!("../presets/thue-morse.json"),
        "paper-example" => include_str!("../presets/paper-example.json"),
        "periodic-ab" => include_str!("../presets/periodic-ab.json"),
        _ => return None,
    })
}

pub fn preset(name: &str) -> Result<Source> {
    let text = preset_json(name).ok_or_else(|| {
        Error::InvalidInput(format!(
            "unknown preset '{name}' (expected one of {})",
            NAMES.join(", ")
        ))
    })?;
    parse_source(text)
}
