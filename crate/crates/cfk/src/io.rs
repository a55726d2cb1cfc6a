//! The on-disk complex format: canonical, byte-stable JSON.
//!
//! Key order is name / format_version / generators / arrows, two-space
//! indentation, generators sorted by id, arrows sorted by (from, to,
//! upower), newline-terminated.

use serde::{Deserialize, Serialize};

use crate::complex::{Arrow, Complex, Generator};
use crate::error::CfkError;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct GeneratorRecord {
    id: String,
    alexander: i64,
    maslov: i64,
}

#[derive(Serialize, Deserialize)]
struct ArrowRecord {
    from: String,
    to: String,
    upower: u32,
}

#[derive(Serialize, Deserialize)]
struct ComplexFile {
    name: String,
    format_version: u32,
    generators: Vec<GeneratorRecord>,
    arrows: Vec<ArrowRecord>,
}

/// Canonical serialization.
pub fn serialize(c: &Complex) -> String {
    let file = ComplexFile {
        name: c.name().to_string(),
        format_version: FORMAT_VERSION,
        generators: c
            .generators()
            .iter()
            .map(|g| GeneratorRecord {
                id: g.id.clone(),
                alexander: g.alexander,
                maslov: g.maslov,
            })
            .collect(),
        arrows: c
            .arrows()
            .iter()
            .map(|a| ArrowRecord {
                from: a.from.clone(),
                to: a.to.clone(),
                upower: a.upower,
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("complex serializes");
    s.push('\n');
    s
}

/// Parses the on-disk format back into a complex.
pub fn parse(text: &str) -> Result<Complex, CfkError> {
    let file: ComplexFile =
        serde_json::from_str(text).map_err(|e| CfkError::Parse(e.to_string()))?;
    if file.format_version != FORMAT_VERSION {
        return Err(CfkError::Parse(format!(
            "unsupported format_version {}, expected {FORMAT_VERSION}",
            file.format_version
        )));
    }
    let gens: Vec<Generator> = file
        .generators
        .into_iter()
        .map(|g| Generator {
            id: g.id,
            alexander: g.alexander,
            maslov: g.maslov,
        })
        .collect();
    let arrows: Vec<Arrow> = file
        .arrows
        .into_iter()
        .map(|a| Arrow {
            from: a.from,
            to: a.to,
            upower: a.upower,
        })
        .collect();
    Complex::new(file.name, gens, arrows).map_err(|e| CfkError::Parse(e.to_string()))
}

pub fn read_complex(path: &std::path::Path) -> Result<Complex, CfkError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CfkError::Io(format!("{}: {e}", path.display())))?;
    parse(&text)
}

pub fn write_complex(path: &std::path::Path, c: &Complex) -> Result<(), CfkError> {
    std::fs::write(path, serialize(c)).map_err(|e| CfkError::Io(format!("{}: {e}", path.display())))
}
