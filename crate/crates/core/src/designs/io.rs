use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::QuantumDesign;
use crate::error::{Error, Result};
use crate::qcore::CVector;

/// On-disk layout: amplitudes are `[re, im]` pairs, one list per vector.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DesignFile {
    dim: usize,
    strength: u32,
    #[serde(default)]
    name: Option<String>,
    vectors: Vec<Vec<[f64; 2]>>,
}

pub fn parse_design(text: &str) -> Result<QuantumDesign> {
    let file: DesignFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let vectors = file
        .vectors
        .iter()
        .map(|amps| CVector::from_iterator(amps.len(), amps.iter().map(|[re, im]| Complex64::new(*re, *im))))
        .collect();
    QuantumDesign::new(file.dim, vectors, file.strength, file.name)
}

pub fn to_json(design: &QuantumDesign) -> String {
    let file = DesignFile {
        dim: design.dim(),
        strength: design.strength(),
        name: design.name().map(str::to_owned),
        vectors: design
            .vectors()
            .iter()
            .map(|v| v.iter().map(|z| [z.re, z.im]).collect())
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&file).expect("design serializes");
    out.push('\n');
    out
}

pub fn load_design(path: impl AsRef<Path>) -> Result<QuantumDesign> {
    parse_design(&fs::read_to_string(path)?)
}

pub fn save_design(design: &QuantumDesign, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, to_json(design))?;
    Ok(())
}
