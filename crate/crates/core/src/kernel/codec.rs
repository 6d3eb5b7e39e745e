//! JSON export of a complex: one record per generator, in dimension then
//! declaration order, with boundary labels in canonical element order.

use serde::{Deserialize, Serialize};

use crate::molecule::Molecule;
use crate::ogposet::{FaceData, OgPoset};

use super::{DiagSet, KernelError};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Record {
    name: String,
    dim: usize,
    shape: FaceData,
    input_labels: Option<Vec<Vec<String>>>,
    output_labels: Option<Vec<Vec<String>>>,
}

pub fn encode(ds: &DiagSet) -> String {
    let lines: Vec<String> = ds
        .normalized()
        .into_iter()
        .map(|g| {
            let record = Record {
                name: g.name().to_string(),
                dim: g.dim(),
                shape: g.shape().poset().face_data().clone(),
                input_labels: g.input().map(|d| d.label_names()),
                output_labels: g.output().map(|d| d.label_names()),
            };
            serde_json::to_string(&record).expect("records serialize")
        })
        .collect();
    if lines.is_empty() {
        return "[]\n".into();
    }
    format!("[\n  {}\n]\n", lines.join(",\n  "))
}

/// Rebuilds a complex, re-running every check on the way.
pub fn decode(text: &str) -> Result<DiagSet, KernelError> {
    let records: Vec<Record> = serde_json::from_str(text).map_err(|e| KernelError::Parse(e.to_string()))?;
    let mut ds = DiagSet::new();
    for r in records {
        let poset = OgPoset::from_face_data(r.shape).map_err(|e| KernelError::Parse(format!("{}: {e}", r.name)))?;
        let (shape, _) = Molecule::from_poset(&poset)?;
        if *shape.poset() != poset {
            return Err(KernelError::Parse(format!("{}: shape is not in canonical form", r.name)));
        }
        if shape.dim() != r.dim as isize || !shape.is_atom() {
            return Err(KernelError::Parse(format!("{}: shape is not an atom of dimension {}", r.name, r.dim)));
        }
        match (r.input_labels, r.output_labels) {
            (None, None) if r.dim == 0 => {
                ds.add_point(&r.name)?;
            }
            (Some(input), Some(output)) if r.dim > 0 => {
                for name in input.iter().chain(&output).flatten() {
                    if !ds.contains(name) {
                        return Err(KernelError::Parse(format!("{}: reference to {name} before its declaration", r.name)));
                    }
                }
                let input = ds.diagram(&shape.input(), &input)?;
                let output = ds.diagram(&shape.output(), &output)?;
                let cell = ds.add_gen(&r.name, &input, &output)?;
                if cell.shape() != &shape {
                    return Err(KernelError::Parse(format!("{}: boundaries do not produce the declared shape", r.name)));
                }
            }
            _ => return Err(KernelError::Parse(format!("{}: boundary labels do not fit dimension {}", r.name, r.dim))),
        }
    }
    Ok(ds)
}
