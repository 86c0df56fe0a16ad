//! JSON document format for set systems: `{"n": 3, "feasible": [0, 7]}`.
//!
//! Masks are serialized in strictly increasing order; parsing rejects
//! duplicates, unsorted lists and masks outside `0..2^n`.

use serde::{Deserialize, Serialize};

use crate::{DmError, Mask, Result, SetSystem, MAX_N};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SetSystemDoc {
    pub n: usize,
    pub feasible: Vec<u64>,
}

impl From<&SetSystem> for SetSystemDoc {
    fn from(s: &SetSystem) -> Self {
        SetSystemDoc {
            n: s.n(),
            feasible: s.iter().map(u64::from).collect(),
        }
    }
}

impl TryFrom<SetSystemDoc> for SetSystem {
    type Error = DmError;

    fn try_from(doc: SetSystemDoc) -> Result<SetSystem> {
        if doc.n > MAX_N {
            return Err(DmError::Format(format!(
                "field `n`: {} exceeds the maximum of {MAX_N}",
                doc.n
            )));
        }
        let limit = 1u64 << doc.n;
        for (i, &m) in doc.feasible.iter().enumerate() {
            if m >= limit {
                return Err(DmError::Format(format!(
                    "field `feasible[{i}]`: mask {m} is out of range for n = {}",
                    doc.n
                )));
            }
            if i > 0 {
                let prev = doc.feasible[i - 1];
                if prev == m {
                    return Err(DmError::Format(format!(
                        "field `feasible[{i}]`: duplicate mask {m}"
                    )));
                }
                if prev > m {
                    return Err(DmError::Format(format!(
                        "field `feasible[{i}]`: masks must be strictly increasing ({prev} before {m})"
                    )));
                }
            }
        }
        SetSystem::from_masks(doc.n, doc.feasible.iter().map(|&m| m as Mask))
    }
}

pub fn to_json(s: &SetSystem) -> String {
    serde_json::to_string(&SetSystemDoc::from(s)).expect("plain document serializes")
}

pub fn from_json(text: &str) -> Result<SetSystem> {
    let doc: SetSystemDoc = serde_json::from_str(text)?;
    doc.try_into()
}
