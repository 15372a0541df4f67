//! The family interchange format: `{"n": 6, "sets": [[1,3,4], [2,5]]}`.
//!
//! Elements are 1-based. Serialization emits sets in ascending mask order and
//! elements in ascending order, so output is canonical.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ground::{GroundError, SetFamily, Subset};

#[derive(Debug, Error)]
pub enum FamilyJsonError {
    #[error("malformed family JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error(transparent)]
    Ground(#[from] GroundError),
    #[error("duplicate set {0} in family")]
    Duplicate(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub n: u8,
    pub sets: Vec<Vec<u32>>,
}

impl From<&SetFamily> for FamilyJson {
    fn from(f: &SetFamily) -> Self {
        FamilyJson {
            n: f.n(),
            sets: f.iter().map(Subset::elements).collect(),
        }
    }
}

impl TryFrom<FamilyJson> for SetFamily {
    type Error = FamilyJsonError;

    fn try_from(j: FamilyJson) -> Result<Self, Self::Error> {
        let mut masks = Vec::with_capacity(j.sets.len());
        for set in j.sets {
            masks.push(Subset::from_elements(j.n, set)?.mask());
        }
        let len = masks.len();
        let f = SetFamily::from_masks(j.n, masks.iter().copied())?;
        if f.len() != len {
            masks.sort_unstable();
            let dup = masks
                .windows(2)
                .find(|w| w[0] == w[1])
                .map(|w| w[0])
                .unwrap_or(0);
            return Err(FamilyJsonError::Duplicate(
                Subset::new(j.n, dup)?.to_string(),
            ));
        }
        Ok(f)
    }
}

pub fn family_to_json(f: &SetFamily) -> String {
    serde_json::to_string(&FamilyJson::from(f)).expect("family serializes")
}

pub fn family_from_json(text: &str) -> Result<SetFamily, FamilyJsonError> {
    let j: FamilyJson = serde_json::from_str(text)?;
    SetFamily::try_from(j)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_output() {
        let f = family_from_json(r#"{"n": 6, "sets": [[4,1,3], [2,5]]}"#).unwrap();
        assert_eq!(family_to_json(&f), r#"{"n":6,"sets":[[1,3,4],[2,5]]}"#);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(family_from_json(r#"{"n": 3, "sets": [[4]]}"#).is_err());
        assert!(family_from_json(r#"{"n": 3, "sets": [[1,2],[2,1]]}"#).is_err());
        assert!(family_from_json(r#"{"n": 3}"#).is_err());
        assert!(family_from_json(r#"{"n": 0, "sets": []}"#).is_err());
    }
}
