//! JSON description of a finite algebra.
//!
//! ```json
//! { "base": "GF(5)", "rank": 2,
//!   "structure_constants": [[[1,0],[0,1]], [[0,1],[0,0]]],
//!   "identity": [1, 0], "names": ["1", "eps"] }
//! ```

use serde::{Deserialize, Serialize};

use super::algebra::FiniteAlgebra;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub base: String,
    pub rank: usize,
    pub structure_constants: Vec<Vec<Vec<i64>>>,
    pub identity: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl AlgebraDocument {
    pub fn from_algebra(alg: &FiniteAlgebra) -> Self {
        let cast = |v: &[u64]| v.iter().map(|&x| x as i64).collect::<Vec<_>>();
        AlgebraDocument {
            base: format!("GF({})", alg.prime()),
            rank: alg.rank(),
            structure_constants: alg
                .structure_constants()
                .iter()
                .map(|r| r.iter().map(|v| cast(v)).collect())
                .collect(),
            identity: cast(alg.identity()),
            names: Some(alg.names().to_vec()),
        }
    }

    pub fn build(&self) -> Result<FiniteAlgebra> {
        let p = parse_base(&self.base)?;
        if self.structure_constants.len() != self.rank {
            return Err(Error::Document(format!(
                "rank is {} but {} rows of structure constants were given",
                self.rank,
                self.structure_constants.len()
            )));
        }
        let reduce = |x: i64| x.rem_euclid(p as i64) as u64;
        let table = self
            .structure_constants
            .iter()
            .map(|r| r.iter().map(|v| v.iter().map(|&x| reduce(x)).collect()).collect())
            .collect();
        let identity = self.identity.iter().map(|&x| reduce(x)).collect();
        let alg = FiniteAlgebra::new(p, table, identity)?;
        match &self.names {
            Some(n) => alg.with_names(n.clone()),
            None => Ok(alg),
        }
    }
}

fn parse_base(s: &str) -> Result<u64> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = compact
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| compact.strip_prefix("Z/"))
        .ok_or_else(|| Error::Document(format!("base `{s}` is not GF(p) or Z/p")))?;
    inner
        .parse()
        .map_err(|_| Error::Document(format!("bad prime in base `{s}`")))
}

pub fn parse_document(text: &str) -> Result<FiniteAlgebra> {
    let doc: AlgebraDocument =
        serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
    doc.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_dual_numbers() {
        let text = r#"{"base":"GF(5)","rank":2,
            "structure_constants":[[[1,0],[0,1]],[[0,1],[0,0]]],
            "identity":[1,0],"names":["1","eps"]}"#;
        let alg = parse_document(text).unwrap();
        assert_eq!(alg, FiniteAlgebra::dual_numbers(5).unwrap());
    }

    #[test]
    fn round_trips() {
        let alg = FiniteAlgebra::truncated_polynomial(2, 3).unwrap();
        let json = serde_json::to_string(&AlgebraDocument::from_algebra(&alg)).unwrap();
        assert_eq!(parse_document(&json).unwrap(), alg);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(parse_document("{").is_err());
        let bad_base = r#"{"base":"GF(4)","rank":1,"structure_constants":[[[1]]],"identity":[1]}"#;
        assert!(parse_document(bad_base).is_err());
        let bad_rank = r#"{"base":"GF(3)","rank":2,"structure_constants":[[[1]]],"identity":[1]}"#;
        assert!(parse_document(bad_rank).is_err());
        let extra = r#"{"base":"GF(3)","rank":1,"structure_constants":[[[1]]],"identity":[1],"x":1}"#;
        assert!(parse_document(extra).is_err());
    }
}
