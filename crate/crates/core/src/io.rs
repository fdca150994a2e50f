//! JSON file formats for chains, actions and certificates.
//!
//! Chain:
//!
//! ```json
//! { "rank": 2, "generators": ["a", "b"], "vertices": ["x", "y"],
//!   "labels": { "x": "a", "y": "ab'" }, "matrix": [["1/2", "1/2"], ["1", "0"]] }
//! ```
//!
//! `matrix[i][j]` is the transition probability from `vertices[i]` to
//! `vertices[j]`. Action:
//!
//! ```json
//! { "points": ["0", "1"], "measure": ["1/2", "1/2"], "generators": { "a": [1, 0], "b": [0, 1] } }
//! ```
//!
//! Certificates name vertices:
//! `{ "k": 1, "u": "a", "w": "a", "p": ["b"], "q": ["b'"], "p_star": ["b'"], "q_star": ["b"] }`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::action::ActionParts;
use crate::admissibility::GoodSubgraphCertificate;
use crate::chain::{ChainParts, MarkovSystem};
use crate::freegroup::{Alphabet, WordError};
use crate::rational::{format_rational, parse_rational, Rational};

/// Unreadable or structurally wrong input, as opposed to data failing validation.
#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("{0}")]
    Schema(String),
}

fn schema<T>(msg: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError::Schema(msg.into()))
}

fn parse_entry(text: &str) -> Result<Rational, FormatError> {
    parse_rational(text)
        .ok_or_else(|| FormatError::Schema(format!("{text:?} is not a rational number")))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainFile {
    pub rank: usize,
    pub generators: Vec<String>,
    pub vertices: Vec<String>,
    pub labels: BTreeMap<String, String>,
    pub matrix: Vec<Vec<String>>,
}

impl ChainFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn into_parts(self) -> Result<ChainParts, FormatError> {
        if self.generators.len() != self.rank {
            return schema(format!(
                "rank is {} but {} generators are listed",
                self.rank,
                self.generators.len()
            ));
        }
        let alphabet = Alphabet::from_strings(&self.generators)?;
        if let Some(extra) = self.labels.keys().find(|k| !self.vertices.contains(k)) {
            return schema(format!("label given for unknown vertex {extra:?}"));
        }
        let labels = self
            .vertices
            .iter()
            .map(|v| match self.labels.get(v) {
                Some(word) => Ok(alphabet.parse(word)?),
                None => schema(format!("vertex {v:?} has no label")),
            })
            .collect::<Result<_, _>>()?;
        let matrix = self
            .matrix
            .iter()
            .map(|row| row.iter().map(|e| parse_entry(e)).collect())
            .collect::<Result<_, _>>()?;
        Ok(ChainParts {
            alphabet,
            vertices: self.vertices,
            labels,
            matrix,
        })
    }

    pub fn from_parts(parts: &ChainParts) -> Self {
        Self {
            rank: parts.alphabet.rank(),
            generators: parts.alphabet.names().iter().map(|c| c.to_string()).collect(),
            vertices: parts.vertices.clone(),
            labels: parts
                .vertices
                .iter()
                .zip(&parts.labels)
                .map(|(v, l)| (v.clone(), parts.alphabet.format(l)))
                .collect(),
            matrix: parts
                .matrix
                .iter()
                .map(|row| row.iter().map(format_rational).collect())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionFile {
    pub points: Vec<String>,
    pub measure: Vec<String>,
    pub generators: BTreeMap<String, Vec<usize>>,
}

impl ActionFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Orders the generator maps by `alphabet`, which must name exactly the same generators.
    pub fn into_parts(self, alphabet: &Alphabet) -> Result<ActionParts, FormatError> {
        for name in self.generators.keys() {
            let mut chars = name.chars();
            let known = match (chars.next(), chars.next()) {
                (Some(c), None) => alphabet.index_of(c).is_some(),
                _ => false,
            };
            if !known {
                return schema(format!("action generator {name:?} is not a chain generator"));
            }
        }
        let maps = alphabet
            .names()
            .iter()
            .map(|c| match self.generators.get(&c.to_string()) {
                Some(map) => Ok(map.clone()),
                None => schema(format!("action does not define generator {c:?}")),
            })
            .collect::<Result<_, _>>()?;
        let measure = self
            .measure
            .iter()
            .map(|m| parse_entry(m))
            .collect::<Result<_, _>>()?;
        Ok(ActionParts {
            points: self.points,
            measure,
            maps,
        })
    }

    pub fn from_parts(parts: &ActionParts, alphabet: &Alphabet) -> Self {
        Self {
            points: parts.points.clone(),
            measure: parts.measure.iter().map(format_rational).collect(),
            generators: alphabet
                .names()
                .iter()
                .zip(&parts.maps)
                .map(|(c, map)| (c.to_string(), map.clone()))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    pub k: usize,
    pub u: String,
    pub w: String,
    pub p: Vec<String>,
    pub q: Vec<String>,
    pub p_star: Vec<String>,
    pub q_star: Vec<String>,
}

impl CertificateFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_certificate(m: &MarkovSystem, cert: &GoodSubgraphCertificate) -> Self {
        let names = |path: &[usize]| path.iter().map(|&v| m.vertex_name(v).to_string()).collect();
        Self {
            k: cert.k,
            u: m.vertex_name(cert.u).into(),
            w: m.vertex_name(cert.w).into(),
            p: names(&cert.p),
            q: names(&cert.q),
            p_star: names(&cert.p_star),
            q_star: names(&cert.q_star),
        }
    }

    /// Resolves vertex names; the result still needs `validate_certificate`.
    pub fn to_certificate(&self, m: &MarkovSystem) -> Result<GoodSubgraphCertificate, FormatError> {
        let index = |name: &str| {
            m.vertex_index(name)
                .ok_or_else(|| FormatError::Schema(format!("certificate names unknown vertex {name:?}")))
        };
        let path = |names: &[String]| names.iter().map(|n| index(n)).collect::<Result<Vec<_>, _>>();
        Ok(GoodSubgraphCertificate {
            k: self.k,
            u: index(&self.u)?,
            w: index(&self.w)?,
            p: path(&self.p)?,
            q: path(&self.q)?,
            p_star: path(&self.p_star)?,
            q_star: path(&self.q_star)?,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::admissibility::{find_good_subgraph, validate_certificate};
    use crate::chain::{builtin_surface_special, builtin_uniform};
    use crate::rational::ratio;

    const CHAIN: &str = r#"{
        "rank": 2,
        "generators": ["a", "b"],
        "vertices": ["x", "y"],
        "labels": { "x": "a", "y": "ab'" },
        "matrix": [["1/2", "1/2"], ["1", "0"]]
    }"#;

    #[test]
    fn chain_round_trip() {
        let parts = ChainFile::parse(CHAIN).unwrap().into_parts().unwrap();
        assert_eq!(parts.matrix[0][1], ratio(1, 2));
        assert_eq!(parts.alphabet.format(&parts.labels[1]), "ab'");
        let again = ChainFile::from_parts(&parts).into_parts().unwrap();
        assert_eq!(again, parts);
        let surface = builtin_surface_special();
        let back = ChainFile::from_parts(surface.parts()).into_parts().unwrap();
        assert_eq!(&back, surface.parts());
    }

    #[test]
    fn chain_schema_errors() {
        let missing_label = CHAIN.replace(r#", "y": "ab'""#, "");
        assert!(matches!(
            ChainFile::parse(&missing_label).unwrap().into_parts(),
            Err(FormatError::Schema(_))
        ));
        let bad_rank = CHAIN.replace(r#""rank": 2"#, r#""rank": 3"#);
        assert!(ChainFile::parse(&bad_rank).unwrap().into_parts().is_err());
        let bad_entry = CHAIN.replace(r#""1/2", "1/2""#, r#""1/2", "half""#);
        assert!(ChainFile::parse(&bad_entry).unwrap().into_parts().is_err());
        assert!(matches!(ChainFile::parse("{"), Err(FormatError::Json(_))));
        let bad_word = CHAIN.replace("ab'", "az");
        assert!(matches!(
            ChainFile::parse(&bad_word).unwrap().into_parts(),
            Err(FormatError::Word(_))
        ));
    }

    #[test]
    fn action_round_trip() {
        let text = r#"{ "points": ["p", "q", "r"], "measure": ["1/3", "1/3", "1/3"],
                        "generators": { "b": [0, 1, 2], "a": [1, 2, 0] } }"#;
        let ab = Alphabet::standard(2);
        let parts = ActionFile::parse(text).unwrap().into_parts(&ab).unwrap();
        assert_eq!(parts.maps, vec![vec![1, 2, 0], vec![0, 1, 2]]);
        assert_eq!(ActionFile::from_parts(&parts, &ab).into_parts(&ab).unwrap(), parts);

        let missing = r#"{ "points": ["p"], "measure": ["1"], "generators": { "a": [0] } }"#;
        assert!(ActionFile::parse(missing).unwrap().into_parts(&ab).is_err());
        let extra = r#"{ "points": ["p"], "measure": ["1"], "generators": { "a": [0], "b": [0], "c": [0] } }"#;
        assert!(ActionFile::parse(extra).unwrap().into_parts(&ab).is_err());
    }

    #[test]
    fn certificate_round_trip() {
        let m = builtin_uniform(2).unwrap();
        let cert = find_good_subgraph(&m, 1).unwrap();
        let file = CertificateFile::from_certificate(&m, &cert);
        assert_eq!(file.p, vec!["b".to_string()]);
        assert_eq!(file.q, vec!["b'".to_string()]);
        let reloaded = CertificateFile::parse(&file.to_json()).unwrap();
        let back = reloaded.to_certificate(&m).unwrap();
        assert_eq!(back, cert);
        assert!(validate_certificate(&m, &back).is_empty());

        let mut bad = file.clone();
        bad.u = "nowhere".into();
        assert!(bad.to_certificate(&m).is_err());
    }
}
