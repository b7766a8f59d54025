//! JSON series documents:
//!
//! ```json
//! { "d": 2, "level": 4, "scalar": "rational",
//!   "terms": [ { "word": "", "coeff": "1" }, { "word": "1122", "coeff": "1/8" } ] }
//! ```
//!
//! Words are digit strings, rationals are lowest-terms `"p/q"` strings,
//! floats are JSON numbers. Zero coefficients are omitted.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::scalar::Scalar;
use crate::tensor::TensorSeries;
use crate::word::Word;
use crate::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeriesDoc {
    pub d: usize,
    pub level: usize,
    pub scalar: String,
    pub terms: Vec<TermDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermDoc {
    pub word: String,
    pub coeff: Value,
}

impl<S: Scalar> TensorSeries<S> {
    pub fn to_doc(&self) -> SeriesDoc {
        SeriesDoc {
            d: self.d(),
            level: self.level(),
            scalar: S::MODE.tag().to_string(),
            terms: self
                .terms()
                .map(|(w, c)| TermDoc { word: w.to_string(), coeff: c.to_json() })
                .collect(),
        }
    }

    pub fn from_doc(doc: &SeriesDoc) -> Result<Self> {
        if doc.scalar != S::MODE.tag() {
            return Err(Error::Format(format!(
                "scalar mode `{}` does not match `{}`",
                doc.scalar,
                S::MODE.tag()
            )));
        }
        let terms = doc
            .terms
            .iter()
            .map(|t| Ok((Word::parse(&t.word, doc.d)?, S::from_json(&t.coeff)?)))
            .collect::<Result<Vec<_>>>()?;
        TensorSeries::from_terms(doc.d, doc.level, terms)
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_doc())?)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let doc: SeriesDoc = serde_json::from_str(s)?;
        Self::from_doc(&doc)
    }
}
