//! JSON documents for code descriptions, results and run manifests.

use serde::{Deserialize, Serialize};

use crate::bits::Codeword;
use crate::concat::{ConcatSpec, CrcPolynomial, Mapping};
use crate::construct::{construct_ga, construct_pw};
use crate::enumeration::{Mode, MwdResult, ResultFlag};
use crate::error::{Error, Result};
use crate::polar::{CodeSpec, Construction};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CodeSpecDoc {
    /// `log2 N`.
    pub n: u32,
    /// `pw`, `ga` or `explicit`.
    pub construction: String,
    #[serde(rename = "K")]
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub design_snr_db: Option<f64>,
    /// 1-based, ascending. When absent the set is rebuilt from the
    /// construction.
    #[serde(
        rename = "info_set_A",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    pub info_set_a: Option<Vec<usize>>,
}

impl CodeSpecDoc {
    pub fn from_spec(spec: &CodeSpec) -> Self {
        let (construction, design_snr_db) = match spec.construction() {
            Construction::Pw => ("pw", None),
            Construction::Ga { design_snr_db } => ("ga", Some(*design_snr_db)),
            Construction::Explicit => ("explicit", None),
        };
        Self {
            n: spec.log_len(),
            construction: construction.into(),
            k: spec.dimension(),
            design_snr_db,
            info_set_a: Some(spec.info_set_a().to_vec()),
        }
    }

    pub fn to_spec(&self) -> Result<CodeSpec> {
        let construction = match (self.construction.as_str(), self.design_snr_db) {
            ("pw", _) => Construction::Pw,
            ("ga", Some(design_snr_db)) => Construction::Ga { design_snr_db },
            ("ga", None) => {
                return Err(Error::Document(
                    "ga construction needs design_snr_db".into(),
                ))
            }
            ("explicit", _) => Construction::Explicit,
            (other, _) => return Err(Error::Document(format!("unknown construction {other:?}"))),
        };
        let spec = match (&self.info_set_a, &construction) {
            (Some(a), _) => CodeSpec::from_info_set_a(self.n, a)?.with_construction(construction),
            (None, Construction::Pw) => construct_pw(self.n, self.k)?,
            (None, Construction::Ga { design_snr_db }) => {
                let rate = self.k as f64 / (1u64 << self.n) as f64;
                construct_ga(self.n, self.k, *design_snr_db, rate)?
            }
            (None, Construction::Explicit) => {
                return Err(Error::Document(
                    "explicit construction needs info_set_A".into(),
                ))
            }
        };
        if spec.dimension() != self.k {
            return Err(Error::Document(format!(
                "K = {} but the information set has {} entries",
                self.k,
                spec.dimension()
            )));
        }
        Ok(spec)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MappingDoc {
    Named(String),
    Explicit(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcatSpecDoc {
    #[serde(flatten)]
    pub inner: CodeSpecDoc,
    pub crc_hex: CrcPolynomial,
    pub k_p: u32,
    pub mapping: MappingDoc,
}

impl ConcatSpecDoc {
    pub fn from_spec(spec: &ConcatSpec) -> Self {
        Self {
            inner: CodeSpecDoc::from_spec(spec.inner()),
            crc_hex: spec.crc(),
            k_p: spec.crc().degree(),
            mapping: match spec.mapping() {
                Mapping::Ascending => MappingDoc::Named("ascending".into()),
                Mapping::Explicit(p) => MappingDoc::Explicit(p.clone()),
            },
        }
    }

    pub fn to_spec(&self) -> Result<ConcatSpec> {
        if self.crc_hex.degree() != self.k_p {
            return Err(Error::Document(format!(
                "k_p = {} but {} has degree {}",
                self.k_p,
                self.crc_hex,
                self.crc_hex.degree()
            )));
        }
        let mapping = match &self.mapping {
            MappingDoc::Named(s) if s == "ascending" => Mapping::Ascending,
            MappingDoc::Named(s) => return Err(Error::Document(format!("unknown mapping {s:?}"))),
            MappingDoc::Explicit(p) => Mapping::Explicit(p.clone()),
        };
        ConcatSpec::new(self.inner.to_spec()?, self.crc_hex, mapping)
    }
}

/// One line of enumeration output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub n: u32,
    #[serde(rename = "K")]
    pub k: usize,
    pub construction: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub crc_hex: Option<CrcPolynomial>,
    pub d_min: u32,
    pub a_dmin: u64,
    pub avn: u64,
    /// `avn / (N log2 N)`, the cost in units of one SC decoding pass.
    #[serde(default)]
    pub avn_per_n_log_n: f64,
    pub mode: Mode,
    pub elapsed_ms: f64,
    pub flags: Vec<ResultFlag>,
}

fn per_sc_pass(avn: u64, len: usize) -> f64 {
    let unit = len as f64 * (len as f64).log2();
    if unit > 0.0 {
        avn as f64 / unit
    } else {
        avn as f64
    }
}

impl ResultRecord {
    pub fn new(spec: &CodeSpec, result: &MwdResult, mode: Mode, elapsed_ms: f64) -> Self {
        let doc = CodeSpecDoc::from_spec(spec);
        Self {
            n: doc.n,
            k: doc.k,
            construction: doc.construction,
            crc_hex: None,
            d_min: result.d_min,
            a_dmin: result.a_dmin,
            avn: result.avn,
            avn_per_n_log_n: per_sc_pass(result.avn, spec.len()),
            mode,
            elapsed_ms,
            flags: result.flags.clone(),
        }
    }
}

/// Envelope around every payload: what ran, with which resolved
/// parameters, and what it produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: serde_json::Value,
    pub version: String,
    pub elapsed_ms: f64,
    pub result: serde_json::Value,
}

impl RunManifest {
    pub fn new<P: Serialize, R: Serialize>(
        command: &str,
        parameters: &P,
        elapsed_ms: f64,
        result: &R,
    ) -> Result<Self> {
        Ok(Self {
            command: command.into(),
            parameters: to_value(parameters)?,
            version: env!("CARGO_PKG_VERSION").into(),
            elapsed_ms,
            result: to_value(result)?,
        })
    }

    /// Single-line JSON.
    pub fn to_line(&self) -> Result<String> {
        serde_json::to_string(self).map_err(|e| Error::Document(e.to_string()))
    }
}

fn to_value<T: Serialize>(value: &T) -> Result<serde_json::Value> {
    serde_json::to_value(value).map_err(|e| Error::Document(e.to_string()))
}

pub fn spec_to_json(spec: &CodeSpec) -> Result<String> {
    serde_json::to_string_pretty(&CodeSpecDoc::from_spec(spec))
        .map_err(|e| Error::Document(e.to_string()))
}

pub fn spec_from_json(text: &str) -> Result<CodeSpec> {
    let doc: CodeSpecDoc =
        serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
    doc.to_spec()
}

pub fn concat_to_json(spec: &ConcatSpec) -> Result<String> {
    serde_json::to_string_pretty(&ConcatSpecDoc::from_spec(spec))
        .map_err(|e| Error::Document(e.to_string()))
}

pub fn concat_from_json(text: &str) -> Result<ConcatSpec> {
    let doc: ConcatSpecDoc =
        serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
    doc.to_spec()
}

/// One hex row per codeword, `c_1` as the most significant bit.
pub fn codewords_to_hex(codewords: &[Codeword]) -> String {
    codewords.iter().map(|c| c.to_hex() + "\n").collect()
}

pub fn codewords_from_hex(len: usize, text: &str) -> Result<Vec<Codeword>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| {
            Codeword::from_hex(len, l)
                .ok_or_else(|| Error::Document(format!("bad codeword row {l:?}")))
        })
        .collect()
}
