use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use serde::Serialize;

use polar_mwd::io::{concat_from_json, spec_from_json};
use polar_mwd::{construct_ga, construct_pw, CodeSpec, ConcatSpec, CrcPolynomial, Mapping};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Pw,
    Ga,
}

/// Either a spec file or inline construction flags.
#[derive(Debug, Clone, Args, Serialize)]
pub struct CodeArgs {
    /// Code description written by `construct` (or a manifest wrapping one).
    #[arg(long, conflicts_with_all = ["n", "k", "rate"])]
    pub spec: Option<String>,
    /// log2 of the code length.
    #[arg(long)]
    pub n: Option<u32>,
    /// Number of information bits.
    #[arg(long, conflicts_with = "rate")]
    pub k: Option<usize>,
    /// Code rate as a fraction (`1/2`) or decimal; K = round(N·R), halves up.
    #[arg(long)]
    pub rate: Option<String>,
    #[arg(long = "construction", value_enum, default_value = "pw")]
    pub method: Method,
    /// Design E_b/N_0 in dB for the GA construction.
    #[arg(long)]
    pub design_snr_db: Option<f64>,
}

/// Rounds `len·rate` half up. Fractions are evaluated exactly.
pub fn dimension_from_rate(len: usize, rate: &str) -> Result<usize> {
    let rate = rate.trim();
    let k = if let Some((p, q)) = rate.split_once('/') {
        let p: u128 = p.trim().parse().context("rate numerator")?;
        let q: u128 = q.trim().parse().context("rate denominator")?;
        if q == 0 || p > q {
            bail!("rate {rate} is not in (0, 1]");
        }
        ((2 * len as u128 * p + q) / (2 * q)) as usize
    } else {
        let r: f64 = rate.parse().context("rate")?;
        if !(r > 0.0 && r <= 1.0) {
            bail!("rate {rate} is not in (0, 1]");
        }
        (len as f64 * r + 0.5).floor() as usize
    };
    if k == 0 {
        bail!("rate {rate} gives K = 0 at N = {len}");
    }
    Ok(k)
}

pub fn read_document(path: &str) -> Result<String> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).with_context(|| format!("parsing {path}"))?;
    // accept a manifest wrapping the document
    let doc = match value.get("result") {
        Some(inner) if value.get("command").is_some() => inner.clone(),
        _ => value,
    };
    Ok(doc.to_string())
}

impl CodeArgs {
    pub fn build(&self, extra_k: usize) -> Result<CodeSpec> {
        if let Some(path) = &self.spec {
            return Ok(spec_from_json(&read_document(path)?)?);
        }
        let Some(n) = self.n else {
            bail!("give either --spec or --n with --k/--rate");
        };
        if n == 0 || n > 24 {
            bail!("--n must be in 1..=24");
        }
        let len = 1usize << n;
        let k = match (self.k, &self.rate) {
            (Some(k), _) => k,
            (None, Some(rate)) => dimension_from_rate(len, rate)?,
            (None, None) => bail!("give --k or --rate"),
        } + extra_k;
        Ok(match self.method {
            Method::Pw => {
                if self.design_snr_db.is_some() {
                    bail!("--design-snr-db only applies to the ga construction");
                }
                construct_pw(n, k)?
            }
            Method::Ga => {
                let Some(snr) = self.design_snr_db else {
                    bail!("the ga construction needs --design-snr-db");
                };
                construct_ga(n, k, snr, k as f64 / len as f64)?
            }
        })
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ConcatArgs {
    /// Concatenated code description; replaces all inline flags.
    #[arg(long = "concat-spec", conflicts_with_all = ["n", "ki", "crc"])]
    pub concat_spec: Option<String>,
    #[arg(long)]
    pub n: Option<u32>,
    /// Message length K_I; the inner code has K_I + K_P information bits.
    #[arg(long)]
    pub ki: Option<usize>,
    /// CRC polynomial in hex including the leading term, e.g. 0x59.
    #[arg(long)]
    pub crc: Option<String>,
    #[arg(
        long = "construction",
        visible_alias = "method",
        value_enum,
        default_value = "pw"
    )]
    pub method: Method,
    #[arg(long)]
    pub design_snr_db: Option<f64>,
    /// `ascending` or a comma-separated list of u positions for s_1..s_K.
    #[arg(long, default_value = "ascending")]
    pub mapping: String,
}

pub fn parse_mapping(text: &str) -> Result<Mapping> {
    if text.trim() == "ascending" {
        return Ok(Mapping::Ascending);
    }
    let positions = text
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .context("mapping must be `ascending` or a comma-separated index list")?;
    Ok(Mapping::Explicit(positions))
}

impl ConcatArgs {
    pub fn build(&self) -> Result<ConcatSpec> {
        if let Some(path) = &self.concat_spec {
            return Ok(concat_from_json(&read_document(path)?)?);
        }
        let (Some(n), Some(ki), Some(crc)) = (self.n, self.ki, &self.crc) else {
            bail!("give either --concat-spec or all of --n, --ki and --crc");
        };
        let crc: CrcPolynomial = crc.parse()?;
        let code = CodeArgs {
            spec: None,
            n: Some(n),
            k: Some(ki),
            rate: None,
            method: self.method,
            design_snr_db: self.design_snr_db,
        };
        let inner = code.build(crc.degree() as usize)?;
        Ok(ConcatSpec::new(inner, crc, parse_mapping(&self.mapping)?)?)
    }
}
