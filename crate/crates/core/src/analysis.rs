//! Error-rate bounds, closed-form list-decoder complexity and CRC search.

use serde::{Deserialize, Serialize};

use crate::concat::{pc_scem, ConcatSpec, CrcPolynomial, Mapping};
use crate::enumeration::Mode;
use crate::error::{Error, Result};
use crate::polar::CodeSpec;

/// Largest CRC degree `crc_optimize` accepts.
pub const MAX_SEARCH_DEGREE: u32 = 16;

/// Gaussian tail probability `Q(x) = ½·erfc(x/√2)`.
pub fn q_function(x: f64) -> f64 {
    0.5 * libm::erfc(x / std::f64::consts::SQRT_2)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundPoint {
    pub eb_n0_db: f64,
    /// The bound itself. It can exceed 1 at low SNR.
    pub value: f64,
}

impl BoundPoint {
    /// The bound clamped to a probability.
    pub fn probability(&self) -> f64 {
        self.value.min(1.0)
    }
}

fn pairwise_term(d: u32, rate: f64, eb_n0_db: f64) -> f64 {
    let ebn0 = 10f64.powf(eb_n0_db / 10.0);
    q_function((2.0 * d as f64 * rate * ebn0).sqrt())
}

/// Approximate union bound `A_dmin · Q(√(2·d_min·R·E_b/N_0))`.
pub fn aub(d_min: u32, a_dmin: u64, rate: f64, eb_n0_db: f64) -> BoundPoint {
    BoundPoint {
        eb_n0_db,
        value: a_dmin as f64 * pairwise_term(d_min, rate, eb_n0_db),
    }
}

/// Union bound over a (partial) weight spectrum of `(d, A_d)` pairs.
pub fn union_bound(spectrum: &[(u32, u64)], rate: f64, eb_n0_db: f64) -> Result<BoundPoint> {
    if spectrum.is_empty() {
        return Err(Error::InvalidParameters("spectrum is empty".into()));
    }
    let mut weights: Vec<u32> = spectrum.iter().map(|&(d, _)| d).collect();
    weights.sort_unstable();
    if weights.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidParameters(
            "spectrum weights must be distinct".into(),
        ));
    }
    if weights[0] == 0 {
        return Err(Error::InvalidParameters(
            "spectrum must not contain weight 0".into(),
        ));
    }
    let value = spectrum
        .iter()
        .map(|&(d, a)| a as f64 * pairwise_term(d, rate, eb_n0_db))
        .sum();
    Ok(BoundPoint { eb_n0_db, value })
}

/// Evenly spaced `E_b/N_0` grid from `from_db` to `to_db` inclusive.
pub fn db_grid(from_db: f64, to_db: f64, step_db: f64) -> Result<Vec<f64>> {
    if step_db.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater)
        || !from_db.is_finite()
        || !to_db.is_finite()
        || to_db < from_db
    {
        return Err(Error::InvalidParameters(format!(
            "bad grid {from_db}..{to_db} step {step_db}"
        )));
    }
    let steps = ((to_db - from_db) / step_db + 1e-9).floor() as usize;
    Ok((0..=steps).map(|i| from_db + i as f64 * step_db).collect())
}

pub fn aub_curve(d_min: u32, a_dmin: u64, rate: f64, grid: &[f64]) -> Vec<BoundPoint> {
    grid.iter()
        .map(|&db| aub(d_min, a_dmin, rate, db))
        .collect()
}

pub fn bound_csv(points: &[BoundPoint]) -> String {
    let mut out = String::from("eb_n0_db,value\n");
    for p in points {
        out += &format!("{},{:e}\n", p.eb_n0_db, p.value);
    }
    out
}

/// `min(2^K·N·log₂N, M·L·N·log₂N)`, saturating at `u128::MAX`.
pub fn scl_avn(k: u32, len: u64, list_size: u64, levels: u64) -> u128 {
    let log = if len <= 1 {
        0
    } else {
        (63 - (len - 1).leading_zeros() + 1) as u128
    };
    let per_path = (len as u128).saturating_mul(log);
    let exhaustive = if k >= 128 {
        u128::MAX
    } else {
        (1u128 << k).saturating_mul(per_path)
    };
    let list = (levels as u128)
        .saturating_mul(list_size as u128)
        .saturating_mul(per_path);
    exhaustive.min(list)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrcCandidate {
    pub crc_hex: CrcPolynomial,
    pub d_min: u32,
    pub a_dmin: u64,
    pub avn: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrcFailure {
    pub crc_hex: CrcPolynomial,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrcSearchReport {
    /// Best first: larger `d_min`, then smaller `A_dmin`, then smaller
    /// polynomial.
    pub ranked: Vec<CrcCandidate>,
    pub failures: Vec<CrcFailure>,
}

impl CrcSearchReport {
    pub fn winner(&self) -> Option<&CrcCandidate> {
        self.ranked.first()
    }

    pub fn to_table(&self) -> String {
        let mut out = String::from("g(x)\td_min\tA_dmin\n");
        for c in &self.ranked {
            out += &format!("{}\t{}\t{}\n", c.crc_hex, c.d_min, c.a_dmin);
        }
        out
    }
}

/// All degree-`k_p` polynomials with unit leading and constant terms, in
/// increasing order.
pub fn crc_candidates(k_p: u32) -> Result<Vec<CrcPolynomial>> {
    if k_p == 0 || k_p > MAX_SEARCH_DEGREE {
        return Err(Error::InvalidParameters(format!(
            "CRC degree must be in 1..={MAX_SEARCH_DEGREE}, got {k_p}"
        )));
    }
    let lead = 1u64 << k_p;
    (0..1u64 << (k_p - 1))
        .map(|mid| CrcPolynomial::from_bits(lead | (mid << 1) | 1))
        .collect()
}

/// Runs the concatenated enumeration for every candidate CRC of degree
/// `k_p` on `inner` (whose dimension must be `k_i + k_p`) and ranks them.
pub fn crc_optimize(
    inner: &CodeSpec,
    k_i: usize,
    k_p: u32,
    mapping: &Mapping,
) -> Result<CrcSearchReport> {
    if inner.dimension() != k_i + k_p as usize {
        return Err(Error::InvalidParameters(format!(
            "inner dimension {} differs from K_I + K_P = {}",
            inner.dimension(),
            k_i + k_p as usize
        )));
    }
    let candidates = crc_candidates(k_p)?;
    let evaluate = |g: &CrcPolynomial| -> std::result::Result<CrcCandidate, CrcFailure> {
        ConcatSpec::new(inner.clone(), *g, mapping.clone())
            .and_then(|c| pc_scem(&c, Mode::Count))
            .map(|r| CrcCandidate {
                crc_hex: *g,
                d_min: r.d_min,
                a_dmin: r.a_dmin,
                avn: r.avn,
            })
            .map_err(|e| CrcFailure {
                crc_hex: *g,
                error: e.to_string(),
            })
    };
    #[cfg(feature = "parallel")]
    let outcomes: Vec<_> = {
        use rayon::prelude::*;
        candidates.par_iter().map(evaluate).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let outcomes: Vec<_> = candidates.iter().map(evaluate).collect();

    let mut ranked = Vec::new();
    let mut failures = Vec::new();
    for outcome in outcomes {
        match outcome {
            Ok(c) => ranked.push(c),
            Err(f) => failures.push(f),
        }
    }
    ranked.sort_by(|a, b| {
        b.d_min
            .cmp(&a.d_min)
            .then(a.a_dmin.cmp(&b.a_dmin))
            .then(a.crc_hex.cmp(&b.crc_hex))
    });
    Ok(CrcSearchReport { ranked, failures })
}
