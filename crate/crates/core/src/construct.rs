//! Reliability-based choice of the information set.
//!
//! Both constructions score the synthetic channel seen by `u_i`. Since
//! `B·G = G·B`, the codeword `u·B·G` is the bit-reversed image of
//! `u·F^{⊗n}`, so `u` is in natural order and the most significant bit of
//! `i - 1` selects the polarization step applied first to the physical
//! channel. The `K` best positions form `A`. Ties go to the larger index.

use crate::error::{Error, Result};
use crate::polar::{CodeSpec, Construction};

/// Base of the polarization-weight expansion, `2^{1/4}`.
pub const PW_BETA: f64 = 1.189_207_115_002_721;

/// Polarization weight of 0-based `u` index `j`: `Σ_t b_t β^t` over the
/// binary digits `b_t` of `j`.
pub fn polarization_weight(j: usize, n: u32) -> f64 {
    (0..n)
        .filter(|&t| (j >> t) & 1 == 1)
        .map(|t| PW_BETA.powi(t as i32))
        .sum()
}

fn check_dims(n: u32, k: usize) -> Result<usize> {
    if n == 0 || n > crate::polar::MAX_LOG_LEN {
        return Err(Error::InvalidParameters(format!(
            "unsupported log2 length {n}"
        )));
    }
    let len = 1usize << n;
    if k == 0 || k > len {
        return Err(Error::InvalidParameters(format!(
            "K must be in 1..={len}, got {k}"
        )));
    }
    Ok(len)
}

/// The `k` most reliable 0-based indices by score; ties favour the larger
/// index.
fn top_k(scores: &[f64], k: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(b.cmp(&a)));
    order.truncate(k);
    order
}

pub fn construct_pw(n: u32, k: usize) -> Result<CodeSpec> {
    let len = check_dims(n, k)?;
    let scores: Vec<f64> = (0..len).map(|j| polarization_weight(j, n)).collect();
    let a: Vec<usize> = top_k(&scores, k).into_iter().map(|j| j + 1).collect();
    Ok(CodeSpec::from_info_set_a(n, &a)?.with_construction(Construction::Pw))
}

/// Check-node update of the LLR mean, `φ⁻¹(1 - (1 - φ(t))²)`, in the
/// four-segment closed form that stays accurate for large means.
pub fn ga_check_node_mean(t: f64) -> f64 {
    if t > 12.0 {
        0.9861 * t - 2.3152
    } else if t > 3.5 {
        t * (9.005e-3 * t + 0.7694) - 0.9507
    } else if t > 1.0 {
        t * (0.062883 * t + 0.3678) - 0.1627
    } else {
        t * (0.2202 * t + 0.06448)
    }
}

/// LLR means of every `u` position after Gaussian-approximation density
/// evolution, for BPSK over AWGN at `E_b/N_0 = design_snr_db` with code
/// rate `rate` (noise variance `σ² = 1 / (2·R·E_b/N_0)`).
pub fn ga_means(n: u32, design_snr_db: f64, rate: f64) -> Vec<f64> {
    let ebn0 = 10f64.powf(design_snr_db / 10.0);
    let sigma2 = 1.0 / (2.0 * rate * ebn0);
    let mut means = vec![2.0 / sigma2];
    // each stage appends one index bit below those already chosen, so the
    // first stage (closest to the channel) ends up most significant
    for _ in 0..n {
        let mut next = Vec::with_capacity(means.len() * 2);
        for &m in &means {
            next.push(ga_check_node_mean(m));
            next.push(2.0 * m);
        }
        means = next;
    }
    means
}

/// Gaussian-approximation construction. `code_rate_for_snr` sets the
/// `E_b/N_0` to noise-variance conversion and is usually `K / N`.
pub fn construct_ga(
    n: u32,
    k: usize,
    design_snr_db: f64,
    code_rate_for_snr: f64,
) -> Result<CodeSpec> {
    check_dims(n, k)?;
    if !design_snr_db.is_finite() {
        return Err(Error::InvalidParameters("design SNR must be finite".into()));
    }
    if !(code_rate_for_snr > 0.0 && code_rate_for_snr <= 1.0) {
        return Err(Error::InvalidParameters("rate must be in (0, 1]".into()));
    }
    let means = ga_means(n, design_snr_db, code_rate_for_snr);
    let a: Vec<usize> = top_k(&means, k).into_iter().map(|j| j + 1).collect();
    Ok(CodeSpec::from_info_set_a(n, &a)?.with_construction(Construction::Ga { design_snr_db }))
}
