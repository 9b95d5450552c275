//! Polar code description, encoding and the `(u ⊕ v | v)` split.
//!
//! A code of length `N = 2^n` is `c = u·B·G = v·G` with `G = F^{⊗n}`,
//! `F = [1 0; 1 1]` and `B` the bit-reversal permutation. The information
//! set `A` indexes `u`, the set `B` indexes `v`; both are 1-based.
//! Row `j` of `G` has a one in column `k` exactly when the 0-based bits of
//! `k - 1` are a subset of those of `j - 1`, so `G` is lower triangular and
//! row `j` has weight `2^popcount(j - 1)`.

use serde::{Deserialize, Serialize};

use crate::bits::{self, Codeword};
use crate::error::{Error, Result};

/// Largest supported `log2 N`.
pub const MAX_LOG_LEN: u32 = 24;

/// How an information set was chosen.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "construction", rename_all = "lowercase")]
pub enum Construction {
    Pw,
    Ga { design_snr_db: f64 },
    Explicit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CodeSpec {
    log_len: u32,
    info_a: Vec<usize>,
    info_b: Vec<usize>,
    mask_b: Vec<bool>,
    construction: Construction,
}

impl CodeSpec {
    /// Builds a code from its `u`-domain information set `A` (1-based).
    pub fn from_info_set_a(n: u32, info_a: &[usize]) -> Result<Self> {
        Self::check_len(n)?;
        let len = 1usize << n;
        let mut a = info_a.to_vec();
        a.sort_unstable();
        a.dedup();
        if a.len() != info_a.len() {
            return Err(Error::InvalidParameters(
                "duplicate index in information set".into(),
            ));
        }
        if let Some(&bad) = a.iter().find(|&&i| i == 0 || i > len) {
            return Err(Error::IndexOutOfRange { index: bad, len });
        }
        let mut b: Vec<usize> = a.iter().map(|&i| reverse_bits(i - 1, n) + 1).collect();
        b.sort_unstable();
        Ok(Self::assemble(n, a, b))
    }

    /// Builds a code from its `v`-domain information set `B` (1-based).
    pub fn from_info_set_b(n: u32, info_b: &[usize]) -> Result<Self> {
        Self::check_len(n)?;
        let a: Vec<usize> = info_b
            .iter()
            .map(|&j| {
                if j == 0 || j > 1 << n {
                    Err(Error::IndexOutOfRange {
                        index: j,
                        len: 1 << n,
                    })
                } else {
                    Ok(reverse_bits(j - 1, n) + 1)
                }
            })
            .collect::<Result<_>>()?;
        Self::from_info_set_a(n, &a)
    }

    fn check_len(n: u32) -> Result<()> {
        if n == 0 || n > MAX_LOG_LEN {
            return Err(Error::InvalidParameters(format!(
                "log2 code length must be in 1..={MAX_LOG_LEN}, got {n}"
            )));
        }
        Ok(())
    }

    fn assemble(n: u32, info_a: Vec<usize>, info_b: Vec<usize>) -> Self {
        let mut mask_b = vec![false; 1 << n];
        for &j in &info_b {
            mask_b[j - 1] = true;
        }
        Self {
            log_len: n,
            info_a,
            info_b,
            mask_b,
            construction: Construction::Explicit,
        }
    }

    pub fn with_construction(mut self, construction: Construction) -> Self {
        self.construction = construction;
        self
    }

    pub fn log_len(&self) -> u32 {
        self.log_len
    }

    /// Code length `N`.
    pub fn len(&self) -> usize {
        1 << self.log_len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of information bits `K`.
    pub fn dimension(&self) -> usize {
        self.info_b.len()
    }

    pub fn rate(&self) -> f64 {
        self.dimension() as f64 / self.len() as f64
    }

    /// Ascending 1-based `u`-domain information set.
    pub fn info_set_a(&self) -> &[usize] {
        &self.info_a
    }

    /// Ascending 1-based `v`-domain information set.
    pub fn info_set_b(&self) -> &[usize] {
        &self.info_b
    }

    /// Whether 1-based position `j` of `v` is an information bit.
    pub fn is_info_b(&self, j: usize) -> bool {
        j >= 1 && j <= self.len() && self.mask_b[j - 1]
    }

    pub(crate) fn mask_b(&self) -> &[bool] {
        &self.mask_b
    }

    pub fn construction(&self) -> &Construction {
        &self.construction
    }

    /// Row `j` (1-based) of `G` as a codeword.
    pub fn generator_row(&self, j: usize) -> Codeword {
        Codeword::from_words(self.len(), generator_row_words(self.len(), j - 1))
    }
}

pub(crate) fn reverse_bits(i: usize, n: u32) -> usize {
    if n == 0 {
        0
    } else {
        i.reverse_bits() >> (usize::BITS - n)
    }
}

/// Bit-reversal permutation of a 0-based index on `n` bits.
pub fn bit_reversal(i: usize, n: u32) -> Result<usize> {
    if n > MAX_LOG_LEN || i >= 1 << n {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: 1 << n.min(MAX_LOG_LEN),
        });
    }
    Ok(reverse_bits(i, n))
}

/// Weight of row `i` (1-based) of `F^{⊗n}`.
pub fn generator_row_weight(i: usize, n: u32) -> Result<u32> {
    if n > MAX_LOG_LEN || i == 0 || i > 1 << n {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: 1 << n.min(MAX_LOG_LEN),
        });
    }
    Ok(1 << (i - 1).count_ones())
}

/// Minimum generator row weight over `B`. This is the exact minimum
/// distance of a polar code and a lower bound for any subcode of it.
pub fn min_weight_lower_bound(spec: &CodeSpec) -> Result<u32> {
    spec.info_b
        .iter()
        .map(|&j| 1u32 << (j - 1).count_ones())
        .min()
        .ok_or(Error::EmptyInfoSet)
}

/// Row-weight bound of a bare `v`-domain mask, `None` when empty.
pub(crate) fn mask_min_weight(mask: &[bool]) -> Option<u32> {
    mask.iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(j, _)| 1u32 << j.count_ones())
        .min()
}

/// Encodes `v` (length `N`, zero on frozen positions) into `c = v·G`.
pub fn encode(spec: &CodeSpec, v: &[bool]) -> Result<Codeword> {
    if v.len() != spec.len() {
        return Err(Error::InvalidParameters(format!(
            "input has length {}, code length is {}",
            v.len(),
            spec.len()
        )));
    }
    if let Some(j) = (0..v.len()).find(|&j| v[j] && !spec.mask_b[j]) {
        return Err(Error::NonzeroFrozenBit(j + 1));
    }
    let mut words = vec![0u64; bits::words_for(v.len())];
    for (j, &b) in v.iter().enumerate() {
        bits::set(&mut words, j, b);
    }
    polar_transform(&mut words, spec.log_len);
    Ok(Codeword::from_words(spec.len(), words))
}

const LANE_MASKS: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0F0F_0F0F_0F0F_0F0F,
    0x00FF_00FF_00FF_00FF,
    0x0000_FFFF_0000_FFFF,
    0x0000_0000_FFFF_FFFF,
];

/// In-place butterfly computing `x ← x·F^{⊗n}` on a packed vector of
/// length `2^n`: for every stage `b`, `x[j] ^= x[j | 2^b]` where bit `b` of
/// `j` is clear. `F^{⊗n}` is an involution, so this also inverts itself.
pub(crate) fn polar_transform(words: &mut [u64], n: u32) {
    for b in 0..n.min(6) {
        let shift = 1u32 << b;
        let mask = LANE_MASKS[b as usize];
        for w in words.iter_mut() {
            *w ^= (*w >> shift) & mask;
        }
    }
    for b in 6..n {
        let stride = 1usize << (b - 6);
        let mut base = 0;
        while base < words.len() {
            for w in base..base + stride {
                words[w] ^= words[w + stride];
            }
            base += 2 * stride;
        }
    }
}

/// Packed row `j` (0-based) of `F^{⊗n}` for length `len`.
pub(crate) fn generator_row_words(len: usize, j: usize) -> Vec<u64> {
    let mut words = vec![0u64; bits::words_for(len)];
    // ones at every submask of j
    let mut k = j;
    loop {
        bits::set(&mut words, k, true);
        if k == 0 {
            break;
        }
        k = (k - 1) & j;
    }
    words
}

/// The two half-length component codes of the `(c' ⊕ c'', c'')` split.
#[derive(Debug, Clone, PartialEq)]
pub struct PlotkinSplit {
    pub upper: CodeSpec,
    pub lower: CodeSpec,
}

impl PlotkinSplit {
    /// `B'` ⊆ `B''`, i.e. the first component is a subcode of the second.
    pub fn is_nested(&self) -> bool {
        self.upper.info_b.iter().all(|&i| self.lower.mask_b[i - 1])
    }
}

/// Splits a code of length `N ≥ 4` into `C'` (positions `1..=N/2` of `B`)
/// and `C''` (positions `N/2+1..=N`, shifted down by `N/2`). Fails with
/// [`Error::NotNested`] when `C'` is not a subcode of `C''`.
pub fn plotkin_split(spec: &CodeSpec) -> Result<PlotkinSplit> {
    if spec.len() < 4 {
        return Err(Error::InvalidParameters(
            "the split needs a code length of at least 4".into(),
        ));
    }
    let split = split_unchecked(spec);
    if let Some(&index) = split
        .upper
        .info_b
        .iter()
        .find(|&&i| !split.lower.mask_b[i - 1])
    {
        return Err(Error::NotNested {
            len: spec.len(),
            index,
        });
    }
    Ok(split)
}

pub(crate) fn split_unchecked(spec: &CodeSpec) -> PlotkinSplit {
    let half = spec.len() / 2;
    let n = spec.log_len - 1;
    let upper: Vec<usize> = spec.info_b.iter().copied().filter(|&i| i <= half).collect();
    let lower: Vec<usize> = spec
        .info_b
        .iter()
        .filter(|&&i| i > half)
        .map(|&i| i - half)
        .collect();
    let build = |b: Vec<usize>| {
        let a = b
            .iter()
            .map(|&j| reverse_bits(j - 1, n) + 1)
            .collect::<Vec<_>>();
        let mut a = a;
        a.sort_unstable();
        CodeSpec::assemble(n, a, b)
    };
    PlotkinSplit {
        upper: build(upper),
        lower: build(lower),
    }
}
