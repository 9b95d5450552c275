//! Packed binary vectors.
//!
//! Bit `i` (0-based) of a vector lives in word `i / 64` at bit `i % 64`.
//! Public accessors on [`Codeword`] use 1-based positions.

use std::fmt;

pub(crate) fn words_for(len: usize) -> usize {
    len.div_ceil(64)
}

#[inline]
pub(crate) fn get(words: &[u64], i: usize) -> bool {
    (words[i >> 6] >> (i & 63)) & 1 == 1
}

#[inline]
pub(crate) fn flip(words: &mut [u64], i: usize) {
    words[i >> 6] ^= 1 << (i & 63);
}

#[inline]
pub(crate) fn set(words: &mut [u64], i: usize, value: bool) {
    let mask = 1u64 << (i & 63);
    if value {
        words[i >> 6] |= mask;
    } else {
        words[i >> 6] &= !mask;
    }
}

pub(crate) fn popcount(words: &[u64]) -> u32 {
    words.iter().map(|w| w.count_ones()).sum()
}

pub(crate) fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

/// A codeword of length `N` with its Hamming weight cached.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Codeword {
    // Field order matters for the derived ordering: length, then content.
    len: usize,
    words: Vec<u64>,
    weight: u32,
}

impl Codeword {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
            weight: 0,
        }
    }

    /// Builds a codeword from packed words. Bits past `len` must be zero.
    pub fn from_words(len: usize, words: Vec<u64>) -> Self {
        assert_eq!(
            words.len(),
            words_for(len),
            "word count does not match length"
        );
        if !len.is_multiple_of(64) {
            debug_assert_eq!(words[words.len() - 1] >> (len % 64), 0);
        }
        let weight = popcount(&words);
        Self { len, words, weight }
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut words = vec![0; words_for(bits.len())];
        for (i, &b) in bits.iter().enumerate() {
            set(&mut words, i, b);
        }
        Self::from_words(bits.len(), words)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn is_zero(&self) -> bool {
        self.weight == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Bit at 1-based position `i`.
    pub fn bit(&self, i: usize) -> bool {
        assert!((1..=self.len).contains(&i), "position {i} out of range");
        get(&self.words, i - 1)
    }

    pub fn to_bits(&self) -> Vec<bool> {
        (0..self.len).map(|i| get(&self.words, i)).collect()
    }

    /// 1-based positions of the ones.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.weight as usize);
        for (w, &word) in self.words.iter().enumerate() {
            let mut x = word;
            while x != 0 {
                out.push(w * 64 + x.trailing_zeros() as usize + 1);
                x &= x - 1;
            }
        }
        out
    }

    pub fn xor(&self, other: &Codeword) -> Codeword {
        assert_eq!(self.len, other.len);
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a ^ b)
            .collect();
        Codeword::from_words(self.len, words)
    }

    /// Concatenation `(self, other)`.
    pub fn concat(&self, other: &Codeword) -> Codeword {
        let len = self.len + other.len;
        let mut words = vec![0; words_for(len)];
        for i in 0..self.len {
            if get(&self.words, i) {
                set(&mut words, i, true);
            }
        }
        if self.len.is_multiple_of(64) {
            words[self.len / 64..].copy_from_slice(&other.words);
        } else {
            for i in 0..other.len {
                if get(&other.words, i) {
                    set(&mut words, self.len + i, true);
                }
            }
        }
        Codeword {
            len,
            words,
            weight: self.weight + other.weight,
        }
    }

    /// True when every one of `self` is also a one of `other`.
    pub fn is_covered_by(&self, other: &Codeword) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    /// Hex rendering with `c_1` as the most significant bit, zero padded to
    /// `ceil(N / 4)` digits.
    pub fn to_hex(&self) -> String {
        let digits = self.len.div_ceil(4);
        let pad = digits * 4 - self.len;
        let mut out = String::with_capacity(digits);
        for d in 0..digits {
            let mut nibble = 0u32;
            for b in 0..4 {
                // position in the padded big-endian string
                let p = d * 4 + b;
                let bit = p >= pad && get(&self.words, p - pad);
                nibble = (nibble << 1) | bit as u32;
            }
            out.push(char::from_digit(nibble, 16).unwrap().to_ascii_uppercase());
        }
        out
    }

    pub fn from_hex(len: usize, hex: &str) -> Option<Codeword> {
        let hex = hex.trim();
        let digits = len.div_ceil(4);
        if hex.len() != digits {
            return None;
        }
        let pad = digits * 4 - len;
        let mut words = vec![0; words_for(len)];
        for (d, ch) in hex.chars().enumerate() {
            let nibble = ch.to_digit(16)?;
            for b in 0..4 {
                let p = d * 4 + b;
                let bit = (nibble >> (3 - b)) & 1 == 1;
                if p < pad {
                    if bit {
                        return None;
                    }
                } else if bit {
                    set(&mut words, p - pad, true);
                }
            }
        }
        Some(Codeword::from_words(len, words))
    }
}

impl fmt::Debug for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Codeword(")?;
        for i in 0..self.len {
            write!(f, "{}", get(&self.words, i) as u8)?;
        }
        write!(f, ", wt={})", self.weight)
    }
}
