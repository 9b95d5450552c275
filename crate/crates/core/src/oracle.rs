//! Exhaustive reference enumerators for small codes.
//!
//! These share only [`encode`] with the rest of the crate; the CRC used by
//! [`brute_force_concat`] is a separate shift-register implementation.

use std::collections::BTreeMap;

use crate::bits::Codeword;
use crate::concat::ConcatSpec;
use crate::error::{Error, Result};
use crate::polar::{encode, reverse_bits, CodeSpec};

pub const MAX_INNER_DIMENSION: usize = 24;
pub const MAX_MESSAGE_LEN: usize = 20;

/// Weight enumerator `d → A_d` over every codeword, the zero word included.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FullSpectrum {
    pub counts: BTreeMap<u32, u64>,
}

impl FullSpectrum {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Lightest nonzero weight and its multiplicity.
    pub fn min_nonzero(&self) -> Option<(u32, u64)> {
        self.counts
            .iter()
            .find(|(&d, _)| d > 0)
            .map(|(&d, &a)| (d, a))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("weight,count\n");
        for (d, a) in &self.counts {
            out += &format!("{d},{a}\n");
        }
        out
    }
}

/// Spectrum plus the codewords of the lightest nonzero weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleShell {
    pub spectrum: FullSpectrum,
    /// Ascending.
    pub min_weight_codewords: Vec<Codeword>,
}

// Visits every combination of `basis` in Gray-code order, zero first.
fn gray_walk(len: usize, basis: &[Codeword], mut visit: impl FnMut(&Codeword)) {
    let mut c = Codeword::zeros(len);
    visit(&c);
    for step in 1u64..(1u64 << basis.len()) {
        c = c.xor(&basis[step.trailing_zeros() as usize]);
        visit(&c);
    }
}

fn shell_of(len: usize, basis: &[Codeword]) -> OracleShell {
    let mut spectrum = FullSpectrum::default();
    let mut best: Option<u32> = None;
    let mut words = Vec::new();
    gray_walk(len, basis, |c| {
        let w = c.weight();
        *spectrum.counts.entry(w).or_insert(0) += 1;
        if w == 0 {
            return;
        }
        match best {
            Some(b) if w > b => {}
            Some(b) if w == b => words.push(c.clone()),
            _ => {
                best = Some(w);
                words.clear();
                words.push(c.clone());
            }
        }
    });
    words.sort_unstable();
    OracleShell {
        spectrum,
        min_weight_codewords: words,
    }
}

/// Images of the unit information vectors, one per element of `B`.
fn polar_basis(spec: &CodeSpec) -> Result<Vec<Codeword>> {
    spec.info_set_b()
        .iter()
        .map(|&j| {
            let mut v = vec![false; spec.len()];
            v[j - 1] = true;
            encode(spec, &v)
        })
        .collect()
}

pub fn brute_force_shell(spec: &CodeSpec) -> Result<OracleShell> {
    if spec.dimension() > MAX_INNER_DIMENSION {
        return Err(Error::CapExceeded {
            dim: spec.dimension(),
            cap: MAX_INNER_DIMENSION,
        });
    }
    Ok(shell_of(spec.len(), &polar_basis(spec)?))
}

pub fn brute_force_spectrum(spec: &CodeSpec) -> Result<FullSpectrum> {
    Ok(brute_force_shell(spec)?.spectrum)
}

// Bit-serial division register, independent of `CrcPolynomial::remainder`.
fn lfsr_parity(poly: &[bool], message: &[bool]) -> Vec<bool> {
    let deg = poly.len() - 1;
    let mut dividend: Vec<bool> = message.to_vec();
    dividend.extend(std::iter::repeat_n(false, deg));
    for i in 0..message.len() {
        if dividend[i] {
            for (t, &p) in poly.iter().enumerate() {
                dividend[i + t] ^= p;
            }
        }
    }
    dividend[message.len()..].to_vec()
}

fn concat_codeword(concat: &ConcatSpec, poly: &[bool], message: &[bool]) -> Result<Codeword> {
    let inner = concat.inner();
    let mut s = message.to_vec();
    s.extend(lfsr_parity(poly, message));
    let mut v = vec![false; inner.len()];
    for (&bit, &t) in s.iter().zip(concat.u_positions()) {
        v[reverse_bits(t - 1, inner.log_len())] = bit;
    }
    encode(inner, &v)
}

pub fn brute_force_concat_shell(concat: &ConcatSpec) -> Result<OracleShell> {
    let k_i = concat.message_len();
    if k_i > MAX_MESSAGE_LEN {
        return Err(Error::CapExceeded {
            dim: k_i,
            cap: MAX_MESSAGE_LEN,
        });
    }
    let poly = concat.crc().coefficients();
    let basis = (0..k_i)
        .map(|j| {
            let mut m = vec![false; k_i];
            m[j] = true;
            concat_codeword(concat, &poly, &m)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(shell_of(concat.inner().len(), &basis))
}

pub fn brute_force_concat(concat: &ConcatSpec) -> Result<FullSpectrum> {
    Ok(brute_force_concat_shell(concat)?.spectrum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concat::{CrcPolynomial, Mapping};

    #[test]
    fn repetition_code() {
        let spec = CodeSpec::from_info_set_b(1, &[2]).unwrap();
        let s = brute_force_spectrum(&spec).unwrap();
        assert_eq!(s.counts, BTreeMap::from([(0, 1), (2, 1)]));
    }

    #[test]
    fn first_order_reed_muller() {
        let spec = CodeSpec::from_info_set_b(3, &[4, 6, 7, 8]).unwrap();
        let s = brute_force_spectrum(&spec).unwrap();
        assert_eq!(s.counts, BTreeMap::from([(0, 1), (4, 14), (8, 1)]));
        assert_eq!(s.to_csv(), "weight,count\n0,1\n4,14\n8,1\n");
    }

    #[test]
    fn lfsr_matches_hand_division() {
        // x^5 + x^3 = x^2 (x^3 + x + 1)
        assert_eq!(
            lfsr_parity(&[true, false, true, true], &[true, false, true]),
            vec![true, false, false]
        );
    }

    #[test]
    fn caps() {
        let spec = crate::construct::construct_pw(5, 25).unwrap();
        assert!(matches!(
            brute_force_spectrum(&spec),
            Err(Error::CapExceeded { .. })
        ));
        let inner = crate::construct::construct_pw(5, 27).unwrap();
        let concat = ConcatSpec::new(
            inner,
            CrcPolynomial::from_bits(0b1011).unwrap(),
            Mapping::Ascending,
        )
        .unwrap();
        assert!(brute_force_concat(&concat).is_err());
    }
}
