//! CRC-polar concatenated codes.
//!
//! A message `b` of `K_I` bits is CRC-encoded into `s = (b, r)` with
//! `r = x^{K_P}·b(x) mod g(x)`, `s` is written onto the information set `A`
//! of an `(N, K)` polar code through the index map `f`, and the codeword is
//! `c = u·B·G = v·G`. Every parity-check row of the CRC becomes an XOR
//! constraint on `v`. After elimination with the smallest index as pivot,
//! each constraint fixes one bit `v_k` from bits that the `N → 1` search
//! has already decided, so the search only walks concatenated codewords.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bits::{self, Codeword};
use crate::enumeration::{sphere_mwd, Mode, MwdResult, ResultFlag, Sphere};
use crate::error::{Error, Result};
use crate::polar::{encode, min_weight_lower_bound, reverse_bits, CodeSpec};
use crate::search::{Kind, Tree};

/// Binary polynomial written with its leading term, e.g. `0x59` is
/// `x^6 + x^4 + x^3 + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CrcPolynomial {
    bits: u64,
}

impl CrcPolynomial {
    pub const MAX_DEGREE: u32 = 63;

    pub fn from_bits(bits: u64) -> Result<Self> {
        if bits < 2 {
            return Err(Error::InvalidPolynomial(format!(
                "{bits:#X} has degree below 1"
            )));
        }
        Ok(Self { bits })
    }

    /// Coefficients from the leading term down to the constant term.
    pub fn from_coefficients(coefficients: &[bool]) -> Result<Self> {
        if coefficients.first() != Some(&true) {
            return Err(Error::InvalidPolynomial(
                "leading coefficient must be 1".into(),
            ));
        }
        if coefficients.len() > Self::MAX_DEGREE as usize + 1 {
            return Err(Error::InvalidPolynomial("degree too large".into()));
        }
        let bits = coefficients
            .iter()
            .fold(0u64, |acc, &b| (acc << 1) | b as u64);
        Self::from_bits(bits)
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// `K_P`.
    pub fn degree(&self) -> u32 {
        63 - self.bits.leading_zeros()
    }

    pub fn coefficients(&self) -> Vec<bool> {
        (0..=self.degree())
            .rev()
            .map(|t| (self.bits >> t) & 1 == 1)
            .collect()
    }

    pub fn has_unit_constant(&self) -> bool {
        self.bits & 1 == 1
    }

    pub fn to_hex(&self) -> String {
        format!("0x{:X}", self.bits)
    }

    /// Remainder of `x^{K_P}·m(x)` modulo the polynomial, for a message
    /// given most significant coefficient first. Output has `K_P` bits,
    /// most significant first.
    pub fn remainder(&self, message: &[bool]) -> Vec<bool> {
        let deg = self.degree() as usize;
        let low = self.bits & !(1u64 << deg);
        let top = 1u64 << (deg - 1);
        let mask = if deg == 64 {
            u64::MAX
        } else {
            (1u64 << deg) - 1
        };
        let mut reg = 0u64;
        for &m in message {
            let feedback = ((reg & top) != 0) ^ m;
            reg = (reg << 1) & mask;
            if feedback {
                reg ^= low;
            }
        }
        (0..deg).rev().map(|t| (reg >> t) & 1 == 1).collect()
    }
}

impl fmt::Display for CrcPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl FromStr for CrcPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let digits = t
            .strip_prefix("0x")
            .or_else(|| t.strip_prefix("0X"))
            .unwrap_or(t);
        let bits = u64::from_str_radix(digits, 16)
            .map_err(|e| Error::InvalidPolynomial(format!("{s:?}: {e}")))?;
        Self::from_bits(bits)
    }
}

impl Serialize for CrcPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for CrcPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Placement of the outer codeword `s` onto `u`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum Mapping {
    /// `s_j` goes to the `j`-th smallest element of `A`.
    #[default]
    Ascending,
    /// `s_j` goes to `u` position `positions[j - 1]` (1-based).
    Explicit(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConcatSpec {
    inner: CodeSpec,
    crc: CrcPolynomial,
    mapping: Mapping,
    u_positions: Vec<usize>,
}

impl ConcatSpec {
    pub fn new(inner: CodeSpec, crc: CrcPolynomial, mapping: Mapping) -> Result<Self> {
        let k = inner.dimension();
        let k_p = crc.degree() as usize;
        if k_p >= k {
            return Err(Error::DegenerateOuterCode(format!(
                "CRC degree {k_p} leaves no message bits in K = {k}"
            )));
        }
        let u_positions = match &mapping {
            Mapping::Ascending => inner.info_set_a().to_vec(),
            Mapping::Explicit(p) => {
                if p.len() != k {
                    return Err(Error::InvalidMapping(format!(
                        "{} positions given for K = {k}",
                        p.len()
                    )));
                }
                let mut sorted = p.clone();
                sorted.sort_unstable();
                if sorted != inner.info_set_a() {
                    return Err(Error::InvalidMapping(
                        "positions must be a permutation of the information set".into(),
                    ));
                }
                p.clone()
            }
        };
        Ok(Self {
            inner,
            crc,
            mapping,
            u_positions,
        })
    }

    pub fn inner(&self) -> &CodeSpec {
        &self.inner
    }

    pub fn crc(&self) -> CrcPolynomial {
        self.crc
    }

    pub fn mapping(&self) -> &Mapping {
        &self.mapping
    }

    /// `K_I = K - K_P`.
    pub fn message_len(&self) -> usize {
        self.inner.dimension() - self.crc.degree() as usize
    }

    pub fn parity_len(&self) -> usize {
        self.crc.degree() as usize
    }

    /// `f(j)` for `j = 1..=K`, 1-based `u` positions.
    pub fn u_positions(&self) -> &[usize] {
        &self.u_positions
    }

    /// Systematic CRC encoding `s = (b, x^{K_P}·b(x) mod g(x))`.
    pub fn outer_encode(&self, message: &[bool]) -> Result<Vec<bool>> {
        if message.len() != self.message_len() {
            return Err(Error::InvalidParameters(format!(
                "message has {} bits, expected {}",
                message.len(),
                self.message_len()
            )));
        }
        let mut s = message.to_vec();
        s.extend(self.crc.remainder(message));
        Ok(s)
    }

    /// Full encoding chain `b → s → u → v → c`.
    pub fn encode_message(&self, message: &[bool]) -> Result<Codeword> {
        let s = self.outer_encode(message)?;
        let n = self.inner.log_len();
        let mut v = vec![false; self.inner.len()];
        for (&bit, &t) in s.iter().zip(&self.u_positions) {
            v[reverse_bits(t - 1, n)] = bit;
        }
        encode(&self.inner, &v)
    }

    /// Recovers the message of a codeword, or `None` when the word is not
    /// a codeword of this concatenated code.
    pub fn decode_codeword(&self, c: &Codeword) -> Option<Vec<bool>> {
        if c.len() != self.inner.len() {
            return None;
        }
        let n = self.inner.log_len();
        let mut words = c.words().to_vec();
        crate::polar::polar_transform(&mut words, n);
        if (0..c.len()).any(|j| bits::get(&words, j) && !self.inner.is_info_b(j + 1)) {
            return None;
        }
        let s: Vec<bool> = self
            .u_positions
            .iter()
            .map(|&t| bits::get(&words, reverse_bits(t - 1, n)))
            .collect();
        let message = s[..self.message_len()].to_vec();
        let again = self.outer_encode(&message).ok()?;
        (again == s).then_some(message)
    }
}

/// Rows of the systematic CRC parity-check matrix `H = [P^T | I]` as
/// 1-based index sets over `s`.
pub fn outer_parity_checks(concat: &ConcatSpec) -> Vec<Vec<usize>> {
    let k_i = concat.message_len();
    let k_p = concat.parity_len();
    let columns: Vec<Vec<bool>> = (0..k_i)
        .map(|j| {
            let mut unit = vec![false; k_i];
            unit[j] = true;
            concat.crc.remainder(&unit)
        })
        .collect();
    (0..k_p)
        .map(|r| {
            let mut row: Vec<usize> = (0..k_i).filter(|&j| columns[j][r]).map(|j| j + 1).collect();
            row.push(k_i + r + 1);
            row
        })
        .collect()
}

/// Parity-check sets over `v`: each CRC check row lifted through `f` and
/// the bit reversal. Indices are 1-based and ascending.
pub fn derive_parity_sets(concat: &ConcatSpec) -> Result<Vec<Vec<usize>>> {
    let n = concat.inner.log_len();
    Ok(outer_parity_checks(concat)
        .into_iter()
        .map(|row| {
            let mut set: Vec<usize> = row
                .into_iter()
                .map(|j| reverse_bits(concat.u_positions[j - 1] - 1, n) + 1)
                .collect();
            set.sort_unstable();
            set
        })
        .collect())
}

/// Parity-check sets after elimination, each with a distinct parity bit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityCheckSystem {
    /// Ascending 1-based index sets.
    pub sets: Vec<Vec<usize>>,
    /// `k_i = min(sets[i])`.
    pub parity_bit_indices: Vec<usize>,
}

impl ParityCheckSystem {
    /// Whether `v` (1-based positions, `v[j - 1]`) satisfies every equation.
    pub fn is_satisfied_by(&self, v: &[bool]) -> bool {
        self.sets
            .iter()
            .all(|set| !set.iter().fold(false, |acc, &j| acc ^ v[j - 1]))
    }
}

/// Row-echelon form over GF(2) with pivots on the smallest column index,
/// so that each equation's parity bit is the lowest position it touches.
/// Rows already in that form come back unchanged.
pub fn transform_parity_sets(raw: &[Vec<usize>], len: usize) -> Result<ParityCheckSystem> {
    if raw.is_empty() {
        return Err(Error::InvalidParameters(
            "no parity-check sets given".into(),
        ));
    }
    let words = bits::words_for(len);
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(raw.len());
    for set in raw {
        let mut row = vec![0u64; words];
        for &j in set {
            if j == 0 || j > len {
                return Err(Error::IndexOutOfRange { index: j, len });
            }
            bits::flip(&mut row, j - 1);
        }
        rows.push(row);
    }
    let mut rank = 0;
    for col in 0..len {
        if rank == rows.len() {
            break;
        }
        let Some(pivot) = (rank..rows.len()).find(|&r| bits::get(&rows[r], col)) else {
            continue;
        };
        rows.swap(rank, pivot);
        let (done, rest) = rows.split_at_mut(rank + 1);
        for row in rest.iter_mut() {
            if bits::get(row, col) {
                bits::xor_into(row, &done[rank]);
            }
        }
        rank += 1;
    }
    if rank < rows.len() {
        return Err(Error::RankDeficient {
            rank,
            rows: rows.len(),
        });
    }
    let sets: Vec<Vec<usize>> = rows
        .iter()
        .map(|row| {
            (0..len)
                .filter(|&j| bits::get(row, j))
                .map(|j| j + 1)
                .collect()
        })
        .collect();
    let parity_bit_indices = sets.iter().map(|s: &Vec<usize>| s[0]).collect();
    Ok(ParityCheckSystem {
        sets,
        parity_bit_indices,
    })
}

/// Minimum weight distribution of a concatenated code.
pub fn pc_scem(concat: &ConcatSpec, mode: Mode) -> Result<MwdResult> {
    let raw = derive_parity_sets(concat)?;
    let system = transform_parity_sets(&raw, concat.inner.len())?;
    let mut result = pc_scem_system(&concat.inner, &system, mode)?;
    if !concat.crc.has_unit_constant() {
        result.flag(ResultFlag::CrcConstantTermZero);
    }
    Ok(result)
}

/// Parity-constrained enumeration of the subcode of `inner` cut out by
/// `system`. The radius starts at the inner code's row-weight bound and
/// grows to the next even value until a nonzero codeword is found.
pub fn pc_scem_system(
    inner: &CodeSpec,
    system: &ParityCheckSystem,
    mode: Mode,
) -> Result<MwdResult> {
    let len = inner.len();
    let mut kinds: Vec<Kind> = inner
        .mask_b()
        .iter()
        .map(|&b| if b { Kind::Free } else { Kind::Frozen })
        .collect();
    let mut deps = Vec::with_capacity(system.sets.len());
    for (i, set) in system.sets.iter().enumerate() {
        let k = system.parity_bit_indices[i];
        if set.first() != Some(&k) || !inner.is_info_b(k) {
            return Err(Error::InvalidParameters(format!(
                "parity bit {k} is not the smallest unfrozen index of its set"
            )));
        }
        if let Some(&j) = set.iter().find(|&&j| !inner.is_info_b(j)) {
            return Err(Error::InvalidParameters(format!(
                "parity-check set touches frozen position {j}"
            )));
        }
        if kinds[k - 1] != Kind::Free {
            return Err(Error::InvalidParameters(format!(
                "parity bit {k} is shared"
            )));
        }
        kinds[k - 1] = Kind::Parity(i);
        deps.push(set[1..].iter().map(|&j| j - 1).collect());
    }
    let tree = Tree::new(kinds, deps);
    let even_only = !inner.is_info_b(1);
    let mut radius = min_weight_lower_bound(inner)?;
    let mut avn = 0u64;
    loop {
        match sphere_mwd(&tree, radius, mode, even_only, usize::MAX)? {
            Sphere::Found(mut r) => {
                r.avn = r.avn.checked_add(avn).ok_or(Error::CounterOverflow)?;
                return Ok(r);
            }
            Sphere::Empty { avn: spent } => {
                avn = avn.checked_add(spent).ok_or(Error::CounterOverflow)?;
                radius += if radius % 2 == 1 { 1 } else { 2 };
                if radius as usize > len {
                    return Err(Error::EscalationOverflow(len));
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::construct_pw;

    #[test]
    fn hex_round_trip_and_coefficients() {
        let p: CrcPolynomial = "0x59".parse().unwrap();
        assert_eq!(p.degree(), 6);
        assert_eq!(
            p.coefficients(),
            vec![true, false, true, true, false, false, true]
        );
        assert_eq!(p.to_hex(), "0x59");
        assert_eq!(
            CrcPolynomial::from_coefficients(&p.coefficients()).unwrap(),
            p
        );
        let big: CrcPolynomial = "0x1d5".parse().unwrap();
        assert_eq!((big.degree(), big.to_hex().as_str()), (8, "0x1D5"));
        assert!("0x1".parse::<CrcPolynomial>().is_err());
        assert!("zz".parse::<CrcPolynomial>().is_err());
        assert!(!"0x58".parse::<CrcPolynomial>().unwrap().has_unit_constant());
    }

    #[test]
    fn remainder_matches_long_division() {
        // x^3 + x + 1, message x^2 + 1: x^5 + x^3 mod g = x^2
        let g = CrcPolynomial::from_bits(0b1011).unwrap();
        assert_eq!(g.remainder(&[true, false, true]), vec![true, false, false]);
    }

    #[test]
    fn single_parity_check_row() {
        // K = 3 code with CRC x + 1: the parity bit is the XOR of both
        // message bits
        let inner = CodeSpec::from_info_set_a(2, &[2, 3, 4]).unwrap();
        let crc = CrcPolynomial::from_bits(0b11).unwrap();
        let concat = ConcatSpec::new(inner, crc, Mapping::Ascending).unwrap();
        assert_eq!(outer_parity_checks(&concat), vec![vec![1, 2, 3]]);
        assert_eq!(derive_parity_sets(&concat).unwrap().len(), 1);
    }

    #[test]
    fn degenerate_outer_code_rejected() {
        let inner = CodeSpec::from_info_set_a(2, &[3, 4]).unwrap();
        let crc = CrcPolynomial::from_bits(0b111).unwrap();
        assert!(matches!(
            ConcatSpec::new(inner, crc, Mapping::Ascending),
            Err(Error::DegenerateOuterCode(_))
        ));
    }

    #[test]
    fn explicit_mapping_must_permute_info_set() {
        let inner = CodeSpec::from_info_set_a(2, &[2, 3, 4]).unwrap();
        let crc = CrcPolynomial::from_bits(0b11).unwrap();
        assert!(ConcatSpec::new(inner.clone(), crc, Mapping::Explicit(vec![4, 2, 3])).is_ok());
        assert!(ConcatSpec::new(inner.clone(), crc, Mapping::Explicit(vec![1, 2, 3])).is_err());
        assert!(ConcatSpec::new(inner, crc, Mapping::Explicit(vec![2, 3])).is_err());
    }

    #[test]
    fn elimination_example() {
        let sys = transform_parity_sets(&[vec![1, 3], vec![1, 2]], 3).unwrap();
        assert_eq!(sys.sets, vec![vec![1, 3], vec![2, 3]]);
        assert_eq!(sys.parity_bit_indices, vec![1, 2]);
    }

    #[test]
    fn echelon_input_is_unchanged() {
        let raw = vec![vec![1, 4, 6], vec![2, 3], vec![5, 8]];
        let sys = transform_parity_sets(&raw, 8).unwrap();
        assert_eq!(sys.sets, raw);
    }

    #[test]
    fn dependent_rows_rejected() {
        let raw = vec![vec![1, 2], vec![2, 3], vec![1, 3]];
        assert_eq!(
            transform_parity_sets(&raw, 3),
            Err(Error::RankDeficient { rank: 2, rows: 3 })
        );
        assert!(transform_parity_sets(&[], 3).is_err());
        assert!(transform_parity_sets(&[vec![4]], 3).is_err());
    }

    #[test]
    fn encoded_messages_satisfy_raw_sets() {
        let inner = construct_pw(6, 24).unwrap();
        let crc: CrcPolynomial = "0x59".parse().unwrap();
        let concat = ConcatSpec::new(inner.clone(), crc, Mapping::Ascending).unwrap();
        let raw = derive_parity_sets(&concat).unwrap();
        let system = ParityCheckSystem {
            parity_bit_indices: raw.iter().map(|s| s[0]).collect(),
            sets: raw,
        };
        let mut state = 12345u64;
        for _ in 0..100 {
            let msg: Vec<bool> = (0..concat.message_len())
                .map(|_| {
                    state = state
                        .wrapping_mul(6364136223846793005)
                        .wrapping_add(1442695040888963407);
                    state >> 63 == 1
                })
                .collect();
            let c = concat.encode_message(&msg).unwrap();
            let mut words = c.words().to_vec();
            crate::polar::polar_transform(&mut words, inner.log_len());
            let v: Vec<bool> = (0..inner.len()).map(|j| bits::get(&words, j)).collect();
            assert!(system.is_satisfied_by(&v));
            assert_eq!(concat.decode_codeword(&c), Some(msg));
        }
    }

    #[test]
    fn no_crc_degree_reduces_to_inner_search() {
        // a system with zero equations is the plain search
        let inner = construct_pw(5, 16).unwrap();
        let empty = ParityCheckSystem {
            sets: vec![],
            parity_bit_indices: vec![],
        };
        let a = pc_scem_system(&inner, &empty, Mode::Collect).unwrap();
        let d = min_weight_lower_bound(&inner).unwrap();
        let b = crate::enumeration::scem(&inner, d, Mode::Collect).unwrap();
        assert_eq!(a, b);
    }
}
