//! Depth-first sphere-constrained search over `v_N, v_{N-1}, ..., v_1`.
//!
//! The running word `acc = Σ_{decided j} v_j G_j` holds the final value of
//! every codeword bit `c_k` as soon as `v_k` is decided, because `G` is
//! lower triangular. The partial weight `wt(c_k^N)` is kept alongside and
//! any path whose partial weight exceeds the radius is cut.

use crate::bits;
use crate::error::Result;
use crate::polar::generator_row_words;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Kind {
    Frozen,
    Free,
    /// Decided by equation `i` of the parity table.
    Parity(usize),
}

pub(crate) struct Tree {
    len: usize,
    kinds: Vec<Kind>,
    // row j of G truncated to words 0..=j/64, for every non-frozen position
    row_offsets: Vec<usize>,
    rows: Vec<u64>,
    // 0-based positions other than the parity bit itself
    parity_deps: Vec<Vec<usize>>,
}

impl Tree {
    /// `kinds[j]` is the role of 0-based position `j`; `parity_deps[i]`
    /// lists the positions XOR-ed into equation `i`'s parity bit, all of
    /// which must be larger than that bit.
    pub(crate) fn new(kinds: Vec<Kind>, parity_deps: Vec<Vec<usize>>) -> Self {
        let len = kinds.len();
        let mut row_offsets = vec![0; len + 1];
        let mut rows = Vec::new();
        for (j, kind) in kinds.iter().enumerate() {
            if *kind != Kind::Frozen {
                let full = generator_row_words(len, j);
                rows.extend_from_slice(&full[..=j / 64]);
            }
            row_offsets[j + 1] = rows.len();
        }
        for (j, kind) in kinds.iter().enumerate() {
            if let Kind::Parity(i) = kind {
                debug_assert!(parity_deps[*i].iter().all(|&t| t > j));
            }
        }
        Self {
            len,
            kinds,
            row_offsets,
            rows,
            parity_deps,
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.len
    }

    pub(crate) fn plain(mask_b: &[bool]) -> Self {
        let kinds = mask_b
            .iter()
            .map(|&b| if b { Kind::Free } else { Kind::Frozen })
            .collect();
        Self::new(kinds, Vec::new())
    }

    #[inline]
    fn toggle_row(&self, acc: &mut [u64], j: usize) {
        let row = &self.rows[self.row_offsets[j]..self.row_offsets[j + 1]];
        bits::xor_into(&mut acc[..row.len()], row);
    }

    /// Visits every codeword of weight at most `radius`, the all-zero word
    /// included, calling `emit(words, weight)` for each. Returns the number
    /// of single-bit decisions made, counting the second branch of a free
    /// bit as a separate visit.
    pub(crate) fn run<F>(&self, radius: u32, mut emit: F) -> Result<u64>
    where
        F: FnMut(&[u64], u32) -> Result<()>,
    {
        let len = self.len;
        let mut acc = vec![0u64; bits::words_for(len)];
        let mut v = vec![false; len];
        let mut c = vec![false; len];
        let mut k = len - 1;
        let mut weight = 0u32;
        let mut visits = 0u64;

        'decide: loop {
            match self.kinds[k] {
                Kind::Free => {
                    // take the branch with c_k = 0 first
                    let a = bits::get(&acc, k);
                    v[k] = a;
                    if a {
                        self.toggle_row(&mut acc, k);
                    }
                    c[k] = false;
                }
                Kind::Parity(i) => {
                    let p = self.parity_deps[i].iter().fold(false, |x, &t| x ^ v[t]);
                    v[k] = p;
                    if p {
                        self.toggle_row(&mut acc, k);
                    }
                    c[k] = bits::get(&acc, k);
                }
                Kind::Frozen => {
                    v[k] = false;
                    c[k] = bits::get(&acc, k);
                }
            }
            visits += 1;
            weight += c[k] as u32;

            loop {
                if weight <= radius {
                    if k > 0 {
                        k -= 1;
                        continue 'decide;
                    }
                    emit(&acc, weight)?;
                }
                // backtrack to the nearest free bit still on its first branch
                loop {
                    if self.kinds[k] == Kind::Free && !c[k] {
                        v[k] = !v[k];
                        self.toggle_row(&mut acc, k);
                        c[k] = true;
                        weight += 1;
                        visits += 1;
                        break;
                    }
                    weight -= c[k] as u32;
                    if v[k] {
                        self.toggle_row(&mut acc, k);
                    }
                    k += 1;
                    if k == len {
                        return Ok(visits);
                    }
                }
            }
        }
    }
}
