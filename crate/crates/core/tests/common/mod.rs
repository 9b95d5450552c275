#![allow(dead_code)]

use polar_mwd::CodeSpec;
use rand::Rng;

/// `round(len·p/q)` with halves rounded up.
pub fn dimension(len: usize, p: usize, q: usize) -> usize {
    (2 * len * p + q) / (2 * q)
}

/// Reed-Muller `RM(r, m)`: rows of `G` with weight at least `2^{m-r}`.
pub fn reed_muller(r: u32, m: u32) -> CodeSpec {
    let b: Vec<usize> = (1..=1usize << m)
        .filter(|j| (j - 1).count_ones() >= m - r)
        .collect();
    CodeSpec::from_info_set_b(m, &b).unwrap()
}

/// Information set ranked by `Σ_t b_t w_t` over the bits of the `u` index,
/// for random weights `0 < w_0 < w_1 < ...`. Every such set respects the
/// partial order of synthetic-channel reliability.
pub fn random_reliability_set<R: Rng>(rng: &mut R, n: u32, k: usize) -> CodeSpec {
    let mut w = Vec::with_capacity(n as usize);
    let mut acc = 0.0;
    for _ in 0..n {
        acc += rng.gen_range(0.05..1.0);
        w.push(acc);
    }
    let len = 1usize << n;
    let score = |j: usize| -> f64 {
        (0..n as usize)
            .filter(|&t| (j >> t) & 1 == 1)
            .map(|t| w[t])
            .sum()
    };
    let mut order: Vec<usize> = (0..len).collect();
    order.sort_by(|&a, &b| score(b).total_cmp(&score(a)).then(b.cmp(&a)));
    let a: Vec<usize> = order[..k].iter().map(|j| j + 1).collect();
    CodeSpec::from_info_set_a(n, &a).unwrap()
}

/// Arbitrary information set, not necessarily reliability-consistent.
pub fn random_info_set<R: Rng>(rng: &mut R, n: u32, k: usize) -> CodeSpec {
    let len = 1usize << n;
    let a = rand::seq::index::sample(rng, len, k)
        .into_iter()
        .map(|j| j + 1)
        .collect::<Vec<_>>();
    CodeSpec::from_info_set_a(n, &a).unwrap()
}

/// Rates of the published rows, as `(p, q)`.
pub const RATES: [(usize, usize); 15] = [
    (1, 9),
    (1, 8),
    (1, 7),
    (1, 6),
    (1, 5),
    (1, 4),
    (1, 3),
    (1, 2),
    (2, 3),
    (3, 4),
    (4, 5),
    (5, 6),
    (6, 7),
    (7, 8),
    (8, 9),
];

/// Published `(d_min, A_dmin)` of PW-constructed codes, indexed like `RATES`.
pub const PW_256: [(u32, u64); 15] = [
    (32, 88),
    (32, 152),
    (32, 280),
    (32, 920),
    (32, 2840),
    (16, 48),
    (16, 1072),
    (8, 96),
    (8, 11360),
    (4, 64),
    (4, 448),
    (4, 1216),
    (4, 2752),
    (4, 6848),
    (4, 12992),
];

pub const PW_512: [(u32, u64); 15] = [
    (32, 16),
    (32, 48),
    (32, 112),
    (32, 432),
    (32, 2096),
    (16, 32),
    (16, 608),
    (8, 64),
    (8, 11456),
    (8, 65728),
    (4, 384),
    (4, 896),
    (4, 2432),
    (4, 5504),
    (4, 9600),
];

/// Published half-rate PW rows for longer codes: `(n, d_min, A_dmin)`.
pub const PW_HALF_RATE_LONG: [(u32, u32, u64); 5] = [
    (10, 16, 54464),
    (11, 16, 57728),
    (12, 16, 45824),
    (13, 16, 22016),
    (14, 16, 19456),
];

/// Generator rows of `spec` as bit masks (bit `i` is `c_{i+1}`), `N ≤ 64`.
pub fn generator_masks(spec: &CodeSpec) -> Vec<u64> {
    assert!(spec.len() <= 64);
    spec.info_set_b()
        .iter()
        .map(|&j| {
            let mut v = vec![false; spec.len()];
            v[j - 1] = true;
            let c = polar_mwd::encode(spec, &v).unwrap();
            c.support().iter().fold(0u64, |m, &i| m | 1 << (i - 1))
        })
        .collect()
}

/// Basis of the dual code, by reducing the generator to reduced row
/// echelon form and reading off the free columns.
pub fn dual_basis(len: usize, rows: &[u64]) -> Vec<u64> {
    let mut rows = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..len {
        let Some(p) = (r..rows.len()).find(|&i| rows[i] >> col & 1 == 1) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i] >> col & 1 == 1 {
                rows[i] ^= rows[r];
            }
        }
        pivots.push(col);
        r += 1;
    }
    (0..len)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut h = 1u64 << free;
            for (i, &p) in pivots.iter().enumerate() {
                if rows[i] >> free & 1 == 1 {
                    h |= 1 << p;
                }
            }
            h
        })
        .collect()
}

fn binomial(n: i128, k: i128) -> i128 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Full weight enumerator of the code from its dual via the MacWilliams
/// identity `A_j = |C⊥|⁻¹ Σ_w B_w K_j(w)`.
pub fn macwilliams_spectrum(spec: &CodeSpec) -> Vec<u64> {
    let len = spec.len();
    let dual = dual_basis(len, &generator_masks(spec));
    assert!(dual.len() <= 24, "dual too large");
    let mut b = vec![0i128; len + 1];
    let mut c = 0u64;
    b[0] += 1;
    for step in 1u64..(1 << dual.len()) {
        c ^= dual[step.trailing_zeros() as usize];
        b[c.count_ones() as usize] += 1;
    }
    let size = 1i128 << dual.len();
    (0..=len as i128)
        .map(|j| {
            let sum: i128 = (0..=len as i128)
                .map(|w| {
                    let kraw: i128 = (0..=j)
                        .map(|s| {
                            let sign = if s % 2 == 0 { 1 } else { -1 };
                            sign * binomial(w, s) * binomial(len as i128 - w, j - s)
                        })
                        .sum();
                    b[w as usize] * kraw
                })
                .sum();
            assert_eq!(sum % size, 0);
            (sum / size) as u64
        })
        .collect()
}

/// Whether `c` (bit masks as in `generator_masks`) lies in the code.
pub fn in_code(spec: &CodeSpec, c: u64) -> bool {
    let dual = dual_basis(spec.len(), &generator_masks(spec));
    dual.iter().all(|h| (h & c).count_ones().is_multiple_of(2))
}
