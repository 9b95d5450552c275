//! Minimum-weight shell enumeration for polar codes.
//!
//! [`scem`] runs the sphere-constrained depth-first search directly on the
//! code. [`screm`] recurses through the `(c' ⊕ c'', c'')` split: with
//! `d' = d_min(C')`, `d'' = d_min(C'')` and `d = min(d', 2d'')` exactly
//! one of three cases holds, and the shell `T` of the code is assembled
//! from the shells `T'`, `T''` of the components:
//!
//! | case | `(d', d'')`     | shell                    | count                       |
//! |------|-----------------|--------------------------|-----------------------------|
//! | 1    | `(d, d)`        | `T1 ∪ T2`                | `2·A'`                      |
//! | 2    | `(d, d/2)`      | `T1 ∪ T2 ∪ T3 ∪ T4`      | `2·A' + A'' + |T4|`         |
//! | 3    | `(> d, d/2)`    | `T3`                     | `A''`                       |
//!
//! with `T1 = {(c', 0)}`, `T2 = {(0, c')}`, `T3 = {(c'', c'')}` and
//! `T4 = {(c' ⊕ c'', c'') : wt(c' ⊕ c'') = d/2}`.

use serde::{Deserialize, Serialize};

use crate::bits::Codeword;
use crate::error::{Error, Result};
use crate::polar::{mask_min_weight, min_weight_lower_bound, split_unchecked, CodeSpec};
use crate::search::Tree;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Count,
    Collect,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResultFlag {
    /// Part of the recursion was answered by a direct search instead.
    FallbackUsed,
    /// A split with `C'` not contained in `C''` was met.
    NotNested,
    /// A shell exceeded the materialization cap.
    SetCapExceeded,
    /// The outer CRC polynomial has a zero constant term.
    CrcConstantTermZero,
}

/// Minimum weight distribution of a code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MwdResult {
    pub d_min: u32,
    pub a_dmin: u64,
    /// Minimum-weight codewords in ascending order (collect mode only).
    pub codewords: Option<Vec<Codeword>>,
    /// Single-bit decisions made by the tree searches.
    pub avn: u64,
    pub flags: Vec<ResultFlag>,
}

impl MwdResult {
    pub(crate) fn flag(&mut self, flag: ResultFlag) {
        if !self.flags.contains(&flag) {
            self.flags.push(flag);
        }
    }
}

/// Streams every nonzero codeword with weight at most `radius` to `sink`
/// in search order and returns the visit count. The all-zero word is
/// visited by the search and dropped here.
pub fn enumerate_sphere<F>(spec: &CodeSpec, radius: u32, mut sink: F) -> Result<u64>
where
    F: FnMut(&Codeword),
{
    if radius < 1 {
        return Err(Error::InvalidRadius);
    }
    let tree = Tree::plain(spec.mask_b());
    let len = spec.len();
    tree.run(radius, |words, weight| {
        if weight > 0 {
            sink(&Codeword::from_words(len, words.to_vec()));
        }
        Ok(())
    })
}

/// Sphere-constrained enumeration of the codewords of weight at most
/// `radius`; reports the lightest nonzero weight found and its count.
/// With `radius = d_min` this is the exact minimum weight distribution.
pub fn scem(spec: &CodeSpec, radius: u32, mode: Mode) -> Result<MwdResult> {
    scem_capped(spec, radius, mode, usize::MAX)
}

struct Shell {
    counts: Vec<u64>,
    sets: Vec<Vec<Codeword>>,
}

impl Shell {
    fn new(radius: u32) -> Self {
        Self {
            counts: vec![0; radius as usize + 1],
            sets: vec![Vec::new(); radius as usize + 1],
        }
    }

    fn add(&mut self, weight: u32) -> Result<()> {
        let slot = &mut self.counts[weight as usize];
        *slot = slot.checked_add(1).ok_or(Error::CounterOverflow)?;
        Ok(())
    }

    /// Lightest nonzero weight and its count, after removing the all-zero
    /// word that every search passes through.
    fn finish(&mut self, radius: u32) -> Result<(u32, u64)> {
        debug_assert_eq!(self.counts[0], 1);
        self.counts[0] -= 1;
        (1..=radius as usize)
            .find(|&w| self.counts[w] > 0)
            .map(|w| (w as u32, self.counts[w]))
            .ok_or(Error::NothingWithinRadius(radius))
    }
}

fn scem_capped(spec: &CodeSpec, radius: u32, mode: Mode, cap: usize) -> Result<MwdResult> {
    if radius < 1 {
        return Err(Error::InvalidRadius);
    }
    let tree = Tree::plain(spec.mask_b());
    match sphere_mwd(&tree, radius, mode, !spec.is_info_b(1), cap)? {
        Sphere::Found(r) => Ok(r),
        Sphere::Empty { .. } => Err(Error::NothingWithinRadius(radius)),
    }
}

pub(crate) enum Sphere {
    Found(MwdResult),
    Empty { avn: u64 },
}

/// Runs `tree` at `radius` and keeps the lightest nonzero shell.
pub(crate) fn sphere_mwd(
    tree: &Tree,
    radius: u32,
    mode: Mode,
    even_only: bool,
    cap: usize,
) -> Result<Sphere> {
    let len = tree.len();
    let mut shell = Shell::new(radius);
    let mut stored = 0usize;
    let avn = tree.run(radius, |words, weight| {
        if even_only && weight % 2 == 1 {
            return Err(Error::InvalidParameters(format!(
                "odd-weight codeword found although position 1 is frozen (weight {weight})"
            )));
        }
        shell.add(weight)?;
        if mode == Mode::Collect && weight > 0 {
            stored += 1;
            if stored > cap {
                return Err(Error::SetCapExceeded(cap));
            }
            shell.sets[weight as usize].push(Codeword::from_words(len, words.to_vec()));
        }
        Ok(())
    })?;
    let (d_min, a_dmin) = match shell.finish(radius) {
        Ok(found) => found,
        Err(Error::NothingWithinRadius(_)) => return Ok(Sphere::Empty { avn }),
        Err(e) => return Err(e),
    };
    let codewords = match mode {
        Mode::Count => None,
        Mode::Collect => {
            let mut set = std::mem::take(&mut shell.sets[d_min as usize]);
            set.sort_unstable();
            Some(set)
        }
    };
    Ok(Sphere::Found(MwdResult {
        d_min,
        a_dmin,
        codewords,
        avn,
        flags: Vec::new(),
    }))
}

/// Default limit on the number of codewords a recursion step may hold.
pub const DEFAULT_SET_CAP: usize = 10_000_000;

#[derive(Debug, Clone)]
pub struct ScremOptions {
    /// Largest shell materialized during recursion; a case-2 step whose
    /// component shells exceed it is answered by a direct search instead.
    pub set_cap: usize,
}

impl Default for ScremOptions {
    fn default() -> Self {
        Self {
            set_cap: DEFAULT_SET_CAP,
        }
    }
}

/// Recursive enumeration through the `(c' ⊕ c'', c'')` split.
/// `d_min_hint` must equal [`min_weight_lower_bound`].
pub fn screm(spec: &CodeSpec, d_min_hint: u32, mode: Mode) -> Result<MwdResult> {
    screm_with(spec, d_min_hint, mode, &ScremOptions::default())
}

pub fn screm_with(
    spec: &CodeSpec,
    d_min_hint: u32,
    mode: Mode,
    options: &ScremOptions,
) -> Result<MwdResult> {
    let expected = min_weight_lower_bound(spec)?;
    if d_min_hint != expected {
        return Err(Error::InconsistentHint {
            hint: d_min_hint,
            expected,
        });
    }
    let mut out = MwdResult {
        d_min: expected,
        a_dmin: 0,
        codewords: None,
        avn: 0,
        flags: Vec::new(),
    };
    let node = recurse(spec, expected, mode == Mode::Collect, options, &mut out)?;
    out.a_dmin = node.count;
    out.codewords = node.set;
    Ok(out)
}

struct Node {
    count: u64,
    set: Option<Vec<Codeword>>,
}

fn direct(
    spec: &CodeSpec,
    d: u32,
    need_set: bool,
    cap: usize,
    out: &mut MwdResult,
) -> Result<Node> {
    let mode = if need_set { Mode::Collect } else { Mode::Count };
    let r = scem_capped(spec, d, mode, cap)?;
    out.avn += r.avn;
    if r.d_min != d {
        return Err(Error::UnexpectedCase {
            d_min: d,
            upper: r.d_min,
            lower: r.d_min,
        });
    }
    Ok(Node {
        count: r.a_dmin,
        set: r.codewords,
    })
}

fn recurse(
    spec: &CodeSpec,
    d: u32,
    need_set: bool,
    options: &ScremOptions,
    out: &mut MwdResult,
) -> Result<Node> {
    let len = spec.len();
    let cap = options.set_cap;
    if len == 2 {
        return direct(spec, d, need_set, cap, out);
    }
    let split = split_unchecked(spec);
    let (k1, k2) = (split.upper.dimension(), split.lower.dimension());
    if k1 == 0 || k2 == len / 2 {
        return direct(spec, d, need_set, cap, out);
    }
    if !split.is_nested() {
        out.flag(ResultFlag::NotNested);
        out.flag(ResultFlag::FallbackUsed);
        return direct(spec, d, need_set, cap, out);
    }
    let d1 = mask_min_weight(split.upper.mask_b()).expect("K' > 0");
    let d2 = mask_min_weight(split.lower.mask_b()).expect("K'' >= K' > 0");
    let half = len / 2;

    if d1 == d && d2 == d {
        // case 1: T'' is not needed
        let upper = recurse(&split.upper, d1, need_set, options, out)?;
        let count = upper.count.checked_mul(2).ok_or(Error::CounterOverflow)?;
        let set = upper.set.map(|t1| {
            let zero = Codeword::zeros(half);
            let mut set: Vec<Codeword> = t1
                .iter()
                .map(|c| c.concat(&zero))
                .chain(t1.iter().map(|c| zero.concat(c)))
                .collect();
            set.sort_unstable();
            set
        });
        check_cap(set.as_ref(), cap)?;
        Ok(Node { count, set })
    } else if d1 == d && 2 * d2 == d {
        // case 2: both shells are needed for T4
        let children = recurse(&split.upper, d1, true, options, out).and_then(|upper| {
            recurse(&split.lower, d2, true, options, out).map(|lower| (upper, lower))
        });
        let (upper, lower) = match children {
            Ok(pair) => pair,
            Err(Error::SetCapExceeded(_)) => {
                out.flag(ResultFlag::SetCapExceeded);
                out.flag(ResultFlag::FallbackUsed);
                return direct(spec, d, need_set, cap, out);
            }
            Err(e) => return Err(e),
        };
        let t1 = upper.set.expect("collected");
        let t2 = lower.set.expect("collected");
        let t4 = build_t4(&t1, &t2, d / 2);
        let count = upper
            .count
            .checked_mul(2)
            .and_then(|x| x.checked_add(lower.count))
            .and_then(|x| x.checked_add(t4.len() as u64))
            .ok_or(Error::CounterOverflow)?;
        let set = if need_set {
            let zero = Codeword::zeros(half);
            let mut set: Vec<Codeword> = Vec::with_capacity(count as usize);
            set.extend(t1.iter().map(|c| c.concat(&zero)));
            set.extend(t1.iter().map(|c| zero.concat(c)));
            set.extend(t2.iter().map(|c| c.concat(c)));
            set.extend(t4);
            set.sort_unstable();
            debug_assert!(set.windows(2).all(|w| w[0] != w[1]), "T1..T4 overlap");
            Some(set)
        } else {
            None
        };
        check_cap(set.as_ref(), cap)?;
        Ok(Node { count, set })
    } else if d1 > d && 2 * d2 == d {
        // case 3: T' is not needed
        let lower = recurse(&split.lower, d2, need_set, options, out)?;
        let set = lower.set.map(|t| {
            let mut set: Vec<Codeword> = t.iter().map(|c| c.concat(c)).collect();
            set.sort_unstable();
            set
        });
        Ok(Node {
            count: lower.count,
            set,
        })
    } else {
        Err(Error::UnexpectedCase {
            d_min: d,
            upper: d1,
            lower: d2,
        })
    }
}

fn check_cap(set: Option<&Vec<Codeword>>, cap: usize) -> Result<()> {
    match set {
        Some(s) if s.len() > cap => Err(Error::SetCapExceeded(cap)),
        _ => Ok(()),
    }
}

/// `{(c' ⊕ c'', c'') : c' ∈ t_prime, c'' ∈ t_double_prime,
/// wt(c' ⊕ c'') = half_d}`, sorted and deduplicated.
///
/// When every `c'` has weight `2·half_d` and every `c''` weight `half_d`,
/// the weight condition says the support of `c''` lies inside that of
/// `c'`, so candidates are looked up by the first one of `c''`.
pub fn build_t4(t_prime: &[Codeword], t_double_prime: &[Codeword], half_d: u32) -> Vec<Codeword> {
    let regular = t_prime.iter().all(|c| c.weight() == 2 * half_d)
        && t_double_prime.iter().all(|c| c.weight() == half_d);
    let mut out = Vec::new();
    if t_prime.is_empty() || t_double_prime.is_empty() {
        return out;
    }
    if regular {
        let len = t_double_prime[0].len();
        let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); len + 1];
        for (i, c) in t_double_prime.iter().enumerate() {
            if let Some(&first) = c.support().first() {
                buckets[first].push(i);
            }
        }
        for c1 in t_prime {
            for p in c1.support() {
                for &i in &buckets[p] {
                    let c2 = &t_double_prime[i];
                    if c2.is_covered_by(c1) {
                        out.push(c1.xor(c2).concat(c2));
                    }
                }
            }
        }
    } else {
        for c1 in t_prime {
            for c2 in t_double_prime {
                let left = c1.xor(c2);
                if left.weight() == half_d {
                    out.push(left.concat(c2));
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}
