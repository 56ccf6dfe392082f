//! Exhaustive verification with certificates.
//!
//! Every check enumerates subsets in lexicographic order and reports the least failing one.
//! Large enumerations fan out over disjoint rank ranges; the reduction keeps the failure from
//! the lowest range, so the verdict never depends on the thread count.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::block::Block;
use crate::error::{Error, Result};
use crate::model::{multiset_union, CoverSpec, Design, PartitionSpec, ResolvedClasses};
use crate::subsets::{advance, binomial, unrank};

/// Largest enumeration accepted without `force`.
pub const SUBSET_CEILING: u128 = 100_000_000;

const PARALLEL_THRESHOLD: u128 = 20_000;
const CHUNKS_PER_THREAD: usize = 16;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Worker threads; `None` uses the global pool, `Some(1)` runs inline.
    pub threads: Option<usize>,
    /// Lift the subset-count ceiling.
    pub force: bool,
}

impl VerifyOptions {
    pub fn serial() -> Self {
        VerifyOptions {
            threads: Some(1),
            force: false,
        }
    }
}

/// Outcome of a check. `counterexample` is absent exactly when the check passed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Verdict {
    pub counterexample: Option<Vec<u32>>,
    /// Coverage (or containment) count achieved by the counterexample.
    pub achieved: Option<u64>,
    /// Which property failed, for checks with more than one.
    pub reason: Option<String>,
}

impl Verdict {
    pub fn pass() -> Self {
        Verdict {
            counterexample: None,
            achieved: None,
            reason: None,
        }
    }

    pub fn fail(subset: Vec<u32>, achieved: u64, reason: impl Into<String>) -> Self {
        Verdict {
            counterexample: Some(subset),
            achieved: Some(achieved),
            reason: Some(reason.into()),
        }
    }

    pub fn is_pass(&self) -> bool {
        self.counterexample.is_none()
    }

    /// Converts a failing verdict into [`Error::VerificationFailed`].
    pub fn into_result(self, context: impl Into<String>) -> Result<()> {
        if self.is_pass() {
            Ok(())
        } else {
            Err(Error::VerificationFailed {
                context: context.into(),
                verdict: self,
            })
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None => f.write_str("pass"),
            Some(s) => {
                let pts: Vec<String> = s.iter().map(u32::to_string).collect();
                write!(
                    f,
                    "fail subset={{{}}} achieved={}",
                    pts.join(","),
                    self.achieved.unwrap_or(0)
                )?;
                if let Some(r) = &self.reason {
                    write!(f, " ({r})")?;
                }
                Ok(())
            }
        }
    }
}

/// Finds the lexicographically least `m`-subset of `ground` rejected by `check`.
///
/// `check` gets the subset as a bit mask and returns `Some(achieved)` on failure. `init`
/// builds per-worker scratch state (e.g. a block hint).
fn first_failure<S, I, F>(
    ground: &[u32],
    m: usize,
    opts: &VerifyOptions,
    init: I,
    check: F,
) -> Result<Option<(Vec<u32>, u64)>>
where
    I: Fn() -> S + Sync,
    F: Fn(&mut S, u128) -> Option<u64> + Sync,
{
    let n = ground.len();
    if m > n {
        return Ok(None);
    }
    let total = binomial(n as u64, m as u64);
    if total > SUBSET_CEILING && !opts.force {
        return Err(Error::TooLarge {
            n: n as u32,
            m: m as u32,
            count: total,
            ceiling: SUBSET_CEILING,
        });
    }
    let bits: Vec<u128> = ground.iter().map(|&p| 1u128 << p).collect();

    let scan = |start: u128, len: u128, stop: &dyn Fn() -> bool| -> Option<(Vec<usize>, u64)> {
        let mut state = init();
        let mut idx = unrank(n, m, start);
        let mut prefix = vec![0u128; m + 1];
        for j in 0..m {
            prefix[j + 1] = prefix[j] | bits[idx[j]];
        }
        let mut step: u128 = 0;
        loop {
            if step & 0xfff == 0 && stop() {
                return None;
            }
            if let Some(a) = check(&mut state, prefix[m]) {
                return Some((idx, a));
            }
            step += 1;
            if step == len {
                return None;
            }
            let from = advance(&mut idx, n)?;
            for j in from..m {
                prefix[j + 1] = prefix[j] | bits[idx[j]];
            }
        }
    };

    let threads = opts.threads.unwrap_or_else(rayon::current_num_threads).max(1);
    let found = if threads == 1 || total < PARALLEL_THRESHOLD {
        scan(0, total, &|| false)
    } else {
        let chunks = (threads * CHUNKS_PER_THREAD).min(total as usize);
        let size = total.div_ceil(chunks as u128);
        let best = AtomicUsize::new(usize::MAX);
        let run = || {
            (0..chunks)
                .into_par_iter()
                .map(|c| {
                    let start = c as u128 * size;
                    if start >= total {
                        return None;
                    }
                    let len = size.min(total - start);
                    let hit = scan(start, len, &|| best.load(Ordering::Relaxed) < c);
                    if hit.is_some() {
                        best.fetch_min(c, Ordering::Relaxed);
                    }
                    hit
                })
                .collect::<Vec<_>>()
        };
        let results = match opts.threads {
            Some(t) => rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| Error::InvalidParameter(e.to_string()))?
                .install(run),
            None => run(),
        };
        results.into_iter().flatten().next()
    };
    Ok(found.map(|(idx, a)| (idx.into_iter().map(|i| ground[i]).collect(), a)))
}

fn counted(blocks: &[(Block, u32)]) -> Vec<(u128, u64)> {
    blocks.iter().map(|&(b, m)| (b.mask(), m as u64)).collect()
}

fn counted_multiset(blocks: &[Block]) -> Vec<(Block, u32)> {
    let mut map: BTreeMap<Block, u32> = BTreeMap::new();
    for &b in blocks {
        *map.entry(b).or_insert(0) += 1;
    }
    map.into_iter().collect()
}

/// Checks that every `m`-subset of `ground` meets at least `lambda` of `blocks` (with
/// multiplicity) in at least `t` points.
pub fn verify_cover_on(
    blocks: &[(Block, u32)],
    ground: Block,
    t: u32,
    m: u32,
    lambda: u32,
    opts: &VerifyOptions,
) -> Result<Verdict> {
    let flat = counted(blocks);
    let ground_pts = ground.to_vec();
    let lambda = lambda as u64;
    let found = first_failure(
        &ground_pts,
        m as usize,
        opts,
        || 0usize,
        |hint: &mut usize, mask| {
            let len = flat.len();
            let mut count = 0u64;
            for j in 0..len {
                let i = (*hint + j) % len;
                let (b, mult) = flat[i];
                if (b & mask).count_ones() >= t {
                    count += mult;
                    if count >= lambda {
                        *hint = i;
                        return None;
                    }
                }
            }
            Some(count)
        },
    )?;
    Ok(match found {
        None => Verdict::pass(),
        Some((subset, achieved)) => Verdict::fail(
            subset,
            achieved,
            format!("{m}-subset meets {achieved} < {lambda} blocks in >= {t} points"),
        ),
    })
}

/// Exhaustive check of the general-cover property `s` for `d`.
pub fn verify_general_cover(d: &Design, s: &CoverSpec) -> Result<Verdict> {
    verify_general_cover_with(d, s, &VerifyOptions::default())
}

pub fn verify_general_cover_with(
    d: &Design,
    s: &CoverSpec,
    opts: &VerifyOptions,
) -> Result<Verdict> {
    s.validate()?;
    if d.v() != s.v || d.k() != s.k {
        return Err(Error::SpecMismatch(format!(
            "design has v={}, k={} but spec is {s}",
            d.v(),
            d.k()
        )));
    }
    verify_cover_on(d.entries(), Block::range(s.v), s.t, s.m, s.lambda, opts)
}

/// Every `t`-subset must lie in exactly `lambda` blocks.
pub fn verify_t_design(d: &Design, t: u32, lambda: u32) -> Result<Verdict> {
    verify_t_design_with(d, t, lambda, &VerifyOptions::default())
}

pub fn verify_t_design_with(
    d: &Design,
    t: u32,
    lambda: u32,
    opts: &VerifyOptions,
) -> Result<Verdict> {
    if t > d.k() {
        return Err(Error::InvalidParameter(format!(
            "strength {t} exceeds block size {}",
            d.k()
        )));
    }
    let flat = counted(d.entries());
    let ground: Vec<u32> = (0..d.v()).collect();
    let lambda = lambda as u64;
    let found = first_failure(
        &ground,
        t as usize,
        opts,
        || (),
        |_, mask| {
            let count: u64 = flat
                .iter()
                .filter(|(b, _)| b & mask == mask)
                .map(|&(_, m)| m)
                .sum();
            (count != lambda).then_some(count)
        },
    )?;
    Ok(match found {
        None => Verdict::pass(),
        Some((subset, achieved)) => Verdict::fail(
            subset,
            achieved,
            format!("{t}-subset lies in {achieved} blocks, expected {lambda}"),
        ),
    })
}

/// Every class must partition the point set and the flattened blocks must cover every
/// `t`-subset.
pub fn verify_resolution(r: &ResolvedClasses, t: u32) -> Result<Verdict> {
    verify_resolution_with(r, t, &VerifyOptions::default())
}

pub fn verify_resolution_with(
    r: &ResolvedClasses,
    t: u32,
    opts: &VerifyOptions,
) -> Result<Verdict> {
    let v = r.v();
    let range = Block::range(v);
    let size = r.block_size();
    for (i, class) in r.classes().iter().enumerate() {
        if let Some(b) = class.iter().find(|b| b.len() != size) {
            return Ok(Verdict::fail(
                b.to_vec(),
                b.len() as u64,
                format!("class {i} has a block of size {}, expected {size}", b.len()),
            ));
        }
        for p in 0..v {
            let hits = class.iter().filter(|b| b.contains(p)).count() as u64;
            if hits != 1 {
                return Ok(Verdict::fail(
                    vec![p],
                    hits,
                    format!("class {i} does not partition the point set"),
                ));
            }
        }
        if let Some(b) = class.iter().find(|b| !b.is_subset(range)) {
            return Ok(Verdict::fail(
                b.to_vec(),
                0,
                format!("class {i} has points outside 0..{v}"),
            ));
        }
    }
    let all: Vec<Block> = r.classes().iter().flatten().copied().collect();
    verify_cover_on(&counted_multiset(&all), range, t, t, 1, opts)
}

/// The parts must be disjoint, reassemble `sqs` exactly, and each be a 2-(v,4,1) design.
pub fn verify_two_partition(sqs: &Design, parts: &[Vec<Block>]) -> Result<Verdict> {
    if sqs.k() != 4 || !verify_t_design(sqs, 3, 1)?.is_pass() {
        return Err(Error::SpecMismatch(
            "input is not a Steiner quadruple system".into(),
        ));
    }
    let mut seen: BTreeMap<Block, usize> = BTreeMap::new();
    for (i, part) in parts.iter().enumerate() {
        for &b in part {
            if let Some(j) = seen.insert(b, i) {
                return Ok(Verdict::fail(
                    b.to_vec(),
                    2,
                    format!("block appears in parts {j} and {i}"),
                ));
            }
            if sqs.multiplicity(b) == 0 {
                return Ok(Verdict::fail(
                    b.to_vec(),
                    0,
                    format!("part {i} has a block outside the quadruple system"),
                ));
            }
        }
    }
    if let Some(&(b, _)) = sqs.entries().iter().find(|(b, _)| !seen.contains_key(b)) {
        return Ok(Verdict::fail(
            b.to_vec(),
            0,
            "block of the quadruple system is in no part",
        ));
    }
    for (i, part) in parts.iter().enumerate() {
        let d = Design::new(sqs.v(), 4, part.iter().copied())?;
        let verdict = verify_t_design(&d, 2, 1)?;
        if !verdict.is_pass() {
            return Ok(Verdict {
                reason: Some(format!(
                    "part {i} is not an S({},4,2): {}",
                    sqs.v(),
                    verdict.reason.unwrap_or_default()
                )),
                ..verdict
            });
        }
    }
    Ok(Verdict::pass())
}

/// Which of the two three-point splicing variants a layout belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpliceVariant {
    /// Six parts, nine collections, target `(v+3, k, 4, 6)`.
    Six,
    /// Four parts, six collections, target `(v+3, k, 4, 5)`.
    Five,
}

impl SpliceVariant {
    pub fn part_count(self) -> usize {
        match self {
            SpliceVariant::Six => 6,
            SpliceVariant::Five => 4,
        }
    }

    /// Part indices whose union is the ground set of each collection, in the order
    /// `C_1.., D_1.., E_1..`. Parts are ordered `X11, X12, X21, X22[, X31, X32]`.
    pub fn pairing(self) -> Vec<[usize; 2]> {
        match self {
            SpliceVariant::Six => vec![
                [0, 2],
                [1, 3],
                [4, 5],
                [0, 3],
                [1, 2],
                [4, 5],
                [0, 1],
                [2, 3],
                [4, 5],
            ],
            SpliceVariant::Five => vec![[0, 2], [1, 3], [0, 3], [1, 2], [0, 1], [2, 3]],
        }
    }

    /// Collections per family (C, D and E each).
    pub fn per_family(self) -> usize {
        self.part_count() / 2
    }

    /// The subset size `m` used by properties 1-3 (`t = 2`).
    fn cover_m(self) -> u32 {
        match self {
            SpliceVariant::Six => 4,
            SpliceVariant::Five => 3,
        }
    }
}

/// Side conditions of the three-point splicing constructions.
///
/// `parts` partitions `X \ {a}` (its point set is the base design's `0..v` and `a` is the
/// one point left out). `coverings` lists the `C`, `D` and `E` collections in the order
/// given by [`SpliceVariant::pairing`]. Ground-set problems are returned as
/// [`Error::GroundSetMismatch`]; property failures as a failing verdict.
///
/// Checked properties, with `Y = X \ {a}`:
/// 1. the union of the `C`s is a `2-(|Y|, k-3, m, 1)` cover of `Y` (`m = 4` or `3`),
/// 2. the same for the `D`s,
/// 3. the union of the `E`s is a `2-(|Y|, k-2, m, 1)` cover of `Y`,
/// 4. every triple (six-part) or pair (four-part) of `Y` meets some block in two points,
/// 5. every point of `Y` lies in some `C` or `D` block.
pub fn verify_splice_side_conditions(
    variant: SpliceVariant,
    k: u32,
    parts: &PartitionSpec,
    coverings: &[Vec<Block>],
    opts: &VerifyOptions,
) -> Result<Verdict> {
    if k < 5 {
        return Err(Error::InvalidParameter(format!("block size {k} < 5")));
    }
    if parts.len() != variant.part_count() {
        return Err(Error::GroundSetMismatch(format!(
            "expected {} parts, got {}",
            variant.part_count(),
            parts.len()
        )));
    }
    let pairing = variant.pairing();
    if coverings.len() != pairing.len() {
        return Err(Error::GroundSetMismatch(format!(
            "expected {} collections, got {}",
            pairing.len(),
            coverings.len()
        )));
    }
    let ground = (0..parts.len()).fold(Block::EMPTY, |acc, i| acc.union(parts.part_block(i)));
    let per = variant.per_family();
    for (ci, (collection, pair)) in coverings.iter().zip(&pairing).enumerate() {
        let size = if ci < 2 * per { k - 3 } else { k - 2 };
        let g = parts.part_block(pair[0]).union(parts.part_block(pair[1]));
        for &b in collection {
            let ok = b.len() == size
                && b.is_subset(ground)
                && if g.len() >= size {
                    b.is_subset(g)
                } else {
                    g.is_subset(b)
                };
            if !ok {
                return Err(Error::GroundSetMismatch(format!(
                    "collection {} block {b:?} does not fit ground set {:?} with block size {size}",
                    collection_name(ci, per),
                    g.to_vec()
                )));
            }
        }
    }
    let family = |range: std::ops::Range<usize>| -> Vec<(Block, u32)> {
        counted_multiset(&multiset_union(&coverings[range]))
    };
    let c = family(0..per);
    let d = family(per..2 * per);
    let e = family(2 * per..3 * per);
    let all = family(0..3 * per);
    let cd = family(0..2 * per);
    let m = variant.cover_m();
    let checks: [(&[(Block, u32)], u32, u32, &str); 5] = [
        (&c, 2, m, "property 1 (C cover)"),
        (&d, 2, m, "property 2 (D cover)"),
        (&e, 2, m, "property 3 (E cover)"),
        (&all, 2, m - 1, "property 4 (two points of every small subset)"),
        (&cd, 1, 1, "property 5 (every point in a C or D block)"),
    ];
    for (blocks, t, mm, name) in checks {
        let verdict = verify_cover_on(blocks, ground, t, mm, 1, opts)?;
        if !verdict.is_pass() {
            return Ok(Verdict {
                reason: Some(name.to_string()),
                ..verdict
            });
        }
    }
    Ok(Verdict::pass())
}

fn collection_name(ci: usize, per: usize) -> String {
    let family = ["C", "D", "E"][ci / per];
    format!("{family}{}", ci % per + 1)
}

/// Six-part side conditions; see [`verify_splice_side_conditions`].
pub fn verify_splice446_side_conditions(
    k: u32,
    parts: &PartitionSpec,
    coverings: &[Vec<Block>],
) -> Result<Verdict> {
    verify_splice_side_conditions(
        SpliceVariant::Six,
        k,
        parts,
        coverings,
        &VerifyOptions::default(),
    )
}

/// Four-part side conditions; see [`verify_splice_side_conditions`].
pub fn verify_splice445_side_conditions(
    k: u32,
    parts: &PartitionSpec,
    coverings: &[Vec<Block>],
) -> Result<Verdict> {
    verify_splice_side_conditions(
        SpliceVariant::Five,
        k,
        parts,
        coverings,
        &VerifyOptions::default(),
    )
}
