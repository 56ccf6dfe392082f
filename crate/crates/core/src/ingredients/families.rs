//! Families of small coverings whose union is a complete subset set, plus the
//! part-complement witness.

use std::collections::BTreeSet;

use crate::block::Block;
use crate::error::{invalid, Result};
use crate::model::{multiset_union, BlockFamily, CoverSpec, Design};
use crate::subsets::Combinations;
use crate::verify::{verify_cover_on, verify_general_cover, VerifyOptions};

use super::greedy::{greedy_cover, greedy_extend};
use super::resolvable::one_factorization;

/// Size of an optimal `(v, 3, 2)` covering: `⌈(v/3)⌈(v-1)/2⌉⌉`.
pub fn fort_hedlund_size(v: u32) -> Result<u64> {
    if v < 3 {
        return Err(invalid(format!("Fort-Hedlund size needs v >= 3, got {v}")));
    }
    let v = v as u64;
    Ok((v * (v - 1).div_ceil(2)).div_ceil(3))
}

/// `(v, 2, 1)` coverings whose union is every pair: the 1-factors for even `v`; for odd
/// `v`, `v - 1` near-1-factors each completed by one pair.
pub fn matching_family(v: u32) -> Result<BlockFamily> {
    if v < 2 {
        return Err(invalid(format!("matching family needs v >= 2, got {v}")));
    }
    let members = if v.is_multiple_of(2) {
        one_factorization(v)?.classes().to_vec()
    } else {
        // Factor K_{v+1} and drop the hub v: class i misses the hub's partner x_i. The
        // last class supplies, for every other class, the pair through its missed point.
        let f = one_factorization(v + 1)?;
        let hub = v;
        let near: Vec<(Vec<Block>, u32)> = f
            .classes()
            .iter()
            .map(|class| {
                let through = class.iter().find(|b| b.contains(hub)).expect("hub is matched");
                let missed = through.without(hub).points().next().expect("pair");
                (class.iter().copied().filter(|b| !b.contains(hub)).collect(), missed)
            })
            .collect();
        let (last, _) = near.last().expect("v >= 3 gives classes");
        near[..near.len() - 1]
            .iter()
            .map(|(class, missed)| {
                let extra = *last.iter().find(|b| b.contains(*missed)).expect("last class covers it");
                let mut member = class.clone();
                member.push(extra);
                member.sort();
                member
            })
            .collect()
    };
    let family = BlockFamily::new(v, members)?;
    check_family(&family, 1, 1, 2, "matching family")?;
    Ok(family)
}

/// `(v, 3, 2)` coverings whose union is every triple. Each member is a smallest pair
/// covering (size [`fort_hedlund_size`]) holding as many not-yet-used triples as a bounded
/// search finds; above 16 points, or when the search comes up empty, members are built
/// greedily instead.
pub fn triple_family(v: u32) -> Result<BlockFamily> {
    if v < 4 {
        return Err(invalid(format!("triple family needs v >= 4, got {v}")));
    }
    crate::model::check_capacity(v)?;
    let triples: Vec<Block> = Combinations::new(v as usize, 3)
        .map(|c| Block::from_points(c.into_iter().map(|p| p as u32)).expect("distinct"))
        .collect();
    let target = fort_hedlund_size(v)? as usize;
    let mut unused: BTreeSet<Block> = triples.iter().copied().collect();
    let mut members = Vec::new();
    while !unused.is_empty() {
        let mut member = if v <= 16 {
            optimal_member(v, &triples, &unused, target)
        } else {
            None
        }
        .unwrap_or_else(|| greedy_member(&triples, &unused));
        for t in &member {
            unused.remove(t);
        }
        member.sort();
        members.push(member);
    }
    let family = BlockFamily::new(v, members)?;
    check_family(&family, 2, 2, 3, "triple family")?;
    Ok(family)
}

const MEMBER_SEARCH_NODES: u64 = 2_000_000;

// Pair index within 0..C(v,2) for the pair-coverage bitmask.
fn pair_index(v: u32, a: u32, b: u32) -> u32 {
    a * (2 * v - a - 1) / 2 + (b - a - 1)
}

fn optimal_member(v: u32, triples: &[Block], unused: &BTreeSet<Block>, size: usize) -> Option<Vec<Block>> {
    let n_pairs = v * (v - 1) / 2;
    let all: u128 = if n_pairs == 128 { u128::MAX } else { (1u128 << n_pairs) - 1 };
    let masks: Vec<u128> = triples
        .iter()
        .map(|t| {
            let p = t.to_vec();
            (1u128 << pair_index(v, p[0], p[1])) | (1u128 << pair_index(v, p[0], p[2])) | (1u128 << pair_index(v, p[1], p[2]))
        })
        .collect();
    // Triples through each pair, unused ones first, then lexicographic.
    let mut through: Vec<Vec<usize>> = vec![Vec::new(); n_pairs as usize];
    for (i, &m) in masks.iter().enumerate() {
        for bit in Block::from_mask(m).points() {
            through[bit as usize].push(i);
        }
    }
    for list in through.iter_mut() {
        list.sort_by_key(|&i| (!unused.contains(&triples[i]), i));
    }
    struct Search<'a> {
        masks: &'a [u128],
        through: &'a [Vec<usize>],
        fresh: Vec<bool>,
        all: u128,
        size: usize,
        chosen: Vec<usize>,
        best: Option<(usize, Vec<usize>)>,
        nodes: u64,
    }
    impl Search<'_> {
        fn go(&mut self, covered: u128, score: usize) {
            if covered == self.all {
                if self.best.as_ref().is_none_or(|(b, _)| score > *b) {
                    self.best = Some((score, self.chosen.clone()));
                }
                return;
            }
            let left = self.size - self.chosen.len();
            if left == 0 || self.nodes >= MEMBER_SEARCH_NODES {
                return;
            }
            if let Some((b, _)) = &self.best {
                if score + left <= *b || *b == self.size {
                    return;
                }
            }
            // Each triple covers at most three new pairs.
            if ((!covered) & self.all).count_ones() as usize > 3 * left {
                return;
            }
            self.nodes += 1;
            let pair = ((!covered) & self.all).trailing_zeros() as usize;
            let through = self.through;
            for &t in &through[pair] {
                self.chosen.push(t);
                self.go(covered | self.masks[t], score + usize::from(self.fresh[t]));
                self.chosen.pop();
            }
        }
    }
    let mut search = Search {
        masks: &masks,
        through: &through,
        fresh: triples.iter().map(|t| unused.contains(t)).collect(),
        all,
        size,
        chosen: Vec::new(),
        best: None,
        nodes: 0,
    };
    search.go(0, 0);
    match search.best {
        Some((score, ids)) if score > 0 => Some(ids.into_iter().map(|i| triples[i]).collect()),
        _ => None,
    }
}

// Seeded with the least unused triple; prefers unused triples among those covering the
// most new pairs.
fn greedy_member(triples: &[Block], unused: &BTreeSet<Block>) -> Vec<Block> {
    let seed = *unused.iter().next().expect("caller checks");
    let mut member = vec![seed];
    let mut covered = pairs_of(seed);
    loop {
        let best = triples
            .iter()
            .map(|&t| {
                let new = pairs_of_iter(t).filter(|p| !covered.contains(p)).count();
                (new, unused.contains(&t), t)
            })
            .filter(|&(new, _, _)| new > 0)
            .max_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)).then(b.2.cmp(&a.2)));
        match best {
            Some((_, _, t)) => {
                covered.extend(pairs_of_iter(t));
                member.push(t);
            }
            None => break,
        }
    }
    prune(&mut member, unused);
    member
}

fn pairs_of(t: Block) -> BTreeSet<Block> {
    pairs_of_iter(t).collect()
}

fn pairs_of_iter(t: Block) -> impl Iterator<Item = Block> {
    let p = t.to_vec();
    (0..p.len()).flat_map(move |i| {
        let p = p.clone();
        (i + 1..p.len()).map(move |j| Block::singleton(p[i]).with(p[j]))
    })
}

// Drops triples whose pairs are covered elsewhere in the member, already-used ones first.
fn prune(member: &mut Vec<Block>, unused: &BTreeSet<Block>) {
    let mut order: Vec<usize> = (0..member.len()).collect();
    order.sort_by_key(|&i| (unused.contains(&member[i]), std::cmp::Reverse(i)));
    let mut keep = vec![true; member.len()];
    for i in order {
        let others: BTreeSet<Block> = (0..member.len())
            .filter(|&j| j != i && keep[j])
            .flat_map(|j| pairs_of_iter(member[j]))
            .collect();
        if pairs_of_iter(member[i]).all(|p| others.contains(&p)) {
            keep[i] = false;
        }
    }
    let kept: Vec<Block> = member.iter().zip(&keep).filter_map(|(&b, &k)| k.then_some(b)).collect();
    *member = kept;
}

/// `h` `(v, 4, 2)` coverings whose union is a `(v, 4, 3)` covering: a greedy `(v, 4, 3)`
/// covering is dealt round-robin over the members, then each member is completed.
pub fn quad_family(v: u32, h: u32, seed: u64) -> Result<BlockFamily> {
    if v < 4 || h == 0 {
        return Err(invalid(format!("quad family needs v >= 4 and h >= 1, got v={v}, h={h}")));
    }
    let base = greedy_cover(&CoverSpec::covering(v, 4, 3)?, seed, 4)?.blocks();
    let pair_spec = CoverSpec::covering(v, 4, 2)?;
    let members = (0..h as usize)
        .map(|j| {
            let initial: Vec<Block> = base.iter().copied().skip(j).step_by(h as usize).collect();
            Ok(greedy_extend(&pair_spec, &initial, seed, 2)?.blocks())
        })
        .collect::<Result<Vec<_>>>()?;
    let family = BlockFamily::new(v, members)?;
    check_family(&family, 2, 2, 0, "quad family")?;
    let union = Design::new(v, 4, family.union())?;
    verify_general_cover(&union, &CoverSpec::covering(v, 4, 3)?)?.into_result("quad family union")?;
    Ok(family)
}

// Each member must be a t-(v, k, m, 1) cover; the union must contain every `whole`-subset
// (skipped when `whole` is 0).
fn check_family(f: &BlockFamily, t: u32, m: u32, whole: u32, what: &str) -> Result<()> {
    let ground = Block::range(f.v());
    let opts = VerifyOptions::default();
    for (i, member) in f.members().iter().enumerate() {
        let counted: Vec<(Block, u32)> = member.iter().map(|&b| (b, 1)).collect();
        verify_cover_on(&counted, ground, t, m, 1, &opts)?.into_result(format!("{what} member {i}"))?;
    }
    if whole > 0 {
        let union: Vec<(Block, u32)> = multiset_union(f.members()).into_iter().map(|b| (b, 1)).collect();
        verify_cover_on(&union, ground, whole, whole, 1, &opts)?
            .into_result(format!("{what} union"))?;
    }
    Ok(())
}

/// The complements of the three parts `{0..k-1}, {k..2k-1}, {2k..3k-1}`: a 3-block
/// `(3k, 2k, 4, 5)` cover, since every 5-subset has at most one point in some part.
pub fn part_complement_cover(k: u32) -> Result<Design> {
    if k < 2 {
        return Err(invalid(format!("part-complement cover needs k >= 2, got {k}")));
    }
    let v = 3 * k;
    let all = Block::range(v);
    let blocks = (0..3).map(|i| all.difference(Block::from_mask(Block::range(k).mask() << (i * k))));
    let d = Design::new(v, 2 * k, blocks)?;
    verify_general_cover(&d, &CoverSpec::lotto(v, 2 * k, 4, 5)?)?
        .into_result("part-complement cover")?;
    Ok(d)
}
