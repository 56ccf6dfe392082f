//! Greedy general-cover generator with randomized restarts.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::block::Block;
use crate::error::{invalid, Result};
use crate::model::{CoverSpec, Design};
use crate::subsets::{binomial, Combinations};
use crate::verify::verify_general_cover;

/// Largest candidate/target incidence count the generator will build.
pub const INCIDENCE_LIMIT: u128 = 60_000_000;

/// Greedy cover for `s`: repeatedly adds the block meeting the most unsatisfied
/// `m`-subsets, then drops redundant blocks. Restart 0 breaks ties lexicographically;
/// later restarts use a seeded random priority. The smallest result wins, ties going to
/// the lexicographically least design.
pub fn greedy_cover(s: &CoverSpec, seed: u64, restarts: u32) -> Result<Design> {
    greedy_extend(s, &[], seed, restarts)
}

/// As [`greedy_cover`], but starting from `initial` blocks that are always kept.
pub fn greedy_extend(s: &CoverSpec, initial: &[Block], seed: u64, restarts: u32) -> Result<Design> {
    s.validate()?;
    let inc = Incidence::build(s)?;
    let mut fixed = Vec::with_capacity(initial.len());
    for &b in initial {
        match inc.index.get(&b.mask()) {
            Some(&c) => fixed.push(c),
            None => return Err(invalid(format!("initial block {b:?} is not a {}-subset of 0..{}", s.k, s.v))),
        }
    }
    let best = (0..restarts.max(1))
        .into_par_iter()
        .map(|r| {
            let chosen = inc.run(s.lambda, &fixed, priority(inc.cands.len(), seed, r));
            Design::new(s.v, s.k, chosen.iter().map(|&c| inc.cands[c]))
        })
        .collect::<Result<Vec<Design>>>()?
        .into_iter()
        .min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)))
        .expect("at least one restart");
    verify_general_cover(&best, s)?.into_result(format!("greedy {s}"))?;
    Ok(best)
}

fn priority(n: usize, seed: u64, restart: u32) -> Vec<u32> {
    let mut order: Vec<u32> = (0..n as u32).collect();
    if restart > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(restart as u64);
        order.shuffle(&mut rng);
    }
    // order[i] is the candidate at position i; invert to rank per candidate.
    let mut rank = vec![0u32; n];
    for (pos, &c) in order.iter().enumerate() {
        rank[c as usize] = pos as u32;
    }
    rank
}

struct Incidence {
    cands: Vec<Block>,
    index: HashMap<u128, usize>,
    // Candidate -> targets it satisfies, and the reverse, in CSR form.
    c_start: Vec<usize>,
    c_targets: Vec<u32>,
    t_start: Vec<usize>,
    t_cands: Vec<u32>,
}

impl Incidence {
    fn build(s: &CoverSpec) -> Result<Incidence> {
        let (v, k, t, m) = (s.v as u64, s.k as u64, s.t as u64, s.m as u64);
        let n_cands = binomial(v, k);
        let per_cand: u128 = (t..=k.min(m)).map(|j| binomial(k, j) * binomial(v - k, m - j)).sum();
        let total = n_cands.saturating_mul(per_cand);
        if total > INCIDENCE_LIMIT {
            return Err(invalid(format!(
                "greedy instance {s} needs {total} incidences (limit {INCIDENCE_LIMIT})"
            )));
        }
        let n_targets = binomial(v, m) as usize;
        let cands: Vec<Block> = Combinations::new(v as usize, k as usize)
            .map(|c| Block::from_points(c.into_iter().map(|p| p as u32)).expect("distinct points"))
            .collect();
        let index = cands.iter().enumerate().map(|(i, b)| (b.mask(), i)).collect();
        let mut c_start = Vec::with_capacity(cands.len() + 1);
        let mut c_targets = Vec::with_capacity(total as usize);
        c_start.push(0);
        for &b in &cands {
            let inside = b.to_vec();
            let outside = Block::range(s.v).difference(b).to_vec();
            for j in t..=k.min(m) {
                if m - j > outside.len() as u64 {
                    continue;
                }
                for a in Combinations::new(inside.len(), j as usize) {
                    let base = a.iter().fold(0u128, |acc, &i| acc | 1 << inside[i]);
                    for o in Combinations::new(outside.len(), (m - j) as usize) {
                        let mask = o.iter().fold(base, |acc, &i| acc | 1 << outside[i]);
                        c_targets.push(colex_rank(mask) as u32);
                    }
                }
            }
            c_start.push(c_targets.len());
        }
        let mut t_start = vec![0usize; n_targets + 1];
        for &tg in &c_targets {
            t_start[tg as usize + 1] += 1;
        }
        for i in 0..n_targets {
            t_start[i + 1] += t_start[i];
        }
        let mut fill = t_start.clone();
        let mut t_cands = vec![0u32; c_targets.len()];
        for c in 0..cands.len() {
            for &tg in &c_targets[c_start[c]..c_start[c + 1]] {
                t_cands[fill[tg as usize]] = c as u32;
                fill[tg as usize] += 1;
            }
        }
        Ok(Incidence {
            cands,
            index,
            c_start,
            c_targets,
            t_start,
            t_cands,
        })
    }

    fn targets(&self, c: usize) -> &[u32] {
        &self.c_targets[self.c_start[c]..self.c_start[c + 1]]
    }

    fn run(&self, lambda: u32, fixed: &[usize], rank: Vec<u32>) -> Vec<usize> {
        let n_targets = self.t_start.len() - 1;
        let mut need = vec![lambda; n_targets];
        let mut gain: Vec<u32> = (0..self.cands.len()).map(|c| self.targets(c).len() as u32).collect();
        let mut open = n_targets;
        let mut chosen: Vec<usize> = Vec::new();
        let take = |c: usize, need: &mut Vec<u32>, gain: &mut Vec<u32>, open: &mut usize| {
            for &tg in self.targets(c) {
                let tg = tg as usize;
                if need[tg] > 0 {
                    need[tg] -= 1;
                    if need[tg] == 0 {
                        *open -= 1;
                        for &c2 in &self.t_cands[self.t_start[tg]..self.t_start[tg + 1]] {
                            gain[c2 as usize] -= 1;
                        }
                    }
                }
            }
        };
        for &c in fixed {
            take(c, &mut need, &mut gain, &mut open);
            chosen.push(c);
        }
        while open > 0 {
            let best = (0..self.cands.len())
                .filter(|&c| gain[c] > 0)
                .max_by(|&a, &b| gain[a].cmp(&gain[b]).then(rank[b].cmp(&rank[a])))
                .expect("an open target always has a candidate");
            take(best, &mut need, &mut gain, &mut open);
            chosen.push(best);
        }
        // Drop blocks, latest first, whose targets stay satisfied without them.
        let mut count = vec![0u32; n_targets];
        for &c in &chosen {
            for &tg in self.targets(c) {
                count[tg as usize] += 1;
            }
        }
        let mut keep = vec![true; chosen.len()];
        for i in (fixed.len()..chosen.len()).rev() {
            let ts = self.targets(chosen[i]);
            if ts.iter().all(|&tg| count[tg as usize] > lambda) {
                keep[i] = false;
                for &tg in ts {
                    count[tg as usize] -= 1;
                }
            }
        }
        chosen
            .into_iter()
            .zip(keep)
            .filter_map(|(c, k)| k.then_some(c))
            .collect()
    }
}

/// Rank of a subset in colexicographic order.
fn colex_rank(mask: u128) -> u128 {
    Block::from_mask(mask)
        .points()
        .enumerate()
        .map(|(i, p)| binomial(p as u64, i as u64 + 1))
        .sum()
}
