//! Brute-force reference checks, written without the library's bitsets or enumerators.

#![allow(dead_code)]

use std::path::PathBuf;

use gencover::Design;

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data")
}

pub const GOLDEN: [&str; 3] = ["c8_4_4_5.cov", "c12_4_4_6.cov", "c18_6_4_6.cov"];

/// Blocks as sorted point lists, repeated by multiplicity.
pub fn plain_blocks(d: &Design) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for &(b, mult) in d.entries() {
        for _ in 0..mult {
            out.push(b.to_vec());
        }
    }
    out
}

fn meet(a: &[u32], b: &[u32]) -> usize {
    a.iter().filter(|x| b.contains(x)).count()
}

/// All `m`-subsets of `0..v` in lexicographic order.
pub fn subsets(v: u32, m: u32) -> Vec<Vec<u32>> {
    fn rec(start: u32, v: u32, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for x in start..=v - left {
            cur.push(x);
            rec(x + 1, v, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if m <= v {
        rec(0, v, m, &mut Vec::new(), &mut out);
    }
    out
}

/// First `m`-subset meeting fewer than `lambda` blocks in at least `t` points.
pub fn oracle_counterexample(blocks: &[Vec<u32>], v: u32, t: u32, m: u32, lambda: u32) -> Option<Vec<u32>> {
    subsets(v, m).into_iter().find(|s| {
        blocks.iter().filter(|b| meet(b, s) >= t as usize).count() < lambda as usize
    })
}

pub fn oracle_passes(d: &Design, t: u32, m: u32, lambda: u32) -> bool {
    oracle_counterexample(&plain_blocks(d), d.v(), t, m, lambda).is_none()
}

/// Smallest number of `k`-subsets of a `v`-set forming a `(v,k,t,m,1)` cover, by
/// exhaustive search over block counts.
pub fn oracle_cover_number(v: u32, k: u32, t: u32, m: u32) -> usize {
    let all = subsets(v, k);
    let targets = subsets(v, m);
    for n in 1..=all.len() {
        let mut pick = Vec::new();
        if search(&all, &targets, t as usize, n, 0, &mut pick) {
            return n;
        }
    }
    unreachable!("all k-subsets always cover")
}

fn search(all: &[Vec<u32>], targets: &[Vec<u32>], t: usize, n: usize, start: usize, pick: &mut Vec<usize>) -> bool {
    if pick.len() == n {
        return targets.iter().all(|s| pick.iter().any(|&i| meet(&all[i], s) >= t));
    }
    for i in start..all.len() {
        pick.push(i);
        if search(all, targets, t, n, i + 1, pick) {
            return true;
        }
        pick.pop();
    }
    false
}
