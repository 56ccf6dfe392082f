//! 1-factorizations, affine planes and resolvable pair coverings.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::block::Block;
use crate::error::{invalid, Error, Result};
use crate::model::ResolvedClasses;
use crate::verify::verify_resolution;

/// Budgets for the resolvable covering search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Backtracking nodes before giving up on the exact search.
    pub nodes: u64,
    /// Swap moves per local-search attempt.
    pub moves: u64,
    /// Local-search attempts, seeded `seed, seed + 1, ..`.
    pub attempts: u64,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            nodes: 10_000_000,
            moves: 20_000_000,
            attempts: 8,
            seed: 0,
        }
    }
}

/// Round-robin 1-factorization of `K_n`: `n - 1` classes of `n / 2` pairs.
pub fn one_factorization(n: u32) -> Result<ResolvedClasses> {
    if n < 2 || n % 2 == 1 {
        return Err(invalid(format!("1-factorization needs an even order >= 2, got {n}")));
    }
    let hub = n - 1;
    let m = n - 1;
    let classes = (0..m)
        .map(|r| {
            let mut class = vec![pair(r, hub)];
            for i in 1..n / 2 {
                class.push(pair((r + i) % m, (r + m - i) % m));
            }
            class.sort();
            class
        })
        .collect();
    let out = ResolvedClasses::new(n, classes)?;
    checked(out, "1-factorization")
}

fn pair(a: u32, b: u32) -> Block {
    Block::singleton(a).with(b)
}

/// Addition and multiplication tables of GF(q) for q in {2, 3, 4}.
fn field(q: u32) -> Result<(Vec<Vec<u32>>, Vec<Vec<u32>>)> {
    match q {
        2 | 3 => Ok((
            (0..q).map(|a| (0..q).map(|b| (a + b) % q).collect()).collect(),
            (0..q).map(|a| (0..q).map(|b| a * b % q).collect()).collect(),
        )),
        4 => {
            // Elements 0, 1, w, w+1 encoded as 0..4; addition is XOR, w^2 = w + 1.
            let add = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
            let mul = vec![
                vec![0, 0, 0, 0],
                vec![0, 1, 2, 3],
                vec![0, 2, 3, 1],
                vec![0, 3, 1, 2],
            ];
            Ok((add, mul))
        }
        _ => Err(invalid(format!("affine planes are built only for q in 2..=4, got {q}"))),
    }
}

/// The affine plane AG(2, q) as `q + 1` parallel classes of lines; point `(x, y)` is
/// `x * q + y`.
pub fn affine_plane(q: u32) -> Result<ResolvedClasses> {
    let (add, mul) = field(q)?;
    let point = |x: u32, y: u32| x * q + y;
    let mut classes = Vec::new();
    for slope in 0..q {
        let class = (0..q)
            .map(|b| {
                let pts = (0..q).map(|x| point(x, add[mul[slope as usize][x as usize] as usize][b as usize]));
                Block::from_points(pts).expect("distinct points")
            })
            .collect::<Vec<_>>();
        classes.push(sorted(class));
    }
    let vertical = (0..q)
        .map(|x| Block::from_points((0..q).map(|y| point(x, y))).expect("distinct points"))
        .collect();
    classes.push(sorted(vertical));
    checked(ResolvedClasses::new(q * q, classes)?, "affine plane")
}

/// The resolvable `S(9,3,2)`: AG(2,3) with 4 classes and 12 blocks.
pub fn affine_93() -> Result<ResolvedClasses> {
    affine_plane(3)
}

fn sorted(mut class: Vec<Block>) -> Vec<Block> {
    class.sort();
    class
}

/// Replaces every point `p` of a resolution by the `s` points `p*s .. p*s + s - 1`.
pub fn blow_up(r: &ResolvedClasses, s: u32) -> Result<ResolvedClasses> {
    let classes = r
        .classes()
        .iter()
        .map(|class| {
            sorted(
                class
                    .iter()
                    .map(|b| {
                        Block::from_points(b.points().flat_map(|p| p * s..p * s + s))
                            .expect("disjoint images")
                    })
                    .collect(),
            )
        })
        .collect();
    ResolvedClasses::new(r.v() * s, classes)
}

/// The minimum class count `r(q, k)` of a resolvable `(qk, k, 2)` covering, for
/// `q <= 4` and `k >= 2` (any `k` when `q = 1`).
pub fn r_table(q: u32, k: u32) -> Result<u32> {
    if q > 1 && k < 2 {
        return Err(invalid(format!("no resolvable pair covering with q = {q}, k = {k}")));
    }
    match q {
        1 => Ok(1),
        2 => Ok(if k.is_multiple_of(2) { 3 } else { 4 }),
        3 => Ok(if k.is_multiple_of(3) { 4 } else { 5 }),
        4 => Ok(match k {
            _ if k.is_multiple_of(4) => 5,
            2 | 3 => 7,
            _ => 6,
        }),
        _ => Err(invalid(format!("class size q = {q} outside 1..=4"))),
    }
}

/// A resolvable `(qk, k, 2)` covering with exactly `r(q, k)` classes.
pub fn resolvable_pair_covering(q: u32, k: u32) -> Result<ResolvedClasses> {
    resolvable_pair_covering_with(q, k, &SearchBudget::default())
}

pub fn resolvable_pair_covering_with(
    q: u32,
    k: u32,
    budget: &SearchBudget,
) -> Result<ResolvedClasses> {
    let r = r_table(q, k)?;
    let n = q * k;
    crate::model::check_capacity(n)?;
    let out = if q == 1 {
        ResolvedClasses::new(n, vec![vec![Block::range(n)]])?
    } else if k == 2 {
        one_factorization(n)?
    } else if k.is_multiple_of(q) {
        blow_up(&affine_plane(q)?, k / q)?
    } else {
        match backtrack(q as usize, k as usize, r as usize, budget.nodes) {
            Some(rows) => from_rows(q, k, r, &rows)?,
            None => local_search(q, k, r, budget)?,
        }
    };
    debug_assert_eq!(out.p(), r as usize);
    checked(out, &format!("resolvable ({n},{k},2) covering"))
}

fn checked(r: ResolvedClasses, what: &str) -> Result<ResolvedClasses> {
    verify_resolution(&r, 2)?.into_result(what)?;
    Ok(r)
}

// A resolution with r classes of q blocks is a set of qk words in [q]^r (word x lists the
// block holding point x in each class). Pair coverage means any two words agree somewhere;
// each class partitions into blocks of size k, so each symbol occurs k times per column.
// Words pack 2 bits per coordinate.

fn symbol(x: u32, c: usize) -> usize {
    (x >> (2 * c) & 3) as usize
}

fn agree(x: u32, y: u32, r: usize) -> bool {
    let low: u32 = (0..r).map(|i| 1u32 << (2 * i)).sum();
    let z = x ^ y;
    (z | z >> 1) & low != low
}

struct Backtrack {
    q: usize,
    k: usize,
    r: usize,
    words: Vec<u32>,
    rows: Vec<u32>,
    count: Vec<usize>,
    // Largest symbol used so far per column; new symbols must appear in order.
    top: Vec<i32>,
    nodes: u64,
    budget: u64,
}

impl Backtrack {
    // None: budget exhausted. Some(found).
    fn go(&mut self, i: usize, start: usize) -> Option<bool> {
        if i == self.q * self.k {
            return Some(true);
        }
        let group = i / self.k;
        for wi in start..self.words.len() {
            let x = self.words[wi];
            match symbol(x, 0).cmp(&group) {
                std::cmp::Ordering::Less => continue,
                std::cmp::Ordering::Greater => break,
                std::cmp::Ordering::Equal => {}
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            let r = self.r;
            if (0..r).any(|c| {
                let s = symbol(x, c);
                self.count[c * 4 + s] >= self.k || s as i32 > self.top[c] + 1
            }) {
                continue;
            }
            if !self.rows.iter().all(|&y| agree(x, y, r)) {
                continue;
            }
            let saved = self.top.clone();
            for c in 0..r {
                let s = symbol(x, c);
                self.count[c * 4 + s] += 1;
                self.top[c] = self.top[c].max(s as i32);
            }
            self.rows.push(x);
            if self.go(i + 1, wi)? {
                return Some(true);
            }
            self.rows.pop();
            self.top = saved;
            for c in 0..r {
                self.count[c * 4 + symbol(x, c)] -= 1;
            }
        }
        Some(false)
    }
}

/// Exact search over nondecreasing word lists; `None` if nothing is found within `budget`.
fn backtrack(q: usize, k: usize, r: usize, budget: u64) -> Option<Vec<u32>> {
    let words = (0..q.pow(r as u32))
        .map(|idx| {
            let mut x = 0u32;
            let mut rem = idx;
            for c in (0..r).rev() {
                x |= ((rem % q) as u32) << (2 * c);
                rem /= q;
            }
            x
        })
        .collect();
    let mut s = Backtrack {
        q,
        k,
        r,
        words,
        rows: Vec::new(),
        count: vec![0; r * 4],
        top: vec![-1; r],
        nodes: 0,
        budget,
    };
    match s.go(0, 0) {
        Some(true) => Some(s.rows),
        _ => None,
    }
}

fn from_rows(q: u32, k: u32, r: u32, rows: &[u32]) -> Result<ResolvedClasses> {
    let groups: Vec<Vec<usize>> = (0..r as usize)
        .map(|c| rows.iter().map(|&x| symbol(x, c)).collect())
        .collect();
    from_groups(q, k, &groups)
}

fn from_groups(q: u32, k: u32, groups: &[Vec<usize>]) -> Result<ResolvedClasses> {
    let classes = groups
        .iter()
        .map(|g| {
            let mut blocks = vec![Block::EMPTY; q as usize];
            for (x, &s) in g.iter().enumerate() {
                blocks[s] = blocks[s].with(x as u32);
            }
            sorted(blocks)
        })
        .collect();
    ResolvedClasses::new(q * k, classes)
}

/// Simulated annealing on class assignments, minimizing uncovered pairs. Class 0 stays
/// fixed; a move swaps two points between blocks of one class.
fn local_search(q: u32, k: u32, r: u32, budget: &SearchBudget) -> Result<ResolvedClasses> {
    let n = (q * k) as usize;
    let r = r as usize;
    for attempt in 0..budget.attempts {
        let mut rng = ChaCha8Rng::seed_from_u64(budget.seed.wrapping_add(attempt));
        let mut grp: Vec<Vec<usize>> = (0..r).map(|_| (0..n).map(|x| x / k as usize).collect()).collect();
        for g in grp.iter_mut().skip(1) {
            for i in (1..n).rev() {
                let j = rng.gen_range(0..=i);
                g.swap(i, j);
            }
        }
        let mut cov = vec![0i32; n * n];
        for g in &grp {
            for x in 0..n {
                for y in x + 1..n {
                    if g[x] == g[y] {
                        cov[x * n + y] += 1;
                        cov[y * n + x] += 1;
                    }
                }
            }
        }
        let mut uncovered = (0..n)
            .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
            .filter(|&(x, y)| cov[x * n + y] == 0)
            .count() as i64;
        let mut temp = 1.0f64;
        let mut step = 0u64;
        while uncovered > 0 && step < budget.moves {
            step += 1;
            let c = rng.gen_range(1..r);
            let x = rng.gen_range(0..n);
            let y = rng.gen_range(0..n);
            let (gx, gy) = (grp[c][x], grp[c][y]);
            if gx == gy {
                continue;
            }
            if step.is_multiple_of(10_000) {
                temp = (temp * 0.995).max(0.05);
            }
            let mut delta = 0i64;
            for z in 0..n {
                if z == x || z == y {
                    continue;
                }
                let (lose, gain) = if grp[c][z] == gx {
                    (x, y)
                } else if grp[c][z] == gy {
                    (y, x)
                } else {
                    continue;
                };
                if cov[lose * n + z] == 1 {
                    delta += 1;
                }
                if cov[gain * n + z] == 0 {
                    delta -= 1;
                }
            }
            if delta > 0 && rng.gen::<f64>() >= (-(delta as f64) / temp).exp() {
                continue;
            }
            for z in 0..n {
                if z == x || z == y {
                    continue;
                }
                let (lose, gain) = if grp[c][z] == gx {
                    (x, y)
                } else if grp[c][z] == gy {
                    (y, x)
                } else {
                    continue;
                };
                cov[lose * n + z] -= 1;
                cov[z * n + lose] -= 1;
                cov[gain * n + z] += 1;
                cov[z * n + gain] += 1;
            }
            grp[c][x] = gy;
            grp[c][y] = gx;
            uncovered += delta;
        }
        if uncovered == 0 {
            return from_groups(q, k, &grp);
        }
    }
    Err(Error::BudgetExhausted {
        what: format!("resolvable ({},{k},2) covering with {r} classes", q * k),
        budget: budget.nodes + budget.moves * budget.attempts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorizations() {
        for (n, classes) in [(2, 1), (4, 3), (6, 5), (10, 9)] {
            let f = one_factorization(n).unwrap();
            assert_eq!(f.p(), classes);
            assert_eq!(f.q() as u32, n / 2);
            let d = f.flatten().unwrap();
            assert_eq!(d.distinct_len() as u32, n * (n - 1) / 2);
            assert_eq!(d.len(), d.distinct_len() as u64);
        }
        assert!(one_factorization(5).is_err());
    }

    #[test]
    fn affine_planes() {
        for q in 2..=4 {
            let a = affine_plane(q).unwrap();
            assert_eq!(a.p() as u32, q + 1);
            assert_eq!(a.q() as u32, q);
        }
        let a = affine_93().unwrap();
        assert_eq!(a.flatten().unwrap().len(), 12);
    }

    #[test]
    fn known_small_cases() {
        assert_eq!(resolvable_pair_covering(3, 3).unwrap().p(), 4);
        assert_eq!(resolvable_pair_covering(2, 3).unwrap().p(), 4);
        assert_eq!(resolvable_pair_covering(3, 2).unwrap().p(), 5);
        assert_eq!(resolvable_pair_covering(1, 5).unwrap().p(), 1);
        assert!(resolvable_pair_covering(5, 2).is_err());
    }

    #[test]
    fn backtracking_respects_budget() {
        assert!(backtrack(4, 3, 7, 1000).is_none());
        assert!(backtrack(2, 3, 4, 1_000_000).is_some());
    }
}
