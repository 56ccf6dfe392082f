//! Lexicographic enumeration of `m`-subsets.

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays exact because acc holds C(n, i).
        acc = match acc.checked_mul((n - i) as u128) {
            Some(x) => x / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// The `rank`-th `m`-combination of `0..n` in lexicographic order.
pub fn unrank(n: usize, m: usize, mut rank: u128) -> Vec<usize> {
    let mut out = Vec::with_capacity(m);
    let mut x = 0;
    for i in 0..m {
        loop {
            let rest = binomial((n - x - 1) as u64, (m - i - 1) as u64);
            if rank < rest {
                break;
            }
            rank -= rest;
            x += 1;
        }
        out.push(x);
        x += 1;
    }
    out
}

/// Advances `idx` to the next `m`-combination of `0..n`. Returns the leftmost position that
/// changed, or `None` after the last combination.
#[inline]
pub fn advance(idx: &mut [usize], n: usize) -> Option<usize> {
    let m = idx.len();
    let mut i = m;
    while i > 0 {
        i -= 1;
        if idx[i] < n - m + i {
            idx[i] += 1;
            for j in i + 1..m {
                idx[j] = idx[j - 1] + 1;
            }
            return Some(i);
        }
    }
    None
}

/// Iterator over all `m`-combinations of `0..n` as index vectors, in lexicographic order.
pub struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, m: usize) -> Self {
        Combinations {
            n,
            idx: (0..m).collect(),
            done: m > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        if advance(&mut self.idx, self.n).is_none() {
            self.done = true;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(8, 5), 56);
        assert_eq!(binomial(18, 6), 18_564);
        assert_eq!(binomial(24, 6), 134_596);
        assert_eq!(binomial(48, 4), 194_580);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(0, 0), 1);
    }

    #[test]
    fn enumeration_matches_unrank() {
        let all: Vec<Vec<usize>> = Combinations::new(7, 3).collect();
        assert_eq!(all.len(), 35);
        for (r, c) in all.iter().enumerate() {
            assert_eq!(&unrank(7, 3, r as u128), c);
        }
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn degenerate_sizes() {
        assert_eq!(Combinations::new(4, 0).count(), 1);
        assert_eq!(Combinations::new(2, 3).count(), 0);
        assert_eq!(Combinations::new(3, 3).count(), 1);
    }
}
