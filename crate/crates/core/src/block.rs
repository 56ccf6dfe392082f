//! Fixed-capacity point sets.
//!
//! A [`Block`] is a subset of `{0, .., MAX_POINTS - 1}` stored as a 128-bit mask, so the
//! intersection size of two blocks is a single AND plus popcount. Blocks order
//! lexicographically by their ascending point lists, which is the canonical order used
//! everywhere in the crate (design files, counterexamples, tie-breaks).

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported point count.
pub const MAX_POINTS: u32 = 128;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Block(u128);

impl Block {
    pub const EMPTY: Block = Block(0);

    #[inline]
    pub const fn from_mask(mask: u128) -> Self {
        Block(mask)
    }

    #[inline]
    pub const fn mask(self) -> u128 {
        self.0
    }

    /// Builds a block from points, rejecting repeats and points outside `0..MAX_POINTS`.
    pub fn from_points<I>(points: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: Into<u32>,
    {
        let mut mask = 0u128;
        for p in points {
            let p: u32 = p.into();
            if p >= MAX_POINTS {
                return Err(Error::PointOutOfRange {
                    point: p,
                    v: MAX_POINTS,
                });
            }
            let bit = 1u128 << p;
            if mask & bit != 0 {
                return Err(Error::DuplicatePoint { point: p });
            }
            mask |= bit;
        }
        Ok(Block(mask))
    }

    /// The block `{0, .., n - 1}`.
    pub fn range(n: u32) -> Self {
        debug_assert!(n <= MAX_POINTS);
        if n == MAX_POINTS {
            Block(u128::MAX)
        } else {
            Block((1u128 << n) - 1)
        }
    }

    pub fn singleton(p: u32) -> Self {
        debug_assert!(p < MAX_POINTS);
        Block(1u128 << p)
    }

    #[inline]
    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, p: u32) -> bool {
        p < MAX_POINTS && self.0 >> p & 1 == 1
    }

    #[inline]
    pub fn meet(self, other: Block) -> u32 {
        (self.0 & other.0).count_ones()
    }

    #[inline]
    pub fn union(self, other: Block) -> Block {
        Block(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Block) -> Block {
        Block(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Block) -> Block {
        Block(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: Block) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Block) -> bool {
        self.0 & other.0 == 0
    }

    pub fn with(self, p: u32) -> Block {
        Block(self.0 | 1u128 << p)
    }

    pub fn without(self, p: u32) -> Block {
        Block(self.0 & !(1u128 << p))
    }

    /// Largest point, if any.
    pub fn max_point(self) -> Option<u32> {
        (self.0 != 0).then(|| 127 - self.0.leading_zeros())
    }

    pub fn points(self) -> Points {
        Points(self.0)
    }

    pub fn to_vec(self) -> Vec<u32> {
        self.points().collect()
    }

    /// Maps every point through `map` (point `i` goes to `map[i]`).
    pub fn relabel(self, map: &[u32]) -> Block {
        let mut out = 0u128;
        for p in self.points() {
            out |= 1u128 << map[p as usize];
        }
        Block(out)
    }
}

impl Ord for Block {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.0 == other.0 {
            return Ordering::Equal;
        }
        // Points below the lowest differing bit are shared; the set owning that bit has it
        // as its next element, the other set continues with something larger or ends.
        let low = (self.0 ^ other.0).trailing_zeros();
        let below = (1u128 << low) - 1;
        let self_owns = self.0 >> low & 1 == 1;
        let rest = if self_owns { other.0 } else { self.0 };
        let owner_smaller = rest & !below != 0;
        if owner_smaller == self_owns {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for Block {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.points()).finish()
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in self.points() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Ascending iterator over the points of a block.
#[derive(Clone)]
pub struct Points(u128);

impl Iterator for Points {
    type Item = u32;

    #[inline]
    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let p = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(p)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Points {}
