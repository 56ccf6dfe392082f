//! Designs, cover specifications, partitions and the set algebra shared by every construction.

use std::collections::BTreeMap;
use std::fmt;

use crate::block::{Block, MAX_POINTS};
use crate::error::{invalid, Error, Result};

/// A point count plus a multiset of `k`-subsets of `{0, .., v - 1}`.
///
/// Blocks are kept in canonical order (ascending lexicographic, one entry per distinct block
/// with its multiplicity), so two designs with the same multiset compare and serialize equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Design {
    v: u32,
    k: u32,
    blocks: Vec<(Block, u32)>,
}

impl Design {
    /// Builds a canonical design, validating size and range of every block. Empty block
    /// lists are allowed here; [`make_design`] rejects them.
    pub fn new<I>(v: u32, k: u32, blocks: I) -> Result<Self>
    where
        I: IntoIterator<Item = Block>,
    {
        check_capacity(v)?;
        if k > v {
            return Err(invalid(format!("block size {k} exceeds v = {v}")));
        }
        let range = Block::range(v);
        let mut counts: BTreeMap<Block, u32> = BTreeMap::new();
        for b in blocks {
            if !b.is_subset(range) {
                let point = b.difference(range).points().next().unwrap_or(v);
                return Err(Error::PointOutOfRange { point, v });
            }
            if b.len() != k {
                return Err(Error::WrongBlockSize {
                    expected: k,
                    found: b.len(),
                });
            }
            *counts.entry(b).or_insert(0) += 1;
        }
        Ok(Design {
            v,
            k,
            blocks: counts.into_iter().collect(),
        })
    }

    /// Builds a design from `(block, multiplicity)` pairs.
    pub fn with_multiplicities<I>(v: u32, k: u32, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Block, u32)>,
    {
        let mut expanded = Vec::new();
        for (b, mult) in entries {
            if mult == 0 {
                return Err(invalid("multiplicity must be at least 1"));
            }
            expanded.extend(std::iter::repeat_n(b, mult as usize));
        }
        Design::new(v, k, expanded)
    }

    pub fn v(&self) -> u32 {
        self.v
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Distinct blocks with their multiplicities, in canonical order.
    pub fn entries(&self) -> &[(Block, u32)] {
        &self.blocks
    }

    pub fn distinct_len(&self) -> usize {
        self.blocks.len()
    }

    /// Number of blocks counted with multiplicity.
    pub fn len(&self) -> u64 {
        self.blocks.iter().map(|&(_, m)| m as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// All blocks, repeated by multiplicity, in canonical order.
    pub fn blocks(&self) -> Vec<Block> {
        self.blocks
            .iter()
            .flat_map(|&(b, m)| std::iter::repeat_n(b, m as usize))
            .collect()
    }

    pub fn multiplicity(&self, block: Block) -> u32 {
        self.blocks
            .binary_search_by(|(b, _)| b.cmp(&block))
            .map(|i| self.blocks[i].1)
            .unwrap_or(0)
    }

    /// Number of blocks (with multiplicity) containing `point`.
    pub fn degree(&self, point: u32) -> u64 {
        self.blocks
            .iter()
            .filter(|(b, _)| b.contains(point))
            .map(|&(_, m)| m as u64)
            .sum()
    }

    /// Same blocks with one copy of `block` removed, if present.
    pub fn without_one(&self, block: Block) -> Design {
        let mut blocks = self.blocks.clone();
        if let Ok(i) = blocks.binary_search_by(|(b, _)| b.cmp(&block)) {
            if blocks[i].1 > 1 {
                blocks[i].1 -= 1;
            } else {
                blocks.remove(i);
            }
        }
        Design {
            v: self.v,
            k: self.k,
            blocks,
        }
    }

    /// Maps local points `0..v` into a larger point set through `map`.
    pub fn relabel(&self, new_v: u32, map: &[u32]) -> Result<Design> {
        if map.len() != self.v as usize {
            return Err(invalid(format!(
                "relabel map has {} entries for {} points",
                map.len(),
                self.v
            )));
        }
        Design::with_multiplicities(
            new_v,
            self.k,
            self.blocks.iter().map(|&(b, m)| (b.relabel(map), m)),
        )
    }
}

impl fmt::Debug for Design {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Design(v={}, k={}, [", self.v, self.k)?;
        for (i, (b, m)) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{b:?}")?;
            if *m > 1 {
                write!(f, "x{m}")?;
            }
        }
        f.write_str("])")
    }
}

pub(crate) fn check_capacity(v: u32) -> Result<()> {
    if v > MAX_POINTS {
        Err(Error::Capacity(v))
    } else {
        Ok(())
    }
}

/// The parameters `(v, k, t, m, lambda)` of a general cover: every `m`-subset of the `v`
/// points meets at least `lambda` blocks of size `k` in at least `t` points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoverSpec {
    pub v: u32,
    pub k: u32,
    pub t: u32,
    pub m: u32,
    pub lambda: u32,
}

impl CoverSpec {
    pub fn new(v: u32, k: u32, t: u32, m: u32, lambda: u32) -> Result<Self> {
        let s = CoverSpec { v, k, t, m, lambda };
        s.validate()?;
        Ok(s)
    }

    /// Shorthand for `lambda = 1`.
    pub fn lotto(v: u32, k: u32, t: u32, m: u32) -> Result<Self> {
        Self::new(v, k, t, m, 1)
    }

    /// A `(v, k, t)` covering design: every `t`-subset inside a block.
    pub fn covering(v: u32, k: u32, t: u32) -> Result<Self> {
        Self::new(v, k, t, t, 1)
    }

    pub fn validate(&self) -> Result<()> {
        let CoverSpec { v, k, t, m, lambda } = *self;
        if v == 0 || k == 0 || t == 0 || m == 0 || lambda == 0 {
            return Err(invalid(format!("{self}: parameters must be positive")));
        }
        if !(v >= k && k >= t && v >= m && m >= t) {
            return Err(invalid(format!(
                "{self}: need v >= k >= t and v >= m >= t"
            )));
        }
        check_capacity(v)
    }
}

impl fmt::Display for CoverSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{},{})",
            self.v, self.k, self.t, self.m, self.lambda
        )
    }
}

impl std::str::FromStr for CoverSpec {
    type Err = Error;

    /// Parses `v,k,t,m[,lambda]`, with optional surrounding parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let nums: Vec<u32> = inner
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<u32>()
                    .map_err(|_| invalid(format!("bad cover spec `{s}`")))
            })
            .collect::<Result<_>>()?;
        match nums[..] {
            [v, k, t, m] => CoverSpec::new(v, k, t, m, 1),
            [v, k, t, m, l] => CoverSpec::new(v, k, t, m, l),
            _ => Err(invalid(format!(
                "cover spec `{s}` needs 4 or 5 comma-separated integers"
            ))),
        }
    }
}

/// Ordered partition of `{0, .., v - 1}`. Part order matters: constructions index parts
/// cyclically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionSpec {
    v: u32,
    parts: Vec<Vec<u32>>,
}

impl PartitionSpec {
    /// Checks that the parts are disjoint and cover `0..v`. Parts may be empty.
    pub fn new(v: u32, parts: Vec<Vec<u32>>) -> Result<Self> {
        Self::over(Block::range(v), v, parts)
    }

    /// A partition of an arbitrary ground set inside `0..v` (e.g. `X \ {a}`).
    pub fn over(ground: Block, v: u32, mut parts: Vec<Vec<u32>>) -> Result<Self> {
        check_capacity(v)?;
        let mut seen = Block::EMPTY;
        for part in parts.iter_mut() {
            part.sort_unstable();
            for &p in part.iter() {
                if !ground.contains(p) {
                    return Err(Error::PointOutOfRange { point: p, v });
                }
                if seen.contains(p) {
                    return Err(invalid(format!("point {p} lies in two parts")));
                }
                seen = seen.with(p);
            }
        }
        if seen != ground {
            let missing = ground.difference(seen).to_vec();
            return Err(invalid(format!("parts miss points {missing:?}")));
        }
        Ok(PartitionSpec { v, parts })
    }

    pub fn v(&self) -> u32 {
        self.v
    }

    pub fn parts(&self) -> &[Vec<u32>] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn sizes(&self) -> Vec<u32> {
        self.parts.iter().map(|p| p.len() as u32).collect()
    }

    pub fn part_block(&self, i: usize) -> Block {
        Block::from_points(self.parts[i].iter().copied()).expect("validated part")
    }

    pub fn is_quasi_equal(&self) -> bool {
        let sizes = self.sizes();
        match (sizes.iter().min(), sizes.iter().max()) {
            (Some(lo), Some(hi)) => hi - lo <= 1,
            _ => true,
        }
    }
}

/// Blocks partitioned into parallel classes, each class partitioning `0..v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolvedClasses {
    v: u32,
    classes: Vec<Vec<Block>>,
}

impl ResolvedClasses {
    /// Validates that every class partitions the point set and all blocks share one size.
    pub fn new(v: u32, classes: Vec<Vec<Block>>) -> Result<Self> {
        check_capacity(v)?;
        let range = Block::range(v);
        let size = classes.first().and_then(|c| c.first()).map(|b| b.len());
        for (i, class) in classes.iter().enumerate() {
            let mut seen = Block::EMPTY;
            for &b in class {
                if Some(b.len()) != size {
                    return Err(invalid(format!("class {i} mixes block sizes")));
                }
                if !seen.is_disjoint(b) {
                    return Err(invalid(format!("class {i} has overlapping blocks")));
                }
                seen = seen.union(b);
            }
            if seen != range {
                return Err(invalid(format!(
                    "class {i} does not partition the {v} points"
                )));
            }
        }
        Ok(ResolvedClasses { v, classes })
    }

    /// Skips validation; the verifier is expected to judge the result.
    pub fn new_unchecked(v: u32, classes: Vec<Vec<Block>>) -> Self {
        ResolvedClasses { v, classes }
    }

    pub fn v(&self) -> u32 {
        self.v
    }

    pub fn classes(&self) -> &[Vec<Block>] {
        &self.classes
    }

    /// Number of classes.
    pub fn p(&self) -> usize {
        self.classes.len()
    }

    /// Blocks per class.
    pub fn q(&self) -> usize {
        self.classes.first().map_or(0, Vec::len)
    }

    pub fn block_size(&self) -> u32 {
        self.classes
            .first()
            .and_then(|c| c.first())
            .map_or(0, |b| b.len())
    }

    pub fn flatten(&self) -> Result<Design> {
        Design::new(
            self.v,
            self.block_size(),
            self.classes.iter().flatten().copied(),
        )
    }

    pub fn relabel(&self, new_v: u32, map: &[u32]) -> ResolvedClasses {
        ResolvedClasses {
            v: new_v,
            classes: self
                .classes
                .iter()
                .map(|c| c.iter().map(|b| b.relabel(map)).collect())
                .collect(),
        }
    }
}

/// An indexed family of block collections over one point set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockFamily {
    v: u32,
    members: Vec<Vec<Block>>,
}

impl BlockFamily {
    pub fn new(v: u32, members: Vec<Vec<Block>>) -> Result<Self> {
        check_capacity(v)?;
        let range = Block::range(v);
        let size = members.iter().flatten().next().map(|b| b.len());
        for b in members.iter().flatten() {
            if !b.is_subset(range) {
                return Err(invalid(format!("family block {b:?} leaves 0..{v}")));
            }
            if Some(b.len()) != size {
                return Err(invalid("family members mix block sizes"));
            }
        }
        Ok(BlockFamily { v, members })
    }

    pub fn v(&self) -> u32 {
        self.v
    }

    pub fn members(&self) -> &[Vec<Block>] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn block_size(&self) -> u32 {
        self.members.iter().flatten().next().map_or(0, |b| b.len())
    }

    /// Max-multiplicity union of all members.
    pub fn union(&self) -> Vec<Block> {
        multiset_union(&self.members)
    }

    /// Repeats the last member until the family has `len` members.
    pub fn padded(&self, len: usize) -> BlockFamily {
        let mut members = self.members.clone();
        if let Some(last) = members.last().cloned() {
            while members.len() < len {
                members.push(last.clone());
            }
        }
        BlockFamily { v: self.v, members }
    }
}

/// Per-part intersection sizes `[a_1, .., a_n]` of a subset against a partition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubsetProfile(pub Vec<u32>);

impl SubsetProfile {
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }
}

/// Canonical design from raw point lists.
pub fn make_design(v: u32, k: u32, raw_blocks: &[Vec<u32>]) -> Result<Design> {
    if raw_blocks.is_empty() {
        return Err(Error::EmptyDesign);
    }
    check_capacity(v)?;
    let mut blocks = Vec::with_capacity(raw_blocks.len());
    for raw in raw_blocks {
        if let Some(&p) = raw.iter().find(|&&p| p >= v) {
            return Err(Error::PointOutOfRange { point: p, v });
        }
        let b = Block::from_points(raw.iter().copied())?;
        if b.len() != k {
            return Err(Error::WrongBlockSize {
                expected: k,
                found: raw.len() as u32,
            });
        }
        blocks.push(b);
    }
    Design::new(v, k, blocks)
}

/// The design of coblocks `X \ B`, multiplicities preserved.
pub fn complement_design(d: &Design) -> Result<Design> {
    if d.k() >= d.v() {
        return Err(invalid("complement of full-size blocks would be empty"));
    }
    let range = Block::range(d.v());
    Design::with_multiplicities(
        d.v(),
        d.v() - d.k(),
        d.entries().iter().map(|&(b, m)| (range.difference(b), m)),
    )
}

/// Union of the points used by a collection.
pub fn support(blocks: &[Block]) -> Block {
    blocks.iter().fold(Block::EMPTY, |acc, &b| acc.union(b))
}

/// All unions `A ∪ B` for `A` in `a`, `B` in `b`, as a multiset.
pub fn product_blocks(a: &[Block], b: &[Block]) -> Result<Vec<Block>> {
    let (sa, sb) = (support(a), support(b));
    if !sa.is_disjoint(sb) {
        return Err(Error::GroundSetOverlap(format!(
            "points {:?} appear on both sides",
            sa.intersection(sb).to_vec()
        )));
    }
    Ok(a.iter()
        .flat_map(|&x| b.iter().map(move |&y| x.union(y)))
        .collect())
}

/// Multiset union where each block keeps its largest multiplicity across inputs.
pub fn multiset_union<C: AsRef<[Block]>>(collections: &[C]) -> Vec<Block> {
    let mut best: BTreeMap<Block, u32> = BTreeMap::new();
    for c in collections {
        let mut local: BTreeMap<Block, u32> = BTreeMap::new();
        for &b in c.as_ref() {
            *local.entry(b).or_insert(0) += 1;
        }
        for (b, m) in local {
            let e = best.entry(b).or_insert(0);
            *e = (*e).max(m);
        }
    }
    best.into_iter()
        .flat_map(|(b, m)| std::iter::repeat_n(b, m as usize))
        .collect()
}

/// [`multiset_union`] with a block-size check, as required when collections come from
/// different sources.
pub fn checked_multiset_union<C: AsRef<[Block]>>(collections: &[C]) -> Result<Vec<Block>> {
    let mut size = None;
    for b in collections.iter().flat_map(|c| c.as_ref().iter()) {
        match size {
            None => size = Some(b.len()),
            Some(s) if s != b.len() => {
                return Err(Error::WrongBlockSize {
                    expected: s,
                    found: b.len(),
                })
            }
            _ => {}
        }
    }
    Ok(multiset_union(collections))
}

/// Contiguous parts with sizes differing by at most one, larger parts first.
pub fn quasi_equal_partition(v: u32, n_parts: u32) -> Result<PartitionSpec> {
    if n_parts == 0 || n_parts > v {
        return Err(invalid(format!(
            "cannot split {v} points into {n_parts} nonempty parts"
        )));
    }
    let (base, extra) = (v / n_parts, v % n_parts);
    let mut next = 0;
    let parts = (0..n_parts)
        .map(|i| {
            let size = base + u32::from(i < extra);
            let part: Vec<u32> = (next..next + size).collect();
            next += size;
            part
        })
        .collect();
    PartitionSpec::new(v, parts)
}

/// `counts[i] = |M ∩ part_i|`.
pub fn profile_of(subset: Block, partition: &PartitionSpec) -> SubsetProfile {
    SubsetProfile(
        (0..partition.len())
            .map(|i| subset.meet(partition.part_block(i)))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn blk(p: &[u32]) -> Block {
        Block::from_points(p.iter().copied()).unwrap()
    }

    #[test]
    fn make_design_examples() {
        let d = make_design(4, 4, &[vec![0, 1, 2, 3]]).unwrap();
        assert_eq!((d.distinct_len(), d.len()), (1, 1));

        let d = make_design(4, 2, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(d.entries(), &[(blk(&[0, 1]), 2)]);
    }

    #[test]
    fn make_design_errors() {
        assert!(matches!(
            make_design(4, 2, &[vec![0, 1, 2]]),
            Err(Error::WrongBlockSize { .. })
        ));
        assert!(matches!(
            make_design(4, 2, &[vec![0, 4]]),
            Err(Error::PointOutOfRange { point: 4, v: 4 })
        ));
        assert!(matches!(
            make_design(4, 2, &[vec![1, 1]]),
            Err(Error::DuplicatePoint { point: 1 })
        ));
        assert_eq!(make_design(4, 2, &[]), Err(Error::EmptyDesign));
    }

    #[test]
    fn complement_examples() {
        let d = make_design(6, 4, &[vec![0, 1, 2, 3]]).unwrap();
        let c = complement_design(&d).unwrap();
        assert_eq!(c.k(), 2);
        assert_eq!(c.entries(), &[(blk(&[4, 5]), 1)]);
        assert_eq!(complement_design(&c).unwrap(), d);

        let full = make_design(4, 4, &[vec![0, 1, 2, 3]]).unwrap();
        assert!(complement_design(&full).is_err());
    }

    #[test]
    fn product_examples() {
        assert_eq!(
            product_blocks(&[blk(&[0, 1])], &[blk(&[2, 3])]).unwrap(),
            vec![blk(&[0, 1, 2, 3])]
        );
        assert_eq!(
            product_blocks(&[blk(&[0, 1]), blk(&[0, 2])], &[blk(&[3, 4])]).unwrap(),
            vec![blk(&[0, 1, 3, 4]), blk(&[0, 2, 3, 4])]
        );
        let a = [blk(&[0]), blk(&[1]), blk(&[2])];
        let b = [blk(&[3]), blk(&[4]), blk(&[5])];
        assert_eq!(product_blocks(&a, &b).unwrap().len(), 9);
        assert!(matches!(
            product_blocks(&[blk(&[0, 1])], &[blk(&[1, 2])]),
            Err(Error::GroundSetOverlap(_))
        ));
    }

    #[test]
    fn multiset_union_examples() {
        let b = blk(&[0, 1]);
        let u = multiset_union(&[vec![b, b], vec![b, b, b]]);
        assert_eq!(u, vec![b, b, b]);

        let left: Vec<Block> = (0..5).map(|i| blk(&[i, 20])).collect();
        let right: Vec<Block> = (0..7).map(|i| blk(&[i, 30])).collect();
        assert_eq!(multiset_union(&[left.clone(), right]).len(), 12);
        assert_eq!(multiset_union(&[left.clone(), left.clone()]), left);
        assert!(checked_multiset_union(&[vec![blk(&[0])], vec![blk(&[0, 1])]]).is_err());
    }

    #[test]
    fn quasi_equal_examples() {
        assert_eq!(quasi_equal_partition(12, 3).unwrap().sizes(), vec![4, 4, 4]);
        assert_eq!(quasi_equal_partition(13, 3).unwrap().sizes(), vec![5, 4, 4]);
        assert_eq!(
            quasi_equal_partition(9, 4).unwrap().sizes(),
            vec![3, 2, 2, 2]
        );
        assert!(quasi_equal_partition(3, 4).is_err());
        assert!(quasi_equal_partition(3, 0).is_err());
    }

    #[test]
    fn profile_examples() {
        let p = PartitionSpec::new(8, vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7]]).unwrap();
        assert_eq!(profile_of(blk(&[0, 1, 6]), &p), SubsetProfile(vec![2, 1]));
        assert_eq!(profile_of(blk(&[1, 2]), &p), SubsetProfile(vec![2, 0]));
    }

    #[test]
    fn partition_rejects_overlap_and_gaps() {
        assert!(PartitionSpec::new(4, vec![vec![0, 1], vec![1, 2, 3]]).is_err());
        assert!(PartitionSpec::new(4, vec![vec![0, 1], vec![2]]).is_err());
    }

    fn arb_design() -> impl Strategy<Value = Design> {
        (3u32..10).prop_flat_map(|v| {
            (1..v).prop_flat_map(move |k| {
                proptest::collection::vec(
                    proptest::sample::subsequence((0..v).collect::<Vec<_>>(), k as usize),
                    1..12,
                )
                .prop_map(move |raw| make_design(v, k, &raw).unwrap())
            })
        })
    }

    proptest! {
        #[test]
        fn complement_is_involution(d in arb_design()) {
            let c = complement_design(&d).unwrap();
            prop_assert_eq!(c.len(), d.len());
            prop_assert_eq!(complement_design(&c).unwrap(), d);
        }

        #[test]
        fn product_size_multiplies(a in proptest::collection::vec(0u32..6, 1..6),
                                   b in proptest::collection::vec(6u32..12, 1..6)) {
            let a: Vec<Block> = a.iter().map(|&p| Block::singleton(p)).collect();
            let b: Vec<Block> = b.iter().map(|&p| Block::singleton(p)).collect();
            prop_assert_eq!(product_blocks(&a, &b).unwrap().len(), a.len() * b.len());
        }

        #[test]
        fn union_laws(x in proptest::collection::vec(0u32..5, 0..8),
                      y in proptest::collection::vec(0u32..5, 0..8),
                      z in proptest::collection::vec(0u32..5, 0..8)) {
            let to = |v: &Vec<u32>| v.iter().map(|&p| Block::singleton(p)).collect::<Vec<_>>();
            let (x, y, z) = (to(&x), to(&y), to(&z));
            let xy = multiset_union(&[x.clone(), y.clone()]);
            prop_assert_eq!(&xy, &multiset_union(&[y.clone(), x.clone()]));
            prop_assert_eq!(
                multiset_union(&[xy, z.clone()]),
                multiset_union(&[x.clone(), multiset_union(&[y, z])])
            );
            prop_assert_eq!(multiset_union(&[x.clone(), x.clone()]), multiset_union(&[x]));
        }

        #[test]
        fn profile_conserves_size(v in 2u32..20, n in 1u32..6, bits in any::<u32>()) {
            prop_assume!(n <= v);
            let p = quasi_equal_partition(v, n).unwrap();
            let m = Block::from_mask(bits as u128 & ((1u128 << v) - 1));
            let prof = profile_of(m, &p);
            prop_assert_eq!(prof.total(), m.len());
            for (a, size) in prof.0.iter().zip(p.sizes()) {
                prop_assert!(*a <= size);
            }
            let sizes = p.sizes();
            prop_assert!(sizes.windows(2).all(|w| w[0] >= w[1]));
            prop_assert!(p.is_quasi_equal());
        }
    }
}
