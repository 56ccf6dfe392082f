//! Runs the constructions with ingredients resolved automatically: explicit factories
//! first, then a [`DesignSource`] such as the catalog, then the greedy generator.

use super::{construct_546, lift, trapping_quads_45, trapping_quads_46, trapping_triples, Construction};
use crate::block::Block;
use crate::error::{invalid, Result};
use crate::ingredients::{
    greedy_cover, matching_family, part_complement_cover, quad_family, resolvable_pair_covering,
    steiner_triple_system, triple_family,
};
use crate::model::{quasi_equal_partition, CoverSpec, Design, PartitionSpec};
use crate::subsets::Combinations;
use crate::verify::{SpliceVariant, VerifyOptions};

use super::min_degree_point;

/// Stored designs keyed by spec.
pub trait DesignSource {
    fn best_design(&self, spec: &CoverSpec) -> Option<Design>;
}

pub struct NoDesigns;

impl DesignSource for NoDesigns {
    fn best_design(&self, _: &CoverSpec) -> Option<Design> {
        None
    }
}

/// A resolved value with a one-line note on where it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolved<T> {
    pub value: T,
    pub path: String,
}

/// A design for `spec` from the first source that has one.
pub fn resolve_cover(spec: &CoverSpec, source: &dyn DesignSource, seed: u64) -> Result<Resolved<Design>> {
    spec.validate()?;
    let CoverSpec { v, k, t, m, lambda } = *spec;
    let found = |value: Design, how: &str| Resolved {
        path: format!("{spec}: {how} ({} blocks)", value.len()),
        value,
    };
    if k + m >= v + t {
        let d = Design::with_multiplicities(v, k, [(Block::range(k), lambda)])?;
        return Ok(found(d, "factory single block"));
    }
    if lambda == 1 && t == 2 && m == 2 {
        if k == 2 {
            let d = Design::new(v, 2, Combinations::new(v as usize, 2).map(|c| Block::from_points(c.into_iter().map(|p| p as u32)).expect("pair")))?;
            return Ok(found(d, "factory all pairs"));
        }
        if k == 3 && v >= 7 && matches!(v % 6, 1 | 3) {
            return Ok(found(steiner_triple_system(v)?, "factory Steiner triple system"));
        }
    }
    if lambda == 1 && t == 4 && m == 5 && v % 3 == 0 && k == 2 * v / 3 && v >= 6 {
        return Ok(found(part_complement_cover(v / 3)?, "factory part complements"));
    }
    if let Some(d) = source.best_design(spec) {
        if d.v() == v && d.k() == k {
            return Ok(found(d, "catalog"));
        }
    }
    Ok(found(greedy_cover(spec, seed, 8)?, &format!("greedy seed {seed}")))
}

fn halves(n: u32) -> Result<PartitionSpec> {
    PartitionSpec::new(2 * n, vec![(0..n).collect(), (n..2 * n).collect()])
}

/// The `(2k,k,4,5)` trapping-quadruple cover for even block size `k`.
pub fn auto_trap_quads_45(
    k: u32,
    source: &dyn DesignSource,
    seed: u64,
    opts: &VerifyOptions,
) -> Result<(Construction, Vec<String>)> {
    if k < 4 || k % 2 == 1 {
        return Err(invalid(format!("block size must be even and at least 4, got {k}")));
    }
    let h = k / 2;
    let classes = resolvable_pair_covering(2, h)?;
    let n = 2 * h;
    let cover = resolve_cover(&CoverSpec::covering(n, k, 4)?, source, seed)?;
    let mut report = vec![format!(
        "classes: resolvable ({n},{h},2) covering, {} classes of 2",
        classes.p()
    )];
    report.push(cover.path.clone());
    let c = trapping_quads_45(&halves(n)?, &classes, &classes, [&cover.value, &cover.value], opts)?;
    Ok((c, report))
}

/// The `(2qh, 2h, 4, 6)` trapping-quadruple cover for block size `k = 2h` and class size `q`.
pub fn auto_trap_quads_46(
    k: u32,
    q: u32,
    force_unimproved: bool,
    source: &dyn DesignSource,
    seed: u64,
    opts: &VerifyOptions,
) -> Result<(Construction, Vec<String>)> {
    if k < 4 || k % 2 == 1 {
        return Err(invalid(format!("block size must be even and at least 4, got {k}")));
    }
    let h = k / 2;
    let classes = resolvable_pair_covering(q, h)?;
    let n = q * h;
    let spec = if q < 4 && !force_unimproved {
        CoverSpec::lotto(n, k, 4, 5)?
    } else {
        CoverSpec::covering(n, k, 4)?
    };
    let cover = resolve_cover(&spec, source, seed)?;
    let report = vec![
        format!("classes: resolvable ({n},{h},2) covering, {} classes of {q}", classes.p()),
        cover.path.clone(),
    ];
    let c = trapping_quads_46(
        &halves(n)?,
        &classes,
        &classes,
        [&cover.value, &cover.value],
        force_unimproved,
        opts,
    )?;
    Ok((c, report))
}

/// The `(v,6,3,m)` trapping-triple cover over `m - 1` quasi-equal parts, with greedy quad
/// families and near-perfect matchings.
pub fn auto_trap_triples(v: u32, m: u32, seed: u64, opts: &VerifyOptions) -> Result<(Construction, Vec<String>)> {
    if m < 3 {
        return Err(invalid(format!("m must be at least 3, got {m}")));
    }
    if v < 4 * (m - 1) {
        return Err(invalid(format!("need v >= 4(m - 1) = {} so every part holds 4 points, got {v}", 4 * (m - 1))));
    }
    let parts = quasi_equal_partition(v, m - 1)?;
    let sizes = parts.sizes();
    let np = sizes.len();
    let mut pair_covers = Vec::new();
    let mut families = Vec::new();
    let mut report = Vec::new();
    for (i, &vi) in sizes.iter().enumerate() {
        let pairs = (0..vi.div_ceil(2)).map(|j| {
            let (x, y) = (2 * j, (2 * j + 1) % vi);
            Block::from_points([x, if y == x { 0 } else { y }]).expect("pair")
        });
        pair_covers.push(Design::new(vi, 2, pairs)?);
        let h = sizes[(i + 1) % np].div_ceil(2);
        let f = quad_family(vi, h, seed)?;
        report.push(format!("part {i}: quad family of {h} greedy (v,4,2) coverings on {vi} points"));
        families.push(f);
    }
    let c = trapping_triples(m, &parts, &pair_covers, &families, opts)?;
    Ok((c, report))
}

/// The four-part `(v,5,4,6)` cover over quasi-equal parts of `v` points.
pub fn auto_construct_546(
    v: u32,
    source: &dyn DesignSource,
    seed: u64,
    opts: &VerifyOptions,
) -> Result<(Construction, Vec<String>)> {
    if v < 20 {
        return Err(invalid(format!("construct-546 needs v >= 20 so each part holds 5 points, got {v}")));
    }
    let parts = quasi_equal_partition(v, 4)?;
    let sizes = parts.sizes();
    let mut report = Vec::new();
    let mut triples = Vec::new();
    let mut pairs = Vec::new();
    for &s in &sizes {
        let t = triple_family(s)?;
        let p = matching_family(s)?;
        report.push(format!(
            "part of {s}: triple family of {} members, pair family of {} members",
            t.len(),
            p.len()
        ));
        triples.push(t);
        pairs.push(p);
    }
    let mut d = Vec::new();
    for &s in &sizes[..2] {
        let r = resolve_cover(&CoverSpec::lotto(s, 5, 4, 5)?, source, seed)?;
        report.push(r.path);
        d.push(r.value);
    }
    let mut e = Vec::new();
    for &s in &sizes[2..] {
        let r = resolve_cover(&CoverSpec::covering(s, 5, 4)?, source, seed)?;
        report.push(r.path);
        e.push(r.value);
    }
    let triples: [_; 4] = triples.try_into().expect("four parts");
    let pairs: [_; 4] = pairs.try_into().expect("four parts");
    let c = construct_546(&parts, &triples, &pairs, [&d[0], &d[1]], [&e[0], &e[1]], opts)?;
    Ok((c, report))
}

/// Contiguous parts of `X \ {a}` (ascending) with the given sizes, `a` the base's least
/// degree point.
pub fn splice_parts(base: &Design, variant: SpliceVariant, sizes: &[u32]) -> Result<PartitionSpec> {
    if sizes.len() != variant.part_count() {
        return Err(invalid(format!("need {} part sizes, got {}", variant.part_count(), sizes.len())));
    }
    let a = min_degree_point(base);
    let rest: Vec<u32> = (0..base.v()).filter(|&p| p != a).collect();
    if sizes.iter().sum::<u32>() as usize != rest.len() {
        return Err(invalid(format!("part sizes must sum to v - 1 = {}", rest.len())));
    }
    let mut parts = Vec::new();
    let mut at = 0;
    for &s in sizes {
        parts.push(rest[at..at + s as usize].to_vec());
        at += s as usize;
    }
    PartitionSpec::over(Block::from_points(rest.iter().copied())?, base.v(), parts)
}

/// Pair coverings on each ground set of the splice pairing scheme. Ground sets no larger
/// than the block size get one block padded with the least other points.
pub fn auto_splice_coverings(
    variant: SpliceVariant,
    k: u32,
    parts: &PartitionSpec,
    source: &dyn DesignSource,
    seed: u64,
) -> Result<Resolved<Vec<Vec<Block>>>> {
    if k < 5 {
        return Err(invalid(format!("block size {k} < 5")));
    }
    let ground = (0..parts.len()).fold(Block::EMPTY, |acc, i| acc.union(parts.part_block(i)));
    let per = variant.per_family();
    let mut out = Vec::new();
    let mut notes = Vec::new();
    for (ci, pair) in variant.pairing().iter().enumerate() {
        let j = if ci < 2 * per { k - 3 } else { k - 2 };
        let g = parts.part_block(pair[0]).union(parts.part_block(pair[1]));
        let n = g.len();
        if n == 0 {
            out.push(Vec::new());
        } else if n <= j {
            let pad = ground.difference(g).points().take((j - n) as usize);
            let b = pad.fold(g, |acc, p| acc.with(p));
            if b.len() != j {
                return Err(invalid(format!("only {} points available for blocks of {j}", ground.len())));
            }
            out.push(vec![b]);
        } else {
            let r = resolve_cover(&CoverSpec::covering(n, j, 2)?, source, seed)?;
            notes.push(r.path);
            out.push(lift(&r.value.blocks(), &g.to_vec()));
        }
    }
    notes.dedup();
    Ok(Resolved {
        value: out,
        path: notes.join("; "),
    })
}
