//! Trapping constructions: products of within-part coverings that catch every `m`-subset.

use super::splice::spec_params;
use super::{finish, lift, require, Construction, ConstructionId, InputRecord};
use crate::block::Block;
use crate::bounds::{evaluate_bound, BoundFormula, FormulaId};
use crate::error::{invalid, Error, Result};
use crate::ingredients::two_partition_sqs;
use crate::model::{
    multiset_union, product_blocks, BlockFamily, CoverSpec, Design, PartitionSpec, ResolvedClasses,
};
use crate::verify::{verify_resolution_with, VerifyOptions};

/// A `(v,6,3,m)` cover from `m - 1` parts. Part `i` carries a pair covering
/// `B_i^1..B_i^w` and a family `A_i^1..A_i^h` of `(v_i,4,2)` coverings whose union is a
/// `(v_i,4,3)` covering, with `h_i = w_{i+1}`; the output is the union over `i, j` of
/// `A_i^j · {B_{i+1}^j}`, indices mod `m - 1`.
pub fn trapping_triples(
    m: u32,
    parts: &PartitionSpec,
    pair_covers: &[Design],
    quad_families: &[BlockFamily],
    opts: &VerifyOptions,
) -> Result<Construction> {
    let inputs = check_triples(m, parts, pair_covers, quad_families, opts)?;
    let blocks = triple_products(parts, pair_covers, quad_families)?;
    let spec = CoverSpec::lotto(parts.v(), 6, 3, m)?;
    finish(blocks, spec, ConstructionId::TrapTriples, inputs, None, opts)
}

fn check_triples(
    m: u32,
    parts: &PartitionSpec,
    pair_covers: &[Design],
    quad_families: &[BlockFamily],
    opts: &VerifyOptions,
) -> Result<Vec<InputRecord>> {
    if m < 3 {
        return Err(invalid(format!("m must be at least 3, got {m}")));
    }
    let np = (m - 1) as usize;
    if parts.len() != np || pair_covers.len() != np || quad_families.len() != np {
        return Err(invalid(format!(
            "need {np} parts, pair covers and quad families; got {}, {}, {}",
            parts.len(),
            pair_covers.len(),
            quad_families.len()
        )));
    }
    let sizes = parts.sizes();
    let mut inputs = Vec::new();
    for i in 0..np {
        let vi = sizes[i];
        if vi < 4 {
            return Err(invalid(format!("part {i} has {vi} < 4 points")));
        }
        require(&pair_covers[i], &CoverSpec::covering(vi, 2, 1)?, &format!("pair cover {i}"), opts)?;
        if pair_covers[i].len() != vi.div_ceil(2) as u64 {
            return Err(invalid(format!(
                "pair cover {i} has {} blocks, expected {}",
                pair_covers[i].len(),
                vi.div_ceil(2)
            )));
        }
        inputs.push(InputRecord::new("pair-cover", &[vi as u64], pair_covers[i].len()));
    }
    for (i, fam) in quad_families.iter().enumerate() {
        let vi = sizes[i];
        let next = sizes[(i + 1) % np].div_ceil(2) as usize;
        if fam.len() != next {
            return Err(invalid(format!(
                "quad family {i} has {} members, expected {next} (blocks in pair cover {})",
                fam.len(),
                (i + 1) % np
            )));
        }
        if fam.v() != vi || fam.block_size() != 4 {
            return Err(Error::SpecMismatch(format!("quad family {i} must hold 4-blocks on {vi} points")));
        }
        for (j, member) in fam.members().iter().enumerate() {
            let d = Design::new(vi, 4, member.iter().copied())?;
            require(&d, &CoverSpec::covering(vi, 4, 2)?, &format!("quad family {i} member {j}"), opts)?;
        }
        let union = Design::new(vi, 4, fam.union())?;
        require(&union, &CoverSpec::covering(vi, 4, 3)?, &format!("quad family {i} union"), opts)?;
        let total = fam.members().iter().map(|x| x.len() as u64).sum();
        inputs.push(InputRecord::new("quad-family", &[vi as u64, fam.len() as u64], total));
    }
    Ok(inputs)
}

fn triple_products(
    parts: &PartitionSpec,
    pair_covers: &[Design],
    quad_families: &[BlockFamily],
) -> Result<Vec<Block>> {
    let np = parts.len();
    let mut collections = Vec::new();
    for (i, family) in quad_families.iter().enumerate().take(np) {
        let next = (i + 1) % np;
        let pairs = lift(&pair_covers[next].blocks(), &parts.parts()[next]);
        for (member, &pair) in family.members().iter().zip(&pairs) {
            collections.push(product_blocks(&lift(member, &parts.parts()[i]), &[pair])?);
        }
    }
    Ok(multiset_union(&collections))
}

/// [`trapping_triples`] on `m - 1` parts of size `v` with a perfect matching per part and,
/// as quad family, the `(v-2)/2` parts of a 2-partitioned SQS(v) plus a second copy of the
/// last one. Gives `v^2 (v-1)(m-1)/24` blocks.
pub fn trapping_triples_sqs(v: u32, m: u32, opts: &VerifyOptions) -> Result<Construction> {
    if m < 4 {
        return Err(invalid(format!("m must be at least 4, got {m}")));
    }
    let split = two_partition_sqs(v)?;
    let mut members = split.clone();
    members.push(split.last().expect("nonempty partition").clone());
    let family = BlockFamily::new(v, members)?;
    let matching = Design::new(v, 2, (0..v / 2).map(|i| Block::from_points([2 * i, 2 * i + 1]).expect("pair")))?;
    let np = m - 1;
    let parts = PartitionSpec::new(v * np, (0..np).map(|i| (i * v..(i + 1) * v).collect()).collect())?;
    let pair_covers = vec![matching; np as usize];
    let families = vec![family; np as usize];
    let mut inputs = check_triples(m, &parts, &pair_covers, &families, opts)?;
    inputs.push(InputRecord::new("sqs-2partition", &[v as u64], split.iter().map(|p| p.len() as u64).sum()));
    let predicted = evaluate_bound(
        &BoundFormula::new(FormulaId::TrapTriplesSqs)
            .with("v", v as u64)
            .with("m", m as u64),
    )?;
    let blocks = triple_products(&parts, &pair_covers, &families)?;
    let spec = CoverSpec::lotto(v * np, 6, 3, m)?;
    finish(blocks, spec, ConstructionId::TrapTriplesSqs, inputs, Some(predicted), opts)
}

struct QuadInputs {
    n: u32,
    k: u32,
    p: usize,
    q: usize,
    products: Vec<Block>,
    inputs: Vec<InputRecord>,
}

fn check_quads(
    halves: &PartitionSpec,
    left: &ResolvedClasses,
    right: &ResolvedClasses,
    four_covers: [&Design; 2],
    opts: &VerifyOptions,
) -> Result<QuadInputs> {
    let sizes = halves.sizes();
    if halves.len() != 2 || sizes[0] != sizes[1] {
        return Err(invalid(format!("halves must be two equal parts, got sizes {sizes:?}")));
    }
    let n = sizes[0];
    let h = left.block_size();
    if left.v() != n || right.v() != n {
        return Err(Error::SpecMismatch(format!("classes must live on the {n} points of a half")));
    }
    if right.block_size() != h || left.p() != right.p() {
        return Err(invalid("left and right classes differ in block size or class count"));
    }
    if h < 2 {
        return Err(invalid(format!("class blocks of size {h}; k = 2h must be at least 4")));
    }
    let k = 2 * h;
    for (side, r) in [("left", left), ("right", right)] {
        verify_resolution_with(r, 2, opts)?.into_result(format!("{side} classes"))?;
    }
    for (i, d) in four_covers.iter().enumerate() {
        if d.v() != n || d.k() != k {
            return Err(Error::SpecMismatch(format!(
                "four-cover {i} must have v = {n}, k = {k}, got v = {}, k = {}",
                d.v(),
                d.k()
            )));
        }
    }
    let (p, q) = (left.p(), left.q());
    let mut products = Vec::new();
    for (pc, rc) in left.classes().iter().zip(right.classes()) {
        products.extend(product_blocks(&lift(pc, &halves.parts()[0]), &lift(rc, &halves.parts()[1]))?);
    }
    let inputs = vec![
        InputRecord::new("classes", &[q as u64, h as u64], (p * q) as u64),
        InputRecord::new("classes", &[q as u64, h as u64], (p * q) as u64),
    ];
    Ok(QuadInputs {
        n,
        k,
        p,
        q,
        products,
        inputs,
    })
}

/// A `(2n,k,4,6)` cover from two halves of `n` points: a cover of each half plus
/// `P_i · R_i` over the `p <= 5` parallel classes of a resolvable `(n, k/2, 2)` covering on
/// each side. With class size `q < 4` the half covers must be `(n,k,4,5)` covers, otherwise
/// `(n,k,4)` coverings; `force_unimproved` demands the latter regardless.
pub fn trapping_quads_46(
    halves: &PartitionSpec,
    left: &ResolvedClasses,
    right: &ResolvedClasses,
    four_covers: [&Design; 2],
    force_unimproved: bool,
    opts: &VerifyOptions,
) -> Result<Construction> {
    let mut qi = check_quads(halves, left, right, four_covers, opts)?;
    if qi.p > 5 {
        return Err(invalid(format!("need at most 5 parallel classes, got {}", qi.p)));
    }
    let improved = qi.q < 4 && !force_unimproved;
    let half_spec = if improved {
        CoverSpec::lotto(qi.n, qi.k, 4, 5)?
    } else {
        CoverSpec::covering(qi.n, qi.k, 4)?
    };
    quads_finish(&mut qi, halves, four_covers, half_spec, 6, improved, opts)
}

/// A `(2n,k,4,5)` cover: `(n,k,4)` coverings on the halves plus `P_i · R_i` over
/// resolvable classes of exactly two blocks.
pub fn trapping_quads_45(
    halves: &PartitionSpec,
    left: &ResolvedClasses,
    right: &ResolvedClasses,
    four_covers: [&Design; 2],
    opts: &VerifyOptions,
) -> Result<Construction> {
    let mut qi = check_quads(halves, left, right, four_covers, opts)?;
    if qi.q != 2 {
        return Err(invalid(format!("classes must have exactly 2 blocks, got {}", qi.q)));
    }
    let half_spec = CoverSpec::covering(qi.n, qi.k, 4)?;
    quads_finish(&mut qi, halves, four_covers, half_spec, 5, false, opts)
}

fn quads_finish(
    qi: &mut QuadInputs,
    halves: &PartitionSpec,
    four_covers: [&Design; 2],
    half_spec: CoverSpec,
    m: u32,
    improved: bool,
    opts: &VerifyOptions,
) -> Result<Construction> {
    for (i, d) in four_covers.iter().enumerate() {
        require(d, &half_spec, &format!("half cover {i}"), opts)?;
        qi.inputs.push(InputRecord::new("half-cover", &spec_params(&half_spec), d.len()));
    }
    let (id, formula) = match (m, improved) {
        (5, _) => (ConstructionId::TrapQuads45, FormulaId::TrapQ45),
        (_, true) => (ConstructionId::TrapQuads46, FormulaId::TrapQ46Improved),
        _ => (ConstructionId::TrapQuads46, FormulaId::TrapQ46),
    };
    let c = four_covers[0].len().max(four_covers[1].len());
    let predicted = evaluate_bound(
        &BoundFormula::new(formula)
            .with("v", 2 * qi.n as u64)
            .with("k", qi.k as u64)
            .with("p", qi.p as u64)
            .with_cover(half_spec, c),
    )?;
    let b1 = lift(&four_covers[0].blocks(), &halves.parts()[0]);
    let b2 = lift(&four_covers[1].blocks(), &halves.parts()[1]);
    let blocks = multiset_union(&[b1, b2, std::mem::take(&mut qi.products)]);
    let spec = CoverSpec::lotto(2 * qi.n, qi.k, 4, m)?;
    finish(blocks, spec, id, std::mem::take(&mut qi.inputs), Some(predicted), opts)
}
