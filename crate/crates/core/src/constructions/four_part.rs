//! The four-part `(v,5,4,6)` construction.

use super::splice::spec_params;
use super::{finish, lift, require, Construction, ConstructionId, InputRecord};
use crate::block::Block;
use crate::bounds::{evaluate_bound, BoundFormula, FormulaId};
use crate::error::{invalid, Result};
use crate::ingredients::fort_hedlund_size;
use crate::model::{multiset_union, product_blocks, BlockFamily, CoverSpec, Design, PartitionSpec};
use crate::subsets::Combinations;
use crate::verify::VerifyOptions;

/// Parts `X_0..X_3` each carry a family `A_{i,j}` of `(v_i,3,2)` coverings whose union is
/// every triple of the part, and a family `B_{i,j}` of `(v_i,2,1)` coverings whose union is
/// every pair. All families are padded to a common length by repeating their last member.
/// The output is `A_{i,j} B_{i+1,j}` (indices mod 4), `A_{i,j} B_{i+2,j}` for `i = 0, 1`,
/// a `(v_i,5,4,5)` cover on `X_0` and `X_1`, and a `(v_i,5,4)` covering on `X_2` and `X_3`.
pub fn construct_546(
    parts: &PartitionSpec,
    triple_families: &[BlockFamily; 4],
    pair_families: &[BlockFamily; 4],
    d_covers: [&Design; 2],
    e_coverings: [&Design; 2],
    opts: &VerifyOptions,
) -> Result<Construction> {
    if parts.len() != 4 || !parts.is_quasi_equal() {
        return Err(invalid(format!("need four quasi-equal parts, got sizes {:?}", parts.sizes())));
    }
    let sizes = parts.sizes();
    if let Some(i) = sizes.iter().position(|&s| s < 5) {
        return Err(invalid(format!("part {i} has {} < 5 points", sizes[i])));
    }
    let mut inputs = Vec::new();
    for i in 0..4 {
        let vi = sizes[i];
        check_family(&triple_families[i], vi, 3, &format!("triple family {i}"), opts)?;
        check_family(&pair_families[i], vi, 2, &format!("pair family {i}"), opts)?;
        inputs.push(family_record("triple-family", &triple_families[i]));
        inputs.push(family_record("pair-family", &pair_families[i]));
    }
    for (i, d) in d_covers.iter().enumerate() {
        let s = CoverSpec::lotto(sizes[i], 5, 4, 5)?;
        require(d, &s, &format!("D{i}"), opts)?;
        inputs.push(InputRecord::new("d-cover", &spec_params(&s), d.len()));
    }
    for (i, e) in e_coverings.iter().enumerate() {
        let s = CoverSpec::covering(sizes[i + 2], 5, 4)?;
        require(e, &s, &format!("E{}", i + 2), opts)?;
        inputs.push(InputRecord::new("e-covering", &spec_params(&s), e.len()));
    }

    let h = triple_families.iter().chain(pair_families).map(BlockFamily::len).max().unwrap_or(0);
    let a: Vec<BlockFamily> = triple_families.iter().map(|f| f.padded(h)).collect();
    let b: Vec<BlockFamily> = pair_families.iter().map(|f| f.padded(h)).collect();
    let mut collections: Vec<Vec<Block>> = Vec::new();
    let links = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)];
    for (i, l) in links {
        for j in 0..h {
            let left = lift(&a[i].members()[j], &parts.parts()[i]);
            let right = lift(&b[l].members()[j], &parts.parts()[l]);
            collections.push(product_blocks(&left, &right)?);
        }
    }
    collections.push(lift(&d_covers[0].blocks(), &parts.parts()[0]));
    collections.push(lift(&d_covers[1].blocks(), &parts.parts()[1]));
    collections.push(lift(&e_coverings[0].blocks(), &parts.parts()[2]));
    collections.push(lift(&e_coverings[1].blocks(), &parts.parts()[3]));

    let predicted = formula_value(&sizes, h, &a, &b, d_covers, e_coverings)?;
    let spec = CoverSpec::lotto(parts.v(), 5, 4, 6)?;
    finish(multiset_union(&collections), spec, ConstructionId::Construct546, inputs, predicted, opts)
}

fn family_record(kind: &str, f: &BlockFamily) -> InputRecord {
    let total = f.members().iter().map(|m| m.len() as u64).sum();
    InputRecord::new(kind, &[f.v() as u64, f.len() as u64], total)
}

/// Members must be `(v,j,j-1)` coverings and the union every `j`-subset.
fn check_family(f: &BlockFamily, v: u32, j: u32, what: &str, opts: &VerifyOptions) -> Result<()> {
    if f.v() != v || f.is_empty() || f.block_size() != j {
        return Err(invalid(format!("{what} must hold {j}-blocks on {v} points")));
    }
    let union = Design::new(v, j, f.union())?;
    for c in Combinations::new(v as usize, j as usize) {
        let b = Block::from_points(c.into_iter().map(|p| p as u32))?;
        if union.multiplicity(b) == 0 {
            return Err(invalid(format!("{what} misses {b:?}")));
        }
    }
    for (i, member) in f.members().iter().enumerate() {
        let d = Design::new(v, j, member.iter().copied())?;
        require(&d, &CoverSpec::covering(v, j, j - 1)?, &format!("{what} member {i}"), opts)?;
    }
    Ok(())
}

/// The closed-form bound, defined when the parts are equal and even and the ingredients
/// have the sizes it counts: `v - 1` members, Fort-Hedlund-sized triple coverings and
/// perfect matchings.
fn formula_value(
    sizes: &[u32],
    h: usize,
    a: &[BlockFamily],
    b: &[BlockFamily],
    d_covers: [&Design; 2],
    e_coverings: [&Design; 2],
) -> Result<Option<u64>> {
    let v = sizes[0];
    if sizes.iter().any(|&s| s != v) || v % 2 == 1 || h != (v - 1) as usize {
        return Ok(None);
    }
    let fh = fort_hedlund_size(v)? as usize;
    let exact = a.iter().all(|f| f.members().iter().all(|m| m.len() == fh))
        && b.iter().all(|f| f.members().iter().all(|m| m.len() == (v / 2) as usize));
    if !exact {
        return Ok(None);
    }
    let d = d_covers[0].len().max(d_covers[1].len());
    let e = e_coverings[0].len().max(e_coverings[1].len());
    let f = BoundFormula::new(FormulaId::Construct546)
        .with("v", v as u64)
        .with_cover(CoverSpec::lotto(v, 5, 4, 5)?, d)
        .with_cover(CoverSpec::covering(v, 5, 4)?, e);
    Ok(Some(evaluate_bound(&f)?))
}
