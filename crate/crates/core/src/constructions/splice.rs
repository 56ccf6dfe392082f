//! Point splicing: grow a cover by new points glued along a minimum-degree point.

use std::collections::BTreeMap;

use super::{finish, require, Construction, ConstructionId, InputRecord};
use crate::block::Block;
use crate::bounds::{evaluate_bound, BoundFormula, FormulaId};
use crate::error::{invalid, Error, Result};
use crate::model::{multiset_union, CoverSpec, Design, PartitionSpec};
use crate::verify::{verify_splice_side_conditions, SpliceVariant, VerifyOptions};

/// The point of least degree, ties to the least index.
pub fn min_degree_point(d: &Design) -> u32 {
    (0..d.v())
        .min_by_key(|&p| (d.degree(p), p))
        .expect("designs have at least one point")
}

/// Adjoins `n` new points `v..v+n-1` to a `(v,k,t,m,λ)` base.
///
/// With `a` the least-degree point, the output is the base, every block through `a` with `a`
/// swapped for each new point, and `C ∪ S ∪ {a}` for each block `C` of the auxiliary
/// `(v-1, k-n-1, t-2, m-2, λ)` cover placed on `X \ {a}`. `map` sends auxiliary point `i`
/// to `map[i]`; by default the points of `X \ {a}` in ascending order.
pub fn splice_general(
    base: &Design,
    base_spec: &CoverSpec,
    aux: &Design,
    n: u32,
    map: Option<&[u32]>,
    opts: &VerifyOptions,
) -> Result<Construction> {
    let CoverSpec { v, k, t, m, lambda } = *base_spec;
    if t <= 2 {
        return Err(invalid(format!("splicing needs t > 2, got t = {t}")));
    }
    if n == 0 || n + t > k + 1 {
        return Err(invalid(format!("need 1 <= n <= k - t + 1 = {}, got n = {n}", k + 1 - t.min(k + 1))));
    }
    if base.is_empty() {
        return Err(Error::EmptyDesign);
    }
    require(base, base_spec, "base", opts)?;
    let aux_spec = CoverSpec::new(v - 1, k - n - 1, t - 2, m - 2, lambda)?;
    require(aux, &aux_spec, "auxiliary", opts)?;

    let a = min_degree_point(base);
    let rest: Vec<u32> = (0..v).filter(|&p| p != a).collect();
    let map = match map {
        None => rest.clone(),
        Some(map) => {
            let image = Block::from_points(map.iter().copied())
                .map_err(|e| Error::GroundSetMismatch(format!("auxiliary map: {e}")))?;
            if map.len() != rest.len() || image != Block::from_points(rest.iter().copied())? {
                return Err(Error::GroundSetMismatch(format!(
                    "auxiliary map must be a bijection onto X \\ {{{a}}}"
                )));
            }
            map.to_vec()
        }
    };
    let new_points = Block::from_points(v..v + n)?;

    let b1 = base.blocks();
    let through_a: Vec<Block> = b1.iter().copied().filter(|b| b.contains(a)).collect();
    let b2: Vec<Block> = through_a
        .iter()
        .flat_map(|&b| (v..v + n).map(move |s| b.without(a).with(s)))
        .collect();
    let b3: Vec<Block> = aux
        .blocks()
        .iter()
        .map(|c| c.relabel(&map).union(new_points).with(a))
        .collect();

    let predicted = evaluate_bound(
        &BoundFormula::new(FormulaId::SpliceGeneral)
            .with("v", v as u64)
            .with("n", n as u64)
            .with("k", k as u64)
            .with("t", t as u64)
            .with("m", m as u64)
            .with("lambda", lambda as u64)
            .with_cover(*base_spec, base.len())
            .with_cover(aux_spec, aux.len()),
    )?;
    let inputs = vec![
        InputRecord::new("base", &spec_params(base_spec), base.len()),
        InputRecord::new("aux", &spec_params(&aux_spec), aux.len()),
    ];
    let spec = CoverSpec::new(v + n, k, t, m, lambda)?;
    finish(multiset_union(&[b1, b2, b3]), spec, ConstructionId::SpliceGeneral, inputs, Some(predicted), opts)
}

pub(super) fn spec_params(s: &CoverSpec) -> [u64; 5] {
    [s.v, s.k, s.t, s.m, s.lambda].map(u64::from)
}

/// Three new points `b, c, d = v, v+1, v+2` glued to a `(v,k,4,6)` base. `parts` splits
/// `X \ {a}` into `X11, X12, X21, X22, X31, X32` and `coverings` holds `C1..C3, D1..D3,
/// E1..E3` (see [`SpliceVariant::pairing`]), all on the base's labels.
pub fn splice_446(
    base: &Design,
    parts: &PartitionSpec,
    coverings: &[Vec<Block>],
    opts: &VerifyOptions,
) -> Result<Construction> {
    splice_three(SpliceVariant::Six, base, parts, coverings, opts)
}

/// The `(v,k,4,5)` analogue with four parts and six collections `C1, C2, D1, D2, E1, E2`.
pub fn splice_445(
    base: &Design,
    parts: &PartitionSpec,
    coverings: &[Vec<Block>],
    opts: &VerifyOptions,
) -> Result<Construction> {
    splice_three(SpliceVariant::Five, base, parts, coverings, opts)
}

fn splice_three(
    variant: SpliceVariant,
    base: &Design,
    parts: &PartitionSpec,
    coverings: &[Vec<Block>],
    opts: &VerifyOptions,
) -> Result<Construction> {
    if base.is_empty() {
        return Err(Error::EmptyDesign);
    }
    let (v, k) = (base.v(), base.k());
    if k < 5 {
        return Err(invalid(format!("three-point splicing needs k >= 5, got {k}")));
    }
    let m = match variant {
        SpliceVariant::Six => 6,
        SpliceVariant::Five => 5,
    };
    let base_spec = CoverSpec::lotto(v, k, 4, m)?;
    require(base, &base_spec, "base", opts)?;
    let a = min_degree_point(base);
    let ground = (0..parts.len()).fold(Block::EMPTY, |acc, i| acc.union(parts.part_block(i)));
    if parts.v() != v || ground != Block::range(v).without(a) {
        return Err(Error::GroundSetMismatch(format!(
            "parts must partition the base points other than a = {a}"
        )));
    }
    verify_splice_side_conditions(variant, k, parts, coverings, opts)?
        .into_result("splice side conditions")?;

    let (b, c, d) = (v, v + 1, v + 2);
    let per = variant.per_family();
    let family = |r: std::ops::Range<usize>| multiset_union(&coverings[r]);
    let adjoin = |blocks: Vec<Block>, extra: &[u32]| -> Vec<Block> {
        blocks
            .into_iter()
            .map(|x| extra.iter().fold(x, |acc, &p| acc.with(p)))
            .collect()
    };
    let b1 = base.blocks();
    let b2: Vec<Block> = b1
        .iter()
        .filter(|x| x.contains(a))
        .flat_map(|&x| [b, c, d].map(|p| x.without(a).with(p)))
        .collect();
    let b3 = adjoin(family(0..per), &[a, b, c]);
    let b4 = adjoin(family(per..2 * per), &[a, b, d]);
    let b5 = adjoin(family(2 * per..3 * per), &[c, d]);

    // Cover numbers for the bound: each collection's size under its (n, j, 2) spec.
    let sizes = parts.sizes();
    let mut covers: BTreeMap<CoverSpec, u64> = BTreeMap::new();
    let mut degenerate_overfull = false;
    for (ci, pair) in variant.pairing().iter().enumerate() {
        let n = sizes[pair[0]] + sizes[pair[1]];
        let j = if ci < 2 * per { k - 3 } else { k - 2 };
        let len = coverings[ci].len() as u64;
        if n <= j {
            degenerate_overfull |= len > 1;
            continue;
        }
        let e = covers.entry(CoverSpec::covering(n, j, 2)?).or_insert(0);
        *e = (*e).max(len);
    }
    let (id, formula, names) = match variant {
        SpliceVariant::Six => (
            ConstructionId::Splice446,
            FormulaId::Splice446,
            &["v11", "v12", "v21", "v22", "v31", "v32"][..],
        ),
        SpliceVariant::Five => (
            ConstructionId::Splice445,
            FormulaId::Splice445,
            &["v11", "v12", "v21", "v22"][..],
        ),
    };
    let mut f = BoundFormula::new(formula)
        .with("v", v as u64)
        .with("k", k as u64)
        .with_cover(base_spec, base.len());
    for (name, &s) in names.iter().zip(&sizes) {
        f = f.with(name, s as u64);
    }
    f.covers.extend(covers);
    let predicted = if degenerate_overfull {
        None
    } else {
        Some(evaluate_bound(&f)?)
    };

    let mut inputs = vec![InputRecord::new("base", &spec_params(&base_spec), base.len())];
    for (ci, col) in coverings.iter().enumerate() {
        let name = format!("{}{}", ["C", "D", "E"][ci / per], ci % per + 1);
        let pair = variant.pairing()[ci];
        inputs.push(InputRecord::new(
            name,
            &[(sizes[pair[0]] + sizes[pair[1]]) as u64],
            col.len() as u64,
        ));
    }
    let spec = CoverSpec::lotto(v + 3, k, 4, m)?;
    finish(multiset_union(&[b1, b2, b3, b4, b5]), spec, id, inputs, predicted, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::make_design;

    #[test]
    fn least_degree_ties_to_least_index() {
        let d = make_design(4, 2, &[vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap();
        assert_eq!(min_degree_point(&d), 0);
        let d = make_design(4, 2, &[vec![0, 1], vec![0, 2], vec![2, 3]]).unwrap();
        assert_eq!(min_degree_point(&d), 1);
    }

    #[test]
    fn general_rejects_bad_parameters() {
        let base = make_design(5, 3, &[vec![0, 1, 2]]).unwrap();
        let aux = make_design(4, 1, &[vec![0]]).unwrap();
        let o = VerifyOptions::default();
        let s = CoverSpec::lotto(5, 3, 2, 3).unwrap();
        assert!(splice_general(&base, &s, &aux, 1, None, &o).is_err());
        let s = CoverSpec::lotto(5, 3, 3, 3).unwrap();
        assert!(splice_general(&base, &s, &aux, 2, None, &o).is_err());
    }
}
