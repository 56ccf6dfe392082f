//! Steiner triple systems, Boolean quadruple systems and their 2-partitions.

use crate::block::Block;
use crate::error::{invalid, Error, Result};
use crate::model::Design;
use crate::verify::{verify_t_design, verify_two_partition};

fn triple(a: u32, b: u32, c: u32) -> Block {
    Block::from_points([a, b, c]).expect("distinct points")
}

/// An STS(v) for `v ≡ 1, 3 (mod 6)`, `v >= 7`: Bose's construction for `v ≡ 3`, Skolem's
/// for `v ≡ 1`.
pub fn steiner_triple_system(v: u32) -> Result<Design> {
    if v < 7 || !matches!(v % 6, 1 | 3) {
        return Err(invalid(format!("no Steiner triple system of order {v}")));
    }
    crate::model::check_capacity(v)?;
    let blocks = if v % 6 == 3 { bose(v) } else { skolem(v) };
    let d = Design::new(v, 3, blocks)?;
    verify_t_design(&d, 2, 1)?.into_result(format!("STS({v})"))?;
    Ok(d)
}

// Points (x, i), x in Z_{2n+1}, i in Z_3, numbered x + (2n+1) i. The idempotent commutative
// quasigroup is x∘y = (x + y)(n + 1) mod 2n+1.
fn bose(v: u32) -> Vec<Block> {
    let m = v / 3;
    let n = (m - 1) / 2;
    let pt = |x: u32, i: u32| x + m * (i % 3);
    let op = |x: u32, y: u32| (x + y) * (n + 1) % m;
    let mut out: Vec<Block> = (0..m).map(|x| triple(pt(x, 0), pt(x, 1), pt(x, 2))).collect();
    for i in 0..3 {
        for x in 0..m {
            for y in x + 1..m {
                out.push(triple(pt(x, i), pt(y, i), pt(op(x, y), i + 1)));
            }
        }
    }
    out
}

// Points ∞ = v - 1 and (x, i), x in Z_{2n}, i in Z_3, numbered x + 2n i. The half-idempotent
// commutative quasigroup is x∘y = σ(x + y mod 2n) with σ(z) = z/2 for even z and
// (z + 2n - 1)/2 for odd z.
fn skolem(v: u32) -> Vec<Block> {
    let m = (v - 1) / 3;
    let n = m / 2;
    let inf = v - 1;
    let pt = |x: u32, i: u32| x + m * (i % 3);
    let op = |x: u32, y: u32| {
        let z = (x + y) % m;
        if z.is_multiple_of(2) {
            z / 2
        } else {
            (z + m - 1) / 2
        }
    };
    let mut out: Vec<Block> = (0..n).map(|x| triple(pt(x, 0), pt(x, 1), pt(x, 2))).collect();
    for i in 0..3 {
        for x in 0..n {
            out.push(triple(inf, pt(x + n, i), pt(x, i + 1)));
        }
        for x in 0..m {
            for y in x + 1..m {
                out.push(triple(pt(x, i), pt(y, i), pt(op(x, y), i + 1)));
            }
        }
    }
    out
}

/// The quadruples `{a, b, c, d}` of `F_2^n` with `a ^ b ^ c ^ d = 0`, an SQS(2^n).
pub fn boolean_sqs(v: u32) -> Result<Design> {
    if v < 4 || !v.is_power_of_two() {
        return Err(invalid(format!("Boolean SQS needs a power of two >= 4, got {v}")));
    }
    crate::model::check_capacity(v)?;
    let mut blocks = Vec::new();
    for a in 0..v {
        for b in a + 1..v {
            for c in b + 1..v {
                let d = a ^ b ^ c;
                if d > c {
                    blocks.push(Block::from_points([a, b, c, d]).expect("distinct points"));
                }
            }
        }
    }
    let d = Design::new(v, 4, blocks)?;
    verify_t_design(&d, 3, 1)?.into_result(format!("SQS({v})"))?;
    Ok(d)
}

/// Node budget for the SQS(16) partition search.
pub const TWO_PARTITION_BUDGET: u64 = 100_000_000;

/// A partition of `boolean_sqs(v)` into `(v - 2) / 2` Steiner systems `S(v, 4, 2)`, for
/// `v` in {4, 16}.
pub fn two_partition_sqs(v: u32) -> Result<Vec<Vec<Block>>> {
    two_partition_sqs_with(v, TWO_PARTITION_BUDGET)
}

pub fn two_partition_sqs_with(v: u32, budget: u64) -> Result<Vec<Vec<Block>>> {
    let sqs = boolean_sqs(v).map_err(|_| unsupported(v))?;
    let parts = match v {
        4 => vec![sqs.blocks()],
        16 => packing_parts(budget)?,
        _ => return Err(unsupported(v)),
    };
    verify_two_partition(&sqs, &parts)?.into_result(format!("2-partition of SQS({v})"))?;
    Ok(parts)
}

fn unsupported(v: u32) -> Error {
    invalid(format!("2-partition of SQS({v}) is supported only for v in {{4, 16}}"))
}

// Every block of the Boolean SQS(16) is a coset of a 2-dimensional subspace of F_2^4. A
// spread (5 subspaces meeting pairwise in 0) yields 20 cosets forming an S(16,4,2), so a
// partition of the 35 subspaces into 7 spreads gives the 2-partition.
fn packing_parts(budget: u64) -> Result<Vec<Vec<Block>>> {
    // Subspaces as 16-bit masks over the vectors they contain.
    let mut planes: Vec<u16> = Vec::new();
    for a in 1..16u32 {
        for b in a + 1..16 {
            let s = 1u16 | 1 << a | 1 << b | 1 << (a ^ b);
            if !planes.contains(&s) {
                planes.push(s);
            }
        }
    }
    planes.sort_unstable();
    let spreads = spreads(&planes);
    let mut chosen = Vec::new();
    let mut nodes = 0u64;
    if !pack(&spreads, 0, &mut chosen, &mut nodes, budget)? {
        return Err(invalid("no packing of the 2-dimensional subspaces of F_2^4"));
    }
    Ok(chosen
        .iter()
        .map(|spread: &[usize; 5]| {
            let mut part: Vec<Block> = spread
                .iter()
                .flat_map(|&i| cosets(planes[i]))
                .collect();
            part.sort();
            part
        })
        .collect())
}

fn cosets(plane: u16) -> Vec<Block> {
    let mut out = Vec::new();
    let mut seen = 0u16;
    for x in 0..16u32 {
        if seen >> x & 1 == 1 {
            continue;
        }
        let pts: Vec<u32> = (0..16).filter(|&y| plane >> (x ^ y) & 1 == 1).collect();
        for &p in &pts {
            seen |= 1 << p;
        }
        out.push(Block::from_points(pts).expect("distinct points"));
    }
    out
}

fn spreads(planes: &[u16]) -> Vec<(u64, [usize; 5])> {
    fn extend(planes: &[u16], from: usize, cover: u16, acc: &mut Vec<usize>, out: &mut Vec<(u64, [usize; 5])>) {
        if acc.len() == 5 {
            let ids: [usize; 5] = acc[..].try_into().expect("five planes");
            let mask = ids.iter().fold(0u64, |m, &i| m | 1 << i);
            out.push((mask, ids));
            return;
        }
        for i in from..planes.len() {
            let nonzero = planes[i] & !1;
            if nonzero & cover == 0 {
                acc.push(i);
                extend(planes, i + 1, cover | nonzero, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(planes, 0, 0, &mut Vec::new(), &mut out);
    out
}

// Exact cover of the 35 planes by spreads, always branching on the least unused plane.
fn pack(
    spreads: &[(u64, [usize; 5])],
    used: u64,
    chosen: &mut Vec<[usize; 5]>,
    nodes: &mut u64,
    budget: u64,
) -> Result<bool> {
    let all = (1u64 << 35) - 1;
    if used == all {
        return Ok(true);
    }
    let first = (!used).trailing_zeros();
    for &(mask, ids) in spreads {
        if mask >> first & 1 == 0 || mask & used != 0 {
            continue;
        }
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::BudgetExhausted {
                what: "2-partition of SQS(16)".into(),
                budget,
            });
        }
        chosen.push(ids);
        if pack(spreads, used | mask, chosen, nodes, budget)? {
            return Ok(true);
        }
        chosen.pop();
    }
    Ok(false)
}
