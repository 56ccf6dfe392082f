//! Exact integer evaluation of the upper-bound formulas.
//!
//! Formulas consume cover numbers such as `C(v/2, k, 4, 5)`. Each one resolves from the
//! values supplied on the [`BoundFormula`], then from a [`CoverNumbers`] source (usually the
//! catalog), then from the handful of values known in closed form; otherwise evaluation
//! fails with [`Error::UnknownCoverNumber`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::ingredients::{fort_hedlund_size, r_table};
use crate::model::CoverSpec;
use crate::subsets::binomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FormulaId {
    SpliceGeneral,
    Splice446,
    Splice445,
    TrapTriplesSqs,
    Trap634,
    TrapQ46,
    TrapQ46Improved,
    TrapQ45,
    Thm54Case1,
    Thm54Case2,
    Thm54Case3,
    Thm54Case4,
    Thm54Case5,
    Construct546,
}

impl FormulaId {
    pub const ALL: [FormulaId; 14] = [
        FormulaId::SpliceGeneral,
        FormulaId::Splice446,
        FormulaId::Splice445,
        FormulaId::TrapTriplesSqs,
        FormulaId::Trap634,
        FormulaId::TrapQ46,
        FormulaId::TrapQ46Improved,
        FormulaId::TrapQ45,
        FormulaId::Thm54Case1,
        FormulaId::Thm54Case2,
        FormulaId::Thm54Case3,
        FormulaId::Thm54Case4,
        FormulaId::Thm54Case5,
        FormulaId::Construct546,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FormulaId::SpliceGeneral => "SPLICE_GENERAL",
            FormulaId::Splice446 => "SPLICE_446",
            FormulaId::Splice445 => "SPLICE_445",
            FormulaId::TrapTriplesSqs => "TRAP_TRIPLES_SQS",
            FormulaId::Trap634 => "TRAP_634",
            FormulaId::TrapQ46 => "TRAP_Q46",
            FormulaId::TrapQ46Improved => "TRAP_Q46_IMPROVED",
            FormulaId::TrapQ45 => "TRAP_Q45",
            FormulaId::Thm54Case1 => "THM54_CASE1",
            FormulaId::Thm54Case2 => "THM54_CASE2",
            FormulaId::Thm54Case3 => "THM54_CASE3",
            FormulaId::Thm54Case4 => "THM54_CASE4",
            FormulaId::Thm54Case5 => "THM54_CASE5",
            FormulaId::Construct546 => "CONSTRUCT_546",
        }
    }

    /// Integer parameters the formula reads; bracketed names are optional. The `c_*` names
    /// supply consumed cover numbers directly; otherwise they resolve through
    /// [`BoundFormula::covers`] and [`CoverNumbers`].
    pub fn params(self) -> &'static [&'static str] {
        match self {
            FormulaId::SpliceGeneral => &["v", "n", "k", "t", "m", "[lambda]", "[c_base]", "[c_aux]"],
            FormulaId::Splice446 => &["v", "k", "v11", "v12", "v21", "v22", "v31", "v32", "[c_base]"],
            FormulaId::Splice445 => &["v", "k", "v11", "v12", "v21", "v22", "[c_base]"],
            FormulaId::TrapTriplesSqs => &["v", "m"],
            FormulaId::Trap634 => &["v"],
            FormulaId::TrapQ46 | FormulaId::TrapQ46Improved | FormulaId::TrapQ45 => {
                &["v", "k", "p", "[c_half]"]
            }
            FormulaId::Thm54Case1
            | FormulaId::Thm54Case2
            | FormulaId::Thm54Case3
            | FormulaId::Thm54Case4
            | FormulaId::Thm54Case5 => &["k"],
            FormulaId::Construct546 => &["v", "[c_d]", "[c_e]"],
        }
    }

    pub fn thm54(case: u32) -> Result<FormulaId> {
        match case {
            1 => Ok(FormulaId::Thm54Case1),
            2 => Ok(FormulaId::Thm54Case2),
            3 => Ok(FormulaId::Thm54Case3),
            4 => Ok(FormulaId::Thm54Case4),
            5 => Ok(FormulaId::Thm54Case5),
            _ => Err(invalid(format!("case must be 1..=5, got {case}"))),
        }
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FormulaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        FormulaId::ALL
            .into_iter()
            .find(|f| f.name() == norm)
            .ok_or_else(|| invalid(format!("unknown formula `{s}`")))
    }
}

/// A formula id with its named parameters and any cover numbers supplied by the caller.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundFormula {
    pub id: FormulaId,
    pub params: BTreeMap<String, u64>,
    pub covers: BTreeMap<CoverSpec, u64>,
}

impl BoundFormula {
    pub fn new(id: FormulaId) -> Self {
        BoundFormula {
            id,
            params: BTreeMap::new(),
            covers: BTreeMap::new(),
        }
    }

    pub fn with(mut self, name: &str, value: u64) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }

    pub fn with_cover(mut self, spec: CoverSpec, value: u64) -> Self {
        self.covers.insert(spec, value);
        self
    }

    fn get(&self, name: &str) -> Result<u64> {
        self.params
            .get(name)
            .copied()
            .ok_or_else(|| Error::MissingParameter(format!("{name}` for `{}", self.id)))
    }
}

/// A source of known cover numbers (upper bounds realized by stored designs).
pub trait CoverNumbers {
    fn cover_number(&self, spec: &CoverSpec) -> Option<u64>;
}

/// No stored values.
pub struct NoCovers;

impl CoverNumbers for NoCovers {
    fn cover_number(&self, _: &CoverSpec) -> Option<u64> {
        None
    }
}

impl CoverNumbers for BTreeMap<CoverSpec, u64> {
    fn cover_number(&self, spec: &CoverSpec) -> Option<u64> {
        self.get(spec).copied()
    }
}

/// Cover numbers known in closed form.
pub fn known_cover_number(s: &CoverSpec) -> Option<u64> {
    let CoverSpec { v, k, t, m, lambda } = *s;
    let (v64, k64) = (v as u64, k as u64);
    if k + m >= v + t {
        // every m-subset meets any block in at least t points
        return Some(lambda as u64);
    }
    if lambda != 1 {
        return None;
    }
    match (t, m) {
        (1, 1) => Some(v64.div_ceil(k64)),
        (2, 2) if k == 2 => Some(binomial(v64, 2) as u64),
        (2, 2) if k == 3 => fort_hedlund_size(v).ok(),
        _ => None,
    }
}

/// Size of a pair covering on `n` points with blocks of size `j`, allowing `n <= j` (one
/// block containing the whole ground set) and `n = 0` (no blocks).
fn pair_cover(f: &BoundFormula, src: &dyn CoverNumbers, n: u64, j: u64) -> Result<u64> {
    if n == 0 {
        return Ok(0);
    }
    if n <= j {
        return Ok(1);
    }
    cover(f, src, CoverSpec::covering(n as u32, j as u32, 2)?)
}

/// The named parameter if given, else the cover number of `s`.
fn named_cover(f: &BoundFormula, src: &dyn CoverNumbers, name: &str, s: CoverSpec) -> Result<u64> {
    match f.params.get(name) {
        Some(&x) => Ok(x),
        None => cover(f, src, s),
    }
}

fn cover(f: &BoundFormula, src: &dyn CoverNumbers, s: CoverSpec) -> Result<u64> {
    f.covers
        .get(&s)
        .copied()
        .or_else(|| src.cover_number(&s))
        .or_else(|| known_cover_number(&s))
        .ok_or_else(|| Error::UnknownCoverNumber(s.to_string()))
}

fn exact_div(num: u64, den: u64, what: &str) -> Result<u64> {
    if den == 0 || !num.is_multiple_of(den) {
        return Err(invalid(format!("{what} = {num}/{den} is not an integer")));
    }
    Ok(num / den)
}

/// `v = 4^n` or `v = 2 p^n + 2` with `p` in {7, 31, 127}, `n >= 1`.
pub fn two_partitionable_order(v: u64) -> bool {
    let power_of = |mut x: u64, base: u64| {
        if x < base {
            return false;
        }
        while x.is_multiple_of(base) {
            x /= base;
        }
        x == 1
    };
    power_of(v, 4) || (v >= 4 && v.is_multiple_of(2) && [7, 31, 127].iter().any(|&p| power_of((v - 2) / 2, p)))
}

pub fn evaluate_bound(f: &BoundFormula) -> Result<u64> {
    evaluate_bound_with(f, &NoCovers)
}

pub fn evaluate_bound_with(f: &BoundFormula, src: &dyn CoverNumbers) -> Result<u64> {
    let known = f.id.params();
    if let Some(name) = f
        .params
        .keys()
        .find(|n| !known.iter().any(|k| k.trim_matches(|c| c == '[' || c == ']') == n.as_str()))
    {
        return Err(invalid(format!("{} takes no parameter `{name}` (expects {})", f.id, known.join(" "))));
    }
    match f.id {
        FormulaId::SpliceGeneral => splice_general(f, src),
        FormulaId::Splice446 => splice_three(f, src, true),
        FormulaId::Splice445 => splice_three(f, src, false),
        FormulaId::TrapTriplesSqs => {
            let (v, m) = (f.get("v")?, f.get("m")?);
            trap_triples(v, m)
        }
        FormulaId::Trap634 => trap_triples(f.get("v")?, 4),
        FormulaId::TrapQ46 => trap_quads(f, src, Variant::Q46),
        FormulaId::TrapQ46Improved => trap_quads(f, src, Variant::Q46Improved),
        FormulaId::TrapQ45 => trap_quads(f, src, Variant::Q45),
        FormulaId::Thm54Case1
        | FormulaId::Thm54Case2
        | FormulaId::Thm54Case3
        | FormulaId::Thm54Case4
        | FormulaId::Thm54Case5 => thm54(f.id, f.get("k")?).map(|row| row.value),
        FormulaId::Construct546 => construct_546(f, src),
    }
}

fn splice_general(f: &BoundFormula, src: &dyn CoverNumbers) -> Result<u64> {
    let (v, n, k, t, m) = (f.get("v")?, f.get("n")?, f.get("k")?, f.get("t")?, f.get("m")?);
    let lambda = f.params.get("lambda").copied().unwrap_or(1);
    if t <= 2 {
        return Err(invalid(format!("splicing needs t > 2, got {t}")));
    }
    if n == 0 || n + t > k + 1 {
        return Err(invalid(format!("need 1 <= n <= k - t + 1, got n = {n}")));
    }
    if k < n + 1 + (t - 2) {
        return Err(invalid(format!("auxiliary block size k - n - 1 = {} < t - 2", k - n - 1)));
    }
    let base = named_cover(f, src, "c_base", CoverSpec::new(v as u32, k as u32, t as u32, m as u32, lambda as u32)?)?;
    let aux = named_cover(
        f,
        src,
        "c_aux",
        CoverSpec::new(
            (v - 1) as u32,
            (k - n - 1) as u32,
            (t - 2) as u32,
            (m - 2) as u32,
            lambda as u32,
        )?,
    )?;
    Ok(n * (k * base / v) + base + aux)
}

fn splice_three(f: &BoundFormula, src: &dyn CoverNumbers, six: bool) -> Result<u64> {
    let (v, k) = (f.get("v")?, f.get("k")?);
    if k < 5 {
        return Err(invalid(format!("three-point splicing needs k >= 5, got {k}")));
    }
    let (v11, v12, v21, v22) = (f.get("v11")?, f.get("v12")?, f.get("v21")?, f.get("v22")?);
    let (v31, v32) = if six {
        (f.get("v31")?, f.get("v32")?)
    } else {
        (0, 0)
    };
    if v11 + v12 + v21 + v22 + v31 + v32 + 1 != v {
        return Err(invalid("part sizes must sum to v - 1"));
    }
    let m = if six { 6 } else { 5 };
    let base = named_cover(f, src, "c_base", CoverSpec::lotto(v as u32, k as u32, 4, m)?)?;
    let pc = |n: u64, j: u64| pair_cover(f, src, n, j);
    let mut total = 3 * (k * base / v)
        + base
        + pc(v11 + v21, k - 3)?
        + pc(v12 + v22, k - 3)?
        + pc(v11 + v22, k - 3)?
        + pc(v12 + v21, k - 3)?
        + pc(v11 + v12, k - 2)?
        + pc(v21 + v22, k - 2)?;
    if six {
        total += 2 * pc(v31 + v32, k - 3)? + pc(v31 + v32, k - 2)?;
    }
    Ok(total)
}

fn trap_triples(v: u64, m: u64) -> Result<u64> {
    if !two_partitionable_order(v) {
        return Err(invalid(format!(
            "v = {v} is neither 4^n nor 2p^n + 2 with p in {{7, 31, 127}}"
        )));
    }
    if m < 3 {
        return Err(invalid(format!("m must be at least 3, got {m}")));
    }
    exact_div(v * v * (v - 1) * (m - 1), 24, "v^2(v-1)(m-1)/24")
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Variant {
    Q46,
    Q46Improved,
    Q45,
}

fn trap_quads(f: &BoundFormula, src: &dyn CoverNumbers, variant: Variant) -> Result<u64> {
    let (v, k, p) = (f.get("v")?, f.get("k")?, f.get("p")?);
    if v % 2 == 1 || k % 2 == 1 || k < 4 {
        return Err(invalid(format!("need v even and k even >= 4, got v = {v}, k = {k}")));
    }
    if v % k != 0 {
        return Err(invalid(format!("class size q = v/k = {v}/{k} is not an integer")));
    }
    let q = v / k;
    let n = v / 2;
    if n < k {
        return Err(invalid(format!("halves of {n} points are smaller than k = {k}")));
    }
    if p == 0 {
        return Err(invalid("need at least one parallel class"));
    }
    let (n32, k32) = (n as u32, k as u32);
    match variant {
        Variant::Q46 | Variant::Q46Improved => {
            if p > 5 {
                return Err(invalid(format!("need p <= 5 parallel classes, got {p}")));
            }
            let c = if variant == Variant::Q46Improved {
                if q >= 4 {
                    return Err(invalid(format!("the improved bound needs class size q < 4, got {q}")));
                }
                named_cover(f, src, "c_half", CoverSpec::lotto(n32, k32, 4, 5)?)?
            } else {
                named_cover(f, src, "c_half", CoverSpec::covering(n32, k32, 4)?)?
            };
            Ok(2 * c + exact_div(p * v * v, k * k, "p v^2 / k^2")?)
        }
        Variant::Q45 => {
            if q != 2 {
                return Err(invalid(format!("class size must be q = 2, got {q}")));
            }
            Ok(2 * named_cover(f, src, "c_half", CoverSpec::covering(n32, k32, 4)?)? + 4 * p)
        }
    }
}

fn construct_546(f: &BoundFormula, src: &dyn CoverNumbers) -> Result<u64> {
    let v = f.get("v")?;
    if v < 5 {
        return Err(invalid(format!("part size {v} < 5")));
    }
    if v % 2 == 1 {
        return Err(invalid(format!(
            "formula applies only to even part sizes (got {v}); report the construction size instead"
        )));
    }
    let d = named_cover(f, src, "c_d", CoverSpec::lotto(v as u32, 5, 4, 5)?)?;
    let e = named_cover(f, src, "c_e", CoverSpec::covering(v as u32, 5, 4)?)?;
    Ok(2 * (d + e) + 3 * v * (v - 1) * fort_hedlund_size(v as u32)?)
}

/// One row of the trapping-quadruple bound table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Thm54Row {
    pub case: u32,
    /// The cover in terms of `k`, e.g. `C(4k,2k,4,5)`.
    pub cover: &'static str,
    pub condition: &'static str,
    pub value: u64,
    /// How the value arises: formula, class count and consumed cover number.
    pub derivation: String,
}

/// The constant covers consumed by the table.
pub const C_3K_2K_4_5: u64 = 3;
pub const C_16_8_4: u64 = 30;

/// Evaluates one row at a given `k`, rederiving its value from `r(q, k)` and the consumed
/// constants through the trapping-quadruple formulas.
pub fn thm54(id: FormulaId, k: u64) -> Result<Thm54Row> {
    if k < 2 {
        return Err(invalid(format!("need k >= 2, got {k}")));
    }
    let k32 = k as u32;
    let (case, cover, condition, ok) = match id {
        FormulaId::Thm54Case1 => (1, "C(4k,2k,4,5)", "k even", k.is_multiple_of(2)),
        FormulaId::Thm54Case2 => (2, "C(4k,2k,4,5)", "k odd", k % 2 == 1),
        FormulaId::Thm54Case3 => (3, "C(6k,2k,4,6)", "k = 0 mod 3", k.is_multiple_of(3)),
        FormulaId::Thm54Case4 => (4, "C(6k,2k,4,6)", "k = 1, 2 mod 3", !k.is_multiple_of(3)),
        FormulaId::Thm54Case5 => (5, "C(8k,2k,4,6)", "k = 0 mod 4", k.is_multiple_of(4)),
        other => return Err(invalid(format!("{other} is not a table row"))),
    };
    if !ok {
        return Err(invalid(format!("case {case} needs {condition}, got k = {k}")));
    }
    let (q, v, formula) = match case {
        1 | 2 => (2, 4 * k, FormulaId::TrapQ45),
        3 | 4 => (3, 6 * k, FormulaId::TrapQ46Improved),
        _ => (4, 8 * k, FormulaId::TrapQ46),
    };
    let p = r_table(q, k32)? as u64;
    let half = (v / 2) as u32;
    let (consumed, c) = match case {
        1 | 2 => (CoverSpec::covering(half, 2 * k32, 4)?, 1),
        3 | 4 => (CoverSpec::lotto(half, 2 * k32, 4, 5)?, C_3K_2K_4_5),
        _ => (CoverSpec::covering(half, 2 * k32, 4)?, C_16_8_4),
    };
    let f = BoundFormula::new(formula)
        .with("v", v)
        .with("k", 2 * k)
        .with("p", p)
        .with_cover(consumed, c);
    let value = evaluate_bound(&f)?;
    Ok(Thm54Row {
        case,
        cover,
        condition,
        value,
        derivation: format!("{formula} with q = {q}, p = r({q},{k}) = {p}, C{consumed} <= {c}"),
    })
}

/// The five rows at the smallest admissible `k` of each case; values do not depend on `k`.
pub fn thm54_table() -> Vec<Thm54Row> {
    [(FormulaId::Thm54Case1, 2), (FormulaId::Thm54Case2, 3), (FormulaId::Thm54Case3, 3), (FormulaId::Thm54Case4, 2), (FormulaId::Thm54Case5, 4)]
        .into_iter()
        .map(|(id, k)| thm54(id, k).expect("admissible by construction"))
        .collect()
}

/// Constants the table consumes, with how they enter.
pub fn thm54_constants() -> Vec<(&'static str, u64)> {
    vec![
        ("C(k,k,4) (trivial)", 1),
        ("C(3k,2k,4,5)", C_3K_2K_4_5),
        ("C(16,8,4), and C(16m,8m,4) <= C(16,8,4) by C(vm,km,t) <= C(v,k,t)", C_16_8_4),
    ]
}
