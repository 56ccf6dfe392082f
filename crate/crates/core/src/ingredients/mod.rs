//! Building blocks consumed by the constructions. Every factory re-verifies its output
//! before returning it.

mod families;
mod greedy;
mod resolvable;
mod steiner;

use std::fmt;
use std::str::FromStr;

pub use families::{
    fort_hedlund_size, matching_family, part_complement_cover, quad_family, triple_family,
};
pub use greedy::{greedy_cover, greedy_extend, INCIDENCE_LIMIT};
pub use resolvable::{
    affine_93, affine_plane, blow_up, one_factorization, r_table, resolvable_pair_covering,
    resolvable_pair_covering_with, SearchBudget,
};
pub use steiner::{
    boolean_sqs, steiner_triple_system, two_partition_sqs, two_partition_sqs_with,
    TWO_PARTITION_BUDGET,
};

use crate::block::Block;
use crate::error::{invalid, Error, Result};
use crate::model::{BlockFamily, CoverSpec, Design, ResolvedClasses};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IngredientKind {
    Sts,
    OneFactorization,
    Affine93,
    ResolvablePairCover,
    BooleanSqs,
    Sqs2Partition,
    GreedyCover,
    MatchingFamily,
    TripleFamily,
    QuadFamily,
    PartComplement,
    FortHedlund,
}

impl IngredientKind {
    pub const ALL: [IngredientKind; 12] = [
        IngredientKind::Sts,
        IngredientKind::OneFactorization,
        IngredientKind::Affine93,
        IngredientKind::ResolvablePairCover,
        IngredientKind::BooleanSqs,
        IngredientKind::Sqs2Partition,
        IngredientKind::GreedyCover,
        IngredientKind::MatchingFamily,
        IngredientKind::TripleFamily,
        IngredientKind::QuadFamily,
        IngredientKind::PartComplement,
        IngredientKind::FortHedlund,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IngredientKind::Sts => "sts",
            IngredientKind::OneFactorization => "one-factorization",
            IngredientKind::Affine93 => "affine-93",
            IngredientKind::ResolvablePairCover => "resolvable-pair-cover",
            IngredientKind::BooleanSqs => "boolean-sqs",
            IngredientKind::Sqs2Partition => "sqs-2partition",
            IngredientKind::GreedyCover => "greedy-cover",
            IngredientKind::MatchingFamily => "matching-family",
            IngredientKind::TripleFamily => "triple-family",
            IngredientKind::QuadFamily => "quad-family",
            IngredientKind::PartComplement => "part-complement",
            IngredientKind::FortHedlund => "fort-hedlund",
        }
    }

    /// Names of the integer parameters, in order. Trailing names in brackets are optional.
    pub fn params(self) -> &'static [&'static str] {
        match self {
            IngredientKind::Sts
            | IngredientKind::BooleanSqs
            | IngredientKind::Sqs2Partition
            | IngredientKind::MatchingFamily
            | IngredientKind::TripleFamily
            | IngredientKind::FortHedlund => &["v"],
            IngredientKind::OneFactorization => &["n"],
            IngredientKind::Affine93 => &[],
            IngredientKind::ResolvablePairCover => &["q", "k"],
            IngredientKind::GreedyCover => &["v", "k", "t", "m", "[lambda]", "[restarts]"],
            IngredientKind::QuadFamily => &["v", "h"],
            IngredientKind::PartComplement => &["k"],
        }
    }
}

impl fmt::Display for IngredientKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IngredientKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        IngredientKind::ALL
            .into_iter()
            .find(|k| k.name() == norm)
            .ok_or_else(|| invalid(format!("unknown ingredient kind `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IngredientRequest {
    pub kind: IngredientKind,
    pub params: Vec<u32>,
    pub seed: Option<u64>,
}

impl IngredientRequest {
    pub fn new(kind: IngredientKind, params: Vec<u32>) -> Self {
        IngredientRequest {
            kind,
            params,
            seed: None,
        }
    }

    fn param(&self, i: usize) -> Result<u32> {
        let names = self.kind.params();
        self.params.get(i).copied().ok_or_else(|| {
            Error::MissingParameter(format!("{} for {}", names.get(i).unwrap_or(&"?"), self.kind))
        })
    }

    fn check_arity(&self) -> Result<()> {
        let names = self.kind.params();
        let required = names.iter().filter(|n| !n.starts_with('[')).count();
        if self.params.len() < required {
            return Err(Error::MissingParameter(format!(
                "{} for {}",
                names[self.params.len()],
                self.kind
            )));
        }
        if self.params.len() > names.len() {
            return Err(invalid(format!(
                "{} takes at most {} parameters, got {}",
                self.kind,
                names.len(),
                self.params.len()
            )));
        }
        Ok(())
    }
}

/// What a factory produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ingredient {
    Design(Design),
    Classes(ResolvedClasses),
    Family(BlockFamily),
    Parts { v: u32, parts: Vec<Vec<Block>> },
    Count(u64),
}

impl Ingredient {
    /// Number of blocks, or the value for counts.
    pub fn size(&self) -> u64 {
        match self {
            Ingredient::Design(d) => d.len(),
            Ingredient::Classes(r) => r.classes().iter().map(|c| c.len() as u64).sum(),
            Ingredient::Family(f) => f.members().iter().map(|m| m.len() as u64).sum(),
            Ingredient::Parts { parts, .. } => parts.iter().map(|p| p.len() as u64).sum(),
            Ingredient::Count(n) => *n,
        }
    }
}

/// Runs the factory named by `req`.
pub fn build_ingredient(req: &IngredientRequest) -> Result<Ingredient> {
    req.check_arity()?;
    let seed = req.seed.unwrap_or(0);
    Ok(match req.kind {
        IngredientKind::Sts => Ingredient::Design(steiner_triple_system(req.param(0)?)?),
        IngredientKind::OneFactorization => Ingredient::Classes(one_factorization(req.param(0)?)?),
        IngredientKind::Affine93 => Ingredient::Classes(affine_93()?),
        IngredientKind::ResolvablePairCover => {
            let budget = SearchBudget {
                seed,
                ..SearchBudget::default()
            };
            Ingredient::Classes(resolvable_pair_covering_with(req.param(0)?, req.param(1)?, &budget)?)
        }
        IngredientKind::BooleanSqs => Ingredient::Design(boolean_sqs(req.param(0)?)?),
        IngredientKind::Sqs2Partition => {
            let v = req.param(0)?;
            Ingredient::Parts {
                v,
                parts: two_partition_sqs(v)?,
            }
        }
        IngredientKind::GreedyCover => {
            let lambda = req.params.get(4).copied().unwrap_or(1);
            let restarts = req.params.get(5).copied().unwrap_or(8);
            let s = CoverSpec::new(req.param(0)?, req.param(1)?, req.param(2)?, req.param(3)?, lambda)?;
            Ingredient::Design(greedy_cover(&s, seed, restarts)?)
        }
        IngredientKind::MatchingFamily => Ingredient::Family(matching_family(req.param(0)?)?),
        IngredientKind::TripleFamily => Ingredient::Family(triple_family(req.param(0)?)?),
        IngredientKind::QuadFamily => {
            Ingredient::Family(quad_family(req.param(0)?, req.param(1)?, seed)?)
        }
        IngredientKind::PartComplement => Ingredient::Design(part_complement_cover(req.param(0)?)?),
        IngredientKind::FortHedlund => Ingredient::Count(fort_hedlund_size(req.param(0)?)?),
    })
}
