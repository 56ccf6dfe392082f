//! The construction families. Each consumes verified ingredients, emits a design with a
//! provenance record, and verifies the output against its target spec before returning.
//!
//! Ingredients are given on their own `0..n` point sets and mapped onto the target ground
//! set in ascending order.

mod auto;
mod four_part;
mod splice;
mod trapping;

use std::fmt;
use std::str::FromStr;

pub use auto::{
    auto_construct_546, auto_splice_coverings, auto_trap_quads_45, auto_trap_quads_46,
    auto_trap_triples, resolve_cover, splice_parts, DesignSource, NoDesigns, Resolved,
};
pub use four_part::construct_546;
pub use splice::{min_degree_point, splice_445, splice_446, splice_general};
pub use trapping::{trapping_quads_45, trapping_quads_46, trapping_triples, trapping_triples_sqs};

use crate::block::Block;
use crate::error::{invalid, Error, Result};
use crate::model::{CoverSpec, Design};
use crate::verify::{verify_general_cover_with, VerifyOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstructionId {
    SpliceGeneral,
    Splice446,
    Splice445,
    TrapTriples,
    TrapTriplesSqs,
    TrapQuads46,
    TrapQuads45,
    Construct546,
}

impl ConstructionId {
    pub const ALL: [ConstructionId; 8] = [
        ConstructionId::SpliceGeneral,
        ConstructionId::Splice446,
        ConstructionId::Splice445,
        ConstructionId::TrapTriples,
        ConstructionId::TrapTriplesSqs,
        ConstructionId::TrapQuads46,
        ConstructionId::TrapQuads45,
        ConstructionId::Construct546,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConstructionId::SpliceGeneral => "SPLICE_GENERAL",
            ConstructionId::Splice446 => "SPLICE_446",
            ConstructionId::Splice445 => "SPLICE_445",
            ConstructionId::TrapTriples => "TRAP_TRIPLES",
            ConstructionId::TrapTriplesSqs => "TRAP_TRIPLES_SQS",
            ConstructionId::TrapQuads46 => "TRAP_QUADS_46",
            ConstructionId::TrapQuads45 => "TRAP_QUADS_45",
            ConstructionId::Construct546 => "CONSTRUCT_546",
        }
    }
}

impl fmt::Display for ConstructionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConstructionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        ConstructionId::ALL
            .into_iter()
            .find(|c| c.name() == norm)
            .ok_or_else(|| invalid(format!("unknown construction `{s}`")))
    }
}

/// One consumed ingredient: what it is, its parameters and its block count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputRecord {
    pub kind: String,
    pub params: Vec<u64>,
    pub blocks: u64,
}

impl InputRecord {
    pub fn new(kind: impl Into<String>, params: &[u64], blocks: u64) -> Self {
        InputRecord {
            kind: kind.into(),
            params: params.to_vec(),
            blocks,
        }
    }
}

impl fmt::Display for InputRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params.iter().map(u64::to_string).collect();
        write!(f, "{}({}):{}", self.kind, params.join(","), self.blocks)
    }
}

impl FromStr for InputRecord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || invalid(format!("bad input record `{s}`"));
        let (head, blocks) = s.rsplit_once(':').ok_or_else(bad)?;
        let (kind, rest) = head.split_once('(').ok_or_else(bad)?;
        let inner = rest.strip_suffix(')').ok_or_else(bad)?;
        let params = if inner.is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|p| p.parse::<u64>().map_err(|_| bad()))
                .collect::<Result<_>>()?
        };
        if kind.is_empty() || kind.contains(char::is_whitespace) {
            return Err(bad());
        }
        Ok(InputRecord {
            kind: kind.to_string(),
            params,
            blocks: blocks.parse().map_err(|_| bad())?,
        })
    }
}

/// Where a design came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProvenanceRecord {
    pub construction: ConstructionId,
    pub inputs: Vec<InputRecord>,
    /// The bound formula evaluated on these inputs, when one applies.
    pub predicted_size: Option<u64>,
    pub actual_size: u64,
}

impl fmt::Display for ProvenanceRecord {
    /// One line: `NAME predicted=N actual=N inputs=a(1,2):3;b():1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let predicted = self
            .predicted_size
            .map_or_else(|| "-".to_string(), |p| p.to_string());
        let inputs: Vec<String> = self.inputs.iter().map(InputRecord::to_string).collect();
        write!(
            f,
            "{} predicted={} actual={} inputs={}",
            self.construction,
            predicted,
            self.actual_size,
            inputs.join(";")
        )
    }
}

impl FromStr for ProvenanceRecord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || invalid(format!("bad provenance `{s}`"));
        let mut words = s.split_whitespace();
        let construction = words.next().ok_or_else(bad)?.parse()?;
        let mut field = |name: &str| -> Result<String> {
            words
                .next()
                .and_then(|w| w.strip_prefix(name))
                .and_then(|w| w.strip_prefix('='))
                .map(str::to_string)
                .ok_or_else(bad)
        };
        let predicted = field("predicted")?;
        let actual = field("actual")?;
        let inputs = field("inputs")?;
        if words.next().is_some() {
            return Err(bad());
        }
        Ok(ProvenanceRecord {
            construction,
            predicted_size: match predicted.as_str() {
                "-" => None,
                p => Some(p.parse().map_err(|_| bad())?),
            },
            actual_size: actual.parse().map_err(|_| bad())?,
            inputs: if inputs.is_empty() {
                Vec::new()
            } else {
                inputs.split(';').map(str::parse).collect::<Result<_>>()?
            },
        })
    }
}

/// A verified construction output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Construction {
    pub design: Design,
    pub spec: CoverSpec,
    pub provenance: ProvenanceRecord,
}

/// Verifies `blocks` against `spec` and packages the result.
fn finish(
    blocks: Vec<Block>,
    spec: CoverSpec,
    construction: ConstructionId,
    inputs: Vec<InputRecord>,
    predicted_size: Option<u64>,
    opts: &VerifyOptions,
) -> Result<Construction> {
    let design = Design::new(spec.v, spec.k, blocks)?;
    verify_general_cover_with(&design, &spec, opts)?.into_result(format!("{construction} output {spec}"))?;
    let actual_size = design.len();
    if let Some(p) = predicted_size {
        if actual_size > p {
            return Err(invalid(format!(
                "{construction} produced {actual_size} blocks, above its bound {p}"
            )));
        }
    }
    Ok(Construction {
        design,
        spec,
        provenance: ProvenanceRecord {
            construction,
            inputs,
            predicted_size,
            actual_size,
        },
    })
}

/// Checks `d` against `spec`, naming `what` on failure.
fn require(d: &Design, spec: &CoverSpec, what: &str, opts: &VerifyOptions) -> Result<()> {
    if d.v() != spec.v || d.k() != spec.k {
        return Err(Error::SpecMismatch(format!(
            "{what} has v = {}, k = {}, expected {spec}",
            d.v(),
            d.k()
        )));
    }
    verify_general_cover_with(d, spec, opts)?.into_result(format!("{what} {spec}"))
}

/// Maps local point `i` to `part[i]`.
fn lift(blocks: &[Block], part: &[u32]) -> Vec<Block> {
    blocks.iter().map(|b| b.relabel(part)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn provenance_round_trip() {
        let p = ProvenanceRecord {
            construction: ConstructionId::TrapQuads45,
            inputs: vec![
                InputRecord::new("one-factorization", &[4], 6),
                InputRecord::new("affine-93", &[], 12),
            ],
            predicted_size: Some(14),
            actual_size: 14,
        };
        let line = p.to_string();
        assert_eq!(
            line,
            "TRAP_QUADS_45 predicted=14 actual=14 inputs=one-factorization(4):6;affine-93():12"
        );
        assert_eq!(line.parse::<ProvenanceRecord>().unwrap(), p);
        let none = ProvenanceRecord {
            inputs: vec![],
            predicted_size: None,
            ..p
        };
        assert_eq!(none.to_string().parse::<ProvenanceRecord>().unwrap(), none);
        assert!("TRAP_QUADS_45 actual=3".parse::<ProvenanceRecord>().is_err());
    }
}
