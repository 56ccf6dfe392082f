//! The line-oriented design file.
//!
//! ```text
//! # format 1
//! # verified yes gencover 0.1.0
//! # provenance TRAP_QUADS_45 predicted=14 actual=14 inputs=...
//! cover 8 4 4 5 1 14
//! 0 1 2 3
//! 0 1 4 5 x2
//! ```
//!
//! Metadata lines are optional on input. Blocks are ascending point lists, one distinct
//! block per line in canonical order, with an `xN` suffix when the multiplicity exceeds one.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::block::Block;
use crate::constructions::ProvenanceRecord;
use crate::error::{Error, Result};
use crate::model::{CoverSpec, Design};
use crate::verify::{verify_general_cover_with, VerifyOptions};

pub const FORMAT_VERSION: u32 = 1;
pub const VERIFIER: &str = concat!("gencover ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Built(ProvenanceRecord),
    /// A factory output, e.g. `sts(7)`.
    Ingredient(String),
    Imported,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DesignFile {
    pub format_version: u32,
    pub spec: CoverSpec,
    pub design: Design,
    pub provenance: Provenance,
    pub verified: bool,
    /// Verifier that vouched for the file, empty when unverified.
    pub verifier: String,
}

impl DesignFile {
    /// Verifies `design` against `spec` and wraps it.
    pub fn verified(
        design: Design,
        spec: CoverSpec,
        provenance: Provenance,
        opts: &VerifyOptions,
    ) -> Result<DesignFile> {
        check_shape(&design, &spec)?;
        verify_general_cover_with(&design, &spec, opts)?.into_result(format!("design {spec}"))?;
        Ok(DesignFile {
            format_version: FORMAT_VERSION,
            spec,
            design,
            provenance,
            verified: true,
            verifier: VERIFIER.to_string(),
        })
    }

    pub fn len(&self) -> u64 {
        self.design.len()
    }

    pub fn is_empty(&self) -> bool {
        self.design.is_empty()
    }
}

fn check_shape(d: &Design, s: &CoverSpec) -> Result<()> {
    if d.v() != s.v || d.k() != s.k {
        return Err(Error::SpecMismatch(format!(
            "design has v = {}, k = {}, spec is {s}",
            d.v(),
            d.k()
        )));
    }
    Ok(())
}

pub fn render_design_file(f: &DesignFile) -> String {
    let mut out = String::new();
    let s = &f.spec;
    writeln!(out, "# format {}", f.format_version).unwrap();
    if f.verified {
        writeln!(out, "# verified yes {}", f.verifier).unwrap();
    } else {
        writeln!(out, "# verified no").unwrap();
    }
    match &f.provenance {
        Provenance::Built(p) => writeln!(out, "# provenance {p}").unwrap(),
        Provenance::Ingredient(what) => writeln!(out, "# provenance ingredient {what}").unwrap(),
        Provenance::Imported => writeln!(out, "# provenance imported").unwrap(),
    }
    writeln!(out, "cover {} {} {} {} {} {}", s.v, s.k, s.t, s.m, s.lambda, f.design.len()).unwrap();
    for &(b, mult) in f.design.entries() {
        let pts: Vec<String> = b.points().map(|p| p.to_string()).collect();
        out.push_str(&pts.join(" "));
        if mult > 1 {
            write!(out, " x{mult}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn parse_design_file(text: &str) -> Result<DesignFile> {
    let err = |line: usize, msg: String| Error::Parse { line, msg };
    let mut format_version = FORMAT_VERSION;
    let mut verified = false;
    let mut verifier = String::new();
    let mut provenance = Provenance::Imported;
    let mut header: Option<(CoverSpec, u64)> = None;
    let mut blocks: Vec<(Block, u32)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let line = raw.trim_end_matches('\r').trim();
        if line.is_empty() {
            continue;
        }
        if let Some(meta) = line.strip_prefix('#') {
            if header.is_some() {
                return Err(err(n, "metadata after the header".into()));
            }
            let meta = meta.trim();
            let (key, rest) = meta.split_once(' ').unwrap_or((meta, ""));
            match key {
                "format" => {
                    format_version = rest.trim().parse().map_err(|_| err(n, format!("bad format version `{rest}`")))?;
                    if format_version != FORMAT_VERSION {
                        return Err(err(n, format!("unsupported format version {format_version}")));
                    }
                }
                "verified" => {
                    let (flag, who) = rest.split_once(' ').unwrap_or((rest, ""));
                    verified = match flag {
                        "yes" => true,
                        "no" => false,
                        _ => return Err(err(n, format!("bad verified flag `{flag}`"))),
                    };
                    verifier = who.trim().to_string();
                }
                "provenance" => {
                    provenance = match rest.trim() {
                        "imported" => Provenance::Imported,
                        p if p.starts_with("ingredient ") => Provenance::Ingredient(p["ingredient ".len()..].trim().to_string()),
                        p => Provenance::Built(p.parse().map_err(|e: Error| err(n, e.to_string()))?),
                    };
                }
                _ => {}
            }
            continue;
        }
        match header {
            None => {
                let words: Vec<&str> = line.split_whitespace().collect();
                if words.first() != Some(&"cover") || words.len() != 7 {
                    return Err(err(n, "expected `cover v k t m lambda nblocks`".into()));
                }
                let nums: Vec<u64> = words[1..]
                    .iter()
                    .map(|w| w.parse::<u64>().map_err(|_| err(n, format!("bad number `{w}`"))))
                    .collect::<Result<_>>()?;
                let as32 = |x: u64| u32::try_from(x).map_err(|_| err(n, format!("{x} out of range")));
                let spec = CoverSpec::new(as32(nums[0])?, as32(nums[1])?, as32(nums[2])?, as32(nums[3])?, as32(nums[4])?)
                    .map_err(|e| err(n, e.to_string()))?;
                header = Some((spec, nums[5]));
            }
            Some((spec, _)) => blocks.push(parse_block(line, &spec).map_err(|msg| err(n, msg))?),
        }
    }
    let last = text.lines().count().max(1);
    let (spec, count) = header.ok_or_else(|| err(last, "missing `cover` header".into()))?;
    let design = Design::with_multiplicities(spec.v, spec.k, blocks).map_err(|e| err(last, e.to_string()))?;
    if design.len() != count {
        return Err(err(last, format!("header announces {count} blocks, file has {}", design.len())));
    }
    Ok(DesignFile {
        format_version,
        spec,
        design,
        provenance,
        verified,
        verifier,
    })
}

fn parse_block(line: &str, spec: &CoverSpec) -> std::result::Result<(Block, u32), String> {
    let mut words: Vec<&str> = line.split_whitespace().collect();
    let mut mult = 1;
    if let Some(last) = words.last() {
        if let Some(m) = last.strip_prefix('x') {
            mult = m.parse::<u32>().map_err(|_| format!("bad multiplicity `{last}`"))?;
            if mult == 0 {
                return Err("multiplicity must be at least 1".into());
            }
            words.pop();
        }
    }
    let mut b = Block::EMPTY;
    for w in words {
        let p: u32 = w.parse().map_err(|_| format!("bad point `{w}`"))?;
        if p >= spec.v {
            return Err(format!("point {p} is out of range for v = {}", spec.v));
        }
        if b.contains(p) {
            return Err(format!("point {p} appears twice in one block"));
        }
        b = b.with(p);
    }
    if b.len() != spec.k {
        return Err(format!("block has {} points, expected {}", b.len(), spec.k));
    }
    Ok((b, mult))
}

/// Verifies and writes `d`.
pub fn export_design(
    d: &Design,
    s: &CoverSpec,
    p: Option<&ProvenanceRecord>,
    path: &Path,
    opts: &VerifyOptions,
) -> Result<DesignFile> {
    let provenance = p.map_or(Provenance::Imported, |p| Provenance::Built(p.clone()));
    let file = DesignFile::verified(d.clone(), *s, provenance, opts)?;
    write_design_file(&file, path)?;
    Ok(file)
}

pub fn write_design_file(f: &DesignFile, path: &Path) -> Result<()> {
    fs::write(path, render_design_file(f))?;
    Ok(())
}

/// Reads and re-verifies a file. With `trust` the check is skipped and the result is
/// marked unverified.
pub fn import_design(path: &Path, trust: bool, opts: &VerifyOptions) -> Result<DesignFile> {
    let text = fs::read_to_string(path)?;
    let mut f = parse_design_file(&text)?;
    if trust {
        f.verified = false;
        f.verifier.clear();
        return Ok(f);
    }
    verify_general_cover_with(&f.design, &f.spec, opts)?.into_result(format!("{} {}", path.display(), f.spec))?;
    f.verified = true;
    f.verifier = VERIFIER.to_string();
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::make_design;

    #[test]
    fn multiplicity_suffix() {
        let d = make_design(4, 4, &[vec![0, 1, 2, 3], vec![0, 1, 2, 3]]).unwrap();
        let f = DesignFile::verified(d, CoverSpec::covering(4, 4, 4).unwrap(), Provenance::Imported, &VerifyOptions::default()).unwrap();
        let text = render_design_file(&f);
        assert!(text.ends_with("cover 4 4 4 4 1 2\n0 1 2 3 x2\n"));
        assert_eq!(parse_design_file(&text).unwrap(), f);
    }

    #[test]
    fn parse_errors_name_lines() {
        let e = parse_design_file("cover 4 2 1 1 1 2\n0 1\n2 2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e:?}");
        let e = parse_design_file("0 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
        let e = parse_design_file("cover 4 2 1 1 1 3\n0 1\n2 3\n").unwrap_err();
        assert!(e.to_string().contains("announces 3"));
        let e = parse_design_file("cover 4 2 1 1 1 1\n0 9\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn bare_files_parse_as_unverified_imports() {
        let f = parse_design_file("cover 3 2 1 1 1 2\n0 1\n1 2\n").unwrap();
        assert!(!f.verified);
        assert_eq!(f.provenance, Provenance::Imported);
        assert_eq!(f.design.len(), 2);
    }
}
