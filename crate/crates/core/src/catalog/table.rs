//! Comparison of catalog sizes against the bound formulas that apply to each spec.

use std::fmt::Write as _;
use std::str::FromStr;

use super::store::IndexEntry;
use crate::bounds::{evaluate_bound_with, thm54, two_partitionable_order, BoundFormula, CoverNumbers, FormulaId};
use crate::error::{invalid, Error, Result};
use crate::model::CoverSpec;

/// `v,k,t,m[,lambda]` where any field may be `*`. A missing lambda matches anything.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpecPattern(pub [Option<u32>; 5]);

impl SpecPattern {
    pub fn matches(&self, s: &CoverSpec) -> bool {
        let vals = [s.v, s.k, s.t, s.m, s.lambda];
        self.0.iter().zip(vals).all(|(p, x)| p.is_none_or(|p| p == x))
    }
}

impl FromStr for SpecPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let fields: Vec<&str> = inner.split(',').map(str::trim).collect();
        if !(4..=5).contains(&fields.len()) {
            return Err(invalid(format!("pattern `{s}` needs 4 or 5 fields")));
        }
        let mut out = [None; 5];
        for (slot, f) in out.iter_mut().zip(&fields) {
            if *f != "*" {
                *slot = Some(f.parse().map_err(|_| invalid(format!("bad pattern field `{f}`")))?);
            }
        }
        Ok(SpecPattern(out))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub spec: CoverSpec,
    pub best: u64,
    /// `(formula name, value)` for every formula that applies.
    pub bounds: Vec<(String, u64)>,
    /// `best` minus the smallest bound.
    pub delta: Option<i64>,
}

/// Bound formulas whose target is exactly `s`, evaluated with cover numbers from `numbers`.
pub fn applicable_bounds(s: &CoverSpec, numbers: &dyn CoverNumbers) -> Vec<(String, u64)> {
    let mut out = Vec::new();
    if s.lambda != 1 {
        return out;
    }
    let (v, k, t, m) = (s.v as u64, s.k as u64, s.t, s.m);
    if t == 4 && k % 2 == 0 && k >= 4 {
        let half = k / 2;
        let rows: &[(u64, u32, &[u32])] = &[(4, 5, &[1, 2]), (6, 6, &[3, 4]), (8, 6, &[5])];
        for &(mult, mm, cases) in rows {
            if m == mm && v == mult * half {
                for &c in cases {
                    let id = FormulaId::thm54(c).expect("valid case");
                    if let Ok(row) = thm54(id, half) {
                        out.push((id.name().to_string(), row.value));
                    }
                }
            }
        }
    }
    if t == 3 && k == 6 && m >= 4 && v % (m as u64 - 1) == 0 {
        let part = v / (m as u64 - 1);
        if two_partitionable_order(part) {
            let f = BoundFormula::new(FormulaId::TrapTriplesSqs).with("v", part).with("m", m as u64);
            if let Ok(x) = evaluate_bound_with(&f, numbers) {
                out.push((FormulaId::TrapTriplesSqs.name().to_string(), x));
            }
        }
    }
    if t == 4 && m == 6 && k == 5 && v % 4 == 0 {
        let f = BoundFormula::new(FormulaId::Construct546).with("v", v / 4);
        if let Ok(x) = evaluate_bound_with(&f, numbers) {
            out.push((FormulaId::Construct546.name().to_string(), x));
        }
    }
    out
}

pub fn catalog_table(entries: &[IndexEntry], filter: Option<&SpecPattern>, numbers: &dyn CoverNumbers) -> Vec<TableRow> {
    entries
        .iter()
        .filter(|e| filter.is_none_or(|f| f.matches(&e.spec)))
        .map(|e| {
            let bounds = applicable_bounds(&e.spec, numbers);
            let delta = bounds.iter().map(|b| b.1).min().map(|b| e.nblocks as i64 - b as i64);
            TableRow {
                spec: e.spec,
                best: e.nblocks,
                bounds,
                delta,
            }
        })
        .collect()
}

fn cells(r: &TableRow) -> [String; 4] {
    let bounds = if r.bounds.is_empty() {
        "-".to_string()
    } else {
        r.bounds.iter().map(|(n, x)| format!("{n}={x}")).collect::<Vec<_>>().join(",")
    };
    let delta = r.delta.map_or_else(|| "-".to_string(), |d| d.to_string());
    [r.spec.to_string(), r.best.to_string(), bounds, delta]
}

const HEADINGS: [&str; 4] = ["spec", "best", "bounds", "delta"];

/// Aligned plain text.
pub fn render_table_text(rows: &[TableRow]) -> String {
    let all: Vec<[String; 4]> = rows.iter().map(cells).collect();
    let mut width = HEADINGS.map(str::len);
    for row in &all {
        for (w, c) in width.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let mut out = String::new();
    let line = |out: &mut String, row: [&str; 4]| {
        let mut s = String::new();
        for (i, c) in row.iter().enumerate() {
            if i == 1 || i == 3 {
                write!(s, "{c:>w$}  ", w = width[i]).unwrap();
            } else {
                write!(s, "{c:<w$}  ", w = width[i]).unwrap();
            }
        }
        out.push_str(s.trim_end());
        out.push('\n');
    };
    line(&mut out, HEADINGS);
    for row in &all {
        line(&mut out, [&row[0], &row[1], &row[2], &row[3]]);
    }
    out
}

/// Tab-separated, one header line.
pub fn render_table_tsv(rows: &[TableRow]) -> String {
    let mut out = String::from("v\tk\tt\tm\tlambda\tbest\tbounds\tdelta\n");
    for r in rows {
        let c = cells(r);
        let s = r.spec;
        writeln!(out, "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}", s.v, s.k, s.t, s.m, s.lambda, c[1], c[2], c[3]).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::NoCovers;

    #[test]
    fn patterns() {
        let p: SpecPattern = "(12,*,*,*,1)".parse().unwrap();
        assert!(p.matches(&CoverSpec::lotto(12, 4, 4, 6).unwrap()));
        assert!(!p.matches(&CoverSpec::lotto(8, 4, 4, 5).unwrap()));
        assert!("1,2".parse::<SpecPattern>().is_err());
    }

    #[test]
    fn bounds_for_known_specs() {
        let b = |v, k, t, m| applicable_bounds(&CoverSpec::lotto(v, k, t, m).unwrap(), &NoCovers);
        assert_eq!(b(8, 4, 4, 5), vec![("THM54_CASE1".to_string(), 14)]);
        assert_eq!(b(18, 6, 4, 6), vec![("THM54_CASE3".to_string(), 42)]);
        assert_eq!(b(12, 4, 4, 6), vec![("THM54_CASE4".to_string(), 51)]);
        assert_eq!(b(12, 6, 3, 4), vec![("TRAP_TRIPLES_SQS".to_string(), 6)]);
        assert!(b(9, 4, 4, 5).is_empty());
    }

    #[test]
    fn empty_table() {
        assert!(catalog_table(&[], None, &NoCovers).is_empty());
        assert_eq!(render_table_tsv(&[]).lines().count(), 1);
    }
}
