mod common;

use common::{data_dir, oracle_cover_number, oracle_passes};
use gencover::catalog::{parse_design_file, Provenance};
use gencover::constructions::{
    auto_construct_546, auto_splice_coverings, auto_trap_quads_45, auto_trap_quads_46, auto_trap_triples,
    splice_445, splice_parts, trapping_triples_sqs, NoDesigns, ProvenanceRecord,
};
use gencover::ingredients::greedy_cover;
use gencover::{CoverSpec, Error, SpliceVariant, VerifyOptions};

fn opts() -> VerifyOptions {
    VerifyOptions::default()
}

#[test]
fn auto_builds_match_golden_files() {
    let cases = [
        ("c8_4_4_5.cov", auto_trap_quads_45(4, &NoDesigns, 0, &opts()).unwrap().0),
        ("c18_6_4_6.cov", auto_trap_quads_46(6, 3, false, &NoDesigns, 0, &opts()).unwrap().0),
        ("c12_4_4_6.cov", auto_trap_quads_46(4, 3, false, &NoDesigns, 0, &opts()).unwrap().0),
    ];
    for (name, c) in cases {
        let text = std::fs::read_to_string(data_dir().join(name)).unwrap();
        let f = parse_design_file(&text).unwrap();
        assert_eq!(f.design, c.design, "{name}");
        assert_eq!(f.spec, c.spec, "{name}");
        assert_eq!(f.provenance, Provenance::Built(c.provenance.clone()), "{name}");
        assert_eq!(c.provenance.predicted_size, Some(c.provenance.actual_size));
    }
}

#[test]
fn unimproved_quads_use_four_coverings() {
    let (c, _) = auto_trap_quads_46(4, 3, true, &NoDesigns, 0, &opts()).unwrap();
    assert!(oracle_passes(&c.design, 4, 6, 1));
    assert!(c.design.len() > 51);
    assert!(c.provenance.predicted_size.is_some_and(|p| c.design.len() <= p));
}

#[test]
fn trapping_triples_sqs_sizes() {
    let c = trapping_triples_sqs(4, 5, &opts()).unwrap();
    assert_eq!(c.design.len(), 8);
    assert!(oracle_passes(&c.design, 3, 5, 1));
    assert!(matches!(trapping_triples_sqs(5, 4, &opts()), Err(Error::InvalidParameter(_))));
}

#[test]
fn auto_trapping_triples_verify() {
    for v in [12, 14] {
        let (c, _) = auto_trap_triples(v, 4, 0, &opts()).unwrap();
        assert_eq!(c.spec, CoverSpec::lotto(v, 6, 3, 4).unwrap());
        assert!(oracle_passes(&c.design, 3, 4, 1));
    }
    assert!(auto_trap_triples(10, 4, 0, &opts()).is_err());
}

#[test]
fn splice_445_meets_its_bound() {
    let base = greedy_cover(&CoverSpec::lotto(9, 5, 4, 5).unwrap(), 0, 8).unwrap();
    let parts = splice_parts(&base, SpliceVariant::Five, &[2, 2, 2, 2]).unwrap();
    let cov = auto_splice_coverings(SpliceVariant::Five, 5, &parts, &NoDesigns, 0).unwrap();
    let c = splice_445(&base, &parts, &cov.value, &opts()).unwrap();
    assert_eq!(c.spec, CoverSpec::lotto(12, 5, 4, 5).unwrap());
    assert!(oracle_passes(&c.design, 4, 5, 1));
    assert!(c.provenance.predicted_size.is_some_and(|p| c.design.len() <= p));
}

#[test]
fn splice_parts_must_fill_the_base() {
    let base = greedy_cover(&CoverSpec::lotto(9, 5, 4, 5).unwrap(), 0, 8).unwrap();
    assert!(splice_parts(&base, SpliceVariant::Five, &[2, 2, 2]).is_err());
    assert!(splice_parts(&base, SpliceVariant::Five, &[2, 2, 2, 3]).is_err());
}

// The four-part bound at parts of 6 assumes a 3-block (6,5,4) covering. No such covering
// exists: the complements of the blocks must meet every pair of 6 points, i.e. be a vertex
// cover of K6, which needs 5 vertices.
#[test]
fn four_part_at_24_points_gives_552() {
    assert_eq!(oracle_cover_number(6, 5, 4, 4), 5);
    assert_eq!(oracle_cover_number(6, 5, 4, 5), 1);
    let (c, _) = auto_construct_546(24, &NoDesigns, 0, &opts()).unwrap();
    assert_eq!(c.design.len(), 552);
    assert_eq!(c.provenance.predicted_size, Some(552));
}

#[test]
fn provenance_lines_round_trip() {
    let (c, _) = auto_trap_quads_46(6, 3, false, &NoDesigns, 0, &opts()).unwrap();
    let line = c.provenance.to_string();
    assert_eq!(line.parse::<ProvenanceRecord>().unwrap(), c.provenance);
    assert!("NOT_A_CONSTRUCTION actual=3".parse::<ProvenanceRecord>().is_err());
}
