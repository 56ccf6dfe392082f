mod common;

use std::fs;

use common::{data_dir, GOLDEN};
use gencover::bounds::CoverNumbers;
use gencover::catalog::{
    catalog_table, export_design, import_design, parse_design_file, render_design_file, render_table_tsv, Catalog,
    DesignFile, InsertOutcome, Provenance, SpecPattern,
};
use gencover::constructions::{resolve_cover, DesignSource};
use gencover::ingredients::greedy_cover;
use gencover::{make_design, CoverSpec, Error, VerifyOptions};

fn opts() -> VerifyOptions {
    VerifyOptions::default()
}

fn golden(name: &str) -> DesignFile {
    parse_design_file(&fs::read_to_string(data_dir().join(name)).unwrap()).unwrap()
}

#[test]
fn golden_files_round_trip_through_export() {
    let dir = tempfile::tempdir().unwrap();
    for name in GOLDEN {
        let text = fs::read_to_string(data_dir().join(name)).unwrap();
        let f = parse_design_file(&text).unwrap();
        assert!(f.verified);
        let Provenance::Built(p) = &f.provenance else { panic!("{name} lacks provenance") };
        let out = dir.path().join(name);
        export_design(&f.design, &f.spec, Some(p), &out, &opts()).unwrap();
        assert_eq!(fs::read_to_string(&out).unwrap(), text);
        assert_eq!(import_design(&out, false, &opts()).unwrap(), f);
    }
}

#[test]
fn import_rejects_a_broken_cover_unless_trusted() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.cov");
    fs::write(&path, "cover 4 2 2 2 1 1\n0 1\n").unwrap();
    assert!(matches!(import_design(&path, false, &opts()), Err(Error::VerificationFailed { .. })));
    let f = import_design(&path, true, &opts()).unwrap();
    assert!(!f.verified);
    assert!(render_design_file(&f).contains("# verified no"));
}

#[test]
fn insert_keeps_only_smaller_designs() {
    let dir = tempfile::tempdir().unwrap();
    let cat = Catalog::open(dir.path()).unwrap();
    let spec = CoverSpec::covering(6, 3, 2).unwrap();
    let big = DesignFile::verified(greedy_cover(&spec, 1, 1).unwrap(), spec, Provenance::Imported, &opts()).unwrap();
    let all: Vec<Vec<u32>> = common::subsets(6, 3);
    let huge = DesignFile::verified(make_design(6, 3, &all).unwrap(), spec, Provenance::Imported, &opts()).unwrap();

    assert_eq!(cat.insert(&huge).unwrap(), InsertOutcome::Inserted);
    assert_eq!(cat.insert(&big).unwrap(), InsertOutcome::Replaced(20));
    assert_eq!(cat.insert(&huge).unwrap(), InsertOutcome::Kept(big.len()));
    assert_eq!(cat.insert(&big).unwrap(), InsertOutcome::Kept(big.len()));

    assert_eq!(cat.cover_number(&spec), Some(big.len()));
    assert_eq!(cat.best_design(&spec), Some(big.design.clone()));
    let history: Vec<_> = fs::read_dir(dir.path().join("6-3-2-2-1/history")).unwrap().collect();
    assert_eq!(history.len(), 1);
    let index = fs::read_to_string(dir.path().join("index.tsv")).unwrap();
    assert_eq!(index.lines().nth(1).unwrap(), format!("6\t3\t2\t2\t1\t{}\t6-3-2-2-1/best.cov", big.len()));
    assert!(!dir.path().join("catalog.lock").exists());
}

#[test]
fn unverified_files_are_refused() {
    let dir = tempfile::tempdir().unwrap();
    let cat = Catalog::open(dir.path()).unwrap();
    let mut f = golden("c8_4_4_5.cov");
    f.verified = false;
    assert!(cat.insert(&f).is_err());
    assert!(cat.entries().unwrap().is_empty());
}

#[test]
fn concurrent_inserts_serialize() {
    let dir = tempfile::tempdir().unwrap();
    let files: Vec<DesignFile> = GOLDEN.iter().map(|n| golden(n)).collect();
    std::thread::scope(|s| {
        for f in &files {
            let root = dir.path().to_path_buf();
            s.spawn(move || Catalog::open(root).unwrap().insert(f).unwrap());
        }
    });
    let cat = Catalog::open(dir.path()).unwrap();
    assert_eq!(cat.entries().unwrap().len(), 3);
    assert_eq!(cat.regenerate_index().unwrap().len(), 3);
}

#[test]
fn catalog_feeds_resolution_and_table() {
    let dir = tempfile::tempdir().unwrap();
    let cat = Catalog::open(dir.path()).unwrap();
    for name in GOLDEN {
        cat.insert(&golden(name)).unwrap();
    }
    let spec = CoverSpec::lotto(12, 4, 4, 6).unwrap();
    let r = resolve_cover(&spec, &cat, 0).unwrap();
    assert_eq!(r.value.len(), 51);
    assert!(r.path.contains("catalog"), "{}", r.path);

    let rows = catalog_table(&cat.entries().unwrap(), None, &cat);
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r.delta == Some(0)));
    let filter: SpecPattern = "*,4,*,*".parse().unwrap();
    let tsv = render_table_tsv(&catalog_table(&cat.entries().unwrap(), Some(&filter), &cat));
    assert_eq!(tsv.lines().count(), 3);
}
