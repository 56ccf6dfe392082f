mod common;

use common::{oracle_counterexample, plain_blocks};
use gencover::catalog::{parse_design_file, render_design_file, DesignFile, Provenance};
use gencover::ingredients::{greedy_cover, r_table, resolvable_pair_covering};
use gencover::verify::{verify_general_cover_with, verify_resolution};
use gencover::{complement_design, make_design, CoverSpec, Design, VerifyOptions};
use proptest::prelude::*;
use proptest::sample::subsequence;

/// A random design on `v` points with blocks of size `k`, repeats allowed.
fn design() -> impl Strategy<Value = Design> {
    (4u32..=9)
        .prop_flat_map(|v| (Just(v), 1..v))
        .prop_flat_map(|(v, k)| {
            let block = subsequence((0..v).collect::<Vec<u32>>(), k as usize);
            (Just(v), Just(k), prop::collection::vec(block, 1..12))
        })
        .prop_map(|(v, k, blocks)| make_design(v, k, &blocks).unwrap())
}

fn check(d: &Design, s: &CoverSpec) -> bool {
    verify_general_cover_with(d, s, &VerifyOptions::serial()).unwrap().is_pass()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn verifier_matches_oracle(d in design(), tm in (1u32..=4, 0u32..=3), lambda in 1u32..=3) {
        let t = tm.0.min(d.k());
        let m = (t + tm.1).min(d.v());
        let s = CoverSpec::new(d.v(), d.k(), t, m, lambda).unwrap();
        let verdict = verify_general_cover_with(&d, &s, &VerifyOptions::serial()).unwrap();
        let want = oracle_counterexample(&plain_blocks(&d), d.v(), t, m, lambda);
        prop_assert_eq!(verdict.counterexample, want);
    }

    #[test]
    fn monotone_reduction(d in design(), t in 2u32..=4, extra in 0u32..=3) {
        let t = t.min(d.k());
        prop_assume!(t >= 2);
        let m = (t + extra).min(d.v());
        if check(&d, &CoverSpec::lotto(d.v(), d.k(), t, m).unwrap()) {
            prop_assert!(check(&d, &CoverSpec::lotto(d.v(), d.k(), t - 1, m - 1).unwrap()));
        }
    }

    #[test]
    fn complement_duality(d in design(), t in 1u32..=4) {
        let (v, k) = (d.v(), d.k());
        let t = t.min(k);
        let cover = check(&d, &CoverSpec::covering(v, k, t).unwrap());
        let turan = check(&complement_design(&d).unwrap(), &CoverSpec::new(v, v - k, v - k, v - t, 1).unwrap());
        prop_assert_eq!(cover, turan);
    }

    #[test]
    fn verdicts_do_not_depend_on_threads(d in design(), t in 1u32..=3) {
        let s = CoverSpec::covering(d.v(), d.k(), t.min(d.k())).unwrap();
        let one = verify_general_cover_with(&d, &s, &VerifyOptions::serial()).unwrap();
        let many = verify_general_cover_with(&d, &s, &VerifyOptions { threads: Some(4), force: false }).unwrap();
        prop_assert_eq!(one, many);
    }

    #[test]
    fn greedy_is_deterministic_and_valid(v in 5u32..=9, k in 2u32..=4, t in 1u32..=3, seed in any::<u64>()) {
        let s = CoverSpec::covering(v, k, t.min(k)).unwrap();
        let a = greedy_cover(&s, seed, 2).unwrap();
        prop_assert_eq!(&a, &greedy_cover(&s, seed, 2).unwrap());
        prop_assert!(check(&a, &s));
    }

    #[test]
    fn design_files_round_trip(d in design()) {
        let s = CoverSpec::covering(d.v(), d.k(), 1).unwrap();
        prop_assume!(check(&d, &s));
        let f = DesignFile::verified(d, s, Provenance::Imported, &VerifyOptions::serial()).unwrap();
        prop_assert_eq!(parse_design_file(&render_design_file(&f)).unwrap(), f);
    }
}

#[test]
fn resolvable_pair_coverings_have_r_classes() {
    for q in 2..=4 {
        for k in 2..=6 {
            let r = resolvable_pair_covering(q, k).unwrap();
            assert_eq!(r.p() as u32, r_table(q, k).unwrap(), "r({q},{k})");
            assert_eq!((r.v(), r.q() as u32, r.block_size()), (q * k, q, k));
            assert!(verify_resolution(&r, 2).unwrap().is_pass(), "r({q},{k})");
        }
    }
}
