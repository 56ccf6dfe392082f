//! Acceptance run: one PASS/FAIL/SKIP line per criterion, nonzero exit if any fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::{oracle_counterexample, oracle_passes, plain_blocks, GOLDEN};
use gencover::bounds::{evaluate_bound, BoundFormula, FormulaId};
use gencover::catalog::{parse_design_file, render_design_file, DesignFile, Provenance};
use gencover::constructions::{
    auto_construct_546, auto_splice_coverings, splice_446, splice_general, splice_parts, trapping_quads_45,
    trapping_quads_46, trapping_triples_sqs, NoDesigns,
};
use gencover::ingredients::{
    affine_93, boolean_sqs, greedy_cover, one_factorization, part_complement_cover, two_partition_sqs,
};
use gencover::{
    complement_design, make_design, verify_general_cover, verify_t_design, CoverSpec, Design, Error, PartitionSpec,
    SpliceVariant, VerifyOptions,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

enum Outcome {
    Pass(String),
    Fail(String),
    Skip(String),
}

type Check = Result<Outcome, Error>;
type Criterion = (&'static str, fn() -> Check);

fn ok(cond: bool, detail: String) -> Outcome {
    if cond {
        Outcome::Pass(detail)
    } else {
        Outcome::Fail(detail)
    }
}

fn passes(d: &Design, s: &CoverSpec) -> Result<bool, Error> {
    Ok(verify_general_cover(d, s)?.is_pass())
}

fn halves(n: u32) -> PartitionSpec {
    PartitionSpec::new(2 * n, vec![(0..n).collect(), (n..2 * n).collect()]).unwrap()
}

fn a1_design() -> Result<Design, Error> {
    let f = one_factorization(4)?;
    let trivial = make_design(4, 4, &[vec![0, 1, 2, 3]])?;
    let c = trapping_quads_45(&halves(4), &f, &f, [&trivial, &trivial], &VerifyOptions::default())?;
    Ok(c.design)
}

fn a1() -> Check {
    let d = a1_design()?;
    let s = CoverSpec::lotto(8, 4, 4, 5)?;
    let verified = passes(&d, &s)? && oracle_passes(&d, 4, 5, 1);
    let self_dual = complement_design(&d)? == d;
    Ok(ok(
        verified && d.len() == 14 && self_dual,
        format!("(8,4,4,5,1) verified={verified} blocks={} (want 14) self-complementary={self_dual}", d.len()),
    ))
}

fn a2() -> Check {
    let classes = affine_93()?;
    let half = part_complement_cover(3)?;
    let c = trapping_quads_46(&halves(9), &classes, &classes, [&half, &half], false, &VerifyOptions::default())?;
    let verified = passes(&c.design, &CoverSpec::lotto(18, 6, 4, 6)?)?;
    Ok(ok(
        verified && c.design.len() == 42 && half.len() == 3,
        format!("(18,6,4,6,1) verified={verified} blocks={} (want 42)", c.design.len()),
    ))
}

fn a3() -> Check {
    let classes = one_factorization(6)?;
    let half = part_complement_cover(2)?;
    let half_ok = half.len() == 3 && passes(&half, &CoverSpec::lotto(6, 4, 4, 5)?)?;
    let c = trapping_quads_46(&halves(6), &classes, &classes, [&half, &half], false, &VerifyOptions::default())?;
    let verified = passes(&c.design, &CoverSpec::lotto(12, 4, 4, 6)?)? && oracle_passes(&c.design, 4, 6, 1);
    Ok(ok(
        half_ok && verified && c.design.len() == 51,
        format!("(12,4,4,6,1) verified={verified} blocks={} (want 51)", c.design.len()),
    ))
}

fn a4() -> Check {
    let c = trapping_triples_sqs(4, 4, &VerifyOptions::default())?;
    let s = CoverSpec::lotto(12, 6, 3, 4)?;
    let verified = passes(&c.design, &s)? && oracle_passes(&c.design, 3, 4, 1);
    let mut minimal = true;
    for b in c.design.blocks() {
        let smaller = c.design.without_one(b);
        minimal &= !passes(&smaller, &s)? && !oracle_passes(&smaller, 3, 4, 1);
    }
    Ok(ok(
        verified && minimal && c.design.len() == 6,
        format!("(12,6,3,4,1) verified={verified} blocks={} (want 6) every deletion fails={minimal}", c.design.len()),
    ))
}

fn a5() -> Check {
    let base = a1_design()?;
    let base_spec = CoverSpec::lotto(8, 4, 4, 5)?;
    // A triangle plus a K4; the complement K(3,4) has no triangle.
    let aux = make_design(
        7,
        2,
        &[
            vec![0, 1],
            vec![0, 2],
            vec![1, 2],
            vec![3, 4],
            vec![3, 5],
            vec![3, 6],
            vec![4, 5],
            vec![4, 6],
            vec![5, 6],
        ],
    )?;
    let aux_ok = aux.len() == 9 && oracle_passes(&aux, 2, 3, 1);
    let c = splice_general(&base, &base_spec, &aux, 1, None, &VerifyOptions::default())?;
    let verified = passes(&c.design, &CoverSpec::lotto(9, 4, 4, 5)?)? && oracle_passes(&c.design, 4, 5, 1);
    let bound = evaluate_bound(
        &BoundFormula::new(FormulaId::SpliceGeneral)
            .with("v", 8)
            .with("n", 1)
            .with("k", 4)
            .with("t", 4)
            .with("m", 5)
            .with("lambda", 1)
            .with_cover(base_spec, 14)
            .with_cover(CoverSpec::lotto(7, 2, 2, 3)?, 9),
    )?;
    Ok(ok(
        aux_ok && verified && c.design.len() <= 30 && bound == 30,
        format!("(9,4,4,5,1) verified={verified} blocks={} (want <= 30) bound={bound} (want 30)", c.design.len()),
    ))
}

fn a6() -> Check {
    let base = greedy_cover(&CoverSpec::lotto(13, 6, 4, 6)?, 0, 8)?;
    let parts = splice_parts(&base, SpliceVariant::Six, &[2, 2, 2, 2, 2, 2])?;
    let cov = auto_splice_coverings(SpliceVariant::Six, 6, &parts, &NoDesigns, 0)?;
    let c = splice_446(&base, &parts, &cov.value, &VerifyOptions::default())?;
    let verified = passes(&c.design, &CoverSpec::lotto(16, 6, 4, 6)?)?;
    let predicted = c.provenance.predicted_size;
    Ok(ok(
        verified && predicted == Some(c.design.len()),
        format!(
            "(16,6,4,6,1) from a {}-block base: verified={verified} blocks={} bound={predicted:?}",
            base.len(),
            c.design.len()
        ),
    ))
}

fn a7() -> Check {
    let (c, _) = auto_construct_546(24, &NoDesigns, 0, &VerifyOptions::default())?;
    let verified = passes(&c.design, &CoverSpec::lotto(24, 5, 4, 6)?)?;
    Ok(ok(
        verified && c.design.len() <= 548,
        format!("(24,5,4,6,1) verified={verified} blocks={} (want <= 548)", c.design.len()),
    ))
}

fn a8() -> Check {
    let mut got = Vec::new();
    for (case, k) in [(1, 2), (2, 3), (3, 3), (4, 2), (5, 4)] {
        got.push(evaluate_bound(&BoundFormula::new(FormulaId::thm54(case)?).with("k", k))?);
    }
    for (v, m) in [(4, 4), (4, 5), (16, 4)] {
        got.push(evaluate_bound(&BoundFormula::new(FormulaId::TrapTriplesSqs).with("v", v).with("m", m))?);
    }
    let want = [14, 18, 42, 51, 140, 6, 8, 480];
    Ok(ok(got == want, format!("got {got:?}, want {want:?}")))
}

fn golden() -> Result<Vec<(String, String, DesignFile)>, Error> {
    let mut out = Vec::new();
    for name in GOLDEN {
        let text = std::fs::read_to_string(common::data_dir().join(name))?;
        let f = parse_design_file(&text)?;
        out.push((name.to_string(), text, f));
    }
    Ok(out)
}

fn a9() -> Check {
    let mut notes = Vec::new();
    let files = golden()?;

    let mut monotone = true;
    for (_, _, f) in &files {
        let s = f.spec;
        monotone &= passes(&f.design, &s)?;
        monotone &= passes(&f.design, &CoverSpec::new(s.v, s.k, s.t - 1, s.m - 1, s.lambda)?)?;
    }
    notes.push(format!("monotone={monotone}"));

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut dual = true;
    let mut passing = 0;
    for i in 0..50 {
        let v = rng.gen_range(4..=10);
        let k = rng.gen_range(2..v);
        let t = rng.gen_range(1..=k);
        let mut d = greedy_cover(&CoverSpec::covering(v, k, t)?, i, 1)?;
        if i % 3 == 0 && d.len() > 1 {
            d = d.without_one(d.blocks()[0]);
        }
        let a = passes(&d, &CoverSpec::covering(v, k, t)?)?;
        let b = passes(&complement_design(&d)?, &CoverSpec::new(v, v - k, v - k, v - t, 1)?)?;
        let oracle = oracle_counterexample(&plain_blocks(&d), v, t, t, 1).is_none();
        dual &= a == b && a == oracle;
        passing += a as u32;
    }
    notes.push(format!("duality={dual} ({passing}/50 covers)"));

    let s8 = boolean_sqs(8)?;
    let s16 = boolean_sqs(16)?;
    let sqs = s8.len() == 14
        && s16.len() == 140
        && verify_t_design(&s8, 3, 1)?.is_pass()
        && verify_t_design(&s16, 3, 1)?.is_pass();
    notes.push(format!("sqs={sqs}"));

    let mut round_trip = true;
    for (_, text, f) in &files {
        let again = DesignFile::verified(f.design.clone(), f.spec, f.provenance.clone(), &VerifyOptions::default())?;
        round_trip &= render_design_file(&again) == *text && parse_design_file(&render_design_file(f))? == *f;
        round_trip &= !matches!(f.provenance, Provenance::Imported);
    }
    notes.push(format!("round-trip={round_trip}"));

    Ok(ok(monotone && dual && sqs && round_trip, notes.join(" ")))
}

fn a10() -> Check {
    let parts = match two_partition_sqs(16) {
        Ok(p) => p,
        Err(Error::BudgetExhausted { .. }) => {
            return Ok(Outcome::Skip("two-partition search for SQS(16) exhausted its budget".into()))
        }
        Err(e) => return Err(e),
    };
    let c = trapping_triples_sqs(16, 4, &VerifyOptions::default())?;
    let verified = passes(&c.design, &CoverSpec::lotto(48, 6, 3, 4)?)?;
    Ok(ok(
        parts.len() == 7 && verified && c.design.len() == 480,
        format!("(48,6,3,4,1) verified={verified} blocks={} (want 480)", c.design.len()),
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("A1", a1),
        ("A2", a2),
        ("A3", a3),
        ("A4", a4),
        ("A5", a5),
        ("A6", a6),
        ("A7", a7),
        ("A8", a8),
        ("A9", a9),
        ("A10", a10),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(Outcome::Pass(d)) => println!("{name} PASS {d} [{secs:.2}s]"),
            Ok(Outcome::Skip(d)) => println!("{name} SKIP {d} [{secs:.2}s]"),
            Ok(Outcome::Fail(d)) => {
                failed += 1;
                println!("{name} FAIL {d} [{secs:.2}s]");
            }
            Err(e) => {
                failed += 1;
                println!("{name} FAIL error: {e} [{secs:.2}s]");
            }
        }
    }
    println!("acceptance: {} passed or skipped, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
