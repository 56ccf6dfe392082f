use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use gencover::constructions::{auto_construct_546, auto_trap_quads_46, trapping_triples_sqs, NoDesigns};
use gencover::ingredients::{boolean_sqs, greedy_cover};
use gencover::{verify_general_cover_with, verify_t_design, CoverSpec, VerifyOptions};

fn verify(c: &mut Criterion) {
    let (quads, _) = auto_trap_quads_46(6, 3, false, &NoDesigns, 0, &VerifyOptions::default()).unwrap();
    let (four_part, _) = auto_construct_546(24, &NoDesigns, 0, &VerifyOptions::default()).unwrap();
    let sqs = boolean_sqs(16).unwrap();

    let mut g = c.benchmark_group("verify");
    for (name, opts) in [("serial", VerifyOptions::serial()), ("parallel", VerifyOptions::default())] {
        g.bench_function(format!("18-6-4-6/{name}"), |b| {
            b.iter(|| verify_general_cover_with(&quads.design, &quads.spec, &opts).unwrap())
        });
        g.bench_function(format!("24-5-4-6/{name}"), |b| {
            b.iter(|| verify_general_cover_with(&four_part.design, &four_part.spec, &opts).unwrap())
        });
    }
    g.bench_function("sqs16-t-design", |b| b.iter(|| verify_t_design(&sqs, 3, 1).unwrap()));
    g.finish();
}

fn build(c: &mut Criterion) {
    let opts = VerifyOptions::default();
    let mut g = c.benchmark_group("build");
    g.sample_size(20);
    g.bench_function("trap-quads-46/k6-q3", |b| {
        b.iter(|| auto_trap_quads_46(6, 3, false, &NoDesigns, 0, &opts).unwrap())
    });
    g.bench_function("trap-triples-sqs/v4-m4", |b| b.iter(|| trapping_triples_sqs(4, 4, &opts).unwrap()));
    g.bench_function("construct-546/v24", |b| {
        b.iter(|| auto_construct_546(24, &NoDesigns, 0, &opts).unwrap())
    });
    let spec = CoverSpec::lotto(13, 6, 4, 6).unwrap();
    g.bench_function("greedy/13-6-4-6", |b| {
        b.iter_batched(|| 0u64, |seed| greedy_cover(&spec, seed, 1).unwrap(), BatchSize::SmallInput)
    });
    g.finish();
}

criterion_group!(benches, verify, build);
criterion_main!(benches);
