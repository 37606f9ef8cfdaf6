use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use deltaring::exec::Strategy;
use deltaring::suites::{run_suite, SuiteConfig};

fn strategies(c: &mut Criterion) {
    let cases = [("leibniz", 200), ("svdp-roundtrip", 40), ("psharp-prime", 50), ("main-theorem", 0)];
    for (suite, n) in cases {
        let mut group = c.benchmark_group(suite);
        group.sample_size(10);
        for (label, strategy) in [("sequential", Strategy::Sequential), ("parallel", Strategy::Parallel)] {
            let cfg = SuiteConfig { seed: 7, cases: (n > 0).then_some(n), strategy };
            group.bench_with_input(BenchmarkId::from_parameter(label), &cfg, |b, cfg| {
                b.iter(|| {
                    let rep = run_suite(suite, cfg).expect("suite runs");
                    assert!(rep.pass);
                    rep.instances
                })
            });
        }
        group.finish();
    }
}

criterion_group!(benches, strategies);
criterion_main!(benches);
