use cm_degen::oracle::{hom_table_sequential, hom_table_with_config, OracleConfig};
use cm_degen::SingularitySpec;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn bench_hom_table(c: &mut Criterion) {
    let mut group = c.benchmark_group("hom_table");
    group.sample_size(10);
    for n in [3u32, 5, 7] {
        let spec = SingularitySpec::new(n, 1).unwrap();
        let cfg = OracleConfig::default();
        group.bench_with_input(BenchmarkId::new("parallel", n), &spec, |b, &s| {
            b.iter(|| hom_table_with_config(s, &cfg).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("sequential", n), &spec, |b, &s| {
            b.iter(|| hom_table_sequential(s, &cfg).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_hom_table);
criterion_main!(benches);
