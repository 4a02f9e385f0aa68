use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rayon::{ThreadPool, ThreadPoolBuilder};

use flagcomb::bounds::{codim2_identity_check, m_sigma_check};
use flagcomb::classify::{betti_numbers, is_homology_manifold};
use flagcomb::flag::{clique_f_vector, one_skeleton};
use flagcomb::gen;

fn pools() -> Vec<(String, ThreadPool)> {
    let all = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let mut out = vec![("sequential".to_string(), ThreadPoolBuilder::new().num_threads(1).build().unwrap())];
    if all > 1 {
        out.push((format!("rayon-{all}"), ThreadPoolBuilder::new().num_threads(all).build().unwrap()));
    }
    out
}

fn kernels(c: &mut Criterion) {
    let j24 = one_skeleton(&gen::j_m_n(3, 24).unwrap());
    let j14 = gen::j_m_n(3, 14).unwrap();
    let nonjoin = gen::nonjoin_5manifold(18, 6).unwrap();
    let pools = pools();

    let mut group = c.benchmark_group("clique_f_vector J3(24)");
    for (name, pool) in &pools {
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| pool.install(|| clique_f_vector(&j24, None))));
    }
    group.finish();

    let mut group = c.benchmark_group("betti J3(14)");
    group.sample_size(10);
    for (name, pool) in &pools {
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| pool.install(|| betti_numbers(&j14, 2).unwrap())));
    }
    group.finish();

    let mut group = c.benchmark_group("homology manifold J3(14)");
    group.sample_size(10);
    for (name, pool) in &pools {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| pool.install(|| is_homology_manifold(&j14, 2).unwrap()))
        });
    }
    group.finish();

    let mut group = c.benchmark_group("facet checks nonjoin(18,6)");
    group.sample_size(20);
    for (name, pool) in &pools {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                pool.install(|| {
                    codim2_identity_check(&nonjoin).unwrap();
                    m_sigma_check(&nonjoin).unwrap()
                })
            })
        });
    }
    group.finish();
}

criterion_group!(benches, kernels);
criterion_main!(benches);
