use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use sclcx::par::ExecPolicy;
use sclcx::sclopt::{scl_lp, OneChain};
use sclcx::veriharness::fixtures::{closure_of, sg1b_ambient};
use sclcx::veriharness::{chain_corpus, theorem_a_harness};

const POLICIES: [(&str, ExecPolicy); 2] = [("sequential", ExecPolicy::Sequential), ("parallel", ExecPolicy::Parallel)];

fn lp_solve(c: &mut Criterion) {
    let mut group = c.benchmark_group("scl_lp");
    group.sample_size(10);
    for (text, rank) in [("[a,b]^2", 2), ("[a,b][c,d]", 4), ("[a,b]^3", 2), ("[a,b][a,c]", 3)] {
        let chain = OneChain::parse(text, &OneChain::standard_basis(rank)).unwrap();
        for (name, policy) in POLICIES {
            group.bench_with_input(BenchmarkId::new(name, text), &chain, |b, ch| b.iter(|| scl_lp(ch, policy).unwrap()));
        }
    }
    group.finish();
}

fn harness_corpus(c: &mut Criterion) {
    let mut group = c.benchmark_group("inclusion_corpus");
    group.sample_size(10);
    let x = sg1b_ambient(2);
    let t = closure_of(&x, &["f1"]);
    let corpus = chain_corpus(4);
    for (name, policy) in POLICIES {
        group.bench_function(name, |b| b.iter(|| theorem_a_harness(&x, &t, &corpus, policy).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, lp_solve, harness_corpus);
criterion_main!(benches);
