use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rootpoly::heckman_opdam::assemble_ho;
use rootpoly::hessenberg::solve_recurrence;
use rootpoly::macdonald::{assemble_macdonald, assemble_macdonald_general_t};
use rootpoly::{Execution, Family, MinusculeChoice, RootSystemSpec, SolveOptions, Weight};

fn cases() -> Vec<(&'static str, RootSystemSpec, Weight)> {
    vec![
        ("B4 (2,2,1,0)", RootSystemSpec::new(Family::B, 4).unwrap(), Weight::from_ints(&[2, 2, 1, 0])),
        ("C4 (2,2,1,1)", RootSystemSpec::new(Family::C, 4).unwrap(), Weight::from_ints(&[2, 2, 1, 1])),
        ("D4 (2,1,1,0)", RootSystemSpec::new(Family::D, 4).unwrap(), Weight::from_ints(&[2, 1, 1, 0])),
    ]
}

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn ho_assembly(c: &mut Criterion) {
    let mut group = c.benchmark_group("ho_assembly");
    for (name, spec, lam) in cases() {
        for (mode, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(mode, name), &lam, |b, lam| {
                b.iter(|| assemble_ho(&spec, lam, false, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn macdonald_solve(c: &mut Criterion) {
    let mut group = c.benchmark_group("macdonald_assemble_solve");
    group.sample_size(10);
    for (name, spec, lam) in cases() {
        let choice = MinusculeChoice::default_for(&spec).unwrap();
        for (mode, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(mode, name), &lam, |b, lam| {
                b.iter(|| {
                    let td = assemble_macdonald(&spec, choice, lam, exec).unwrap();
                    solve_recurrence(&td, SolveOptions { full_gcd: false, exec }).unwrap()
                })
            });
        }
    }
    group.finish();
}

fn general_t_assembly(c: &mut Criterion) {
    let mut group = c.benchmark_group("general_t_assembly");
    group.sample_size(10);
    let spec = RootSystemSpec::new(Family::B, 3).unwrap();
    let lam = Weight::from_ints(&[2, 1, 1]);
    let choice = MinusculeChoice::default_for(&spec).unwrap();
    for (mode, exec) in MODES {
        group.bench_function(BenchmarkId::new(mode, "B3 (2,1,1)"), |b| {
            b.iter(|| assemble_macdonald_general_t(&spec, choice, &lam, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, ho_assembly, macdonald_solve, general_t_assembly);
criterion_main!(benches);
