//! Release gate: every identity the library promises, run at full scale.
//! Each test prints one report line; run with --nocapture to see them all.

use std::sync::LazyLock;
use std::time::Instant;

use tameconv::{
    associativity_sweep, gauss_jacobi_sweep, picard_lefschetz_check, point_count_sweep,
    rep_suite_sweep, table_sweep, weil_modulus_sweep, GeneratorRule, RepSuiteReports, SweepConfig,
    SweepReport,
};

struct Suite {
    weil: SweepReport,
    weil_secs: f64,
    gauss_jacobi: SweepReport,
    assoc: SweepReport,
    reps: RepSuiteReports,
    table: SweepReport,
    points: SweepReport,
    points_secs: f64,
    pl: SweepReport,
}

fn build(rule: GeneratorRule) -> Suite {
    let cfg = |qmax, nmax| {
        let mut c = SweepConfig::new(qmax, nmax);
        c.rule = rule;
        c
    };
    let t0 = Instant::now();
    let weil = weil_modulus_sweep(&cfg(200, 12)).unwrap();
    let weil_secs = t0.elapsed().as_secs_f64();
    let gauss_jacobi = gauss_jacobi_sweep(&cfg(200, 12)).unwrap();
    let assoc = associativity_sweep(&cfg(100, 8)).unwrap();
    let reps = rep_suite_sweep(&cfg(100, 12)).unwrap();
    let table = table_sweep(&cfg(100, 8)).unwrap();
    let t1 = Instant::now();
    let points = point_count_sweep(&cfg(49, 6)).unwrap();
    let points_secs = t1.elapsed().as_secs_f64();
    let pl = picard_lefschetz_check(&cfg(13, 2)).unwrap();
    Suite {
        weil,
        weil_secs,
        gauss_jacobi,
        assoc,
        reps,
        table,
        points,
        points_secs,
        pl,
    }
}

static SMALLEST: LazyLock<Suite> = LazyLock::new(|| build(GeneratorRule::Smallest));
static LARGEST: LazyLock<Suite> = LazyLock::new(|| build(GeneratorRule::Largest));

fn gate(criterion: u32, report: &SweepReport) {
    println!("criterion {criterion:2}: {}", report.render());
    assert!(
        report.pass(),
        "criterion {criterion} failed:\n{}",
        report.render()
    );
}

#[test]
fn criterion_01_weil_modulus() {
    gate(1, &SMALLEST.weil);
    assert!(
        SMALLEST.weil_secs < 60.0,
        "weil sweep took {:.1}s",
        SMALLEST.weil_secs
    );
}

#[test]
fn criterion_02_gauss_jacobi_relation() {
    gate(2, &SMALLEST.gauss_jacobi);
}

#[test]
fn criterion_03_associativity_identity() {
    gate(3, &SMALLEST.assoc);
    assert!(SMALLEST.assoc.not_applicable > 0, "skips must be logged");
}

#[test]
fn criterion_04_convolution_monoid_laws() {
    gate(4, &SMALLEST.reps.monoid);
}

#[test]
fn criterion_05_rank_multiplicativity_and_ledger() {
    gate(5, &SMALLEST.reps.ledger);
}

#[test]
fn criterion_06_universal_table_structure() {
    gate(6, &SMALLEST.table);
}

#[test]
fn criterion_07_point_count_reconciliation() {
    gate(7, &SMALLEST.points);
    assert!(
        SMALLEST.points_secs < 60.0,
        "point-count sweep took {:.1}s",
        SMALLEST.points_secs
    );
}

#[test]
fn criterion_08_geometric_arithmetic_compatibility() {
    gate(8, &SMALLEST.reps.erasure);
}

#[test]
fn criterion_09_generator_independence() {
    let pairs = [
        (&SMALLEST.weil, &LARGEST.weil),
        (&SMALLEST.gauss_jacobi, &LARGEST.gauss_jacobi),
        (&SMALLEST.assoc, &LARGEST.assoc),
        (&SMALLEST.reps.monoid, &LARGEST.reps.monoid),
        (&SMALLEST.reps.ledger, &LARGEST.reps.ledger),
        (&SMALLEST.reps.erasure, &LARGEST.reps.erasure),
        (&SMALLEST.table, &LARGEST.table),
        (&SMALLEST.points, &LARGEST.points),
    ];
    for (a, b) in pairs {
        assert!(b.pass(), "alternate-generator run failed:\n{}", b.render());
        assert_eq!(a.render(), b.render(), "report differs for {}", a.name);
    }
    println!(
        "criterion  9: generator-independence: {} reports byte-identical across rules [PASS]",
        pairs.len()
    );
}

#[test]
fn criterion_10_picard_lefschetz_demo() {
    gate(10, &SMALLEST.pl);
}
