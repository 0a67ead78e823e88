//! Acceptance criteria, one test per criterion. Each prints a PASS/FAIL line.
//!
//! Run with `cargo test -p cayley-hitting --test acceptance -- --nocapture`
//! to see the report.

use std::process::Command;
use std::time::Instant;

use cayley_hitting::bench::time_full_vector;
use cayley_hitting::circulant::{build_system, hitting_oracle};
use cayley_hitting::hitting::{
    adoption_gate, hitting_corrected_all, hitting_fibonacci_all, hitting_last, hitting_printed,
    hitting_rowsum, inverse_matrix,
};
use cayley_hitting::montecarlo::{simulate, Z_MAX};
use cayley_hitting::sequences::{
    alternating_sum_closed, alternating_sum_oracle, check_identity,
};
use cayley_hitting::{
    CirculantWalk, Identity, Method, Rational, SequenceKind, SequenceTable, SimConfig, Verdict,
};
use num_bigint::BigInt;
use rayon::prelude::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn report(id: u32, name: &str, ok: bool, detail: &str) {
    println!(
        "[{}] criterion {id}: {name} ({detail})",
        if ok { "PASS" } else { "FAIL" }
    );
}

fn oracle_12(n: usize) -> Vec<Rational> {
    hitting_oracle::<Rational>(&CirculantWalk::plus_one_two(n).unwrap())
        .unwrap()
        .values
}

#[test]
fn criterion_1_explicit_inverse() {
    let start = Instant::now();
    let table = SequenceTable::warmed(SequenceKind::Jacobsthal, 256);
    let failures: Vec<usize> = (3..=256usize)
        .into_par_iter()
        .filter(|&n| {
            let h = build_system::<Rational>(&CirculantWalk::plus_one_two(n).unwrap()).matrix;
            let s = inverse_matrix::<Rational>(&table, n).unwrap();
            !h.multiply(&s).unwrap().is_identity()
        })
        .collect();
    let ok = failures.is_empty();
    report(
        1,
        "H_N * S_N = I exactly for N in 3..=256",
        ok,
        &format!("{} failures, {:.1}s", failures.len(), start.elapsed().as_secs_f64()),
    );
    assert!(ok, "identity fails at N = {failures:?}");
}

#[test]
fn criterion_2_rowsum_equals_oracle() {
    let table = SequenceTable::warmed(SequenceKind::Jacobsthal, 128);
    assert_eq!(oracle_12(3), vec![q(2, 1), q(2, 1)]);
    assert_eq!(oracle_12(4), vec![q(14, 5), q(12, 5), q(18, 5)]);
    assert_eq!(oracle_12(5), vec![q(34, 11), q(28, 11), q(42, 11), q(46, 11)]);
    let bad: Vec<usize> = (3..=128usize)
        .into_par_iter()
        .filter(|&n| hitting_rowsum::<Rational>(&table, n).unwrap().values != oracle_12(n))
        .collect();
    let ok = bad.is_empty();
    report(2, "row sums of explicit inverse = exact solve, N in 3..=128", ok, &format!("mismatching N: {bad:?}"));
    assert!(ok);
}

#[test]
fn criterion_3_corrected_closed_form() {
    let mismatches = adoption_gate(128).unwrap();
    let ok = mismatches.is_empty();
    report(3, "corrected closed form = exact solve, N in 3..=128, all l", ok, &format!("{} mismatches", mismatches.len()));
    assert!(ok, "{mismatches:?}");
    // Spot values.
    let t = SequenceTable::warmed(SequenceKind::Jacobsthal, 5);
    assert_eq!(hitting_corrected_all::<Rational>(&t, 5).unwrap().values[0], q(34, 11));
    assert_eq!(hitting_corrected_all::<Rational>(&t, 4).unwrap().values[1], q(12, 5));
    assert_eq!(hitting_corrected_all::<Rational>(&t, 3).unwrap().values[0], q(2, 1));
}

#[test]
fn criterion_4_published_formula_boundary_and_mismatch() {
    let table = SequenceTable::warmed(SequenceKind::Jacobsthal, 128);
    let bad: Vec<usize> = (3..=128usize)
        .into_par_iter()
        .filter(|&n| {
            let want = oracle_12(n)[n - 2].clone();
            hitting_printed::<Rational>(&table, n, n - 1).unwrap() != want
                || hitting_last::<Rational>(&table, n).unwrap() != want
        })
        .collect();
    let printed_51 = hitting_printed::<Rational>(&table, 5, 1).unwrap();
    let oracle_51 = oracle_12(5)[0].clone();
    let ok = bad.is_empty() && printed_51 == q(24, 11) && oracle_51 == q(34, 11);
    report(
        4,
        "published form exact at l=N-1 (N in 3..=128); differs at (5,1)",
        ok,
        &format!("boundary failures {bad:?}; (5,1): published {printed_51} vs exact {oracle_51}"),
    );
    assert!(ok);
}

#[test]
fn criterion_5_fibonacci_cross_check() {
    let fib = SequenceTable::warmed(SequenceKind::Fibonacci, 128);
    let bad: Vec<usize> = (5..=128usize)
        .into_par_iter()
        .filter(|&n| {
            let closed = hitting_fibonacci_all::<Rational>(&fib, n).unwrap().values;
            let exact = hitting_oracle::<Rational>(&CirculantWalk::plus_minus_one_two(n).unwrap())
                .unwrap()
                .values;
            let symmetric = (1..n).all(|l| closed[l - 1] == closed[n - l - 1]);
            closed != exact || !symmetric
        })
        .collect();
    let k5 = hitting_fibonacci_all::<Rational>(&fib, 5).unwrap().values;
    let ok = bad.is_empty() && k5 == vec![q(4, 1); 4];
    report(5, "Fibonacci form = exact solve on {±1,±2}, N in 5..=128", ok, &format!("mismatching N: {bad:?}; N=5 values {k5:?}"));
    assert!(ok);
}

#[test]
fn criterion_6_identity_suites() {
    let mut t = SequenceTable::warmed(SequenceKind::Jacobsthal, 600);
    let mut failures = Vec::new();
    let mut check = |id: Identity, args: &[i64], t: &mut SequenceTable| {
        if !check_identity(t, id, args).unwrap().holds() {
            failures.push(format!("{id} {args:?}"));
        }
    };
    for n in 0..=512 {
        check(Identity::ClosedForm, &[n], &mut t);
    }
    for n in 1..=512 {
        check(Identity::SumAdjacent, &[n], &mut t);
        check(Identity::DoubleStep, &[n], &mut t);
    }
    for m in 1..=128 {
        for n in 1..=128 {
            check(Identity::AdditionLaw, &[m, n], &mut t);
        }
    }
    for n in 2..=256 {
        for j in 1..n {
            check(Identity::Convolution, &[n, j], &mut t);
        }
    }
    for n in 1..=256 {
        check(Identity::WeightedPowSum, &[n], &mut t);
    }
    let published = check_identity(&mut t, Identity::AlternatingSum, &[1]).unwrap();
    let published_fails = published
        == Verdict::Fails {
            lhs: q(1, 1),
            rhs: q(1, 3),
        };
    let replacement_ok = (1..=256).all(|n| {
        alternating_sum_oracle(&mut t, n).unwrap() == alternating_sum_closed(&mut t, n).unwrap()
    });
    let ok = failures.is_empty() && published_fails && replacement_ok;
    report(
        6,
        "Jacobsthal identities hold; published alternating sum fails at n=1; replacement holds",
        ok,
        &format!("{} unexpected failures; n=1 verdict {published:?}", failures.len()),
    );
    assert!(ok, "{failures:?}");
}

#[test]
fn criterion_7_monte_carlo_consistency() {
    let start = Instant::now();
    let config = SimConfig::new(CirculantWalk::plus_one_two(5).unwrap(), 1, 1_000_000, 42);
    let stats = simulate(&config).unwrap();
    let again = simulate(&config).unwrap();
    let exact = stats.compare(&q(34, 11)).unwrap();
    let published = stats.compare(&q(24, 11)).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let ok = stats.truncated_trials == 0
        && (stats.mean - 34.0 / 11.0).abs() <= Z_MAX * stats.stderr
        && exact.is_consistent()
        && !published.is_consistent()
        && stats == again
        && elapsed < 60.0;
    report(
        7,
        "simulation consistent with 34/11, inconsistent with 24/11, deterministic",
        ok,
        &format!(
            "mean {:.6} stderr {:.6}, z(34/11) {:.2}, z(24/11) {:.1}, {elapsed:.1}s for two runs",
            stats.mean,
            stats.stderr,
            exact.z(),
            published.z()
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_8_closed_form_faster_than_solver() {
    let mut rows = Vec::new();
    let mut ok = true;
    for n in [64usize, 128, 256] {
        let corrected = time_full_vector(n, Method::Corrected, 3).unwrap();
        let oracle = time_full_vector(n, Method::Oracle, 3).unwrap();
        let ratio = oracle.as_secs_f64() / corrected.as_secs_f64();
        ok &= corrected < oracle;
        rows.push(format!("N={n}: corrected {corrected:?} oracle {oracle:?} ratio {ratio:.1}"));
    }
    report(8, "corrected closed form strictly faster than exact solve at N=64,128,256", ok, &rows.join("; "));
    assert!(ok);
}

#[test]
fn criterion_9_cli_determinism() {
    let exe = env!("CARGO_BIN_EXE_cayley-hit");
    let commands: [&[&str]; 4] = [
        &["hit", "--n", "17", "--steps", "1,2", "--all", "--method", "corrected"],
        &["hit", "--n", "9", "--steps", "1,2,-1,-2", "--all", "--method", "oracle", "--format", "csv"],
        &["verify", "--n-max", "24", "--suite", "all"],
        &["simulate", "--n", "5", "--steps", "1,2", "--l", "1", "--trials", "100000", "--seed", "42", "--compare-exact"],
    ];
    let mut ok = true;
    for args in commands {
        let run = |threads: &str| {
            Command::new(exe)
                .args(["--threads", threads])
                .args(args)
                .output()
                .unwrap()
        };
        let a = run("1");
        let b = run("4");
        ok &= a.status.success() && a.stdout == b.stdout && !a.stdout.is_empty();
    }
    report(9, "identical flags give byte-identical stdout", ok, "hit/verify/simulate, 1 vs 4 threads");
    assert!(ok);
}
