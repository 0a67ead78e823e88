//! Wall-clock comparison of closed forms against the exact solve.

use std::time::{Duration, Instant};

use crate::circulant::CirculantWalk;
use crate::error::{domain, Result};
use crate::hitting::{evaluate, Method};

/// Methods that produce the full `{+1,+2}` vector.
pub const BENCH_METHODS: [Method; 4] = [
    Method::Corrected,
    Method::RowSum,
    Method::Printed,
    Method::Oracle,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchRow {
    pub modulus: usize,
    pub method: Method,
    /// Fastest of the repeats.
    pub elapsed: Duration,
}

/// Times computing `h(0, 1..N-1)` on `Cay(Z_N, {+1,+2})` with `method`,
/// table construction included. Returns the fastest of `repeats` runs.
pub fn time_full_vector(n: usize, method: Method, repeats: usize) -> Result<Duration> {
    if n < 3 {
        return domain(format!("benchmark N must be at least 3, got {n}"));
    }
    if !BENCH_METHODS.contains(&method) {
        return domain(format!("method {method} cannot be benchmarked"));
    }
    let walk = CirculantWalk::plus_one_two(n)?;
    let mut best = Duration::MAX;
    for _ in 0..repeats.max(1) {
        let start = Instant::now();
        let result = evaluate(&walk, method)?;
        let elapsed = start.elapsed();
        std::hint::black_box(result);
        best = best.min(elapsed);
    }
    Ok(best)
}

/// One row per `(N, method)`, in the order given.
pub fn run(ns: &[usize], methods: &[Method], repeats: usize) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::with_capacity(ns.len() * methods.len());
    for &n in ns {
        for &method in methods {
            rows.push(BenchRow {
                modulus: n,
                method,
                elapsed: time_full_vector(n, method, repeats)?,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_n_and_odd_methods() {
        assert!(time_full_vector(2, Method::Corrected, 1).is_err());
        assert!(time_full_vector(5, Method::Fibonacci, 1).is_err());
    }

    #[test]
    fn one_row_per_pair() {
        let rows = run(&[3, 8], &[Method::Corrected, Method::Oracle], 1).unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!((rows[3].modulus, rows[3].method), (8, Method::Oracle));
    }
}
