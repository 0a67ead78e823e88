//! Closed-form hitting times on `Cay(Z_N, {+1,+2})` and `Cay(Z_N, {±1,±2})`.
//!
//! Every evaluator reads from a pre-warmed [`SequenceTable`] so that
//! evaluating all `l` for one `N` costs `O(N)` big-integer operations.
//!
//! For `{+1,+2}` the exact solve ([`crate::circulant::hitting_oracle`]) is the
//! reference. Of the closed forms here:
//!
//! * [`inverse_entry`] / [`hitting_rowsum`]: explicit entries of `H_N^{-1}`,
//!   hitting times as twice the row sums. Agree with the solve.
//! * [`hitting_corrected`]: single-expression closed form. Agrees with the
//!   solve.
//! * [`hitting_printed`]: the closed form as originally published. Agrees
//!   with the solve only at `l = N - 1`; kept to reproduce the discrepancy.
//! * [`hitting_last`]: dedicated expression for `l = N - 1`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::circulant::{hitting_oracle, CirculantWalk};
use crate::error::{domain, Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::sequences::{SequenceKind, SequenceTable};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Oracle,
    RowSum,
    Printed,
    Corrected,
    Fibonacci,
    MonteCarlo,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::RowSum => "rowsum",
            Method::Printed => "printed",
            Method::Corrected => "corrected",
            Method::Fibonacci => "fibonacci",
            Method::MonteCarlo => "montecarlo",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "oracle" => Method::Oracle,
            "rowsum" => Method::RowSum,
            "printed" => Method::Printed,
            "corrected" => Method::Corrected,
            "fibonacci" => Method::Fibonacci,
            "montecarlo" => Method::MonteCarlo,
            other => return domain(format!("unknown method {other:?}")),
        })
    }
}

/// Hitting times `h(0, l)` for `l = 1..N-1`, tagged with how they were made.
#[derive(Debug, Clone, PartialEq)]
pub struct HittingResult<T = Rational> {
    pub modulus: usize,
    pub steps: Vec<usize>,
    /// `values[l - 1] = h(0, l)`.
    pub values: Vec<T>,
    pub method: Method,
}

impl<T> HittingResult<T> {
    pub fn new(walk: &CirculantWalk, values: Vec<T>, method: Method) -> Self {
        debug_assert_eq!(values.len(), walk.modulus() - 1);
        Self {
            modulus: walk.modulus(),
            steps: walk.steps().to_vec(),
            values,
            method,
        }
    }

    /// `h(0, l)`, or `None` outside `1..N`.
    pub fn at(&self, l: usize) -> Option<&T> {
        l.checked_sub(1).and_then(|i| self.values.get(i))
    }
}

fn jacobsthal_table(table: &SequenceTable, n: usize) -> Result<()> {
    if table.kind() != SequenceKind::Jacobsthal {
        return domain("expected a Jacobsthal table");
    }
    table.require(n)
}

fn check_modulus(n: usize, min: usize) -> Result<()> {
    if n < min {
        return domain(format!("N must be at least {min}, got {n}"));
    }
    Ok(())
}

fn check_target(n: usize, l: usize) -> Result<()> {
    if l == 0 || l >= n {
        return domain(format!("l must lie in 1..={}, got {l}", n - 1));
    }
    Ok(())
}

/// Which branch of the explicit inverse formula covers `(i, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InverseCase {
    /// `j = i + 1`
    Superdiagonal,
    /// `j <= i`, excluding the corner
    Lower,
    /// `j > i + 1`
    Upper,
    /// `(i, j) = (N - 1, 1)`
    Corner,
}

impl InverseCase {
    /// The corner is matched before the lower-triangle branch.
    pub fn classify(n: usize, i: usize, j: usize) -> Self {
        if (i, j) == (n - 1, 1) {
            InverseCase::Corner
        } else if j == i + 1 {
            InverseCase::Superdiagonal
        } else if j < i + 1 {
            InverseCase::Lower
        } else {
            InverseCase::Upper
        }
    }
}

/// `J_N * H_N^{-1}(i, j)` evaluated with the formula of `case`, regardless
/// of whether `case` is the one [`InverseCase::classify`] would pick.
///
/// The caller must have checked `1 <= i, j <= N-1`, `N >= 3`, a warm table,
/// and that the index pattern of `case` is meaningful for `(i, j)`.
pub fn inverse_entry_numerator(
    table: &SequenceTable,
    n: usize,
    i: usize,
    j: usize,
    case: InverseCase,
) -> BigInt {
    let t = |k: usize| table.term(k);
    match case {
        InverseCase::Superdiagonal => t(i) * t(n - i - 1),
        InverseCase::Lower => {
            let main = t(i - j + 1) * (t(n - i + j - 2) + t(n - i + j - 1));
            let corr = t(j - 1) * t(n - i - 1);
            if (i + j).is_multiple_of(2) {
                main - corr
            } else {
                main + corr
            }
        }
        InverseCase::Upper => t(i) * t(n - j) * (t(j - i - 1) + t(j - i)),
        InverseCase::Corner => t(n - 1).clone(),
    }
}

/// Entry `(i, j)` (1-indexed) of the explicit inverse of the `{+1,+2}`
/// reduced system.
pub fn inverse_entry<T: Scalar>(table: &SequenceTable, n: usize, i: usize, j: usize) -> Result<T> {
    check_modulus(n, 3)?;
    jacobsthal_table(table, n)?;
    if !(1..n).contains(&i) || !(1..n).contains(&j) {
        return domain(format!("inverse entry ({i}, {j}) outside 1..={}", n - 1));
    }
    let num = inverse_entry_numerator(table, n, i, j, InverseCase::classify(n, i, j));
    Ok(T::from_ratio(&num, table.term(n)))
}

/// The full `(N-1) x (N-1)` explicit inverse.
pub fn inverse_matrix<T: Scalar>(table: &SequenceTable, n: usize) -> Result<Matrix<T>> {
    check_modulus(n, 3)?;
    jacobsthal_table(table, n)?;
    let den = table.term(n);
    Ok(Matrix::from_fn(n - 1, n - 1, |r, c| {
        let (i, j) = (r + 1, c + 1);
        let num = inverse_entry_numerator(table, n, i, j, InverseCase::classify(n, i, j));
        T::from_ratio(&num, den)
    }))
}

/// `h(0, l) = 2 * sum_j H_N^{-1}(l, j)` for every `l`.
pub fn hitting_rowsum<T: Scalar>(table: &SequenceTable, n: usize) -> Result<HittingResult<T>> {
    check_modulus(n, 3)?;
    jacobsthal_table(table, n)?;
    let values = (1..n)
        .map(|i| {
            let row: BigInt = (1..n)
                .map(|j| inverse_entry_numerator(table, n, i, j, InverseCase::classify(n, i, j)))
                .sum();
            T::from_ratio(&(row * 2u32), table.term(n))
        })
        .collect();
    Ok(HittingResult::new(
        &CirculantWalk::plus_one_two(n)?,
        values,
        Method::RowSum,
    ))
}

/// The published `{+1,+2}` closed form, evaluated verbatim:
///
/// ```text
/// (2 J_{l-1} (3l J_{N-l-1} + 2l J_{N-l}) + J_l ((N+l+3) J_{N-l-1} + (N+3l+1) J_{N-l})) / (3 J_N)
/// ```
///
/// Matches the exact solve only at `l = N - 1`.
pub fn hitting_printed<T: Scalar>(table: &SequenceTable, n: usize, l: usize) -> Result<T> {
    check_modulus(n, 3)?;
    check_target(n, l)?;
    jacobsthal_table(table, n)?;
    let t = |k: usize| table.term(k);
    let (a, b) = (t(n - l - 1), t(n - l));
    let num = t(l - 1) * (a * (3 * l) + b * (2 * l)) * 2u32
        + t(l) * (a * (n + l + 3) + b * (n + 3 * l + 1));
    Ok(T::from_ratio(&num, &(t(n) * 3u32)))
}

/// `{+1,+2}` closed form that agrees with the exact solve:
///
/// ```text
/// h(0, l) = 2 (2l J_{l-1} J_{N-l} + J_l ((N+2l) J_{N-l-1} + (N+l) J_{N-l})) / (3 J_N)
/// ```
pub fn hitting_corrected<T: Scalar>(table: &SequenceTable, n: usize, l: usize) -> Result<T> {
    check_modulus(n, 3)?;
    check_target(n, l)?;
    jacobsthal_table(table, n)?;
    Ok(T::from_ratio(&corrected_numerator(table, n, l), &(table.term(n) * 3u32)))
}

fn corrected_numerator(table: &SequenceTable, n: usize, l: usize) -> BigInt {
    let t = |k: usize| table.term(k);
    (t(l - 1) * t(n - l) * (2 * l) + t(l) * (t(n - l - 1) * (n + 2 * l) + t(n - l) * (n + l))) * 2u32
}

pub fn hitting_corrected_all<T: Scalar>(
    table: &SequenceTable,
    n: usize,
) -> Result<HittingResult<T>> {
    check_modulus(n, 3)?;
    jacobsthal_table(table, n)?;
    let den = table.term(n) * 3u32;
    let values = (1..n)
        .map(|l| T::from_ratio(&corrected_numerator(table, n, l), &den))
        .collect();
    Ok(HittingResult::new(
        &CirculantWalk::plus_one_two(n)?,
        values,
        Method::Corrected,
    ))
}

pub fn hitting_printed_all<T: Scalar>(
    table: &SequenceTable,
    n: usize,
) -> Result<HittingResult<T>> {
    let values = (1..n)
        .map(|l| hitting_printed(table, n, l))
        .collect::<Result<_>>()?;
    Ok(HittingResult::new(
        &CirculantWalk::plus_one_two(n)?,
        values,
        Method::Printed,
    ))
}

/// `h(0, N-1) = 2 (N J_{N-1} + (N-1) J_N) / (3 J_N)`.
pub fn hitting_last<T: Scalar>(table: &SequenceTable, n: usize) -> Result<T> {
    check_modulus(n, 3)?;
    jacobsthal_table(table, n)?;
    let num = (table.term(n - 1) * n + table.term(n) * (n - 1)) * 2u32;
    Ok(T::from_ratio(&num, &(table.term(n) * 3u32)))
}

/// Hitting times on `Cay(Z_N, {±1,±2})`, `N >= 5`:
///
/// ```text
/// h(0, l) = (2/5) (l (N - l) + 2N F_l F_{N-l} / F_N)
/// ```
pub fn hitting_fibonacci<T: Scalar>(fib: &SequenceTable, n: usize, l: usize) -> Result<T> {
    check_modulus(n, 5)?;
    check_target(n, l)?;
    if fib.kind() != SequenceKind::Fibonacci {
        return domain("expected a Fibonacci table");
    }
    fib.require(n)?;
    let f = |k: usize| fib.term(k);
    let num = (f(n) * (l * (n - l)) + f(l) * f(n - l) * (2 * n)) * 2u32;
    Ok(T::from_ratio(&num, &(f(n) * 5u32)))
}

pub fn hitting_fibonacci_all<T: Scalar>(
    fib: &SequenceTable,
    n: usize,
) -> Result<HittingResult<T>> {
    let values = (1..n)
        .map(|l| hitting_fibonacci(fib, n, l))
        .collect::<Result<_>>()?;
    Ok(HittingResult::new(
        &CirculantWalk::plus_minus_one_two(n)?,
        values,
        Method::Fibonacci,
    ))
}

/// Exact `h(0, l)` for every `l` using `method`.
///
/// Closed forms only apply to their own step sets: `rowsum`, `corrected` and
/// `printed` need `{1, 2}`, `fibonacci` needs `{±1, ±2}` with `N >= 5`.
pub fn evaluate(walk: &CirculantWalk, method: Method) -> Result<HittingResult<Rational>> {
    let n = walk.modulus();
    let inapplicable = |need: &str| {
        Err(Error::Inapplicable(format!(
            "method {method} needs {need}, got {walk}"
        )))
    };
    match method {
        Method::Oracle => hitting_oracle(walk),
        Method::RowSum | Method::Corrected | Method::Printed => {
            if !walk.is_steps(&[1, 2]) || n < 3 {
                return inapplicable("steps {1,2} and N >= 3");
            }
            let table = SequenceTable::warmed(SequenceKind::Jacobsthal, n);
            match method {
                Method::RowSum => hitting_rowsum(&table, n),
                Method::Corrected => hitting_corrected_all(&table, n),
                _ => hitting_printed_all(&table, n),
            }
        }
        Method::Fibonacci => {
            if n < 5 || !walk.is_steps(&[1, 2, -1, -2]) {
                return inapplicable("steps {±1,±2} and N >= 5");
            }
            let table = SequenceTable::warmed(SequenceKind::Fibonacci, n);
            hitting_fibonacci_all(&table, n)
        }
        Method::MonteCarlo => inapplicable("an exact method; use simulation instead"),
    }
}

/// A closed-form value that disagrees with the exact solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateMismatch {
    pub modulus: usize,
    pub l: usize,
    pub closed_form: Rational,
    pub oracle: Rational,
}

/// Compares [`hitting_corrected`] against the exact solve for every
/// `3 <= N <= n_max` and every `l`, returning all mismatches.
pub fn adoption_gate(n_max: usize) -> Result<Vec<GateMismatch>> {
    let table = SequenceTable::warmed(SequenceKind::Jacobsthal, n_max.max(3));
    let per_n: Vec<Vec<GateMismatch>> = (3..=n_max)
        .into_par_iter()
        .map(|n| -> Result<Vec<GateMismatch>> {
            let oracle = hitting_oracle::<Rational>(&CirculantWalk::plus_one_two(n)?)?;
            let closed = hitting_corrected_all::<Rational>(&table, n)?;
            Ok(closed
                .values
                .into_iter()
                .zip(oracle.values)
                .enumerate()
                .filter(|(_, (c, o))| c != o)
                .map(|(i, (closed_form, oracle))| GateMismatch {
                    modulus: n,
                    l: i + 1,
                    closed_form,
                    oracle,
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok(per_n.into_iter().flatten().collect())
}

/// `J_N * H_N^{-1}(N-1, 1)` via the lower-triangle branch, which reduces to
/// the corner value because `J_0 = 0`.
pub fn corner_via_lower_branch(table: &SequenceTable, n: usize) -> Result<Rational> {
    check_modulus(n, 3)?;
    jacobsthal_table(table, n)?;
    let num = inverse_entry_numerator(table, n, n - 1, 1, InverseCase::Lower);
    Ok(Rational::new(num, table.term(n).clone()))
}
