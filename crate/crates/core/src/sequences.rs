//! Jacobsthal and Fibonacci numbers, plus executable forms of the Jacobsthal
//! identities the closed forms depend on.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SequenceKind {
    /// `J_0 = 0, J_1 = 1, J_{n+2} = J_{n+1} + 2 J_n`
    Jacobsthal,
    /// `F_0 = 0, F_1 = 1, F_{n+2} = F_{n+1} + F_n`
    Fibonacci,
}

/// Append-only memo table of a two-term integer recurrence.
///
/// Grows on demand through [`SequenceTable::value`] or
/// [`SequenceTable::ensure`]. Once warmed it can be shared immutably and read
/// with [`SequenceTable::term`].
#[derive(Debug, Clone)]
pub struct SequenceTable {
    kind: SequenceKind,
    values: Vec<BigInt>,
}

impl SequenceTable {
    pub fn new(kind: SequenceKind) -> Self {
        Self {
            kind,
            values: vec![BigInt::zero(), BigInt::one()],
        }
    }

    pub fn jacobsthal() -> Self {
        Self::new(SequenceKind::Jacobsthal)
    }

    pub fn fibonacci() -> Self {
        Self::new(SequenceKind::Fibonacci)
    }

    /// A table with every index `0..=max_index` materialized.
    pub fn warmed(kind: SequenceKind, max_index: usize) -> Self {
        let mut table = Self::new(kind);
        table.ensure(max_index);
        table
    }

    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    /// Number of materialized terms.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Materialize every index up to and including `max_index`.
    pub fn ensure(&mut self, max_index: usize) {
        let coeff = match self.kind {
            SequenceKind::Jacobsthal => 2u32,
            SequenceKind::Fibonacci => 1u32,
        };
        self.values.reserve((max_index + 1).saturating_sub(self.values.len()));
        while self.values.len() <= max_index {
            let n = self.values.len();
            let next = &self.values[n - 1] + &self.values[n - 2] * coeff;
            self.values.push(next);
        }
    }

    /// Term at a signed index, growing the table if needed. Negative indices
    /// are a domain error.
    pub fn value(&mut self, index: i64) -> Result<&BigInt> {
        let n = usize::try_from(index)
            .map_err(|_| Error::Domain(format!("negative sequence index {index}")))?;
        self.ensure(n);
        Ok(&self.values[n])
    }

    /// Read-only access to an already materialized term.
    ///
    /// # Panics
    /// If `index` has not been materialized. Use [`SequenceTable::get`] or
    /// [`SequenceTable::require`] for a checked lookup.
    pub fn term(&self, index: usize) -> &BigInt {
        &self.values[index]
    }

    pub fn get(&self, index: usize) -> Option<&BigInt> {
        self.values.get(index)
    }

    /// Fails unless every index up to `max_index` is materialized.
    pub fn require(&self, max_index: usize) -> Result<()> {
        if max_index < self.values.len() {
            Ok(())
        } else {
            Err(Error::TableTooShort {
                len: self.values.len(),
                index: max_index,
            })
        }
    }
}

pub fn jacobsthal(n: i64) -> Result<BigInt> {
    SequenceTable::jacobsthal().value(n).cloned()
}

pub fn fibonacci(n: i64) -> Result<BigInt> {
    SequenceTable::fibonacci().value(n).cloned()
}

/// The Jacobsthal identities, each evaluated verbatim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Identity {
    /// `J_n = (2^n - (-1)^n) / 3`, args `[n]`, `n >= 0`.
    ClosedForm,
    /// `J_{n+1} + J_n = 2^n`, args `[n]`.
    SumAdjacent,
    /// `J_{n+1} - 2 J_n = (-1)^n`, args `[n]`.
    DoubleStep,
    /// `J_m (J_{n+1} + 2 J_{n-1}) + J_n (J_{m+1} + 2 J_{m-1}) = 2 J_{m+n}`, args `[m, n]`.
    AdditionLaw,
    /// `J_{n-1} = J_j J_{n-j} + 2 J_{j-1} J_{n-j-1}`, args `[n, j]`, `1 <= j <= n-1`.
    Convolution,
    /// `sum_{j=1}^n 2^j J_{n-j} = (2/3)(n J_{n-1} + (n-1) J_n)`, args `[n]`.
    WeightedPowSum,
    /// `sum_{j=1}^n (-1)^{n+j} J_j = (1/3)(n J_{n-1} - (n-2) J_n)`, args `[n]`.
    ///
    /// Known to be false as stated (already at `n = 1`); see
    /// [`alternating_sum_closed`] for the form that holds.
    AlternatingSum,
}

impl Identity {
    pub const ALL: [Identity; 7] = [
        Identity::ClosedForm,
        Identity::SumAdjacent,
        Identity::DoubleStep,
        Identity::AdditionLaw,
        Identity::Convolution,
        Identity::WeightedPowSum,
        Identity::AlternatingSum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::ClosedForm => "closed-form",
            Identity::SumAdjacent => "sum-adjacent",
            Identity::DoubleStep => "double-step",
            Identity::AdditionLaw => "addition-law",
            Identity::Convolution => "convolution",
            Identity::WeightedPowSum => "weighted-pow-sum",
            Identity::AlternatingSum => "alternating-sum",
        }
    }

    fn arity(self) -> usize {
        match self {
            Identity::AdditionLaw | Identity::Convolution => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails { lhs: BigRational, rhs: BigRational },
}

impl Verdict {
    fn from_sides(lhs: BigRational, rhs: BigRational) -> Self {
        if lhs == rhs {
            Verdict::Holds
        } else {
            Verdict::Fails { lhs, rhs }
        }
    }

    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

fn pow2(n: usize) -> BigInt {
    BigInt::one() << n
}

fn sign(n: usize) -> BigInt {
    if n.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn int(v: &BigInt) -> BigRational {
    BigRational::from_integer(v.clone())
}

fn third(v: BigInt) -> BigRational {
    BigRational::new(v, BigInt::from(3))
}

fn check_table(table: &SequenceTable) -> Result<()> {
    if table.kind() != SequenceKind::Jacobsthal {
        return domain("identity checks need a Jacobsthal table");
    }
    Ok(())
}

fn index_at_least(args: &[i64], pos: usize, min: i64, what: &str) -> Result<usize> {
    let v = args[pos];
    if v < min {
        return domain(format!("{what} = {v} is below the minimum {min}"));
    }
    Ok(v as usize)
}

/// Evaluate both sides of `id` at `args` with exact arithmetic.
///
/// Says nothing about whether the identity ought to hold; it only reports
/// what the statement evaluates to.
pub fn check_identity(table: &mut SequenceTable, id: Identity, args: &[i64]) -> Result<Verdict> {
    check_table(table)?;
    if args.len() != id.arity() {
        return domain(format!(
            "{id} takes {} argument(s), got {}",
            id.arity(),
            args.len()
        ));
    }
    let (lhs, rhs) = match id {
        Identity::ClosedForm => {
            let n = index_at_least(args, 0, 0, "n")?;
            table.ensure(n);
            (int(table.term(n)), third(pow2(n) - sign(n)))
        }
        Identity::SumAdjacent => {
            let n = index_at_least(args, 0, 1, "n")?;
            table.ensure(n + 1);
            (int(&(table.term(n + 1) + table.term(n))), int(&pow2(n)))
        }
        Identity::DoubleStep => {
            let n = index_at_least(args, 0, 1, "n")?;
            table.ensure(n + 1);
            (
                int(&(table.term(n + 1) - table.term(n) * 2u32)),
                int(&sign(n)),
            )
        }
        Identity::AdditionLaw => {
            let m = index_at_least(args, 0, 1, "m")?;
            let n = index_at_least(args, 1, 1, "n")?;
            table.ensure(m + n);
            let j = |k: usize| table.term(k);
            let lhs = j(m) * (j(n + 1) + j(n - 1) * 2u32) + j(n) * (j(m + 1) + j(m - 1) * 2u32);
            (int(&lhs), int(&(j(m + n) * 2u32)))
        }
        Identity::Convolution => {
            let n = index_at_least(args, 0, 2, "n")?;
            let jj = index_at_least(args, 1, 1, "j")?;
            if jj > n - 1 {
                return domain(format!("j = {jj} exceeds n - 1 = {}", n - 1));
            }
            table.ensure(n);
            let j = |k: usize| table.term(k);
            let rhs = j(jj) * j(n - jj) + j(jj - 1) * j(n - jj - 1) * 2u32;
            (int(j(n - 1)), int(&rhs))
        }
        Identity::WeightedPowSum => {
            let n = index_at_least(args, 0, 1, "n")?;
            table.ensure(n);
            let j = |k: usize| table.term(k);
            let lhs: BigInt = (1..=n).map(|i| pow2(i) * j(n - i)).sum();
            let rhs = BigRational::new(
                (j(n - 1) * n + j(n) * (n - 1)) * 2u32,
                BigInt::from(3),
            );
            (int(&lhs), rhs)
        }
        Identity::AlternatingSum => {
            let n = index_at_least(args, 0, 1, "n")?;
            table.ensure(n);
            let j = |k: usize| table.term(k);
            let lhs = alternating_sum_direct(table, n);
            let rhs = third(j(n - 1) * n - j(n) * BigInt::from(n as i64 - 2));
            (int(&lhs), rhs)
        }
    };
    Ok(Verdict::from_sides(lhs, rhs))
}

fn alternating_sum_direct(table: &SequenceTable, n: usize) -> BigInt {
    (1..=n).map(|j| sign(n + j) * table.term(j)).sum()
}

/// `sum_{j=1}^n (-1)^{n+j} J_j` by direct summation.
pub fn alternating_sum_oracle(table: &mut SequenceTable, n: i64) -> Result<BigRational> {
    check_table(table)?;
    if n < 1 {
        return domain(format!("alternating sum needs n >= 1, got {n}"));
    }
    let n = n as usize;
    table.ensure(n);
    Ok(int(&alternating_sum_direct(table, n)))
}

/// Closed form of the alternating sum: `(2 J_n - n (-1)^n) / 3`.
pub fn alternating_sum_closed(table: &mut SequenceTable, n: i64) -> Result<BigRational> {
    check_table(table)?;
    if n < 1 {
        return domain(format!("alternating sum needs n >= 1, got {n}"));
    }
    let n = n as usize;
    table.ensure(n);
    Ok(third(table.term(n) * 2u32 - sign(n) * n))
}
