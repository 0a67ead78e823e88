//! Exact average hitting times of simple random walks on circulant digraphs
//! `Cay(Z_N, S)`.
//!
//! * [`sequences`]: Jacobsthal and Fibonacci tables and the Jacobsthal
//!   identities as executable checks.
//! * [`linalg`]: dense matrices and Gaussian elimination over any [`Scalar`].
//! * [`circulant`]: the walk model and its first-step linear system; the exact
//!   solve is the reference every closed form is checked against.
//! * [`hitting`]: closed forms for `S = {+1,+2}` and `S = {±1,±2}`.
//! * [`montecarlo`]: seeded, thread-count-independent simulation.
//! * [`cli`]: the `cayley-hit` command-line front end.
//!
//! Numeric code is generic over [`Scalar`]; the aliases below fix it to
//! arbitrary-precision rationals, which is what all verification uses.
//!
//! ```
//! use cayley_hitting::{circulant, hitting, CirculantWalk, Rational, SequenceKind, SequenceTable};
//!
//! let walk = CirculantWalk::plus_one_two(5).unwrap();
//! let exact = circulant::hitting_oracle::<Rational>(&walk).unwrap();
//! let table = SequenceTable::warmed(SequenceKind::Jacobsthal, 5);
//! let closed = hitting::hitting_corrected_all::<Rational>(&table, 5).unwrap();
//! assert_eq!(exact.values, closed.values);
//! ```

pub mod bench;
pub mod circulant;
pub mod cli;
pub mod decimal;
pub mod error;
pub mod hitting;
pub mod linalg;
pub mod montecarlo;
pub mod scalar;
pub mod sequences;
pub mod verify;

pub use circulant::{CirculantWalk, ReducedSystem};
pub use error::{Error, Result};
pub use hitting::{HittingResult, Method};
pub use linalg::Matrix;
pub use montecarlo::{Comparison, SimConfig, SimStats};
pub use scalar::Scalar;
pub use sequences::{Identity, SequenceKind, SequenceTable, Verdict};

/// Arbitrary-precision reduced fraction.
pub type Rational = num_rational::BigRational;
pub type RationalMatrix = Matrix<Rational>;
pub type RationalVector = Vec<Rational>;
pub type RationalSystem = ReducedSystem<Rational>;

pub type F64Matrix = Matrix<f64>;
pub type F64HittingResult = HittingResult<f64>;
