//! The walk on `Cay(Z_N, S)` and its first-step linear system.
//!
//! The walker at `v` moves to `v + s` for an `s` drawn uniformly from the step
//! multiset. Conditioning on the first move and using translation invariance
//! gives, for every target `l != 0`,
//!
//! ```text
//! |S| h(0,l) - sum_{s in S} h(0, l - s) = |S|,    h(0,0) = 0
//! ```
//!
//! which for `S = {1, 2}` is the transposed reduced Laplacian system.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::hitting::{HittingResult, Method};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Modulus plus a multiset of nonzero step residues, each taken with
/// probability `1 / steps.len()`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CirculantWalk {
    modulus: usize,
    steps: Vec<usize>,
}

impl CirculantWalk {
    /// Steps may be given as any integers; they are reduced mod `modulus`
    /// and kept as a sorted multiset.
    pub fn new(modulus: usize, steps: &[i64]) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidWalk(format!(
                "modulus must be at least 2, got {modulus}"
            )));
        }
        if steps.is_empty() {
            return Err(Error::InvalidWalk("step multiset is empty".into()));
        }
        let m = modulus as i64;
        let mut reduced = Vec::with_capacity(steps.len());
        for &s in steps {
            let r = s.rem_euclid(m);
            if r == 0 {
                return Err(Error::InvalidWalk(format!(
                    "step {s} is 0 mod {modulus} (self-loop)"
                )));
            }
            reduced.push(r as usize);
        }
        reduced.sort_unstable();
        Ok(Self {
            modulus,
            steps: reduced,
        })
    }

    /// `Cay(Z_N, {+1, +2})`.
    pub fn plus_one_two(modulus: usize) -> Result<Self> {
        Self::new(modulus, &[1, 2])
    }

    /// `Cay(Z_N, {±1, ±2})` as the multiset `{1, 2, N-1, N-2}`.
    pub fn plus_minus_one_two(modulus: usize) -> Result<Self> {
        Self::new(modulus, &[1, 2, -1, -2])
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    /// Sorted step multiset.
    pub fn steps(&self) -> &[usize] {
        &self.steps
    }

    /// Out-degree, counted with multiplicity.
    pub fn degree(&self) -> usize {
        self.steps.len()
    }

    /// `gcd(N, s_1, ..., s_k)`: the walk from 0 stays in the subgroup this
    /// generates.
    pub fn generator_gcd(&self) -> usize {
        self.steps
            .iter()
            .fold(self.modulus, |g, &s| g.gcd(&s))
    }

    /// Whether every vertex reaches every other.
    pub fn is_irreducible(&self) -> bool {
        self.generator_gcd() == 1
    }

    /// Whether a walker started at 0 can ever reach `target`.
    pub fn reaches(&self, target: usize) -> bool {
        (target % self.modulus).is_multiple_of(self.generator_gcd())
    }

    pub fn is_steps(&self, steps: &[i64]) -> bool {
        Self::new(self.modulus, steps).is_ok_and(|w| w.steps == self.steps)
    }

    fn unreachable(&self) -> Error {
        Error::Unreachable {
            modulus: self.modulus,
            steps: self.steps.clone(),
        }
    }
}

impl fmt::Display for CirculantWalk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let steps: Vec<String> = self.steps.iter().map(usize::to_string).collect();
        write!(f, "Cay(Z_{}, {{{}}})", self.modulus, steps.join(","))
    }
}

/// `matrix * h = rhs`, with `h[l-1] = h(0, l)` for `l = 1..N-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedSystem<T> {
    pub matrix: Matrix<T>,
    pub rhs: Vec<T>,
}

pub fn build_system<T: Scalar>(walk: &CirculantWalk) -> ReducedSystem<T> {
    let n = walk.modulus;
    let degree = T::from_i64(walk.degree() as i64);
    let mut matrix = Matrix::<T>::zeros(n - 1, n - 1);
    for l in 1..n {
        matrix[(l - 1, l - 1)] = matrix[(l - 1, l - 1)].clone() + degree.clone();
        for &s in &walk.steps {
            let m = (l + n - s) % n;
            if m != 0 {
                matrix[(l - 1, m - 1)] = matrix[(l - 1, m - 1)].clone() - T::one();
            }
        }
    }
    ReducedSystem {
        matrix,
        rhs: vec![degree; n - 1],
    }
}

/// Exact hitting times `h(0, l)` for `l = 1..N-1` from the first-step system.
pub fn hitting_oracle<T: Scalar>(walk: &CirculantWalk) -> Result<HittingResult<T>> {
    if !walk.is_irreducible() {
        return Err(walk.unreachable());
    }
    let system = build_system::<T>(walk);
    let values = system.matrix.solve(&system.rhs).map_err(|e| match e {
        Error::Singular { .. } => walk.unreachable(),
        other => other,
    })?;
    Ok(HittingResult::new(walk, values, Method::Oracle))
}

/// `h(v, target)` for every start vertex `v in 0..N`, from the forward
/// first-step equations `h(v) = 1 + mean_s h(v + s)` with `h(target) = 0`.
///
/// Makes no use of translation invariance, so it can be used to check it.
pub fn hitting_times_to<T: Scalar>(walk: &CirculantWalk, target: usize) -> Result<Vec<T>> {
    let n = walk.modulus;
    let target = target % n;
    if !walk.is_irreducible() {
        return Err(walk.unreachable());
    }
    // Unknowns are the vertices other than `target`, in increasing order.
    let slot = |v: usize| if v < target { v } else { v - 1 };
    let degree = T::from_i64(walk.degree() as i64);
    let mut matrix = Matrix::<T>::zeros(n - 1, n - 1);
    for v in (0..n).filter(|&v| v != target) {
        let row = slot(v);
        matrix[(row, row)] = matrix[(row, row)].clone() + degree.clone();
        for &s in &walk.steps {
            let w = (v + s) % n;
            if w != target {
                matrix[(row, slot(w))] = matrix[(row, slot(w))].clone() - T::one();
            }
        }
    }
    let solved = matrix.solve(&vec![degree; n - 1]).map_err(|e| match e {
        Error::Singular { .. } => walk.unreachable(),
        other => other,
    })?;
    let mut out = Vec::with_capacity(n);
    out.extend(solved[..target].iter().cloned());
    out.push(T::zero());
    out.extend(solved[target..].iter().cloned());
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub enum TranslationVerdict<T> {
    Holds,
    /// `h(k, k + l) != h(0, l)`.
    Fails { l: usize, translated: T, origin: T },
}

/// Checks `h(k, k + l) = h(0, l)` for every `l`, solving a separate system
/// for each target `k + l`.
pub fn translation_check<T: Scalar>(
    walk: &CirculantWalk,
    k: usize,
) -> Result<TranslationVerdict<T>> {
    let n = walk.modulus;
    let origin = hitting_oracle::<T>(walk)?.values;
    for l in 1..n {
        let target = (k + l) % n;
        let translated = hitting_times_to::<T>(walk, target)?[k % n].clone();
        if translated != origin[l - 1] {
            return Ok(TranslationVerdict::Fails {
                l,
                translated,
                origin: origin[l - 1].clone(),
            });
        }
    }
    Ok(TranslationVerdict::Holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn qs(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| q(x, 1)).collect()
    }

    #[test]
    fn walk_validation() {
        assert!(CirculantWalk::new(1, &[1]).is_err());
        assert!(CirculantWalk::new(5, &[]).is_err());
        assert!(CirculantWalk::new(5, &[1, 5]).is_err());
        let w = CirculantWalk::new(5, &[-1, 2, 7]).unwrap();
        assert_eq!(w.steps(), &[2, 2, 4]);
    }

    #[test]
    fn multiset_collapses_on_z3() {
        let w = CirculantWalk::plus_minus_one_two(3).unwrap();
        assert_eq!(w.steps(), &[1, 1, 2, 2]);
        assert_eq!(w.degree(), 4);
    }

    #[test]
    fn system_n3() {
        let sys = build_system::<Rational>(&CirculantWalk::plus_one_two(3).unwrap());
        assert_eq!(sys.matrix.row(0), qs(&[2, -1]).as_slice());
        assert_eq!(sys.matrix.row(1), qs(&[-1, 2]).as_slice());
        assert_eq!(sys.rhs, qs(&[2, 2]));
    }

    #[test]
    fn system_n5() {
        let sys = build_system::<Rational>(&CirculantWalk::plus_one_two(5).unwrap());
        assert_eq!(sys.matrix.row(0), qs(&[2, 0, 0, -1]).as_slice());
        assert_eq!(sys.matrix.row(2), qs(&[-1, -1, 2, 0]).as_slice());

        let k5 = build_system::<Rational>(&CirculantWalk::new(5, &[1, 2, 3, 4]).unwrap());
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(k5.matrix[(i, j)], if i == j { q(4, 1) } else { q(-1, 1) });
            }
        }
    }

    #[test]
    fn oracle_examples() {
        let h3 = hitting_oracle::<Rational>(&CirculantWalk::plus_one_two(3).unwrap()).unwrap();
        assert_eq!(h3.values, qs(&[2, 2]));
        assert_eq!(h3.method, Method::Oracle);

        let h5 = hitting_oracle::<Rational>(&CirculantWalk::plus_one_two(5).unwrap()).unwrap();
        assert_eq!(h5.values, vec![q(34, 11), q(28, 11), q(42, 11), q(46, 11)]);

        let parity = CirculantWalk::new(4, &[2]).unwrap();
        assert!(matches!(
            hitting_oracle::<Rational>(&parity),
            Err(Error::Unreachable { modulus: 4, .. })
        ));
    }

    #[test]
    fn two_cycle() {
        let w = CirculantWalk::new(2, &[1]).unwrap();
        assert_eq!(hitting_oracle::<Rational>(&w).unwrap().values, qs(&[1]));
    }

    #[test]
    fn reachability() {
        let w = CirculantWalk::new(6, &[2, 4]).unwrap();
        assert_eq!(w.generator_gcd(), 2);
        assert!(w.reaches(4));
        assert!(!w.reaches(3));
        assert!(!w.is_irreducible());
    }

    #[test]
    fn translation_examples() {
        let cases = [(5, vec![1, 2], 2), (3, vec![1, 2], 1), (5, vec![1, 2, 3, 4], 3)];
        for (n, steps, k) in cases {
            let w = CirculantWalk::new(n, &steps).unwrap();
            assert_eq!(
                translation_check::<Rational>(&w, k).unwrap(),
                TranslationVerdict::Holds,
                "{w} k={k}"
            );
        }
        let k5 = CirculantWalk::new(5, &[1, 2, 3, 4]).unwrap();
        let to3 = hitting_times_to::<Rational>(&k5, 3).unwrap();
        assert_eq!(to3, qs(&[4, 4, 4, 0, 4]));
    }

    #[test]
    fn row_sums_for_plus_one_two() {
        for n in 3..40 {
            let sys = build_system::<Rational>(&CirculantWalk::plus_one_two(n).unwrap());
            for l in 1..n {
                let row = sys.matrix.row(l - 1);
                let twos = row.iter().filter(|v| **v == q(2, 1)).count();
                let minus = row.iter().filter(|v| **v == q(-1, 1)).count();
                assert_eq!(twos, 1);
                assert!(minus <= 2);
                let dropped = [1, 2].iter().filter(|&&s| (l + n - s) % n == 0).count();
                let sum: Rational = row.iter().cloned().sum();
                assert_eq!(sum, q(dropped as i64, 1), "n={n} l={l}");
            }
        }
    }

    fn irreducible_walk() -> impl Strategy<Value = CirculantWalk> {
        (2usize..=14)
            .prop_flat_map(|n| (Just(n), proptest::collection::vec(1..n as i64, 1..=5)))
            .prop_filter_map("gcd must be 1", |(n, steps)| {
                let w = CirculantWalk::new(n, &steps).ok()?;
                w.is_irreducible().then_some(w)
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn oracle_positive_and_satisfies_recurrence(w in irreducible_walk()) {
            let n = w.modulus();
            let h = hitting_oracle::<Rational>(&w).unwrap().values;
            let at = |v: usize| if v == 0 { q(0, 1) } else { h[v - 1].clone() };
            let deg = q(w.degree() as i64, 1);
            for l in 1..n {
                prop_assert!(h[l - 1] > q(0, 1));
                let neighbours: Rational = w.steps().iter().map(|&s| at((l + n - s) % n)).sum();
                prop_assert_eq!(deg.clone() * at(l) - neighbours, deg.clone());
            }
        }

        #[test]
        fn translation_invariance(w in irreducible_walk(), k in 0usize..14) {
            prop_assert_eq!(translation_check::<Rational>(&w, k).unwrap(), TranslationVerdict::Holds);
        }
    }
}
