//! Exact Fibonacci/Lucas arithmetic, Zeckendorf representations, and the
//! special-case rewrite identities that turn fixed-gap instances of the main
//! equation into Lucas-form equations.

use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_traits::{One, Zero};

/// `F_n` by fast doubling: `F(2k) = F(k)·(2L(k) − 2F(k))`-free form using
/// `F(2k) = F(k)(2F(k+1) − F(k))`, `F(2k+1) = F(k)² + F(k+1)²`.
pub fn fib(n: u64) -> BigUint {
    fib_pair(n).0
}

/// `(F_n, F_{n+1})` by fast doubling.
pub fn fib_pair(n: u64) -> (BigUint, BigUint) {
    if n == 0 {
        return (BigUint::zero(), BigUint::one());
    }
    let (a, b) = fib_pair(n / 2); // (F(k), F(k+1))
    let two_b_minus_a = (&b << 1u32) - &a;
    let c = &a * &two_b_minus_a; // F(2k)
    let d = &a * &a + &b * &b; // F(2k+1)
    if n % 2 == 0 {
        (c, d)
    } else {
        let e = &c + &d; // F(2k+2)
        (d, e)
    }
}

/// `L_n` via `L_n = F_{n−1} + F_{n+1} = 2F_{n+1} − F_n`.
pub fn lucas(n: u64) -> BigUint {
    let (f, f1) = fib_pair(n);
    (f1 << 1u32) - f
}

/// `(L_g, F_g)` together; used for the closed form of `α^{-g}`.
pub fn lucas_fib_pair(g: u64) -> (BigUint, BigUint) {
    let (f, f1) = fib_pair(g);
    ((&f1 << 1u32) - &f, f)
}

/// Zeckendorf representation: descending Fibonacci indices, each ≥ 2,
/// consecutive gaps ≥ 2, summing exactly to the represented integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeckendorfRep {
    indices: Vec<u64>,
}

impl ZeckendorfRep {
    pub fn indices(&self) -> &[u64] {
        &self.indices
    }

    /// Reconstruct the represented integer.
    pub fn value(&self) -> BigUint {
        self.indices.iter().map(|&i| fib(i)).sum()
    }
}

/// Greedy Zeckendorf decomposition of `N ≥ 1`; smallest usable index is 2
/// (F₁ = F₂ = 1, and canonical output never uses index 1).
pub fn zeckendorf(n: &BigUint) -> Result<ZeckendorfRep> {
    if n.is_zero() {
        return Err(Error::ZeroZeckendorf);
    }
    // grow the Fibonacci table to cover N
    let mut fibs: Vec<BigUint> = vec![BigUint::zero(), BigUint::one(), BigUint::one()];
    while fibs.last().unwrap() <= n {
        let next = &fibs[fibs.len() - 1] + &fibs[fibs.len() - 2];
        fibs.push(next);
    }
    let mut rest = n.clone();
    let mut idx = fibs.len() - 1;
    let mut indices = Vec::new();
    while !rest.is_zero() {
        while fibs[idx] > rest {
            idx -= 1;
        }
        debug_assert!(idx >= 2);
        indices.push(idx as u64);
        rest -= &fibs[idx];
        // greedy choice guarantees the next index is at least 2 below
        idx = idx.saturating_sub(2);
        if idx < 2 && !rest.is_zero() {
            idx = 2;
        }
    }
    Ok(ZeckendorfRep { indices })
}

/// The gap pairs `(n₁−n₂, n₁−n₃)` whose linear forms degenerate and admit an
/// exact rewrite into a Lucas-form equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GapPair(pub u64, pub u64);

/// Shape of a Lucas-form equation `c·L_{k+s} + F_m = 2^a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub enum LucasEquationShape {
    /// `L_{k+1} + F_m`
    LKPlus1,
    /// `L_{k+3} + F_m`
    LKPlus3,
    /// `2·L_{k+3} + F_m`
    TwoLKPlus3,
    /// `2·L_{k+5} + F_m`
    TwoLKPlus5,
}

impl LucasEquationShape {
    /// Coefficient `c` and index shift `s` in `c·L_{k+s} + F_m`.
    pub fn coeff_shift(self) -> (u64, u64) {
        match self {
            LucasEquationShape::LKPlus1 => (1, 1),
            LucasEquationShape::LKPlus3 => (1, 3),
            LucasEquationShape::TwoLKPlus3 => (2, 3),
            LucasEquationShape::TwoLKPlus5 => (2, 5),
        }
    }

    /// Evaluate `c·L_{k+s} + F_m`.
    pub fn value(self, k: u64, m: u64) -> BigUint {
        let (c, s) = self.coeff_shift();
        lucas(k + s) * BigUint::from(c) + fib(m)
    }

    pub fn label(self) -> &'static str {
        match self {
            LucasEquationShape::LKPlus1 => "L_{k+1}+F_m",
            LucasEquationShape::LKPlus3 => "L_{k+3}+F_m",
            LucasEquationShape::TwoLKPlus3 => "2L_{k+3}+F_m",
            LucasEquationShape::TwoLKPlus5 => "2L_{k+5}+F_m",
        }
    }

    pub fn all() -> [LucasEquationShape; 4] {
        [
            LucasEquationShape::LKPlus1,
            LucasEquationShape::LKPlus3,
            LucasEquationShape::TwoLKPlus3,
            LucasEquationShape::TwoLKPlus5,
        ]
    }
}

/// Rewrite the degenerate-gap instance of the four-term sum into its exact
/// Lucas form. For the gap pair `(g₂, g₃) = (n₁−n₂, n₁−n₃)` and `k = n₂`
/// (except as noted), the left-hand side `F_{n₁}+F_{n₂}+F_{n₃}+F_{n₄}`
/// collapses to `c·L_{k+s} + F_{n₄}`:
///
/// With `k = n₂` throughout:
///
/// * `(1,1)`: `F_{k+1}+2F_k = L_{k+1}`
/// * `(3,0)`: `2F_{k+3}+F_k = L_{k+3}`
/// * `(4,3)`: `F_{k+4}+F_k+F_{k+1} = L_{k+3}`
/// * `(5,1)`: `F_{k+5}+F_k+F_{k+4} = 2L_{k+3}`
/// * `(8,7)`: `F_{k+8}+F_k+F_{k+1} = 2L_{k+5}`
///
/// Every call verifies the identity with exact big integers before
/// returning.
pub fn special_case_rewrite(
    case: GapPair,
    n2: u64,
    n4: u64,
) -> Result<(LucasEquationShape, u64, u64)> {
    let GapPair(g2, g3) = case;
    // n1 = n2 + g2, n3 = n1 - g3
    let n1 = n2 + g2;
    if n1 < g3 {
        return Err(Error::Invalid("n3 would be negative".into()));
    }
    let n3 = n1 - g3;
    let (shape, k) = match (g2, g3) {
        (1, 1) => (LucasEquationShape::LKPlus1, n2),
        (3, 0) => (LucasEquationShape::LKPlus3, n2),
        (4, 3) => (LucasEquationShape::LKPlus3, n2),
        (5, 1) => (LucasEquationShape::TwoLKPlus3, n2),
        (8, 7) => (LucasEquationShape::TwoLKPlus5, n2),
        _ => return Err(Error::UnsupportedGapPair(g2, g3)),
    };
    // exact verification: F_{n1} + F_{n2} + F_{n3} = c·L_{k+s}
    let lhs = fib(n1) + fib(n2) + fib(n3);
    let (c, s) = shape.coeff_shift();
    let rhs = lucas(k + s) * BigUint::from(c);
    if lhs != rhs {
        return Err(Error::Invalid(format!(
            "rewrite identity failed for case ({g2},{g3}) at n2={n2}"
        )));
    }
    Ok((shape, k, n4))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn fib_naive(n: u64) -> BigUint {
        let (mut a, mut b) = (BigUint::zero(), BigUint::one());
        for _ in 0..n {
            let c = &a + &b;
            a = b;
            b = c;
        }
        a
    }

    #[test]
    fn fib_seed_and_small_values() {
        assert_eq!(fib(0), BigUint::zero());
        assert_eq!(fib(1), BigUint::one());
        assert_eq!(fib(13), BigUint::from(233u32));
        assert_eq!(fib(16), BigUint::from(987u32));
        assert_eq!(lucas(0), BigUint::from(2u32));
        assert_eq!(lucas(1), BigUint::one());
        assert_eq!(lucas(5), BigUint::from(11u32));
        assert_eq!(lucas(8), BigUint::from(47u32));
    }

    #[test]
    fn fast_doubling_matches_recurrence() {
        let mut a = BigUint::zero();
        let mut b = BigUint::one();
        for n in 0..2000u64 {
            assert_eq!(fib(n), a, "n={n}");
            let c = &a + &b;
            a = b;
            b = c;
        }
        // spot checks far out
        for n in [5000u64, 9999, 10000] {
            assert_eq!(fib(n), fib_naive(n));
        }
    }

    #[test]
    fn lucas_is_fib_sum() {
        for k in 1..=1000u64 {
            assert_eq!(lucas(k), fib(k - 1) + fib(k + 1), "k={k}");
        }
    }

    #[test]
    fn zeckendorf_known_values() {
        assert_eq!(zeckendorf(&BigUint::one()).unwrap().indices(), &[2]);
        assert_eq!(
            zeckendorf(&BigUint::from(256u32)).unwrap().indices(),
            &[13, 8, 3]
        );
        assert_eq!(
            zeckendorf(&BigUint::from(1024u32)).unwrap().indices(),
            &[16, 9, 4]
        );
        assert!(zeckendorf(&BigUint::zero()).is_err());
    }

    #[test]
    fn zeckendorf_round_trip_and_gaps() {
        for n in 1u64..=3000 {
            let z = zeckendorf(&BigUint::from(n)).unwrap();
            assert_eq!(z.value(), BigUint::from(n), "n={n}");
            let idx = z.indices();
            for w in idx.windows(2) {
                assert!(w[0] >= w[1] + 2, "gap violated at n={n}: {idx:?}");
            }
            assert!(*idx.last().unwrap() >= 2);
        }
    }

    #[test]
    fn rewrite_identities() {
        // (1,1): F_{k+1}+2F_k = L_{k+1}
        let (shape, k, m) = special_case_rewrite(GapPair(1, 1), 5, 3).unwrap();
        assert_eq!((shape, k, m), (LucasEquationShape::LKPlus1, 5, 3));
        assert_eq!(shape.value(5, 3), BigUint::from(20u32)); // L6 + F3 = 18 + 2

        // (5,1) with n2=2 (so k = 2): F_7+F_2+F_6+F_2 = 2L_5+F_2
        let (shape, k, _) = special_case_rewrite(GapPair(5, 1), 2, 2).unwrap();
        assert_eq!((shape, k), (LucasEquationShape::TwoLKPlus3, 2));
        assert_eq!(shape.value(2, 2), BigUint::from(23u32)); // 2·11 + 1

        // (8,7) with n2=2 (k = 2): F_10+F_2+F_3+F_2 = 2L_7+F_2
        let (shape, k, _) = special_case_rewrite(GapPair(8, 7), 2, 2).unwrap();
        assert_eq!(shape, LucasEquationShape::TwoLKPlus5);
        assert_eq!(k, 2);
        assert_eq!(shape.value(2, 2), BigUint::from(59u32)); // 2·29 + 1

        assert!(matches!(
            special_case_rewrite(GapPair(2, 2), 5, 2),
            Err(Error::UnsupportedGapPair(2, 2))
        ));
    }

    #[test]
    fn rewrite_families_hold_exactly() {
        for n2 in 1..=200u64 {
            for case in [
                GapPair(1, 1),
                GapPair(3, 0),
                GapPair(4, 3),
                GapPair(5, 1),
                GapPair(8, 7),
            ] {
                special_case_rewrite(case, n2, 2)
                    .unwrap_or_else(|e| panic!("case {case:?} n2={n2}: {e}"));
            }
        }
    }
}
