//! Exact arithmetic in ℚ(√5).
//!
//! Elements are stored as `(p + q√5)/r` in lowest terms with `r > 0`. The
//! golden ratio α, its conjugate β, and the exact Υ values all live here, so
//! every algebraic identity in the pipeline can be decided without floating
//! point.

use super::ball::RigorousReal;
use super::consts;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use std::collections::HashMap;

/// An exact element `(p + q√5)/r` of ℚ(√5), in lowest terms, `r > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadFieldElement {
    p: BigInt,
    q: BigInt,
    r: BigInt,
}

impl QuadFieldElement {
    pub fn new(p: BigInt, q: BigInt, r: BigInt) -> Self {
        assert!(!r.is_zero(), "zero denominator");
        QuadFieldElement { p, q, r }.normalized()
    }

    fn normalized(mut self) -> Self {
        if self.r.is_negative() {
            self.p = -self.p;
            self.q = -self.q;
            self.r = -self.r;
        }
        let g = self.p.gcd(&self.q).gcd(&self.r);
        if !g.is_one() {
            self.p /= &g;
            self.q /= &g;
            self.r /= &g;
        }
        self
    }

    pub fn from_integer(n: i64) -> Self {
        QuadFieldElement { p: BigInt::from(n), q: BigInt::zero(), r: BigInt::one() }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(BigInt::from(num), BigInt::zero(), BigInt::from(den))
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// α = (1 + √5)/2.
    pub fn alpha() -> Self {
        QuadFieldElement { p: BigInt::one(), q: BigInt::one(), r: BigInt::from(2) }
    }

    /// β = (1 − √5)/2.
    pub fn beta() -> Self {
        QuadFieldElement { p: BigInt::one(), q: -BigInt::one(), r: BigInt::from(2) }
    }

    /// √5.
    pub fn sqrt5() -> Self {
        QuadFieldElement { p: BigInt::zero(), q: BigInt::one(), r: BigInt::one() }
    }

    pub fn rational_part(&self) -> &BigInt {
        &self.p
    }

    pub fn surd_part(&self) -> &BigInt {
        &self.q
    }

    pub fn denominator(&self) -> &BigInt {
        &self.r
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.p.is_one() && self.q.is_zero() && self.r.is_one()
    }

    pub fn add(&self, other: &Self) -> Self {
        QuadFieldElement {
            p: &self.p * &other.r + &other.p * &self.r,
            q: &self.q * &other.r + &other.q * &self.r,
            r: &self.r * &other.r,
        }
        .normalized()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        QuadFieldElement { p: -&self.p, q: -&self.q, r: self.r.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        QuadFieldElement {
            p: &self.p * &other.p + BigInt::from(5) * &self.q * &other.q,
            q: &self.p * &other.q + &self.q * &other.p,
            r: &self.r * &other.r,
        }
        .normalized()
    }

    /// Galois conjugate `(p − q√5)/r`.
    pub fn conj(&self) -> Self {
        QuadFieldElement { p: self.p.clone(), q: -&self.q, r: self.r.clone() }
    }

    /// Field norm `x · conj(x)` as an exact rational (num, den).
    pub fn norm(&self) -> (BigInt, BigInt) {
        let num = &self.p * &self.p - BigInt::from(5) * &self.q * &self.q;
        let den = &self.r * &self.r;
        let g = num.gcd(&den);
        (num / &g, den / g)
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        // 1/x = conj(x) / (x conj(x)) = r(p - q√5) / (p² - 5q²)
        let n = &self.p * &self.p - BigInt::from(5) * &self.q * &self.q;
        QuadFieldElement { p: &self.r * &self.p, q: -(&self.r * &self.q), r: n }.normalized()
    }

    /// Integer power, negative exponents allowed (element must be nonzero).
    pub fn pow_i64(&self, n: i64) -> Self {
        let base = if n < 0 { self.inv() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }

    /// Sign of the real embedding (with √5 > 0), decided exactly.
    pub fn sign(&self) -> i32 {
        // sign of p + q√5: compare p² and 5q² with the signs of p, q
        let sp = sign_of(&self.p);
        let sq = sign_of(&self.q);
        if sq == 0 {
            return sp;
        }
        if sp == 0 {
            return sq;
        }
        if sp == sq {
            return sp;
        }
        // opposite signs: |p| vs √5|q|
        let p2 = &self.p * &self.p;
        let q25 = BigInt::from(5) * &self.q * &self.q;
        match p2.cmp(&q25) {
            std::cmp::Ordering::Greater => sp,
            std::cmp::Ordering::Less => sq,
            std::cmp::Ordering::Equal => 0, // impossible: √5 irrational unless q=0
        }
    }

    /// Rigorous enclosure of the real embedding at the given precision.
    pub fn embed(&self, prec: u32) -> RigorousReal {
        if self.q.is_zero() {
            return RigorousReal::from_ratio(&self.p, &self.r, prec);
        }
        let s5 = consts::sqrt5(prec + 8);
        let num = s5.mul_bigint(&self.q).add(&RigorousReal::from_bigint(&self.p, prec + 8));
        num.div(&RigorousReal::from_bigint(&self.r, prec + 8))
            .expect("denominator is a nonzero integer")
    }
}

fn sign_of(n: &BigInt) -> i32 {
    if n.is_zero() {
        0
    } else if n.is_positive() {
        1
    } else {
        -1
    }
}

/// `α^{-g}` computed by the closed form `(−1)^g (L_g − F_g √5)/2`, verified
/// against `pow_i64` in tests.
pub fn alpha_pow_neg(g: u64) -> QuadFieldElement {
    let (l, f) = crate::sequences::lucas_fib_pair(g);
    let (l, f) = (BigInt::from(l), BigInt::from(f));
    let (p, q) = if g % 2 == 0 { (l, -f) } else { (-l, f) };
    QuadFieldElement::new(p, q, BigInt::from(2))
}

/// Υ₁(t) = √5 (1 + α^{-t})^{-1}.
pub fn upsilon1_exact(t: u64) -> QuadFieldElement {
    upsilon_exact(&[t])
}

/// Υ₂(t, s) = √5 (1 + α^{-t} + α^{-s})^{-1}.
pub fn upsilon2_exact(t: u64, s: u64) -> QuadFieldElement {
    upsilon_exact(&[t, s])
}

/// Υ₃(t, u, v) = √5 (1 + α^{-t} + α^{-u} + α^{-v})^{-1}.
pub fn upsilon3_exact(t: u64, u: u64, v: u64) -> QuadFieldElement {
    upsilon_exact(&[t, u, v])
}

pub fn upsilon_exact(gaps: &[u64]) -> QuadFieldElement {
    let mut s = QuadFieldElement::one();
    for &g in gaps {
        s = s.add(&alpha_pow_neg(g));
    }
    QuadFieldElement::sqrt5().mul(&s.inv())
}

pub const DEFAULT_DEPENDENCE_RADIUS: i64 = 12;

static DEP_MAP: Lazy<HashMap<QuadFieldElement, (i64, i64)>> = Lazy::new(|| {
    let mut m = HashMap::new();
    let two = QuadFieldElement::from_integer(2);
    for p in -DEFAULT_DEPENDENCE_RADIUS..=DEFAULT_DEPENDENCE_RADIUS {
        let ap = QuadFieldElement::alpha().pow_i64(p);
        for q in -DEFAULT_DEPENDENCE_RADIUS..=DEFAULT_DEPENDENCE_RADIUS {
            let v = ap.mul(&two.pow_i64(-q));
            // smaller |p|+|q| wins on collisions (there are none in range,
            // but insert order makes that explicit)
            m.entry(v).or_insert((p, q));
        }
    }
    m
});

/// If `y = α^p / 2^q` for some integers `|p|, |q| ≤ search_radius`, return
/// `(p, q)`; the identity is verified by exact field arithmetic. `μ = log
/// y/log α` then equals `p − q·τ`, the degenerate case of the reduction.
pub fn detect_dependence(y: &QuadFieldElement, search_radius: i64) -> Option<(i64, i64)> {
    if search_radius == DEFAULT_DEPENDENCE_RADIUS {
        return DEP_MAP.get(y).copied();
    }
    let two = QuadFieldElement::from_integer(2);
    for p in -search_radius..=search_radius {
        let ap = QuadFieldElement::alpha().pow_i64(p);
        for q in -search_radius..=search_radius {
            if ap == y.mul(&two.pow_i64(q)) {
                return Some((p, q));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_beta_relations() {
        let a = QuadFieldElement::alpha();
        let b = QuadFieldElement::beta();
        assert_eq!(a.mul(&b), QuadFieldElement::from_integer(-1));
        assert_eq!(a.add(&b), QuadFieldElement::one());
        assert_eq!(a.conj(), b);
    }

    #[test]
    fn inverse_round_trips() {
        let x = QuadFieldElement::new(BigInt::from(3), BigInt::from(-7), BigInt::from(4));
        assert!(x.mul(&x.inv()).is_one());
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let a = QuadFieldElement::alpha();
        let mut acc = QuadFieldElement::one();
        for n in 0..=10i64 {
            assert_eq!(a.pow_i64(n), acc);
            assert_eq!(a.pow_i64(-n), acc.inv());
            acc = acc.mul(&a);
        }
    }

    #[test]
    fn alpha_pow_neg_closed_form() {
        let a = QuadFieldElement::alpha();
        for g in 0..60u64 {
            assert_eq!(alpha_pow_neg(g), a.pow_i64(-(g as i64)), "g = {g}");
        }
    }

    #[test]
    fn upsilon1_special_values() {
        // Υ₁(2) = α
        assert_eq!(upsilon1_exact(2), QuadFieldElement::alpha());
        // Υ₁(0) = √5/2
        assert_eq!(
            upsilon1_exact(0),
            QuadFieldElement::new(BigInt::zero(), BigInt::one(), BigInt::from(2))
        );
        // Υ₁(6) = α³/2
        assert_eq!(
            upsilon1_exact(6),
            QuadFieldElement::alpha().pow_i64(3).mul(&QuadFieldElement::from_ratio(1, 2))
        );
    }

    #[test]
    fn upsilon2_unit_values() {
        assert!(upsilon2_exact(1, 1).is_one());
        assert!(upsilon2_exact(3, 0).is_one());
    }

    #[test]
    fn dependence_detection() {
        assert_eq!(detect_dependence(&upsilon1_exact(2), 12), Some((1, 0)));
        assert_eq!(detect_dependence(&upsilon1_exact(6), 12), Some((3, 1)));
        assert_eq!(detect_dependence(&upsilon2_exact(5, 1), 12), Some((2, 1)));
        assert_eq!(detect_dependence(&upsilon2_exact(8, 7), 12), Some((3, 1)));
        assert_eq!(detect_dependence(&upsilon2_exact(0, 3), 12), Some((0, 0)));
        assert_eq!(detect_dependence(&upsilon1_exact(3), 12), None);
        assert_eq!(detect_dependence(&upsilon1_exact(17), 12), None);
    }

    #[test]
    fn dependence_rejects_perturbation() {
        // Υ₁(2) + 2⁻¹⁰⁰ is no longer α
        let eps = QuadFieldElement::new(
            BigInt::one(),
            BigInt::zero(),
            BigInt::one() << 100u32,
        );
        let y = upsilon1_exact(2).add(&eps);
        assert_eq!(detect_dependence(&y, 12), None);
    }

    #[test]
    fn sign_decides_exactly() {
        assert_eq!(QuadFieldElement::alpha().sign(), 1);
        assert_eq!(QuadFieldElement::beta().sign(), -1);
        assert_eq!(QuadFieldElement::zero().sign(), 0);
        // 9 - 4√5 = (√5-2)² conj... value ≈ 0.0557 > 0
        let x = QuadFieldElement::new(BigInt::from(9), BigInt::from(-4), BigInt::one());
        assert_eq!(x.sign(), 1);
        let y = QuadFieldElement::new(BigInt::from(-9), BigInt::from(4), BigInt::one());
        assert_eq!(y.sign(), -1);
    }

    #[test]
    fn embed_alpha() {
        let a = QuadFieldElement::alpha().embed(128);
        // α satisfies α² = α + 1
        let lhs = a.mul(&a);
        let rhs = a.add(&RigorousReal::from_i64(1, 128));
        assert!(lhs.intersects(&rhs));
    }
}
