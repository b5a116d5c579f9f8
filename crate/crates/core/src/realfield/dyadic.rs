//! Exact dyadic rationals `mant * 2^exp`.
//!
//! These are the building blocks of the enclosure arithmetic: midpoints and
//! radii are dyadic so that equality and comparison are decidable exactly.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// Rounding direction for precision-limited operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    /// Toward negative infinity.
    Floor,
    /// Toward positive infinity.
    Ceil,
    /// To nearest (ties toward positive infinity; we only need soundness).
    Nearest,
}

/// An exact dyadic rational `mant * 2^exp`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        Dyadic { mant, exp }.normalized()
    }

    pub fn zero() -> Self {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { mant: BigInt::one(), exp: 0 }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Dyadic { mant: n, exp: 0 }.normalized()
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_bigint(BigInt::from(n))
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Self {
        Dyadic { mant: BigInt::one(), exp: e }
    }

    pub fn mant(&self) -> &BigInt {
        &self.mant
    }

    pub fn exp(&self) -> i64 {
        self.exp
    }

    fn normalized(mut self) -> Self {
        if self.mant.is_zero() {
            self.exp = 0;
            return self;
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz;
            self.exp += tz as i64;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    /// Number of significant bits of the mantissa.
    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// Exponent of the most significant bit: the value lies in
    /// `[2^(msb_exp()-1), 2^msb_exp())` for positive values.
    pub fn msb_exp(&self) -> i64 {
        debug_assert!(!self.is_zero());
        self.exp + self.mant.bits() as i64
    }

    pub fn neg(&self) -> Self {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }

    pub fn abs(&self) -> Self {
        Dyadic { mant: self.mant.abs(), exp: self.exp }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        Dyadic { mant: a + b, exp: e }.normalized()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Dyadic { mant: &self.mant * &other.mant, exp: self.exp + other.exp }.normalized()
    }

    pub fn mul_bigint(&self, other: &BigInt) -> Self {
        Dyadic { mant: &self.mant * other, exp: self.exp }.normalized()
    }

    pub fn mul_pow2(&self, e: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic { mant: self.mant.clone(), exp: self.exp + e }
    }

    pub fn cmp(&self, other: &Self) -> Ordering {
        match self.sub(other).mant.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }

    pub fn lt(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Less
    }

    pub fn le(&self, other: &Self) -> bool {
        self.cmp(other) != Ordering::Greater
    }

    /// Round to at most `prec` significant bits. The result differs from the
    /// exact value by less than one ulp (`2^(result.exp)`) in the direction
    /// dictated by `round`.
    pub fn round(&self, prec: u64, round: Round) -> Self {
        let bits = self.mant.bits();
        if bits <= prec {
            return self.clone();
        }
        let drop = (bits - prec) as i64;
        let mant = match round {
            Round::Floor => shr_floor(&self.mant, drop as u64),
            Round::Ceil => -shr_floor(&(-&self.mant), drop as u64),
            Round::Nearest => shr_floor(&(&self.mant + (BigInt::one() << (drop as u64 - 1))), drop as u64),
        };
        Dyadic { mant, exp: self.exp + drop }.normalized()
    }

    /// Quotient `self / other` with about `prec` significant bits, rounded in
    /// the given direction; `other` must be nonzero.
    pub fn div(&self, other: &Self, prec: u64, round: Round) -> Self {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Self::zero();
        }
        let sa = self.mant.bits();
        let sb = other.mant.bits();
        let shift = (prec + sb).saturating_sub(sa) + 2;
        let num = &self.mant << shift;
        let mant = match round {
            Round::Floor => num.div_floor(&other.mant),
            Round::Ceil => num.div_ceil(&other.mant),
            Round::Nearest => {
                let twice = (num << 1u32).div_floor(&other.mant);
                (twice + 1) >> 1u32
            }
        };
        Dyadic { mant, exp: self.exp - other.exp - shift as i64 }
            .normalized()
            .round(prec, round)
    }

    /// Exact floor to an integer.
    pub fn floor_bigint(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as u64
        } else {
            shr_floor(&self.mant, (-self.exp) as u64)
        }
    }

    /// Nearest integer (ties up).
    pub fn round_bigint(&self) -> BigInt {
        self.add(&Dyadic::pow2(-1)).floor_bigint()
    }

    pub fn to_f64(&self) -> f64 {
        // Only for display; clamp huge exponents.
        let bits = self.mant.bits();
        if bits == 0 {
            return 0.0;
        }
        let top = self.round(64, Round::Nearest);
        let m: f64 = match top.mant.to_string().parse() {
            Ok(v) => v,
            Err(_) => f64::NAN,
        };
        m * 2f64.powi(top.exp.clamp(-2000, 2000) as i32)
    }

    pub fn from_biguint(n: BigUint) -> Self {
        Self::from_bigint(BigInt::from(n))
    }
}

/// Shift right rounding toward negative infinity.
fn shr_floor(n: &BigInt, k: u64) -> BigInt {
    // num-bigint's `>>` on negative numbers rounds toward negative infinity,
    // matching primitive arithmetic shifts; asserted in tests below.
    n >> k
}

impl std::fmt::Display for Dyadic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shr_is_floor_for_negative() {
        assert_eq!(shr_floor(&BigInt::from(-5), 1), BigInt::from(-3));
        assert_eq!(shr_floor(&BigInt::from(-4), 1), BigInt::from(-2));
        assert_eq!(shr_floor(&BigInt::from(5), 1), BigInt::from(2));
    }

    #[test]
    fn add_aligns_exponents() {
        let a = Dyadic::new(BigInt::from(3), -2); // 0.75
        let b = Dyadic::new(BigInt::from(1), -3); // 0.125
        assert_eq!(a.add(&b), Dyadic::new(BigInt::from(7), -3));
    }

    #[test]
    fn round_directions() {
        let x = Dyadic::new(BigInt::from(0b10110111), 0); // 183
        let f = x.round(4, Round::Floor);
        let c = x.round(4, Round::Ceil);
        assert!(f.le(&x) && x.le(&c));
        assert!(c.sub(&f).le(&Dyadic::pow2(4))); // one ulp apart at scale 2^4
        let neg = x.neg();
        let nf = neg.round(4, Round::Floor);
        let nc = neg.round(4, Round::Ceil);
        assert!(nf.le(&neg) && neg.le(&nc));
    }

    #[test]
    fn div_brackets_quotient() {
        let a = Dyadic::from_i64(1);
        let b = Dyadic::from_i64(3);
        let lo = a.div(&b, 60, Round::Floor);
        let hi = a.div(&b, 60, Round::Ceil);
        // lo <= 1/3 <= hi: check 3*lo <= 1 <= 3*hi
        assert!(lo.mul(&b).le(&a));
        assert!(a.le(&hi.mul(&b)));
        assert!(hi.sub(&lo).le(&Dyadic::pow2(-55)));
    }

    #[test]
    fn floor_of_negative_dyadic() {
        let x = Dyadic::new(BigInt::from(-3), -1); // -1.5
        assert_eq!(x.floor_bigint(), BigInt::from(-2));
        assert_eq!(x.round_bigint(), BigInt::from(-1));
    }
}
