//! Midpoint-radius enclosures over dyadic rationals.
//!
//! Every analytic quantity in the pipeline flows through [`RigorousReal`]:
//! the true value is guaranteed to lie in `[mid - rad, mid + rad]`, and all
//! operations widen the radius soundly (outward rounding). Elementary
//! functions are computed by fixed-point series with explicit ulp accounting.

use super::dyadic::{Dyadic, Round};
use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::sync::Mutex;

/// Radii are kept short; 32 bits of radius mantissa is plenty.
const RAD_BITS: u64 = 32;

/// A rigorous enclosure `[mid - rad, mid + rad]` at a working precision.
#[derive(Clone, Debug)]
pub struct RigorousReal {
    mid: Dyadic,
    rad: Dyadic,
    prec: u32,
}

impl RigorousReal {
    pub fn new(mid: Dyadic, rad: Dyadic, prec: u32) -> Self {
        debug_assert!(!rad.is_negative());
        RigorousReal { mid, rad, prec }.fix()
    }

    /// An exact (radius-zero) enclosure.
    pub fn exact(mid: Dyadic, prec: u32) -> Self {
        RigorousReal { mid, rad: Dyadic::zero(), prec }
    }

    pub fn from_bigint(n: &BigInt, prec: u32) -> Self {
        Self::exact(Dyadic::from_bigint(n.clone()), prec)
    }

    pub fn from_i64(n: i64, prec: u32) -> Self {
        Self::exact(Dyadic::from_i64(n), prec)
    }

    /// Enclosure of the exact rational `num/den`.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32) -> Self {
        assert!(!den.is_zero());
        let n = Dyadic::from_bigint(num.clone());
        let d = Dyadic::from_bigint(den.clone());
        let lo = n.div(&d, prec as u64 + 4, Round::Floor);
        let hi = n.div(&d, prec as u64 + 4, Round::Ceil);
        Self::from_endpoints(lo, hi, prec)
    }

    pub fn from_endpoints(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        debug_assert!(lo.le(&hi));
        let two = Dyadic::from_i64(2);
        let mid = lo.add(&hi).div(&two, prec as u64 + 8, Round::Nearest);
        // rad must cover both endpoints from the rounded midpoint
        let r1 = mid.sub(&lo).abs();
        let r2 = hi.sub(&mid).abs();
        let rad = if r1.lt(&r2) { r2 } else { r1 };
        RigorousReal { mid, rad, prec }.fix()
    }

    pub fn mid(&self) -> &Dyadic {
        &self.mid
    }

    pub fn rad(&self) -> &Dyadic {
        &self.rad
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn lower(&self) -> Dyadic {
        self.mid.sub(&self.rad)
    }

    pub fn upper(&self) -> Dyadic {
        self.mid.add(&self.rad)
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    /// Round the midpoint to the working precision and absorb the rounding
    /// error into the radius; keep the radius mantissa short.
    fn fix(mut self) -> Self {
        let p = self.prec as u64;
        let rounded = self.mid.round(p, Round::Nearest);
        if rounded != self.mid {
            let err = rounded.sub(&self.mid).abs();
            self.rad = self.rad.add(&err);
            self.mid = rounded;
        }
        if self.rad.bits() > RAD_BITS {
            self.rad = self.rad.round(RAD_BITS, Round::Ceil);
        }
        self
    }

    pub fn neg(&self) -> Self {
        RigorousReal { mid: self.mid.neg(), rad: self.rad.clone(), prec: self.prec }
    }

    pub fn add(&self, other: &Self) -> Self {
        RigorousReal {
            mid: self.mid.add(&other.mid),
            rad: self.rad.add(&other.rad),
            prec: self.prec.min(other.prec),
        }
        .fix()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mid = self.mid.mul(&other.mid);
        let rad = self
            .mid
            .abs()
            .mul(&other.rad)
            .add(&other.mid.abs().mul(&self.rad))
            .add(&self.rad.mul(&other.rad));
        RigorousReal { mid, rad, prec: self.prec.min(other.prec) }.fix()
    }

    pub fn mul_bigint(&self, n: &BigInt) -> Self {
        RigorousReal {
            mid: self.mid.mul_bigint(n),
            rad: self.rad.mul_bigint(&n.abs()),
            prec: self.prec,
        }
        .fix()
    }

    pub fn mul_dyadic(&self, d: &Dyadic) -> Self {
        RigorousReal {
            mid: self.mid.mul(d),
            rad: self.rad.mul(&d.abs()),
            prec: self.prec,
        }
        .fix()
    }

    /// Reciprocal; the enclosure must not contain zero.
    pub fn recip(&self) -> Result<Self> {
        if !self.lower().is_positive() && !self.upper().is_negative() {
            return Err(Error::DivisionByZero);
        }
        let p = self.prec as u64 + 8;
        let one = Dyadic::one();
        // bracket the rounded quotient to bound its own rounding error
        let mid = one.div(&self.mid, p, Round::Nearest);
        let q_lo = one.div(&self.mid, p, Round::Floor);
        let q_hi = one.div(&self.mid, p, Round::Ceil);
        let round_err = q_hi.sub(&q_lo);
        // |1/x - 1/m| <= r / (|m| (|m| - r))
        let am = self.mid.abs();
        let denom = am.mul(&am.sub(&self.rad));
        let rad = self.rad.div(&denom, RAD_BITS, Round::Ceil).add(&round_err);
        Ok(RigorousReal { mid, rad, prec: self.prec }.fix())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.recip()?))
    }

    /// Enlarge the radius by `extra` (used to absorb truncation-error
    /// bounds of series evaluations).
    pub fn widen(&self, extra: &Dyadic) -> Self {
        debug_assert!(!extra.is_negative());
        RigorousReal {
            mid: self.mid.clone(),
            rad: self.rad.add(extra),
            prec: self.prec,
        }
        .fix()
    }

    pub fn abs(&self) -> Self {
        let lo = self.lower();
        let hi = self.upper();
        if !lo.is_negative() {
            self.clone()
        } else if !hi.is_positive() {
            self.neg()
        } else {
            let alo = lo.abs();
            let ahi = hi.abs();
            let m = if alo.lt(&ahi) { ahi } else { alo };
            Self::from_endpoints(Dyadic::zero(), m, self.prec)
        }
    }

    pub fn pow_u32(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = RigorousReal::exact(Dyadic::one(), self.prec);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    // ---- certainty predicates (sound: true only if provable) ----

    pub fn certainly_positive(&self) -> bool {
        self.lower().is_positive()
    }

    pub fn certainly_negative(&self) -> bool {
        self.upper().is_negative()
    }

    pub fn certainly_lt(&self, other: &Self) -> bool {
        self.upper().lt(&other.lower())
    }

    pub fn certainly_le_dyadic(&self, d: &Dyadic) -> bool {
        self.upper().le(d)
    }

    pub fn certainly_ge_dyadic(&self, d: &Dyadic) -> bool {
        d.le(&self.lower())
    }

    /// True if the enclosures overlap (cannot be proven distinct).
    pub fn intersects(&self, other: &Self) -> bool {
        !(self.certainly_lt(other) || other.certainly_lt(self))
    }

    /// True if `self` is contained in `other`, allowing one ulp of slack on
    /// the outer radius.
    pub fn contained_in(&self, other: &Self) -> bool {
        let slack = Dyadic::pow2(other.upper().exp());
        other.lower().sub(&slack).le(&self.lower()) && self.upper().le(&other.upper().add(&slack))
    }

    /// Distance to the nearest integer, `‖x‖ ∈ [0, 1/2]`.
    pub fn nearest_int_distance(&self) -> Result<Self> {
        let half = Dyadic::pow2(-1);
        let a = self.lower().add(&half).floor_bigint();
        let b = self.upper().add(&half).floor_bigint();
        if a != b {
            return Err(Error::AmbiguousAtPrecision { prec: self.prec });
        }
        let n = RigorousReal::from_bigint(&a, self.prec);
        Ok(self.sub(&n).abs())
    }

    // ---- elementary functions ----

    /// Natural logarithm; the enclosure must be strictly positive.
    pub fn ln(&self) -> Result<Self> {
        let lo = self.lower();
        if !lo.is_positive() {
            return Err(Error::NonPositiveLog);
        }
        let p = self.prec as u64 + 32;
        let (lm, lr) = ln_core(&self.mid, p);
        // |ln x - ln m| <= rad / lower
        let widen = if self.rad.is_zero() {
            Dyadic::zero()
        } else {
            self.rad.div(&lo, RAD_BITS, Round::Ceil)
        };
        Ok(RigorousReal { mid: lm, rad: lr.add(&widen), prec: self.prec }.fix())
    }

    /// Exponential (monotone endpoint evaluation).
    pub fn exp(&self) -> Result<Self> {
        let p = self.prec as u64 + 32;
        let (lo_m, lo_r) = exp_core(&self.lower(), p)?;
        let (hi_m, hi_r) = exp_core(&self.upper(), p)?;
        Ok(Self::from_endpoints(lo_m.sub(&lo_r), hi_m.add(&hi_r), self.prec))
    }

    /// Square root; the enclosure must be non-negative.
    pub fn sqrt(&self) -> Result<Self> {
        let lo = self.lower();
        if lo.is_negative() {
            return Err(Error::NegativeSqrt);
        }
        let p = self.prec as u64 + 32;
        let (lo_s, _) = sqrt_core(&lo, p); // floor-directed
        let (hi_s, hi_e) = sqrt_core(&self.upper(), p);
        Ok(Self::from_endpoints(lo_s, hi_s.add(&hi_e), self.prec))
    }
}

impl std::fmt::Display for RigorousReal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} ± {}", self.mid, self.rad)
    }
}

// ---------------------------------------------------------------------------
// fixed-point cores
// ---------------------------------------------------------------------------

/// `ln 2` as a fixed-point integer at scale `2^-f`, with error at most 2 ulp.
fn ln2_fixed(f: u64) -> (BigInt, u64) {
    static CACHE: Lazy<Mutex<HashMap<u64, BigInt>>> = Lazy::new(|| Mutex::new(HashMap::new()));
    if let Some(v) = CACHE.lock().unwrap().get(&f) {
        return (v.clone(), 2);
    }
    // ln 2 = 2 atanh(1/3); compute at f + 24 guard bits, round down to f.
    let g = f + 24;
    let z = (BigInt::one() << g) / 3; // error <= 1 ulp at scale g
    let (sum, err) = atanh_series(&z, g);
    // value = 2*sum at scale g; total error <= 2*(err + dz contribution)
    // dz: d(atanh)/dz at 1/3 = 1/(1-1/9) = 9/8 -> <= 2 ulp
    let total_err_g = 2 * (err + 2);
    debug_assert!(total_err_g < (1 << 23));
    let v = (sum << 1u32) >> (g - f);
    CACHE.lock().unwrap().insert(f, v.clone());
    (v, 2)
}

/// `atanh(z)` where `z` is fixed-point at scale `2^-f`, `|z| <= 0.34`.
/// Returns (sum at scale f, error in ulp). The error bound assumes the input
/// is exact; callers account for input error via the derivative separately.
fn atanh_series(z: &BigInt, f: u64) -> (BigInt, u64) {
    // |z| <= 0.34 -> z^2 <= 0.1156, terms shrink by > 3.1 bits each.
    let n_terms = (f / 3 + 4) as u64;
    let zz = (z * z) >> f; // truncation toward zero below; z*z >= 0
    let mut term = z.clone();
    let mut sum = BigInt::zero();
    let mut i: u64 = 0;
    loop {
        sum += term.div_floor(&BigInt::from(2 * i + 1));
        i += 1;
        if i >= n_terms || term.is_zero() {
            break;
        }
        // truncate toward zero so |term| never grows from rounding
        term = trunc_div_pow2(&(&term * &zz), f);
    }
    // Per-iteration arithmetic error <= 4 ulp (two truncations, contraction
    // keeps accumulated term error below that); tail < 1 ulp by n_terms choice.
    let err = 4 * n_terms + 2;
    (sum, err)
}

fn trunc_div_pow2(n: &BigInt, f: u64) -> BigInt {
    if n.is_negative() {
        -((-n) >> f)
    } else {
        n >> f
    }
}

/// Rigorous `ln x` for a positive dyadic: returns (mid, rad).
pub(crate) fn ln_core(x: &Dyadic, p: u64) -> (Dyadic, Dyadic) {
    assert!(x.is_positive());
    let f = p + 32;
    // x = u * 2^k with u in [3/4, 3/2)
    let b = x.msb_exp(); // x in [2^(b-1), 2^b)
    let u_hi = x.mul_pow2(-(b - 1)); // in [1, 2)
    let three_halves = Dyadic::new(BigInt::from(3), -1);
    let (u, k) = if u_hi.lt(&three_halves) { (u_hi, b - 1) } else { (x.mul_pow2(-b), b) };
    // fixed-point U at scale f
    let ufix = u.mul_pow2(f as i64);
    let (ubig, eu): (BigInt, u64) = if ufix.exp() >= 0 {
        (ufix.mant() << ufix.exp() as u64, 0)
    } else {
        (ufix.round_bigint(), 1)
    };
    let one_f = BigInt::one() << f;
    // z = (u-1)/(u+1), |z| <= 1/5 + eps
    let z = ((&ubig - &one_f) << f).div_floor(&(&ubig + &one_f));
    let ez = 1 + eu; // dz/du < 0.66
    let (sum, es) = atanh_series(&z, f);
    // ln u = 2 atanh z; derivative wrt z is 2/(1-z^2) <= 2.1
    let mut total = sum << 1u32;
    let mut err: u64 = 2 * es + 3 * ez + 2;
    if k != 0 {
        let (l2, el2) = ln2_fixed(f);
        total += BigInt::from(k) * l2;
        err += k.unsigned_abs() * el2;
    }
    (
        Dyadic::new(total, -(f as i64)),
        Dyadic::new(BigInt::from(err + 1), -(f as i64)),
    )
}

/// Rigorous `exp x` for a dyadic of moderate magnitude: returns (mid, rad).
pub(crate) fn exp_core(x: &Dyadic, p: u64) -> Result<(Dyadic, Dyadic)> {
    let f = p + 32;
    if x.is_zero() {
        return Ok((Dyadic::one(), Dyadic::zero()));
    }
    if x.msb_exp() > 40 {
        return Err(Error::Invalid("exp argument too large".into()));
    }
    // x = k ln2 + r with |r| <= 0.4
    let (l2, el2) = ln2_fixed(f);
    let xfix = x.mul_pow2(f as i64);
    let (xbig, ex): (BigInt, u64) = if xfix.exp() >= 0 {
        (xfix.mant() << xfix.exp() as u64, 0)
    } else {
        (xfix.round_bigint(), 1)
    };
    let ln2_f64 = std::f64::consts::LN_2;
    let mut k = (x.to_f64() / ln2_f64).round() as i64;
    let mut r = &xbig - BigInt::from(k) * &l2;
    let limit = BigInt::from(2) * (BigInt::one() << f) / 5; // 0.4 * 2^f
    while r.abs() > limit {
        if r.is_positive() {
            k += 1;
            r -= &l2;
        } else {
            k -= 1;
            r += &l2;
        }
    }
    let er = ex + (k.unsigned_abs() + 1) * el2;
    // exp(r) = sum r^i / i!
    let mut term = BigInt::one() << f;
    let mut sum = BigInt::zero();
    let mut i: u64 = 1;
    let mut steps: u64 = 0;
    loop {
        sum += &term;
        steps += 1;
        term = trunc_div_pow2(&(&term * &r), f).div_floor(&BigInt::from(i));
        i += 1;
        if term.is_zero() || steps > f {
            break;
        }
    }
    // series arithmetic error ~ 3 per step, tail < 2 ulp after term hits 0;
    // input error: d(exp)/dr <= e^0.4 < 1.5
    let err = 3 * steps + 2 + 2 * er;
    Ok((
        Dyadic::new(sum, k - f as i64),
        Dyadic::new(BigInt::from(err + 1), k - f as i64),
    ))
}

/// Floor-directed square root of a non-negative dyadic: returns (mid, ulp)
/// with `mid <= sqrt(x) < mid + ulp`.
pub(crate) fn sqrt_core(x: &Dyadic, p: u64) -> (Dyadic, Dyadic) {
    if x.is_zero() {
        return (Dyadic::zero(), Dyadic::zero());
    }
    assert!(x.is_positive());
    let target = 2 * p + 4;
    let bits = x.bits();
    let mut shift = target.saturating_sub(bits) as i64;
    if (x.exp() - shift) % 2 != 0 {
        shift += 1;
    }
    let m2: BigUint = (x.mant() << shift as u64).try_into().expect("positive");
    let root = m2.sqrt();
    let e = (x.exp() - shift) / 2;
    (
        Dyadic::new(BigInt::from(root), e),
        Dyadic::pow2(e),
    )
}
