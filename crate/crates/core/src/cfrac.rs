//! Certified continued-fraction expansion of irrational enclosures and the
//! Legendre-style lower bound on rational approximation quality.
//!
//! Every partial quotient is certified: a quotient is only emitted when the
//! floor of the remainder interval is a single integer. When certification
//! fails at the current working precision, the source is refined and the
//! expansion restarted (re-expansion is cheap and makes the stability
//! property — identical quotients at any starting precision — trivial).
//!
//! Indexing is a₀-based: `quotients[0] = a₀ = floor(x)`. The paper writes
//! the expansion of τ as `[a₁, a₂, …]`, off by one from this module; its
//! displayed convergent denominators q₁₁₃/q₁₁₄ are matched by value.

use crate::error::{Error, Result};
use crate::realfield::{consts, RigorousReal};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::sync::Arc;

/// A refinable real number source: returns an enclosure at any requested
/// precision.
pub type RealSource = Arc<dyn Fn(u32) -> RigorousReal + Send + Sync>;

/// Certified partial quotients and convergents of an irrational.
pub struct ContinuedFraction {
    source: RealSource,
    prec: u32,
    quotients: Vec<BigInt>,
    /// `convergents[k] = (p_k, q_k)` with `p_k/q_k = [a₀; a₁, …, a_k]`.
    convergents: Vec<(BigInt, BigInt)>,
}

impl ContinuedFraction {
    /// Expand `source` to at least `terms` certified partial quotients.
    pub fn expand(source: RealSource, terms: usize) -> Result<Self> {
        let mut cf = ContinuedFraction {
            source,
            prec: consts::PREC_START,
            quotients: Vec::new(),
            convergents: Vec::new(),
        };
        cf.extend_to(terms)?;
        Ok(cf)
    }

    /// The continued fraction of τ = log 2 / log α.
    pub fn tau(terms: usize) -> Result<Self> {
        Self::expand(Arc::new(consts::tau), terms)
    }

    /// Ensure at least `terms` certified quotients, refining the source as
    /// needed.
    pub fn extend_to(&mut self, terms: usize) -> Result<()> {
        while self.quotients.len() < terms {
            let enclosure = (self.source)(self.prec);
            let got = expand_interval(
                &dyadic_to_rational(&enclosure.lower()),
                &dyadic_to_rational(&enclosure.upper()),
                terms,
            )?;
            if got.len() >= terms || got.len() > self.quotients.len() {
                self.install(got);
            }
            if self.quotients.len() < terms {
                if self.prec >= consts::PREC_MAX {
                    return Err(Error::PrecisionExhausted {
                        max: self.prec,
                        context: format!(
                            "expanding continued fraction to {terms} terms (have {})",
                            self.quotients.len()
                        ),
                    });
                }
                self.prec = (self.prec * 2).min(consts::PREC_MAX);
            }
        }
        Ok(())
    }

    fn install(&mut self, quotients: Vec<BigInt>) {
        // Re-expansion at higher precision must reproduce the certified
        // prefix; anything else means an uncertified quotient slipped out.
        let common = self.quotients.len().min(quotients.len());
        debug_assert_eq!(&self.quotients[..common], &quotients[..common]);
        self.quotients = quotients;
        self.convergents.clear();
        let (mut p0, mut q0) = (BigInt::one(), BigInt::zero()); // (p_{-1}, q_{-1})
        let (mut p1, mut q1) = (BigInt::zero(), BigInt::one()); // (p_{-2}, q_{-2})
        for a in &self.quotients {
            let p = a * &p0 + &p1;
            let q = a * &q0 + &q1;
            self.convergents.push((p.clone(), q.clone()));
            p1 = std::mem::replace(&mut p0, p);
            q1 = std::mem::replace(&mut q0, q);
        }
    }

    pub fn len(&self) -> usize {
        self.quotients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quotients.is_empty()
    }

    pub fn quotients(&self) -> &[BigInt] {
        &self.quotients
    }

    pub fn convergents(&self) -> &[(BigInt, BigInt)] {
        &self.convergents
    }

    pub fn convergent(&self, k: usize) -> (&BigInt, &BigInt) {
        let (p, q) = &self.convergents[k];
        (p, q)
    }

    /// First convergent with `q_k > bound`; extends the expansion on demand.
    pub fn convergent_exceeding(&mut self, bound: &BigInt) -> Result<(usize, BigInt, BigInt)> {
        let mut k = 0;
        loop {
            if k >= self.len() {
                self.extend_to(self.len() + 16)?;
            }
            let (p, q) = &self.convergents[k];
            if q > bound {
                return Ok((k, p.clone(), q.clone()));
            }
            k += 1;
        }
    }

    /// `max(a₀, …, a_upto)`.
    pub fn max_partial_quotient(&self, upto: usize) -> BigInt {
        self.quotients[..=upto]
            .iter()
            .max()
            .expect("nonempty range")
            .clone()
    }

    /// Lemma-2 lower bound: returns `L = 1/((a_M + 2)·y_max)` such that
    /// `|y·x − p| > L` for all integers `0 < y ≤ y_max` and all `p`, where
    /// `a_M` is the maximum partial quotient through the convergent index
    /// `k+1` bracketing `y_max` (`q_k ≤ y_max < q_{k+1}`).
    pub fn legendre_lower_bound(&mut self, y_max: &BigInt) -> Result<BigRational> {
        assert!(y_max.is_positive());
        let (k1, _, _) = self.convergent_exceeding(y_max)?; // k1 = k+1
        let a_m = self.max_partial_quotient(k1);
        let den = (a_m + 2) * y_max;
        Ok(BigRational::new(BigInt::one(), den))
    }
}

fn dyadic_to_rational(d: &crate::realfield::Dyadic) -> BigRational {
    let e = d.exp();
    if e >= 0 {
        BigRational::from_integer(d.mant() << e as u64)
    } else {
        BigRational::new(d.mant().clone(), BigInt::one() << (-e) as u64)
    }
}

/// Interval continued-fraction expansion on exact rational endpoints: emits
/// quotients only while both endpoints agree on the floor. A remainder
/// hitting an endpoint exactly (rational input) raises `RationalInput` when
/// the enclosure is exact, otherwise just stops for refinement.
fn expand_interval(lo: &BigRational, hi: &BigRational, max_terms: usize) -> Result<Vec<BigInt>> {
    let mut lo = lo.clone();
    let mut hi = hi.clone();
    let exact_input = lo == hi;
    let mut out = Vec::new();
    while out.len() < max_terms {
        let flo = lo.floor().to_integer();
        let fhi = hi.floor().to_integer();
        if flo != fhi {
            break; // uncertified; caller refines
        }
        out.push(flo.clone());
        let lo2 = &lo - BigRational::from_integer(flo.clone());
        let hi2 = &hi - BigRational::from_integer(flo);
        if lo2.is_zero() || hi2.is_zero() {
            if exact_input {
                return Err(Error::RationalInput);
            }
            break;
        }
        lo = hi2.recip();
        hi = lo2.recip();
    }
    Ok(out)
}
