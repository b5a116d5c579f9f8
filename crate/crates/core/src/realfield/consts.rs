//! Cached enclosures of the transcendental constants used everywhere:
//! √5, α, log 2, log α, log √5, and τ = log 2 / log α.
//!
//! Each constant is memoized per working precision; callers typically start
//! at [`PREC_START`] and double on ambiguity up to [`PREC_MAX`].

use super::ball::RigorousReal;
use super::dyadic::Dyadic;
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::sync::Mutex;

/// Default starting precision in bits.
pub const PREC_START: u32 = 192;
/// Hard ceiling; certification aborts with a diagnostic beyond this.
pub const PREC_MAX: u32 = 1 << 20;

type Cache = Lazy<Mutex<HashMap<u32, RigorousReal>>>;

fn cached(cache: &Cache, prec: u32, compute: impl FnOnce() -> RigorousReal) -> RigorousReal {
    if let Some(v) = cache.lock().unwrap().get(&prec) {
        return v.clone();
    }
    let v = compute();
    cache.lock().unwrap().insert(prec, v.clone());
    v
}

/// √5.
pub fn sqrt5(prec: u32) -> RigorousReal {
    static CACHE: Cache = Lazy::new(|| Mutex::new(HashMap::new()));
    cached(&CACHE, prec, || {
        RigorousReal::from_i64(5, prec + 16).sqrt().expect("5 >= 0")
    })
}

/// α = (1 + √5)/2.
pub fn alpha(prec: u32) -> RigorousReal {
    static CACHE: Cache = Lazy::new(|| Mutex::new(HashMap::new()));
    cached(&CACHE, prec, || {
        sqrt5(prec + 16)
            .add(&RigorousReal::from_i64(1, prec + 16))
            .mul_dyadic(&Dyadic::pow2(-1))
    })
}

/// log 2.
pub fn log2(prec: u32) -> RigorousReal {
    static CACHE: Cache = Lazy::new(|| Mutex::new(HashMap::new()));
    cached(&CACHE, prec, || {
        RigorousReal::from_i64(2, prec + 16).ln().expect("2 > 0")
    })
}

/// log α.
pub fn log_alpha(prec: u32) -> RigorousReal {
    static CACHE: Cache = Lazy::new(|| Mutex::new(HashMap::new()));
    cached(&CACHE, prec, || alpha(prec + 16).ln().expect("alpha > 0"))
}

/// log √5 = ½ log 5.
pub fn log_sqrt5(prec: u32) -> RigorousReal {
    static CACHE: Cache = Lazy::new(|| Mutex::new(HashMap::new()));
    cached(&CACHE, prec, || {
        RigorousReal::from_i64(5, prec + 16)
            .ln()
            .expect("5 > 0")
            .mul_dyadic(&Dyadic::pow2(-1))
    })
}

/// τ = log 2 / log α.
pub fn tau(prec: u32) -> RigorousReal {
    static CACHE: Cache = Lazy::new(|| Mutex::new(HashMap::new()));
    cached(&CACHE, prec, || {
        log2(prec + 16)
            .div(&log_alpha(prec + 16))
            .expect("log alpha > 0")
    })
}

/// μ₀ = log √5 / log α, the stage-1 reduction constant.
pub fn mu0(prec: u32) -> RigorousReal {
    static CACHE: Cache = Lazy::new(|| Mutex::new(HashMap::new()));
    cached(&CACHE, prec, || {
        log_sqrt5(prec + 16)
            .div(&log_alpha(prec + 16))
            .expect("log alpha > 0")
    })
}
