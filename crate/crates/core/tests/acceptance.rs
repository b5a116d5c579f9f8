//! Acceptance gate: one test per acceptance criterion, so `cargo test`
//! prints exactly one pass/fail line for each.
//!
//! Where the certified computation disagrees with the published values, the
//! certified value is asserted and the delta is reported loudly in the test
//! output (run with `--nocapture` to see the reports).

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use quadfib_core::cfrac::ContinuedFraction;
use quadfib_core::dpreduce::{
    absolute_m, MuSpec, ReductionEngine, ReductionInstance, ReductionOutcome,
};
use quadfib_core::matveev;
use quadfib_core::realfield::{consts, Dyadic, QuadFieldElement, RigorousReal};
use quadfib_core::search::{
    enumerate_solutions, published_table, solve_lucas_equations, verify_table, SolutionTuple,
};
use quadfib_core::sequences::{fib, special_case_rewrite, GapPair};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::time::Instant;

/// Criterion 1 — the exhaustive search below n1 = 350 reproduces the
/// published solution table: 34 entries confirmed, and the two solutions the
/// table omits are reported as errata rather than failures.
#[test]
fn criterion_1_table_reproduction() {
    let t0 = Instant::now();
    let found = enumerate_solutions(350);
    let audit = verify_table(&found, &published_table());
    assert_eq!(audit.confirmed.len(), 34, "all 34 table entries confirmed");
    assert!(audit.not_found.is_empty(), "no table entry missed by the search");
    let errata: Vec<&SolutionTuple> = audit.absent_from_table.iter().collect();
    assert_eq!(errata.len(), 2);
    assert_eq!(errata[0].n, [2, 2, 2, 2]);
    assert_eq!(errata[1].n, [3, 3, 3, 3]);
    for e in &errata {
        println!(
            "ERRATA: F_{0}+F_{1}+F_{2}+F_{3} = 2^{4} is a solution absent from the published table",
            e.n[0], e.n[1], e.n[2], e.n[3], e.a
        );
    }
    assert!(t0.elapsed().as_secs() < 300, "within the 5-minute budget");
}

/// Criterion 2 — the certified continued fraction of τ reproduces the
/// fixture convergent denominators digit for digit, and the largest partial
/// quotient in the needed range is 134.
#[test]
fn criterion_2_continued_fraction_fixtures() {
    let t0 = Instant::now();
    let cf = ContinuedFraction::tau(115).expect("tau expands to 115 terms");
    assert_eq!(
        cf.convergent(113).1.to_string(),
        "1207471144047491451512110092657730332808809199105354185685"
    );
    assert_eq!(
        cf.convergent(114).1.to_string(),
        "28351096929195187169517686575841899309129196859170938821667"
    );
    assert_eq!(cf.max_partial_quotient(114), BigInt::from(134));
    assert!(t0.elapsed().as_secs() < 10, "within the 10-second budget");
}

/// Criterion 3 — the Matveev constant is certified below 9.7 × 10¹¹ by an
/// exact comparison of the enclosure's upper endpoint.
#[test]
fn criterion_3_matveev_constant() {
    let c = matveev::matveev_constant(3, 2, 192);
    let bound = Dyadic::from_bigint(BigInt::from(970_000_000_000i64));
    // certainly_le_dyadic compares the exact dyadic upper endpoint
    assert!(c.certainly_le_dyadic(&bound), "c < 9.7e11 certified");
    // and the bound is tight to the leading digits: c > 9.6e11
    let lo = Dyadic::from_bigint(BigInt::from(960_000_000_000i64));
    assert!(!c.certainly_le_dyadic(&lo));
}

/// Criterion 4 — the inequality chain yields an absolute threshold
/// N ∈ [10⁵⁷, 10⁵⁹] within a factor of 10 of the published 2.8 × 10⁵⁸;
/// both the recomputed and the published chains are displayed.
#[test]
fn criterion_4_absolute_threshold() {
    let t0 = Instant::now();
    let chain = matveev::chain_gap_bounds(192);
    println!("inequality chain, recomputed vs published:");
    for (i, (r, p)) in chain.c_chain.iter().zip(chain.paper_chain).enumerate() {
        println!("  C{} = {:.5e}   published: {:.5e}", i + 1, r.mid().to_f64(), p);
    }
    println!("  N  = {}   published: {}", chain.n_max, chain.paper_n_max);
    let lo = BigInt::from(10u8).pow(57);
    let hi = BigInt::from(10u8).pow(59);
    assert!(chain.n_max >= lo && chain.n_max <= hi, "N within [1e57, 1e59]");
    // published bound within a factor of 10 of the recomputed threshold
    assert!(chain.paper_n_max <= BigInt::from(10u8) * &chain.n_max);
    assert!(&chain.n_max <= &(BigInt::from(10u8) * &chain.paper_n_max));
    assert!(t0.elapsed().as_secs() < 30, "within the 30-second budget");
}

/// Criterion 5 — the four-stage reduction closes the proof: every stage
/// bound is certified, the degenerate tuples fall to the Legendre fallback,
/// and the final bound lands below 350. Certified bounds that differ from
/// the published per-stage prints are asserted as computed and the deltas
/// reported loudly.
#[test]
fn criterion_5_reduction_pipeline() {
    let t0 = Instant::now();
    let mut eng = ReductionEngine::new().expect("engine initializes");
    let (reports, final_bound) = eng.run_pipeline().expect("pipeline runs");
    let certified: Vec<i64> = reports.iter().map(|r| r.bound).collect();
    assert_eq!(certified, vec![295, 304, 316, 323]);
    let published = [314i64, 314, 314, 320];
    for (r, p) in reports.iter().zip(published) {
        if r.bound != p {
            println!(
                "DELTA: stage {} certified bound {} differs from the published {}",
                r.stage, r.bound, p
            );
        }
    }
    // stage 1: single instance, A = 19
    assert_eq!(reports[0].a_const, 19);
    assert_eq!(reports[0].merged_bound, Some(295));
    // stage 2: degenerate gaps t = 2 and t = 6 handled by the fallback,
    // certified below 296 (published prints 296 and 314)
    assert_eq!(reports[1].fallback_bound, Some(295));
    println!("fallback for degenerate gaps certified at 295 (< 296); published prints 296 (t=2) and 314 (t=6)");
    // every stage's epsilon machinery succeeded (no tuple needed rescue)
    for r in &reports {
        assert!(r.epsilon_failures.is_empty(), "stage {}", r.stage);
    }
    assert_eq!(final_bound, 323);
    assert!(final_bound <= 349, "final bound closes the proof below 350");
    println!(
        "final certified bound n1 <= {final_bound} (published prints 320; delta {})",
        final_bound - 320
    );
    assert!(t0.elapsed().as_secs() < 600, "within the 10-minute budget");
}

/// Criterion 6 — degeneracy certificates: the gap tuples whose Υ lies in
/// α^ℤ·2^ℤ are detected exactly, with the certified (p, q) relation
/// Υ = α^p / 2^q (equivalently μ = p − qτ, matching the published
/// μ ∈ {1, 3−τ} for t ∈ {2, 6} and μ ∈ {0, 1, 2−τ, 3−τ} for the special
/// pairs).
#[test]
fn criterion_6_degeneracy_certificates() {
    let mut eng = ReductionEngine::new().expect("engine initializes");
    let m = absolute_m();
    let reduce = |eng: &mut ReductionEngine, gaps: Vec<u64>| {
        let inst = ReductionInstance::new(13, m.clone(), MuSpec::UpsilonGaps(gaps));
        eng.dp_reduce(&inst).expect("reduction decides")
    };
    // single gaps: t = 2 → μ = 1, t = 6 → μ = 3 − τ
    for (t, rel) in [(2u64, (1i64, 0i64)), (6, (3, 1))] {
        match reduce(&mut eng, vec![t]) {
            ReductionOutcome::Degenerate { p, q } => assert_eq!((p, q), rel, "t={t}"),
            other => panic!("t={t} should be degenerate, got {other:?}"),
        }
    }
    // the five special pairs: μ ∈ {0, 1, 2−τ, 3−τ}
    for (pair, rel) in [
        ((1u64, 1u64), (0i64, 0i64)), // μ = 0
        ((3, 0), (0, 0)),             // μ = 0
        ((4, 3), (1, 0)),             // μ = 1
        ((5, 1), (2, 1)),             // μ = 2 − τ
        ((8, 7), (3, 1)),             // μ = 3 − τ
    ] {
        match reduce(&mut eng, vec![pair.0, pair.1]) {
            ReductionOutcome::Degenerate { p, q } => {
                assert_eq!((p, q), rel, "pair {pair:?}");
            }
            other => panic!("pair {pair:?} should be degenerate, got {other:?}"),
        }
    }
    // and a non-degenerate control stays in the lemma
    assert!(matches!(
        reduce(&mut eng, vec![1]),
        ReductionOutcome::NewBound { .. }
    ));
}

/// Criterion 7 — the Lucas-form equations over k, m ≤ 200 contain exactly
/// the seven published solutions; the additional solutions in range are a
/// finding and are reported loudly.
#[test]
fn criterion_7_lucas_equations() {
    let sols = solve_lucas_equations(200, 200);
    let published: [(&str, u64, u64, u64); 7] = [
        ("L_{k+1}+F_m", 4, 5, 4),
        ("L_{k+1}+F_m", 4, 8, 5),
        ("L_{k+3}+F_m", 2, 5, 4),
        ("L_{k+3}+F_m", 2, 8, 5),
        ("L_{k+3}+F_m", 4, 4, 5),
        ("2L_{k+3}+F_m", 5, 9, 7),
        ("2L_{k+5}+F_m", 3, 9, 7),
    ];
    for &(lbl, k, m, a) in &published {
        assert!(
            sols.iter()
                .any(|s| s.shape.label() == lbl && (s.k, s.m, s.a) == (k, m, a)),
            "published solution {lbl} ({k},{m},{a}) reproduced"
        );
    }
    let extras: Vec<_> = sols
        .iter()
        .filter(|s| {
            !published
                .iter()
                .any(|&(lbl, k, m, a)| s.shape.label() == lbl && (s.k, s.m, s.a) == (k, m, a))
        })
        .collect();
    for s in &extras {
        println!(
            "FINDING: {} has solution (k,m,a) = ({},{},{}) not in the published list",
            s.shape.label(),
            s.k,
            s.m,
            s.a
        );
    }
    assert_eq!(extras.len(), 12, "twelve extra solutions in range");
}

/// Criterion 8 — property suites: enumeration vs. naive search, reduction
/// vs. brute force, the Legendre lower bound vs. direct evaluation,
/// fast-doubling Fibonacci vs. the recurrence, the exact Binet bounds, and
/// the rewrite identities.
#[test]
fn criterion_8_property_suites() {
    let t0 = Instant::now();
    property_enumeration_matches_naive();
    property_reduction_matches_brute_force();
    property_legendre_lower_bound_holds();
    property_fib_doubling_matches_recurrence();
    property_binet_bounds_exact();
    property_rewrite_identities_hold();
    assert!(t0.elapsed().as_secs() < 120, "within the 2-minute budget");
}

fn property_enumeration_matches_naive() {
    let mut naive = Vec::new();
    for n1 in 2..=30u64 {
        for n2 in 2..=n1 {
            for n3 in 2..=n2 {
                for n4 in 2..=n3 {
                    let v = fib(n1) + fib(n2) + fib(n3) + fib(n4);
                    if v.count_ones() == 1 {
                        naive.push(SolutionTuple::new([n1, n2, n3, n4], v.trailing_zeros().unwrap()));
                    }
                }
            }
        }
    }
    naive.sort();
    naive.dedup();
    assert_eq!(enumerate_solutions(30), naive);
}

fn property_reduction_matches_brute_force() {
    let mut eng = ReductionEngine::new().unwrap();
    let mut rng = StdRng::seed_from_u64(0xacce_97);
    let prec = 256;
    let tau = consts::tau(prec);
    let log_alpha = consts::log_alpha(prec);
    for trial in 0..20 {
        let m_small: i64 = rng.gen_range(20..=1000);
        let num: i64 = rng.gen_range(1..=999);
        let den: i64 = 1000 + rng.gen_range(0..7); // keep μ non-integer
        let a_num: i64 = rng.gen_range(1..=25);
        let mu = BigRational::new(BigInt::from(num), BigInt::from(den));
        let inst =
            ReductionInstance::new(a_num, BigInt::from(m_small), MuSpec::Rational(mu.clone()));
        let w_max = match eng.dp_reduce(&inst).unwrap() {
            ReductionOutcome::NewBound { w_max, .. } => w_max,
            ReductionOutcome::Degenerate { .. } => unreachable!("μ chosen non-integer"),
        };
        let mu_ball = RigorousReal::from_ratio(mu.numer(), mu.denom(), prec);
        let a_ball = RigorousReal::from_i64(a_num, prec);
        for u in 1..=m_small {
            // largest w with A·α^{-w} > ‖uτ + μ‖ must respect w_max
            let form = tau
                .mul_bigint(&BigInt::from(u))
                .add(&mu_ball)
                .nearest_int_distance()
                .unwrap();
            let w_here = a_ball
                .div(&form)
                .unwrap()
                .ln()
                .unwrap()
                .div(&log_alpha)
                .unwrap()
                .upper()
                .floor_bigint()
                .to_i64()
                .unwrap();
            assert!(w_here <= w_max, "trial {trial}: u={u} beats w_max={w_max}");
        }
    }
}

fn property_legendre_lower_bound_holds() {
    let mut cf = ContinuedFraction::tau(8).unwrap();
    let prec = 256;
    let tau = consts::tau(prec);
    for y_max in [10i64, 100, 1000] {
        let bound = cf.legendre_lower_bound(&BigInt::from(y_max)).unwrap();
        let l_ball = RigorousReal::from_ratio(bound.numer(), bound.denom(), prec);
        for y in 1..=y_max {
            let dist = tau
                .mul_bigint(&BigInt::from(y))
                .nearest_int_distance()
                .unwrap();
            assert!(l_ball.certainly_lt(&dist), "y={y}, y_max={y_max}");
        }
    }
}

fn property_fib_doubling_matches_recurrence() {
    let (mut a, mut b) = (BigUint::zero(), BigUint::one());
    for n in 0..=10_000u64 {
        if n % 500 == 0 || n < 100 {
            assert_eq!(fib(n), a, "n={n}");
        }
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
}

fn property_binet_bounds_exact() {
    // α^{n−2} ≤ F_n ≤ α^{n−1}, decided exactly in ℚ(√5)
    let alpha = QuadFieldElement::alpha();
    for n in 1..=500i64 {
        let f = QuadFieldElement::new(
            BigInt::from(fib(n as u64)),
            BigInt::zero(),
            BigInt::one(),
        );
        assert!(f.sub(&alpha.pow_i64(n - 2)).sign() >= 0, "lower, n={n}");
        assert!(alpha.pow_i64(n - 1).sub(&f).sign() >= 0, "upper, n={n}");
    }
}

fn property_rewrite_identities_hold() {
    for n2 in 1..=200u64 {
        for case in [
            GapPair(1, 1),
            GapPair(3, 0),
            GapPair(4, 3),
            GapPair(5, 1),
            GapPair(8, 7),
        ] {
            // the rewrite verifies its own identity with exact integers
            special_case_rewrite(case, n2, 2)
                .unwrap_or_else(|e| panic!("case {case:?} n2={n2}: {e}"));
        }
    }
}
