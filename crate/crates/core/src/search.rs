//! Exhaustive search leg: enumerate every canonical solution of
//! `F_{n₁} + F_{n₂} + F_{n₃} + F_{n₄} = 2^a` with `n₁` up to a given bound,
//! audit the published solution table, and resolve the special-case Lucas
//! equations produced by the degenerate reduction tuples.

use crate::error::{Error, Result};
use crate::sequences::{fib, LucasEquationShape};
use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;
use std::collections::HashMap;

/// A canonical solution: `n₁ ≥ n₂ ≥ n₃ ≥ n₄ ≥ 2` (index 1 is rewritten as 2
/// since `F₁ = F₂`), with `Σ F_{nᵢ} = 2^a`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SolutionTuple {
    pub n: [u64; 4],
    pub a: u64,
}

impl SolutionTuple {
    pub fn new(n: [u64; 4], a: u64) -> Self {
        SolutionTuple { n: canonicalize(n), a }
    }

    /// `2^a`, the common value of both sides.
    pub fn value(&self) -> BigUint {
        BigUint::one() << self.a
    }

    /// Exact arithmetic check of `Σ F_{nᵢ} = 2^a`.
    pub fn verify(&self) -> bool {
        let sum: BigUint = self.n.iter().map(|&i| fib(i)).sum();
        sum == self.value()
    }
}

/// Canonicalize raw indices and verify the equation exactly.
pub fn canonicalize_solution(n: [u64; 4], a: u64) -> Result<SolutionTuple> {
    if n.iter().any(|&x| x == 0) {
        return Err(Error::Invalid("indices must be ≥ 1".into()));
    }
    let s = SolutionTuple::new(n, a);
    if !s.verify() {
        return Err(Error::Invalid(format!(
            "not a solution: {:?} with a = {a}",
            s.n
        )));
    }
    Ok(s)
}

/// Sort descending and rewrite any index 1 as 2 (`F₁ = F₂ = 1`).
pub fn canonicalize(mut n: [u64; 4]) -> [u64; 4] {
    for x in &mut n {
        if *x == 1 {
            *x = 2;
        }
    }
    n.sort_unstable_by(|a, b| b.cmp(a));
    n
}

/// All canonical solutions with `n₁ ≤ n1_max`, sorted by `(n₁, n₂, n₃, n₄)`.
///
/// The outer loop runs over the exponent `a` (the right side determines the
/// search tree): with a target `2^a` remaining and `k` summands left, the
/// next index `n` must satisfy `F_n ≤ target − (k−1)` and `k·F_n ≥ target`.
pub fn enumerate_solutions(n1_max: u64) -> Vec<SolutionTuple> {
    assert!(n1_max >= 2);
    let fibs: Vec<BigUint> = (0..=n1_max).map(fib).collect();
    let index_of: HashMap<&BigUint, u64> =
        (2..=n1_max).map(|i| (&fibs[i as usize], i)).collect();
    // 2^a = Σ F ≤ 4·F_{n1_max}
    let a_max = (fibs[n1_max as usize].bits() + 1) as u64;
    let mut out = Vec::new();
    for a in 2..=a_max {
        let target = BigUint::one() << a;
        if target > &fibs[n1_max as usize] * BigUint::from(4u32) {
            break;
        }
        let mut prefix = [0u64; 4];
        descend(&fibs, &index_of, n1_max, 4, &target, &mut prefix, a, &mut out);
    }
    out.sort();
    debug_assert!(out.iter().all(SolutionTuple::verify));
    out
}

fn descend(
    fibs: &[BigUint],
    index_of: &HashMap<&BigUint, u64>,
    max_idx: u64,
    parts: u32,
    target: &BigUint,
    prefix: &mut [u64; 4],
    a: u64,
    out: &mut Vec<SolutionTuple>,
) {
    if parts == 1 {
        if let Some(&idx) = index_of.get(target) {
            if idx <= max_idx {
                prefix[3] = idx;
                out.push(SolutionTuple { n: *prefix, a });
            }
        }
        return;
    }
    let slack = target - BigUint::from(parts - 1); // smaller parts are ≥ 1 each
    for n in (2..=max_idx).rev() {
        let f = &fibs[n as usize];
        if f > &slack {
            continue;
        }
        if f * BigUint::from(parts) < *target {
            break; // even `parts` copies of F_n cannot reach the target
        }
        prefix[(4 - parts) as usize] = n;
        descend(fibs, index_of, n, parts - 1, &(target - f), prefix, a, out);
    }
}

/// Three-way audit of a published table against an enumeration.
#[derive(Clone, Debug, Serialize)]
pub struct TableAudit {
    /// In both the table and the enumeration.
    pub confirmed: Vec<SolutionTuple>,
    /// Found by the enumeration but absent from the table (table errata).
    pub absent_from_table: Vec<SolutionTuple>,
    /// Listed in the table but not found (would indicate a table entry that
    /// is not actually a solution).
    pub not_found: Vec<SolutionTuple>,
}

/// Compare the enumeration with a published table.
pub fn verify_table(found: &[SolutionTuple], table: &[SolutionTuple]) -> TableAudit {
    let found_set: std::collections::BTreeSet<_> = found.iter().cloned().collect();
    let table_set: std::collections::BTreeSet<_> = table.iter().cloned().collect();
    TableAudit {
        confirmed: found_set.intersection(&table_set).cloned().collect(),
        absent_from_table: found_set.difference(&table_set).cloned().collect(),
        not_found: table_set.difference(&found_set).cloned().collect(),
    }
}

/// The published 34-entry solution table, embedded as a fixture.
pub fn published_table() -> Vec<SolutionTuple> {
    parse_table_csv(include_str!("../fixtures/theorem_table.csv"))
        .expect("embedded fixture is well-formed")
}

/// Parse `n1,n2,n3,n4,a` CSV rows (header line required).
pub fn parse_table_csv(text: &str) -> Result<Vec<SolutionTuple>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    match lines.next() {
        Some(h) if h.trim() == "n1,n2,n3,n4,a" => {}
        other => {
            return Err(Error::Invalid(format!("bad table header: {other:?}")));
        }
    }
    let mut out = Vec::new();
    for (i, line) in lines.enumerate() {
        let fields: Vec<u64> = line
            .trim()
            .split(',')
            .map(|f| f.trim().parse::<u64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Invalid(format!("table row {}: {e}", i + 2)))?;
        let [n1, n2, n3, n4, a] = fields[..] else {
            return Err(Error::Invalid(format!(
                "table row {}: expected 5 fields",
                i + 2
            )));
        };
        out.push(SolutionTuple::new([n1, n2, n3, n4], a));
    }
    Ok(out)
}

/// One solution of a special-case Lucas equation `c·L_{k+s} + F_m = 2^a`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct LucasSolution {
    pub shape: LucasEquationShape,
    pub k: u64,
    pub m: u64,
    pub a: u64,
}

/// Solve all four Lucas-equation families over `1 ≤ k ≤ k_max`,
/// `1 ≤ m ≤ m_max` by exact evaluation; a solution is recorded whenever
/// the left side is a power of two.
pub fn solve_lucas_equations(k_max: u64, m_max: u64) -> Vec<LucasSolution> {
    let mut out = Vec::new();
    for shape in LucasEquationShape::all() {
        for k in 1..=k_max {
            for m in 1..=m_max {
                let v = shape.value(k, m);
                if v.count_ones() == 1 {
                    let a = v.trailing_zeros().expect("nonzero value");
                    out.push(LucasSolution { shape, k, m, a });
                }
            }
        }
    }
    out
}
