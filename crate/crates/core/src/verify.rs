//! Brute-force verification of every identity the library implements.
//!
//! Each check compares two independent routes (closed formula vs. dynamic
//! program, or exhaustive enumeration vs. bijection) and reports the first
//! counterexample it finds.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::eventree::{enumerate_even_trees, path_to_tree, path_to_tree_states, r_poly, tree_to_path};
use crate::lattice::{self, enumerate_paths, GridPosition, LatticeTable};
use crate::matching::{contains_pattern, enumerate_q, matching_to_path, path_to_matching, q_poly};
use crate::poly::Poly;

pub const DEFAULT_SEED: u64 = 0x1231_2312;

/// The closed formulas under test. Swappable so the verifier itself can be
/// tested against deliberately broken formulas.
#[derive(Clone, Copy)]
pub struct Formulas {
    pub t_coeff: fn(u32, u32) -> Result<i64>,
    pub catalan3: fn(u32) -> Result<i64>,
    pub descent_formula: fn(u32) -> Result<Poly>,
}

impl Default for Formulas {
    fn default() -> Self {
        Formulas {
            t_coeff: lattice::t_coeff,
            catalan3: lattice::catalan3,
            descent_formula: lattice::descent_formula,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub range: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
    pub overall: bool,
}

type Outcome = std::result::Result<String, String>;

fn err_str(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Runs all checks for sizes up to `max_n` (lattice positions up to
/// `i = 2 * max_n`).
pub fn run(max_n: u32, seed: u64, formulas: &Formulas) -> VerifyReport {
    let max_i = 2 * max_n;
    let table = LatticeTable::new(max_i);
    let mut checks = Vec::new();
    let mut push = |name: &'static str, range: String, outcome: Outcome| {
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        checks.push(CheckResult { name, range, passed, detail });
    };

    let table = match table {
        Ok(t) => t,
        Err(e) => {
            push("lattice-table", format!("i <= {max_i}"), Err(e.to_string()));
            return VerifyReport { overall: false, checks };
        }
    };

    push("lattice-vs-paths", format!("i <= {max_i}, 2j <= i"), lattice_vs_paths(&table));
    push("t-coefficients", format!("1 <= n <= {max_n}"), t_coefficients(&table, max_n, formulas));
    push("3-catalan-totals", format!("1 <= n <= {max_n}"), catalan_totals(&table, max_n, formulas));
    push("descent-formula", format!("1 <= n <= {max_n}"), descent(&table, max_n, formulas));
    push("row-sum", format!("1 <= n <= {max_n}"), row_sum(&table, max_n));
    push("matchings-q-poly", format!("i <= {max_i}, 2j <= i"), matchings_q_poly(&table));
    push("matching-bijection", format!("i <= {max_i}, 2j <= i"), matching_bijection(max_i));
    push("trees-r-poly", format!("1 <= n <= {max_n}"), trees_r_poly(&table, max_n));
    push("tree-bijection", format!("1 <= n <= {max_n}"), tree_bijection(max_n));
    push("pattern-engine", format!("200 random sequences, seed {seed}"), pattern_engine(seed, 200));

    let overall = checks.iter().all(|c| c.passed);
    VerifyReport { checks, overall }
}

fn positions(max_i: u32) -> impl Iterator<Item = GridPosition> {
    (0..=max_i).flat_map(|i| (0..=i / 2).map(move |j| GridPosition::new(i, j)))
}

fn lattice_vs_paths(table: &LatticeTable) -> Outcome {
    let mut total = 0;
    for pos in positions(table.max_i()) {
        let mut by_weight = Poly::zero();
        for p in enumerate_paths(pos) {
            by_weight.add_term(1, p.weight_exponent() as usize).map_err(err_str)?;
            total += 1;
        }
        if by_weight != table.get(pos) {
            return Err(format!("at {pos}: paths give {by_weight}, recurrence gives {}", table.get(pos)));
        }
    }
    Ok(format!("{total} paths"))
}

fn t_coefficients(table: &LatticeTable, max_n: u32, f: &Formulas) -> Outcome {
    for n in 1..=max_n {
        let l = table.get(GridPosition::new(2 * n, n));
        if l.degree().is_some_and(|d| d >= n as usize) {
            return Err(format!("n={n}: L(2n, n) = {l} has degree >= n"));
        }
        for k in 0..n {
            let t = (f.t_coeff)(n, k).map_err(|e| format!("(n, k) = ({n}, {k}): {e}"))?;
            if l.coeff(k as usize) != t {
                return Err(format!("(n, k) = ({n}, {k}): L has {}, T(n, k) = {t}", l.coeff(k as usize)));
            }
        }
    }
    Ok(String::new())
}

fn catalan_totals(table: &LatticeTable, max_n: u32, f: &Formulas) -> Outcome {
    for n in 1..=max_n {
        let total = table.get(GridPosition::new(2 * n, n)).eval_at_one().map_err(err_str)?;
        let t = (f.catalan3)(n).map_err(|e| format!("n={n}: {e}"))?;
        if total != t {
            return Err(format!("n={n}: L(2n, n)(1) = {total}, T_n = {t}"));
        }
    }
    Ok(String::new())
}

fn descent(table: &LatticeTable, max_n: u32, f: &Formulas) -> Outcome {
    for n in 1..=max_n {
        let d = (f.descent_formula)(n + 1).map_err(|e| format!("n={n}: {e}"))?;
        let l = table.get(GridPosition::new(2 * n, n));
        if d != l {
            return Err(format!("n={n}: D_(n+1)(x, 1) = {d}, L(2n, n) = {l}"));
        }
    }
    Ok(String::new())
}

fn row_sum(table: &LatticeTable, max_n: u32) -> Outcome {
    for n in 1..=max_n {
        let mut sum = Poly::zero();
        for j in 0..n {
            sum = sum.checked_add(&table.get(GridPosition::new(2 * n - 1, j))).map_err(err_str)?;
        }
        let l = table.get(GridPosition::new(2 * n, n));
        if sum != l {
            return Err(format!("n={n}: sum_j L(2n-1, j) = {sum}, L(2n, n) = {l}"));
        }
    }
    Ok(String::new())
}

fn matchings_q_poly(table: &LatticeTable) -> Outcome {
    for pos in positions(table.max_i()) {
        let q = q_poly(pos.i, pos.j).map_err(err_str)?;
        if q != table.get(pos) {
            return Err(format!("at {pos}: Q = {q}, L = {}", table.get(pos)));
        }
    }
    Ok(String::new())
}

fn matching_bijection(max_i: u32) -> Outcome {
    let mut total = 0;
    for pos in positions(max_i) {
        let oracle: HashSet<_> = enumerate_q(pos.i, pos.j).into_iter().collect();
        let mut images = HashSet::new();
        for p in enumerate_paths(pos) {
            let m = path_to_matching(&p);
            if !m.is_admissible() {
                return Err(format!("{p} maps to {m}, outside Q(12312)"));
            }
            if m.crossings() != p.weight_exponent() {
                return Err(format!("{p}: weight {} but {m} has {} crossings", p.weight_exponent(), m.crossings()));
            }
            match matching_to_path(&m) {
                Ok(back) if back == p => {}
                Ok(back) => return Err(format!("{p} -> {m} -> {back}")),
                Err(e) => return Err(format!("{p} -> {m}: {e}")),
            }
            if !images.insert(m.clone()) {
                return Err(format!("{m} is hit twice at {pos}"));
            }
        }
        if images != oracle {
            let missing = oracle.difference(&images).next();
            return Err(format!("at {pos}: image misses {}", missing.map_or("?".into(), |m| m.to_string())));
        }
        for m in &oracle {
            let back = matching_to_path(m).map_err(|e| format!("{m}: {e}"))?;
            if path_to_matching(&back) != *m {
                return Err(format!("{m} -> {back} does not return"));
            }
        }
        total += oracle.len();
    }
    Ok(format!("{total} matchings"))
}

fn trees_r_poly(table: &LatticeTable, max_n: u32) -> Outcome {
    for n in 1..=max_n {
        let r = r_poly(n).map_err(err_str)?;
        let l = table.get(GridPosition::new(2 * n, n));
        if r != l {
            return Err(format!("n={n}: R_n = {r}, L(2n, n) = {l}"));
        }
    }
    Ok(String::new())
}

fn tree_bijection(max_n: u32) -> Outcome {
    // every intermediate tree along every path, grouped by position
    let max_i = 2 * max_n;
    for pos in positions(max_i) {
        let mut seen = HashSet::new();
        for p in enumerate_paths(pos) {
            let states = path_to_tree_states(&p);
            let (_, t) = states.last().unwrap();
            if t.is_dotted() != (pos.i % 2 == 1) || t.edges() != (pos.i + pos.i % 2) as usize {
                return Err(format!("{p}: tree {t} has the wrong shape for {pos}"));
            }
            if !seen.insert(t.clone()) {
                return Err(format!("{t} generated twice at {pos}"));
            }
        }
    }
    let mut total = 0;
    for n in 1..=max_n {
        let end = GridPosition::new(2 * n, n);
        let oracle: HashSet<_> = enumerate_even_trees(2 * n as usize).into_iter().collect();
        let mut images = HashSet::new();
        for p in enumerate_paths(end) {
            let t = path_to_tree(&p);
            if t.r_index() != p.weight_exponent() {
                return Err(format!("{p}: weight {} but {t} has r-index {}", p.weight_exponent(), t.r_index()));
            }
            match tree_to_path(&t, end) {
                Ok(back) if back == p => {}
                Ok(back) => return Err(format!("{p} -> {t} -> {back}")),
                Err(e) => return Err(format!("{p} -> {t}: {e}")),
            }
            images.insert(t);
        }
        if images != oracle {
            return Err(format!("n={n}: {} images vs {} even trees", images.len(), oracle.len()));
        }
        total += oracle.len();
    }
    Ok(format!("{total} trees"))
}

/// Independent matcher: tries every index subset of the pattern's length.
pub fn naive_contains(seq: &[u32], pattern: &[u32]) -> bool {
    fn order_isomorphic(a: &[u32], b: &[u32]) -> bool {
        (0..a.len()).all(|x| (0..a.len()).all(|y| a[x].cmp(&a[y]) == b[x].cmp(&b[y])))
    }
    fn choose(seq: &[u32], pattern: &[u32], start: usize, picked: &mut Vec<u32>) -> bool {
        if picked.len() == pattern.len() {
            return order_isomorphic(picked, pattern);
        }
        (start..seq.len()).any(|i| {
            picked.push(seq[i]);
            let hit = choose(seq, pattern, i + 1, picked);
            picked.pop();
            hit
        })
    }
    choose(seq, pattern, 0, &mut Vec::new())
}

fn pattern_engine(seed: u64, trials: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0;
    for _ in 0..trials {
        let len = rng.gen_range(0..=12);
        let alphabet = rng.gen_range(1..=6);
        let seq: Vec<u32> = (0..len).map(|_| rng.gen_range(1..=alphabet)).collect();
        let plen = rng.gen_range(1..=5);
        let pat: Vec<u32> = (0..plen).map(|_| rng.gen_range(1..=3)).collect();
        let fast = contains_pattern(&seq, &pat);
        if fast != naive_contains(&seq, &pat) {
            return Err(format!("sequence {seq:?}, pattern {pat:?}: engine says {fast}"));
        }
        hits += usize::from(fast);
    }
    Ok(format!("{hits}/{trials} contain their pattern"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes() {
        let report = run(3, DEFAULT_SEED, &Formulas::default());
        assert!(report.overall, "{report:#?}");
        assert_eq!(report.checks.len(), 10);
    }

    #[test]
    fn corrupted_t_coeff_gives_witness() {
        fn bad(n: u32, k: u32) -> Result<i64> {
            let v = lattice::t_coeff(n, k)?;
            Ok(if (n, k) == (3, 1) { v + 1 } else { v })
        }
        let f = Formulas { t_coeff: bad, ..Formulas::default() };
        let report = run(3, DEFAULT_SEED, &f);
        assert!(!report.overall);
        let failed: Vec<_> = report.checks.iter().filter(|c| !c.passed).collect();
        assert_eq!(failed.len(), 1);
        assert_eq!(failed[0].name, "t-coefficients");
        assert!(failed[0].detail.contains("(n, k) = (3, 1)"), "{}", failed[0].detail);
    }

    #[test]
    fn naive_matcher_basics() {
        assert!(naive_contains(&[1, 2, 3, 1, 2], &[1, 2, 3, 1, 2]));
        assert!(!naive_contains(&[1, 2, 3, 1, 3], &[1, 2, 3, 1, 2]));
        assert!(naive_contains(&[5, 5], &[2, 2]));
        assert!(!naive_contains(&[5, 6], &[2, 2]));
    }
}
