use std::collections::HashMap;
use std::time::Instant;

use super::eval::region_len;
use super::{Budget, CountResult, Engine, Hypercube};
use crate::error::{Error, Result};
use crate::poly::Polynomial;

type ValueCounts = HashMap<i128, u64>;

/// Value multiset of one univariate part over its range.
fn univariate_values(part: &[(u32, i128)], range: (i64, i64)) -> Result<ValueCounts> {
    let mut out = ValueCounts::new();
    if region_len(range) == 0 {
        return Ok(out);
    }
    let overflow = || Error::Overflow("meet-in-the-middle value table");
    for x in range.0..=range.1 {
        let mut v: i128 = 0;
        for &(e, c) in part {
            let t = (x as i128).checked_pow(e).and_then(|p| p.checked_mul(c)).ok_or_else(overflow)?;
            v = v.checked_add(t).ok_or_else(overflow)?;
        }
        *out.entry(v).or_insert(0) += 1;
    }
    Ok(out)
}

fn max_abs(values: &ValueCounts) -> i128 {
    values.keys().map(|v| v.abs()).max().unwrap_or(0)
}

/// Sum-set of several multisets, with multiplicities.
fn convolve(sets: &[&ValueCounts], memory: u64) -> Result<ValueCounts> {
    let mut acc = ValueCounts::new();
    acc.insert(0, 1);
    for set in sets {
        let mut next = ValueCounts::with_capacity(acc.len().saturating_mul(set.len()).min(1 << 20));
        for (&a, &ma) in &acc {
            for (&b, &mb) in set.iter() {
                *next.entry(a + b).or_insert(0) += ma * mb;
            }
            if next.len() as u64 > memory {
                return Err(Error::MemoryBudgetExceeded { needed: next.len() as u128, budget: memory });
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// Splits indices into two groups whose products of sizes are as balanced as
/// possible; the first group is the smaller one.
fn balanced_split(sizes: &[u128]) -> (Vec<usize>, Vec<usize>) {
    let k = sizes.len();
    if k > 20 {
        let half = k / 2;
        return ((0..half).collect(), (half..k).collect());
    }
    let mut best: Option<(u128, u128, u32)> = None;
    for mask in 0u32..(1u32 << k) {
        let (mut a, mut b) = (1u128, 1u128);
        for (i, &s) in sizes.iter().enumerate() {
            if mask & (1 << i) != 0 {
                a = a.saturating_mul(s);
            } else {
                b = b.saturating_mul(s);
            }
        }
        if a > b {
            continue;
        }
        let key = (b, a);
        if best.is_none_or(|(bb, ba, _)| key < (bb, ba)) {
            best = Some((b, a, mask));
        }
    }
    let mask = best.map(|b| b.2).unwrap_or(0);
    let first = (0..k).filter(|i| mask & (1 << i) != 0).collect();
    let second = (0..k).filter(|i| mask & (1 << i) == 0).collect();
    (first, second)
}

pub(crate) fn mitm_in_region(p: &Polynomial, region: &[(i64, i64)], budget: &Budget) -> Result<u64> {
    let (parts, constant) = p.separable_parts().ok_or_else(|| {
        Error::WrongClass("meet-in-the-middle needs every term to involve a single variable".into())
    })?;
    if region.len() != p.var_count() {
        return Err(Error::LengthMismatch { expected: p.var_count(), found: region.len() });
    }
    let mut tables = Vec::with_capacity(parts.len());
    for (part, &range) in parts.iter().zip(region) {
        if part.is_empty() {
            let mut t = ValueCounts::new();
            let len = region_len(range);
            if len > 0 {
                t.insert(0, u64::try_from(len).map_err(|_| Error::Overflow("range length"))?);
            }
            tables.push(t);
        } else {
            tables.push(univariate_values(part, range)?);
        }
    }
    if tables.iter().any(|t| t.is_empty()) {
        return Ok(0);
    }
    // Every partial sum is bounded by this, so the join cannot overflow.
    let overflow = || Error::Overflow("meet-in-the-middle value bound");
    let start = constant.checked_abs().ok_or_else(overflow)?;
    tables.iter().try_fold(start, |acc, t| acc.checked_add(max_abs(t))).ok_or_else(overflow)?;

    let sizes: Vec<u128> = tables.iter().map(|t| t.len() as u128).collect();
    let (small, large) = balanced_split(&sizes);
    let table_size: u128 = small.iter().map(|&i| sizes[i]).product();
    if table_size > budget.memory as u128 {
        return Err(Error::MemoryBudgetExceeded { needed: table_size, budget: budget.memory });
    }
    let lookups: u128 = large.iter().map(|&i| sizes[i]).product();
    budget.check_work(lookups)?;

    let small_sets: Vec<&ValueCounts> = small.iter().map(|&i| &tables[i]).collect();
    let joined = convolve(&small_sets, budget.memory)?;

    // Walk the large half as an odometer over distinct values.
    let large_sets: Vec<Vec<(i128, u64)>> =
        large.iter().map(|&i| tables[i].iter().map(|(&v, &m)| (v, m)).collect()).collect();
    let mut total: u64 = 0;
    walk_large(&large_sets, 0, constant, 1, &joined, &mut total);
    Ok(total)
}

fn walk_large(sets: &[Vec<(i128, u64)>], depth: usize, sum: i128, mult: u64, joined: &ValueCounts, total: &mut u64) {
    if depth == sets.len() {
        if let Some(&m) = joined.get(&(-sum)) {
            *total += m * mult;
        }
        return;
    }
    for &(v, m) in &sets[depth] {
        walk_large(sets, depth + 1, sum + v, mult * m, joined, total);
    }
}

/// Meet-in-the-middle count for equations whose terms each involve one
/// variable: tabulates the value multiset of one half and joins the other
/// half against it on exact integer value.
pub fn count_mitm(p: &Polynomial, cube: Hypercube, budget: &Budget) -> Result<CountResult> {
    let start = Instant::now();
    let count = mitm_in_region(p, &cube.region(p.var_count())?, budget)?;
    Ok(CountResult {
        count,
        radius: cube.radius,
        mode: cube.mode,
        engine: Engine::Mitm,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::count_brute;
    use crate::parse::parse_equation;

    fn both(s: &str, cube: Hypercube) -> (u64, u64) {
        let q = parse_equation(s).unwrap();
        let b = Budget::default();
        (count_mitm(&q, cube, &b).unwrap().count, count_brute(&q, cube, &b).unwrap().count)
    }

    #[test]
    fn matches_brute_on_examples() {
        let (m, b) = both("x1^2+x2^2-x3^2-1", Hypercube::integer(5));
        assert_eq!(m, b);
        let (m, b) = both("x1^2+x2^2+x3^2+x4^2-10", Hypercube::integer(10));
        assert_eq!(m, b);
        let (m, b) = both("x1^3+x2^3-x3^3", Hypercube::integer(20));
        assert_eq!(m, b);
    }

    #[test]
    fn four_squares_of_ten() {
        // 10 = 9+1+0+0 (4!/2! * 4 signs = 48) + 4+4+1+1 (4!/(2!2!) * 16 signs = 96)
        let (m, _) = both("x1^2+x2^2+x3^2+x4^2-10", Hypercube::integer(10));
        assert_eq!(m, 144);
    }

    #[test]
    fn non_separable_rejected() {
        let q = parse_equation("x1*x2 - 1").unwrap();
        assert!(matches!(count_mitm(&q, Hypercube::integer(3), &Budget::default()), Err(Error::WrongClass(_))));
    }

    #[test]
    fn memory_budget_refusal() {
        let q = parse_equation("x1^2+x2^2+x3^2+x4^2-10").unwrap();
        let budget = Budget { work: 1_000_000_000, memory: 10 };
        assert!(matches!(
            count_mitm(&q, Hypercube::integer(50), &budget),
            Err(Error::MemoryBudgetExceeded { .. })
        ));
    }

    #[test]
    fn balanced_split_prefers_even_products() {
        let (a, b) = balanced_split(&[10, 10, 10, 10]);
        assert_eq!(a.len(), 2);
        assert_eq!(b.len(), 2);
    }
}
