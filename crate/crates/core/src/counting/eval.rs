//! Table-driven evaluation over a rectangular region.
//!
//! Every term is attached to the deepest variable it involves, so a nested
//! loop over the variables accumulates partial sums level by level. Before
//! any loop runs, the sum of absolute term bounds is checked to fit `i128`,
//! which makes the inner arithmetic overflow-free.

use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// Inclusive range per variable.
pub type Region = Vec<(i64, i64)>;

pub(crate) fn region_len(r: (i64, i64)) -> u128 {
    if r.1 < r.0 {
        0
    } else {
        (r.1 as i128 - r.0 as i128 + 1) as u128
    }
}

pub(crate) fn region_size(region: &[(i64, i64)]) -> u128 {
    region.iter().try_fold(1u128, |acc, &r| acc.checked_mul(region_len(r))).unwrap_or(u128::MAX)
}

struct CompiledTerm {
    coeff: i128,
    /// `(variable, table index)` for every factor.
    factors: Vec<(usize, usize)>,
}

pub(crate) struct Compiled {
    region: Region,
    /// Indexed by `value - region[var].0`.
    tables: Vec<Vec<i128>>,
    /// Terms grouped by the deepest variable they involve.
    levels: Vec<Vec<CompiledTerm>>,
    constant: i128,
}

fn power_table(lo: i64, hi: i64, exp: u32) -> Option<Vec<i128>> {
    let mut t = Vec::with_capacity(region_len((lo, hi)) as usize);
    let mut x = lo;
    loop {
        if x > hi {
            break;
        }
        t.push((x as i128).checked_pow(exp)?);
        if x == hi {
            break;
        }
        x += 1;
    }
    Some(t)
}

impl Compiled {
    pub(crate) fn new(p: &Polynomial, region: &[(i64, i64)]) -> Result<Self> {
        let k = p.var_count();
        if region.len() != k {
            return Err(Error::LengthMismatch { expected: k, found: region.len() });
        }
        let overflow = || Error::Overflow("evaluation bound over the search region");
        let mut table_keys: Vec<(usize, u32)> = Vec::new();
        let mut tables: Vec<Vec<i128>> = Vec::new();
        let mut table_max: Vec<i128> = Vec::new();
        let mut levels: Vec<Vec<CompiledTerm>> = (0..k).map(|_| Vec::new()).collect();
        let mut constant = 0i128;
        let mut bound: i128 = 0;
        let empty = region.iter().any(|&r| region_len(r) == 0);

        for t in p.terms() {
            let mut factors = Vec::new();
            let mut term_bound = t.coeff.checked_abs().ok_or_else(overflow)?;
            for (var, &e) in t.exponents.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let id = match table_keys.iter().position(|&key| key == (var, e)) {
                    Some(id) => id,
                    None => {
                        let (lo, hi) = region[var];
                        let table = if empty {
                            Vec::new()
                        } else {
                            power_table(lo, hi, e).ok_or_else(overflow)?
                        };
                        let max = table.iter().map(|v| v.abs()).max().unwrap_or(0);
                        table_keys.push((var, e));
                        tables.push(table);
                        table_max.push(max);
                        tables.len() - 1
                    }
                };
                term_bound = term_bound.checked_mul(table_max[id]).ok_or_else(overflow)?;
                factors.push((var, id));
            }
            bound = bound.checked_add(term_bound).ok_or_else(overflow)?;
            match factors.iter().map(|f| f.0).max() {
                None => constant = t.coeff,
                Some(level) => levels[level].push(CompiledTerm { coeff: t.coeff, factors }),
            }
        }
        Ok(Compiled { region: region.to_vec(), tables, levels, constant })
    }

    /// Calls `leaf` with the polynomial value at every point of the region and
    /// sums what it returns. `values` holds the current point.
    pub(crate) fn walk<F: FnMut(i128, &[i64]) -> u64>(&self, mut leaf: F) -> u64 {
        let k = self.region.len();
        if self.region.iter().any(|&r| region_len(r) == 0) {
            return 0;
        }
        if k == 0 {
            return leaf(self.constant, &[]);
        }
        let mut values: Vec<i64> = self.region.iter().map(|r| r.0).collect();
        self.walk_level(0, self.constant, &mut values, &mut leaf)
    }

    fn walk_level<F: FnMut(i128, &[i64]) -> u64>(
        &self,
        level: usize,
        partial: i128,
        values: &mut Vec<i64>,
        leaf: &mut F,
    ) -> u64 {
        let (lo, hi) = self.region[level];
        let last = level + 1 == self.region.len();
        let mut total = 0u64;
        let mut x = lo;
        loop {
            values[level] = x;
            let mut acc = partial;
            for term in &self.levels[level] {
                let mut v = term.coeff;
                for &(var, id) in &term.factors {
                    v *= self.tables[id][(values[var] - self.region[var].0) as usize];
                }
                acc += v;
            }
            total += if last { leaf(acc, values) } else { self.walk_level(level + 1, acc, values, leaf) };
            if x == hi {
                break;
            }
            x += 1;
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_equation;

    #[test]
    fn walk_visits_every_point_once() {
        let p = parse_equation("x1 + x2 + x3").unwrap();
        let c = Compiled::new(&p, &[(-1, 1), (0, 2), (5, 5)]).unwrap();
        assert_eq!(c.walk(|_, _| 1), 9);
        let sum: u64 = c.walk(|v, _| v as u64);
        // sum over x1 in -1..=1, x2 in 0..=2 of (x1 + x2 + 5)
        assert_eq!(sum, 9 * 5 + 3 * 3);
    }

    #[test]
    fn empty_region() {
        let p = parse_equation("x1").unwrap();
        let c = Compiled::new(&p, &[(1, 0)]).unwrap();
        assert_eq!(c.walk(|_, _| 1), 0);
    }

    #[test]
    fn bound_overflow_is_refused() {
        let p = parse_equation("170141183460469231731687303715884105727x1^2 + x2").unwrap();
        assert!(matches!(Compiled::new(&p, &[(-2, 2), (0, 0)]), Err(Error::Overflow(_))));
    }
}
