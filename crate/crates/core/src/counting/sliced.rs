use std::time::Instant;

use super::eval::region_size;
use super::{brute_in_region, Budget, CountResult, Engine, Hypercube};
use crate::error::{Error, Result};
use crate::poly::{classify, EquationKind, Polynomial};

/// Total count plus the count of every slice `x_v = h` of the first slice variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlicedCount {
    pub result: CountResult,
    pub slice_var: Option<usize>,
    /// `(h, count of the slice x_v = h)` in increasing `h`.
    pub per_slice: Vec<(i64, u64)>,
}

impl SlicedCount {
    pub fn max_slice(&self) -> u64 {
        self.per_slice.iter().map(|s| s.1).max().unwrap_or(0)
    }
}

/// Slicing order: minority-sign diagonal variables first, then the remaining
/// variables by index, with an explicit variable last.
pub fn default_slice_order(p: &Polynomial) -> Vec<usize> {
    let k = p.var_count();
    let explicit = match classify(p).map(|c| c.kind) {
        Ok(EquationKind::DiagonalExplicit { explicit_var }) => Some(explicit_var),
        _ => None,
    };
    let mut minority = Vec::new();
    if let Some((parts, _)) = p.separable_parts() {
        let signs: Vec<i32> = parts
            .iter()
            .map(|part| match part.as_slice() {
                [(_, c)] => c.signum() as i32,
                _ => 0,
            })
            .collect();
        let pos = signs.iter().filter(|&&s| s > 0).count();
        let neg = signs.iter().filter(|&&s| s < 0).count();
        let want = if neg <= pos { -1 } else { 1 };
        minority = (0..k).filter(|&i| signs[i] == want && Some(i) != explicit).collect();
    }
    let mut order = minority.clone();
    order.extend((0..k).filter(|i| !minority.contains(i) && Some(*i) != explicit));
    order.extend(explicit);
    order
}

fn free_vars(region: &[(i64, i64)]) -> usize {
    region.iter().filter(|r| r.0 != r.1).count()
}

pub(crate) fn sliced_in_region(
    p: &Polynomial,
    region: &[(i64, i64)],
    order: &[usize],
    budget: &Budget,
) -> Result<(u64, Vec<(i64, u64)>)> {
    budget.check_work(region_size(region))?;
    let mut per_slice = Vec::new();
    let total = slice_rec(p, region, order, budget, Some(&mut per_slice))?;
    Ok((total, per_slice))
}

fn slice_rec(
    p: &Polynomial,
    region: &[(i64, i64)],
    order: &[usize],
    budget: &Budget,
    mut per_slice: Option<&mut Vec<(i64, u64)>>,
) -> Result<u64> {
    let next = order.iter().copied().find(|&v| region[v].0 != region[v].1);
    let var = match next {
        Some(v) if free_vars(region) > 2 => v,
        _ => return brute_in_region(p, region, budget),
    };
    let (lo, hi) = region[var];
    let mut total = 0u64;
    if lo > hi {
        return Ok(0);
    }
    let mut sub_region = region.to_vec();
    let mut h = lo;
    loop {
        let slice = p.substitute(var, h)?;
        sub_region[var] = (h, h);
        let c = slice_rec(&slice, &sub_region, order, budget, None)?;
        if let Some(ps) = per_slice.as_deref_mut() {
            ps.push((h, c));
        }
        total += c;
        if h == hi {
            break;
        }
        h += 1;
    }
    Ok(total)
}

/// Counts by fixing `slice_vars` in order (continuing with
/// [`default_slice_order`] once the list runs out) until at most two
/// coordinates are free, then counting each slice by brute force.
pub fn count_sliced(
    p: &Polynomial,
    cube: Hypercube,
    slice_vars: &[usize],
    budget: &Budget,
) -> Result<SlicedCount> {
    let start = Instant::now();
    let k = p.var_count();
    if slice_vars.is_empty() && k > 2 {
        return Err(Error::InvalidSliceVars("empty slice list with more than two variables".into()));
    }
    for (i, &v) in slice_vars.iter().enumerate() {
        if v >= k {
            return Err(Error::InvalidSliceVars(format!("x{} is out of range", v + 1)));
        }
        if slice_vars[..i].contains(&v) {
            return Err(Error::InvalidSliceVars(format!("x{} listed twice", v + 1)));
        }
        if !p.uses_var(v) {
            return Err(Error::InvalidSliceVars(format!("x{} does not appear in the equation", v + 1)));
        }
    }
    let mut order = slice_vars.to_vec();
    order.extend(default_slice_order(p).into_iter().filter(|v| !slice_vars.contains(v)));

    let mut region = cube.region(k)?;
    // Slicing the degenerate N = 0 box is a single point; keep it as one slice.
    let slice_var = if k > 2 || !slice_vars.is_empty() { Some(order[0]) } else { None };
    let (count, per_slice) = match slice_var {
        Some(v) if region[v].0 <= region[v].1 => {
            budget.check_work(region_size(&region))?;
            let (lo, hi) = region[v];
            let mut per_slice = Vec::new();
            let mut total = 0u64;
            for h in lo..=hi {
                let slice = p.substitute(v, h)?;
                region[v] = (h, h);
                let c = slice_rec(&slice, &region, &order, budget, None)?;
                per_slice.push((h, c));
                total += c;
            }
            (total, per_slice)
        }
        Some(_) => (0, Vec::new()),
        None => sliced_in_region(p, &region, &order, budget)?,
    };
    let result = CountResult {
        count,
        radius: cube.radius,
        mode: cube.mode,
        engine: Engine::Sliced,
        elapsed: start.elapsed(),
    };
    Ok(SlicedCount { result, slice_var, per_slice })
}
