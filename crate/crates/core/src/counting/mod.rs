//! Exact solution counts inside a hypercube.
//!
//! Four engines compute the same number `R_k(N)`:
//!
//! * [`count_brute`] visits every point of the box.
//! * [`count_explicit`] solves for the explicit variable of `x_e = f(others)`.
//! * [`count_sliced`] fixes one coordinate at a time and sums the slices.
//! * [`count_mitm`] joins value tables of two halves of a separable equation.
//!
//! Every engine refuses, rather than truncates, when the work or memory
//! budget would be exceeded. [`count_partitioned`] splits the outermost range
//! into contiguous chunks and counts them on a thread pool; the sum does not
//! depend on the number of chunks.

mod enumerate;
pub(crate) mod eval;
mod mitm;
mod sliced;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{classify, EquationKind, Polynomial};

pub use enumerate::{enumerate_solutions, Solutions};
pub use eval::Region;
pub use mitm::count_mitm;
pub use sliced::{count_sliced, default_slice_order, SlicedCount};

use eval::{region_len, region_size, Compiled};

/// Default cap on visited points.
pub const DEFAULT_WORK_BUDGET: u64 = 1_000_000_000;
/// Default cap on hash-table entries for the meet-in-the-middle engine.
pub const DEFAULT_MEMORY_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMode {
    /// Every coordinate in `[-N, N]`.
    IntegerBox,
    /// Every coordinate in `[1, N]`.
    NaturalOrthant,
}

impl fmt::Display for CountMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            CountMode::IntegerBox => "integer",
            CountMode::NaturalOrthant => "natural",
        })
    }
}

impl FromStr for CountMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "integer" | "integer_box" | "box" => Ok(CountMode::IntegerBox),
            "natural" | "natural_orthant" => Ok(CountMode::NaturalOrthant),
            _ => Err(Error::InvalidArgument(format!("unknown count mode '{s}'"))),
        }
    }
}

/// The hypercube of radius `N` in which solutions are counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hypercube {
    pub radius: u64,
    pub mode: CountMode,
}

impl Hypercube {
    pub fn integer(radius: u64) -> Self {
        Hypercube { radius, mode: CountMode::IntegerBox }
    }

    pub fn natural(radius: u64) -> Self {
        Hypercube { radius, mode: CountMode::NaturalOrthant }
    }

    pub fn coordinate_range(&self) -> Result<(i64, i64)> {
        let n = i64::try_from(self.radius).map_err(|_| Error::Overflow("box radius"))?;
        Ok(match self.mode {
            CountMode::IntegerBox => (-n, n),
            CountMode::NaturalOrthant => (1, n),
        })
    }

    pub fn region(&self, var_count: usize) -> Result<Region> {
        Ok(vec![self.coordinate_range()?; var_count])
    }

    /// Number of lattice points in the box, `(2N+1)^k` or `N^k`.
    pub fn point_count(&self, var_count: usize) -> u128 {
        match self.coordinate_range() {
            Ok(r) => region_size(&vec![r; var_count]),
            Err(_) => u128::MAX,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Brute,
    Sliced,
    Mitm,
    Explicit,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Engine::Brute => "brute",
            Engine::Sliced => "sliced",
            Engine::Mitm => "mitm",
            Engine::Explicit => "explicit",
        })
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute" => Ok(Engine::Brute),
            "sliced" => Ok(Engine::Sliced),
            "mitm" => Ok(Engine::Mitm),
            "explicit" => Ok(Engine::Explicit),
            _ => Err(Error::InvalidArgument(format!("unknown engine '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of visited points (or joined lookups).
    pub work: u64,
    /// Maximum number of hash-table entries.
    pub memory: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { work: DEFAULT_WORK_BUDGET, memory: DEFAULT_MEMORY_BUDGET }
    }
}

impl Budget {
    pub fn with_work(work: u64) -> Self {
        Budget { work, ..Budget::default() }
    }

    pub(crate) fn check_work(&self, needed: u128) -> Result<()> {
        if needed > self.work as u128 {
            return Err(Error::BudgetExceeded { needed, budget: self.work });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountResult {
    pub count: u64,
    pub radius: u64,
    pub mode: CountMode,
    pub engine: Engine,
    /// Wall-clock time; left out of serialized reports so they stay reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

fn finish(count: u64, cube: Hypercube, engine: Engine, start: Instant) -> CountResult {
    CountResult { count, radius: cube.radius, mode: cube.mode, engine, elapsed: start.elapsed() }
}

pub(crate) fn brute_in_region(p: &Polynomial, region: &[(i64, i64)], budget: &Budget) -> Result<u64> {
    budget.check_work(region_size(region))?;
    let compiled = Compiled::new(p, region)?;
    Ok(compiled.walk(|v, _| (v == 0) as u64))
}

/// Exhaustive count over every point of the box.
pub fn count_brute(p: &Polynomial, cube: Hypercube, budget: &Budget) -> Result<CountResult> {
    let start = Instant::now();
    let count = brute_in_region(p, &cube.region(p.var_count())?, budget)?;
    Ok(finish(count, cube, Engine::Brute, start))
}

/// Index of the explicit variable and its coefficient (+1 or -1).
fn explicit_variable(p: &Polynomial) -> Result<(usize, i128)> {
    match classify(p)?.kind {
        EquationKind::DiagonalExplicit { explicit_var } => {
            let mut exps = vec![0u32; p.var_count()];
            exps[explicit_var] = 1;
            Ok((explicit_var, p.coefficient(&exps)))
        }
        other => Err(Error::WrongClass(format!(
            "explicit engine needs a diagonal equation with an explicit variable, got {other:?}"
        ))),
    }
}

pub(crate) fn explicit_in_region(p: &Polynomial, region: &[(i64, i64)], budget: &Budget) -> Result<u64> {
    let (e, coeff) = explicit_variable(p)?;
    let (lo, hi) = region[e];
    if region_len((lo, hi)) == 0 {
        return Ok(0);
    }
    let mut rest = p.clone();
    let mut exps = vec![0u32; p.var_count()];
    exps[e] = 1;
    rest.add_term(-coeff, exps)?;
    let mut reduced = region.to_vec();
    reduced[e] = (0, 0);
    budget.check_work(region_size(&reduced))?;
    let compiled = Compiled::new(&rest, &reduced)?;
    // coeff * x_e + rest = 0 with coeff = +-1
    Ok(compiled.walk(|v, _| {
        let x = -v * coeff;
        (x >= lo as i128 && x <= hi as i128) as u64
    }))
}

/// Counts `x_e = f(others)` by iterating the other `k - 1` coordinates.
pub fn count_explicit(p: &Polynomial, cube: Hypercube, budget: &Budget) -> Result<CountResult> {
    let start = Instant::now();
    let count = explicit_in_region(p, &cube.region(p.var_count())?, budget)?;
    Ok(finish(count, cube, Engine::Explicit, start))
}

pub(crate) fn count_in_region(
    p: &Polynomial,
    region: &[(i64, i64)],
    engine: Engine,
    budget: &Budget,
) -> Result<u64> {
    match engine {
        Engine::Brute => brute_in_region(p, region, budget),
        Engine::Explicit => explicit_in_region(p, region, budget),
        Engine::Mitm => mitm::mitm_in_region(p, region, budget),
        Engine::Sliced => {
            let order = default_slice_order(p);
            sliced::sliced_in_region(p, region, &order, budget).map(|(c, _)| c)
        }
    }
}

/// Engines that apply to `p`, most efficient first.
pub fn applicable_engines(p: &Polynomial) -> Vec<Engine> {
    let mut out = Vec::new();
    if let Ok(class) = classify(p) {
        if matches!(class.kind, EquationKind::DiagonalExplicit { .. }) {
            out.push(Engine::Explicit);
        }
    }
    if p.separable_parts().is_some() {
        out.push(Engine::Mitm);
    }
    if p.var_count() > 2 {
        out.push(Engine::Sliced);
    }
    out.push(Engine::Brute);
    out
}

/// Picks explicit, then meet-in-the-middle, then sliced, then brute force.
pub fn choose_engine(p: &Polynomial) -> Engine {
    applicable_engines(p)[0]
}

pub fn count_with(p: &Polynomial, cube: Hypercube, engine: Engine, budget: &Budget) -> Result<CountResult> {
    match engine {
        Engine::Brute => count_brute(p, cube, budget),
        Engine::Explicit => count_explicit(p, cube, budget),
        Engine::Mitm => count_mitm(p, cube, budget),
        Engine::Sliced => {
            let order = default_slice_order(p);
            count_sliced(p, cube, &order, budget).map(|s| s.result)
        }
    }
}

/// Counts with the engine chosen by [`choose_engine`].
pub fn count_auto(p: &Polynomial, cube: Hypercube, budget: &Budget) -> Result<CountResult> {
    count_with(p, cube, choose_engine(p), budget)
}

/// Splits the range of `x1` into `chunks` contiguous pieces, counts them in
/// parallel and sums. The budget applies to each chunk.
pub fn count_partitioned(
    p: &Polynomial,
    cube: Hypercube,
    engine: Engine,
    chunks: usize,
    budget: &Budget,
) -> Result<CountResult> {
    let start = Instant::now();
    let region = cube.region(p.var_count())?;
    let pieces = split_range(region[0], chunks.max(1));
    let counts: Result<Vec<u64>> = pieces
        .par_iter()
        .map(|&piece| {
            let mut r = region.clone();
            r[0] = piece;
            count_in_region(p, &r, engine, budget)
        })
        .collect();
    let count = counts?.into_iter().sum();
    Ok(finish(count, cube, engine, start))
}

/// Contiguous, non-overlapping pieces covering `range`; empty pieces are dropped.
pub fn split_range(range: (i64, i64), chunks: usize) -> Vec<(i64, i64)> {
    let len = region_len(range);
    if len == 0 {
        return vec![range];
    }
    let chunks = (chunks as u128).min(len);
    let base = len / chunks;
    let extra = len % chunks;
    let mut out = Vec::with_capacity(chunks as usize);
    let mut lo = range.0 as i128;
    for i in 0..chunks {
        let size = base + u128::from(i < extra);
        let hi = lo + size as i128 - 1;
        out.push((lo as i64, hi as i64));
        lo = hi + 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_equation;

    fn p(s: &str) -> Polynomial {
        parse_equation(s).unwrap()
    }

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn circle_of_radius_five() {
        let r = count_brute(&p("x1^2+x2^2-25"), Hypercube::integer(10), &b()).unwrap();
        assert_eq!(r.count, 12);
        assert_eq!(r.engine, Engine::Brute);
    }

    #[test]
    fn brute_trivial_cases() {
        assert_eq!(count_brute(&p("x1^2+x2^2+1"), Hypercube::integer(100), &b()).unwrap().count, 0);
        assert_eq!(count_brute(&p("x1-x2"), Hypercube::integer(3), &b()).unwrap().count, 7);
    }

    #[test]
    fn explicit_examples() {
        let q = p("x1 = x2^2 - x3^2");
        assert_eq!(count_explicit(&q, Hypercube::integer(2), &b()).unwrap().count, 13);
        assert_eq!(count_explicit(&p("x1 = x2^2"), Hypercube::integer(1), &b()).unwrap().count, 3);
        assert_eq!(count_explicit(&p("x1 = x2^2"), Hypercube::integer(0), &b()).unwrap().count, 1);
        assert_eq!(count_explicit(&p("x1 = x2^2 + 3"), Hypercube::integer(0), &b()).unwrap().count, 0);
        assert!(matches!(
            count_explicit(&p("x1^2 + x2^2 - 1"), Hypercube::integer(2), &b()),
            Err(Error::WrongClass(_))
        ));
    }

    #[test]
    fn explicit_with_negative_coefficient() {
        let q = p("-x2 + x1^3 - 2x3^3 + 1");
        for n in 0..6 {
            let cube = Hypercube::integer(n);
            assert_eq!(
                count_explicit(&q, cube, &b()).unwrap().count,
                count_brute(&q, cube, &b()).unwrap().count
            );
        }
    }

    #[test]
    fn budget_refusal() {
        let err = count_brute(&p("x1+x2+x3"), Hypercube::integer(10), &Budget::with_work(100)).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { needed: 9261, budget: 100 });
    }

    #[test]
    fn natural_orthant_counts() {
        let q = p("x1^2+x2^2-25");
        assert_eq!(count_brute(&q, Hypercube::natural(10), &b()).unwrap().count, 2);
        assert_eq!(count_brute(&q, Hypercube::natural(0), &b()).unwrap().count, 0);
    }

    #[test]
    fn split_range_covers() {
        assert_eq!(split_range((-3, 3), 3), vec![(-3, -1), (0, 1), (2, 3)]);
        assert_eq!(split_range((1, 2), 5), vec![(1, 1), (2, 2)]);
    }

    #[test]
    fn partition_determinism() {
        let q = p("x1^2 + x2^2 - x3^2 - 1");
        let cube = Hypercube::integer(12);
        let whole = count_brute(&q, cube, &b()).unwrap().count;
        for engine in [Engine::Brute, Engine::Sliced, Engine::Mitm] {
            for chunks in [1, 2, 3, 7, 25, 100] {
                assert_eq!(count_partitioned(&q, cube, engine, chunks, &b()).unwrap().count, whole);
            }
        }
        let e = p("x1 = x2^2 - x3^2");
        let whole = count_brute(&e, cube, &b()).unwrap().count;
        for chunks in [1, 4, 9] {
            assert_eq!(count_partitioned(&e, cube, Engine::Explicit, chunks, &b()).unwrap().count, whole);
        }
    }

    #[test]
    fn auto_engine_choice() {
        assert_eq!(choose_engine(&p("x1 = x2^2 - x3^2")), Engine::Explicit);
        assert_eq!(choose_engine(&p("x1^2 + x2^2 - x3^2 - 1")), Engine::Mitm);
        assert_eq!(choose_engine(&p("x1*x2 + x3^2 - 1")), Engine::Sliced);
        assert_eq!(choose_engine(&p("x1*x2 - 1")), Engine::Brute);
    }
}
