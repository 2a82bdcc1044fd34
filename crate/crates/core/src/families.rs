//! Explicit solution families that give exact lower bounds on counts.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_integer::Roots;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::parse::render;
use crate::poly::Polynomial;

/// A parametrized set of integer solutions.
#[derive(Clone)]
pub struct SolutionFamily {
    pub parameter_count: usize,
    pub description: String,
    generator: Arc<dyn Fn(&[i64]) -> Vec<i64> + Send + Sync>,
}

impl fmt::Debug for SolutionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SolutionFamily")
            .field("parameter_count", &self.parameter_count)
            .field("description", &self.description)
            .finish_non_exhaustive()
    }
}

impl SolutionFamily {
    pub fn new<F>(parameter_count: usize, description: impl Into<String>, generator: F) -> Self
    where
        F: Fn(&[i64]) -> Vec<i64> + Send + Sync + 'static,
    {
        SolutionFamily { parameter_count, description: description.into(), generator: Arc::new(generator) }
    }

    pub fn generate(&self, params: &[i64]) -> Result<Vec<i64>> {
        if params.len() != self.parameter_count {
            return Err(Error::LengthMismatch { expected: self.parameter_count, found: params.len() });
        }
        Ok((self.generator)(params))
    }

    /// Checks that every sampled parameter vector lands on `p = 0`.
    pub fn verify_on<'a, I>(&self, p: &Polynomial, samples: I) -> Result<()>
    where
        I: IntoIterator<Item = &'a [i64]>,
    {
        for params in samples {
            let point = self.generate(params)?;
            if p.evaluate(&point)? != 0 {
                return Err(Error::NotASolution(format!("{} at {params:?} gives {point:?}", self.description)));
            }
        }
        Ok(())
    }
}

/// `x1^2 + x2^2 - x3^2 - 1`, the one-sheet hyperboloid through the four lines below.
pub fn unit_hyperboloid() -> Polynomial {
    Polynomial::from_terms(3, [(1, vec![2, 0, 0]), (1, vec![0, 2, 0]), (-1, vec![0, 0, 2]), (-1, vec![0, 0, 0])])
        .expect("fixed polynomial")
}

/// The four lines `(s t, e, t)` with `s, e` in `{-1, 1}` on the unit hyperboloid.
pub fn unit_hyperboloid_families() -> Vec<SolutionFamily> {
    let mut out = Vec::with_capacity(4);
    for s in [1i64, -1] {
        for e in [1i64, -1] {
            let desc = format!("x1 = {}t, x2 = {e}, x3 = t", if s == 1 { "" } else { "-" });
            out.push(SolutionFamily::new(1, desc, move |t: &[i64]| vec![s * t[0], e, t[0]]));
        }
    }
    out
}

/// Points of the four hyperboloid lines inside the box of a given radius.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyPoints {
    pub radius: u64,
    /// Sum of the family sizes, counting shared points once per family.
    pub with_multiplicity: u64,
    /// Sorted, deduplicated points.
    pub points: Vec<Vec<i64>>,
}

impl FamilyPoints {
    pub fn distinct(&self) -> u64 {
        self.points.len() as u64
    }
}

pub fn unit_hyperboloid_lines(radius: u64) -> Result<FamilyPoints> {
    let n = i64::try_from(radius).map_err(|_| Error::Overflow("box radius"))?;
    let mut set = BTreeSet::new();
    let mut with_multiplicity = 0u64;
    for family in unit_hyperboloid_families() {
        for t in -n..=n {
            set.insert(family.generate(&[t])?);
            with_multiplicity += 1;
        }
    }
    Ok(FamilyPoints { radius, with_multiplicity, points: set.into_iter().collect() })
}

/// Equation `F_m(x_1..x_{n-1}) + c_n x_n^m + F_0 = 0` with `F_m` homogeneous of degree `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitEquation {
    pub form: Polynomial,
    pub leading: i128,
    pub constant: i128,
    pub degree: u32,
}

impl SplitEquation {
    pub fn new(form: Polynomial, leading: i128, constant: i128, degree: u32) -> Result<Self> {
        if leading == 0 {
            return Err(Error::InvalidArgument("the coefficient of the last variable must be nonzero".into()));
        }
        if degree == 0 {
            return Err(Error::InvalidArgument("degree must be positive".into()));
        }
        if !form.is_zero() && (!form.is_homogeneous() || form.degree() != degree) {
            return Err(Error::InvalidArgument(format!(
                "form {} must be homogeneous of degree {degree}",
                render(&form)
            )));
        }
        Ok(SplitEquation { form, leading, constant, degree })
    }

    /// Number of variables of the full equation.
    pub fn var_count(&self) -> usize {
        self.form.var_count() + 1
    }

    pub fn polynomial(&self) -> Result<Polynomial> {
        let k = self.var_count();
        let mut p = self.form.with_var_count(k)?;
        let mut last = vec![0; k];
        last[k - 1] = self.degree;
        p.add_term(self.leading, last)?;
        p.add_term(self.constant, vec![0; k])?;
        Ok(p)
    }
}

/// Integer roots of `c_n x^m + F_0 = 0`, largest first.
pub fn integer_roots(leading: i128, constant: i128, degree: u32) -> Vec<i128> {
    if leading == 0 || degree == 0 {
        return Vec::new();
    }
    if constant == 0 {
        return vec![0];
    }
    let Some(neg) = constant.checked_neg() else { return Vec::new() };
    if neg % leading != 0 {
        return Vec::new();
    }
    let target = neg / leading;
    let even = degree % 2 == 0;
    if even && target < 0 {
        return Vec::new();
    }
    let root = target.unsigned_abs().nth_root(degree);
    if root.checked_pow(degree) != Some(target.unsigned_abs()) {
        return Vec::new();
    }
    let Ok(root) = i128::try_from(root) else { return Vec::new() };
    match (even, target < 0) {
        (true, _) => vec![root, -root],
        (false, true) => vec![-root],
        (false, false) => vec![root],
    }
}

/// Witness that the split equation has an integer point with all other
/// coordinates zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrivialWitness {
    pub roots: Vec<i128>,
    pub point: Vec<i64>,
}

/// Integer values of `x_n` with `c_n x_n^m + F_0 = 0`; when one exists the
/// point `(0, ..., 0, x_n)` solves the whole equation because `F_m(0) = 0`.
pub fn assertion2_check(eq: &SplitEquation) -> Result<Option<TrivialWitness>> {
    let roots = integer_roots(eq.leading, eq.constant, eq.degree);
    let Some(&first) = roots.first() else { return Ok(None) };
    let mut point = vec![0i64; eq.var_count()];
    *point.last_mut().expect("at least one variable") =
        i64::try_from(first).map_err(|_| Error::Overflow("root"))?;
    if eq.polynomial()?.evaluate(&point)? != 0 {
        return Err(Error::NotASolution(format!("{point:?}")));
    }
    Ok(Some(TrivialWitness { roots, point }))
}

/// Scaled copies `(t v, x_n)` of a nontrivial zero `v` of the form.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScaledWitnesses {
    pub radius: u64,
    pub max_coordinate: u64,
    pub witnesses: Vec<Vec<i64>>,
    /// `(2N + 1) / max |v_i|` as a real number.
    pub stated_bound: f64,
    /// `2 floor(N / max |v_i|) + 1`, the number of admissible scalings.
    pub floor_bound: u64,
}

impl ScaledWitnesses {
    pub fn count(&self) -> u64 {
        self.witnesses.len() as u64
    }
}

pub fn assertion3_lower_bound(eq: &SplitEquation, nontrivial: &[i64], x_n: i64, radius: u64) -> Result<ScaledWitnesses> {
    if nontrivial.len() != eq.form.var_count() {
        return Err(Error::LengthMismatch { expected: eq.form.var_count(), found: nontrivial.len() });
    }
    if nontrivial.iter().all(|&v| v == 0) {
        return Err(Error::NotASolution("the zero vector is trivial".into()));
    }
    if eq.form.evaluate(nontrivial)? != 0 {
        return Err(Error::NotASolution(format!("{nontrivial:?} does not solve {}", render(&eq.form))));
    }
    let p = eq.polynomial()?;
    let mut base = nontrivial.to_vec();
    base.push(x_n);
    if p.evaluate(&base)? != 0 {
        return Err(Error::NotASolution(format!("x_n = {x_n} does not solve the last-variable equation")));
    }
    let max_coordinate = nontrivial.iter().map(|v| v.unsigned_abs()).max().expect("nonempty");
    let steps = radius / max_coordinate;
    let floor_bound = 2 * steps + 1;
    let stated_bound = (2.0 * radius as f64 + 1.0) / max_coordinate as f64;
    let mut witnesses = Vec::new();
    if x_n.unsigned_abs() <= radius {
        let steps = i64::try_from(steps).map_err(|_| Error::Overflow("scaling range"))?;
        for t in -steps..=steps {
            let mut point: Vec<i64> = nontrivial.iter().map(|&v| v * t).collect();
            point.push(x_n);
            if p.evaluate(&point)? != 0 {
                return Err(Error::NotASolution(format!("{point:?}")));
            }
            witnesses.push(point);
        }
    }
    Ok(ScaledWitnesses { radius, max_coordinate, witnesses, stated_bound, floor_bound })
}

/// Serializes a witness set as a JSON array of integer vectors.
pub fn witnesses_to_json(points: &[Vec<i64>]) -> String {
    serde_json::to_string(points).expect("integer vectors always serialize")
}
