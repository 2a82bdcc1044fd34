//! Exact integer polynomials and their structural classification.
//!
//! Coefficients are `i128` and every arithmetic step is checked; an overflow
//! surfaces as [`Error::Overflow`] and never wraps. Variables are indexed
//! `x1..xk` in text and `0..k` in code. The variable count is declared rather
//! than inferred, so a polynomial may carry variables that do not appear.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One monomial `coeff * x1^e1 * ... * xk^ek` with a nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: i128,
    pub exponents: Vec<u32>,
}

impl Term {
    pub fn total_degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    /// The single variable this term depends on, if it depends on exactly one.
    pub fn single_variable(&self) -> Option<(usize, u32)> {
        let mut found = None;
        for (i, &e) in self.exponents.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((i, e));
            }
        }
        found
    }
}

/// Sparse polynomial over the integers with a declared number of variables.
///
/// Terms are keyed by exponent vector, so no two terms share one and zero
/// coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    var_count: usize,
    terms: BTreeMap<Vec<u32>, i128>,
}

fn checked_pow_i128(base: i128, exp: u32) -> Option<i128> {
    base.checked_pow(exp)
}

impl Polynomial {
    pub fn zero(var_count: usize) -> Self {
        Polynomial { var_count, terms: BTreeMap::new() }
    }

    pub fn constant(var_count: usize, c: i128) -> Self {
        let mut p = Self::zero(var_count);
        if c != 0 {
            p.terms.insert(vec![0; var_count], c);
        }
        p
    }

    /// The variable `x_{index+1}`.
    pub fn var(var_count: usize, index: usize) -> Self {
        Self::monomial(var_count, 1, &[(index, 1)])
    }

    /// `coeff * prod x_i^e` from sparse `(index, exponent)` pairs.
    pub fn monomial(var_count: usize, coeff: i128, powers: &[(usize, u32)]) -> Self {
        let mut exps = vec![0u32; var_count];
        for &(i, e) in powers {
            assert!(i < var_count, "variable index {i} out of range for {var_count} variables");
            exps[i] += e;
        }
        let mut p = Self::zero(var_count);
        if coeff != 0 {
            p.terms.insert(exps, coeff);
        }
        p
    }

    /// Builds a polynomial from `(coeff, exponents)` pairs, merging duplicates.
    pub fn from_terms<I>(var_count: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i128, Vec<u32>)>,
    {
        let mut p = Self::zero(var_count);
        for (coeff, exps) in terms {
            if exps.len() != var_count {
                return Err(Error::LengthMismatch { expected: var_count, found: exps.len() });
            }
            p.add_term(coeff, exps)?;
        }
        Ok(p)
    }

    pub(crate) fn add_term(&mut self, coeff: i128, exps: Vec<u32>) -> Result<()> {
        if coeff == 0 {
            return Ok(());
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o
                    .get()
                    .checked_add(coeff)
                    .ok_or(Error::Overflow("coefficient addition"))?;
                if sum == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
        Ok(())
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending exponent-vector order.
    pub fn terms(&self) -> impl Iterator<Item = Term> + '_ {
        self.terms.iter().map(|(e, &c)| Term { coeff: c, exponents: e.clone() })
    }

    pub(crate) fn raw_terms(&self) -> &BTreeMap<Vec<u32>, i128> {
        &self.terms
    }

    /// Maximum total degree; 0 for constants and for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn constant_term(&self) -> i128 {
        self.terms.get(&vec![0; self.var_count]).copied().unwrap_or(0)
    }

    pub fn coefficient(&self, exponents: &[u32]) -> i128 {
        self.terms.get(exponents).copied().unwrap_or(0)
    }

    /// Whether variable `index` occurs in some term.
    pub fn uses_var(&self, index: usize) -> bool {
        self.terms.keys().any(|e| e[index] > 0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|x| x == d),
        }
    }

    /// Same polynomial viewed in a larger variable space.
    pub fn with_var_count(&self, var_count: usize) -> Result<Self> {
        if var_count < self.var_count && (var_count..self.var_count).any(|i| self.uses_var(i)) {
            return Err(Error::InvalidArgument(format!(
                "cannot drop variables that occur in the polynomial (target {var_count})"
            )));
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, &c)| {
                let mut e2 = e.clone();
                e2.resize(var_count, 0);
                (e2, c)
            })
            .collect();
        Ok(Polynomial { var_count, terms })
    }

    pub fn checked_neg(&self) -> Result<Self> {
        self.checked_scale(-1)
    }

    pub fn checked_scale(&self, factor: i128) -> Result<Self> {
        if factor == 0 {
            return Ok(Self::zero(self.var_count));
        }
        let mut terms = BTreeMap::new();
        for (e, &c) in &self.terms {
            let v = c.checked_mul(factor).ok_or(Error::Overflow("coefficient scaling"))?;
            terms.insert(e.clone(), v);
        }
        Ok(Polynomial { var_count: self.var_count, terms })
    }

    fn same_space(&self, other: &Self) -> Result<()> {
        if self.var_count != other.var_count {
            return Err(Error::LengthMismatch { expected: self.var_count, found: other.var_count });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_space(other)?;
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(c, e.clone())?;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_space(other)?;
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            let neg = c.checked_neg().ok_or(Error::Overflow("coefficient negation"))?;
            out.add_term(neg, e.clone())?;
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_space(other)?;
        let mut out = Self::zero(self.var_count);
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let c = ca.checked_mul(cb).ok_or(Error::Overflow("coefficient product"))?;
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(c, e)?;
            }
        }
        Ok(out)
    }

    pub fn checked_pow(&self, exp: u32) -> Result<Self> {
        let mut result = Self::constant(self.var_count, 1);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Exact value at an integer point.
    pub fn evaluate(&self, point: &[i64]) -> Result<i128> {
        if point.len() != self.var_count {
            return Err(Error::LengthMismatch { expected: self.var_count, found: point.len() });
        }
        let mut total: i128 = 0;
        for (exps, &coeff) in &self.terms {
            let mut v = coeff;
            for (&x, &e) in point.iter().zip(exps) {
                if e == 0 {
                    continue;
                }
                let pw = checked_pow_i128(x as i128, e).ok_or(Error::Overflow("evaluate"))?;
                v = v.checked_mul(pw).ok_or(Error::Overflow("evaluate"))?;
            }
            total = total.checked_add(v).ok_or(Error::Overflow("evaluate"))?;
        }
        Ok(total)
    }

    /// Fixes `x_{index+1} = value`; the variable count is unchanged.
    pub fn substitute(&self, index: usize, value: i64) -> Result<Self> {
        let mut out = Self::zero(self.var_count);
        for (exps, &coeff) in &self.terms {
            let e = exps[index];
            let mut c = coeff;
            if e > 0 {
                let pw = checked_pow_i128(value as i128, e).ok_or(Error::Overflow("substitution"))?;
                c = c.checked_mul(pw).ok_or(Error::Overflow("substitution"))?;
            }
            let mut e2 = exps.clone();
            e2[index] = 0;
            out.add_term(c, e2)?;
        }
        Ok(out)
    }

    /// Non-negative GCD of all coefficients (0 for the zero polynomial).
    pub fn content(&self) -> i128 {
        self.terms.values().fold(0i128, |g, &c| g.gcd(&c))
    }

    /// Divides every coefficient by the content; returns the divisor used.
    pub fn divide_content(&self) -> (Self, i128) {
        let g = self.content();
        if g <= 1 {
            return (self.clone(), g.max(1));
        }
        let terms = self.terms.iter().map(|(e, &c)| (e.clone(), c / g)).collect();
        (Polynomial { var_count: self.var_count, terms }, g)
    }

    /// When every non-constant term depends on a single variable, returns the
    /// per-variable univariate parts `(exponent, coeff)` and the constant.
    pub fn separable_parts(&self) -> Option<(Vec<Vec<(u32, i128)>>, i128)> {
        let mut parts = vec![Vec::new(); self.var_count];
        let mut constant = 0;
        for t in self.terms() {
            if t.total_degree() == 0 {
                constant = t.coeff;
                continue;
            }
            let (i, e) = t.single_variable()?;
            parts[i].push((e, t.coeff));
        }
        Some((parts, constant))
    }
}

/// Whether the equation is diagonal and, if so, which diagonal shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum EquationKind {
    /// `x_e = sum b_i x_i^d + c` with `x_e` appearing only linearly.
    DiagonalExplicit { explicit_var: usize },
    /// `sum a_i x_i^d + c = 0` with `c != 0`.
    DiagonalThue,
    /// `sum a_i x_i^d = 0`.
    DiagonalHomogeneous,
    /// Caller asserts irreducibility; `genus_curve` asserts that the
    /// restriction to two coordinate axes is a curve of genus at least one.
    GeneralIrreducibleAsserted { genus_curve: bool },
    GeneralReducibleAllowed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// Structural summary of an equation `p = 0` after sign normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationClass {
    pub kind: EquationKind,
    pub degree: u32,
    pub var_count: usize,
    /// Positive diagonal coefficients after sign normalization. For explicit
    /// equations the explicit variable counts as one positive term.
    pub pos_count: usize,
    pub constant: i128,
    pub parity: Parity,
}

/// Facts about an equation that classification cannot decide by itself.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Assumptions {
    pub irreducible: bool,
    pub genus_curve: bool,
}

pub fn classify(p: &Polynomial) -> Result<EquationClass> {
    classify_with(p, Assumptions::default())
}

pub fn classify_with(p: &Polynomial, assumptions: Assumptions) -> Result<EquationClass> {
    if p.var_count() == 0 {
        return Err(Error::InvalidArgument("equation needs at least one variable".into()));
    }
    if p.is_zero() {
        return Err(Error::Degenerate);
    }
    let degree = p.degree();
    let parity = if degree % 2 == 0 { Parity::Even } else { Parity::Odd };
    let k = p.var_count();
    let constant = p.constant_term();

    if let Some((kind, pos_count, c)) = diagonal_shape(p) {
        return Ok(EquationClass { kind, degree, var_count: k, pos_count, constant: c, parity });
    }

    let kind = if assumptions.irreducible || assumptions.genus_curve {
        EquationKind::GeneralIrreducibleAsserted { genus_curve: assumptions.genus_curve }
    } else {
        EquationKind::GeneralReducibleAllowed
    };
    // Canonical sign: leading term (highest degree, then highest exponent vector) positive.
    let lead = p
        .raw_terms()
        .iter()
        .max_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            da.cmp(&db).then_with(|| a.0.cmp(b.0))
        })
        .map(|(_, &c)| c)
        .unwrap_or(1);
    let c = if lead < 0 { -constant } else { constant };
    Ok(EquationClass { kind, degree, var_count: k, pos_count: 0, constant: c, parity })
}

/// Per-variable `(exponent, coeff)` when every variable occurs in exactly one
/// single-variable monomial.
fn diagonal_monomials(p: &Polynomial) -> Option<Vec<(u32, i128)>> {
    let (parts, _) = p.separable_parts()?;
    parts
        .into_iter()
        .map(|part| if part.len() == 1 { Some(part[0]) } else { None })
        .collect()
}

fn diagonal_shape(p: &Polynomial) -> Option<(EquationKind, usize, i128)> {
    let monos = diagonal_monomials(p)?;
    let c0 = p.constant_term();

    // Explicit variable: linear with coefficient +-1, all others share one exponent.
    for (e_idx, &(e_exp, e_coeff)) in monos.iter().enumerate() {
        if e_exp != 1 || e_coeff.abs() != 1 {
            continue;
        }
        let mut others = monos.iter().enumerate().filter(|(i, _)| *i != e_idx).map(|(_, m)| m);
        let common = others.clone().next().map(|m| m.0);
        if let Some(d) = common {
            if !others.all(|m| m.0 == d) {
                continue;
            }
        }
        // b_i = -coeff_i / coeff_e
        let (mut pos, mut neg) = (0usize, 0usize);
        for (i, &(_, c)) in monos.iter().enumerate() {
            if i == e_idx {
                continue;
            }
            if (c > 0) != (e_coeff > 0) {
                pos += 1;
            } else {
                neg += 1;
            }
        }
        let flip = (e_coeff < 0) != (neg > pos);
        let c = if flip { c0.checked_neg()? } else { c0 };
        let m = 1 + pos.max(neg);
        return Some((EquationKind::DiagonalExplicit { explicit_var: e_idx }, m, c));
    }

    let d = monos.first()?.0;
    if monos.iter().any(|m| m.0 != d) {
        return None;
    }
    let pos = monos.iter().filter(|m| m.1 > 0).count();
    let neg = monos.len() - pos;
    let flip = neg > pos || (neg == pos && c0 > 0);
    let (m, c) = if flip { (neg, c0.checked_neg()?) } else { (pos, c0) };
    let kind = if c == 0 { EquationKind::DiagonalHomogeneous } else { EquationKind::DiagonalThue };
    Some((kind, m, c))
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::render(self))
    }
}
