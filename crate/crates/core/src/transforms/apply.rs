use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::matrix::IntegerAffine;
use crate::counting::{count_auto, enumerate_solutions, Budget, Hypercube};
use crate::error::{Error, Result};
use crate::parse::render;
use crate::poly::Polynomial;

/// Result of substituting an affine map into a polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transformed {
    pub polynomial: Polynomial,
    /// Positive divisor removed by content normalization (1 when not normalized).
    pub content_divisor: i128,
}

/// Substitutes `x_i = sum_j M_ij y_j + c_i` into `p`, optionally dividing the
/// result by the gcd of its coefficients.
pub fn apply_transform(p: &Polynomial, map: &IntegerAffine, normalize: bool) -> Result<Transformed> {
    let k = p.var_count();
    if map.size() != k {
        return Err(Error::LengthMismatch { expected: k, found: map.size() });
    }
    let images: Vec<Polynomial> = (0..k)
        .map(|i| {
            let mut terms: Vec<(i128, Vec<u32>)> = (0..k)
                .map(|j| {
                    let mut e = vec![0; k];
                    e[j] = 1;
                    (map.matrix[i][j], e)
                })
                .collect();
            terms.push((map.translation[i], vec![0; k]));
            Polynomial::from_terms(k, terms)
        })
        .collect::<Result<_>>()?;

    let mut out = Polynomial::zero(k);
    for term in p.terms() {
        let mut prod = Polynomial::constant(k, term.coeff);
        for (i, &e) in term.exponents.iter().enumerate() {
            if e > 0 {
                prod = prod.checked_mul(&images[i].checked_pow(e)?)?;
            }
        }
        out = out.checked_add(&prod)?;
    }
    if normalize {
        let (polynomial, content_divisor) = out.divide_content();
        Ok(Transformed { polynomial, content_divisor })
    } else {
        Ok(Transformed { polynomial: out, content_divisor: 1 })
    }
}

/// Outcome of checking that an integer affine map carries solutions to solutions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PreservationReport {
    pub original: String,
    pub transformed: String,
    pub content_divisor: i128,
    pub determinant: String,
    pub unimodular: bool,
    pub radius: u64,
    /// Solutions of the original equation in the box.
    pub original_count: u64,
    /// Solutions of the transformed equation in the box.
    pub transformed_count: u64,
    /// `||M||_inf * N + ||c||_inf`, a box containing the image of the box.
    pub inflated_radius: u64,
    pub inflated_count: u64,
    /// Transformed solutions whose image does not solve the original.
    pub forward_violations: u64,
    /// Original solutions with preimage in the box that fail to pull back;
    /// only checked for unimodular maps.
    pub backward_violations: Option<u64>,
    pub inflation_bound_holds: bool,
}

impl PreservationReport {
    pub fn violations(&self) -> u64 {
        self.forward_violations + self.backward_violations.unwrap_or(0)
    }
}

fn to_point(v: &[BigRational]) -> Option<Vec<i64>> {
    v.iter().map(|q| if q.denom().is_one() { q.numer().to_i64() } else { None }).collect()
}

/// Checks the solution correspondence of `p` and its transform under `map`
/// by exhaustive enumeration.
pub fn verify_count_preservation(
    p: &Polynomial,
    map: &IntegerAffine,
    cube: Hypercube,
    budget: &Budget,
) -> Result<PreservationReport> {
    let det = map.determinant();
    if det.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let unimodular = det.abs().is_one();
    let transformed = apply_transform(p, map, true)?;
    let q = &transformed.polynomial;

    let mut forward_violations = 0u64;
    let mut transformed_count = 0u64;
    for y in enumerate_solutions(q, cube, usize::MAX, budget)? {
        transformed_count += 1;
        let x = map.apply_point(&y)?;
        if p.evaluate(&x)? != 0 {
            forward_violations += 1;
        }
    }

    let original_count = count_auto(p, cube, budget)?.count;
    let norm = u64::try_from(map.row_sum_norm()).map_err(|_| Error::Overflow("matrix norm"))?;
    let shift = u64::try_from(map.translation_norm()).map_err(|_| Error::Overflow("translation norm"))?;
    let inflated_radius = norm
        .checked_mul(cube.radius)
        .and_then(|r| r.checked_add(shift))
        .ok_or(Error::Overflow("inflated radius"))?;
    let inflated = Hypercube::integer(inflated_radius);
    let inflated_count = count_auto(p, inflated, budget)?.count;

    let backward_violations = if unimodular {
        let inv = map.inverse()?;
        let (lo, hi) = cube.coordinate_range()?;
        let shift: Vec<BigRational> =
            map.translation.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect();
        let mut violations = 0u64;
        let mut pulled_back = 0u64;
        for x in enumerate_solutions(p, inflated, usize::MAX, budget)? {
            let d: Vec<BigRational> =
                x.iter().zip(&shift).map(|(&xi, c)| BigRational::from_integer(BigInt::from(xi)) - c).collect();
            let y: Vec<BigRational> = inv
                .iter()
                .map(|row| row.iter().zip(&d).fold(BigRational::zero(), |acc, (a, b)| acc + a * b))
                .collect();
            match to_point(&y) {
                None => violations += 1,
                Some(y) => {
                    if y.iter().all(|&v| lo <= v && v <= hi) {
                        pulled_back += 1;
                        if q.evaluate(&y)? != 0 {
                            violations += 1;
                        }
                    }
                }
            }
        }
        violations += pulled_back.abs_diff(transformed_count);
        Some(violations)
    } else {
        None
    };

    Ok(PreservationReport {
        original: render(p),
        transformed: render(q),
        content_divisor: transformed.content_divisor,
        determinant: det.to_string(),
        unimodular,
        radius: cube.radius,
        original_count,
        transformed_count,
        inflated_radius,
        inflated_count,
        forward_violations,
        backward_violations,
        inflation_bound_holds: transformed_count <= inflated_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_equation;

    #[test]
    fn identity_is_noop() {
        let p = parse_equation("x1^3 - 2*x1*x2 + 7").unwrap();
        let t = apply_transform(&p, &IntegerAffine::identity(2), true).unwrap();
        assert_eq!(t.polynomial, p);
        assert_eq!(t.content_divisor, 1);
    }

    #[test]
    fn deformation_of_square() {
        let p = parse_equation("x1^2 + 2*x1*x2 + x2^2").unwrap();
        let cd = IntegerAffine::linear(vec![vec![1, -1], vec![1, 1]]).unwrap();
        let raw = apply_transform(&p, &cd, false).unwrap();
        assert_eq!(render(&raw.polynomial), "4*x1^2 = 0");
        let norm = apply_transform(&p, &cd, true).unwrap();
        assert_eq!(render(&norm.polynomial), "x1^2 = 0");
        assert_eq!(norm.content_divisor, 4);
    }

    #[test]
    fn translation_only() {
        let p = parse_equation("x1^2").unwrap();
        let t = IntegerAffine::new(vec![vec![1]], vec![1]).unwrap();
        assert_eq!(render(&apply_transform(&p, &t, true).unwrap().polynomial), "x1^2 + 2*x1 + 1 = 0");
    }

    #[test]
    fn size_mismatch() {
        let p = parse_equation("x1^2 + x2^2").unwrap();
        assert!(apply_transform(&p, &IntegerAffine::identity(3), true).is_err());
    }

    #[test]
    fn unimodular_preservation() {
        let p = parse_equation("x1^2 - x2^2").unwrap();
        let m = IntegerAffine::linear(vec![vec![1, 1], vec![0, 1]]).unwrap();
        let r = verify_count_preservation(&p, &m, Hypercube::integer(10), &Budget::default()).unwrap();
        assert_eq!(r.forward_violations, 0);
        assert_eq!(r.backward_violations, Some(0));
        assert!(r.inflation_bound_holds);
        assert_eq!(r.original_count, 41);
    }

    #[test]
    fn deformation_preservation() {
        let p = parse_equation("x1^2 + 2*x1*x2 + x2^2").unwrap();
        let cd = IntegerAffine::linear(vec![vec![1, -1], vec![1, 1]]).unwrap();
        let r = verify_count_preservation(&p, &cd, Hypercube::integer(10), &Budget::default()).unwrap();
        assert_eq!(r.transformed_count, 21);
        assert_eq!(r.forward_violations, 0);
        assert_eq!(r.backward_violations, None);
        assert_eq!(r.inflated_radius, 20);
        assert!(r.inflation_bound_holds);
    }

    #[test]
    fn singular_rejected() {
        let p = parse_equation("x1 - x2").unwrap();
        let m = IntegerAffine::linear(vec![vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(
            verify_count_preservation(&p, &m, Hypercube::integer(3), &Budget::default()),
            Err(Error::SingularMatrix)
        );
    }
}
