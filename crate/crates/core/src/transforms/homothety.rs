use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::matrix::TransformMatrix;
use crate::error::{Error, Result};

/// Scale factor of a homothety: an integer, or `multiplier * sqrt(rad)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lambda {
    Integer(BigInt),
    Surd { multiplier: BigInt, rad: u64 },
}

impl Lambda {
    /// `lambda^2`, always an integer.
    pub fn squared(&self) -> BigInt {
        match self {
            Lambda::Integer(n) => n * n,
            Lambda::Surd { multiplier, rad } => multiplier * multiplier * BigInt::from(*rad),
        }
    }
}

impl fmt::Display for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lambda::Integer(n) => write!(f, "{n}"),
            Lambda::Surd { multiplier, rad } if multiplier.is_one() => write!(f, "sqrt({rad})"),
            Lambda::Surd { multiplier, rad } => write!(f, "{multiplier}*sqrt({rad})"),
        }
    }
}

impl Serialize for Lambda {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Which of the four homothety cases a matrix falls into.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomothetyCase {
    pub case_id: u8,
    pub lambda: Option<Lambda>,
    pub reason: String,
}

/// Total classification of a matrix by the kinds of numbers among its entries.
pub fn homothety_case(m: &TransformMatrix) -> HomothetyCase {
    let entries: Vec<_> = m.entries.iter().flatten().collect();
    let mixed_entry = entries.iter().any(|e| !e.r.is_zero() && !e.s.is_zero());
    let has_rational = entries.iter().any(|e| !e.r.is_zero());
    let radicands: BTreeSet<u64> = entries.iter().filter_map(|e| e.radicand()).collect();

    if radicands.len() >= 2 {
        let list: Vec<String> = radicands.iter().map(|r| format!("sqrt({r})")).collect();
        return HomothetyCase {
            case_id: 3,
            lambda: None,
            reason: format!("entries contain different irrationalities {}", list.join(", ")),
        };
    }
    if let Some(&rad) = radicands.iter().next() {
        if mixed_entry || has_rational {
            return HomothetyCase {
                case_id: 4,
                lambda: None,
                reason: format!("entries mix rational values with multiples of sqrt({rad})"),
            };
        }
        // Every nonzero entry is s*sqrt(rad); lambda = L*sqrt(rad) maps it to L*s*rad.
        let m_big = BigRational::from_integer(BigInt::from(rad));
        let multiplier = entries
            .iter()
            .map(|e| (&e.s * &m_big).denom().clone())
            .fold(BigInt::one(), |acc, d| acc.lcm(&d));
        let reason = if multiplier.is_one() {
            format!("all entries are rational multiples of sqrt({rad})")
        } else {
            format!(
                "all entries are rational multiples of sqrt({rad}); sqrt({rad}) alone does not clear denominators, \
                 so it is scaled by {multiplier}"
            )
        };
        return HomothetyCase { case_id: 2, lambda: Some(Lambda::Surd { multiplier, rad }), reason };
    }
    let lambda = entries.iter().fold(BigInt::one(), |acc, e| acc.lcm(e.r.denom()));
    HomothetyCase {
        case_id: 1,
        lambda: Some(Lambda::Integer(lambda.clone())),
        reason: format!("all entries are rational; the least common denominator is {lambda}"),
    }
}

/// Integer matrix `lambda * M` together with the scale used.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Deformation {
    pub lambda: Lambda,
    pub matrix: Vec<Vec<i128>>,
}

/// Scales `m` by the homothety of `case` and returns the integer result.
pub fn deformation_matrix(m: &TransformMatrix, case: &HomothetyCase) -> Result<Deformation> {
    let Some(lambda) = case.lambda.clone() else {
        return Err(Error::NoIntegerHomothety { case: case.case_id, reason: case.reason.clone() });
    };
    let scale_entry = |e: &super::surd::MatrixEntry| -> Result<BigRational> {
        match &lambda {
            Lambda::Integer(n) => {
                if !e.is_rational() {
                    return Err(Error::InvalidMatrix(format!("entry {e} is not rational")));
                }
                Ok(&e.r * BigRational::from_integer(n.clone()))
            }
            Lambda::Surd { multiplier, rad } => {
                if !e.r.is_zero() || (!e.s.is_zero() && e.rad != *rad) {
                    return Err(Error::InvalidMatrix(format!("entry {e} is not a multiple of sqrt({rad})")));
                }
                Ok(&e.s * BigRational::from_integer(multiplier * BigInt::from(*rad)))
            }
        }
    };
    let matrix = m
        .entries
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| {
                    let v = scale_entry(e)?;
                    if !v.denom().is_one() {
                        return Err(Error::InvalidMatrix(format!("scaled entry {v} is not an integer")));
                    }
                    v.numer().to_i128().ok_or(Error::Overflow("deformation matrix entry"))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Deformation { lambda, matrix })
}

/// Whether every translation component is an integer.
pub fn check_integer_translation(m: &TransformMatrix) -> bool {
    m.translation.iter().all(|c| c.denom().is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transforms::rotation::pythagorean_rotation;
    use crate::transforms::surd::{ratio, MatrixEntry};

    fn sqrt2_rotation() -> TransformMatrix {
        let h = MatrixEntry::surd(ratio(1, 2), 2).unwrap();
        TransformMatrix::linear(vec![vec![h.clone(), h.neg()], vec![h.clone(), h]]).unwrap()
    }

    fn sixty_degrees() -> TransformMatrix {
        let s = MatrixEntry::surd(ratio(1, 2), 3).unwrap();
        let c = MatrixEntry::frac(1, 2);
        TransformMatrix::linear(vec![vec![c.clone(), s.neg()], vec![s, c]]).unwrap()
    }

    #[test]
    fn case_one() {
        let m = pythagorean_rotation(2, 1).unwrap();
        let case = homothety_case(&m);
        assert_eq!(case.case_id, 1);
        assert_eq!(case.lambda, Some(Lambda::Integer(BigInt::from(5))));
        let d = deformation_matrix(&m, &case).unwrap();
        assert_eq!(d.matrix, vec![vec![3, -4], vec![4, 3]]);
    }

    #[test]
    fn case_two() {
        let m = sqrt2_rotation();
        let case = homothety_case(&m);
        assert_eq!(case.case_id, 2);
        assert_eq!(case.lambda.as_ref().unwrap().to_string(), "sqrt(2)");
        assert_eq!(deformation_matrix(&m, &case).unwrap().matrix, vec![vec![1, -1], vec![1, 1]]);
    }

    #[test]
    fn case_two_with_extra_scale() {
        let e = MatrixEntry::surd(ratio(1, 4), 2).unwrap();
        let m = TransformMatrix::linear(vec![vec![e.clone(), e.neg()], vec![e.clone(), e]]).unwrap();
        let case = homothety_case(&m);
        assert_eq!(case.lambda, Some(Lambda::Surd { multiplier: BigInt::from(2), rad: 2 }));
        assert_eq!(deformation_matrix(&m, &case).unwrap().matrix, vec![vec![1, -1], vec![1, 1]]);
    }

    #[test]
    fn cases_three_and_four() {
        let m = sixty_degrees();
        let case = homothety_case(&m);
        assert_eq!(case.case_id, 4);
        assert!(case.lambda.is_none());
        assert!(matches!(deformation_matrix(&m, &case), Err(Error::NoIntegerHomothety { case: 4, .. })));

        let a = MatrixEntry::surd(ratio(1, 1), 2).unwrap();
        let b = MatrixEntry::surd(ratio(1, 1), 3).unwrap();
        let m = TransformMatrix::linear(vec![vec![a, MatrixEntry::zero()], vec![MatrixEntry::zero(), b]]).unwrap();
        assert_eq!(homothety_case(&m).case_id, 3);
    }

    #[test]
    fn translations() {
        let mut m = TransformMatrix::identity(2);
        assert!(check_integer_translation(&m));
        m.translation = vec![ratio(1, 2), ratio(0, 1)];
        assert!(!check_integer_translation(&m));
        m.translation = vec![ratio(-3, 1), ratio(7, 1)];
        assert!(check_integer_translation(&m));
    }
}
