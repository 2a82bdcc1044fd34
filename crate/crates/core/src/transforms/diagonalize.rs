use std::fmt;
use std::str::FromStr;

use num_integer::{Integer, Roots};
use num_traits::ToPrimitive;
use serde::Serialize;

use super::apply::apply_transform;
use super::homothety::{deformation_matrix, homothety_case, HomothetyCase};
use super::matrix::{IntegerAffine, TransformMatrix};
use super::surd::{ratio, MatrixEntry};
use crate::error::{Error, Result};
use crate::parse::{render, render_expression};
use crate::poly::Polynomial;

/// Sign in front of the square root when solving for `tan(phi)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    #[default]
    Plus,
    Minus,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Branch::Plus => "plus",
            Branch::Minus => "minus",
        })
    }
}

impl FromStr for Branch {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" | "+" => Ok(Branch::Plus),
            "minus" | "-" => Ok(Branch::Minus),
            _ => Err(Error::InvalidArgument(format!("unknown branch '{s}', expected plus or minus"))),
        }
    }
}

/// Exact record that substituting the deformation into the form gives
/// `multiplier` times the diagonal form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubstitutionCertificate {
    pub original: String,
    pub substituted: String,
    pub diagonal_form: String,
    pub multiplier: i128,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum DiagonalOutcome {
    AlreadyDiagonal {
        coefficients: (i128, i128),
    },
    Deformed {
        tan_phi: String,
        rotation: TransformMatrix,
        homothety: HomothetyCase,
        deformation: Vec<Vec<i128>>,
        coefficients: (i128, i128),
        certificate: SubstitutionCertificate,
    },
    NoIntegerHomothety {
        case_id: u8,
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagonalization {
    pub a11: i64,
    pub a12: i64,
    pub a22: i64,
    pub branch: Branch,
    pub discriminant: i128,
    #[serde(flatten)]
    pub outcome: DiagonalOutcome,
}

impl Diagonalization {
    pub fn coefficients(&self) -> Option<(i128, i128)> {
        match &self.outcome {
            DiagonalOutcome::AlreadyDiagonal { coefficients } | DiagonalOutcome::Deformed { coefficients, .. } => {
                Some(*coefficients)
            }
            DiagonalOutcome::NoIntegerHomothety { .. } => None,
        }
    }

    pub fn multiplier(&self) -> Option<i128> {
        match &self.outcome {
            DiagonalOutcome::AlreadyDiagonal { .. } => Some(1),
            DiagonalOutcome::Deformed { certificate, .. } => Some(certificate.multiplier),
            DiagonalOutcome::NoIntegerHomothety { .. } => None,
        }
    }

    pub fn deformation(&self) -> Option<&Vec<Vec<i128>>> {
        match &self.outcome {
            DiagonalOutcome::Deformed { deformation, .. } => Some(deformation),
            _ => None,
        }
    }
}

/// `a11 x^2 + 2 a12 x y + a22 y^2` as a polynomial in two variables.
pub fn binary_quadratic_form(a11: i64, a12: i64, a22: i64) -> Polynomial {
    let mut p = Polynomial::zero(2);
    for (c, e) in [(a11 as i128, [2, 0]), (2 * a12 as i128, [1, 1]), (a22 as i128, [0, 2])] {
        p.add_term(c, e.to_vec()).expect("64-bit inputs cannot overflow");
    }
    p
}

fn diagonal_form(c1: i128, c2: i128) -> Polynomial {
    let mut p = Polynomial::zero(2);
    p.add_term(c1, vec![2, 0]).expect("fresh polynomial");
    p.add_term(c2, vec![0, 2]).expect("fresh polynomial");
    p
}

/// Rotates the binary quadratic form to diagonal form and, when a homothety
/// exists, returns the integer deformation with an exact certificate.
pub fn diagonalize_binary_quadratic(a11: i64, a12: i64, a22: i64, branch: Branch) -> Result<Diagonalization> {
    let (b11, b12, b22) = (a11 as i128, a12 as i128, a22 as i128);
    let diff = b22 - b11;
    let discriminant = diff * diff + 4 * b12 * b12;
    let base = Diagonalization { a11, a12, a22, branch, discriminant, outcome: DiagonalOutcome::AlreadyDiagonal {
        coefficients: (b11, b22),
    } };
    if a12 == 0 {
        return Ok(base);
    }
    let root = discriminant.sqrt();
    if root * root != discriminant {
        return Ok(Diagonalization {
            outcome: DiagonalOutcome::NoIntegerHomothety {
                case_id: 3,
                reason: format!("discriminant {discriminant} is not a perfect square, so tan(phi) is irrational"),
            },
            ..base
        });
    }
    // tan(phi) = p / q in lowest terms with q > 0. When a11 = a22 the branch
    // picks the sign of tan(phi) = +-1 directly, independent of the sign of a12.
    let (p, q) = if diff == 0 {
        (if branch == Branch::Plus { 1 } else { -1 }, 1)
    } else {
        let signed_root = if branch == Branch::Plus { root } else { -root };
        let (p, q) = (diff + signed_root, 2 * b12);
        let g = p.gcd(&q);
        let (p, q) = (p / g, q / g);
        if q < 0 {
            (-p, -q)
        } else {
            (p, q)
        }
    };
    let h = p * p + q * q;
    let to_i64 = |x: i128| x.to_i64().ok_or(Error::Overflow("rotation entry"));
    let h64 = u64::try_from(h).map_err(|_| Error::Overflow("rotation norm"))?;
    // cos = q / sqrt(h), sin = p / sqrt(h), written as (x / h) * sqrt(h).
    let scaled = |x: i128| -> Result<MatrixEntry> {
        let hr = h.sqrt();
        if hr * hr == h {
            Ok(MatrixEntry::frac(to_i64(x)?, to_i64(hr)?))
        } else {
            MatrixEntry::surd(ratio(to_i64(x)?, to_i64(h)?), h64)
        }
    };
    let (cos, sin) = (scaled(q)?, scaled(p)?);
    let rotation = TransformMatrix::linear(vec![vec![cos.clone(), sin.neg()], vec![sin, cos]])?;
    let homothety = homothety_case(&rotation);
    let deformation = match deformation_matrix(&rotation, &homothety) {
        Ok(d) => d,
        Err(Error::NoIntegerHomothety { case, reason }) => {
            return Ok(Diagonalization {
                outcome: DiagonalOutcome::NoIntegerHomothety { case_id: case, reason },
                ..base
            })
        }
        Err(e) => return Err(e),
    };

    // The rotated coefficients are the eigenvalues (b11 + b22 +- root) / 2.
    let c1 = (b11 * q * q + 2 * b12 * p * q + b22 * p * p) / h;
    let c2 = (b11 * p * p - 2 * b12 * p * q + b22 * q * q) / h;
    let multiplier = deformation.lambda.squared().to_i128().ok_or(Error::Overflow("homothety multiplier"))?;

    let form = binary_quadratic_form(a11, a12, a22);
    let map = IntegerAffine::linear(deformation.matrix.clone())?;
    let substituted = apply_transform(&form, &map, false)?.polynomial;
    let diagonal = diagonal_form(c1, c2);
    if substituted != diagonal.checked_scale(multiplier)? {
        return Err(Error::InvalidArgument(format!(
            "substitution identity failed: {} is not {multiplier} * ({})",
            render(&substituted),
            render(&diagonal)
        )));
    }
    let certificate = SubstitutionCertificate {
        original: render_expression(&form),
        substituted: render_expression(&substituted),
        diagonal_form: render_expression(&diagonal),
        multiplier,
    };
    Ok(Diagonalization {
        outcome: DiagonalOutcome::Deformed {
            tan_phi: if q == 1 { p.to_string() } else { format!("{p}/{q}") },
            rotation,
            homothety,
            deformation: deformation.matrix,
            coefficients: (c1, c2),
            certificate,
        },
        ..base
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_diagonal_coefficients() {
        let d = diagonalize_binary_quadratic(1, 1, 1, Branch::Plus).unwrap();
        assert_eq!(d.deformation(), Some(&vec![vec![1, -1], vec![1, 1]]));
        assert_eq!(d.coefficients(), Some((2, 0)));
        assert_eq!(d.multiplier(), Some(2));
        let d = diagonalize_binary_quadratic(1, 1, 1, Branch::Minus).unwrap();
        assert_eq!(d.deformation(), Some(&vec![vec![1, 1], vec![-1, 1]]));
        assert_eq!(d.coefficients(), Some((0, 2)));
        let d = diagonalize_binary_quadratic(3, -2, 3, Branch::Plus).unwrap();
        assert_eq!(d.deformation(), Some(&vec![vec![1, -1], vec![1, 1]]));
        assert_eq!(d.coefficients(), Some((1, 5)));
    }

    #[test]
    fn already_diagonal_and_irrational() {
        let d = diagonalize_binary_quadratic(1, 0, 1, Branch::Plus).unwrap();
        assert_eq!(d.outcome, DiagonalOutcome::AlreadyDiagonal { coefficients: (1, 1) });
        let d = diagonalize_binary_quadratic(1, 1, 2, Branch::Plus).unwrap();
        assert_eq!(d.discriminant, 5);
        assert!(matches!(d.outcome, DiagonalOutcome::NoIntegerHomothety { .. }));
    }

    #[test]
    fn rational_rotation_case() {
        // Discriminant 9 + 16 = 25; tan(phi) = (3 + 5) / 4 = 2, rotation entries over sqrt(5).
        let d = diagonalize_binary_quadratic(0, 2, 3, Branch::Plus).unwrap();
        assert_eq!(d.coefficients(), Some((4, -1)));
        assert_eq!(d.multiplier(), Some(5));
        // tan(phi) = 3/4 gives a case-1 rotation.
        let d = diagonalize_binary_quadratic(7, 12, 0, Branch::Plus).unwrap();
        let DiagonalOutcome::Deformed { homothety, .. } = &d.outcome else { panic!("expected deformation") };
        assert_eq!(homothety.case_id, 1);
        assert_eq!(d.coefficients(), Some((16, -9)));
        assert_eq!(d.multiplier(), Some(25));
    }
}
