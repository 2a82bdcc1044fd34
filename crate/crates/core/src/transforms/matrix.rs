use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::surd::{format_ratio, parse_ratio, MatrixEntry};
use crate::error::{Error, Result};

/// Square matrix over `Q(sqrt(rad))` plus a rational translation:
/// `x = C x' + c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformMatrix {
    pub entries: Vec<Vec<MatrixEntry>>,
    pub translation: Vec<BigRational>,
}

impl TransformMatrix {
    pub fn new(entries: Vec<Vec<MatrixEntry>>, translation: Vec<BigRational>) -> Result<Self> {
        let n = entries.len();
        if n < 2 {
            return Err(Error::InvalidMatrix(format!("matrix size must be at least 2, got {n}")));
        }
        if entries.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidMatrix("matrix must be square".into()));
        }
        if translation.len() != n {
            return Err(Error::LengthMismatch { expected: n, found: translation.len() });
        }
        Ok(TransformMatrix { entries, translation })
    }

    /// Linear part only, zero translation.
    pub fn linear(entries: Vec<Vec<MatrixEntry>>) -> Result<Self> {
        let n = entries.len();
        Self::new(entries, vec![BigRational::zero(); n])
    }

    pub fn identity(n: usize) -> Self {
        let entries = (0..n)
            .map(|i| (0..n).map(|j| if i == j { MatrixEntry::one() } else { MatrixEntry::zero() }).collect())
            .collect();
        TransformMatrix { entries, translation: vec![BigRational::zero(); n] }
    }

    /// Rational matrix from `(numerator, denominator)` pairs.
    pub fn from_fractions(rows: &[&[(i64, i64)]]) -> Result<Self> {
        let entries = rows.iter().map(|row| row.iter().map(|&(n, d)| MatrixEntry::frac(n, d)).collect()).collect();
        Self::linear(entries)
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &MatrixEntry {
        &self.entries[i][j]
    }

    pub fn is_rational(&self) -> bool {
        self.entries.iter().flatten().all(MatrixEntry::is_rational)
    }

    pub fn transpose(&self) -> Self {
        let n = self.size();
        let entries = (0..n).map(|i| (0..n).map(|j| self.entries[j][i].clone()).collect()).collect();
        TransformMatrix { entries, translation: self.translation.clone() }
    }

    /// Product of the linear parts; the translation of the result is zero.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let n = self.size();
        if other.size() != n {
            return Err(Error::LengthMismatch { expected: n, found: other.size() });
        }
        let mut entries = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let mut acc = MatrixEntry::zero();
                for l in 0..n {
                    acc = acc.add(&self.entries[i][l].mul(&other.entries[l][j])?)?;
                }
                row.push(acc);
            }
            entries.push(row);
        }
        Self::linear(entries)
    }

    /// Exact determinant by elimination in `Q(sqrt(rad))`.
    pub fn determinant(&self) -> Result<MatrixEntry> {
        let n = self.size();
        let mut a = self.entries.clone();
        let mut det = MatrixEntry::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Ok(MatrixEntry::zero());
            };
            if pivot != col {
                a.swap(pivot, col);
                det = det.neg();
            }
            let inv = a[col][col].inv()?;
            det = det.mul(&a[col][col])?;
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].mul(&inv)?;
                for c in col..n {
                    let delta = factor.mul(&a[col][c])?;
                    a[r][c] = a[r][c].sub(&delta)?;
                }
            }
        }
        Ok(det)
    }

    /// `M^T M = I` exactly.
    pub fn is_orthogonal(&self) -> Result<bool> {
        let prod = self.transpose().mul(self)?;
        Ok(prod.entries == Self::identity(self.size()).entries)
    }

    /// Orthogonal with determinant exactly 1.
    pub fn is_proper_rotation(&self) -> Result<bool> {
        Ok(self.is_orthogonal()? && self.determinant()? == MatrixEntry::one())
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            size: self.size(),
            entries: self
                .entries
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|e| EntryJson { r: format_ratio(&e.r), s: format_ratio(&e.s), rad: e.rad })
                        .collect()
                })
                .collect(),
            translation: self.translation.iter().map(format_ratio).collect(),
        }
    }

    pub fn from_json(json: &MatrixJson) -> Result<Self> {
        if json.entries.len() != json.size {
            return Err(Error::InvalidMatrix(format!(
                "size is {} but {} rows were given",
                json.size,
                json.entries.len()
            )));
        }
        let entries = json
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| MatrixEntry::new(parse_ratio(&e.r)?, parse_ratio(&e.s)?, e.rad))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let translation = if json.translation.is_empty() {
            vec![BigRational::zero(); json.size]
        } else {
            json.translation.iter().map(|t| parse_ratio(t)).collect::<Result<Vec<_>>>()?
        };
        Self::new(entries, translation)
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        let json: MatrixJson =
            serde_json::from_str(text).map_err(|e| Error::InvalidMatrix(format!("matrix JSON: {e}")))?;
        Self::from_json(&json)
    }

    /// The same map with integer entries and translation, if it has them.
    pub fn to_integer_affine(&self) -> Result<IntegerAffine> {
        let to_int = |q: &BigRational, what: &str| -> Result<i128> {
            if !q.denom().is_one() {
                return Err(Error::InvalidMatrix(format!("{what} {} is not an integer", format_ratio(q))));
            }
            q.numer().to_i128().ok_or(Error::Overflow("integer matrix entry"))
        };
        let matrix = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| {
                        if !e.is_rational() {
                            return Err(Error::InvalidMatrix(format!("entry {e} is irrational")));
                        }
                        to_int(&e.r, "entry")
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let translation = self.translation.iter().map(|t| to_int(t, "translation")).collect::<Result<Vec<_>>>()?;
        IntegerAffine::new(matrix, translation)
    }
}

impl Serialize for TransformMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TransformMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let json = MatrixJson::deserialize(deserializer)?;
        Self::from_json(&json).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub r: String,
    #[serde(default = "zero_string")]
    pub s: String,
    #[serde(default = "one_u64")]
    pub rad: u64,
}

fn zero_string() -> String {
    "0".into()
}

fn one_u64() -> u64 {
    1
}

/// Wire format `{size, entries: [[{r, s, rad}]], translation: ["p/q", ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub size: usize,
    pub entries: Vec<Vec<EntryJson>>,
    #[serde(default)]
    pub translation: Vec<String>,
}

/// Integer affine map `x = M y + c`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerAffine {
    pub matrix: Vec<Vec<i128>>,
    pub translation: Vec<i128>,
}

impl IntegerAffine {
    pub fn new(matrix: Vec<Vec<i128>>, translation: Vec<i128>) -> Result<Self> {
        let n = matrix.len();
        if n == 0 || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidMatrix("integer matrix must be square and non-empty".into()));
        }
        if translation.len() != n {
            return Err(Error::LengthMismatch { expected: n, found: translation.len() });
        }
        Ok(IntegerAffine { matrix, translation })
    }

    pub fn linear(matrix: Vec<Vec<i128>>) -> Result<Self> {
        let n = matrix.len();
        Self::new(matrix, vec![0; n])
    }

    pub fn identity(n: usize) -> Self {
        let matrix = (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect();
        IntegerAffine { matrix, translation: vec![0; n] }
    }

    pub fn size(&self) -> usize {
        self.matrix.len()
    }

    /// Maximum absolute row sum.
    pub fn row_sum_norm(&self) -> i128 {
        self.matrix.iter().map(|r| r.iter().map(|v| v.abs()).sum()).max().unwrap_or(0)
    }

    pub fn translation_norm(&self) -> i128 {
        self.translation.iter().map(|v| v.abs()).max().unwrap_or(0)
    }

    pub fn to_transform(&self) -> TransformMatrix {
        let entries = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|&v| MatrixEntry::rational(BigRational::from_integer(BigInt::from(v)))).collect())
            .collect();
        let translation = self.translation.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect();
        TransformMatrix { entries, translation }
    }

    pub fn determinant(&self) -> BigInt {
        let d = self.to_transform().determinant().expect("rational matrices share the trivial radicand");
        d.r.to_integer()
    }

    /// Exact rational inverse of the linear part.
    pub fn inverse(&self) -> Result<Vec<Vec<BigRational>>> {
        let n = self.size();
        let mut a: Vec<Vec<BigRational>> = self
            .matrix
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r: Vec<BigRational> = row.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect();
                r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
                r
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::SingularMatrix)?;
            a.swap(pivot, col);
            let p = a[col][col].clone();
            for v in a[col].iter_mut() {
                *v = &*v / &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let delta = &f * &a[col][c];
                    a[r][c] = &a[r][c] - delta;
                }
            }
        }
        Ok(a.into_iter().map(|row| row[n..].to_vec()).collect())
    }

    /// `M y + c` with overflow checks.
    pub fn apply_point(&self, y: &[i64]) -> Result<Vec<i64>> {
        let n = self.size();
        if y.len() != n {
            return Err(Error::LengthMismatch { expected: n, found: y.len() });
        }
        let overflow = || Error::Overflow("affine image");
        (0..n)
            .map(|i| {
                let mut acc = self.translation[i];
                for j in 0..n {
                    let t = self.matrix[i][j].checked_mul(y[j] as i128).ok_or_else(overflow)?;
                    acc = acc.checked_add(t).ok_or_else(overflow)?;
                }
                i64::try_from(acc).map_err(|_| overflow())
            })
            .collect()
    }
}
