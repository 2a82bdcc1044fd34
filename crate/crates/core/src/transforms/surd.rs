use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Splits `n > 0` as `f^2 * m` with `m` squarefree; returns `(f, m)`.
pub fn squarefree_split(n: u64) -> (u64, u64) {
    let mut f = 1u64;
    let mut m = 1u64;
    let mut rest = n;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        f *= p.pow(e / 2);
        if e % 2 == 1 {
            m *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    m *= rest;
    (f, m)
}

pub fn is_squarefree(n: u64) -> bool {
    n > 0 && squarefree_split(n).0 == 1
}

/// Exact value `r + s * sqrt(rad)` with `rad` squarefree.
///
/// Canonical form: `s == 0` implies `rad == 1`, and `rad == 1` implies `s == 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatrixEntry {
    pub r: BigRational,
    pub s: BigRational,
    pub rad: u64,
}

pub(crate) fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl MatrixEntry {
    /// Canonicalizes any positive `rad` by pulling out square factors.
    pub fn new(r: BigRational, s: BigRational, rad: u64) -> Result<Self> {
        if rad == 0 {
            return Ok(Self::rational(r));
        }
        let (f, m) = squarefree_split(rad);
        let s = s * BigRational::from_integer(BigInt::from(f));
        if m == 1 {
            return Ok(Self::rational(r + s));
        }
        if s.is_zero() {
            return Ok(Self::rational(r));
        }
        Ok(MatrixEntry { r, s, rad: m })
    }

    pub fn rational(r: BigRational) -> Self {
        MatrixEntry { r, s: BigRational::zero(), rad: 1 }
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::rational(ratio(n, d))
    }

    /// `s * sqrt(rad)`.
    pub fn surd(s: BigRational, rad: u64) -> Result<Self> {
        Self::new(BigRational::zero(), s, rad)
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.s.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.s.is_zero()
    }

    /// Nonzero surd part with no rational part.
    pub fn is_pure_surd(&self) -> bool {
        self.r.is_zero() && !self.s.is_zero()
    }

    /// Radicand when the surd part is nonzero.
    pub fn radicand(&self) -> Option<u64> {
        if self.s.is_zero() {
            None
        } else {
            Some(self.rad)
        }
    }

    fn common_rad(&self, other: &Self) -> Result<u64> {
        match (self.radicand(), other.radicand()) {
            (Some(a), Some(b)) if a != b => Err(Error::InvalidMatrix(format!(
                "entries with different radicands sqrt({a}) and sqrt({b}) cannot be combined"
            ))),
            (Some(a), _) | (_, Some(a)) => Ok(a),
            (None, None) => Ok(1),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let rad = self.common_rad(other)?;
        Self::new(&self.r + &other.r, &self.s + &other.s, rad)
    }

    pub fn neg(&self) -> Self {
        MatrixEntry { r: -&self.r, s: -&self.s, rad: self.rad }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let rad = self.common_rad(other)?;
        let m = BigRational::from_integer(BigInt::from(rad));
        let r = &self.r * &other.r + &self.s * &other.s * m;
        let s = &self.r * &other.s + &self.s * &other.r;
        Self::new(r, s, rad)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let m = BigRational::from_integer(BigInt::from(self.rad));
        let norm = &self.r * &self.r - &self.s * &self.s * m;
        Self::new(&self.r / &norm, -&self.s / &norm, self.rad)
    }

    /// Exact sign of `r + s sqrt(rad)`.
    pub fn signum(&self) -> Ordering {
        let sr = self.r.cmp(&BigRational::zero());
        let ss = self.s.cmp(&BigRational::zero());
        if ss == Ordering::Equal {
            return sr;
        }
        if sr == Ordering::Equal || sr == ss {
            return ss;
        }
        // Opposite signs: compare r^2 with s^2 rad.
        let m = BigRational::from_integer(BigInt::from(self.rad));
        let lhs = &self.r * &self.r;
        let rhs = &self.s * &self.s * m;
        match lhs.cmp(&rhs) {
            Ordering::Greater => sr,
            Ordering::Less => ss,
            Ordering::Equal => Ordering::Equal,
        }
    }

    /// `|value| <= 1`, decided exactly.
    pub fn abs_le_one(&self) -> bool {
        let one = Self::one();
        let upper = one.sub(self).map(|d| d.signum() != Ordering::Less);
        let lower = one.add(self).map(|d| d.signum() != Ordering::Less);
        matches!((upper, lower), (Ok(true), Ok(true)))
    }

    /// Least common multiple of the denominators of both parts.
    pub fn denominator_lcm(&self) -> BigInt {
        self.r.denom().lcm(self.s.denom())
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let r = self.r.to_f64().unwrap_or(f64::NAN);
        let s = self.s.to_f64().unwrap_or(f64::NAN);
        r + s * (self.rad as f64).sqrt()
    }
}

fn fmt_ratio(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for MatrixEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.r.is_zero(), self.s.is_zero()) {
            (_, true) => write!(f, "{}", fmt_ratio(&self.r)),
            (true, false) => write!(f, "{}*sqrt({})", fmt_ratio(&self.s), self.rad),
            (false, false) => {
                let sign = if self.s.is_negative() { "-" } else { "+" };
                write!(f, "{} {} {}*sqrt({})", fmt_ratio(&self.r), sign, fmt_ratio(&self.s.abs()), self.rad)
            }
        }
    }
}

pub(crate) fn format_ratio(q: &BigRational) -> String {
    fmt_ratio(q)
}

pub(crate) fn parse_ratio(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidMatrix(format!("'{s}' is not a rational number p/q"));
    let t = s.trim();
    match t.split_once('/') {
        None => Ok(BigRational::from_integer(t.parse::<BigInt>().map_err(|_| bad())?)),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
    }
}
