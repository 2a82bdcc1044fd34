use super::matrix::TransformMatrix;
use super::surd::MatrixEntry;
use crate::error::{Error, Result};

/// Rational proper rotation of the plane built from the Pythagorean triple
/// `(u^2 - v^2, 2uv, u^2 + v^2)`.
pub fn pythagorean_rotation(u: u64, v: u64) -> Result<TransformMatrix> {
    if v < 1 || u <= v {
        return Err(Error::InvalidRotation { u, v });
    }
    let (u, v) = (u as i128, v as i128);
    let to_i64 = |x: i128| i64::try_from(x).map_err(|_| Error::Overflow("Pythagorean triple"));
    let a = to_i64(u * u - v * v)?;
    let b = to_i64(2 * u * v)?;
    let c = to_i64(u * u + v * v)?;
    TransformMatrix::linear(vec![
        vec![MatrixEntry::frac(a, c), MatrixEntry::frac(-b, c)],
        vec![MatrixEntry::frac(b, c), MatrixEntry::frac(a, c)],
    ])
}

/// Embeds a 2x2 block acting on axes `(i, j)` into the `size`-dimensional identity.
pub fn embed_rotation(axes: (usize, usize), block: &TransformMatrix, size: usize) -> Result<TransformMatrix> {
    let (i, j) = axes;
    if i == j || i >= size || j >= size {
        return Err(Error::InvalidAxis { i, j, size });
    }
    if block.size() != 2 {
        return Err(Error::LengthMismatch { expected: 2, found: block.size() });
    }
    let mut m = TransformMatrix::identity(size);
    m.entries[i][i] = block.entry(0, 0).clone();
    m.entries[i][j] = block.entry(0, 1).clone();
    m.entries[j][i] = block.entry(1, 0).clone();
    m.entries[j][j] = block.entry(1, 1).clone();
    Ok(m)
}

/// Product `C_1 C_2 ... C_n` of plane rotations embedded in the given axes.
pub fn compose_rotations(rotations: &[((usize, usize), TransformMatrix)], size: usize) -> Result<TransformMatrix> {
    if size < 2 {
        return Err(Error::InvalidMatrix(format!("matrix size must be at least 2, got {size}")));
    }
    rotations.iter().try_fold(TransformMatrix::identity(size), |acc, (axes, block)| {
        acc.mul(&embed_rotation(*axes, block, size)?)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_four_five() {
        let m = pythagorean_rotation(2, 1).unwrap();
        assert_eq!(m.entry(0, 0), &MatrixEntry::frac(3, 5));
        assert_eq!(m.entry(0, 1), &MatrixEntry::frac(-4, 5));
        assert_eq!(m.entry(1, 0), &MatrixEntry::frac(4, 5));
        let m = pythagorean_rotation(3, 2).unwrap();
        assert_eq!(m.entry(0, 1), &MatrixEntry::frac(-12, 13));
        assert!(m.is_proper_rotation().unwrap());
    }

    #[test]
    fn bad_parameters() {
        assert_eq!(pythagorean_rotation(1, 1), Err(Error::InvalidRotation { u: 1, v: 1 }));
        assert!(pythagorean_rotation(3, 0).is_err());
        assert!(pythagorean_rotation(2, 3).is_err());
    }

    #[test]
    fn embedding_and_product() {
        let r = pythagorean_rotation(2, 1).unwrap();
        let e = compose_rotations(&[((0, 1), r.clone())], 3).unwrap();
        assert_eq!(e.entry(2, 2), &MatrixEntry::one());
        assert_eq!(e.entry(0, 2), &MatrixEntry::zero());
        let s = pythagorean_rotation(3, 2).unwrap();
        let p = compose_rotations(&[((0, 1), r), ((1, 2), s)], 3).unwrap();
        assert!(p.is_proper_rotation().unwrap());
        assert!(p.entries.iter().flatten().any(|e| *e == MatrixEntry::frac(-4, 13) || *e == MatrixEntry::frac(3, 5)));
        assert!(p.entries.iter().flatten().all(MatrixEntry::abs_le_one));
    }

    #[test]
    fn empty_is_identity_and_axes_checked() {
        assert_eq!(compose_rotations(&[], 2).unwrap(), TransformMatrix::identity(2));
        let r = pythagorean_rotation(2, 1).unwrap();
        assert_eq!(
            compose_rotations(&[((1, 1), r.clone())], 3),
            Err(Error::InvalidAxis { i: 1, j: 1, size: 3 })
        );
        assert!(compose_rotations(&[((0, 3), r)], 3).is_err());
    }
}
