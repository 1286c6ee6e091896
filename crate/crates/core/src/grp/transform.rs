use serde::{Deserialize, Serialize};

use super::GroupError;
use crate::polynum::C64;
use crate::projgeom::{canonicalize, projective_distance};

pub type Mat3 = [[C64; 3]; 3];

/// Smallest `|det|` accepted for a matrix in canonical scale.
const MIN_DET: f64 = 1e-8;

/// An element of PGL(3, C): an invertible matrix in canonical scale, stored
/// with its canonically scaled inverse.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjTransform {
    m: Mat3,
    inv: Mat3,
}

fn flat(m: &Mat3) -> [C64; 9] {
    [
        m[0][0], m[0][1], m[0][2], m[1][0], m[1][1], m[1][2], m[2][0], m[2][1], m[2][2],
    ]
}

fn unflat(v: &[C64; 9]) -> Mat3 {
    [[v[0], v[1], v[2]], [v[3], v[4], v[5]], [v[6], v[7], v[8]]]
}

fn canonical(m: &Mat3) -> Result<Mat3, GroupError> {
    let mut v = flat(m);
    canonicalize(&mut v).map_err(|_| GroupError::Singular)?;
    Ok(unflat(&v))
}

pub(crate) fn det3(m: &Mat3) -> C64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn adjugate(m: &Mat3) -> Mat3 {
    let mut a = [[C64::new(0.0, 0.0); 3]; 3];
    for (i, row) in a.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            let (r0, r1) = ((j + 1) % 3, (j + 2) % 3);
            let (c0, c1) = ((i + 1) % 3, (i + 2) % 3);
            *entry = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
        }
    }
    a
}

pub(crate) fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = [[C64::new(0.0, 0.0); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

impl ProjTransform {
    pub fn new(m: Mat3) -> Result<Self, GroupError> {
        if flat(&m).iter().any(|z| !z.is_finite()) {
            return Err(GroupError::NonFinite);
        }
        let m = canonical(&m)?;
        if det3(&m).norm() <= MIN_DET {
            return Err(GroupError::Singular);
        }
        let inv = canonical(&adjugate(&m))?;
        Ok(ProjTransform { m, inv })
    }

    pub fn from_rows(rows: [[f64; 3]; 3]) -> Result<Self, GroupError> {
        Self::new(rows.map(|r| r.map(|x| C64::new(x, 0.0))))
    }

    pub fn diagonal(d: [C64; 3]) -> Result<Self, GroupError> {
        let z = C64::new(0.0, 0.0);
        Self::new([[d[0], z, z], [z, d[1], z], [z, z, d[2]]])
    }

    pub fn identity() -> Self {
        let d = ProjTransform::diagonal([C64::new(1.0, 0.0); 3]);
        d.expect("identity is invertible")
    }

    /// Product of two elements, re-canonicalized. Skips the determinant
    /// floor, which a product of invertible elements may dip under.
    pub fn compose(&self, other: &ProjTransform) -> ProjTransform {
        let m = canonical(&mat_mul(&self.m, &other.m)).expect("product of invertible matrices");
        let inv =
            canonical(&mat_mul(&other.inv, &self.inv)).expect("product of invertible matrices");
        ProjTransform { m, inv }
    }

    pub fn inverse(&self) -> ProjTransform {
        ProjTransform {
            m: self.inv,
            inv: self.m,
        }
    }

    /// `h g h⁻¹` where `self` is `g`.
    pub fn conjugate_by(&self, h: &ProjTransform) -> ProjTransform {
        h.compose(self).compose(&h.inverse())
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.m
    }

    pub fn inverse_matrix(&self) -> &Mat3 {
        &self.inv
    }

    /// `g p` for a column vector `p`.
    pub fn apply(&self, p: &[C64; 3]) -> [C64; 3] {
        [0, 1, 2].map(|i| (0..3).map(|k| self.m[i][k] * p[k]).sum())
    }

    /// `L g⁻¹` for a row vector `L`.
    pub fn pull_line(&self, l: &[C64; 3]) -> [C64; 3] {
        [0, 1, 2].map(|j| (0..3).map(|k| l[k] * self.inv[k][j]).sum())
    }

    pub fn distance(&self, other: &ProjTransform) -> f64 {
        projective_distance(&flat(&self.m), &flat(&other.m))
    }

    /// Product of the max-entry norms of the matrix and its inverse, both
    /// rescaled to unit determinant.
    pub fn condition(&self) -> f64 {
        let norm = |m: &Mat3| flat(m).iter().map(|z| z.norm()).fold(0.0, f64::max);
        let d = det3(&self.m).norm() * det3(&self.inv).norm();
        norm(&self.m) * norm(&self.inv) / d.cbrt()
    }

    pub fn is_real(&self, tol: f64) -> bool {
        flat(&self.m).iter().all(|z| z.im.abs() < tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_composes_to_identity() {
        let g = ProjTransform::new([
            [C64::new(1.0, 2.0), C64::new(0.5, 0.0), C64::new(0.0, -1.0)],
            [C64::new(0.0, 0.0), C64::new(3.0, 0.0), C64::new(1.0, 1.0)],
            [C64::new(-2.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
        ])
        .unwrap();
        assert!(g.compose(&g.inverse()).distance(&ProjTransform::identity()) < 1e-14);
        assert!(g.inverse().compose(&g).distance(&ProjTransform::identity()) < 1e-14);
    }

    #[test]
    fn scalar_multiples_are_equal() {
        let a =
            ProjTransform::from_rows([[2.0, 0.0, 0.0], [0.0, 4.0, 0.0], [0.0, 0.0, 6.0]]).unwrap();
        let b =
            ProjTransform::from_rows([[1.0, 0.0, 0.0], [0.0, 2.0, 0.0], [0.0, 0.0, 3.0]]).unwrap();
        assert!(a.distance(&b) < 1e-15);
    }

    #[test]
    fn singular_is_rejected() {
        let s = ProjTransform::from_rows([[1.0, 2.0, 3.0], [2.0, 4.0, 6.0], [0.0, 0.0, 1.0]]);
        assert_eq!(s, Err(GroupError::Singular));
    }
}
