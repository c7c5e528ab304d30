//! Integer lattices: symmetric bilinear forms on `ℤⁿ`, their isometries,
//! reflections in `(−2)`-vectors, finite group actions and invariant
//! sublattices.

pub mod normal_form;

mod group;
mod overlattice;
mod sublattice;

pub use group::{GroupAction, DEFAULT_GROUP_BUDGET};
pub use overlattice::{even_overlattice_discs, sublattice_index_discriminant_check};
pub use sublattice::{invariant_sublattice, Sublattice};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{int_vec, IntMatrix};

/// Coordinate column of a lattice element in the lattice's basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector(#[serde(with = "crate::format::bigint_vec")] pub Vec<BigInt>);

impl LatticeVector {
    pub fn from_i64(v: &[i64]) -> Self {
        LatticeVector(int_vec(v))
    }

    pub fn zero(rank: usize) -> Self {
        LatticeVector(vec![BigInt::zero(); rank])
    }

    /// The `i`-th basis vector.
    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = Self::zero(rank);
        v.0[i] = BigInt::one();
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn add(&self, other: &Self) -> Self {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        LatticeVector(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> Self {
        LatticeVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A free `ℤ`-module of finite rank with a symmetric non-degenerate integer
/// bilinear form, given by its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    gram: IntMatrix,
}

impl Lattice {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::DimensionMismatch {
                expected: gram.rows(),
                actual: gram.cols(),
            });
        }
        if gram.rows() == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                actual: 0,
            });
        }
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        if gram.det().is_zero() {
            return Err(Error::Degenerate);
        }
        Ok(Lattice { gram })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(IntMatrix::from_i64(rows))
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    fn check_len(&self, v: &LatticeVector) -> Result<()> {
        if v.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                actual: v.len(),
            });
        }
        Ok(())
    }

    fn check_square(&self, m: &IntMatrix) -> Result<()> {
        if m.rows() != self.rank() || m.cols() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                actual: if m.rows() != self.rank() {
                    m.rows()
                } else {
                    m.cols()
                },
            });
        }
        Ok(())
    }

    /// `uᵀ · gram · v`.
    pub fn pair(&self, u: &LatticeVector, v: &LatticeVector) -> Result<BigInt> {
        self.check_len(u)?;
        self.check_len(v)?;
        Ok(self.gram.bilinear(&u.0, &v.0))
    }

    pub fn norm(&self, v: &LatticeVector) -> Result<BigInt> {
        self.pair(v, v)
    }

    pub fn discriminant(&self) -> BigInt {
        self.gram.det()
    }

    /// Even iff every diagonal entry is even; `(Σ aᵢxᵢ)² = Σ aᵢ² xᵢ² + 2·(…)`.
    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram.get(i, i).is_even())
    }

    pub fn is_isometry(&self, m: &IntMatrix) -> Result<bool> {
        self.check_square(m)?;
        if m.congruence(&self.gram) != self.gram {
            return Ok(false);
        }
        Ok(m.det().abs().is_one())
    }

    /// The reflection `v ↦ v + (v.w)·w` in a vector with `w² = −2`.
    pub fn reflection(&self, w: &LatticeVector) -> Result<Isometry> {
        let n = self.norm(w)?;
        if n != BigInt::from(-2) {
            return Err(Error::NotRoot(n.to_string()));
        }
        // I + w · (G w)ᵀ
        let gw = self.gram.mul_vec(&w.0);
        let mut m = IntMatrix::identity(self.rank());
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                let v = m.get(i, j) + &w.0[i] * &gw[j];
                m.set(i, j, v);
            }
        }
        Ok(Isometry { matrix: m })
    }

    pub fn isometry(&self, m: IntMatrix) -> Result<Isometry> {
        Isometry::new(self, m)
    }
}

/// An automorphism of the underlying free module that preserves the form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Isometry {
    matrix: IntMatrix,
}

impl Isometry {
    pub fn new(lat: &Lattice, matrix: IntMatrix) -> Result<Self> {
        if lat.is_isometry(&matrix)? {
            Ok(Isometry { matrix })
        } else {
            Err(Error::NotIsometry)
        }
    }

    pub fn identity(rank: usize) -> Self {
        Isometry {
            matrix: IntMatrix::identity(rank),
        }
    }

    pub(crate) fn from_matrix_unchecked(matrix: IntMatrix) -> Self {
        Isometry { matrix }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, v: &LatticeVector) -> Result<LatticeVector> {
        if v.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                actual: v.len(),
            });
        }
        Ok(LatticeVector(self.matrix.mul_vec(&v.0)))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Isometry) -> Result<Isometry> {
        Ok(Isometry {
            matrix: self.matrix.try_mul(&other.matrix)?,
        })
    }

    pub fn inverse(&self) -> Isometry {
        let matrix = self
            .matrix
            .unimodular_inverse()
            .expect("isometries are unimodular");
        Isometry { matrix }
    }

    /// `self ∘ g ∘ self⁻¹`.
    pub fn conjugate(&self, g: &Isometry) -> Result<Isometry> {
        self.compose(g)?.compose(&self.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn pairings() {
        let lat = lattice_xyz();
        assert_eq!(lat.pair(&x(), &y()).unwrap(), BigInt::from(3));
        assert_eq!(lat.pair(&x(), &x()).unwrap(), BigInt::from(-4));
        assert!(lat.pair(&LatticeVector::zero(3), &y()).unwrap().is_zero());
        assert_eq!(lat.pair(&y(), &x()).unwrap(), lat.pair(&x(), &y()).unwrap());
        assert!(matches!(
            lat.pair(&LatticeVector::zero(2), &y()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn discriminants() {
        assert_eq!(lattice_xyz().discriminant(), BigInt::from(20));
        let inv = Lattice::from_i64(&[&[-4, 6], &[6, -4]]).unwrap();
        assert_eq!(inv.discriminant(), BigInt::from(-20));
        // signature (1, 3) forces a negative determinant; |det| = 44
        let f2 = Lattice::from_i64(&[
            &[4, 1, 1, 1],
            &[1, -2, 0, 0],
            &[1, 0, -2, 0],
            &[1, 0, 0, -2],
        ])
        .unwrap();
        assert_eq!(f2.discriminant(), BigInt::from(-44));
    }

    #[test]
    fn construction_rejects_bad_gram() {
        assert!(matches!(
            Lattice::from_i64(&[&[1, 2], &[3, 1]]),
            Err(Error::NotSymmetric)
        ));
        assert!(matches!(
            Lattice::from_i64(&[&[1, 1], &[1, 1]]),
            Err(Error::Degenerate)
        ));
    }

    #[test]
    fn evenness() {
        assert!(lattice_xyz().is_even());
        let f3 = Lattice::from_i64(&[
            &[4, 1, 1, 1],
            &[1, -2, 0, 1],
            &[1, 0, -2, 1],
            &[1, 1, 1, -2],
        ])
        .unwrap();
        assert!(f3.is_even());
        assert!(!Lattice::from_i64(&[&[3]]).unwrap().is_even());
    }

    #[test]
    fn isometry_checks() {
        let lat = lattice_xyz();
        assert!(lat.is_isometry(swap_yz(&lat).matrix()).unwrap());
        assert!(lat.is_isometry(&IntMatrix::identity(3)).unwrap());
        let swap_xy = IntMatrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        assert!(!lat.is_isometry(&swap_xy).unwrap());
        assert!(lat.is_isometry(&IntMatrix::identity(2)).is_err());
    }

    #[test]
    fn reflections_in_y_and_z() {
        let lat = lattice_xyz();
        let sy = lat.reflection(&y()).unwrap();
        assert_eq!(sy.apply(&x()).unwrap(), LatticeVector::from_i64(&[1, 3, 0]));
        assert_eq!(sy.apply(&y()).unwrap(), y().neg());
        assert_eq!(sy.apply(&z()).unwrap(), z());
        let sz = lat.reflection(&z()).unwrap();
        assert_eq!(sz.apply(&x()).unwrap(), LatticeVector::from_i64(&[1, 0, 3]));
        assert_eq!(sz.apply(&y()).unwrap(), y());
        assert_eq!(sz.apply(&z()).unwrap(), z().neg());
        assert!(sy.compose(&sy).unwrap().is_identity());
        assert!(lat.is_isometry(sy.matrix()).unwrap());
        assert!(matches!(lat.reflection(&x()), Err(Error::NotRoot(_))));
    }

    #[test]
    fn composition_and_inverse() {
        let lat = lattice_xyz();
        let sy = lat.reflection(&y()).unwrap();
        let sz = lat.reflection(&z()).unwrap();
        assert_eq!(sz.compose(&sy).unwrap(), sy.compose(&sz).unwrap());
        let tau = swap_yz(&lat);
        assert_eq!(tau.inverse(), tau);
        assert!(sy.compose(&sy.inverse()).unwrap().is_identity());
        // τ ∘ σ_y ∘ τ⁻¹ = σ_z
        assert_eq!(tau.conjugate(&sy).unwrap(), sz);
    }
}
