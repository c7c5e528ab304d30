use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::lattice::normal_form::solve_integer;
use crate::lattice::{Isometry, Sublattice};
use crate::matrix::IntMatrix;

/// An isometry of a sublattice, written in the sublattice basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RestrictedIsometry {
    matrix: IntMatrix,
}

impl RestrictedIsometry {
    pub fn new(sub: &Sublattice, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != sub.rank() || matrix.cols() != sub.rank() {
            return Err(Error::DimensionMismatch {
                expected: sub.rank(),
                actual: matrix.rows(),
            });
        }
        if matrix.congruence(sub.restricted_gram()) != *sub.restricted_gram()
            || !matrix.det().abs().is_one()
        {
            return Err(Error::NotIsometry);
        }
        Ok(RestrictedIsometry { matrix })
    }

    pub fn identity(rank: usize) -> Self {
        RestrictedIsometry {
            matrix: IntMatrix::identity(rank),
        }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        RestrictedIsometry {
            matrix: &self.matrix * &other.matrix,
        }
    }

    pub fn inverse(&self) -> Self {
        RestrictedIsometry {
            matrix: self
                .matrix
                .unimodular_inverse()
                .expect("restricted isometries are unimodular"),
        }
    }

    /// `self ∘ b ∘ self⁻¹`.
    pub fn conjugate(&self, b: &Self) -> Self {
        self.compose(b).compose(&self.inverse())
    }
}

/// Matrix of `s` on the sublattice basis. Fails unless `s` maps the
/// sublattice onto itself.
pub fn restrict(s: &Isometry, sub: &Sublattice) -> Result<RestrictedIsometry> {
    let b = sub.basis_matrix();
    let image = s.matrix().try_mul(b)?;
    let mut cols = Vec::with_capacity(sub.rank());
    for c in image.columns() {
        cols.push(solve_integer(b, &c).ok_or(Error::DoesNotStabilize)?);
    }
    let m = IntMatrix::from_columns(sub.rank(), &cols);
    if !m.det().abs().is_one() {
        return Err(Error::DoesNotStabilize);
    }
    Ok(RestrictedIsometry { matrix: m })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::fixtures::*;
    use crate::lattice::{invariant_sublattice, GroupAction};
    use crate::weyl::weyl_word;

    fn setup() -> (crate::lattice::Lattice, Sublattice) {
        let lat = lattice_xyz();
        let g = GroupAction::new(&lat, vec![swap_yz(&lat)]).unwrap();
        let sub = invariant_sublattice(&lat, &g).unwrap();
        (lat, sub)
    }

    #[test]
    fn sigma_restricts_to_x_plus_3d() {
        let (lat, sub) = setup();
        let sigma = weyl_word(&lat, vec![y(), z()]).unwrap();
        let r = restrict(sigma.matrix(), &sub).unwrap();
        // columns: x ↦ x + 3d, d ↦ −d
        assert_eq!(r.matrix(), &IntMatrix::from_i64(&[&[1, 0], &[3, -1]]));
    }

    #[test]
    fn identity_and_swap_restrict_to_identity() {
        let (lat, sub) = setup();
        assert!(restrict(&Isometry::identity(3), &sub)
            .unwrap()
            .matrix()
            .is_identity());
        assert!(restrict(&swap_yz(&lat), &sub)
            .unwrap()
            .matrix()
            .is_identity());
    }

    #[test]
    fn reflection_in_y_does_not_stabilize() {
        let (lat, sub) = setup();
        let sy = lat.reflection(&y()).unwrap();
        assert!(matches!(restrict(&sy, &sub), Err(Error::DoesNotStabilize)));
    }

    #[test]
    fn restricted_isometry_checks_form() {
        let (_, sub) = setup();
        assert!(RestrictedIsometry::new(&sub, IntMatrix::from_i64(&[&[0, 1], &[1, 0]])).is_ok());
        assert!(RestrictedIsometry::new(&sub, IntMatrix::from_i64(&[&[1, 1], &[0, 1]])).is_err());
    }
}
