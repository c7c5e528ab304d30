use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

use super::normal_form::{column_echelon, integer_kernel, saturate, solve_integer};
use super::{GroupAction, Lattice, LatticeVector};

/// A saturated sublattice, stored as basis columns in parent coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sublattice {
    parent: Lattice,
    basis: IntMatrix,
    restricted_gram: IntMatrix,
    degenerate: bool,
}

impl Sublattice {
    /// Saturates the span of `vectors` and records the restricted form, which
    /// may be degenerate.
    pub fn spanned_by(parent: &Lattice, vectors: &[LatticeVector]) -> Result<Self> {
        for v in vectors {
            if v.len() != parent.rank() {
                return Err(Error::DimensionMismatch {
                    expected: parent.rank(),
                    actual: v.len(),
                });
            }
        }
        let cols: Vec<Vec<BigInt>> = vectors.iter().map(|v| v.0.clone()).collect();
        let m = IntMatrix::from_columns(parent.rank(), &cols);
        Ok(Self::from_saturated(parent, saturate(&m)))
    }

    pub(crate) fn from_saturated(parent: &Lattice, basis: IntMatrix) -> Self {
        let restricted_gram = basis.congruence(parent.gram());
        let degenerate = restricted_gram.rows() > 0 && restricted_gram.det().is_zero();
        Sublattice {
            parent: parent.clone(),
            basis,
            restricted_gram,
            degenerate,
        }
    }

    /// Uses the given basis as is; the caller guarantees independence and
    /// saturation (checked).
    pub fn with_basis(parent: &Lattice, vectors: &[LatticeVector]) -> Result<Self> {
        let sat = Self::spanned_by(parent, vectors)?;
        if sat.rank() != vectors.len() {
            return Err(Error::Degenerate);
        }
        let cols: Vec<Vec<BigInt>> = vectors.iter().map(|v| v.0.clone()).collect();
        let basis = IntMatrix::from_columns(parent.rank(), &cols);
        // same span as the saturation means the given vectors are saturated
        if sat
            .basis
            .columns()
            .iter()
            .any(|c| solve_integer(&basis, c).is_none())
        {
            return Err(Error::Parse("basis is not saturated in the parent".into()));
        }
        Ok(Self::from_saturated(parent, basis))
    }

    pub fn parent(&self) -> &Lattice {
        &self.parent
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    /// Basis vectors as columns in parent coordinates.
    pub fn basis_matrix(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis(&self) -> Vec<LatticeVector> {
        self.basis
            .columns()
            .into_iter()
            .map(LatticeVector)
            .collect()
    }

    pub fn restricted_gram(&self) -> &IntMatrix {
        &self.restricted_gram
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn discriminant(&self) -> BigInt {
        self.restricted_gram.det()
    }

    pub fn as_lattice(&self) -> Result<Lattice> {
        Lattice::new(self.restricted_gram.clone())
    }

    /// Coordinates of a parent vector in the sublattice basis, if it lies in
    /// the sublattice.
    pub fn coordinates(&self, v: &LatticeVector) -> Option<Vec<BigInt>> {
        solve_integer(&self.basis, &v.0)
    }

    pub fn contains(&self, v: &LatticeVector) -> bool {
        self.coordinates(v).is_some()
    }
}

/// `Λ^G`: the simultaneous fixed lattice of all generators, as the integer
/// kernel of the stacked matrices `gᵢ − I`.
pub fn invariant_sublattice(lat: &Lattice, g: &GroupAction) -> Result<Sublattice> {
    let n = lat.rank();
    if g.rank() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: g.rank(),
        });
    }
    let id = IntMatrix::identity(n);
    let stacked = g
        .generators()
        .iter()
        .map(|s| s.matrix() - &id)
        .reduce(|a, b| a.vstack(&b))
        .expect("group actions have generators");
    let kernel = integer_kernel(&stacked);
    let basis = normalize_signs(kernel);
    Ok(Sublattice::from_saturated(lat, basis))
}

/// Column echelon form of a basis: same span, canonical and readable
/// (positive leading entries, reduced above each pivot).
fn normalize_signs(basis: IntMatrix) -> IntMatrix {
    let ech = column_echelon(&basis);
    ech.h.select_columns(0..ech.rank())
}
