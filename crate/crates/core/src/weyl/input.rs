use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{invariant_sublattice, GroupAction, Lattice, LatticeVector};
use crate::matrix::IntMatrix;

use super::{certify_non_normality, NonNormalityCertificate, RestrictedIsometry, WeylWord};

const BUNDLED_LATTICE: &str = include_str!("../../data/lattice_example.json");

/// Data for a non-normality certificate. Matrices are row lists acting on
/// coordinate columns; `alpha` is written in the basis of the invariant
/// sublattice returned by [`invariant_sublattice`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateInput {
    pub gram: Vec<Vec<i64>>,
    pub group_generators: Vec<Vec<Vec<i64>>>,
    pub sigma_roots: Vec<Vec<i64>>,
    pub alpha: Vec<Vec<i64>>,
}

fn matrix(rows: &[Vec<i64>], what: &str) -> Result<IntMatrix> {
    let rows: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&c| BigInt::from(c)).collect())
        .collect();
    IntMatrix::from_rows(rows).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

impl CertificateInput {
    pub fn bundled() -> Self {
        Self::from_json(BUNDLED_LATTICE).expect("bundled lattice data parses")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("lattice file: {e}")))
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn lattice(&self) -> Result<Lattice> {
        Lattice::new(matrix(&self.gram, "gram")?)
    }

    pub fn group(&self, lat: &Lattice) -> Result<GroupAction> {
        let gens = self
            .group_generators
            .iter()
            .map(|g| matrix(g, "group generator"))
            .collect::<Result<Vec<_>>>()?;
        GroupAction::from_matrices(lat, gens)
    }

    pub fn sigma(&self, lat: &Lattice) -> Result<WeylWord> {
        let roots = self
            .sigma_roots
            .iter()
            .map(|r| LatticeVector::from_i64(r))
            .collect();
        WeylWord::new(lat, roots)
    }

    pub fn certify(&self) -> Result<NonNormalityCertificate> {
        let lat = self.lattice()?;
        let g = self.group(&lat)?;
        let sigma = self.sigma(&lat)?;
        let sub = invariant_sublattice(&lat, &g)?;
        let alpha = RestrictedIsometry::new(&sub, matrix(&self.alpha, "alpha")?)?;
        certify_non_normality(&lat, &g, &sigma, &alpha)
    }
}
