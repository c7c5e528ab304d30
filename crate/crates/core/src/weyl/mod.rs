//! Weyl group elements as explicit words in `(−2)`-reflections, and the
//! machinery that shows a conjugate of a restricted Weyl element cannot come
//! from an isometry of the ambient lattice.

mod certificate;
mod extension;
mod input;
mod restrict;
mod search;

pub use certificate::{certify_non_normality, CertificateReport, NonNormalityCertificate};
pub use extension::{
    diophantine_obstruction, extend_to_parent, extend_to_parent_with_bound, integral_extensions,
    ExtensionVerdict, LinearConstraint, ObstructionSystem, RationalWitness,
    DEFAULT_EXTENSION_BOUND,
};
pub use input::CertificateInput;
pub use restrict::{restrict, RestrictedIsometry};
pub use search::{find_isometries, find_minus2_vectors};

use crate::error::Result;
use crate::lattice::{GroupAction, Isometry, Lattice, LatticeVector};

/// A product of reflections `σ_{r_k} ∘ ⋯ ∘ σ_{r_1}`: the first root is applied
/// first. Equality of Weyl elements is equality of [`WeylWord::matrix`]; the
/// roots are kept as provenance.
#[derive(Clone, Debug)]
pub struct WeylWord {
    lattice: Lattice,
    roots: Vec<LatticeVector>,
    matrix: Isometry,
}

impl WeylWord {
    pub fn new(lat: &Lattice, roots: Vec<LatticeVector>) -> Result<Self> {
        let mut matrix = Isometry::identity(lat.rank());
        for r in &roots {
            matrix = lat.reflection(r)?.compose(&matrix)?;
        }
        Ok(WeylWord {
            lattice: lat.clone(),
            roots,
            matrix,
        })
    }

    pub fn roots(&self) -> &[LatticeVector] {
        &self.roots
    }

    pub fn matrix(&self) -> &Isometry {
        &self.matrix
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// `g ∘ w ∘ g⁻¹`, as the word in the roots `g·rᵢ`.
    pub fn conjugate(&self, g: &Isometry) -> Result<WeylWord> {
        let roots = self
            .roots
            .iter()
            .map(|r| g.apply(r))
            .collect::<Result<Vec<_>>>()?;
        WeylWord::new(&self.lattice, roots)
    }

    /// Whether `g ∘ w ∘ g⁻¹ = w` for every generator `g`.
    pub fn is_invariant_under(&self, g: &GroupAction) -> Result<bool> {
        for gen in g.generators() {
            if self.conjugate(gen)?.matrix() != self.matrix() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn weyl_word(lat: &Lattice, roots: Vec<LatticeVector>) -> Result<WeylWord> {
    WeylWord::new(lat, roots)
}

pub fn conjugate_word(g: &Isometry, w: &WeylWord) -> Result<WeylWord> {
    w.conjugate(g)
}

pub fn is_g_invariant(w: &WeylWord, g: &GroupAction) -> Result<bool> {
    w.is_invariant_under(g)
}
