use serde::Serialize;

use crate::error::{Error, Result};
use crate::format::{int_rows, rat_rows, Int, Rat};
use crate::lattice::{invariant_sublattice, GroupAction, Lattice, LatticeVector, Sublattice};

use super::extension::{witness_is_valid, RationalWitness};
use super::{
    diophantine_obstruction, extend_to_parent, restrict, ExtensionVerdict, ObstructionSystem,
    RestrictedIsometry, WeylWord,
};

/// Evidence that a conjugate of a restricted G-invariant Weyl element is not
/// itself a restriction of any isometry of the lattice, so the image of the
/// G-invariant Weyl group is not normal in the isometry group of `Λ^G`.
#[derive(Clone, Debug)]
pub struct NonNormalityCertificate {
    pub lattice: Lattice,
    pub group: GroupAction,
    pub invariant: Sublattice,
    pub sigma: WeylWord,
    pub restricted_sigma: RestrictedIsometry,
    pub alpha: RestrictedIsometry,
    pub beta: RestrictedIsometry,
    pub witnesses: Vec<RationalWitness>,
    pub obstruction: ObstructionSystem,
}

impl NonNormalityCertificate {
    /// Recomputes every claim from the raw data.
    pub fn verify(&self) -> Result<()> {
        if !self.sigma.is_invariant_under(&self.group)? {
            return Err(Error::NotInvariant);
        }
        let sub = invariant_sublattice(&self.lattice, &self.group)?;
        if sub != self.invariant {
            return Err(Error::stage("verify", "invariant sublattice differs"));
        }
        RestrictedIsometry::new(&sub, self.alpha.matrix().clone())?;
        let res = restrict(self.sigma.matrix(), &sub)?;
        if res != self.restricted_sigma {
            return Err(Error::stage("verify", "restriction of sigma differs"));
        }
        let beta = self.alpha.conjugate(&res);
        if beta != self.beta {
            return Err(Error::stage("verify", "conjugate differs"));
        }
        match extend_to_parent(&beta, &sub)? {
            ExtensionVerdict::NoIntegralExtension(ws) if ws == self.witnesses => {}
            _ => return Err(Error::stage("verify", "extension verdict differs")),
        }
        if !self
            .witnesses
            .iter()
            .all(|w| witness_is_valid(w, &beta, &sub))
        {
            return Err(Error::stage("verify", "invalid rational witness"));
        }
        if self.obstruction.solvable {
            return Err(Error::stage("verify", "obstruction system is solvable"));
        }
        Ok(())
    }

    pub fn report(&self) -> CertificateReport {
        let o = &self.obstruction;
        CertificateReport {
            gram: int_rows(self.lattice.gram()),
            discriminant: Int(self.lattice.discriminant()),
            group_generators: self
                .group
                .generators()
                .iter()
                .map(|g| int_rows(g.matrix()))
                .collect(),
            invariant_basis: self.invariant.basis().iter().map(vec_ints).collect(),
            invariant_gram: int_rows(self.invariant.restricted_gram()),
            invariant_degenerate: self.invariant.is_degenerate(),
            sigma_roots: self.sigma.roots().iter().map(vec_ints).collect(),
            sigma_matrix: int_rows(self.sigma.matrix().matrix()),
            restricted_sigma: int_rows(self.restricted_sigma.matrix()),
            alpha: int_rows(self.alpha.matrix()),
            beta: int_rows(self.beta.matrix()),
            verdict: "no-integral-extension".into(),
            witnesses: self
                .witnesses
                .iter()
                .map(|w| WitnessReport {
                    complement_sign: w.complement_sign,
                    denominator: Int(w.denominator.clone()),
                    non_integral_images: w.non_integral_images.clone(),
                    matrix: rat_rows(&w.matrix),
                })
                .collect(),
            obstruction: ObstructionReport {
                target: vec_ints(&o.target),
                equations: o
                    .constraints
                    .iter()
                    .map(|c| EquationReport {
                        coeffs: c.coeffs.iter().cloned().map(Int).collect(),
                        rhs: Int(c.rhs.clone()),
                    })
                    .collect(),
                solvable: o.solvable,
                obstruction_modulus: o.obstruction_modulus,
            },
            note: "extension is tested against the ambient lattice; an integral extension \
                   would have to map the target vector to an integer solution of the equations"
                .into(),
        }
    }
}

fn vec_ints(v: &LatticeVector) -> Vec<Int> {
    v.coords().iter().cloned().map(Int).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateReport {
    pub gram: Vec<Vec<Int>>,
    pub discriminant: Int,
    pub group_generators: Vec<Vec<Vec<Int>>>,
    pub invariant_basis: Vec<Vec<Int>>,
    pub invariant_gram: Vec<Vec<Int>>,
    pub invariant_degenerate: bool,
    pub sigma_roots: Vec<Vec<Int>>,
    pub sigma_matrix: Vec<Vec<Int>>,
    pub restricted_sigma: Vec<Vec<Int>>,
    pub alpha: Vec<Vec<Int>>,
    pub beta: Vec<Vec<Int>>,
    pub verdict: String,
    pub witnesses: Vec<WitnessReport>,
    pub obstruction: ObstructionReport,
    pub note: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub complement_sign: i32,
    pub denominator: Int,
    pub non_integral_images: Vec<usize>,
    pub matrix: Vec<Vec<Rat>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ObstructionReport {
    pub target: Vec<Int>,
    pub equations: Vec<EquationReport>,
    pub solvable: bool,
    pub obstruction_modulus: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EquationReport {
    pub coeffs: Vec<Int>,
    pub rhs: Int,
}

/// Runs the full non-normality argument: `σ` is G-invariant, `β = α ∘ σ|Λ^G ∘ α⁻¹`
/// admits no integral extension to `Λ`. The first parent basis vector outside
/// `Λ^G` is used as the target of the explicit Diophantine obstruction.
pub fn certify_non_normality(
    lat: &Lattice,
    g: &GroupAction,
    sigma: &WeylWord,
    alpha: &RestrictedIsometry,
) -> Result<NonNormalityCertificate> {
    if !sigma.is_invariant_under(g)? {
        return Err(Error::NotInvariant);
    }
    let sub = invariant_sublattice(lat, g)?;
    let alpha = RestrictedIsometry::new(&sub, alpha.matrix().clone())?;
    let res = restrict(sigma.matrix(), &sub)?;
    let beta = alpha.conjugate(&res);
    let witnesses = match extend_to_parent(&beta, &sub)? {
        ExtensionVerdict::NoIntegralExtension(ws) => ws,
        ExtensionVerdict::Extends(_) => {
            return Err(Error::NoCertificate(
                "the conjugate extends to an isometry of the lattice".into(),
            ))
        }
        ExtensionVerdict::Inconclusive { coord_bound, .. } => {
            return Err(Error::NoCertificate(format!(
                "extension search inconclusive at coordinate bound {coord_bound}"
            )))
        }
    };
    let target = (0..lat.rank())
        .map(|i| LatticeVector::unit(lat.rank(), i))
        .find(|v| !sub.contains(v))
        .expect("proper sublattice misses a basis vector");
    let obstruction = diophantine_obstruction(&beta, &sub, &target)?;
    let cert = NonNormalityCertificate {
        lattice: lat.clone(),
        group: g.clone(),
        invariant: sub,
        sigma: sigma.clone(),
        restricted_sigma: res,
        alpha,
        beta,
        witnesses,
        obstruction,
    };
    cert.verify()?;
    Ok(cert)
}
