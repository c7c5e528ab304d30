use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

use super::form::HomogeneousForm;
use super::line::LineInP3;
use super::{build_quartic, scheme_c_lines};

/// One residue class of a quadric multiplier, e.g. `q1 mod 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueSpec {
    /// Which multiplier: `"q1"`, `"q2"` or `"q3"`.
    pub form: String,
    pub modulus: u32,
    /// `(monomial, coefficient)` pairs, e.g. `["x*w", 1]`.
    pub terms: Vec<(String, i64)>,
}

/// An extra line expected on the reduction at `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtraLine {
    pub p: u32,
    #[serde(flatten)]
    pub line: LineInP3,
}

/// Input describing a quartic `h = q1·f1 + q2·f2 + q3·f3` through the
/// residues of the `qᵢ`, plus the extra line at each prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceSpec {
    pub name: String,
    pub residues: Vec<ResidueSpec>,
    pub extra_lines: Vec<ExtraLine>,
}

const BUNDLED_EXAMPLE: &str = include_str!("../../data/example_surface.json");

impl SurfaceSpec {
    pub fn bundled_example() -> Self {
        Self::from_json(BUNDLED_EXAMPLE).expect("bundled surface spec parses")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let spec: SurfaceSpec =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("surface spec: {e}")))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    fn validate(&self) -> Result<()> {
        for r in &self.residues {
            if !matches!(r.form.as_str(), "q1" | "q2" | "q3") {
                return Err(Error::Parse(format!("unknown multiplier '{}'", r.form)));
            }
            if r.modulus < 2 {
                return Err(Error::Parse(format!("bad modulus {}", r.modulus)));
            }
            self.residue_form(r)?;
        }
        Ok(())
    }

    pub(crate) fn residue_form(&self, r: &ResidueSpec) -> Result<HomogeneousForm> {
        let terms: Vec<(&str, i64)> = r.terms.iter().map(|(m, c)| (m.as_str(), *c)).collect();
        HomogeneousForm::from_monomials(2, &terms)
    }

    /// Residues of multiplier `name`, as `(modulus, form)`.
    pub fn residues_of(&self, name: &str) -> Result<Vec<(u32, HomogeneousForm)>> {
        self.residues
            .iter()
            .filter(|r| r.form == name)
            .map(|r| Ok((r.modulus, self.residue_form(r)?)))
            .collect()
    }

    /// Primes carrying an extra line, ascending.
    pub fn primes(&self) -> Vec<u32> {
        let mut ps: Vec<u32> = self.extra_lines.iter().map(|l| l.p).collect();
        ps.sort_unstable();
        ps.dedup();
        ps
    }

    /// `[L0, L1, extra…]` at `p`.
    pub fn lines_at(&self, p: u32) -> Result<Vec<LineInP3>> {
        let (l0, l1) = scheme_c_lines(p)?;
        let mut out = vec![l0, l1];
        out.extend(
            self.extra_lines
                .iter()
                .filter(|l| l.p == p)
                .map(|l| l.line.clone()),
        );
        Ok(out)
    }

    pub fn quartic(&self) -> Result<HomogeneousForm> {
        build_quartic(self)
    }

    /// SHA-256 of the canonical serialization.
    pub fn content_hash(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("spec serializes");
        hex::encode(Sha256::digest(bytes))
    }
}
