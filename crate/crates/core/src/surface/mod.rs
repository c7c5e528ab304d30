//! Quartic surfaces in `ℙ³` containing the scheme `C = {f1 = f2 = f3 = 0}`:
//! construction from residues of the multipliers, lines on reductions, their
//! intersection numbers and a bounded search for singular points.

mod form;
mod line;
mod spec;

pub use form::{format_monomial, parse_monomial, Exponents, HomogeneousForm, VARIABLES};
pub use line::{line_contained, line_intersection_number, LineInP3};
pub use spec::{ExtraLine, ResidueSpec, SurfaceSpec};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldTower};
use crate::lattice::Lattice;
use crate::matrix::IntMatrix;

/// Self-intersection of the hyperplane class on a quartic.
pub const HYPERPLANE_SQUARE: i64 = 4;
/// Intersection of the hyperplane class with a line.
pub const HYPERPLANE_DOT_LINE: i64 = 1;
/// Self-intersection of a line on a K3 surface.
pub const LINE_SQUARE: i64 = -2;

/// `f1 = x² − xy + 6y²`, `f2 = z² − zw + 6w²`, `f3 = yz − xw`.
pub fn scheme_c_forms() -> (HomogeneousForm, HomogeneousForm, HomogeneousForm) {
    let f1 = HomogeneousForm::from_monomials(2, &[("x^2", 1), ("x*y", -1), ("y^2", 6)]);
    let f2 = HomogeneousForm::from_monomials(2, &[("z^2", 1), ("z*w", -1), ("w^2", 6)]);
    let f3 = HomogeneousForm::from_monomials(2, &[("y*z", 1), ("x*w", -1)]);
    (f1.unwrap(), f2.unwrap(), f3.unwrap())
}

/// Roots of `t² − t + 6` modulo `p`, ascending; the first is the image of
/// `β0`, the second of `β1`.
pub fn beta_reduction(p: u32) -> Result<(u32, u32)> {
    let roots: Vec<u32> = (0..p)
        .filter(|&t| (t as u64 * t as u64 + 6 + (p as u64 - 1) * t as u64).is_multiple_of(p as u64))
        .collect();
    match roots.as_slice() {
        [a] => Ok((*a, *a)),
        [a, b] => Ok((*a, *b)),
        _ => Err(Error::NoRoots(format!("t^2 - t + 6 mod {p}"))),
    }
}

/// The reductions `L0: x − β0·y = z − β0·w = 0` and `L1` likewise with `β1`.
pub fn scheme_c_lines(p: u32) -> Result<(LineInP3, LineInP3)> {
    let (b0, b1) = beta_reduction(p)?;
    let line =
        |label: &str, b: u32| LineInP3::new(label, [1, -(b as i64), 0, 0], [0, 0, 1, -(b as i64)]);
    Ok((line("L0", b0), line("L1", b1)))
}

/// Coefficientwise CRT over pairwise coprime moduli; each coefficient is
/// the representative in `{0, …, M−1}`.
pub fn crt_lift_residues(residues: &[(u32, &HomogeneousForm)]) -> Result<HomogeneousForm> {
    let degree = residues
        .first()
        .map(|(_, f)| f.degree())
        .ok_or_else(|| Error::Parse("no residues to lift".into()))?;
    let moduli: Vec<i64> = residues.iter().map(|(m, _)| *m as i64).collect();
    for (i, a) in moduli.iter().enumerate() {
        for b in &moduli[i + 1..] {
            if num_integer::gcd(*a, *b) != 1 {
                return Err(Error::Parse(format!("moduli {a} and {b} are not coprime")));
            }
        }
    }
    let total: i64 = moduli.iter().product();
    let mut monomials: Vec<Exponents> = residues
        .iter()
        .flat_map(|(_, f)| f.terms().map(|(e, _)| *e))
        .collect();
    monomials.sort_unstable();
    monomials.dedup();
    let mut terms = Vec::new();
    for e in monomials {
        let c = (0..total)
            .find(|c| {
                residues
                    .iter()
                    .all(|(m, f)| (c - f.coefficient(&e)).rem_euclid(*m as i64) == 0)
            })
            .expect("CRT solution exists for coprime moduli");
        terms.push((e, c));
    }
    HomogeneousForm::new(degree, terms).map_err(|_| Error::NotHomogeneous)
}

/// The lift in `{0, …, 5}` of a form given modulo 2 and modulo 3.
pub fn crt_lift(q_mod2: &HomogeneousForm, q_mod3: &HomogeneousForm) -> Result<HomogeneousForm> {
    crt_lift_residues(&[(2, q_mod2), (3, q_mod3)])
}

/// `h = q1·f1 + q2·f2 + q3·f3` with each `qᵢ` lifted from its residues.
pub fn build_quartic(spec: &SurfaceSpec) -> Result<HomogeneousForm> {
    let (f1, f2, f3) = scheme_c_forms();
    let mut h = HomogeneousForm::zero(4);
    for (name, f) in [("q1", &f1), ("q2", &f2), ("q3", &f3)] {
        let residues = spec.residues_of(name)?;
        let refs: Vec<(u32, &HomogeneousForm)> = residues.iter().map(|(m, q)| (*m, q)).collect();
        let q = crt_lift_residues(&refs)
            .map_err(|e| Error::Parse(format!("multiplier {name}: {e}")))?;
        h = h.add(&q.mul(f))?;
    }
    Ok(h)
}

pub fn build_example_quartic() -> HomogeneousForm {
    build_quartic(&SurfaceSpec::bundled_example()).expect("bundled example is well formed")
}

/// Element `a + b·β` of `ℤ[β]/(β² − β + 6)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct QuadInt(i128, i128);

impl QuadInt {
    fn mul(self, o: QuadInt) -> QuadInt {
        // β² = β − 6
        let bb = self.1 * o.1;
        QuadInt(self.0 * o.0 - 6 * bb, self.0 * o.1 + self.1 * o.0 + bb)
    }
}

/// Whether the form vanishes on `C`, checked by substituting `x = βy`,
/// `z = βw` for a formal root `β` of `t² − t + 6` (both lines of `C` over
/// `ℤ[β]` arise this way).
pub fn vanishes_on_scheme_c(form: &HomogeneousForm) -> bool {
    let mut acc: std::collections::BTreeMap<(u32, u32), QuadInt> = Default::default();
    for (e, c) in form.terms() {
        let mut v = QuadInt(*c as i128, 0);
        for _ in 0..e[0] + e[2] {
            v = v.mul(QuadInt(0, 1));
        }
        let slot = acc
            .entry((e[0] + e[1], e[2] + e[3]))
            .or_insert(QuadInt(0, 0));
        *slot = QuadInt(slot.0 + v.0, slot.1 + v.1);
    }
    acc.values().all(|v| *v == QuadInt(0, 0))
}

/// Labelled classes with their intersection matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorBasis {
    pub labels: Vec<String>,
    #[serde(with = "crate::format::int_matrix")]
    pub gram: IntMatrix,
}

impl DivisorBasis {
    pub fn discriminant(&self) -> num_bigint::BigInt {
        self.gram.det()
    }
}

/// Intersection matrix of `H` and the given lines on the reduction mod `p`.
pub fn assemble_divisor_gram(
    form: &HomogeneousForm,
    lines: &[LineInP3],
    p: u32,
) -> Result<DivisorBasis> {
    for l in lines {
        if !line_contained(l, form, p)? {
            return Err(Error::LineNotContained(format!("{} (p = {p})", l.label)));
        }
    }
    let n = lines.len() + 1;
    let mut gram = IntMatrix::zeros(n, n);
    gram.set(0, 0, HYPERPLANE_SQUARE.into());
    for i in 1..n {
        gram.set(0, i, HYPERPLANE_DOT_LINE.into());
        gram.set(i, 0, HYPERPLANE_DOT_LINE.into());
        gram.set(i, i, LINE_SQUARE.into());
        for j in i + 1..n {
            let k = line_intersection_number(&lines[i - 1], &lines[j - 1], p)?;
            gram.set(i, j, k.into());
            gram.set(j, i, k.into());
        }
    }
    let mut labels = vec!["H".to_string()];
    labels.extend(lines.iter().map(|l| l.label.clone()));
    Ok(DivisorBasis { labels, gram })
}

/// Gram matrix of `(D, L0, L1)` with `D = H − L0 − L1`, from that of `(H, L0, L1)`.
pub fn basis_change_to_d(basis: &DivisorBasis) -> Result<Lattice> {
    let expected = IntMatrix::from_i64(&[&[4, 1, 1], &[1, -2, 0], &[1, 0, -2]]);
    if basis.gram != expected {
        return Err(Error::UnexpectedGram);
    }
    let change = IntMatrix::from_i64(&[&[1, 0, 0], &[-1, 1, 0], &[-1, 0, 1]]);
    Lattice::new(change.congruence(&basis.gram))
}

/// A point of `ℙ³(𝔽_{p^m})` with coordinates given as field indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularPoint {
    pub extension_degree: u32,
    pub coords: [u32; 4],
}

/// Default extension degree for [`singular_point_search`].
pub fn default_singular_search_degree(p: u32) -> u32 {
    if p == 2 {
        3
    } else {
        2
    }
}

/// Points of `ℙ³(𝔽_q)` normalized so the first nonzero coordinate is 1.
pub fn projective_points(field: &FieldTower) -> Vec<[FieldElement; 4]> {
    let elems: Vec<FieldElement> = field.enumerate().collect();
    let mut out = Vec::new();
    for lead in 0..4 {
        let free = 3 - lead;
        let count = (field.size() as usize).pow(free as u32);
        for mut k in 0..count {
            let mut pt = [field.zero(); 4];
            pt[lead] = field.one();
            for slot in pt[lead + 1..].iter_mut().rev() {
                *slot = elems[k % elems.len()];
                k /= elems.len();
            }
            out.push(pt);
        }
    }
    out
}

/// Every point over `𝔽_{p^m}`, `1 ≤ m ≤ max_degree`, where the form and
/// all four partial derivatives vanish. An empty result is evidence of
/// smoothness, not a proof.
pub fn singular_point_search(
    form: &HomogeneousForm,
    p: u32,
    max_degree: u32,
) -> Result<Vec<SingularPoint>> {
    let reduced = form.reduce_mod(p);
    let partials: Vec<HomogeneousForm> = (0..4).map(|i| reduced.partial(i).reduce_mod(p)).collect();
    let mut out = Vec::new();
    for m in 1..=max_degree {
        let field = FieldTower::new(p, m)?;
        let points = projective_points(&field);
        let hits: Vec<SingularPoint> = points
            .par_iter()
            .filter(|pt| {
                reduced.evaluate(&field, pt).is_zero()
                    && partials.iter().all(|d| d.evaluate(&field, pt).is_zero())
            })
            .map(|pt| SingularPoint {
                extension_degree: m,
                coords: pt.map(FieldElement::index),
            })
            .collect();
        out.extend(hits);
    }
    Ok(out)
}
