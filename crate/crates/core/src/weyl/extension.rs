//! Extending an isometry of a sublattice to the whole lattice.
//!
//! Over `ℚ` the lattice splits as `span(Λ') ⊕ Λ'^⊥`. Any extension of `b` has
//! to preserve the orthogonal complement, so when that complement has rank
//! one there are exactly two rational extensions (`±1` on the complement
//! generator) and integrality of each can be decided directly. For larger
//! complements the images of the complement basis are searched in a box.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::normal_form::{integer_kernel, solve_integer};
use crate::lattice::{Isometry, Lattice, LatticeVector, Sublattice};
use crate::matrix::{IntMatrix, RatMatrix};

use super::restrict::RestrictedIsometry;
use super::search::find_isometries;

/// Coordinate bound for the search over complement images.
pub const DEFAULT_EXTENSION_BOUND: u32 = 10;

/// Box points per complement column beyond which the search gives up.
const SEARCH_BOX_LIMIT: u64 = 2_000_000;

/// A rational isometry of `Λ ⊗ ℚ` restricting to the given sublattice
/// isometry but not preserving `Λ`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalWitness {
    pub matrix: RatMatrix,
    /// Action on the complement generator (`+1` or `−1`).
    pub complement_sign: i32,
    /// Least common denominator of all entries.
    pub denominator: BigInt,
    /// Parent basis vectors whose image has a non-integral coordinate.
    pub non_integral_images: Vec<usize>,
}

#[derive(Clone, Debug)]
pub enum ExtensionVerdict {
    Extends(Isometry),
    NoIntegralExtension(Vec<RationalWitness>),
    Inconclusive {
        coord_bound: u32,
        candidates_examined: usize,
    },
}

impl ExtensionVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            ExtensionVerdict::Extends(_) => "extends",
            ExtensionVerdict::NoIntegralExtension(_) => "no-integral-extension",
            ExtensionVerdict::Inconclusive { .. } => "inconclusive",
        }
    }
}

/// Saturated integer basis of the orthogonal complement of `sub`.
pub(crate) fn orthogonal_complement(sub: &Sublattice) -> IntMatrix {
    let bt_g = sub
        .basis_matrix()
        .transpose()
        .try_mul(sub.parent().gram())
        .expect("shapes");
    integer_kernel(&bt_g)
}

fn check_extendable(sub: &Sublattice) -> Result<IntMatrix> {
    if sub.is_degenerate() {
        return Err(Error::Degenerate);
    }
    let c = orthogonal_complement(sub);
    if c.cols() == 0 {
        return Err(Error::TrivialComplement);
    }
    Ok(c)
}

/// `E = [B·b | C·t] · [B | C]⁻¹` over the rationals.
fn assemble(
    sub: &Sublattice,
    b: &RestrictedIsometry,
    comp: &IntMatrix,
    comp_image: &IntMatrix,
) -> RatMatrix {
    let basis = sub.basis_matrix();
    let images = (basis * b.matrix()).hstack(comp_image).to_rational();
    let frame = basis.hstack(comp).to_rational();
    let inv = frame
        .inverse()
        .expect("sublattice and complement span the space");
    &images * &inv
}

fn non_integral_columns(m: &RatMatrix) -> Vec<usize> {
    (0..m.cols())
        .filter(|&j| m.col(j).iter().any(|v| !v.is_integer()))
        .collect()
}

/// All integral extensions when the complement has rank one (at most two).
pub fn integral_extensions(b: &RestrictedIsometry, sub: &Sublattice) -> Result<Vec<Isometry>> {
    let comp = check_extendable(sub)?;
    if comp.cols() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            actual: comp.cols(),
        });
    }
    let mut out = Vec::new();
    for sign in [1i64, -1] {
        let e = assemble(sub, b, &comp, &comp.scale(&BigInt::from(sign)));
        if let Some(int) = e.to_integer() {
            out.push(Isometry::new(sub.parent(), int)?);
        }
    }
    Ok(out)
}

pub fn extend_to_parent(b: &RestrictedIsometry, sub: &Sublattice) -> Result<ExtensionVerdict> {
    extend_to_parent_with_bound(b, sub, DEFAULT_EXTENSION_BOUND)
}

pub fn extend_to_parent_with_bound(
    b: &RestrictedIsometry,
    sub: &Sublattice,
    coord_bound: u32,
) -> Result<ExtensionVerdict> {
    let comp = check_extendable(sub)?;
    let parent = sub.parent();

    if comp.cols() == 1 {
        let mut witnesses = Vec::with_capacity(2);
        for sign in [1i32, -1] {
            let image = comp.scale(&BigInt::from(sign));
            let e = assemble(sub, b, &comp, &image);
            debug_assert_eq!(
                e.congruence(&parent.gram().to_rational()),
                parent.gram().to_rational()
            );
            if let Some(int) = e.to_integer() {
                return Ok(ExtensionVerdict::Extends(Isometry::new(parent, int)?));
            }
            witnesses.push(RationalWitness {
                denominator: e.denominator(),
                non_integral_images: non_integral_columns(&e),
                complement_sign: sign,
                matrix: e,
            });
        }
        return Ok(ExtensionVerdict::NoIntegralExtension(witnesses));
    }

    // Images of the complement basis must form an isometry of the complement
    // lattice; search those with bounded entries.
    let r = comp.cols() as u32;
    let side = 2 * coord_bound as u64 + 1;
    if side.checked_pow(r).is_none_or(|v| v > SEARCH_BOX_LIMIT) {
        return Ok(ExtensionVerdict::Inconclusive {
            coord_bound,
            candidates_examined: 0,
        });
    }
    let comp_lattice = Lattice::new(comp.congruence(parent.gram()))?;
    let candidates = find_isometries(&comp_lattice, coord_bound);
    let examined = candidates.len();
    for t in candidates {
        let image = &comp * t.matrix();
        let e = assemble(sub, b, &comp, &image);
        if let Some(int) = e.to_integer() {
            return Ok(ExtensionVerdict::Extends(Isometry::new(parent, int)?));
        }
    }
    Ok(ExtensionVerdict::Inconclusive {
        coord_bound,
        candidates_examined: examined,
    })
}

/// `coeffs · u = rhs` for the unknown image `u` of the target vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearConstraint {
    pub coeffs: Vec<BigInt>,
    pub rhs: BigInt,
    /// Index of the sublattice basis vector this pairing comes from.
    pub basis_index: usize,
}

#[derive(Clone, Debug)]
pub struct ObstructionSystem {
    pub target: LatticeVector,
    pub constraints: Vec<LinearConstraint>,
    pub solvable: bool,
    pub particular_solution: Option<Vec<BigInt>>,
    /// Smallest prime modulo which the system is already inconsistent.
    pub obstruction_modulus: Option<u64>,
}

impl ObstructionSystem {
    pub fn is_satisfied_by(&self, u: &[BigInt]) -> bool {
        self.constraints.iter().all(|c| {
            c.coeffs
                .iter()
                .zip(u)
                .fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
                == c.rhs
        })
    }
}

/// Linear conditions on the image `u` of `target` under any integral
/// extension of `b`: for each sublattice basis vector `sᵢ`,
/// `b(sᵢ) · u = sᵢ · target`.
pub fn diophantine_obstruction(
    b: &RestrictedIsometry,
    sub: &Sublattice,
    target: &LatticeVector,
) -> Result<ObstructionSystem> {
    let parent = sub.parent();
    if target.len() != parent.rank() {
        return Err(Error::DimensionMismatch {
            expected: parent.rank(),
            actual: target.len(),
        });
    }
    let gram = parent.gram();
    let basis = sub.basis_matrix();
    let images = basis * b.matrix();
    let mut constraints = Vec::with_capacity(sub.rank());
    for i in 0..sub.rank() {
        let img = images.col(i);
        let coeffs = gram.mul_vec(&img);
        let rhs = gram.bilinear(&basis.col(i), &target.0);
        constraints.push(LinearConstraint {
            coeffs,
            rhs,
            basis_index: i,
        });
    }
    let a = IntMatrix::from_rows(constraints.iter().map(|c| c.coeffs.clone()).collect())?;
    let rhs: Vec<BigInt> = constraints.iter().map(|c| c.rhs.clone()).collect();
    let particular_solution = solve_integer(&a, &rhs);
    let obstruction_modulus = if particular_solution.is_none() {
        small_primes(100)
            .into_iter()
            .find(|&p| inconsistent_mod(&a, &rhs, p))
    } else {
        None
    };
    Ok(ObstructionSystem {
        target: target.clone(),
        constraints,
        solvable: particular_solution.is_some(),
        particular_solution,
        obstruction_modulus,
    })
}

fn small_primes(limit: u64) -> Vec<u64> {
    (2..=limit)
        .filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0))
        .collect()
}

fn rank_mod(rows: &[Vec<u64>], cols: usize, p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows.to_vec();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = mod_pow(m[rank][c], p - 2, p);
        for v in m[rank].iter_mut() {
            *v = *v * inv % p;
        }
        for i in 0..m.len() {
            if i != rank && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    m[i][j] = (m[i][j] + p * p - f * m[rank][j] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inconsistent_mod(a: &IntMatrix, rhs: &[BigInt], p: u64) -> bool {
    let pb = BigInt::from(p);
    let red = |v: &BigInt| v.mod_floor(&pb).to_u64().expect("reduced residue");
    let coeff_rows: Vec<Vec<u64>> = a
        .to_rows()
        .iter()
        .map(|r| r.iter().map(red).collect())
        .collect();
    let aug_rows: Vec<Vec<u64>> = coeff_rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut r = r.clone();
            r.push(red(b));
            r
        })
        .collect();
    rank_mod(&coeff_rows, a.cols(), p) < rank_mod(&aug_rows, a.cols() + 1, p)
}

/// Checks a rational witness independently: it must preserve the rational
/// form, restrict to `b` on the sublattice, and send some parent basis vector
/// outside `Λ`.
pub(crate) fn witness_is_valid(
    w: &RationalWitness,
    b: &RestrictedIsometry,
    sub: &Sublattice,
) -> bool {
    let gram = sub.parent().gram().to_rational();
    if w.matrix.congruence(&gram) != gram {
        return false;
    }
    let basis = sub.basis_matrix().to_rational();
    if &w.matrix * &basis != &basis * &b.matrix().to_rational() {
        return false;
    }
    let nonint = non_integral_columns(&w.matrix);
    !nonint.is_empty() && nonint == w.non_integral_images && w.denominator > BigInt::one()
}
