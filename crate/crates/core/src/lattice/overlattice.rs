use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::error::{Error, Result};

use super::Lattice;

/// `disc Λ' = disc Λ · [Λ : Λ']²` for a full-rank sublattice `Λ'` of `Λ`.
pub fn sublattice_index_discriminant_check(
    parent_disc: &BigInt,
    sub_disc: &BigInt,
    index: u64,
) -> bool {
    let idx = BigInt::from(index);
    *sub_disc == parent_disc * &idx * &idx
}

/// Candidate discriminants of even overlattices of the same rank: every `D`
/// with `D·m² = disc` for some `m ≥ 1`, keeping only even `D` when the rank is
/// odd (an even lattice of odd rank has even discriminant). Ordered by
/// increasing `m`, so the lattice's own discriminant comes first.
pub fn even_overlattice_discs(lat: &Lattice) -> Result<Vec<BigInt>> {
    if !lat.is_even() {
        return Err(Error::NotEven);
    }
    let disc = lat.discriminant();
    let odd_rank = lat.rank() % 2 == 1;
    let abs = disc.abs();
    let mut out = Vec::new();
    let mut m = BigInt::one();
    while &m * &m <= abs {
        let sq = &m * &m;
        if abs.is_multiple_of(&sq) {
            let d = &disc / &sq;
            if !odd_rank || d.is_even() {
                out.push(d);
            }
        }
        m += 1;
    }
    Ok(out)
}
