use num_bigint::BigInt;

use crate::lattice::{Isometry, Lattice, LatticeVector};
use crate::matrix::IntMatrix;

/// All coordinate vectors in `[−bound, bound]ⁿ`, lexicographic (each
/// coordinate ascending from `−bound`).
fn box_vectors(rank: usize, bound: i64) -> impl Iterator<Item = Vec<i64>> {
    let side = (2 * bound + 1) as u64;
    let total = side.checked_pow(rank as u32).expect("search box too large");
    (0..total).map(move |mut k| {
        let mut v = vec![0i64; rank];
        for slot in v.iter_mut().rev() {
            *slot = (k % side) as i64 - bound;
            k /= side;
        }
        v
    })
}

/// Every vector with coordinates in `[−bound, bound]` and self-pairing `−2`,
/// in lexicographic coordinate order.
pub fn find_minus2_vectors(lat: &Lattice, coeff_bound: u32) -> Vec<LatticeVector> {
    let minus_two = BigInt::from(-2);
    box_vectors(lat.rank(), coeff_bound as i64)
        .map(|v| LatticeVector::from_i64(&v))
        .filter(|v| lat.norm(v).expect("rank matches") == minus_two)
        .collect()
}

/// Every isometry whose entries lie in `[−bound, bound]`, in row-major
/// lexicographic order of the entries.
pub fn find_isometries(lat: &Lattice, coeff_bound: u32) -> Vec<Isometry> {
    let n = lat.rank();
    let gram = lat.gram();
    let bound = coeff_bound as i64;
    // candidate images of each basis vector, filtered by self-pairing
    let candidates: Vec<Vec<Vec<BigInt>>> = (0..n)
        .map(|j| {
            box_vectors(n, bound)
                .map(|v| v.into_iter().map(BigInt::from).collect::<Vec<_>>())
                .filter(|v| gram.bilinear(v, v) == *gram.get(j, j))
                .collect()
        })
        .collect();

    let mut found = Vec::new();
    let mut chosen: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    extend(gram, &candidates, &mut chosen, &mut found);

    let mut out: Vec<IntMatrix> = found
        .into_iter()
        .map(|cols| IntMatrix::from_columns(n, &cols))
        .filter(|m| lat.is_isometry(m).unwrap_or(false))
        .collect();
    out.sort_by(|a, b| a.entries().cmp(b.entries()));
    out.into_iter()
        .map(Isometry::from_matrix_unchecked)
        .collect()
}

fn extend(
    gram: &IntMatrix,
    candidates: &[Vec<Vec<BigInt>>],
    chosen: &mut Vec<Vec<BigInt>>,
    found: &mut Vec<Vec<Vec<BigInt>>>,
) {
    let j = chosen.len();
    if j == candidates.len() {
        found.push(chosen.clone());
        return;
    }
    for c in &candidates[j] {
        let consistent = chosen
            .iter()
            .enumerate()
            .all(|(i, prev)| gram.bilinear(prev, c) == *gram.get(i, j));
        if consistent {
            chosen.push(c.clone());
            extend(gram, candidates, chosen, found);
            chosen.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::fixtures::*;

    #[test]
    fn isometries_of_invariant_plane() {
        let lat = Lattice::from_i64(&[&[-4, 6], &[6, -4]]).unwrap();
        let all = find_isometries(&lat, 1);
        let mats: Vec<&IntMatrix> = all.iter().map(Isometry::matrix).collect();
        for m in [
            IntMatrix::from_i64(&[&[1, 0], &[0, 1]]),
            IntMatrix::from_i64(&[&[-1, 0], &[0, -1]]),
            IntMatrix::from_i64(&[&[0, 1], &[1, 0]]),
            IntMatrix::from_i64(&[&[0, -1], &[-1, 0]]),
        ] {
            assert!(mats.contains(&&m), "missing {m}");
        }
        let mut sorted = mats.clone();
        sorted.sort_by(|a, b| a.entries().cmp(b.entries()));
        assert_eq!(sorted, mats);
    }

    #[test]
    fn zero_bound_finds_nothing() {
        assert!(find_isometries(&lattice_xyz(), 0).is_empty());
    }

    #[test]
    fn rank_one_positive() {
        let lat = Lattice::from_i64(&[&[2]]).unwrap();
        let all: Vec<IntMatrix> = find_isometries(&lat, 1)
            .into_iter()
            .map(|i| i.matrix().clone())
            .collect();
        assert_eq!(
            all,
            vec![IntMatrix::from_i64(&[&[-1]]), IntMatrix::from_i64(&[&[1]])]
        );
    }

    #[test]
    fn minus_two_vectors() {
        let lat = lattice_xyz();
        let b1 = find_minus2_vectors(&lat, 1);
        for v in [y(), y().neg(), z(), z().neg()] {
            assert!(b1.contains(&v));
        }
        let b2 = find_minus2_vectors(&lat, 2);
        assert!(b1.iter().all(|v| b2.contains(v)));
        assert!(find_minus2_vectors(&Lattice::from_i64(&[&[2]]).unwrap(), 3).is_empty());
    }
}
