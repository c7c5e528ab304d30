//! Strategies, independent oracles and property checks shared by the
//! property suite and the acceptance runner.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use k3weyl_core::gf::{irreducible_polynomials, FieldTower};
use k3weyl_core::lattice::{invariant_sublattice, GroupAction, Isometry, Lattice, LatticeVector};
use k3weyl_core::matrix::IntMatrix;
use k3weyl_core::surface::{Exponents, HomogeneousForm};
use k3weyl_core::zeta::{
    count_points_affine_decomposition, count_points_in_field, cyclotomic, newton_coefficients,
    traces_from_coefficients, RationalPolynomial,
};

pub type Gram = Vec<Vec<i64>>;

pub fn to_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&c| BigInt::from(c)).collect())
            .collect(),
    )
    .unwrap()
}

/// Fraction-free Gaussian elimination over i128.
pub fn det_oracle(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&c| c as i128).collect())
        .collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * a[n - 1][n - 1]
    }
}

fn symmetric(
    n: usize,
    diag: impl Strategy<Value = i64> + Clone,
    off: std::ops::RangeInclusive<i64>,
) -> impl Strategy<Value = Gram> {
    (
        proptest::collection::vec(diag, n),
        proptest::collection::vec(off, n * (n - 1) / 2),
    )
        .prop_map(move |(d, o)| {
            let mut g = vec![vec![0; n]; n];
            let mut k = 0;
            for i in 0..n {
                g[i][i] = d[i];
                for j in i + 1..n {
                    g[i][j] = o[k];
                    g[j][i] = o[k];
                    k += 1;
                }
            }
            g
        })
}

// Reflections

/// A Gram matrix with every diagonal entry −2, so each basis vector is a root,
/// and two words in the basis roots.
pub fn reflection_case() -> impl Strategy<Value = (Gram, Vec<usize>, Vec<usize>, usize)> {
    (2usize..=5).prop_flat_map(|n| {
        (
            symmetric(n, Just(-2i64), -2..=2),
            proptest::collection::vec(0..n, 0..4),
            proptest::collection::vec(0..n, 0..4),
            0..n,
        )
    })
}

fn word(lat: &Lattice, idx: &[usize]) -> Isometry {
    idx.iter().fold(Isometry::identity(lat.rank()), |acc, &i| {
        let s = lat.reflection(&LatticeVector::unit(lat.rank(), i)).unwrap();
        s.compose(&acc).unwrap()
    })
}

pub fn check_reflection(case: &(Gram, Vec<usize>, Vec<usize>, usize)) -> Result<(), TestCaseError> {
    let (gram, g_idx, h_idx, j) = case;
    prop_assume!(det_oracle(gram) != 0);
    let lat = Lattice::new(to_matrix(gram)).unwrap();
    let n = lat.rank();
    let g = word(&lat, g_idx);
    let h = word(&lat, h_idx);
    let w = h.apply(&LatticeVector::unit(n, *j)).unwrap();
    let s = lat.reflection(&w).unwrap();
    prop_assert!(lat.is_isometry(s.matrix()).unwrap());
    prop_assert!(s.compose(&s).unwrap().is_identity());
    // s_w(w) = −w and s_w fixes w^⊥ pointwise: checked through the pairing
    prop_assert_eq!(s.apply(&w).unwrap(), w.neg());
    let gw = g.apply(&w).unwrap();
    prop_assert_eq!(g.conjugate(&s).unwrap(), lat.reflection(&gw).unwrap());
    Ok(())
}

// Even lattices of odd rank

pub fn even_odd_rank_gram() -> impl Strategy<Value = Gram> {
    prop_oneof![Just(1usize), Just(3usize), Just(5usize), Just(7usize)]
        .prop_flat_map(|n| symmetric(n, (-4i64..=4).prop_map(|k| 2 * k), -4..=4))
}

pub fn check_even_odd_rank(gram: &Gram) -> Result<(), TestCaseError> {
    let d = det_oracle(gram);
    prop_assume!(d != 0);
    let lat = Lattice::new(to_matrix(gram)).unwrap();
    prop_assert!(lat.is_even());
    prop_assert_eq!(lat.discriminant(), BigInt::from(d));
    prop_assert!(d % 2 == 0, "odd discriminant {}", d);
    Ok(())
}

// Finite cyclic actions

/// A signed permutation together with an arbitrary symmetric seed matrix.
pub fn cyclic_action_case() -> impl Strategy<Value = (Vec<usize>, Vec<i64>, Gram)> {
    (2usize..=5).prop_flat_map(|n| {
        (
            Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            proptest::collection::vec(prop_oneof![Just(1i64), Just(-1i64)], n),
            symmetric(n, -3i64..=3, -3..=3),
        )
    })
}

/// Column `i` of the action matrix is `sign[i] · e_{perm[i]}`.
fn signed_permutation(perm: &[usize], sign: &[i64]) -> Vec<Vec<i64>> {
    let n = perm.len();
    let mut m = vec![vec![0; n]; n];
    for i in 0..n {
        m[perm[i]][i] = sign[i];
    }
    m
}

fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn transpose(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i]).collect()).collect()
}

/// Number of cycles of the permutation whose sign product is +1: the rank of
/// the fixed sublattice.
fn fixed_rank_oracle(perm: &[usize], sign: &[i64]) -> usize {
    let n = perm.len();
    let mut seen = vec![false; n];
    let mut rank = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut i = start;
        let mut s = 1;
        while !seen[i] {
            seen[i] = true;
            s *= sign[i];
            i = perm[i];
        }
        if s == 1 {
            rank += 1;
        }
    }
    rank
}

pub fn check_cyclic_action(case: &(Vec<usize>, Vec<i64>, Gram)) -> Result<(), TestCaseError> {
    let (perm, sign, seed) = case;
    let n = perm.len();
    let p = signed_permutation(perm, sign);
    let identity: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    // average the seed over the group: Σ (Pᵏ)ᵀ A Pᵏ
    let mut gram = vec![vec![0i64; n]; n];
    let mut pk = identity.clone();
    loop {
        let term = mul(&transpose(&pk), &mul(seed, &pk));
        for i in 0..n {
            for j in 0..n {
                gram[i][j] += term[i][j];
            }
        }
        pk = mul(&p, &pk);
        if pk == identity {
            break;
        }
    }
    prop_assume!(det_oracle(&gram) != 0);
    let lat = Lattice::new(to_matrix(&gram)).unwrap();
    let g = GroupAction::from_matrices(&lat, vec![to_matrix(&p)]).unwrap();
    let sub = invariant_sublattice(&lat, &g).unwrap();
    prop_assert_eq!(sub.rank(), fixed_rank_oracle(perm, sign));
    if sub.rank() > 0 {
        prop_assert!(!sub.is_degenerate());
    }
    let action = &g.generators()[0];
    for v in sub.basis() {
        prop_assert_eq!(action.apply(&v).unwrap(), v);
    }
    Ok(())
}

// Point counts

/// A random quartic with coefficients in `0..p`.
pub fn quartic(p: u32) -> impl Strategy<Value = HomogeneousForm> {
    let monomials: Vec<Exponents> = (0..=4u32)
        .flat_map(|a| {
            (0..=4 - a).flat_map(move |b| (0..=4 - a - b).map(move |c| [a, b, c, 4 - a - b - c]))
        })
        .collect();
    proptest::collection::vec((0..monomials.len(), 1..p as i64), 1..10).prop_map(move |terms| {
        HomogeneousForm::new(4, terms.into_iter().map(|(i, c)| (monomials[i], c))).unwrap()
    })
}

pub fn check_modulus_invariance(
    p: u32,
    n: u32,
    form: &HomogeneousForm,
) -> Result<(), TestCaseError> {
    let moduli: Vec<Vec<u32>> = irreducible_polynomials(p, n).collect();
    prop_assert!(moduli.len() >= 2);
    let counts: Vec<u64> = moduli
        .into_iter()
        .map(|m| {
            let field = FieldTower::with_modulus(p, m).unwrap();
            count_points_in_field(form, &field, 1).unwrap()
        })
        .collect();
    prop_assert!(counts.windows(2).all(|w| w[0] == w[1]), "{:?}", counts);
    Ok(())
}

/// `(p, n)` with `pⁿ ≤ 27`.
pub fn small_field() -> impl Strategy<Value = (u32, u32)> {
    prop_oneof![
        Just((2, 1)),
        Just((2, 2)),
        Just((2, 3)),
        Just((2, 4)),
        Just((3, 1)),
        Just((3, 2)),
        Just((3, 3)),
    ]
}

pub fn dual_strategy_case() -> impl Strategy<Value = ((u32, u32), HomogeneousForm, usize)> {
    small_field().prop_flat_map(|(p, n)| (Just((p, n)), quartic(p), 1usize..=4))
}

pub fn check_dual_strategy(
    case: &((u32, u32), HomogeneousForm, usize),
) -> Result<(), TestCaseError> {
    let ((p, n), form, threads) = case;
    let field = FieldTower::new(*p, *n).unwrap();
    let fast = count_points_in_field(form, &field, *threads).unwrap();
    let slow = count_points_affine_decomposition(form, &field);
    prop_assert_eq!(fast, slow);
    Ok(())
}

// Newton identities

pub fn rational() -> impl Strategy<Value = BigRational> {
    (-50i64..=50, 1i64..=12).prop_map(|(a, b)| BigRational::new(a.into(), b.into()))
}

pub fn check_newton_round_trip(traces: &[BigRational]) -> Result<(), TestCaseError> {
    let c = newton_coefficients(traces);
    prop_assert_eq!(c.len(), traces.len());
    prop_assert_eq!(traces_from_coefficients(&c), traces.to_vec());
    Ok(())
}

/// Traces of integer roots against the expanded product `Π (t − r)`.
pub fn check_newton_against_roots(roots: &[i64]) -> Result<(), TestCaseError> {
    let d = roots.len();
    let traces: Vec<BigRational> = (1..=d as u32)
        .map(|k| BigRational::from_integer(roots.iter().map(|&r| BigInt::from(r).pow(k)).sum()))
        .collect();
    // descending coefficients of Π (t − r), leading 1 dropped
    let mut poly = vec![BigInt::from(1)];
    for &r in roots {
        let mut next = poly.clone();
        next.push(BigInt::from(0));
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] -= c * r;
        }
        poly = next;
    }
    let expected: Vec<BigRational> = poly[1..]
        .iter()
        .cloned()
        .map(BigRational::from_integer)
        .collect();
    prop_assert_eq!(newton_coefficients(&traces), expected);
    Ok(())
}

// Cyclotomic polynomials

/// `Π_{d | n} Φ_d = tⁿ − 1`.
pub fn cyclotomic_product_holds(n: u64) -> bool {
    let product = (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .fold(RationalPolynomial::one(), |acc, d| acc.mul(&cyclotomic(d)));
    product == RationalPolynomial::monomial(n as usize).sub(&RationalPolynomial::one())
}

// Field axioms

pub fn field_case() -> impl Strategy<Value = ((u32, u32), u32, u32, u32)> {
    prop_oneof![(Just(2u32), 1u32..=9), (Just(3u32), 1u32..=6),].prop_flat_map(|(p, n)| {
        let q = p.pow(n);
        (Just((p, n)), 0..q, 0..q, 0..q)
    })
}

pub fn check_field_axioms(case: &((u32, u32), u32, u32, u32)) -> Result<(), TestCaseError> {
    let ((p, n), a, b, c) = *case;
    let f = FieldTower::new(p, n).unwrap();
    let (a, b, c) = (
        f.from_index(a).unwrap(),
        f.from_index(b).unwrap(),
        f.from_index(c).unwrap(),
    );
    prop_assert_eq!(f.add(a, b), f.add(b, a));
    prop_assert_eq!(f.mul(a, b), f.mul(b, a));
    prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
    prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
    prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
    prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
    prop_assert_eq!(
        f.frobenius(f.mul(a, b)),
        f.mul(f.frobenius(a), f.frobenius(b))
    );
    prop_assert_eq!(
        f.frobenius(f.add(a, b)),
        f.add(f.frobenius(a), f.frobenius(b))
    );
    prop_assert_eq!(f.pow(a, f.size() as u64), a);
    if !a.is_zero() {
        prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
    }
    let z = f.zech();
    let (za, zb) = (z.encode(&f, a), z.encode(&f, b));
    prop_assert_eq!(z.decode(&f, z.add(za, zb)), f.add(a, b));
    prop_assert_eq!(z.decode(&f, z.mul(za, zb)), f.mul(a, b));
    Ok(())
}
