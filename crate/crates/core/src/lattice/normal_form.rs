//! Column Hermite reduction over the integers.
//!
//! `A · U = H` with `U` unimodular and `H` in column echelon form. The trailing
//! columns of `U` that map to zero span the integer kernel of `A`; since `U`
//! is unimodular that kernel basis is automatically saturated.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::IntMatrix;

#[derive(Debug, Clone)]
pub struct ColumnEchelon {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// `pivots[k]` is the row of the leading entry of column `k`.
    pub pivots: Vec<usize>,
}

impl ColumnEchelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn column_op(
    m: &mut IntMatrix,
    c1: usize,
    c2: usize,
    (a11, a12, a21, a22): (&BigInt, &BigInt, &BigInt, &BigInt),
) {
    // new c1 = a11·c1 + a21·c2, new c2 = a12·c1 + a22·c2
    for i in 0..m.rows() {
        let x = m.get(i, c1).clone();
        let y = m.get(i, c2).clone();
        m.set(i, c1, a11 * &x + a21 * &y);
        m.set(i, c2, a12 * &x + a22 * &y);
    }
}

fn negate_column(m: &mut IntMatrix, c: usize) {
    for i in 0..m.rows() {
        let v = -m.get(i, c).clone();
        m.set(i, c, v);
    }
}

pub fn column_echelon(a: &IntMatrix) -> ColumnEchelon {
    let n = a.cols();
    let mut h = a.clone();
    let mut u = IntMatrix::identity(n);
    let mut pivots = Vec::new();
    let mut r = 0;
    for i in 0..a.rows() {
        if r == n {
            break;
        }
        for j in r + 1..n {
            if h.get(i, j).is_zero() {
                continue;
            }
            let x = h.get(i, r).clone();
            let y = h.get(i, j).clone();
            let eg = x.extended_gcd(&y);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let yg = -(&y / &g);
            let xg = &x / &g;
            let coeffs = (&s, &yg, &t, &xg);
            column_op(&mut h, r, j, coeffs);
            column_op(&mut u, r, j, coeffs);
        }
        if h.get(i, r).is_zero() {
            continue;
        }
        if h.get(i, r).is_negative() {
            negate_column(&mut h, r);
            negate_column(&mut u, r);
        }
        // reduce earlier pivot columns modulo the new pivot
        let piv = h.get(i, r).clone();
        for k in 0..r {
            let q = h.get(i, k).div_floor(&piv);
            if q.is_zero() {
                continue;
            }
            for row in 0..h.rows() {
                let v = h.get(row, k) - &q * h.get(row, r);
                h.set(row, k, v);
            }
            for row in 0..u.rows() {
                let v = u.get(row, k) - &q * u.get(row, r);
                u.set(row, k, v);
            }
        }
        pivots.push(i);
        r += 1;
    }
    ColumnEchelon { h, u, pivots }
}

/// Saturated integer basis (columns) of `{v ∈ ℤⁿ : A v = 0}`.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let ech = column_echelon(a);
    ech.u.select_columns(ech.rank()..a.cols())
}

/// Some integer solution of `A v = b`, or `None` if there is none.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len(), "right-hand side length");
    let ech = column_echelon(a);
    let mut t = vec![BigInt::zero(); a.cols()];
    for (k, &row) in ech.pivots.iter().enumerate() {
        let partial = (0..k).fold(b[row].clone(), |acc, j| acc - ech.h.get(row, j) * &t[j]);
        let piv = ech.h.get(row, k);
        if !partial.is_multiple_of(piv) {
            return None;
        }
        t[k] = partial / piv;
    }
    // every row, pivot or not, must be reproduced exactly
    let check = ech.h.mul_vec(&t);
    if check.as_slice() != b {
        return None;
    }
    Some(ech.u.mul_vec(&t))
}

/// Saturation of the span of the given columns: `span_ℚ(B) ∩ ℤⁿ`.
pub fn saturate(basis: &IntMatrix) -> IntMatrix {
    let n = basis.rows();
    if basis.cols() == 0 {
        return IntMatrix::zeros(n, 0);
    }
    let annihilator = integer_kernel(&basis.transpose());
    if annihilator.cols() == 0 {
        return IntMatrix::identity(n);
    }
    integer_kernel(&annihilator.transpose())
}

/// Solves `B c = v` for integer `c` when `v` lies in the integer span of the
/// columns of `B`.
pub fn coordinates_in(basis: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let c = solve_integer(basis, v)?;
    // B has full column rank for the callers of this helper, so `c` is unique
    Some(c)
}

pub fn gcd_of(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

pub fn is_primitive(v: &[BigInt]) -> bool {
    gcd_of(v).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::int_vec;

    #[test]
    fn kernel_of_swap_minus_identity() {
        // τ − I for the swap of the last two coordinates
        let a = IntMatrix::from_i64(&[&[0, 0, 0], &[0, -1, 1], &[0, 1, -1]]);
        let k = integer_kernel(&a);
        assert_eq!(k.cols(), 2);
        assert!((&a * &k).entries().iter().all(Zero::is_zero));
        assert_eq!(saturate(&k).cols(), 2);
    }

    #[test]
    fn solve_respects_divisibility() {
        let a = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        assert!(solve_integer(&a, &int_vec(&[1, 3])).is_none());
        assert_eq!(
            solve_integer(&a, &int_vec(&[4, 3])).unwrap(),
            int_vec(&[2, 1])
        );
    }

    #[test]
    fn saturation_divides_out_common_factor() {
        let b = IntMatrix::from_i64(&[&[2], &[4], &[6]]);
        let s = saturate(&b);
        assert_eq!(s.cols(), 1);
        assert!(is_primitive(&s.col(0)));
        let c = s.col(0);
        let sign = if c[0].is_negative() { -1 } else { 1 };
        assert_eq!(
            c.iter().map(|v| v * sign).collect::<Vec<_>>(),
            int_vec(&[1, 2, 3])
        );
    }
}
