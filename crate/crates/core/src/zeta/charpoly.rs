use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

use super::count::CountRecord;
use super::poly::RationalPolynomial;

/// Second Betti number of a K3 surface.
pub const K3_SECOND_BETTI: usize = 22;

/// Number of independent divisor classes known on each reduction of the
/// bundled example (`H`, two lines of `C` and one extra line).
pub const DEFAULT_DIVISOR_RANK: usize = 4;

/// `(#X(𝔽_{pⁿ}) − 1 − p^{2n} − k·pⁿ) / pⁿ` with `k` known divisor classes.
pub fn trace_from_count_with_rank(rec: &CountRecord, divisor_rank: usize) -> BigRational {
    let q = BigInt::from(rec.p).pow(rec.n);
    let num = BigInt::from(rec.count) - 1u32 - &q * &q - BigInt::from(divisor_rank) * &q;
    BigRational::new(num, q)
}

pub fn trace_from_count(rec: &CountRecord) -> BigRational {
    trace_from_count_with_rank(rec, DEFAULT_DIVISOR_RANK)
}

/// Newton's identities: `c₁ = −t₁`, `cᵢ = −(tᵢ + Σ_{j<i} c_j t_{i−j}) / i`.
pub fn newton_coefficients(traces: &[BigRational]) -> Vec<BigRational> {
    let mut c: Vec<BigRational> = Vec::with_capacity(traces.len());
    for i in 1..=traces.len() {
        let mut s = traces[i - 1].clone();
        for j in 1..i {
            s += &c[j - 1] * &traces[i - j - 1];
        }
        c.push(-s / BigInt::from(i));
    }
    c
}

/// Inverse of [`newton_coefficients`]: `tᵢ = −i·cᵢ − Σ_{j<i} c_j t_{i−j}`.
pub fn traces_from_coefficients(c: &[BigRational]) -> Vec<BigRational> {
    let mut t: Vec<BigRational> = Vec::with_capacity(c.len());
    for i in 1..=c.len() {
        let mut s = -(&c[i - 1] * BigInt::from(i));
        for j in 1..i {
            s -= &c[j - 1] * &t[i - j - 1];
        }
        t.push(s);
    }
    t
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FunctionalEquationSign {
    Positive,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctionalEquation {
    /// Sign `+1`; all coefficients `c₁ … c_{2m}`.
    Positive(Vec<BigRational>),
    /// The middle coefficient vanishes, so the given coefficients do not fix the sign.
    Undetermined,
}

impl FunctionalEquation {
    pub fn sign(&self) -> FunctionalEquationSign {
        match self {
            FunctionalEquation::Positive(_) => FunctionalEquationSign::Positive,
            FunctionalEquation::Undetermined => FunctionalEquationSign::Undetermined,
        }
    }
}

/// Completes `c₁ … c_m` of a monic degree-`2m` polynomial with
/// `f(t) = ± t^{2m} f(1/t)`. A negative sign forces `c_m = 0`, so `c_m ≠ 0`
/// gives the positive sign, `c_{2m−i} = cᵢ` and `c_{2m} = 1`.
pub fn complete_functional_equation(c: &[BigRational]) -> FunctionalEquation {
    let m = c.len();
    if m == 0 || c[m - 1].is_zero() {
        return FunctionalEquation::Undetermined;
    }
    let mut full = c.to_vec();
    for i in (1..m).rev() {
        full.push(c[i - 1].clone());
    }
    full.push(BigRational::one());
    FunctionalEquation::Positive(full)
}

/// `t^d + c₁ t^{d−1} + ⋯ + c_d`.
pub fn polynomial_from_coefficients(c: &[BigRational]) -> RationalPolynomial {
    let mut asc: Vec<BigRational> = c.iter().rev().cloned().collect();
    asc.push(BigRational::one());
    RationalPolynomial::new(asc)
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut m = n;
    let mut out = n;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            while m.is_multiple_of(d) {
                m /= d;
            }
            out -= out / d;
        }
        d += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    out
}

/// `Φₙ`, by dividing `tⁿ − 1` by `Φ_d` for the proper divisors `d | n`.
pub fn cyclotomic(n: u64) -> RationalPolynomial {
    assert!(n >= 1, "cyclotomic polynomials are indexed from 1");
    let mut f = RationalPolynomial::monomial(n as usize).sub(&RationalPolynomial::one());
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        f = f
            .exact_div(&cyclotomic(d))
            .expect("nonzero divisor")
            .expect("cyclotomic factors divide tⁿ − 1");
    }
    f
}

/// Largest `n` with `φ(n) ≤ d`. Since `φ(n) ≥ √(n/2)`, every such `n` is at
/// most `2d²`; the scan runs to `max(2d², 700)`.
pub fn unit_root_order_bound(d: u64) -> u64 {
    let cutoff = (2 * d * d).max(700);
    (1..=cutoff)
        .filter(|&n| euler_phi(n) <= d)
        .max()
        .unwrap_or(1)
}

/// Roots of unity of order at most `max_order` among the roots of `f`,
/// counted with multiplicity: `Σ deg Φₙ · (multiplicity of Φₙ in f)`.
pub fn unit_root_multiplicity(f: &RationalPolynomial, max_order: u64) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let mut total = 0;
    for n in 1..=max_order {
        let phi = cyclotomic(n);
        let deg = phi.degree().expect("nonzero");
        let mut g = f.clone();
        while let Some(q) = g.exact_div(&phi)? {
            total += deg;
            g = q;
        }
    }
    Ok(total)
}

/// Upper bound on the geometric Picard number: the known classes plus the
/// roots of unity among the roots of the reduced characteristic polynomial.
pub fn picard_upper_bound(f_reduced: &RationalPolynomial, divisor_rank: usize) -> Result<usize> {
    let d = f_reduced.degree().ok_or(Error::DivisionByZero)? as u64;
    Ok(divisor_rank + unit_root_multiplicity(f_reduced, unit_root_order_bound(d))?)
}

/// `n / s²` for the largest square `s² | n`, keeping the sign.
pub fn squarefree_part(n: &BigInt) -> BigInt {
    let mut m = n.abs();
    let mut out = BigInt::one();
    let mut d = BigInt::from(2);
    while &d * &d <= m {
        let mut e = 0;
        while (&m % &d).is_zero() {
            m /= &d;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &d;
        }
        d += 1;
    }
    out *= m;
    if n.is_negative() {
        -out
    } else {
        out
    }
}

/// Whether `d1 / d2` is not the square of a rational number.
pub fn square_class_distinct(d1: &BigInt, d2: &BigInt) -> Result<bool> {
    if d1.is_zero() || d2.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(squarefree_part(d1) != squarefree_part(d2))
}

pub fn square_class_distinct_i64(d1: i64, d2: i64) -> Result<bool> {
    square_class_distinct(&BigInt::from(d1), &BigInt::from(d2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeta::count::CountSource;
    use crate::zeta::poly::rat;

    fn rec(p: u32, n: u32, count: u64) -> CountRecord {
        CountRecord {
            p,
            n,
            count,
            source: CountSource::Computed,
        }
    }

    #[test]
    fn traces() {
        assert_eq!(trace_from_count(&rec(2, 1, 9)), rat(-2, 1));
        assert_eq!(trace_from_count(&rec(3, 1, 21)), rat(-1, 3));
        assert_eq!(trace_from_count(&rec(3, 2, 1 + 81 + 36)), rat(0, 1));
        assert_eq!(trace_from_count_with_rank(&rec(2, 1, 9), 0), rat(2, 1));
    }

    #[test]
    fn newton_small() {
        // roots 1, 2: power sums 3, 5; t² − 3t + 2
        let c = newton_coefficients(&[rat(3, 1), rat(5, 1)]);
        assert_eq!(c, vec![rat(-3, 1), rat(2, 1)]);
        assert_eq!(traces_from_coefficients(&c), vec![rat(3, 1), rat(5, 1)]);
        assert!(newton_coefficients(&vec![rat(0, 1); 9])
            .iter()
            .all(Zero::is_zero));
    }

    #[test]
    fn functional_equation() {
        let c: Vec<BigRational> = [(1, 1), (2, 1), (1, 2)]
            .iter()
            .map(|&(a, b)| rat(a, b))
            .collect();
        let FunctionalEquation::Positive(full) = complete_functional_equation(&c) else {
            panic!("positive sign expected");
        };
        assert_eq!(
            full,
            vec![
                rat(1, 1),
                rat(2, 1),
                rat(1, 2),
                rat(2, 1),
                rat(1, 1),
                rat(1, 1)
            ]
        );
        let f = polynomial_from_coefficients(&full);
        assert!(f.is_monic());
        assert_eq!(f.reversed(), f);
        let mut zero = vec![rat(0, 1); 9];
        assert_eq!(
            complete_functional_equation(&zero),
            FunctionalEquation::Undetermined
        );
        zero[0] = rat(1, 1);
        assert_eq!(
            complete_functional_equation(&zero).sign(),
            FunctionalEquationSign::Undetermined
        );
    }

    #[test]
    fn cyclotomics() {
        assert_eq!(cyclotomic(1), RationalPolynomial::from_integers(&[-1, 1]));
        assert_eq!(cyclotomic(2), RationalPolynomial::from_integers(&[1, 1]));
        assert_eq!(
            cyclotomic(6),
            RationalPolynomial::from_integers(&[1, -1, 1])
        );
        assert_eq!(
            cyclotomic(12),
            RationalPolynomial::from_integers(&[1, 0, -1, 0, 1])
        );
        for n in 1..=60 {
            let phi = cyclotomic(n);
            assert_eq!(phi.degree(), Some(euler_phi(n) as usize), "n = {n}");
            assert!(phi.has_integer_coefficients());
        }
    }

    #[test]
    fn order_bounds() {
        assert_eq!(unit_root_order_bound(18), 60);
        assert_eq!(unit_root_order_bound(1), 2);
        assert_eq!(unit_root_order_bound(2), 6);
        assert_eq!(euler_phi(60), 16);
        assert_eq!(euler_phi(1), 1);
    }

    #[test]
    fn multiplicities() {
        let f = RationalPolynomial::linear_root(1)
            .pow(2)
            .mul(&RationalPolynomial::from_integers(&[2, 0, 1]));
        assert_eq!(unit_root_multiplicity(&f, 60).unwrap(), 2);
        let mut g = vec![0i64; 15];
        g[0] = 2;
        g[14] = 1;
        let synth = cyclotomic(5).mul(&RationalPolynomial::from_integers(&g));
        assert_eq!(synth.degree(), Some(18));
        assert_eq!(unit_root_multiplicity(&synth, 60).unwrap(), 4);
        assert_eq!(picard_upper_bound(&synth, 4).unwrap(), 8);
        assert!(unit_root_multiplicity(&RationalPolynomial::zero(), 10).is_err());
    }

    #[test]
    fn square_classes() {
        assert!(square_class_distinct_i64(44, 36).unwrap());
        assert!(!square_class_distinct_i64(20, 5).unwrap());
        assert!(!square_class_distinct_i64(9, 36).unwrap());
        assert!(square_class_distinct_i64(-44, -36).unwrap());
        assert!(square_class_distinct_i64(5, -5).unwrap());
        assert!(square_class_distinct_i64(0, 3).is_err());
        assert_eq!(squarefree_part(&BigInt::from(-44)), BigInt::from(-11));
        assert_eq!(squarefree_part(&BigInt::from(72)), BigInt::from(2));
    }
}
