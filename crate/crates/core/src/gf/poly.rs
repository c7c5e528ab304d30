//! Dense polynomials over a small prime field, coefficients ascending.

pub(crate) type Poly = Vec<u32>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // p is 2 or 3, so every unit is its own inverse
    debug_assert!(!a.is_multiple_of(p));
    a % p
}

pub(crate) fn sub(a: &[u32], b: &[u32], p: u32) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

/// Remainder of `a` modulo a nonzero `m`.
pub(crate) fn rem(a: &[u32], m: &[u32], p: u32) -> Poly {
    let m = trim(m.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    let mut r = trim(a.to_vec());
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let factor = (r[r.len() - 1] * lead_inv) % p;
        for (i, &c) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - factor * c % p) % p;
        }
        r = trim(r);
    }
    r
}

pub(crate) fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Poly {
    rem(&mul(a, b, p), m, p)
}

pub(crate) fn powmod(a: &[u32], mut e: u64, m: &[u32], p: u32) -> Poly {
    let mut base = rem(a, m, p);
    let mut acc: Poly = rem(&[1], m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(&acc, &base, m, p);
        }
        base = mulmod(&base, &base, m, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn gcd(a: &[u32], b: &[u32], p: u32) -> Poly {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Rabin-style test: a monic `f` of degree `n` is irreducible iff it has no
/// common factor with `x^{p^k} − x` for every `k ≤ n/2`.
pub fn is_irreducible(p: u32, f: &[u32]) -> bool {
    let f = trim(f.to_vec());
    if f.len() < 2 || f.iter().any(|&c| c >= p) {
        return false;
    }
    let n = f.len() - 1;
    let x: Poly = vec![0, 1];
    let mut frob = x.clone();
    for _ in 1..=n / 2 {
        frob = powmod(&frob, p as u64, &f, p);
        let g = gcd(&f, &sub(&frob, &x, p), p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// Monic polynomials of degree `n` encoded by `Σ aᵢ pⁱ` over the lower
/// coefficients, so `a_{n−1}` is most significant.
pub(crate) fn monic_from_code(p: u32, n: u32, mut code: u64) -> Poly {
    let mut f = Vec::with_capacity(n as usize + 1);
    for _ in 0..n {
        f.push((code % p as u64) as u32);
        code /= p as u64;
    }
    f.push(1);
    f
}

/// Monic irreducible polynomials of degree `n`, in increasing code order.
pub fn irreducible_polynomials(p: u32, n: u32) -> impl Iterator<Item = Vec<u32>> {
    let total = (p as u64).pow(n);
    (0..total)
        .map(move |code| monic_from_code(p, n, code))
        .filter(move |f| is_irreducible(p, f))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_irreducibles() {
        assert_eq!(
            irreducible_polynomials(2, 2).collect::<Vec<_>>(),
            vec![vec![1, 1, 1]]
        );
        assert_eq!(irreducible_polynomials(3, 2).next(), Some(vec![1, 0, 1]));
        // x³ + x + 1 and x³ + x² + 1
        assert_eq!(irreducible_polynomials(2, 3).count(), 2);
        assert_eq!(irreducible_polynomials(2, 1).count(), 2);
    }

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        // (1/n) Σ_{d|n} μ(d) p^{n/d}
        assert_eq!(irreducible_polynomials(2, 4).count(), 3);
        assert_eq!(irreducible_polynomials(2, 6).count(), 9);
        assert_eq!(irreducible_polynomials(3, 3).count(), 8);
        assert_eq!(irreducible_polynomials(3, 4).count(), 18);
    }

    #[test]
    fn reducible_rejected() {
        assert!(!is_irreducible(2, &[0, 0, 1]));
        assert!(!is_irreducible(2, &[1, 0, 1]));
        assert!(!is_irreducible(3, &[2, 0, 1]));
        assert!(!is_irreducible(3, &[1]));
    }

    #[test]
    fn arithmetic() {
        assert_eq!(mul(&[1, 1], &[1, 1], 2), vec![1, 0, 1]);
        assert_eq!(rem(&[0, 0, 1], &[1, 0, 1], 3), vec![2]);
        assert_eq!(gcd(&[2, 0, 1], &[1, 1], 3), vec![1, 1]);
        assert_eq!(powmod(&[0, 1], 4, &[1, 1, 1], 2), vec![0, 1]);
    }
}
