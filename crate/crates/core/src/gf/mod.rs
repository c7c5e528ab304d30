//! Arithmetic in `𝔽_{pⁿ}` for `p ∈ {2, 3}`.
//!
//! Elements are packed as the base-`p` integer `Σ cᵢ pⁱ` of their coefficient
//! vector in the power basis of the modulus, so index order is
//! coefficient-lexicographic with the top coefficient most significant.
//! Multiplication goes through log/antilog tables built once per tower.

mod poly;
mod zech;

pub use poly::{irreducible_polynomials, is_irreducible};
pub use zech::{ZechElement, ZechField};

use std::fmt;

use crate::error::{Error, Result};

/// Default upper bound on the extension degree.
pub const DEFAULT_MAX_DEGREE: u32 = 9;

/// Hard limit on the field size for table-driven arithmetic.
pub const MAX_FIELD_SIZE: u32 = 1 << 20;

/// An element of a [`FieldTower`], as its packed coefficient index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// `𝔽_{pⁿ} = 𝔽_p[t]/(modulus)` with precomputed log/antilog tables.
#[derive(Clone)]
pub struct FieldTower {
    p: u32,
    n: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: FieldElement,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldTower")
            .field("p", &self.p)
            .field("n", &self.n)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for FieldTower {}

/// The field of `pⁿ` elements with the smallest monic irreducible modulus.
pub fn make_field(p: u32, n: u32) -> Result<FieldTower> {
    FieldTower::new(p, n)
}

impl FieldTower {
    pub fn new(p: u32, n: u32) -> Result<Self> {
        Self::with_max_degree(p, n, DEFAULT_MAX_DEGREE)
    }

    pub fn with_max_degree(p: u32, n: u32, max_degree: u32) -> Result<Self> {
        check_size(p, n, max_degree)?;
        let modulus = irreducible_polynomials(p, n)
            .next()
            .expect("irreducible polynomials exist in every degree");
        Self::build(p, modulus)
    }

    /// A tower over an explicit monic modulus, coefficients ascending.
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self> {
        if modulus.len() < 2 {
            return Err(Error::Reducible);
        }
        let n = (modulus.len() - 1) as u32;
        check_size(p, n, u32::MAX)?;
        if modulus.last() != Some(&1) || !is_irreducible(p, &modulus) {
            return Err(Error::Reducible);
        }
        Self::build(p, modulus)
    }

    fn build(p: u32, modulus: Vec<u32>) -> Result<Self> {
        let n = (modulus.len() - 1) as u32;
        let q = p.pow(n);
        let order = q - 1;
        let factors = prime_factors(order);
        let mul_poly = |a: u32, b: u32| -> u32 {
            let pa = unpack(a, p, n);
            let pb = unpack(b, p, n);
            pack(&poly::mulmod(&pa, &pb, &modulus, p), p)
        };
        let pow = |a: u32, mut e: u32| -> u32 {
            let mut base = a;
            let mut acc = 1;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul_poly(acc, base);
                }
                base = mul_poly(base, base);
                e >>= 1;
            }
            acc
        };
        let generator = (1..q)
            .find(|&g| factors.iter().all(|&f| pow(g, order / f) != 1))
            .expect("the multiplicative group is cyclic");
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for k in 0..order {
            exp.push(x);
            log[x as usize] = k;
            x = mul_poly(x, generator);
        }
        debug_assert_eq!(x, 1);
        Ok(FieldTower {
            p,
            n,
            q,
            modulus,
            generator: FieldElement(generator),
            exp,
            log,
        })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    /// Monic modulus, coefficients ascending.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// A primitive element (the smallest index of multiplicative order `q − 1`).
    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    /// The class of `t` in `𝔽_p[t]/(modulus)`; equals `p` as an index unless `n = 1`.
    pub fn t(&self) -> FieldElement {
        if self.n == 1 {
            // t ≡ −modulus[0] in the prime field
            FieldElement((self.p - self.modulus[0]) % self.p)
        } else {
            FieldElement(self.p)
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, c: i64) -> FieldElement {
        FieldElement(c.rem_euclid(self.p as i64) as u32)
    }

    pub fn from_index(&self, i: u32) -> Result<FieldElement> {
        if i < self.q {
            Ok(FieldElement(i))
        } else {
            Err(Error::DimensionMismatch {
                expected: self.q as usize,
                actual: i as usize,
            })
        }
    }

    /// Element from power-basis coefficients (ascending); reduced mod the modulus.
    pub fn from_coefficients(&self, coeffs: &[i64]) -> FieldElement {
        let reduced: Vec<u32> = coeffs
            .iter()
            .map(|c| c.rem_euclid(self.p as i64) as u32)
            .collect();
        FieldElement(pack(&poly::rem(&reduced, &self.modulus, self.p), self.p))
    }

    pub fn coefficients(&self, a: FieldElement) -> Vec<u32> {
        unpack(a.0, self.p, self.n)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0, 1);
        while x > 0 || y > 0 {
            out += ((x % 3 + y % 3) % 3) * place;
            x /= 3;
            y /= 3;
            place *= 3;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.p == 2 {
            return a;
        }
        let (mut x, mut out, mut place) = (a.0, 0, 1);
        while x > 0 {
            out += ((3 - x % 3) % 3) * place;
            x /= 3;
            place *= 3;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement(0);
        }
        let order = self.q - 1;
        let s = self.log[a.0 as usize] + self.log[b.0 as usize];
        FieldElement(self.exp[(s % order) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let order = self.q - 1;
        let l = self.log[a.0 as usize];
        Ok(FieldElement(self.exp[((order - l) % order) as usize]))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return self.one();
        }
        if a.0 == 0 {
            return a;
        }
        let order = (self.q - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        FieldElement(self.exp[((l * (e % order)) % order) as usize])
    }

    /// `a ↦ aᵖ`.
    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.p as u64)
    }

    /// Discrete logarithm to the base [`FieldTower::generator`]; `None` at zero.
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        (a.0 != 0).then(|| self.log[a.0 as usize])
    }

    /// `generatorᵏ`.
    pub fn exp(&self, k: u64) -> FieldElement {
        FieldElement(self.exp[(k % (self.q as u64 - 1)) as usize])
    }

    /// Every element once, in index order starting at zero.
    pub fn enumerate(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    pub fn zech(&self) -> ZechField {
        ZechField::new(self)
    }
}

pub fn enumerate(tower: &FieldTower) -> impl Iterator<Item = FieldElement> + '_ {
    tower.enumerate()
}

fn check_size(p: u32, n: u32, max_degree: u32) -> Result<()> {
    let unsupported = Error::UnsupportedField { p, n };
    if !(p == 2 || p == 3) || n == 0 || n > max_degree {
        return Err(unsupported);
    }
    match p.checked_pow(n) {
        Some(q) if q <= MAX_FIELD_SIZE => Ok(()),
        _ => Err(unsupported),
    }
}

fn pack(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn unpack(mut x: u32, p: u32, n: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(n as usize);
    for _ in 0..n {
        out.push(x % p);
        x /= p;
    }
    out
}

fn prime_factors(mut m: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}
