use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldTower};

/// Exponents of `(x, y, z, w)`.
pub type Exponents = [u32; 4];

pub const VARIABLES: [char; 4] = ['x', 'y', 'z', 'w'];

/// A homogeneous polynomial in `x, y, z, w` with integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HomogeneousForm {
    degree: u32,
    terms: BTreeMap<Exponents, i64>,
}

impl HomogeneousForm {
    pub fn zero(degree: u32) -> Self {
        HomogeneousForm {
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Sums repeated monomials and drops zero coefficients.
    pub fn new(degree: u32, terms: impl IntoIterator<Item = (Exponents, i64)>) -> Result<Self> {
        let mut out = Self::zero(degree);
        for (e, c) in terms {
            if e.iter().sum::<u32>() != degree {
                return Err(Error::NotHomogeneous);
            }
            out.add_term(e, c);
        }
        Ok(out)
    }

    /// Builds from `(monomial, coefficient)` pairs such as `("x*y", 3)`.
    pub fn from_monomials(degree: u32, terms: &[(&str, i64)]) -> Result<Self> {
        let parsed = terms
            .iter()
            .map(|(m, c)| Ok((parse_monomial(m)?, *c)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(degree, parsed)
    }

    /// The coordinate function `xᵢ`.
    pub fn variable(i: usize) -> Self {
        let mut e = [0; 4];
        e[i] = 1;
        Self::new(1, [(e, 1)]).expect("degree one")
    }

    fn add_term(&mut self, e: Exponents, c: i64) {
        let entry = self.terms.entry(e).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &i64)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, e: &Exponents) -> i64 {
        self.terms.get(e).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.degree != other.degree {
            return Err(Error::NotHomogeneous);
        }
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, *c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = Self::zero(self.degree);
        for (e, c) in &self.terms {
            out.add_term(*e, c * k);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.degree + other.degree);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                let e = [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]];
                out.add_term(e, c * d);
            }
        }
        out
    }

    /// Coefficients reduced into `{0, …, p−1}`.
    pub fn reduce_mod(&self, p: u32) -> Self {
        let mut out = Self::zero(self.degree);
        for (e, c) in &self.terms {
            out.add_term(*e, c.rem_euclid(p as i64));
        }
        out
    }

    /// `∂/∂xᵢ`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.degree.saturating_sub(1));
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut d = *e;
                d[i] -= 1;
                out.add_term(d, c * e[i] as i64);
            }
        }
        out
    }

    /// Whether every monomial contains one of the given variables, i.e. the
    /// form lies in the monomial ideal they generate.
    pub fn in_monomial_ideal(&self, vars: &[usize]) -> bool {
        self.terms.keys().all(|e| vars.iter().any(|&v| e[v] > 0))
    }

    pub fn evaluate(&self, field: &FieldTower, point: &[FieldElement; 4]) -> FieldElement {
        let mut acc = field.zero();
        for (e, c) in &self.terms {
            let mut t = field.from_int(*c);
            for (v, &k) in point.iter().zip(e) {
                t = field.mul(t, field.pow(*v, k as u64));
            }
            acc = field.add(acc, t);
        }
        acc
    }
}

/// Parses `"x^2*y"`, `"xy"` or `"1"` into exponents.
pub fn parse_monomial(s: &str) -> Result<Exponents> {
    let mut e = [0u32; 4];
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    if chars == ['1'] {
        return Ok(e);
    }
    if chars.is_empty() {
        return Err(Error::Parse("empty monomial".into()));
    }
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c == '*' {
            i += 1;
            continue;
        }
        let v = VARIABLES
            .iter()
            .position(|&x| x == c)
            .ok_or_else(|| Error::Parse(format!("unknown variable '{c}' in monomial '{s}'")))?;
        i += 1;
        let mut k = 1;
        if i < chars.len() && chars[i] == '^' {
            i += 1;
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            k = digits
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in monomial '{s}'")))?;
        }
        e[v] += k;
    }
    Ok(e)
}

pub fn format_monomial(e: &Exponents) -> String {
    let parts: Vec<String> = e
        .iter()
        .zip(VARIABLES)
        .filter(|(k, _)| **k > 0)
        .map(|(k, v)| {
            if *k == 1 {
                v.to_string()
            } else {
                format!("{v}^{k}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for HomogeneousForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let m = format_monomial(e);
            let abs = c.abs();
            let sign = if *c < 0 { "-" } else { "+" };
            if i == 0 {
                if *c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (abs, m.as_str()) {
                (_, "1") => write!(f, "{abs}")?,
                (1, _) => write!(f, "{m}")?,
                _ => write!(f, "{abs}*{m}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HomogeneousForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HomogeneousForm({self})")
    }
}
