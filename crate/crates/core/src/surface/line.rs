use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::form::HomogeneousForm;

/// A line in `ℙ³`, the common zero locus of two integer linear forms read
/// modulo a prime at the point of use.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineInP3 {
    pub label: String,
    /// Coefficients of `(x, y, z, w)` in each defining form.
    pub equations: [[i64; 4]; 2],
}

impl LineInP3 {
    pub fn new(label: impl Into<String>, a: [i64; 4], b: [i64; 4]) -> Self {
        LineInP3 {
            label: label.into(),
            equations: [a, b],
        }
    }

    fn rows_mod(&self, p: u32) -> Vec<Vec<u32>> {
        self.equations
            .iter()
            .map(|r| r.iter().map(|c| c.rem_euclid(p as i64) as u32).collect())
            .collect()
    }

    /// Two points spanning the line over `𝔽_p`: the kernel of the defining
    /// forms, with the non-pivot coordinates as parameters.
    pub fn parametrization(&self, p: u32) -> Result<[[u32; 4]; 2]> {
        let rows = self.rows_mod(p);
        let (reduced, pivots) = rref_mod(rows, p);
        if pivots.len() != 2 {
            return Err(Error::DegenerateLine);
        }
        let free: Vec<usize> = (0..4).filter(|c| !pivots.contains(c)).collect();
        let mut basis = [[0u32; 4]; 2];
        for (k, &f) in free.iter().enumerate() {
            basis[k][f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                basis[k][pc] = (p - reduced[r][f]) % p;
            }
        }
        Ok(basis)
    }
}

/// Row-reduces in place over `𝔽_p`, returning the reduced rows and pivot columns.
pub(crate) fn rref_mod(mut rows: Vec<Vec<u32>>, p: u32) -> (Vec<Vec<u32>>, Vec<usize>) {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, k);
        let inv = inv_mod(rows[r][c], p);
        for v in rows[r].iter_mut() {
            *v = *v * inv % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..ncols {
                    rows[i][j] = (rows[i][j] + p * p - f * rows[r][j] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    (rows, pivots)
}

pub(crate) fn rank_mod(rows: Vec<Vec<u32>>, p: u32) -> usize {
    rref_mod(rows, p).1.len()
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut acc = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// Whether the form vanishes identically on the line over `𝔽_p`: substitute
/// `s·P + t·Q` and test the resulting binary form for zero.
pub fn line_contained(line: &LineInP3, form: &HomogeneousForm, p: u32) -> Result<bool> {
    let [pt, qt] = line.parametrization(p)?;
    let d = form.degree() as usize;
    let mut total = vec![0u64; d + 1];
    for (e, c) in form.terms() {
        // binary form in (s, t); index k is the coefficient of s^{d−k} tᵏ
        let mut poly = vec![c.rem_euclid(p as i64) as u64];
        for (v, &k) in e.iter().enumerate() {
            for _ in 0..k {
                let lin = [pt[v] as u64, qt[v] as u64];
                let mut next = vec![0u64; poly.len() + 1];
                for (i, a) in poly.iter().enumerate() {
                    next[i] = (next[i] + a * lin[0]) % p as u64;
                    next[i + 1] = (next[i + 1] + a * lin[1]) % p as u64;
                }
                poly = next;
            }
        }
        for (i, a) in poly.iter().enumerate() {
            total[i] = (total[i] + a) % p as u64;
        }
    }
    Ok(total.iter().all(|&a| a == 0))
}

/// 1 if the lines meet over `𝔽̄_p`, 0 if they are skew.
pub fn line_intersection_number(l1: &LineInP3, l2: &LineInP3, p: u32) -> Result<u8> {
    for l in [l1, l2] {
        if rank_mod(l.rows_mod(p), p) != 2 {
            return Err(Error::DegenerateLine);
        }
    }
    let mut rows = l1.rows_mod(p);
    rows.extend(l2.rows_mod(p));
    match rank_mod(rows, p) {
        4 => Ok(0),
        3 => Ok(1),
        _ => Err(Error::IdenticalLines),
    }
}
