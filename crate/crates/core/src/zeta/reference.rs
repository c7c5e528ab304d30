use std::str::FromStr;

use num_rational::BigRational;
use serde::Deserialize;

use super::count::CountRecord;
use super::poly::RationalPolynomial;

const REFERENCE: &str = include_str!("../../data/reference.json");

#[derive(Deserialize)]
struct CountRow {
    p: u32,
    counts: Vec<u64>,
}

#[derive(Deserialize)]
struct CoefficientRow {
    p: u32,
    c: Vec<String>,
}

#[derive(Deserialize)]
struct CharpolyRow {
    p: u32,
    unit_factor_exponent: u32,
    reduced_descending: Vec<String>,
}

#[derive(Deserialize)]
struct DeterminantRow {
    p: u32,
    determinant: i64,
}

#[derive(Deserialize)]
struct Manifest {
    point_counts: Vec<CountRow>,
    coefficients: Vec<CoefficientRow>,
    charpolys: Vec<CharpolyRow>,
    intersection_determinants: Vec<DeterminantRow>,
    picard_number: u32,
}

/// Published values for the bundled example surface.
pub struct ReferenceData {
    manifest: Manifest,
}

fn parse_rationals(v: &[String]) -> Vec<BigRational> {
    v.iter()
        .map(|s| BigRational::from_str(s).expect("reference rationals parse"))
        .collect()
}

impl ReferenceData {
    pub fn bundled() -> Self {
        ReferenceData {
            manifest: serde_json::from_str(REFERENCE).expect("reference manifest parses"),
        }
    }

    /// Published counts for `n = 1, 2, …`, tagged as supplied.
    pub fn counts(&self, p: u32) -> Vec<CountRecord> {
        self.manifest
            .point_counts
            .iter()
            .filter(|r| r.p == p)
            .flat_map(|r| {
                r.counts
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| CountRecord::supplied(p, i as u32 + 1, c))
                    .collect::<Vec<_>>()
            })
            .collect()
    }

    pub fn count(&self, p: u32, n: u32) -> Option<CountRecord> {
        self.counts(p).into_iter().find(|r| r.n == n)
    }

    /// Published `c₁ … c₉`.
    pub fn coefficients(&self, p: u32) -> Option<Vec<BigRational>> {
        self.manifest
            .coefficients
            .iter()
            .find(|r| r.p == p)
            .map(|r| parse_rationals(&r.c))
    }

    /// The displayed degree-18 factor.
    pub fn reduced_charpoly(&self, p: u32) -> Option<RationalPolynomial> {
        self.manifest.charpolys.iter().find(|r| r.p == p).map(|r| {
            let mut asc = parse_rationals(&r.reduced_descending);
            asc.reverse();
            RationalPolynomial::new(asc)
        })
    }

    /// The displayed `(t − 1)^k · f_reduced`.
    pub fn charpoly(&self, p: u32) -> Option<RationalPolynomial> {
        let row = self.manifest.charpolys.iter().find(|r| r.p == p)?;
        let reduced = self.reduced_charpoly(p)?;
        Some(
            RationalPolynomial::linear_root(1)
                .pow(row.unit_factor_exponent)
                .mul(&reduced),
        )
    }

    /// Determinants of the intersection matrices as printed.
    pub fn stated_determinant(&self, p: u32) -> Option<i64> {
        self.manifest
            .intersection_determinants
            .iter()
            .find(|r| r.p == p)
            .map(|r| r.determinant)
    }

    pub fn picard_number(&self) -> u32 {
        self.manifest.picard_number
    }
}
