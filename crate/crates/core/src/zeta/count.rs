use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldTower, ZechElement, ZechField};
use crate::surface::HomogeneousForm;

/// Default cost ceiling, in form evaluations (`q³`), for computed counts.
pub const DEFAULT_COST_LIMIT: u128 = 500_000_000;

/// Cost ceiling with the long-running flag; admits `q = 3⁷`.
pub const LONG_COST_LIMIT: u128 = 11_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountSource {
    Computed,
    Supplied,
}

impl fmt::Display for CountSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CountSource::Computed => "computed",
            CountSource::Supplied => "supplied",
        })
    }
}

/// `#X(𝔽_{pⁿ})` with its provenance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRecord {
    pub p: u32,
    pub n: u32,
    pub count: u64,
    pub source: CountSource,
}

impl CountRecord {
    pub fn supplied(p: u32, n: u32, count: u64) -> Self {
        CountRecord {
            p,
            n,
            count,
            source: CountSource::Supplied,
        }
    }

    /// `#ℙ³(𝔽_q) = q³ + q² + q + 1`.
    pub fn projective_space_size(&self) -> u128 {
        let q = (self.p as u128).pow(self.n);
        q * q * q + q * q + q + 1
    }

    pub fn is_plausible(&self) -> bool {
        (self.count as u128) <= self.projective_space_size()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountOptions {
    pub threads: usize,
    pub cost_limit: u128,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
            cost_limit: DEFAULT_COST_LIMIT,
        }
    }
}

impl CountOptions {
    pub fn with_threads(threads: usize) -> Self {
        CountOptions {
            threads: threads.max(1),
            ..Self::default()
        }
    }

    pub fn long(mut self, long: bool) -> Self {
        self.cost_limit = if long {
            LONG_COST_LIMIT
        } else {
            DEFAULT_COST_LIMIT
        };
        self
    }
}

/// `q³` for `q = pⁿ`.
pub fn counting_cost(p: u32, n: u32) -> u128 {
    (p as u128).pow(n).pow(3)
}

pub fn count_points(form: &HomogeneousForm, p: u32, n: u32) -> Result<CountRecord> {
    count_points_with(form, p, n, &CountOptions::default())
}

pub fn count_points_with(
    form: &HomogeneousForm,
    p: u32,
    n: u32,
    opts: &CountOptions,
) -> Result<CountRecord> {
    if form.degree() != 4 {
        return Err(Error::NotHomogeneous);
    }
    let cost = counting_cost(p, n);
    if cost > opts.cost_limit {
        return Err(Error::CostRefused { p, n, cost });
    }
    let field = FieldTower::with_max_degree(p, n, n.max(1))?;
    let count = count_points_in_field(form, &field, opts.threads)?;
    Ok(CountRecord {
        p,
        n,
        count,
        source: CountSource::Computed,
    })
}

/// A monomial in the middle coordinates with its coefficient.
#[derive(Clone, Copy)]
struct ChartTerm {
    coeff: ZechElement,
    /// Exponents of the two coordinates strictly between the leading one and `w`.
    middle: [u32; 2],
}

/// Projective zeros normalized so that the first nonzero coordinate is 1.
/// For each leading position the trailing coordinate `w` is scanned by
/// Horner evaluation of the form as a polynomial in `w`, with all arithmetic
/// in Zech-logarithm form.
pub fn count_points_in_field(
    form: &HomogeneousForm,
    field: &FieldTower,
    threads: usize,
) -> Result<u64> {
    let zech = field.zech();
    let reduced = form.reduce_mod(field.characteristic());
    let q = field.size();
    let degree = form.degree() as usize;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::stage("count", e.to_string()))?;

    let mut total = 0u64;
    for lead in 0..4usize {
        if lead == 3 {
            if reduced.coefficient(&[0, 0, 0, degree as u32]) == 0 {
                total += 1;
            }
            continue;
        }
        // terms surviving x_j = 0 for j < lead, grouped by the power of w
        let mut by_w: Vec<Vec<ChartTerm>> = vec![Vec::new(); degree + 1];
        for (e, c) in reduced.terms() {
            if e[..lead].iter().any(|&k| k > 0) {
                continue;
            }
            let mut middle = [0u32; 2];
            for (slot, j) in (lead + 1..3).enumerate() {
                middle[slot] = e[j];
            }
            by_w[e[3] as usize].push(ChartTerm {
                coeff: zech.encode(field, field.from_int(*c)),
                middle,
            });
        }
        let free_middle = 2 - lead;
        let values: Vec<ZechElement> = std::iter::once(ZechField::ZERO)
            .chain((0..q - 1).map(|k| zech.from_log(k)))
            .collect();
        let count_for_first = |first: ZechElement| -> u64 {
            let seconds: &[ZechElement] = if free_middle == 2 {
                &values
            } else {
                &values[..1]
            };
            let mut sub = 0u64;
            let mut coeffs = vec![ZechField::ZERO; degree + 1];
            for &second in seconds {
                let mid = [first, second];
                for (k, terms) in by_w.iter().enumerate() {
                    let mut a = ZechField::ZERO;
                    for t in terms {
                        let mut v = t.coeff;
                        for (slot, &e) in t.middle.iter().enumerate() {
                            if e > 0 {
                                v = zech.mul(v, zech.pow(mid[slot], e));
                            }
                        }
                        a = zech.add(a, v);
                    }
                    coeffs[k] = a;
                }
                sub += count_roots(&zech, &coeffs, &values);
            }
            sub
        };
        total += match free_middle {
            0 => count_for_first(ZechField::ZERO),
            _ => pool.install(|| values.par_iter().map(|&v| count_for_first(v)).sum::<u64>()),
        };
    }
    Ok(total)
}

/// Number of `w ∈ 𝔽_q` with `Σ coeffs[k]·wᵏ = 0`.
#[inline]
fn count_roots(zech: &ZechField, coeffs: &[ZechElement], values: &[ZechElement]) -> u64 {
    let Some(top) = coeffs.iter().rposition(|c| !zech.is_zero(*c)) else {
        return values.len() as u64;
    };
    if top == 0 {
        return 0;
    }
    let mut roots = 0;
    for &w in values {
        let mut acc = coeffs[top];
        for k in (0..top).rev() {
            acc = zech.add(zech.mul(acc, w), coeffs[k]);
        }
        if zech.is_zero(acc) {
            roots += 1;
        }
    }
    roots
}

/// Independent count through `ℙ³ = 𝔸³ ∪ ℙ²` (normalizing the last nonzero
/// coordinate), evaluating every monomial directly with table arithmetic.
pub fn count_points_affine_decomposition(form: &HomogeneousForm, field: &FieldTower) -> u64 {
    let reduced = form.reduce_mod(field.characteristic());
    let elems: Vec<FieldElement> = field.enumerate().collect();
    let mut total = 0;
    // affine piece of ℙ^k: coordinate k is 1, coordinates above k are 0
    for k in (0..4).rev() {
        let free = k;
        let cells = elems.len().pow(free as u32);
        for mut idx in 0..cells {
            let mut pt = [field.zero(); 4];
            pt[k] = field.one();
            for slot in pt[..k].iter_mut() {
                *slot = elems[idx % elems.len()];
                idx /= elems.len();
            }
            if reduced.evaluate(field, &pt).is_zero() {
                total += 1;
            }
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{irreducible_polynomials, make_field};
    use crate::surface::build_example_quartic;

    fn form(terms: &[(&str, i64)]) -> HomogeneousForm {
        HomogeneousForm::from_monomials(4, terms).unwrap()
    }

    #[test]
    fn plane_with_multiplicity() {
        let x4 = form(&[("x^4", 1)]);
        for (p, n) in [(2, 1), (2, 3), (3, 1), (3, 2)] {
            let q = (p as u64).pow(n);
            assert_eq!(count_points(&x4, p, n).unwrap().count, q * q + q + 1);
        }
    }

    #[test]
    fn small_example_counts() {
        let h = build_example_quartic();
        assert_eq!(count_points(&h, 2, 1).unwrap().count, 9);
        assert_eq!(count_points(&h, 3, 1).unwrap().count, 21);
        assert_eq!(count_points(&h, 2, 2).unwrap().count, 33);
        assert_eq!(count_points(&h, 3, 2).unwrap().count, 95);
    }

    #[test]
    fn strategies_agree() {
        let h = build_example_quartic();
        let w4 = form(&[("w^4", 1), ("x*y*z*w", 1)]);
        for (p, n) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)] {
            let f = make_field(p, n).unwrap();
            for g in [&h, &w4] {
                assert_eq!(
                    count_points_in_field(g, &f, 2).unwrap(),
                    count_points_affine_decomposition(g, &f),
                    "F_{p}^{n}: {g}"
                );
            }
        }
    }

    #[test]
    fn thread_count_does_not_matter() {
        let h = build_example_quartic();
        let f = make_field(2, 4).unwrap();
        let one = count_points_in_field(&h, &f, 1).unwrap();
        assert_eq!(one, count_points_in_field(&h, &f, 3).unwrap());
        assert_eq!(one, 257);
    }

    #[test]
    fn modulus_choice_does_not_matter() {
        let h = build_example_quartic();
        for (p, n) in [(2, 3), (3, 2)] {
            let counts: Vec<u64> = irreducible_polynomials(p, n)
                .take(2)
                .map(|m| FieldTower::with_modulus(p, m).unwrap())
                .map(|f| count_points_in_field(&h, &f, 2).unwrap())
                .collect();
            assert_eq!(counts[0], counts[1]);
        }
    }

    #[test]
    fn refusal_and_validation() {
        let h = build_example_quartic();
        assert!(matches!(
            count_points(&h, 3, 8),
            Err(Error::CostRefused { p: 3, n: 8, .. })
        ));
        let opts = CountOptions::with_threads(1).long(true);
        assert!(matches!(
            count_points_with(&h, 3, 8, &opts),
            Err(Error::CostRefused { .. })
        ));
        assert_eq!(counting_cost(3, 6), 387_420_489);
        let quad = HomogeneousForm::from_monomials(2, &[("x^2", 1)]).unwrap();
        assert!(count_points(&quad, 2, 1).is_err());
        let rec = CountRecord::supplied(2, 1, 16);
        assert!(!rec.is_plausible());
        assert!(CountRecord::supplied(2, 1, 15).is_plausible());
    }
}
