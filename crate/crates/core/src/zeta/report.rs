use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, ErrorClass, Result};
use crate::format::{rats, Int, Rat};
use crate::lattice::even_overlattice_discs;
use crate::surface::{
    assemble_divisor_gram, basis_change_to_d, default_singular_search_degree, line_contained,
    singular_point_search, vanishes_on_scheme_c, DivisorBasis, HomogeneousForm, SingularPoint,
    SurfaceSpec,
};
use crate::weyl::{CertificateInput, CertificateReport};

use super::cache::{reduction_hash, CacheRecord, CountCache};
use super::charpoly::{
    complete_functional_equation, newton_coefficients, picard_upper_bound,
    polynomial_from_coefficients, square_class_distinct, squarefree_part,
    trace_from_count_with_rank, unit_root_multiplicity, unit_root_order_bound, FunctionalEquation,
    FunctionalEquationSign, K3_SECOND_BETTI,
};
use super::count::{count_points_with, counting_cost, CountOptions, CountRecord};
use super::poly::RationalPolynomial;
use super::reference::ReferenceData;

#[derive(Clone, Debug)]
pub struct VanLuijkConfig {
    /// Primes to run; defaults to the primes carrying extra lines in the spec.
    pub primes: Option<Vec<u32>>,
    /// Largest `n` to compute per prime; the cost policy still applies.
    pub max_computed_n: Option<u32>,
    pub count_options: CountOptions,
    /// Fall back to the bundled published counts when the reduction matches.
    pub use_reference_counts: bool,
    pub cache: Option<CountCache>,
    pub reference_compare: bool,
    /// Overrides the default singular-point search degree.
    pub singular_search_degree: Option<u32>,
}

impl Default for VanLuijkConfig {
    fn default() -> Self {
        VanLuijkConfig {
            primes: None,
            max_computed_n: None,
            count_options: CountOptions::default(),
            use_reference_counts: true,
            cache: None,
            reference_compare: false,
            singular_search_degree: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SurfaceStage {
    pub name: String,
    pub quartic: String,
    pub vanishes_on_scheme_c: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LineCheck {
    pub label: String,
    pub contained: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SingularSearch {
    pub max_extension_degree: u32,
    pub points: Vec<SingularPoint>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct PrimeStage {
    pub p: u32,
    pub reduced_quartic: String,
    pub reduction_hash: String,
    pub lines: Vec<LineCheck>,
    pub singular_search: Option<SingularSearch>,
    pub divisor_gram: Option<DivisorBasis>,
    pub determinant: Option<Int>,
    pub counts: Vec<CountRecord>,
    pub traces: Vec<Rat>,
    pub coefficients: Vec<Rat>,
    pub functional_equation_sign: Option<FunctionalEquationSign>,
    pub all_coefficients: Vec<Rat>,
    pub reduced_charpoly: Option<RationalPolynomial>,
    pub charpoly: Option<RationalPolynomial>,
    pub unit_root_order_bound: Option<u64>,
    pub unit_root_multiplicity: Option<usize>,
    pub picard_upper_bound: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SquareClassStage {
    pub determinants: Vec<Int>,
    pub squarefree_parts: Vec<Int>,
    pub distinct: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub item: String,
    pub expected: String,
    pub actual: String,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct StageFailure {
    pub stage: String,
    pub class: ErrorClass,
    pub message: String,
}

/// Every intermediate value of the Picard-number argument, stage by stage.
/// A failing stage leaves the later fields empty and is named in `failure`.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub surface: Option<SurfaceStage>,
    pub primes: Vec<PrimeStage>,
    pub square_classes: Option<SquareClassStage>,
    pub geometric_picard_number: Option<usize>,
    pub lattice_gram: Option<Vec<Vec<Int>>>,
    pub even_overlattice_discriminants: Option<Vec<Int>>,
    pub certificate: Option<CertificateReport>,
    pub reference_comparison: Vec<Comparison>,
    pub remarks: Vec<String>,
    pub failure: Option<StageFailure>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    pub fn exit_code(&self) -> i32 {
        self.failure.as_ref().map_or(0, |f| f.class.exit_code())
    }
}

struct Failed(String, Error);

trait StageExt<T> {
    fn at(self, stage: &str) -> std::result::Result<T, Failed>;
}

impl<T> StageExt<T> for Result<T> {
    fn at(self, stage: &str) -> std::result::Result<T, Failed> {
        self.map_err(|e| Failed(stage.to_string(), e))
    }
}

fn check(cond: bool, stage: &str, message: impl Into<String>) -> std::result::Result<(), Failed> {
    if cond {
        Ok(())
    } else {
        let msg = message.into();
        Err(Failed(stage.to_string(), Error::stage(stage, msg)))
    }
}

const REMARKS: [&str; 3] = [
    "smoothness over the rationals is inferred from smoothness of a reduction; the singular-point \
     search is bounded and is evidence of smoothness, not a proof",
    "the root-of-unity count is an upper bound for the geometric Picard number of each reduction; \
     equality would follow from the Tate conjecture, which is not used",
    "counts tagged 'supplied' are published values and were not recomputed",
];

/// Runs the whole argument for a surface: containment of lines, intersection
/// matrices, point counts, characteristic polynomials and root-of-unity
/// elimination at each prime, the square-class comparison, and finally the
/// lattice non-normality certificate.
pub fn run_van_luijk(spec: &SurfaceSpec, config: &VanLuijkConfig) -> VerificationReport {
    let mut report = VerificationReport {
        surface: None,
        primes: Vec::new(),
        square_classes: None,
        geometric_picard_number: None,
        lattice_gram: None,
        even_overlattice_discriminants: None,
        certificate: None,
        reference_comparison: Vec::new(),
        remarks: REMARKS.iter().map(|s| s.to_string()).collect(),
        failure: None,
    };
    if let Err(Failed(stage, e)) = run(spec, config, &mut report) {
        let message = match &e {
            Error::Stage { message, .. } => message.clone(),
            other => other.to_string(),
        };
        report.failure = Some(StageFailure {
            stage,
            class: e.class(),
            message,
        });
    }
    report
}

fn run(
    spec: &SurfaceSpec,
    config: &VanLuijkConfig,
    report: &mut VerificationReport,
) -> std::result::Result<(), Failed> {
    let h = spec.quartic().at("surface")?;
    let on_c = vanishes_on_scheme_c(&h);
    report.surface = Some(SurfaceStage {
        name: spec.name.clone(),
        quartic: h.to_string(),
        vanishes_on_scheme_c: on_c,
    });
    check(on_c, "surface", "quartic does not contain the scheme C")?;

    let reference = ReferenceData::bundled();
    let example = SurfaceSpec::bundled_example().quartic().at("surface")?;
    let primes = config.primes.clone().unwrap_or_else(|| spec.primes());
    check(!primes.is_empty(), "surface", "no primes to run")?;

    for &p in &primes {
        let stage = run_prime(spec, &h, &example, &reference, config, p, report)?;
        report.primes.push(stage);
        let stage = report.primes.last_mut().expect("just pushed");
        finish_prime(
            stage,
            p,
            config,
            &reference,
            &mut report.reference_comparison,
        )?;
    }

    let dets: Vec<BigInt> = report
        .primes
        .iter()
        .map(|s| s.determinant.clone().expect("set by run_prime").0)
        .collect();
    let distinct = dets.len() >= 2
        && (0..dets.len()).all(|i| {
            (i + 1..dets.len()).all(|j| square_class_distinct(&dets[i], &dets[j]).unwrap_or(false))
        });
    report.square_classes = Some(SquareClassStage {
        determinants: dets.iter().cloned().map(Int).collect(),
        squarefree_parts: dets.iter().map(|d| Int(squarefree_part(d))).collect(),
        distinct,
    });
    check(
        distinct,
        "square-classes",
        "intersection discriminants of the reductions lie in the same square class",
    )?;

    // H, L0, L1 are independent on every reduction and each bound equals the
    // number of known classes, so the rank over Q-bar is the rank of <H, L0, L1>
    let base = &report.primes[0];
    let divisor_rank = base.divisor_gram.as_ref().expect("set").labels.len();
    for s in &report.primes {
        check(
            s.picard_upper_bound == Some(divisor_rank),
            &format!("picard-bound p={}", s.p),
            format!(
                "upper bound {:?} differs from the {divisor_rank} known classes",
                s.picard_upper_bound
            ),
        )?;
    }
    report.geometric_picard_number = Some(divisor_rank - 1);

    let first_lines = spec.lines_at(primes[0]).at("lattice")?;
    let three = assemble_divisor_gram(&h, &first_lines[..2], primes[0]).at("lattice")?;
    let lat = basis_change_to_d(&three).at("lattice")?;
    report.lattice_gram = Some(crate::format::int_rows(lat.gram()));
    let discs = even_overlattice_discs(&lat).at("lattice")?;
    report.even_overlattice_discriminants = Some(discs.into_iter().map(Int).collect());
    let mut input = CertificateInput::bundled();
    input.gram = crate::format::int_rows(lat.gram())
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|c| i64::try_from(&c.0).expect("small entries"))
                .collect()
        })
        .collect();
    let cert = input.certify().at("certificate")?;
    report.certificate = Some(cert.report());

    if config.reference_compare {
        if let Some(bad) = report.reference_comparison.iter().find(|c| !c.matches) {
            let msg = format!(
                "{}: expected {}, got {}",
                bad.item, bad.expected, bad.actual
            );
            return Err(Failed(
                "reference-compare".into(),
                Error::stage("reference-compare", msg),
            ));
        }
    }
    Ok(())
}

fn run_prime(
    spec: &SurfaceSpec,
    h: &HomogeneousForm,
    example: &HomogeneousForm,
    reference: &ReferenceData,
    config: &VanLuijkConfig,
    p: u32,
    report: &mut VerificationReport,
) -> std::result::Result<PrimeStage, Failed> {
    let lines_stage = format!("lines p={p}");
    let mut stage = PrimeStage {
        p,
        reduced_quartic: h.reduce_mod(p).to_string(),
        reduction_hash: reduction_hash(h, p),
        ..PrimeStage::default()
    };
    let lines = spec.lines_at(p).at(&lines_stage)?;
    for l in &lines {
        let contained = line_contained(l, h, p).at(&lines_stage)?;
        stage.lines.push(LineCheck {
            label: l.label.clone(),
            contained,
        });
    }
    if let Some(bad) = stage.lines.iter().find(|l| !l.contained) {
        let err = Error::LineNotContained(format!("{} (p = {p})", bad.label));
        report.primes.push(stage);
        return Err(Failed(lines_stage, err));
    }

    let smooth_stage = format!("smoothness p={p}");
    let degree = config
        .singular_search_degree
        .unwrap_or_else(|| default_singular_search_degree(p));
    let points = singular_point_search(h, p, degree).at(&smooth_stage)?;
    let singular = !points.is_empty();
    stage.singular_search = Some(SingularSearch {
        max_extension_degree: degree,
        points,
    });
    if singular {
        report.primes.push(stage);
        return Err(Failed(
            smooth_stage.clone(),
            Error::stage(&smooth_stage, "the reduction has singular points"),
        ));
    }

    let gram_stage = format!("intersection p={p}");
    let basis = assemble_divisor_gram(h, &lines, p).at(&gram_stage)?;
    let det = basis.discriminant();
    stage.divisor_gram = Some(basis);
    stage.determinant = Some(Int(det.clone()));
    if det == BigInt::from(0) {
        report.primes.push(stage);
        return Err(Failed(
            gram_stage.clone(),
            Error::stage(&gram_stage, "divisor classes are dependent"),
        ));
    }

    let count_stage = format!("count p={p}");
    let needed = (K3_SECOND_BETTI - lines.len() - 1) as u32 / 2;
    let hash = stage.reduction_hash.clone();
    let reference_applies = config.use_reference_counts && reduction_hash(example, p) == hash;
    match acquire_counts(h, p, needed, &hash, reference_applies, reference, config) {
        Ok(counts) => stage.counts = counts,
        Err(e) => {
            report.primes.push(stage);
            return Err(Failed(count_stage, e));
        }
    }
    Ok(stage)
}

fn acquire_counts(
    h: &HomogeneousForm,
    p: u32,
    needed: u32,
    hash: &str,
    reference_applies: bool,
    reference: &ReferenceData,
    config: &VanLuijkConfig,
) -> Result<Vec<CountRecord>> {
    let mut out = Vec::new();
    for n in 1..=needed {
        if let Some(cache) = &config.cache {
            if let Some(rec) = cache.lookup(hash, p, n)? {
                out.push(rec.record());
                continue;
            }
        }
        let within_cap = config.max_computed_n.is_none_or(|m| n <= m);
        if within_cap && counting_cost(p, n) <= config.count_options.cost_limit {
            let start = Instant::now();
            let rec = count_points_with(h, p, n, &config.count_options)?;
            if let Some(cache) = &config.cache {
                cache.append(&CacheRecord {
                    surface_hash: hash.to_string(),
                    p,
                    n,
                    count: rec.count,
                    source: rec.source,
                    wall_time_ms: start.elapsed().as_millis() as u64,
                })?;
            }
            out.push(rec);
            continue;
        }
        match reference.count(p, n).filter(|_| reference_applies) {
            Some(rec) => out.push(rec),
            None => break,
        }
    }
    for rec in &out {
        if !rec.is_plausible() {
            return Err(Error::stage(
                "count",
                format!("count {} exceeds the size of projective space", rec.count),
            ));
        }
    }
    Ok(out)
}

fn finish_prime(
    stage: &mut PrimeStage,
    p: u32,
    config: &VanLuijkConfig,
    reference: &ReferenceData,
    comparisons: &mut Vec<Comparison>,
) -> std::result::Result<(), Failed> {
    let divisor_rank = stage.divisor_gram.as_ref().expect("set").labels.len();
    let reduced_degree = K3_SECOND_BETTI - divisor_rank;
    let needed = reduced_degree / 2;
    let charpoly_stage = format!("charpoly p={p}");

    let traces: Vec<BigRational> = stage
        .counts
        .iter()
        .map(|r| trace_from_count_with_rank(r, divisor_rank))
        .collect();
    stage.traces = rats(&traces);
    if traces.len() < needed {
        return Err(Failed(
            charpoly_stage,
            Error::InsufficientTraces {
                needed,
                have: traces.len(),
            },
        ));
    }
    let c = newton_coefficients(&traces[..needed]);
    stage.coefficients = rats(&c);
    if config.reference_compare {
        if let Some(expected) = reference.coefficients(p) {
            comparisons.push(compare_list(&format!("c1..c9 p={p}"), &expected, &c));
        }
        for rec in stage
            .counts
            .iter()
            .filter(|r| r.source == super::CountSource::Computed)
        {
            if let Some(expected) = reference.count(p, rec.n) {
                comparisons.push(Comparison {
                    item: format!("count p={p} n={}", rec.n),
                    expected: expected.count.to_string(),
                    actual: rec.count.to_string(),
                    matches: expected.count == rec.count,
                });
            }
        }
    }

    let fe = complete_functional_equation(&c);
    stage.functional_equation_sign = Some(fe.sign());
    let FunctionalEquation::Positive(all) = fe else {
        return Err(Failed(charpoly_stage, Error::SignUndetermined));
    };
    stage.all_coefficients = rats(&all);
    let reduced = polynomial_from_coefficients(&all);
    let full = RationalPolynomial::linear_root(1)
        .pow(divisor_rank as u32)
        .mul(&reduced);
    if config.reference_compare {
        if let Some(expected) = reference.charpoly(p) {
            comparisons.push(Comparison {
                item: format!("f_p p={p}"),
                expected: expected.to_string(),
                actual: full.to_string(),
                matches: expected == full,
            });
        }
    }
    stage.reduced_charpoly = Some(reduced.clone());
    stage.charpoly = Some(full);

    let bound_stage = format!("picard-bound p={p}");
    let order = unit_root_order_bound(reduced_degree as u64);
    stage.unit_root_order_bound = Some(order);
    let mult = unit_root_multiplicity(&reduced, order).at(&bound_stage)?;
    stage.unit_root_multiplicity = Some(mult);
    stage.picard_upper_bound = Some(picard_upper_bound(&reduced, divisor_rank).at(&bound_stage)?);
    Ok(())
}

fn compare_list(item: &str, expected: &[BigRational], actual: &[BigRational]) -> Comparison {
    let show = |v: &[BigRational]| {
        v.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    };
    Comparison {
        item: item.to_string(),
        expected: show(expected),
        actual: show(actual),
        matches: expected == actual,
    }
}
