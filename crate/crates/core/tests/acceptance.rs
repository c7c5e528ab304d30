//! Acceptance criteria, one pass/fail line each. Runs without the libtest
//! harness so the criteria execute in order and share the count cache.

mod common;

use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::strategy::Strategy;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use k3weyl_core::lattice::{even_overlattice_discs, invariant_sublattice, GroupAction, Lattice};
use k3weyl_core::matrix::IntMatrix;
use k3weyl_core::surface::{
    assemble_divisor_gram, basis_change_to_d, build_example_quartic, SurfaceSpec,
};
use k3weyl_core::weyl::CertificateInput;
use k3weyl_core::zeta::{
    count_points_with, cyclotomic, reduction_hash, run_van_luijk, square_class_distinct,
    unit_root_order_bound, CacheRecord, CountCache, CountOptions, CountSource,
    FunctionalEquationSign, ReferenceData, VanLuijkConfig, VerificationReport,
};

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rat(s: &str) -> BigRational {
    BigRational::from_str(s).unwrap()
}

fn rows(m: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_i64(m)
}

fn within(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    f()?;
    let took = start.elapsed();
    ensure(took <= limit, || format!("took {took:?}, limit {limit:?}"))
}

fn criterion_lattice_counterexample() -> Outcome {
    within(Duration::from_secs(1), || {
        let cert = CertificateInput::bundled()
            .certify()
            .map_err(|e| e.to_string())?;
        cert.verify().map_err(|e| e.to_string())?;
        let r = cert.report();
        let show = |v: &dyn std::fmt::Debug| format!("{v:?}");
        ensure(cert.lattice.discriminant() == BigInt::from(20), || {
            format!("disc {}", cert.lattice.discriminant())
        })?;
        let basis: Vec<Vec<BigInt>> = cert.invariant.basis().into_iter().map(|v| v.0).collect();
        let expected_basis = vec![
            vec![1.into(), 0.into(), 0.into()],
            vec![0.into(), 1.into(), 1.into()],
        ];
        ensure(basis == expected_basis, || show(&basis))?;
        ensure(
            cert.invariant.restricted_gram() == &rows(&[&[-4, 6], &[6, -4]]),
            || show(cert.invariant.restricted_gram()),
        )?;
        // x ↦ −x, d ↦ 3x + d as columns
        ensure(cert.beta.matrix() == &rows(&[&[-1, 3], &[0, 1]]), || {
            show(cert.beta.matrix())
        })?;
        let eqs: Vec<(Vec<i64>, i64)> = r
            .obstruction
            .equations
            .iter()
            .map(|e| {
                (
                    e.coeffs
                        .iter()
                        .map(|c| i64::try_from(&c.0).unwrap())
                        .collect(),
                    i64::try_from(&e.rhs.0).unwrap(),
                )
            })
            .collect();
        ensure(
            eqs == vec![(vec![4, -3, -3], 3), (vec![-6, 7, 7], -2)],
            || show(&eqs),
        )?;
        ensure(!cert.obstruction.solvable, || "system solvable".into())?;
        let half = |n: i64| BigRational::new(n.into(), 2.into());
        let int = |n: i64| BigRational::from_integer(n.into());
        let first = vec![
            vec![int(-1), half(3), half(3)],
            vec![int(0), int(1), int(0)],
            vec![int(0), int(0), int(1)],
        ];
        let second = vec![
            vec![int(-1), half(3), half(3)],
            vec![int(0), int(0), int(1)],
            vec![int(0), int(1), int(0)],
        ];
        let witnesses: Vec<Vec<Vec<BigRational>>> =
            cert.witnesses.iter().map(|w| w.matrix.to_rows()).collect();
        ensure(witnesses.len() == 2, || {
            format!("{} witnesses", witnesses.len())
        })?;
        ensure(
            witnesses.contains(&first) && witnesses.contains(&second),
            || show(&witnesses),
        )?;
        ensure(
            cert.witnesses
                .iter()
                .all(|w| w.denominator == BigInt::from(2)),
            || "denominator differs from 2".into(),
        )
    })
}

fn criterion_degenerate_example() -> Outcome {
    within(Duration::from_secs(1), || {
        let lat =
            Lattice::from_i64(&[&[0, 0, 2], &[0, -2, 1], &[2, 1, 0]]).map_err(|e| e.to_string())?;
        // x ↦ x, y ↦ x + y, z ↦ y + z
        let sigma = rows(&[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]]);
        let g = GroupAction::from_matrices(&lat, vec![sigma]).map_err(|e| e.to_string())?;
        let sub = invariant_sublattice(&lat, &g).map_err(|e| e.to_string())?;
        let basis: Vec<Vec<BigInt>> = sub.basis().into_iter().map(|v| v.0).collect();
        ensure(basis == vec![vec![1.into(), 0.into(), 0.into()]], || {
            format!("basis {basis:?}")
        })?;
        ensure(sub.is_degenerate(), || "degenerate flag not set".into())
    })
}

fn criterion_overlattices() -> Outcome {
    within(Duration::from_secs(1), || {
        let lat = CertificateInput::bundled()
            .lattice()
            .map_err(|e| e.to_string())?;
        let discs = even_overlattice_discs(&lat).map_err(|e| e.to_string())?;
        ensure(discs == vec![BigInt::from(20)], || format!("{discs:?}"))
    })
}

fn criterion_intersection_data() -> Outcome {
    within(Duration::from_secs(1), || {
        let h = build_example_quartic();
        let spec = SurfaceSpec::bundled_example();
        let reference = ReferenceData::bundled();
        let expected = [
            (
                2,
                rows(&[
                    &[4, 1, 1, 1],
                    &[1, -2, 0, 0],
                    &[1, 0, -2, 0],
                    &[1, 0, 0, -2],
                ]),
            ),
            (
                3,
                rows(&[
                    &[4, 1, 1, 1],
                    &[1, -2, 0, 1],
                    &[1, 0, -2, 1],
                    &[1, 1, 1, -2],
                ]),
            ),
        ];
        let mut problems = Vec::new();
        let mut dets = Vec::new();
        for (p, gram) in &expected {
            let lines = spec.lines_at(*p).map_err(|e| e.to_string())?;
            let basis = assemble_divisor_gram(&h, &lines, *p).map_err(|e| e.to_string())?;
            if &basis.gram != gram {
                problems.push(format!("gram p={p}: {:?}", basis.gram.to_rows()));
            }
            let det = basis.discriminant();
            let stated = BigInt::from(reference.stated_determinant(*p).unwrap());
            if det != stated {
                problems.push(format!(
                    "determinant p={p}: computed {det}, stated {stated}"
                ));
            }
            dets.push(det);
        }
        if !square_class_distinct(&dets[0], &dets[1]).map_err(|e| e.to_string())? {
            problems.push("square classes coincide".into());
        }
        let lines = spec.lines_at(2).map_err(|e| e.to_string())?;
        let three = assemble_divisor_gram(&h, &lines[..2], 2).map_err(|e| e.to_string())?;
        let lat = basis_change_to_d(&three).map_err(|e| e.to_string())?;
        if lat.gram() != &rows(&[&[-4, 3, 3], &[3, -2, 0], &[3, 0, -2]]) {
            problems.push(format!("D-basis gram {:?}", lat.gram().to_rows()));
        }
        ensure(problems.is_empty(), || problems.join("; "))
    })
}

const COUNTS_2: [u64; 9] = [9, 33, 105, 257, 1249, 4161, 17089, 65537, 264705];
const COUNTS_3: [u64; 6] = [21, 95, 819, 6983, 59406, 534179];

fn criterion_point_counts(cache: &CountCache) -> Outcome {
    within(Duration::from_secs(600), || {
        let h = build_example_quartic();
        let opts = CountOptions::with_threads(4);
        let mut problems = Vec::new();
        for (p, expected) in [(2u32, &COUNTS_2[..]), (3, &COUNTS_3[..])] {
            let hash = reduction_hash(&h, p);
            for (i, &want) in expected.iter().enumerate() {
                let n = i as u32 + 1;
                let start = Instant::now();
                let rec = count_points_with(&h, p, n, &opts).map_err(|e| e.to_string())?;
                if rec.count != want {
                    problems.push(format!("p={p} n={n}: {} != {want}", rec.count));
                }
                cache
                    .append(&CacheRecord {
                        surface_hash: hash.clone(),
                        p,
                        n,
                        count: rec.count,
                        source: rec.source,
                        wall_time_ms: start.elapsed().as_millis() as u64,
                    })
                    .map_err(|e| e.to_string())?;
            }
        }
        // the two published counts that are not recomputed carry the supplied tag
        let reference = ReferenceData::bundled();
        for n in [8, 9] {
            let rec = reference.count(3, n).unwrap();
            if rec.source != CountSource::Supplied {
                problems.push(format!("p=3 n={n} not tagged supplied"));
            }
        }
        ensure(problems.is_empty(), || problems.join("; "))
    })
}

fn pipeline(cache: &CountCache) -> VerificationReport {
    let config = VanLuijkConfig {
        count_options: CountOptions::with_threads(4),
        cache: Some(cache.clone()),
        reference_compare: true,
        ..VanLuijkConfig::default()
    };
    run_van_luijk(&SurfaceSpec::bundled_example(), &config)
}

fn criterion_coefficients(report: &VerificationReport) -> Outcome {
    let expected = [
        (2, ["2", "2", "1", "1", "1", "1", "1/2", "1", "1"]),
        (
            3,
            ["1/3", "4/3", "2/3", "2/3", "1", "1/3", "0", "1", "-2/3"],
        ),
    ];
    let mut problems = Vec::new();
    for (p, want) in expected {
        let want: Vec<BigRational> = want.iter().map(|s| rat(s)).collect();
        let stage = report.primes.iter().find(|s| s.p == p);
        let got: Vec<BigRational> = stage
            .map(|s| s.coefficients.iter().map(|c| c.0.clone()).collect())
            .unwrap_or_default();
        if got != want {
            problems.push(format!("p={p}: {got:?}"));
        }
    }
    ensure(problems.is_empty(), || problems.join("; "))
}

fn criterion_charpolys(report: &VerificationReport) -> Outcome {
    let reference = ReferenceData::bundled();
    let mut problems = Vec::new();
    for p in [2, 3] {
        let Some(stage) = report.primes.iter().find(|s| s.p == p) else {
            problems.push(format!("p={p} missing"));
            continue;
        };
        if stage.charpoly != reference.charpoly(p) {
            problems.push(format!("f_{p} differs"));
        }
        if stage.charpoly.as_ref().and_then(|f| f.degree()) != Some(22) {
            problems.push(format!("f_{p} degree"));
        }
        if stage.functional_equation_sign != Some(FunctionalEquationSign::Positive) {
            problems.push(format!("sign p={p}"));
        }
        if stage.coefficients.get(8).is_none_or(|c| c.0 == rat("0")) {
            problems.push(format!("c9 p={p} vanishes"));
        }
        if stage.all_coefficients.get(17).map(|c| c.0.clone()) != Some(rat("1")) {
            problems.push(format!("c18 p={p}"));
        }
    }
    ensure(problems.is_empty(), || problems.join("; "))
}

fn criterion_unit_roots(report: &VerificationReport) -> Outcome {
    let mut problems = Vec::new();
    let bound = unit_root_order_bound(18);
    if bound != 60 {
        problems.push(format!("order bound {bound}"));
    }
    for stage in &report.primes {
        let Some(f) = &stage.reduced_charpoly else {
            problems.push(format!("p={} has no polynomial", stage.p));
            continue;
        };
        for n in 1..=60 {
            if f.exact_div(&cyclotomic(n)).unwrap().is_some() {
                problems.push(format!("Phi_{n} divides f p={}", stage.p));
            }
        }
        if stage.picard_upper_bound != Some(4) {
            problems.push(format!(
                "bound p={}: {:?}",
                stage.p, stage.picard_upper_bound
            ));
        }
    }
    if report.primes.len() != 2 {
        problems.push(format!("{} primes", report.primes.len()));
    }
    if report.geometric_picard_number != Some(3) {
        problems.push(format!("rho {:?}", report.geometric_picard_number));
    }
    if let Some(f) = &report.failure {
        problems.push(format!("pipeline failed at {}: {}", f.stage, f.message));
    }
    ensure(problems.is_empty(), || problems.join("; "))
}

fn property<S: Strategy>(
    cases: u32,
    strategy: S,
    check: impl Fn(&S::Value) -> Result<(), TestCaseError>,
) -> Outcome {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&strategy, |v| check(&v))
        .map_err(|e| e.to_string())
}

fn criterion_properties() -> Outcome {
    use common::*;
    let mut problems = Vec::new();
    let mut record = |name: &str, r: Outcome| {
        if let Err(e) = r {
            problems.push(format!("{name}: {e}"));
        }
    };
    record(
        "reflections",
        property(1000, reflection_case(), check_reflection),
    );
    record(
        "even odd rank",
        property(200, even_odd_rank_gram(), check_even_odd_rank),
    );
    record(
        "cyclic actions",
        property(200, cyclic_action_case(), check_cyclic_action),
    );
    record(
        "modulus (2,3)",
        property(64, quartic(2), |f| check_modulus_invariance(2, 3, f)),
    );
    record(
        "modulus (3,2)",
        property(64, quartic(3), |f| check_modulus_invariance(3, 2, f)),
    );
    record(
        "dual strategy",
        property(128, dual_strategy_case(), check_dual_strategy),
    );
    record(
        "newton",
        property(256, proptest::collection::vec(rational(), 1..20), |t| {
            check_newton_round_trip(t)
        }),
    );
    let bad: Vec<u64> = (1..=60).filter(|&n| !cyclotomic_product_holds(n)).collect();
    record(
        "cyclotomic",
        ensure(bad.is_empty(), || format!("fails for {bad:?}")),
    );
    ensure(problems.is_empty(), || problems.join("; "))
}

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");
    let cache = CountCache::new(dir.path().join("counts.jsonl"));
    let mut failures = 0;
    let mut report_line = |id: u32, name: &str, outcome: Outcome, elapsed: Duration| match outcome {
        Ok(()) => println!("criterion {id} PASS {name} ({:.2?})", elapsed),
        Err(e) => {
            failures += 1;
            println!("criterion {id} FAIL {name} ({:.2?}): {e}", elapsed);
        }
    };
    let timed = |f: &dyn Fn() -> Outcome| {
        let start = Instant::now();
        let r = f();
        (r, start.elapsed())
    };

    let (r, t) = timed(&criterion_lattice_counterexample);
    report_line(1, "lattice counterexample certificate", r, t);
    let (r, t) = timed(&criterion_degenerate_example);
    report_line(2, "degenerate invariant sublattice", r, t);
    let (r, t) = timed(&criterion_overlattices);
    report_line(3, "even overlattice discriminants", r, t);
    let (r, t) = timed(&criterion_intersection_data);
    report_line(4, "intersection matrices and determinants", r, t);
    let (r, t) = timed(&|| criterion_point_counts(&cache));
    report_line(5, "point counts", r, t);

    let start = Instant::now();
    let report = pipeline(&cache);
    let pipeline_time = start.elapsed();
    let (r, t) = timed(&|| criterion_coefficients(&report));
    report_line(6, "trace coefficients c1..c9", r, t + pipeline_time);
    let (r, t) = timed(&|| criterion_charpolys(&report));
    report_line(7, "characteristic polynomials", r, t);
    let (r, t) = timed(&|| criterion_unit_roots(&report));
    report_line(8, "root-of-unity elimination and picard number", r, t);
    let (r, t) = timed(&criterion_properties);
    report_line(9, "property suites", r, t);

    println!("acceptance: {} of 9 criteria failed", failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
