//! Command-line front end: `certify`, `count` and `verify`.
//!
//! Exit codes: 0 success, 1 mathematical check failed, 2 input error,
//! 3 refused by the cost policy or missing counts.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::format::{int_rows, Int};
use crate::surface::SurfaceSpec;
use crate::weyl::{CertificateInput, CertificateReport};
use crate::zeta::{
    count_points_with, counting_cost, reduction_hash, run_van_luijk, CacheRecord, CountCache,
    CountOptions, CountRecord, VanLuijkConfig, VerificationReport,
};

#[derive(Parser, Debug)]
#[command(
    name = "k3weyl",
    version,
    about = "Weyl group certificates and Picard number bounds for quartic K3 surfaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Certify that the image of the invariant Weyl group is not normal.
    Certify(CertifyArgs),
    /// Count points of a quartic over F_{p^n}.
    Count(CountArgs),
    /// Run the full Picard number argument.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    /// Lattice data file (JSON); defaults to the bundled example.
    #[arg(long, value_name = "FILE")]
    pub lattice: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
}

#[derive(Args, Debug)]
pub struct SurfaceArgs {
    /// Surface spec file (JSON) or `bundled-example`.
    #[arg(long, value_name = "FILE", default_value = "bundled-example")]
    pub surface: String,
    /// Prime to run; repeat for several.
    #[arg(long = "p", value_name = "P")]
    pub primes: Vec<u32>,
    /// Smallest extension degree to count.
    #[arg(long, value_name = "N", default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub n_min: u32,
    /// Largest extension degree to count.
    #[arg(long, value_name = "N")]
    pub n_max: Option<u32>,
    /// Raise the cost threshold for long computations.
    #[arg(long)]
    pub long: bool,
    /// JSON-lines count cache.
    #[arg(long, value_name = "FILE")]
    pub cache: Option<PathBuf>,
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: Option<u32>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
}

#[derive(Args, Debug)]
pub struct CountArgs {
    #[command(flatten)]
    pub surface: SurfaceArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub surface: SurfaceArgs,
    /// Compare coefficients, polynomials and counts with the published values.
    #[arg(long = "paper-compare")]
    pub reference_compare: bool,
    /// Use only computed or cached counts.
    #[arg(long)]
    pub computed_only: bool,
}

/// Runs the CLI on `args` (including the program name), writing the report to
/// `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    let (stage, result) = match cli.command {
        Command::Certify(a) => ("certify", cmd_certify(&a, out)),
        Command::Count(a) => ("count", cmd_count(&a, out)),
        Command::Verify(a) => ("verify", cmd_verify(&a, out)),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error [{stage}]: {e}");
            e.class().exit_code()
        }
    }
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn load_spec(name: &str) -> Result<SurfaceSpec> {
    if name == "bundled-example" {
        Ok(SurfaceSpec::bundled_example())
    } else {
        SurfaceSpec::from_path(name.as_ref())
    }
}

fn count_options(a: &SurfaceArgs) -> CountOptions {
    let opts = match a.threads {
        Some(t) => CountOptions::with_threads(t as usize),
        None => CountOptions::default(),
    };
    opts.long(a.long)
}

fn show_rows(rows: &[Vec<Int>]) -> String {
    let body: Vec<String> = rows
        .iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(|c| c.0.to_string()).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", body.join(", "))
}

fn cmd_certify(a: &CertifyArgs, out: &mut dyn Write) -> Result<i32> {
    let input = match &a.lattice {
        Some(path) => CertificateInput::from_path(path)?,
        None => CertificateInput::bundled(),
    };
    let cert = input.certify()?;
    cert.verify()?;
    let report = cert.report();
    match a.format {
        OutputFormat::Json => emit_json(out, &report)?,
        OutputFormat::Text => write_certificate(out, &report)?,
    }
    Ok(0)
}

fn write_certificate(out: &mut dyn Write, r: &CertificateReport) -> Result<()> {
    writeln!(out, "gram: {}", show_rows(&r.gram))?;
    writeln!(out, "discriminant: {}", r.discriminant.0)?;
    writeln!(out, "invariant basis: {}", show_rows(&r.invariant_basis))?;
    writeln!(out, "invariant gram: {}", show_rows(&r.invariant_gram))?;
    writeln!(out, "invariant degenerate: {}", r.invariant_degenerate)?;
    writeln!(out, "sigma roots: {}", show_rows(&r.sigma_roots))?;
    writeln!(out, "restricted sigma: {}", show_rows(&r.restricted_sigma))?;
    writeln!(out, "alpha: {}", show_rows(&r.alpha))?;
    writeln!(out, "conjugate: {}", show_rows(&r.beta))?;
    writeln!(out, "verdict: {}", r.verdict)?;
    for w in &r.witnesses {
        let rows: Vec<String> = w
            .matrix
            .iter()
            .map(|row| {
                let cells: Vec<String> = row.iter().map(|c| c.0.to_string()).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        writeln!(
            out,
            "rational extension (complement sign {:+}): denominator {}, matrix [{}]",
            w.complement_sign,
            w.denominator.0,
            rows.join(", ")
        )?;
    }
    let o = &r.obstruction;
    let target: Vec<String> = o.target.iter().map(|c| c.0.to_string()).collect();
    writeln!(out, "obstruction for image of [{}]:", target.join(", "))?;
    for eq in &o.equations {
        let coeffs: Vec<String> = eq.coeffs.iter().map(|c| c.0.to_string()).collect();
        writeln!(out, "  [{}] . u = {}", coeffs.join(", "), eq.rhs.0)?;
    }
    match o.obstruction_modulus {
        Some(m) => writeln!(out, "  unsolvable (no solution modulo {m})")?,
        None => writeln!(out, "  solvable: {}", o.solvable)?,
    }
    writeln!(out, "certificate: produced")?;
    Ok(())
}

#[derive(Serialize)]
struct CountRow {
    #[serde(flatten)]
    record: CountRecord,
    cached: bool,
}

fn cmd_count(a: &CountArgs, out: &mut dyn Write) -> Result<i32> {
    let s = &a.surface;
    let spec = load_spec(&s.surface)?;
    let h = spec.quartic()?;
    let primes = if s.primes.is_empty() {
        spec.primes()
    } else {
        s.primes.clone()
    };
    let n_max = s.n_max.unwrap_or(s.n_min).max(s.n_min);
    let degrees = s.n_min..=n_max;
    let opts = count_options(s);
    let cache = s.cache.as_ref().map(CountCache::new);
    // refuse before any work is done
    for &p in &primes {
        let hash = reduction_hash(&h, p);
        for n in degrees.clone() {
            let cached = match &cache {
                Some(c) => c.lookup(&hash, p, n)?.is_some(),
                None => false,
            };
            let cost = counting_cost(p, n);
            if !cached && cost > opts.cost_limit {
                return Err(Error::CostRefused { p, n, cost });
            }
        }
    }
    let mut rows: Vec<CountRow> = Vec::new();
    for &p in &primes {
        let hash = reduction_hash(&h, p);
        for n in degrees.clone() {
            if let Some(hit) = match &cache {
                Some(c) => c.lookup(&hash, p, n)?,
                None => None,
            } {
                rows.push(CountRow {
                    record: hit.record(),
                    cached: true,
                });
                continue;
            }
            let start = Instant::now();
            let rec = count_points_with(&h, p, n, &opts)?;
            if let Some(c) = &cache {
                c.append(&CacheRecord {
                    surface_hash: hash.clone(),
                    p,
                    n,
                    count: rec.count,
                    source: rec.source,
                    wall_time_ms: start.elapsed().as_millis() as u64,
                })?;
            }
            rows.push(CountRow {
                record: rec,
                cached: false,
            });
        }
    }
    match s.format {
        OutputFormat::Json => emit_json(out, &rows)?,
        OutputFormat::Text => write_count_table(out, &primes, degrees, &rows)?,
    }
    Ok(0)
}

fn write_count_table(
    out: &mut dyn Write,
    primes: &[u32],
    degrees: std::ops::RangeInclusive<u32>,
    rows: &[CountRow],
) -> Result<()> {
    let columns = degrees.clone().count();
    let mut table: Vec<Vec<String>> = Vec::new();
    let mut header = vec!["n".to_string()];
    header.extend(degrees.map(|n| n.to_string()));
    table.push(header);
    for &p in primes {
        let mut row = vec![format!("#X_{p}(F_{p}^n)")];
        row.extend(
            rows.iter()
                .filter(|r| r.record.p == p)
                .map(|r| r.record.count.to_string()),
        );
        table.push(row);
    }
    let widths: Vec<usize> = (0..=columns)
        .map(|i| table.iter().map(|r| r[i].len()).max().unwrap_or(0))
        .collect();
    for row in &table {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(i, (c, w))| {
                if i == 0 {
                    format!("{c:>w$}")
                } else {
                    format!("{c:<w$}")
                }
            })
            .collect();
        let (first, rest) = cells.split_first().expect("non-empty row");
        writeln!(out, "{first} | {}", rest.join(" ").trim_end())?;
    }
    Ok(())
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let s = &a.surface;
    let spec = load_spec(&s.surface)?;
    let config = VanLuijkConfig {
        primes: (!s.primes.is_empty()).then(|| s.primes.clone()),
        max_computed_n: s.n_max,
        count_options: count_options(s),
        use_reference_counts: !a.computed_only,
        cache: s.cache.as_ref().map(CountCache::new),
        reference_compare: a.reference_compare,
        singular_search_degree: None,
    };
    let report = run_van_luijk(&spec, &config);
    match s.format {
        OutputFormat::Json => emit_json(out, &report)?,
        OutputFormat::Text => write_verification(out, &report)?,
    }
    Ok(report.exit_code())
}

fn write_verification(out: &mut dyn Write, r: &VerificationReport) -> Result<()> {
    if let Some(s) = &r.surface {
        writeln!(out, "surface: {}", s.name)?;
        writeln!(out, "quartic: {}", s.quartic)?;
        writeln!(out, "contains scheme C: {}", s.vanishes_on_scheme_c)?;
    }
    for s in &r.primes {
        writeln!(out)?;
        writeln!(out, "p = {}", s.p)?;
        writeln!(out, "  reduction: {}", s.reduced_quartic)?;
        for l in &s.lines {
            writeln!(out, "  line {}: contained {}", l.label, l.contained)?;
        }
        if let Some(search) = &s.singular_search {
            writeln!(
                out,
                "  singular points over extensions of degree <= {}: {}",
                search.max_extension_degree,
                search.points.len()
            )?;
        }
        if let Some(b) = &s.divisor_gram {
            writeln!(out, "  classes: {}", b.labels.join(", "))?;
            writeln!(
                out,
                "  intersection matrix: {}",
                show_rows(&int_rows(&b.gram))
            )?;
        }
        if let Some(d) = &s.determinant {
            writeln!(out, "  determinant: {}", d.0)?;
        }
        for c in &s.counts {
            writeln!(out, "  #X(F_{}^{}) = {} ({})", c.p, c.n, c.count, c.source)?;
        }
        if !s.coefficients.is_empty() {
            let cs: Vec<String> = s.coefficients.iter().map(|c| c.0.to_string()).collect();
            writeln!(out, "  c1..c{}: {}", cs.len(), cs.join(", "))?;
        }
        if let Some(sign) = &s.functional_equation_sign {
            writeln!(out, "  functional equation: {}", sign_name(*sign))?;
        }
        if let Some(f) = &s.charpoly {
            writeln!(out, "  charpoly: {f}")?;
        }
        if let (Some(b), Some(m)) = (s.unit_root_order_bound, s.unit_root_multiplicity) {
            writeln!(out, "  roots of unity of order <= {b}: {m}")?;
        }
        if let Some(b) = s.picard_upper_bound {
            writeln!(out, "  picard upper bound: {b}")?;
        }
    }
    if let Some(sq) = &r.square_classes {
        writeln!(out)?;
        let parts: Vec<String> = sq
            .squarefree_parts
            .iter()
            .map(|d| d.0.to_string())
            .collect();
        writeln!(
            out,
            "square classes: [{}], distinct {}",
            parts.join(", "),
            sq.distinct
        )?;
    }
    if let Some(rho) = r.geometric_picard_number {
        writeln!(out, "geometric picard number: {rho}")?;
    }
    if let Some(g) = &r.lattice_gram {
        writeln!(out, "lattice gram: {}", show_rows(g))?;
    }
    if let Some(d) = &r.even_overlattice_discriminants {
        let ds: Vec<String> = d.iter().map(|x| x.0.to_string()).collect();
        writeln!(out, "even overlattice discriminants: [{}]", ds.join(", "))?;
    }
    if r.certificate.is_some() {
        writeln!(out, "non-normality certificate: produced")?;
    }
    for c in &r.reference_comparison {
        let mark = if c.matches { "match" } else { "MISMATCH" };
        writeln!(out, "compare {}: {mark}", c.item)?;
        if !c.matches {
            writeln!(out, "  expected: {}", c.expected)?;
            writeln!(out, "  actual:   {}", c.actual)?;
        }
    }
    writeln!(out)?;
    for remark in &r.remarks {
        writeln!(out, "remark: {remark}")?;
    }
    match &r.failure {
        None => writeln!(out, "result: pass")?,
        Some(f) => writeln!(out, "result: FAIL at stage '{}': {}", f.stage, f.message)?,
    }
    Ok(())
}

fn sign_name(s: crate::zeta::FunctionalEquationSign) -> &'static str {
    match s {
        crate::zeta::FunctionalEquationSign::Positive => "positive",
        crate::zeta::FunctionalEquationSign::Undetermined => "undetermined",
    }
}
