//! Command-line front end for the q-series congruence verifier.
//!
//! Subcommands: `expand` prints a family's coefficients, `verify` runs a
//! claim suite, `identities` checks the dissection identity catalog and the
//! prime dissections, `scan` measures two-adic divisibility along a
//! progression, and `cross-check` replays the counting oracles against the
//! generating functions.
//!
//! Exit status: 0 when everything checked out, 1 when any claim failed,
//! 2 on a usage error, 3 on an internal error (overflow, bad modulus).
//! Output is byte-identical across thread counts; per-claim wall times are
//! zeroed unless `--timings` is given.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use qseries::dissection::{pdissect_f1_check, pdissect_f1cubed_check};
use qseries::report::VerificationReport;
use qseries::verifier::{fixture_false_claim, run_claims, scan_divisibility, Suite};
use qseries::{
    cross_check, family_series, identity_catalog, verify_identity, CoeffRing, FamilySpec,
};

#[derive(Parser)]
#[command(name = "qverify", version, about = "q-series congruence verifier")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads; 0 picks the machine default. Overrides the
    /// QVERIFY_THREADS environment variable.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Report per-claim wall times instead of zeroing them.
    #[arg(long, global = true)]
    timings: bool,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    P,
    Pbar,
    #[value(name = "pbar_k")]
    PbarK,
    #[value(name = "pbar_o")]
    PbarO,
    Opt,
    #[value(name = "opt_k")]
    OptK,
}

/// A bad flag combination; reported like clap's own usage errors, exit 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for Usage {}

#[derive(Subcommand)]
enum Command {
    /// Print coefficients of a counting family's generating function.
    Expand {
        /// Family to use.
        #[arg(long)]
        family: FamilyArg,
        /// Tuple size for the _k families.
        #[arg(long)]
        k: Option<u32>,
        /// Number of coefficients to compute.
        #[arg(long, default_value_t = 100)]
        order: usize,
        /// Reduce coefficients modulo this instead of computing exactly.
        #[arg(long)]
        modulus: Option<u64>,
        /// Print only the first LIMIT coefficients.
        #[arg(long, value_name = "LIMIT")]
        limit: Option<usize>,
    },
    /// Run a verification suite.
    Verify {
        /// Suite id: t1..t10, lemma7, regressions or all.
        #[arg(long)]
        suite: Suite,
        /// Override every claim's default expansion order.
        #[arg(long)]
        order: Option<usize>,
        /// Append a claim that is known to be false, to exercise the
        /// failure path.
        #[arg(long)]
        fixture_false_claim: bool,
    },
    /// Check the dissection identity catalog and the prime dissections.
    Identities {
        /// Expansion order for each identity.
        #[arg(long, default_value_t = 1000)]
        order: usize,
    },
    /// Measure two-adic divisibility along a progression of a family.
    Scan {
        /// Family to use.
        #[arg(long)]
        family: FamilyArg,
        /// Tuple size for the _k families.
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        step: u64,
        #[arg(long)]
        offset: u64,
        /// Number of coefficients to scan.
        #[arg(long, default_value_t = 2000)]
        order: usize,
    },
    /// Recount small cases with the independent oracles and compare them
    /// against the generating functions.
    CrossCheck {
        /// Largest index to recount.
        #[arg(long, default_value_t = 120)]
        n_max: usize,
    },
}

fn parse_family(family: FamilyArg, k: Option<u32>) -> Result<FamilySpec> {
    let needs_k = || k.ok_or_else(|| Usage("this family needs --k".into()));
    let spec = match family {
        FamilyArg::P => FamilySpec::P,
        FamilyArg::Pbar => FamilySpec::Pbar,
        FamilyArg::PbarO => FamilySpec::PbarO,
        FamilyArg::Opt => FamilySpec::Opt,
        FamilyArg::PbarK => FamilySpec::PbarK(needs_k()?),
        FamilyArg::OptK => FamilySpec::OptK(needs_k()?),
    };
    if k.is_some() && !matches!(spec, FamilySpec::PbarK(_) | FamilySpec::OptK(_)) {
        bail!(Usage("--k applies only to pbar_k and opt_k".into()));
    }
    Ok(spec)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn params_cell(params: &std::collections::BTreeMap<String, i64>) -> String {
    params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

fn render_reports(reports: &[VerificationReport], format: Format, timings: bool) -> String {
    let mut out = String::new();
    match format {
        Format::Json => {
            out = serde_json::to_string_pretty(reports).expect("reports serialize");
            out.push('\n');
        }
        Format::Csv => {
            out.push_str(
                "label,family,params,step,offset,modulus,terms_checked,status,counterexample,elapsed_ms\n",
            );
            for r in reports {
                let ce = r
                    .counterexample
                    .map(|c| format!("n={};index={};value={}", c.n, c.index, c.value))
                    .unwrap_or_default();
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{}",
                    csv_field(&r.label),
                    csv_field(&r.family),
                    csv_field(&params_cell(&r.params)),
                    r.step,
                    r.offset,
                    r.modulus,
                    r.terms_checked,
                    r.status,
                    csv_field(&ce),
                    r.elapsed_ms,
                );
            }
        }
        Format::Text => {
            for r in reports {
                let _ = write!(
                    out,
                    "{:<7} {}  family={} step={} offset={} modulus={} terms={}",
                    r.status.to_string(),
                    r.label,
                    r.family,
                    r.step,
                    r.offset,
                    r.modulus,
                    r.terms_checked,
                );
                if !r.params.is_empty() {
                    let _ = write!(out, " [{}]", params_cell(&r.params));
                }
                if let Some(c) = r.counterexample {
                    let _ = write!(
                        out,
                        "  counterexample: term {} (coefficient index {}) = {}",
                        c.n, c.index, c.value
                    );
                }
                if timings {
                    let _ = write!(out, " elapsed_ms={}", r.elapsed_ms);
                }
                out.push('\n');
            }
        }
    }
    out
}

fn finish_reports(
    mut reports: Vec<VerificationReport>,
    format: Format,
    timings: bool,
) -> (String, bool) {
    if !timings {
        for r in &mut reports {
            r.elapsed_ms = 0;
        }
    }
    let any_failed = reports.iter().any(VerificationReport::failed);
    (render_reports(&reports, format, timings), any_failed)
}

fn run(cli: &Cli) -> Result<(String, bool)> {
    match &cli.command {
        Command::Expand {
            family,
            k,
            order,
            modulus,
            limit,
        } => {
            let spec = parse_family(*family, *k)?;
            let ring = match modulus {
                Some(m) => CoeffRing::Mod(*m),
                None => CoeffRing::Exact,
            };
            let series = family_series(spec, *order, ring)?;
            let shown = limit.unwrap_or(*order).min(*order);
            let coeff = |n: usize| match ring {
                CoeffRing::Exact => series.coeff_exact(n).expect("exact ring").to_string(),
                CoeffRing::Mod(_) => series.coeff_u64(n).expect("modular ring").to_string(),
            };
            let mut out = String::new();
            match cli.format {
                Format::Text => {
                    for n in 0..shown {
                        let _ = writeln!(out, "{n}\t{}", coeff(n));
                    }
                }
                Format::Csv => {
                    out.push_str("n,value\n");
                    for n in 0..shown {
                        let _ = writeln!(out, "{n},{}", coeff(n));
                    }
                }
                Format::Json => {
                    let rows: Vec<serde_json::Value> = (0..shown)
                        .map(|n| serde_json::json!({"n": n, "value": coeff(n)}))
                        .collect();
                    out = serde_json::to_string_pretty(&rows).expect("values serialize");
                    out.push('\n');
                }
            }
            Ok((out, false))
        }
        Command::Verify {
            suite,
            order,
            fixture_false_claim: fixture,
        } => {
            let mut claims = suite.claims();
            if *fixture {
                claims.push(fixture_false_claim());
            }
            let reports = run_claims(&claims, *order)?;
            Ok(finish_reports(reports, cli.format, cli.timings))
        }
        Command::Identities { order } => {
            let mut reports = Vec::new();
            for id in identity_catalog() {
                reports.push(verify_identity(id, *order)?);
            }
            for p in [5u64, 7, 11] {
                reports.push(pdissect_f1_check(p, *order)?);
            }
            for p in [3u64, 5, 7, 11] {
                reports.push(pdissect_f1cubed_check(p, *order)?);
            }
            Ok(finish_reports(reports, cli.format, cli.timings))
        }
        Command::Scan {
            family,
            k,
            step,
            offset,
            order,
        } => {
            let spec = parse_family(*family, *k)?;
            let scan = scan_divisibility(spec, *step, *offset, *order)?;
            let mut out = String::new();
            match cli.format {
                Format::Text => {
                    let _ = write!(
                        out,
                        "{} step={} offset={} order={} min_two_adic_valuation={}{}",
                        scan.family,
                        scan.step,
                        scan.offset,
                        order,
                        scan.e_observed,
                        if scan.capped { " (capped)" } else { "" },
                    );
                    if let Some(w) = scan.witness {
                        let _ = write!(
                            out,
                            "  attained at term {} (coefficient index {}) residue {}",
                            w.n, w.index, w.value
                        );
                    }
                    out.push('\n');
                }
                Format::Csv => {
                    out.push_str("family,step,offset,order,e_observed,capped,witness\n");
                    let w = scan
                        .witness
                        .map(|w| format!("n={};index={};value={}", w.n, w.index, w.value))
                        .unwrap_or_default();
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{},{},{}",
                        csv_field(&scan.family),
                        scan.step,
                        scan.offset,
                        order,
                        scan.e_observed,
                        scan.capped,
                        csv_field(&w),
                    );
                }
                Format::Json => {
                    let value = serde_json::json!({
                        "family": scan.family,
                        "step": scan.step,
                        "offset": scan.offset,
                        "order": order,
                        "e_observed": scan.e_observed,
                        "capped": scan.capped,
                        "witness": scan.witness.map(|w| serde_json::json!({
                            "n": w.n, "index": w.index, "value": w.value.to_string(),
                        })),
                    });
                    out = serde_json::to_string_pretty(&value).expect("scan serializes");
                    out.push('\n');
                }
            }
            Ok((out, false))
        }
        Command::CrossCheck { n_max } => {
            let specs = [
                FamilySpec::P,
                FamilySpec::Pbar,
                FamilySpec::PbarK(2),
                FamilySpec::PbarO,
                FamilySpec::Opt,
                FamilySpec::OptK(2),
                FamilySpec::OptK(4),
                FamilySpec::OptK(5),
            ];
            let mut rows = Vec::new();
            let mut any_failed = false;
            for spec in specs {
                let mismatch = cross_check(spec, *n_max)?;
                any_failed |= mismatch.is_some();
                rows.push((spec.name(), mismatch));
            }
            let mut out = String::new();
            match cli.format {
                Format::Text => {
                    for (name, mismatch) in &rows {
                        match mismatch {
                            None => {
                                let _ = writeln!(out, "ok      {name}  n_max={n_max}");
                            }
                            Some(i) => {
                                let _ = writeln!(out, "MISMATCH {name} first differs at n={i}");
                            }
                        }
                    }
                }
                Format::Csv => {
                    out.push_str("family,n_max,status,first_mismatch\n");
                    for (name, mismatch) in &rows {
                        let _ = writeln!(
                            out,
                            "{},{},{},{}",
                            csv_field(name),
                            n_max,
                            if mismatch.is_none() { "ok" } else { "mismatch" },
                            mismatch.map(|i| i.to_string()).unwrap_or_default(),
                        );
                    }
                }
                Format::Json => {
                    let values: Vec<serde_json::Value> = rows
                        .iter()
                        .map(|(name, mismatch)| {
                            serde_json::json!({
                                "family": name,
                                "n_max": n_max,
                                "status": if mismatch.is_none() { "ok" } else { "mismatch" },
                                "first_mismatch": mismatch,
                            })
                        })
                        .collect();
                    out = serde_json::to_string_pretty(&values).expect("rows serialize");
                    out.push('\n');
                }
            }
            Ok((out, any_failed))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.threads.or_else(|| {
        std::env::var("QVERIFY_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(n) = threads.filter(|&n| n > 0) {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("qverify: could not configure {n} threads: {e}");
            return ExitCode::from(3);
        }
    }
    match run(&cli) {
        Ok((output, any_failed)) => {
            let write_result = match &cli.out {
                Some(path) => std::fs::write(path, &output)
                    .with_context(|| format!("writing {}", path.display())),
                None => {
                    print!("{output}");
                    Ok(())
                }
            };
            if let Err(e) = write_result {
                eprintln!("qverify: {e:#}");
                return ExitCode::from(3);
            }
            ExitCode::from(if any_failed { 1 } else { 0 })
        }
        Err(e) => {
            eprintln!("qverify: {e:#}");
            ExitCode::from(if e.is::<Usage>() { 2 } else { 3 })
        }
    }
}
