//! Command-line front end for the Veronese cone computations.
//!
//! Subcommands: `report` (one singularity), `table1` (the reference table of
//! seven small cones, checked against the computed values), `verify` (the
//! full cross-check suite), `scan` (a grid of reports), and `witness`
//! (explicit torsion certificates).
//!
//! Exit codes partition the outcomes: 0 success, 2 usage error, 3
//! mathematical inconsistency, 4 inconclusive saturation.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use veronese::cone::{self, DEFAULT_MAX_DEGREE, DEFAULT_WINDOW};
use veronese::formulas;
use veronese::gaussian;
use veronese::quotient::{classify, render_table, witness_json, SingularityReport};
use veronese::sections::{self, VeroneseContext};
use veronese::Error;

const SCHEMA_VERSION: u32 = 1;

const EXIT_INCONSISTENT: u8 = 3;
const EXIT_INCONCLUSIVE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "veronese",
    version,
    about = "Torsion and cotorsion of Kähler differentials on Veronese cones, in exact arithmetic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report for one cone X_{r,d}
    Report(ReportArgs),
    /// The seven-row reference table, verified against computed values
    Table1,
    /// Run the cross-check suite for one cone
    Verify(VerifyArgs),
    /// Reports for the whole grid 1..=r_max, 1..=d_max
    Scan(ScanArgs),
    /// Torsion witnesses in the wedge square of the degree-d forms
    Witness(WitnessArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Projective-space dimension r >= 1
    #[arg(long = "r", value_parser = clap::value_parser!(u32).range(1..=64))]
    r: u32,
    /// Veronese degree d >= 1
    #[arg(long = "d", value_parser = clap::value_parser!(u32).range(1..=64))]
    d: u32,
}

#[derive(Args)]
struct ReportArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Emit JSON instead of text
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV instead of text
    #[arg(long)]
    csv: bool,
    /// Also compute and list torsion witnesses
    #[arg(long)]
    witnesses: bool,
    /// Also run the direct cone-side torsion computation and cross-check it
    #[arg(long)]
    direct: bool,
    /// Saturation window for the direct route
    #[arg(long, default_value_t = DEFAULT_WINDOW as u32, value_parser = clap::value_parser!(u32).range(1..))]
    window: u32,
    /// Total internal degree budget for the direct route
    #[arg(long = "max-degree", default_value_t = DEFAULT_MAX_DEGREE, value_parser = clap::value_parser!(u32).range(1..))]
    max_degree: u32,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Twist range A..B (inclusive) for the per-degree checks
    #[arg(long = "m-range", value_parser = parse_m_range, default_value = "1..3")]
    m_range: (u32, u32),
    #[arg(long, default_value_t = DEFAULT_WINDOW as u32, value_parser = clap::value_parser!(u32).range(1..))]
    window: u32,
    #[arg(long = "max-degree", default_value_t = DEFAULT_MAX_DEGREE, value_parser = clap::value_parser!(u32).range(1..))]
    max_degree: u32,
}

#[derive(Args)]
struct ScanArgs {
    /// Largest r in the grid
    #[arg(value_parser = clap::value_parser!(u32).range(1..=64))]
    r_max: u32,
    /// Largest d in the grid
    #[arg(value_parser = clap::value_parser!(u32).range(1..=64))]
    d_max: u32,
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct WitnessArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long)]
    json: bool,
}

fn parse_m_range(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| "expected an inclusive range A..B".to_string())?;
    let a: u32 = a.trim().parse().map_err(|e| format!("bad range start: {e}"))?;
    let b: u32 = b.trim().parse().map_err(|e| format!("bad range end: {e}"))?;
    if a == 0 {
        return Err("range start must be >= 1".to_string());
    }
    if a > b {
        return Err("range must be nonempty".to_string());
    }
    Ok((a, b))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Report(args) => cmd_report(&args),
        Command::Table1 => cmd_table1(),
        Command::Verify(args) => cmd_verify(&args),
        Command::Scan(args) => cmd_scan(&args),
        Command::Witness(args) => cmd_witness(&args),
    }
}

/// Map a computation error to the documented exit code.
fn exit_for(err: &Error) -> ExitCode {
    match err {
        Error::SaturationInconclusive { .. } => ExitCode::from(EXIT_INCONCLUSIVE),
        _ => ExitCode::from(EXIT_INCONSISTENT),
    }
}

#[derive(Serialize)]
struct JsonReport<'a> {
    schema_version: u32,
    #[serde(flatten)]
    report: &'a SingularityReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    torsion_dim_direct: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witnesses: Option<Vec<serde_json::Value>>,
}

fn cmd_report(args: &ReportArgs) -> ExitCode {
    let (r, d) = (args.common.r, args.common.d);
    let ctx = VeroneseContext::new(r as usize, d);
    let mut report = classify(r, d);
    report.torsion_dim = Some(gaussian::torsion_dim_kernel(&ctx));

    let direct = if args.direct {
        match cone::torsion_direct(&ctx, 2, args.window as usize, args.max_degree) {
            Ok(v) => Some(v),
            Err(e) => {
                eprintln!("error: {e}");
                return exit_for(&e);
            }
        }
    } else {
        None
    };
    if let (Some(direct), Some(kernel)) = (direct, report.torsion_dim) {
        if direct != kernel {
            eprintln!(
                "error: direct torsion {direct} disagrees with kernel torsion {kernel}"
            );
            return ExitCode::from(EXIT_INCONSISTENT);
        }
    }
    let witnesses = args.witnesses.then(|| gaussian::torsion_witnesses(&ctx));

    if args.json {
        let json = JsonReport {
            schema_version: SCHEMA_VERSION,
            report: &report,
            torsion_dim_direct: direct,
            witnesses: witnesses.as_ref().map(|ws| {
                ws.iter()
                    .map(|w| serde_json::to_value(witness_json(w)).expect("witness to JSON"))
                    .collect()
            }),
        };
        println!("{}", serde_json::to_string_pretty(&json).expect("report to JSON"));
    } else if args.csv {
        let mut w = csv_writer();
        write_csv_header(&mut w);
        write_csv_row(&mut w, &report, None);
        print_csv(w);
    } else {
        print!("{}", render_table(std::slice::from_ref(&report)));
        println!();
        println!("index: {}", report.index);
        println!("embedding dimension: {}", report.embdim);
        println!("discrepancy: {}", report.discrepancy);
        println!(
            "torsion dimension: {}",
            report.torsion_dim.expect("filled above")
        );
        if let Some(direct) = direct {
            println!("torsion dimension (direct route): {direct}");
        }
        println!("cotorsion excess: {}", report.cotorsion_excess);
        if let Some(ws) = &witnesses {
            if ws.is_empty() {
                println!("witnesses: none (no torsion)");
            } else {
                for (i, w) in ws.iter().enumerate() {
                    let ok = gaussian::verify_witness(&ctx, w);
                    println!(
                        "witness {}: {} ({})",
                        i + 1,
                        w.render(),
                        if ok { "verified" } else { "FAILED" }
                    );
                }
            }
        }
    }
    ExitCode::SUCCESS
}

/// The seven reference rows: (r, d, dim, type label, Gorenstein, torsion,
/// cotorsion).
const TABLE1_EXPECTED: [(u32, u32, u32, &str, bool, bool, bool); 7] = [
    (1, 2, 2, "canonical", true, false, true),
    (1, 3, 2, "log terminal", false, true, true),
    (2, 2, 3, "terminal", false, false, true),
    (2, 3, 3, "canonical", true, true, true),
    (3, 2, 4, "terminal", true, false, true),
    (3, 3, 4, "terminal", false, true, true),
    (5, 3, 6, "terminal", true, true, true),
];

fn cmd_table1() -> ExitCode {
    let reports: Vec<SingularityReport> = TABLE1_EXPECTED
        .iter()
        .map(|&(r, d, ..)| classify(r, d))
        .collect();
    print!("{}", render_table(&reports));
    let mut mismatches = Vec::new();
    for (rep, &(r, d, dim, label, gor, tors, cotors)) in reports.iter().zip(&TABLE1_EXPECTED) {
        if (
            rep.dim,
            rep.mmp_class.label(),
            rep.gorenstein,
            rep.has_torsion,
            rep.has_cotorsion,
        ) != (dim, label, gor, tors, cotors)
        {
            mismatches.push(format!("X_{{{r},{d}}}"));
        }
    }
    if mismatches.is_empty() {
        ExitCode::SUCCESS
    } else {
        eprintln!(
            "error: computed values disagree with the reference rows: {}",
            mismatches.join(", ")
        );
        ExitCode::from(EXIT_INCONSISTENT)
    }
}

struct CheckLog {
    lines: Vec<String>,
    failed: bool,
    inconclusive: bool,
}

impl CheckLog {
    fn new() -> Self {
        CheckLog {
            lines: Vec::new(),
            failed: false,
            inconclusive: false,
        }
    }

    fn check(&mut self, name: &str, lhs: impl std::fmt::Display, rhs: impl std::fmt::Display, ok: bool) {
        if ok {
            self.lines.push(format!("{name}: pass ({lhs} vs {rhs})"));
        } else {
            self.failed = true;
            self.lines.push(format!("{name}: FAIL ({lhs} vs {rhs})"));
        }
    }

    fn error(&mut self, name: &str, err: &Error) {
        match err {
            Error::SaturationInconclusive { .. } => {
                self.inconclusive = true;
                self.lines.push(format!("{name}: inconclusive ({err})"));
            }
            _ => {
                self.failed = true;
                self.lines.push(format!("{name}: FAIL ({err})"));
            }
        }
    }
}

fn cmd_verify(args: &VerifyArgs) -> ExitCode {
    let (r, d) = (args.common.r, args.common.d);
    let (m_lo, m_hi) = args.m_range;
    let ctx = VeroneseContext::new(r as usize, d);
    let mut log = CheckLog::new();

    for m in m_lo..=m_hi {
        let mult = sections::multiplication_matrix(&ctx, m);
        let kernel_dim = mult.cols() - mult.rank();
        let closed = formulas::h0_ideal(r, d, m);
        log.check(
            &format!("ideal piece dimension (m={m})"),
            kernel_dim,
            &closed,
            num_bigint::BigInt::from(kernel_dim) == closed,
        );

        let conormal = sections::h0_conormal(&ctx, m);
        let bound = formulas::conormal_lower_bound(r, d, m);
        log.check(
            &format!("conormal lower bound (m={m})"),
            conormal,
            &bound,
            num_bigint::BigInt::from(conormal) >= bound,
        );

        if m != 2 {
            match sections::h1_ideal_squared(&ctx, m) {
                Ok(h1) => log.check(&format!("vanishing of h1(I^2({m}H))"), h1, 0, h1 == 0),
                Err(e) => log.error(&format!("vanishing of h1(I^2({m}H))"), &e),
            }
        }
    }

    if d >= 3 {
        let lhs = formulas::toshow_lhs(r, d);
        log.check(
            "torsion positivity inequality",
            &lhs,
            "0 (strict)",
            lhs > num_bigint::BigInt::from(0),
        );
    } else {
        log.lines.push(format!(
            "torsion positivity inequality: skipped (d = {d} < 3, value {})",
            formulas::toshow_lhs(r, d)
        ));
    }

    let kernel = gaussian::torsion_dim_kernel(&ctx);
    match sections::torsion_dim_via_sequence(&ctx) {
        Ok(seq) => log.check("torsion: kernel vs sequence route", kernel, seq, kernel == seq),
        Err(e) => log.error("torsion: kernel vs sequence route", &e),
    }
    match cone::torsion_direct(&ctx, 2, args.window as usize, args.max_degree) {
        Ok(direct) => log.check("torsion: kernel vs direct route", kernel, direct, kernel == direct),
        Err(e) => log.error("torsion: kernel vs direct route", &e),
    }

    let (has_cotorsion, excess) = veronese::quotient::cotorsion_decision(r, d);
    log.check(
        "cotorsion decision",
        format!("excess {excess}"),
        format!("expected {}", d >= 2),
        has_cotorsion == (d >= 2),
    );

    for line in &log.lines {
        println!("{line}");
    }
    if log.failed {
        println!("result: FAIL");
        ExitCode::from(EXIT_INCONSISTENT)
    } else if log.inconclusive {
        println!("result: inconclusive");
        ExitCode::from(EXIT_INCONCLUSIVE)
    } else {
        println!("result: all checks passed");
        ExitCode::SUCCESS
    }
}

#[derive(Serialize)]
struct ScanRow<'a> {
    #[serde(flatten)]
    report: &'a SingularityReport,
    error: Option<String>,
}

fn cmd_scan(args: &ScanArgs) -> ExitCode {
    let mut reports = Vec::new();
    for r in 1..=args.r_max {
        for d in 1..=args.d_max {
            reports.push(classify(r, d));
        }
    }
    if args.json {
        #[derive(Serialize)]
        struct ScanJson<'a> {
            schema_version: u32,
            rows: Vec<ScanRow<'a>>,
        }
        let doc = ScanJson {
            schema_version: SCHEMA_VERSION,
            rows: reports.iter().map(|rep| ScanRow { report: rep, error: None }).collect(),
        };
        println!("{}", serde_json::to_string_pretty(&doc).expect("scan to JSON"));
    } else if args.csv {
        let mut w = csv_writer();
        write_csv_header(&mut w);
        for rep in &reports {
            write_csv_row(&mut w, rep, None);
        }
        print_csv(w);
    } else {
        print!("{}", render_table(&reports));
    }
    ExitCode::SUCCESS
}

fn cmd_witness(args: &WitnessArgs) -> ExitCode {
    let (r, d) = (args.common.r, args.common.d);
    let ctx = VeroneseContext::new(r as usize, d);
    let witnesses = if d >= 3 {
        gaussian::torsion_witnesses(&ctx)
    } else {
        Vec::new()
    };
    if args.json {
        #[derive(Serialize)]
        struct WitnessJson {
            schema_version: u32,
            r: u32,
            d: u32,
            torsion_dim: usize,
            witnesses: Vec<serde_json::Value>,
            verified: bool,
        }
        let doc = WitnessJson {
            schema_version: SCHEMA_VERSION,
            r,
            d,
            torsion_dim: witnesses.len(),
            witnesses: witnesses
                .iter()
                .map(|w| serde_json::to_value(witness_json(w)).expect("witness to JSON"))
                .collect(),
            verified: witnesses.iter().all(|w| gaussian::verify_witness(&ctx, w)),
        };
        println!("{}", serde_json::to_string_pretty(&doc).expect("witness to JSON"));
        return ExitCode::SUCCESS;
    }
    if d == 1 {
        println!("X_{{{r},{d}}} is smooth; no torsion witnesses");
        return ExitCode::SUCCESS;
    }
    if d == 2 {
        println!("no torsion (d <= 2); no witnesses for X_{{{r},{d}}}");
        return ExitCode::SUCCESS;
    }
    println!("torsion dimension: {}", witnesses.len());
    for (i, w) in witnesses.iter().enumerate() {
        let ok = gaussian::verify_witness(&ctx, w);
        println!(
            "witness {}: {} ({})",
            i + 1,
            w.render(),
            if ok { "verified" } else { "FAILED" }
        );
    }
    ExitCode::SUCCESS
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::Writer::from_writer(Vec::new())
}

fn write_csv_header(w: &mut csv::Writer<Vec<u8>>) {
    w.write_record([
        "r",
        "d",
        "dim",
        "embdim",
        "index",
        "gorenstein",
        "discrepancy",
        "mmp_class",
        "has_torsion",
        "torsion_dim",
        "has_cotorsion",
        "cotorsion_excess",
        "error",
    ])
    .expect("write CSV header");
}

fn write_csv_row(w: &mut csv::Writer<Vec<u8>>, rep: &SingularityReport, error: Option<&str>) {
    w.write_record([
        rep.r.to_string(),
        rep.d.to_string(),
        rep.dim.to_string(),
        rep.embdim.to_string(),
        rep.index.to_string(),
        rep.gorenstein.to_string(),
        rep.discrepancy.to_string(),
        format!("{:?}", rep.mmp_class),
        rep.has_torsion.to_string(),
        rep.torsion_dim.map(|t| t.to_string()).unwrap_or_default(),
        rep.has_cotorsion.to_string(),
        rep.cotorsion_excess.to_string(),
        error.unwrap_or_default().to_string(),
    ])
    .expect("write CSV row");
}

fn print_csv(w: csv::Writer<Vec<u8>>) {
    let bytes = w.into_inner().expect("flush CSV");
    print!("{}", String::from_utf8(bytes).expect("CSV is UTF-8"));
}
