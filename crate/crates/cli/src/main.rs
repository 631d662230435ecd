//! `hypersum` — exact iterated power sums from the command line.
//!
//! Subcommands: `coeffs` (emit the coefficient triangles), `hypersum`
//! (evaluate S_m^(a)(n) by one or all methods), `verify` (run the identity
//! suite), `conjecture` (machine-check the diagonal structure of the
//! c-triangle), `oeis` (b-file export of the c-triangle and offline
//! comparison against a local b-file).
//!
//! Exit codes: 0 success / all checks pass, 1 mathematical disagreement or
//! comparison mismatch, 2 usage error. All output goes to stdout,
//! diagnostics to stderr.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use hypersum_core::coeffs::{
    check_diagonal, check_harmonic_column, check_route_agreement, check_row_sums,
    check_sign_pattern, check_stirling_identity, check_t_moment_linear, ATable, CoeffTable, Route,
};
use hypersum_core::conjecture::check_conjecture;
use hypersum_core::hypersum::{evaluate, verify_identities, Method};
use hypersum_core::report::IdentityCheck;
use hypersum_core::Int;

const EXIT_OK: u8 = 0;
const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "hypersum",
    version,
    about = "Exact iterated power sums S_m^(a)(n) and their coefficient triangles",
    long_about = "Exact iterated power sums S_m^(a)(n) and their coefficient triangles.\n\
                  All arithmetic is exact (arbitrary-precision integers and rationals).\n\
                  Exit codes: 0 success or all checks pass; 1 mathematical disagreement,\n\
                  failed check or comparison mismatch; 2 usage error."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a coefficient triangle (c: integer triangle expanding n^m in the
    /// psi basis; a: rational monomial coefficients of psi_m)
    Coeffs {
        /// Which triangle to emit
        #[arg(value_enum)]
        kind: TableKind,
        /// Largest row index m (rows run m = 2..=max-m)
        #[arg(long, default_value_t = 10)]
        max_m: u32,
        /// Construction route for the c triangle; with no route every route
        /// is built and any disagreement fails with exit code 1
        #[arg(long, value_enum)]
        route: Option<RouteArg>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Evaluate the a-fold iterated power sum S_m^(a)(n)
    Hypersum {
        /// Power index m >= 0
        #[arg(long)]
        m: u32,
        /// Summation order a >= 0 (a = 0 gives n^m, a = 1 the ordinary power sum)
        #[arg(long)]
        a: u32,
        /// Argument n >= 1
        #[arg(long)]
        n: u64,
        /// Evaluation method; `all` runs every method applicable to m and
        /// fails with exit code 1 if they disagree
        #[arg(long, value_enum, default_value_t = MethodArg::All)]
        method: MethodArg,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Run the full identity suite: route agreement, row sums, diagonal,
    /// harmonic column, moments, sign pattern, Stirling sums, the grid
    /// identities, and (when max-m >= 9) the diagonal-structure check
    Verify {
        #[arg(long, default_value_t = 10)]
        max_m: u32,
        #[arg(long, default_value_t = 4)]
        max_a: u32,
        #[arg(long, default_value_t = 12)]
        max_n: u64,
        /// Worker threads for the grid scans
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Machine-check the conjectured polynomial structure of the diagonals
    /// c_{m,m-k} for k = 0..=k-max, scanning rows up to m-max
    Conjecture {
        #[arg(long, default_value_t = 7)]
        k_max: u32,
        #[arg(long, default_value_t = 40)]
        m_max: u32,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Emit the c triangle as an OEIS b-file (the triangle matches A355570),
    /// or compare it against a local b-file
    Oeis {
        #[arg(long, default_value_t = 10)]
        max_m: u32,
        /// Local b-file to compare against ("index value" lines, '#' comments
        /// skipped); reports the first mismatch (exit 1) or agreement up to
        /// the shorter length (exit 0). No network access is performed.
        #[arg(long)]
        compare: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TableKind {
    C,
    A,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Single JSON document; large numbers are decimal strings
    Json,
    /// Header row plus one record per entry
    Csv,
    /// OEIS b-file lines "index value", rows m = 2, 3, ... read left to
    /// right, running index starting at 1
    Bfile,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RouteArg {
    Recurrence,
    InvertA,
    BinomialSystem,
}

impl From<RouteArg> for Route {
    fn from(r: RouteArg) -> Route {
        match r {
            RouteArg::Recurrence => Route::Recurrence,
            RouteArg::InvertA => Route::InvertA,
            RouteArg::BinomialSystem => Route::BinomialSystem,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    All,
    Oracle,
    Psi,
    Factored,
    Stirling2,
    PsiRecurrence,
}

impl MethodArg {
    fn single(self) -> Option<Method> {
        match self {
            MethodArg::All => None,
            MethodArg::Oracle => Some(Method::Oracle),
            MethodArg::Psi => Some(Method::Psi),
            MethodArg::Factored => Some(Method::Factored),
            MethodArg::Stirling2 => Some(Method::Stirling2),
            MethodArg::PsiRecurrence => Some(Method::PsiRecurrence),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Coeffs {
            kind,
            max_m,
            route,
            format,
        } => cmd_coeffs(kind, max_m, route, format),
        Command::Hypersum {
            m,
            a,
            n,
            method,
            format,
        } => cmd_hypersum(m, a, n, method, format),
        Command::Verify {
            max_m,
            max_a,
            max_n,
            jobs,
            format,
        } => cmd_verify(max_m, max_a, max_n, jobs, format),
        Command::Conjecture {
            k_max,
            m_max,
            format,
        } => cmd_conjecture(k_max, m_max, format),
        Command::Oeis { max_m, compare } => cmd_oeis(max_m, compare.as_deref()),
    };
    ExitCode::from(code)
}

fn usage_error(msg: &str) -> u8 {
    eprintln!("error: {msg}");
    EXIT_USAGE
}

fn require_max_m(max_m: u32) -> Result<(), u8> {
    if max_m < 2 {
        return Err(usage_error(&format!(
            "--max-m must be at least 2, got {max_m}"
        )));
    }
    Ok(())
}

fn cmd_coeffs(kind: TableKind, max_m: u32, route: Option<RouteArg>, format: Format) -> u8 {
    if let Err(code) = require_max_m(max_m) {
        return code;
    }
    match kind {
        TableKind::C => {
            let table = match route {
                Some(r) => CoeffTable::build(max_m, r.into()).expect("max_m validated"),
                None => {
                    let mut tables = Route::ALL
                        .iter()
                        .map(|&r| CoeffTable::build(max_m, r).expect("max_m validated"));
                    let first = tables.next().unwrap();
                    for other in tables {
                        for m in 2..=max_m {
                            for k in 2..=m {
                                if first.get(m, k) != other.get(m, k) {
                                    eprintln!(
                                        "error: routes {} and {} disagree at (m, k) = ({m}, {k}): {} vs {}",
                                        first.route(),
                                        other.route(),
                                        first.get(m, k),
                                        other.get(m, k)
                                    );
                                    return EXIT_MISMATCH;
                                }
                            }
                        }
                    }
                    first
                }
            };
            match format {
                Format::Csv => {
                    println!("m,k,value");
                    for m in 2..=max_m {
                        for k in 2..=m {
                            println!("{m},{k},{}", table.get(m, k));
                        }
                    }
                }
                Format::Bfile => print_bfile(table.linearized()),
                Format::Json => {
                    let rows: Vec<_> = (2..=max_m)
                        .map(|m| {
                            json!({
                                "m": m,
                                "entries": table.row(m).iter().map(Int::to_string).collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    print_json(&json!({
                        "kind": "coeffs-c",
                        "params": {"max_m": max_m},
                        "rows": rows,
                    }));
                }
            }
            EXIT_OK
        }
        TableKind::A => {
            if format == Format::Bfile {
                return usage_error(
                    "the a triangle is rational; b-file output only applies to the c triangle",
                );
            }
            let table = ATable::build(max_m).expect("max_m validated");
            match format {
                Format::Csv => {
                    println!("m,l,value");
                    for m in 2..=max_m {
                        for l in 2..=m {
                            println!("{m},{l},{}", table.get(m, l));
                        }
                    }
                }
                Format::Json => {
                    let rows: Vec<_> = (2..=max_m)
                        .map(|m| {
                            json!({
                                "m": m,
                                "entries": table.row(m).iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    print_json(&json!({
                        "kind": "coeffs-a",
                        "params": {"max_m": max_m},
                        "rows": rows,
                    }));
                }
                Format::Bfile => unreachable!("rejected above"),
            }
            EXIT_OK
        }
    }
}

fn cmd_hypersum(m: u32, a: u32, n: u64, method: MethodArg, format: Format) -> u8 {
    if n < 1 {
        return usage_error("--n must be at least 1");
    }
    if format == Format::Bfile {
        return usage_error("b-file output only applies to triangle emission");
    }
    let methods = match method.single() {
        Some(me) => {
            if !me.supports(m) {
                return usage_error(&format!("method {me} is not defined for m = {m}"));
            }
            vec![me]
        }
        None => Method::applicable(m),
    };
    // tables only matter for the psi-based methods, which require m >= 2
    let table_m = m.max(2);
    let ctable = CoeffTable::build_recurrence(table_m).expect("m >= 2");
    let atable = ATable::build(table_m).expect("m >= 2");
    let results: Vec<(Method, Int)> = methods
        .iter()
        .map(|&me| {
            let value = evaluate(me, m, a, n, &ctable, &atable).expect("query validated");
            (me, value)
        })
        .collect();
    let agree = results.windows(2).all(|w| w[0].1 == w[1].1);
    match format {
        Format::Csv => {
            println!("method,value");
            for (me, value) in &results {
                println!("{me},{value}");
            }
        }
        Format::Json => {
            let list: Vec<_> = results
                .iter()
                .map(|(me, value)| json!({"method": me.name(), "value": value.to_string()}))
                .collect();
            print_json(&json!({
                "kind": "hypersum",
                "params": {"m": m, "a": a, "n": n},
                "results": list,
                "agree": agree,
            }));
        }
        Format::Bfile => unreachable!("rejected above"),
    }
    if agree {
        EXIT_OK
    } else {
        eprintln!("error: evaluation methods disagree");
        EXIT_MISMATCH
    }
}

fn cmd_verify(max_m: u32, max_a: u32, max_n: u64, jobs: usize, format: Format) -> u8 {
    if let Err(code) = require_max_m(max_m) {
        return code;
    }
    if max_n < 2 {
        return usage_error(&format!("--max-n must be at least 2, got {max_n}"));
    }
    if format == Format::Bfile {
        return usage_error("b-file output only applies to triangle emission");
    }
    if u32::try_from(max_n).is_err() {
        return usage_error("--max-n is too large for a grid scan");
    }

    let ctable = CoeffTable::build_recurrence(max_m).expect("max_m validated");
    let atable = ATable::build(max_m).expect("max_m validated");

    let mut checks = vec![
        check_route_agreement(max_m).expect("max_m validated"),
        check_row_sums(&ctable),
        check_diagonal(&ctable),
        check_harmonic_column(&atable),
        check_t_moment_linear(&ctable),
        check_sign_pattern(&ctable),
        check_stirling_identity(max_m).expect("max_m validated"),
    ];
    checks.extend(verify_identities(max_m, max_a, max_n, jobs).expect("bounds validated"));

    // diagonal-structure depth permitted by the table: the odd-parity fit for
    // index k needs rows up to 4k + 9
    if max_m >= 9 {
        let k_max = (max_m - 9) / 4;
        let report = check_conjecture(k_max, max_m, &ctable).expect("table covers m_max");
        for claim in report.claims {
            checks.push(IdentityCheck {
                name: format!("conjecture[k={} {}] {}", claim.k, claim.parity, claim.claim),
                points: claim.points,
                pass: claim.pass,
                first_counterexample: claim.detail,
            });
        }
    }

    let pass = checks.iter().all(|c| c.pass);
    match format {
        Format::Csv => {
            println!("check,points,pass,first_counterexample");
            for c in &checks {
                println!(
                    "{},{},{},{}",
                    c.name,
                    c.points,
                    c.pass,
                    csv_field(c.first_counterexample.as_deref().unwrap_or(""))
                );
            }
        }
        Format::Json => {
            print_json(&json!({
                "kind": "verify",
                "params": {"max_m": max_m, "max_a": max_a, "max_n": max_n, "jobs": jobs},
                "results": serde_json::to_value(&checks).unwrap(),
                "pass": pass,
            }));
        }
        Format::Bfile => unreachable!("rejected above"),
    }
    if pass {
        EXIT_OK
    } else {
        eprintln!(
            "error: {} check(s) failed",
            checks.iter().filter(|c| !c.pass).count()
        );
        EXIT_MISMATCH
    }
}

fn cmd_conjecture(k_max: u32, m_max: u32, format: Format) -> u8 {
    if m_max < 2 {
        return usage_error(&format!("--m-max must be at least 2, got {m_max}"));
    }
    if format == Format::Bfile {
        return usage_error("b-file output only applies to triangle emission");
    }
    // size the table for both the row scans and the odd-parity fit windows
    let table_m = m_max.max(4 * k_max + 9);
    let table = CoeffTable::build_recurrence(table_m).expect("m_max validated");
    let report = check_conjecture(k_max, m_max, &table).expect("table sized above");
    let pass = report.pass();
    match format {
        Format::Csv => {
            println!("k,parity,claim,points,pass,detail");
            for c in &report.claims {
                println!(
                    "{},{},{},{},{},{}",
                    c.k,
                    c.parity,
                    c.claim,
                    c.points,
                    c.pass,
                    csv_field(c.detail.as_deref().unwrap_or(""))
                );
            }
        }
        Format::Json => {
            print_json(&json!({
                "kind": "conjecture",
                "params": {"k_max": k_max, "m_max": m_max},
                "results": serde_json::to_value(&report.claims).unwrap(),
                "pass": pass,
            }));
        }
        Format::Bfile => unreachable!("rejected above"),
    }
    if pass {
        EXIT_OK
    } else {
        eprintln!(
            "error: {} structural claim(s) falsified",
            report.failures().count()
        );
        EXIT_MISMATCH
    }
}

fn cmd_oeis(max_m: u32, compare: Option<&Path>) -> u8 {
    if let Err(code) = require_max_m(max_m) {
        return code;
    }
    let table = CoeffTable::build_recurrence(max_m).expect("max_m validated");
    let ours: Vec<&Int> = table.linearized().collect();
    match compare {
        None => {
            print_bfile(ours.into_iter());
            EXIT_OK
        }
        Some(path) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => return usage_error(&format!("cannot read {}: {e}", path.display())),
            };
            let theirs = match parse_bfile(&text) {
                Ok(v) => v,
                Err(e) => return usage_error(&format!("{}: {e}", path.display())),
            };
            let compared = ours.len().min(theirs.len());
            for i in 0..compared {
                if *ours[i] != theirs[i] {
                    println!(
                        "mismatch at index {}: triangle has {}, file has {}",
                        i + 1,
                        ours[i],
                        theirs[i]
                    );
                    return EXIT_MISMATCH;
                }
            }
            println!("match: {compared} entries compared");
            EXIT_OK
        }
    }
}

/// Emits "index value" lines with a 1-based running index over the triangle
/// read row by row (m = 2 first), left to right.
fn print_bfile<'a>(values: impl Iterator<Item = &'a Int>) {
    for (i, v) in values.enumerate() {
        println!("{} {v}", i + 1);
    }
}

/// Parses b-file text: one "index value" pair per line; blank lines and lines
/// starting with '#' are skipped. Only the value column is used.
fn parse_bfile(text: &str) -> Result<Vec<Int>, String> {
    let mut values = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(format!(
                "line {}: expected two integer tokens, found {}",
                lineno + 1,
                tokens.len()
            ));
        }
        tokens[0]
            .parse::<i64>()
            .map_err(|_| format!("line {}: bad index token {:?}", lineno + 1, tokens[0]))?;
        let value = tokens[1]
            .parse::<Int>()
            .map_err(|_| format!("line {}: bad value token {:?}", lineno + 1, tokens[1]))?;
        values.push(value);
    }
    Ok(values)
}

fn print_json(value: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable")
    );
}

/// Quotes a CSV field when it contains separators or quotes.
fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
