//! Command-line front end.
//!
//! Exit codes: `0` success, `1` verification mismatch (or no positive
//! minimum), `2` usage or input error.

mod output;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::enumeration::{
    compare_rows, effective_bound, enumerate_index_multisets_with_jobs, min_positive_c1c2,
    parse_fixture, reproduce_table, EnumerationError, EnumerationQuery, Filter, FixtureRow,
    TableId, SMOOTH_INVARIANTS,
};
use crate::quotient::{
    abelian_cover_c1c2, check_scenario, compare_scenarios, derive_enriques, parse_scenarios,
    render_scenarios, CoverType, TABLE4_FIXTURE, TABLE5_FIXTURE,
};
use crate::rational::{factorize, format_factorization, int, parse_rational, Rational};
use crate::reid_rr::{c1c2_from_indices, chi_minus_nk, l_value, Basket, ChernContext, IndexMultiset};

pub use output::{
    parse_records_csv, write_markdown, write_records, write_series, OutputFormat,
    RecordParseError, SeriesRow, RECORD_COLUMNS,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "orbifold-rr",
    version,
    about = "Exact Riemann–Roch bookkeeping and basket enumeration for terminal 3-folds with nef -K"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Enumerate index multisets with sum (r - 1/r) <= 24 chi.
    Enumerate(EnumerateArgs),
    /// Reproduce every embedded table and report differences.
    VerifyTables(VerifyArgs),
    /// Evaluate l(n+1) and chi(-nK) for n = 0..n-max.
    ChiSeries(ChiSeriesArgs),
    /// Smallest positive c1c2 and every multiset attaining it.
    Min(MinArgs),
    /// Quotient-table checks.
    Quotient {
        #[command(subcommand)]
        command: QuotientCommand,
    },
    /// The constant b with c1^3 <= b c1c2.
    Bound(BoundArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FilterArg {
    All,
    C1c2Zero,
    L2Integral,
    C1c2Range,
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    #[arg(long, allow_hyphen_values = true)]
    chi: i64,
    #[arg(long, value_enum, default_value = "all")]
    filter: FilterArg,
    /// Lower end of the c1c2 range (with `--filter c1c2-range`).
    #[arg(long, value_parser = parse_rational_arg)]
    lo: Option<Rational>,
    /// Upper end of the c1c2 range (with `--filter c1c2-range`).
    #[arg(long, value_parser = parse_rational_arg)]
    hi: Option<Rational>,
    /// Require l(m) integral for every 2 <= m <= depth.
    #[arg(long, default_value_t = 2)]
    depth: u32,
    #[arg(long)]
    include_empty: bool,
    #[arg(long, value_enum, default_value = "csv")]
    format: OutputFormat,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Allow chi outside {0, 1, 2}.
    #[arg(long)]
    unsafe_chi: bool,
    /// Print only the number of records.
    #[arg(long)]
    count: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    table1: Option<PathBuf>,
    #[arg(long)]
    table2: Option<PathBuf>,
    #[arg(long)]
    table4: Option<PathBuf>,
    #[arg(long)]
    table5: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Debug, Args)]
struct ChiSeriesArgs {
    /// Basket such as "(1,2)^3,(1,4),(2,7)"; empty for a smooth 3-fold.
    #[arg(long, allow_hyphen_values = true)]
    basket: String,
    #[arg(long, allow_hyphen_values = true)]
    chi: i64,
    /// (-K)^3 as an exact fraction.
    #[arg(long, value_parser = parse_rational_arg, allow_hyphen_values = true)]
    kcube: Rational,
    #[arg(long)]
    n_max: u64,
    #[arg(long, value_enum, default_value = "csv")]
    format: OutputFormat,
}

#[derive(Debug, Args)]
struct MinArgs {
    #[arg(long, allow_hyphen_values = true)]
    chi: i64,
    /// Restrict to multisets carrying a basket with l(2) integral.
    #[arg(long)]
    not_big: bool,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Debug, Subcommand)]
enum QuotientCommand {
    /// Check every row of table 4 (K3) or 5 (Enriques).
    Check {
        #[arg(long, value_parser = clap::value_parser!(u32).range(4..=5))]
        table: u32,
        /// Fixture file to use instead of the embedded one.
        #[arg(long)]
        fixture: Option<PathBuf>,
    },
    /// Derive the Enriques rows from the K3 rows and compare with table 5.
    DeriveEnriques {
        #[arg(long)]
        table4: Option<PathBuf>,
        #[arg(long)]
        table5: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct BoundArgs {
    #[arg(long, value_parser = parse_rational_arg, default_value = "324")]
    max_cube: Rational,
    /// Defaults to the smallest positive c1c2 at chi = 1.
    #[arg(long, value_parser = parse_rational_arg, allow_hyphen_values = true)]
    min_positive: Option<Rational>,
}

fn parse_rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return e.exit_code().clamp(0, 255) as u8;
        }
    };
    let result = match cli.command {
        Command::Enumerate(a) => cmd_enumerate(a, out),
        Command::VerifyTables(a) => cmd_verify_tables(a, out),
        Command::ChiSeries(a) => cmd_chi_series(a, out),
        Command::Min(a) => cmd_min(a, out),
        Command::Quotient { command } => cmd_quotient(command, out),
        Command::Bound(a) => cmd_bound(a, out),
    };
    match result {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }

    fn mismatch(message: impl ToString) -> Self {
        Self {
            code: EXIT_MISMATCH,
            message: message.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage(format!("I/O: {e}"))
    }
}

type CmdResult = Result<u8, Failure>;

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn cmd_enumerate(a: EnumerateArgs, out: &mut dyn Write) -> CmdResult {
    let filter = match a.filter {
        FilterArg::All => Filter::All,
        FilterArg::C1c2Zero => Filter::C1c2Zero,
        FilterArg::L2Integral => Filter::IntegralBasket,
        FilterArg::C1c2Range => match (a.lo, a.hi) {
            (Some(lo), Some(hi)) => Filter::C1c2InRange(lo, hi),
            _ => return Err(Failure::usage("--filter c1c2-range needs --lo and --hi")),
        },
    };
    let query = EnumerationQuery::new(a.chi)
        .filter(filter)
        .include_empty(a.include_empty)
        .depth(a.depth)
        .allow_any_chi(a.unsafe_chi);
    let records = enumerate_index_multisets_with_jobs(&query, a.jobs).map_err(Failure::usage)?;
    let mut buf = Vec::new();
    if a.count {
        writeln!(buf, "{}", records.len())?;
    } else {
        write_records(&mut buf, &records, a.format)?;
    }
    match a.output {
        Some(path) => fs::write(&path, &buf)
            .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?,
        None => out.write_all(&buf)?,
    }
    Ok(EXIT_OK)
}

fn status(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn cmd_verify_tables(a: VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let mut all_ok = true;

    for (id, path) in [(TableId::CalabiYauLike, &a.table1), (TableId::NotBig, &a.table2)] {
        let text = match path {
            Some(p) => read_file(p)?,
            None => id.embedded_fixture().to_string(),
        };
        let fixture = parse_fixture(&text).map_err(Failure::usage)?;
        let produced: Vec<FixtureRow> = reproduce_table(id, a.jobs)
            .map_err(Failure::usage)?
            .iter()
            .map(FixtureRow::from)
            .collect();
        let diff = compare_rows(&produced, &fixture, 1);
        all_ok &= diff.is_match();
        writeln!(
            out,
            "{} table {}: {} enumerated, {} in fixture",
            status(diff.is_match()),
            id.number(),
            produced.len(),
            fixture.len()
        )?;
        if !diff.is_match() {
            write!(out, "{diff}")?;
        }
    }

    let smooth_ok = SMOOTH_INVARIANTS
        .iter()
        .all(|&(_, chi, c1c2)| c1c2_from_indices(&IndexMultiset::empty(), chi) == int(c1c2));
    all_ok &= smooth_ok;
    writeln!(out, "{} table 3: smooth rows satisfy c1c2 = 24 chi", status(smooth_ok))?;

    let t4_text = match &a.table4 {
        Some(p) => read_file(p)?,
        None => TABLE4_FIXTURE.to_string(),
    };
    let t5_text = match &a.table5 {
        Some(p) => read_file(p)?,
        None => TABLE5_FIXTURE.to_string(),
    };
    let t4 = parse_scenarios(&t4_text, CoverType::K3).map_err(Failure::usage)?;
    let t5 = parse_scenarios(&t5_text, CoverType::Enriques).map_err(Failure::usage)?;
    for (n, rows) in [(4, &t4), (5, &t5)] {
        let reports: Vec<_> = rows.iter().map(check_scenario).collect();
        let passed = reports.iter().filter(|r| r.passed()).count();
        let ok = passed == reports.len();
        all_ok &= ok;
        writeln!(out, "{} table {n}: {passed}/{} rows consistent", status(ok), reports.len())?;
        for r in reports.iter().filter(|r| !r.passed()) {
            writeln!(out, "  {r}")?;
        }
    }

    match derive_enriques(&t4) {
        Ok(derived) => {
            let diff = compare_scenarios(&derived, &t5);
            all_ok &= diff.is_match();
            writeln!(
                out,
                "{} enriques halving: {} derived, {} in table 5",
                status(diff.is_match()),
                derived.len(),
                t5.len()
            )?;
            if !diff.is_match() {
                write!(out, "{diff}")?;
            }
        }
        Err(e) => {
            all_ok = false;
            writeln!(out, "FAIL enriques halving: {e}")?;
        }
    }

    let abelian_ok = abelian_cover_c1c2() == int(0);
    all_ok &= abelian_ok;
    writeln!(out, "{} abelian cover: c1c2 = 0", status(abelian_ok))?;

    let (min, _) = min_positive_c1c2(1, false, a.jobs).map_err(Failure::usage)?;
    let bound = effective_bound(&int(324), &min).map_err(Failure::usage)?;
    let expected = int(2i64.pow(4) * 3i64.pow(6) * 7);
    let bound_ok = bound == expected;
    all_ok &= bound_ok;
    writeln!(
        out,
        "{} effective bound: 324 / ({min}) = {bound} = {}",
        status(bound_ok),
        render_factorization(&bound)
    )?;

    if all_ok {
        Ok(EXIT_OK)
    } else {
        Err(Failure::mismatch("fixture verification failed"))
    }
}

fn cmd_chi_series(a: ChiSeriesArgs, out: &mut dyn Write) -> CmdResult {
    let basket: Basket = a.basket.parse().map_err(Failure::usage)?;
    let ctx = ChernContext::new(a.chi, a.kcube);
    let rows: Vec<SeriesRow> = (0..=a.n_max)
        .map(|n| SeriesRow {
            n,
            l_value: l_value(&basket, n + 1),
            chi: chi_minus_nk(&basket, &ctx, n),
        })
        .collect();
    write_series(out, &rows, a.format)?;
    Ok(EXIT_OK)
}

fn cmd_min(a: MinArgs, out: &mut dyn Write) -> CmdResult {
    match min_positive_c1c2(a.chi, a.not_big, a.jobs) {
        Ok((value, attaining)) => {
            let list: Vec<String> = attaining.iter().map(|m| m.to_string()).collect();
            writeln!(out, "{value}  {}", list.join("  "))?;
            Ok(EXIT_OK)
        }
        Err(EnumerationError::NoPositiveValue(chi)) => Err(Failure::mismatch(format!(
            "no positive value of c1c2 at chi = {chi}"
        ))),
        Err(e) => Err(Failure::usage(e)),
    }
}

fn cmd_quotient(command: QuotientCommand, out: &mut dyn Write) -> CmdResult {
    match command {
        QuotientCommand::Check { table, fixture } => {
            let (embedded, cover) = if table == 4 {
                (TABLE4_FIXTURE, CoverType::K3)
            } else {
                (TABLE5_FIXTURE, CoverType::Enriques)
            };
            let text = match fixture {
                Some(p) => read_file(&p)?,
                None => embedded.to_string(),
            };
            let rows = parse_scenarios(&text, cover).map_err(Failure::usage)?;
            let mut ok = true;
            for r in rows.iter().map(check_scenario) {
                ok &= r.passed();
                writeln!(out, "{r}")?;
            }
            if ok {
                Ok(EXIT_OK)
            } else {
                Err(Failure::mismatch(format!("table {table} has inconsistent rows")))
            }
        }
        QuotientCommand::DeriveEnriques { table4, table5 } => {
            let t4_text = match table4 {
                Some(p) => read_file(&p)?,
                None => TABLE4_FIXTURE.to_string(),
            };
            let t5_text = match table5 {
                Some(p) => read_file(&p)?,
                None => TABLE5_FIXTURE.to_string(),
            };
            let t4 = parse_scenarios(&t4_text, CoverType::K3).map_err(Failure::usage)?;
            let t5 = parse_scenarios(&t5_text, CoverType::Enriques).map_err(Failure::usage)?;
            let derived = derive_enriques(&t4).map_err(Failure::mismatch)?;
            out.write_all(render_scenarios(&derived).as_bytes())?;
            let diff = compare_scenarios(&derived, &t5);
            if diff.is_match() {
                Ok(EXIT_OK)
            } else {
                Err(Failure::mismatch(format!("derived rows differ from table 5:\n{diff}")))
            }
        }
    }
}

fn render_factorization(x: &Rational) -> String {
    if x <= &int(0) {
        return x.to_string();
    }
    let numer = format_factorization(&factorize(x.numer()));
    if x.is_integer() {
        numer
    } else {
        format!("({numer}) / ({})", format_factorization(&factorize(x.denom())))
    }
}

fn cmd_bound(a: BoundArgs, out: &mut dyn Write) -> CmdResult {
    let min = match a.min_positive {
        Some(m) => m,
        None => min_positive_c1c2(1, false, 1).map_err(Failure::usage)?.0,
    };
    let b = effective_bound(&a.max_cube, &min).map_err(Failure::usage)?;
    writeln!(out, "{} / ({min}) = {b} = {}", a.max_cube, render_factorization(&b))?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (u8, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("orbifold-rr").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn bad_flags_exit_two() {
        let (code, _, err) = run_str(&["enumerate"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(!err.is_empty());
        assert_eq!(run_str(&["enumerate", "--chi", "1", "--filter", "nope"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["quotient", "check", "--table", "3"]).0, EXIT_USAGE);
    }

    #[test]
    fn chi_out_of_domain_exits_two() {
        let (code, _, err) = run_str(&["enumerate", "--chi", "3"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("outside"));
    }

    #[test]
    fn range_filter_needs_bounds() {
        assert_eq!(run_str(&["enumerate", "--chi", "1", "--filter", "c1c2-range"]).0, EXIT_USAGE);
        let (code, out, _) = run_str(&[
            "enumerate", "--chi", "1", "--filter", "c1c2-range", "--lo", "1/300", "--hi", "1/200",
        ]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("1/252"), "{out}");
    }

    #[test]
    fn bound_output() {
        let (code, out, _) = run_str(&["bound", "--min-positive", "1/252"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out, "324 / (1/252) = 81648 = 2^4 * 3^6 * 7\n");
        let (_, out, _) = run_str(&["bound", "--max-cube", "72", "--min-positive", "24"]);
        assert_eq!(out, "72 / (24) = 3 = 3\n");
        assert_eq!(run_str(&["bound", "--min-positive", "0"]).0, EXIT_USAGE);
    }

    #[test]
    fn factorization_rendering() {
        assert_eq!(render_factorization(&crate::rational::frac(12, 5)), "(2^2 * 3) / (5)");
        assert_eq!(render_factorization(&int(1)), "1");
    }
}
