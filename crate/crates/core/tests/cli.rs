mod common;

use std::fs;

use orbifold_rr::cli::{parse_records_csv, write_records, OutputFormat};
use orbifold_rr::enumeration::{enumerate_index_multisets, EnumerationQuery, Filter, TABLE2_FIXTURE};
use orbifold_rr::quotient::TABLE4_FIXTURE;

use common::{run, stderr, stdout};

#[test]
fn empty_multiset_at_chi_zero() {
    let out = run(&["enumerate", "--chi", "0", "--include-empty"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "multiset,r_X,c1c2,has_integral_basket,witness\n∅,1,0,true,∅\n"
    );
    let out = run(&["enumerate", "--chi", "0"]);
    assert_eq!(stdout(&out).lines().count(), 1);
}

#[test]
fn chi_series_examples() {
    let out = run(&[
        "chi-series", "--basket", "(1,7),(2,7),(3,7)", "--chi", "1", "--kcube", "0", "--n-max", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "n,l(n+1),chi(-nK)\n0,0,1\n1,2,1\n");

    let out = run(&["chi-series", "--basket", "", "--chi", "1", "--kcube", "2", "--n-max", "1"]);
    assert_eq!(stdout(&out).lines().nth(2), Some("1,0,4"));

    let out = run(&["chi-series", "--basket", "(2,4)", "--chi", "1", "--kcube", "0", "--n-max", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("(2,4)") || stderr(&out).contains("coprime"), "{}", stderr(&out));
}

#[test]
fn jsonl_series() {
    let out = run(&[
        "chi-series", "--basket", "(1,2)", "--chi", "1", "--kcube", "1/2", "--n-max", "0", "--format", "jsonl",
    ]);
    assert_eq!(stdout(&out), "{\"n\":0,\"l\":\"0\",\"chi\":\"1\"}\n");
}

#[test]
fn verify_tables_passes_on_embedded_fixtures() {
    let out = run(&["verify-tables"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.lines().all(|l| l.starts_with("PASS")), "{text}");
    assert_eq!(text.lines().count(), 8);
}

#[test]
fn verify_tables_names_a_deleted_row() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table2.csv");
    let kept: Vec<&str> = TABLE2_FIXTURE.lines().filter(|l| *l != "\"3^3\",3,16").collect();
    assert_eq!(kept.len(), TABLE2_FIXTURE.lines().count() - 1);
    fs::write(&path, kept.join("\n") + "\n").unwrap();
    let out = run(&["verify-tables", "--table2", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("FAIL table 2"), "{text}");
    assert!(text.contains("missing from fixture:     \"3^3\",3,16"), "{text}");
}

#[test]
fn quotient_check_reports_wrong_order() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table4.csv");
    let tampered = TABLE4_FIXTURE.replace("55,A_5,60,", "55,A_5,59,");
    assert_ne!(tampered, TABLE4_FIXTURE);
    fs::write(&path, tampered).unwrap();
    let out = run(&["quotient", "check", "--table", "4", "--fixture", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("FAIL #55"), "{text}");
    assert!(text.contains("48/59 ≠ 4/5"), "{text}");

    let out = run(&["quotient", "check", "--table", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 15);
}

#[test]
fn derive_enriques_matches() {
    let out = run(&["quotient", "derive-enriques"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(stdout(&out).lines().count(), 9);
}

#[test]
fn min_command() {
    let out = run(&["min", "--chi", "1"]);
    assert_eq!(stdout(&out), "1/252  2^3,4,7,9\n");
    let out = run(&["min", "--chi", "1", "--not-big"]);
    assert_eq!(stdout(&out), "2/5  2^4,3^3,5^2\n");
    let out = run(&["min", "--chi", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("no positive value"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["enumerate", "--chi", "3"][..],
        &["enumerate", "--chi", "1", "--filter", "bogus"],
        &["bound", "--min-positive", "-1"],
        &["verify-tables", "--table1", "/nonexistent/table1.csv"],
        &[],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        &["enumerate", "--chi", "1", "--format", "jsonl"][..],
        &["enumerate", "--chi", "1", "--filter", "l2-integral", "--format", "markdown"],
        &["verify-tables"],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t1.csv");
    let out = run(&["enumerate", "--chi", "1", "--filter", "c1c2-zero", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let direct = run(&["enumerate", "--chi", "1", "--filter", "c1c2-zero"]);
    assert_eq!(fs::read(&path).unwrap(), direct.stdout);
}

#[test]
fn csv_round_trip_of_full_chi1_enumeration() {
    let q = EnumerationQuery::new(1).filter(Filter::All).include_empty(true);
    let records = enumerate_index_multisets(&q).unwrap();
    let mut buf = Vec::new();
    write_records(&mut buf, &records, OutputFormat::Csv).unwrap();
    let back = parse_records_csv(std::str::from_utf8(&buf).unwrap(), 1, 2).unwrap();
    assert_eq!(back, records);
    let out = run(&["enumerate", "--chi", "1", "--include-empty"]);
    assert_eq!(out.stdout, buf);
}
