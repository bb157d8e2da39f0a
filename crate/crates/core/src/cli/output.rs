//! Record and series rendering for the three output formats.

use std::io::{self, Write};

use serde::Serialize;

use crate::enumeration::{ChernRecord, RecordError};
use crate::rational::{approx_decimal, parse_rational, Rational};
use crate::reid_rr::{Basket, BasketError, IndexMultiset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    Jsonl,
    Markdown,
}

pub const RECORD_COLUMNS: [&str; 5] = ["multiset", "r_X", "c1c2", "has_integral_basket", "witness"];

#[derive(Serialize)]
struct RecordJson {
    multiset: String,
    #[serde(rename = "r_X")]
    r_x: u64,
    c1c2: String,
    has_integral_basket: bool,
    witness: Option<String>,
}

fn witness_text(rec: &ChernRecord) -> String {
    rec.witness().map(Basket::to_string).unwrap_or_default()
}

pub fn write_records(
    out: &mut dyn Write,
    records: &[ChernRecord],
    format: OutputFormat,
) -> io::Result<()> {
    match format {
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(RECORD_COLUMNS)?;
            for rec in records {
                w.write_record([
                    rec.indices().to_string(),
                    rec.cartier_index().to_string(),
                    rec.c1c2().to_string(),
                    rec.has_integral_basket().to_string(),
                    witness_text(rec),
                ])?;
            }
            w.flush()
        }
        OutputFormat::Jsonl => {
            for rec in records {
                let row = RecordJson {
                    multiset: rec.indices().to_string(),
                    r_x: rec.cartier_index(),
                    c1c2: rec.c1c2().to_string(),
                    has_integral_basket: rec.has_integral_basket(),
                    witness: rec.witness().map(Basket::to_string),
                };
                serde_json::to_writer(&mut *out, &row)?;
                out.write_all(b"\n")?;
            }
            Ok(())
        }
        OutputFormat::Markdown => {
            let header = ["multiset", "r_X", "c1c2", "c1c2 (approx.)", "integral", "witness"];
            let rows: Vec<Vec<String>> = records
                .iter()
                .map(|rec| {
                    vec![
                        rec.indices().to_string(),
                        rec.cartier_index().to_string(),
                        rec.c1c2().to_string(),
                        format!("≈{}", approx_decimal(rec.c1c2(), 6)),
                        if rec.has_integral_basket() { "yes" } else { "no" }.to_string(),
                        witness_text(rec),
                    ]
                })
                .collect();
            write_markdown(out, &header, &rows)
        }
    }
}

pub fn write_markdown(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    let width = |s: &str| s.chars().count();
    let mut widths: Vec<usize> = header.iter().map(|h| width(h)).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(width(cell));
        }
    }
    let line = |cells: &mut dyn Iterator<Item = &str>| -> String {
        let padded: Vec<String> = cells
            .zip(&widths)
            .map(|(c, &w)| format!("{c}{}", " ".repeat(w - width(c))))
            .collect();
        format!("| {} |\n", padded.join(" | "))
    };
    out.write_all(line(&mut header.iter().copied()).as_bytes())?;
    let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
    writeln!(out, "|-{}-|", rule.join("-|-"))?;
    for row in rows {
        out.write_all(line(&mut row.iter().map(String::as_str)).as_bytes())?;
    }
    Ok(())
}

#[derive(Debug, thiserror::Error)]
pub enum RecordParseError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("line {line}: {message}")]
    Row { line: u64, message: String },
    #[error("line {line}: {source}")]
    Record { line: u64, source: RecordError },
}

/// Parses CSV written by [`write_records`] back into verified records.
pub fn parse_records_csv(text: &str, chi0: i64, depth: u32) -> Result<Vec<ChernRecord>, RecordParseError> {
    let mut reader = csv::ReaderBuilder::new().from_reader(text.as_bytes());
    let header = reader.headers()?.clone();
    if header.iter().collect::<Vec<_>>() != RECORD_COLUMNS {
        return Err(RecordParseError::Row {
            line: 1,
            message: format!("unexpected header `{}`", header.iter().collect::<Vec<_>>().join(",")),
        });
    }
    let mut out = Vec::new();
    for row in reader.records() {
        let row = row?;
        let line = row.position().map_or(0, |p| p.line());
        let bad = |message: String| RecordParseError::Row { line, message };
        let indices: IndexMultiset = row[0].parse().map_err(|e: BasketError| bad(e.to_string()))?;
        let cartier: u64 = row[1].parse().map_err(|_| bad(format!("bad r_X `{}`", &row[1])))?;
        let c1c2: Rational = parse_rational(&row[2]).map_err(|e| bad(e.to_string()))?;
        let has: bool = row[3].parse().map_err(|_| bad(format!("bad flag `{}`", &row[3])))?;
        let witness = if row[4].is_empty() {
            None
        } else {
            Some(row[4].parse::<Basket>().map_err(|e| bad(e.to_string()))?)
        };
        if has != witness.is_some() {
            return Err(bad("has_integral_basket disagrees with the witness column".into()));
        }
        let rec = ChernRecord::from_parts(indices, chi0, c1c2, cartier, witness, depth)
            .map_err(|source| RecordParseError::Record { line, source })?;
        out.push(rec);
    }
    Ok(out)
}

/// One row of the `chi(-nK)` series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesRow {
    pub n: u64,
    pub l_value: Rational,
    pub chi: Rational,
}

#[derive(Serialize)]
struct SeriesJson {
    n: u64,
    l: String,
    chi: String,
}

pub fn write_series(out: &mut dyn Write, rows: &[SeriesRow], format: OutputFormat) -> io::Result<()> {
    let header = ["n", "l(n+1)", "chi(-nK)"];
    match format {
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(header)?;
            for r in rows {
                w.write_record([r.n.to_string(), r.l_value.to_string(), r.chi.to_string()])?;
            }
            w.flush()
        }
        OutputFormat::Jsonl => {
            for r in rows {
                let row = SeriesJson {
                    n: r.n,
                    l: r.l_value.to_string(),
                    chi: r.chi.to_string(),
                };
                serde_json::to_writer(&mut *out, &row)?;
                out.write_all(b"\n")?;
            }
            Ok(())
        }
        OutputFormat::Markdown => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| vec![r.n.to_string(), r.l_value.to_string(), r.chi.to_string()])
                .collect();
            write_markdown(out, &header, &cells)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Vec<ChernRecord> {
        ["2^3,4,7,9", "7^3", "2^16"]
            .iter()
            .map(|s| ChernRecord::compute(s.parse().unwrap(), 1, 2).unwrap())
            .collect()
    }

    #[test]
    fn csv_shape() {
        let mut buf = Vec::new();
        write_records(&mut buf, &sample(), OutputFormat::Csv).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "multiset,r_X,c1c2,has_integral_basket,witness");
        assert_eq!(lines[1], "\"2^3,4,7,9\",252,1/252,false,");
        assert_eq!(lines[2], "7^3,7,24/7,true,\"(1,7),(2,7),(3,7)\"");
        assert_eq!(lines[3], "2^16,2,0,true,\"(1,2)^16\"");
    }

    #[test]
    fn csv_round_trip() {
        let recs = sample();
        let mut buf = Vec::new();
        write_records(&mut buf, &recs, OutputFormat::Csv).unwrap();
        let back = parse_records_csv(std::str::from_utf8(&buf).unwrap(), 1, 2).unwrap();
        assert_eq!(back, recs);
    }

    #[test]
    fn jsonl_shape() {
        let mut buf = Vec::new();
        write_records(&mut buf, &sample()[..1], OutputFormat::Jsonl).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "{\"multiset\":\"2^3,4,7,9\",\"r_X\":252,\"c1c2\":\"1/252\",\"has_integral_basket\":false,\"witness\":null}\n"
        );
    }

    #[test]
    fn markdown_is_aligned() {
        let mut buf = Vec::new();
        write_records(&mut buf, &sample(), OutputFormat::Markdown).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let widths: Vec<usize> = text.lines().map(|l| l.chars().count()).collect();
        assert!(widths.windows(2).all(|w| w[0] == w[1]), "{text}");
        assert!(text.contains("≈0.003968"));
    }

    #[test]
    fn tampered_csv_is_rejected() {
        let text = "multiset,r_X,c1c2,has_integral_basket,witness\n7^3,7,24/7,true,\"(1,7)^3\"\n";
        assert!(matches!(
            parse_records_csv(text, 1, 2),
            Err(RecordParseError::Record { .. })
        ));
        let text = "multiset,r_X,c1c2,has_integral_basket,witness\n7^3,7,24/7,false,\"(1,7),(2,7),(3,7)\"\n";
        assert!(parse_records_csv(text, 1, 2).is_err());
    }
}
