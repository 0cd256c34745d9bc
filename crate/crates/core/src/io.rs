//! CSV and JSON interchange. Rationals always travel as reduced `num/den`
//! strings and floats as shortest round-trip decimals.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::chain::StochasticMatrix;
use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, to_f64, Integer, Rational};
use crate::steady_state::{PowerIterate, SimulationResult, SteadyStateVector};
use crate::verifier::{
    IdentityReport, QInvarianceReport, SuiteReport, TruncationRow, VerificationReport,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    Json,
    #[default]
    Csv,
}

fn csv_err(e: csv::Error) -> Error {
    Error::Parse(format!("csv: {e}"))
}

fn write_records<I, R>(header: Option<&[&str]>, records: I) -> String
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut w = csv::WriterBuilder::new()
        .flexible(true)
        .from_writer(Vec::new());
    if let Some(h) = header {
        w.write_record(h).expect("writing to memory");
    }
    for r in records {
        w.write_record(r).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv output is utf-8")
}

/// Shortest round-trip decimal, switching to exponent form for very small
/// or large magnitudes.
pub fn format_f64(x: f64) -> String {
    serde_json::to_string(&x).unwrap_or_else(|_| x.to_string())
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn to_json_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

pub fn sequence_output(terms: &[Integer], format: Format) -> String {
    let terms: Vec<String> = terms.iter().map(|t| t.to_string()).collect();
    match format {
        Format::Csv => write_records(None, terms.iter().map(|t| [t])),
        Format::Json => to_json_string(&json!(terms)),
    }
}

/// `{"n": …, "family": …, "rows": [["5/6", …], …]}`.
pub fn matrix_json(m: &StochasticMatrix, family: &str) -> Value {
    let rows: Vec<Vec<String>> = m.to_rows().iter().map(|r| strings(r)).collect();
    json!({ "n": m.n(), "family": family, "rows": rows })
}

pub fn matrix_output(m: &StochasticMatrix, family: &str, format: Format) -> String {
    match format {
        Format::Csv => write_records(None, m.to_rows().iter().map(|r| strings(r))),
        Format::Json => to_json_string(&matrix_json(m, family)),
    }
}

#[derive(Deserialize)]
struct MatrixDoc {
    n: Option<usize>,
    rows: Vec<Vec<String>>,
}

fn parse_rows(rows: Vec<Vec<String>>) -> Result<StochasticMatrix> {
    let rows = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|s| parse_rational(s))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    StochasticMatrix::from_rows(rows)
}

/// Reads a matrix written by [`matrix_output`] in either format. JSON is
/// recognised by a leading `{`.
pub fn parse_matrix(text: &str) -> Result<StochasticMatrix> {
    if text.trim_start().starts_with('{') {
        let doc: MatrixDoc =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("json: {e}")))?;
        let m = parse_rows(doc.rows)?;
        if let Some(n) = doc.n {
            if n != m.n() {
                return Err(Error::DimensionMismatch(format!(
                    "declared n={n} but {} rows given",
                    m.n()
                )));
            }
        }
        return Ok(m);
    }
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let rows = rdr
        .records()
        .map(|r| r.map(|rec| rec.iter().map(str::to_string).collect()))
        .collect::<std::result::Result<Vec<Vec<String>>, _>>()
        .map_err(csv_err)?;
    if rows.is_empty() {
        return Err(Error::Parse("empty matrix".into()));
    }
    parse_rows(rows)
}

/// `{"pi": ["5/6", …]}` or one fraction per line.
pub fn exact_vector_output(pi: &SteadyStateVector, format: Format) -> String {
    let s = strings(&pi.probs);
    match format {
        Format::Csv => write_records(None, s.iter().map(|x| [x])),
        Format::Json => to_json_string(&json!({ "pi": s })),
    }
}

/// `{"pi": [0.83…, …], "tol": …}` or one float per line.
pub fn approx_vector_output(probs: &[f64], tol: Option<f64>, format: Format) -> String {
    match format {
        Format::Csv => write_records(None, probs.iter().map(|p| [format_f64(*p)])),
        Format::Json => {
            let mut v = json!({ "pi": probs });
            if let Some(t) = tol {
                v["tol"] = json!(t);
            }
            to_json_string(&v)
        }
    }
}

pub fn power_output(p: &PowerIterate, format: Format) -> String {
    match format {
        Format::Csv => approx_vector_output(&p.probs, None, format),
        Format::Json => to_json_string(&json!({
            "pi": p.probs, "tol": p.tol, "iterations": p.iterations
        })),
    }
}

pub fn simulation_output(s: &SimulationResult, format: Format) -> String {
    match format {
        Format::Csv => approx_vector_output(&s.empirical, None, format),
        Format::Json => {
            let mut v = serde_json::to_value(s).expect("simulation result serializes");
            v["pi"] = v["empirical"].clone();
            to_json_string(&v)
        }
    }
}

pub fn report_json(r: &VerificationReport) -> Value {
    json!({
        "family": r.family.slug(),
        "n": r.family.n(),
        "params": r.family.params(),
        "predicted": strings(&r.predicted.probs),
        "solved": strings(&r.solved.probs),
        "exact_match": r.exact_match,
        "max_gap": format_rational(&r.max_gap),
        "notes": r.notes,
    })
}

const SUMMARY_HEADER: [&str; 5] = ["family", "n", "params", "exact_match", "max_gap"];

fn summary_record(r: &VerificationReport) -> [String; 5] {
    [
        r.family.slug().to_string(),
        r.family.n().to_string(),
        r.family.params(),
        r.exact_match.to_string(),
        format_rational(&r.max_gap),
    ]
}

/// Summary table `family,n,params,exact_match,max_gap`.
pub fn summary_csv(reports: &[VerificationReport]) -> String {
    write_records(Some(&SUMMARY_HEADER), reports.iter().map(summary_record))
}

pub fn report_output(r: &VerificationReport, format: Format) -> String {
    match format {
        Format::Csv => summary_csv(std::slice::from_ref(r)),
        Format::Json => to_json_string(&report_json(r)),
    }
}

fn q_json(q: &QInvarianceReport) -> Value {
    json!({
        "family": q.base.slug(),
        "n": q.base.n(),
        "reference": strings(&q.reference.probs),
        "members": q.members.iter().map(|(f, ok)| json!({
            "family": f.slug(), "params": f.params(), "identical": ok
        })).collect::<Vec<_>>(),
        "all_identical": q.all_identical,
    })
}

fn identities_json(r: &IdentityReport) -> Value {
    json!({ "max_n": r.max_n, "all_hold": r.all_hold(), "failures": r.failures })
}

#[derive(Serialize)]
struct GapRow {
    n: usize,
    gap: String,
    gap_f64: f64,
}

fn gap_rows(rows: &[(usize, Rational)]) -> Vec<GapRow> {
    rows.iter()
        .map(|(n, gap)| GapRow {
            n: *n,
            gap: format_rational(gap),
            gap_f64: to_f64(gap),
        })
        .collect()
}

pub fn truncation_pairs(rows: &[TruncationRow]) -> Vec<(usize, Rational)> {
    rows.iter().map(|r| (r.n, r.gap.clone())).collect()
}

/// Gap table `n,gap` with `gap` as a float; the JSON form also carries the
/// exact certified bound.
pub fn gap_table_output(rows: &[(usize, Rational)], format: Format) -> String {
    match format {
        Format::Csv => write_records(
            Some(&["n", "gap"]),
            rows.iter()
                .map(|(n, g)| [n.to_string(), format_f64(to_f64(g))]),
        ),
        Format::Json => to_json_string(&json!(gap_rows(rows))),
    }
}

/// Whole-suite output: the summary table for CSV, everything for JSON.
pub fn suite_output(s: &SuiteReport, format: Format) -> String {
    match format {
        Format::Csv => summary_csv(&s.reports),
        Format::Json => to_json_string(&json!({
            "all_green": s.all_green(),
            "reports": s.reports.iter().map(report_json).collect::<Vec<_>>(),
            "q_invariance": s.q_checks.iter().map(q_json).collect::<Vec<_>>(),
            "beta_identity": { "max_n": s.beta_identity_max_n, "holds": s.beta_identity_ok },
            "identities": identities_json(&s.identities),
            "truncation": gap_rows(&truncation_pairs(&s.truncation)),
            "infinite_recursion_holds": s.infinite_recursion_ok,
        })),
    }
}

/// Machine-readable error object written to standard error.
pub fn error_json(kind: &str, message: &str, exit_code: i32) -> String {
    let v = json!({ "error": { "kind": kind, "message": message, "exit_code": exit_code } });
    let mut s = serde_json::to_string(&v).expect("json values serialize");
    s.push('\n');
    s
}

/// `max |a_i - b_i|` between a float vector and an exact one.
pub fn linf_f64(approx: &[f64], exact: &SteadyStateVector) -> f64 {
    approx
        .iter()
        .zip(&exact.probs)
        .map(|(a, e)| (a - to_f64(e)).abs())
        .fold(0.0, f64::max)
}
