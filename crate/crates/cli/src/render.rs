//! CSV and plain-text table output.

use clap::ValueEnum;
use serde::Serialize;

use ringspec::bounds::{write_csv, BoundReport};
use ringspec::matrix_ring::CountReport;
use ringspec::oracle::{OracleResult, VerifyReport, Witness};
use ringspec::{ratio_string, SpectrumReport};

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Table,
}

fn csv_text<T: Serialize>(rows: impl IntoIterator<Item = T>) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

/// Left-aligned columns separated by two spaces.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for row in rows {
        out += &line(row.iter().map(String::as_str).collect());
    }
    out
}

#[derive(Serialize)]
struct SpectrumRow {
    n: usize,
    q: u64,
    method: String,
    value: String,
    multiplicity: String,
}

fn spectrum_rows(n: usize, q: u64, report: &SpectrumReport) -> Vec<SpectrumRow> {
    report
        .eigenvalues
        .iter()
        .map(|e| SpectrumRow {
            n,
            q,
            method: report.method.to_string(),
            value: e.value.to_string(),
            multiplicity: e.multiplicity.to_string(),
        })
        .collect()
}

pub fn spectrum_csv(n: usize, q: u64, report: &SpectrumReport) -> anyhow::Result<String> {
    csv_text(spectrum_rows(n, q, report))
}

pub fn spectrum_table(n: usize, q: u64, report: &SpectrumReport) -> String {
    let rows: Vec<Vec<String>> = spectrum_rows(n, q, report)
        .into_iter()
        .map(|r| vec![r.value, r.multiplicity])
        .collect();
    format!(
        "T_{n}({q}) Laplacian spectrum ({}), {} vertices, lambda_max = {}\n{}",
        report.method,
        report.v,
        report.lambda_max,
        table(&["eigenvalue", "multiplicity"], &rows)
    )
}

pub fn bounds_csv(rows: &[BoundReport]) -> anyhow::Result<String> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    Ok(String::from_utf8(buf)?)
}

pub fn bounds_table(rows: &[BoundReport]) -> String {
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let approx = ringspec::bounds::to_f64(&r.value);
            vec![
                r.target.to_string(),
                r.quantity.to_string(),
                r.formula.to_string(),
                ratio_string(&r.value),
                r.value_int.to_string(),
                format!("{approx:.4}"),
                r.notes.join("; "),
            ]
        })
        .collect();
    table(
        &["target", "quantity", "formula", "exact", "rounded", "approx", "notes"],
        &cells,
    )
}

#[derive(Serialize)]
struct OracleRow<'a> {
    graph: &'a str,
    quantity: String,
    value: usize,
    nodes_explored: u64,
    witness: String,
}

fn witness_text(w: &Witness) -> String {
    let items = match w {
        Witness::Set(v) | Witness::Colouring(v) => v,
    };
    items.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

pub fn oracle_csv(r: &OracleResult) -> anyhow::Result<String> {
    csv_text([OracleRow {
        graph: &r.graph,
        quantity: r.quantity.to_string(),
        value: r.value,
        nodes_explored: r.nodes_explored,
        witness: witness_text(&r.witness),
    }])
}

pub fn oracle_table(r: &OracleResult) -> String {
    let kind = match r.witness {
        Witness::Set(_) => "vertex set",
        Witness::Colouring(_) => "colouring",
    };
    format!(
        "{}({}) = {}\nsearch nodes: {}\nwitness ({kind}): {}\n",
        r.quantity,
        r.graph,
        r.value,
        r.nodes_explored,
        witness_text(&r.witness)
    )
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

pub fn verify_csv(report: &VerifyReport) -> anyhow::Result<String> {
    #[derive(Serialize)]
    struct Row<'a> {
        n: String,
        q: String,
        check: &'a str,
        expected: &'a str,
        actual: &'a str,
        status: String,
    }
    csv_text(report.rows.iter().map(|r| Row {
        n: opt(r.n),
        q: opt(r.q),
        check: &r.check,
        expected: &r.expected,
        actual: &r.actual,
        status: format!("{:?}", r.status).to_lowercase(),
    }))
}

pub fn verify_table(report: &VerifyReport) -> String {
    let rows: Vec<Vec<String>> = report
        .rows
        .iter()
        .map(|r| {
            vec![
                opt(r.n),
                opt(r.q),
                r.check.clone(),
                r.expected.clone(),
                r.actual.clone(),
                format!("{:?}", r.status).to_uppercase(),
            ]
        })
        .collect();
    let s = &report.summary;
    format!(
        "{}{} pass, {} fail, {} rejected, {} skipped\n",
        table(&["n", "q", "check", "expected", "actual", "status"], &rows),
        s.pass,
        s.fail,
        s.rejected,
        s.skipped
    )
}

pub fn counts_csv(r: &CountReport) -> anyhow::Result<String> {
    #[derive(Serialize)]
    struct Row {
        n: usize,
        q: u64,
        quantity: &'static str,
        rank: String,
        value: String,
    }
    let mut rows = vec![
        Row {
            n: r.n,
            q: r.q,
            quantity: "gl_order",
            rank: String::new(),
            value: r.gl_order.to_string(),
        },
        Row {
            n: r.n,
            q: r.q,
            quantity: "c_n_q",
            rank: String::new(),
            value: ratio_string(&r.c_n_q),
        },
    ];
    rows.extend(r.rank_counts.iter().map(|(k, v)| Row {
        n: r.n,
        q: r.q,
        quantity: "rank_count",
        rank: k.to_string(),
        value: v.to_string(),
    }));
    csv_text(rows)
}

pub fn counts_table(r: &CountReport) -> String {
    let rows: Vec<Vec<String>> = r
        .rank_counts
        .iter()
        .map(|(k, v)| vec![k.to_string(), v.to_string()])
        .collect();
    format!(
        "M_{}(F_{}): |GL| = {}, c = {}\n{}",
        r.n,
        r.q,
        r.gl_order,
        ratio_string(&r.c_n_q),
        table(&["rank", "count"], &rows)
    )
}
