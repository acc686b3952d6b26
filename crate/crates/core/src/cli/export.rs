//! Table rendering for `heapgame tables` and the matching parsers.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::analysis::QTriple;
use crate::error::{Error, Result};
use crate::model::GameParams;
use crate::numeration::{tail_parity, NumerationSystem};
use crate::oracle::{Row, SequenceTable, Source};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Plain,
}

#[derive(Serialize, Deserialize)]
struct ParamsJson {
    s: u64,
    t: u64,
}

#[derive(Serialize, Deserialize)]
struct AbJson {
    params: ParamsJson,
    source: Source,
    rows: Vec<[u64; 3]>,
}

fn params_json(p: GameParams) -> ParamsJson {
    ParamsJson { s: p.s(), t: p.t() }
}

pub fn render_ab(table: &SequenceTable, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Csv => out = to_csv(&table.rows),
        Format::Json => {
            let doc = AbJson {
                params: params_json(table.params),
                source: table.source,
                rows: table.rows.iter().map(|r| [r.n, r.a, r.b]).collect(),
            };
            out = serde_json::to_string(&doc).expect("plain data serializes");
            out.push('\n');
        }
        Format::Plain => {
            let w = table
                .rows
                .last()
                .map_or(1, |r| r.b.to_string().len())
                .max(3);
            let _ = writeln!(out, "{:>w$} {:>w$} {:>w$}", "n", "A_n", "B_n");
            for r in &table.rows {
                let _ = writeln!(out, "{:>w$} {:>w$} {:>w$}", r.n, r.a, r.b);
            }
        }
    }
    out
}

fn bad(msg: impl Into<String>) -> Error {
    Error::MalformedRepresentation(msg.into())
}

fn to_csv<T: Serialize>(rows: &[T]) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("plain data serializes");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv of ASCII fields")
}

fn from_csv<T: serde::de::DeserializeOwned>(text: &str, header: &str) -> Result<Vec<T>> {
    if text.lines().next() != Some(header) {
        return Err(bad(format!("missing header {header}")));
    }
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| bad(e.to_string()))
}

/// Inverse of the CSV form of [`render_ab`].
pub fn parse_ab_csv(text: &str) -> Result<Vec<Row>> {
    from_csv(text, "n,a,b")
}

/// Inverse of the JSON form of [`render_ab`].
pub fn parse_ab_json(text: &str) -> Result<SequenceTable> {
    let doc: AbJson = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    Ok(SequenceTable {
        params: GameParams::new(doc.params.s, doc.params.t)?,
        source: doc.source,
        rows: doc
            .rows
            .into_iter()
            .map(|[n, a, b]| Row { n, a, b })
            .collect(),
    })
}

/// One line per `m` in `0..=max`: the value, its digits big-endian and
/// whether it is evil or old.
pub fn render_representations(system: &NumerationSystem, max: u64, format: Format) -> String {
    let params = system.params();
    let rows: Vec<RepresentationRow> = (0..=max)
        .map(|m| {
            let rep = system.represent(m);
            RepresentationRow {
                m,
                representation: rep.render(params),
                parity: tail_parity(&rep).as_str().to_string(),
            }
        })
        .collect();
    let mut out = String::new();
    match format {
        Format::Csv => out = to_csv(&rows),
        Format::Json => {
            let doc = json!({
                "params": params_json(params),
                "rows": rows.iter().map(|r| (r.m, &r.representation, &r.parity)).collect::<Vec<_>>(),
            });
            out = doc.to_string();
            out.push('\n');
        }
        Format::Plain => {
            let w = rows.last().map_or(1, |r| r.representation.len()).max(14);
            let mw = max.to_string().len().max(1);
            let _ = writeln!(out, "{:>mw$} {:>w$} parity", "m", "representation");
            for RepresentationRow {
                m,
                representation,
                parity,
            } in &rows
            {
                let _ = writeln!(out, "{m:>mw$} {representation:>w$} {parity}");
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationRow {
    pub m: u64,
    pub representation: String,
    pub parity: String,
}

/// Inverse of the CSV form of [`render_representations`].
pub fn parse_representations_csv(text: &str) -> Result<Vec<RepresentationRow>> {
    from_csv(text, "m,representation,parity")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QRow {
    pub n: u64,
    pub q: u64,
    pub part: String,
    pub a_prime: Option<u64>,
    pub b_prime: Option<u64>,
}

/// Inverse of the CSV form of [`render_q`].
pub fn parse_q_csv(text: &str) -> Result<Vec<QRow>> {
    from_csv(text, "n,q,part,a_prime,b_prime")
}

fn part_label(tr: &QTriple, n: u64) -> &'static str {
    let in1 = tr.q1_indices.binary_search(&n).is_ok();
    let in2 = tr.q2_indices.binary_search(&n).is_ok();
    match (in1, in2) {
        (true, true) => "both",
        (true, false) => "first",
        _ => "repeat",
    }
}

fn opt(v: Option<&u64>) -> String {
    v.map_or_else(String::new, u64::to_string)
}

/// `Q_n`, whether index `n` is a first occurrence or a repeat, and
/// `A'_n`, `B'_n` where already known.
pub fn render_q(tr: &QTriple, format: Format) -> String {
    let mut out = String::new();
    let n_len = tr.q_seq.len() as u64;
    match format {
        Format::Csv => {
            let rows: Vec<QRow> = (0..n_len)
                .map(|n| {
                    let i = n as usize;
                    QRow {
                        n,
                        q: tr.q_seq[i],
                        part: part_label(tr, n).to_string(),
                        a_prime: tr.a_prime.get(i).copied(),
                        b_prime: tr.b_prime.get(i).copied(),
                    }
                })
                .collect();
            out = to_csv(&rows);
        }
        Format::Json => {
            let doc = json!({
                "params": params_json(tr.params),
                "q": tr.q_seq,
                "a_prime": tr.a_prime,
                "b_prime": tr.b_prime,
                "first_indices": tr.q1_indices,
                "repeat_indices": tr.q2_indices,
            });
            out = doc.to_string();
            out.push('\n');
        }
        Format::Plain => {
            let w = n_len.to_string().len().max(3);
            let _ = writeln!(
                out,
                "{:>w$} {:>w$} {:>6} {:>w$} {:>w$}",
                "n", "Q_n", "part", "A'_n", "B'_n"
            );
            for n in 0..n_len {
                let i = n as usize;
                let _ = writeln!(
                    out,
                    "{n:>w$} {:>w$} {:>6} {:>w$} {:>w$}",
                    tr.q_seq[i],
                    part_label(tr, n),
                    opt(tr.a_prime.get(i)),
                    opt(tr.b_prime.get(i))
                );
            }
        }
    }
    out
}
