use std::io::{self, Write};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use quartet::exactnum::format_rat;
use quartet::quartic::{Mode, Quadruple};

/// One emitted quadruple. Integers and rationals travel as strings so nothing is
/// rounded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub family: Option<String>,
    pub param: Option<String>,
    #[serde(rename = "A")]
    pub a_entry: String,
    #[serde(rename = "B")]
    pub b_entry: String,
    #[serde(rename = "C")]
    pub c_entry: String,
    #[serde(rename = "D")]
    pub d_entry: String,
    pub a: String,
    pub mode: String,
}

impl OutputRecord {
    pub fn new(family: Option<String>, param: Option<String>, q: &Quadruple, mode: Mode) -> Self {
        let [a, b, c, d] = &q.entries;
        OutputRecord {
            family,
            param,
            a_entry: a.to_string(),
            b_entry: b.to_string(),
            c_entry: c.to_string(),
            d_entry: d.to_string(),
            a: format_rat(&q.a),
            mode: match mode {
                Mode::Raw => "raw",
                Mode::Canonical => "canonical",
            }
            .to_string(),
        }
    }

    fn text(&self) -> String {
        let mut s = String::new();
        if let Some(f) = &self.family {
            s.push_str(f);
            s.push(' ');
        }
        if let Some(p) = &self.param {
            s.push_str(&format!("param={p} "));
        }
        s.push_str(&format!(
            "A={} B={} C={} D={} a={}",
            self.a_entry, self.b_entry, self.c_entry, self.d_entry, self.a
        ));
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    /// One JSON object per line.
    Json,
    Csv,
}

/// Streams records in one format; csv writes its header before the first record.
pub enum RecordWriter<W: Write> {
    Text(W),
    Json(W),
    Csv(Box<csv::Writer<W>>),
}

impl<W: Write> RecordWriter<W> {
    pub fn new(format: Format, out: W) -> Self {
        match format {
            Format::Text => RecordWriter::Text(out),
            Format::Json => RecordWriter::Json(out),
            Format::Csv => RecordWriter::Csv(Box::new(csv::Writer::from_writer(out))),
        }
    }

    pub fn write(&mut self, rec: &OutputRecord) -> io::Result<()> {
        match self {
            RecordWriter::Text(out) => writeln!(out, "{}", rec.text()),
            RecordWriter::Json(out) => {
                serde_json::to_writer(&mut *out, rec)?;
                writeln!(out)
            }
            RecordWriter::Csv(w) => {
                w.serialize(rec).map_err(io::Error::other)?;
                w.flush()
            }
        }
    }
}
