use std::io::Write;

use anyhow::Result;
use clap::ValueEnum;
use fanspec::search::round_sig15;
use serde::Deserialize;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Tsv,
}

/// One output row with ordered fields.
#[derive(Default)]
pub struct Row(Vec<(&'static str, Value)>);

impl Row {
    pub fn new() -> Self {
        Row::default()
    }

    pub fn field(mut self, name: &'static str, v: impl Into<Value>) -> Self {
        self.0.push((name, v.into()));
        self
    }

    pub fn real(self, name: &'static str, x: f64) -> Self {
        self.field(name, round_sig15(x))
    }

    pub fn opt_real(self, name: &'static str, x: Option<f64>) -> Self {
        self.field(name, x.map(round_sig15))
    }
}

/// Writes rows as JSON Lines or as TSV with a single header line.
pub struct RowWriter<W: Write> {
    sink: W,
    format: Format,
    header_done: bool,
}

impl<W: Write> RowWriter<W> {
    pub fn new(sink: W, format: Format) -> Self {
        RowWriter {
            sink,
            format,
            header_done: false,
        }
    }

    pub fn write(&mut self, row: Row) -> Result<()> {
        match self.format {
            Format::Json => {
                let obj: Map<String, Value> =
                    row.0.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
                serde_json::to_writer(&mut self.sink, &obj)?;
                writeln!(self.sink)?;
            }
            Format::Tsv => {
                if !self.header_done {
                    let names: Vec<&str> = row.0.iter().map(|(k, _)| *k).collect();
                    writeln!(self.sink, "{}", names.join("\t"))?;
                    self.header_done = true;
                }
                let cells: Vec<String> = row.0.iter().map(|(_, v)| tsv_cell(v)).collect();
                writeln!(self.sink, "{}", cells.join("\t"))?;
            }
        }
        Ok(())
    }

    pub fn finish(mut self) -> Result<()> {
        self.sink.flush()?;
        Ok(())
    }
}

fn tsv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() => format!("{x}"),
            _ => n.to_string(),
        },
        Value::Array(items) => items.iter().map(tsv_cell).collect::<Vec<_>>().join(","),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tsv_and_json_agree() {
        let row = || {
            Row::new()
                .field("graph6", "Bw")
                .field("n", 3)
                .real("q1", 5.0 + 21f64.sqrt())
        };
        let mut json = Vec::new();
        let mut w = RowWriter::new(&mut json, Format::Json);
        w.write(row()).unwrap();
        w.finish().unwrap();
        let mut tsv = Vec::new();
        let mut w = RowWriter::new(&mut tsv, Format::Tsv);
        w.write(row()).unwrap();
        w.finish().unwrap();
        assert_eq!(
            String::from_utf8(json).unwrap(),
            "{\"graph6\":\"Bw\",\"n\":3,\"q1\":9.58257569495584}\n"
        );
        assert_eq!(
            String::from_utf8(tsv).unwrap(),
            "graph6\tn\tq1\nBw\t3\t9.58257569495584\n"
        );
    }
}
