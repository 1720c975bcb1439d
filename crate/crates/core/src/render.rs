//! Text, CSV and JSON emitters for character tables and the Pauli table.
//!
//! Output is a pure function of the table, so identical inputs give
//! byte-identical output.

use std::fmt::Write as _;
use std::io::Write;
use std::str::FromStr;

use serde::Serialize;

use crate::chars::{CharacterTable, ClassInfo};
use crate::error::{Error, Result};
use crate::pauli::PauliTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "text" | "txt" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::InvalidArgument(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Serialize)]
struct TableJson<'a> {
    group: GroupJson<'a>,
    classes: Vec<ClassJson>,
    characters: Vec<CharacterJson<'a>>,
}

#[derive(Serialize)]
struct GroupJson<'a> {
    name: &'a str,
    order: u64,
    class_count: usize,
}

#[derive(Serialize)]
struct ClassJson {
    name: String,
    size: u64,
    element_order: u32,
    /// Hex string: packed keys can exceed 53 bits.
    rep_packed: String,
}

#[derive(Serialize)]
struct CharacterJson<'a> {
    label: &'a str,
    provenance: &'static str,
    degree: String,
    values: Vec<String>,
}

/// ATLAS-style class names: element order plus a letter per order, in
/// column order (`1a, 2a, 2b, 3a, ...`).
pub fn class_names(info: &ClassInfo) -> Vec<String> {
    let mut seen = std::collections::HashMap::<u32, usize>::new();
    info.classes()
        .iter()
        .map(|c| {
            let k = seen.entry(c.element_order).or_default();
            let name = format!("{}{}", c.element_order, letters(*k));
            *k += 1;
            name
        })
        .collect()
}

fn letters(mut k: usize) -> String {
    let mut s = Vec::new();
    loop {
        s.push(b'a' + (k % 26) as u8);
        if k < 26 {
            break;
        }
        k = k / 26 - 1;
    }
    s.reverse();
    String::from_utf8(s).expect("ascii")
}

pub fn render_table(table: &CharacterTable, format: Format) -> Result<String> {
    match format {
        Format::Text => Ok(table_text(table)),
        Format::Json => table_json(table),
        Format::Csv => table_csv(table),
    }
}

fn table_json(table: &CharacterTable) -> Result<String> {
    let info = table.info();
    let names = class_names(info);
    let doc = TableJson {
        group: GroupJson {
            name: info.name(),
            order: info.order(),
            class_count: info.len(),
        },
        classes: info
            .classes()
            .iter()
            .zip(names)
            .map(|(c, name)| ClassJson {
                name,
                size: c.size,
                element_order: c.element_order,
                rep_packed: format!("{:#x}", c.rep_key),
            })
            .collect(),
        characters: table
            .rows()
            .iter()
            .map(|r| CharacterJson {
                label: &r.label,
                provenance: r.provenance.as_str(),
                degree: r.character.degree().to_string(),
                values: r.character.values().iter().map(ToString::to_string).collect(),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc)?;
    s.push('\n');
    Ok(s)
}

fn table_csv(table: &CharacterTable) -> Result<String> {
    let info = table.info();
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::InvalidArgument(format!("csv: {e}"));
    let mut header = vec!["kind".to_string(), "label".into(), "provenance".into(), "degree".into()];
    header.extend(class_names(info));
    w.write_record(&header).map_err(csv_err)?;
    let meta = |kind: &str, f: &dyn Fn(usize) -> String| {
        let mut rec = vec![kind.to_string(), String::new(), String::new(), String::new()];
        rec.extend((0..info.len()).map(f));
        rec
    };
    w.write_record(meta("size", &|c| info.class(c).size.to_string())).map_err(csv_err)?;
    w.write_record(meta("element_order", &|c| info.class(c).element_order.to_string()))
        .map_err(csv_err)?;
    w.write_record(meta("rep_packed", &|c| format!("{:#x}", info.class(c).rep_key)))
        .map_err(csv_err)?;
    for r in table.rows() {
        let mut rec = vec![
            "character".to_string(),
            r.label.clone(),
            r.provenance.as_str().into(),
            r.character.degree().to_string(),
        ];
        rec.extend(r.character.values().iter().map(ToString::to_string));
        w.write_record(&rec).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::InvalidArgument(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
}

fn table_text(table: &CharacterTable) -> String {
    let info = table.info();
    let names = class_names(info);
    let k = info.len();
    let mut grid: Vec<Vec<String>> = Vec::with_capacity(table.len() + 3);
    let head = |a: &str, b: &str, rest: Vec<String>| {
        let mut v = vec![a.to_string(), b.to_string()];
        v.extend(rest);
        v
    };
    grid.push(head("", "", names));
    grid.push(head("size", "", (0..k).map(|c| info.class(c).size.to_string()).collect()));
    grid.push(head("order", "", (0..k).map(|c| info.class(c).element_order.to_string()).collect()));
    for r in table.rows() {
        grid.push(head(
            &r.label,
            r.provenance.as_str(),
            r.character.values().iter().map(ToString::to_string).collect(),
        ));
    }
    let widths: Vec<usize> = (0..k + 2)
        .map(|j| grid.iter().map(|row| display_width(&row[j])).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    let _ = writeln!(out, "{}  order {}  classes {}", info.name(), info.order(), k);
    for (i, row) in grid.iter().enumerate() {
        let mut line = String::new();
        for (j, cell) in row.iter().enumerate() {
            let pad = widths[j] - display_width(cell);
            if j < 2 {
                line.push_str(cell);
                line.push_str(&" ".repeat(pad));
                line.push_str(if j == 1 { " |" } else { "  " });
            } else {
                line.push(' ');
                line.push_str(&" ".repeat(pad));
                line.push_str(cell);
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
        if i == 2 {
            let total: usize = widths[..2].iter().sum::<usize>() + 4 + widths[2..].iter().map(|w| w + 1).sum::<usize>();
            out.push_str(&"-".repeat(total));
            out.push('\n');
        }
    }
    out
}

/// Column count ignoring combining marks, so `θ̃1` is two columns wide.
fn display_width(s: &str) -> usize {
    s.chars().filter(|c| !('\u{0300}'..='\u{036f}').contains(c)).count()
}

/// Streams the `4^n × 4^n` Pauli table, one row at a time.
pub fn write_pauli_table(table: &PauliTable, format: Format, out: &mut dyn Write) -> Result<()> {
    let labels: Vec<String> = table.columns().iter().map(pauli_word).collect();
    match format {
        Format::Text => {
            let w = labels.iter().map(|l| l.len()).max().unwrap_or(1).max(2);
            write!(out, "{:w$} |", "")?;
            for l in &labels {
                write!(out, " {l:>w$}")?;
            }
            writeln!(out)?;
            for (i, row) in table.rows().enumerate() {
                write!(out, "{:w$} |", labels[i])?;
                for v in row {
                    write!(out, " {v:>w$}")?;
                }
                writeln!(out)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let csv_err = |e: csv::Error| Error::InvalidArgument(format!("csv: {e}"));
            let mut header = vec!["character".to_string()];
            header.extend(labels.iter().cloned());
            w.write_record(&header).map_err(csv_err)?;
            for (i, row) in table.rows().enumerate() {
                let mut rec = vec![labels[i].clone()];
                rec.extend(row.iter().map(ToString::to_string));
                w.write_record(&rec).map_err(csv_err)?;
            }
            w.flush()?;
        }
        Format::Json => {
            write!(out, "{{\n  \"qubits\": {},\n  \"labels\": ", table.qubits())?;
            serde_json::to_writer(&mut *out, &labels)?;
            write!(out, ",\n  \"rows\": [")?;
            for (i, row) in table.rows().enumerate() {
                write!(out, "{}\n    ", if i == 0 { "" } else { "," })?;
                serde_json::to_writer(&mut *out, &row)?;
            }
            writeln!(out, "\n  ]\n}}")?;
        }
    }
    Ok(())
}

/// `ZX`-style word of a Weyl index (qubit 1 leftmost); `I` for identity.
pub fn pauli_word(x: &crate::linalg2::BitVec) -> String {
    let n = x.len() / 2;
    (0..n)
        .map(|j| match (x.get(j), x.get(n + j)) {
            (false, false) => 'I',
            (true, false) => 'Z',
            (false, true) => 'X',
            (true, true) => 'Y',
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::classfn::tests::{s3_info, s3_table};
    use crate::linalg2::BitVec;

    #[test]
    fn names() {
        assert_eq!(letters(0), "a");
        assert_eq!(letters(25), "z");
        assert_eq!(letters(26), "aa");
        let info = s3_info();
        assert_eq!(class_names(&info), vec!["1a", "2a", "3a"]);
    }

    #[test]
    fn json_schema() {
        let t = s3_table(&s3_info());
        let v: serde_json::Value = serde_json::from_str(&render_table(&t, Format::Json).unwrap()).unwrap();
        assert_eq!(v["group"]["order"], 6);
        assert_eq!(v["group"]["class_count"], 3);
        assert_eq!(v["classes"].as_array().unwrap().len(), 3);
        assert_eq!(v["classes"][0]["size"], 1);
        let chars = v["characters"].as_array().unwrap();
        assert_eq!(chars.len(), 3);
        assert_eq!(chars[0]["degree"], "1");
        assert!(chars.iter().all(|c| c["values"].as_array().unwrap().len() == 3));
    }

    #[test]
    fn csv_and_text() {
        let t = s3_table(&s3_info());
        let csv = render_table(&t, Format::Csv).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 4 + 3);
        assert!(lines[0].starts_with("kind,label,provenance,degree,1a"));
        let text = render_table(&t, Format::Text).unwrap();
        assert!(text.lines().count() >= 7);
        assert_eq!(text, render_table(&t, Format::Text).unwrap());
    }

    #[test]
    fn pauli_words_and_table() {
        assert_eq!(pauli_word(&BitVec::from_bits(4, 0b1001)), "ZX");
        assert_eq!(pauli_word(&BitVec::from_bits(2, 0b11)), "Y");
        let t = PauliTable::new(1).unwrap();
        for f in [Format::Text, Format::Csv, Format::Json] {
            let mut buf = Vec::new();
            write_pauli_table(&t, f, &mut buf).unwrap();
            assert!(!buf.is_empty());
        }
        let mut buf = Vec::new();
        write_pauli_table(&t, Format::Json, &mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["rows"].as_array().unwrap().len(), 4);
    }
}
