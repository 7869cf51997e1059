//! Text, CSV and JSON rendering. Column order is fixed by the caller and JSON
//! keys follow struct field order, so output is byte-for-byte reproducible.

use std::io::{self, Write};

use serde::Serialize;

use crate::Format;

pub struct Table<'a, T> {
    headers: &'a [&'a str],
    rows: &'a [T],
    cells: Box<dyn Fn(&T) -> Vec<String> + 'a>,
}

impl<'a, T: Serialize> Table<'a, T> {
    pub fn new(
        headers: &'a [&'a str],
        rows: &'a [T],
        cells: impl Fn(&T) -> Vec<String> + 'a,
    ) -> Self {
        Self {
            headers,
            rows,
            cells: Box::new(cells),
        }
    }
}

pub fn write_json<T: Serialize + ?Sized>(sink: &mut dyn Write, value: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *sink, value)?;
    writeln!(sink)
}

pub fn emit<T: Serialize>(
    sink: &mut dyn Write,
    fmt: Format,
    table: &Table<'_, T>,
) -> io::Result<()> {
    match fmt {
        Format::Json => write_json(sink, table.rows),
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(sink);
            w.write_record(table.headers)?;
            for row in table.rows {
                w.write_record((table.cells)(row))?;
            }
            w.flush()
        }
        Format::Text => {
            let body: Vec<Vec<String>> = table.rows.iter().map(|r| (table.cells)(r)).collect();
            let mut widths: Vec<usize> = table.headers.iter().map(|h| h.len()).collect();
            for row in &body {
                for (w, c) in widths.iter_mut().zip(row) {
                    *w = (*w).max(c.chars().count());
                }
            }
            let line = |cells: Vec<String>| {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            writeln!(
                sink,
                "{}",
                line(table.headers.iter().map(|h| h.to_string()).collect())
            )?;
            for row in body {
                writeln!(sink, "{}", line(row))?;
            }
            Ok(())
        }
    }
}
