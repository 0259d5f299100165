use std::io::Write;

use clap::ValueEnum;
use knutson::table::CharacterTable;
use serde::Serialize;

use crate::error::CliResult;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

pub fn json<T: Serialize>(out: &mut impl Write, value: &T) -> CliResult<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

pub fn csv_rows(out: &mut impl Write, rows: &[Vec<String>]) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Left-aligned first column, right-aligned others.
pub fn aligned(out: &mut impl Write, rows: &[Vec<String>]) -> CliResult<()> {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|j| rows.iter().filter_map(|r| r.get(j)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    for row in rows {
        let mut line = String::new();
        for (j, cell) in row.iter().enumerate() {
            let pad = widths[j] - cell.chars().count();
            if j == 0 {
                line.push_str(cell);
                line.push_str(&" ".repeat(pad));
            } else {
                line.push_str("  ");
                line.push_str(&" ".repeat(pad));
                line.push_str(cell);
            }
        }
        writeln!(out, "{}", line.trim_end())?;
    }
    Ok(())
}

fn table_rows(table: &CharacterTable) -> Vec<Vec<String>> {
    let mut rows = Vec::with_capacity(table.num_irreducibles() + 2);
    let mut head = vec!["class".to_string()];
    head.extend(table.classes.iter().map(|c| c.label.clone()));
    rows.push(head);
    let mut sizes = vec!["size".to_string()];
    sizes.extend(table.classes.iter().map(|c| c.size.to_string()));
    rows.push(sizes);
    for chi in &table.irreducibles {
        let mut row = vec![chi.label.clone()];
        row.extend(chi.values.iter().map(|v| v.to_string()));
        rows.push(row);
    }
    rows
}

pub fn table(out: &mut impl Write, table: &CharacterTable, format: Format) -> CliResult<()> {
    match format {
        Format::Json => json(out, table),
        Format::Csv => csv_rows(out, &table_rows(table)),
        Format::Text => {
            writeln!(out, "{}: order {}, {} classes", table.label, table.order, table.num_classes())?;
            aligned(out, &table_rows(table))
        }
    }
}
