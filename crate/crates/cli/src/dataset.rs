//! CSV ingestion into typed columns.

use std::collections::HashSet;
use std::io::Read;

use freqstat::data::{RawSample, ScaleLevel};

use crate::error::CliError;

#[derive(Debug, Clone)]
pub struct Column {
    pub name: String,
    pub scale: ScaleLevel,
    cells: Vec<String>,
    numbers: Option<Vec<f64>>,
}

impl Column {
    pub fn cells(&self) -> &[String] {
        &self.cells
    }

    pub fn numbers(&self) -> Result<&[f64], CliError> {
        self.numbers
            .as_deref()
            .ok_or_else(|| CliError::Data(format!("column '{}' is not numeric", self.name)))
    }

    pub fn sample(&self) -> Result<RawSample, CliError> {
        Ok(match self.scale {
            ScaleLevel::Nominal => RawSample::nominal(&self.cells)?,
            level => RawSample::new(self.numbers()?.to_vec(), level)?,
        })
    }
}

/// An n × m data matrix with one scale level per column.
#[derive(Debug, Clone)]
pub struct Dataset {
    columns: Vec<Column>,
    n: usize,
}

fn rows_list(rows: &[usize]) -> String {
    let shown: Vec<String> = rows.iter().take(20).map(|r| r.to_string()).collect();
    let more = if rows.len() > 20 { format!(" and {} more", rows.len() - 20) } else { String::new() };
    format!("{}{more}", shown.join(", "))
}

/// Reads comma-separated data with a header row. Columns named in `schema`
/// get that scale level; the others are interval-scaled when every cell
/// parses as a number and nominal otherwise. Rows are numbered from 1,
/// counting data rows only.
pub fn ingest_csv<R: Read>(input: R, schema: &[(String, ScaleLevel)]) -> Result<Dataset, CliError> {
    let mut reader = csv::ReaderBuilder::new().flexible(true).trim(csv::Trim::All).from_reader(input);
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| CliError::Data(format!("unreadable header: {e}")))?
        .iter()
        .map(str::to_string)
        .collect();
    if header.is_empty() || header.iter().all(String::is_empty) {
        return Err(CliError::Data("no data rows".to_string()));
    }
    let mut seen = HashSet::new();
    for name in &header {
        if !seen.insert(name.as_str()) {
            return Err(CliError::Data(format!("duplicate column name '{name}'")));
        }
    }
    for (name, _) in schema {
        if !seen.contains(name.as_str()) {
            return Err(CliError::Data(format!("schema names column '{name}' which is not in the header")));
        }
    }
    let m = header.len();
    let mut cells: Vec<Vec<String>> = vec![Vec::new(); m];
    let mut ragged = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::Data(format!("row {}: {e}", i + 1)))?;
        if record.len() != m {
            ragged.push(i + 1);
            continue;
        }
        for (col, cell) in cells.iter_mut().zip(record.iter()) {
            col.push(cell.to_string());
        }
    }
    if !ragged.is_empty() {
        return Err(CliError::Data(format!("expected {m} fields in rows {}", rows_list(&ragged))));
    }
    let n = cells[0].len();
    if n == 0 {
        return Err(CliError::Data("no data rows".to_string()));
    }
    let mut columns = Vec::with_capacity(m);
    for (name, cells) in header.into_iter().zip(cells) {
        let parsed: Vec<Option<f64>> = cells.iter().map(|c| c.parse::<f64>().ok().filter(|v| v.is_finite())).collect();
        let declared = schema.iter().find(|(s, _)| *s == name).map(|(_, l)| *l);
        let all_numeric = parsed.iter().all(Option::is_some);
        let scale = declared.unwrap_or(if all_numeric { ScaleLevel::MetricInterval } else { ScaleLevel::Nominal });
        let numbers = if scale == ScaleLevel::Nominal {
            all_numeric.then(|| parsed.iter().flatten().copied().collect())
        } else {
            let bad: Vec<usize> = parsed.iter().enumerate().filter(|(_, v)| v.is_none()).map(|(i, _)| i + 1).collect();
            if !bad.is_empty() {
                return Err(CliError::Data(format!(
                    "column '{name}' declared {scale:?} has non-numeric cells in rows {}",
                    rows_list(&bad)
                )));
            }
            Some(parsed.into_iter().flatten().collect())
        };
        columns.push(Column {
            name,
            scale,
            cells,
            numbers,
        });
    }
    Ok(Dataset { columns, n })
}

impl Dataset {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, name: &str) -> Result<&Column, CliError> {
        self.columns
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| CliError::Data(format!("no column named '{name}'")))
    }

    pub fn numbers(&self, name: &str) -> Result<&[f64], CliError> {
        self.column(name)?.numbers()
    }

    /// Splits the numeric column `values` by the distinct cells of `by`,
    /// in order of first appearance.
    pub fn groups(&self, values: &str, by: &str) -> Result<(Vec<String>, Vec<Vec<f64>>), CliError> {
        let xs = self.numbers(values)?;
        let keys = self.column(by)?.cells();
        let mut names: Vec<String> = Vec::new();
        let mut groups: Vec<Vec<f64>> = Vec::new();
        for (x, k) in xs.iter().zip(keys) {
            match names.iter().position(|g| g == k) {
                Some(i) => groups[i].push(*x),
                None => {
                    names.push(k.clone());
                    groups.push(vec![*x]);
                }
            }
        }
        Ok((names, groups))
    }
}
