//! Labeled CSV input and output.
//!
//! Numbers are written with Rust's shortest round-trip decimal formatting, so
//! a value read from a file and written back compares equal bit for bit.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use anyhow::{anyhow, bail, Context, Result};
use ndarray::{Array2, ArrayView2};
use simplicial_oversampling::{Class, Dataset};

pub const SYNTHETIC_COLUMN: &str = "synthetic";

#[derive(Debug, Clone)]
pub struct LabeledTable {
    pub header: Vec<String>,
    pub label_column: usize,
    pub labels: Vec<String>,
    pub minority_label: String,
    pub majority_label: String,
    pub dataset: Dataset,
}

impl LabeledTable {
    pub fn read<R: Read>(input: R, label_name: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(input);
        let header: Vec<String> = reader
            .headers()
            .context("reading CSV header")?
            .iter()
            .map(str::to_string)
            .collect();
        let label_column = header
            .iter()
            .position(|h| h == label_name)
            .ok_or_else(|| anyhow!("label column {label_name:?} not found in header {header:?}"))?;
        if header.iter().any(|h| h == SYNTHETIC_COLUMN) {
            bail!("input already has a {SYNTHETIC_COLUMN:?} column");
        }
        let dim = header.len() - 1;

        let mut values = Vec::new();
        let mut labels = Vec::new();
        for record in reader.records() {
            let record = record.context("reading CSV record")?;
            let line = record.position().map_or(0, |p| p.line());
            for (col, cell) in record.iter().enumerate() {
                if col == label_column {
                    labels.push(cell.to_string());
                    continue;
                }
                let v: f64 = cell.parse().map_err(|_| {
                    anyhow!(
                        "line {line}, column {:?}: cannot parse {cell:?} as a number",
                        header[col]
                    )
                })?;
                if !v.is_finite() {
                    bail!("line {line}, column {:?}: value {cell:?} is not finite", header[col]);
                }
                values.push(v);
            }
        }
        if labels.is_empty() {
            bail!("input has no data rows");
        }

        let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
        for l in &labels {
            *counts.entry(l.as_str()).or_default() += 1;
        }
        if counts.len() != 2 {
            let found: Vec<&str> = counts.keys().copied().collect();
            bail!(
                "expected exactly two label values in column {label_name:?}, found {}: {found:?}",
                found.len()
            );
        }
        let mut by_count: Vec<(&str, usize)> = counts.into_iter().collect();
        by_count.sort_by_key(|&(_, c)| c);
        if by_count[0].1 == by_count[1].1 {
            bail!(
                "labels {:?} and {:?} are exactly balanced ({} rows each); there is no minority class to oversample",
                by_count[0].0,
                by_count[1].0,
                by_count[0].1
            );
        }
        let minority_label = by_count[0].0.to_string();
        let majority_label = by_count[1].0.to_string();
        let classes = labels
            .iter()
            .map(|l| {
                if *l == minority_label {
                    Class::Minority
                } else {
                    Class::Majority
                }
            })
            .collect();
        let features = Array2::from_shape_vec((labels.len(), dim), values).context("ragged CSV rows")?;
        let dataset = Dataset::new(features, classes)?;
        Ok(Self {
            header,
            label_column,
            labels,
            minority_label,
            majority_label,
            dataset,
        })
    }

    /// Writes the original rows followed by `synthetic` minority rows, with a
    /// trailing 0/1 column marking which is which.
    pub fn write<W: Write>(&self, out: W, synthetic: ArrayView2<'_, f64>) -> Result<()> {
        let mut writer = csv::Writer::from_writer(out);
        let mut header = self.header.clone();
        header.push(SYNTHETIC_COLUMN.to_string());
        writer.write_record(&header)?;
        let features = self.dataset.features();
        let originals = features
            .rows()
            .into_iter()
            .zip(&self.labels)
            .map(|(r, l)| (r, l.as_str(), "0"));
        let extra = synthetic
            .rows()
            .into_iter()
            .map(|r| (r, self.minority_label.as_str(), "1"));
        for (row, label, flag) in originals.chain(extra) {
            let mut values = row.iter();
            let mut record = Vec::with_capacity(header.len());
            for col in 0..self.header.len() {
                if col == self.label_column {
                    record.push(label.to_string());
                } else {
                    record.push(format_number(*values.next().expect("row width matches header")));
                }
            }
            record.push(flag.to_string());
            writer.write_record(&record)?;
        }
        writer.flush()?;
        Ok(())
    }
}

/// Shortest decimal string that parses back to the same `f64`.
pub fn format_number(v: f64) -> String {
    if v == 0.0 {
        // drop the sign of negative zero
        return "0".to_string();
    }
    v.to_string()
}
