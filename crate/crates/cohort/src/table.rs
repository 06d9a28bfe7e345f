//! Banded CSV tables: salary-band rows by age-band columns.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::bands::{AgeBand, SalaryBand};
use crate::error::{CohortError, Result};

/// Header of the first column.
pub const CORNER: &str = "salary";

/// Parsed table of numbers keyed by salary band (rows) and age band (columns).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandedTable {
    pub salary_bands: Vec<SalaryBand>,
    pub age_bands: Vec<AgeBand>,
    pub values: Vec<Vec<f64>>,
}

fn parse_error(line: u64, column: usize, message: impl Into<String>) -> CohortError {
    CohortError::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn number(field: &str) -> Option<f64> {
    let cleaned: String = field
        .trim()
        .chars()
        .filter(|c| !matches!(c, ',' | '_' | ' ' | '£' | '%'))
        .map(|c| if c == '−' { '-' } else { c })
        .collect();
    cleaned.parse::<f64>().ok().filter(|v| v.is_finite())
}

impl BandedTable {
    /// Reads a table; `#` lines are comments and numbers may carry thousands separators.
    pub fn read(source: impl Read) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .comment(Some(b'#'))
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(source);
        let mut records = reader.records();

        let header = match records.next() {
            Some(r) => r?,
            None => return Err(CohortError::Empty("no header row")),
        };
        let line = header.position().map_or(0, |p| p.line());
        let mut age_bands = Vec::new();
        for (i, label) in header.iter().enumerate().skip(1) {
            let band = AgeBand::parse(label)
                .ok_or_else(|| parse_error(line, i + 1, format!("unknown age band `{label}`")))?;
            if let Some(prev) = age_bands.last() {
                let prev: &AgeBand = prev;
                if band.low <= prev.low {
                    return Err(parse_error(line, i + 1, "age bands must increase"));
                }
            }
            age_bands.push(band);
        }
        if age_bands.is_empty() {
            return Err(parse_error(line, 2, "no age band columns"));
        }

        let mut salary_bands: Vec<SalaryBand> = Vec::new();
        let mut values = Vec::new();
        for record in records {
            let record = record?;
            let line = record.position().map_or(0, |p| p.line());
            if record.len() != age_bands.len() + 1 {
                return Err(parse_error(
                    line,
                    record.len(),
                    format!("expected {} fields, found {}", age_bands.len() + 1, record.len()),
                ));
            }
            let label = &record[0];
            let band = SalaryBand::parse(label)
                .ok_or_else(|| parse_error(line, 1, format!("unknown salary band `{label}`")))?;
            if let Some(prev) = salary_bands.last() {
                if band.low <= prev.low || prev.high.is_none() {
                    return Err(parse_error(line, 1, "salary bands must increase"));
                }
            }
            let row = record
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, f)| {
                    number(f).ok_or_else(|| parse_error(line, i + 1, format!("not a number `{f}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            salary_bands.push(band);
            values.push(row);
        }
        if salary_bands.is_empty() {
            return Err(CohortError::Empty("no salary band rows"));
        }
        Ok(Self {
            salary_bands,
            age_bands,
            values,
        })
    }

    /// Writes comment lines, the header and one row per salary band.
    pub fn write(
        &self,
        out: impl Write,
        comments: &[&str],
        format_value: impl Fn(f64) -> String,
    ) -> Result<()> {
        let mut out = out;
        for c in comments {
            writeln!(out, "# {c}").map_err(csv::Error::from)?;
        }
        let mut writer = csv::Writer::from_writer(out);
        let mut header = vec![CORNER.to_string()];
        header.extend(self.age_bands.iter().map(|b| b.to_string()));
        writer.write_record(&header)?;
        for (band, row) in self.salary_bands.iter().zip(&self.values) {
            let mut rec = vec![band.to_string()];
            rec.extend(row.iter().map(|&v| format_value(v)));
            writer.write_record(&rec)?;
        }
        writer.flush().map_err(csv::Error::from)?;
        Ok(())
    }

    pub fn same_bands(&self, other: &BandedTable) -> bool {
        self.salary_bands == other.salary_bands && self.age_bands == other.age_bands
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_comments_and_separators() {
        let text = "# note\nsalary,<=25,25-29\n0-5k,\"1,292\",3\n5k+,4,5\n";
        let t = BandedTable::read(text.as_bytes()).unwrap();
        assert_eq!(t.values, vec![vec![1292.0, 3.0], vec![4.0, 5.0]]);
    }

    #[test]
    fn ragged_row_names_line() {
        let text = "salary,<=25,25-29\n0-5k,1\n";
        match BandedTable::read(text.as_bytes()) {
            Err(CohortError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_labels() {
        assert!(BandedTable::read("salary,teen\n0-5k,1\n".as_bytes()).is_err());
        assert!(BandedTable::read("salary,<=25\nlots,1\n".as_bytes()).is_err());
        assert!(BandedTable::read("salary,<=25\n0-5k,x\n".as_bytes()).is_err());
        assert!(BandedTable::read("".as_bytes()).is_err());
        assert!(BandedTable::read("salary,<=25\n".as_bytes()).is_err());
    }

    #[test]
    fn write_then_read() {
        let text = "salary,<=25,25-29,65+\n0-5k,1,2,3\n5-10k,4,5,6\n10k+,7,8,9\n";
        let t = BandedTable::read(text.as_bytes()).unwrap();
        let mut buf = Vec::new();
        t.write(&mut buf, &["hello"], |v| format!("{v}")).unwrap();
        let back = BandedTable::read(buf.as_slice()).unwrap();
        assert_eq!(back, t);
    }
}
