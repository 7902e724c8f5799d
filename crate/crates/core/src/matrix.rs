//! Dense integer matrices and their text format.
//!
//! ```text
//! 2 3
//! 1 1 0
//! 0 1 1
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from row vectors. `cols` is needed when there are no rows.
    pub fn from_rows(rows: &[Vec<i64>], cols: usize) -> Result<Self> {
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            m.data[i * cols..(i + 1) * cols].copy_from_slice(r);
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let mut s = IntMatrix::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                s.set(a, b, self.get(i, j));
            }
        }
        s
    }

    /// Appends a row.
    pub fn with_row(&self, row: &[i64]) -> Result<IntMatrix> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "row has {} entries, matrix has {} columns",
                row.len(),
                self.cols
            )));
        }
        let mut m = self.clone();
        m.data.extend_from_slice(row);
        m.rows += 1;
        Ok(m)
    }

    /// Column sums.
    pub fn column_sums(&self) -> Vec<i64> {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.get(i, j)).sum())
            .collect()
    }

    pub fn row_sums(&self) -> Vec<i64> {
        (0..self.rows).map(|i| self.row(i).iter().sum()).collect()
    }

    /// First entry outside `{-1, 0, 1}`.
    pub fn check_signed_unit(&self) -> Result<()> {
        self.check_entries(|v| (-1..=1).contains(&v))
    }

    /// First entry outside `{0, 1}`.
    pub fn check_binary(&self) -> Result<()> {
        self.check_entries(|v| v == 0 || v == 1)
    }

    fn check_entries(&self, ok: impl Fn(i64) -> bool) -> Result<()> {
        for i in 0..self.rows {
            for j in 0..self.cols {
                let value = self.get(i, j);
                if !ok(value) {
                    return Err(Error::EntryOutOfRange { row: i, col: j, value });
                }
            }
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<IntMatrix> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing `rows cols` header"))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::parse(hline, format!("bad dimension `{t}`"))))
            .collect::<Result<_>>()?;
        let [rows, cols] = dims[..] else {
            return Err(Error::parse(hline, "expected `rows cols`"));
        };
        let mut m = IntMatrix::zeros(rows, cols);
        let mut i = 0;
        for (line, l) in lines {
            if i == rows {
                return Err(Error::parse(line, format!("more than {rows} rows")));
            }
            let vals: Vec<i64> = l
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::parse(line, format!("bad entry `{t}`"))))
                .collect::<Result<_>>()?;
            if vals.len() != cols {
                return Err(Error::parse(
                    line,
                    format!("expected {cols} entries, got {}", vals.len()),
                ));
            }
            m.data[i * cols..(i + 1) * cols].copy_from_slice(&vals);
            i += 1;
        }
        if i != rows {
            return Err(Error::parse(hline, format!("expected {rows} rows, got {i}")));
        }
        Ok(m)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[i64]> = (0..self.rows).map(|i| self.row(i)).collect();
        write!(f, "IntMatrix{rows:?}")
    }
}
