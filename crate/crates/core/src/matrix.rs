//! Sparse exact-rational matrices.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::WeightedDigraph;
use crate::rational::Rational;

/// A sparse matrix over arbitrary-precision rationals.
///
/// Zero entries are never stored; `get` returns zero for absent positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl RationalMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.entries.insert((i, i), Rational::one());
        }
        m
    }

    pub fn from_entries(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Result<Self> {
        let mut m = Self::zero(rows, cols);
        for (i, j, v) in entries {
            m.set(i, j, v)?;
        }
        Ok(m)
    }

    /// Builds from a dense row-major array of integers; handy in tests.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.entries.insert((i, j), crate::rational::rat_int(v));
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.entries
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Stores `v` at `(i, j)`; storing zero removes the entry.
    pub fn set(&mut self, i: usize, j: usize, v: Rational) -> Result<()> {
        if i >= self.rows || j >= self.cols {
            return Err(Error::IndexOutOfRange {
                row: i,
                col: j,
                rows: self.rows,
                cols: self.cols,
            });
        }
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero(self.cols, self.rows);
        for (i, j, v) in self.iter() {
            m.entries.insert((j, i), v.clone());
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        // Sparse row-times-matrix products.
        let mut by_row: BTreeMap<usize, Vec<(usize, &Rational)>> = BTreeMap::new();
        for (i, j, v) in other.iter() {
            by_row.entry(i).or_default().push((j, v));
        }
        let mut out = Self::zero(self.rows, other.cols);
        for (i, k, a) in self.iter() {
            if let Some(row) = by_row.get(&k) {
                for &(j, b) in row {
                    let cur = out.get(i, j) + a * b;
                    out.set(i, j, cur)?;
                }
            }
        }
        Ok(out)
    }

    /// The matrix with row `i` and column `j` deleted.
    pub fn minor(&self, i: usize, j: usize) -> Result<Self> {
        if i >= self.rows || j >= self.cols {
            return Err(Error::IndexOutOfRange {
                row: i,
                col: j,
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut m = Self::zero(self.rows - 1, self.cols - 1);
        for (r, c, v) in self.iter() {
            if r == i || c == j {
                continue;
            }
            let nr = if r > i { r - 1 } else { r };
            let nc = if c > j { c - 1 } else { c };
            m.entries.insert((nr, nc), v.clone());
        }
        Ok(m)
    }

    /// Distinct nonzero values, sorted.
    pub fn distinct_values(&self) -> Vec<Rational> {
        let mut vals: Vec<Rational> = self.entries.values().cloned().collect();
        vals.sort();
        vals.dedup();
        vals
    }

    /// Interprets a square matrix as a weighted digraph: arc `(i, j)` with
    /// weight `A_ij` exactly when `A_ij` is nonzero. Self-loops allowed.
    pub fn support_digraph(&self) -> Result<WeightedDigraph> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut g = WeightedDigraph::new(self.rows);
        for (i, j, v) in self.iter() {
            g.add_arc(i, j, v.clone())?;
        }
        Ok(g)
    }

    /// The symmetric block embedding `[[0, A], [A^T, 0]]` of an `m x n`
    /// matrix, of dimension `(m+n) x (m+n)`.
    pub fn symmetric_embedding(&self) -> Self {
        let m = self.rows;
        let n = self.cols;
        let mut b = Self::zero(m + n, m + n);
        for (i, j, v) in self.iter() {
            b.entries.insert((i, m + j), v.clone());
            b.entries.insert((m + j, i), v.clone());
        }
        b
    }
}
