use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{reduce_columns, Rational, SparseVec, Subspace};
use crate::error::{Error, Result};

/// Sparse rational matrix, stored by columns.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            columns: vec![SparseVec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            columns: (0..n).map(SparseVec::unit).collect(),
        }
    }

    /// Builds a matrix from its columns. Panics if an entry is out of bounds.
    pub fn from_columns(rows: usize, columns: Vec<SparseVec>) -> Self {
        for c in &columns {
            if let Some((i, _)) = c.last() {
                assert!(i < rows, "column entry {i} out of bounds for {rows} rows");
            }
        }
        Self {
            rows,
            cols: columns.len(),
            columns,
        }
    }

    /// Builds a matrix from dense integer rows. All rows must have equal length.
    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(nrows, ncols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged rows");
            for (j, x) in row.iter().enumerate() {
                if *x != 0 {
                    m.columns[j].set(i, super::int(*x));
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

    pub fn get(&self, row: usize, col: usize) -> Rational {
        self.columns[col].value(row)
    }

    pub fn set(&mut self, row: usize, col: usize, x: Rational) {
        assert!(row < self.rows && col < self.cols);
        self.columns[col].set(row, x);
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(SparseVec::is_zero)
    }

    pub fn transpose(&self) -> QMatrix {
        let mut out = QMatrix::zeros(self.cols, self.rows);
        for (j, c) in self.columns.iter().enumerate() {
            for (i, x) in c.iter() {
                out.columns[i].set(j, x.clone());
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (j, x) in v.iter() {
            out.add_scaled(x, &self.columns[j]);
        }
        out
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        Ok(QMatrix {
            rows: self.rows,
            cols: other.cols,
            columns: other.columns.iter().map(|c| self.apply(c)).collect(),
        })
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: other.rows,
            });
        }
        let mut columns = self.columns.clone();
        columns.extend(other.columns.iter().cloned());
        Ok(QMatrix::from_columns(self.rows, columns))
    }

    /// `[self ; other]`
    pub fn vstack(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let off = self.rows;
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| {
                let mut c = a.clone();
                for (i, x) in b.iter() {
                    c.set(i + off, x.clone());
                }
                c
            })
            .collect();
        Ok(QMatrix::from_columns(self.rows + other.rows, columns))
    }

    pub fn scaled(&self, c: &Rational) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            columns: self.columns.iter().map(|v| v.scaled(c)).collect(),
        }
    }

    /// Rank over the rationals.
    ///
    /// Uses fraction-free elimination on primitive integer rows: each row is
    /// scaled to coprime integers, the sparsest remaining row is chosen as
    /// pivot, and other rows are eliminated by integer cross-multiplication.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<BTreeMap<usize, BigInt>> = self
            .transpose()
            .columns
            .iter()
            .filter(|r| !r.is_zero())
            .map(primitive_row)
            .collect();
        let mut rank = 0;
        while !rows.is_empty() {
            let (pi, _) = rows
                .iter()
                .enumerate()
                .min_by_key(|(i, r)| (r.len(), *i))
                .expect("non-empty");
            let pivot = rows.swap_remove(pi);
            let (&col, a) = pivot.iter().next().expect("stored rows are nonzero");
            let a = a.clone();
            rank += 1;
            let mut next = Vec::with_capacity(rows.len());
            for row in rows.drain(..) {
                let Some(b) = row.get(&col).cloned() else {
                    next.push(row);
                    continue;
                };
                // row <- a*row - b*pivot, then divide out the content
                let g = a.gcd(&b);
                let (ma, mb) = (&a / &g, &b / &g);
                let mut combined: BTreeMap<usize, BigInt> = BTreeMap::new();
                for (k, x) in &row {
                    combined.insert(*k, x * &ma);
                }
                for (k, y) in &pivot {
                    let e = combined.entry(*k).or_insert_with(BigInt::zero);
                    *e -= y * &mb;
                }
                combined.retain(|_, x| !x.is_zero());
                if !combined.is_empty() {
                    next.push(make_primitive(combined));
                }
            }
            rows = next;
        }
        rank
    }

    /// Null space as a canonical subspace of `Q^cols`.
    pub fn kernel_basis(&self) -> Subspace {
        let red = reduce_columns(&self.columns, true);
        Subspace::span(self.cols, red.kernel)
    }

    /// Column space as a canonical subspace of `Q^rows`.
    pub fn image_basis(&self) -> Subspace {
        let red = reduce_columns(&self.columns, false);
        Subspace::span(self.rows, red.image)
    }

    /// Inverse of a square matrix, or `None` if singular.
    pub fn inverse(&self) -> Option<QMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j)).collect())
            .collect();
        let mut inv: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            Rational::one()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r][c].is_zero())?;
            a.swap(c, p);
            inv.swap(c, p);
            let d = a[c][c].recip();
            for x in a[c].iter_mut() {
                *x *= &d;
            }
            for x in inv[c].iter_mut() {
                *x *= &d;
            }
            for r in 0..n {
                if r == c || a[r][c].is_zero() {
                    continue;
                }
                let f = a[r][c].clone();
                for k in 0..n {
                    let t = &f * &a[c][k];
                    a[r][k] -= t;
                    let t = &f * &inv[c][k];
                    inv[r][k] -= t;
                }
            }
        }
        let mut out = QMatrix::zeros(n, n);
        for (i, row) in inv.into_iter().enumerate() {
            for (j, x) in row.into_iter().enumerate() {
                out.columns[j].set(i, x);
            }
        }
        Some(out)
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).collect())
            .collect()
    }
}

fn primitive_row(row: &SparseVec) -> BTreeMap<usize, BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
    let ints: BTreeMap<usize, BigInt> = row
        .iter()
        .map(|(i, x)| (i, (x * Rational::from_integer(lcm.clone())).to_integer()))
        .collect();
    make_primitive(ints)
}

fn make_primitive(mut row: BTreeMap<usize, BigInt>) -> BTreeMap<usize, BigInt> {
    let g = row.values().fold(BigInt::zero(), |acc, x| acc.gcd(x)).abs();
    if !g.is_zero() && !g.is_one() {
        for x in row.values_mut() {
            *x /= &g;
        }
    }
    row
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{frac, int};

    #[test]
    fn rank_examples() {
        assert_eq!(QMatrix::identity(2).rank(), 2);
        assert_eq!(QMatrix::zeros(3, 4).rank(), 0);
        assert_eq!(QMatrix::from_rows_i64(&[vec![1, 2], vec![2, 4]]).rank(), 1);
    }

    #[test]
    fn rank_with_fractions() {
        let mut m = QMatrix::zeros(2, 2);
        m.set(0, 0, frac(1, 2));
        m.set(0, 1, frac(1, 3));
        m.set(1, 0, int(3));
        m.set(1, 1, int(2));
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(QMatrix::identity(3).kernel_basis().dim(), 0);
        assert_eq!(QMatrix::zeros(2, 3).kernel_basis(), Subspace::full(3));
        let k = QMatrix::from_rows_i64(&[vec![1, 1]]).kernel_basis();
        assert_eq!(k.dim(), 1);
        assert_eq!(k, Subspace::span(2, vec![SparseVec::from_i64(&[1, -1])]));
    }

    #[test]
    fn image_examples() {
        assert_eq!(QMatrix::identity(3).image_basis(), Subspace::full(3));
        assert_eq!(QMatrix::zeros(3, 2).image_basis(), Subspace::zero(3));
        let im = QMatrix::from_rows_i64(&[vec![1], vec![2]]).image_basis();
        assert_eq!(im, Subspace::span(2, vec![SparseVec::from_i64(&[1, 2])]));
    }

    #[test]
    fn inverse_round_trip() {
        let m = QMatrix::from_rows_i64(&[vec![2, 1], vec![1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), QMatrix::identity(2));
        assert!(QMatrix::from_rows_i64(&[vec![1, 2], vec![2, 4]])
            .inverse()
            .is_none());
    }
}
