//! Dense matrices over exact scalars, plus a block-sparse matrix for maps
//! between direct sums.
//!
//! Matrices act on column vectors: a map `V → W` has `dim W` rows and
//! `dim V` columns.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn scalar(field: Field, n: usize, s: &Scalar) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, s.clone());
        }
        m
    }

    pub fn diagonal(field: Field, entries: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(field, entries.len(), entries.len());
        for (i, s) in entries.iter().enumerate() {
            m.set(i, i, s.clone());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidParameters("ragged matrix rows".into()));
        }
        Ok(Matrix {
            field,
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, s) in col.iter().enumerate() {
                m.set(i, j, s.clone());
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: Scalar) {
        self.data[i * self.cols + j] = s;
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let s = self.get(i, j);
                    if i == j {
                        s.is_one()
                    } else {
                        s.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// `self · rhs`.
    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::ArityError {
                expected: self.cols,
                got: rhs.rows,
            });
        }
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.same_shape(rhs)?;
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        Ok(Matrix { data, ..self.clone() })
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.same_shape(rhs)?;
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        Ok(Matrix { data, ..self.clone() })
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * s).collect();
        Matrix { data, ..self.clone() }
    }

    fn same_shape(&self, rhs: &Matrix) -> Result<()> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            Err(Error::ArityError {
                expected: self.rows * self.cols,
                got: rhs.rows * rhs.cols,
            })
        } else {
            Ok(())
        }
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    if m.get(r, j).is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.field.one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// A basis of `{ v : self · v = 0 }`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, f);
                }
                v
            })
            .collect()
    }

    /// Some `x` with `self · x = b`.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        let mut aug = Matrix::zeros(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn place(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn sub_block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut m = Matrix::zeros(self.field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, self.get(r0 + i, c0 + j).clone());
            }
        }
        m
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A linear map between direct sums, stored as its nonzero blocks.
///
/// Row block `i` has dimension `row_dims[i]` and column block `j` has
/// dimension `col_dims[j]`; absent blocks are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockMatrix {
    field: Field,
    row_dims: Vec<usize>,
    col_dims: Vec<usize>,
    blocks: BTreeMap<(usize, usize), Matrix>,
}

impl BlockMatrix {
    pub fn zeros(field: Field, row_dims: Vec<usize>, col_dims: Vec<usize>) -> BlockMatrix {
        BlockMatrix {
            field,
            row_dims,
            col_dims,
            blocks: BTreeMap::new(),
        }
    }

    pub fn identity(field: Field, dims: Vec<usize>) -> BlockMatrix {
        let mut m = BlockMatrix::zeros(field, dims.clone(), dims.clone());
        for (i, &d) in dims.iter().enumerate() {
            m.insert(i, i, Matrix::identity(field, d));
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn row_dims(&self) -> &[usize] {
        &self.row_dims
    }

    pub fn col_dims(&self) -> &[usize] {
        &self.col_dims
    }

    /// Sets block `(i, j)`; zero blocks are dropped.
    pub fn insert(&mut self, i: usize, j: usize, block: Matrix) {
        debug_assert_eq!(block.rows(), self.row_dims[i]);
        debug_assert_eq!(block.cols(), self.col_dims[j]);
        if block.is_zero() {
            self.blocks.remove(&(i, j));
        } else {
            self.blocks.insert((i, j), block);
        }
    }

    /// Adds `block` to block `(i, j)`.
    pub fn accumulate(&mut self, i: usize, j: usize, block: Matrix) {
        let sum = match self.blocks.get(&(i, j)) {
            Some(old) => old.add(&block).expect("block shapes agree"),
            None => block,
        };
        self.insert(i, j, sum);
    }

    pub fn block(&self, i: usize, j: usize) -> Matrix {
        self.blocks
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.field, self.row_dims[i], self.col_dims[j]))
    }

    pub fn nonzero_blocks(&self) -> impl Iterator<Item = (&(usize, usize), &Matrix)> {
        self.blocks.iter()
    }

    pub fn total_rows(&self) -> usize {
        self.row_dims.iter().sum()
    }

    pub fn total_cols(&self) -> usize {
        self.col_dims.iter().sum()
    }

    /// `self · rhs`, block by block.
    pub fn compose(&self, rhs: &BlockMatrix) -> Result<BlockMatrix> {
        if self.col_dims != rhs.row_dims {
            return Err(Error::ArityError {
                expected: self.total_cols(),
                got: rhs.total_rows(),
            });
        }
        let mut by_row: BTreeMap<usize, Vec<(usize, &Matrix)>> = BTreeMap::new();
        for (&(k, j), m) in &rhs.blocks {
            by_row.entry(k).or_default().push((j, m));
        }
        let mut out = BlockMatrix::zeros(self.field, self.row_dims.clone(), rhs.col_dims.clone());
        for (&(i, k), a) in &self.blocks {
            if let Some(list) = by_row.get(&k) {
                for &(j, b) in list {
                    out.accumulate(i, j, a.mul(b)?);
                }
            }
        }
        Ok(out)
    }

    pub fn is_identity(&self) -> bool {
        self.row_dims == self.col_dims
            && (0..self.row_dims.len()).all(|i| {
                let d = self.row_dims[i];
                d == 0 || self.blocks.get(&(i, i)).is_some_and(Matrix::is_identity)
            })
            && self.blocks.keys().all(|&(i, j)| i == j)
    }

    /// Expands into a dense matrix.
    pub fn to_dense(&self) -> Matrix {
        let offsets = |dims: &[usize]| {
            let mut acc = 0;
            dims.iter()
                .map(|d| {
                    let o = acc;
                    acc += d;
                    o
                })
                .collect::<Vec<_>>()
        };
        let ro = offsets(&self.row_dims);
        let co = offsets(&self.col_dims);
        let mut m = Matrix::zeros(self.field, self.total_rows(), self.total_cols());
        for (&(i, j), b) in &self.blocks {
            m.place(ro[i], co[j], b);
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(rows: Vec<Vec<i64>>) -> Matrix {
        let f = Field::Rational;
        Matrix::from_rows(
            f,
            rows.into_iter()
                .map(|r| r.into_iter().map(|x| f.from_i64(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rank_inverse_kernel() {
        let a = q(vec![vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        assert!(a.inverse().is_none());
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        assert!(a.apply(&k[0]).iter().all(Scalar::is_zero));

        let b = q(vec![vec![2, 1], vec![1, 1]]);
        let bi = b.inverse().unwrap();
        assert!(b.mul(&bi).unwrap().is_identity());
    }

    #[test]
    fn solve_consistent_and_not() {
        let f = Field::Rational;
        let a = q(vec![vec![1, 1], vec![2, 2]]);
        let x = a.solve(&[f.from_i64(3), f.from_i64(6)]).unwrap();
        assert_eq!(a.apply(&x), vec![f.from_i64(3), f.from_i64(6)]);
        assert!(a.solve(&[f.from_i64(1), f.from_i64(3)]).is_none());
    }

    #[test]
    fn prime_field_rank() {
        let f = Field::Prime(5);
        let a = Matrix::from_rows(
            f,
            vec![
                vec![f.from_i64(1), f.from_i64(2)],
                vec![f.from_i64(3), f.from_i64(1)],
            ],
        )
        .unwrap();
        // det = 1 - 6 = -5 ≡ 0
        assert_eq!(a.rank(), 1);
    }

    #[test]
    fn block_composition_matches_dense() {
        let f = Field::Rational;
        let mut a = BlockMatrix::zeros(f, vec![1, 2], vec![2, 1]);
        a.insert(0, 0, q(vec![vec![1, 2]]));
        a.insert(1, 1, q(vec![vec![3], vec![4]]));
        let mut b = BlockMatrix::zeros(f, vec![2, 1], vec![1]);
        b.insert(0, 0, q(vec![vec![5], vec![6]]));
        b.insert(1, 0, q(vec![vec![7]]));
        let ab = a.compose(&b).unwrap();
        let dense = a.to_dense().mul(&b.to_dense()).unwrap();
        assert_eq!(ab.to_dense(), dense);
        assert!(BlockMatrix::identity(f, vec![2, 0, 1]).is_identity());
    }

    proptest! {
        #[test]
        fn inverse_of_product(seed in prop::collection::vec(-4i64..5, 8)) {
            let a = q(vec![vec![seed[0], seed[1]], vec![seed[2], seed[3]]]);
            let b = q(vec![vec![seed[4], seed[5]], vec![seed[6], seed[7]]]);
            let ab = a.mul(&b).unwrap();
            match (a.inverse(), b.inverse()) {
                (Some(ai), Some(bi)) => {
                    let inv = ab.inverse().unwrap();
                    prop_assert_eq!(inv, bi.mul(&ai).unwrap());
                }
                _ => prop_assert!(ab.inverse().is_none()),
            }
        }

        #[test]
        fn rank_nullity(entries in prop::collection::vec(-3i64..4, 12)) {
            let a = q(entries.chunks(4).map(|c| c.to_vec()).collect());
            prop_assert_eq!(a.rank() + a.kernel().len(), 4);
            prop_assert_eq!(a.rank(), a.transpose().rank());
        }
    }
}
