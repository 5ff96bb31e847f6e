use std::fmt;

/// Dense matrix of nonnegative integers, row-major.
///
/// Used for vertex matrices and their blocks; blocks may be rectangular or empty.
#[derive(Clone, PartialEq, Eq)]
pub struct NonnegIntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl NonnegIntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.iter().flatten().copied().collect(),
        }
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

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub(crate) fn add_to(&mut self, i: usize, j: usize, by: u64) {
        self.data[i * self.cols + j] += by;
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[u64]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Saturating product; entries here count paths and only need to be
    /// compared with zero once they are large.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    let slot = &mut out.data[i * other.cols + j];
                    *slot = slot.saturating_add(a.saturating_mul(b));
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// `A^{dim} = 0`, decided in integer arithmetic.
    pub fn is_nilpotent(&self) -> bool {
        self.pow(self.rows as u32).is_zero()
    }

    /// Submatrix with the given row and column index lists, in that order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.data[i * cols.len() + j] = self.get(r, c);
            }
        }
        out
    }

    /// `P A P^T` for the permutation listing old indices in new order.
    pub fn permuted(&self, order: &[usize]) -> Self {
        self.select(order, order)
    }

    /// `A + I`.
    pub fn plus_identity(&self) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m.data[i * self.cols + i] += 1;
        }
        m
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[u64] {
        &self.data
    }
}

impl fmt::Debug for NonnegIntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NonnegIntMatrix{:?}", self.to_rows())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powers_and_nilpotency() {
        let a = NonnegIntMatrix::from_rows(&[vec![0, 1], vec![0, 0]]);
        assert!(a.is_nilpotent());
        assert!(a.pow(2).is_zero());
        let p = NonnegIntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert!(!p.is_nilpotent());
        assert_eq!(p.pow(2), NonnegIntMatrix::identity(2));
        assert_eq!(NonnegIntMatrix::from_rows(&[vec![2]]).pow(3).get(0, 0), 8);
    }

    #[test]
    fn select_and_empty_blocks() {
        let a = NonnegIntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        assert_eq!(a.permuted(&[1, 0]).to_rows(), vec![vec![4, 3], vec![2, 1]]);
        let empty = a.select(&[], &[0, 1]);
        assert_eq!((empty.rows(), empty.cols()), (0, 2));
        assert!(empty.to_rows().is_empty());
    }
}
