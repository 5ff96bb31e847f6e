//! Dense LU factorization with partial pivoting over any [`Scalar`].
//!
//! Systems here are `|E^0| × |E^0|`, so a plain dense factorization is all
//! that is needed. Over exact rationals the pivoting is still by largest
//! magnitude, which keeps the code path identical for every scalar type.

use thiserror::Error;

use crate::graph::NonnegIntMatrix;
use crate::scalar::Scalar;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix is singular (zero pivot in column {0})")]
    Singular(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
}

/// Square dense matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> DenseMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![T::zero(); n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.n + j] = value;
    }

    /// `I − qA`.
    pub fn identity_minus_scaled(a: &NonnegIntMatrix, q: &T) -> Self {
        assert!(a.is_square());
        let n = a.rows();
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut entry = -(q.clone() * T::from_count(a.get(i, j)));
                if i == j {
                    entry = entry + T::one();
                }
                m.set(i, j, entry);
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        (0..self.n)
            .map(|i| {
                (0..self.n).fold(T::zero(), |acc, j| acc + self.get(i, j).clone() * x[j].clone())
            })
            .collect()
    }
}

/// `PA = LU` with unit lower-triangular `L`.
#[derive(Debug, Clone)]
pub struct Lu<T> {
    lu: DenseMatrix<T>,
    perm: Vec<usize>,
}

impl<T: Scalar> Lu<T> {
    pub fn factor(mut a: DenseMatrix<T>) -> Result<Self, LinalgError> {
        let n = a.n;
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let mut pivot = k;
            let mut best = a.get(k, k).abs();
            for i in k + 1..n {
                let cand = a.get(i, k).abs();
                if cand > best {
                    best = cand;
                    pivot = i;
                }
            }
            if best.is_zero() {
                return Err(LinalgError::Singular(k));
            }
            if pivot != k {
                for j in 0..n {
                    a.data.swap(k * n + j, pivot * n + j);
                }
                perm.swap(k, pivot);
            }
            let diag = a.get(k, k).clone();
            for i in k + 1..n {
                let factor = a.get(i, k).clone() / diag.clone();
                if factor.is_zero() {
                    continue;
                }
                for j in k + 1..n {
                    let updated = a.get(i, j).clone() - factor.clone() * a.get(k, j).clone();
                    a.set(i, j, updated);
                }
                a.set(i, k, factor);
            }
        }
        Ok(Self { lu: a, perm })
    }

    pub fn dim(&self) -> usize {
        self.lu.n
    }

    pub fn solve(&self, b: &[T]) -> Result<Vec<T>, LinalgError> {
        let n = self.lu.n;
        if b.len() != n {
            return Err(LinalgError::Dimension {
                expected: n,
                got: b.len(),
            });
        }
        let mut x: Vec<T> = self.perm.iter().map(|&p| b[p].clone()).collect();
        for i in 0..n {
            for j in 0..i {
                let t = self.lu.get(i, j).clone() * x[j].clone();
                x[i] = x[i].clone() - t;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let t = self.lu.get(i, j).clone() * x[j].clone();
                x[i] = x[i].clone() - t;
            }
            x[i] = x[i].clone() / self.lu.get(i, i).clone();
        }
        Ok(x)
    }
}
