use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::modular;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Below this size (smaller side) rank is always computed by Bareiss
/// elimination; above it the certified multi-modular route is tried first.
const BAREISS_CUTOFF: usize = 40;

/// Dense row-major matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

/// Rank of a matrix together with its greedy column basis: the pivot columns
/// are the lexicographically first set of linearly independent columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankProfile {
    pub rank: usize,
    pub pivot_columns: Vec<usize>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(RationalMatrix { rows, cols, entries })
    }

    /// Builds a matrix from row vectors; ragged input is rejected. An empty
    /// row list gives a 0×0 matrix.
    pub fn from_rows<R: AsRef<[Rational]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        Ok(RationalMatrix {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        let rows: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Rational::from(x)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        RationalMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn mul(&self, rhs: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * rhs.cols + j] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Horizontal concatenation `[self rhs]`.
    pub fn hstack(&self, rhs: &RationalMatrix) -> Result<RationalMatrix> {
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: rhs.rows,
            });
        }
        let cols = self.cols + rhs.cols;
        let mut entries = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            entries.extend_from_slice(self.row(i));
            entries.extend_from_slice(rhs.row(i));
        }
        Ok(RationalMatrix {
            rows: self.rows,
            cols,
            entries,
        })
    }

    /// Rows scaled by the lcm of their denominators. Row scaling by nonzero
    /// constants changes neither the rank nor column dependencies.
    pub fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let d = Rational::common_denominator(row);
                row.iter()
                    .map(|x| x.numer() * (&d / x.denom()))
                    .collect()
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        if self.rows.min(self.cols) <= BAREISS_CUTOFF {
            return self.bareiss_rank_profile().rank;
        }
        // rank(M) = rank(Mᵀ); orient so the certificate needs the fewest
        // kernel vectors.
        let oriented;
        let m = if self.cols > self.rows {
            oriented = self.transpose();
            &oriented
        } else {
            self
        };
        match m.modular_rank_profile() {
            Some(profile) => profile.rank,
            None => m.bareiss_rank_profile().rank,
        }
    }

    pub fn rank_profile(&self) -> RankProfile {
        if self.rows.min(self.cols) > BAREISS_CUTOFF {
            if let Some(profile) = self.modular_rank_profile() {
                return profile;
            }
        }
        self.bareiss_rank_profile()
    }

    /// Fraction-free (Bareiss) elimination over the integers after clearing
    /// denominators row by row. Every intermediate entry is a minor of the
    /// scaled matrix, so each division is exact.
    pub fn bareiss_rank_profile(&self) -> RankProfile {
        let mut a = self.integer_rows();
        let (rows, cols) = (self.rows, self.cols);
        let mut prev = BigInt::one();
        let mut r = 0;
        let mut pivot_columns = Vec::new();
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let (head, tail) = a.split_at_mut(r + 1);
            let pivot_row = &head[r];
            let pivot = &pivot_row[c];
            for row in tail.iter_mut() {
                let factor = std::mem::take(&mut row[c]);
                for j in c + 1..cols {
                    let mut v = &row[j] * pivot;
                    if !factor.is_zero() && !pivot_row[j].is_zero() {
                        v -= &factor * &pivot_row[j];
                    }
                    row[j] = if prev.is_one() { v } else { v / &prev };
                }
            }
            prev = a[r][c].clone();
            pivot_columns.push(c);
            r += 1;
        }
        RankProfile {
            rank: r,
            pivot_columns,
        }
    }

    /// Exact rank via reduction modulo a large prime, certified both ways:
    /// the pivots found mod p give a nonzero minor over the integers (lower
    /// bound), and every kernel vector predicted mod p is lifted by rational
    /// reconstruction and checked exactly (upper bound). Returns `None` when
    /// no tried prime yields a certificate.
    pub fn modular_rank_profile(&self) -> Option<RankProfile> {
        modular::certified_rank_profile(&self.integer_rows(), self.cols)
    }
}

/// Maps each row vector `x` to `xM`. `M` must be square of the points'
/// dimension and invertible; multiplicities are preserved.
pub fn gl_transform(points: &[Vec<Rational>], m: &RationalMatrix) -> Result<Vec<Vec<Rational>>> {
    let r = m.rows();
    if m.cols() != r {
        return Err(Error::DimensionMismatch {
            expected: r,
            found: m.cols(),
        });
    }
    if m.rank() != r {
        return Err(Error::SingularMatrix);
    }
    points
        .iter()
        .map(|x| {
            if x.len() != r {
                return Err(Error::DimensionMismatch {
                    expected: r,
                    found: x.len(),
                });
            }
            Ok((0..r)
                .map(|j| {
                    x.iter()
                        .enumerate()
                        .filter(|(_, xi)| !xi.is_zero())
                        .map(|(i, xi)| xi * m.get(i, j))
                        .sum()
                })
                .collect())
        })
        .collect()
}
