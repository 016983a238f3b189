//! Dense exact matrices over the rationals.
//!
//! Rank is computed by fraction-free Bareiss elimination on an integerized
//! copy, which keeps intermediate entries as single big integers instead of
//! fractions. Nullspaces come from a rational Gauss-Jordan pass: the basis
//! returned is the canonical reduced-row-echelon one (free columns in
//! increasing index order, with a 1 in the free slot).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ExactMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
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

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// Exact rank via fraction-free Bareiss elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.integerized();
        let (rows, cols) = (self.rows, self.cols);
        let mut prev_pivot = BigInt::one();
        let mut rank = 0;
        let mut col = 0;
        while rank < rows && col < cols {
            // first nonzero entry in this column at or below the pivot row
            let pivot_row = (rank..rows).find(|&r| !m[r * cols + col].is_zero());
            let pivot_row = match pivot_row {
                Some(r) => r,
                None => {
                    col += 1;
                    continue;
                }
            };
            if pivot_row != rank {
                for j in 0..cols {
                    m.swap(rank * cols + j, pivot_row * cols + j);
                }
            }
            let pivot = m[rank * cols + col].clone();
            for r in rank + 1..rows {
                for j in col + 1..cols {
                    let v = (&pivot * &m[r * cols + j] - &m[r * cols + col] * &m[rank * cols + j])
                        / &prev_pivot;
                    m[r * cols + j] = v;
                }
                m[r * cols + col] = BigInt::zero();
            }
            prev_pivot = pivot;
            rank += 1;
            col += 1;
        }
        rank
    }

    /// Reduced row echelon form; returns (rref, pivot column indices).
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        let mut pivots = Vec::new();
        let mut lead = 0;
        for col in 0..cols {
            if lead >= rows {
                break;
            }
            let pivot_row = (lead..rows).find(|&r| !m.get(r, col).is_zero());
            let pivot_row = match pivot_row {
                Some(r) => r,
                None => continue,
            };
            if pivot_row != lead {
                for j in 0..cols {
                    let tmp = m.get(lead, j).clone();
                    m.set(lead, j, m.get(pivot_row, j).clone());
                    m.set(pivot_row, j, tmp);
                }
            }
            let inv = m.get(lead, col).clone();
            for j in col..cols {
                let v = m.get(lead, j) / &inv;
                m.set(lead, j, v);
            }
            for r in 0..rows {
                if r == lead || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for j in col..cols {
                    let v = m.get(r, j) - &factor * m.get(lead, j);
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            lead += 1;
        }
        (m, pivots)
    }

    /// Exact rank together with the deterministic RREF nullspace basis.
    pub fn rank_nullspace(&self) -> (usize, Vec<Vec<Rational>>) {
        let (rref, pivots) = self.rref();
        let rank = pivots.len();
        debug_assert_eq!(rank, self.rank(), "Bareiss and RREF ranks must agree");
        let pivot_set: Vec<bool> = {
            let mut s = vec![false; self.cols];
            for &c in &pivots {
                s[c] = true;
            }
            s
        };
        let mut basis = Vec::with_capacity(self.cols - rank);
        for free in 0..self.cols {
            if pivot_set[free] {
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -rref.get(r, free).clone();
            }
            basis.push(v);
        }
        (rank, basis)
    }

    /// Clears denominators row by row, giving an integer matrix with the
    /// same rank.
    fn integerized(&self) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(self.rows * self.cols);
        for i in 0..self.rows {
            let mut lcm = BigInt::one();
            for v in self.row(i) {
                lcm = lcm.lcm(v.denom());
            }
            for v in self.row(i) {
                out.push(v.numer() * (&lcm / v.denom()));
            }
        }
        out
    }
}

/// Vandermonde-style matrix with rows (q^a)^l for l = 0..num_rows-1.
pub fn power_matrix(values: &[Rational], num_rows: usize) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(num_rows, values.len());
    for (a, q) in values.iter().enumerate() {
        let mut acc = Rational::one();
        for l in 0..num_rows {
            m.set(l, a, acc.clone());
            acc = &acc * q;
        }
    }
    m
}

/// True iff `v` lies in the rational span of `basis`.
pub fn in_span(basis: &[Vec<Rational>], v: &[Rational]) -> bool {
    if basis.is_empty() {
        return v.iter().all(|x| x.is_zero());
    }
    let mut rows: Vec<Vec<Rational>> = basis.to_vec();
    rows.push(v.to_vec());
    let m = ExactMatrix::from_rows(rows);
    let without = ExactMatrix::from_rows(basis.to_vec());
    m.rank() == without.rank()
}

impl std::fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self
                .row(i)
                .iter()
                .map(super::rational::format_rational)
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
