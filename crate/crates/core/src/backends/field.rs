//! Dense linear algebra over the prime field GF(p).

use std::fmt;

use crate::error::{Error, Result};
use crate::grocat::is_prime;

/// Largest characteristic accepted; keeps products of reduced entries in `u64`.
pub const MAX_CHARACTERISTIC: u64 = 1 << 31;

pub fn check_characteristic(p: u64) -> Result<()> {
    if !is_prime(p) || p >= MAX_CHARACTERISTIC {
        return Err(Error::InvalidObject(format!(
            "field characteristic {p} must be a prime below 2^31"
        )));
    }
    Ok(())
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a % p, p - 2, p)
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Reduces a signed integer into `0..p`.
pub fn reduce(x: i64, p: u64) -> u64 {
    x.rem_euclid(p as i64) as u64
}

/// A row-major matrix with entries in `0..p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}) {:?}", self.p, self.to_rows())
    }
}

impl FieldMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from signed integer rows, reducing entries mod `p`.
    pub fn from_rows(p: u64, rows: usize, cols: usize, entries: &[Vec<i64>]) -> Result<Self> {
        if entries.len() != rows {
            return Err(Error::InvalidMorphism(format!(
                "expected {rows} rows, found {}",
                entries.len()
            )));
        }
        let mut m = Self::zeros(p, rows, cols);
        for (i, row) in entries.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::InvalidMorphism(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for (j, x) in row.iter().enumerate() {
                m.data[i * cols + j] = reduce(*x, p);
            }
        }
        Ok(m)
    }

    /// Builds a matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(p: u64, rows: usize, columns: &[Vec<u64>]) -> Self {
        let mut m = Self::zeros(p, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            debug_assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
                m.data[i * m.cols + j] = *x % p;
            }
        }
        m
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: u64) {
        self.data[i * self.cols + j] = x % self.p;
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) as i64).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| *x == 0)
    }

    pub fn mul(&self, rhs: &FieldMatrix) -> Result<FieldMatrix> {
        if self.cols != rhs.rows || self.p != rhs.p {
            return Err(Error::Composition(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let p = self.p;
        let mut out = FieldMatrix::zeros(p, self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    out.data[idx] = (out.data[idx] + a * rhs.get(l, j)) % p;
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(0u64, |acc, j| (acc + self.get(i, j) * v[j]) % self.p)
            })
            .collect()
    }

    pub fn negated(&self) -> FieldMatrix {
        let p = self.p;
        FieldMatrix {
            data: self.data.iter().map(|x| (p - x) % p).collect(),
            ..self.clone()
        }
    }

    /// Places `blocks` (a grid of equally-shaped rows of blocks) into one matrix.
    pub fn block(p: u64, blocks: &[Vec<&FieldMatrix>]) -> Result<FieldMatrix> {
        let heights: Vec<usize> = blocks
            .iter()
            .map(|row| row.first().map_or(0, |b| b.rows))
            .collect();
        let widths: Vec<usize> = blocks
            .first()
            .map(|row| row.iter().map(|b| b.cols).collect())
            .unwrap_or_default();
        for (r, row) in blocks.iter().enumerate() {
            if row.len() != widths.len() {
                return Err(Error::Composition("ragged block matrix".into()));
            }
            for (c, b) in row.iter().enumerate() {
                if b.rows != heights[r] || b.cols != widths[c] {
                    return Err(Error::Composition(format!(
                        "block ({r},{c}) is {}x{}, expected {}x{}",
                        b.rows, b.cols, heights[r], widths[c]
                    )));
                }
            }
        }
        let total_rows: usize = heights.iter().sum();
        let total_cols: usize = widths.iter().sum();
        let mut out = FieldMatrix::zeros(p, total_rows, total_cols);
        let mut r0 = 0;
        for (r, row) in blocks.iter().enumerate() {
            let mut c0 = 0;
            for (c, b) in row.iter().enumerate() {
                for i in 0..b.rows {
                    for j in 0..b.cols {
                        out.data[(r0 + i) * total_cols + c0 + j] = b.get(i, j);
                    }
                }
                c0 += widths[c];
            }
            r0 += heights[r];
        }
        Ok(out)
    }

    /// Rows `start..end` as a new matrix.
    pub fn row_range(&self, start: usize, end: usize) -> FieldMatrix {
        FieldMatrix {
            p: self.p,
            rows: end - start,
            cols: self.cols,
            data: self.data[start * self.cols..end * self.cols].to_vec(),
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..self.cols {
                    self.data.swap(piv * self.cols + j, r * self.cols + j);
                }
            }
            let inv = inv_mod(self.get(r, c), p);
            for j in c..self.cols {
                let idx = r * self.cols + j;
                self.data[idx] = self.data[idx] * inv % p;
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c);
                if f == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let sub = f * self.data[r * self.cols + j] % p;
                    let idx = i * self.cols + j;
                    self.data[idx] = (self.data[idx] + p - sub) % p;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    /// A basis of the right null space, as the columns of a `cols x nullity` matrix.
    pub fn kernel(&self) -> FieldMatrix {
        let p = self.p;
        let mut r = self.clone();
        let pivots = r.rref_in_place();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = FieldMatrix::zeros(p, self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            out.data[f * free.len() + k] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                let x = r.get(row, f);
                out.data[pc * free.len() + k] = (p - x) % p;
            }
        }
        out
    }
}

/// Echelon basis of a growing span, tracking how each stored vector is
/// written in terms of the generators inserted so far.
///
/// Used both to extract cycles (generators that reduce to zero) and to solve
/// for coordinates with respect to an independent generating set.
#[derive(Clone, Debug)]
pub struct TrackedBasis {
    p: u64,
    len: usize,
    generators: usize,
    pivots: Vec<usize>,
    vectors: Vec<Vec<u64>>,
    combos: Vec<Vec<u64>>,
}

/// Outcome of reducing a vector against a [`TrackedBasis`].
pub struct Reduction {
    pub residual: Vec<u64>,
    /// `v = residual + sum_i combo[i] * generator_i`.
    pub combo: Vec<u64>,
}

impl TrackedBasis {
    pub fn new(p: u64, len: usize) -> Self {
        TrackedBasis {
            p,
            len,
            generators: 0,
            pivots: Vec::new(),
            vectors: Vec::new(),
            combos: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn reduce(&self, v: &[u64]) -> Reduction {
        debug_assert_eq!(v.len(), self.len);
        let p = self.p;
        let mut residual: Vec<u64> = v.iter().map(|x| x % p).collect();
        let mut combo = vec![0u64; self.generators];
        for ((&piv, vec), c) in self.pivots.iter().zip(&self.vectors).zip(&self.combos) {
            let x = residual[piv];
            if x == 0 {
                continue;
            }
            // stored vectors are normalised to 1 at their pivot
            for (r, s) in residual.iter_mut().zip(vec) {
                if *s != 0 {
                    *r = (*r + p - x * s % p) % p;
                }
            }
            for (acc, s) in combo.iter_mut().zip(c) {
                if *s != 0 {
                    *acc = (*acc + x * s) % p;
                }
            }
        }
        Reduction { residual, combo }
    }

    /// Inserts `v` as a new generator. Returns `None` if it extended the span,
    /// or `Some(relation)` with `relation` a nonzero vector over generators
    /// (including the new one) summing to zero.
    pub fn insert(&mut self, v: &[u64]) -> Option<Vec<u64>> {
        let p = self.p;
        let Reduction { residual, combo } = self.reduce(v);
        self.generators += 1;
        for c in self.combos.iter_mut() {
            c.push(0);
        }
        // residual = v - sum combo_i g_i
        let mut own: Vec<u64> = combo.iter().map(|x| (p - x) % p).collect();
        own.push(1);
        match residual.iter().position(|x| *x != 0) {
            None => Some(own),
            Some(piv) => {
                let inv = inv_mod(residual[piv], p);
                let vec = residual.iter().map(|x| x * inv % p).collect();
                let c = own.iter().map(|x| x * inv % p).collect();
                self.pivots.push(piv);
                self.vectors.push(vec);
                self.combos.push(c);
                None
            }
        }
    }

    /// Coordinates of `v` over the generators, if `v` lies in the span.
    pub fn solve(&self, v: &[u64]) -> Option<Vec<u64>> {
        let r = self.reduce(v);
        if r.residual.iter().all(|x| *x == 0) {
            Some(r.combo)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_by_hand() {
        let a = FieldMatrix::from_rows(2, 1, 2, &[vec![0, 1]]).unwrap();
        let b = FieldMatrix::from_rows(2, 2, 1, &[vec![1], vec![0]]).unwrap();
        let c = a.mul(&b).unwrap();
        assert_eq!((c.rows(), c.cols()), (1, 1));
        assert!(c.is_zero());
    }

    #[test]
    fn rank_and_kernel() {
        let m = FieldMatrix::from_rows(3, 2, 3, &[vec![1, 2, 0], vec![2, 1, 0]]).unwrap();
        // second row = 2 * first mod 3
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.cols(), 2);
        assert!(m.mul(&k).unwrap().is_zero());
        assert_eq!(k.rank(), 2);
    }

    #[test]
    fn tracked_basis_relations() {
        let mut b = TrackedBasis::new(5, 3);
        assert!(b.insert(&[1, 2, 0]).is_none());
        assert!(b.insert(&[0, 1, 1]).is_none());
        let rel = b.insert(&[1, 3, 1]).expect("dependent");
        // g0 + g1 - g2 = 0
        assert_eq!(rel, vec![4, 4, 1]);
        assert_eq!(b.solve(&[2, 4, 0]), Some(vec![2, 0, 0]));
        assert_eq!(b.solve(&[0, 0, 1]), None);
    }
}
