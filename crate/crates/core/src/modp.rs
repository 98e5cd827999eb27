//! Prime-field arithmetic and rank by Gaussian elimination.
//!
//! Elements are stored as `u32` and the modulus is below `2^31`, so a product
//! of two elements fits a `u64`. Row operations accumulate up to three
//! products before reducing, which keeps the inner loop free of divisions.

use thiserror::Error;

/// `2^31 - 1`.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModpError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("modulus {0} is not an odd prime below 2^31")]
    InvalidModulus(u64),
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut f = 3;
    while f * f <= p {
        if p % f == 0 {
            return false;
        }
        f += 2;
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
    // floor(2^64 / p), for Barrett reduction
    barrett: u64,
}

impl Default for PrimeField {
    fn default() -> Self {
        Self::new(DEFAULT_PRIME).expect("default prime is valid")
    }
}

impl PrimeField {
    /// Accepts odd primes below `2^31`; three products plus a reduced value
    /// then fit in a `u64`.
    pub fn new(p: u64) -> Result<Self, ModpError> {
        if p <= 2 || p >= 1 << 31 || !is_prime(p) {
            return Err(ModpError::InvalidModulus(p));
        }
        Ok(Self { p, barrett: ((1u128 << 64) / p as u128) as u64 })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, x: u64) -> u64 {
        let q = ((x as u128 * self.barrett as u128) >> 64) as u64;
        let r = x - q * self.p;
        if r >= self.p {
            r - self.p
        } else {
            r
        }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a * b)
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse by Fermat's little theorem.
    pub fn inv(&self, a: u64) -> Result<u64, ModpError> {
        if a % self.p == 0 {
            return Err(ModpError::DivisionByZero);
        }
        Ok(self.pow(a, self.p - 2))
    }

    /// Canonical representative of a signed integer.
    pub fn from_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    /// `row[from..] += factor * pivot[from..]`, fully reduced.
    #[inline]
    fn axpy(&self, row: &mut [u32], factor: u64, pivot: &[u32], from: usize) {
        for (r, &b) in row[from..].iter_mut().zip(&pivot[from..]) {
            *r = self.reduce(*r as u64 + factor * b as u64) as u32;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds from reduced entries in row-major order.
    pub fn from_rows(field: &PrimeField, rows: &[Vec<u64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix");
            entries.extend(row.iter().map(|&x| field.reduce(x) as u32));
        }
        Self { rows: rows.len(), cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.cols + c] as u64
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.entries[r * self.cols + c] = v as u32;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn stack(&self, below: &DenseMatrix) -> Self {
        assert_eq!(self.cols, below.cols);
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&below.entries);
        Self { rows: self.rows + below.rows, cols: self.cols, entries }
    }
}

/// Rank over the field by row reduction; the matrix is consumed.
pub fn rank(field: &PrimeField, mut m: DenseMatrix) -> usize {
    let cols = m.cols;
    let mut rank = 0;
    for c in 0..cols {
        if rank == m.rows {
            break;
        }
        let Some(pivot) = (rank..m.rows).find(|&r| m.entries[r * cols + c] != 0) else {
            continue;
        };
        if pivot != rank {
            for j in c..cols {
                m.entries.swap(pivot * cols + j, rank * cols + j);
            }
        }
        let inv = field.inv(m.entries[rank * cols + c] as u64).expect("pivot is nonzero");
        for j in c..cols {
            let x = m.entries[rank * cols + j] as u64;
            m.entries[rank * cols + j] = field.mul(x, inv) as u32;
        }
        let (head, tail) = m.entries.split_at_mut((rank + 1) * cols);
        let pivot_row = &head[rank * cols..];
        for row in tail.chunks_exact_mut(cols) {
            let f = row[c] as u64;
            if f != 0 {
                field.axpy(row, field.neg(f), pivot_row, c);
            }
        }
        rank += 1;
    }
    rank
}

/// Row-echelon basis fed one row at a time.
///
/// Each stored row is normalized so its leading entry is 1. An incoming row
/// is reduced against the stored pivots in column order; whatever survives
/// becomes a new basis row.
#[derive(Debug, Clone)]
pub struct IncrementalRank {
    field: PrimeField,
    cols: usize,
    pivots: Vec<Option<Box<[u32]>>>,
    rank: usize,
    scratch: Vec<u64>,
}

impl IncrementalRank {
    pub fn new(field: PrimeField, cols: usize) -> Self {
        Self { field, cols, pivots: vec![None; cols], rank: 0, scratch: vec![0; cols] }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Row space is everything; further rows cannot change the rank.
    pub fn is_full(&self) -> bool {
        self.rank == self.cols
    }

    /// Adds a row of reduced entries; returns whether it raised the rank.
    pub fn push_row(&mut self, row: &[u64]) -> bool {
        assert_eq!(row.len(), self.cols, "row width mismatch");
        self.scratch.copy_from_slice(row);
        self.reduce_scratch()
    }

    /// Adds a sparse row given as `(column, reduced value)` pairs.
    pub fn push_sparse(&mut self, entries: &[(usize, u64)]) -> bool {
        self.scratch.iter_mut().for_each(|x| *x = 0);
        for &(c, v) in entries {
            self.scratch[c] = self.field.add(self.scratch[c], v);
        }
        self.reduce_scratch()
    }

    fn reduce_scratch(&mut self) -> bool {
        if self.is_full() {
            return false;
        }
        let field = self.field;
        let p = field.modulus();
        let row = &mut self.scratch;
        // Entries may hold up to three unreduced products between sweeps:
        // 3 (p-1)^2 + p < 2^64 for p < 2^31.
        let mut pending = 0;
        for c in 0..self.cols {
            if pending > 0 {
                row[c] = field.reduce(row[c]);
            }
            let f = row[c];
            if f == 0 {
                continue;
            }
            match &self.pivots[c] {
                Some(pivot) => {
                    let factor = p - f;
                    for (r, &b) in row[c + 1..].iter_mut().zip(&pivot[c + 1..]) {
                        *r += factor * b as u64;
                    }
                    row[c] = 0;
                    pending += 1;
                    if pending == 3 {
                        for x in &mut row[c + 1..] {
                            *x = field.reduce(*x);
                        }
                        pending = 0;
                    }
                }
                None => {
                    if pending > 0 {
                        for x in &mut row[c + 1..] {
                            *x = field.reduce(*x);
                        }
                    }
                    let inv = field.inv(f).expect("nonzero leading entry");
                    let basis: Box<[u32]> = row
                        .iter()
                        .enumerate()
                        .map(|(j, &x)| if j < c { 0 } else { field.mul(x, inv) as u32 })
                        .collect();
                    self.pivots[c] = Some(basis);
                    self.rank += 1;
                    return true;
                }
            }
        }
        false
    }
}

/// Rank of a stream of rows, stopping early once the rank equals the width.
pub fn incremental_rank<'a, I>(field: PrimeField, cols: usize, rows: I) -> (usize, bool)
where
    I: IntoIterator<Item = &'a [u64]>,
{
    let mut acc = IncrementalRank::new(field, cols);
    for row in rows {
        if acc.is_full() {
            return (acc.rank(), true);
        }
        acc.push_row(row);
    }
    (acc.rank(), acc.is_full())
}
