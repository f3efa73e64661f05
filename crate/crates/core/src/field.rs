//! Exact dense linear algebra over a prime field `GF(p)`.
//!
//! Row reduction never permutes columns: the pivot columns it reports are
//! the greedy (leftmost-first) column basis, which is what the generic
//! initial ideal extraction relies on.
//!
//! For `p < 2^16` elimination runs with delayed reduction: entries live in
//! `u64` and only the pivot column is reduced before each step, which keeps
//! the inner update loop a plain multiply-add.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default odd prime for generic coordinate changes.
pub const DEFAULT_PRIME: u32 = 32003;

/// Largest prime for which the delayed-reduction kernel is used.
const LAZY_LIMIT: u32 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p as u64) || p >= 1 << 31 {
            return Err(Error::NotPrime(p as u64));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(self, x: u64) -> u32 {
        (x % self.p as u64) as u32
    }

    #[inline]
    pub fn from_i64(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a % self.p != 0, "zero has no inverse");
        self.pow(a, self.p as u64 - 2)
    }

    fn lazy(self) -> bool {
        self.p < LAZY_LIMIT
    }
}

impl TryFrom<u32> for PrimeField {
    type Error = Error;
    fn try_from(p: u32) -> Result<Self> {
        PrimeField::new(p)
    }
}

impl From<PrimeField> for u32 {
    fn from(f: PrimeField) -> u32 {
        f.p
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense row-major matrix with entries in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FieldMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FieldMatrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for k in 0..n {
            m.set(k, k, 1 % field.p);
        }
        m
    }

    /// Entries are reduced into the field.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(field, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            for (c, &x) in row.iter().enumerate() {
                m.set(r, c, field.from_i64(x));
            }
        }
        m
    }

    pub(crate) fn from_raw(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols);
        FieldMatrix { field, rows, cols, data }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> FieldMatrix {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            let mut acc = vec![0u64; other.cols];
            for k in 0..self.cols {
                let a = self.get(r, k) as u64;
                if a == 0 {
                    continue;
                }
                for (c, slot) in acc.iter_mut().enumerate() {
                    *slot = (*slot + a * other.get(k, c) as u64) % f.p as u64;
                }
            }
            for (c, v) in acc.into_iter().enumerate() {
                out.set(r, c, v as u32);
            }
        }
        out
    }

    /// Columns `cols` of this matrix, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> FieldMatrix {
        let mut out = Self::zeros(self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (k, &c) in cols.iter().enumerate() {
                out.set(r, k, self.get(r, c));
            }
        }
        out
    }

    /// Leftmost-first pivot columns of the row echelon form.
    pub fn pivot_columns(&self) -> Vec<usize> {
        Echelon::run(self, self.cols).pivots
    }

    pub fn rank(&self) -> usize {
        Echelon::run(self, self.cols).pivots.len()
    }

    /// Rank of the submatrix formed by the first `k` columns.
    pub fn rank_of_prefix(&self, k: usize) -> usize {
        Echelon::run(self, k.min(self.cols)).pivots.len()
    }

    pub fn determinant(&self) -> u32 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let f = self.field;
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = 1 % f.p;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&r| a[r * n + c] != 0) else {
                return 0;
            };
            if pr != c {
                for k in 0..n {
                    a.swap(pr * n + k, c * n + k);
                }
                det = f.neg(det);
            }
            let pivot = a[c * n + c];
            det = f.mul(det, pivot);
            let inv = f.inv(pivot);
            for r in c + 1..n {
                let factor = f.mul(a[r * n + c], inv);
                if factor == 0 {
                    continue;
                }
                for k in c..n {
                    let sub = f.mul(factor, a[c * n + k]);
                    a[r * n + k] = f.sub(a[r * n + k], sub);
                }
            }
        }
        det
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<FieldMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let f = self.field;
        let n = self.rows;
        let w = 2 * n;
        let mut a = vec![0u32; n * w];
        for r in 0..n {
            a[r * w..r * w + n].copy_from_slice(self.row(r));
            a[r * w + n + r] = 1 % f.p;
        }
        for c in 0..n {
            let pr = (c..n).find(|&r| a[r * w + c] != 0).ok_or(Error::Singular)?;
            if pr != c {
                for k in 0..w {
                    a.swap(pr * w + k, c * w + k);
                }
            }
            let inv = f.inv(a[c * w + c]);
            for k in 0..w {
                a[c * w + k] = f.mul(a[c * w + k], inv);
            }
            for r in 0..n {
                if r == c {
                    continue;
                }
                let factor = a[r * w + c];
                if factor == 0 {
                    continue;
                }
                for k in 0..w {
                    let sub = f.mul(factor, a[c * w + k]);
                    a[r * w + k] = f.sub(a[r * w + k], sub);
                }
            }
        }
        let mut out = Self::zeros(f, n, n);
        for r in 0..n {
            out.data[r * n..(r + 1) * n].copy_from_slice(&a[r * w + n..(r + 1) * w]);
        }
        Ok(out)
    }
}

/// Forward elimination restricted to the first `limit` columns.
struct Echelon {
    pivots: Vec<usize>,
}

impl Echelon {
    fn run(m: &FieldMatrix, limit: usize) -> Echelon {
        let f = m.field;
        let p = f.p as u64;
        let cols = limit;
        let stride = m.cols;
        let mut rows: Vec<Vec<u64>> = (0..m.rows)
            .map(|r| m.data[r * stride..r * stride + cols].iter().map(|&x| x as u64).collect())
            .filter(|row: &Vec<u64>| row.iter().any(|&x| x != 0))
            .collect();
        let mut pivots = Vec::new();
        let mut done = 0;
        let lazy = f.lazy();
        for c in 0..cols {
            if done == rows.len() {
                break;
            }
            let mut found = None;
            for (r, row) in rows.iter_mut().enumerate().skip(done) {
                row[c] %= p;
                if row[c] != 0 && found.is_none() {
                    found = Some(r);
                }
            }
            let Some(pr) = found else { continue };
            rows.swap(done, pr);
            let (head, tail) = rows.split_at_mut(done + 1);
            let pivot = &mut head[done];
            for x in pivot[c..].iter_mut() {
                *x %= p;
            }
            let inv = f.inv(pivot[c] as u32) as u64;
            for x in pivot[c..].iter_mut() {
                *x = *x * inv % p;
            }
            let pivot = &pivot[c..];
            for row in tail.iter_mut() {
                let lead = row[c];
                if lead == 0 {
                    continue;
                }
                let factor = p - lead;
                let target = &mut row[c..];
                if lazy {
                    for (x, &y) in target.iter_mut().zip(pivot) {
                        *x += factor * y;
                    }
                } else {
                    for (x, &y) in target.iter_mut().zip(pivot) {
                        *x = (*x + factor * y) % p;
                    }
                }
            }
            pivots.push(c);
            done += 1;
        }
        Echelon { pivots }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn primes() {
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(32003).is_ok());
        assert!(PrimeField::new(2147483647).is_ok());
        assert!(PrimeField::new(4294967291).is_err());
        assert!(PrimeField::new(2147483629).is_ok());
        assert_eq!(PrimeField::new(1).unwrap_err(), Error::NotPrime(1));
        assert!(PrimeField::new(32001).is_err());
    }

    #[test]
    fn arithmetic() {
        let f = gf(7);
        assert_eq!(f.add(5, 4), 2);
        assert_eq!(f.sub(2, 5), 4);
        assert_eq!(f.mul(3, 5), 1);
        assert_eq!(f.inv(3), 5);
        assert_eq!(f.neg(0), 0);
        assert_eq!(f.from_i64(-1), 6);
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }

    #[test]
    fn rank_and_pivots() {
        let f = gf(32003);
        let m = FieldMatrix::from_rows(f, &[vec![0, 1, 1], vec![0, 2, 2], vec![1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.pivot_columns(), vec![0, 1]);
        assert_eq!(m.rank_of_prefix(1), 1);
        let m = FieldMatrix::from_rows(f, &[vec![0, 1, 1], vec![0, 2, 2]]);
        assert_eq!(m.pivot_columns(), vec![1]);
        // over GF(2) the rows of a triangle boundary are dependent
        let tri = vec![vec![-1, -1, 0], vec![1, 0, -1], vec![0, 1, 1]];
        assert_eq!(FieldMatrix::from_rows(gf(2), &tri).rank(), 2);
        assert_eq!(FieldMatrix::from_rows(gf(3), &tri).rank(), 2);
        assert_eq!(FieldMatrix::zeros(f, 0, 4).rank(), 0);
        assert_eq!(FieldMatrix::zeros(f, 3, 0).rank(), 0);
    }

    #[test]
    fn characteristic_matters() {
        let m = vec![vec![1, 1], vec![1, -1]];
        assert_eq!(FieldMatrix::from_rows(gf(2), &m).rank(), 1);
        assert_eq!(FieldMatrix::from_rows(gf(3), &m).rank(), 2);
    }

    #[test]
    fn determinant_and_inverse() {
        let f = gf(101);
        let m = FieldMatrix::from_rows(f, &[vec![2, 3], vec![1, 4]]);
        assert_eq!(m.determinant(), 5);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), FieldMatrix::identity(f, 2));
        let sing = FieldMatrix::from_rows(f, &[vec![1, 2], vec![2, 4]]);
        assert_eq!(sing.determinant(), 0);
        assert_eq!(sing.inverse().unwrap_err(), Error::Singular);
    }

    /// Brute-force rank over a tiny field: size of the row span.
    fn span_size(m: &FieldMatrix) -> usize {
        let p = m.field().p() as usize;
        let mut seen = std::collections::HashSet::new();
        let combos = p.pow(m.rows() as u32);
        for code in 0..combos {
            let mut c = code;
            let mut v = vec![0u32; m.cols()];
            for r in 0..m.rows() {
                let coef = (c % p) as u32;
                c /= p;
                for (k, x) in v.iter_mut().enumerate() {
                    *x = m.field().add(*x, m.field().mul(coef, m.get(r, k)));
                }
            }
            seen.insert(v);
        }
        seen.len()
    }

    fn naive_pivots(f: PrimeField, rows: usize, cols: usize, mut a: Vec<u32>) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut done = 0;
        for c in 0..cols {
            let Some(pr) = (done..rows).find(|&r| a[r * cols + c] != 0) else { continue };
            for k in 0..cols {
                a.swap(pr * cols + k, done * cols + k);
            }
            let inv = f.inv(a[done * cols + c]);
            for r in done + 1..rows {
                let factor = f.mul(a[r * cols + c], inv);
                for k in 0..cols {
                    let sub = f.mul(factor, a[done * cols + k]);
                    a[r * cols + k] = f.sub(a[r * cols + k], sub);
                }
            }
            pivots.push(c);
            done += 1;
        }
        pivots
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn rank_matches_span_enumeration(entries in proptest::collection::vec(0u32..3, 12), shape in 0usize..3) {
            let (rows, cols) = [(3, 4), (4, 3), (2, 6)][shape];
            let f = gf(3);
            let m = FieldMatrix::from_raw(f, rows, cols, entries[..rows * cols].to_vec());
            let expect = (span_size(&m) as f64).log(3.0).round() as usize;
            prop_assert_eq!(m.rank(), expect);
        }

        #[test]
        fn pivots_are_greedy_column_basis(entries in proptest::collection::vec(0u32..5, 20)) {
            let f = gf(5);
            let m = FieldMatrix::from_raw(f, 4, 5, entries);
            let pivots = m.pivot_columns();
            // column c is a pivot iff it raises the rank of the prefix
            for c in 0..5 {
                let raised = m.rank_of_prefix(c + 1) > m.rank_of_prefix(c);
                prop_assert_eq!(pivots.contains(&c), raised);
            }
        }

        #[test]
        fn delayed_reduction_matches_naive_elimination(entries in proptest::collection::vec(0u32..32003, 42), zeros in proptest::collection::vec(any::<bool>(), 42)) {
            let f = gf(32003);
            let data: Vec<u32> = entries.iter().zip(&zeros).map(|(&x, &z)| if z { 0 } else { x }).collect();
            let m = FieldMatrix::from_raw(f, 6, 7, data.clone());
            prop_assert_eq!(m.pivot_columns(), naive_pivots(f, 6, 7, data));
        }
    }
}
