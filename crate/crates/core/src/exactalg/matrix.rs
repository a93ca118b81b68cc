//! Dense rational matrices and fraction-free elimination.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::{common_denominator, format_rational, rat, Rational};
use super::unipoly::UniPoly;
use crate::error::{JkError, Result};

/// Integral domain operations needed by Bareiss elimination.
pub trait Domain: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    /// Division that is known to be exact.
    fn exact_div(&self, o: &Self) -> Self;
}

impl Domain for BigInt {
    fn zero() -> Self {
        <BigInt as Zero>::zero()
    }
    fn one() -> Self {
        <BigInt as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn exact_div(&self, o: &Self) -> Self {
        debug_assert!(Zero::is_zero(&(self % o)), "inexact Bareiss division");
        self / o
    }
}

impl Domain for UniPoly {
    fn zero() -> Self {
        UniPoly::zero()
    }
    fn one() -> Self {
        UniPoly::one()
    }
    fn is_zero(&self) -> bool {
        UniPoly::is_zero(self)
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn exact_div(&self, o: &Self) -> Self {
        UniPoly::exact_div(self, o).expect("inexact Bareiss division")
    }
}

/// Fraction-free row echelon form in place (Bareiss with column skipping).
/// Returns the pivot columns; their count is the rank.
pub fn bareiss_echelon<T: Domain>(m: &mut [Vec<T>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut prev = T::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (top, rest) = m.split_at_mut(r + 1);
        let prow = &top[r];
        for row in rest.iter_mut() {
            let f = row[c].clone();
            for j in c + 1..cols {
                let v = prow[c].mul(&row[j]).sub(&f.mul(&prow[j]));
                row[j] = v.exact_div(&prev);
            }
            row[c] = T::zero();
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = rat(1);
        }
        m
    }

    /// Builds from row vectors; `cols` fixes the width when `rows` is empty.
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix");
            data.extend(row);
        }
        RatMatrix { rows: r, cols, data }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect(), cols)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> Vec<Rational> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn row_slice(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_vec(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn is_skew(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| self[(i, i)].is_zero() && (0..i).all(|j| self[(i, j)] == -&self[(j, i)]))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, o: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, o.rows, "matrix product shape mismatch");
        let mut p = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        p[(i, j)] += a * b;
                    }
                }
            }
        }
        p
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                self.row_slice(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn add(&self, o: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> RatMatrix {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    /// `self + c * o`.
    pub fn add_scaled(&self, c: &Rational, o: &RatMatrix) -> RatMatrix {
        self.add(&o.scale(c))
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> RatMatrix {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m[(a, b)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn vstack(&self, o: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        RatMatrix { rows: self.rows + o.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, o: &RatMatrix) -> RatMatrix {
        assert_eq!(self.rows, o.rows);
        let rows = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i);
                r.extend(o.row(i));
                r
            })
            .collect();
        Self::from_rows(rows, self.cols + o.cols)
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, o: &RatMatrix) -> RatMatrix {
        let mut m = Self::zeros(self.rows + o.rows, self.cols + o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..o.rows {
            for j in 0..o.cols {
                m[(self.rows + i, self.cols + j)] = o[(i, j)].clone();
            }
        }
        m
    }

    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row_slice(i);
                let d = common_denominator(row);
                row.iter().map(|v| v.numer() * (&d / v.denom())).collect()
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        let mut m = self.integer_rows();
        bareiss_echelon(&mut m).len()
    }

    /// Reduced row echelon form with zero rows dropped, plus pivot columns.
    /// The echelon step is fraction-free; back substitution is over Q.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut ints = self.integer_rows();
        let pivots = bareiss_echelon(&mut ints);
        let r = pivots.len();
        let mut rows: Vec<Vec<Rational>> =
            ints.into_iter().take(r).map(|row| row.into_iter().map(Rational::from_integer).collect()).collect();
        for k in (0..r).rev() {
            let pc = pivots[k];
            let inv = rows[k][pc].recip();
            for v in rows[k].iter_mut() {
                *v *= &inv;
            }
            let pivot_row = rows[k].clone();
            for row in rows.iter_mut().take(k) {
                let f = row[pc].clone();
                if f.is_zero() {
                    continue;
                }
                for (j, pv) in pivot_row.iter().enumerate().skip(pc) {
                    if !pv.is_zero() {
                        row[j] -= &f * pv;
                    }
                }
            }
        }
        (Self::from_rows(rows, self.cols), pivots)
    }

    /// Basis of the right null space `{x : M x = 0}`, returned in RREF.
    pub fn kernel(&self) -> RatMatrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![Rational::zero(); self.cols];
            v[f] = rat(1);
            for (k, &pc) in pivots.iter().enumerate() {
                v[pc] = -&r[(k, f)];
            }
            basis.push(v);
        }
        Self::from_rows(basis, self.cols).rref().0
    }

    /// Some solution of `M x = b`, or `None` when `b` is outside the image.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows);
        let col = RatMatrix::from_rows(b.iter().map(|v| vec![v.clone()]).collect(), 1);
        let (r, pivots) = self.hstack(&col).rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (k, &pc) in pivots.iter().enumerate() {
            x[pc] = r[(k, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let (r, pivots) = self.hstack(&Self::identity(n)).rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        Some(r.submatrix(&(0..n).collect::<Vec<_>>(), &cols))
    }

    pub fn determinant(&self) -> Rational {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return rat(1);
        }
        let mut m: Vec<Vec<Rational>> = self.rows_vec();
        let mut det = rat(1);
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
                return rat(0);
            };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            det *= &m[c][c];
            let inv = m[c][c].recip();
            for i in c + 1..n {
                let f = &m[i][c] * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let d = &f * &m[c][j];
                    m[i][j] -= d;
                }
            }
        }
        det
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row_slice(i).iter().map(format_rational).collect()).collect()
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMatrix{:?}", self.to_strings())
    }
}

/// Parses a grid of rational strings into a matrix of the given width.
pub fn matrix_from_strings(rows: &[Vec<String>], cols: usize) -> Result<RatMatrix> {
    let mut out = Vec::with_capacity(rows.len());
    for (i, r) in rows.iter().enumerate() {
        if r.len() != cols {
            return Err(JkError::Parse(format!("row {i} has {} entries, expected {cols}", r.len())));
        }
        out.push(r.iter().map(|s| super::rational::parse_rational(s)).collect::<Result<Vec<_>>>()?);
    }
    Ok(RatMatrix::from_rows(out, cols))
}
